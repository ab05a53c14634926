//! Operators on symmetric functions: the eigenoperators nabla, Delta_f,
//! Delta'_f and Pi (diagonal on the Macdonald basis), the Theta operators
//! Theta_f = Pi f[X/M] Pi^(-1), the D_k operators, and the Haglund-Morse-
//! Zabrocki creation operators C_m with the compositional pieces C_alpha and
//! E_{n,k}.
//!
//! Diagonal operators take and return functions in the H~ basis whenever
//! possible so chains of operators avoid repeated conversions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::combinat::{compositions, Composition, Partition};
use crate::error::{Error, Result};
use crate::macdonald::{MacdonaldCtx, QtStats};
use crate::qt::{q_bracket, QtRational};
use crate::symfun::{self, mb_scalar, Alphabet, Basis, SymFunc};

/// Apply a diagonal operator given by an eigenvalue rule on partitions.
pub fn apply_eigen(
    ctx: &MacdonaldCtx,
    f: &SymFunc,
    eig: impl Fn(&Partition, &QtStats) -> QtRational,
) -> Result<SymFunc> {
    let expanded = ctx.expand(f)?;
    let mut out = SymFunc::zero(Basis::Htilde);
    for (mu, c) in expanded.terms() {
        let basis = ctx.basis(mu.size())?;
        let lambda = eig(mu, basis.stats_of(mu));
        out.add_term(mu.clone(), c * &lambda);
    }
    Ok(out)
}

/// nabla: eigenvalue T_mu.
pub fn nabla(ctx: &MacdonaldCtx, f: &SymFunc) -> Result<SymFunc> {
    apply_eigen(ctx, f, |_, st| st.t.clone())
}

/// Delta_f: eigenvalue f[B_mu].
pub fn delta(ctx: &MacdonaldCtx, index: &SymFunc, f: &SymFunc) -> Result<SymFunc> {
    apply_eigen(ctx, f, |mu, _| {
        symfun::eval_constant_alphabet(index, |k| symfun::b_mu_pow(mu, k))
    })
}

/// Delta'_f: eigenvalue f[B_mu - 1].
pub fn delta_prime(ctx: &MacdonaldCtx, index: &SymFunc, f: &SymFunc) -> Result<SymFunc> {
    apply_eigen(ctx, f, |mu, _| {
        symfun::eval_constant_alphabet(index, |k| &symfun::b_mu_pow(mu, k) - &QtRational::one())
    })
}

/// Pi: eigenvalue Pi_mu (1 on the empty partition).
pub fn pi_op(ctx: &MacdonaldCtx, f: &SymFunc) -> Result<SymFunc> {
    apply_eigen(ctx, f, |_, st| st.pi.clone())
}

/// Pi^(-1).
pub fn pi_inv(ctx: &MacdonaldCtx, f: &SymFunc) -> Result<SymFunc> {
    apply_eigen(ctx, f, |_, st| st.pi.inv().expect("Pi_mu is nonzero"))
}

/// Theta_f F = Pi (f[X/M] . Pi^(-1) F). Homogeneous f of degree k shifts
/// degree n to n + k. Works degree by degree through the cached transition
/// matrix of multiplication by f[X/M] on the Macdonald basis.
pub fn theta(ctx: &MacdonaldCtx, index: &SymFunc, f: &SymFunc) -> Result<SymFunc> {
    let fh = ctx.expand(f)?;
    let k = index.degree().unwrap_or(0);
    if !index.is_homogeneous() {
        return Err(Error::Domain(
            "Theta takes a homogeneous symmetric function index".into(),
        ));
    }
    let mut out = SymFunc::zero(Basis::Htilde);
    let degrees = fh.degrees();
    for d in degrees {
        let source = ctx.basis(d)?;
        let target = ctx.basis(d + k)?;
        let matrix = ctx.mult_star_matrix(d, index)?;
        // v = coefficients of Pi^(-1) F in degree d
        let mut v = vec![QtRational::zero(); source.parts.len()];
        for (mu, c) in fh.terms() {
            if mu.size() == d {
                let i = source.index[mu];
                v[i] = c / &source.stats[i].pi;
            }
        }
        for (li, lam) in target.parts.iter().enumerate() {
            let mut acc = QtRational::zero();
            for (mi, vi) in v.iter().enumerate() {
                if !vi.is_zero() && !matrix[li][mi].is_zero() {
                    acc += &(&matrix[li][mi] * vi);
                }
            }
            if !acc.is_zero() {
                out.add_term(lam.clone(), &acc * &target.stats[li].pi);
            }
        }
    }
    Ok(out)
}

/// Theta_{e_k}.
pub fn theta_ek(ctx: &MacdonaldCtx, k: u32, f: &SymFunc) -> Result<SymFunc> {
    theta(ctx, &SymFunc::e(k as i64), f)
}

/// D_k F = (F[X + M/z] sum_r (-z)^r e_r[X]) |_(z^k).
pub fn d_k(k: i64, f: &SymFunc) -> SymFunc {
    let fp = f.to_p();
    // F[X + M/z] as a Laurent polynomial in z: exponent -> symmetric function
    let mut laurent: BTreeMap<i64, SymFunc> = BTreeMap::new();
    for (l, c) in fp.terms() {
        // expand prod_i (p_(l_i) + (1-q^(l_i))(1-t^(l_i)) z^(-l_i))
        let parts = l.parts();
        let m = parts.len();
        for mask in 0..(1u32 << m) {
            let mut kept: Vec<u32> = Vec::new();
            let mut coeff = c.clone();
            let mut zexp = 0i64;
            for (i, &part) in parts.iter().enumerate() {
                if mask & (1 << i) == 0 {
                    kept.push(part);
                } else {
                    coeff = &coeff * &mb_scalar(part);
                    zexp -= part as i64;
                }
            }
            let entry = laurent
                .entry(zexp)
                .or_insert_with(|| SymFunc::zero(Basis::P));
            entry.add_term(Partition::from_unsorted(kept), coeff);
        }
    }
    // coefficient of z^k in (sum_e F_e z^e)(sum_r (-z)^r e_r)
    let mut out = SymFunc::zero(Basis::P);
    for (e, fe) in &laurent {
        let r = k - e;
        if r < 0 {
            continue;
        }
        let er = SymFunc::e(r).to_p();
        let sign = if r % 2 == 0 { 1 } else { -1 };
        out = out.add(&fe.mul(&er).scale(&QtRational::from_int(sign)));
    }
    out
}

/// The creation operator C_m of Haglund, Morse and Zabrocki:
/// C_m F = (-1/q)^(m-1) sum_r q^(-r) h_(m+r) (h_r[X(1-q)])^perp F.
pub fn cc_m(m: u32, f: &SymFunc) -> SymFunc {
    let fp = f.to_p();
    let deg = fp.degree().unwrap_or(0);
    let mut out = SymFunc::zero(Basis::P);
    for r in 0..=deg {
        let skewer = symfun::plethysm(&SymFunc::h(r as i64), &Alphabet::XOneMinusQ);
        let skewed = symfun::skew_perp(&skewer, &fp);
        if skewed.is_zero() {
            continue;
        }
        let hmr = SymFunc::h((m + r) as i64).to_p();
        let term = hmr
            .mul(&skewed)
            .scale(&QtRational::qt_monomial(-(r as i64), 0));
        out = out.add(&term);
    }
    let sign = if (m as i64 - 1) % 2 == 0 { 1 } else { -1 };
    let prefactor = &QtRational::from_int(sign) * &QtRational::qt_monomial(-(m as i64 - 1), 0);
    out.scale(&prefactor)
}

/// C_alpha = C_(a1) C_(a2) ... C_(al) applied to 1.
pub fn c_alpha(alpha: &Composition) -> SymFunc {
    let mut f = SymFunc::one();
    for &a in alpha.parts().iter().rev() {
        f = cc_m(a, &f);
    }
    f
}

/// E_{n,r} = sum over compositions of n of length r of C_alpha.
pub fn e_nk(n: u32, r: u32) -> Result<SymFunc> {
    if r < 1 || r > n {
        return Err(Error::Domain(format!(
            "E_(n,r) needs 1 <= r <= n, got ({n},{r})"
        )));
    }
    let mut out = SymFunc::zero(Basis::P);
    for alpha in compositions(n) {
        if alpha.len() == r as usize {
            out = out.add(&c_alpha(&alpha));
        }
    }
    Ok(out)
}

/// omega(p_n).
pub fn omega_p(n: u32) -> SymFunc {
    SymFunc::p(n).omega()
}

/// [n]_q as a scalar.
pub fn bracket_q(n: i64) -> QtRational {
    q_bracket(n, &QtRational::q()).unwrap()
}

/// [n]_t as a scalar.
pub fn bracket_t(n: i64) -> QtRational {
    q_bracket(n, &QtRational::t()).unwrap()
}

/// True when the value lies in N[q,t]: an honest polynomial with nonnegative
/// integer coefficients.
pub fn is_nonneg_polynomial(c: &QtRational) -> bool {
    if !c.is_polynomial() {
        return false;
    }
    c.num().terms().all(|(_, coeff)| !coeff.is_negative())
}

/// Determinant of the binomial matrix ||binom(r+s, r)|| with 0 < r <= n and
/// 0 <= s < n, by exact rational elimination.
pub fn binomial_matrix_det(n: usize) -> BigInt {
    let binom = |a: usize, b: usize| -> BigInt {
        let mut v = BigInt::one();
        for i in 0..b {
            v = v * BigInt::from(a - i) / BigInt::from(i + 1);
        }
        v
    };
    let mut m: Vec<Vec<num_rational::BigRational>> = (1..=n)
        .map(|r| {
            (0..n)
                .map(|s| num_rational::BigRational::from(binom(r + s, r)))
                .collect()
        })
        .collect();
    let mut det = num_rational::BigRational::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return BigInt::zero(),
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        let pv = m[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &pv;
                for c in col..n {
                    let sub = &m[col][c] * &f;
                    m[r][c] = &m[r][c] - &sub;
                }
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::hall_inner;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn nabla_fixes_e1() {
        let ctx = MacdonaldCtx::new();
        let r = nabla(&ctx, &SymFunc::e(1)).unwrap();
        let rp = ctx.htilde_to_p(&r).unwrap();
        assert_eq!(rp, SymFunc::e(1).to_p());
    }

    #[test]
    fn nabla_e2_known_value() {
        let ctx = MacdonaldCtx::new();
        let r = nabla(&ctx, &SymFunc::e(2)).unwrap();
        let rs = ctx.convert(&r, Basis::S).unwrap();
        assert_eq!(rs.coeff(&part(&[2])), QtRational::one());
        let qplust = &QtRational::q() + &QtRational::t();
        assert_eq!(rs.coeff(&part(&[1, 1])), qplust);
    }

    #[test]
    fn delta_splits_into_primed_parts() {
        // Delta_(e_k) = Delta'_(e_k) + Delta'_(e_(k-1)) on degree n
        let ctx = MacdonaldCtx::new();
        for n in 1..=4i64 {
            let en = SymFunc::e(n);
            for k in 1..=n {
                let ek = SymFunc::e(k);
                let ek1 = SymFunc::e(k - 1);
                let lhs = delta(&ctx, &ek, &en).unwrap();
                let rhs = delta_prime(&ctx, &ek, &en)
                    .unwrap()
                    .add(&delta_prime(&ctx, &ek1, &en).unwrap());
                assert!(lhs.sub(&rhs).is_zero(), "failed at n={n}, k={k}");
            }
        }
    }

    #[test]
    fn theta_zero_is_identity() {
        let ctx = MacdonaldCtx::new();
        for f in [SymFunc::e(3), SymFunc::h(2).mul(&SymFunc::e(1))] {
            let r = theta_ek(&ctx, 0, &f).unwrap();
            assert_eq!(ctx.htilde_to_p(&r).unwrap(), f.to_p());
        }
    }

    #[test]
    fn theta_one_of_nabla_e1() {
        // Theta_1 nabla e_1 = e_2
        let ctx = MacdonaldCtx::new();
        let ne1 = nabla(&ctx, &SymFunc::e(1)).unwrap();
        let r = theta_ek(&ctx, 1, &ne1).unwrap();
        assert_eq!(ctx.htilde_to_p(&r).unwrap(), SymFunc::e(2).to_p());
    }

    #[test]
    fn c_single_is_e1() {
        assert_eq!(c_alpha(&comp(&[1])), SymFunc::e(1).to_p());
    }

    #[test]
    fn c_alpha_sums_to_en() {
        for n in 1..=4u32 {
            let mut acc = SymFunc::zero(Basis::P);
            for alpha in compositions(n) {
                acc = acc.add(&c_alpha(&alpha));
            }
            assert_eq!(acc, SymFunc::e(n as i64).to_p(), "failed at n={n}");
        }
    }

    #[test]
    fn enk_sums_and_pn() {
        for n in 1..=4u32 {
            let mut acc = SymFunc::zero(Basis::P);
            for r in 1..=n {
                acc = acc.add(&e_nk(n, r).unwrap());
            }
            assert_eq!(acc, SymFunc::e(n as i64).to_p());
            // omega p_n = sum_r [n]_q/[r]_q E_(n,r)
            let mut acc2 = SymFunc::zero(Basis::P);
            for r in 1..=n {
                let ratio = &bracket_q(n as i64) / &bracket_q(r as i64);
                acc2 = acc2.add(&e_nk(n, r).unwrap().scale(&ratio));
            }
            assert_eq!(acc2, omega_p(n).to_p(), "omega p_{n} expansion failed");
        }
        assert_eq!(e_nk(1, 1).unwrap(), SymFunc::e(1).to_p());
        assert!(e_nk(3, 4).is_err());
    }

    #[test]
    fn enk_defining_expansion() {
        // e_n[X [j]_q] = sum_k qbinom(k+j-1, k) E_(n,k)
        let q = QtRational::q();
        for n in 1..=4u32 {
            for j in 1..=4u32 {
                let lhs = symfun::plethysm(&SymFunc::e(n as i64), &Alphabet::XBracket(j));
                let mut rhs = SymFunc::zero(Basis::P);
                for k in 1..=n {
                    let c = crate::qt::q_binomial((k + j - 1) as i64, k as i64, &q);
                    rhs = rhs.add(&e_nk(n, k).unwrap().scale(&c));
                }
                assert_eq!(lhs, rhs, "failed at n={n}, j={j}");
            }
        }
    }

    #[test]
    fn d0_eigenvalue() {
        // D_0 H~_mu = -D_mu H~_mu
        let ctx = MacdonaldCtx::new();
        for n in 1..=3u32 {
            let basis = ctx.basis(n).unwrap();
            for mu in crate::combinat::partitions(n) {
                let h = basis.htilde_p(&mu).clone();
                let lhs = d_k(0, &h);
                let rhs = h.scale(&basis.stats_of(&mu).d).neg();
                assert_eq!(lhs, rhs.to_p(), "failed at mu={:?}", mu);
            }
        }
    }

    #[test]
    fn dk_e1_commutator() {
        // D_k e_1 - e_1 D_k = M D_(k+1) on assorted f
        let e1 = SymFunc::e(1);
        let m = QtRational::big_m();
        for f in [SymFunc::e(2), SymFunc::h(3), SymFunc::s(part(&[2, 1]))] {
            for k in 0..=2i64 {
                let lhs = d_k(k, &e1.mul(&f)).sub(&e1.mul(&d_k(k, &f)));
                let rhs = d_k(k + 1, &f).scale(&m);
                assert_eq!(lhs.to_p(), rhs.to_p(), "failed at k={k}");
            }
        }
    }

    #[test]
    fn theta1_from_d1() {
        // Theta_1 = (e_1 + D_1)/M on the Macdonald basis
        let ctx = MacdonaldCtx::new();
        for n in 1..=3u32 {
            let basis = ctx.basis(n).unwrap();
            for mu in crate::combinat::partitions(n) {
                let h = basis.htilde_p(&mu).clone();
                let lhs = ctx.htilde_to_p(&theta_ek(&ctx, 1, &h).unwrap()).unwrap();
                let rhs = SymFunc::e(1)
                    .mul(&h)
                    .add(&d_k(1, &h))
                    .scale(&QtRational::big_m().inv().unwrap());
                assert_eq!(lhs, rhs.to_p(), "failed at mu={:?}", mu);
            }
        }
    }

    #[test]
    fn hook_coefficient_from_schur_side() {
        // <H~_mu, e_r h_(n-r)> = e_r[B_mu]
        let ctx = MacdonaldCtx::new();
        for n in 1..=4u32 {
            let basis = ctx.basis(n).unwrap();
            for mu in crate::combinat::partitions(n) {
                for r in 0..=n {
                    let lhs = hall_inner(
                        basis.htilde_p(&mu),
                        &SymFunc::e(r as i64).mul(&SymFunc::h((n - r) as i64)),
                    );
                    let rhs = symfun::eval_constant_alphabet(&SymFunc::e(r as i64), |k| {
                        symfun::b_mu_pow(&mu, k)
                    });
                    assert_eq!(lhs, rhs, "failed at mu={:?}, r={r}", mu);
                }
            }
        }
    }

    #[test]
    fn binomial_determinant_is_one() {
        for n in 1..=8 {
            assert_eq!(binomial_matrix_det(n), BigInt::one(), "failed at n={n}");
        }
    }

    #[test]
    fn positivity_predicate() {
        assert!(is_nonneg_polynomial(&(&QtRational::q() + &QtRational::t())));
        assert!(!is_nonneg_polynomial(&(&QtRational::q() - &QtRational::t())));
        assert!(!is_nonneg_polynomial(&QtRational::big_m().inv().unwrap()));
    }
}
