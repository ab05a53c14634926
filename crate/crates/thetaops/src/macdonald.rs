//! The modified Macdonald basis.
//!
//! For each partition mu of n the basis element H~_mu is the unique symmetric
//! function satisfying the triangularity characterization
//!
//!   H~_mu[X(1-q)] in span{ s_l : l >= mu },
//!   H~_mu[X(1-t)] in span{ s_l : l >= mu' },
//!   <H~_mu, s_(n)> = 1,
//!
//! (dominance order). We solve this as a linear system over Q(q,t) per
//! degree. A solved degree is accepted only after passing the validation
//! suite: star-product orthogonality with norms w_mu, the hook coefficients
//! <H~_mu, s_(n-r,1^r)> = e_r[B_mu - 1], reciprocity between pairs of the
//! same degree, and the evaluation H~_mu[(1-t)(1-q^j)] =
//! (1-q^j) Pi_mu h_j[(1-t)B_mu]. Failing any of these aborts the build
//! instead of caching a wrong basis.
//!
//! Also here: the q,t cell statistics (B, D, T, Pi, w), expansion of
//! arbitrary symmetric functions into the H~ basis through the star scalar
//! product, and the Pieri coefficients c/d from skewing by h_k and
//! multiplying by e_k[X/M].

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::combinat::{partitions, Partition};
use crate::error::{Error, Result};
use crate::qt::QtRational;
use crate::symfun::{
    self, eval_constant_alphabet, hall_inner, star_inner, Alphabet, Basis, SymFunc,
};

/// The q,t statistics attached to a partition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QtStats {
    /// B_mu = sum over cells of q^(coarm) t^(coleg)
    pub b: QtRational,
    /// D_mu = M B_mu - 1
    pub d: QtRational,
    /// T_mu = prod over cells of q^(coarm) t^(coleg)
    pub t: QtRational,
    /// Pi_mu = prod over cells other than the corner of (1 - q^(coarm) t^(coleg))
    pub pi: QtRational,
    /// w_mu = prod over cells of (q^arm - t^(leg+1))(t^leg - q^(arm+1))
    pub w: QtRational,
}

pub fn qt_stats(mu: &Partition) -> QtStats {
    let one = QtRational::one();
    let mut b = QtRational::zero();
    let mut t = QtRational::one();
    let mut pi = QtRational::one();
    let mut w = QtRational::one();
    for cell in mu.cells() {
        let (ca, cl) = (mu.coarm(cell) as i64, mu.coleg(cell) as i64);
        let mono = QtRational::qt_monomial(ca, cl);
        b += &mono;
        t = &t * &mono;
        if (ca, cl) != (0, 0) {
            pi = &pi * &(&one - &mono);
        }
        let (a, l) = (mu.arm(cell) as i64, mu.leg(cell) as i64);
        let f1 = &QtRational::qt_monomial(a, 0) - &QtRational::qt_monomial(0, l + 1);
        let f2 = &QtRational::qt_monomial(0, l) - &QtRational::qt_monomial(a + 1, 0);
        w = &w * &(&f1 * &f2);
    }
    let d = &(&QtRational::big_m() * &b) - &one;
    QtStats { b, d, t, pi, w }
}

/// A fully built and validated Macdonald basis for one degree.
pub struct MacdonaldBasis {
    pub degree: u32,
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    /// H~_mu in the Schur basis.
    pub schur: Vec<SymFunc>,
    /// H~_mu in the power sum basis (the workhorse for star products).
    pub in_p: Vec<SymFunc>,
    pub stats: Vec<QtStats>,
}

impl MacdonaldBasis {
    pub fn htilde_schur(&self, mu: &Partition) -> &SymFunc {
        &self.schur[self.index[mu]]
    }

    pub fn htilde_p(&self, mu: &Partition) -> &SymFunc {
        &self.in_p[self.index[mu]]
    }

    pub fn stats_of(&self, mu: &Partition) -> &QtStats {
        &self.stats[self.index[mu]]
    }

    /// Coefficients of a homogeneous f (same degree) on the H~ basis:
    /// c_mu = <f, H~_mu>_* / w_mu.
    fn expand_component(&self, f: &SymFunc) -> SymFunc {
        let mut out = SymFunc::zero(Basis::Htilde);
        let fp = f.to_p();
        for (i, mu) in self.parts.iter().enumerate() {
            let num = star_inner(&fp, &self.in_p[i]);
            if num.is_zero() {
                continue;
            }
            out.add_term(mu.clone(), &num / &self.stats[i].w);
        }
        out
    }
}

/// Session context holding built bases per degree. Building is validated;
/// distinct degrees can build concurrently, and a degree is published only
/// once finished.
pub struct MacdonaldCtx {
    map: Mutex<HashMap<u32, Arc<MacdonaldBasis>>>,
    /// Cached transition matrices of multiplication by f[X/M] on the H~
    /// basis, keyed by source degree and the p-expansion of f.
    mult_cache: Mutex<HashMap<(u32, String), Arc<Vec<Vec<QtRational>>>>>,
    cache_dir: Option<std::path::PathBuf>,
}

impl Default for MacdonaldCtx {
    fn default() -> Self {
        Self::new()
    }
}

impl MacdonaldCtx {
    pub fn new() -> MacdonaldCtx {
        MacdonaldCtx {
            map: Mutex::new(HashMap::new()),
            mult_cache: Mutex::new(HashMap::new()),
            cache_dir: None,
        }
    }

    /// Use a disk cache directory for built bases.
    pub fn with_cache_dir(dir: impl Into<std::path::PathBuf>) -> MacdonaldCtx {
        MacdonaldCtx {
            map: Mutex::new(HashMap::new()),
            mult_cache: Mutex::new(HashMap::new()),
            cache_dir: Some(dir.into()),
        }
    }

    /// Transition matrix of multiplication by f[X/M] from H~ coordinates in
    /// degree d to degree d + deg f: entry [target][source] is the
    /// generalized Pieri coefficient d^(f)_(lambda,mu).
    pub fn mult_star_matrix(
        &self,
        d: u32,
        index: &SymFunc,
    ) -> Result<Arc<Vec<Vec<QtRational>>>> {
        let fp = index.to_p();
        let key = (d, serde_json::to_string(&fp)?);
        {
            let cache = self.mult_cache.lock().unwrap();
            if let Some(m) = cache.get(&key) {
                return Ok(Arc::clone(m));
            }
        }
        let source = self.basis(d)?;
        let k = fp.degree().unwrap_or(0);
        let target = self.basis(d + k)?;
        let fstar = symfun::star_pleth(&fp);
        let mut matrix =
            vec![vec![QtRational::zero(); source.parts.len()]; target.parts.len()];
        for (mu_i, _mu) in source.parts.iter().enumerate() {
            let prod = fstar.mul(&source.in_p[mu_i]);
            let expanded = target.expand_component(&prod);
            for (lam, c) in expanded.terms() {
                matrix[target.index[lam]][mu_i] = c.clone();
            }
        }
        let arc = Arc::new(matrix);
        let mut cache = self.mult_cache.lock().unwrap();
        Ok(Arc::clone(cache.entry(key).or_insert(arc)))
    }

    pub fn cache_dir(&self) -> Option<&std::path::Path> {
        self.cache_dir.as_deref()
    }

    pub fn basis(&self, n: u32) -> Result<Arc<MacdonaldBasis>> {
        {
            let map = self.map.lock().unwrap();
            if let Some(b) = map.get(&n) {
                return Ok(Arc::clone(b));
            }
        }
        let built = if let Some(dir) = &self.cache_dir {
            match crate::cache::load_degree(dir, n)? {
                Some(basis) => basis,
                None => {
                    let basis = build_macdonald(n)?;
                    crate::cache::store_degree(dir, &basis)?;
                    basis
                }
            }
        } else {
            build_macdonald(n)?
        };
        let arc = Arc::new(built);
        let mut map = self.map.lock().unwrap();
        Ok(Arc::clone(map.entry(n).or_insert(arc)))
    }

    /// Expand f (any classical basis, possibly inhomogeneous) in the H~ basis.
    pub fn expand(&self, f: &SymFunc) -> Result<SymFunc> {
        if f.basis() == Basis::Htilde {
            return Ok(f.clone());
        }
        let mut out = SymFunc::zero(Basis::Htilde);
        for d in f.degrees() {
            let comp = f.homogeneous_component(d);
            let basis = self.basis(d)?;
            out = out.add(&basis.expand_component(&comp));
        }
        Ok(out)
    }

    /// Rewrite a function given in the H~ basis into the power sum basis.
    pub fn htilde_to_p(&self, f: &SymFunc) -> Result<SymFunc> {
        if f.basis() != Basis::Htilde {
            return Ok(f.to_p());
        }
        let mut out = SymFunc::zero(Basis::P);
        for (mu, c) in f.terms() {
            let basis = self.basis(mu.size())?;
            out = out.add(&basis.htilde_p(mu).scale(c));
        }
        Ok(out)
    }

    /// Full conversion including the H~ tag on either side.
    pub fn convert(&self, f: &SymFunc, target: Basis) -> Result<SymFunc> {
        if f.basis() == target {
            return Ok(f.clone());
        }
        match (f.basis(), target) {
            (Basis::Htilde, _) => self.htilde_to_p(f)?.convert(target).or_else(|_| {
                // target == Htilde is covered by the first branch
                unreachable!()
            }),
            (_, Basis::Htilde) => self.expand(f),
            _ => f.convert(target),
        }
    }
}

/// Build one degree from the triangularity characterization.
///
/// The linear system mixes rows polynomial in q (from the X(1-q) support
/// condition) with rows polynomial in t (from X(1-t)). Solving it directly
/// over Q(q,t) blows up, so the q-rows are specialized at integer nodes,
/// each specialized system is solved over Q(t) where gcds are univariate,
/// and the q-dependence is recovered by Lagrange interpolation: the Kostka
/// coefficients for mu are polynomials with deg_q <= n(mu').
pub fn build_macdonald(n: u32) -> Result<MacdonaldBasis> {
    let parts = partitions(n);
    let index: HashMap<Partition, usize> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let k = parts.len();

    // Schur expansions of s_l[X(1-q)] and s_l[X(1-t)].
    let image_matrix = |alpha: &Alphabet| -> Vec<Vec<QtRational>> {
        parts
            .iter()
            .map(|l| {
                let img = symfun::plethysm(&SymFunc::s(l.clone()), alpha)
                    .convert(Basis::S)
                    .unwrap();
                parts.iter().map(|nu| img.coeff(nu)).collect()
            })
            .collect()
    };
    // a1[l][nu] = coefficient of s_nu in s_l[X(1-q)]
    let a1 = image_matrix(&Alphabet::XOneMinusQ);
    let a2 = image_matrix(&Alphabet::XOneMinusT);

    let top = Partition::single(n);
    let solve_one = |mu: &Partition| -> Result<SymFunc> {
        let muc = mu.conjugate();
        // row selectors: which s_nu coefficients must vanish
        let mut a1_rows: Vec<usize> = Vec::new();
        let mut a2_rows: Vec<usize> = Vec::new();
        for (ni, nu) in parts.iter().enumerate() {
            let above_mu = matches!(
                nu.dominance_cmp(mu),
                Some(std::cmp::Ordering::Greater) | Some(std::cmp::Ordering::Equal)
            );
            if !above_mu {
                a1_rows.push(ni);
            }
            let above_muc = matches!(
                nu.dominance_cmp(&muc),
                Some(std::cmp::Ordering::Greater) | Some(std::cmp::Ordering::Equal)
            );
            if !above_muc {
                a2_rows.push(ni);
            }
        }
        let nodes_needed = mu.conjugate().n_stat() as usize + 1;
        // solve at one integer node q = q0 (q = 1 is degenerate: X(1-q) = 0)
        let solve_at = |q0: i64| -> Option<Vec<QtRational>> {
            let q0r = BigRational::from(num_bigint::BigInt::from(q0));
            let mut rows: Vec<(Vec<QtRational>, QtRational)> = Vec::new();
            for &ni in &a1_rows {
                let row: Vec<QtRational> = (0..k)
                    .map(|li| {
                        // entries are polynomials in q alone
                        let v = a1[li][ni].specialize_q(&q0r).ok()?;
                        Some(v)
                    })
                    .collect::<Option<_>>()?;
                rows.push((row, QtRational::zero()));
            }
            for &ni in &a2_rows {
                let row = (0..k).map(|li| a2[li][ni].clone()).collect();
                rows.push((row, QtRational::zero()));
            }
            let mut norm_row = vec![QtRational::zero(); k];
            norm_row[index[&top]] = QtRational::one();
            rows.push((norm_row, QtRational::one()));
            solve_unique(rows, k)
        };
        let mut nodes: Vec<i64> = Vec::new();
        let mut values: Vec<Vec<QtRational>> = Vec::new();
        let mut candidate = 2i64;
        while nodes.len() < nodes_needed && candidate < 500 {
            if let Some(sol) = solve_at(candidate) {
                nodes.push(candidate);
                values.push(sol);
            }
            candidate += 1;
        }
        if nodes.len() < nodes_needed {
            return Err(Error::Construction(format!(
                "triangularity system for {:?} lacks enough regular nodes",
                mu
            )));
        }
        // Lagrange interpolation in q through the integer nodes
        let mut coeffs = vec![QtRational::zero(); k];
        for (j, &qj) in nodes.iter().enumerate() {
            // L_j(q) = prod_(i != j) (q - q_i) / (q_j - q_i)
            let mut basis_poly = QtRational::one();
            for (i, &qi) in nodes.iter().enumerate() {
                if i == j {
                    continue;
                }
                let num = &QtRational::q() - &QtRational::from_int(qi);
                let den = QtRational::from_int(qj - qi);
                basis_poly = &basis_poly * &(&num / &den);
            }
            for (li, coeff) in coeffs.iter_mut().enumerate() {
                if !values[j][li].is_zero() {
                    *coeff = &*coeff + &(&values[j][li] * &basis_poly);
                }
            }
        }
        let mut f = SymFunc::zero(Basis::S);
        for (li, c) in coeffs.into_iter().enumerate() {
            if !c.is_polynomial() {
                return Err(Error::Construction(format!(
                    "interpolated coefficient for {:?} is not polynomial",
                    mu
                )));
            }
            f.add_term(parts[li].clone(), c);
        }
        Ok(f)
    };

    let schur: Vec<SymFunc> = {
        use rayon::prelude::*;
        parts
            .par_iter()
            .map(|mu| solve_one(mu))
            .collect::<Result<Vec<_>>>()?
    };

    let in_p: Vec<SymFunc> = schur.iter().map(|f| f.to_p()).collect();
    let stats: Vec<QtStats> = parts.iter().map(qt_stats).collect();

    let basis = MacdonaldBasis {
        degree: n,
        parts,
        index,
        schur,
        in_p,
        stats,
    };
    validate(&basis)?;
    Ok(basis)
}

/// Gaussian elimination for an overdetermined but consistent system; returns
/// None if the solution is not unique or the system is inconsistent.
fn solve_unique(
    mut rows: Vec<(Vec<QtRational>, QtRational)>,
    ncols: usize,
) -> Option<Vec<QtRational>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let nrows = rows.len();
    let mut used = vec![false; nrows];
    for col in 0..ncols {
        // cheapest pivot: fewest numerator terms
        let mut best: Option<(usize, usize)> = None;
        for (r, (row, _)) in rows.iter().enumerate() {
            if used[r] || row[col].is_zero() {
                continue;
            }
            let weight = row[col].num().num_terms() + row[col].den().num_terms();
            if best.map(|(_, w)| weight < w).unwrap_or(true) {
                best = Some((r, weight));
            }
        }
        let (pr, _) = best?;
        used[pr] = true;
        pivots.push((pr, col));
        let pv = rows[pr].0[col].clone();
        let pivot_row: Vec<QtRational> = rows[pr].0.iter().map(|x| x / &pv).collect();
        let pivot_rhs = &rows[pr].1 / &pv;
        rows[pr].0 = pivot_row.clone();
        rows[pr].1 = pivot_rhs.clone();
        for r in 0..nrows {
            if r == pr || rows[r].0[col].is_zero() {
                continue;
            }
            let f = rows[r].0[col].clone();
            for c in 0..ncols {
                if !pivot_row[c].is_zero() {
                    let sub = &pivot_row[c] * &f;
                    rows[r].0[c] = &rows[r].0[c] - &sub;
                }
            }
            let sub = &pivot_rhs * &f;
            rows[r].1 = &rows[r].1 - &sub;
        }
    }
    // consistency: all unused rows must be identically zero now
    for (r, (row, rhs)) in rows.iter().enumerate() {
        if !used[r] && (row.iter().any(|x| !x.is_zero()) || !rhs.is_zero()) {
            return None;
        }
    }
    let mut sol = vec![QtRational::zero(); ncols];
    for (r, c) in pivots {
        sol[c] = rows[r].1.clone();
    }
    Some(sol)
}

/// The validation gate run on every constructed degree.
pub fn validate(basis: &MacdonaldBasis) -> Result<()> {
    let n = basis.degree;
    let k = basis.parts.len();
    // star orthogonality with norms w_mu
    for i in 0..k {
        for j in i..k {
            let v = star_inner(&basis.in_p[i], &basis.in_p[j]);
            let expect = if i == j {
                basis.stats[i].w.clone()
            } else {
                QtRational::zero()
            };
            if v != expect {
                return Err(Error::Construction(format!(
                    "orthogonality failed at {:?}, {:?}",
                    basis.parts[i], basis.parts[j]
                )));
            }
        }
    }
    // hook coefficients <H~_mu, s_(n-r,1^r)> = e_r[B_mu - 1]
    for (i, mu) in basis.parts.iter().enumerate() {
        for r in 0..n {
            let mut hook = vec![n - r];
            hook.extend(std::iter::repeat(1).take(r as usize));
            let hook = Partition::new(hook).unwrap();
            let lhs = hall_inner(&basis.schur[i], &SymFunc::s(hook));
            let rhs = eval_constant_alphabet(&SymFunc::e(r as i64), |kk| {
                &symfun::b_mu_pow(mu, kk) - &QtRational::one()
            });
            if lhs != rhs {
                return Err(Error::Construction(format!(
                    "hook coefficient failed at mu={:?}, r={}",
                    mu, r
                )));
            }
        }
    }
    if n == 0 {
        return Ok(());
    }
    // reciprocity between same-degree pairs:
    // H~_a[M B_b] / Pi_a = H~_b[M B_a] / Pi_b
    for i in 0..k {
        for j in i..k {
            let ev = |f: usize, at: usize| -> QtRational {
                let mu = &basis.parts[at];
                let val = eval_constant_alphabet(&basis.in_p[f], |kk| {
                    &symfun::mb_scalar(kk) * &symfun::b_mu_pow(mu, kk)
                });
                &val / &basis.stats[f].pi
            };
            if ev(i, j) != ev(j, i) {
                return Err(Error::Construction(format!(
                    "reciprocity failed at {:?}, {:?}",
                    basis.parts[i], basis.parts[j]
                )));
            }
        }
    }
    // H~_mu[(1-t)(1-q^j)] = (1-q^j) Pi_mu h_j[(1-t)B_mu]
    let one = QtRational::one();
    for (i, mu) in basis.parts.iter().enumerate() {
        for j in 1..=3u32 {
            let lhs = eval_constant_alphabet(&basis.in_p[i], |kk| {
                let ft = &one - &QtRational::qt_monomial(0, kk as i64);
                let fq = &one - &QtRational::qt_monomial((j as i64) * kk as i64, 0);
                &ft * &fq
            });
            let hj = eval_constant_alphabet(&SymFunc::h(j as i64), |kk| {
                let ft = &one - &QtRational::qt_monomial(0, kk as i64);
                &ft * &symfun::b_mu_pow(mu, kk)
            });
            let rhs = &(&(&one - &QtRational::qt_monomial(j as i64, 0)) * &basis.stats[i].pi)
                * &hj;
            if lhs != rhs {
                return Err(Error::Construction(format!(
                    "principal evaluation failed at mu={:?}, j={}",
                    mu, j
                )));
            }
        }
    }
    Ok(())
}

/// Rebuild a basis object from stored Schur expansions (used by the disk
/// cache). The caller decides whether validation must re-run.
pub fn from_schur_expansions(n: u32, schur: Vec<SymFunc>) -> MacdonaldBasis {
    let parts = partitions(n);
    let index: HashMap<Partition, usize> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let in_p = schur.iter().map(|f| f.to_p()).collect();
    let stats = parts.iter().map(qt_stats).collect();
    MacdonaldBasis {
        degree: n,
        parts,
        index,
        schur,
        in_p,
        stats,
    }
}

/// Pieri coefficients c^(k)_(mu,nu): h_k^perp H~_mu = sum_nu c H~_nu.
pub fn pieri_c(
    ctx: &MacdonaldCtx,
    k: u32,
    mu: &Partition,
) -> Result<BTreeMap<Partition, QtRational>> {
    let n = mu.size();
    if k > n {
        return Ok(BTreeMap::new());
    }
    let basis = ctx.basis(n)?;
    let skewed = symfun::skew_perp(&SymFunc::h(k as i64), basis.htilde_p(mu));
    let expanded = ctx.expand(&skewed)?;
    Ok(expanded.terms().map(|(l, c)| (l.clone(), c.clone())).collect())
}

/// Pieri coefficients d^(k)_(mu,nu): e_k[X/M] H~_nu = sum_mu d H~_mu.
pub fn pieri_d(
    ctx: &MacdonaldCtx,
    k: u32,
    nu: &Partition,
) -> Result<BTreeMap<Partition, QtRational>> {
    let basis = ctx.basis(nu.size())?;
    let ek_star = symfun::star_pleth(&SymFunc::e(k as i64));
    let prod = ek_star.mul(basis.htilde_p(nu));
    let expanded = ctx.expand(&prod)?;
    Ok(expanded.terms().map(|(l, c)| (l.clone(), c.clone())).collect())
}

/// Generalized Pieri coefficients d^A_(mu,nu): A H~_nu = sum_mu d^A H~_mu
/// for an arbitrary homogeneous multiplier A.
pub fn pieri_d_general(
    ctx: &MacdonaldCtx,
    a: &SymFunc,
    nu: &Partition,
) -> Result<BTreeMap<Partition, QtRational>> {
    let basis = ctx.basis(nu.size())?;
    let prod = a.mul(basis.htilde_p(nu));
    let expanded = ctx.expand(&prod)?;
    Ok(expanded.terms().map(|(l, c)| (l.clone(), c.clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn stats_small() {
        let s1 = qt_stats(&part(&[1]));
        assert_eq!(s1.b, QtRational::one());
        assert_eq!(s1.t, QtRational::one());
        assert_eq!(s1.pi, QtRational::one());
        assert_eq!(s1.w, QtRational::big_m());
        assert_eq!(s1.d, &QtRational::big_m() - &QtRational::one());

        let s21 = qt_stats(&part(&[2, 1]));
        let expect_b = &(&QtRational::one() + &QtRational::q()) + &QtRational::t();
        assert_eq!(s21.b, expect_b);
        assert_eq!(s21.t, &QtRational::q() * &QtRational::t());

        let empty = qt_stats(&Partition::empty());
        assert!(empty.b.is_zero());
        assert_eq!(empty.t, QtRational::one());
        assert_eq!(empty.pi, QtRational::one());
        assert_eq!(empty.w, QtRational::one());
        assert_eq!(empty.d, QtRational::from_int(-1));
    }

    #[test]
    fn degree_one_and_two() {
        let ctx = MacdonaldCtx::new();
        let b1 = ctx.basis(1).unwrap();
        assert_eq!(*b1.htilde_schur(&part(&[1])), SymFunc::s(part(&[1])));

        // H~_(2) = s_2 + q s_11, H~_(1,1) = s_2 + t s_11
        let b2 = ctx.basis(2).unwrap();
        let h2 = b2.htilde_schur(&part(&[2]));
        assert_eq!(h2.coeff(&part(&[2])), QtRational::one());
        assert_eq!(h2.coeff(&part(&[1, 1])), QtRational::q());
        let h11 = b2.htilde_schur(&part(&[1, 1]));
        assert_eq!(h11.coeff(&part(&[2])), QtRational::one());
        assert_eq!(h11.coeff(&part(&[1, 1])), QtRational::t());
    }

    #[test]
    fn row_shape_is_principally_specialized_h() {
        // H~_(n) = prod_i (1-q^i) h_n[X/(1-q)]
        let ctx = MacdonaldCtx::new();
        for n in 1..=4u32 {
            let b = ctx.basis(n).unwrap();
            let hn = symfun::plethysm(&SymFunc::h(n as i64), &Alphabet::XOverOneMinusQ);
            let mut c = QtRational::one();
            for i in 1..=n {
                c = &c * &(&QtRational::one() - &QtRational::qt_monomial(i as i64, 0));
            }
            let expect = hn.scale(&c);
            assert_eq!(b.htilde_p(&part(&[n])).clone(), expect);
        }
    }

    #[test]
    fn builds_validate_through_degree_five() {
        let ctx = MacdonaldCtx::new();
        for n in 0..=5 {
            ctx.basis(n).unwrap();
        }
    }

    #[test]
    fn expansion_round_trip() {
        let ctx = MacdonaldCtx::new();
        for n in 1..=4u32 {
            let f = SymFunc::e(n as i64);
            let exp = ctx.expand(&f).unwrap();
            let back = ctx.htilde_to_p(&exp).unwrap();
            assert_eq!(back, f.to_p());
        }
    }

    #[test]
    fn pieri_h1_on_single_cell() {
        let ctx = MacdonaldCtx::new();
        let c = pieri_c(&ctx, 1, &part(&[1])).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[&Partition::empty()], QtRational::one());
    }

    #[test]
    fn pieri_c_d_transpose_relation() {
        // c^(k)_(mu,nu) = (w_mu / w_nu) d^(k)_(mu,nu)
        let ctx = MacdonaldCtx::new();
        for n in 1..=4u32 {
            for k in 1..=n {
                for mu in partitions(n) {
                    let cs = pieri_c(&ctx, k, &mu).unwrap();
                    let wmu = qt_stats(&mu).w;
                    for nu in partitions(n - k) {
                        let ds = pieri_d(&ctx, k, &nu).unwrap();
                        let c = cs.get(&nu).cloned().unwrap_or_default();
                        let d = ds.get(&mu).cloned().unwrap_or_default();
                        let wnu = qt_stats(&nu).w;
                        assert_eq!(&c * &wnu, &d * &wmu, "failed at mu={:?} nu={:?}", mu, nu);
                    }
                }
            }
        }
    }
}
