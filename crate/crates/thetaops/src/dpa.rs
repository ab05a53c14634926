//! The Dyck path algebra: the spaces V_k = Lambda[y_1..y_k], the exchange
//! operator Upsilon (giving T_i = Upsilon_{y_i,y_(i+1)}), the raising and
//! lowering operators d_+ and d_-, the path functional d(pi), and the
//! decorated compositional recursion M_alpha^{*k}.
//!
//! (Upsilon P)(u,v) = ((q-1) u P(u,v) + (v - qu) P(v,u)) / (v - u); the
//! numerator is always exactly divisible by v - u, and the division is
//! asserted, never rounded. With this normalization symmetric polynomials
//! are fixed and the quadratic relation is (Upsilon - 1)(Upsilon + q) = 0;
//! d on a path then reproduces the zero-weight characteristic function,
//! which is the empirical gate for the whole sign convention.
//!
//! d_+ F = T_1 ... T_k (F[X + (q-1) y_(k+1)]) raises V_k to V_(k+1);
//! d_- F = -F[X - (q-1) y_k] sum_i (-1/y_k)^i e_i[X] |_(y_k^(-1)) lowers.
//! The coefficient extraction at y_k^(-1) picks, from a term carrying
//! y_k^a, exactly the series term i = a + 1, so the e-series is finite.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::combinat::{compositions, Composition, Partition};
use crate::paths::{LatticePath, Step};
use crate::qt::QtRational;
use crate::symfun::{Basis, SymFunc};

/// An element of V_k: a finite sum of y-monomials with symmetric function
/// coefficients (kept in the power sum basis).
#[derive(Clone, PartialEq, Eq)]
pub struct VkElement {
    k: usize,
    terms: BTreeMap<Vec<u32>, SymFunc>,
}

impl VkElement {
    pub fn zero(k: usize) -> VkElement {
        VkElement {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(k: usize) -> VkElement {
        VkElement::from_sym(k, SymFunc::one())
    }

    pub fn from_sym(k: usize, f: SymFunc) -> VkElement {
        let mut out = VkElement::zero(k);
        out.add_term(vec![0; k], f.to_p());
        out
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &SymFunc)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mono: Vec<u32>, f: SymFunc) {
        assert_eq!(mono.len(), self.k, "y-monomial arity mismatch");
        if f.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get().add(&f);
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
        }
    }

    pub fn add(&self, other: &VkElement) -> VkElement {
        assert_eq!(self.k, other.k);
        let mut out = self.clone();
        for (m, f) in &other.terms {
            out.add_term(m.clone(), f.clone());
        }
        out
    }

    pub fn sub(&self, other: &VkElement) -> VkElement {
        self.add(&other.scale(&QtRational::from_int(-1)))
    }

    pub fn scale(&self, c: &QtRational) -> VkElement {
        if c.is_zero() {
            return VkElement::zero(self.k);
        }
        VkElement {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(m, f)| (m.clone(), f.scale(c)))
                .collect(),
        }
    }

    /// The Lambda part of an element free of y-variables.
    pub fn as_symfunc(&self) -> SymFunc {
        let mut out = SymFunc::zero(Basis::P);
        for (m, f) in &self.terms {
            assert!(
                m.iter().all(|&e| e == 0),
                "element still carries y-variables"
            );
            out = out.add(f);
        }
        out
    }

    /// Reinterpret in a larger V (new variables unused).
    fn extend_vars(&self, k: usize) -> VkElement {
        assert!(k >= self.k);
        let mut out = VkElement::zero(k);
        for (m, f) in &self.terms {
            let mut mono = m.clone();
            mono.resize(k, 0);
            out.add_term(mono, f.clone());
        }
        out
    }

    /// Plethystic shift of the Lambda part: p_m -> p_m +/- (q^m - 1) y_j^m.
    fn x_shift(&self, j: usize, plus: bool) -> VkElement {
        assert!(1 <= j && j <= self.k);
        let mut out = VkElement::zero(self.k);
        for (mono, f) in &self.terms {
            for (l, c) in f.terms() {
                let parts = l.parts();
                let m = parts.len();
                for mask in 0..(1u32 << m) {
                    let mut kept: Vec<u32> = Vec::new();
                    let mut coeff = c.clone();
                    let mut yexp = 0u32;
                    for (i, &part) in parts.iter().enumerate() {
                        if mask & (1 << i) == 0 {
                            kept.push(part);
                        } else {
                            // q^m - 1 for the plus shift, 1 - q^m for minus
                            let f = &QtRational::qt_monomial(part as i64, 0) - &QtRational::one();
                            let f = if plus { f } else { -&f };
                            coeff = &coeff * &f;
                            yexp += part;
                        }
                    }
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut nm = mono.clone();
                    nm[j - 1] += yexp;
                    let mut g = SymFunc::zero(Basis::P);
                    g.add_term(Partition::from_unsorted(kept), coeff);
                    out.add_term(nm, g);
                }
            }
        }
        out
    }

    /// The exchange operator on the variables (y_i, y_(i+1)).
    pub fn upsilon(&self, i: usize) -> VkElement {
        assert!(1 <= i && i < self.k, "upsilon needs 1 <= i <= k-1");
        let (ui, vi) = (i - 1, i);
        let q = QtRational::q();
        let qm1 = &q - &QtRational::one();
        // numerator (q-1) u P(u,v) + (v - qu) P(v,u)
        let mut num = VkElement::zero(self.k);
        for (mono, f) in &self.terms {
            let mut m1 = mono.clone();
            m1[ui] += 1;
            num.add_term(m1, f.scale(&qm1));
            let mut swapped = mono.clone();
            swapped.swap(ui, vi);
            let mut m2 = swapped.clone();
            m2[vi] += 1;
            num.add_term(m2, f.clone());
            let mut m3 = swapped;
            m3[ui] += 1;
            num.add_term(m3, f.scale(&q).scale(&QtRational::from_int(-1)));
        }
        // synthetic division by (v - u), viewing num as a polynomial in v
        let dmax = num.terms.keys().map(|m| m[vi]).max().unwrap_or(0);
        let mut buckets: Vec<BTreeMap<Vec<u32>, SymFunc>> =
            vec![BTreeMap::new(); dmax as usize + 1];
        for (mono, f) in num.terms {
            let b = mono[vi] as usize;
            let mut m = mono;
            m[vi] = 0;
            match buckets[b].entry(m) {
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let v = o.get().add(&f);
                    *o.get_mut() = v;
                }
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(f);
                }
            }
        }
        let add_into = |acc: &mut BTreeMap<Vec<u32>, SymFunc>,
                        m: Vec<u32>,
                        f: SymFunc| {
            match acc.entry(m) {
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let v = o.get().add(&f);
                    if v.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = v;
                    }
                }
                std::collections::btree_map::Entry::Vacant(slot) => {
                    if !f.is_zero() {
                        slot.insert(f);
                    }
                }
            }
        };
        let mut out = VkElement::zero(self.k);
        // Q_(d-1) = N_d; Q_(j-1) = N_j + u Q_j; remainder N_0 + u Q_0 = 0
        let mut carry: BTreeMap<Vec<u32>, SymFunc> = BTreeMap::new();
        for j in (1..=dmax as usize).rev() {
            let mut q_level = buckets[j].clone();
            for (m, f) in &carry {
                let mut mu = m.clone();
                mu[ui] += 1;
                add_into(&mut q_level, mu, f.clone());
            }
            q_level.retain(|_, f| !f.is_zero());
            for (m, f) in &q_level {
                let mut mv = m.clone();
                mv[vi] = (j - 1) as u32;
                out.add_term(mv, f.clone());
            }
            carry = q_level;
        }
        // remainder check
        let mut rem = buckets.first().cloned().unwrap_or_default();
        for (m, f) in &carry {
            let mut mu = m.clone();
            mu[ui] += 1;
            add_into(&mut rem, mu, f.clone());
        }
        rem.retain(|_, f| !f.is_zero());
        assert!(
            rem.is_empty(),
            "Upsilon numerator not divisible by v - u: internal invariant violation"
        );
        out
    }

    /// d_+: V_k -> V_(k+1).
    pub fn d_plus(&self) -> VkElement {
        let k = self.k;
        let mut g = self.extend_vars(k + 1).x_shift(k + 1, true);
        for i in (1..=k).rev() {
            g = g.upsilon(i);
        }
        g
    }

    /// d_-: V_k -> V_(k-1).
    pub fn d_minus(&self) -> VkElement {
        assert!(self.k >= 1, "d_minus needs at least one y variable");
        let g = self.x_shift(self.k, false);
        let mut out = VkElement::zero(self.k - 1);
        for (mono, f) in &g.terms {
            let a = mono[self.k - 1];
            let rest = mono[..self.k - 1].to_vec();
            let e = SymFunc::e(a as i64 + 1).to_p();
            let sign = if a % 2 == 0 { 1 } else { -1 };
            out.add_term(rest, f.mul(&e).scale(&QtRational::from_int(sign)));
        }
        out
    }

    pub fn d_minus_pow(&self, times: usize) -> VkElement {
        let mut g = self.clone();
        for _ in 0..times {
            g = g.d_minus();
        }
        g
    }

    /// [d_-, d_+] = d_- d_+ - d_+ d_-.
    pub fn commutator_dmp(&self) -> VkElement {
        self.d_plus().d_minus().sub(&self.d_minus().d_plus())
    }
}

impl std::fmt::Debug for VkElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, g) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "y^{:?} ({:?})", m, g)?;
        }
        Ok(())
    }
}

/// d on partial paths: paths from (0,l) to (n,n) starting with an east step
/// (or empty), read from the left.
pub fn d_of_partial(steps: &[Step]) -> VkElement {
    if steps.is_empty() {
        return VkElement::one(0);
    }
    assert_eq!(steps[0], Step::E, "partial paths start with an east step");
    let mut i = 1;
    let mut norths = 0usize;
    while i < steps.len() && steps[i] == Step::N {
        norths += 1;
        i += 1;
    }
    let rest = d_of_partial(&steps[i..]);
    if norths == 0 {
        rest.d_plus()
    } else {
        let inner = rest.d_minus_pow(norths - 1);
        inner
            .commutator_dmp()
            .scale(&(&QtRational::q() - &QtRational::one()).inv().unwrap())
    }
}

/// d on a full Dyck path: strip the leading north run, apply d on the
/// remainder, then lower back to V_0.
pub fn d_of_path(path: &LatticePath) -> SymFunc {
    assert!(path.is_dyck(), "d is defined on Dyck paths");
    let steps = path.steps();
    let ell = steps.iter().take_while(|&&s| s == Step::N).count();
    d_of_partial(&steps[ell..]).d_minus_pow(ell).as_symfunc()
}

/// The decorated compositional recursion element M_alpha^{*k} in V_(len(alpha)).
///
/// M_negative-k = 0, M_empty^{*k} = delta_(k,0), and for the first part a:
///   a = 1: M = d_+ M_alpha^{*k} + (1/(q-1)) [d_-,d_+] M_(alpha,1)^{*(k-1)}
///   a > 1: M = (t^(a-1)/(q-1)) [d_-,d_+] (sum over beta of a-1 of
///          d_-^(len(beta)-1) M_(alpha beta)^{*k}
///          + the same sum over beta of a with k-1).
pub fn m_alpha(alpha: &Composition, k: i64) -> VkElement {
    if k < 0 {
        return VkElement::zero(alpha.len());
    }
    let key = (alpha.parts().to_vec(), k);
    let lock = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    let cell = {
        let mut map = lock.lock().unwrap();
        Arc::clone(map.entry(key).or_insert_with(|| Arc::new(OnceLock::new())))
    };
    cell.get_or_init(|| compute_m_alpha(alpha, k)).clone()
}

static MEMO: OnceLock<Mutex<HashMap<(Vec<u32>, i64), Arc<OnceLock<VkElement>>>>> =
    OnceLock::new();

fn compute_m_alpha(alpha: &Composition, k: i64) -> VkElement {
    if alpha.is_empty() {
        return if k == 0 {
            VkElement::one(0)
        } else {
            VkElement::zero(0)
        };
    }
    let a = alpha.parts()[0];
    let rest = Composition::new(alpha.parts()[1..].to_vec()).unwrap();
    let qm1_inv = (&QtRational::q() - &QtRational::one()).inv().unwrap();
    if a == 1 {
        let first = m_alpha(&rest, k).d_plus();
        let second = m_alpha(&rest.concat(&Composition::new(vec![1]).unwrap()), k - 1);
        let second = if second.is_zero() {
            VkElement::zero(first.k())
        } else {
            second.commutator_dmp().scale(&qm1_inv)
        };
        first.add(&second)
    } else {
        let ell = alpha.len();
        let mut acc = VkElement::zero(ell);
        for (size, kk) in [(a - 1, k), (a, k - 1)] {
            if kk < 0 {
                continue;
            }
            for beta in compositions(size) {
                let m = m_alpha(&rest.concat(&beta), kk);
                if m.is_zero() {
                    continue;
                }
                acc = acc.add(&m.d_minus_pow(beta.len() - 1));
            }
        }
        acc.commutator_dmp()
            .scale(&qm1_inv)
            .scale(&QtRational::qt_monomial(0, a as i64 - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounded::to_bounded;
    use crate::macdonald::MacdonaldCtx;
    use crate::ops;
    use crate::paths::families::dyck_paths;
    use crate::paths::zeta::chi_bar;

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn upsilon_on_constants_and_u() {
        // symmetric elements are fixed; u goes to v + (1-q) u
        let one = VkElement::one(2);
        assert_eq!(one.upsilon(1), one);
        let mut sym = VkElement::zero(2);
        sym.add_term(vec![1, 0], SymFunc::p(2));
        sym.add_term(vec![0, 1], SymFunc::p(2));
        assert_eq!(sym.upsilon(1), sym);
        let mut u = VkElement::zero(2);
        u.add_term(vec![1, 0], SymFunc::one());
        let mut expect = VkElement::zero(2);
        expect.add_term(vec![0, 1], SymFunc::one());
        expect.add_term(
            vec![1, 0],
            SymFunc::scalar(&QtRational::one() - &QtRational::q()),
        );
        assert_eq!(u.upsilon(1), expect);
    }

    #[test]
    fn upsilon_hecke_relation() {
        // (Upsilon - 1)(Upsilon + q) = 0 on assorted elements
        let q = QtRational::q();
        let mut samples = Vec::new();
        for (a, b) in [(0u32, 0u32), (1, 0), (0, 1), (2, 1), (1, 2), (3, 0)] {
            let mut p = VkElement::zero(2);
            p.add_term(vec![a, b], SymFunc::e(1).to_p());
            samples.push(p);
            let mut p2 = VkElement::zero(2);
            p2.add_term(vec![a, b], SymFunc::one());
            p2.add_term(vec![b, a], SymFunc::p(2));
            samples.push(p2);
        }
        for p in samples {
            // Upsilon^2 = (1-q) Upsilon + q Id
            let up = p.upsilon(1);
            let lhs = up.upsilon(1);
            let rhs = up
                .scale(&(&QtRational::one() - &q))
                .add(&p.scale(&q));
            assert_eq!(lhs, rhs, "Hecke relation failed");
        }
    }

    #[test]
    fn d_plus_on_scalars() {
        let one = VkElement::one(0);
        assert_eq!(one.d_plus(), VkElement::one(1));
        // no negative powers can appear
        let e2 = VkElement::from_sym(0, SymFunc::e(2));
        let up = e2.d_plus();
        assert!(up.terms().all(|(m, _)| m.len() == 1));
    }

    #[test]
    fn d_minus_small_values() {
        // d_-(1 in V_1) = e_1
        let one = VkElement::one(1);
        assert_eq!(one.d_minus().as_symfunc(), SymFunc::e(1).to_p());
        // d_-(y_1 in V_1) = -e_2
        let mut y = VkElement::zero(1);
        y.add_term(vec![1], SymFunc::one());
        assert_eq!(y.d_minus().as_symfunc(), SymFunc::e(2).to_p().neg());
    }

    #[test]
    fn d_path_base_cases() {
        assert_eq!(d_of_partial(&[]), VkElement::one(0));
        // d(NE) = e_1
        let p = LatticePath::parse("NE").unwrap();
        assert_eq!(d_of_path(&p), SymFunc::e(1).to_p());
    }

    #[test]
    fn d_equals_zero_weight_characteristic() {
        for n in 1..=4usize {
            for path in dyck_paths(n) {
                let lhs = to_bounded(&d_of_path(&path), n).unwrap();
                let rhs = chi_bar(&path, n);
                assert_eq!(lhs, rhs, "chi-bar mismatch on {}", path);
            }
        }
    }

    #[test]
    fn m_alpha_initial_conditions() {
        assert_eq!(m_alpha(&Composition::empty(), 0), VkElement::one(0));
        assert!(m_alpha(&Composition::empty(), 1).is_zero());
        assert!(m_alpha(&Composition::empty(), 3).is_zero());
    }

    #[test]
    fn m_alpha_reproduces_nabla_c_alpha() {
        // d_-^l M_alpha^{*0} = nabla C_alpha
        let ctx = MacdonaldCtx::new();
        for n in 1..=4u32 {
            for alpha in compositions(n) {
                let lhs = m_alpha(&alpha, 0)
                    .d_minus_pow(alpha.len())
                    .as_symfunc();
                let rhs = ctx
                    .htilde_to_p(&ops::nabla(&ctx, &ops::c_alpha(&alpha)).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "failed at alpha={:?}", alpha);
            }
        }
    }
}
