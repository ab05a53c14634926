//! Polynomials in a bounded set of variables x_1..x_N.
//!
//! This is the comparison bridge between symmetric functions and path
//! enumerators: a homogeneous symmetric function of degree n <= N is
//! faithfully determined by its image in N variables (the monomial symmetric
//! functions m_l with len(l) <= N stay independent), so equality of
//! enumerators is checked here rather than lifting quasisymmetric sums back
//! to Lambda.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::combinat::Partition;
use crate::error::{Error, Result};
use crate::qt::QtRational;
use crate::symfun::{Basis, SymFunc};

/// Exponent-vector polynomial in x_1..x_N with Q(q,t) coefficients.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, QtRational>,
}

impl BoundedPoly {
    pub fn zero(nvars: usize) -> BoundedPoly {
        BoundedPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> BoundedPoly {
        let mut p = BoundedPoly::zero(nvars);
        p.add_term(vec![0; nvars], QtRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &QtRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: QtRational) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = &*o.get() + &c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &BoundedPoly) -> BoundedPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BoundedPoly) -> BoundedPoly {
        self.add(&other.scale(&QtRational::from_int(-1)))
    }

    pub fn scale(&self, c: &QtRational) -> BoundedPoly {
        if c.is_zero() {
            return BoundedPoly::zero(self.nvars);
        }
        BoundedPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &BoundedPoly) -> BoundedPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = BoundedPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Invariance under permuting the variables, checked by collating each
    /// exponent orbit against its sorted representative.
    pub fn is_symmetric(&self) -> bool {
        for (e, c) in &self.terms {
            let mut sorted = e.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            if sorted != *e {
                match self.terms.get(&sorted) {
                    Some(c2) if c2 == c => {}
                    _ => return false,
                }
            } else {
                // representative: every rearrangement must carry the same coefficient
                for perm in distinct_permutations(e) {
                    match self.terms.get(&perm) {
                        Some(c2) if c2 == c => {}
                        _ => return false,
                    }
                }
            }
        }
        true
    }

    /// Collate a symmetric polynomial back into the monomial basis.
    pub fn to_symfunc(&self) -> Result<SymFunc> {
        if !self.is_symmetric() {
            return Err(Error::Domain(
                "polynomial is not symmetric; cannot collate into m-basis".into(),
            ));
        }
        let mut f = SymFunc::zero(Basis::M);
        for (e, c) in &self.terms {
            let mut sorted = e.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            if sorted == *e {
                f.add_term(Partition::from_unsorted(sorted), c.clone());
            }
        }
        Ok(f)
    }
}

impl fmt::Debug for BoundedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*x^{:?}", c, e)?;
        }
        Ok(())
    }
}

/// All distinct permutations of a multiset of exponents.
pub fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut sorted = v.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(sorted.clone());
        // next_permutation in place
        let n = sorted.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && sorted[i - 1] >= sorted[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while sorted[j] <= sorted[i - 1] {
            j -= 1;
        }
        sorted.swap(i - 1, j);
        sorted[i..].reverse();
    }
    out
}

/// Monomial symmetric function image in N variables; zero when the partition
/// has more parts than variables.
pub fn monomial_image(l: &Partition, nvars: usize) -> BoundedPoly {
    let mut out = BoundedPoly::zero(nvars);
    if l.len() > nvars {
        return out;
    }
    let mut padded: Vec<u32> = l.parts().to_vec();
    padded.resize(nvars, 0);
    for perm in distinct_permutations(&padded) {
        out.add_term(perm, QtRational::one());
    }
    out
}

/// Image of a symmetric function in x_1..x_N. Faithful for degree <= N;
/// higher-degree components are a domain error.
pub fn to_bounded(f: &SymFunc, nvars: usize) -> Result<BoundedPoly> {
    if let Some(d) = f.degree() {
        if d as usize > nvars {
            return Err(Error::Domain(format!(
                "degree {d} exceeds variable count {nvars}; image would not be faithful"
            )));
        }
    }
    let m = f.convert(Basis::M)?;
    let mut out = BoundedPoly::zero(nvars);
    for (l, c) in m.terms() {
        let img = monomial_image(l, nvars);
        out = out.add(&img.scale(c));
    }
    Ok(out)
}

/// Gessel's fundamental quasisymmetric function Q_{S,n} truncated to N
/// variables: the sum of x_{i_1}...x_{i_n} over weakly increasing sequences
/// with a strict increase at each position in S.
pub fn gessel_fundamental(s: &[usize], n: usize, nvars: usize) -> Result<BoundedPoly> {
    if s.iter().any(|&i| i == 0 || i >= n.max(1)) {
        return Err(Error::Domain(format!(
            "descent set {:?} not inside 1..{}",
            s,
            n.saturating_sub(1)
        )));
    }
    let mut out = BoundedPoly::zero(nvars);
    if n == 0 {
        out.add_term(vec![0; nvars], QtRational::one());
        return Ok(out);
    }
    let strict: Vec<bool> = (1..n).map(|j| s.contains(&j)).collect();
    fn rec(out: &mut BoundedPoly, seq: &mut Vec<usize>, strict: &[bool], n: usize, nvars: usize) {
        if seq.len() == n {
            let mut exps = vec![0u32; nvars];
            for &i in seq.iter() {
                exps[i - 1] += 1;
            }
            out.add_term(exps, QtRational::one());
            return;
        }
        let lo = if seq.is_empty() {
            1
        } else {
            let prev = *seq.last().unwrap();
            if strict[seq.len() - 1] {
                prev + 1
            } else {
                prev
            }
        };
        for i in lo..=nvars {
            seq.push(i);
            rec(out, seq, strict, n, nvars);
            seq.pop();
        }
    }
    let mut seq = Vec::with_capacity(n);
    rec(&mut out, &mut seq, &strict, n, nvars);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::partitions_up_to;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn e2_two_vars() {
        let p = to_bounded(&SymFunc::e(2), 2).unwrap();
        let mut expect = BoundedPoly::zero(2);
        expect.add_term(vec![1, 1], QtRational::one());
        assert_eq!(p, expect);
    }

    #[test]
    fn h2_two_vars() {
        let p = to_bounded(&SymFunc::h(2), 2).unwrap();
        let mut expect = BoundedPoly::zero(2);
        expect.add_term(vec![2, 0], QtRational::one());
        expect.add_term(vec![1, 1], QtRational::one());
        expect.add_term(vec![0, 2], QtRational::one());
        assert_eq!(p, expect);
    }

    #[test]
    fn too_many_parts_vanish() {
        // m_(1,1,1) in 2 variables collapses to zero; the public entry point
        // refuses the unfaithful degree instead.
        assert!(monomial_image(&part(&[1, 1, 1]), 2).is_zero());
        assert!(to_bounded(&SymFunc::m(part(&[1, 1, 1])), 2).is_err());
    }

    #[test]
    fn ring_homomorphism_on_products() {
        for la in partitions_up_to(3) {
            for mu in partitions_up_to(2) {
                if la.size() + mu.size() > 5 {
                    continue;
                }
                let f = SymFunc::s(la.clone());
                let g = SymFunc::s(mu.clone());
                let n = 5;
                let lhs = to_bounded(&f.mul(&g), n).unwrap();
                let rhs = to_bounded(&f, n).unwrap().mul(&to_bounded(&g, n).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn gessel_examples() {
        // Q_{{},2} in 2 vars = h2 image; Q_{{1},2} = e2 image
        let empty = gessel_fundamental(&[], 2, 2).unwrap();
        assert_eq!(empty, to_bounded(&SymFunc::h(2), 2).unwrap());
        let one = gessel_fundamental(&[1], 2, 2).unwrap();
        assert_eq!(one, to_bounded(&SymFunc::e(2), 2).unwrap());
        assert!(gessel_fundamental(&[2], 2, 2).is_err());
    }

    #[test]
    fn gessel_sum_over_syt_gives_schur() {
        // Summing Q_{Des(T),n} over standard Young tableaux of shape l
        // reproduces the Schur image; brute-forced for |l| = 3.
        let n = 3usize;
        for l in crate::combinat::partitions(3) {
            let mut total = BoundedPoly::zero(n);
            for des in syt_descent_sets(&l) {
                total = total.add(&gessel_fundamental(&des, n, n).unwrap());
            }
            let schur = to_bounded(&SymFunc::s(l.clone()), n).unwrap();
            assert_eq!(total, schur, "failed at shape {:?}", l);
        }
    }

    // Standard Young tableaux via recursive growth; returns descent sets.
    fn syt_descent_sets(l: &Partition) -> Vec<Vec<usize>> {
        let n = l.size() as usize;
        let shape: Vec<usize> = l.parts().iter().map(|&p| p as usize).collect();
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); shape.len()];
        let mut out = Vec::new();
        fn rec(
            k: usize,
            n: usize,
            shape: &[usize],
            rows: &mut Vec<Vec<usize>>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if k > n {
                let row_of = |x: usize| rows.iter().position(|r| r.contains(&x)).unwrap();
                let des: Vec<usize> = (1..n).filter(|&i| row_of(i + 1) > row_of(i)).collect();
                out.push(des);
                return;
            }
            for r in 0..shape.len() {
                let len = rows[r].len();
                if len < shape[r] && (r == 0 || rows[r - 1].len() > len) {
                    rows[r].push(k);
                    rec(k + 1, n, shape, rows, out);
                    rows[r].pop();
                }
            }
        }
        rec(1, n, &shape, &mut rows, &mut out);
        out
    }

    #[test]
    fn symmetric_collation_round_trip() {
        let f = SymFunc::e(2).mul(&SymFunc::h(1));
        let b = to_bounded(&f, 3).unwrap();
        assert!(b.is_symmetric());
        let back = b.to_symfunc().unwrap();
        assert_eq!(back.to_p(), f.to_p());
    }
}
