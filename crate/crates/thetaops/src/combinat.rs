//! Integer partitions and compositions, with the cell statistics attached to
//! Ferrers diagrams (arm, leg, co-arm, co-leg) and the auxiliary quantities
//! n(mu) and z_mu.
//!
//! Cells are addressed 0-indexed as (row, col): row r has `parts[r]` cells.
//! In the convention used throughout, for a cell c the arm counts cells
//! strictly to its right, the leg strictly above (higher rows), the co-arm
//! strictly to the left and the co-leg strictly below.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A partition: weakly decreasing positive parts. The empty partition is the
/// unique partition of 0.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        parts.retain(|&p| p != 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "parts not weakly decreasing: {:?}",
                parts
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts, so any multiset of nonnegative integers is accepted.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&p| p != 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn single(n: u32) -> Partition {
        if n == 0 {
            Partition::empty()
        } else {
            Partition(vec![n])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        if self.is_empty() {
            return Partition::empty();
        }
        let cols = self.0[0] as usize;
        let mut parts = vec![0u32; cols];
        for (c, slot) in parts.iter_mut().enumerate() {
            *slot = self.0.iter().filter(|&&p| p as usize > c).count() as u32;
        }
        Partition(parts)
    }

    /// Cells as (row, col), both 0-indexed, row-major.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (r, &p) in self.0.iter().enumerate() {
            for c in 0..p as usize {
                out.push((r, c));
            }
        }
        out
    }

    pub fn contains_cell(&self, cell: (usize, usize)) -> bool {
        let (r, c) = cell;
        r < self.0.len() && c < self.0[r] as usize
    }

    pub fn arm(&self, cell: (usize, usize)) -> u32 {
        self.0[cell.0] - 1 - cell.1 as u32
    }

    pub fn leg(&self, cell: (usize, usize)) -> u32 {
        self.0
            .iter()
            .skip(cell.0 + 1)
            .filter(|&&p| p as usize > cell.1)
            .count() as u32
    }

    pub fn coarm(&self, cell: (usize, usize)) -> u32 {
        cell.1 as u32
    }

    pub fn coleg(&self, cell: (usize, usize)) -> u32 {
        cell.0 as u32
    }

    /// n(mu) = sum_i mu_i (i-1).
    pub fn n_stat(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .map(|(r, &p)| r as u32 * p)
            .sum()
    }

    /// z_mu = prod_i m_i! i^(m_i) where m_i is the multiplicity of i.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let mut m = 0u32;
            while i < self.0.len() && self.0[i] == part {
                m += 1;
                i += 1;
            }
            for f in 1..=m {
                z *= BigInt::from(f);
            }
            z *= BigInt::from(part).pow(m);
        }
        z
    }

    /// Dominance order; None when incomparable or of different sizes.
    pub fn dominance_cmp(&self, other: &Partition) -> Option<Ordering> {
        if self.size() != other.size() {
            return None;
        }
        let l = self.0.len().max(other.0.len());
        let (mut sa, mut sb) = (0i64, 0i64);
        let (mut ge, mut le) = (true, true);
        for i in 0..l {
            sa += *self.0.get(i).unwrap_or(&0) as i64;
            sb += *other.0.get(i).unwrap_or(&0) as i64;
            if sa < sb {
                ge = false;
            }
            if sa > sb {
                le = false;
            }
        }
        match (ge, le) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        }
    }

    /// True if self is contained in other as Ferrers diagrams.
    pub fn contained_in(&self, other: &Partition) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &p)| other.0.get(i).map(|&o| o >= p).unwrap_or(false))
    }

    /// Union as multisets (the p-basis product rule).
    pub fn multiset_union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::from_unsorted(v)
    }

    /// Remove one part equal to k, if present.
    pub fn remove_part(&self, k: u32) -> Option<Partition> {
        let pos = self.0.iter().position(|&p| p == k)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Partition(v))
    }

    pub fn push_part(&self, k: u32) -> Partition {
        if k == 0 {
            return self.clone();
        }
        let mut v = self.0.clone();
        v.push(k);
        Partition::from_unsorted(v)
    }

    pub fn multiplicity(&self, k: u32) -> u32 {
        self.0.iter().filter(|&&p| p == k).count() as u32
    }
}

/// Total order: by size, then reverse lexicographic within a degree, so (n)
/// comes first among partitions of n. This is the serialization order.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All partitions of n, in the canonical order ((n) first).
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn rec(remaining: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        let hi = max.min(remaining);
        for p in (1..=hi).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// Partitions of all sizes from 0 through n.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions).collect()
}

/// A composition: an ordered sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Composition> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Domain(format!("composition parts must be >= 1: {:?}", parts)));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Composition {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Composition(v)
    }

    pub fn prepend(&self, a: u32) -> Composition {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Composition(v)
    }

    pub fn sorted(&self) -> Partition {
        Partition::from_unsorted(self.0.clone())
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All compositions of n (2^(n-1) of them for n >= 1), lexicographic.
pub fn compositions(n: u32) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if remaining == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        for p in 1..=remaining {
            cur.push(p);
            rec(remaining - p, cur, out);
            cur.pop();
        }
    }
    rec(n, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_stats_single_cell() {
        let mu = Partition::new(vec![1]).unwrap();
        assert_eq!(mu.arm((0, 0)), 0);
        assert_eq!(mu.leg((0, 0)), 0);
        assert_eq!(mu.coarm((0, 0)), 0);
        assert_eq!(mu.coleg((0, 0)), 0);
    }

    #[test]
    fn cell_stats_21() {
        // mu = (2,1), cell (1,1) in the paper's 1-indexed convention is
        // (row 0, col 0) here: arm 1, leg 1, coarm 0, coleg 0.
        let mu = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(mu.arm((0, 0)), 1);
        assert_eq!(mu.leg((0, 0)), 1);
        assert_eq!(mu.coarm((0, 0)), 0);
        assert_eq!(mu.coleg((0, 0)), 0);
    }

    #[test]
    fn n_stat_and_z() {
        assert_eq!(Partition::new(vec![2, 2]).unwrap().n_stat(), 2);
        assert_eq!(Partition::new(vec![2, 1]).unwrap().z(), BigInt::from(2));
        assert_eq!(Partition::new(vec![1, 1, 1]).unwrap().z(), BigInt::from(6));
        assert_eq!(Partition::new(vec![3]).unwrap().z(), BigInt::from(3));
    }

    #[test]
    fn conjugate_involution() {
        for mu in partitions(6) {
            assert_eq!(mu.conjugate().conjugate(), mu);
            assert_eq!(mu.conjugate().size(), mu.size());
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=9).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn canonical_order_starts_with_row() {
        let ps = partitions(4);
        assert_eq!(ps[0], Partition::new(vec![4]).unwrap());
        assert_eq!(*ps.last().unwrap(), Partition::new(vec![1, 1, 1, 1]).unwrap());
        let mut sorted = ps.clone();
        sorted.sort();
        assert_eq!(ps, sorted);
    }

    #[test]
    fn dominance_examples() {
        let a = Partition::new(vec![3, 1]).unwrap();
        let b = Partition::new(vec![2, 2]).unwrap();
        assert_eq!(a.dominance_cmp(&b), Some(Ordering::Greater));
        let c = Partition::new(vec![4, 1, 1]).unwrap();
        let d = Partition::new(vec![3, 3]).unwrap();
        assert_eq!(c.dominance_cmp(&d), None);
    }

    #[test]
    fn composition_counts_and_concat() {
        assert_eq!(compositions(4).len(), 8);
        let a = Composition::new(vec![1, 2]).unwrap();
        let b = Composition::new(vec![3]).unwrap();
        assert_eq!(a.concat(&b).parts(), &[1, 2, 3]);
        assert!(Composition::new(vec![1, 0]).is_err());
    }
}
