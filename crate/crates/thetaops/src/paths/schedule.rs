//! Diagonal words, runs, schedule numbers, and the closed product formula
//! for the q,t-enumerator of preference functions with a fixed diagonal word
//! and shift.
//!
//! The diagonal word lists the labels diagonal by diagonal, top diagonal
//! first, each diagonal sorted increasingly (zeros first). Runs are exactly
//! the diagonals; a run is positive, zero or negative according to the sign
//! of its diagonal index, which depends on the shift. Every nonzero letter c
//! gets a schedule number w^s(c):
//!   positive run: #bigger in its run + #smaller in the next run,
//!   zero run:     1 + #bigger in its run,
//!   negative run: #smaller in its run + #bigger in the previous run,
//! and the enumerator of the whole fiber factors as
//!   t^maj(tau) q^(p_(-1)+...+p_(-s)) prod [w^s(c)]_q
//!     prod_(i>=0) qbinom(r_i - 1, r_i - p_i)
//!     prod_(i<0)  qbinom(p_(i+1) + r_i - p_i - 1, r_i - p_i)
//! with r_i the run length and p_i the number of nonzero letters in it.

use std::collections::BTreeMap;

use super::LabelledPath;
use crate::error::{Error, Result};
use crate::qt::{q_binomial, q_bracket, q_factorial, QtRational};

/// A diagonal word split into its runs, with the shift fixing which run sits
/// on which diagonal. runs[0] is the top diagonal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagWord {
    runs: Vec<Vec<u32>>,
    shift: usize,
}

impl DiagWord {
    /// Read the diagonal word off a labelled path (zeros included).
    pub fn from_path(p: &LabelledPath) -> DiagWord {
        let a = p.path.area_word();
        let shift = p.path.shift();
        let hi = a.iter().max().copied().unwrap_or(0);
        let mut runs = Vec::new();
        let mut d = hi;
        while d >= -shift {
            let mut labels: Vec<u32> = (0..p.path.size())
                .filter(|&i| a[i] == d)
                .map(|i| match p.labels[i] {
                    super::Label::Zero => 0,
                    super::Label::Pos(v) => v,
                    super::Label::Inf => panic!("diagonal words take finite labels"),
                })
                .collect();
            labels.sort_unstable();
            runs.push(labels);
            d -= 1;
        }
        DiagWord {
            runs,
            shift: shift as usize,
        }
    }

    /// Split a raw word into maximal weakly increasing runs and attach a
    /// shift. Rejects words whose run count cannot host the shift and runs
    /// made of zeros only.
    pub fn from_word(word: &[u32], shift: usize) -> Result<DiagWord> {
        if word.is_empty() {
            return Err(Error::Domain("empty diagonal word".into()));
        }
        let mut runs: Vec<Vec<u32>> = Vec::new();
        let mut cur = vec![word[0]];
        for &x in &word[1..] {
            if x >= *cur.last().unwrap() {
                cur.push(x);
            } else {
                runs.push(std::mem::take(&mut cur));
                cur.push(x);
            }
        }
        runs.push(cur);
        if runs.len() <= shift {
            return Err(Error::Domain(format!(
                "word has {} runs, too few for shift {shift}",
                runs.len()
            )));
        }
        if runs.iter().any(|r| r.iter().all(|&x| x == 0)) {
            return Err(Error::Domain(
                "a run of a diagonal word never consists of only zeros".into(),
            ));
        }
        Ok(DiagWord { runs, shift })
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn runs(&self) -> &[Vec<u32>] {
        &self.runs
    }

    /// Diagonal index of runs[idx]: top run first.
    pub fn diag_of(&self, idx: usize) -> i64 {
        (self.runs.len() - 1 - self.shift) as i64 - idx as i64
    }

    pub fn word(&self) -> Vec<u32> {
        self.runs.iter().flatten().copied().collect()
    }

    pub fn reduced_word(&self) -> Vec<u32> {
        self.word().into_iter().filter(|&x| x != 0).collect()
    }

    /// Major index of the word; equal to the area of every path in the
    /// fiber, and to the weighted run-length sum.
    pub fn maj(&self) -> i64 {
        let w = self.word();
        let desc: i64 = (1..w.len())
            .filter(|&i| w[i - 1] > w[i])
            .map(|i| i as i64)
            .sum();
        let weighted: i64 = self
            .runs
            .iter()
            .enumerate()
            .map(|(idx, r)| (self.diag_of(idx) + self.shift as i64) * r.len() as i64)
            .sum();
        assert_eq!(desc, weighted, "major index disagrees with the area formula");
        desc
    }

    /// Schedule number of a nonzero letter.
    pub fn schedule_number(&self, c: u32) -> Result<u64> {
        if c == 0 {
            return Err(Error::Domain("schedule numbers index nonzero letters".into()));
        }
        let idx = self
            .runs
            .iter()
            .position(|r| r.contains(&c))
            .ok_or_else(|| Error::Domain(format!("letter {c} not in the word")))?;
        let run = &self.runs[idx];
        let d = self.diag_of(idx);
        let count = |r: &[u32], pred: &dyn Fn(u32) -> bool| r.iter().filter(|&&x| pred(x)).count() as u64;
        Ok(if d > 0 {
            let next = self.runs.get(idx + 1).map(|v| v.as_slice()).unwrap_or(&[]);
            count(run, &|x| x > c) + count(next, &|x| x < c)
        } else if d == 0 {
            1 + count(run, &|x| x > c)
        } else {
            let prev = &self.runs[idx - 1];
            count(run, &|x| x < c) + count(prev, &|x| x > c)
        })
    }

    pub fn schedule_numbers(&self) -> Result<BTreeMap<u32, u64>> {
        let mut out = BTreeMap::new();
        for c in self.reduced_word() {
            out.insert(c, self.schedule_number(c)?);
        }
        Ok(out)
    }

    /// The closed product formula for sum q^dinv t^area over the fiber of
    /// preference functions with this diagonal word and shift.
    pub fn closed_form(&self) -> Result<QtRational> {
        let q = QtRational::q();
        let r_len = |idx: usize| self.runs[idx].len() as i64;
        let p_len =
            |idx: usize| self.runs[idx].iter().filter(|&&x| x != 0).count() as i64;
        // bonus: q^(p_(-1) + ... + p_(-s))
        let mut bonus_exp = 0i64;
        for idx in 0..self.runs.len() {
            if self.diag_of(idx) < 0 {
                bonus_exp += p_len(idx);
            }
        }
        let mut acc = QtRational::qt_monomial(bonus_exp, self.maj());
        for c in self.reduced_word() {
            acc = &acc * &q_bracket(self.schedule_number(c)? as i64, &q)?;
        }
        for idx in 0..self.runs.len() {
            let d = self.diag_of(idx);
            let (r, p) = (r_len(idx), p_len(idx));
            if d >= 0 {
                acc = &acc * &q_binomial(r - 1, r - p, &q);
            } else {
                let p_above = p_len(idx - 1);
                acc = &acc * &q_binomial(p_above + r - p - 1, r - p, &q);
            }
        }
        Ok(acc)
    }
}

/// Consecutive blocks of a word: maximal contiguous substrings of the form
/// i, i+1, ..., i+k with i nonzero. The Young subgroup they generate is the
/// quasisymmetric factorization group.
pub fn yconsec_blocks(word: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < word.len() {
        if word[i] == 0 {
            i += 1;
            continue;
        }
        let mut block = vec![word[i]];
        while i + 1 < word.len() && word[i + 1] == word[i] + 1 {
            i += 1;
            block.push(word[i]);
        }
        out.push(block);
        i += 1;
    }
    out
}

/// Elements of the Young subgroup fixing everything outside the consecutive
/// blocks, as permutations of 1..n in one-line notation.
pub fn yconsec_elements(word: &[u32], n: usize) -> Vec<Vec<u32>> {
    let blocks = yconsec_blocks(word);
    let mut perms: Vec<Vec<u32>> = vec![(1..=n as u32).collect()];
    for block in blocks {
        if block.len() < 2 {
            continue;
        }
        let values = block.clone();
        let arrangements = permutations(&values);
        let mut next = Vec::new();
        for base in &perms {
            for arr in &arrangements {
                let mut p = base.clone();
                for (slot, &v) in values.iter().zip(arr.iter()) {
                    p[(*slot - 1) as usize] = v;
                }
                next.push(p);
            }
        }
        perms = next;
    }
    perms
}

fn permutations(values: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut v = values.to_vec();
    let mut used = vec![false; values.len()];
    let mut cur = Vec::new();
    fn rec(
        v: &[u32],
        used: &mut Vec<bool>,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if cur.len() == v.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..v.len() {
            if !used[i] {
                used[i] = true;
                cur.push(v[i]);
                rec(v, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(&mut v, &mut used, &mut cur, &mut out);
    out
}

/// Inversions of a permutation in one-line notation.
pub fn inv_of_perm(p: &[u32]) -> i64 {
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

/// Both sides of the two-run schedule identity: for a diagonal word with
/// exactly two runs alpha beta,
/// [b-1]! prod_(c in reduced alpha) [w^0(c)] =
/// [a~+b-b~-1]! prod_(c in reduced beta) [w^1(c)].
pub fn two_run_identity_sides(alpha: &[u32], beta: &[u32]) -> Result<(QtRational, QtRational)> {
    let q = QtRational::q();
    let word: Vec<u32> = alpha.iter().chain(beta.iter()).copied().collect();
    let w0 = DiagWord::from_word(&word, 0)?;
    let w1 = DiagWord::from_word(&word, 1)?;
    if w0.runs().len() != 2 {
        return Err(Error::Domain("expected exactly two runs".into()));
    }
    let b = beta.len() as i64;
    let a_red = alpha.iter().filter(|&&x| x != 0).count() as i64;
    let b_red = beta.iter().filter(|&&x| x != 0).count() as i64;
    let mut lhs = q_factorial(b - 1, &q)?;
    for &c in alpha.iter().filter(|&&x| x != 0) {
        lhs = &lhs * &q_bracket(w0.schedule_number(c)? as i64, &q)?;
    }
    let mut rhs = q_factorial(a_red + b - b_red - 1, &q)?;
    for &c in beta.iter().filter(|&&x| x != 0) {
        rhs = &rhs * &q_bracket(w1.schedule_number(c)? as i64, &q)?;
    }
    Ok((lhs, rhs))
}

/// All two-run diagonal words with |alpha| = a, |beta| = b: zeros first in
/// each run, distinct positive letters 1..(number of nonzeros) overall, and
/// a descent at the junction.
pub fn two_run_words(a: usize, b: usize) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for za in 0..a {
        for zb in 0..b {
            let pa = a - za;
            let pb = b - zb;
            let n = pa + pb;
            // choose which of 1..n land in alpha (increasing in each run)
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != pa {
                    continue;
                }
                let mut alpha: Vec<u32> = vec![0; za];
                let mut beta: Vec<u32> = vec![0; zb];
                for v in 1..=n as u32 {
                    if mask & (1 << (v - 1)) != 0 {
                        alpha.push(v);
                    } else {
                        beta.push(v);
                    }
                }
                // maximality: descent at the junction
                let last_a = *alpha.last().unwrap();
                let first_b = beta[0];
                if last_a > first_b {
                    out.push((alpha, beta));
                }
            }
        }
    }
    out
}

/// The multiset of row lengths next to column lengths of the skew shape
/// delta_n / lambda for the staircase delta_n = (n, n-1, ..., 1).
pub fn staircase_skew_multisets(n: u32, lambda: &crate::combinat::Partition) -> (Vec<u32>, Vec<u32>) {
    let delta: Vec<u32> = (1..=n).rev().collect();
    let lam = lambda.parts();
    let mut rows: Vec<u32> = (0..n as usize)
        .map(|r| delta[r] - lam.get(r).copied().unwrap_or(0))
        .collect();
    let conj_len = |parts: &[u32], c: u32| parts.iter().filter(|&&p| p > c).count() as u32;
    let mut cols: Vec<u32> = (0..n)
        .map(|c| conj_len(&delta, c) - conj_len(lam, c))
        .collect();
    rows.sort_unstable();
    cols.sort_unstable();
    (rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::families::pref;

    #[test]
    fn worked_schedule_example() {
        // diagonal word 57|36|1|04|2 with shift 3
        let dw = DiagWord::from_word(&[5, 7, 3, 6, 1, 0, 4, 2], 3).unwrap();
        assert_eq!(dw.runs().len(), 5);
        let expect: &[(u32, u64)] = &[(5, 2), (7, 2), (3, 2), (6, 1), (1, 2), (4, 1), (2, 1)];
        for &(c, w) in expect {
            assert_eq!(dw.schedule_number(c).unwrap(), w, "schedule of {c}");
        }
        assert_eq!(dw.reduced_word(), vec![5, 7, 3, 6, 1, 4, 2]);
        assert_eq!(dw.maj(), 18);
    }

    #[test]
    fn single_run_zero_shift() {
        // tau = 1 2 ... n: w(c) = 1 + #bigger in the run
        let dw = DiagWord::from_word(&[1, 2, 3, 4], 0).unwrap();
        for c in 1..=4u32 {
            assert_eq!(dw.schedule_number(c).unwrap(), (4 - c + 1) as u64);
        }
        // and the product over the zero run is [p]_q!
        let q = QtRational::q();
        let mut prod = QtRational::one();
        for c in 1..=4 {
            prod = &prod * &q_bracket(dw.schedule_number(c).unwrap() as i64, &q).unwrap();
        }
        assert_eq!(prod, q_factorial(4, &q).unwrap());
    }

    #[test]
    fn closed_form_matches_brute_force_small() {
        // bucket Pref(m,n) by (shift, diagword) and compare each bucket
        for (m, n) in [(0usize, 3usize), (1, 2), (1, 3), (2, 2)] {
            let mut buckets: BTreeMap<(usize, Vec<u32>), QtRational> = BTreeMap::new();
            for p in pref(m, n) {
                let dw = DiagWord::from_path(&p);
                let key = (dw.shift(), dw.word());
                let entry = buckets.entry(key).or_default();
                *entry = &*entry + &QtRational::qt_monomial(p.dinv(), p.area());
            }
            for ((shift, word), total) in buckets {
                let dw = DiagWord::from_word(&word, shift).unwrap();
                assert_eq!(
                    dw.closed_form().unwrap(),
                    total,
                    "schedule formula failed at m={m} n={n} word={:?} shift={shift}",
                    word
                );
            }
        }
    }

    #[test]
    fn yconsec_worked_example() {
        let blocks = yconsec_blocks(&[0, 0, 4, 1, 2, 5, 0, 6, 7, 0, 3]);
        assert_eq!(
            blocks,
            vec![vec![4], vec![1, 2], vec![5], vec![6, 7], vec![3]]
        );
        let elems = yconsec_elements(&[0, 0, 4, 1, 2, 5, 0, 6, 7, 0, 3], 7);
        assert_eq!(elems.len(), 4); // S_{1,2} x S_{6,7}
    }

    #[test]
    fn two_run_identity_small() {
        // the worked pair alpha = 01468, beta = 00023579 (relabelled to a
        // dense alphabet 1..9)
        let alpha = vec![0, 1, 4, 6, 8];
        let beta = vec![0, 0, 0, 2, 3, 5, 7, 9];
        let (lhs, rhs) = two_run_identity_sides(&alpha, &beta).unwrap();
        assert_eq!(lhs, rhs);
        for (alpha, beta) in two_run_words(3, 3) {
            let (lhs, rhs) = two_run_identity_sides(&alpha, &beta).unwrap();
            assert_eq!(lhs, rhs, "failed at {:?} {:?}", alpha, beta);
        }
    }

    #[test]
    fn staircase_multiset_lemma_small() {
        use crate::combinat::{partitions_up_to, Partition};
        let n = 4u32;
        let delta = Partition::new((1..=n).rev().collect()).unwrap();
        for lam in partitions_up_to(delta.size()) {
            if lam.contained_in(&delta) {
                let (rows, cols) = staircase_skew_multisets(n, &lam);
                assert_eq!(rows, cols, "failed at {:?}", lam);
            }
        }
    }
}
