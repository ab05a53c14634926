//! Generation of the path families, each object exactly once, in a fixed
//! order: paths by step-sequence lex (N before E), labellings by bottom-up
//! lexicographic fill, decoration subsets in lexicographic order.
//!
//! Positive labels are drawn from {1..n} where n is the number of nonzero
//! label slots: enumerators are homogeneous symmetric of degree n, so n
//! variables determine them faithfully.

use super::{column_less, CornerPath, DecoratedPath, Label, LabelledPath, LatticePath, Step};
use crate::bounded::BoundedPoly;
use crate::combinat::Composition;
use crate::error::{Error, Result};
use crate::qt::QtRational;

/// All north/east paths from (0,0) to (size,size), N-first lexicographic.
pub fn all_paths(size: usize) -> Vec<LatticePath> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(2 * size);
    fn rec(n: usize, e: usize, size: usize, cur: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
        if n == size && e == size {
            out.push(LatticePath::new(cur.clone()).unwrap());
            return;
        }
        if n < size {
            cur.push(Step::N);
            rec(n + 1, e, size, cur, out);
            cur.pop();
        }
        if e < size {
            cur.push(Step::E);
            rec(n, e + 1, size, cur, out);
            cur.pop();
        }
    }
    rec(0, 0, size, &mut cur, &mut out);
    out
}

/// Dyck paths of the given size.
pub fn dyck_paths(size: usize) -> Vec<LatticePath> {
    all_paths(size).into_iter().filter(|p| p.is_dyck()).collect()
}

/// Square paths ending east.
pub fn square_paths_east(size: usize) -> Vec<LatticePath> {
    all_paths(size).into_iter().filter(|p| p.ends_east()).collect()
}

/// How the positive labels are drawn.
#[derive(Clone, Copy, Debug)]
pub enum PosLabels {
    /// any values from 1..=n, repetitions allowed
    UpTo(u32),
    /// exactly the values 1..=n, once each (preference functions)
    Exactly(u32),
}

#[derive(Clone, Debug)]
pub struct LabelSpec {
    pub zeros: usize,
    pub infs: usize,
    pub pos: PosLabels,
}

/// All valid labellings of a path under the labelling rules.
pub fn labellings(path: &LatticePath, spec: &LabelSpec) -> Vec<Vec<Label>> {
    let n = path.size();
    let npos = match spec.pos {
        PosLabels::UpTo(v) | PosLabels::Exactly(v) => v,
    };
    let exact = matches!(spec.pos, PosLabels::Exactly(_));
    if spec.zeros + spec.infs + npos as usize != n && exact {
        return Vec::new();
    }
    let a = path.area_word();
    let shift = path.shift();
    let eruns = path.e_runs_before();
    let starts_north = path.steps().first() == Some(&Step::N);
    let mut out = Vec::new();
    let mut cur: Vec<Label> = Vec::with_capacity(n);
    let mut used = vec![false; npos as usize + 1];

    struct St<'a> {
        n: usize,
        a: &'a [i64],
        shift: i64,
        eruns: &'a [usize],
        starts_north: bool,
        zeros: usize,
        infs: usize,
        exact: bool,
        npos: u32,
    }

    fn rec(
        st: &St,
        i: usize,
        zeros_left: usize,
        infs_left: usize,
        cur: &mut Vec<Label>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<Label>>,
    ) {
        if i == st.n {
            if zeros_left == 0 && infs_left == 0 {
                // at least one nonzero label on the base diagonal
                let ok = (0..st.n).any(|j| st.a[j] == -st.shift && !cur[j].is_zero());
                if ok || st.n == 0 {
                    out.push(cur.clone());
                }
            }
            return;
        }
        let row = i + 1;
        let same_col_below = row >= 2 && st.eruns[i] == 0;
        let same_col_above = row < st.n && st.eruns[i + 1] == 0;
        let candidates_left = st.n - i;
        if zeros_left + infs_left > candidates_left {
            return;
        }
        // zero
        let zero_after_inf =
            st.eruns[i] == 1 && row >= 2 && cur.get(i - 1).map(|l| l.is_inf()).unwrap_or(false);
        if zeros_left > 0 && st.eruns[i] > 0 && !(row == 1 && st.starts_north) && !zero_after_inf
        {
            // zero can never sit above another label (it is minimal), and
            // eruns > 0 already rules out sharing a column with the row below
            cur.push(Label::Zero);
            rec(st, i + 1, zeros_left - 1, infs_left, cur, used, out);
            cur.pop();
        }
        // positive labels in increasing order
        for v in 1..=st.npos {
            if st.exact && used[v as usize] {
                continue;
            }
            let lab = Label::Pos(v);
            if same_col_below && !column_less(cur[i - 1], lab) {
                continue;
            }
            if same_col_below && cur[i - 1].is_inf() {
                continue;
            }
            cur.push(lab);
            if st.exact {
                used[v as usize] = true;
            }
            rec(st, i + 1, zeros_left, infs_left, cur, used, out);
            if st.exact {
                used[v as usize] = false;
            }
            cur.pop();
        }
        // inf: on the main diagonal, alone in its column
        if infs_left > 0 && st.a[i] == 0 && !same_col_below && !same_col_above {
            cur.push(Label::Inf);
            rec(st, i + 1, zeros_left, infs_left - 1, cur, used, out);
            cur.pop();
        }
    }

    let st = St {
        n,
        a: &a,
        shift,
        eruns: &eruns,
        starts_north,
        zeros: spec.zeros,
        infs: spec.infs,
        exact,
        npos,
    };
    rec(
        &st,
        0,
        st.zeros,
        st.infs,
        &mut cur,
        &mut used,
        &mut out,
    );
    out
}

fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], start: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, i + 1, k, cur, out);
            cur.pop();
        }
    }
    rec(items, 0, k, &mut cur, &mut out);
    out
}

/// LD(m,n)^{*k}: labelled Dyck paths of size m+n with m zero labels and k
/// decorated rises, positive labels drawn from {1..n}.
pub fn ld(m: usize, n: usize, k: usize) -> Vec<LabelledPath> {
    labelled_family(dyck_paths(m + n), m, n, 0, k, false)
}

/// LSQ(m,n)^{*k}: the square-path version (paths end east).
pub fn lsq(m: usize, n: usize, k: usize) -> Vec<LabelledPath> {
    labelled_family(square_paths_east(m + n), m, n, 0, k, false)
}

/// LD(m,n,s): augmented Dyck paths with s labels inf on the main diagonal.
pub fn ld_aug(m: usize, n: usize, s: usize) -> Vec<LabelledPath> {
    labelled_family(dyck_paths(m + n + s), m, n, s, 0, false)
}

/// Pref(m,n): partially labelled preference functions (nonzero labels are
/// exactly 1..n once each).
pub fn pref(m: usize, n: usize) -> Vec<LabelledPath> {
    labelled_family(square_paths_east(m + n), m, n, 0, 0, true)
}

/// Park(m,n): preference functions of shift 0.
pub fn park(m: usize, n: usize) -> Vec<LabelledPath> {
    labelled_family(dyck_paths(m + n), m, n, 0, 0, true)
}

fn labelled_family(
    paths: Vec<LatticePath>,
    m: usize,
    n: usize,
    s: usize,
    k: usize,
    exact: bool,
) -> Vec<LabelledPath> {
    let spec = LabelSpec {
        zeros: m,
        infs: s,
        pos: if exact {
            PosLabels::Exactly(n as u32)
        } else {
            PosLabels::UpTo(n as u32)
        },
    };
    let mut out = Vec::new();
    for path in paths {
        let rises = path.rises();
        if rises.len() < k {
            continue;
        }
        let drs = subsets_of_size(&rises, k);
        for labels in labellings(&path, &spec) {
            if !exact {
                // non-exact families still use exactly n positive slots
                let pos_count = labels.iter().filter(|l| l.pos_value().is_some()).count();
                if pos_count != n {
                    continue;
                }
            }
            for dr in &drs {
                out.push(LabelledPath {
                    path: path.clone(),
                    labels: labels.clone(),
                    dr: dr.clone(),
                    dv: vec![],
                });
            }
        }
    }
    out
}

/// LD(0,n)^{*k, o r}: positive labels, k decorated rises and r decorated
/// contractible valleys.
pub fn ld_valley(n: usize, k: usize, r: usize) -> Vec<LabelledPath> {
    let mut out = Vec::new();
    for base in ld(0, n, k) {
        let cv = base.contractible_valleys();
        let cv: Vec<usize> = cv.into_iter().filter(|i| !base.dr.contains(i)).collect();
        for dv in subsets_of_size(&cv, r) {
            let mut p = base.clone();
            p.dv = dv;
            out.push(p);
        }
    }
    out
}

/// D(n)^{*k}: unlabelled decorated Dyck paths.
pub fn d_star(n: usize, k: usize) -> Vec<DecoratedPath> {
    let mut out = Vec::new();
    for path in dyck_paths(n) {
        let rises = path.rises();
        for dr in subsets_of_size(&rises, k) {
            out.push(DecoratedPath {
                path: path.clone(),
                dr,
            });
        }
    }
    out
}

/// D(alpha)^{*k}: restriction to a fixed diagonal composition.
pub fn d_star_comp(alpha: &Composition, k: usize) -> Vec<DecoratedPath> {
    let n = alpha.size() as usize + k;
    d_star(n, k)
        .into_iter()
        .filter(|p| p.dcomp() == *alpha)
        .collect()
}

/// D'(n)^{(bullet k)}: Dyck paths with k decorated corners.
pub fn d_bullet(n: usize, k: usize) -> Vec<CornerPath> {
    let mut out = Vec::new();
    for path in dyck_paths(n) {
        let corners = path.corners();
        for dc in subsets_of_size(&corners, k) {
            out.push(CornerPath {
                path: path.clone(),
                dc,
            });
        }
    }
    out
}

/// D'(alpha)^{(bullet k)} via the corner-side diagonal composition.
pub fn d_bullet_comp(alpha: &Composition, k: usize) -> Vec<CornerPath> {
    let n = alpha.size() as usize + k;
    d_bullet(n, k)
        .into_iter()
        .filter(|p| super::zeta::dcomp_prime(p) == *alpha)
        .collect()
}

/// The qt-only enumerator sum q^dinv t^area over labelled objects.
pub fn qt_enumerator(objs: &[LabelledPath]) -> QtRational {
    let mut acc = QtRational::zero();
    for p in objs {
        acc += &QtRational::qt_monomial(p.dinv(), p.area());
    }
    acc
}

/// The q,t,x enumerator as a bounded polynomial in nvars variables.
pub fn qtx_enumerator(objs: &[LabelledPath], nvars: usize) -> BoundedPoly {
    let mut acc = BoundedPoly::zero(nvars);
    for p in objs {
        acc.add_term(p.monomial(nvars), QtRational::qt_monomial(p.dinv(), p.area()));
    }
    acc
}

/// The t,x enumerator (areas only), used by the q=1 conjectures.
pub fn tx_enumerator(objs: &[LabelledPath], nvars: usize) -> BoundedPoly {
    let mut acc = BoundedPoly::zero(nvars);
    for p in objs {
        acc.add_term(p.monomial(nvars), QtRational::qt_monomial(0, p.area()));
    }
    acc
}

/// Inverse descent set of a preference function: descents of the inverse of
/// its reverse reading word.
pub fn ides(p: &LabelledPath) -> Result<Vec<usize>> {
    let mut word = p.reading_word();
    word.reverse();
    ides_of_word(&word)
}

/// Descents of the inverse of a permutation given as a word on 1..n.
pub fn ides_of_word(word: &[u32]) -> Result<Vec<usize>> {
    let n = word.len();
    let mut pos = vec![usize::MAX; n + 1];
    for (i, &v) in word.iter().enumerate() {
        if v == 0 || v as usize > n || pos[v as usize] != usize::MAX {
            return Err(Error::Domain(format!(
                "word {:?} is not a permutation of 1..{}",
                word, n
            )));
        }
        pos[v as usize] = i;
    }
    Ok((1..n).filter(|&i| pos[i] > pos[i + 1]).collect())
}

/// Gessel quasisymmetric enumerator sum q^dinv t^area Q_(ides(P),n).
pub fn quasisym_enumerator(objs: &[LabelledPath], n: usize, nvars: usize) -> Result<BoundedPoly> {
    let mut acc = BoundedPoly::zero(nvars);
    for p in objs {
        let des = ides(p)?;
        let q = crate::bounded::gessel_fundamental(&des, n, nvars)?;
        acc = acc.add(&q.scale(&QtRational::qt_monomial(p.dinv(), p.area())));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_counts() {
        assert_eq!(dyck_paths(3).len(), 5);
        assert_eq!(dyck_paths(4).len(), 14);
        // square paths ending east: C(2n-1, n) ... n=3: C(5,3)=10? count directly
        let sq3 = square_paths_east(3);
        assert_eq!(sq3.len(), 10);
        assert!(sq3.iter().all(|p| p.ends_east()));
    }

    #[test]
    fn park_0_2_has_three_elements() {
        let objs = park(0, 2);
        assert_eq!(objs.len(), 3);
    }

    #[test]
    fn ld_decorations_bounded_by_rises() {
        // k >= n leaves nothing: at most n-1 rises
        assert!(ld(0, 3, 3).is_empty());
        assert!(!ld(0, 3, 2).is_empty());
    }

    #[test]
    fn lsq_matches_pref_when_labels_distinct() {
        // Pref(m,n) is the sub-family of LSQ(m,n) with labels exactly 1..n;
        // with n = 2 the UpTo enumeration contains the Exactly objects.
        let all: std::collections::BTreeSet<String> = lsq(1, 2, 0)
            .iter()
            .map(|p| p.canonical_string())
            .collect();
        for p in pref(1, 2) {
            assert!(all.contains(&p.canonical_string()));
        }
    }

    #[test]
    fn enumerator_is_symmetric() {
        let e = qtx_enumerator(&ld(0, 3, 1), 3);
        assert!(e.is_symmetric());
        let e2 = qtx_enumerator(&lsq(1, 2, 0), 2);
        assert!(e2.is_symmetric());
    }

    #[test]
    fn ld_aug_counts_small() {
        // single (n,s)=(1,1): paths of size 2 with one positive, one inf
        let objs = ld_aug(0, 1, 1);
        for p in &objs {
            assert_eq!(p.labels.iter().filter(|l| l.is_inf()).count(), 1);
            assert_eq!(p.labels.iter().filter(|l| l.pos_value().is_some()).count(), 1);
        }
        assert!(!objs.is_empty());
    }

    #[test]
    fn valley_family_disjoint_decorations() {
        for p in ld_valley(3, 1, 1) {
            assert!(p.dr.iter().all(|i| !p.dv.contains(i)));
            p.validate().unwrap();
        }
    }

    #[test]
    fn ides_small() {
        // word 2 4 1 2 3 1 is not a permutation; use a permutation
        let w = vec![3u32, 1, 2];
        // inverse of 312 is 231; descents of 231 at position 2
        assert_eq!(ides_of_word(&w).unwrap(), vec![2]);
    }
}
