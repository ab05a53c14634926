//! The sweep bijection zeta and the bounce/inv statistics.
//!
//! zeta_0 sends a Dyck path to the path whose bounce word is the sorted area
//! word: scanning the area word left to right and drawing an east step on
//! each letter i-1 and a north step on each letter i traces the section of
//! the image between the i-th and (i+1)-th bounce peaks. Decorated rises map
//! to decorated corners, and labels transported in the order of the dinv
//! scan (sort positions by diagonal, then left to right) land on the main
//! diagonal, turning (dinv, area) into (inv, bounce).

use std::collections::BTreeMap;

use super::{CornerPath, DecoratedPath, Label, LabelledCornerPath, LabelledPath, LatticePath, Step};
use crate::bounded::BoundedPoly;
use crate::combinat::Composition;
use crate::error::{Error, Result};
use crate::qt::QtRational;

/// Bounce word of a Dyck path: the i-th vertical step of the bounce path is
/// labelled with the number of times the bounce path has returned to the
/// diagonal before it.
pub fn bounce_word(path: &LatticePath) -> Vec<u32> {
    assert!(path.is_dyck(), "bounce is defined on Dyck paths");
    let n = path.size();
    // h(x) = height of the east step crossing from column x to x+1
    let mut heights = vec![0usize; n];
    let mut y = 0usize;
    let mut x = 0usize;
    for s in path.steps() {
        match s {
            Step::N => y += 1,
            Step::E => {
                heights[x] = y;
                x += 1;
            }
        }
    }
    let mut b = Vec::with_capacity(n);
    let mut col = 0usize;
    let mut label = 0u32;
    while b.len() < n {
        let top = heights[col];
        while b.len() < top {
            b.push(label);
        }
        col = top;
        label += 1;
    }
    b
}

/// Sum of bounce-word entries outside the decorated corners.
pub fn bounce_decorated(path: &LatticePath, dc: &[usize]) -> i64 {
    bounce_word(path)
        .iter()
        .enumerate()
        .filter(|(i, _)| !dc.contains(&(i + 1)))
        .map(|(_, &b)| b as i64)
        .sum()
}

pub fn bounce(path: &LatticePath) -> i64 {
    bounce_decorated(path, &[])
}

impl CornerPath {
    pub fn bounce(&self) -> i64 {
        bounce_decorated(&self.path, &self.dc)
    }
}

/// The inv statistic of a diagonally labelled path: pairs i < j with
/// w_i < w_j whose witness square (column i, row j) lies under the path,
/// which happens exactly when the j-th north step sits in column <= i-1.
pub fn inv_stat(path: &LatticePath, w: &[u32]) -> i64 {
    let cols = path.cols();
    let n = path.size();
    let mut count = 0i64;
    for i in 1..=n {
        for j in (i + 1)..=n {
            if w[i - 1] < w[j - 1] && cols[j - 1] + 1 <= i {
                count += 1;
            }
        }
    }
    count
}

impl LabelledCornerPath {
    pub fn inv(&self) -> i64 {
        inv_stat(&self.path, &self.w)
    }

    pub fn bounce(&self) -> i64 {
        bounce_decorated(&self.path, &self.dc)
    }

    pub fn monomial(&self, nvars: usize) -> Vec<u32> {
        let mut exps = vec![0u32; nvars];
        for &v in &self.w {
            exps[(v - 1) as usize] += 1;
        }
        exps
    }
}

/// Membership in W'(pi): at every corner i the diagonal label w_i exceeds
/// the label in the column of the east step entering the corner.
pub fn wprime_ok(path: &LatticePath, w: &[u32]) -> bool {
    let cols = path.cols();
    path.corners()
        .iter()
        .all(|&i| w[i - 1] > w[cols[i - 1] - 1])
}

/// All W'(pi) labellings with labels in 1..=max.
pub fn wprime_labellings(path: &LatticePath, max: u32) -> Vec<Vec<u32>> {
    let n = path.size();
    let cols = path.cols();
    let corners = path.corners();
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::with_capacity(n);
    fn rec(
        i: usize,
        n: usize,
        max: u32,
        cols: &[usize],
        corners: &[usize],
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        let row = i + 1;
        let lo = if corners.contains(&row) {
            cur[cols[i] - 1] + 1
        } else {
            1
        };
        for v in lo..=max {
            cur.push(v);
            rec(i + 1, n, max, cols, corners, cur, out);
            cur.pop();
        }
    }
    rec(0, n, max, &cols, &corners, &mut cur, &mut out);
    out
}

/// All of LD'(n)^{(bullet k)} with labels bounded by max.
pub fn ld_bullet(n: usize, k: usize, max: u32) -> Vec<LabelledCornerPath> {
    let mut out = Vec::new();
    for cp in super::families::d_bullet(n, k) {
        for w in wprime_labellings(&cp.path, max) {
            out.push(LabelledCornerPath {
                path: cp.path.clone(),
                dc: cp.dc.clone(),
                w,
            });
        }
    }
    out
}

/// The zero-weight characteristic function of a Dyck path, truncated to
/// labels 1..=nvars: sum over W'(pi) of q^inv x^w.
pub fn chi_bar(path: &LatticePath, nvars: usize) -> BoundedPoly {
    let mut acc = BoundedPoly::zero(nvars);
    for w in wprime_labellings(path, nvars as u32) {
        let mut exps = vec![0u32; nvars];
        for &v in &w {
            exps[(v - 1) as usize] += 1;
        }
        acc.add_term(exps, QtRational::qt_monomial(inv_stat(path, &w), 0));
    }
    acc
}

/// The q,t,x enumerator of a list of labelled corner paths.
pub fn qtx_bullet_enumerator(objs: &[LabelledCornerPath], nvars: usize) -> BoundedPoly {
    let mut acc = BoundedPoly::zero(nvars);
    for p in objs {
        acc.add_term(
            p.monomial(nvars),
            QtRational::qt_monomial(p.inv(), p.bounce()),
        );
    }
    acc
}

/// Positions 1..n sorted by (diagonal, position): the order in which labels
/// are transported to the main diagonal.
fn dinv_order(path: &LatticePath) -> Vec<usize> {
    let a = path.area_word();
    let mut idx: Vec<usize> = (1..=path.size()).collect();
    idx.sort_by_key(|&i| (a[i - 1], i));
    idx
}

/// zeta_0 on the bare path.
pub fn zeta_path(path: &LatticePath) -> LatticePath {
    assert!(path.is_dyck(), "zeta_0 is defined on Dyck paths");
    let a = path.area_word();
    let n = path.size();
    let maxa = a.iter().max().copied().unwrap_or(0);
    let mut steps = Vec::with_capacity(2 * n);
    for i in 0..n {
        if a[i] == 0 {
            steps.push(Step::N);
        }
    }
    for v in 1..=(maxa + 1) {
        for &ai in &a {
            if ai == v - 1 {
                steps.push(Step::E);
            } else if ai == v {
                steps.push(Step::N);
            }
        }
    }
    LatticePath::new(steps).unwrap()
}

/// zeta on unlabelled decorated paths: rises become corners.
pub fn zeta_unlabelled(dp: &DecoratedPath) -> CornerPath {
    let order = dinv_order(&dp.path);
    let rank: BTreeMap<usize, usize> = order
        .iter()
        .enumerate()
        .map(|(r, &j)| (j, r + 1))
        .collect();
    let dc: Vec<usize> = {
        let mut v: Vec<usize> = dp.dr.iter().map(|j| rank[j]).collect();
        v.sort_unstable();
        v
    };
    CornerPath {
        path: zeta_path(&dp.path),
        dc,
    }
}

/// zeta on labelled decorated Dyck paths (positive labels only).
pub fn zeta(lp: &LabelledPath) -> Result<LabelledCornerPath> {
    if !lp.path.is_dyck() {
        return Err(Error::Domain("zeta needs a Dyck path".into()));
    }
    if !lp.dv.is_empty()
        || lp
            .labels
            .iter()
            .any(|l| l.is_zero() || l.is_inf())
    {
        return Err(Error::Domain(
            "zeta is defined for positive labels without valley decorations".into(),
        ));
    }
    let order = dinv_order(&lp.path);
    let rank: BTreeMap<usize, usize> = order
        .iter()
        .enumerate()
        .map(|(r, &j)| (j, r + 1))
        .collect();
    let w: Vec<u32> = order
        .iter()
        .map(|&j| lp.labels[j - 1].pos_value().unwrap())
        .collect();
    let mut dc: Vec<usize> = lp.dr.iter().map(|j| rank[j]).collect();
    dc.sort_unstable();
    Ok(LabelledCornerPath {
        path: zeta_path(&lp.path),
        dc,
        w,
    })
}

/// Reconstruct the area word from a zeta image.
fn area_word_from_image(path: &LatticePath) -> Vec<i64> {
    let b = bounce_word(path);
    let maxb = b.iter().max().copied().unwrap_or(0) as i64;
    let counts: Vec<usize> = (0..=maxb)
        .map(|v| b.iter().filter(|&&x| x as i64 == v).count())
        .collect();
    // section i (for the pairs of values i-1, i) occupies the next
    // counts[i-1] + counts[i] steps after the initial north run
    let steps = path.steps();
    let mut pos = counts[0]; // initial N run
    let mut word: Vec<i64> = vec![0; counts[0]];
    for v in 1..=maxb {
        let len = counts[(v - 1) as usize] + counts[v as usize];
        let section = &steps[pos..pos + len];
        pos += len;
        // E = a letter v-1 (in order), N = a letter v inserted right after
        // the previous v-1
        let mut seen = 0usize; // occurrences of v-1 scanned so far
        let mut inserts: Vec<(usize, usize)> = Vec::new(); // (after e-th occurrence, run length)
        let mut i = 0;
        while i < section.len() {
            match section[i] {
                Step::E => {
                    seen += 1;
                    i += 1;
                }
                Step::N => {
                    let mut run = 0;
                    while i < section.len() && section[i] == Step::N {
                        run += 1;
                        i += 1;
                    }
                    inserts.push((seen, run));
                }
            }
        }
        // apply insertions right to left so indices stay valid
        for &(after, run) in inserts.iter().rev() {
            // index of the after-th occurrence of value v-1
            let mut count = 0;
            let mut at = None;
            for (idx, &val) in word.iter().enumerate() {
                if val == v - 1 {
                    count += 1;
                    if count == after {
                        at = Some(idx);
                        break;
                    }
                }
            }
            let at = at.expect("image section references a missing letter");
            for _ in 0..run {
                word.insert(at + 1, v);
            }
        }
    }
    word
}

fn path_from_area_word(a: &[i64]) -> LatticePath {
    let n = a.len();
    let mut steps = Vec::with_capacity(2 * n);
    let mut col = 0i64;
    for (i, &ai) in a.iter().enumerate() {
        let target = i as i64 - ai; // column of this north step
        while col < target {
            steps.push(Step::E);
            col += 1;
        }
        steps.push(Step::N);
    }
    while col < n as i64 {
        steps.push(Step::E);
        col += 1;
    }
    LatticePath::new(steps).unwrap()
}

/// Inverse of zeta on unlabelled decorated paths.
pub fn zeta_inv_unlabelled(cp: &CornerPath) -> DecoratedPath {
    let a = area_word_from_image(&cp.path);
    let pre = path_from_area_word(&a);
    let order = dinv_order(&pre);
    let dr: Vec<usize> = {
        let mut v: Vec<usize> = cp.dc.iter().map(|&r| order[r - 1]).collect();
        v.sort_unstable();
        v
    };
    DecoratedPath { path: pre, dr }
}

/// Inverse of zeta on labelled paths.
pub fn zeta_inv(cp: &LabelledCornerPath) -> LabelledPath {
    let a = area_word_from_image(&cp.path);
    let pre = path_from_area_word(&a);
    let order = dinv_order(&pre);
    let mut labels = vec![Label::Pos(1); pre.size()];
    for (r, &j) in order.iter().enumerate() {
        labels[j - 1] = Label::Pos(cp.w[r]);
    }
    let mut dr: Vec<usize> = cp.dc.iter().map(|&r| order[r - 1]).collect();
    dr.sort_unstable();
    LabelledPath {
        path: pre,
        labels,
        dr,
        dv: vec![],
    }
}

/// Diagonal composition on the corner side, computed through the inverse of
/// zeta.
pub fn dcomp_prime(cp: &CornerPath) -> Composition {
    zeta_inv_unlabelled(cp).dcomp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::families::{d_star, ld};

    #[test]
    fn worked_zeta_example() {
        // area word (0,1,2,2,3,1,0,1), dr = {2,5,8}, w = (2,4,5,5,6,5,1,3):
        // image has w' = (2,1,4,5,3,5,5,6), bounce word 00111223,
        // dc = {3,5,8}, bounce 5, inv 5.
        let path = super::path_from_area_word(&[0, 1, 2, 2, 3, 1, 0, 1]);
        assert!(path.is_dyck());
        let labels = [2u32, 4, 5, 5, 6, 5, 1, 3]
            .iter()
            .map(|&v| Label::Pos(v))
            .collect();
        let lp = LabelledPath::new(path, labels, vec![2, 5, 8], vec![]).unwrap();
        assert_eq!(lp.area(), 5);
        assert_eq!(lp.dinv(), 5);
        let img = zeta(&lp).unwrap();
        assert_eq!(img.w, vec![2, 1, 4, 5, 3, 5, 5, 6]);
        assert_eq!(bounce_word(&img.path), vec![0, 0, 1, 1, 1, 2, 2, 3]);
        assert_eq!(img.dc, vec![3, 5, 8]);
        assert_eq!(img.bounce(), 5);
        assert_eq!(img.inv(), 5);
        assert!(wprime_ok(&img.path, &img.w));
        // round trip
        let back = zeta_inv(&img);
        assert_eq!(back, lp);
    }

    #[test]
    fn zeta_round_trip_unlabelled() {
        for n in 1..=5 {
            for k in 0..n.min(3) {
                for dp in d_star(n, k) {
                    let img = zeta_unlabelled(&dp);
                    let back = zeta_inv_unlabelled(&img);
                    assert_eq!(back, dp);
                    assert_eq!(img.dc.len(), dp.dr.len());
                }
            }
        }
    }

    #[test]
    fn zeta_transports_statistics() {
        for n in 1..=4 {
            for k in 0..n.min(2) {
                for lp in ld(0, n, k) {
                    let img = zeta(&lp).unwrap();
                    assert_eq!(lp.dinv(), img.inv(), "dinv/inv failed on {:?}", lp);
                    assert_eq!(lp.area(), img.bounce(), "area/bounce failed on {:?}", lp);
                    assert!(wprime_ok(&img.path, &img.w));
                    assert_eq!(zeta_inv(&img), lp);
                    // the composition is preserved
                    assert_eq!(
                        lp.dcomp(),
                        dcomp_prime(&CornerPath {
                            path: img.path.clone(),
                            dc: img.dc.clone()
                        })
                    );
                }
            }
        }
    }

    #[test]
    fn rises_match_corners_in_count() {
        for n in 1..=5 {
            for p in crate::paths::families::dyck_paths(n) {
                let img = zeta_path(&p);
                assert_eq!(p.rises().len(), img.corners().len());
            }
        }
    }

    #[test]
    fn chi_bar_single_column() {
        // path NE: chi_bar = x1 + ... + xn = e_1 image
        let p = LatticePath::parse("NE").unwrap();
        let c = chi_bar(&p, 3);
        let e1 = crate::bounded::to_bounded(&crate::symfun::SymFunc::e(1), 3).unwrap();
        assert_eq!(c, e1);
    }
}
