//! Lattice paths, their labellings and decorations, and the q,t-statistics.
//!
//! Paths run from (0,0) to (n,n) in north/east unit steps. The square-path
//! families always end with an east step; Dyck paths additionally stay weakly
//! above the main diagonal. The area word lists, bottom to top, the diagonal
//! y = x + a_i on which the i-th north step starts; the shift is -min(a_i).
//!
//! Labels sit on north steps: 0 marks a zero valley (contributing nothing to
//! the monomial), positive labels contribute x_label, and the infinity
//! sentinel marks augmented diagonal labels with x_inf = 1. Inside a column
//! labels strictly increase upward. For the dinv statistic the comparisons
//! follow the conventions: l < inf for positive l, while 0 and inf are
//! incomparable in both directions.
//!
//! Decorations: dr marks decorated rises (north steps on top of north
//! steps), excluded rows for the area; dv marks decorated contractible
//! valleys for the q=1 valley family.

pub mod families;
pub mod psi_gamma;
pub mod schedule;
pub mod zeta;

use std::fmt;

use crate::combinat::Composition;
use crate::error::{Error, Result};

pub use families::*;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Step {
    N,
    E,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Result<LatticePath> {
        let n = steps.iter().filter(|&&s| s == Step::N).count();
        let e = steps.len() - n;
        if n != e {
            return Err(Error::Domain(format!(
                "path must have equally many N and E steps, got {n} N / {e} E"
            )));
        }
        Ok(LatticePath { steps })
    }

    pub fn parse(s: &str) -> Result<LatticePath> {
        let steps = s
            .chars()
            .map(|c| match c {
                'N' | 'n' => Ok(Step::N),
                'E' | 'e' => Ok(Step::E),
                _ => Err(Error::Domain(format!("bad step character {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        LatticePath::new(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of north steps (the size n of the path).
    pub fn size(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn ends_east(&self) -> bool {
        self.steps.last() == Some(&Step::E)
    }

    pub fn is_dyck(&self) -> bool {
        let mut bal = 0i64;
        for s in &self.steps {
            match s {
                Step::N => bal += 1,
                Step::E => bal -= 1,
            }
            if bal < 0 {
                return false;
            }
        }
        true
    }

    /// a_i for the i-th north step (0-indexed vector, paths 1-index rows).
    pub fn area_word(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.size());
        let (mut x, mut y) = (0i64, 0i64);
        for s in &self.steps {
            match s {
                Step::N => {
                    out.push(y - x);
                    y += 1;
                }
                Step::E => x += 1,
            }
        }
        out
    }

    pub fn shift(&self) -> i64 {
        -self.area_word().iter().min().copied().unwrap_or(0)
    }

    /// Column (number of E steps before) of each north step.
    pub fn cols(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size());
        let mut x = 0usize;
        for s in &self.steps {
            match s {
                Step::N => out.push(x),
                Step::E => x += 1,
            }
        }
        out
    }

    /// Number of east steps immediately before each north step.
    pub fn e_runs_before(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size());
        let mut run = 0usize;
        for s in &self.steps {
            match s {
                Step::N => {
                    out.push(run);
                    run = 0;
                }
                Step::E => run += 1,
            }
        }
        out
    }

    /// Rises: rows i >= 2 whose north step directly follows a north step
    /// (1-indexed).
    pub fn rises(&self) -> Vec<usize> {
        self.e_runs_before()
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &e)| e == 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Corners (valleys): rows i >= 2 preceded by at least one east step.
    pub fn corners(&self) -> Vec<usize> {
        self.e_runs_before()
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl fmt::Debug for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", if *s == Step::N { 'N' } else { 'E' })?;
        }
        Ok(())
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A label on a north step.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Label {
    Zero,
    Pos(u32),
    Inf,
}

impl Label {
    pub fn is_zero(&self) -> bool {
        matches!(self, Label::Zero)
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Label::Inf)
    }

    pub fn pos_value(&self) -> Option<u32> {
        match self {
            Label::Pos(v) => Some(*v),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Zero => write!(f, "0"),
            Label::Pos(v) => write!(f, "{v}"),
            Label::Inf => write!(f, "inf"),
        }
    }
}

/// The strict comparison used by dinv: 0 < positive < inf except that 0 and
/// inf are incomparable (neither 0 < inf nor 0 > inf holds), and inf is not
/// below anything.
pub fn dinv_less(a: Label, b: Label) -> bool {
    match (a, b) {
        (Label::Zero, Label::Pos(_)) => true,
        (Label::Pos(x), Label::Pos(y)) => x < y,
        (Label::Pos(_), Label::Inf) => true,
        _ => false,
    }
}

/// Strict column order: labels increase upward, with inf on top.
pub fn column_less(a: Label, b: Label) -> bool {
    match (a, b) {
        (Label::Zero, Label::Pos(_)) | (Label::Zero, Label::Inf) => true,
        (Label::Pos(x), Label::Pos(y)) => x < y,
        (Label::Pos(_), Label::Inf) => true,
        _ => false,
    }
}

/// An unlabelled path with decorated rises: the families D(n)^{*k}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedPath {
    pub path: LatticePath,
    /// Decorated rise rows, sorted, 1-indexed.
    pub dr: Vec<usize>,
}

impl DecoratedPath {
    pub fn new(path: LatticePath, mut dr: Vec<usize>) -> Result<DecoratedPath> {
        dr.sort_unstable();
        dr.dedup();
        let rises = path.rises();
        if !dr.iter().all(|i| rises.contains(i)) {
            return Err(Error::Domain(format!(
                "decorations {:?} are not rises of {}",
                dr, path
            )));
        }
        Ok(DecoratedPath { path, dr })
    }

    pub fn area(&self) -> i64 {
        let s = self.path.shift();
        self.path
            .area_word()
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.dr.contains(&(i + 1)))
            .map(|(_, &a)| a + s)
            .sum()
    }

    /// Rows whose north step starts on the base diagonal (1-indexed).
    pub fn touch_rows(&self) -> Vec<usize> {
        let s = self.path.shift();
        self.path
            .area_word()
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == -s)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Diagonal composition: rows between consecutive touch rows, decorated
    /// rows excluded.
    pub fn dcomp(&self) -> Composition {
        let touches = self.touch_rows();
        let n = self.path.size();
        let mut parts = Vec::new();
        for (ti, &start) in touches.iter().enumerate() {
            let end = touches.get(ti + 1).map(|&t| t - 1).unwrap_or(n);
            let count = (start..=end).filter(|i| !self.dr.contains(i)).count();
            parts.push(count as u32);
        }
        Composition::new(parts).unwrap()
    }
}

impl fmt::Debug for DecoratedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{:?}", self.path, self.dr)
    }
}

/// A labelled, possibly decorated path: the families LSQ(m,n)^{*k},
/// LD(m,n)^{*k}, LD(m,n,s), LD(0,n)^{*k,or}, Pref(m,n) and Park(m,n).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledPath {
    pub path: LatticePath,
    /// One label per north step, bottom to top.
    pub labels: Vec<Label>,
    pub dr: Vec<usize>,
    pub dv: Vec<usize>,
}

impl LabelledPath {
    pub fn new(
        path: LatticePath,
        labels: Vec<Label>,
        mut dr: Vec<usize>,
        mut dv: Vec<usize>,
    ) -> Result<LabelledPath> {
        if labels.len() != path.size() {
            return Err(Error::Domain("one label per north step required".into()));
        }
        dr.sort_unstable();
        dr.dedup();
        dv.sort_unstable();
        dv.dedup();
        let lp = LabelledPath {
            path,
            labels,
            dr,
            dv,
        };
        lp.validate()?;
        Ok(lp)
    }

    /// Check every labelling and decoration rule.
    pub fn validate(&self) -> Result<()> {
        let path = &self.path;
        let n = path.size();
        let a = path.area_word();
        let shift = path.shift();
        let eruns = path.e_runs_before();
        let rises = path.rises();
        for i in 1..=n {
            let w = self.labels[i - 1];
            if eruns[i - 1] == 0 && i >= 2 {
                // same column as the row below: strict increase, no inf pairs
                let below = self.labels[i - 2];
                if below.is_inf() || w.is_inf() || !column_less(below, w) {
                    return Err(Error::Domain(format!(
                        "column labels must strictly increase at row {i}"
                    )));
                }
            }
            if w.is_zero() {
                // zero valleys are preceded by an east step
                if eruns[i - 1] == 0 {
                    return Err(Error::Domain(format!(
                        "zero label at row {i} not preceded by an east step"
                    )));
                }
                // in augmented paths a zero one east step after an inf row is
                // not reachable: pulling its north step back across that east
                // step would stack the recovered label on top of the inf
                if eruns[i - 1] == 1 && i >= 2 && self.labels[i - 2].is_inf() {
                    return Err(Error::Domain(format!(
                        "zero label at row {i} directly follows an inf row"
                    )));
                }
            }
            if w.is_inf() {
                if a[i - 1] != 0 {
                    return Err(Error::Domain(format!(
                        "inf label at row {i} is off the main diagonal"
                    )));
                }
                // alone in its column
                if i < n && eruns[i] == 0 {
                    return Err(Error::Domain(format!(
                        "inf label at row {i} shares a column"
                    )));
                }
            }
        }
        if self.path.steps().first() == Some(&Step::N) && self.labels[0].is_zero() {
            return Err(Error::Domain(
                "a path-initial north step carries a nonzero label".into(),
            ));
        }
        // at least one nonzero label starting on the base diagonal
        let has_diag = (1..=n).any(|i| a[i - 1] == -shift && !self.labels[i - 1].is_zero());
        if n > 0 && !has_diag {
            return Err(Error::Domain(
                "no nonzero label starts on the base diagonal".into(),
            ));
        }
        if !self.dr.iter().all(|i| rises.contains(i)) {
            return Err(Error::Domain("decorated rise is not a rise".into()));
        }
        let cv = self.contractible_valleys();
        if !self.dv.iter().all(|i| cv.contains(i)) {
            return Err(Error::Domain(
                "decorated valley is not a contractible valley".into(),
            ));
        }
        Ok(())
    }

    /// Contractible valleys: a north step preceded by two east steps, or by
    /// one east step with a label bigger than the one in the row below.
    pub fn contractible_valleys(&self) -> Vec<usize> {
        let eruns = self.path.e_runs_before();
        (1..=self.path.size())
            .filter(|&i| {
                let e = eruns[i - 1];
                e >= 2
                    || (e == 1 && i >= 2 && dinv_less(self.labels[i - 2], self.labels[i - 1]))
            })
            .collect()
    }

    pub fn shift(&self) -> i64 {
        self.path.shift()
    }

    pub fn area(&self) -> i64 {
        let s = self.path.shift();
        self.path
            .area_word()
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.dr.contains(&(i + 1)))
            .map(|(_, &a)| a + s)
            .sum()
    }

    pub fn dinv(&self) -> i64 {
        let a = self.path.area_word();
        let n = self.path.size();
        let mut count = 0i64;
        for i in 0..n {
            for j in (i + 1)..n {
                let primary = a[i] == a[j] && dinv_less(self.labels[i], self.labels[j]);
                let secondary = a[i] == a[j] + 1 && dinv_less(self.labels[j], self.labels[i]);
                if primary || secondary {
                    count += 1;
                }
            }
        }
        // bonus dinv: rows below the main diagonal with a nonzero label
        for i in 0..n {
            if a[i] < 0 && !self.labels[i].is_zero() {
                count += 1;
            }
        }
        count
    }

    /// Rows that start on the base diagonal with a nonzero label.
    pub fn touch_rows(&self) -> Vec<usize> {
        let s = self.path.shift();
        let a = self.path.area_word();
        (1..=self.path.size())
            .filter(|&i| a[i - 1] == -s && !self.labels[i - 1].is_zero())
            .collect()
    }

    pub fn touch(&self) -> usize {
        self.touch_rows().len()
    }

    /// Diagonal composition: rows without a zero label or a rise decoration,
    /// grouped between consecutive touch rows.
    pub fn dcomp(&self) -> Composition {
        let touches = self.touch_rows();
        let n = self.path.size();
        let mut parts = Vec::new();
        for (ti, &start) in touches.iter().enumerate() {
            let end = touches.get(ti + 1).map(|&t| t - 1).unwrap_or(n);
            let count = (start..=end)
                .filter(|&i| !self.labels[i - 1].is_zero() && !self.dr.contains(&i))
                .count();
            parts.push(count as u32);
        }
        Composition::new(parts).unwrap()
    }

    /// Reading word: positive labels along diagonals, base diagonal first,
    /// bottom-left to top-right within each diagonal.
    pub fn reading_word(&self) -> Vec<u32> {
        let a = self.path.area_word();
        let n = self.path.size();
        let lo = -self.path.shift();
        let hi = a.iter().max().copied().unwrap_or(0);
        let mut out = Vec::new();
        for d in lo..=hi {
            for i in 0..n {
                if a[i] == d {
                    if let Label::Pos(v) = self.labels[i] {
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    /// Exponent vector of x^P in nvars variables (x_0 = x_inf = 1).
    pub fn monomial(&self, nvars: usize) -> Vec<u32> {
        let mut exps = vec![0u32; nvars];
        for l in &self.labels {
            if let Label::Pos(v) = l {
                exps[(*v - 1) as usize] += 1;
            }
        }
        exps
    }

    pub fn forget_labels(&self) -> DecoratedPath {
        DecoratedPath {
            path: self.path.clone(),
            dr: self.dr.clone(),
        }
    }

    /// Canonical serialization "steps|labels|dr|dv".
    pub fn canonical_string(&self) -> String {
        let labels: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        let dr: Vec<String> = self.dr.iter().map(|i| i.to_string()).collect();
        let dv: Vec<String> = self.dv.iter().map(|i| i.to_string()).collect();
        format!(
            "{}|{}|{}|{}",
            self.path,
            labels.join(","),
            dr.join(","),
            dv.join(",")
        )
    }
}

impl fmt::Debug for LabelledPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

/// A Dyck path with decorated corners: the families D'(n)^{(bullet k)}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CornerPath {
    pub path: LatticePath,
    /// Decorated corner rows, sorted, 1-indexed.
    pub dc: Vec<usize>,
}

impl CornerPath {
    pub fn new(path: LatticePath, mut dc: Vec<usize>) -> Result<CornerPath> {
        dc.sort_unstable();
        dc.dedup();
        let corners = path.corners();
        if !dc.iter().all(|i| corners.contains(i)) {
            return Err(Error::Domain(format!(
                "decorations {:?} are not corners of {}",
                dc, path
            )));
        }
        Ok(CornerPath { path, dc })
    }
}

impl fmt::Debug for CornerPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{:?}", self.path, self.dc)
    }
}

/// A corner-decorated Dyck path with a diagonal word from W'(pi).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledCornerPath {
    pub path: LatticePath,
    pub dc: Vec<usize>,
    /// w'_i sits in the i-th diagonal square.
    pub w: Vec<u32>,
}

impl fmt::Debug for LabelledCornerPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{:?}|{:?}", self.path, self.dc, self.w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn area_word_and_shift_of_figure_square_path() {
        // the LSQ(2,6)^{*1} example: NEEEE N E NN E NNN E N E with labels
        // (2,0,2,4,0,1,3,1), decorated rise at row 6
        let p = LatticePath::parse("NEEEENENNENNNENE").unwrap();
        assert!(p.ends_east());
        assert!(!p.is_dyck());
        assert_eq!(p.area_word(), vec![0, -3, -3, -2, -2, -1, 0, 0]);
        assert_eq!(p.shift(), 3);
        let labels = vec![
            Label::Pos(2),
            Label::Zero,
            Label::Pos(2),
            Label::Pos(4),
            Label::Zero,
            Label::Pos(1),
            Label::Pos(3),
            Label::Pos(1),
        ];
        let lp = LabelledPath::new(p, labels, vec![6], vec![]).unwrap();
        assert_eq!(lp.area(), 11);
        assert_eq!(lp.dinv(), 6);
        assert_eq!(lp.reading_word(), vec![2, 4, 1, 2, 3, 1]);
    }

    #[test]
    fn dcomp_and_touch_of_figure_dyck_path() {
        // the LD(3,9)^{*2} example with dcomp (1,2,1,3) and touch 4
        let p = LatticePath::parse("NNEENENENNNEENEENENNENEE").unwrap();
        assert!(p.is_dyck());
        let labels = vec![2, 6, 0, 7, 0, 1, 4, 0, 8, 3, 5, 9]
            .into_iter()
            .map(|v| if v == 0 { Label::Zero } else { Label::Pos(v) })
            .collect();
        let lp = LabelledPath::new(p, labels, vec![2, 6], vec![]).unwrap();
        assert_eq!(lp.touch(), 4);
        assert_eq!(lp.dcomp(), Composition::new(vec![1, 2, 1, 3]).unwrap());
    }

    #[test]
    fn augmented_path_statistics() {
        // the pushing-figure output: size 12 with 2 zeros, 3 infs, area 5,
        // dinv 16, monomial x1..x7
        let p = LatticePath::parse("NNEENENENNENENEENENNEENE").unwrap();
        assert!(p.is_dyck());
        let labels = vec![
            Label::Pos(2),
            Label::Pos(6),
            Label::Inf,
            Label::Pos(7),
            Label::Zero,
            Label::Pos(1),
            Label::Pos(4),
            Label::Zero,
            Label::Inf,
            Label::Pos(3),
            Label::Pos(5),
            Label::Inf,
        ];
        let lp = LabelledPath::new(p, labels, vec![], vec![]).unwrap();
        assert_eq!(lp.area(), 5);
        assert_eq!(lp.dinv(), 16);
        assert_eq!(lp.monomial(7), vec![1, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn label_rules_rejected() {
        // zero after a north step
        let p = LatticePath::parse("NNEE").unwrap();
        assert!(LabelledPath::new(
            p.clone(),
            vec![Label::Pos(1), Label::Zero],
            vec![],
            vec![]
        )
        .is_err());
        // non-increasing column
        assert!(LabelledPath::new(
            p.clone(),
            vec![Label::Pos(2), Label::Pos(2)],
            vec![],
            vec![]
        )
        .is_err());
        // initial zero
        assert!(
            LabelledPath::new(p, vec![Label::Zero, Label::Pos(1)], vec![], vec![]).is_err()
        );
        // inf off the diagonal
        let p2 = LatticePath::parse("NNEE").unwrap();
        assert!(LabelledPath::new(
            p2,
            vec![Label::Pos(1), Label::Inf],
            vec![],
            vec![]
        )
        .is_err());
    }

    #[test]
    fn dinv_conventions_for_inf_and_zero() {
        assert!(dinv_less(Label::Pos(3), Label::Inf));
        assert!(!dinv_less(Label::Zero, Label::Inf));
        assert!(!dinv_less(Label::Inf, Label::Zero));
        assert!(!dinv_less(Label::Inf, Label::Inf));
        assert!(dinv_less(Label::Zero, Label::Pos(1)));
    }
}
