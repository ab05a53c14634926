//! The size-reducing map psi on decorated Dyck paths, its right inverses
//! psi_r / psi*_r, and their corner-side counterparts gamma, gamma_r,
//! gamma(bullet)_r.
//!
//! psi cuts the portion of the path between the first two touching points,
//! strips its first north and last east step, and moves the rest to the end;
//! a decoration on the now-destroyed first rise is dropped. The inverses
//! split the path at the (r+1)-th touching point and reassemble as
//! N pi_2 E pi_1, optionally decorating the newly created rise. On the
//! corner side gamma deletes the first NE pair.

use super::{CornerPath, DecoratedPath, LatticePath, Step};
use crate::error::{Error, Result};

impl DecoratedPath {
    fn map_rows(&self, f: impl Fn(usize) -> Option<usize>) -> Vec<usize> {
        let mut v: Vec<usize> = self.dr.iter().filter_map(|&i| f(i)).collect();
        v.sort_unstable();
        v
    }
}

/// psi: D(n)^{*k} -> D(n-1)^{*k} or D(n-1)^{*(k-1)}.
pub fn psi(dp: &DecoratedPath) -> DecoratedPath {
    assert!(dp.path.is_dyck(), "psi acts on Dyck paths");
    let n = dp.path.size();
    let touches = dp.touch_rows();
    // t2 = n+1 pretends a touching point at the very end when there is only one
    let t2 = touches.get(1).copied().unwrap_or(n + 1);
    let steps = dp.path.steps();
    // index of the start of row t2's north step, or the whole path
    let cut = if t2 == n + 1 {
        steps.len()
    } else {
        nth_north_index(steps, t2)
    };
    let a_part = &steps[..cut];
    let b_part = &steps[cut..];
    // strip the leading north and trailing east from the first portion
    debug_assert_eq!(a_part.first(), Some(&Step::N));
    debug_assert_eq!(a_part.last(), Some(&Step::E));
    let a_core = &a_part[1..a_part.len() - 1];
    let mut new_steps = Vec::with_capacity(steps.len() - 2);
    new_steps.extend_from_slice(b_part);
    new_steps.extend_from_slice(a_core);
    let path = LatticePath::new(new_steps).unwrap();
    // rows t2..n -> 1..n-t2+1; rows 2..t2-1 -> n-t2+2..n-1; row 2 loses its
    // decoration (it is no longer a rise)
    let dr = dp.map_rows(|i| {
        if i >= t2 {
            Some(i - t2 + 1)
        } else if i == 2 {
            None
        } else {
            Some(i + n - t2)
        }
    });
    DecoratedPath { path, dr }
}

fn nth_north_index(steps: &[Step], n: usize) -> usize {
    let mut count = 0;
    for (i, s) in steps.iter().enumerate() {
        if *s == Step::N {
            count += 1;
            if count == n {
                return i;
            }
        }
    }
    panic!("path has fewer than {n} north steps");
}

/// psi_r and psi*_r: split at the (r+1)-th touching point and reassemble as
/// N pi_2 E pi_1. With star = true the newly created rise is decorated
/// (possible only for r < touch count).
pub fn psi_r(dp: &DecoratedPath, r: usize, star: bool) -> Result<DecoratedPath> {
    if !dp.path.is_dyck() {
        return Err(Error::Domain("psi_r acts on Dyck paths".into()));
    }
    let touches = dp.touch_rows();
    let ell = touches.len();
    if r > ell {
        return Err(Error::Domain(format!(
            "r = {r} out of range 0..{ell}"
        )));
    }
    if star && r == ell {
        return Err(Error::Domain(
            "the starred map needs r < the touching number".into(),
        ));
    }
    let n = dp.path.size();
    let steps = dp.path.steps();
    let cut = if r == ell {
        steps.len()
    } else {
        nth_north_index(steps, touches[r])
    };
    let t = if r == ell { n + 1 } else { touches[r] }; // first row of pi_2
    let pi1 = &steps[..cut];
    let pi2 = &steps[cut..];
    let mut new_steps = Vec::with_capacity(steps.len() + 2);
    new_steps.push(Step::N);
    new_steps.extend_from_slice(pi2);
    new_steps.push(Step::E);
    new_steps.extend_from_slice(pi1);
    let path = LatticePath::new(new_steps).unwrap();
    // pi_2 rows j (>= t) -> j - t + 2; pi_1 rows j (< t) -> j + (n - t + 2)
    let mut dr = dp.map_rows(|j| {
        if j >= t {
            Some(j - t + 2)
        } else {
            Some(j + n + 2 - t)
        }
    });
    if star {
        dr.push(2);
        dr.sort_unstable();
    }
    DecoratedPath::new(path, dr)
}

/// gamma: D'(n)^{(bullet k)} -> D'(n-1)^{(bullet k)} or (bullet k-1):
/// delete the first NE pair.
pub fn gamma(cp: &CornerPath) -> CornerPath {
    let steps = cp.path.steps();
    let ell = steps.iter().take_while(|&&s| s == Step::N).count();
    assert!(ell >= 1, "gamma needs a leading north step");
    debug_assert_eq!(steps.get(ell), Some(&Step::E));
    let mut new_steps = Vec::with_capacity(steps.len() - 2);
    new_steps.extend_from_slice(&steps[..ell - 1]);
    new_steps.extend_from_slice(&steps[ell + 1..]);
    let path = LatticePath::new(new_steps).unwrap();
    // the deleted east step fronted row ell+1; if that row was a decorated
    // corner and now follows a north step, the decoration dies
    let next_is_north = steps.get(ell + 1) == Some(&Step::N);
    let mut dc: Vec<usize> = cp
        .dc
        .iter()
        .filter_map(|&i| {
            if i == ell + 1 && next_is_north {
                None
            } else {
                Some(i - 1)
            }
        })
        .collect();
    dc.sort_unstable();
    CornerPath { path, dc }
}

/// gamma_r / gamma(bullet)_r: insert an NE pair after the first r north
/// steps; the bulleted version also decorates the newly created corner.
pub fn gamma_r(cp: &CornerPath, r: usize, bullet: bool) -> Result<CornerPath> {
    let steps = cp.path.steps();
    let ell = steps.iter().take_while(|&&s| s == Step::N).count();
    if r > ell {
        return Err(Error::Domain(format!("r = {r} out of range 0..{ell}")));
    }
    if bullet && r == ell {
        return Err(Error::Domain(
            "the bulleted map needs r < the number of leading north steps".into(),
        ));
    }
    let mut new_steps = Vec::with_capacity(steps.len() + 2);
    new_steps.extend(std::iter::repeat(Step::N).take(r + 1));
    new_steps.push(Step::E);
    new_steps.extend(std::iter::repeat(Step::N).take(ell - r));
    new_steps.extend_from_slice(&steps[ell..]);
    let path = LatticePath::new(new_steps).unwrap();
    let mut dc: Vec<usize> = cp.dc.iter().map(|&i| i + 1).collect();
    if bullet {
        dc.push(r + 2);
        dc.sort_unstable();
    }
    CornerPath::new(path, dc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::Composition;
    use crate::paths::families::{d_bullet, d_star};
    use crate::paths::zeta::{dcomp_prime, zeta_unlabelled};

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn psi_figure_example() {
        // D((5,2,2))^{*3} -> D((2,2,1,3,1))^{*2}
        let path = LatticePath::parse("NNENNNEENEENEENNENEENNEE").unwrap();
        let dp = DecoratedPath::new(path, vec![2, 5, 9]).unwrap();
        assert_eq!(dp.dcomp(), comp(&[5, 2, 2]));
        let img = psi(&dp);
        let expect_path = LatticePath::parse("NNENEENNEENENNNEENEENE").unwrap();
        assert_eq!(img.path, expect_path);
        assert_eq!(img.dr, vec![2, 9]);
        assert_eq!(img.dcomp(), comp(&[2, 2, 1, 3, 1]));
    }

    #[test]
    fn gamma_figure_example() {
        // the corner-side image of the psi example: gamma commutes with psi
        // through zeta, so the image composition matches the psi image
        let path = LatticePath::parse("NNNENNNENNENEENNEEEEENEE").unwrap();
        let cp = CornerPath::new(path, vec![4, 7, 12]).unwrap();
        assert_eq!(dcomp_prime(&cp), comp(&[5, 2, 2]));
        let img = gamma(&cp);
        let expect_path = LatticePath::parse("NNNNNENNENEENNEEEEENEE").unwrap();
        assert_eq!(img.path, expect_path);
        assert_eq!(img.dc, vec![6, 11]);
        assert_eq!(dcomp_prime(&img), comp(&[2, 2, 1, 3, 1]));
    }

    #[test]
    fn psi_right_inverses() {
        for n in 1..=5 {
            for k in 0..n.min(3) {
                for dp in d_star(n, k) {
                    let ell = dp.touch_rows().len();
                    for r in 0..=ell {
                        let up = psi_r(&dp, r, false).unwrap();
                        assert_eq!(psi(&up), dp, "psi o psi_r != id at r={r}");
                        let alpha = dp.dcomp();
                        // dcomp of psi_r image: (1 + sum_(i>r) alpha_i, alpha_1..alpha_r)
                        let tail: u32 = alpha.parts().iter().skip(r).sum();
                        let mut expect = vec![1 + tail];
                        expect.extend_from_slice(&alpha.parts()[..r]);
                        assert_eq!(up.dcomp(), comp(&expect));
                        if r < ell {
                            let up = psi_r(&dp, r, true).unwrap();
                            assert_eq!(psi(&up), dp, "psi o psi*_r != id at r={r}");
                            let mut expect = vec![tail];
                            expect.extend_from_slice(&alpha.parts()[..r]);
                            assert_eq!(up.dcomp(), comp(&expect));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_right_inverses_and_zeta_conjugation() {
        for n in 1..=5 {
            for k in 0..n.min(3) {
                for cp in d_bullet(n, k) {
                    let ell = cp
                        .path
                        .steps()
                        .iter()
                        .take_while(|&&s| s == Step::N)
                        .count();
                    for r in 0..=ell {
                        let up = gamma_r(&cp, r, false).unwrap();
                        assert_eq!(gamma(&up), cp);
                        if r < ell {
                            let up = gamma_r(&cp, r, true).unwrap();
                            assert_eq!(gamma(&up), cp);
                        }
                    }
                }
                // zeta o psi = gamma o zeta
                for dp in d_star(n, k) {
                    if dp.path.size() < 1 {
                        continue;
                    }
                    let lhs = zeta_unlabelled(&psi(&dp));
                    let rhs = gamma(&zeta_unlabelled(&dp));
                    assert_eq!(lhs, rhs, "conjugation failed on {:?}", dp);
                }
            }
        }
    }
}
