//! Named checks: every theorem, lemma, proposition and identity gets an
//! executable comparison of both sides, and every conjecture gets a sweep
//! that either confirms or surfaces a counterexample. Theorems and
//! conjectures share one code path but report with different statuses, so a
//! failed conjecture is a finding while a failed theorem breaks the build.

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bounded::{to_bounded, BoundedPoly};
use crate::combinat::{compositions, partitions, partitions_up_to, Composition, Partition};
use crate::dpa;
use crate::error::{Error, Result};
use crate::macdonald::{pieri_c, pieri_d, pieri_d_general, qt_stats, MacdonaldCtx};
use crate::ops;
use crate::paths::families::{
    self, ld, ld_aug, ld_valley, lsq, park, pref, qt_enumerator, qtx_enumerator,
    quasisym_enumerator, tx_enumerator,
};
use crate::paths::schedule::{
    inv_of_perm, two_run_identity_sides, two_run_words, yconsec_elements, DiagWord,
};
use crate::paths::zeta;
use crate::qt::{q_binomial, QtRational};
use crate::symfun::{
    self, eval_constant_alphabet, hall_inner, phi, plethysm, star_inner, star_pleth, Alphabet,
    Basis, SymFunc,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CheckStatus {
    #[serde(rename = "THEOREM_PASS")]
    TheoremPass,
    #[serde(rename = "THEOREM_FAIL")]
    TheoremFail,
    #[serde(rename = "CONJ_CONFIRMED")]
    ConjConfirmed,
    #[serde(rename = "CONJ_REFUTED")]
    ConjRefuted,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub params: BTreeMap<String, i64>,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<SymFunc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub wall_time_ms: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        matches!(
            self.status,
            CheckStatus::TheoremPass | CheckStatus::ConjConfirmed
        )
    }

    pub fn is_theorem_failure(&self) -> bool {
        self.status == CheckStatus::TheoremFail
    }
}

/// Outcome of one comparison before it is wrapped into a report.
struct Outcome {
    equal: bool,
    difference: Option<SymFunc>,
    note: Option<String>,
}

impl Outcome {
    fn equal() -> Outcome {
        Outcome {
            equal: true,
            difference: None,
            note: None,
        }
    }

    fn with_note(note: String) -> Outcome {
        Outcome {
            equal: true,
            difference: None,
            note: Some(note),
        }
    }

    fn unequal(difference: Option<SymFunc>, note: Option<String>) -> Outcome {
        Outcome {
            equal: false,
            difference,
            note,
        }
    }
}

fn get(params: &BTreeMap<String, i64>, key: &str) -> Result<i64> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::Domain(format!("missing parameter {key:?}")))
}

fn get_or(params: &BTreeMap<String, i64>, key: &str, default: i64) -> i64 {
    params.get(key).copied().unwrap_or(default)
}

/// Compositions are passed as decimal digit strings (e.g. 121 for (1,2,1)).
fn get_alpha(params: &BTreeMap<String, i64>) -> Result<Composition> {
    let code = get(params, "alpha")?;
    decode_alpha(code)
}

pub fn decode_alpha(code: i64) -> Result<Composition> {
    if code < 0 {
        return Err(Error::Domain("composition code must be nonnegative".into()));
    }
    if code == 0 {
        return Ok(Composition::empty());
    }
    let digits: Vec<u32> = code
        .to_string()
        .chars()
        .map(|c| c.to_digit(10).unwrap())
        .collect();
    Composition::new(digits)
}

pub fn encode_alpha(alpha: &Composition) -> i64 {
    alpha
        .parts()
        .iter()
        .fold(0i64, |acc, &p| acc * 10 + p as i64)
}

fn schur(ctx: &MacdonaldCtx, f: &SymFunc) -> Result<SymFunc> {
    ctx.convert(f, Basis::S)
}

/// Difference in the Schur basis; None when equal.
fn sym_outcome(ctx: &MacdonaldCtx, lhs: &SymFunc, rhs: &SymFunc) -> Result<Outcome> {
    let l = schur(ctx, lhs)?;
    let r = schur(ctx, rhs)?;
    let d = l.sub(&r);
    if d.is_zero() {
        Ok(Outcome::equal())
    } else {
        Ok(Outcome::unequal(Some(d), None))
    }
}

fn scalar_outcome(lhs: &QtRational, rhs: &QtRational) -> Outcome {
    if lhs == rhs {
        Outcome::equal()
    } else {
        let d = lhs - rhs;
        Outcome::unequal(Some(SymFunc::scalar(d)), None)
    }
}

/// Compare a symmetric function against a path enumerator in n variables.
fn bounded_outcome(
    ctx: &MacdonaldCtx,
    f: &SymFunc,
    enumerator: &BoundedPoly,
    nvars: usize,
) -> Result<Outcome> {
    let img = to_bounded(&ctx.htilde_to_p(f)?, nvars)?;
    if img == *enumerator {
        return Ok(Outcome::equal());
    }
    let diff = img.sub(enumerator);
    let as_sym = diff.to_symfunc().ok().map(|m| m.convert(Basis::S).ok()).flatten();
    let note = if as_sym.is_none() {
        Some(format!(
            "difference is not symmetric; {} differing monomials",
            diff.num_terms()
        ))
    } else {
        None
    };
    Ok(Outcome::unequal(as_sym, note))
}

/// Specialize every coefficient at q = 1 (t stays symbolic).
fn bounded_q1(b: &BoundedPoly) -> Result<BoundedPoly> {
    let one = BigRational::one();
    let mut out = BoundedPoly::zero(b.nvars());
    for (e, c) in b.terms() {
        out.add_term(e.clone(), c.specialize_q(&one)?);
    }
    Ok(out)
}

fn bounded_q1_outcome(
    ctx: &MacdonaldCtx,
    f: &SymFunc,
    enumerator: &BoundedPoly,
    nvars: usize,
) -> Result<Outcome> {
    let img = to_bounded(&ctx.htilde_to_p(f)?, nvars)?;
    let img = bounded_q1(&img)?;
    if img == *enumerator {
        return Ok(Outcome::equal());
    }
    let diff = img.sub(enumerator);
    Ok(Outcome::unequal(
        diff.to_symfunc().ok().and_then(|m| m.convert(Basis::S).ok()),
        Some("q=1 comparison failed".into()),
    ))
}

// ---------------------------------------------------------------------------
// individual checks
// ---------------------------------------------------------------------------

fn chk_theta_nabla(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    let n = get(params, "n")?;
    let k = get(params, "k")?;
    let mut lhs = ops::theta_ek(
        ctx,
        k as u32,
        &ops::nabla(ctx, &SymFunc::e(n - k))?,
    )?;
    if get_or(params, "perturb", 0) != 0 {
        // negative control for the harness: inject +s_(n)
        let mut p = schur(ctx, &lhs)?;
        p.add_term(Partition::single(n as u32), QtRational::one());
        lhs = p;
    }
    let rhs = ops::delta_prime(ctx, &SymFunc::e(n - k - 1), &SymFunc::e(n))?;
    sym_outcome(ctx, &lhs, &rhs)
}

fn chk_theta_nabla_sum(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    let n = get(params, "n")?;
    let k = get(params, "k")?;
    let mut lhs = SymFunc::zero(Basis::Htilde);
    for r in 1..=(n - k) {
        let enk = ops::e_nk((n - k) as u32, r as u32)?;
        lhs = lhs.add(&ops::theta_ek(ctx, k as u32, &ops::nabla(ctx, &enk)?)?);
    }
    let rhs = ops::delta_prime(ctx, &SymFunc::e(n - k - 1), &SymFunc::e(n))?;
    sym_outcome(ctx, &lhs, &rhs)
}

fn chk_theta_square(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    let n = get(params, "n")?;
    let k = get(params, "k")?;
    let ratio = &ops::bracket_q(n) / &ops::bracket_q(n - k);
    let inner = ops::nabla(ctx, &ops::omega_p((n - k) as u32))?;
    let lhs = ops::theta_ek(ctx, k as u32, &inner)?.scale(&ratio);
    let tratio = &ops::bracket_t(n - k) / &ops::bracket_t(n);
    let rhs = ops::delta(ctx, &SymFunc::e(n - k), &ops::omega_p(n as u32))?.scale(&tratio);
    sym_outcome(ctx, &lhs, &rhs)
}

fn chk_theta_square_sum(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    let n = get(params, "n")?;
    let k = get(params, "k")?;
    let mut lhs = SymFunc::zero(Basis::Htilde);
    for r in 1..=(n - k) {
        let enk = ops::e_nk((n - k) as u32, r as u32)?;
        let term = ops::theta_ek(ctx, k as u32, &ops::nabla(ctx, &enk)?)?;
        lhs = lhs.add(&term.scale(&(&ops::bracket_q(n) / &ops::bracket_q(r))));
    }
    let tratio = &ops::bracket_t(n - k) / &ops::bracket_t(n);
    let rhs = ops::delta(ctx, &SymFunc::e(n - k), &ops::omega_p(n as u32))?.scale(&tratio);
    sym_outcome(ctx, &lhs, &rhs)
}

fn chk_schroeder(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // <Delta_(h_l) f, h_k e_(n-l-k)> = <Theta_l f, h_k e_(n-k)> with
    // f = nabla C_alpha of degree n - l
    let alpha = get_alpha(params)?;
    let l = get(params, "l")?;
    let k = get(params, "k")?;
    let n = alpha.size() as i64 + l;
    let f = ops::nabla(ctx, &ops::c_alpha(&alpha))?;
    let lhs_f = ops::delta(ctx, &SymFunc::h(l), &f)?;
    let lhs = hall_inner(
        &ctx.htilde_to_p(&lhs_f)?,
        &SymFunc::h(k).mul(&SymFunc::e(n - l - k)),
    );
    let rhs_f = ops::theta_ek(ctx, l as u32, &f)?;
    let rhs = hall_inner(
        &ctx.htilde_to_p(&rhs_f)?,
        &SymFunc::h(k).mul(&SymFunc::e(n - k)),
    );
    Ok(scalar_outcome(&lhs, &rhs))
}

fn chk_shuffle_comp(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // nabla C_alpha = dcomp-refined LD(0,n) enumerator (proved, k = 0)
    let alpha = get_alpha(params)?;
    let n = alpha.size() as usize;
    let lhs = ops::nabla(ctx, &ops::c_alpha(&alpha))?;
    let objs: Vec<_> = ld(0, n, 0)
        .into_iter()
        .filter(|p| p.dcomp() == alpha)
        .collect();
    bounded_outcome(ctx, &lhs, &qtx_enumerator(&objs, n), n)
}

fn chk_shuffle_touch(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // nabla E_(n,r) = touch-refined LD(0,n) enumerator (proved)
    let n = get(params, "n")?;
    let r = get(params, "r")?;
    let lhs = ops::nabla(ctx, &ops::e_nk(n as u32, r as u32)?)?;
    let objs: Vec<_> = ld(0, n as usize, 0)
        .into_iter()
        .filter(|p| p.touch() == r as usize)
        .collect();
    bounded_outcome(ctx, &lhs, &qtx_enumerator(&objs, n as usize), n as usize)
}

fn chk_dpa_recursion(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // d_-^l M_alpha^{*k} equals the corner-path enumerator of D'(alpha)^{(bullet k)}
    let alpha = get_alpha(params)?;
    let k = get(params, "k")?;
    let n = alpha.size() as usize + k as usize;
    let lhs = dpa::m_alpha(&alpha, k)
        .d_minus_pow(alpha.len())
        .as_symfunc();
    let mut rhs = BoundedPoly::zero(n);
    for cp in families::d_bullet_comp(&alpha, k as usize) {
        let chi = zeta::chi_bar(&cp.path, n);
        rhs = rhs.add(&chi.scale(&QtRational::qt_monomial(0, cp.bounce())));
    }
    let img = to_bounded(&lhs, n)?;
    if img == rhs {
        Ok(Outcome::equal())
    } else {
        Ok(Outcome::unequal(
            img.sub(&rhs)
                .to_symfunc()
                .ok()
                .and_then(|m| m.convert(Basis::S).ok()),
            None,
        ))
    }
}

fn chk_dpa_key(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // M_alpha^{*k} = sum over D'(alpha)^{(bullet k)} of t^bounce d(pi-tail),
    // compared inside V_l itself
    let alpha = get_alpha(params)?;
    let k = get(params, "k")?;
    let ell = alpha.len();
    let lhs = dpa::m_alpha(&alpha, k);
    let mut rhs = dpa::VkElement::zero(ell);
    for cp in families::d_bullet_comp(&alpha, k as usize) {
        let steps = cp.path.steps();
        let lead = steps
            .iter()
            .take_while(|&&s| s == crate::paths::Step::N)
            .count();
        if lead != ell {
            return Err(Error::Domain(
                "corner path does not start with l north steps".into(),
            ));
        }
        let d = dpa::d_of_partial(&steps[lead..]);
        rhs = rhs.add(&d.scale(&QtRational::qt_monomial(0, cp.bounce())));
    }
    if lhs == rhs {
        Ok(Outcome::equal())
    } else {
        Ok(Outcome::unequal(None, Some("V_l elements differ".into())))
    }
}

fn chk_zeta(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // bijectivity of zeta with statistic and composition transport
    let n = get(params, "n")? as usize;
    let k = get(params, "k")? as usize;
    let domain = ld(0, n, k);
    let mut images = std::collections::BTreeSet::new();
    for p in &domain {
        let img = zeta::zeta(p)?;
        if p.dinv() != img.inv() || p.area() != img.bounce() {
            return Ok(Outcome::unequal(
                None,
                Some(format!("statistics not transported on {:?}", p)),
            ));
        }
        if zeta::zeta_inv(&img) != *p {
            return Ok(Outcome::unequal(
                None,
                Some(format!("round trip failed on {:?}", p)),
            ));
        }
        let cp = crate::paths::CornerPath {
            path: img.path.clone(),
            dc: img.dc.clone(),
        };
        if zeta::dcomp_prime(&cp) != p.dcomp() {
            return Ok(Outcome::unequal(
                None,
                Some(format!("composition not transported on {:?}", p)),
            ));
        }
        if !zeta::wprime_ok(&img.path, &img.w) {
            return Ok(Outcome::unequal(
                None,
                Some(format!("image labels invalid on {:?}", p)),
            ));
        }
        images.insert(format!("{:?}", img));
    }
    // surjectivity onto the bounded-label corner family
    let codomain = zeta::ld_bullet(n, k, n as u32);
    if images.len() != domain.len() || codomain.len() != domain.len() {
        return Ok(Outcome::unequal(
            None,
            Some(format!(
                "bijection count mismatch: {} objects, {} images, {} codomain",
                domain.len(),
                images.len(),
                codomain.len()
            )),
        ));
    }
    for cp in &codomain {
        if !images.contains(&format!("{:?}", cp)) {
            return Ok(Outcome::unequal(
                None,
                Some(format!("corner object not hit: {:?}", cp)),
            ));
        }
    }
    Ok(Outcome::with_note(format!("{} objects", domain.len())))
}

fn chk_psi_gamma(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    use crate::paths::psi_gamma::{gamma, gamma_r, psi, psi_r};
    let n = get(params, "n")? as usize;
    let k = get(params, "k")? as usize;
    for dp in families::d_star(n, k) {
        let ell = dp.touch_rows().len();
        for r in 0..=ell {
            let up = psi_r(&dp, r, false)?;
            if psi(&up) != dp {
                return Ok(Outcome::unequal(None, Some(format!("psi_r at {:?}", dp))));
            }
            if r < ell {
                let up = psi_r(&dp, r, true)?;
                if psi(&up) != dp {
                    return Ok(Outcome::unequal(None, Some(format!("psi*_r at {:?}", dp))));
                }
            }
        }
        let lhs = zeta::zeta_unlabelled(&psi(&dp));
        let rhs = gamma(&zeta::zeta_unlabelled(&dp));
        if lhs != rhs {
            return Ok(Outcome::unequal(
                None,
                Some(format!("zeta conjugation at {:?}", dp)),
            ));
        }
        // the r-indexed diagrams commute as well
        let img = zeta::zeta_unlabelled(&dp);
        for r in 0..=ell {
            if zeta::zeta_unlabelled(&psi_r(&dp, r, false)?) != gamma_r(&img, r, false)? {
                return Ok(Outcome::unequal(None, Some(format!("diagram at {:?}", dp))));
            }
            if r < ell && zeta::zeta_unlabelled(&psi_r(&dp, r, true)?) != gamma_r(&img, r, true)? {
                return Ok(Outcome::unequal(
                    None,
                    Some(format!("starred diagram at {:?}", dp)),
                ));
            }
        }
    }
    for cp in families::d_bullet(n, k) {
        let ell = cp
            .path
            .steps()
            .iter()
            .take_while(|&&s| s == crate::paths::Step::N)
            .count();
        for r in 0..=ell {
            if gamma(&gamma_r(&cp, r, false)?) != cp {
                return Ok(Outcome::unequal(None, Some(format!("gamma_r at {:?}", cp))));
            }
            if r < ell && gamma(&gamma_r(&cp, r, true)?) != cp {
                return Ok(Outcome::unequal(
                    None,
                    Some(format!("gamma-bullet_r at {:?}", cp)),
                ));
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_bounce_diff(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    use crate::paths::psi_gamma::gamma_r;
    let n = get(params, "n")? as usize;
    let k = get(params, "k")? as usize;
    for cp in families::d_bullet(n, k) {
        let alpha = zeta::dcomp_prime(&cp);
        let ell = alpha.len();
        for i in 1..=ell {
            let plain =
                gamma_r(&cp, i - 1, false)?.bounce() - gamma_r(&cp, i, false)?.bounce();
            if plain != alpha.parts()[i - 1] as i64 {
                return Ok(Outcome::unequal(
                    None,
                    Some(format!("bounce difference at {:?}, i={i}", cp)),
                ));
            }
            if i < ell {
                let starred =
                    gamma_r(&cp, i - 1, true)?.bounce() - gamma_r(&cp, i, true)?.bounce();
                if starred != alpha.parts()[i - 1] as i64 {
                    return Ok(Outcome::unequal(
                        None,
                        Some(format!("bulleted bounce difference at {:?}, i={i}", cp)),
                    ));
                }
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_gamma_decomp(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    use crate::paths::psi_gamma::gamma_r;
    // D'((a)alpha)^{(bullet k)} is the disjoint union of gamma_r images over
    // beta of a-1 (same k) and gamma(bullet)_r images over beta of a (k-1)
    let a = get(params, "a")? as u32;
    let alpha = get_alpha(params)?;
    let k = get(params, "k")? as usize;
    let r = alpha.len();
    let full = families::d_bullet_comp(&alpha.prepend(a), k);
    let mut produced = std::collections::BTreeSet::new();
    for beta in compositions(a - 1) {
        for cp in families::d_bullet_comp(&alpha.concat(&beta), k) {
            let img = gamma_r(&cp, r, false)?;
            if !produced.insert(format!("{:?}", img)) {
                return Ok(Outcome::unequal(None, Some("overlap in the cover".into())));
            }
        }
    }
    if k >= 1 {
        for beta in compositions(a) {
            for cp in families::d_bullet_comp(&alpha.concat(&beta), k - 1) {
                let img = gamma_r(&cp, r, true)?;
                if !produced.insert(format!("{:?}", img)) {
                    return Ok(Outcome::unequal(None, Some("overlap in the cover".into())));
                }
            }
        }
    }
    let full_set: std::collections::BTreeSet<String> =
        full.iter().map(|cp| format!("{:?}", cp)).collect();
    if produced != full_set {
        return Ok(Outcome::unequal(
            None,
            Some(format!(
                "cover has {} elements, family has {}",
                produced.len(),
                full_set.len()
            )),
        ));
    }
    Ok(Outcome::with_note(format!("{} objects", full.len())))
}

fn chk_gen_shuffle(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // Delta_(h_m) nabla E_(n,r) = touch-r LD(m,n) enumerator
    let m = get(params, "m")?;
    let n = get(params, "n")?;
    let r = get(params, "r")?;
    let inner = ops::nabla(ctx, &ops::e_nk(n as u32, r as u32)?)?;
    let lhs = ops::delta(ctx, &SymFunc::h(m), &inner)?;
    let objs: Vec<_> = ld(m as usize, n as usize, 0)
        .into_iter()
        .filter(|p| p.touch() == r as usize)
        .collect();
    bounded_outcome(ctx, &lhs, &qtx_enumerator(&objs, n as usize), n as usize)
}

fn chk_gen_square(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // [n]_q/[r]_q Delta_(h_m) nabla E_(n,r) = touch-r LSQ(m,n) enumerator
    let m = get(params, "m")?;
    let n = get(params, "n")?;
    let r = get(params, "r")?;
    let inner = ops::nabla(ctx, &ops::e_nk(n as u32, r as u32)?)?;
    let lhs = ops::delta(ctx, &SymFunc::h(m), &inner)?
        .scale(&(&ops::bracket_q(n) / &ops::bracket_q(r)));
    let objs: Vec<_> = lsq(m as usize, n as usize, 0)
        .into_iter()
        .filter(|p| p.touch() == r as usize)
        .collect();
    bounded_outcome(ctx, &lhs, &qtx_enumerator(&objs, n as usize), n as usize)
}

fn chk_aug_shuffle(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // Delta_(h_m) nabla e_n[X [s+1]_q] = LD(m,n,s) enumerator
    let m = get(params, "m")?;
    let n = get(params, "n")?;
    let s = get(params, "s")?;
    let en = plethysm(&SymFunc::e(n), &Alphabet::XBracket(s as u32 + 1));
    let lhs = ops::delta(ctx, &SymFunc::h(m), &ops::nabla(ctx, &en)?)?;
    let objs = ld_aug(m as usize, n as usize, s as usize);
    bounded_outcome(ctx, &lhs, &qtx_enumerator(&objs, n as usize), n as usize)
}

fn chk_aug_interlace(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // sum over LD(0,n,s) = sum_r qbinom(r+s, r) (touch-r LD(0,n) sum)
    let n = get(params, "n")?;
    let s = get(params, "s")?;
    let q = QtRational::q();
    let lhs = qtx_enumerator(&ld_aug(0, n as usize, s as usize), n as usize);
    let base = ld(0, n as usize, 0);
    let mut rhs = BoundedPoly::zero(n as usize);
    for r in 1..=n {
        let objs: Vec<_> = base
            .iter()
            .filter(|p| p.touch() == r as usize)
            .cloned()
            .collect();
        let c = q_binomial(r + s, r, &q);
        rhs = rhs.add(&qtx_enumerator(&objs, n as usize).scale(&c));
    }
    if lhs == rhs {
        Ok(Outcome::equal())
    } else {
        Ok(Outcome::unequal(None, Some("interlacing identity failed".into())))
    }
}

fn chk_hperp_shuffle(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // h_j^perp nabla e_n[X[s+1]_q] =
    //   sum_p t^(j-p) qbinom(s+p, p) Delta_(h_(j-p)) nabla e_(n-j)[X[s+p+1]_q]
    let n = get(params, "n")?;
    let j = get(params, "j")?;
    let s = get(params, "s")?;
    let q = QtRational::q();
    let en = plethysm(&SymFunc::e(n), &Alphabet::XBracket(s as u32 + 1));
    let lhs = symfun::skew_perp(&SymFunc::h(j), &ctx.htilde_to_p(&ops::nabla(ctx, &en)?)?);
    let mut rhs = SymFunc::zero(Basis::P);
    for p in 0..=j {
        let inner = plethysm(
            &SymFunc::e(n - j),
            &Alphabet::XBracket((s + p) as u32 + 1),
        );
        if inner.is_zero() {
            continue;
        }
        let term = ops::delta(ctx, &SymFunc::h(j - p), &ops::nabla(ctx, &inner)?)?;
        let c = &QtRational::qt_monomial(0, j - p) * &q_binomial(s + p, p, &q);
        rhs = rhs.add(&ctx.htilde_to_p(&term)?.scale(&c));
    }
    sym_outcome(ctx, &lhs, &rhs)
}

fn chk_binom_det(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    let n = get(params, "n")?;
    let det = ops::binomial_matrix_det(n as usize);
    if det == num_bigint::BigInt::one() {
        Ok(Outcome::equal())
    } else {
        Ok(Outcome::unequal(None, Some(format!("determinant = {det}"))))
    }
}

fn chk_schedule(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // closed product formula vs brute force, all (diagword, shift) fibers
    let m = get(params, "m")? as usize;
    let n = get(params, "n")? as usize;
    let mut buckets: BTreeMap<(usize, Vec<u32>), QtRational> = BTreeMap::new();
    for p in pref(m, n) {
        let dw = DiagWord::from_path(&p);
        let entry = buckets.entry((dw.shift(), dw.word())).or_default();
        *entry = &*entry + &QtRational::qt_monomial(p.dinv(), p.area());
    }
    let count = buckets.len();
    for ((shift, word), total) in buckets {
        let dw = DiagWord::from_word(&word, shift)?;
        if dw.closed_form()? != total {
            return Ok(Outcome::unequal(
                None,
                Some(format!("fiber word={:?} shift={shift}", word)),
            ));
        }
    }
    Ok(Outcome::with_note(format!("{count} fibers")))
}

fn chk_shift_ratio(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // [p_s]/[p_(s-1)] q^(p_(s-1)) (shift s-1 fiber) = (shift s fiber)
    let m = get(params, "m")? as usize;
    let n = get(params, "n")? as usize;
    let q = QtRational::q();
    let mut buckets: BTreeMap<(usize, Vec<u32>), QtRational> = BTreeMap::new();
    for p in pref(m, n) {
        let dw = DiagWord::from_path(&p);
        let entry = buckets.entry((dw.shift(), dw.word())).or_default();
        *entry = &*entry + &QtRational::qt_monomial(p.dinv(), p.area());
    }
    for ((shift, word), total) in &buckets {
        if *shift == 0 {
            continue;
        }
        let prev = buckets
            .get(&(shift - 1, word.clone()))
            .cloned()
            .unwrap_or_default();
        // p_i indexes the runs from the right, independently of the shift
        let dw = DiagWord::from_word(word, *shift)?;
        let nruns = dw.runs().len();
        let nonzero_at = |from_right: usize| -> i64 {
            dw.runs()[nruns - 1 - from_right]
                .iter()
                .filter(|&&x| x != 0)
                .count() as i64
        };
        let p_s = nonzero_at(*shift);
        let p_s1 = nonzero_at(*shift - 1);
        let factor = &(&crate::qt::q_bracket(p_s, &q)? / &crate::qt::q_bracket(p_s1, &q)?)
            * &QtRational::qt_monomial(p_s1, 0);
        if &factor * &prev != *total {
            return Ok(Outcome::unequal(
                None,
                Some(format!("shift step failed at word={:?}, s={shift}", word)),
            ));
        }
    }
    Ok(Outcome::equal())
}

fn chk_pref_park_ratio(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // whole-fiber ratio [n]_q/[r]_q between preference and parking sums
    let m = get(params, "m")? as usize;
    let n = get(params, "n")? as usize;
    let q = QtRational::q();
    let mut pref_buckets: BTreeMap<Vec<u32>, QtRational> = BTreeMap::new();
    for p in pref(m, n) {
        let dw = DiagWord::from_path(&p);
        let entry = pref_buckets.entry(dw.word()).or_default();
        *entry = &*entry + &QtRational::qt_monomial(p.dinv(), p.area());
    }
    let mut park_buckets: BTreeMap<Vec<u32>, QtRational> = BTreeMap::new();
    for p in park(m, n) {
        let dw = DiagWord::from_path(&p);
        let entry = park_buckets.entry(dw.word()).or_default();
        *entry = &*entry + &QtRational::qt_monomial(p.dinv(), p.area());
    }
    for (word, total) in &pref_buckets {
        let dw = DiagWord::from_word(word, 0)?;
        let last_run = dw.runs().last().unwrap();
        let r = last_run.iter().filter(|&&x| x != 0).count() as i64;
        let ratio = &crate::qt::q_bracket(n as i64, &q)? / &crate::qt::q_bracket(r, &q)?;
        let park_total = park_buckets.get(word).cloned().unwrap_or_default();
        if &ratio * &park_total != *total {
            return Ok(Outcome::unequal(
                None,
                Some(format!("ratio failed at word={:?}", word)),
            ));
        }
    }
    Ok(Outcome::equal())
}

fn chk_two_run(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    let a = get(params, "a")? as usize;
    let b = get(params, "b")? as usize;
    let mut count = 0;
    for (alpha, beta) in two_run_words(a, b) {
        let (lhs, rhs) = two_run_identity_sides(&alpha, &beta)?;
        if lhs != rhs {
            return Ok(Outcome::unequal(
                None,
                Some(format!("failed at alpha={:?}, beta={:?}", alpha, beta)),
            ));
        }
        count += 1;
    }
    Ok(Outcome::with_note(format!("{count} words")))
}

fn chk_qsym_factor(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // cross-multiplied form of the quasisymmetric factorization: for every
    // (diagword, shift) fiber S,
    //   (sum_S q^dinv t^area Q_ides) (sum_Yconsec q^inv)
    // = (sum_S q^dinv t^area) (sum_Yconsec q^inv Q_(ides(tau) u ides(pi)))
    let m = get(params, "m")? as usize;
    let n = get(params, "n")? as usize;
    let mut fibers: BTreeMap<(usize, Vec<u32>), Vec<crate::paths::LabelledPath>> = BTreeMap::new();
    for p in pref(m, n) {
        let dw = DiagWord::from_path(&p);
        fibers.entry((dw.shift(), dw.word())).or_default().push(p);
    }
    for ((_shift, word), objs) in fibers {
        let qt = qt_enumerator(&objs);
        let qsym = quasisym_enumerator(&objs, n, n)?;
        let reduced: Vec<u32> = word.iter().copied().filter(|&x| x != 0).collect();
        let ides_tau = families::ides_of_word(&reduced)?;
        let mut young_qt = QtRational::zero();
        let mut young_qsym = BoundedPoly::zero(n);
        for perm in yconsec_elements(&word, n) {
            let qi = QtRational::qt_monomial(inv_of_perm(&perm), 0);
            young_qt += &qi;
            let mut des = ides_tau.clone();
            for d in families::ides_of_word(&perm)? {
                if !des.contains(&d) {
                    des.push(d);
                }
            }
            des.sort_unstable();
            young_qsym =
                young_qsym.add(&crate::bounded::gessel_fundamental(&des, n, n)?.scale(&qi));
        }
        let lhs = qsym.scale(&young_qt);
        let rhs = young_qsym.scale(&qt);
        if lhs != rhs {
            return Ok(Outcome::unequal(
                None,
                Some(format!("factorization failed at word={:?}", word)),
            ));
        }
    }
    Ok(Outcome::equal())
}

fn chk_pref_park_qsym(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // Gessel-weighted fiber ratio between preference and parking functions
    let m = get(params, "m")? as usize;
    let n = get(params, "n")? as usize;
    let q = QtRational::q();
    let mut pref_fibers: BTreeMap<Vec<u32>, Vec<crate::paths::LabelledPath>> = BTreeMap::new();
    for p in pref(m, n) {
        pref_fibers
            .entry(DiagWord::from_path(&p).word())
            .or_default()
            .push(p);
    }
    let mut park_fibers: BTreeMap<Vec<u32>, Vec<crate::paths::LabelledPath>> = BTreeMap::new();
    for p in park(m, n) {
        park_fibers
            .entry(DiagWord::from_path(&p).word())
            .or_default()
            .push(p);
    }
    for (word, objs) in &pref_fibers {
        let dw = DiagWord::from_word(word, 0)?;
        let r = dw
            .runs()
            .last()
            .unwrap()
            .iter()
            .filter(|&&x| x != 0)
            .count() as i64;
        let ratio = &crate::qt::q_bracket(n as i64, &q)? / &crate::qt::q_bracket(r, &q)?;
        let lhs = quasisym_enumerator(objs, n, n)?;
        let park_objs = park_fibers.get(word).cloned().unwrap_or_default();
        let rhs = quasisym_enumerator(&park_objs, n, n)?.scale(&ratio);
        if lhs != rhs {
            return Ok(Outcome::unequal(
                None,
                Some(format!("qsym ratio failed at word={:?}", word)),
            ));
        }
    }
    Ok(Outcome::equal())
}

fn chk_theta1_d1(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // Theta_1 = (e_1 + D_1)/M on the Macdonald basis
    let nmax = get(params, "n")?;
    for n in 1..=nmax {
        let basis = ctx.basis(n as u32)?;
        for mu in partitions(n as u32) {
            let h = basis.htilde_p(&mu).clone();
            let lhs = ctx.htilde_to_p(&ops::theta_ek(ctx, 1, &h)?)?;
            let rhs = SymFunc::e(1)
                .mul(&h)
                .add(&ops::d_k(1, &h))
                .scale(&QtRational::big_m().inv().unwrap());
            if lhs != rhs.to_p() {
                return Ok(Outcome::unequal(
                    Some(lhs.sub(&rhs).convert(Basis::S)?),
                    Some(format!("failed at mu={:?}", mu)),
                ));
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_d0(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    let nmax = get(params, "n")?;
    for n in 1..=nmax {
        let basis = ctx.basis(n as u32)?;
        for mu in partitions(n as u32) {
            let h = basis.htilde_p(&mu).clone();
            let lhs = ops::d_k(0, &h);
            let rhs = h.scale(&basis.stats_of(&mu).d).neg();
            if lhs != rhs.to_p() {
                return Ok(Outcome::unequal(None, Some(format!("failed at mu={:?}", mu))));
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_dk_e1(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // D_k e_1 - e_1 D_k = M D_(k+1) on the Macdonald basis
    let nmax = get(params, "n")?;
    let kmax = get_or(params, "k", 2);
    let e1 = SymFunc::e(1);
    let m = QtRational::big_m();
    for n in 1..=nmax {
        let basis = ctx.basis(n as u32)?;
        for mu in partitions(n as u32) {
            let f = basis.htilde_p(&mu).clone();
            for k in 0..=kmax {
                let lhs = ops::d_k(k, &e1.mul(&f)).sub(&e1.mul(&ops::d_k(k, &f)));
                let rhs = ops::d_k(k + 1, &f).scale(&m);
                if lhs.to_p() != rhs.to_p() {
                    return Ok(Outcome::unequal(
                        None,
                        Some(format!("failed at mu={:?}, k={k}", mu)),
                    ));
                }
            }
        }
    }
    Ok(Outcome::equal())
}

// --- section 11 identity suite ---

fn chk_star_via_omega_phi(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    let nmax = get(params, "n")? as u32;
    for la in partitions_up_to(nmax) {
        for mu in partitions_up_to(nmax) {
            let f = SymFunc::s(la.clone());
            let g = SymFunc::s(mu.clone());
            let star = star_inner(&f, &g);
            let via1 = hall_inner(&phi(&f).omega(), &g);
            let via2 = hall_inner(&omega_then_phi(&f), &g);
            if star != via1 || star != via2 {
                return Ok(Outcome::unequal(
                    None,
                    Some(format!("failed at {:?}, {:?}", la, mu)),
                ));
            }
        }
    }
    Ok(Outcome::equal())
}

fn omega_then_phi(f: &SymFunc) -> SymFunc {
    phi(&f.omega())
}

fn chk_hperp_star_adjoint(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // <h^perp f, g>_* = <f, (omega h)* g>_*
    let nmax = get(params, "n")? as u32;
    for la in partitions_up_to(nmax) {
        for mu in partitions_up_to(nmax.saturating_sub(1)) {
            for nu in partitions_up_to(nmax.saturating_sub(mu.size())) {
                let f = SymFunc::s(la.clone());
                let g = SymFunc::s(mu.clone());
                let h = SymFunc::basis_elem(Basis::H, nu.clone());
                let lhs = star_inner(&symfun::skew_perp(&h, &f), &g);
                let rhs = star_inner(&f, &star_pleth(&h.omega()).mul(&g));
                if lhs != rhs {
                    return Ok(Outcome::unequal(
                        None,
                        Some(format!("failed at {:?}, {:?}, {:?}", la, mu, nu)),
                    ));
                }
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_mac_orthogonality(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    let nmax = get(params, "n")?;
    for n in 0..=nmax {
        let basis = ctx.basis(n as u32)?;
        let parts = partitions(n as u32);
        for (i, la) in parts.iter().enumerate() {
            for (j, mu) in parts.iter().enumerate() {
                let v = star_inner(basis.htilde_p(la), basis.htilde_p(mu));
                let expect = if i == j {
                    basis.stats_of(la).w.clone()
                } else {
                    QtRational::zero()
                };
                if v != expect {
                    return Ok(Outcome::unequal(
                        None,
                        Some(format!("failed at {:?}, {:?}", la, mu)),
                    ));
                }
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_mac_cauchy(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // e_n[XY/M] = sum_mu H~_mu[X] H~_mu[Y] / w_mu with Y a constant alphabet
    let nmax = get(params, "n")?;
    for n in 1..=nmax {
        let basis = ctx.basis(n as u32)?;
        for nu in partitions_up_to(3) {
            if nu.is_empty() {
                continue;
            }
            // Y = M B_nu, so XY/M = X B_nu: p_k -> B_nu(q^k,t^k) p_k
            let lhs = symfun::plethysm_linear(
                &SymFunc::e(n),
                &symfun::DegreeScalars::new(n as u32, |k| {
                    (symfun::b_mu_pow(&nu, k), QtRational::zero())
                }),
            );
            let mut rhs = SymFunc::zero(Basis::P);
            for mu in partitions(n as u32) {
                let hval = eval_constant_alphabet(basis.htilde_p(&mu), |k| {
                    &symfun::mb_scalar(k) * &symfun::b_mu_pow(&nu, k)
                });
                let c = &hval / &basis.stats_of(&mu).w;
                rhs = rhs.add(&basis.htilde_p(&mu).scale(&c));
            }
            if lhs != rhs {
                return Ok(Outcome::unequal(
                    Some(lhs.sub(&rhs).convert(Basis::S)?),
                    Some(format!("failed at n={n}, Y=MB_{:?}", nu)),
                ));
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_mac_reciprocity(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // H~_a[M B_b]/Pi_a = H~_b[M B_a]/Pi_b across degrees
    let nmax = get(params, "n")? as u32;
    let all: Vec<Partition> = (1..=nmax).flat_map(partitions).collect();
    for a in &all {
        let basis_a = ctx.basis(a.size())?;
        for b in &all {
            let ev_ab = eval_constant_alphabet(basis_a.htilde_p(a), |k| {
                &symfun::mb_scalar(k) * &symfun::b_mu_pow(b, k)
            });
            let basis_b = ctx.basis(b.size())?;
            let ev_ba = eval_constant_alphabet(basis_b.htilde_p(b), |k| {
                &symfun::mb_scalar(k) * &symfun::b_mu_pow(a, k)
            });
            let lhs = &ev_ab / &qt_stats(a).pi;
            let rhs = &ev_ba / &qt_stats(b).pi;
            if lhs != rhs {
                return Ok(Outcome::unequal(
                    None,
                    Some(format!("failed at {:?}, {:?}", a, b)),
                ));
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_principal_eval(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // H~_mu[(1-t)(1-q^j)] = (1-q^j) Pi_mu h_j[(1-t)B_mu]
    let nmax = get(params, "n")?;
    let jmax = get_or(params, "j", 4);
    let one = QtRational::one();
    for n in 1..=nmax {
        let basis = ctx.basis(n as u32)?;
        for mu in partitions(n as u32) {
            for j in 1..=jmax {
                let lhs = eval_constant_alphabet(basis.htilde_p(&mu), |k| {
                    let ft = &one - &QtRational::qt_monomial(0, k as i64);
                    let fq = &one - &QtRational::qt_monomial(j * k as i64, 0);
                    &ft * &fq
                });
                let hj = eval_constant_alphabet(&SymFunc::h(j), |k| {
                    let ft = &one - &QtRational::qt_monomial(0, k as i64);
                    &ft * &symfun::b_mu_pow(&mu, k)
                });
                let rhs = &(&(&one - &QtRational::qt_monomial(j, 0))
                    * &basis.stats_of(&mu).pi)
                    * &hj;
                if lhs != rhs {
                    return Ok(Outcome::unequal(
                        None,
                        Some(format!("failed at mu={:?}, j={j}", mu)),
                    ));
                }
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_hook_s(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // <H~_mu, s_(n-r,1^r)> = e_r[B_mu - 1]
    let nmax = get(params, "n")?;
    for n in 1..=nmax {
        let basis = ctx.basis(n as u32)?;
        for mu in partitions(n as u32) {
            for r in 0..n {
                let mut hook = vec![(n - r) as u32];
                hook.extend(std::iter::repeat(1u32).take(r as usize));
                let hook = Partition::new(hook).unwrap();
                let lhs = hall_inner(basis.htilde_p(&mu), &SymFunc::s(hook));
                let rhs = eval_constant_alphabet(&SymFunc::e(r), |k| {
                    &symfun::b_mu_pow(&mu, k) - &QtRational::one()
                });
                if lhs != rhs {
                    return Ok(Outcome::unequal(
                        None,
                        Some(format!("failed at mu={:?}, r={r}", mu)),
                    ));
                }
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_hook_eh(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // <H~_mu, e_r h_(n-r)> = e_r[B_mu]
    let nmax = get(params, "n")?;
    for n in 1..=nmax {
        let basis = ctx.basis(n as u32)?;
        for mu in partitions(n as u32) {
            for r in 0..=n {
                let lhs = hall_inner(
                    basis.htilde_p(&mu),
                    &SymFunc::e(r).mul(&SymFunc::h(n - r)),
                );
                let rhs =
                    eval_constant_alphabet(&SymFunc::e(r), |k| symfun::b_mu_pow(&mu, k));
                if lhs != rhs {
                    return Ok(Outcome::unequal(
                        None,
                        Some(format!("failed at mu={:?}, r={r}", mu)),
                    ));
                }
            }
        }
    }
    Ok(Outcome::equal())
}

fn expansion_outcome(
    ctx: &MacdonaldCtx,
    lhs: &SymFunc,
    coefficient: impl Fn(&Partition) -> QtRational,
    n: u32,
) -> Result<Outcome> {
    let basis = ctx.basis(n)?;
    let mut rhs = SymFunc::zero(Basis::P);
    for mu in partitions(n) {
        rhs = rhs.add(&basis.htilde_p(&mu).scale(&coefficient(&mu)));
    }
    if lhs.to_p() == rhs {
        Ok(Outcome::equal())
    } else {
        Ok(Outcome::unequal(
            Some(lhs.to_p().sub(&rhs).convert(Basis::S)?),
            None,
        ))
    }
}

fn chk_en_expansion(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // e_n = sum_mu M B_mu Pi_mu H~_mu / w_mu
    let nmax = get(params, "n")?;
    let m = QtRational::big_m();
    for n in 1..=nmax {
        let out = expansion_outcome(
            ctx,
            &SymFunc::e(n),
            |mu| {
                let st = qt_stats(mu);
                &(&(&m * &st.b) * &st.pi) / &st.w
            },
            n as u32,
        )?;
        if !out.equal {
            return Ok(out);
        }
    }
    Ok(Outcome::equal())
}

fn chk_eh_expansion(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // h_k[X/M] e_(n-k)[X/M] = sum_mu e_k[B_mu] H~_mu / w_mu
    let nmax = get(params, "n")?;
    for n in 1..=nmax {
        for k in 0..=n {
            let lhs = star_pleth(&SymFunc::h(k)).mul(&star_pleth(&SymFunc::e(n - k)));
            let out = expansion_outcome(
                ctx,
                &lhs,
                |mu| {
                    let ek = eval_constant_alphabet(&SymFunc::e(k), |kk| {
                        symfun::b_mu_pow(mu, kk)
                    });
                    &ek / &qt_stats(mu).w
                },
                n as u32,
            )?;
            if !out.equal {
                return Ok(out);
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_p_expansion(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // omega p_n = [n]_q [n]_t sum_mu M Pi_mu H~_mu / w_mu
    let nmax = get(params, "n")?;
    let m = QtRational::big_m();
    for n in 1..=nmax {
        let c0 = &(&ops::bracket_q(n) * &ops::bracket_t(n)) * &m;
        let out = expansion_outcome(
            ctx,
            &ops::omega_p(n as u32),
            |mu| {
                let st = qt_stats(mu);
                &(&c0 * &st.pi) / &st.w
            },
            n as u32,
        )?;
        if !out.equal {
            return Ok(out);
        }
    }
    Ok(Outcome::equal())
}

fn chk_enj_expansion(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // e_n[X [j]_q] = (1-q^j) sum_mu Pi_mu H~_mu h_j[(1-t)B_mu] / w_mu
    let nmax = get(params, "n")?;
    let jmax = get_or(params, "j", 4);
    let one = QtRational::one();
    for n in 1..=nmax {
        for j in 1..=jmax {
            let lhs = plethysm(&SymFunc::e(n), &Alphabet::XBracket(j as u32));
            let out = expansion_outcome(
                ctx,
                &lhs,
                |mu| {
                    let st = qt_stats(mu);
                    let hj = eval_constant_alphabet(&SymFunc::h(j), |k| {
                        let ft = &one - &QtRational::qt_monomial(0, k as i64);
                        &ft * &symfun::b_mu_pow(mu, k)
                    });
                    let c = &(&one - &QtRational::qt_monomial(j, 0)) * &st.pi;
                    &(&c * &hj) / &st.w
                },
                n as u32,
            )?;
            if !out.equal {
                return Ok(out);
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_pieri_bt_sum(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // e_(n-k-1)[B_b - 1] B_b = sum_(g in_k b) c^(k)_(b,g) B_g T_g
    let nmax = get(params, "n")?;
    for n in 2..=nmax {
        for k in 1..n {
            for beta in partitions(n as u32) {
                let st = qt_stats(&beta);
                let lhs = &eval_constant_alphabet(&SymFunc::e(n - k - 1), |kk| {
                    &symfun::b_mu_pow(&beta, kk) - &QtRational::one()
                }) * &st.b;
                let cs = pieri_c(ctx, k as u32, &beta)?;
                let mut rhs = QtRational::zero();
                for (gamma, c) in &cs {
                    let gst = qt_stats(gamma);
                    rhs += &(&(c * &gst.b) * &gst.t);
                }
                if lhs != rhs {
                    return Ok(Outcome::unequal(
                        None,
                        Some(format!("failed at beta={:?}, k={k}", beta)),
                    ));
                }
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_pieri_t_sum(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // e_(n-k)[B_b] = sum_(g in_k b) c^(k)_(b,g) T_g
    let nmax = get(params, "n")?;
    for n in 1..=nmax {
        for k in 1..=n {
            for beta in partitions(n as u32) {
                let lhs = eval_constant_alphabet(&SymFunc::e(n - k), |kk| {
                    symfun::b_mu_pow(&beta, kk)
                });
                let cs = pieri_c(ctx, k as u32, &beta)?;
                let mut rhs = QtRational::zero();
                for (gamma, c) in &cs {
                    rhs += &(c * &qt_stats(gamma).t);
                }
                if lhs != rhs {
                    return Ok(Outcome::unequal(
                        None,
                        Some(format!("failed at beta={:?}, k={k}", beta)),
                    ));
                }
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_pieri_transpose(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // c^(k)_(mu,nu) = (w_mu / w_nu) d^(k)_(mu,nu)
    let nmax = get(params, "n")?;
    for n in 1..=nmax {
        for k in 1..=n {
            for mu in partitions(n as u32) {
                let cs = pieri_c(ctx, k as u32, &mu)?;
                let wmu = qt_stats(&mu).w;
                for nu in partitions((n - k) as u32) {
                    let ds = pieri_d(ctx, k as u32, &nu)?;
                    let c = cs.get(&nu).cloned().unwrap_or_default();
                    let d = ds.get(&mu).cloned().unwrap_or_default();
                    let wnu = qt_stats(&nu).w;
                    if &c * &wnu != &d * &wmu {
                        return Ok(Outcome::unequal(
                            None,
                            Some(format!("failed at mu={:?}, nu={:?}", mu, nu)),
                        ));
                    }
                }
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_pieri_recursion(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // c^(k+1)_(mu,nu) = (1/B_(mu/nu)) sum_alpha c^(k)_(mu,alpha)
    //                   c^(1)_(alpha,nu) T_alpha / T_nu
    let nmax = get(params, "n")?;
    let kmax = get_or(params, "k", 3);
    for n in 2..=nmax {
        for mu in partitions(n as u32) {
            for k in 1..=kmax.min(n - 1) {
                let ck1 = pieri_c(ctx, (k + 1) as u32, &mu)?;
                let ck = pieri_c(ctx, k as u32, &mu)?;
                for nu in partitions((n - k - 1) as u32) {
                    let lhs = ck1.get(&nu).cloned().unwrap_or_default();
                    let bdiff = &qt_stats(&mu).b - &qt_stats(&nu).b;
                    let mut sum = QtRational::zero();
                    for alpha in partitions((n - k) as u32) {
                        let ca = ck.get(&alpha).cloned().unwrap_or_default();
                        if ca.is_zero() {
                            continue;
                        }
                        let c1 = pieri_c(ctx, 1, &alpha)?
                            .get(&nu)
                            .cloned()
                            .unwrap_or_default();
                        if c1.is_zero() {
                            continue;
                        }
                        let ratio = &qt_stats(&alpha).t / &qt_stats(&nu).t;
                        sum += &(&(&ca * &c1) * &ratio);
                    }
                    if &lhs * &bdiff != sum {
                        return Ok(Outcome::unequal(
                            None,
                            Some(format!("failed at mu={:?}, nu={:?}, k={k}", mu, nu)),
                        ));
                    }
                }
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_mult_eigen_eval(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // sum_mu Pi_mu F[M B_mu] d^A_(mu,nu) = Pi_nu (Delta_(A[MX]) F)[M B_nu]
    let nmax = get(params, "n")?;
    let multipliers: Vec<SymFunc> = vec![
        SymFunc::e(1),
        SymFunc::e(2),
        SymFunc::h(2),
        SymFunc::s(Partition::new(vec![2, 1]).unwrap()),
    ];
    let tests: Vec<SymFunc> = vec![SymFunc::e(2), SymFunc::h(3), SymFunc::e(3)];
    for a in &multipliers {
        let dega = a.degree().unwrap_or(0);
        for f in &tests {
            for nu in partitions_up_to((nmax as u32).saturating_sub(dega)) {
                if nu.is_empty() {
                    continue;
                }
                let ds = pieri_d_general(ctx, a, &nu)?;
                let mut lhs = QtRational::zero();
                for (mu, d) in &ds {
                    let fv = eval_constant_alphabet(f, |k| {
                        &symfun::mb_scalar(k) * &symfun::b_mu_pow(mu, k)
                    });
                    lhs += &(&(&qt_stats(mu).pi * &fv) * d);
                }
                let g = ops::delta(ctx, &phi(a), f)?;
                let gp = ctx.htilde_to_p(&g)?;
                let gval = eval_constant_alphabet(&gp, |k| {
                    &symfun::mb_scalar(k) * &symfun::b_mu_pow(&nu, k)
                });
                let rhs = &qt_stats(&nu).pi * &gval;
                if lhs != rhs {
                    return Ok(Outcome::unequal(
                        None,
                        Some(format!(
                            "failed at A deg {}, F deg {:?}, nu={:?}",
                            dega,
                            f.degree(),
                            nu
                        )),
                    ));
                }
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_half_principal(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // h_k[X/(1-q)] e_(n-k)[X/M] = sum_mu (H~_mu / w_mu)
    //   sum_r qbinom(k-1, r-1) q^(binom(r,2)+r-kr) (-1)^(k-r) h_r[(1-t)B_mu]
    let nmax = get(params, "n")?;
    let q = QtRational::q();
    let one = QtRational::one();
    for n in 1..=nmax {
        for k in 1..=n {
            let lhs = plethysm(&SymFunc::h(k), &Alphabet::XOverOneMinusQ)
                .mul(&star_pleth(&SymFunc::e(n - k)));
            let out = expansion_outcome(
                ctx,
                &lhs,
                |mu| {
                    let mut acc = QtRational::zero();
                    for r in 1..=k {
                        let hr = eval_constant_alphabet(&SymFunc::h(r), |kk| {
                            let ft = &one - &QtRational::qt_monomial(0, kk as i64);
                            &ft * &symfun::b_mu_pow(mu, kk)
                        });
                        let sign = if (k - r) % 2 == 0 { 1 } else { -1 };
                        let expo = r * (r - 1) / 2 + r - k * r;
                        let c = &(&q_binomial(k - 1, r - 1, &q)
                            * &QtRational::qt_monomial(expo, 0))
                            * &QtRational::from_int(sign);
                        acc += &(&c * &hr);
                    }
                    &acc / &qt_stats(mu).w
                },
                n as u32,
            )?;
            if !out.equal {
                return Ok(Outcome::unequal(
                    out.difference,
                    Some(format!("failed at n={n}, k={k}")),
                ));
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_master_expansion(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // sum_g (H~_g/w_g) h_k[(1-t)B_g] e_l[B_g] =
    //   sum_j t^(l-j) sum_s q^binom(s,2) qbinom(s+j, s) qbinom(k+j-1, s+j-1)
    //     h_(s+j)[X/(1-q)] h_(l-j)[X/M] e_(m-s-l)[X/M]
    let mmax = get(params, "m")?;
    let kmax = get_or(params, "k", 3);
    let lmax = get_or(params, "l", 2);
    let q = QtRational::q();
    let one = QtRational::one();
    for m in 1..=mmax {
        for k in 1..=kmax {
            for l in 0..=lmax {
                let basis = ctx.basis(m as u32)?;
                let mut lhs = SymFunc::zero(Basis::P);
                for g in partitions(m as u32) {
                    let hk = eval_constant_alphabet(&SymFunc::h(k), |kk| {
                        let ft = &one - &QtRational::qt_monomial(0, kk as i64);
                        &ft * &symfun::b_mu_pow(&g, kk)
                    });
                    let el =
                        eval_constant_alphabet(&SymFunc::e(l), |kk| symfun::b_mu_pow(&g, kk));
                    let c = &(&hk * &el) / &qt_stats(&g).w;
                    lhs = lhs.add(&basis.htilde_p(&g).scale(&c));
                }
                let mut rhs = SymFunc::zero(Basis::P);
                for j in 0..=l {
                    for s in 0..=k {
                        if m - s - l < 0 {
                            continue;
                        }
                        let c = &(&QtRational::qt_monomial(s * (s - 1) / 2, l - j)
                            * &q_binomial(s + j, s, &q))
                            * &q_binomial(k + j - 1, s + j - 1, &q);
                        if c.is_zero() {
                            continue;
                        }
                        let term = plethysm(&SymFunc::h(s + j), &Alphabet::XOverOneMinusQ)
                            .mul(&star_pleth(&SymFunc::h(l - j)))
                            .mul(&star_pleth(&SymFunc::e(m - s - l)));
                        rhs = rhs.add(&term.scale(&c));
                    }
                }
                if lhs != rhs {
                    return Ok(Outcome::unequal(
                        Some(lhs.sub(&rhs).convert(Basis::S)?),
                        Some(format!("failed at m={m}, k={k}, l={l}")),
                    ));
                }
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_enk_family(_ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // E_(n,k) against its defining expansion, the plain sum, the omega p_n
    // weighting, and the compositional sum
    let nmax = get(params, "n")?;
    let q = QtRational::q();
    for n in 1..=nmax {
        let mut total = SymFunc::zero(Basis::P);
        let mut weighted = SymFunc::zero(Basis::P);
        for r in 1..=n {
            let enr = ops::e_nk(n as u32, r as u32)?;
            total = total.add(&enr);
            weighted = weighted.add(&enr.scale(&(&ops::bracket_q(n) / &ops::bracket_q(r))));
        }
        if total != SymFunc::e(n).to_p() {
            return Ok(Outcome::unequal(None, Some(format!("plain sum at n={n}"))));
        }
        if weighted != ops::omega_p(n as u32).to_p() {
            return Ok(Outcome::unequal(
                None,
                Some(format!("omega p weighting at n={n}")),
            ));
        }
        let mut comp_sum = SymFunc::zero(Basis::P);
        for alpha in compositions(n as u32) {
            comp_sum = comp_sum.add(&ops::c_alpha(&alpha));
        }
        if comp_sum != SymFunc::e(n).to_p() {
            return Ok(Outcome::unequal(
                None,
                Some(format!("compositional sum at n={n}")),
            ));
        }
        for j in 1..=(n + 1) {
            let lhs = plethysm(&SymFunc::e(n), &Alphabet::XBracket(j as u32));
            let mut rhs = SymFunc::zero(Basis::P);
            for k in 1..=n {
                rhs = rhs.add(
                    &ops::e_nk(n as u32, k as u32)?.scale(&q_binomial(k + j - 1, k, &q)),
                );
            }
            if lhs != rhs {
                return Ok(Outcome::unequal(
                    None,
                    Some(format!("defining expansion at n={n}, j={j}")),
                ));
            }
        }
    }
    Ok(Outcome::equal())
}

// --- conjecture sweeps ---

fn chk_gen_delta(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // Delta_(h_m) Delta'_(e_(n-k-1)) e_n = LD(m,n)^{*k} enumerator
    let m = get(params, "m")?;
    let n = get(params, "n")?;
    let k = get(params, "k")?;
    let inner = ops::delta_prime(ctx, &SymFunc::e(n - k - 1), &SymFunc::e(n))?;
    let lhs = ops::delta(ctx, &SymFunc::h(m), &inner)?;
    let objs = ld(m as usize, n as usize, k as usize);
    bounded_outcome(ctx, &lhs, &qtx_enumerator(&objs, n as usize), n as usize)
}

fn chk_touching_gen_delta(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // Delta_(h_m) Theta_k nabla E_(n-k,r) = touch-r LD(m,n)^{*k} enumerator
    let m = get(params, "m")?;
    let n = get(params, "n")?;
    let k = get(params, "k")?;
    let r = get(params, "r")?;
    let inner = ops::nabla(ctx, &ops::e_nk((n - k) as u32, r as u32)?)?;
    let themed = ops::theta_ek(ctx, k as u32, &inner)?;
    let lhs = ops::delta(ctx, &SymFunc::h(m), &themed)?;
    let objs: Vec<_> = ld(m as usize, n as usize, k as usize)
        .into_iter()
        .filter(|p| p.touch() == r as usize)
        .collect();
    bounded_outcome(ctx, &lhs, &qtx_enumerator(&objs, n as usize), n as usize)
}

fn chk_comp_delta(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // Theta_k nabla C_alpha = dcomp-refined LD(0,n)^{*k} enumerator
    let alpha = get_alpha(params)?;
    let k = get(params, "k")?;
    let n = alpha.size() as i64 + k;
    let inner = ops::nabla(ctx, &ops::c_alpha(&alpha))?;
    let lhs = ops::theta_ek(ctx, k as u32, &inner)?;
    let objs: Vec<_> = ld(0, n as usize, k as usize)
        .into_iter()
        .filter(|p| p.dcomp() == alpha)
        .collect();
    bounded_outcome(ctx, &lhs, &qtx_enumerator(&objs, n as usize), n as usize)
}

fn chk_comp_delta_q1(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // q = 1 compositional refinement with zero labels
    let m = get(params, "m")?;
    let alpha = get_alpha(params)?;
    let k = get(params, "k")?;
    let n = alpha.size() as i64 + k;
    let inner = ops::nabla(ctx, &ops::c_alpha(&alpha))?;
    let themed = ops::theta_ek(ctx, k as u32, &inner)?;
    let lhs = ops::delta(ctx, &SymFunc::h(m), &themed)?;
    let objs: Vec<_> = ld(m as usize, n as usize, k as usize)
        .into_iter()
        .filter(|p| p.dcomp() == alpha)
        .collect();
    let nvars = n as usize;
    bounded_q1_outcome(ctx, &lhs, &tx_enumerator(&objs, nvars), nvars)
}

fn chk_gen_delta_square(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // [n-k]_t/[n]_t Delta_(h_m) Delta_(e_(n-k)) omega p_n = LSQ(m,n)^{*k}
    let m = get(params, "m")?;
    let n = get(params, "n")?;
    let k = get(params, "k")?;
    let inner = ops::delta(ctx, &SymFunc::e(n - k), &ops::omega_p(n as u32))?;
    let lhs = ops::delta(ctx, &SymFunc::h(m), &inner)?
        .scale(&(&ops::bracket_t(n - k) / &ops::bracket_t(n)));
    let objs = lsq(m as usize, n as usize, k as usize);
    bounded_outcome(ctx, &lhs, &qtx_enumerator(&objs, n as usize), n as usize)
}

fn chk_touching_gen_delta_square(
    ctx: &MacdonaldCtx,
    params: &BTreeMap<String, i64>,
) -> Result<Outcome> {
    // [n]_q/[r]_q Delta_(h_m) Theta_k nabla E_(n-k,r) = touch-r LSQ(m,n)^{*k}
    let m = get(params, "m")?;
    let n = get(params, "n")?;
    let k = get(params, "k")?;
    let r = get(params, "r")?;
    let inner = ops::nabla(ctx, &ops::e_nk((n - k) as u32, r as u32)?)?;
    let themed = ops::theta_ek(ctx, k as u32, &inner)?;
    let lhs = ops::delta(ctx, &SymFunc::h(m), &themed)?
        .scale(&(&ops::bracket_q(n) / &ops::bracket_q(r)));
    let objs: Vec<_> = lsq(m as usize, n as usize, k as usize)
        .into_iter()
        .filter(|p| p.touch() == r as usize)
        .collect();
    bounded_outcome(ctx, &lhs, &qtx_enumerator(&objs, n as usize), n as usize)
}

fn chk_operator_delta(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // Theta_k nabla C_alpha = d_-^l M_alpha^{*k}
    let alpha = get_alpha(params)?;
    let k = get(params, "k")?;
    let inner = ops::nabla(ctx, &ops::c_alpha(&alpha))?;
    let lhs = ctx.htilde_to_p(&ops::theta_ek(ctx, k as u32, &inner)?)?;
    let rhs = dpa::m_alpha(&alpha, k)
        .d_minus_pow(alpha.len())
        .as_symfunc();
    sym_outcome(ctx, &lhs, &rhs)
}

fn chk_valley_q1(ctx: &MacdonaldCtx, params: &BTreeMap<String, i64>) -> Result<Outcome> {
    // Theta_r Theta_k nabla e_(n-r-k) at q=1 = valley-decorated t-enumerator
    let n = get(params, "n")?;
    let k = get(params, "k")?;
    let r = get(params, "r")?;
    let inner = ops::nabla(ctx, &SymFunc::e(n - r - k))?;
    let t1 = ops::theta_ek(ctx, k as u32, &inner)?;
    let lhs = ops::theta_ek(ctx, r as u32, &t1)?;
    let objs = ld_valley(n as usize, k as usize, r as usize);
    bounded_q1_outcome(ctx, &lhs, &tx_enumerator(&objs, n as usize), n as usize)
}

fn chk_theta_commutator(
    ctx: &MacdonaldCtx,
    params: &BTreeMap<String, i64>,
    with_d1: bool,
) -> Result<Outcome> {
    // [Theta_k, e_1] = sum_i (-1)^(i+1) D_(i+1) Theta_(k-i)  (and the
    // negated right side for [Theta_k, D_1])
    let k = get(params, "k")?;
    let nmax = get(params, "n")?;
    // positive degrees only: on constants even Theta_1 = (e_1 + D_1)/M
    // breaks down (the Pi-ratio step needs a nonempty partition)
    for d in 1..=nmax {
        for mu in partitions(d as u32) {
            let f = ctx.basis(d as u32)?.htilde_p(&mu).clone();
            let theta_f = ctx.htilde_to_p(&ops::theta_ek(ctx, k as u32, &f)?)?;
            // [Theta_k, X] f = Theta_k(X f) - X Theta_k(f)
            let lhs = if with_d1 {
                let a = ops::theta_ek(ctx, k as u32, &ops::d_k(1, &f))?;
                ctx.htilde_to_p(&a)?.sub(&ops::d_k(1, &theta_f))
            } else {
                let a = ops::theta_ek(ctx, k as u32, &SymFunc::e(1).mul(&f))?;
                ctx.htilde_to_p(&a)?.sub(&SymFunc::e(1).mul(&theta_f))
            };
            let mut rhs = SymFunc::zero(Basis::P);
            for i in 1..=k {
                let inner = ops::theta_ek(ctx, (k - i) as u32, &f)?;
                let term = ops::d_k(i + 1, &ctx.htilde_to_p(&inner)?);
                let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                rhs = rhs.add(&term.scale(&QtRational::from_int(sign)));
            }
            if with_d1 {
                rhs = rhs.neg();
            }
            if lhs.to_p() != rhs {
                return Ok(Outcome::unequal(
                    Some(lhs.to_p().sub(&rhs).convert(Basis::S)?),
                    Some(format!("failed at mu={:?}", mu)),
                ));
            }
        }
    }
    Ok(Outcome::equal())
}

fn chk_positivity(
    ctx: &MacdonaldCtx,
    params: &BTreeMap<String, i64>,
    family: char,
) -> Result<Outcome> {
    // signed Schur expansions of Theta_(s_lambda) nabla (m_mu | s_mu | C_alpha)
    let n = get(params, "n")?;
    let lmax = get_or(params, "lmax", 2);
    let lambdas: Vec<Partition> = partitions_up_to(lmax as u32);
    match family {
        'm' => {
            for mu in partitions(n as u32) {
                let sign = (mu.size() as i64 - mu.len() as i64) % 2;
                for lam in &lambdas {
                    let inner = ops::nabla(ctx, &SymFunc::m(mu.clone()))?;
                    let out = ops::theta(ctx, &SymFunc::s(lam.clone()), &inner)?;
                    let sch = schur(ctx, &out)?;
                    for (_, c) in sch.terms() {
                        let v = if sign == 0 { c.clone() } else { -c };
                        if !ops::is_nonneg_polynomial(&v) {
                            return Ok(Outcome::unequal(
                                None,
                                Some(format!(
                                    "negative coefficient at mu={:?}, lambda={:?}",
                                    mu, lam
                                )),
                            ));
                        }
                    }
                }
            }
        }
        's' => {
            // the sign spin(mu) has no stated formula: probe for a single
            // global sign per mu that works across all lambda and nu
            for mu in partitions(n as u32) {
                let mut coeffs = Vec::new();
                for lam in &lambdas {
                    let inner = ops::nabla(ctx, &SymFunc::s(mu.clone()))?;
                    let out = ops::theta(ctx, &SymFunc::s(lam.clone()), &inner)?;
                    let sch = schur(ctx, &out)?;
                    coeffs.extend(sch.terms().map(|(_, c)| c.clone()));
                }
                let plus = coeffs.iter().all(ops::is_nonneg_polynomial);
                let minus = coeffs
                    .iter()
                    .all(|c| ops::is_nonneg_polynomial(&-c));
                if !(plus || minus) {
                    return Ok(Outcome::unequal(
                        None,
                        Some(format!("no global sign works for mu={:?}", mu)),
                    ));
                }
            }
        }
        'c' => {
            for alpha in compositions(n as u32) {
                for lam in &lambdas {
                    let inner = ops::nabla(ctx, &ops::c_alpha(&alpha))?;
                    let out = ops::theta(ctx, &SymFunc::s(lam.clone()), &inner)?;
                    let sch = schur(ctx, &out)?;
                    for (_, c) in sch.terms() {
                        if !ops::is_nonneg_polynomial(c) {
                            return Ok(Outcome::unequal(
                                None,
                                Some(format!(
                                    "negative coefficient at alpha={:?}, lambda={:?}",
                                    alpha, lam
                                )),
                            ));
                        }
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(Outcome::with_note(
        "sign convention probe, reported not asserted".into(),
    ))
}

// ---------------------------------------------------------------------------
// dispatch and suites
// ---------------------------------------------------------------------------

pub fn is_conjecture(name: &str) -> bool {
    name.starts_with("conj-")
}

/// Run one named check.
pub fn run(ctx: &MacdonaldCtx, name: &str, params: &BTreeMap<String, i64>) -> Result<CheckReport> {
    let start = Instant::now();
    let outcome = match name {
        "thm-theta-nabla" => chk_theta_nabla(ctx, params)?,
        "cor-theta-nabla-sum" => chk_theta_nabla_sum(ctx, params)?,
        "thm-theta-square" => chk_theta_square(ctx, params)?,
        "cor-theta-square-sum" => chk_theta_square_sum(ctx, params)?,
        "lem-schroeder" => chk_schroeder(ctx, params)?,
        "thm-shuffle-comp" => chk_shuffle_comp(ctx, params)?,
        "thm-shuffle-touch" => chk_shuffle_touch(ctx, params)?,
        "thm-dpa-recursion" => chk_dpa_recursion(ctx, params)?,
        "thm-dpa-key" => chk_dpa_key(ctx, params)?,
        "prop-zeta-stats" => chk_zeta(ctx, params)?,
        "lem-psi-gamma" => chk_psi_gamma(ctx, params)?,
        "lem-bounce-diff" => chk_bounce_diff(ctx, params)?,
        "prop-gamma-decomp" => chk_gamma_decomp(ctx, params)?,
        "thm-gen-shuffle" => chk_gen_shuffle(ctx, params)?,
        "thm-gen-square" => chk_gen_square(ctx, params)?,
        "thm-aug-shuffle" => chk_aug_shuffle(ctx, params)?,
        "prop-aug-interlace" => chk_aug_interlace(ctx, params)?,
        "thm-hperp-shuffle" => chk_hperp_shuffle(ctx, params)?,
        "lem-binom-det" => chk_binom_det(ctx, params)?,
        "thm-schedule" => chk_schedule(ctx, params)?,
        "prop-shift-ratio" => chk_shift_ratio(ctx, params)?,
        "cor-pref-park-ratio" => chk_pref_park_ratio(ctx, params)?,
        "lem-two-run" => chk_two_run(ctx, params)?,
        "prop-qsym-factor" => chk_qsym_factor(ctx, params)?,
        "cor-pref-park-qsym" => chk_pref_park_qsym(ctx, params)?,
        "prop-theta1-d1" => chk_theta1_d1(ctx, params)?,
        "id-d0" => chk_d0(ctx, params)?,
        "id-dk-e1" => chk_dk_e1(ctx, params)?,
        "id-star-adjoint" => chk_star_via_omega_phi(ctx, params)?,
        "id-hperp-star-adjoint" => chk_hperp_star_adjoint(ctx, params)?,
        "id-mac-orthogonality" => chk_mac_orthogonality(ctx, params)?,
        "id-mac-cauchy" => chk_mac_cauchy(ctx, params)?,
        "id-mac-reciprocity" => chk_mac_reciprocity(ctx, params)?,
        "id-principal-eval" => chk_principal_eval(ctx, params)?,
        "id-hook-s" => chk_hook_s(ctx, params)?,
        "id-hook-eh" => chk_hook_eh(ctx, params)?,
        "id-en-expansion" => chk_en_expansion(ctx, params)?,
        "id-eh-expansion" => chk_eh_expansion(ctx, params)?,
        "id-p-expansion" => chk_p_expansion(ctx, params)?,
        "id-enj-expansion" => chk_enj_expansion(ctx, params)?,
        "id-pieri-bt-sum" => chk_pieri_bt_sum(ctx, params)?,
        "id-pieri-t-sum" => chk_pieri_t_sum(ctx, params)?,
        "id-pieri-transpose" => chk_pieri_transpose(ctx, params)?,
        "id-pieri-recursion" => chk_pieri_recursion(ctx, params)?,
        "id-mult-eigen-eval" => chk_mult_eigen_eval(ctx, params)?,
        "id-half-principal" => chk_half_principal(ctx, params)?,
        "id-master-expansion" => chk_master_expansion(ctx, params)?,
        "id-enk-family" => chk_enk_family(ctx, params)?,
        "conj-gen-delta" => chk_gen_delta(ctx, params)?,
        "conj-touching-gen-delta" => chk_touching_gen_delta(ctx, params)?,
        "conj-comp-delta" => chk_comp_delta(ctx, params)?,
        "conj-comp-delta-q1" => chk_comp_delta_q1(ctx, params)?,
        "conj-gen-delta-square" => chk_gen_delta_square(ctx, params)?,
        "conj-touching-gen-delta-square" => chk_touching_gen_delta_square(ctx, params)?,
        "conj-operator-delta" => chk_operator_delta(ctx, params)?,
        "conj-valley-q1" => chk_valley_q1(ctx, params)?,
        "conj-theta-e1-comm" => chk_theta_commutator(ctx, params, false)?,
        "conj-theta-d1-comm" => chk_theta_commutator(ctx, params, true)?,
        "conj-positivity-m" => chk_positivity(ctx, params, 'm')?,
        "conj-positivity-s" => chk_positivity(ctx, params, 's')?,
        "conj-positivity-c" => chk_positivity(ctx, params, 'c')?,
        _ => return Err(Error::Domain(format!("unknown check name {name:?}"))),
    };
    let status = match (is_conjecture(name), outcome.equal) {
        (false, true) => CheckStatus::TheoremPass,
        (false, false) => CheckStatus::TheoremFail,
        (true, true) => CheckStatus::ConjConfirmed,
        (true, false) => CheckStatus::ConjRefuted,
    };
    Ok(CheckReport {
        name: name.to_string(),
        params: params.clone(),
        status,
        difference: outcome.difference,
        note: outcome.note,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

pub type NamedCheck = (String, BTreeMap<String, i64>);

fn p(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// The proved results, swept over the given degree budget.
pub fn suite_theorems(n_max: i64) -> Vec<NamedCheck> {
    let mut out: Vec<NamedCheck> = Vec::new();
    for n in 1..=n_max {
        for k in 0..n {
            out.push(("thm-theta-nabla".into(), p(&[("n", n), ("k", k)])));
        }
    }
    let n33 = n_max.min(5);
    for n in 1..=n33 {
        for k in 0..n {
            out.push(("cor-theta-nabla-sum".into(), p(&[("n", n), ("k", k)])));
            out.push(("thm-theta-square".into(), p(&[("n", n), ("k", k)])));
            out.push(("cor-theta-square-sum".into(), p(&[("n", n), ("k", k)])));
        }
    }
    // Schroeder case of the compositional refinement
    for total in 1..=n_max.min(5) {
        for asize in 1..=total {
            let l = total - asize;
            for alpha in compositions(asize as u32) {
                for k in 0..=(total - l) {
                    out.push((
                        "lem-schroeder".into(),
                        p(&[("alpha", encode_alpha(&alpha)), ("l", l), ("k", k)]),
                    ));
                }
            }
        }
    }
    // proved shuffle base cases
    for n in 1..=n_max.min(5) {
        for alpha in compositions(n as u32) {
            out.push((
                "thm-shuffle-comp".into(),
                p(&[("alpha", encode_alpha(&alpha))]),
            ));
        }
        for r in 1..=n {
            out.push(("thm-shuffle-touch".into(), p(&[("n", n), ("r", r)])));
        }
    }
    // Dyck path algebra
    for total in 1..=n_max.min(5) {
        for k in 0..total {
            let asize = total - k;
            if asize < 1 {
                continue;
            }
            for alpha in compositions(asize as u32) {
                out.push((
                    "thm-dpa-recursion".into(),
                    p(&[("alpha", encode_alpha(&alpha)), ("k", k)]),
                ));
                if total <= 4 {
                    out.push((
                        "thm-dpa-key".into(),
                        p(&[("alpha", encode_alpha(&alpha)), ("k", k)]),
                    ));
                }
            }
        }
    }
    // zeta and the combinatorial recursion maps
    for n in 1..=n_max.min(5) {
        for k in 0..=2.min(n - 1) {
            out.push(("prop-zeta-stats".into(), p(&[("n", n), ("k", k)])));
            out.push(("lem-psi-gamma".into(), p(&[("n", n), ("k", k)])));
            out.push(("lem-bounce-diff".into(), p(&[("n", n), ("k", k)])));
        }
    }
    for total in 2..=n_max.min(5) {
        for k in 0..total.min(3) {
            for a in 1..=(total - k) {
                let rest = total - k - a;
                for alpha in compositions(rest as u32) {
                    out.push((
                        "prop-gamma-decomp".into(),
                        p(&[("a", a), ("alpha", encode_alpha(&alpha)), ("k", k)]),
                    ));
                }
            }
        }
    }
    // generalized shuffle / square
    for m in 0..=n_max {
        for n in 1..=(n_max + 1 - m) {
            for r in 1..=n {
                out.push((
                    "thm-gen-shuffle".into(),
                    p(&[("m", m), ("n", n), ("r", r)]),
                ));
            }
        }
    }
    for m in 0..=n_max.min(4) {
        for n in 1..=(n_max.min(4) + 1 - m).max(0) {
            for r in 1..=n {
                out.push(("thm-gen-square".into(), p(&[("m", m), ("n", n), ("r", r)])));
            }
        }
    }
    for m in 0..=n_max {
        for n in 1..=n_max {
            for s in 0..=n_max {
                if m + n + s <= n_max + 1 {
                    out.push((
                        "thm-aug-shuffle".into(),
                        p(&[("m", m), ("n", n), ("s", s)]),
                    ));
                }
            }
        }
    }
    for n in 1..=n_max.min(4) {
        for s in 0..=2 {
            out.push(("prop-aug-interlace".into(), p(&[("n", n), ("s", s)])));
        }
    }
    for n in 1..=n_max {
        for j in 0..=2 {
            for s in 0..=2 {
                out.push((
                    "thm-hperp-shuffle".into(),
                    p(&[("n", n), ("j", j), ("s", s)]),
                ));
            }
        }
    }
    for n in 1..=8 {
        out.push(("lem-binom-det".into(), p(&[("n", n)])));
    }
    // schedule formulas
    for m in 0..=n_max.min(4) {
        for n in 1..=n_max.min(5) {
            if m + n <= n_max.min(5) {
                out.push(("thm-schedule".into(), p(&[("m", m), ("n", n)])));
                out.push(("prop-shift-ratio".into(), p(&[("m", m), ("n", n)])));
                out.push(("cor-pref-park-ratio".into(), p(&[("m", m), ("n", n)])));
                out.push(("prop-qsym-factor".into(), p(&[("m", m), ("n", n)])));
                out.push(("cor-pref-park-qsym".into(), p(&[("m", m), ("n", n)])));
            }
        }
    }
    for a in 1..=6 {
        for b in 1..=(7 - a) {
            out.push(("lem-two-run".into(), p(&[("a", a), ("b", b)])));
        }
    }
    // D_k operator facts
    out.push(("prop-theta1-d1".into(), p(&[("n", n_max.min(5))])));
    out.push(("id-d0".into(), p(&[("n", n_max.min(5))])));
    out.push(("id-dk-e1".into(), p(&[("n", n_max.min(5)), ("k", 2)])));
    out
}

/// The section 11 identity suite.
pub fn suite_identities(n_max: i64) -> Vec<NamedCheck> {
    let n = n_max.min(5);
    vec![
        ("id-star-adjoint".into(), p(&[("n", n.min(4))])),
        ("id-hperp-star-adjoint".into(), p(&[("n", n.min(4))])),
        ("id-mac-orthogonality".into(), p(&[("n", n)])),
        ("id-mac-cauchy".into(), p(&[("n", n)])),
        ("id-mac-reciprocity".into(), p(&[("n", n)])),
        ("id-principal-eval".into(), p(&[("n", n), ("j", 4)])),
        ("id-hook-s".into(), p(&[("n", n)])),
        ("id-hook-eh".into(), p(&[("n", n)])),
        ("id-en-expansion".into(), p(&[("n", n)])),
        ("id-eh-expansion".into(), p(&[("n", n)])),
        ("id-p-expansion".into(), p(&[("n", n)])),
        ("id-enj-expansion".into(), p(&[("n", n), ("j", 3)])),
        ("id-pieri-bt-sum".into(), p(&[("n", n)])),
        ("id-pieri-t-sum".into(), p(&[("n", n)])),
        ("id-pieri-transpose".into(), p(&[("n", n)])),
        ("id-pieri-recursion".into(), p(&[("n", n), ("k", 3)])),
        ("id-mult-eigen-eval".into(), p(&[("n", n)])),
        ("id-half-principal".into(), p(&[("n", n)])),
        ("id-master-expansion".into(), p(&[("m", n), ("k", 3), ("l", 2)])),
        ("id-enk-family".into(), p(&[("n", n)])),
    ]
}

/// The conjecture sweeps (never build-breaking).
pub fn suite_conjectures(n_max: i64) -> Vec<NamedCheck> {
    let mut out: Vec<NamedCheck> = Vec::new();
    let dyck = n_max.min(5);
    let square = n_max.min(4);
    for m in 0..=dyck {
        for n in 1..=(dyck - m) {
            for k in 0..n {
                out.push((
                    "conj-gen-delta".into(),
                    p(&[("m", m), ("n", n), ("k", k)]),
                ));
                for r in 1..=(n - k) {
                    out.push((
                        "conj-touching-gen-delta".into(),
                        p(&[("m", m), ("n", n), ("k", k), ("r", r)]),
                    ));
                }
            }
        }
    }
    for n in 1..=dyck {
        for k in 0..n {
            for alpha in compositions((n - k) as u32) {
                out.push((
                    "conj-comp-delta".into(),
                    p(&[("alpha", encode_alpha(&alpha)), ("k", k)]),
                ));
            }
        }
    }
    for m in 1..=dyck {
        for n in 1..=(dyck - m) {
            for k in 0..n {
                for alpha in compositions((n - k) as u32) {
                    out.push((
                        "conj-comp-delta-q1".into(),
                        p(&[("m", m), ("alpha", encode_alpha(&alpha)), ("k", k)]),
                    ));
                }
            }
        }
    }
    for m in 0..=square {
        for n in 1..=(square - m) {
            for k in 0..n {
                out.push((
                    "conj-gen-delta-square".into(),
                    p(&[("m", m), ("n", n), ("k", k)]),
                ));
                for r in 1..=(n - k) {
                    out.push((
                        "conj-touching-gen-delta-square".into(),
                        p(&[("m", m), ("n", n), ("k", k), ("r", r)]),
                    ));
                }
            }
        }
    }
    for total in 1..=dyck {
        for k in 0..total {
            for alpha in compositions((total - k) as u32) {
                out.push((
                    "conj-operator-delta".into(),
                    p(&[("alpha", encode_alpha(&alpha)), ("k", k)]),
                ));
            }
        }
    }
    for n in 1..=dyck {
        for k in 0..n {
            for r in 0..(n - k) {
                out.push((
                    "conj-valley-q1".into(),
                    p(&[("n", n), ("k", k), ("r", r)]),
                ));
            }
        }
    }
    for k in 0..=3 {
        out.push(("conj-theta-e1-comm".into(), p(&[("k", k), ("n", n_max.min(4))])));
        out.push(("conj-theta-d1-comm".into(), p(&[("k", k), ("n", n_max.min(4))])));
    }
    for n in 1..=n_max.min(4) {
        out.push(("conj-positivity-m".into(), p(&[("n", n), ("lmax", 2)])));
        out.push(("conj-positivity-s".into(), p(&[("n", n), ("lmax", 2)])));
        out.push(("conj-positivity-c".into(), p(&[("n", n), ("lmax", 2)])));
    }
    out
}

/// Run a list of checks, optionally in parallel, preserving order.
pub fn run_suite(
    ctx: &MacdonaldCtx,
    list: &[NamedCheck],
    jobs: usize,
) -> Vec<Result<CheckReport>> {
    if jobs <= 1 {
        list.iter()
            .map(|(name, params)| run(ctx, name, params))
            .collect()
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            list.par_iter()
                .map(|(name, params)| run(ctx, name, params))
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_instance_passes() {
        let ctx = MacdonaldCtx::new();
        let r = run(&ctx, "thm-theta-nabla", &p(&[("n", 4), ("k", 2)])).unwrap();
        assert_eq!(r.status, CheckStatus::TheoremPass);
        assert!(r.difference.is_none());
    }

    #[test]
    fn negative_control_reports_injected_difference() {
        let ctx = MacdonaldCtx::new();
        let r = run(
            &ctx,
            "thm-theta-nabla",
            &p(&[("n", 3), ("k", 1), ("perturb", 1)]),
        )
        .unwrap();
        assert_eq!(r.status, CheckStatus::TheoremFail);
        let diff = r.difference.unwrap();
        assert_eq!(diff.num_terms(), 1);
        assert_eq!(
            diff.coeff(&Partition::single(3)),
            QtRational::one()
        );
    }

    #[test]
    fn unknown_name_is_domain_error() {
        let ctx = MacdonaldCtx::new();
        assert!(run(&ctx, "no-such-check", &BTreeMap::new()).is_err());
    }

    #[test]
    fn conjecture_small_instances() {
        let ctx = MacdonaldCtx::new();
        for (name, params) in [
            ("conj-comp-delta", p(&[("alpha", 21), ("k", 1)])),
            ("conj-operator-delta", p(&[("alpha", 11), ("k", 1)])),
            ("conj-gen-delta", p(&[("m", 1), ("n", 2), ("k", 1)])),
            ("conj-valley-q1", p(&[("n", 3), ("k", 1), ("r", 1)])),
        ] {
            let r = run(&ctx, name, &params).unwrap();
            assert_eq!(r.status, CheckStatus::ConjConfirmed, "failed: {name}");
        }
    }

    #[test]
    fn alpha_codec() {
        let alpha = Composition::new(vec![1, 2, 1]).unwrap();
        assert_eq!(decode_alpha(encode_alpha(&alpha)).unwrap(), alpha);
        assert_eq!(decode_alpha(0).unwrap(), Composition::empty());
    }
}
