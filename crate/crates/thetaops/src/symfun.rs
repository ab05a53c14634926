//! Symmetric functions over Q(q,t).
//!
//! A [`SymFunc`] is a finite linear combination of basis elements indexed by
//! partitions, tagged with the basis it is written in: monomial m, elementary
//! e, complete homogeneous h, power sum p, Schur s, or the modified Macdonald
//! basis (handled in the `macdonald` module, since it needs a constructed
//! transition matrix).
//!
//! The power sum basis is the internal pivot: products are multiset unions of
//! indices there, plethysm by a linear alphabet substitutes p_k -> a_k p_k +
//! b_k termwise, the Hall pairing is diagonal with <p_l, p_l> = z_l, and the
//! star pairing is diagonal with the extra weight
//! (-1)^(|l|-len(l)) prod_i (1-q^(l_i))(1-t^(l_i)).
//!
//! Basis-change data is rational (no q,t): the character table gives s <-> p,
//! Newton's identities give e and h, and the m expansion comes from inverting
//! the pairing matrix of h against p. All tables are computed lazily per
//! degree and cached behind a lock; readers only ever see finished tables.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::combinat::{partitions, Partition};
use crate::error::{Error, Result};
use crate::qt::{IntPoly2, QtRational};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Basis {
    M,
    E,
    H,
    P,
    S,
    Htilde,
}

impl Basis {
    pub fn tag(&self) -> &'static str {
        match self {
            Basis::M => "m",
            Basis::E => "e",
            Basis::H => "h",
            Basis::P => "p",
            Basis::S => "s",
            Basis::Htilde => "H",
        }
    }

    pub fn from_tag(s: &str) -> Result<Basis> {
        Ok(match s {
            "m" => Basis::M,
            "e" => Basis::E,
            "h" => Basis::H,
            "p" => Basis::P,
            "s" => Basis::S,
            "H" => Basis::Htilde,
            _ => return Err(Error::Domain(format!("unknown basis tag {s:?}"))),
        })
    }
}

/// A symmetric function, possibly inhomogeneous, in a tagged basis.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    terms: BTreeMap<Partition, QtRational>,
}

impl SymFunc {
    pub fn zero(basis: Basis) -> SymFunc {
        SymFunc {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(c: QtRational) -> SymFunc {
        let mut f = SymFunc::zero(Basis::P);
        f.add_term(Partition::empty(), c);
        f
    }

    pub fn one() -> SymFunc {
        SymFunc::scalar(QtRational::one())
    }

    pub fn from_terms(basis: Basis, terms: BTreeMap<Partition, QtRational>) -> SymFunc {
        let mut f = SymFunc::zero(basis);
        for (l, c) in terms {
            f.add_term(l, c);
        }
        f
    }

    pub fn basis_elem(basis: Basis, l: Partition) -> SymFunc {
        let mut f = SymFunc::zero(basis);
        f.add_term(l, QtRational::one());
        f
    }

    /// e_n; zero for n < 0 (the usual convention), 1 for n = 0.
    pub fn e(n: i64) -> SymFunc {
        if n < 0 {
            return SymFunc::zero(Basis::E);
        }
        SymFunc::basis_elem(Basis::E, Partition::single(n as u32))
    }

    pub fn h(n: i64) -> SymFunc {
        if n < 0 {
            return SymFunc::zero(Basis::H);
        }
        SymFunc::basis_elem(Basis::H, Partition::single(n as u32))
    }

    pub fn p(n: u32) -> SymFunc {
        SymFunc::basis_elem(Basis::P, Partition::single(n))
    }

    pub fn s(l: Partition) -> SymFunc {
        SymFunc::basis_elem(Basis::S, l)
    }

    pub fn m(l: Partition) -> SymFunc {
        SymFunc::basis_elem(Basis::M, l)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &QtRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, l: &Partition) -> QtRational {
        self.terms.get(l).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, l: Partition, c: QtRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(l) {
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

    /// Maximum degree of a term, None for the zero function.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|l| l.size()).max()
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().map(|l| l.size()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn homogeneous_component(&self, d: u32) -> SymFunc {
        let terms = self
            .terms
            .iter()
            .filter(|(l, _)| l.size() == d)
            .map(|(l, c)| (l.clone(), c.clone()))
            .collect();
        SymFunc {
            basis: self.basis,
            terms,
        }
    }

    pub fn scale(&self, c: &QtRational) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero(self.basis);
        }
        let terms = self
            .terms
            .iter()
            .map(|(l, x)| (l.clone(), x * c))
            .collect();
        SymFunc {
            basis: self.basis,
            terms,
        }
    }

    pub fn neg(&self) -> SymFunc {
        self.scale(&QtRational::from_int(-1))
    }

    pub fn add(&self, other: &SymFunc) -> SymFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.basis == other.basis {
            let mut out = self.clone();
            for (l, c) in &other.terms {
                out.add_term(l.clone(), c.clone());
            }
            out
        } else {
            let a = self.to_p();
            let b = other.to_p();
            a.add(&b)
        }
    }

    pub fn sub(&self, other: &SymFunc) -> SymFunc {
        self.add(&other.neg())
    }

    /// Rewrite in the power sum basis. The Macdonald tag is handled in the
    /// `macdonald` module; reaching this path with it is a programming error.
    pub fn to_p(&self) -> SymFunc {
        match self.basis {
            Basis::P => self.clone(),
            Basis::Htilde => panic!("Htilde basis requires a MacdonaldCtx for conversion"),
            _ => {
                let mut out = SymFunc::zero(Basis::P);
                for (l, c) in &self.terms {
                    match self.basis {
                        Basis::E => add_product_expansion(&mut out, l, c, e_in_p_single),
                        Basis::H => add_product_expansion(&mut out, l, c, h_in_p_single),
                        Basis::S => {
                            let t = degree_tables(l.size());
                            let li = t.index[l];
                            for (ri, rho) in t.parts.iter().enumerate() {
                                if t.chars[li][ri].is_zero() {
                                    continue;
                                }
                                let x = BigRational::new(
                                    t.chars[li][ri].clone(),
                                    t.zs[ri].clone(),
                                );
                                out.add_term(rho.clone(), scale_br(c, &x));
                            }
                        }
                        Basis::M => {
                            let t = degree_tables(l.size());
                            let li = t.index[l];
                            for (ri, rho) in t.parts.iter().enumerate() {
                                let x = &t.m_in_p[li][ri];
                                if !x.is_zero() {
                                    out.add_term(rho.clone(), scale_br(c, x));
                                }
                            }
                        }
                        _ => unreachable!(),
                    }
                }
                out
            }
        }
    }

    /// Convert between the classical bases. Round trips are exact.
    pub fn convert(&self, target: Basis) -> Result<SymFunc> {
        if self.basis == target {
            return Ok(self.clone());
        }
        if self.basis == Basis::Htilde || target == Basis::Htilde {
            return Err(Error::State(
                "Macdonald basis conversion needs a constructed basis; use the macdonald module"
                    .into(),
            ));
        }
        let p = self.to_p();
        if target == Basis::P {
            return Ok(p);
        }
        let mut out = SymFunc::zero(target);
        for d in p.degrees() {
            let comp = p.homogeneous_component(d);
            let t = degree_tables(d);
            match target {
                Basis::S => {
                    // <f, s_l> = sum_rho f_rho chi_l(rho)
                    for (li, l) in t.parts.iter().enumerate() {
                        let mut acc = QtRational::zero();
                        for (rho, c) in comp.terms() {
                            let ri = t.index[rho];
                            let x = &t.chars[li][ri];
                            if !x.is_zero() {
                                acc += &scale_int(c, x);
                            }
                        }
                        out.add_term(l.clone(), acc);
                    }
                }
                Basis::M => {
                    // coefficient of m_l is <f, h_l>
                    for (li, l) in t.parts.iter().enumerate() {
                        let mut acc = QtRational::zero();
                        for (rho, c) in comp.terms() {
                            let ri = t.index[rho];
                            let x = &t.h_in_p[li][ri];
                            if !x.is_zero() {
                                let w = BigRational::from(t.zs[ri].clone()) * x;
                                acc += &scale_br(c, &w);
                            }
                        }
                        out.add_term(l.clone(), acc);
                    }
                }
                Basis::H => {
                    // coefficient of h_l is <f, m_l>
                    for (li, l) in t.parts.iter().enumerate() {
                        let mut acc = QtRational::zero();
                        for (rho, c) in comp.terms() {
                            let ri = t.index[rho];
                            let x = &t.m_in_p[li][ri];
                            if !x.is_zero() {
                                let w = BigRational::from(t.zs[ri].clone()) * x;
                                acc += &scale_br(c, &w);
                            }
                        }
                        out.add_term(l.clone(), acc);
                    }
                }
                Basis::E => {
                    // e-coordinates of f are h-coordinates of omega(f)
                    let om = comp.omega();
                    let h = om.convert(Basis::H)?;
                    for (l, c) in h.terms {
                        out.add_term(l, c);
                    }
                }
                _ => unreachable!(),
            }
        }
        Ok(out)
    }

    /// Product, computed in the power sum basis.
    pub fn mul(&self, other: &SymFunc) -> SymFunc {
        let a = self.to_p();
        let b = other.to_p();
        let mut out = SymFunc::zero(Basis::P);
        for (la, ca) in &a.terms {
            for (lb, cb) in &b.terms {
                out.add_term(la.multiset_union(lb), ca * cb);
            }
        }
        out
    }

    /// The involution omega: p_k -> (-1)^(k-1) p_k, hence e_n <-> h_n.
    pub fn omega(&self) -> SymFunc {
        match self.basis {
            Basis::E => SymFunc {
                basis: Basis::H,
                terms: self.terms.clone(),
            },
            Basis::H => SymFunc {
                basis: Basis::E,
                terms: self.terms.clone(),
            },
            Basis::S => {
                let terms = self
                    .terms
                    .iter()
                    .map(|(l, c)| (l.conjugate(), c.clone()))
                    .collect();
                SymFunc {
                    basis: Basis::S,
                    terms,
                }
            }
            _ => {
                let p = self.to_p();
                let terms = p
                    .terms
                    .iter()
                    .map(|(l, c)| {
                        let sgn = (l.size() as i64 - l.len() as i64) % 2 != 0;
                        let c = if sgn { -c } else { c.clone() };
                        (l.clone(), c)
                    })
                    .collect();
                SymFunc {
                    basis: Basis::P,
                    terms,
                }
            }
        }
    }
}

pub fn scale_br(c: &QtRational, r: &BigRational) -> QtRational {
    if r.is_zero() {
        return QtRational::zero();
    }
    let factor = QtRational::normalize(
        IntPoly2::constant(r.numer().clone()),
        IntPoly2::constant(r.denom().clone()),
    )
    .unwrap();
    c * &factor
}

pub fn scale_int(c: &QtRational, n: &BigInt) -> QtRational {
    if n.is_zero() {
        return QtRational::zero();
    }
    c * &QtRational::from_poly(IntPoly2::constant(n.clone()))
}

/// Expand a product basis element (e_l or h_l) into p, given the expansion of
/// the one-row pieces.
fn add_product_expansion(
    out: &mut SymFunc,
    l: &Partition,
    c: &QtRational,
    single: impl Fn(u32) -> Arc<Vec<(Partition, BigRational)>>,
) {
    let mut acc: Vec<(Partition, BigRational)> = vec![(Partition::empty(), BigRational::one())];
    for &part in l.parts() {
        let piece = single(part);
        let mut map: BTreeMap<Partition, BigRational> = BTreeMap::new();
        for (lp, cp) in &acc {
            for (ls, cs) in piece.iter() {
                let key = lp.multiset_union(ls);
                *map.entry(key).or_insert_with(BigRational::zero) += cp * cs;
            }
        }
        acc = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }
    for (lp, cp) in acc {
        out.add_term(lp, scale_br(c, &cp));
    }
}

// ---------------------------------------------------------------------------
// Basis-change tables, per degree, rational entries.
// ---------------------------------------------------------------------------

pub struct DegreeTables {
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    /// chars[li][ri] = chi_l(rho), the symmetric group character.
    pub chars: Vec<Vec<BigInt>>,
    pub zs: Vec<BigInt>,
    pub e_in_p: Vec<Vec<BigRational>>,
    pub h_in_p: Vec<Vec<BigRational>>,
    pub m_in_p: Vec<Vec<BigRational>>,
}

static TABLES: OnceLock<Mutex<HashMap<u32, Arc<DegreeTables>>>> = OnceLock::new();

pub fn degree_tables(n: u32) -> Arc<DegreeTables> {
    let lock = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let map = lock.lock().unwrap();
        if let Some(t) = map.get(&n) {
            return Arc::clone(t);
        }
    }
    let built = Arc::new(build_tables(n));
    let mut map = lock.lock().unwrap();
    Arc::clone(map.entry(n).or_insert(built))
}

fn build_tables(n: u32) -> DegreeTables {
    let parts = partitions(n);
    let index: HashMap<Partition, usize> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let zs: Vec<BigInt> = parts.iter().map(|p| p.z()).collect();
    let chars: Vec<Vec<BigInt>> = parts
        .iter()
        .map(|l| parts.iter().map(|r| character(l, r.parts())).collect())
        .collect();

    let to_vec = |f: &BTreeMap<Partition, BigRational>| -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); parts.len()];
        for (rho, c) in f {
            v[index[rho]] = c.clone();
        }
        v
    };

    let product_expansion = |l: &Partition,
                             single: &dyn Fn(u32) -> Arc<Vec<(Partition, BigRational)>>|
     -> BTreeMap<Partition, BigRational> {
        let mut acc: BTreeMap<Partition, BigRational> = BTreeMap::new();
        acc.insert(Partition::empty(), BigRational::one());
        for &part in l.parts() {
            let piece = single(part);
            let mut map: BTreeMap<Partition, BigRational> = BTreeMap::new();
            for (lp, cp) in &acc {
                for (ls, cs) in piece.iter() {
                    let key = lp.multiset_union(ls);
                    *map.entry(key).or_insert_with(BigRational::zero) += cp * cs;
                }
            }
            map.retain(|_, c| !c.is_zero());
            acc = map;
        }
        acc
    };

    let e_in_p: Vec<Vec<BigRational>> = parts
        .iter()
        .map(|l| to_vec(&product_expansion(l, &e_in_p_single)))
        .collect();
    let h_in_p: Vec<Vec<BigRational>> = parts
        .iter()
        .map(|l| to_vec(&product_expansion(l, &h_in_p_single)))
        .collect();

    // m_l in p: columns of the inverse of G[mu][rho] = (h_mu)_rho * z_rho.
    let k = parts.len();
    let mut g: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); k]; k];
    for mu in 0..k {
        for rho in 0..k {
            g[mu][rho] = &h_in_p[mu][rho] * BigRational::from(zs[rho].clone());
        }
    }
    let ginv = invert_rational_matrix(&g);
    let mut m_in_p = vec![vec![BigRational::zero(); k]; k];
    for (li, row) in m_in_p.iter_mut().enumerate() {
        for (ri, slot) in row.iter_mut().enumerate() {
            *slot = ginv[ri][li].clone();
        }
    }

    DegreeTables {
        parts,
        index,
        chars,
        zs,
        e_in_p,
        h_in_p,
        m_in_p,
    }
}

fn invert_rational_matrix(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("singular basis-change matrix");
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let pv = m[col][col].clone();
        for j in 0..n {
            m[col][j] = &m[col][j] / &pv;
            inv[col][j] = &inv[col][j] / &pv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..n {
                    let x = &m[col][j] * &f;
                    m[r][j] = &m[r][j] - &x;
                    let y = &inv[col][j] * &f;
                    inv[r][j] = &inv[r][j] - &y;
                }
            }
        }
    }
    inv
}

// Single e_n and h_n power sum expansions, cached.
static E_SINGLE: OnceLock<Mutex<HashMap<u32, Arc<Vec<(Partition, BigRational)>>>>> =
    OnceLock::new();
static H_SINGLE: OnceLock<Mutex<HashMap<u32, Arc<Vec<(Partition, BigRational)>>>>> =
    OnceLock::new();

fn newton_expansion(n: u32, signed: bool) -> Vec<(Partition, BigRational)> {
    // n b_n = sum_{i=1}^n s_i p_i b_{n-i}, with s_i = (-1)^(i-1) for e, 1 for h.
    let mut layers: Vec<BTreeMap<Partition, BigRational>> = Vec::with_capacity(n as usize + 1);
    let mut base = BTreeMap::new();
    base.insert(Partition::empty(), BigRational::one());
    layers.push(base);
    for m in 1..=n {
        let mut cur: BTreeMap<Partition, BigRational> = BTreeMap::new();
        for i in 1..=m {
            let sign = if signed && i % 2 == 0 { -1 } else { 1 };
            let f = BigRational::new(BigInt::from(sign), BigInt::from(m));
            for (l, c) in &layers[(m - i) as usize] {
                let nl = l.push_part(i);
                *cur.entry(nl).or_insert_with(BigRational::zero) += c * &f;
            }
        }
        cur.retain(|_, c| !c.is_zero());
        layers.push(cur);
    }
    layers.pop().unwrap().into_iter().collect()
}

fn e_in_p_single(n: u32) -> Arc<Vec<(Partition, BigRational)>> {
    let lock = E_SINGLE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = lock.lock().unwrap();
    Arc::clone(
        map.entry(n)
            .or_insert_with(|| Arc::new(newton_expansion(n, true))),
    )
}

fn h_in_p_single(n: u32) -> Arc<Vec<(Partition, BigRational)>> {
    let lock = H_SINGLE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = lock.lock().unwrap();
    Arc::clone(
        map.entry(n)
            .or_insert_with(|| Arc::new(newton_expansion(n, false))),
    )
}

/// Murnaghan-Nakayama via beta numbers: chi_l evaluated on cycle type rho.
fn character(l: &Partition, rho: &[u32]) -> BigInt {
    if rho.is_empty() {
        return if l.is_empty() {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    if l.size() != rho.iter().sum::<u32>() {
        return BigInt::zero();
    }
    let r = rho[0] as i64;
    let rest = &rho[1..];
    let parts = l.parts();
    let len = parts.len() as i64;
    let beta: Vec<i64> = parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (len - 1 - i as i64))
        .collect();
    let mut total = BigInt::zero();
    for (pos, &b) in beta.iter().enumerate() {
        let target = b - r;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut nb = beta.clone();
        nb[pos] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let nl: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(i, &x)| (x - (len - 1 - i as i64)) as u32)
            .collect();
        let nl = Partition::from_unsorted(nl);
        let sub = character(&nl, rest);
        if height % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Scalar products, skewing, plethysm.
// ---------------------------------------------------------------------------

/// Hall scalar product: <p_l, p_l> = z_l, Schur functions orthonormal.
pub fn hall_inner(f: &SymFunc, g: &SymFunc) -> QtRational {
    let fp = f.to_p();
    let gp = g.to_p();
    let mut acc = QtRational::zero();
    for (l, cf) in fp.terms() {
        if let Some(cg) = gp.terms.get(l) {
            acc += &scale_int(&(cf * cg), &l.z());
        }
    }
    acc
}

/// Star scalar product, diagonal in p with weight
/// (-1)^(|l|-len(l)) z_l prod_i (1-q^(l_i))(1-t^(l_i)).
pub fn star_inner(f: &SymFunc, g: &SymFunc) -> QtRational {
    let fp = f.to_p();
    let gp = g.to_p();
    let mut acc = QtRational::zero();
    for (l, cf) in fp.terms() {
        if let Some(cg) = gp.terms.get(l) {
            acc += &(&(cf * cg) * &star_weight(l));
        }
    }
    acc
}

pub fn star_weight(l: &Partition) -> QtRational {
    let mut w = QtRational::from_poly(IntPoly2::constant(l.z()));
    if (l.size() as i64 - l.len() as i64) % 2 != 0 {
        w = -&w;
    }
    let one = QtRational::one();
    for &part in l.parts() {
        let qk = QtRational::qt_monomial(part as i64, 0);
        let tk = QtRational::qt_monomial(0, part as i64);
        w = &w * &(&one - &qk);
        w = &w * &(&one - &tk);
    }
    w
}

/// phi f = f[MX]: p_k -> (1-q^k)(1-t^k) p_k.
pub fn phi(f: &SymFunc) -> SymFunc {
    plethysm(f, &Alphabet::XTimesM)
}

/// f* = f[X/M]: p_k -> p_k / ((1-q^k)(1-t^k)).
pub fn star_pleth(f: &SymFunc) -> SymFunc {
    plethysm(f, &Alphabet::XOverM)
}

pub fn mb_scalar(k: u32) -> QtRational {
    let one = QtRational::one();
    let qk = QtRational::qt_monomial(k as i64, 0);
    let tk = QtRational::qt_monomial(0, k as i64);
    &(&one - &qk) * &(&one - &tk)
}

/// f^perp: the Hall adjoint of multiplication by f. In the power sum basis
/// p_k^perp acts as k d/dp_k.
pub fn skew_perp(h: &SymFunc, f: &SymFunc) -> SymFunc {
    let hp = h.to_p();
    let fp = f.to_p();
    let mut out = SymFunc::zero(Basis::P);
    for (lh, ch) in hp.terms() {
        for (lf, cf) in fp.terms() {
            // apply prod p_k^perp over parts of lh to the term (lf, cf)
            let mut cur = lf.clone();
            let mut coeff = ch * cf;
            let mut ok = true;
            for &k in lh.parts() {
                let mult = cur.multiplicity(k);
                if mult == 0 {
                    ok = false;
                    break;
                }
                coeff = scale_int(&coeff, &BigInt::from(k as u64 * mult as u64));
                cur = cur.remove_part(k).unwrap();
            }
            if ok {
                out.add_term(cur, coeff);
            }
        }
    }
    out
}

/// Per-degree substitution data for a linear plethysm p_k -> a_k p_k + b_k.
#[derive(Clone)]
pub struct DegreeScalars {
    mult: Vec<QtRational>,
    add: Vec<QtRational>,
}

impl DegreeScalars {
    pub fn new(bound: u32, f: impl Fn(u32) -> (QtRational, QtRational)) -> DegreeScalars {
        let mut mult = Vec::with_capacity(bound as usize);
        let mut add = Vec::with_capacity(bound as usize);
        for k in 1..=bound {
            let (a, b) = f(k);
            mult.push(a);
            add.push(b);
        }
        DegreeScalars { mult, add }
    }

    pub fn bound(&self) -> u32 {
        self.mult.len() as u32
    }

    pub fn mult(&self, k: u32) -> &QtRational {
        &self.mult[(k - 1) as usize]
    }

    pub fn additive(&self, k: u32) -> &QtRational {
        &self.add[(k - 1) as usize]
    }

    /// Scalars for X plus a constant alphabet: p_k -> p_k + c_k.
    pub fn x_plus_const(bound: u32, c: impl Fn(u32) -> QtRational) -> DegreeScalars {
        DegreeScalars::new(bound, |k| (QtRational::one(), c(k)))
    }

    /// Purely constant alphabet: p_k -> c_k (evaluation).
    pub fn constant(bound: u32, c: impl Fn(u32) -> QtRational) -> DegreeScalars {
        DegreeScalars::new(bound, |k| (QtRational::zero(), c(k)))
    }
}

/// Plethysm by a linear alphabet: in p coordinates replace each p_k by
/// a_k p_k + b_k and expand.
pub fn plethysm_linear(f: &SymFunc, scalars: &DegreeScalars) -> SymFunc {
    let fp = f.to_p();
    let mut out = SymFunc::zero(Basis::P);
    for (l, c) in fp.terms() {
        expand_pleth_term(&mut out, l.parts(), c, scalars);
    }
    out
}

fn expand_pleth_term(out: &mut SymFunc, parts: &[u32], c: &QtRational, sc: &DegreeScalars) {
    fn rec(
        out: &mut SymFunc,
        parts: &[u32],
        idx: usize,
        kept: &mut Vec<u32>,
        coeff: QtRational,
        sc: &DegreeScalars,
    ) {
        if coeff.is_zero() {
            return;
        }
        if idx == parts.len() {
            out.add_term(Partition::from_unsorted(kept.clone()), coeff);
            return;
        }
        let k = parts[idx];
        let a = sc.mult(k);
        if !a.is_zero() {
            kept.push(k);
            let c2 = &coeff * a;
            rec(out, parts, idx + 1, kept, c2, sc);
            kept.pop();
        }
        let b = sc.additive(k);
        if !b.is_zero() {
            let c2 = &coeff * b;
            rec(out, parts, idx + 1, kept, c2, sc);
        }
    }
    let mut kept = Vec::new();
    rec(out, parts, 0, &mut kept, c.clone(), sc);
}

/// Evaluate f on a purely constant alphabet (the result is a scalar).
pub fn eval_constant_alphabet(f: &SymFunc, c: impl Fn(u32) -> QtRational) -> QtRational {
    let bound = f.degree().unwrap_or(0);
    let g = plethysm_linear(f, &DegreeScalars::constant(bound, c));
    g.coeff(&Partition::empty())
}

/// Named alphabets used throughout; the q,t-statistics live in `macdonald`.
#[derive(Clone, Debug)]
pub enum Alphabet {
    /// X/M: p_k -> p_k / ((1-q^k)(1-t^k))
    XOverM,
    /// X(1-q): p_k -> (1-q^k) p_k
    XOneMinusQ,
    /// X(1-t)
    XOneMinusT,
    /// X/(1-q): p_k -> p_k/(1-q^k)
    XOverOneMinusQ,
    /// X [j]_q: p_k -> [j]_(q^k) p_k
    XBracket(u32),
    /// -X: p_k -> -p_k
    MinusX,
    /// eps X: p_k -> (-1)^k p_k
    EpsX,
    /// XM: p_k -> (1-q^k)(1-t^k) p_k
    XTimesM,
    /// constant alphabet B_mu: p_k -> B_mu(q^k, t^k)
    ConstB(Partition),
    /// constant alphabet MB_mu
    ConstMB(Partition),
    /// constant alphabet (1-t)B_mu
    ConstOneMinusTB(Partition),
    /// constant alphabet B_mu - 1
    ConstBMinusOne(Partition),
    /// constant alphabet (1-t)(1-q^j)
    ConstOneMinusTOneMinusQj(u32),
    /// constant alphabet [j]_q = (1-q^j)/(1-q)
    ConstBracketQ(u32),
    /// constant alphabet c (c copies of the variable 1)
    ConstInt(i64),
}

/// B_mu evaluated at (q^k, t^k): sum over cells of q^(k a') t^(k l').
pub fn b_mu_pow(mu: &Partition, k: u32) -> QtRational {
    let mut acc = QtRational::zero();
    for cell in mu.cells() {
        let a = mu.coarm(cell) as i64;
        let l = mu.coleg(cell) as i64;
        acc += &QtRational::qt_monomial(k as i64 * a, k as i64 * l);
    }
    acc
}

pub fn alphabet_scalars(alpha: &Alphabet, bound: u32) -> DegreeScalars {
    let one = QtRational::one;
    match alpha {
        Alphabet::XOverM => DegreeScalars::new(bound, |k| {
            (mb_scalar(k).inv().unwrap(), QtRational::zero())
        }),
        Alphabet::XOneMinusQ => DegreeScalars::new(bound, |k| {
            let f = &one() - &QtRational::qt_monomial(k as i64, 0);
            (f, QtRational::zero())
        }),
        Alphabet::XOneMinusT => DegreeScalars::new(bound, |k| {
            let f = &one() - &QtRational::qt_monomial(0, k as i64);
            (f, QtRational::zero())
        }),
        Alphabet::XOverOneMinusQ => DegreeScalars::new(bound, |k| {
            let f = &one() - &QtRational::qt_monomial(k as i64, 0);
            (f.inv().unwrap(), QtRational::zero())
        }),
        Alphabet::XBracket(j) => DegreeScalars::new(bound, |k| {
            let qk = QtRational::qt_monomial(k as i64, 0);
            (
                crate::qt::q_bracket(*j as i64, &qk).unwrap(),
                QtRational::zero(),
            )
        }),
        Alphabet::MinusX => {
            DegreeScalars::new(bound, |_| (QtRational::from_int(-1), QtRational::zero()))
        }
        Alphabet::EpsX => DegreeScalars::new(bound, |k| {
            let s = if k % 2 == 0 { 1 } else { -1 };
            (QtRational::from_int(s), QtRational::zero())
        }),
        Alphabet::XTimesM => DegreeScalars::new(bound, |k| (mb_scalar(k), QtRational::zero())),
        Alphabet::ConstB(mu) => DegreeScalars::constant(bound, |k| b_mu_pow(mu, k)),
        Alphabet::ConstMB(mu) => {
            DegreeScalars::constant(bound, |k| &mb_scalar(k) * &b_mu_pow(mu, k))
        }
        Alphabet::ConstOneMinusTB(mu) => DegreeScalars::constant(bound, |k| {
            let f = &one() - &QtRational::qt_monomial(0, k as i64);
            &f * &b_mu_pow(mu, k)
        }),
        Alphabet::ConstBMinusOne(mu) => {
            DegreeScalars::constant(bound, |k| &b_mu_pow(mu, k) - &one())
        }
        Alphabet::ConstOneMinusTOneMinusQj(j) => DegreeScalars::constant(bound, |k| {
            let ft = &one() - &QtRational::qt_monomial(0, k as i64);
            let fq = &one() - &QtRational::qt_monomial((*j as i64) * k as i64, 0);
            &ft * &fq
        }),
        Alphabet::ConstBracketQ(j) => DegreeScalars::constant(bound, |k| {
            let qk = QtRational::qt_monomial(k as i64, 0);
            crate::qt::q_bracket(*j as i64, &qk).unwrap()
        }),
        Alphabet::ConstInt(c) => DegreeScalars::constant(bound, |_| QtRational::from_int(*c)),
    }
}

/// Plethysm of f by a named alphabet.
pub fn plethysm(f: &SymFunc, alpha: &Alphabet) -> SymFunc {
    let bound = f.degree().unwrap_or(0);
    plethysm_linear(f, &alphabet_scalars(alpha, bound))
}

// ---------------------------------------------------------------------------
// Serialization: {"basis":"s","terms":[{"partition":[3,1],"coef":{...}}]}
// terms in the canonical partition order (by degree, reverse-lex inside).
// ---------------------------------------------------------------------------

impl Serialize for SymFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            partition: &'a [u32],
            coef: &'a QtRational,
        }
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("basis", self.basis.tag())?;
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(l, c)| Term {
                partition: l.parts(),
                coef: c,
            })
            .collect();
        map.serialize_entry("terms", &terms)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Term {
            partition: Vec<u32>,
            coef: QtRational,
        }
        #[derive(Deserialize)]
        struct Raw {
            basis: String,
            terms: Vec<Term>,
        }
        let raw = Raw::deserialize(d)?;
        let basis = Basis::from_tag(&raw.basis).map_err(D::Error::custom)?;
        let mut f = SymFunc::zero(basis);
        for t in raw.terms {
            let l = Partition::new(t.partition).map_err(D::Error::custom)?;
            f.add_term(l, t.coef);
        }
        Ok(f)
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*{}{:?}", c, self.basis.tag(), l)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::partitions_up_to;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn e2_in_p() {
        // e2 = (p1^2 - p2)/2
        let e2 = SymFunc::e(2).to_p();
        let half = QtRational::normalize(IntPoly2::one(), IntPoly2::from_i64(2)).unwrap();
        assert_eq!(e2.coeff(&part(&[1, 1])), half);
        assert_eq!(e2.coeff(&part(&[2])), -&half);
    }

    #[test]
    fn s11_is_e2() {
        let s = SymFunc::s(part(&[1, 1])).convert(Basis::E).unwrap();
        assert_eq!(s.coeff(&part(&[2])), QtRational::one());
        assert_eq!(s.num_terms(), 1);
    }

    #[test]
    fn h2_in_m() {
        let h = SymFunc::h(2).convert(Basis::M).unwrap();
        assert_eq!(h.coeff(&part(&[2])), QtRational::one());
        assert_eq!(h.coeff(&part(&[1, 1])), QtRational::one());
        assert_eq!(h.num_terms(), 2);
    }

    #[test]
    fn round_trips_all_bases() {
        let bases = [Basis::M, Basis::E, Basis::H, Basis::P, Basis::S];
        for l in partitions_up_to(6) {
            for &b1 in &bases {
                let f = SymFunc::basis_elem(b1, l.clone());
                for &b2 in &bases {
                    let back = f.convert(b2).unwrap().convert(b1).unwrap();
                    assert_eq!(back, f, "round trip {:?}->{:?} failed at {:?}", b1, b2, l);
                }
            }
        }
    }

    #[test]
    fn omega_involution_and_images() {
        for n in 0..=6i64 {
            let e = SymFunc::e(n);
            assert_eq!(
                e.omega().convert(Basis::H).unwrap(),
                SymFunc::h(n).convert(Basis::H).unwrap()
            );
        }
        for l in partitions_up_to(5) {
            let s = SymFunc::s(l.clone());
            assert_eq!(
                s.omega().omega().convert(Basis::S).unwrap().coeff(&l),
                QtRational::one()
            );
        }
        // omega p_k = (-1)^(k-1) p_k
        let p3 = SymFunc::p(3).omega();
        assert_eq!(p3.coeff(&part(&[3])), QtRational::one());
        let p2 = SymFunc::p(2).omega();
        assert_eq!(p2.coeff(&part(&[2])), QtRational::from_int(-1));
    }

    #[test]
    fn schur_orthonormal() {
        for la in partitions_up_to(5) {
            for mu in partitions_up_to(5) {
                let v = hall_inner(&SymFunc::s(la.clone()), &SymFunc::s(mu.clone()));
                if la == mu {
                    assert_eq!(v, QtRational::one());
                } else {
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn p2_norm_and_degree_mismatch() {
        let v = hall_inner(&SymFunc::p(2), &SymFunc::p(2));
        assert_eq!(v, QtRational::from_int(2));
        let w = hall_inner(&SymFunc::h(3), &SymFunc::h(2));
        assert!(w.is_zero());
    }

    #[test]
    fn star_product_basics() {
        // <p1, p1>_* = M
        let v = star_inner(&SymFunc::p(1), &SymFunc::p(1));
        assert_eq!(v, QtRational::big_m());
        // <f,g>_* = <omega phi f, g> on assorted pairs
        for la in partitions_up_to(4) {
            for mu in partitions_up_to(4) {
                let f = SymFunc::s(la.clone());
                let g = SymFunc::s(mu.clone());
                let lhs = star_inner(&f, &g);
                let rhs = hall_inner(&phi(&f).omega(), &g);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn skew_adjunction() {
        // h1^perp e2 = e1
        let skew = skew_perp(&SymFunc::h(1), &SymFunc::e(2));
        assert_eq!(skew, SymFunc::e(1).to_p());
        // <h^perp f, g> = <f, h g>
        for la in partitions_up_to(4) {
            for mu in partitions_up_to(3) {
                for nu in partitions_up_to(2) {
                    let f = SymFunc::s(la.clone());
                    let g = SymFunc::s(mu.clone());
                    let h = SymFunc::basis_elem(Basis::H, nu.clone());
                    let lhs = hall_inner(&skew_perp(&h, &f), &g);
                    let rhs = hall_inner(&f, &h.mul(&g));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn plethysm_identity_alphabet() {
        for l in partitions_up_to(5) {
            let f = SymFunc::s(l.clone());
            let sc = DegreeScalars::new(5, |_| (QtRational::one(), QtRational::zero()));
            assert_eq!(plethysm_linear(&f, &sc), f.to_p());
        }
    }

    #[test]
    fn plethysm_addition_formula() {
        // e_n[X + c] = sum_i e_(n-i)[X] e_i[c], with e_i[c] = binom(c, i)
        // for the alphabet of c copies of 1.
        let n = 4i64;
        let c = 3i64;
        let lhs = plethysm(&SymFunc::e(n), &crate::symfun::Alphabet::ConstInt(c));
        let lhs = SymFunc::scalar(lhs.coeff(&Partition::empty()));
        let binom = |c: i64, i: i64| -> i64 {
            let mut v = 1i64;
            for j in 0..i {
                v = v * (c - j) / (j + 1);
            }
            v
        };
        let mut rhs = QtRational::zero();
        for i in 0..=n {
            if i == n {
                rhs += &QtRational::from_int(binom(c, i));
            }
        }
        // e_n[0 + c] collapses to the scalar e_n[c] = binom(c, n)
        assert_eq!(lhs.coeff(&Partition::empty()), rhs);
        // and the two-alphabet sum formula, with X kept symbolic:
        let sc = DegreeScalars::x_plus_const(n as u32, |_| QtRational::from_int(c));
        let sum = plethysm_linear(&SymFunc::e(n), &sc);
        let mut expect = SymFunc::zero(Basis::P);
        for i in 0..=n {
            let term = SymFunc::e(n - i)
                .to_p()
                .scale(&QtRational::from_int(binom(c, i)));
            expect = expect.add(&term);
        }
        assert_eq!(sum, expect);
    }

    #[test]
    fn plethysm_minus_eps_is_omega() {
        // f[-eps X] = omega f
        for l in partitions_up_to(5) {
            let f = SymFunc::s(l.clone());
            let minus = plethysm(&f, &Alphabet::MinusX);
            let both = plethysm(&minus, &Alphabet::EpsX);
            assert_eq!(both, f.omega().to_p());
        }
    }

    #[test]
    fn plethysm_x_one_minus_q() {
        // p2[X(1-q)] = (1-q^2) p2
        let f = plethysm(&SymFunc::p(2), &Alphabet::XOneMinusQ);
        let expect = &QtRational::one() - &QtRational::qt_monomial(2, 0);
        assert_eq!(f.coeff(&part(&[2])), expect);
    }

    #[test]
    fn phi_and_star_inverse() {
        for l in partitions_up_to(4) {
            let f = SymFunc::s(l.clone());
            assert_eq!(star_pleth(&phi(&f)), f.to_p());
        }
    }

    #[test]
    fn characters_degree_three() {
        let t = degree_tables(3);
        let idx = |v: &[u32]| t.index[&part(v)];
        // chi_(2,1) on classes (1,1,1), (2,1), (3) is 2, 0, -1
        let li = idx(&[2, 1]);
        assert_eq!(t.chars[li][idx(&[1, 1, 1])], BigInt::from(2));
        assert_eq!(t.chars[li][idx(&[2, 1])], BigInt::from(0));
        assert_eq!(t.chars[li][idx(&[3])], BigInt::from(-1));
    }

    #[test]
    fn symfunc_serialization_round_trip() {
        let f = SymFunc::e(3).convert(Basis::S).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let back: SymFunc = serde_json::from_str(&s).unwrap();
        assert_eq!(f, back);
        assert!(s.contains("\"basis\":\"s\""));
    }
}
