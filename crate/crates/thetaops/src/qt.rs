//! Exact arithmetic in the field Q(q,t).
//!
//! Everything downstream is linear algebra over this field, so the two types
//! here carry the whole precision story:
//! - [`IntPoly2`]: a bivariate polynomial in q and t with arbitrary-precision
//!   integer coefficients, stored sparsely.
//! - [`QtRational`]: a quotient num/den of two `IntPoly2` kept in canonical
//!   form (gcd(num, den) = 1, den nonzero with positive leading coefficient
//!   under graded lex with q taken before t). Equality of canonical forms is
//!   therefore literal equality of terms.
//!
//! The gcd is computed by content/primitive-part recursion, treating the
//! polynomial as univariate in q over Z[t] and running a primitive PRS.
//! Degrees stay below ~100 in this crate, where this is entirely adequate.
//!
//! Also here: the q-analogue constructors [n]_q, [n]_q!, the Gaussian
//! binomial, and the q-rising factorial (a;q)_n, each taken over an
//! arbitrary base element (so [n]_t works too).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Exponent pair: (power of q, power of t).
pub type Exp = (u32, u32);

/// Sparse bivariate polynomial over Z in the variables q and t.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly2 {
    terms: BTreeMap<Exp, BigInt>,
}

/// Compare monomials: graded first, then by q-exponent.
fn mono_cmp(a: Exp, b: Exp) -> std::cmp::Ordering {
    (a.0 + a.1, a.0).cmp(&(b.0 + b.1, b.0))
}

impl IntPoly2 {
    pub fn zero() -> Self {
        IntPoly2::default()
    }

    pub fn one() -> Self {
        IntPoly2::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        IntPoly2 { terms }
    }

    pub fn from_i64(c: i64) -> Self {
        IntPoly2::constant(BigInt::from(c))
    }

    /// The variable q.
    pub fn q() -> Self {
        IntPoly2::monomial(1, 0, BigInt::one())
    }

    /// The variable t.
    pub fn t() -> Self {
        IntPoly2::monomial(0, 1, BigInt::one())
    }

    pub fn monomial(i: u32, j: u32, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        IntPoly2 { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn deg_q(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn deg_t(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }

    fn insert_add(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Leading term under the graded order with ties broken by q-exponent.
    pub fn leading(&self) -> Option<(Exp, &BigInt)> {
        self.terms
            .iter()
            .max_by(|a, b| mono_cmp(*a.0, *b.0))
            .map(|(e, c)| (*e, c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        let mut out = IntPoly2::zero();
        for (e, c) in &self.terms {
            out.insert_add(*e, f(c));
        }
        out
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly2::zero();
        }
        self.map_coeffs(|x| x * c)
    }

    pub fn mul_monomial(&self, i: u32, j: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(a, b), c)| ((a + i, b + j), c.clone()))
            .collect();
        IntPoly2 { terms }
    }

    /// Integer content (gcd of all coefficients), always nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Substitute exact rational values for q and t.
    pub fn eval(&self, q0: &BigRational, t0: &BigRational) -> BigRational {
        // Horner in q with cached powers of t; degrees are small.
        let mut acc = BigRational::zero();
        let mut q_pows: Vec<BigRational> = vec![BigRational::one()];
        let mut t_pows: Vec<BigRational> = vec![BigRational::one()];
        for (&(i, j), c) in &self.terms {
            while q_pows.len() <= i as usize {
                let last = q_pows.last().unwrap().clone();
                q_pows.push(last * q0);
            }
            while t_pows.len() <= j as usize {
                let last = t_pows.last().unwrap().clone();
                t_pows.push(last * t0);
            }
            acc += BigRational::from(c.clone()) * &q_pows[i as usize] * &t_pows[j as usize];
        }
        acc
    }

    /// Substitute a rational value for q only, leaving t symbolic.
    /// Returns (numerator polynomial in t, integer denominator).
    pub fn eval_q(&self, q0: &BigRational) -> (IntPoly2, BigInt) {
        let dq = self.deg_q();
        let qn = q0.numer();
        let qd = q0.denom();
        // Multiply through by qd^dq so coefficients stay integral.
        let mut out = IntPoly2::zero();
        for (&(i, j), c) in &self.terms {
            let scaled = c * qn.pow(i) * qd.pow(dq - i);
            out.insert_add((0, j), scaled);
        }
        (out, qd.pow(dq))
    }

    /// Exact division; None if `d` does not divide `self`.
    pub fn div_exact(&self, d: &IntPoly2) -> Option<IntPoly2> {
        if self.is_zero() {
            return Some(IntPoly2::zero());
        }
        if d.is_zero() {
            return None;
        }
        if d.is_one() {
            return Some(self.clone());
        }
        let (dlead_e, dlead_c) = d.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = IntPoly2::zero();
        while !rem.is_zero() {
            let (rlead_e, rlead_c) = rem.leading().unwrap();
            if rlead_e.0 < dlead_e.0 || rlead_e.1 < dlead_e.1 {
                return None;
            }
            let (qc, r) = rlead_c.div_rem(dlead_c);
            if !r.is_zero() {
                return None;
            }
            let qe = (rlead_e.0 - dlead_e.0, rlead_e.1 - dlead_e.1);
            quot.insert_add(qe, qc.clone());
            let piece = d.mul_monomial(qe.0, qe.1).scale_int(&qc);
            rem = &rem - &piece;
        }
        Some(quot)
    }

    /// View as a univariate polynomial in q with coefficients in Z[t].
    fn q_coeffs(&self) -> Vec<UniPoly> {
        let n = self.deg_q() as usize;
        let mut v = vec![UniPoly::zero(); n + 1];
        for (&(i, j), c) in &self.terms {
            v[i as usize].insert_add(j, c.clone());
        }
        v
    }

    fn from_q_coeffs(v: &[UniPoly]) -> IntPoly2 {
        let mut out = IntPoly2::zero();
        for (i, p) in v.iter().enumerate() {
            for (&j, c) in &p.terms {
                out.insert_add((i as u32, j), c.clone());
            }
        }
        out
    }

    /// Evaluate at integer points with cached powers (gcd screening).
    fn eval_int(&self, q0: &BigInt, t0: &BigInt) -> BigInt {
        let mut q_pows: Vec<BigInt> = vec![BigInt::one()];
        let mut t_pows: Vec<BigInt> = vec![BigInt::one()];
        let mut acc = BigInt::zero();
        for (&(i, j), c) in &self.terms {
            while q_pows.len() <= i as usize {
                let last = q_pows.last().unwrap() * q0;
                q_pows.push(last);
            }
            while t_pows.len() <= j as usize {
                let last = t_pows.last().unwrap() * t0;
                t_pows.push(last);
            }
            acc += c * &q_pows[i as usize] * &t_pows[j as usize];
        }
        acc
    }

    /// Gcd, normalized primitive with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly2) -> IntPoly2 {
        if self.is_zero() {
            return normalize_sign(other.clone());
        }
        if other.is_zero() {
            return normalize_sign(self.clone());
        }
        if self.is_one() || other.is_one() {
            return IntPoly2::one();
        }
        if self == other {
            return normalize_sign(self.clone());
        }
        // Integer-only operands short-circuit to an integer gcd.
        if self.deg_q() == 0 && self.deg_t() == 0 && other.deg_q() == 0 && other.deg_t() == 0 {
            let g = self.content().gcd(&other.content());
            return IntPoly2::constant(g);
        }
        let c1 = self.content();
        let c2 = other.content();
        // Screen with integer evaluations: a nonconstant common factor
        // divides both images, so coprime images at two independent points
        // mean the polynomial gcd is the content gcd.
        let screen = |q0: i64, t0: i64| -> bool {
            let q0 = BigInt::from(q0);
            let t0 = BigInt::from(t0);
            let e1 = self.eval_int(&q0, &t0) / &c1;
            let e2 = other.eval_int(&q0, &t0) / &c2;
            e1.gcd(&e2).is_one()
        };
        if screen(2_251_799_813_685_119, 4_503_599_627_370_449)
            && screen(1_125_899_906_842_597, 9_007_199_254_740_881)
        {
            return IntPoly2::constant(c1.gcd(&c2));
        }
        let a = self.q_coeffs();
        let b = other.q_coeffs();
        let (ca, pa) = content_pp_q(&a);
        let (cb, pb) = content_pp_q(&b);
        let cont = ca.gcd(&cb);
        let core = prs_gcd_q(pa, pb);
        let g = IntPoly2::from_q_coeffs(&mul_q_uni(&core, &cont));
        normalize_sign(g)
    }
}

fn normalize_sign(p: IntPoly2) -> IntPoly2 {
    match p.leading() {
        Some((_, c)) if c.is_negative() => p.map_coeffs(|x| -x),
        _ => p,
    }
}

/// Univariate polynomial in t over Z, used inside the bivariate gcd.
#[derive(Clone, PartialEq, Eq, Default)]
struct UniPoly {
    terms: BTreeMap<u32, BigInt>,
}

impl UniPoly {
    fn zero() -> Self {
        UniPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, e: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn deg(&self) -> u32 {
        *self.terms.keys().next_back().unwrap_or(&0)
    }

    fn lc(&self) -> BigInt {
        self.terms
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn scale(&self, c: &BigInt) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    fn div_int_exact(&self, c: &BigInt) -> UniPoly {
        UniPoly {
            terms: self.terms.iter().map(|(&e, x)| (e, x / c)).collect(),
        }
    }

    fn shift(&self, e: u32) -> UniPoly {
        UniPoly {
            terms: self.terms.iter().map(|(&d, x)| (d + e, x.clone())).collect(),
        }
    }

    fn add(&self, other: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.insert_add(e, c.clone());
        }
        out
    }

    fn sub(&self, other: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.insert_add(e, -c.clone());
        }
        out
    }

    fn mul(&self, other: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.insert_add(e1 + e2, c1 * c2);
            }
        }
        out
    }

    fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_int_exact(&c)
    }

    /// Primitive PRS gcd over Z[t].
    fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.clone().positive();
        }
        if other.is_zero() {
            return self.clone().positive();
        }
        let ca = self.content();
        let cb = other.content();
        let cont = ca.gcd(&cb);
        let mut a = self.div_int_exact(&ca);
        let mut b = other.div_int_exact(&cb);
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = uni_prem(&a, &b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale(&cont).positive()
    }

    fn positive(self) -> UniPoly {
        if self.lc().is_negative() {
            self.scale(&BigInt::from(-1))
        } else {
            self
        }
    }
}

/// Pseudo-remainder of a by b (degrees in t).
fn uni_prem(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut r = a.clone();
    let db = b.deg();
    let lb = b.lc();
    while !r.is_zero() && r.deg() >= db {
        let lr = r.lc();
        let dr = r.deg();
        r = r.scale(&lb).sub(&b.shift(dr - db).scale(&lr));
    }
    r
}

/// Content (gcd over Z[t] of the q-coefficients) and primitive part.
fn content_pp_q(v: &[UniPoly]) -> (UniPoly, Vec<UniPoly>) {
    let mut cont = UniPoly::zero();
    for p in v {
        if p.is_zero() {
            continue;
        }
        cont = cont.gcd(p);
        if cont.deg() == 0 && cont.content().is_one() {
            break;
        }
    }
    let pp = v
        .iter()
        .map(|p| uni_div_exact(p, &cont))
        .collect::<Vec<_>>();
    (cont, pp)
}

/// Exact division in Z[t]; panics if not exact (internal use only).
fn uni_div_exact(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() {
        return UniPoly::zero();
    }
    let mut r = a.clone();
    let mut q = UniPoly::zero();
    let db = b.deg();
    let lb = b.lc();
    while !r.is_zero() {
        let dr = r.deg();
        assert!(dr >= db, "non-exact univariate division");
        let (c, rem) = r.lc().div_rem(&lb);
        assert!(rem.is_zero(), "non-exact univariate division");
        let mut mono = UniPoly::zero();
        mono.insert_add(dr - db, c);
        q = q.add(&mono);
        r = r.sub(&b.mul(&mono));
    }
    q
}

fn mul_q_uni(v: &[UniPoly], c: &UniPoly) -> Vec<UniPoly> {
    v.iter().map(|p| p.mul(c)).collect()
}

/// Primitive PRS on polynomials in q with coefficients in Z[t].
/// Inputs are primitive in the Z[t] sense; output is the primitive gcd.
fn prs_gcd_q(mut a: Vec<UniPoly>, mut b: Vec<UniPoly>) -> Vec<UniPoly> {
    let deg = |v: &Vec<UniPoly>| -> Option<usize> { v.iter().rposition(|p| !p.is_zero()) };
    let trim = |v: &mut Vec<UniPoly>| {
        while v.last().map(|p| p.is_zero()).unwrap_or(false) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while deg(&b).is_some() {
        // Pseudo-remainder of a by b in the variable q.
        let db = deg(&b).unwrap();
        let lb = b[db].clone();
        let mut r = a;
        loop {
            trim(&mut r);
            let dr = match deg(&r) {
                Some(d) if d >= db => d,
                _ => break,
            };
            let lr = r[dr].clone();
            // r = lb*r - lr*q^(dr-db)*b
            let mut next = vec![UniPoly::zero(); dr.max(db + dr - db) + 1];
            for (i, p) in r.iter().enumerate() {
                next[i] = p.mul(&lb);
            }
            for (i, p) in b.iter().enumerate() {
                let idx = i + dr - db;
                next[idx] = next[idx].sub(&p.mul(&lr));
            }
            r = next;
        }
        a = b;
        // Primitive part of r (contents in Z[t]).
        trim(&mut r);
        if r.iter().all(|p| p.is_zero()) {
            b = Vec::new();
        } else {
            let (_, pp) = content_pp_q(&r);
            b = pp;
        }
    }
    a
}

impl Add for &IntPoly2 {
    type Output = IntPoly2;
    fn add(self, rhs: &IntPoly2) -> IntPoly2 {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.insert_add(e, c.clone());
        }
        out
    }
}

impl Sub for &IntPoly2 {
    type Output = IntPoly2;
    fn sub(self, rhs: &IntPoly2) -> IntPoly2 {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.insert_add(e, -c.clone());
        }
        out
    }
}

impl Mul for &IntPoly2 {
    type Output = IntPoly2;
    fn mul(self, rhs: &IntPoly2) -> IntPoly2 {
        // Dense products go through Kronecker packing: encode each factor as
        // one big integer in base 2^w, multiply once, unpack. Sparse or small
        // products use the direct double loop.
        let slots =
            (self.deg_q() as u64 + rhs.deg_q() as u64 + 1) * (self.deg_t() as u64 + rhs.deg_t() as u64 + 1);
        if self.num_terms().saturating_mul(rhs.num_terms()) >= 4096 && slots <= 1 << 20 {
            return kronecker_mul(self, rhs);
        }
        let mut out = IntPoly2::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.insert_add((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

/// Multiply via Kronecker substitution. Both factors are split into their
/// positive and negative parts so every packed digit stays nonnegative, and
/// the digit width is chosen from an a priori bound on the product's
/// coefficients, so no carries cross slot boundaries.
fn kronecker_mul(a: &IntPoly2, b: &IntPoly2) -> IntPoly2 {
    use num_bigint::Sign;
    let dt = a.deg_t() + b.deg_t();
    let dq = a.deg_q() + b.deg_q();
    let stride = (dt + 1) as u64;
    let slots = ((dq as u64 + 1) * stride) as usize;

    let max_abs = |p: &IntPoly2| -> BigInt {
        p.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    };
    let nmin = BigInt::from(a.num_terms().min(b.num_terms()) as u64);
    let bound: BigInt = max_abs(a) * max_abs(b) * nmin + 1;
    let w32 = ((bound.bits() + 32) / 32) as usize; // digit width in u32 words

    let pack = |p: &IntPoly2, negative: bool| -> num_bigint::BigUint {
        let mut words = vec![0u32; slots * w32];
        for (&(i, j), c) in &p.terms {
            let keep = (c.sign() == Sign::Minus) == negative;
            if !keep {
                continue;
            }
            let slot = (i as u64 * stride + j as u64) as usize;
            let mag = c.magnitude();
            for (k, d) in mag.iter_u32_digits().enumerate() {
                words[slot * w32 + k] = d;
            }
        }
        num_bigint::BigUint::new(words)
    };

    let ap = pack(a, false);
    let an = pack(a, true);
    let bp = pack(b, false);
    let bn = pack(b, true);
    let pos = &ap * &bp + &an * &bn;
    let neg = &ap * &bn + &an * &bp;

    let unpack = |x: &num_bigint::BigUint, sign: i64, out: &mut IntPoly2| {
        let mut words = x.to_u32_digits();
        words.resize(slots * w32, 0);
        for slot in 0..slots {
            let chunk = &words[slot * w32..(slot + 1) * w32];
            if chunk.iter().all(|&d| d == 0) {
                continue;
            }
            let mag = num_bigint::BigUint::new(chunk.to_vec());
            let i = (slot as u64 / stride) as u32;
            let j = (slot as u64 % stride) as u32;
            let c = BigInt::from(mag) * BigInt::from(sign);
            out.insert_add((i, j), c);
        }
    };
    let mut out = IntPoly2::zero();
    unpack(&pos, 1, &mut out);
    unpack(&neg, -1, &mut out);
    out
}

impl Neg for &IntPoly2 {
    type Output = IntPoly2;
    fn neg(self) -> IntPoly2 {
        self.map_coeffs(|c| -c)
    }
}

impl fmt::Debug for IntPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|a, b| mono_cmp(*b.0, *a.0));
        for (&(i, j), c) in entries {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = abs.is_one() && (i, j) != (0, 0);
            if !unit_coeff {
                write!(f, "{}", abs)?;
            }
            if i > 0 {
                write!(f, "q")?;
                if i > 1 {
                    write!(f, "^{}", i)?;
                }
            }
            if j > 0 {
                write!(f, "t")?;
                if j > 1 {
                    write!(f, "^{}", j)?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(u32, u32, String)> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| (i, j, c.to_string()))
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<(u32, u32, String)> = Vec::deserialize(d)?;
        let mut out = IntPoly2::zero();
        for (i, j, c) in v {
            let c: BigInt = c
                .parse()
                .map_err(|e| D::Error::custom(format!("bad coefficient: {e}")))?;
            out.insert_add((i, j), c);
        }
        Ok(out)
    }
}

/// An element of Q(q,t) in canonical form.
///
/// Invariants: den != 0, gcd(num, den) = 1 (including integer content), and
/// den's leading coefficient is positive. Equality first compares the
/// canonical forms literally and falls back to exact cross-multiplication.
#[derive(Clone, Serialize, Deserialize)]
pub struct QtRational {
    num: IntPoly2,
    den: IntPoly2,
}

impl PartialEq for QtRational {
    fn eq(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for QtRational {}

impl QtRational {
    pub fn normalize(num: IntPoly2, den: IntPoly2) -> Result<QtRational> {
        if den.is_zero() {
            return Err(Error::DivisionByZero(
                "zero denominator in Q(q,t)".into(),
            ));
        }
        if num.is_zero() {
            return Ok(QtRational {
                num: IntPoly2::zero(),
                den: IntPoly2::one(),
            });
        }
        if den.is_one() {
            return Ok(QtRational {
                num,
                den: IntPoly2::one(),
            });
        }
        // polynomial results are common enough that a direct exact-division
        // attempt beats running the full gcd
        if let Some(q) = num.div_exact(&den) {
            return Ok(QtRational {
                num: q,
                den: IntPoly2::one(),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        if den
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            num = -&num;
            den = -&den;
        }
        Ok(QtRational { num, den })
    }

    pub fn zero() -> Self {
        QtRational {
            num: IntPoly2::zero(),
            den: IntPoly2::one(),
        }
    }

    pub fn one() -> Self {
        QtRational {
            num: IntPoly2::one(),
            den: IntPoly2::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        QtRational {
            num: IntPoly2::from_i64(c),
            den: IntPoly2::one(),
        }
    }

    pub fn from_poly(p: IntPoly2) -> Self {
        QtRational {
            num: p,
            den: IntPoly2::one(),
        }
    }

    pub fn from_big_rational(r: &BigRational) -> Self {
        QtRational {
            num: IntPoly2::constant(r.numer().clone()),
            den: IntPoly2::constant(r.denom().clone()),
        }
    }

    pub fn q() -> Self {
        QtRational::from_poly(IntPoly2::q())
    }

    pub fn t() -> Self {
        QtRational::from_poly(IntPoly2::t())
    }

    /// M = (1-q)(1-t).
    pub fn big_m() -> Self {
        let one_q = &IntPoly2::one() - &IntPoly2::q();
        let one_t = &IntPoly2::one() - &IntPoly2::t();
        QtRational::from_poly(&one_q * &one_t)
    }

    /// q^i t^j as a Laurent monomial (negative powers go to the denominator).
    pub fn qt_monomial(i: i64, j: i64) -> Self {
        let num = IntPoly2::monomial(i.max(0) as u32, j.max(0) as u32, BigInt::one());
        let den = IntPoly2::monomial((-i).max(0) as u32, (-j).max(0) as u32, BigInt::one());
        QtRational { num, den }
    }

    pub fn num(&self) -> &IntPoly2 {
        &self.num
    }

    pub fn den(&self) -> &IntPoly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the canonical denominator is the constant 1, i.e. the value
    /// is a polynomial in q and t over Z.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<QtRational> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of zero in Q(q,t)".into()));
        }
        QtRational::normalize(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Result<QtRational> {
        if e == 0 {
            return Ok(QtRational::one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = QtRational::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point (q0, t0).
    pub fn specialize(&self, q0: &BigRational, t0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q0, t0);
        if d.is_zero() {
            return Err(Error::Eval(format!(
                "denominator vanishes at (q,t)=({},{})",
                q0, t0
            )));
        }
        Ok(self.num.eval(q0, t0) / d)
    }

    /// Substitute q = q0, keeping t symbolic. Errors if the denominator
    /// collapses to zero there.
    pub fn specialize_q(&self, q0: &BigRational) -> Result<QtRational> {
        let (dn, ds) = self.den.eval_q(q0);
        if dn.is_zero() {
            return Err(Error::Eval(format!("denominator vanishes at q={}", q0)));
        }
        let (nn, ns) = self.num.eval_q(q0);
        // num/ns over dn/ds = num*ds / (dn*ns)
        QtRational::normalize(nn.scale_int(&ds), dn.scale_int(&ns))
    }
}

impl Default for QtRational {
    fn default() -> Self {
        QtRational::zero()
    }
}

impl Add for &QtRational {
    type Output = QtRational;
    fn add(self, rhs: &QtRational) -> QtRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return QtRational::normalize(num, self.den.clone()).unwrap();
        }
        let g = self.den.gcd(&rhs.den);
        let ad = self.den.div_exact(&g).unwrap();
        let bd = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &bd) + &(&rhs.num * &ad);
        if num.is_zero() {
            return QtRational::zero();
        }
        // Any common factor of num and the new denominator divides g.
        let g2 = num.gcd(&g);
        let num = num.div_exact(&g2).unwrap();
        let den = &(&ad * &rhs.den).div_exact(&g2).unwrap();
        let mut out = QtRational {
            num,
            den: den.clone(),
        };
        if out
            .den
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            out.num = -&out.num;
            out.den = -&out.den;
        }
        out
    }
}

impl AddAssign<&QtRational> for QtRational {
    fn add_assign(&mut self, rhs: &QtRational) {
        *self = &*self + rhs;
    }
}

impl Sub for &QtRational {
    type Output = QtRational;
    fn sub(self, rhs: &QtRational) -> QtRational {
        self + &(-rhs)
    }
}

impl Neg for &QtRational {
    type Output = QtRational;
    fn neg(self) -> QtRational {
        QtRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &QtRational {
    type Output = QtRational;
    fn mul(self, rhs: &QtRational) -> QtRational {
        if self.is_zero() || rhs.is_zero() {
            return QtRational::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        // Cross-cancel before multiplying to keep degrees down.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let mut num = &n1 * &n2;
        let mut den = &d1 * &d2;
        if den
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            num = -&num;
            den = -&den;
        }
        QtRational { num, den }
    }
}

impl Div for &QtRational {
    type Output = QtRational;
    fn div(self, rhs: &QtRational) -> QtRational {
        let inv = rhs.inv().expect("division by zero in Q(q,t)");
        self * &inv
    }
}

impl fmt::Debug for QtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// [n]_b = 1 + b + ... + b^(n-1), with [0]_b = 0.
pub fn q_bracket(n: i64, base: &QtRational) -> Result<QtRational> {
    if n < 0 {
        return Err(Error::Domain(format!("[n] needs n >= 0, got {n}")));
    }
    let mut acc = QtRational::zero();
    let mut pw = QtRational::one();
    for _ in 0..n {
        acc += &pw;
        pw = &pw * base;
    }
    Ok(acc)
}

/// [n]_b! = [n]_b [n-1]_b ... [1]_b, with [0]_b! = 1.
pub fn q_factorial(n: i64, base: &QtRational) -> Result<QtRational> {
    if n < 0 {
        return Err(Error::Domain(format!("[n]! needs n >= 0, got {n}")));
    }
    let mut acc = QtRational::one();
    for i in 1..=n {
        acc = &acc * &q_bracket(i, base)?;
    }
    Ok(acc)
}

/// Gaussian binomial [n choose k]_b; zero when n < k or k < 0.
pub fn q_binomial(n: i64, k: i64, base: &QtRational) -> QtRational {
    if k < 0 || n < k {
        return QtRational::zero();
    }
    let k = k.min(n - k);
    // prod_{i=1}^{k} [n-k+i] / [i]
    let mut acc = QtRational::one();
    for i in 1..=k {
        let num = q_bracket(n - k + i, base).unwrap();
        let den = q_bracket(i, base).unwrap();
        acc = &(&acc * &num) / &den;
    }
    acc
}

/// q-rising factorial (a;b)_n = (1-a)(1-ba)...(1-b^(n-1)a).
pub fn q_rising(a: &QtRational, base: &QtRational, n: u32) -> QtRational {
    let mut acc = QtRational::one();
    let mut ba = a.clone();
    let one = QtRational::one();
    for _ in 0..n {
        acc = &acc * &(&one - &ba);
        ba = &ba * base;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn qr(num: IntPoly2, den: IntPoly2) -> QtRational {
        QtRational::normalize(num, den).unwrap()
    }

    #[test]
    fn polynomial_cancellation() {
        // (q^2 - 1)/(q - 1) = q + 1
        let q = IntPoly2::q();
        let num = &(&q * &q) - &IntPoly2::one();
        let den = &q - &IntPoly2::one();
        let r = qr(num, den);
        let expect = &QtRational::q() + &QtRational::one();
        assert_eq!(r, expect);
        assert!(r.is_polynomial());
    }

    #[test]
    fn m_stays_unchanged() {
        let m = QtRational::big_m();
        assert!(m.is_polynomial());
        assert_eq!(m.num().num_terms(), 4);
        assert_eq!(qr(m.num().clone(), IntPoly2::one()), m);
    }

    #[test]
    fn sign_normalization() {
        // (q-1)/(1-q) = -1
        let q = IntPoly2::q();
        let num = &q - &IntPoly2::one();
        let den = &IntPoly2::one() - &q;
        assert_eq!(qr(num, den), QtRational::from_int(-1));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(QtRational::normalize(IntPoly2::one(), IntPoly2::zero()).is_err());
    }

    #[test]
    fn brackets_and_binomials() {
        let q = QtRational::q();
        assert_eq!(q_bracket(0, &q).unwrap(), QtRational::zero());
        assert_eq!(q_binomial(2, 3, &q), QtRational::zero());
        // [4 choose 2]_q = 1 + q + 2q^2 + q^3 + q^4
        let b = q_binomial(4, 2, &q);
        let mut expect = QtRational::one();
        expect += &q;
        expect += &(&(&q * &q) * &QtRational::from_int(2));
        expect += &q.pow(3).unwrap();
        expect += &q.pow(4).unwrap();
        assert_eq!(b, expect);
        // Pascal recurrence [n,k] = [n-1,k] + q^(n-k) [n-1,k-1]
        for n in 1..=7i64 {
            for k in 0..=n {
                let lhs = q_binomial(n, k, &q);
                let rhs = &q_binomial(n - 1, k, &q)
                    + &(&q.pow(n - k).unwrap() * &q_binomial(n - 1, k - 1, &q));
                assert_eq!(lhs, rhs, "pascal failed at ({n},{k})");
            }
        }
    }

    #[test]
    fn rising_factorial() {
        // (q;q)_2 = (1-q)(1-q^2)
        let q = QtRational::q();
        let r = q_rising(&q, &q, 2);
        let expect = &(&QtRational::one() - &q) * &(&QtRational::one() - &q.pow(2).unwrap());
        assert_eq!(r, expect);
    }

    #[test]
    fn specialization() {
        let q = QtRational::q();
        let one = BigRational::one();
        let n5 = q_bracket(5, &q).unwrap();
        assert_eq!(n5.specialize(&one, &one).unwrap(), BigRational::from(BigInt::from(5)));
        let m = QtRational::big_m();
        assert!(m.specialize(&one, &one).unwrap().is_zero());
        let b = q_binomial(4, 2, &q);
        assert_eq!(b.specialize(&one, &one).unwrap(), BigRational::from(BigInt::from(6)));
    }

    #[test]
    fn specialize_q_keeps_t() {
        // (1-q t)/(1-t) at q=1 -> (1-t)/(1-t) = 1
        let one = QtRational::one();
        let num = &one - &(&QtRational::q() * &QtRational::t());
        let den = &one - &QtRational::t();
        let r = &num / &den;
        let at1 = r.specialize_q(&BigRational::one()).unwrap();
        assert_eq!(at1, QtRational::one());
    }

    fn random_poly(rng: &mut StdRng, max_deg: u32, max_terms: usize) -> IntPoly2 {
        let mut p = IntPoly2::zero();
        let nterms = rng.gen_range(1..=max_terms);
        for _ in 0..nterms {
            let i = rng.gen_range(0..=max_deg);
            let j = rng.gen_range(0..=max_deg.saturating_sub(i));
            let c = rng.gen_range(-4i64..=4);
            p = &p + &IntPoly2::monomial(i, j, BigInt::from(c));
        }
        p
    }

    fn random_rational(rng: &mut StdRng) -> QtRational {
        loop {
            let num = random_poly(rng, 3, 3);
            let den = random_poly(rng, 3, 3);
            if !den.is_zero() {
                return QtRational::normalize(num, den).unwrap();
            }
        }
    }

    #[test]
    fn field_axioms_randomized() {
        let mut rng = StdRng::seed_from_u64(0x7e7a_0b5);
        for _ in 0..10_000 {
            let a = random_rational(&mut rng);
            let b = random_rational(&mut rng);
            let c = random_rational(&mut rng);
            // associativity
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            // commutativity
            assert_eq!(&a * &b, &b * &a);
            // distributivity
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            // inverses
            if !a.is_zero() {
                assert_eq!(&a * &a.inv().unwrap(), QtRational::one());
            }
            assert_eq!(&a - &a, QtRational::zero());
        }
    }

    #[test]
    fn canonical_form_idempotent() {
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..500 {
            let a = random_rational(&mut rng);
            let again = QtRational::normalize(a.num().clone(), a.den().clone()).unwrap();
            assert_eq!(a, again);
            // canonical invariant: gcd(num, den) = 1
            if !a.is_zero() {
                assert!(a.num().gcd(a.den()).is_one());
            }
        }
    }

    #[test]
    fn specialize_is_ring_homomorphism() {
        let mut rng = StdRng::seed_from_u64(7);
        let q0 = BigRational::new(BigInt::from(2), BigInt::from(3));
        let t0 = BigRational::new(BigInt::from(-1), BigInt::from(2));
        for _ in 0..300 {
            let a = random_rational(&mut rng);
            let b = random_rational(&mut rng);
            let (sa, sb) = (a.specialize(&q0, &t0), b.specialize(&q0, &t0));
            if let (Ok(sa), Ok(sb)) = (sa, sb) {
                let sum = (&a + &b).specialize(&q0, &t0).unwrap();
                let prod = (&a * &b).specialize(&q0, &t0).unwrap();
                assert_eq!(sum, &sa + &sb);
                assert_eq!(prod, &sa * &sb);
            }
        }
    }

    #[test]
    fn serialization_round_trip() {
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..50 {
            let a = random_rational(&mut rng);
            let s = serde_json::to_string(&a).unwrap();
            let back: QtRational = serde_json::from_str(&s).unwrap();
            assert_eq!(a, back);
        }
    }
}
