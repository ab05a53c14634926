//! A small expression language for the compute command.
//!
//! Grammar (whitespace-insensitive):
//!   expr   := term (('+' | '-') term)*
//!   term   := factor ('*' factor | '/' factor)*
//!   factor := '-' factor | atom
//!   atom   := integer | 'q' | 't'
//!           | 'e(n)' | 'h(n)' | 'p(n)' | 's((l1,l2,...))' | 'm((...))'
//!           | 'nabla(f)' | 'delta(f; g)' | "delta'(f; g)" | 'theta(f; g)'
//!           | 'pi(f)' | 'pinv(f)' | 'Dk(k; f)' | 'C((a1,...))' | 'E(n,r)'
//!           | 'omega(f)' | 'pleth(f; alphabet)' | 'perp(h; f)'
//!           | 'inner(f, g)' | 'star(f, g)' | '(' expr ')'
//! Scalars are degree-zero symmetric functions; division requires a scalar
//! divisor. Alphabet names: X/M, XM, X(1-q), X(1-t), X/(1-q), X[j]q (j a
//! digit), -X, epsX.

use crate::combinat::{Composition, Partition};
use crate::error::{Error, Result};
use crate::macdonald::MacdonaldCtx;
use crate::ops;
use crate::qt::QtRational;
use crate::symfun::{self, Alphabet, SymFunc};

pub struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a MacdonaldCtx,
    degree_budget: u32,
}

pub fn eval(ctx: &MacdonaldCtx, src: &str, degree_budget: u32) -> Result<SymFunc> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        ctx,
        degree_budget,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {:?}", c as char)))
        }
    }

    fn check_budget(&self, f: &SymFunc) -> Result<()> {
        if let Some(d) = f.degree() {
            if d > self.degree_budget {
                return Err(Error::Domain(format!(
                    "degree {d} exceeds the budget {}",
                    self.degree_budget
                )));
            }
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<SymFunc> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = acc.add(&rhs);
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = acc.sub(&rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SymFunc> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.factor()?;
                acc = acc.mul(&rhs);
                self.check_budget(&acc)?;
            } else if self.eat(b'/') {
                let rhs = self.factor()?;
                let c = as_scalar(&rhs).ok_or_else(|| self.err("division needs a scalar"))?;
                if c.is_zero() {
                    return Err(Error::DivisionByZero("division by zero scalar".into()));
                }
                acc = acc.scale(&c.inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<SymFunc> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        self.atom()
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let mut neg = false;
        if self.src.get(self.pos) == Some(&b'-') {
            neg = true;
            self.pos += 1;
        }
        let ds = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == ds {
            self.pos = start;
            return Err(self.err("expected an integer"));
        }
        let v: i64 = std::str::from_utf8(&self.src[ds..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn int_list(&mut self) -> Result<Vec<u32>> {
        self.expect(b'(')?;
        let mut out = Vec::new();
        if self.peek() != Some(b')') {
            loop {
                let v = self.integer()?;
                if v < 0 {
                    return Err(self.err("parts must be nonnegative"));
                }
                out.push(v as u32);
                if !self.eat(b',') {
                    break;
                }
            }
        }
        self.expect(b')')?;
        Ok(out)
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'\'')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).to_string()
    }

    fn alphabet_name(&mut self) -> Result<Alphabet> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && !matches!(self.src[self.pos], b')' | b';' | b',')
        {
            self.pos += 1;
        }
        let raw: String = String::from_utf8_lossy(&self.src[start..self.pos])
            .trim()
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        match raw.as_str() {
            "X/M" => Ok(Alphabet::XOverM),
            "XM" => Ok(Alphabet::XTimesM),
            "X(1-q)" => Ok(Alphabet::XOneMinusQ),
            "X(1-t)" => Ok(Alphabet::XOneMinusT),
            "X/(1-q)" => Ok(Alphabet::XOverOneMinusQ),
            "-X" => Ok(Alphabet::MinusX),
            "epsX" => Ok(Alphabet::EpsX),
            _ => {
                if let Some(j) = raw.strip_prefix("X[").and_then(|r| r.strip_suffix("]q")) {
                    let j: u32 = j
                        .parse()
                        .map_err(|_| self.err("bad bracket alphabet index"))?;
                    return Ok(Alphabet::XBracket(j));
                }
                Err(self.err(&format!("unknown alphabet {raw:?}")))
            }
        }
    }

    fn atom(&mut self) -> Result<SymFunc> {
        match self.peek() {
            Some(b'(') => {
                self.expect(b'(')?;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(SymFunc::scalar(QtRational::from_int(v)))
            }
            _ => {
                let name = self.ident();
                match name.as_str() {
                    "q" => Ok(SymFunc::scalar(QtRational::q())),
                    "t" => Ok(SymFunc::scalar(QtRational::t())),
                    "e" | "h" | "p" => {
                        self.expect(b'(')?;
                        let n = self.integer()?;
                        self.expect(b')')?;
                        if n > self.degree_budget as i64 {
                            return Err(Error::Domain(format!(
                                "degree {n} exceeds the budget {}",
                                self.degree_budget
                            )));
                        }
                        Ok(match name.as_str() {
                            "e" => SymFunc::e(n),
                            "h" => SymFunc::h(n),
                            _ => {
                                if n < 1 {
                                    return Err(self.err("p(n) needs n >= 1"));
                                }
                                SymFunc::p(n as u32)
                            }
                        })
                    }
                    "s" | "m" => {
                        let parts = self.int_list()?;
                        let l = Partition::new(parts)?;
                        if l.size() > self.degree_budget {
                            return Err(Error::Domain("partition exceeds the degree budget".into()));
                        }
                        Ok(if name == "s" {
                            SymFunc::s(l)
                        } else {
                            SymFunc::m(l)
                        })
                    }
                    "C" => {
                        let parts = self.int_list()?;
                        let alpha = Composition::new(parts)?;
                        if alpha.size() > self.degree_budget {
                            return Err(Error::Domain("composition exceeds the degree budget".into()));
                        }
                        Ok(ops::c_alpha(&alpha))
                    }
                    "E" => {
                        self.expect(b'(')?;
                        let n = self.integer()?;
                        self.expect(b',')?;
                        let r = self.integer()?;
                        self.expect(b')')?;
                        if n > self.degree_budget as i64 {
                            return Err(Error::Domain("degree exceeds the budget".into()));
                        }
                        if n < 1 || r < 1 {
                            return Err(self.err("E(n,r) needs n, r >= 1"));
                        }
                        ops::e_nk(n as u32, r as u32)
                    }
                    "nabla" => {
                        self.expect(b'(')?;
                        let f = self.expr()?;
                        self.expect(b')')?;
                        ops::nabla(self.ctx, &f)
                    }
                    "omega" => {
                        self.expect(b'(')?;
                        let f = self.expr()?;
                        self.expect(b')')?;
                        Ok(self.ctx.htilde_to_p(&f)?.omega())
                    }
                    "pi" => {
                        self.expect(b'(')?;
                        let f = self.expr()?;
                        self.expect(b')')?;
                        ops::pi_op(self.ctx, &f)
                    }
                    "pinv" => {
                        self.expect(b'(')?;
                        let f = self.expr()?;
                        self.expect(b')')?;
                        ops::pi_inv(self.ctx, &f)
                    }
                    "delta" | "delta'" | "theta" => {
                        self.expect(b'(')?;
                        let index = self.expr()?;
                        self.expect(b';')?;
                        let f = self.expr()?;
                        self.expect(b')')?;
                        let index = self.ctx.htilde_to_p(&index)?;
                        let out = match name.as_str() {
                            "delta" => ops::delta(self.ctx, &index, &f)?,
                            "delta'" => ops::delta_prime(self.ctx, &index, &f)?,
                            _ => ops::theta(self.ctx, &index, &f)?,
                        };
                        self.check_budget(&out)?;
                        Ok(out)
                    }
                    "Dk" => {
                        self.expect(b'(')?;
                        let k = self.integer()?;
                        self.expect(b';')?;
                        let f = self.expr()?;
                        self.expect(b')')?;
                        let out = ops::d_k(k, &self.ctx.htilde_to_p(&f)?);
                        self.check_budget(&out)?;
                        Ok(out)
                    }
                    "pleth" => {
                        self.expect(b'(')?;
                        let f = self.expr()?;
                        self.expect(b';')?;
                        let alpha = self.alphabet_name()?;
                        self.expect(b')')?;
                        Ok(symfun::plethysm(&self.ctx.htilde_to_p(&f)?, &alpha))
                    }
                    "perp" => {
                        self.expect(b'(')?;
                        let h = self.expr()?;
                        self.expect(b';')?;
                        let f = self.expr()?;
                        self.expect(b')')?;
                        Ok(symfun::skew_perp(
                            &self.ctx.htilde_to_p(&h)?,
                            &self.ctx.htilde_to_p(&f)?,
                        ))
                    }
                    "inner" | "star" => {
                        self.expect(b'(')?;
                        let f = self.expr()?;
                        self.expect(b',')?;
                        let g = self.expr()?;
                        self.expect(b')')?;
                        let f = self.ctx.htilde_to_p(&f)?;
                        let g = self.ctx.htilde_to_p(&g)?;
                        let v = if name == "inner" {
                            symfun::hall_inner(&f, &g)
                        } else {
                            symfun::star_inner(&f, &g)
                        };
                        Ok(SymFunc::scalar(v))
                    }
                    "" => Err(self.err("expected an expression")),
                    other => Err(self.err(&format!("unknown function {other:?}"))),
                }
            }
        }
    }
}

fn as_scalar(f: &SymFunc) -> Option<QtRational> {
    if f.is_zero() {
        return Some(QtRational::zero());
    }
    if f.degree() == Some(0) {
        return Some(f.coeff(&Partition::empty()));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::Basis;

    #[test]
    fn theta_of_nabla_e1_is_e2() {
        let ctx = MacdonaldCtx::new();
        let f = eval(&ctx, "theta(e(1); nabla(e(1)))", 8).unwrap();
        let s = ctx.convert(&f, Basis::S).unwrap();
        assert_eq!(s.num_terms(), 1);
        assert_eq!(
            s.coeff(&Partition::new(vec![1, 1]).unwrap()),
            QtRational::one()
        );
    }

    #[test]
    fn nabla_enk_sum() {
        let ctx = MacdonaldCtx::new();
        let lhs = eval(&ctx, "nabla(E(2,1)) + nabla(E(2,2))", 8).unwrap();
        let rhs = eval(&ctx, "nabla(e(2))", 8).unwrap();
        assert_eq!(
            ctx.htilde_to_p(&lhs).unwrap(),
            ctx.htilde_to_p(&rhs).unwrap()
        );
    }

    #[test]
    fn c_of_one_is_e1() {
        let ctx = MacdonaldCtx::new();
        let f = eval(&ctx, "C((1))", 8).unwrap();
        assert_eq!(f, SymFunc::e(1).to_p());
    }

    #[test]
    fn scalar_arithmetic_and_pleth() {
        let ctx = MacdonaldCtx::new();
        let f = eval(&ctx, "(q + t) * e(2) - q*e(2) - t*e(2)", 8).unwrap();
        assert!(f.is_zero());
        let g = eval(&ctx, "pleth(p(2); X(1-q))", 8).unwrap();
        let expect = symfun::plethysm(&SymFunc::p(2), &Alphabet::XOneMinusQ);
        assert_eq!(g, expect);
        let h = eval(&ctx, "inner(s((2,1)), s((2,1)))", 8).unwrap();
        assert_eq!(h, SymFunc::one());
    }

    #[test]
    fn parse_errors_carry_position() {
        let ctx = MacdonaldCtx::new();
        assert!(eval(&ctx, "nabla(e(2)", 8).is_err());
        assert!(eval(&ctx, "frobnicate(3)", 8).is_err());
        assert!(eval(&ctx, "e(12)", 8).is_err()); // budget
    }
}
