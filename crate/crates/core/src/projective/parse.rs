//! Parser for field elements, linear forms and the `F0; F1` line format.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary ('*' unary)*`,
//! `unary := '-' unary | atom ('^' int)?`, `atom := int | name | '(' expr ')'`.
//! Names are the coordinates `X Y Z W` and the tower generators.

use crate::error::{Error, Result};
use crate::field::{Fe, Tower};

use super::{line_from_forms, LineP3, LinearForm, VARS};

#[derive(Clone, Copy, Debug)]
struct Affine {
    lin: [Fe; 4],
    constant: Fe,
}

impl Affine {
    fn constant(c: Fe) -> Affine {
        Affine { lin: [Fe::ZERO; 4], constant: c }
    }

    fn is_constant(&self) -> bool {
        self.lin.iter().all(|c| c.is_zero())
    }
}

struct Parser<'a> {
    f: &'a Tower,
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos + self.offset,
            msg: msg.into(),
        })
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

    fn expr(&mut self) -> Result<Affine> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            let f = self.f;
            let comb = |a: Fe, b: Fe| if op == b'+' { f.add(a, b) } else { f.sub(a, b) };
            for i in 0..4 {
                acc.lin[i] = comb(acc.lin[i], rhs.lin[i]);
            }
            acc.constant = comb(acc.constant, rhs.constant);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Affine> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let start = self.pos;
            let rhs = self.unary()?;
            let f = self.f;
            acc = if acc.is_constant() {
                Affine {
                    lin: rhs.lin.map(|c| f.mul(c, acc.constant)),
                    constant: f.mul(acc.constant, rhs.constant),
                }
            } else if rhs.is_constant() {
                Affine {
                    lin: acc.lin.map(|c| f.mul(c, rhs.constant)),
                    constant: f.mul(acc.constant, rhs.constant),
                }
            } else {
                self.pos = start;
                return self.err("product of two coordinate terms is not linear");
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Affine> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let v = self.unary()?;
            let f = self.f;
            return Ok(Affine {
                lin: v.lin.map(|c| f.neg(c)),
                constant: f.neg(v.constant),
            });
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.integer()?;
            if !base.is_constant() {
                if e == 1 {
                    return Ok(base);
                }
                self.pos = start;
                return self.err("powers of coordinates are not linear");
            }
            return Ok(Affine::constant(self.f.pow(base.constant, e)));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| {
                self.pos = start;
                self.err("integer too large")
            })
    }

    fn atom(&mut self) -> Result<Affine> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Affine::constant(self.f.from_int((n % self.f.p() as u64) as i64)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                let name = c as char;
                if let Some(i) = VARS.iter().position(|v| v.as_bytes()[0] == c) {
                    let mut lin = [Fe::ZERO; 4];
                    lin[i] = Fe::ONE;
                    return Ok(Affine { lin, constant: Fe::ZERO });
                }
                match self.f.generator(name) {
                    Some(g) => Ok(Affine::constant(g)),
                    None => {
                        self.pos -= 1;
                        self.err(format!("unknown name '{name}'"))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("trailing '{}'", c as char)),
        }
    }
}

fn parse_affine(f: &Tower, src: &str, offset: usize) -> Result<Affine> {
    let mut p = Parser { f, src: src.as_bytes(), pos: 0, offset };
    let v = p.expr()?;
    p.finish()?;
    Ok(v)
}

/// Parses a field element such as `4*u + 2` or `a^2 - 1`.
pub fn parse_element(f: &Tower, src: &str) -> Result<Fe> {
    let v = parse_affine(f, src, 0)?;
    if !v.is_constant() {
        return Err(Error::Parse { pos: 0, msg: "expected a constant".into() });
    }
    Ok(v.constant)
}

/// Parses a homogeneous linear form such as `W - 2*u*X + 2*Z`.
pub fn parse_form(f: &Tower, src: &str) -> Result<LinearForm> {
    parse_form_at(f, src, 0)
}

fn parse_form_at(f: &Tower, src: &str, offset: usize) -> Result<LinearForm> {
    let v = parse_affine(f, src, offset)?;
    if !v.constant.is_zero() {
        return Err(Error::Parse {
            pos: offset,
            msg: "linear form has a nonzero constant term".into(),
        });
    }
    if v.is_constant() {
        return Err(Error::Parse { pos: offset, msg: "zero linear form".into() });
    }
    Ok(v.lin)
}

/// Parses `F0; F1` into a canonical line.
pub fn parse_line(f: &Tower, src: &str) -> Result<LineP3> {
    let Some(split) = src.find(';') else {
        return Err(Error::Parse { pos: src.len(), msg: "expected 'F0; F1'".into() });
    };
    let f0 = parse_form_at(f, &src[..split], 0)?;
    let f1 = parse_form_at(f, &src[split + 1..], split + 1)?;
    line_from_forms(f, &f0, &f1)
}
