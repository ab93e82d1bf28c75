//! Parser for representation expressions such as `2*lambda(1) - rho + Vj(3,2,1)`.
//!
//! Atoms: `1` or `trivial`, `sign`, `lambda(k)`, `rho`, `rhobar`, `Vj(p,k,j)`.
//! Terms are joined by `+`/`-` and may carry an integer prefix, with or without
//! `*`. A bare integer `c` is `c` copies of the trivial line. Whitespace is ignored.

use crate::error::{Error, Result};
use crate::rep_theory::{CyclicGroup, VirtualRep};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Atom {
    Trivial,
    Sign,
    Lambda(i64),
    Rho,
    RhoBar,
    Vj(u64, u32, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at offset {}", self.pos)))
    }

    fn peek(&self) -> Option<u8> {
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
            self.err(&format!("expected `{}`", c as char))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: i64 = text
            .parse()
            .map_err(|_| Error::Parse(format!("integer `{text}` out of range")))?;
        Ok(if neg { -v } else { v })
    }

    fn unsigned(&mut self) -> Result<u64> {
        let v = self.integer()?;
        u64::try_from(v).map_err(|_| Error::Parse(format!("expected nonnegative integer, got {v}")))
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn atom(&mut self) -> Result<Atom> {
        let at = self.pos;
        match self.ident() {
            "trivial" => Ok(Atom::Trivial),
            "sign" => Ok(Atom::Sign),
            "rho" => Ok(Atom::Rho),
            "rhobar" => Ok(Atom::RhoBar),
            "lambda" => {
                self.expect(b'(')?;
                let k = self.integer()?;
                self.expect(b')')?;
                Ok(Atom::Lambda(k))
            }
            "Vj" => {
                self.expect(b'(')?;
                let p = self.unsigned()?;
                self.expect(b',')?;
                let k = self.unsigned()?;
                self.expect(b',')?;
                let j = self.unsigned()?;
                self.expect(b')')?;
                let k = u32::try_from(k).map_err(|_| Error::Parse("Vj exponent too large".into()))?;
                let j = u32::try_from(j).map_err(|_| Error::Parse("Vj index too large".into()))?;
                Ok(Atom::Vj(p, k, j))
            }
            "" => self.err("expected a representation atom"),
            other => {
                self.pos = at;
                self.err(&format!("unknown atom `{other}`"))
            }
        }
    }

    /// `[int ['*']] atom` or a bare integer.
    fn term(&mut self) -> Result<(i64, Atom)> {
        if matches!(self.peek(), Some(b'0'..=b'9')) {
            let c = self.integer()?;
            if self.eat(b'*') {
                if matches!(self.peek(), Some(b'0'..=b'9')) {
                    // `c*1` spelled with the numeric trivial atom
                    let one = self.integer()?;
                    if one != 1 {
                        return self.err("only `1` may follow `*` as a numeric atom");
                    }
                    return Ok((c, Atom::Trivial));
                }
                return Ok((c, self.atom()?));
            }
            if matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
                return Ok((c, self.atom()?));
            }
            return Ok((c, Atom::Trivial));
        }
        Ok((1, self.atom()?))
    }

    fn expr(&mut self) -> Result<Vec<(i64, Atom)>> {
        let mut terms = Vec::new();
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let (c, atom) = self.term()?;
            terms.push((sign * c, atom));
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                break;
            }
        }
        if self.pos != self.src.len() {
            return self.err("unexpected trailing input");
        }
        Ok(terms)
    }
}

/// Parses `expr` as a representation of `C_m`.
///
/// When `m` is `None` the group is taken from a `Vj(p,k,j)` term (`m = p^k`);
/// expressions without one need an explicit `m`.
pub fn parse_rep(expr: &str, m: Option<u64>) -> Result<VirtualRep> {
    let cleaned: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let mut parser = Parser {
        src: cleaned.as_bytes(),
        pos: 0,
    };
    let terms = parser.expr()?;

    let inferred = terms.iter().find_map(|(_, atom)| match atom {
        Atom::Vj(p, k, _) => Some(CyclicGroup::prime_power(*p, *k)),
        _ => None,
    });
    let group = match (m, inferred) {
        (Some(m), _) => CyclicGroup::new(m)?,
        (None, Some(g)) => g?,
        (None, None) => {
            return Err(Error::Parse(
                "group order unknown: pass m or use a Vj(p,k,j) term".into(),
            ))
        }
    };

    let mut rep = VirtualRep::zero(group);
    for (c, atom) in terms {
        let piece = match atom {
            Atom::Trivial => VirtualRep::trivial(group, 1),
            Atom::Sign => VirtualRep::sign(group)?,
            Atom::Lambda(k) => VirtualRep::lambda(group, k),
            Atom::Rho => VirtualRep::regular(group),
            Atom::RhoBar => VirtualRep::reduced_regular(group),
            Atom::Vj(p, k, j) => {
                let v = VirtualRep::v_j(p, k, j)?;
                if v.group() != group {
                    return Err(Error::InvalidRep(format!(
                        "Vj({p},{k},{j}) lives on C_{} but the expression is over {group}",
                        v.group().order()
                    )));
                }
                v
            }
        };
        rep = rep.try_add(&piece.scale(c))?;
    }
    Ok(rep)
}
