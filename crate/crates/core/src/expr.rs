//! Operator expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?
//! exponent:= INT ('^' exponent)?          right-associative
//! atom    := INT ('/' INT)? | VAR | '(' expr ')'
//! VAR     := 'x' IDX | 'd' IDX | 'X' IDX | 'Xi' IDX      IDX in 1..=n
//! ```
//!
//! `x`/`d` form the Weyl alphabet and `X`/`Xi` the twisted alphabet; one
//! expression may use only one of them. Weyl expressions are normal ordered
//! as they are evaluated, so `d1*x1` parses to `x1*d1 + 1`. Error positions
//! are byte offsets into the input.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{MPoly, Ring};
use crate::center::twisted_vars;
use crate::error::{Error, Result};
use crate::weyl::WeylOp;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 256;
/// Deepest parenthesis / unary-minus nesting accepted.
pub const MAX_DEPTH: usize = 128;
/// Largest number of terms an intermediate result may have.
pub const MAX_TERMS: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    Weyl,
    Twisted,
}

impl Alphabet {
    fn name(self) -> &'static str {
        match self {
            Alphabet::Weyl => "Weyl (x, d)",
            Alphabet::Twisted => "twisted (X, Xi)",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum VarKind {
    X,
    D,
    BigX,
    Xi,
}

impl VarKind {
    fn alphabet(self) -> Alphabet {
        match self {
            VarKind::X | VarKind::D => Alphabet::Weyl,
            VarKind::BigX | VarKind::Xi => Alphabet::Twisted,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(VarKind, usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(text: &str, n: usize) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'/' => out.push((start, Tok::Slash)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(v)));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let name = &text[start..i];
                let kind = match name {
                    "x" => VarKind::X,
                    "d" => VarKind::D,
                    "X" => VarKind::BigX,
                    "Xi" => VarKind::Xi,
                    _ => return Err(Error::parse(start, format!("unknown identifier {name:?}"))),
                };
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits == i {
                    return Err(Error::parse(digits, format!("missing index after {name:?}")));
                }
                let index: usize = text[digits..i]
                    .parse()
                    .map_err(|_| Error::parse(digits, "index too large"))?;
                if index == 0 {
                    return Err(Error::parse(digits, "variable indices start at 1"));
                }
                if index > n {
                    return Err(Error::IndexOutOfRange { index, limit: n });
                }
                out.push((start, Tok::Var(kind, index - 1)));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().expect("in bounds");
                return Err(Error::parse(start, format!("unexpected character {ch:?}")));
            }
        }
        i += 1;
    }
    Ok(out)
}

/// An intermediate value; the alphabet is fixed before parsing starts.
#[derive(Clone, Debug)]
enum Val {
    Weyl(WeylOp),
    Twisted(MPoly),
}

fn too_large(v: Val) -> Result<Val> {
    let len = match &v {
        Val::Weyl(op) => op.len(),
        Val::Twisted(p) => p.len(),
    };
    if len > MAX_TERMS {
        return Err(Error::TooLarge {
            what: "number of terms".into(),
            limit: MAX_TERMS as u64,
        });
    }
    Ok(v)
}

impl Val {
    fn add(self, other: Val) -> Result<Val> {
        too_large(match (self, other) {
            (Val::Weyl(a), Val::Weyl(b)) => Val::Weyl(a.try_add(&b)?),
            (Val::Twisted(a), Val::Twisted(b)) => Val::Twisted(a.try_add(&b)?),
            _ => return Err(Error::MixedAlphabets),
        })
    }

    fn neg(self) -> Val {
        match self {
            Val::Weyl(a) => Val::Weyl(-a),
            Val::Twisted(a) => Val::Twisted(-a),
        }
    }

    fn mul(self, other: Val) -> Result<Val> {
        too_large(match (self, other) {
            (Val::Weyl(a), Val::Weyl(b)) => Val::Weyl(a.try_mul(&b)?),
            (Val::Twisted(a), Val::Twisted(b)) => Val::Twisted(a.try_mul(&b)?),
            _ => return Err(Error::MixedAlphabets),
        })
    }

    fn pow(self, e: u32) -> Result<Val> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = acc.mul(self.clone())?;
        }
        Ok(acc)
    }

    fn one(&self) -> Val {
        match self {
            Val::Weyl(a) => Val::Weyl(WeylOp::one(a.n(), a.ring())),
            Val::Twisted(a) => Val::Twisted(MPoly::one(a.vars().clone(), a.ring())),
        }
    }
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    depth: usize,
    alphabet: Alphabet,
    n: usize,
    ring: Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Error::parse(self.offset(), "expression nested too deeply"));
        }
        Ok(())
    }

    fn constant(&self, q: &BigRational) -> Result<Val> {
        let c = self.ring.from_rational(q)?;
        Ok(match self.alphabet {
            Alphabet::Weyl => Val::Weyl(WeylOp::constant(self.n, c)),
            Alphabet::Twisted => Val::Twisted(MPoly::constant(twisted_vars(self.n), c)),
        })
    }

    fn variable(&self, kind: VarKind, i: usize) -> Result<Val> {
        let (n, ring) = (self.n, self.ring);
        Ok(match kind {
            VarKind::X => Val::Weyl(WeylOp::x(n, ring, i)?),
            VarKind::D => Val::Weyl(WeylOp::d(n, ring, i)?),
            VarKind::BigX => Val::Twisted(MPoly::var(twisted_vars(n), ring, i)?),
            VarKind::Xi => Val::Twisted(MPoly::var(twisted_vars(n), ring, n + i)?),
        })
    }

    fn expr(&mut self) -> Result<Val> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = lhs.add(self.term()?)?;
            } else if self.eat(&Tok::Minus) {
                lhs = lhs.add(self.term()?.neg())?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Val> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Star) {
            lhs = lhs.mul(self.unary()?)?;
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Val> {
        if self.eat(&Tok::Minus) {
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(inner.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Val> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let e = self.exponent()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32> {
        let at = self.offset();
        let Some(Tok::Int(v)) = self.peek().cloned() else {
            return Err(Error::parse(at, "expected a non-negative integer exponent"));
        };
        self.pos += 1;
        let mut e = v.clone();
        if self.eat(&Tok::Caret) {
            self.enter()?;
            let rhs = self.exponent()?;
            self.depth -= 1;
            e = if v.is_zero() && rhs == 0 {
                BigInt::one()
            } else if v.is_zero() || v.is_one() {
                v
            } else if rhs >= 64 {
                BigInt::from(u64::MAX)
            } else {
                num_traits::pow(v, rhs as usize)
            };
        }
        match e.to_u32() {
            Some(e) if e <= MAX_EXPONENT => Ok(e),
            _ => Err(Error::parse(at, format!("exponent exceeds {MAX_EXPONENT}"))),
        }
    }

    fn atom(&mut self) -> Result<Val> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                if self.eat(&Tok::Slash) {
                    let at = self.offset();
                    let Some(Tok::Int(d)) = self.peek().cloned() else {
                        return Err(Error::parse(at, "expected an integer denominator"));
                    };
                    self.pos += 1;
                    if d.is_zero() {
                        return Err(Error::parse(at, "zero denominator"));
                    }
                    return self.constant(&BigRational::new(v, d));
                }
                self.constant(&BigRational::from_integer(v))
            }
            Some(Tok::Var(k, i)) => {
                self.pos += 1;
                self.variable(k, i)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                self.enter()?;
                let e = self.expr()?;
                self.depth -= 1;
                if !self.eat(&Tok::RParen) {
                    return Err(Error::parse(self.offset(), "expected ')'"));
                }
                Ok(e)
            }
            Some(t) => Err(Error::parse(at, format!("unexpected {}", describe(&t)))),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "number",
        Tok::Var(..) => "variable",
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Caret => "'^'",
        Tok::Slash => "'/'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
    }
}

/// Parses in the alphabet of the variables present, or `default` when the
/// expression is constant.
fn parse_in(text: &str, n: usize, ring: Ring, want: Option<Alphabet>) -> Result<Val> {
    let toks = tokenize(text, n)?;
    let mut found = None;
    for (_, t) in &toks {
        if let Tok::Var(k, _) = t {
            match found {
                None => found = Some(k.alphabet()),
                Some(a) if a != k.alphabet() => return Err(Error::MixedAlphabets),
                _ => {}
            }
        }
    }
    if let (Some(w), Some(f)) = (want, found) {
        if w != f {
            return Err(Error::WrongAlphabet { expected: w.name() });
        }
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
        depth: 0,
        alphabet: want.or(found).unwrap_or(Alphabet::Weyl),
        n,
        ring,
    };
    let v = p.expr()?;
    if p.pos < toks.len() {
        let (o, t) = &toks[p.pos];
        return Err(Error::parse(*o, format!("unexpected {}", describe(t))));
    }
    Ok(v)
}

/// A parsed expression in either alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operator {
    Weyl(WeylOp),
    Twisted(MPoly),
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::Weyl(op) => op.fmt(f),
            Operator::Twisted(p) => p.fmt(f),
        }
    }
}

/// Parses `text` in whichever alphabet it uses; constants parse as Weyl
/// operators.
pub fn parse_operator(text: &str, n: usize, ring: Ring) -> Result<Operator> {
    Ok(match parse_in(text, n, ring, None)? {
        Val::Weyl(op) => Operator::Weyl(op),
        Val::Twisted(p) => Operator::Twisted(p),
    })
}

/// [`parse_operator`] on raw bytes; invalid UTF-8 is a parse error.
pub fn parse_operator_bytes(bytes: &[u8], n: usize, ring: Ring) -> Result<Operator> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| Error::parse(e.valid_up_to(), "invalid UTF-8"))?;
    parse_operator(text, n, ring)
}

/// Parses a normal-ordered Weyl operator in `x1..xn, d1..dn`.
pub fn parse_weyl(text: &str, n: usize, ring: Ring) -> Result<WeylOp> {
    match parse_in(text, n, ring, Some(Alphabet::Weyl))? {
        Val::Weyl(op) => Ok(op),
        Val::Twisted(_) => Err(Error::WrongAlphabet { expected: Alphabet::Weyl.name() }),
    }
}

/// Parses a twisted polynomial in `X1..Xn, Xi1..Xin`.
pub fn parse_twisted(text: &str, n: usize, ring: Ring) -> Result<MPoly> {
    match parse_in(text, n, ring, Some(Alphabet::Twisted))? {
        Val::Twisted(p) => Ok(p),
        Val::Weyl(_) => Err(Error::WrongAlphabet { expected: Alphabet::Twisted.name() }),
    }
}

/// Whether an error comes from malformed input rather than computation.
pub fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::MixedAlphabets
            | Error::WrongAlphabet { .. }
            | Error::IndexOutOfRange { .. }
    )
}
