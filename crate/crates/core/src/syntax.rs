//! Text syntax for symbolic elements.
//!
//! ```text
//! expr    := product (('+' | '-') product)*
//! product := factor ('*' factor)*
//! factor  := '-' factor | primary '^'*
//! primary := rational | 'p[' atoms ']' | 's[' word ';' atoms ']' | '(' expr ')'
//! ```
//!
//! `s[α;B]` is `s_{α,B}`, `^` is the adjoint and `atoms` a comma-separated
//! list of atom names. Words use the system's own word syntax, so
//! `s[e;w]^ * s[e;w]` reads as `s*_{e,w} s_{e,w}`.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::boolean::AtomSet;
use crate::dynamics::{RelativeGBDS, Word};
use crate::error::{Error, Result};
use crate::words::{AlgElement, Calculus, NormalTerm};

#[derive(Clone, Debug)]
enum Operand {
    Scalar(BigRational),
    Element(AlgElement),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    calc: Calculus<'a>,
}

fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, ',' | ';' | '[' | ']')
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl AsRef<str>) -> Error {
        Error::Parse(format!("{} at offset {} in `{}`", msg.as_ref(), self.pos, self.src))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let rest = self.rest();
        let end = rest.find(|c| !f(c)).unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    fn expr(&mut self) -> Result<Operand> {
        let mut acc = self.product()?;
        loop {
            let sign = if self.eat('+') {
                BigRational::one()
            } else if self.eat('-') {
                -BigRational::one()
            } else {
                return Ok(acc);
            };
            let rhs = self.product()?;
            acc = match (acc, rhs) {
                (Operand::Scalar(a), Operand::Scalar(b)) => Operand::Scalar(a + sign * b),
                (Operand::Element(a), Operand::Element(b)) => Operand::Element(&a + &b.scale(&sign)),
                _ => return Err(self.err("cannot add a scalar to an element")),
            };
        }
    }

    fn product(&mut self) -> Result<Operand> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let rhs = self.factor()?;
            acc = match (acc, rhs) {
                (Operand::Scalar(a), Operand::Scalar(b)) => Operand::Scalar(a * b),
                (Operand::Scalar(a), Operand::Element(x)) | (Operand::Element(x), Operand::Scalar(a)) => {
                    Operand::Element(x.scale(&a))
                }
                (Operand::Element(x), Operand::Element(y)) => Operand::Element(self.calc.mul(&x, &y)?),
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Operand> {
        if self.eat('-') {
            return Ok(match self.factor()? {
                Operand::Scalar(a) => Operand::Scalar(-a),
                Operand::Element(x) => Operand::Element(-&x),
            });
        }
        let mut x = self.primary()?;
        while self.eat('^') {
            if let Operand::Element(e) = x {
                x = Operand::Element(e.adjoint());
            }
        }
        Ok(x)
    }

    fn primary(&mut self) -> Result<Operand> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(')')?;
                Ok(x)
            }
            Some(c) if c.is_ascii_digit() => self.rational().map(Operand::Scalar),
            Some('p') => {
                self.pos += 1;
                self.expect('[')?;
                let atoms = self.atoms()?;
                self.expect(']')?;
                Ok(Operand::Element(self.calc.p(atoms)))
            }
            Some('s') => {
                self.pos += 1;
                self.expect('[')?;
                self.skip_ws();
                let word = self.take_while(|c| c != ';' && c != ']').trim();
                let word = self.calc.system().bds().parse_word(word)?;
                self.expect(';')?;
                let atoms = self.atoms()?;
                self.expect(']')?;
                Ok(Operand::Element(self.calc.s(&word, atoms)?))
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let digits = self.take_while(|c| c.is_ascii_digit());
        digits.parse().map_err(|_| self.err("expected a number"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.integer()?;
        if self.eat('/') {
            let den = self.integer()?;
            if den.is_zero() {
                return Err(self.err("division by zero"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn atoms(&mut self) -> Result<AtomSet> {
        let f = self.calc.system().algebra().as_finite().ok_or_else(|| {
            Error::UnsupportedBackend("symbolic elements need a finite backend".into())
        })?;
        let mut out = AtomSet::EMPTY;
        if self.peek() == Some(']') {
            return Ok(out);
        }
        loop {
            self.skip_ws();
            let name = self.take_while(is_name_char);
            if name.is_empty() {
                return Err(self.err("expected an atom name"));
            }
            out = out.with(f.atom_index(name)?);
            if !self.eat(',') {
                return Ok(out);
            }
        }
    }
}

/// Parses an element of the system's spanning algebra.
pub fn parse_element(sys: &RelativeGBDS, src: &str) -> Result<AlgElement> {
    let calc = Calculus::new(sys)?;
    let mut p = Parser { src, pos: 0, calc };
    let x = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    match x {
        Operand::Element(e) => Ok(e),
        Operand::Scalar(c) if c.is_zero() => Ok(AlgElement::zero()),
        Operand::Scalar(_) => Err(Error::Parse(format!("`{src}` is a scalar, not an element"))),
    }
}

fn show_term(sys: &RelativeGBDS, t: &NormalTerm) -> String {
    let atom = sys.atom_labels().map(|l| l[t.atom].as_str()).unwrap_or("?");
    let word = |w: &Word| sys.bds().show_word(w);
    match (t.left.is_empty(), t.right.is_empty()) {
        (true, true) => format!("p[{atom}]"),
        (false, true) => format!("s[{};{atom}]", word(&t.left)),
        (true, false) => format!("s[{};{atom}]^", word(&t.right)),
        (false, false) => format!("s[{};{atom}] * s[{};{atom}]^", word(&t.left), word(&t.right)),
    }
}

/// Prints in the syntax [`parse_element`] reads; the zero element is `0`.
pub fn show_element(sys: &RelativeGBDS, x: &AlgElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (t, c)) in x.terms().enumerate() {
        let negative = c.is_negative();
        let magnitude = c.abs();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let term = show_term(sys, t);
        if magnitude.is_one() {
            out.push_str(&term);
        } else if t.left.is_empty() || t.right.is_empty() {
            out.push_str(&format!("{magnitude}*{term}"));
        } else {
            out.push_str(&format!("{magnitude}*({term})"));
        }
    }
    out
}
