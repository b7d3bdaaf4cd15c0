//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | variable | '(' expr ')'
//! ```
//!
//! Variables are `x1 .. xn`; for `n <= 3` the aliases `x`, `y`, `z` are also
//! accepted. Whitespace is ignored.

use num_bigint::BigInt;
use thiserror::Error;

use super::{Polynomial, MAX_EXPONENT};

/// Upper bound on the number of terms an expansion may produce.
const MAX_TERMS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent overflow at position {pos}: exponents are limited to {MAX_EXPONENT}")]
    ExponentOverflow { pos: usize },
    #[error("expansion at position {pos} exceeds {MAX_TERMS} terms")]
    TooLarge { pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownVariable { pos, .. }
            | ParseError::ExponentOverflow { pos }
            | ParseError::TooLarge { pos } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Int(v), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{}`", text[start..].chars().next().unwrap()),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            let pos = self.bump().1;
            let rhs = self.unary()?;
            acc = self.product(&acc, &rhs, pos)?;
        }
        Ok(acc)
    }

    fn product(&self, a: &Polynomial, b: &Polynomial, pos: usize) -> Result<Polynomial, ParseError> {
        if a.max_exponent() as u64 + b.max_exponent() as u64 > MAX_EXPONENT as u64 {
            // Only an overflow if some pair of terms actually collides in a variable.
            let p = a.checked_mul(b).ok_or(ParseError::ExponentOverflow { pos })?;
            if p.max_exponent() > MAX_EXPONENT {
                return Err(ParseError::ExponentOverflow { pos });
            }
            return Ok(p);
        }
        if a.num_terms().saturating_mul(b.num_terms()) > MAX_TERMS {
            return Err(ParseError::TooLarge { pos });
        }
        Ok(a * b)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (tok, pos) = self.bump();
        let e = match tok {
            Tok::Int(v) => v,
            _ => {
                return Err(ParseError::Syntax {
                    pos,
                    msg: "expected a nonnegative integer exponent".into(),
                })
            }
        };
        let e: u32 = match u32::try_from(&e) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return Err(ParseError::ExponentOverflow { pos }),
        };
        if base.max_exponent() as u64 * e as u64 > MAX_EXPONENT as u64 {
            return Err(ParseError::ExponentOverflow { pos });
        }
        if base.num_terms() > 1 && e > 1 {
            // Multinomial count bounds the expansion: C(e + t - 1, t - 1).
            let t = base.num_terms() as u64;
            let mut bound: u128 = 1;
            for i in 1..t {
                bound = bound * (e as u128 + i as u128) / i as u128;
                if bound > MAX_TERMS as u128 {
                    return Err(ParseError::TooLarge { pos });
                }
            }
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(v) => Ok(Polynomial::constant(self.nvars, v)),
            Tok::Ident(name) => match resolve_variable(&name, self.nvars) {
                Some(i) => Ok(Polynomial::variable(self.nvars, i)),
                None => Err(ParseError::UnknownVariable { name, pos }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let (close, cpos) = self.bump();
                if close != Tok::RParen {
                    return Err(ParseError::Syntax {
                        pos: cpos,
                        msg: "expected `)`".into(),
                    });
                }
                Ok(inner)
            }
            Tok::End => Err(ParseError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            other => Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected token {}", describe(&other)),
            }),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "integer",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::End => "end of input",
    }
}

fn resolve_variable(name: &str, nvars: usize) -> Option<usize> {
    if nvars <= 3 {
        if let Some(i) = ["x", "y", "z"].iter().position(|&v| v == name) {
            return (i < nvars).then_some(i);
        }
    }
    let idx: usize = name.strip_prefix('x')?.parse().ok()?;
    if name.len() > 2 && name.as_bytes()[1] == b'0' {
        return None;
    }
    (1..=nvars).contains(&idx).then(|| idx - 1)
}

/// Parses `text` as a polynomial in `nvars` variables, returning the fully
/// expanded and collected form.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, nvars };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(ParseError::Syntax {
            pos: p.pos(),
            msg: format!("unexpected token {}", describe(p.peek())),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ExponentVector;
    use proptest::prelude::*;

    fn support(p: &Polynomial) -> Vec<Vec<u32>> {
        p.support().into_iter().map(|e| e.as_slice().to_vec()).collect()
    }

    #[test]
    fn example_ideal_and_measure() {
        let i = parse_polynomial("x^5*y + x^3*y^2 + x^2*y^5", 2).unwrap();
        let mut s = support(&i);
        s.sort();
        assert_eq!(s, vec![vec![2, 5], vec![3, 2], vec![5, 1]]);
        let g = parse_polynomial("x^4*y^2 + x*y^5", 2).unwrap();
        let mut s = support(&g);
        s.sort();
        assert_eq!(s, vec![vec![1, 5], vec![4, 2]]);
        assert!(parse_polynomial("0", 2).unwrap().is_zero());
    }

    #[test]
    fn precedence_and_unary_minus() {
        let p = parse_polynomial("-x^2", 1).unwrap();
        assert_eq!(p.coefficient(&ExponentVector::new(vec![2])), BigInt::from(-1));
        let p = parse_polynomial("2*x^2*3", 1).unwrap();
        assert_eq!(p.coefficient(&ExponentVector::new(vec![2])), BigInt::from(6));
        let p = parse_polynomial("1 - x - x", 1).unwrap();
        assert_eq!(p.to_string(), "-2*x + 1");
        let p = parse_polynomial("(x + y)^2 - (x - y)^2", 2).unwrap();
        assert_eq!(p.to_string(), "4*x*y");
        let p = parse_polynomial("2*-x", 1).unwrap();
        assert_eq!(p.to_string(), "-2*x");
        let p = parse_polynomial(" x1 *  x2 ", 2).unwrap();
        assert_eq!(p.to_string(), "x*y");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_polynomial("x + w", 2),
            Err(ParseError::UnknownVariable {
                name: "w".into(),
                pos: 4
            })
        );
        assert_eq!(
            parse_polynomial("z", 2),
            Err(ParseError::UnknownVariable {
                name: "z".into(),
                pos: 0
            })
        );
        assert!(matches!(
            parse_polynomial("x5", 4),
            Err(ParseError::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse_polynomial("x +", 1),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_polynomial("(x", 1),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial("x y", 2),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial("x $", 1),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial("x^-1", 1),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert_eq!(
            parse_polynomial("x^1000001", 1),
            Err(ParseError::ExponentOverflow { pos: 2 })
        );
        assert!(matches!(
            parse_polynomial("(x^1000)^1001", 1),
            Err(ParseError::ExponentOverflow { .. })
        ));
        assert!(matches!(
            parse_polynomial("x^600000*x^600000", 1),
            Err(ParseError::ExponentOverflow { .. })
        ));
        assert!(parse_polynomial("x^1000000", 1).is_ok());
        assert!(matches!(
            parse_polynomial("(x1+x2+x3+x4+1)^500", 4),
            Err(ParseError::TooLarge { .. })
        ));
    }

    #[test]
    fn long_variable_names() {
        let p = parse_polynomial("x10 - x1", 10).unwrap();
        assert_eq!(p.to_string(), "-x1 + x10");
        assert!(parse_polynomial("x01", 10).is_err());
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..4, nvars), -20i64..20), 0..6).prop_map(
            move |terms| {
                Polynomial::from_terms(nvars, terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn print_parse_round_trip((n, f) in (1usize..6).prop_flat_map(|n| (Just(n), arb_poly(n)))) {
            let text = f.to_string();
            let back = parse_polynomial(&text, n).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn printed_form_is_fixpoint(f in arb_poly(3)) {
            let once = parse_polynomial(&f.to_string(), 3).unwrap();
            prop_assert_eq!(&once, &f);
            prop_assert_eq!(parse_polynomial(&once.to_string(), 3).unwrap().to_string(), f.to_string());
        }

        #[test]
        fn ring_distributivity(f in arb_poly(2), g in arb_poly(2), h in arb_poly(2)) {
            let lhs = &(&f + &g) * &h;
            let rhs = &(&f * &h) + &(&g * &h);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
