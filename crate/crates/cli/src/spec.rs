//! Problem files: one `key = value` per line, `#` starts a comment.
//!
//! ```text
//! mode = ideal
//! n = 2
//! p = 13
//! generators = x^5*y, x^3*y^2, x^2*y^5
//! g = x^4*y^2 + x*y^5
//! ```
//!
//! `f =` may repeat (one line per mapping component) and so may
//! `generators =`. `g = trivial` selects the measure `|dx|`.

use std::fmt;

use igusa_core::linalg::is_prime;
use igusa_core::pipeline::Problem;
use igusa_core::poly::{parse_polynomial, MonomialIdeal, Polynomial, PolynomialMapping};
use igusa_core::problem::{FSide, Measure, Mode};
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}, column {col}: {msg}")]
    At { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

fn at(v: &Value, offset: usize, msg: impl fmt::Display) -> SpecError {
    SpecError::At {
        line: v.line,
        col: v.col + offset,
        msg: msg.to_string(),
    }
}

/// A raw value with its 1-based line and column.
#[derive(Debug, Clone)]
struct Value {
    text: String,
    line: usize,
    col: usize,
}

/// A validated problem file.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub mode: Mode,
    pub n: usize,
    pub p: u64,
    pub fside: FSide,
    pub measure: Measure,
}

impl ProblemSpec {
    pub fn problem(&self) -> Result<Problem, SpecError> {
        self.problem_at(self.p)
    }

    pub fn problem_at(&self, p: u64) -> Result<Problem, SpecError> {
        if !is_prime(p) {
            return Err(SpecError::Invalid(format!("p = {p} is not prime")));
        }
        Problem::new(self.fside.clone(), self.measure.clone(), p)
            .map_err(|e| SpecError::Invalid(e.to_string()))
    }
}

#[derive(Default)]
struct Raw {
    mode: Option<Value>,
    n: Option<Value>,
    p: Option<Value>,
    g: Option<Value>,
    f: Vec<Value>,
    generators: Vec<Value>,
}

pub fn parse_spec(text: &str) -> Result<ProblemSpec, SpecError> {
    let raw = scan(text)?;
    let required = |v: &Option<Value>, key: &str| {
        v.clone()
            .ok_or_else(|| SpecError::Invalid(format!("missing `{key} =`")))
    };

    let mode_v = required(&raw.mode, "mode")?;
    let mode = match mode_v.text.as_str() {
        "ideal" => Mode::Ideal,
        "single" => Mode::Single,
        "mapping" => Mode::Mapping,
        other => {
            return Err(at(
                &mode_v,
                0,
                format!("unknown mode `{other}`; use ideal, single or mapping"),
            ))
        }
    };
    let n_v = required(&raw.n, "n")?;
    let n: usize = n_v
        .text
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| at(&n_v, 0, "n must be a positive integer"))?;
    let p_v = required(&raw.p, "p")?;
    let p: u64 = p_v
        .text
        .parse()
        .ok()
        .filter(|&p| is_prime(p))
        .ok_or_else(|| at(&p_v, 0, "p must be a prime"))?;

    let fside = match mode {
        Mode::Ideal => {
            if let Some(f) = raw.f.first() {
                return Err(at(f, 0, "ideal mode takes `generators =`, not `f =`"));
            }
            if raw.generators.is_empty() {
                return Err(SpecError::Invalid("missing `generators =`".into()));
            }
            let mut gens = Vec::new();
            for v in &raw.generators {
                gens.extend(monomials(v, n)?);
            }
            FSide::Ideal(MonomialIdeal::new(n, gens).map_err(|e| SpecError::Invalid(e.to_string()))?)
        }
        Mode::Single | Mode::Mapping => {
            if let Some(v) = raw.generators.first() {
                return Err(at(v, 0, format!("{mode} mode takes `f =`, not `generators =`")));
            }
            let polys = raw
                .f
                .iter()
                .map(|v| polynomial(v, n))
                .collect::<Result<Vec<_>, _>>()?;
            match (mode, polys.len()) {
                (_, 0) => return Err(SpecError::Invalid("missing `f =`".into())),
                (Mode::Single, 1) => FSide::single(polys[0].clone()).map_err(|e| at(&raw.f[0], 0, e))?,
                (Mode::Single, _) => return Err(at(&raw.f[1], 0, "single mode takes exactly one `f =`")),
                _ => FSide::Mapping(
                    PolynomialMapping::new(polys).map_err(|e| SpecError::Invalid(e.to_string()))?,
                ),
            }
        }
    };

    let g_v = required(&raw.g, "g")?;
    let measure = if g_v.text == "trivial" {
        Measure::Trivial
    } else {
        Measure::polynomial(polynomial(&g_v, n)?).map_err(|e| at(&g_v, 0, e))?
    };

    let spec = ProblemSpec {
        mode,
        n,
        p,
        fside,
        measure,
    };
    spec.problem()?;
    Ok(spec)
}

fn scan(text: &str) -> Result<Raw, SpecError> {
    let mut raw = Raw::default();
    for (i, full) in text.lines().enumerate() {
        let line = full.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let lineno = i + 1;
        let Some(eq) = line.find('=') else {
            return Err(SpecError::At {
                line: lineno,
                col: line.len() - line.trim_start().len() + 1,
                msg: "expected `key = value`".into(),
            });
        };
        let key = line[..eq].trim();
        let rest = &line[eq + 1..];
        let lead = rest.len() - rest.trim_start().len();
        let value = Value {
            text: rest.trim().to_string(),
            line: lineno,
            col: eq + 2 + lead,
        };
        if value.text.is_empty() {
            return Err(at(&value, 0, format!("empty value for `{key}`")));
        }
        let slot = match key {
            "mode" => &mut raw.mode,
            "n" => &mut raw.n,
            "p" => &mut raw.p,
            "g" => &mut raw.g,
            "f" => {
                raw.f.push(value);
                continue;
            }
            "generators" => {
                raw.generators.push(value);
                continue;
            }
            other => {
                return Err(SpecError::At {
                    line: lineno,
                    col: line.find(other).unwrap_or(0) + 1,
                    msg: format!("unknown key `{other}`"),
                })
            }
        };
        if let Some(prev) = slot {
            return Err(at(
                &value,
                0,
                format!("`{key}` already set on line {}", prev.line),
            ));
        }
        *slot = Some(value);
    }
    Ok(raw)
}

fn polynomial(v: &Value, n: usize) -> Result<Polynomial, SpecError> {
    parse_polynomial(&v.text, n).map_err(|e| at(v, e.position(), e))
}

/// Comma-separated monic monomials.
fn monomials(v: &Value, n: usize) -> Result<Vec<igusa_core::poly::ExponentVector>, SpecError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for item in v.text.split(',') {
        let lead = item.len() - item.trim_start().len();
        let piece = Value {
            text: item.trim().to_string(),
            line: v.line,
            col: v.col + offset + lead,
        };
        offset += item.len() + 1;
        if piece.text.is_empty() {
            return Err(at(&piece, 0, "empty generator"));
        }
        let m = polynomial(&piece, n)?;
        let mut terms = m.terms();
        match (terms.next(), terms.next()) {
            (Some((e, c)), None) if c.is_one() => out.push(e.clone()),
            _ => {
                return Err(at(
                    &piece,
                    0,
                    "a generator must be a single monomial with coefficient 1",
                ))
            }
        }
    }
    Ok(out)
}
