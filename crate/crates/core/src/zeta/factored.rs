use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ratfunc::RationalFunction;
use super::ZetaError;

/// `p^e` as an exact rational.
pub(crate) fn p_pow(p: u64, e: i64) -> BigRational {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

/// Finite sum `sum c_e t^e` with `e` of either sign.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut l = Self::zero();
        l.add_term(e, c);
        l
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in o.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, x) in self.terms() {
            out.add_term(e, x * c);
        }
        out
    }

    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn evaluate(&self, t: &BigRational) -> BigRational {
        self.terms()
            .map(|(e, c)| {
                let tp = if e >= 0 {
                    num_traits::pow(t.clone(), e as usize)
                } else {
                    num_traits::pow(t.recip(), e.unsigned_abs() as usize)
                };
                c * tp
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Coefficients `c_0 .. c_d` of a polynomial; `None` if a negative power
    /// is present.
    fn dense(&self) -> Option<Vec<BigRational>> {
        if self.min_exponent().is_some_and(|e| e < 0) {
            return None;
        }
        let top = self.terms.keys().next_back().copied().unwrap_or(0);
        Some(
            (0..=top)
                .map(|e| self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero))
                .collect(),
        )
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let show = *e == 0 || !mag.is_one();
            if show {
                if mag.is_integer() || *e == 0 {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            let star = if show { "*" } else { "" };
            match *e {
                0 => {}
                1 => write!(f, "{star}t")?,
                e => write!(f, "{star}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// `p^(a s + b) - 1`, which is `(p^b - t^a) / t^a` under `t = p^-s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpFactor {
    pub a: i64,
    pub b: i64,
}

impl ExpFactor {
    pub fn new(a: i64, b: i64) -> Result<Self, ZetaError> {
        if a < 0 || (a == 0 && b == 0) {
            return Err(ZetaError::BadFactor { a, b });
        }
        Ok(ExpFactor { a, b })
    }

    /// `p^b t^-a - 1`.
    pub fn as_laurent(&self, p: u64) -> LaurentPoly {
        LaurentPoly::monomial(p_pow(p, self.b), -self.a).add(&LaurentPoly::constant(-BigRational::one()))
    }

    pub fn render(&self, base: &str) -> String {
        format!("{base}^{{{}}}-1", exponent(self.a, self.b))
    }
}

/// `as+b` in the style `11s+12`, `s+3`, `8s`, `2`.
pub fn exponent(a: i64, b: i64) -> String {
    let s_part = match a {
        0 => String::new(),
        1 => "s".to_string(),
        a => format!("{a}s"),
    };
    match (a, b) {
        (0, b) => b.to_string(),
        (_, 0) => s_part,
        (_, b) if b > 0 => format!("{s_part}+{b}"),
        (_, b) => format!("{s_part}{b}"),
    }
}

/// `numerator / prod (p^(a s + b) - 1)`, the display form of a zeta function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredZeta {
    pub numerator: LaurentPoly,
    /// Sorted multiset.
    pub factors: Vec<ExpFactor>,
}

impl FactoredZeta {
    pub fn new(numerator: LaurentPoly, mut factors: Vec<ExpFactor>) -> Self {
        factors.sort();
        FactoredZeta { numerator, factors }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(LaurentPoly::constant(c), Vec::new())
    }

    pub fn zero() -> Self {
        Self::new(LaurentPoly::zero(), Vec::new())
    }

    pub fn mul(&self, o: &FactoredZeta) -> FactoredZeta {
        let mut factors = self.factors.clone();
        factors.extend(o.factors.iter().copied());
        Self::new(self.numerator.mul(&o.numerator), factors)
    }

    /// Sum over the smallest common multiset of factors.
    pub fn add(&self, o: &FactoredZeta, p: u64) -> FactoredZeta {
        let count = |v: &[ExpFactor]| v.iter().copied().counts();
        let (ca, cb) = (count(&self.factors), count(&o.factors));
        let mut union = Vec::new();
        let mut lift_a = self.numerator.clone();
        let mut lift_b = o.numerator.clone();
        for f in ca.keys().chain(cb.keys()).unique().copied() {
            let (na, nb) = (ca.get(&f).copied().unwrap_or(0), cb.get(&f).copied().unwrap_or(0));
            let m = na.max(nb);
            union.extend(std::iter::repeat_n(f, m));
            for _ in na..m {
                lift_a = lift_a.mul(&f.as_laurent(p));
            }
            for _ in nb..m {
                lift_b = lift_b.mul(&f.as_laurent(p));
            }
        }
        Self::new(lift_a.add(&lift_b), union)
    }

    /// Reduced rational function in `t`. The `t^a` introduced by each factor
    /// must absorb every negative power in the numerator.
    pub fn to_reduced(&self, p: u64) -> Result<RationalFunction, ZetaError> {
        let total_a: i64 = self.factors.iter().map(|f| f.a).sum();
        let shifted = self.numerator.shift(total_a);
        let num = shifted
            .dense()
            .ok_or_else(|| ZetaError::NegativeTPower(shifted.min_exponent().unwrap_or(0)))?;
        let mut den = vec![BigRational::one()];
        for f in &self.factors {
            // (p^b - t^a)
            let mut fac = vec![BigRational::zero(); f.a as usize + 1];
            fac[0] += p_pow(p, f.b);
            fac[f.a as usize] -= BigRational::one();
            den = poly_mul(&den, &fac);
        }
        RationalFunction::from_rationals(&num, &den)
    }

    pub fn evaluate_at(&self, t: &BigRational, p: u64) -> Result<BigRational, ZetaError> {
        let mut d = BigRational::one();
        for f in &self.factors {
            d *= f.as_laurent(p).evaluate(t);
        }
        if d.is_zero() {
            return Err(ZetaError::EvaluationAtPole(t.clone()));
        }
        Ok(self.numerator.evaluate(t) / d)
    }

    pub fn render(&self, base: &str) -> String {
        if self.factors.is_empty() {
            return self.numerator.to_string();
        }
        let den: String = self
            .factors
            .iter()
            .map(|f| format!("({})", f.render(base)))
            .collect();
        format!("({}) / {den}", self.numerator)
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
