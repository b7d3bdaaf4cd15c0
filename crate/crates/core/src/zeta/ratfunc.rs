use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::intpoly::IntPoly;
use super::ZetaError;

/// `num(t) / den(t)` in canonical form: coprime over `Q`, the gcd of all
/// coefficients of both is 1, and the denominator's leading coefficient is
/// positive. Two rational functions are equal iff their canonical forms are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunction {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, ZetaError> {
        if den.is_zero() {
            return Err(ZetaError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.div_poly_exact(&g), den.div_poly_exact(&g));
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        num = num.div_exact(&c);
        den = den.div_exact(&c);
        Ok(RationalFunction { num, den })
    }

    /// Rational-coefficient numerator and denominator, low degree first.
    pub fn from_rationals(num: &[BigRational], den: &[BigRational]) -> Result<Self, ZetaError> {
        let (n, ln) = IntPoly::from_rationals(num);
        let (d, ld) = IntPoly::from_rationals(den);
        Self::new(n.scale(&ld), d.scale(&ln))
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: IntPoly::zero(),
            den: IntPoly::constant(BigInt::from(1)),
        }
    }

    pub fn constant(c: &BigRational) -> Self {
        Self::new(
            IntPoly::constant(c.numer().clone()),
            IntPoly::constant(c.denom().clone()),
        )
        .expect("nonzero denominator")
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn evaluate_at(&self, t: &BigRational) -> Result<BigRational, ZetaError> {
        let d = self.den.evaluate(t);
        if d.is_zero() {
            return Err(ZetaError::EvaluationAtPole(t.clone()));
        }
        Ok(self.num.evaluate(t) / d)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        let g = self.den.gcd(&o.den);
        let a = self.den.div_poly_exact(&g);
        let b = o.den.div_poly_exact(&g);
        let num = &(&self.num * &b) + &(&o.num * &a);
        let den = &(&a * &b) * &g;
        RationalFunction::new(num, den).expect("nonzero denominator")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominator")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.leading().is_some_and(|c| *c == BigInt::from(1)) {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
