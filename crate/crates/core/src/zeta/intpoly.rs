//! Dense univariate polynomials over `Z` in the variable `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients from the constant term up; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^e`.
    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_exact(&self, c: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        )
    }

    /// Divided by its content, leading coefficient made positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_exact(&c)
    }

    /// `lc(b)^(deg a - deg b + 1) * a mod b`, computed over `Z`.
    fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.leading().expect("nonzero").clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().expect("nonzero").clone();
            let shift = IntPoly::monomial(lr, dr - db);
            r = &r.scale(&lb) - &(&shift * b);
        }
        r
    }

    /// Primitive gcd with positive leading coefficient (the gcd over `Q`,
    /// up to a unit). The gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// `self / d` when `d` divides `self` over `Q` and the quotient is
    /// integral (true whenever `d` is primitive).
    pub fn div_poly_exact(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let ld = d.leading().expect("nonzero").clone();
        let mut r = self.clone();
        let Some(dr) = r.degree() else {
            return IntPoly::zero();
        };
        if dr < dd {
            debug_assert!(r.is_zero(), "inexact division");
            return IntPoly::zero();
        }
        let mut q = vec![BigInt::zero(); dr - dd + 1];
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let (c, rem) = r.leading().expect("nonzero").div_rem(&ld);
            assert!(rem.is_zero(), "quotient is not integral");
            q[dr - dd] = c.clone();
            r = &r - &(&IntPoly::monomial(c, dr - dd) * d);
        }
        assert!(r.is_zero(), "inexact division");
        IntPoly::new(q)
    }

    pub fn evaluate(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * t + BigRational::from_integer(c.clone())
        })
    }

    /// Polynomial with rational coefficients scaled to integers: returns the
    /// integer polynomial and the common denominator used.
    pub fn from_rationals(coeffs: &[BigRational]) -> (IntPoly, BigInt) {
        let l = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        (IntPoly::new(ints), l)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_default()
                        + o.coeffs.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        self + &(-o)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let show_coeff = e == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{e}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ip(v: &[i64]) -> IntPoly {
        IntPoly::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn gcd_examples() {
        // (t - 1)(t + 2) and (t - 1)(2t + 3)
        let a = &ip(&[-1, 1]) * &ip(&[2, 1]);
        let b = &ip(&[-1, 1]) * &ip(&[3, 2]);
        assert_eq!(a.gcd(&b), ip(&[-1, 1]));
        assert_eq!(ip(&[4, 6]).gcd(&ip(&[0])), ip(&[2, 3]));
        assert_eq!(ip(&[2]).gcd(&ip(&[3, 1])), ip(&[1]));
        assert_eq!(ip(&[-2, -4]).primitive_part(), ip(&[1, 2]));
    }

    #[test]
    fn display() {
        assert_eq!(ip(&[-7, 0, 1, -2]).to_string(), "-2*t^3 + t^2 - 7");
        assert_eq!(ip(&[0, 1]).to_string(), "t");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    fn arb() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(|v| ip(&v))
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in arb(), b in arb(), c in arb()) {
            prop_assume!(!c.is_zero());
            let (ac, bc) = (&a * &c, &b * &c);
            let g = ac.gcd(&bc);
            if !ac.is_zero() || !bc.is_zero() {
                prop_assert_eq!(&ac.scale(&g.leading().unwrap().pow(8)).div_poly_exact(&g) * &g, ac.scale(&g.leading().unwrap().pow(8)));
                // c divides the gcd over Q.
                prop_assert!(g.degree() >= c.degree());
                let cp = c.primitive_part();
                let scaled = g.scale(&cp.leading().unwrap().pow(8));
                prop_assert_eq!(&scaled.div_poly_exact(&cp) * &cp, scaled);
            }
        }

        #[test]
        fn ring_laws(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &a), &IntPoly::zero());
            let t = BigRational::new(BigInt::from(3), BigInt::from(7));
            prop_assert_eq!((&a * &b).evaluate(&t), a.evaluate(&t) * b.evaluate(&t));
        }
    }
}
