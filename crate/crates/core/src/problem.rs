//! The integrand `|fside|^s |g|`: a monomial ideal, a polynomial or a
//! polynomial mapping, together with the measure polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::newton::NewtonPolyhedron;
use crate::poly::{MonomialIdeal, PolyError, Polynomial, PolynomialMapping};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Ideal,
    Single,
    Mapping,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Ideal => "ideal",
            Mode::Single => "single",
            Mode::Mapping => "mapping",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FSide {
    Ideal(MonomialIdeal),
    Single(Polynomial),
    Mapping(PolynomialMapping),
}

impl FSide {
    /// A single polynomial; it must be nonzero and vanish at the origin.
    pub fn single(f: Polynomial) -> Result<FSide, PolyError> {
        if f.is_zero() {
            return Err(PolyError::ZeroMapping);
        }
        if !f.constant_term().is_zero() {
            return Err(PolyError::NonzeroConstant(0));
        }
        Ok(FSide::Single(f))
    }

    pub fn mode(&self) -> Mode {
        match self {
            FSide::Ideal(_) => Mode::Ideal,
            FSide::Single(_) => Mode::Single,
            FSide::Mapping(_) => Mode::Mapping,
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            FSide::Ideal(i) => i.nvars(),
            FSide::Single(f) => f.nvars(),
            FSide::Mapping(ff) => ff.nvars(),
        }
    }

    /// Generators (as monic monomials), the polynomial, or the components.
    /// The f-side vanishes at a point iff all of these do.
    pub fn components(&self) -> Vec<Polynomial> {
        match self {
            FSide::Ideal(i) => i.as_polynomials(),
            FSide::Single(f) => vec![f.clone()],
            FSide::Mapping(ff) => ff.components().to_vec(),
        }
    }

    /// Number of mapping components `t`; 1 for a single polynomial.
    pub fn t_count(&self) -> usize {
        match self {
            FSide::Mapping(ff) => ff.len(),
            _ => 1,
        }
    }

    pub fn polyhedron(&self) -> NewtonPolyhedron {
        let built = match self {
            FSide::Ideal(i) => NewtonPolyhedron::of_ideal(i),
            FSide::Single(f) => NewtonPolyhedron::of_polynomial(f),
            FSide::Mapping(ff) => NewtonPolyhedron::of_mapping(ff),
        };
        built.expect("validated f-side has nonempty support")
    }
}

/// The measure `|g||dx|`; `Trivial` is `g = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Measure {
    Trivial,
    Poly(Polynomial),
}

impl Measure {
    /// A measure polynomial must be nonzero and vanish at the origin.
    pub fn polynomial(g: Polynomial) -> Result<Measure, PolyError> {
        if g.is_zero() {
            return Err(PolyError::ZeroMapping);
        }
        if !g.constant_term().is_zero() {
            return Err(PolyError::NonzeroConstant(0));
        }
        Ok(Measure::Poly(g))
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Measure::Trivial)
    }

    /// `g` itself, with the trivial measure as the constant 1.
    pub fn as_polynomial(&self, nvars: usize) -> Polynomial {
        match self {
            Measure::Trivial => Polynomial::constant(nvars, BigInt::from(1)),
            Measure::Poly(g) => g.clone(),
        }
    }

    /// `Gamma_g`; the orthant for the trivial measure.
    pub fn polyhedron(&self, nvars: usize) -> NewtonPolyhedron {
        match self {
            Measure::Trivial => NewtonPolyhedron::orthant(nvars),
            Measure::Poly(g) => NewtonPolyhedron::of_polynomial(g).expect("nonzero measure"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    #[test]
    fn validation() {
        let p = |s| parse_polynomial(s, 2).unwrap();
        assert!(FSide::single(p("x + y")).is_ok());
        assert_eq!(FSide::single(p("x + 1")), Err(PolyError::NonzeroConstant(0)));
        assert_eq!(FSide::single(p("0")), Err(PolyError::ZeroMapping));
        assert!(Measure::polynomial(p("x*y")).is_ok());
        assert!(Measure::polynomial(p("x*y - 2")).is_err());
        assert_eq!(Measure::Trivial.as_polynomial(2).to_string(), "1");
        assert_eq!(Measure::Trivial.polyhedron(2).facet_normals().len(), 2);
    }
}
