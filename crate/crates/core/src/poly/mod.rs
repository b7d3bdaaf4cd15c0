//! Sparse multivariate polynomials over the integers.
//!
//! Coefficients are arbitrary-precision integers viewed inside `Z_p`. Terms are
//! kept in a `BTreeMap` keyed by exponent vectors under the graded
//! lexicographic order, so iteration and printing are canonical.
//!
//! A polynomial over `Q_p` can always be written as `p^-i * f~` with `f~`
//! integral, and then `Z_f(s) = p^(i*s) * Z_f~(s)`; only the integral part is
//! represented here.

mod modp;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use modp::ModPoly;
pub use parse::{parse_polynomial, ParseError};

/// Largest exponent accepted for a single variable.
pub const MAX_EXPONENT: u32 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("polynomial mapping needs at least one component")]
    EmptyMapping,
    #[error("polynomial mapping has no nonzero component")]
    ZeroMapping,
    #[error("component {0} does not vanish at the origin")]
    NonzeroConstant(usize),
    #[error("monomial ideal needs at least one generator")]
    EmptyIdeal,
    #[error("generator {0} is the unit monomial; the ideal must be proper")]
    UnitGenerator(usize),
    #[error("modulus must be at least 2")]
    BadModulus,
}

/// Exponent vector `(w_1, .., w_n)` of the monomial `x_1^w_1 * .. * x_n^w_n`.
///
/// Ordered by total degree first, then lexicographically with `x_1` most
/// significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Scalar product `k . w` with an integer weight vector.
    pub fn dot(&self, k: &[i64]) -> i64 {
        self.0.iter().zip(k).map(|(&e, &w)| e as i64 * w).sum()
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&e| e as i64).collect()
    }

    /// Componentwise `self >= other`, i.e. `x^other` divides `x^self`.
    pub fn dominates(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    fn checked_add(&self, other: &ExponentVector) -> Option<ExponentVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Sparse polynomial in `nvars` variables with integer coefficients.
///
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(ExponentVector::zero(nvars), c)
    }

    pub fn variable(nvars: usize, var: usize) -> Self {
        Self::monomial(ExponentVector::unit(nvars, var), BigInt::one())
    }

    pub fn monomial(exponent: ExponentVector, coeff: BigInt) -> Self {
        let nvars = exponent.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        Polynomial { nvars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, collecting
    /// repeated exponents.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(PolyError::ArityMismatch {
                    expected: nvars,
                    got: e.len(),
                });
            }
            p.add_term(ExponentVector(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: ExponentVector, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&ExponentVector::zero(self.nvars))
    }

    /// Exponent vectors with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|e| e.0.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var` (0-based).
    pub fn partial_derivative(&self, var: usize) -> Result<Self, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::VariableOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let d = e.0[var];
            if d == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne.0[var] -= 1;
            out.add_term(ne, c * BigInt::from(d));
        }
        Ok(out)
    }

    /// Keeps exactly the terms whose exponent vector is in `keep`.
    pub fn restrict_to<'a, I>(&self, keep: I) -> Self
    where
        I: IntoIterator<Item = &'a ExponentVector>,
    {
        let mut out = Polynomial::zero(self.nvars);
        for e in keep {
            if let Some(c) = self.terms.get(e) {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Reduces every coefficient into `{0, .., p-1}` and drops the ones that
    /// vanish.
    pub fn reduce_mod_p(&self, p: u64) -> ModPoly {
        ModPoly::from_polynomial(self, p)
    }

    /// `f(a) mod modulus`, with all intermediate values kept below the
    /// modulus.
    pub fn evaluate_mod(&self, point: &[i64], modulus: u64) -> Result<u64, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        if modulus < 2 {
            return Err(PolyError::BadModulus);
        }
        let m = BigInt::from(modulus);
        let residues: Vec<u64> = point
            .iter()
            .map(|&a| a.rem_euclid(modulus as i64) as u64)
            .collect();
        let mut acc: u128 = 0;
        for (e, c) in &self.terms {
            let c = c.mod_floor(&m).to_u64().expect("reduced below modulus") as u128;
            let mut term = c;
            for (&a, &k) in residues.iter().zip(&e.0) {
                term = term * pow_mod(a, k as u64, modulus) as u128 % modulus as u128;
            }
            acc = (acc + term) % modulus as u128;
        }
        Ok(acc as u64)
    }

    pub(crate) fn checked_mul(&self, other: &Self) -> Option<Self> {
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.checked_add(eb)?, ca * cb);
            }
        }
        Some(out)
    }
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc: u128 = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("exponent overflow in product")
    }
}

/// Name of variable `var` when printing a polynomial in `nvars` variables.
pub fn variable_name(nvars: usize, var: usize) -> String {
    if nvars <= 3 {
        ["x", "y", "z"][var].to_string()
    } else {
        format!("x{}", var + 1)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, nvars: usize, e: &ExponentVector) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.0.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", variable_name(nvars, i))?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    /// Descending graded lexicographic order, e.g. `4*x^3*y^2 + y^5 - 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, self.nvars, e)?;
            }
        }
        Ok(())
    }
}

/// Ordered list of `t >= 1` polynomials in a shared set of variables, each
/// vanishing at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialMapping {
    components: Vec<Polynomial>,
}

impl PolynomialMapping {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, PolyError> {
        let first = components.first().ok_or(PolyError::EmptyMapping)?;
        let n = first.nvars();
        for (i, c) in components.iter().enumerate() {
            if c.nvars() != n {
                return Err(PolyError::ArityMismatch {
                    expected: n,
                    got: c.nvars(),
                });
            }
            if !c.constant_term().is_zero() {
                return Err(PolyError::NonzeroConstant(i));
            }
        }
        if components.iter().all(Polynomial::is_zero) {
            return Err(PolyError::ZeroMapping);
        }
        Ok(PolynomialMapping { components })
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.components[0].nvars()
    }

    /// Union of the component supports.
    pub fn support(&self) -> Vec<ExponentVector> {
        let mut s: Vec<_> = self.components.iter().flat_map(|c| c.support()).collect();
        s.sort();
        s.dedup();
        s
    }
}

/// Monomial ideal given by monic monomial generators; redundant generators are
/// allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, generators: Vec<ExponentVector>) -> Result<Self, PolyError> {
        if generators.is_empty() {
            return Err(PolyError::EmptyIdeal);
        }
        for (i, g) in generators.iter().enumerate() {
            if g.len() != nvars {
                return Err(PolyError::ArityMismatch {
                    expected: nvars,
                    got: g.len(),
                });
            }
            if g.is_zero() {
                return Err(PolyError::UnitGenerator(i));
            }
        }
        Ok(MonomialIdeal { nvars, generators })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// The generators as monomial polynomials `x^w`.
    pub fn as_polynomials(&self) -> Vec<Polynomial> {
        self.generators
            .iter()
            .map(|g| Polynomial::monomial(g.clone(), BigInt::one()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn derivatives_of_example_measure() {
        let g = poly("x^4*y^2 + x*y^5", 2);
        assert_eq!(g.partial_derivative(0).unwrap(), poly("4*x^3*y^2 + y^5", 2));
        assert_eq!(g.partial_derivative(1).unwrap(), poly("2*x^4*y + 5*x*y^4", 2));
        assert!(poly("y^3", 2).partial_derivative(0).unwrap().is_zero());
        assert!(matches!(
            g.partial_derivative(2),
            Err(PolyError::VariableOutOfRange { index: 2, nvars: 2 })
        ));
    }

    #[test]
    fn evaluate_mod_examples() {
        assert_eq!(poly("x^5*y", 2).evaluate_mod(&[1, 1], 7).unwrap(), 1);
        let g = poly("x^4*y^2 + x*y^5", 2);
        assert_eq!(g.evaluate_mod(&[1, 1], 3).unwrap(), 2);
        // 16 + 2 = 18 = 3 mod 5
        assert_eq!(g.evaluate_mod(&[2, 1], 5).unwrap(), 3);
        assert_eq!(poly("x - 3", 1).evaluate_mod(&[1], 7).unwrap(), 5);
        assert_eq!(poly("x", 1).evaluate_mod(&[-1], 7).unwrap(), 6);
    }

    #[test]
    fn grlex_order_prints_highest_first() {
        let f = poly("1 + y + x + x*y + y^2", 2);
        assert_eq!(f.to_string(), "x*y + y^2 + x + y + 1");
        assert_eq!(poly("-x + 2*x^2 - 7", 1).to_string(), "2*x^2 - x - 7");
        assert_eq!(poly("x1*x4^3", 4).to_string(), "x1*x4^3");
    }

    #[test]
    fn restriction_keeps_listed_terms() {
        let g = poly("x^4*y^2 + x*y^5", 2);
        let v = ExponentVector::new(vec![4, 2]);
        assert_eq!(g.restrict_to([&v]), poly("x^4*y^2", 2));
        assert_eq!(g.restrict_to(g.support().iter()), g);
    }

    #[test]
    fn mapping_and_ideal_validation() {
        let x = poly("x", 2);
        assert!(PolynomialMapping::new(vec![]).is_err());
        assert_eq!(
            PolynomialMapping::new(vec![poly("x + 1", 2)]),
            Err(PolyError::NonzeroConstant(0))
        );
        assert_eq!(
            PolynomialMapping::new(vec![Polynomial::zero(2)]),
            Err(PolyError::ZeroMapping)
        );
        let m = PolynomialMapping::new(vec![x.clone(), poly("x + y^2", 2)]).unwrap();
        assert_eq!(m.support().len(), 2);
        assert_eq!(
            MonomialIdeal::new(2, vec![ExponentVector::zero(2)]),
            Err(PolyError::UnitGenerator(0))
        );
        assert_eq!(MonomialIdeal::new(2, vec![]), Err(PolyError::EmptyIdeal));
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f = poly("x - 2*y + 1", 2);
        let mut acc = Polynomial::one(2);
        for _ in 0..5 {
            acc = &acc * &f;
        }
        assert_eq!(f.pow(5), acc);
    }
}
