//! Shared fixtures for the integration tests and the acceptance runner.
#![allow(dead_code)]

use igusa_core::pipeline::Problem;
use igusa_core::poly::{parse_polynomial, ExponentVector, MonomialIdeal, Polynomial};
use igusa_core::problem::{FSide, Measure};
use igusa_core::zeta::{IntPoly, RationalFunction};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub const EXAMPLE_G: &str = "x^4*y^2 + x*y^5";

pub fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub fn poly(text: &str, n: usize) -> Polynomial {
    parse_polynomial(text, n).unwrap()
}

pub fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(n, gens.iter().map(|g| ExponentVector::new(g.to_vec())).collect()).unwrap()
}

pub fn example_ideal() -> MonomialIdeal {
    ideal(2, &[&[5, 1], &[3, 2], &[2, 5]])
}

pub fn example(p: u64) -> Problem {
    let g = Measure::polynomial(poly(EXAMPLE_G, 2)).unwrap();
    Problem::new(FSide::Ideal(example_ideal()), g, p).unwrap()
}

/// `(xy, yz, xz)` with measure `x + y + z^2`; the vertex `(1,1,0)` lies on
/// four facets, so its cone is not simplicial.
pub fn three_variable_example(p: u64) -> Problem {
    Problem::new(
        FSide::Ideal(ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])),
        Measure::polynomial(poly("x + y + z^2", 3)).unwrap(),
        p,
    )
    .unwrap()
}

/// Coefficients of `A(p, t)` as `(t exponent, [(coefficient, p exponent)])`,
/// in the closed form of the worked example.
const A_TERMS: &[(usize, &[(i64, u32)])] = &[
    (21, &[(-1, 2), (-3, 1), (1, 0)]),
    (20, &[(1, 5), (3, 4), (-1, 3)]),
    (19, &[(-1, 5), (1, 4), (4, 3), (-1, 2)]),
    (18, &[(-1, 7), (-3, 6), (1, 5), (-1, 4), (1, 2)]),
    (17, &[(2, 7), (-2, 5)]),
    (16, &[(1, 6), (-1, 4)]),
    (15, &[(-1, 9), (1, 7), (-1, 6), (1, 4)]),
    (14, &[(1, 13), (3, 12), (-1, 11), (1, 9), (-1, 7)]),
    (13, &[(-3, 15)]),
    (12, &[(-1, 15), (-3, 14), (1, 13)]),
    (11, &[(3, 17), (1, 15), (-1, 13)]),
    (10, &[(-1, 18), (1, 16), (1, 14), (3, 13), (-1, 12)]),
    (9, &[(-2, 17), (-3, 16), (2, 15)]),
    (8, &[(1, 20), (-1, 18), (2, 17), (-5, 15)]),
    (7, &[(-1, 20), (4, 18)]),
    (6, &[(-1, 19), (1, 17)]),
    (3, &[(-1, 25), (-3, 24), (1, 23)]),
    (2, &[(3, 27)]),
    (1, &[(3, 26)]),
    (0, &[(1, 30), (-3, 29), (-1, 28)]),
];

fn ip(terms: &[(BigInt, usize)]) -> IntPoly {
    terms.iter().fold(IntPoly::zero(), |acc, (c, e)| {
        &acc + &IntPoly::monomial(c.clone(), *e)
    })
}

/// `p^b - t^a`.
fn binomial(p: &BigInt, b: u32, a: usize) -> IntPoly {
    ip(&[(p.pow(b), 0), (BigInt::from(-1), a)])
}

/// `p^6 (p-1) A(p,t) / ((p+1)(p^2-t^2)(p^12-t^11)(p^8-t^5)(p^11-t^7)(p^3-t))`
/// at a numeric prime.
pub fn expected_closed_form(p: u64) -> RationalFunction {
    let pb = BigInt::from(p);
    let a = ip(&A_TERMS
        .iter()
        .map(|(e, cs)| (cs.iter().map(|&(c, k)| BigInt::from(c) * pb.pow(k)).sum(), *e))
        .collect::<Vec<_>>());
    let num = a.scale(&(pb.pow(6) * (&pb - 1)));
    let den = [(2, 2), (12, 11), (8, 5), (11, 7), (3, 1)]
        .iter()
        .fold(IntPoly::constant(&pb + 1), |acc, &(b, e)| {
            &acc * &binomial(&pb, b, e)
        });
    RationalFunction::new(num, den).unwrap()
}

/// `sum_{k in N^n, sigma(k) <= b} p^-sigma(k)`; together with `(p/(p-1))^n`
/// this gives an exact tail bound for lattice sums whose exponent is at
/// least `sigma(k)`.
pub fn tail_bound(p: u64, n: usize, b: usize) -> BigRational {
    let pr = BigRational::from_integer(BigInt::from(p));
    let full = num_traits::pow(&pr / (&pr - BigRational::from_integer(1.into())), n);
    // Number of k with sigma(k) = j is C(j+n-1, n-1).
    let mut partial = BigRational::from_integer(0.into());
    for j in 0..=b {
        let mut c = BigInt::from(1);
        for i in 1..n {
            c = c * BigInt::from(j + i) / BigInt::from(i);
        }
        partial += BigRational::new(c, BigInt::from(p).pow(j as u32));
    }
    full - partial
}

/// All `k` in `N^n` with coordinate sum at most `b`.
pub fn lattice_points(n: usize, b: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=b {
        for mut rest in lattice_points(n - 1, b - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub const SERIES_BOUND: i64 = 40;

fn p_pow_neg(p: u64, e: i64) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(p).pow(e as u32))
}

/// Every cone's `S` against the partial series over its lattice points.
pub fn check_series(problem: &Problem, s0: u32) {
    let p = problem.p;
    let c = problem.compute(true).unwrap();
    let n = problem.nvars();
    let [gf, gg] = c.partition.polyhedra() else {
        panic!()
    };
    let t = p_pow_neg(p, s0 as i64);
    let mut partial = vec![BigRational::zero(); c.partition.cones().len()];
    for k in lattice_points(n, SERIES_BOUND) {
        let e = gf.m_value(&k).unwrap() * s0 as i64 + gg.m_value(&k).unwrap() + k.iter().sum::<i64>();
        partial[c.partition.classify(&k).unwrap()] += p_pow_neg(p, e);
    }
    let tail = tail_bound(p, n, SERIES_BOUND as usize);
    for (i, cone) in c.assembly.cones.iter().enumerate() {
        let exact = cone.s.to_factored(p).evaluate_at(&t, p).unwrap();
        let gap = &exact - &partial[i];
        assert!(
            gap >= BigRational::zero() && gap <= tail,
            "cone {i}, p = {p}, s0 = {s0}"
        );
    }
}

pub mod instances;
