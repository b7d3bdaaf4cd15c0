//! The worked two-variable example: rays, cones, counts, the closed form
//! and its consistency with brute-force integration.

mod common;

use common::*;
use igusa_core::counting::count_triple;
use igusa_core::oracle::truncated_integral;
use igusa_core::pipeline::Problem;
use igusa_core::problem::{FSide, Measure};
use num_bigint::BigInt;
use num_rational::BigRational;

#[test]
fn ray_table() {
    let rows = example(13).compute(false).unwrap().ray_rows();
    let got: Vec<_> = rows
        .iter()
        .map(|r| (r.k.clone(), r.m_f, r.m_g, r.sigma, r.pole.clone().unwrap()))
        .collect();
    assert_eq!(
        got,
        vec![
            (vec![1, 0], 2, 1, 1, q(-1, 1)),
            (vec![3, 1], 11, 8, 4, q(-12, 11)),
            (vec![1, 1], 5, 6, 2, q(-8, 5)),
            (vec![1, 2], 7, 8, 3, q(-11, 7)),
            (vec![0, 1], 1, 2, 1, q(-3, 1)),
        ]
    );
}

#[test]
fn cone_table() {
    let c = example(13).compute(false).unwrap();
    let rows = c.cone_rows();
    let dims: Vec<usize> = rows.iter().map(|r| r.dim).collect();
    assert_eq!(dims, vec![0, 1, 2, 1, 2, 1, 2, 1, 2, 1]);
    let s: Vec<String> = rows.iter().map(|r| r.s.render("p")).collect();
    assert_eq!(
        s,
        vec![
            "1",
            "1/(p^{2s+2}-1)",
            "1/((p^{2s+2}-1)(p^{11s+12}-1))",
            "1/(p^{11s+12}-1)",
            "(1 + p^{8s+10})/((p^{11s+12}-1)(p^{5s+8}-1))",
            "1/(p^{5s+8}-1)",
            "1/((p^{5s+8}-1)(p^{7s+11}-1))",
            "1/(p^{7s+11}-1)",
            "1/((p^{7s+11}-1)(p^{s+3}-1))",
            "1/(p^{s+3}-1)",
        ]
    );
    let mults: Vec<Option<u64>> = rows.iter().filter(|r| r.dim == 2).map(|r| r.mult).collect();
    assert_eq!(mults, vec![Some(1), Some(2), Some(1), Some(1)]);
}

#[test]
fn closed_form_at_primes_one_mod_twelve() {
    for p in [13, 37] {
        let z = example(p).compute(false).unwrap();
        assert_eq!(z.zeta().reduced, expected_closed_form(p), "p = {p}");
    }
}

#[test]
fn measure_point_counts() {
    let g = poly(EXAMPLE_G, 2);
    for (p, want) in [(13, 36), (7, 18), (5, 4), (11, 10)] {
        assert_eq!(count_triple(&[], &g, p).unwrap().p, want);
    }
    let r = example(3);
    assert!(!r.check(&r.partition().unwrap()).unwrap().ok());
    for p in [2, 5, 7, 11, 13] {
        let r = example(p);
        assert!(r.check(&r.partition().unwrap()).unwrap().ok(), "p = {p}");
    }
}

#[test]
fn specialization_to_the_measure_integral() {
    for p in [5, 13] {
        let left = example(p)
            .compute(false)
            .unwrap()
            .zeta()
            .evaluate_at(&q(1, 1))
            .unwrap();
        let single = Problem::new(FSide::single(poly(EXAMPLE_G, 2)).unwrap(), Measure::Trivial, p).unwrap();
        let right = single.compute(false).unwrap().zeta().at_s(1).unwrap();
        assert_eq!(left, right, "p = {p}");
    }
}

#[test]
fn brute_force_bracket_at_two() {
    let problem = example(2);
    let z = problem.compute(false).unwrap();
    for (s0, level) in [(1, 8), (2, 7)] {
        let b = truncated_integral(&problem.fside, &problem.measure, 2, s0, level).unwrap();
        let v = z.zeta().at_s(s0).unwrap();
        assert!(b.contains(&v), "s0 = {s0}: {v} not in {b}");
        assert!(b.width() <= BigRational::new(BigInt::from(1), BigInt::from(2).pow(level)));
    }
}
