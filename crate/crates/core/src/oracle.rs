//! Brute-force p-adic integration by enumerating residues mod `p^M`, with
//! exact rational brackets, plus exact measures of the congruence sets used
//! on single residue cosets.
//!
//! For a positive integer `s0` the integrand `|fside|^s0 |g|` is constant on
//! every class `x + (p^M Z_p)^n` where the orders of `fside` and `g` are
//! already visible mod `p^M`. Those classes are summed exactly. The others
//! only contribute to the upper end, bounded through the order lower bounds
//! seen so far.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::counting::{self, CountError, CountTriple};
use crate::linalg;
use crate::poly::{pow_mod, Polynomial};
use crate::problem::{FSide, Measure};

/// Largest number of residues enumerated by one call.
pub const MAX_RESIDUES: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("enumeration of {count} residues exceeds {MAX_RESIDUES}")]
    TooLarge { count: u128 },
    #[error("truncation level and s0 must both be at least 1")]
    BadLevel,
    #[error("need k >= l >= 1 for a single polynomial, got k = {k}, l = {l}")]
    BadKL { k: u32, l: u32 },
    #[error("base point has {got} coordinates, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Count(#[from] CountError),
}

/// Closed interval `[lo, hi]` of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Bracket {
    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_bracket(&self, inner: &Bracket) -> bool {
        self.lo <= inner.lo && inner.hi <= self.hi
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A polynomial prepared for evaluation modulo a fixed `m`.
struct ModEval {
    terms: Vec<(u128, Vec<u32>)>,
    m: u64,
}

impl ModEval {
    fn new(f: &Polynomial, m: u64) -> Self {
        let big_m = BigInt::from(m);
        let terms = f
            .terms()
            .map(|(e, c)| {
                let c = c.mod_floor(&big_m).to_u128().expect("reduced below modulus");
                (c, e.as_slice().to_vec())
            })
            .collect();
        ModEval { terms, m }
    }

    fn eval(&self, x: &[u64]) -> u64 {
        let m = self.m as u128;
        let mut acc = 0u128;
        for (c, e) in &self.terms {
            let mut term = *c;
            for (&xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    term = term * pow_mod(xi, ei as u64, self.m) as u128 % m;
                }
            }
            acc = (acc + term) % m;
        }
        acc as u64
    }
}

/// An order that is either exact or only known to be at least `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Ord {
    value: u64,
    exact: bool,
}

fn valuation(mut v: u64, p: u64, level: u64) -> Ord {
    if v == 0 {
        return Ord {
            value: level,
            exact: false,
        };
    }
    let mut k = 0;
    while v.is_multiple_of(p) {
        v /= p;
        k += 1;
    }
    Ord {
        value: k,
        exact: true,
    }
}

/// Minimum of orders. It is exact when some exact order attains the minimum
/// of all lower bounds.
fn min_ord(ords: impl Iterator<Item = Ord>) -> Ord {
    let mut best: Option<Ord> = None;
    for o in ords {
        best = Some(match best {
            None => o,
            Some(b) if o.value < b.value || (o.value == b.value && o.exact) => o,
            Some(b) => b,
        });
    }
    best.unwrap_or(Ord {
        value: 0,
        exact: true,
    })
}

enum FSideEval {
    Absent,
    Ideal(Vec<Vec<u32>>),
    Components(Vec<ModEval>),
}

struct Integrand {
    fside: FSideEval,
    g: Option<ModEval>,
    p: u64,
    level: u64,
}

impl Integrand {
    fn ords(&self, x: &[u64]) -> (Ord, Ord) {
        let (p, level) = (self.p, self.level);
        let of = match &self.fside {
            FSideEval::Absent => Ord {
                value: 0,
                exact: true,
            },
            FSideEval::Components(cs) => min_ord(cs.iter().map(|c| valuation(c.eval(x), p, level))),
            FSideEval::Ideal(gens) => {
                let coords: Vec<Ord> = x.iter().map(|&xi| valuation(xi, p, level)).collect();
                min_ord(gens.iter().map(|w| {
                    w.iter().zip(&coords).fold(
                        Ord {
                            value: 0,
                            exact: true,
                        },
                        |acc, (&wi, c)| {
                            if wi == 0 {
                                acc
                            } else {
                                Ord {
                                    value: acc.value + wi as u64 * c.value,
                                    exact: acc.exact && c.exact,
                                }
                            }
                        },
                    )
                }))
            }
        };
        let og = match &self.g {
            None => Ord {
                value: 0,
                exact: true,
            },
            Some(g) => valuation(g.eval(x), p, level),
        };
        (of, og)
    }
}

/// Counts of classes by the exponent `e` in `p^-e`, for both bracket ends.
#[derive(Default)]
struct Tally {
    lo: BTreeMap<u64, u64>,
    hi: BTreeMap<u64, u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (e, c) in other.lo {
            *self.lo.entry(e).or_default() += c;
        }
        for (e, c) in other.hi {
            *self.hi.entry(e).or_default() += c;
        }
        self
    }

    fn into_bracket(self, p: u64) -> Bracket {
        let sum = |map: &BTreeMap<u64, u64>| {
            let Some(&top) = map.keys().next_back() else {
                return BigRational::zero();
            };
            let pb = BigInt::from(p);
            let num = map.iter().fold(BigInt::zero(), |acc, (&e, &c)| {
                acc + BigInt::from(c) * pb.pow((top - e) as u32)
            });
            BigRational::new(num, pb.pow(top as u32))
        };
        Bracket {
            lo: sum(&self.lo),
            hi: sum(&self.hi),
        }
    }
}

fn checked_count(bases: usize, p: u64, digits: u64) -> Result<u128, OracleError> {
    let mut count = bases as u128;
    for _ in 0..digits {
        count = count.saturating_mul(p as u128);
        if count > MAX_RESIDUES {
            return Err(OracleError::TooLarge { count });
        }
    }
    Ok(count)
}

/// Visits every `x = b + p y` with `b` in `bases` and `y` in `[0, p^(level-1))^n`,
/// as residues mod `p^level`. Work is split over `(b, y_0)`.
fn enumerate<T, F>(bases: &[Vec<u64>], p: u64, level: u32, init: impl Fn() -> T + Sync, visit: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut T, &[u64]) + Sync,
{
    let q = p.pow(level - 1);
    let jobs: Vec<(usize, u64)> = (0..bases.len())
        .flat_map(|b| (0..q).map(move |y0| (b, y0)))
        .collect();
    jobs.into_par_iter()
        .map(|(b, y0)| {
            let base = &bases[b];
            let n = base.len();
            let mut acc = init();
            let mut y = vec![0u64; n];
            y[0] = y0;
            let mut x = vec![0u64; n];
            loop {
                for i in 0..n {
                    x[i] = base[i] + p * y[i];
                }
                visit(&mut acc, &x);
                let mut i = n;
                loop {
                    if i == 1 {
                        return acc;
                    }
                    i -= 1;
                    y[i] += 1;
                    if y[i] < q {
                        break;
                    }
                    y[i] = 0;
                }
            }
        })
        .collect()
}

fn bracket_over(
    integrand: &Integrand,
    bases: &[Vec<u64>],
    s0: u32,
    level: u32,
) -> Result<Bracket, OracleError> {
    let p = integrand.p;
    let n = bases.first().map_or(0, Vec::len) as u64;
    checked_count(bases.len(), p, (level as u64 - 1) * n)?;
    let class = level as u64 * n;
    let tallies = enumerate(bases, p, level, Tally::default, |t: &mut Tally, x| {
        let (of, og) = integrand.ords(x);
        let e = class + s0 as u64 * of.value + og.value;
        if of.exact && og.exact {
            *t.lo.entry(e).or_default() += 1;
        }
        *t.hi.entry(e).or_default() += 1;
    });
    Ok(tallies
        .into_iter()
        .fold(Tally::default(), Tally::merge)
        .into_bracket(p))
}

fn check_args(p: u64, s0: u32, level: u32) -> Result<u64, OracleError> {
    if !linalg::is_prime(p) {
        return Err(OracleError::NotPrime(p));
    }
    if s0 == 0 || level == 0 {
        return Err(OracleError::BadLevel);
    }
    p.checked_pow(level)
        .ok_or(OracleError::TooLarge { count: u128::MAX })
}

fn residues(p: u64, n: usize, from: u64) -> Vec<Vec<u64>> {
    let axis: Vec<u64> = (from..p).collect();
    (0..n).map(|_| axis.clone()).fold(vec![Vec::new()], |acc, ax| {
        acc.into_iter()
            .flat_map(|prefix| {
                ax.iter().map(move |&a| {
                    let mut v = prefix.clone();
                    v.push(a);
                    v
                })
            })
            .collect()
    })
}

fn polys_integrand(fside: &[Polynomial], g: &Polynomial, p: u64, level: u32, m: u64) -> Integrand {
    Integrand {
        fside: if fside.is_empty() {
            FSideEval::Absent
        } else {
            FSideEval::Components(fside.iter().map(|f| ModEval::new(f, m)).collect())
        },
        g: Some(ModEval::new(g, m)),
        p,
        level: level as u64,
    }
}

/// Brackets `int_{Z_p^n} |fside|^s0 |g| |dx|` from all residues mod `p^level`.
/// For an ideal, `|I(x)|` is `p^-ord` with `ord` the least generator order.
pub fn truncated_integral(
    fside: &FSide,
    measure: &Measure,
    p: u64,
    s0: u32,
    level: u32,
) -> Result<Bracket, OracleError> {
    let m = check_args(p, s0, level)?;
    let n = fside.nvars();
    let integrand = Integrand {
        fside: match fside {
            FSide::Ideal(i) => {
                FSideEval::Ideal(i.generators().iter().map(|e| e.as_slice().to_vec()).collect())
            }
            _ => FSideEval::Components(fside.components().iter().map(|f| ModEval::new(f, m)).collect()),
        },
        g: match measure {
            Measure::Trivial => None,
            Measure::Poly(g) => Some(ModEval::new(g, m)),
        },
        p,
        level: level as u64,
    };
    bracket_over(&integrand, &residues(p, n, 0), s0, level)
}

/// Which of `fside` and `g` vanish at `a` mod `p`. An empty `fside` never does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CosetCase {
    Neither,
    FSideOnly,
    MeasureOnly,
    Both,
}

impl CosetCase {
    pub const ALL: [CosetCase; 4] = [
        CosetCase::Neither,
        CosetCase::FSideOnly,
        CosetCase::MeasureOnly,
        CosetCase::Both,
    ];
}

fn vanishes(polys: &[Polynomial], a: &[u64], p: u64) -> bool {
    !polys.is_empty() && polys.iter().all(|f| f.reduce_mod_p(p).eval(a) == 0)
}

pub fn coset_case(fside: &[Polynomial], g: &Polynomial, a: &[u64], p: u64) -> CosetCase {
    match (vanishes(fside, a, p), vanishes(std::slice::from_ref(g), a, p)) {
        (false, false) => CosetCase::Neither,
        (true, false) => CosetCase::FSideOnly,
        (false, true) => CosetCase::MeasureOnly,
        (true, true) => CosetCase::Both,
    }
}

/// The rank conditions at `a`: where the f-side vanishes its Jacobian has
/// rank `min(t, n)`, where `g` vanishes its gradient is nonzero, where both
/// vanish the stacked Jacobian has rank `t + 1`.
pub fn check_point_hypotheses(fside: &[Polynomial], g: &Polynomial, a: &[u64], p: u64) -> Result<(), String> {
    let n = g.nvars();
    let t = fside.len();
    let gs = std::slice::from_ref(g);
    let mut both = fside.to_vec();
    both.push(g.clone());
    let mut checks = vec![("measure", gs, 1)];
    if t > 0 {
        checks.push(("f-side", fside, t.min(n)));
        checks.push(("pair", &both[..], t + 1));
    }
    for (label, polys, required) in checks {
        if let Some(rank) = counting::rank_at_zero(polys, a, p) {
            if rank < required {
                return Err(format!(
                    "{label} Jacobian has rank {rank} at {a:?}, expected {required}"
                ));
            }
        }
    }
    Ok(())
}

/// A point of `{1..p-1}^n` (or `{0..p-1}^n` when `torus_only` is false) in
/// the requested case that meets the rank conditions. `None` means the
/// search is vacuous.
pub fn find_base_point(
    fside: &[Polynomial],
    g: &Polynomial,
    p: u64,
    case: CosetCase,
    torus_only: bool,
) -> Option<Vec<u64>> {
    residues(p, g.nvars(), if torus_only { 1 } else { 0 })
        .into_iter()
        .find(|a| coset_case(fside, g, a, p) == case && check_point_hypotheses(fside, g, a, p).is_ok())
}

fn reduce_point(a: &[i64], p: u64) -> Vec<u64> {
    a.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()
}

/// Exact measure of `{x in a + (pZ_p)^n : fside(x) = 0 mod p^k, g(x) = 0 mod p^l}`
/// by counting residues. Requires `fside(a) = g(a) = 0 mod p` with the
/// stacked Jacobian of full rank `t + 1`.
pub fn measure_a_kl(
    fside: &[Polynomial],
    g: &Polynomial,
    a: &[i64],
    p: u64,
    k: u32,
    l: u32,
) -> Result<BigRational, OracleError> {
    if !linalg::is_prime(p) {
        return Err(OracleError::NotPrime(p));
    }
    let n = g.nvars();
    let t = fside.len();
    if a.len() != n {
        return Err(OracleError::ArityMismatch {
            expected: n,
            got: a.len(),
        });
    }
    if l == 0 || k == 0 || (t == 1 && k < l) {
        return Err(OracleError::BadKL { k, l });
    }
    if t == 0 || n < t + 1 {
        return Err(OracleError::Hypothesis(format!(
            "need 1 <= t and n >= t + 1, got t = {t}, n = {n}"
        )));
    }
    let base = reduce_point(a, p);
    let mut all = fside.to_vec();
    all.push(g.clone());
    match counting::rank_at_zero(&all, &base, p) {
        None => {
            return Err(OracleError::Hypothesis(format!(
                "f-side and g do not both vanish at {base:?} mod {p}"
            )))
        }
        Some(r) if r < t + 1 => {
            return Err(OracleError::Hypothesis(format!(
                "Jacobian has rank {r} at {base:?}, expected {}",
                t + 1
            )))
        }
        Some(_) => {}
    }
    let top = k.max(l);
    let m = p
        .checked_pow(top)
        .ok_or(OracleError::TooLarge { count: u128::MAX })?;
    checked_count(1, p, top as u64 * n as u64)?;
    let (mk, ml) = (p.pow(k), p.pow(l));
    let fs: Vec<ModEval> = fside.iter().map(|f| ModEval::new(f, m)).collect();
    let ge = ModEval::new(g, m);
    let counts = enumerate(
        &[base],
        p,
        top,
        || 0u64,
        |c, x| {
            if ge.eval(x).is_multiple_of(ml) && fs.iter().all(|f| f.eval(x) % mk == 0) {
                *c += 1;
            }
        },
    );
    let count: u64 = counts.into_iter().sum();
    Ok(BigRational::new(
        BigInt::from(count),
        BigInt::from(p).pow(top * n as u32),
    ))
}

/// Brackets `int_{a + (pZ_p)^n} ||fside||^s0 |g| |dx|`. An empty `fside`
/// drops the first factor.
pub fn coset_integral(
    a: &[i64],
    fside: &[Polynomial],
    g: &Polynomial,
    p: u64,
    s0: u32,
    level: u32,
) -> Result<Bracket, OracleError> {
    let m = check_args(p, s0, level)?;
    if a.len() != g.nvars() {
        return Err(OracleError::ArityMismatch {
            expected: g.nvars(),
            got: a.len(),
        });
    }
    let base = reduce_point(a, p);
    check_point_hypotheses(fside, g, &base, p).map_err(OracleError::Hypothesis)?;
    bracket_over(&polys_integrand(fside, g, p, level, m), &[base], s0, level)
}

/// Brackets `int_{(Z_p^x)^n} ||fside||^s0 |g| |dx|` after checking the rank
/// conditions at every torus point.
pub fn torus_integral(
    fside: &[Polynomial],
    g: &Polynomial,
    p: u64,
    s0: u32,
    level: u32,
) -> Result<Bracket, OracleError> {
    let m = check_args(p, s0, level)?;
    let report = counting::check_full_conditions(fside, g, p)?;
    if let Some(w) = report.witnesses.first() {
        return Err(OracleError::Hypothesis(format!(
            "{} condition fails at {:?}: {}",
            w.label, w.point, w.condition
        )));
    }
    bracket_over(
        &polys_integrand(fside, g, p, level, m),
        &residues(p, g.nvars(), 1),
        s0,
        level,
    )
}

/// Closed values the brute-force results are compared against.
pub mod closed {
    use super::*;

    fn pq(p: u64, e: i64) -> BigRational {
        let b = BigRational::from_integer(BigInt::from(p));
        if e >= 0 {
            num_traits::pow(b, e as usize)
        } else {
            num_traits::pow(b.recip(), (-e) as usize)
        }
    }

    /// `p^(-n-(k-1)t-l+1)`; at `t = 1` this is `p^(-n-k-l+2)`.
    pub fn lemma_measure(p: u64, n: usize, t: usize, k: u32, l: u32) -> BigRational {
        pq(p, -(n as i64) - (k as i64 - 1) * t as i64 - l as i64 + 1)
    }

    /// Integral over one coset `a + (pZ_p)^n` in each of the four cases.
    pub fn coset_value(p: u64, n: usize, t: usize, s0: u32, case: CosetCase) -> BigRational {
        let base = pq(p, -(n as i64));
        let one = BigRational::one();
        let pt1 = pq(p, t as i64) - &one;
        let pst1 = pq(p, s0 as i64 + t as i64) - &one;
        let pp1 = pq(p, 1) + &one;
        match case {
            CosetCase::Neither => base,
            CosetCase::FSideOnly => base * pt1 / pst1,
            CosetCase::MeasureOnly => base / pp1,
            CosetCase::Both => base * pt1 / (pst1 * pp1),
        }
    }

    /// `p^-n ((p-1)^n - p^t N (p^s-1)/(p^(s+t)-1) - P p/(p+1)
    ///        - p Q (p^(t-1)(p^s(p+1)-1)-1)/((p^(s+t)-1)(p+1)))` at `s = s0`.
    pub fn torus_value(p: u64, n: usize, t: usize, s0: u32, c: &CountTriple) -> BigRational {
        let one = BigRational::one();
        let int = |x: u64| BigRational::from_integer(BigInt::from(x));
        let (pb, ps) = (pq(p, 1), pq(p, s0 as i64));
        let pst1 = pq(p, s0 as i64 + t as i64) - &one;
        let pp1 = &pb + &one;
        let n_term = pq(p, t as i64) * int(c.n) * (&ps - &one) / &pst1;
        let p_term = int(c.p) * &pb / &pp1;
        let tm1 = if t == 0 {
            BigRational::zero()
        } else {
            pq(p, t as i64 - 1)
        };
        let q_term = &pb * int(c.q) * (tm1 * (&ps * &pp1 - &one) - &one) / (&pst1 * &pp1);
        pq(p, -(n as i64)) * (num_traits::pow(int(p - 1), n) - n_term - p_term - q_term)
    }
}

#[cfg(test)]
mod tests {
    use super::closed::*;
    use super::*;
    use crate::poly::{parse_polynomial, MonomialIdeal};

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn polys(texts: &[&str], n: usize) -> Vec<Polynomial> {
        texts.iter().map(|s| parse_polynomial(s, n).unwrap()).collect()
    }

    #[test]
    fn geometric_series_in_one_variable() {
        let f = FSide::single(parse_polynomial("x", 1).unwrap()).unwrap();
        let b = truncated_integral(&f, &Measure::Trivial, 3, 1, 6).unwrap();
        assert!(b.contains(&q(3, 4)), "{b}");
        assert!(b.width() <= q(1, 729));
    }

    #[test]
    fn ideal_orders_from_coordinates() {
        // |xy| over Z_2^2 at s0 = 1 times |xy| measure: (int |x|^2)^2 = ((1/2)/(1-1/8))^2.
        let ideal = MonomialIdeal::new(2, vec![crate::poly::ExponentVector::new(vec![1, 1])]).unwrap();
        let g = Measure::polynomial(parse_polynomial("x*y", 2).unwrap()).unwrap();
        let b = truncated_integral(&FSide::Ideal(ideal), &g, 2, 1, 8).unwrap();
        let one_dim = q(1, 2) / (q(1, 1) - q(1, 8));
        assert!(b.contains(&(&one_dim * &one_dim)), "{b}");
    }

    #[test]
    fn brackets_are_nested() {
        let f = FSide::single(parse_polynomial("x^2 - y^3", 2).unwrap()).unwrap();
        let g = Measure::polynomial(parse_polynomial("x + y", 2).unwrap()).unwrap();
        let mut prev: Option<Bracket> = None;
        for level in 1..=5 {
            let b = truncated_integral(&f, &g, 3, 1, level).unwrap();
            assert!(b.lo <= b.hi);
            if let Some(outer) = prev {
                assert!(outer.contains_bracket(&b), "{outer} vs {b}");
            }
            prev = Some(b);
        }
    }

    #[test]
    fn guards() {
        let f = FSide::single(parse_polynomial("x1", 4).unwrap()).unwrap();
        assert_eq!(
            truncated_integral(&f, &Measure::Trivial, 4, 1, 2),
            Err(OracleError::NotPrime(4))
        );
        assert_eq!(
            truncated_integral(&f, &Measure::Trivial, 2, 0, 2),
            Err(OracleError::BadLevel)
        );
        assert!(matches!(
            truncated_integral(&f, &Measure::Trivial, 5, 1, 4),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn lemma_on_found_base_points() {
        let fg = polys(&["x + y", "x^2 - y"], 2);
        for p in [2, 3, 5] {
            let a = find_base_point(&fg[..1], &fg[1], p, CosetCase::Both, true).expect("non-vacuous");
            let a: Vec<i64> = a.iter().map(|&x| x as i64).collect();
            assert_eq!(
                measure_a_kl(&fg[..1], &fg[1], &a, p, 2, 1).unwrap(),
                lemma_measure(p, 2, 1, 2, 1)
            );
            assert_eq!(
                measure_a_kl(&fg[..1], &fg[1], &a, p, 1, 1).unwrap(),
                q(1, (p * p) as i64)
            );
        }
    }

    #[test]
    fn lemma_hypotheses() {
        let fg = polys(&["x + y", "x^2 - y"], 2);
        assert_eq!(
            measure_a_kl(&fg[..1], &fg[1], &[1, 1], 3, 1, 2),
            Err(OracleError::BadKL { k: 1, l: 2 })
        );
        assert!(matches!(
            measure_a_kl(&fg[..1], &fg[1], &[1, 1], 3, 2, 1),
            Err(OracleError::Hypothesis(_))
        ));
        // (x, y) with g = x + y: no torus point where x = y = 0.
        let ff = polys(&["x", "y", "x + y"], 3);
        assert_eq!(find_base_point(&ff[..2], &ff[2], 5, CosetCase::Both, true), None);
    }

    #[test]
    fn four_cases_on_cosets() {
        let fg = polys(&["x", "y"], 2);
        for p in [2, 3, 5] {
            for case in CosetCase::ALL {
                let a = find_base_point(&fg[..1], &fg[1], p, case, false).unwrap();
                let a: Vec<i64> = a.iter().map(|&x| x as i64).collect();
                let b = coset_integral(&a, &fg[..1], &fg[1], p, 1, 4).unwrap();
                assert!(b.contains(&coset_value(p, 2, 1, 1, case)), "p={p} {case:?} {b}");
                if case == CosetCase::Neither {
                    assert!(b.is_exact());
                }
            }
        }
    }

    #[test]
    fn coset_hypothesis_violation() {
        // x^2 - y^2 is singular at the origin.
        let fg = polys(&["x^2 - y^2", "y"], 2);
        assert!(matches!(
            coset_integral(&[0, 0], &fg[..1], &fg[1], 3, 1, 3),
            Err(OracleError::Hypothesis(_))
        ));
    }

    #[test]
    fn torus_of_the_example_measure() {
        let g = parse_polynomial("x^4*y^2 + x*y^5", 2).unwrap();
        let b = torus_integral(&[], &g, 13, 1, 2).unwrap();
        let want = q(1, 169) * (q(144, 1) - q(36 * 13, 14));
        assert!(b.contains(&want), "{b}");
        let counts = CountTriple { n: 0, p: 36, q: 0 };
        assert_eq!(torus_value(13, 2, 0, 1, &counts), want);
        let trivial = torus_integral(&[], &parse_polynomial("x*y", 2).unwrap(), 5, 1, 1).unwrap();
        assert!(trivial.is_exact());
        assert_eq!(trivial.lo, q(16, 25));
    }

    #[test]
    fn closed_values_agree_with_each_other() {
        // Summing the four cases over the torus gives the torus value.
        let c = CountTriple { n: 3, p: 2, q: 4 };
        for (p, n, t) in [(5u64, 2usize, 1usize), (7, 3, 2)] {
            for s0 in [1, 2] {
                let rest = num_traits::pow(p - 1, n) - c.total();
                let sum = coset_value(p, n, t, s0, CosetCase::Neither) * q(rest as i64, 1)
                    + coset_value(p, n, t, s0, CosetCase::FSideOnly) * q(c.n as i64, 1)
                    + coset_value(p, n, t, s0, CosetCase::MeasureOnly) * q(c.p as i64, 1)
                    + coset_value(p, n, t, s0, CosetCase::Both) * q(c.q as i64, 1);
                assert_eq!(sum, torus_value(p, n, t, s0, &c));
            }
        }
    }
}
