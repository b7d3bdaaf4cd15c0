//! Exhaustive counting over the torus `(F_p^x)^n` and the non-degeneracy
//! checks.
//!
//! Every congruence condition in the checks depends only on residues mod `p`
//! of points of `(Z_p^x)^n`, so scanning `{1, .., p-1}^n` decides them.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::fan::{ConePartition, FaceLabels};
use crate::linalg;
use crate::newton::NewtonPolyhedron;
use crate::poly::{ModPoly, Polynomial, PolynomialMapping};

/// Largest torus that will be enumerated.
pub const MAX_TORUS_POINTS: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("torus (F_{p}^x)^{n} has more than {MAX_TORUS_POINTS} points")]
    TooLarge { p: u64, n: usize },
    #[error("pair condition needs n >= {needed}, got n = {n}")]
    DimensionPrecondition { needed: usize, n: usize },
}

/// Torus point counts for one cone: `N` where only the f-side vanishes, `P`
/// where only the measure polynomial vanishes, `Q` where both do.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CountTriple {
    pub n: u64,
    pub p: u64,
    pub q: u64,
}

impl CountTriple {
    pub fn total(&self) -> u64 {
        self.n + self.p + self.q
    }
}

impl std::ops::Add for CountTriple {
    type Output = CountTriple;
    fn add(self, o: CountTriple) -> CountTriple {
        CountTriple {
            n: self.n + o.n,
            p: self.p + o.p,
            q: self.q + o.q,
        }
    }
}

fn torus_size(p: u64, n: usize) -> Result<u64, CountError> {
    if !linalg::is_prime(p) {
        return Err(CountError::NotPrime(p));
    }
    let mut size: u64 = 1;
    for _ in 0..n {
        size = size.saturating_mul(p - 1);
        if size > MAX_TORUS_POINTS {
            return Err(CountError::TooLarge { p, n });
        }
    }
    Ok(size)
}

/// Steps `point` to the next torus point in lexicographic order, leaving the
/// first coordinate alone. Returns `false` once coordinates `1..n` wrap.
fn advance(point: &mut [u64], p: u64) -> bool {
    for i in (1..point.len()).rev() {
        if point[i] + 1 < p {
            point[i] += 1;
            return true;
        }
        point[i] = 1;
    }
    false
}

/// Folds over `{1, .., p-1}^n`, split on the first coordinate across
/// threads. Chunk results come back in order of that coordinate.
fn scan<T, F>(p: u64, n: usize, init: impl Fn() -> T + Sync, visit: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut T, &[u64]) + Sync,
{
    (1..p)
        .into_par_iter()
        .map(|a0| {
            let mut acc = init();
            let mut point = vec![1u64; n];
            point[0] = a0;
            loop {
                visit(&mut acc, &point);
                if !advance(&mut point, p) {
                    return acc;
                }
            }
        })
        .collect()
}

fn reduce_all(fs: &[Polynomial], p: u64) -> Vec<ModPoly> {
    fs.iter().map(|f| f.reduce_mod_p(p)).collect()
}

/// `N`, `P`, `Q` over the torus. The f-side vanishes where every component
/// does; an empty f-side never vanishes.
pub fn count_triple(fside: &[Polynomial], g: &Polynomial, p: u64) -> Result<CountTriple, CountError> {
    let n = g.nvars();
    torus_size(p, n)?;
    let fbar = reduce_all(fside, p);
    let gbar = g.reduce_mod_p(p);
    let per_chunk = scan(p, n, CountTriple::default, |c, point| {
        let fz = !fbar.is_empty() && fbar.iter().all(|f| f.eval(point) == 0);
        let gz = gbar.eval(point) == 0;
        match (fz, gz) {
            (true, false) => c.n += 1,
            (false, true) => c.p += 1,
            (true, true) => c.q += 1,
            (false, false) => {}
        }
    });
    Ok(per_chunk.into_iter().fold(CountTriple::default(), |a, b| a + b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    /// The face polynomial and all its partials vanish.
    SingularZero,
    /// Common zero where the Jacobian has too small a rank.
    RankDeficient { rank: usize, expected: usize },
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::SingularZero => write!(f, "singular zero"),
            Condition::RankDeficient { rank, expected } => {
                write!(f, "Jacobian rank {rank}, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Index of the face (in `faces()` order) or of the cone.
    pub id: usize,
    pub label: String,
    pub point: Vec<u64>,
    pub condition: Condition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyReport {
    pub ok: bool,
    pub witnesses: Vec<Witness>,
}

impl DegeneracyReport {
    fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        DegeneracyReport {
            ok: witnesses.is_empty(),
            witnesses,
        }
    }

    pub fn ok() -> Self {
        Self::from_witnesses(Vec::new())
    }

    pub fn merge(mut self, other: DegeneracyReport) -> Self {
        self.witnesses.extend(other.witnesses);
        self.ok = self.witnesses.is_empty();
        self
    }
}

/// Polynomials with their Jacobians over `F_p`.
struct System {
    polys: Vec<ModPoly>,
    jacobian: Vec<Vec<ModPoly>>,
}

impl System {
    fn new(polys: &[Polynomial], p: u64) -> Self {
        let polys = reduce_all(polys, p);
        let jacobian = polys
            .iter()
            .map(|f| (0..f.nvars()).map(|i| f.partial_derivative(i)).collect())
            .collect();
        System { polys, jacobian }
    }

    /// First torus point where the system vanishes and the Jacobian has rank
    /// below `required`, with that rank.
    fn first_bad_point(&self, p: u64, n: usize, required: usize) -> Option<(Vec<u64>, usize)> {
        // Keep the first hit of each chunk; chunks arrive in order.
        let hits = scan(
            p,
            n,
            || None,
            |found: &mut Option<(Vec<u64>, usize)>, a| {
                if found.is_some() || !self.polys.iter().all(|f| f.eval(a) == 0) {
                    return;
                }
                let m: Vec<Vec<u64>> = self
                    .jacobian
                    .iter()
                    .map(|row| row.iter().map(|d| d.eval(a)).collect())
                    .collect();
                let r = linalg::rank_mod_p(m, p);
                if r < required {
                    *found = Some((a.to_vec(), r));
                }
            },
        );
        hits.into_iter().flatten().next()
    }
}

/// For every face `tau` of `Gamma_f`, `f_tau` has no singular zero on the
/// torus.
pub fn check_nondegenerate_single(f: &Polynomial, p: u64) -> Result<DegeneracyReport, CountError> {
    check_faces(std::slice::from_ref(f), p, 1, |_| Condition::SingularZero)
}

/// For every face `tau` of `Gamma_ff`, the Jacobian of `ff_tau` has rank
/// `min(t, n)` at every torus zero.
pub fn check_strong_nondegenerate(ff: &PolynomialMapping, p: u64) -> Result<DegeneracyReport, CountError> {
    let expected = ff.len().min(ff.nvars());
    check_faces(ff.components(), p, expected, |rank| Condition::RankDeficient {
        rank,
        expected,
    })
}

fn check_faces(
    comps: &[Polynomial],
    p: u64,
    required: usize,
    condition: impl Fn(usize) -> Condition,
) -> Result<DegeneracyReport, CountError> {
    let n = comps[0].nvars();
    torus_size(p, n)?;
    let support: Vec<_> = comps.iter().flat_map(Polynomial::support).collect();
    let Ok(gamma) = NewtonPolyhedron::new(n, support) else {
        // The zero polynomial has no faces.
        return Ok(DegeneracyReport::ok());
    };
    let mut witnesses = Vec::new();
    for (id, face) in gamma.faces().iter().enumerate() {
        let restricted: Vec<Polynomial> = comps.iter().map(|f| f.restrict_to(&face.touching)).collect();
        let system = System::new(&restricted, p);
        if let Some((point, rank)) = system.first_bad_point(p, n, required) {
            witnesses.push(Witness {
                id,
                label: face.to_string(),
                point,
                condition: condition(rank),
            });
        }
    }
    Ok(DegeneracyReport::from_witnesses(witnesses))
}

/// Rank over `F_p` of the Jacobian of `polys` at `a`, or `None` unless every
/// polynomial vanishes at `a` mod `p`.
pub fn rank_at_zero(polys: &[Polynomial], a: &[u64], p: u64) -> Option<usize> {
    let system = System::new(polys, p);
    if !system.polys.iter().all(|f| f.eval(a) == 0) {
        return None;
    }
    let m = system
        .jacobian
        .iter()
        .map(|row| row.iter().map(|d| d.eval(a)).collect())
        .collect();
    Some(linalg::rank_mod_p(m, p))
}

/// The conditions on whole polynomials behind the torus integral: at torus
/// zeros the f-side Jacobian has rank `min(t, n)`, the gradient of `g` is
/// nonzero, and at common zeros the stacked Jacobian has rank `t + 1`.
/// An empty `fside` imposes only the condition on `g`.
pub fn check_full_conditions(
    fside: &[Polynomial],
    g: &Polynomial,
    p: u64,
) -> Result<DegeneracyReport, CountError> {
    let n = g.nvars();
    torus_size(p, n)?;
    let t = fside.len();
    let mut both = fside.to_vec();
    both.push(g.clone());
    let mut systems = vec![("measure", System::new(std::slice::from_ref(g), p), 1)];
    if t > 0 {
        systems.push(("f-side", System::new(fside, p), t.min(n)));
        systems.push(("pair", System::new(&both, p), t + 1));
    }
    let mut witnesses = Vec::new();
    for (id, (label, system, required)) in systems.into_iter().enumerate() {
        if let Some((point, rank)) = system.first_bad_point(p, n, required) {
            witnesses.push(Witness {
                id,
                label: label.to_string(),
                point,
                condition: Condition::RankDeficient {
                    rank,
                    expected: required,
                },
            });
        }
    }
    Ok(DegeneracyReport::from_witnesses(witnesses))
}

/// For every cone `delta` of the pair partition, at each common torus zero of
/// `fside_delta` and `g_delta` the stacked Jacobian has rank `t + 1`.
///
/// `fside` holds the polynomial (`t = 1`) or the mapping components; the
/// partition must pair `Gamma_fside` with `Gamma_g`.
pub fn check_pair_nondegenerate(
    fside: &[Polynomial],
    g: &Polynomial,
    partition: &ConePartition,
    p: u64,
) -> Result<DegeneracyReport, CountError> {
    let n = g.nvars();
    let t = fside.len();
    if n < t + 1 {
        return Err(CountError::DimensionPrecondition { needed: t + 1, n });
    }
    torus_size(p, n)?;
    let expected = t + 1;
    let mut witnesses = Vec::new();
    for (id, cone) in partition.cones().iter().enumerate() {
        let FaceLabels::Pair(tau, tau_g) = &cone.labels else {
            continue;
        };
        let mut polys: Vec<Polynomial> = fside.iter().map(|f| f.restrict_to(&tau.touching)).collect();
        polys.push(g.restrict_to(&tau_g.touching));
        let system = System::new(&polys, p);
        if let Some((point, rank)) = system.first_bad_point(p, n, expected) {
            witnesses.push(Witness {
                id,
                label: format!("cone {id}"),
                point,
                condition: Condition::RankDeficient { rank, expected },
            });
        }
    }
    Ok(DegeneracyReport::from_witnesses(witnesses))
}
