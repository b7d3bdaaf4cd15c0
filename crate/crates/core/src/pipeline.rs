//! End to end: hypothesis checks, the pair partition, torus counts per cone
//! and the assembled zeta function, plus the per-ray and per-cone tables.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::counting::{self, CountError, CountTriple, DegeneracyReport};
use crate::fan::{partition_pair, ConePartition, FanError, SimplicialPiece};
use crate::newton::GeometryError;
use crate::poly::Polynomial;
use crate::problem::{FSide, Measure, Mode};
use crate::zeta::{
    assemble, candidate_poles, Assembly, CandidatePole, FactoredZeta, SDelta, ZetaError, ZetaRational,
};

/// Attached to results computed although a non-degeneracy check failed.
pub const UNVERIFIED: &str = "unverified hypothesis";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("measure has {got} variables, f-side has {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("{mode} mode with t = {t} needs n >= {needed}, got n = {n}")]
    Dimension {
        mode: Mode,
        t: usize,
        needed: usize,
        n: usize,
    },
    #[error("non-degeneracy fails at p = {}: {}", .0.p, .0.summary())]
    Degenerate(Box<CheckReport>),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckItem {
    pub name: &'static str,
    pub report: DegeneracyReport,
}

/// Outcome of every non-degeneracy condition the formula for this problem
/// relies on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub p: u64,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.items.iter().all(|i| i.report.ok)
    }

    pub fn summary(&self) -> String {
        let failed: Vec<String> = self
            .items
            .iter()
            .filter(|i| !i.report.ok)
            .map(|i| format!("{} ({} witnesses)", i.name, i.report.witnesses.len()))
            .collect();
        if failed.is_empty() {
            "all checks pass".to_string()
        } else {
            failed.join(", ")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub fside: FSide,
    pub measure: Measure,
    pub p: u64,
}

impl Problem {
    /// Checks arities and the dimension floor of the mode. With a nontrivial
    /// measure a single polynomial or a mapping needs `n >= t + 1`; with the
    /// trivial measure a mapping needs `n >= t`.
    pub fn new(fside: FSide, measure: Measure, p: u64) -> Result<Self, PipelineError> {
        let n = fside.nvars();
        if let Measure::Poly(g) = &measure {
            if g.nvars() != n {
                return Err(PipelineError::ArityMismatch {
                    expected: n,
                    got: g.nvars(),
                });
            }
        }
        let t = fside.t_count();
        let needed = match (fside.mode(), measure.is_trivial()) {
            (Mode::Ideal, _) => 1,
            (_, false) => t + 1,
            (Mode::Mapping, true) => t,
            (Mode::Single, true) => 1,
        };
        if n < needed {
            return Err(PipelineError::Dimension {
                mode: fside.mode(),
                t,
                needed,
                n,
            });
        }
        Ok(Problem { fside, measure, p })
    }

    pub fn nvars(&self) -> usize {
        self.fside.nvars()
    }

    pub fn mode(&self) -> Mode {
        self.fside.mode()
    }

    pub fn g(&self) -> Polynomial {
        self.measure.as_polynomial(self.nvars())
    }

    /// The same problem at another prime.
    pub fn at_prime(&self, p: u64) -> Problem {
        Problem { p, ..self.clone() }
    }

    pub fn partition(&self) -> Result<ConePartition, PipelineError> {
        let n = self.nvars();
        Ok(partition_pair(
            &self.fside.polyhedron(),
            &self.measure.polyhedron(n),
        )?)
    }

    pub fn check(&self, partition: &ConePartition) -> Result<CheckReport, PipelineError> {
        let p = self.p;
        let mut items = Vec::new();
        let mut push = |name, report| items.push(CheckItem { name, report });
        match &self.fside {
            FSide::Ideal(_) => {}
            FSide::Single(f) => push("f faces", counting::check_nondegenerate_single(f, p)?),
            FSide::Mapping(ff) => push(
                "f-side faces (strong)",
                counting::check_strong_nondegenerate(ff, p)?,
            ),
        }
        if let Measure::Poly(g) = &self.measure {
            push("measure faces", counting::check_nondegenerate_single(g, p)?);
            if self.mode() != Mode::Ideal {
                push(
                    "pair cones",
                    counting::check_pair_nondegenerate(&self.fside.components(), g, partition, p)?,
                );
            }
        }
        Ok(CheckReport { p, items })
    }

    /// `(N, P, Q)` for every cone from the face restrictions of its labels.
    pub fn counts(&self, partition: &ConePartition) -> Result<Vec<CountTriple>, PipelineError> {
        let comps = self.fside.components();
        let g = self.g();
        partition
            .cones()
            .iter()
            .map(|cone| {
                let faces = cone.labels.faces();
                let (tau, tau_g) = (faces[0], faces[faces.len() - 1]);
                let restricted: Vec<Polynomial> =
                    comps.iter().map(|f| f.restrict_to(&tau.touching)).collect();
                Ok(counting::count_triple(
                    &restricted,
                    &g.restrict_to(&tau_g.touching),
                    self.p,
                )?)
            })
            .collect()
    }

    /// Runs the checks and assembles `Z`. A failed check is an error unless
    /// `override_degenerate` is set, in which case the result is watermarked.
    pub fn compute(&self, override_degenerate: bool) -> Result<Computation, PipelineError> {
        let partition = self.partition()?;
        let checks = self.check(&partition)?;
        let watermark = match (checks.ok(), override_degenerate) {
            (true, _) => None,
            (false, true) => Some(UNVERIFIED),
            (false, false) => return Err(PipelineError::Degenerate(Box::new(checks))),
        };
        let counts = self.counts(&partition)?;
        let t = self.fside.t_count();
        let assembly = assemble(self.mode(), &partition, &counts, self.p, t)?;
        let (poles, mut notes) = candidate_poles(&partition, self.mode(), t);
        if let Some(w) = watermark {
            notes.push(format!(
                "{w}: computed despite failed checks ({})",
                checks.summary()
            ));
        }
        Ok(Computation {
            problem: self.clone(),
            partition,
            assembly,
            poles,
            notes,
            checks,
            watermark,
        })
    }
}

/// One row per primitive ray generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayRow {
    pub k: Vec<i64>,
    pub m_f: i64,
    pub m_g: i64,
    pub sigma: i64,
    /// `-(m_g + sigma) / m_f`, absent when `m_f = 0`.
    pub pole: Option<BigRational>,
}

/// One row per cone: dimension, generators, multiplicity, counts, `L`, `S`.
#[derive(Debug, Clone)]
pub struct ConeRow {
    pub index: usize,
    pub dim: usize,
    pub generators: Vec<Vec<i64>>,
    /// Multiplicity of the cone when it is simplicial.
    pub mult: Option<u64>,
    pub pieces: Vec<SimplicialPiece>,
    pub counts: CountTriple,
    pub l: FactoredZeta,
    pub s: SDelta,
}

#[derive(Debug, Clone)]
pub struct Computation {
    pub problem: Problem,
    pub partition: ConePartition,
    pub assembly: Assembly,
    pub poles: Vec<CandidatePole>,
    pub notes: Vec<String>,
    pub checks: CheckReport,
    pub watermark: Option<&'static str>,
}

impl Computation {
    pub fn zeta(&self) -> &ZetaRational {
        &self.assembly.zeta
    }

    pub fn ray_rows(&self) -> Vec<RayRow> {
        ray_rows(&self.partition)
    }

    pub fn cone_rows(&self) -> Vec<ConeRow> {
        self.partition
            .cones()
            .iter()
            .zip(&self.assembly.cones)
            .enumerate()
            .map(|(index, (cone, c))| ConeRow {
                index,
                dim: cone.dim,
                generators: cone.rays.clone(),
                mult: match c.pieces.as_slice() {
                    [only] if cone.is_simplicial() => Some(only.mult),
                    _ => None,
                },
                pieces: c.pieces.clone(),
                counts: c.counts,
                l: c.l.clone(),
                s: c.s.clone(),
            })
            .collect()
    }
}

/// `m_f`, `m_g`, `sigma` and the candidate pole of every ray of a pair
/// partition.
pub fn ray_rows(partition: &ConePartition) -> Vec<RayRow> {
    let [gf, gg] = partition.polyhedra() else {
        return Vec::new();
    };
    partition
        .rays()
        .iter()
        .map(|k| {
            let m_f = gf.m_unchecked(k);
            let m_g = gg.m_unchecked(k);
            let sigma = k.iter().sum();
            RayRow {
                k: k.clone(),
                m_f,
                m_g,
                sigma,
                pole: (m_f != 0).then(|| BigRational::new(BigInt::from(-(m_g + sigma)), BigInt::from(m_f))),
            }
        })
        .collect()
}
