//! Exact assembly of `Z(s) = sum_delta L_delta S_delta` as a rational
//! function of `t = p^-s` for a fixed prime `p`.

mod factored;
mod formulas;
mod intpoly;
mod ratfunc;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

pub use factored::{exponent, ExpFactor, FactoredZeta, LaurentPoly};
pub use formulas::{l_delta_ideal, l_delta_mapping, l_delta_single, s_delta, SDelta, SPiece};
pub use intpoly::IntPoly;
pub use ratfunc::RationalFunction;

use crate::counting::CountTriple;
use crate::fan::{simplicial_decompose, ConePartition, PartitionKind, SimplicialPiece};
use crate::problem::Mode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("evaluation at a pole, t = {0}")]
    EvaluationAtPole(BigRational),
    #[error("internal consistency: t^{0} survives after clearing denominators")]
    NegativeTPower(i64),
    #[error("invalid exponent factor p^({a}s+{b}) - 1")]
    BadFactor { a: i64, b: i64 },
    #[error("internal consistency: weight is not linear on a simplicial piece")]
    NonLinearWeight,
    #[error("assembly needs a pair partition with one count triple per cone")]
    BadInput,
}

/// `Z(s)` for a numeric prime, as a reduced fraction in `t` and in factored
/// display form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaRational {
    pub p: u64,
    pub reduced: RationalFunction,
    pub factored: FactoredZeta,
}

impl ZetaRational {
    pub fn from_factored(factored: FactoredZeta, p: u64) -> Result<Self, ZetaError> {
        Ok(ZetaRational {
            p,
            reduced: factored.to_reduced(p)?,
            factored,
        })
    }

    pub fn evaluate_at(&self, t: &BigRational) -> Result<BigRational, ZetaError> {
        self.reduced.evaluate_at(t)
    }

    /// Value at `t = p^-s0`.
    pub fn at_s(&self, s0: u32) -> Result<BigRational, ZetaError> {
        self.evaluate_at(&BigRational::new(BigInt::from(1), BigInt::from(self.p).pow(s0)))
    }
}

/// Everything computed for one cone of the partition.
#[derive(Debug, Clone)]
pub struct ConeContribution {
    pub cone: usize,
    pub counts: CountTriple,
    pub pieces: Vec<SimplicialPiece>,
    pub l: FactoredZeta,
    pub s: SDelta,
}

#[derive(Debug, Clone)]
pub struct Assembly {
    pub zeta: ZetaRational,
    pub cones: Vec<ConeContribution>,
}

/// `sum_delta L_delta S_delta` over the pair partition of `Gamma_fside` and
/// `Gamma_g`, with `counts[i]` the torus counts of cone `i`.
pub fn assemble(
    mode: Mode,
    partition: &ConePartition,
    counts: &[CountTriple],
    p: u64,
    t_count: usize,
) -> Result<Assembly, ZetaError> {
    if partition.kind() != PartitionKind::Pair || counts.len() != partition.cones().len() {
        return Err(ZetaError::BadInput);
    }
    let n = partition.nvars();
    let [gf, gg] = partition.polyhedra() else {
        return Err(ZetaError::BadInput);
    };
    let mf = |k: &[i64]| gf.m_unchecked(k);
    let mg = |k: &[i64]| gg.m_unchecked(k);
    let cones = partition
        .cones()
        .par_iter()
        .enumerate()
        .map(|(i, cone)| {
            let c = counts[i];
            let pieces = simplicial_decompose(cone);
            let s = s_delta(&pieces, &mf, &mg)?;
            let l = match mode {
                Mode::Ideal => l_delta_ideal(&c, p, n),
                Mode::Single => l_delta_single(&c, p, n),
                Mode::Mapping => l_delta_mapping(&c, p, n, t_count),
            };
            Ok(ConeContribution {
                cone: i,
                counts: c,
                pieces,
                l,
                s,
            })
        })
        .collect::<Result<Vec<_>, ZetaError>>()?;
    let total = cones.iter().fold(FactoredZeta::zero(), |acc, c| {
        acc.add(&c.l.mul(&c.s.to_factored(p)), p)
    });
    Ok(Assembly {
        zeta: ZetaRational::from_factored(total, p)?,
        cones,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PoleSource {
    Ray(Vec<i64>),
    LFactor,
}

impl fmt::Display for PoleSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoleSource::Ray(k) => {
                let parts: Vec<String> = k.iter().map(i64::to_string).collect();
                write!(f, "ray ({})", parts.join(","))
            }
            PoleSource::LFactor => f.write_str("L-factor"),
        }
    }
}

/// Real part of a candidate pole with everything that produces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidatePole {
    pub value: BigRational,
    pub sources: Vec<PoleSource>,
}

/// `-(m_g(k) + sigma(k)) / m_f(k)` for every ray with `m_f(k) != 0`, plus
/// `-t` from the factor `p^(s+t) - 1` of the local factors outside ideal
/// mode. Sorted from the largest value down; returns notes alongside.
pub fn candidate_poles(
    partition: &ConePartition,
    mode: Mode,
    t_count: usize,
) -> (Vec<CandidatePole>, Vec<String>) {
    let [gf, gg] = partition.polyhedra() else {
        return (Vec::new(), Vec::new());
    };
    let mut found: Vec<(BigRational, PoleSource)> = partition
        .rays()
        .iter()
        .filter_map(|k| {
            let m = gf.m_unchecked(k);
            (m != 0).then(|| {
                let num = gg.m_unchecked(k) + k.iter().sum::<i64>();
                (
                    BigRational::new(BigInt::from(-num), BigInt::from(m)),
                    PoleSource::Ray(k.clone()),
                )
            })
        })
        .collect();
    let mut notes = Vec::new();
    if mode != Mode::Ideal {
        found.push((
            BigRational::from_integer(BigInt::from(-(t_count as i64))),
            PoleSource::LFactor,
        ));
        if t_count >= 2 {
            notes.push(format!(
                "L-factor candidate is -{t_count}: the local factors carry p^(s+{t_count})-1, whose zeros have real part -{t_count}, not -1"
            ));
        }
    }
    let mut poles: Vec<CandidatePole> = Vec::new();
    for (value, source) in found {
        match poles.iter_mut().find(|c| c.value == value) {
            Some(c) => c.sources.push(source),
            None => poles.push(CandidatePole {
                value,
                sources: vec![source],
            }),
        }
    }
    poles.sort_by(|a, b| b.value.cmp(&a.value));
    (poles, notes)
}
