//! Serializable reports. Text output is rendered from these structs alone,
//! so a report read back from JSON renders to the same text.

use std::fmt::Write as _;

use igusa_core::counting::DegeneracyReport;
use igusa_core::fan::{ConePartition, FaceLabels};
use igusa_core::newton::Face;
use igusa_core::pipeline::{ray_rows, CheckReport, Computation};
use igusa_core::problem::{FSide, Measure};
use igusa_core::zeta::{
    candidate_poles, CandidatePole, ExpFactor, FactoredZeta, LaurentPoly, SDelta, SPiece, ZetaRational,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::spec::ProblemSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Compute(ComputeReport),
    Check(CheckSweep),
    Oracle(OracleReport),
    Poles(PolesReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemJson {
    pub mode: String,
    pub n: usize,
    pub p: u64,
    pub fside: Vec<String>,
    pub measure: String,
}

impl ProblemJson {
    pub fn new(spec: &ProblemSpec) -> Self {
        let fside = match &spec.fside {
            FSide::Ideal(i) => i.as_polynomials().iter().map(ToString::to_string).collect(),
            FSide::Single(f) => vec![f.to_string()],
            FSide::Mapping(ff) => ff.components().iter().map(ToString::to_string).collect(),
        };
        let measure = match &spec.measure {
            Measure::Trivial => "trivial".to_string(),
            Measure::Poly(g) => g.to_string(),
        };
        ProblemJson {
            mode: spec.mode.to_string(),
            n: spec.n,
            p: spec.p,
            fside,
            measure,
        }
    }

    fn header(&self, p: u64) -> String {
        format!("{}, p = {p}", self.describe())
    }

    fn describe(&self) -> String {
        let fside = match self.mode.as_str() {
            "ideal" => format!("ideal ({})", self.fside.join(", ")),
            "single" => format!("f = {}", self.fside[0]),
            _ => format!("mapping ({})", self.fside.join(", ")),
        };
        let measure = if self.measure == "trivial" {
            "|dx|".to_string()
        } else {
            format!("|{}| |dx|", self.measure)
        };
        format!("{fside}, measure {measure}, n = {}", self.n)
    }
}

/// `num` and `den` are coefficient lists in `t`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
    pub factored: FactoredJson,
}

/// `sum c t^e / prod (p^(a s + b) - 1)`; `terms` holds `[e, "c"]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactoredJson {
    pub terms: Vec<(i64, String)>,
    pub factors: Vec<(i64, i64)>,
}

impl FactoredJson {
    pub fn new(f: &FactoredZeta) -> Self {
        FactoredJson {
            terms: f.numerator.terms().map(|(e, c)| (e, c.to_string())).collect(),
            factors: f.factors.iter().map(|x| (x.a, x.b)).collect(),
        }
    }

    pub fn to_core(&self) -> Result<FactoredZeta, String> {
        let mut num = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let c: BigRational = c.parse().map_err(|_| format!("bad coefficient `{c}`"))?;
            num = num.add(&LaurentPoly::monomial(c, *e));
        }
        let factors = self
            .factors
            .iter()
            .map(|&(a, b)| ExpFactor::new(a, b).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        Ok(FactoredZeta::new(num, factors))
    }
}

impl ZetaJson {
    pub fn new(z: &ZetaRational) -> Self {
        let coeffs = |v: &[BigInt]| v.iter().map(ToString::to_string).collect();
        ZetaJson {
            num: coeffs(z.reduced.num().coeffs()),
            den: coeffs(z.reduced.den().coeffs()),
            factored: FactoredJson::new(&z.factored),
        }
    }

    pub fn to_core(&self, p: u64) -> Result<ZetaRational, String> {
        let z = ZetaRational::from_factored(self.factored.to_core()?, p).map_err(|e| e.to_string())?;
        let written = ZetaJson::new(&z);
        if written.num != self.num || written.den != self.den {
            return Err("reduced form disagrees with the factored form".into());
        }
        Ok(z)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceJson {
    pub touching: Vec<Vec<u32>>,
    pub recession: Vec<usize>,
    pub dim: usize,
}

impl FaceJson {
    fn new(f: &Face) -> Self {
        FaceJson {
            touching: f.touching.iter().map(|w| w.as_slice().to_vec()).collect(),
            recession: f.recession.clone(),
            dim: f.dim,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelsJson {
    pub tau: FaceJson,
    pub tau_prime: FaceJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountsJson {
    pub n: u64,
    pub p: u64,
    pub q: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PieceJson {
    pub numerator: Vec<(i64, i64)>,
    pub factors: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeJson {
    pub rays: Vec<Vec<i64>>,
    pub dim: usize,
    pub mult: Option<u64>,
    pub labels: LabelsJson,
    pub counts: CountsJson,
    pub l: FactoredJson,
    pub s: Vec<PieceJson>,
}

impl ConeJson {
    fn s_core(&self) -> Result<SDelta, String> {
        let pieces = self
            .s
            .iter()
            .map(|piece| {
                let factors = piece
                    .factors
                    .iter()
                    .map(|&(a, b)| ExpFactor::new(a, b).map_err(|e| e.to_string()))
                    .collect::<Result<_, _>>()?;
                Ok(SPiece {
                    numerator: piece.numerator.clone(),
                    factors,
                })
            })
            .collect::<Result<_, String>>()?;
        Ok(SDelta { pieces })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RayJson {
    pub k: Vec<i64>,
    pub m_f: i64,
    pub m_g: i64,
    pub sigma: i64,
    pub pole: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleJson {
    pub value: String,
    pub sources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComputeReport {
    pub problem: ProblemJson,
    pub watermark: Option<String>,
    pub zeta: ZetaJson,
    pub rays: Vec<RayJson>,
    pub cones: Vec<ConeJson>,
    pub poles: Vec<PoleJson>,
    pub notes: Vec<String>,
}

fn poles_json(poles: &[CandidatePole]) -> Vec<PoleJson> {
    poles
        .iter()
        .map(|p| PoleJson {
            value: p.value.to_string(),
            sources: p.sources.iter().map(ToString::to_string).collect(),
        })
        .collect()
}

fn rays_json(partition: &ConePartition) -> Vec<RayJson> {
    ray_rows(partition)
        .into_iter()
        .map(|r| RayJson {
            k: r.k,
            m_f: r.m_f,
            m_g: r.m_g,
            sigma: r.sigma,
            pole: r.pole.map(|v| v.to_string()),
        })
        .collect()
}

impl ComputeReport {
    pub fn new(spec: &ProblemSpec, c: &Computation) -> Self {
        let cones = c
            .cone_rows()
            .into_iter()
            .zip(c.partition.cones())
            .map(|(row, cone)| {
                let FaceLabels::Pair(tau, tau_g) = &cone.labels else {
                    unreachable!("compute uses a pair partition")
                };
                ConeJson {
                    rays: row.generators,
                    dim: row.dim,
                    mult: row.mult,
                    labels: LabelsJson {
                        tau: FaceJson::new(tau),
                        tau_prime: FaceJson::new(tau_g),
                    },
                    counts: CountsJson {
                        n: row.counts.n,
                        p: row.counts.p,
                        q: row.counts.q,
                    },
                    l: FactoredJson::new(&row.l),
                    s: row
                        .s
                        .pieces
                        .iter()
                        .map(|piece| PieceJson {
                            numerator: piece.numerator.clone(),
                            factors: piece.factors.iter().map(|f| (f.a, f.b)).collect(),
                        })
                        .collect(),
                }
            })
            .collect();
        ComputeReport {
            problem: ProblemJson::new(spec),
            watermark: c.watermark.map(str::to_string),
            zeta: ZetaJson::new(c.zeta()),
            rays: rays_json(&c.partition),
            cones,
            poles: poles_json(&c.poles),
            notes: c.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub id: usize,
    pub label: String,
    pub point: Vec<u64>,
    pub condition: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckItemJson {
    pub name: String,
    pub ok: bool,
    pub witnesses: Vec<WitnessJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeCheck {
    pub p: u64,
    pub ok: bool,
    pub items: Vec<CheckItemJson>,
}

impl PrimeCheck {
    pub fn new(r: &CheckReport) -> Self {
        let item = |name: &str, d: &DegeneracyReport| CheckItemJson {
            name: name.to_string(),
            ok: d.ok,
            witnesses: d
                .witnesses
                .iter()
                .map(|w| WitnessJson {
                    id: w.id,
                    label: w.label.clone(),
                    point: w.point.clone(),
                    condition: w.condition.to_string(),
                })
                .collect(),
        };
        PrimeCheck {
            p: r.p,
            ok: r.ok(),
            items: r.items.iter().map(|i| item(i.name, &i.report)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSweep {
    pub problem: ProblemJson,
    pub primes: Vec<PrimeCheck>,
}

impl CheckSweep {
    pub fn ok(&self) -> bool {
        self.primes.iter().all(|p| p.ok)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub problem: ProblemJson,
    pub watermark: Option<String>,
    pub s0: u32,
    pub level: u32,
    pub formula: String,
    pub lo: String,
    pub hi: String,
    pub contained: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolesReport {
    pub problem: ProblemJson,
    pub rays: Vec<RayJson>,
    pub poles: Vec<PoleJson>,
    pub notes: Vec<String>,
}

impl PolesReport {
    pub fn new(spec: &ProblemSpec, partition: &ConePartition) -> Self {
        let (poles, notes) = candidate_poles(partition, spec.mode, spec.fside.t_count());
        PolesReport {
            problem: ProblemJson::new(spec),
            rays: rays_json(partition),
            poles: poles_json(&poles),
            notes,
        }
    }
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

fn vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn ray_table(rays: &[RayJson]) -> String {
    let rows: Vec<Vec<String>> = rays
        .iter()
        .map(|r| {
            vec![
                vector(&r.k),
                r.m_f.to_string(),
                r.m_g.to_string(),
                r.sigma.to_string(),
                r.pole.clone().unwrap_or_default(),
            ]
        })
        .collect();
    table(&["k", "m_f(k)", "m_g(k)", "sigma(k)", "candidate pole"], &rows)
}

fn pole_list(poles: &[PoleJson], notes: &[String]) -> String {
    let rows: Vec<Vec<String>> = poles
        .iter()
        .map(|p| vec![p.value.clone(), p.sources.join(", ")])
        .collect();
    let mut out = table(&["real part", "sources"], &rows);
    for n in notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

pub fn render(report: &Report) -> Result<String, String> {
    let mut out = String::new();
    match report {
        Report::Compute(r) => {
            let p = r.problem.p;
            if let Some(w) = &r.watermark {
                let _ = writeln!(out, "WARNING: {w}");
            }
            let _ = writeln!(out, "Z(s) for {}", r.problem.header(p));
            let z = r.zeta.to_core(p)?;
            let _ = writeln!(out, "t = p^-s");
            let _ = writeln!(out, "Z = {}", z.reduced);
            let _ = writeln!(out, "  = {}", z.factored.render("p"));
            let _ = writeln!(out, "\nrays");
            out += &ray_table(&r.rays);
            let _ = writeln!(out, "\ncones");
            let rows = r
                .cones
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let gens: Vec<String> = c.rays.iter().map(|k| vector(k)).collect();
                    let mult = match (c.dim, c.mult) {
                        (0 | 1, _) => String::new(),
                        (_, Some(m)) => m.to_string(),
                        (_, None) => "-".to_string(),
                    };
                    Ok(vec![
                        format!("d{i}"),
                        c.dim.to_string(),
                        gens.join(","),
                        mult,
                        c.counts.n.to_string(),
                        c.counts.p.to_string(),
                        c.counts.q.to_string(),
                        c.l.to_core()?.render("p"),
                        c.s_core()?.render("p"),
                    ])
                })
                .collect::<Result<Vec<_>, String>>()?;
            out += &table(
                &["cone", "dim", "generators", "mult", "N", "P", "Q", "L", "S"],
                &rows,
            );
            let _ = writeln!(out, "\ncandidate poles");
            out += &pole_list(&r.poles, &r.notes);
        }
        Report::Check(r) => {
            let _ = writeln!(out, "non-degeneracy for {}", r.problem.describe());
            let mut rows = Vec::new();
            for pc in &r.primes {
                for item in &pc.items {
                    let witness = item.witnesses.first().map_or(String::new(), |w| {
                        let point: Vec<i64> = w.point.iter().map(|&x| x as i64).collect();
                        format!("#{} {}: {} at {}", w.id, w.label, w.condition, vector(&point))
                    });
                    rows.push(vec![
                        pc.p.to_string(),
                        item.name.clone(),
                        if item.ok { "ok" } else { "FAIL" }.to_string(),
                        witness,
                    ]);
                }
                if pc.items.is_empty() {
                    rows.push(vec![
                        pc.p.to_string(),
                        "(none needed)".into(),
                        "ok".into(),
                        String::new(),
                    ]);
                }
            }
            out += &table(&["p", "check", "result", "first witness"], &rows);
            let bad: Vec<String> = r
                .primes
                .iter()
                .filter(|p| !p.ok)
                .map(|p| p.p.to_string())
                .collect();
            if bad.is_empty() {
                let _ = writeln!(out, "all checks pass");
            } else {
                let _ = writeln!(out, "degenerate at p = {}", bad.join(", "));
            }
        }
        Report::Oracle(r) => {
            if let Some(w) = &r.watermark {
                let _ = writeln!(out, "WARNING: {w}");
            }
            let _ = writeln!(out, "oracle for {}", r.problem.header(r.problem.p));
            let _ = writeln!(out, "s0 = {}, level M = {}", r.s0, r.level);
            let _ = writeln!(out, "formula  Z(s0) = {}", r.formula);
            let _ = writeln!(out, "bracket  [{}, {}]", r.lo, r.hi);
            let _ = writeln!(
                out,
                "{}",
                if r.contained {
                    "contained"
                } else {
                    "bracket violation"
                }
            );
        }
        Report::Poles(r) => {
            let _ = writeln!(out, "candidate poles for {}", r.problem.header(r.problem.p));
            out += &ray_table(&r.rays);
            out.push('\n');
            out += &pole_list(&r.poles, &r.notes);
        }
    }
    Ok(out)
}
