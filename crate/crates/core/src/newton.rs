//! Newton polyhedra `conv(support) + R_+^n`, the weight function `m(k)` and
//! first meet loci.
//!
//! The recession cone of every polyhedron here is the full orthant, so a face
//! is pinned down by the support points it touches and the coordinate
//! directions along which it is unbounded.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::linalg;
use crate::poly::{ExponentVector, MonomialIdeal, Polynomial, PolynomialMapping};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("Newton polyhedron needs a nonempty support")]
    EmptySupport,
    #[error("expected vectors of length {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("weight vector has a negative entry at position {0}")]
    NegativeWeight(usize),
    #[error("face is not a face of this polyhedron")]
    NotAFace,
    #[error("polynomial has a term outside the polyhedron's support")]
    ForeignPolynomial,
}

/// A face `conv(touching) + R_+^recession`.
///
/// `touching` holds every support point on the face; `recession` holds
/// 0-based coordinate indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub touching: Vec<ExponentVector>,
    pub recession: Vec<usize>,
    pub dim: usize,
}

impl Face {
    fn new(nvars: usize, touching: Vec<ExponentVector>, recession: Vec<usize>) -> Face {
        let dim = face_dim(nvars, &touching, &recession);
        Face {
            touching,
            recession,
            dim,
        }
    }

    /// Set containment of faces.
    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.touching
            .iter()
            .all(|w| other.touching.binary_search(w).is_ok())
            && self.recession.iter().all(|i| other.recession.contains(i))
    }

    fn meet(&self, other: &Face, nvars: usize) -> Option<Face> {
        let touching: Vec<_> = self
            .touching
            .iter()
            .filter(|w| other.touching.binary_search(w).is_ok())
            .cloned()
            .collect();
        if touching.is_empty() {
            return None;
        }
        let recession = self
            .recession
            .iter()
            .filter(|i| other.recession.contains(i))
            .copied()
            .collect();
        Some(Face::new(nvars, touching, recession))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.touching.iter().join(", "))?;
        if !self.recession.is_empty() {
            let dirs = self.recession.iter().map(|i| format!("e{}", i + 1)).join(", ");
            write!(f, " + R+<{dirs}>")?;
        }
        Ok(())
    }
}

fn face_dim(nvars: usize, touching: &[ExponentVector], recession: &[usize]) -> usize {
    let Some(base) = touching.first() else {
        return 0;
    };
    let base = base.to_i64();
    let mut rows: Vec<Vec<i64>> = touching[1..]
        .iter()
        .map(|w| w.to_i64().iter().zip(&base).map(|(a, b)| a - b).collect())
        .collect();
    for &i in recession {
        let mut e = vec![0; nvars];
        e[i] = 1;
        rows.push(e);
    }
    linalg::rank(&rows)
}

/// A facet: primitive inward normal `k` and offset `m(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub face: Face,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    nvars: usize,
    support: Vec<ExponentVector>,
    facets: Vec<Facet>,
}

impl NewtonPolyhedron {
    /// Builds `conv(support) + R_+^n`. The zero vector is accepted so that the
    /// orthant itself (the polyhedron of the constant 1) is representable.
    pub fn new(nvars: usize, support: Vec<ExponentVector>) -> Result<Self, GeometryError> {
        if support.is_empty() {
            return Err(GeometryError::EmptySupport);
        }
        if let Some(w) = support.iter().find(|w| w.len() != nvars) {
            return Err(GeometryError::ArityMismatch {
                expected: nvars,
                got: w.len(),
            });
        }
        let mut support = support;
        support.sort();
        support.dedup();
        let mut gamma = NewtonPolyhedron {
            nvars,
            support,
            facets: Vec::new(),
        };
        gamma.facets = gamma.compute_facets();
        Ok(gamma)
    }

    pub fn of_polynomial(f: &Polynomial) -> Result<Self, GeometryError> {
        Self::new(f.nvars(), f.support())
    }

    pub fn of_mapping(ff: &PolynomialMapping) -> Result<Self, GeometryError> {
        Self::new(ff.nvars(), ff.support())
    }

    pub fn of_ideal(ideal: &MonomialIdeal) -> Result<Self, GeometryError> {
        Self::new(ideal.nvars(), ideal.generators().to_vec())
    }

    /// `R_+^n`, the polyhedron of the constant polynomial 1.
    pub fn orthant(nvars: usize) -> Self {
        Self::new(nvars, vec![ExponentVector::zero(nvars)]).expect("nonempty support")
    }

    /// Polyhedron of the Minkowski sum: support is all pairwise sums.
    pub fn minkowski_sum(&self, other: &NewtonPolyhedron) -> Result<Self, GeometryError> {
        if self.nvars != other.nvars {
            return Err(GeometryError::ArityMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        let a = self.minimal_points();
        let b = other.minimal_points();
        let sums = a
            .iter()
            .cartesian_product(&b)
            .map(|(u, v)| {
                ExponentVector::new(
                    u.as_slice()
                        .iter()
                        .zip(v.as_slice())
                        .map(|(x, y)| x + y)
                        .collect(),
                )
            })
            .collect();
        Self::new(self.nvars, sums)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn support(&self) -> &[ExponentVector] {
        &self.support
    }

    /// Support points not dominated by another support point.
    pub fn minimal_points(&self) -> Vec<ExponentVector> {
        self.support
            .iter()
            .filter(|w| !self.support.iter().any(|v| v != *w && w.dominates(v)))
            .cloned()
            .collect()
    }

    fn check_weight(&self, k: &[i64]) -> Result<(), GeometryError> {
        if k.len() != self.nvars {
            return Err(GeometryError::ArityMismatch {
                expected: self.nvars,
                got: k.len(),
            });
        }
        match k.iter().position(|&x| x < 0) {
            Some(i) => Err(GeometryError::NegativeWeight(i)),
            None => Ok(()),
        }
    }

    /// `m(k) = min over the support of k . w`.
    pub fn m_value(&self, k: &[i64]) -> Result<i64, GeometryError> {
        self.check_weight(k)?;
        Ok(self.m_unchecked(k))
    }

    pub(crate) fn m_unchecked(&self, k: &[i64]) -> i64 {
        self.support
            .iter()
            .map(|w| w.dot(k))
            .min()
            .expect("nonempty support")
    }

    /// `F(k)`: the face where `k` attains `m(k)`.
    pub fn first_meet_locus(&self, k: &[i64]) -> Result<Face, GeometryError> {
        self.check_weight(k)?;
        Ok(self.locus_unchecked(k))
    }

    pub(crate) fn locus_unchecked(&self, k: &[i64]) -> Face {
        let m = self.m_unchecked(k);
        let touching = self.support.iter().filter(|w| w.dot(k) == m).cloned().collect();
        let recession = (0..self.nvars).filter(|&i| k[i] == 0).collect();
        Face::new(self.nvars, touching, recession)
    }

    /// The polyhedron itself as a face.
    pub fn whole(&self) -> Face {
        self.locus_unchecked(&vec![0; self.nvars])
    }

    /// Minimal inequality description: `Gamma = {x >= 0 : k . x >= m(k)}` over
    /// the returned facets, each normal primitive.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_normals(&self) -> Vec<(Vec<i64>, i64)> {
        self.facets.iter().map(|f| (f.normal.clone(), f.offset)).collect()
    }

    // Every facet's affine hull is spanned by some touching support points
    // together with the coordinate directions it is unbounded along. Enumerate
    // every such spanning choice, take the normal and keep it if it is
    // nonnegative and its first meet locus has codimension one.
    fn compute_facets(&self) -> Vec<Facet> {
        let n = self.nvars;
        let points: Vec<Vec<i64>> = self.minimal_points().iter().map(ExponentVector::to_i64).collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for j in 1..=n.min(points.len()) {
            for chosen in points.iter().combinations(j) {
                let base = chosen[0];
                let diffs: Vec<Vec<i64>> = chosen[1..]
                    .iter()
                    .map(|w| w.iter().zip(base).map(|(a, b)| a - b).collect())
                    .collect();
                for dirs in (0..n).combinations(n - j) {
                    let mut rows = diffs.clone();
                    for &i in &dirs {
                        let mut e = vec![0; n];
                        e[i] = 1;
                        rows.push(e);
                    }
                    let normal = linalg::cross(&rows, n);
                    if normal.iter().all(|&x| x == 0) {
                        continue;
                    }
                    let normal = if normal.iter().any(|&x| x > 0) {
                        normal
                    } else {
                        normal.iter().map(|x| -x).collect()
                    };
                    if normal.iter().any(|&x| x < 0) {
                        continue;
                    }
                    let k = linalg::primitive(&normal);
                    if !seen.insert(k.clone()) {
                        continue;
                    }
                    let face = self.locus_unchecked(&k);
                    if face.dim + 1 == n {
                        out.push(Facet {
                            offset: self.m_unchecked(&k),
                            normal: k,
                            face,
                        });
                    }
                }
            }
        }
        out.sort_by(|a, b| ray_order(&a.normal, &b.normal));
        out
    }

    /// Every face of the polyhedron, the polyhedron itself included.
    pub fn faces(&self) -> Vec<Face> {
        let mut found: BTreeSet<Face> = BTreeSet::new();
        let mut queue: VecDeque<Face> = self.facets.iter().map(|f| f.face.clone()).collect();
        while let Some(face) = queue.pop_front() {
            if !found.insert(face.clone()) {
                continue;
            }
            for facet in &self.facets {
                if let Some(m) = face.meet(&facet.face, self.nvars) {
                    if !found.contains(&m) {
                        queue.push_back(m);
                    }
                }
            }
        }
        found.insert(self.whole());
        found.into_iter().collect()
    }

    /// Whether `face` is a face of this polyhedron.
    pub fn has_face(&self, face: &Face) -> bool {
        if *face == self.whole() {
            return true;
        }
        let k: Vec<i64> = self
            .facets_containing(face)
            .iter()
            .fold(vec![0; self.nvars], |acc, f| {
                acc.iter().zip(&f.normal).map(|(a, b)| a + b).collect()
            });
        k.iter().any(|&x| x != 0) && self.locus_unchecked(&k) == *face
    }

    pub fn facets_containing(&self, face: &Face) -> Vec<&Facet> {
        self.facets
            .iter()
            .filter(|f| face.is_subface_of(&f.face))
            .collect()
    }

    /// Whether `x` lies in `conv(support) + R_+^n`, decided by the facet
    /// inequalities.
    pub fn contains_point(&self, x: &[i64]) -> bool {
        x.iter().all(|&v| v >= 0) && self.facets.iter().all(|f| linalg::dot(&f.normal, x) >= f.offset)
    }
}

/// `f_tau`: the terms of `f` whose exponents lie on `face`.
pub fn face_restriction(
    f: &Polynomial,
    gamma: &NewtonPolyhedron,
    face: &Face,
) -> Result<Polynomial, GeometryError> {
    if !gamma.has_face(face) {
        return Err(GeometryError::NotAFace);
    }
    if f.support()
        .iter()
        .any(|w| gamma.support.binary_search(w).is_err())
    {
        return Err(GeometryError::ForeignPolynomial);
    }
    Ok(f.restrict_to(&face.touching))
}

/// Canonical ray order: descending lexicographic on `k / sigma(k)`. In the
/// plane this sweeps from the first axis to the second.
pub fn ray_order(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let sa: i64 = a.iter().sum();
    let sb: i64 = b.iter().sum();
    for (x, y) in a.iter().zip(b) {
        let ord = (y * sa).cmp(&(x * sb));
        if ord.is_ne() {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}
