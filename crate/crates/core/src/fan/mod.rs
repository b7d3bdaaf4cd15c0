//! Partitions of `R_+^n` into relatively open rational cones on which the
//! first meet locus (or a pair of them) is constant.

mod lattice;
mod simplicial;

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::linalg;
use crate::newton::{Face, GeometryError, NewtonPolyhedron};

pub use lattice::{multiplicity, parallelepiped_points};
pub use simplicial::{simplicial_decompose, SimplicialPiece};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("rays are linearly dependent")]
    DependentRays,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FaceLabels {
    Single(Face),
    Pair(Face, Face),
}

impl FaceLabels {
    pub fn faces(&self) -> Vec<&Face> {
        match self {
            FaceLabels::Single(f) => vec![f],
            FaceLabels::Pair(f, g) => vec![f, g],
        }
    }
}

impl fmt::Display for FaceLabels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceLabels::Single(t) => write!(f, "{t}"),
            FaceLabels::Pair(t, u) => write!(f, "({t}; {u})"),
        }
    }
}

/// Relatively open cone `{sum lambda_j k_j : lambda_j > 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCone {
    /// Indices into the partition's ray list, ascending.
    pub ray_ids: Vec<usize>,
    pub rays: Vec<Vec<i64>>,
    pub dim: usize,
    pub labels: FaceLabels,
    pub nvars: usize,
}

impl RationalCone {
    /// Sum of the rays: a lattice point in the relative interior.
    pub fn witness(&self) -> Vec<i64> {
        self.rays.iter().fold(vec![0; self.nvars], |acc, r| {
            acc.iter().zip(r).map(|(a, b)| a + b).collect()
        })
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }

    pub fn contains(&self, k: &[i64]) -> bool {
        ConeInequalities::of(&self.rays, k.len()).contains(k)
    }
}

/// Equations cutting out the linear span and facet inequalities of a cone.
#[derive(Debug, Clone)]
pub(crate) struct ConeInequalities {
    pub equalities: Vec<Vec<i64>>,
    pub facets: Vec<Vec<i64>>,
}

impl ConeInequalities {
    pub fn of(rays: &[Vec<i64>], nvars: usize) -> Self {
        let d = linalg::rank(rays);
        let equalities = linalg::kernel_basis(rays, nvars);
        let mut facets: Vec<Vec<i64>> = Vec::new();
        if d == 0 {
            return ConeInequalities { equalities, facets };
        }
        for subset in rays.iter().combinations(d - 1) {
            let mut rows: Vec<Vec<i64>> = subset.into_iter().cloned().collect();
            if linalg::rank(&rows) + 1 != d {
                continue;
            }
            rows.extend(equalities.iter().cloned());
            let ker = linalg::kernel_basis(&rows, nvars);
            debug_assert_eq!(ker.len(), 1);
            let u = &ker[0];
            let vals: Vec<i64> = rays.iter().map(|r| linalg::dot(u, r)).collect();
            let u = if vals.iter().all(|&v| v >= 0) {
                u.clone()
            } else if vals.iter().all(|&v| v <= 0) {
                u.iter().map(|x| -x).collect()
            } else {
                continue;
            };
            if !facets.contains(&u) {
                facets.push(u);
            }
        }
        ConeInequalities { equalities, facets }
    }

    /// Relative-interior membership.
    pub fn contains(&self, k: &[i64]) -> bool {
        self.equalities.iter().all(|e| linalg::dot(e, k) == 0)
            && self.facets.iter().all(|u| linalg::dot(u, k) > 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionKind {
    Single,
    Pair,
}

#[derive(Debug, Clone)]
pub struct ConePartition {
    nvars: usize,
    kind: PartitionKind,
    polyhedra: Vec<NewtonPolyhedron>,
    rays: Vec<Vec<i64>>,
    cones: Vec<RationalCone>,
    index: HashMap<FaceLabels, usize>,
}

impl ConePartition {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn kind(&self) -> PartitionKind {
        self.kind
    }

    /// The underlying polyhedra: one for a single partition, two for a pair.
    pub fn polyhedra(&self) -> &[NewtonPolyhedron] {
        &self.polyhedra
    }

    /// Every primitive ray generator, in canonical order.
    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn cones(&self) -> &[RationalCone] {
        &self.cones
    }

    pub fn labels_of(&self, k: &[i64]) -> Result<FaceLabels, GeometryError> {
        let loci: Vec<Face> = self
            .polyhedra
            .iter()
            .map(|g| g.first_meet_locus(k))
            .collect::<Result<_, _>>()?;
        let mut loci = loci.into_iter();
        let first = loci.next().expect("at least one polyhedron");
        Ok(match loci.next() {
            Some(second) => FaceLabels::Pair(first, second),
            None => FaceLabels::Single(first),
        })
    }

    /// The cone whose relative interior contains `k`, found by matching first
    /// meet loci.
    pub fn classify(&self, k: &[i64]) -> Result<usize, GeometryError> {
        let labels = self.labels_of(k)?;
        Ok(*self
            .index
            .get(&labels)
            .expect("every nonnegative weight lies in some cone"))
    }

    fn build(
        kind: PartitionKind,
        polyhedra: Vec<NewtonPolyhedron>,
        geometry: &NewtonPolyhedron,
    ) -> ConePartition {
        let nvars = geometry.nvars();
        let facets = geometry.facets();
        let rays: Vec<Vec<i64>> = facets.iter().map(|f| f.normal.clone()).collect();
        let mut partition = ConePartition {
            nvars,
            kind,
            polyhedra,
            rays,
            cones: Vec::new(),
            index: HashMap::new(),
        };
        let mut cones: Vec<RationalCone> = geometry
            .faces()
            .iter()
            .map(|face| {
                let ray_ids: Vec<usize> = (0..facets.len())
                    .filter(|&j| face.is_subface_of(&facets[j].face))
                    .collect();
                let cone_rays: Vec<Vec<i64>> = ray_ids.iter().map(|&j| partition.rays[j].clone()).collect();
                let dim = linalg::rank(&cone_rays);
                debug_assert_eq!(dim + face.dim, nvars);
                let witness = cone_rays.iter().fold(vec![0; nvars], |acc, r| {
                    acc.iter().zip(r).map(|(a, b)| a + b).collect()
                });
                RationalCone {
                    ray_ids,
                    rays: cone_rays,
                    dim,
                    labels: partition.labels_of(&witness).expect("nonnegative witness"),
                    nvars,
                }
            })
            .collect();
        cones.sort_by(|a, b| a.ray_ids.cmp(&b.ray_ids));
        partition.index = cones
            .iter()
            .enumerate()
            .map(|(i, c)| (c.labels.clone(), i))
            .collect();
        debug_assert_eq!(partition.index.len(), cones.len(), "labels must be distinct");
        partition.cones = cones;
        partition
    }
}

/// `D_Gamma`: one cone per face of `gamma`; its rays are the normals of the
/// facets containing that face.
pub fn partition_single(gamma: &NewtonPolyhedron) -> ConePartition {
    ConePartition::build(PartitionKind::Single, vec![gamma.clone()], gamma)
}

/// Common refinement of the two partitions. The refinement is the partition
/// of the Minkowski sum; each of its cones is relabelled by the pair of first
/// meet loci at an interior witness.
pub fn partition_pair(
    first: &NewtonPolyhedron,
    second: &NewtonPolyhedron,
) -> Result<ConePartition, FanError> {
    if first.nvars() != second.nvars() {
        return Err(FanError::DimensionMismatch {
            expected: first.nvars(),
            got: second.nvars(),
        });
    }
    let sum = first.minkowski_sum(second)?;
    Ok(ConePartition::build(
        PartitionKind::Pair,
        vec![first.clone(), second.clone()],
        &sum,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, ExponentVector};
    use proptest::prelude::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    pub(crate) fn gamma_i() -> NewtonPolyhedron {
        NewtonPolyhedron::new(2, vec![ev(&[5, 1]), ev(&[3, 2]), ev(&[2, 5])]).unwrap()
    }

    pub(crate) fn gamma_g() -> NewtonPolyhedron {
        NewtonPolyhedron::of_polynomial(&parse_polynomial("x^4*y^2 + x*y^5", 2).unwrap()).unwrap()
    }

    fn grid(n: usize, b: i64) -> impl Iterator<Item = Vec<i64>> {
        (0..n).map(|_| 0..=b).multi_cartesian_product()
    }

    #[test]
    fn single_partitions_of_the_example() {
        let d = partition_single(&gamma_i());
        assert_eq!(d.cones().len(), 8);
        assert_eq!(d.rays(), &[vec![1, 0], vec![3, 1], vec![1, 2], vec![0, 1]]);
        assert_eq!(d.cones().iter().filter(|c| c.dim == 2).count(), 3);
        let dg = partition_single(&gamma_g());
        assert_eq!(dg.cones().len(), 6);
        assert_eq!(dg.rays(), &[vec![1, 0], vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn pair_partition_of_the_example() {
        let d = partition_pair(&gamma_i(), &gamma_g()).unwrap();
        assert_eq!(
            d.rays(),
            &[vec![1, 0], vec![3, 1], vec![1, 1], vec![1, 2], vec![0, 1]]
        );
        let rays: Vec<Vec<usize>> = d.cones().iter().map(|c| c.ray_ids.clone()).collect();
        assert_eq!(
            rays,
            vec![
                vec![],
                vec![0],
                vec![0, 1],
                vec![1],
                vec![1, 2],
                vec![2],
                vec![2, 3],
                vec![3],
                vec![3, 4],
                vec![4]
            ]
        );
        assert_eq!(d.classify(&[2, 1]).unwrap(), 4);
        assert_eq!(d.classify(&[0, 0]).unwrap(), 0);
        assert_eq!(d.classify(&[3, 1]).unwrap(), 3);
    }

    #[test]
    fn x_plus_y_partition_by_exhaustive_classification() {
        let gamma = NewtonPolyhedron::of_polynomial(&parse_polynomial("x + y", 2).unwrap()).unwrap();
        let d = partition_single(&gamma);
        assert_eq!(d.rays(), &[vec![1, 0], vec![1, 1], vec![0, 1]]);
        assert_eq!(d.cones().len(), 6);
        for k in grid(2, 8) {
            let face = gamma.first_meet_locus(&k).unwrap();
            let hits: Vec<usize> = (0..d.cones().len())
                .filter(|&i| d.cones()[i].contains(&k))
                .collect();
            assert_eq!(hits.len(), 1, "k = {k:?}");
            let cone = &d.cones()[hits[0]];
            assert_eq!(cone.labels, FaceLabels::Single(face.clone()));
            assert_eq!(cone.dim + face.dim, 2);
        }
    }

    #[test]
    fn self_pair_matches_single() {
        let single = partition_single(&gamma_i());
        let pair = partition_pair(&gamma_i(), &gamma_i()).unwrap();
        assert_eq!(single.rays(), pair.rays());
        for (a, b) in single.cones().iter().zip(pair.cones()) {
            assert_eq!(a.rays, b.rays);
            match (&a.labels, &b.labels) {
                (FaceLabels::Single(f), FaceLabels::Pair(g, h)) => {
                    assert_eq!(f, g);
                    assert_eq!(f, h);
                }
                _ => panic!("unexpected label kinds"),
            }
        }
    }

    #[test]
    fn pairing_with_a_point_keeps_the_fan() {
        let point = NewtonPolyhedron::new(2, vec![ev(&[1, 1])]).unwrap();
        let single = partition_single(&gamma_i());
        let pair = partition_pair(&gamma_i(), &point).unwrap();
        // The point's fan is the orthant's; both axes are already rays of D_I.
        assert_eq!(single.rays(), pair.rays());
        for k in grid(2, 10) {
            let a = &single.cones()[single.classify(&k).unwrap()];
            let b = &pair.cones()[pair.classify(&k).unwrap()];
            assert_eq!(a.rays, b.rays);
            if k.iter().all(|&x| x > 0) {
                let FaceLabels::Pair(_, second) = &b.labels else {
                    panic!()
                };
                assert_eq!(second.touching, vec![ev(&[1, 1])]);
                assert!(second.recession.is_empty());
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = NewtonPolyhedron::orthant(2);
        let b = NewtonPolyhedron::orthant(3);
        assert_eq!(
            partition_pair(&a, &b).unwrap_err(),
            FanError::DimensionMismatch { expected: 2, got: 3 }
        );
    }

    fn arb_gamma(n: usize) -> impl Strategy<Value = NewtonPolyhedron> {
        prop::collection::vec(prop::collection::vec(0u32..5, n), 1..5).prop_filter_map("zero", move |pts| {
            let pts: Vec<_> = pts.into_iter().map(ExponentVector::new).collect();
            (!pts.iter().any(ExponentVector::is_zero)).then(|| NewtonPolyhedron::new(n, pts).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn pair_partitions_are_total_and_disjoint(
            (n, a, b) in (2usize..4).prop_flat_map(|n| (Just(n), arb_gamma(n), arb_gamma(n)))
        ) {
            let d = partition_pair(&a, &b).unwrap();
            let bound = if n == 2 { 10 } else { 6 };
            for k in grid(n, bound) {
                let hits: Vec<usize> = (0..d.cones().len()).filter(|&i| d.cones()[i].contains(&k)).collect();
                prop_assert_eq!(hits.len(), 1, "k = {:?}", k);
                prop_assert_eq!(hits[0], d.classify(&k).unwrap());
            }
            for c in d.cones() {
                prop_assert_eq!(d.labels_of(&c.witness()).unwrap(), c.labels.clone());
            }
        }

        #[test]
        fn single_dimension_law_and_linearity(
            (n, gamma, coeffs) in (2usize..4).prop_flat_map(|n| (Just(n), arb_gamma(n), (0i64..5, 0i64..5)))
        ) {
            let d = partition_single(&gamma);
            for c in d.cones() {
                let FaceLabels::Single(face) = &c.labels else { unreachable!() };
                prop_assert_eq!(c.dim + face.dim, n);
            }
            // m is linear on each closed cone: test on pairs of rays and the witness.
            let (a, b) = coeffs;
            for c in d.cones() {
                let w = c.witness();
                for r in &c.rays {
                    let comb: Vec<i64> = w.iter().zip(r).map(|(x, y)| a * x + b * y).collect();
                    prop_assert_eq!(
                        gamma.m_value(&comb).unwrap(),
                        a * gamma.m_value(&w).unwrap() + b * gamma.m_value(r).unwrap()
                    );
                }
            }
        }
    }
}
