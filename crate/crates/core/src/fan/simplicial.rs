use std::collections::BTreeSet;

use itertools::Itertools;

use super::{multiplicity, parallelepiped_points, ConeInequalities, RationalCone};
use crate::linalg;

/// Relatively open simplicial cone together with its lattice data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialPiece {
    /// Indices into the parent's `rays`.
    pub local_ids: Vec<usize>,
    pub rays: Vec<Vec<i64>>,
    pub mult: u64,
    pub pp_points: Vec<Vec<i64>>,
}

impl SimplicialPiece {
    fn new(local_ids: Vec<usize>, parent: &[Vec<i64>], nvars: usize) -> Self {
        let rays: Vec<Vec<i64>> = local_ids.iter().map(|&i| parent[i].clone()).collect();
        let (mult, pp_points) = if rays.is_empty() {
            (1, vec![vec![0; nvars]])
        } else {
            (
                multiplicity(&rays).expect("simplex rays are independent"),
                parallelepiped_points(&rays).expect("simplex rays are independent"),
            )
        };
        SimplicialPiece {
            local_ids,
            rays,
            mult,
            pp_points,
        }
    }
}

/// Splits a relatively open cone into disjoint relatively open simplicial
/// cones using only its own rays.
///
/// The closed cone is triangulated by placing the rays in order; then every
/// face of that triangulation whose relative interior lies in the relative
/// interior of the cone becomes a piece. Those relative interiors partition
/// the open cone exactly.
pub fn simplicial_decompose(cone: &RationalCone) -> Vec<SimplicialPiece> {
    decompose_rays(&cone.rays, cone.nvars)
}

pub(crate) fn decompose_rays(rays: &[Vec<i64>], nvars: usize) -> Vec<SimplicialPiece> {
    if linalg::rank(rays) == rays.len() {
        return vec![SimplicialPiece::new((0..rays.len()).collect(), rays, nvars)];
    }
    let simplices = placing_triangulation(rays, nvars);
    let faces: BTreeSet<Vec<usize>> = simplices
        .iter()
        .flat_map(|s| s.iter().copied().powerset())
        .collect();
    let cone = ConeInequalities::of(rays, nvars);
    let mut pieces: Vec<Vec<usize>> = faces
        .into_iter()
        .filter(|f| {
            let sum = f.iter().fold(vec![0; nvars], |acc, &i| {
                acc.iter().zip(&rays[i]).map(|(a, b)| a + b).collect()
            });
            cone.contains(&sum)
        })
        .collect();
    pieces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    pieces
        .into_iter()
        .map(|ids| SimplicialPiece::new(ids, rays, nvars))
        .collect()
}

/// Maximal simplices (as ascending index lists) of the placing triangulation.
fn placing_triangulation(rays: &[Vec<i64>], nvars: usize) -> Vec<Vec<usize>> {
    let mut simplices: Vec<Vec<usize>> = vec![Vec::new()];
    let mut placed: Vec<usize> = Vec::new();
    for (i, r) in rays.iter().enumerate() {
        let current: Vec<Vec<i64>> = placed.iter().map(|&j| rays[j].clone()).collect();
        let mut extended = current.clone();
        extended.push(r.clone());
        if linalg::rank(&extended) > linalg::rank(&current) {
            simplices.iter_mut().for_each(|s| s.push(i));
            placed.push(i);
            continue;
        }
        let hull = ConeInequalities::of(&current, nvars);
        let visible: Vec<&Vec<i64>> = hull.facets.iter().filter(|u| linalg::dot(u, r) < 0).collect();
        if visible.is_empty() {
            // Inside the cone placed so far; a placing triangulation skips it.
            continue;
        }
        let mut added = Vec::new();
        for s in &simplices {
            for u in &visible {
                let on: Vec<usize> = s
                    .iter()
                    .copied()
                    .filter(|&j| linalg::dot(u, &rays[j]) == 0)
                    .collect();
                if on.len() + 1 == s.len() {
                    let mut t = on;
                    t.push(i);
                    added.push(t);
                }
            }
        }
        simplices.extend(added);
        placed.push(i);
    }
    simplices
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn in_piece(p: &SimplicialPiece, k: &[i64], n: usize) -> bool {
        ConeInequalities::of(&p.rays, n).contains(k)
    }

    #[test]
    fn simplicial_input_is_unchanged() {
        let rays = vec![vec![3, 1], vec![1, 1]];
        let pieces = decompose_rays(&rays, 2);
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].rays, rays);
        assert_eq!(pieces[0].mult, 2);
        assert_eq!(pieces[0].pp_points, vec![vec![0, 0], vec![2, 1]]);
        let zero = decompose_rays(&[], 3);
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].pp_points, vec![vec![0, 0, 0]]);
    }

    #[test]
    fn square_based_cone_splits_into_two_simplices_and_a_wall() {
        let rays = vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 1]];
        let pieces = decompose_rays(&rays, 3);
        let dims: Vec<usize> = pieces.iter().map(|p| p.rays.len()).collect();
        assert_eq!(dims, vec![3, 3, 2]);
        // Open cone by hand: x > 0, y > 0, z > 0, z < x + y.
        for x in 0..=6i64 {
            for y in 0..=6 {
                for z in 0..=6 {
                    let k = [x, y, z];
                    let inside = x > 0 && y > 0 && z > 0 && z < x + y;
                    let hits = pieces.iter().filter(|p| in_piece(p, &k, 3)).count();
                    assert_eq!(hits, usize::from(inside), "k = {k:?}");
                }
            }
        }
        for p in &pieces {
            assert!(p.local_ids.iter().all(|&i| i < rays.len()));
        }
    }

    fn arb_cone() -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(0i64..4, 3), 3..7).prop_filter_map(
            "distinct primitive",
            |raw| {
                let mut rays: Vec<Vec<i64>> = Vec::new();
                for r in raw {
                    if r.iter().all(|&x| x == 0) {
                        continue;
                    }
                    let p = linalg::primitive(&r.iter().map(|&x| x as i128).collect::<Vec<_>>());
                    if !rays.contains(&p) {
                        rays.push(p);
                    }
                }
                (rays.len() >= 3).then_some(rays)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn pieces_cover_the_open_cone_disjointly(rays in arb_cone()) {
            let pieces = decompose_rays(&rays, 3);
            let cone = ConeInequalities::of(&rays, 3);
            for k in (0..3).map(|_| 0i64..=6).multi_cartesian_product() {
                let hits = pieces.iter().filter(|p| in_piece(p, &k, 3)).count();
                prop_assert_eq!(hits, usize::from(cone.contains(&k)), "k = {:?}", k);
            }
            for p in &pieces {
                prop_assert_eq!(linalg::rank(&p.rays), p.rays.len());
                prop_assert!(p.rays.iter().all(|r| rays.contains(r)));
            }
            prop_assert_eq!(decompose_rays(&rays, 3), pieces);
        }
    }
}
