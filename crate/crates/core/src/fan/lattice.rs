use itertools::Itertools;
use num_traits::{One, Zero};

use super::FanError;
use crate::linalg::{self, Rational};

/// Index of `Z k_1 + .. + Z k_r` in the lattice points of its linear span:
/// the product of the invariant factors of the ray matrix.
pub fn multiplicity(rays: &[Vec<i64>]) -> Result<u64, FanError> {
    if linalg::rank(rays) != rays.len() {
        return Err(FanError::DependentRays);
    }
    let product: i128 = linalg::smith_invariants(rays).iter().product();
    Ok(u64::try_from(product).expect("multiplicity fits in u64"))
}

/// Integer points `sum lambda_j k_j` with every `0 <= lambda_j < 1`, the zero
/// vector first. Rays must be nonnegative.
pub fn parallelepiped_points(rays: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, FanError> {
    if linalg::rank(rays) != rays.len() {
        return Err(FanError::DependentRays);
    }
    let Some(n) = rays.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    // Coordinate i of such a point lies in [0, sum_j k_{j,i}).
    let bounds: Vec<i64> = (0..n).map(|i| rays.iter().map(|r| r[i]).sum()).collect();
    let mut out: Vec<Vec<i64>> = bounds
        .iter()
        .map(|&b| 0..b.max(1))
        .multi_cartesian_product()
        .filter(|h| {
            linalg::coordinates(rays, h)
                .is_some_and(|lam| lam.iter().all(|l| *l >= Rational::zero() && *l < Rational::one()))
        })
        .collect();
    out.sort_by(|a, b| {
        let (sa, sb): (i64, i64) = (a.iter().sum(), b.iter().sum());
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    Ok(out)
}
