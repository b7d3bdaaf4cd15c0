//! Small exact linear algebra over `Z`, `Q` and `F_p`.
//!
//! Matrices here are tiny (dimension at most a handful), so everything is
//! dense `Vec<Vec<_>>` with `i128` intermediates. Bareiss elimination keeps
//! every intermediate entry equal to a minor of the input.

#![allow(clippy::needless_range_loop)]

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

pub type Rational = Ratio<i128>;

fn widen(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect()
}

/// Rank over `Q` by fraction-free elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m = widen(rows);
    let Some(ncols) = m.first().map(Vec::len) else {
        return 0;
    };
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        for i in r + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let (a, b) = (m[r][c], m[i][c]);
            let g = a.gcd(&b);
            let (fa, fb) = (a / g, b / g);
            for j in c..ncols {
                m[i][j] = m[i][j] * fa - m[r][j] * fb;
            }
            let cg = m[i].iter().fold(0i128, |acc, x| acc.gcd(x));
            if cg > 1 {
                m[i].iter_mut().for_each(|x| *x /= cg);
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Determinant of a square matrix (Bareiss).
pub fn det(rows: &[Vec<i64>]) -> i128 {
    det_wide(widen(rows))
}

fn det_wide(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(piv) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Generalized cross product of `n - 1` vectors in `Z^n`: the vector of signed
/// maximal minors, orthogonal to every input row. Zero iff the rows are
/// dependent.
pub fn cross(rows: &[Vec<i64>], n: usize) -> Vec<i128> {
    debug_assert_eq!(rows.len() + 1, n);
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x as i128)
                        .collect()
                })
                .collect();
            let d = det_wide(minor);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Divides out the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[i128]) -> Vec<i64> {
    let g = v.iter().fold(0i128, |acc, x| acc.gcd(x));
    let g = if g == 0 { 1 } else { g };
    v.iter()
        .map(|&x| i64::try_from(x / g).expect("primitive vector entry exceeds i64"))
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reduced row echelon form over `Q`; returns the pivot columns.
fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let lead = m[r][c];
        m[r].iter_mut().for_each(|x| *x /= lead);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..ncols {
                    let d = m[r][j] * f;
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Primitive integer basis of `{x in Q^ncols : row . x = 0 for all rows}`.
pub fn kernel_basis(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x as i128)).collect())
        .collect();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); ncols];
            v[fc] = Rational::from_integer(1);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][fc];
            }
            let l = v.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
            let ints: Vec<i128> = v.iter().map(|x| (x * l).to_integer()).collect();
            primitive(&ints)
        })
        .collect()
}

/// Coefficients `lambda` with `sum lambda_j * basis_j = target`, or `None` if
/// `target` is outside the span. `basis` must be linearly independent.
pub fn coordinates(basis: &[Vec<i64>], target: &[i64]) -> Option<Vec<Rational>> {
    let n = target.len();
    let r = basis.len();
    // Augmented system: n equations in r unknowns.
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = basis
                .iter()
                .map(|b| Rational::from_integer(b[i] as i128))
                .collect();
            row.push(Rational::from_integer(target[i] as i128));
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&r) {
        return None;
    }
    debug_assert_eq!(pivots.len(), r, "basis must be independent");
    Some((0..r).map(|j| m[j][r]).collect())
}

/// Nonzero invariant factors of an integer matrix (Smith normal form
/// diagonal).
pub fn smith_invariants(rows: &[Vec<i64>]) -> Vec<i128> {
    let mut m = widen(rows);
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Pick the smallest nonzero entry of the remaining block as pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nrows {
                let q = Integer::div_floor(&m[i][t], &m[t][t]);
                if q != 0 {
                    for j in t..ncols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    m.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..ncols {
                let q = Integer::div_floor(&m[t][j], &m[t][t]);
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: the pivot must divide every remaining entry.
            let bad = (t + 1..nrows)
                .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                .find(|&(i, j)| m[i][j] % m[t][t] != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..ncols {
                        let v = m[i][j];
                        m[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Rank of a matrix over `F_p`; entries are residues in `{0, .., p-1}`.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let pm = p as u128;
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_multiple_of(p)) else {
            continue;
        };
        m.swap(r, piv);
        let inv = crate::poly::pow_mod(m[r][c] % p, p - 2, p) as u128;
        for j in 0..ncols {
            m[r][j] = (m[r][j] as u128 * inv % pm) as u64;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_multiple_of(p) {
                let f = m[i][c] as u128;
                for j in 0..ncols {
                    let sub = f * m[r][j] as u128 % pm;
                    m[i][j] = ((m[i][j] as u128 + pm - sub) % pm) as u64;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
