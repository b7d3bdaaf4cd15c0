//! The local factors `L_delta` and lattice sums `S_delta`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factored::{exponent, p_pow, ExpFactor, FactoredZeta, LaurentPoly};
use super::ZetaError;
use crate::counting::CountTriple;
use crate::fan::SimplicialPiece;
use crate::linalg;

fn q(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `(p-1)^n - P p/(p+1)`, shared by all three modes.
fn base_term(c: &CountTriple, p: u64, n: usize) -> BigRational {
    let pm1 = num_traits::pow(q(p - 1), n);
    pm1 - q(c.p) * q(p) / q(p + 1)
}

/// Ideal mode: `p^-n ((p-1)^n - P p/(p+1))`, constant in `s`. Here `P` counts
/// the torus zeros of `g_delta`.
pub fn l_delta_ideal(c: &CountTriple, p: u64, n: usize) -> FactoredZeta {
    FactoredZeta::constant(p_pow(p, -(n as i64)) * base_term(c, p, n))
}

/// Single polynomial:
/// `p^-n ((p-1)^n - p N (p^s-1)/(p^(s+1)-1) - P p/(p+1)
///        - p Q (p^s (p+1) - 2)/((p^(s+1)-1)(p+1)))`.
pub fn l_delta_single(c: &CountTriple, p: u64, n: usize) -> FactoredZeta {
    let pn = p_pow(p, -(n as i64));
    if c.n == 0 && c.q == 0 {
        return FactoredZeta::constant(pn * base_term(c, p, n));
    }
    let t_inv = |coef: BigRational| LaurentPoly::monomial(coef, -1);
    let konst = LaurentPoly::constant;
    // Everything multiplied through by p^(s+1) - 1 = p t^-1 - 1.
    let factor = ExpFactor::new(1, 1).expect("valid factor");
    let first = factor.as_laurent(p).scale(&base_term(c, p, n));
    // p N (p^s - 1)
    let second = t_inv(q(p) * q(c.n)).add(&konst(-(q(p) * q(c.n))));
    // p Q (p^s (p+1) - 2) / (p+1)
    let qq = q(p) * q(c.q) / q(p + 1);
    let fourth = t_inv(&qq * q(p + 1)).add(&konst(-(qq * q(2))));
    let num = first
        .add(&second.scale(&-BigRational::one()))
        .add(&fourth.scale(&-BigRational::one()))
        .scale(&pn);
    FactoredZeta::new(num, vec![factor])
}

/// Mapping with `t` components:
/// `p^-n ((p-1)^n - p^t N (p^s-1)/(p^(s+t)-1) - P p/(p+1)
///        - p Q (p^(t-1) (p^s (p+1) - 1) - 1)/((p^(s+t)-1)(p+1)))`.
pub fn l_delta_mapping(c: &CountTriple, p: u64, n: usize, t: usize) -> FactoredZeta {
    let pn = p_pow(p, -(n as i64));
    if c.n == 0 && c.q == 0 {
        return FactoredZeta::constant(pn * base_term(c, p, n));
    }
    let t = t as i64;
    let pt = p_pow(p, t);
    let pt1 = p_pow(p, t - 1);
    // Multiplied through by p^(s+t) - 1 = p^t t^-1 - 1.
    let factor = ExpFactor::new(1, t).expect("valid factor");
    let first = factor.as_laurent(p).scale(&base_term(c, p, n));
    // p^t N (p^s - 1)
    let ptn = &pt * q(c.n);
    let second = LaurentPoly::monomial(ptn.clone(), -1).add(&LaurentPoly::constant(-ptn));
    // p Q / (p+1) * (p^(t-1) (p+1) p^s - p^(t-1) - 1)
    let qq = q(p) * q(c.q) / q(p + 1);
    let inner =
        LaurentPoly::monomial(&pt1 * q(p + 1), -1).add(&LaurentPoly::constant(-(&pt1 + BigRational::one())));
    let fourth = inner.scale(&qq);
    let num = first
        .add(&second.scale(&-BigRational::one()))
        .add(&fourth.scale(&-BigRational::one()))
        .scale(&pn);
    FactoredZeta::new(num, vec![factor])
}

/// Weights of `A(v) = m_f(v) s + m_g(v) + sigma(v)` as the pair
/// `(m_f(v), m_g(v) + sigma(v))`.
pub fn weight(mf: &dyn Fn(&[i64]) -> i64, mg: &dyn Fn(&[i64]) -> i64, v: &[i64]) -> (i64, i64) {
    (mf(v), mg(v) + v.iter().sum::<i64>())
}

/// One simplicial piece of `S_delta`: `sum_h p^(A(h)) / prod_j (p^(A(k_j)) - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SPiece {
    /// `(a, b)` for each term `p^(a s + b)`, in parallelepiped-point order.
    pub numerator: Vec<(i64, i64)>,
    pub factors: Vec<ExpFactor>,
}

/// `S_delta` kept symbolic in `p` for display.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SDelta {
    pub pieces: Vec<SPiece>,
}

impl SDelta {
    pub fn to_factored(&self, p: u64) -> FactoredZeta {
        self.pieces.iter().fold(FactoredZeta::zero(), |acc, piece| {
            let num = piece.numerator.iter().fold(LaurentPoly::zero(), |l, &(a, b)| {
                l.add(&LaurentPoly::monomial(p_pow(p, b), -a))
            });
            acc.add(&FactoredZeta::new(num, piece.factors.clone()), p)
        })
    }

    /// Text such as `(1 + p^{8s+10})/((p^{11s+12}-1)(p^{5s+8}-1))`, with
    /// `base` standing for `p`.
    pub fn render(&self, base: &str) -> String {
        self.pieces
            .iter()
            .map(|piece| {
                let terms: Vec<String> = piece
                    .numerator
                    .iter()
                    .map(|&(a, b)| {
                        if (a, b) == (0, 0) {
                            "1".to_string()
                        } else {
                            format!("{base}^{{{}}}", exponent(a, b))
                        }
                    })
                    .collect();
                let num = if terms.len() == 1 {
                    terms[0].clone()
                } else {
                    format!("({})", terms.join(" + "))
                };
                match piece.factors.len() {
                    0 => num,
                    1 => format!("{num}/({})", piece.factors[0].render(base)),
                    _ => format!(
                        "{num}/({})",
                        piece
                            .factors
                            .iter()
                            .map(|f| format!("({})", f.render(base)))
                            .join("")
                    ),
                }
            })
            .join(" + ")
    }
}

/// `S_delta` over a decomposition of the cone into simplicial pieces.
/// `mf` and `mg` must be linear on the closure of every piece.
pub fn s_delta(
    pieces: &[SimplicialPiece],
    mf: &dyn Fn(&[i64]) -> i64,
    mg: &dyn Fn(&[i64]) -> i64,
) -> Result<SDelta, ZetaError> {
    let pieces = pieces
        .iter()
        .map(|piece| {
            let ray_w: Vec<(i64, i64)> = piece.rays.iter().map(|k| weight(mf, mg, k)).collect();
            let numerator = piece
                .pp_points
                .iter()
                .map(|h| {
                    let w = weight(mf, mg, h);
                    check_linear(piece, &ray_w, h, w)?;
                    Ok(w)
                })
                .collect::<Result<Vec<_>, ZetaError>>()?;
            let factors = ray_w
                .iter()
                .map(|&(a, b)| ExpFactor::new(a, b))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SPiece { numerator, factors })
        })
        .collect::<Result<Vec<_>, ZetaError>>()?;
    Ok(SDelta { pieces })
}

fn check_linear(
    piece: &SimplicialPiece,
    ray_w: &[(i64, i64)],
    h: &[i64],
    w: (i64, i64),
) -> Result<(), ZetaError> {
    if piece.rays.is_empty() {
        return Ok(());
    }
    let lam = linalg::coordinates(&piece.rays, h).ok_or(ZetaError::NonLinearWeight)?;
    let interp = |sel: fn(&(i64, i64)) -> i64| {
        lam.iter()
            .zip(ray_w)
            .fold(linalg::Rational::zero(), |acc, (l, rw)| {
                acc + l * linalg::Rational::from_integer(sel(rw) as i128)
            })
    };
    if interp(|x| x.0) != linalg::Rational::from_integer(w.0 as i128)
        || interp(|x| x.1) != linalg::Rational::from_integer(w.1 as i128)
    {
        return Err(ZetaError::NonLinearWeight);
    }
    Ok(())
}
