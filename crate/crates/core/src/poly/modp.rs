use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{pow_mod, ExponentVector, Polynomial};

/// Polynomial over `F_p` obtained by reducing integer coefficients.
///
/// Coefficients live in `{1, .., p-1}`; zero coefficients are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    p: u64,
    nvars: usize,
    terms: BTreeMap<ExponentVector, u64>,
}

impl ModPoly {
    pub(super) fn from_polynomial(f: &Polynomial, p: u64) -> Self {
        let m = BigInt::from(p);
        let terms = f
            .terms()
            .filter_map(|(e, c)| {
                let r = c.mod_floor(&m).to_u64().expect("residue below p");
                (r != 0).then(|| (e.clone(), r))
            })
            .collect();
        ModPoly {
            p,
            nvars: f.nvars(),
            terms,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, u64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    /// Value at a point whose coordinates are residues mod `p`.
    pub fn eval(&self, point: &[u64]) -> u64 {
        let p = self.p as u128;
        let mut acc: u128 = 0;
        for (e, &c) in &self.terms {
            let mut t = c as u128;
            for (&a, &k) in point.iter().zip(e.as_slice()) {
                if k > 0 {
                    t = t * pow_mod(a, k as u64, self.p) as u128 % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc as u64
    }

    pub fn partial_derivative(&self, var: usize) -> ModPoly {
        let mut terms = BTreeMap::new();
        for (e, &c) in &self.terms {
            let d = e.as_slice()[var] as u64;
            let c = (c as u128 * (d % self.p) as u128 % self.p as u128) as u64;
            if c == 0 {
                continue;
            }
            let mut ne = e.as_slice().to_vec();
            ne[var] -= 1;
            terms.insert(ExponentVector::new(ne), c);
        }
        ModPoly {
            p: self.p,
            nvars: self.nvars,
            terms,
        }
    }

    fn insert(&mut self, e: ExponentVector, c: u64) {
        let slot = self.terms.entry(e.clone()).or_insert(0);
        *slot = (*slot + c) % self.p;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }
}

impl Add for &ModPoly {
    type Output = ModPoly;
    fn add(self, rhs: &ModPoly) -> ModPoly {
        assert_eq!(self.p, rhs.p, "moduli differ");
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.insert(e.clone(), c);
        }
        out
    }
}

impl Mul for &ModPoly {
    type Output = ModPoly;
    fn mul(self, rhs: &ModPoly) -> ModPoly {
        assert_eq!(self.p, rhs.p, "moduli differ");
        let mut out = ModPoly {
            p: self.p,
            nvars: self.nvars,
            terms: BTreeMap::new(),
        };
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &rhs.terms {
                let e: Vec<u32> = ea
                    .as_slice()
                    .iter()
                    .zip(eb.as_slice())
                    .map(|(a, b)| a + b)
                    .collect();
                let c = (ca as u128 * cb as u128 % self.p as u128) as u64;
                out.insert(ExponentVector::new(e), c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use proptest::prelude::*;

    fn poly(s: &str) -> Polynomial {
        parse_polynomial(s, 2).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(poly("3*x + 7*y").reduce_mod_p(7), poly("3*x").reduce_mod_p(7));
        let g = poly("x^4*y^2 + x*y^5");
        let r = g.reduce_mod_p(5);
        assert_eq!(r.terms().count(), 2);
        assert!(r.terms().all(|(_, c)| c == 1));
        for p in [2u64, 3, 5, 13] {
            let f = poly(&format!("{p}*x"));
            assert!(f.reduce_mod_p(p).is_zero());
        }
        let neg = poly("-x").reduce_mod_p(5);
        assert_eq!(neg.terms().next().unwrap().1, 4);
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..5, 2), -40i64..40), 0..6).prop_map(|t| {
            Polynomial::from_terms(2, t.into_iter().map(|(e, c)| (e, BigInt::from(c)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn reduction_is_a_ring_map(
            f in arb_poly(),
            g in arb_poly(),
            p in prop::sample::select(vec![2u64, 3, 5, 7, 13]),
        ) {
            prop_assert_eq!((&f + &g).reduce_mod_p(p), &f.reduce_mod_p(p) + &g.reduce_mod_p(p));
            prop_assert_eq!((&f * &g).reduce_mod_p(p), &f.reduce_mod_p(p) * &g.reduce_mod_p(p));
            for v in 0..2 {
                prop_assert_eq!(
                    f.partial_derivative(v).unwrap().reduce_mod_p(p),
                    f.reduce_mod_p(p).partial_derivative(v)
                );
            }
        }

        #[test]
        fn eval_agrees_with_integer_evaluation(f in arb_poly(), a in 0i64..13, b in 0i64..13) {
            for p in [2u64, 3, 11] {
                let r = f.reduce_mod_p(p);
                prop_assert_eq!(r.eval(&[a as u64 % p, b as u64 % p]), f.evaluate_mod(&[a, b], p).unwrap());
            }
        }
    }
}
