//! Constructed instances for the coset and congruence-set oracles.

use igusa_core::poly::Polynomial;

use super::poly;

pub struct Instance {
    pub name: &'static str,
    pub fside: Vec<Polynomial>,
    pub g: Polynomial,
}

impl Instance {
    fn new(name: &'static str, n: usize, fside: &[&str], g: &str) -> Self {
        Instance {
            name,
            fside: fside.iter().map(|f| poly(f, n)).collect(),
            g: poly(g, n),
        }
    }

    pub fn n(&self) -> usize {
        self.g.nvars()
    }

    pub fn t(&self) -> usize {
        self.fside.len()
    }
}

/// Pairs whose stacked Jacobian has full rank at their common zeros.
pub fn lemma_instances() -> Vec<Instance> {
    vec![
        Instance::new("x+y | x^2-y", 2, &["x + y"], "x^2 - y"),
        Instance::new("x+y | x^2-yz", 3, &["x + y"], "x^2 - y*z"),
        Instance::new("(x-y, y-z) | x^2-y", 3, &["x - y", "y - z"], "x^2 - y"),
    ]
}

/// Instances where no torus point satisfies the lemma hypotheses.
pub fn vacuous_instances() -> Vec<Instance> {
    vec![Instance::new("(x, y) | x+y", 3, &["x", "y"], "x + y")]
}

pub fn coset_instances() -> Vec<Instance> {
    vec![
        Instance::new("x | y", 2, &["x"], "y"),
        Instance::new("x+y | x^2-y", 2, &["x + y"], "x^2 - y"),
        Instance::new("(x, y) | z", 3, &["x", "y"], "z"),
        Instance::new("(x-y, y-z) | x^2-y", 3, &["x - y", "y - z"], "x^2 - y"),
    ]
}

/// Torus instances; `fside` may be empty (pure measure).
pub fn torus_instances() -> Vec<Instance> {
    vec![
        Instance::new("x+y | x^2-y", 2, &["x + y"], "x^2 - y"),
        Instance::new("- | x^4y^2+xy^5", 2, &[], "x^4*y^2 + x*y^5"),
        Instance::new("x^2+y^3 | x+y", 2, &["x^2 + y^3"], "x + y"),
        Instance::new("(x-y, y-z) | x^2-y", 3, &["x - y", "y - z"], "x^2 - y"),
    ]
}

/// Truncation level keeping each enumeration small.
pub fn level_for(p: u64, n: usize) -> u32 {
    match (p, n) {
        (2, 2) => 7,
        (2, _) => 5,
        (3, 2) => 5,
        (3, _) => 3,
        (_, 2) => 4,
        _ => 3,
    }
}
