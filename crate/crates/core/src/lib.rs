//! Igusa local zeta functions of monomial ideals, polynomials and polynomial
//! mappings with respect to a weighting measure `|g||dx|`, computed from
//! Newton polyhedra.

pub mod counting;
pub mod fan;
pub mod linalg;
pub mod newton;
pub mod oracle;
pub mod pipeline;
pub mod poly;
pub mod problem;
pub mod zeta;
