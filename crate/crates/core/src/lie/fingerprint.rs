//! Basis-independent invariants used as non-isomorphism certificates.

use serde::Serialize;

use super::algebra::LieAlgebra;
use super::killing::{killing_form, nilradical, signature};
use super::series::{derived_series, dims, lower_central_series};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantFingerprint {
    pub dim: usize,
    pub derived_series: Vec<usize>,
    pub lower_central_series: Vec<usize>,
    pub center: usize,
    pub killing_rank: usize,
    /// `(positive, negative, zero)`.
    pub killing_signature: (usize, usize, usize),
    pub nilradical: usize,
}

pub fn fingerprint(g: &LieAlgebra) -> InvariantFingerprint {
    let b = killing_form(g);
    InvariantFingerprint {
        dim: g.dim(),
        derived_series: dims(&derived_series(g)),
        lower_central_series: dims(&lower_central_series(g)),
        center: g.center().dim(),
        killing_rank: b.rank(),
        killing_signature: signature(&b),
        nilradical: nilradical(g).dim(),
    }
}
