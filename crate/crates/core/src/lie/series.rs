//! Derived and lower central series.

use super::algebra::LieAlgebra;
use crate::linalg::subspace::Subspace;

/// `s, [s,s], [[s,s],[s,s]], ...` until the next term repeats.
pub fn derived_series_of(g: &LieAlgebra, s: &Subspace) -> Vec<Subspace> {
    let mut out = vec![s.clone()];
    loop {
        let cur = out.last().unwrap();
        let next = g.bracket_spaces(cur, cur);
        if next == *cur {
            return out;
        }
        out.push(next);
    }
}

/// `s, [s,s], [s,[s,s]], ...` until the next term repeats.
pub fn lower_central_series_of(g: &LieAlgebra, s: &Subspace) -> Vec<Subspace> {
    let mut out = vec![s.clone()];
    loop {
        let cur = out.last().unwrap();
        let next = g.bracket_spaces(s, cur);
        if next == *cur {
            return out;
        }
        out.push(next);
    }
}

pub fn derived_series(g: &LieAlgebra) -> Vec<Subspace> {
    derived_series_of(g, &g.full())
}

pub fn lower_central_series(g: &LieAlgebra) -> Vec<Subspace> {
    lower_central_series_of(g, &g.full())
}

pub fn is_solvable(g: &LieAlgebra) -> bool {
    derived_series(g).last().unwrap().is_zero()
}

pub fn is_nilpotent(g: &LieAlgebra) -> bool {
    lower_central_series(g).last().unwrap().is_zero()
}

/// Whether the subalgebra `s` is solvable.
pub fn is_solvable_subspace(g: &LieAlgebra, s: &Subspace) -> bool {
    derived_series_of(g, s).last().unwrap().is_zero()
}

/// Whether the subalgebra `s` is nilpotent.
pub fn is_nilpotent_subspace(g: &LieAlgebra, s: &Subspace) -> bool {
    lower_central_series_of(g, s).last().unwrap().is_zero()
}

pub fn dims(series: &[Subspace]) -> Vec<usize> {
    series.iter().map(Subspace::dim).collect()
}
