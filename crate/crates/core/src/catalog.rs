//! Named example algebras with their expected invariants.

use crate::lie::algebra::{LieAlgebra, LieError};
use crate::lie::fingerprint::{fingerprint, InvariantFingerprint};
use crate::linalg::matrix::{Matrix, Vector};
use crate::linalg::rational::{rat, ratio, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
    pub expected: InvariantFingerprint,
    pub automorphisms: Vec<(String, Matrix)>,
    pub derivations: Vec<(String, Matrix)>,
    /// Candidate modification maps: one derivation matrix per basis vector.
    pub modmaps: Vec<(String, Vec<Matrix>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    Unknown(String),
    #[error("catalog entry {name} does not match its documented fingerprint")]
    FingerprintMismatch { name: String },
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Names accepted by [`build`] in listing order; parameterised families
/// also accept other sizes (`abelian7`, `heisenberg(9)`).
pub const NAMES: &[&str] = &["abelian3", "heisenberg3", "heisenberg5", "sl2", "so3", "e2", "heis_rot"];

fn unit(dim: usize, k: usize, c: i64) -> Vector {
    let mut v = vec![rat(0); dim];
    v[k] = rat(c);
    v
}

fn fp(
    dim: usize,
    derived: &[usize],
    lcs: &[usize],
    center: usize,
    rank: usize,
    sig: (usize, usize, usize),
    nil: usize,
) -> InvariantFingerprint {
    InvariantFingerprint {
        dim,
        derived_series: derived.to_vec(),
        lower_central_series: lcs.to_vec(),
        center,
        killing_rank: rank,
        killing_signature: sig,
        nilradical: nil,
    }
}

/// Planar rotation `a -> b, b -> -a` on a `dim`-space.
pub fn rotation(dim: usize, a: usize, b: usize) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    m[(b, a)] = rat(1);
    m[(a, b)] = rat(-1);
    m
}

fn parse_size(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    let rest = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
    rest.parse().ok()
}

pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::abelian(n)
}

/// Basis `X1..Xk, Y1..Yk, Z` with `[Xi, Yi] = Z`; labels `X, Y, Z` for `k = 1`.
pub fn heisenberg(k: usize) -> LieAlgebra {
    let dim = 2 * k + 1;
    let labels: Vec<String> = if k == 1 {
        vec!["X".into(), "Y".into(), "Z".into()]
    } else {
        (1..=k)
            .map(|i| format!("X{i}"))
            .chain((1..=k).map(|i| format!("Y{i}")))
            .chain(std::iter::once("Z".to_string()))
            .collect()
    };
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let br: Vec<(usize, usize, Vector)> = (0..k).map(|i| (i, k + i, unit(dim, 2 * k, 1))).collect();
    LieAlgebra::from_brackets(&refs, &br).expect("heisenberg is a Lie algebra")
}

/// Basis `H, E, F`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_brackets(
        &["H", "E", "F"],
        &[(0, 1, unit(3, 1, 2)), (0, 2, unit(3, 2, -2)), (1, 2, unit(3, 0, 1))],
    )
    .expect("sl2 is a Lie algebra")
}

/// Basis `A, B, C` with cyclic brackets.
pub fn so3() -> LieAlgebra {
    LieAlgebra::from_brackets(
        &["A", "B", "C"],
        &[(0, 1, unit(3, 2, 1)), (1, 2, unit(3, 0, 1)), (2, 0, unit(3, 1, 1))],
    )
    .expect("so3 is a Lie algebra")
}

/// Basis `X, Y, T` with `[T, X] = Y`, `[T, Y] = -X`.
pub fn e2() -> LieAlgebra {
    LieAlgebra::abelian(2)
        .with_labels(vec!["X".into(), "Y".into()])
        .semidirect_by_derivations(&[("T".into(), rotation(2, 0, 1))], &[])
        .expect("rotation is a derivation")
}

/// Heisenberg `X, Y, Z` extended by `T` acting as the rotation
/// `X -> Y, Y -> -X, Z -> 0`.
pub fn heis_rot() -> LieAlgebra {
    heisenberg(1)
        .semidirect_by_derivations(&[("T".into(), rotation(3, 0, 1))], &[])
        .expect("rotation is a derivation of the Heisenberg algebra")
}

fn diag(entries: &[Rational]) -> Matrix {
    Matrix::diag(entries)
}

pub fn build(name: &str) -> Result<CatalogEntry, CatalogError> {
    let unknown = || CatalogError::Unknown(name.to_string());
    let entry = if let Some(n) = parse_size(name, "abelian") {
        if n == 0 {
            return Err(unknown());
        }
        let mut modmaps = Vec::new();
        if n == 3 {
            let z = Matrix::zeros(3, 3);
            modmaps.push(("rot".to_string(), vec![z.clone(), z, rotation(3, 0, 1)]));
        }
        CatalogEntry {
            name: format!("abelian{n}"),
            algebra: abelian(n),
            expected: fp(n, &[n, 0], &[n, 0], n, 0, (0, 0, n), n),
            automorphisms: vec![("half".into(), Matrix::identity(n).scale(&ratio(1, 2)))],
            derivations: if n >= 2 { vec![("rot".into(), rotation(n, 0, 1))] } else { vec![] },
            modmaps,
        }
    } else if let Some(d) = parse_size(name, "heisenberg") {
        if d < 3 || d % 2 == 0 {
            return Err(unknown());
        }
        let k = (d - 1) / 2;
        let mut scale = vec![ratio(1, 2); 2 * k];
        scale.push(ratio(1, 4));
        let mut autos = vec![("contract".to_string(), diag(&scale))];
        let mut modmaps = Vec::new();
        if k == 1 {
            autos.push(("skew".into(), diag(&[ratio(1, 2), ratio(1, 3), ratio(1, 4)])));
            let z = Matrix::zeros(3, 3);
            // sigma(Z) nonzero although [sigma X, sigma Y] = 0: fails (m1)
            modmaps.push(("bad_m1".into(), vec![z.clone(), z, rotation(3, 0, 1)]));
        }
        CatalogEntry {
            name: format!("heisenberg{d}"),
            algebra: heisenberg(k),
            expected: fp(d, &[d, 1, 0], &[d, 1, 0], 1, 0, (0, 0, d), d),
            automorphisms: autos,
            derivations: vec![("rot".into(), rotation(d, 0, k))],
            modmaps,
        }
    } else {
        match name {
            "sl2" => CatalogEntry {
                name: name.into(),
                algebra: sl2(),
                expected: fp(3, &[3], &[3], 0, 3, (2, 1, 0), 0),
                automorphisms: vec![],
                derivations: vec![],
                modmaps: vec![],
            },
            "so3" => CatalogEntry {
                name: name.into(),
                algebra: so3(),
                expected: fp(3, &[3], &[3], 0, 3, (0, 3, 0), 0),
                automorphisms: vec![],
                derivations: vec![],
                modmaps: vec![],
            },
            "e2" => CatalogEntry {
                name: name.into(),
                algebra: e2(),
                expected: fp(3, &[3, 2, 0], &[3, 2], 0, 1, (0, 1, 2), 2),
                automorphisms: vec![],
                derivations: vec![],
                modmaps: vec![],
            },
            "heis_rot" => CatalogEntry {
                name: name.into(),
                algebra: heis_rot(),
                expected: fp(4, &[4, 3, 1, 0], &[4, 3], 1, 1, (0, 1, 3), 3),
                automorphisms: vec![],
                derivations: vec![],
                modmaps: vec![],
            },
            _ => return Err(unknown()),
        }
    };
    if fingerprint(&entry.algebra) != entry.expected {
        return Err(CatalogError::FingerprintMismatch { name: entry.name });
    }
    Ok(entry)
}
