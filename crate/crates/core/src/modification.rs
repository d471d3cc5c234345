//! Modification maps `σ: n -> der(n)` and their graph algebras.
//!
//! Every verdict carries a witness naming the basis pair or triple (or the
//! element) where it fails.

use num_traits::Zero;

use crate::lie::algebra::{LieAlgebra, LieError};
use crate::lie::fingerprint::fingerprint;
use crate::lie::killing::nilradical;
use crate::lie::series::is_solvable;
use crate::linalg::matrix::{Matrix, Vector};
use crate::linalg::poly::RatPoly;
use crate::linalg::rational::{rat, Rational};
use crate::linalg::spectrum::has_purely_imaginary_spectrum;
use crate::linalg::subspace::Subspace;
use crate::nilshadow::{nilshadow, nilshadow_with_v, NilshadowError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModError {
    #[error("image of basis vector {0} is not a derivation of the base")]
    NotDerivation(usize),
    #[error("expected {expected} images of size {expected}x{expected}")]
    Shape { expected: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("modification axioms fail: {0}")]
    AxiomFailure(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Nilshadow(#[from] NilshadowError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Pair(usize, usize),
    Triple(usize, usize, usize),
    /// An element of the base (or of the image span) failing a spectral test.
    Element(Vector),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub ok: bool,
    pub witness: Option<Witness>,
}

impl Check {
    fn pass() -> Self {
        Check { ok: true, witness: None }
    }

    fn fail(w: Witness) -> Self {
        Check {
            ok: false,
            witness: Some(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModReport {
    pub m1: Check,
    pub m2: Check,
    pub m3: Check,
    pub abelian_image: bool,
    /// Set by [`lemma_upgrade`] when valid preconditions fail to imply the
    /// conclusion.
    pub theorem_violation: Option<String>,
}

impl ModReport {
    pub fn all_ok(&self) -> bool {
        self.m1.ok && self.m2.ok && self.m3.ok
    }
}

/// One derivation matrix per basis vector of a nilpotent base algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct ModMap {
    base: LieAlgebra,
    images: Vec<Matrix>,
}

impl ModMap {
    pub fn new(base: LieAlgebra, images: Vec<Matrix>) -> Result<Self, ModError> {
        let n = base.dim();
        if images.len() != n || images.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(ModError::Shape { expected: n });
        }
        if let Some(i) = images.iter().position(|m| !base.is_derivation(m)) {
            return Err(ModError::NotDerivation(i));
        }
        Ok(ModMap { base, images })
    }

    pub fn zero(base: LieAlgebra) -> Self {
        let n = base.dim();
        ModMap {
            images: vec![Matrix::zeros(n, n); n],
            base,
        }
    }

    pub fn base(&self) -> &LieAlgebra {
        &self.base
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// `σ(x)` for an arbitrary vector.
    pub fn apply(&self, x: &[Rational]) -> Matrix {
        let n = self.dim();
        x.iter()
            .zip(&self.images)
            .filter(|(c, _)| !c.is_zero())
            .fold(Matrix::zeros(n, n), |acc, (c, m)| &acc + &m.scale(c))
    }

    /// `σ(x) y` without forming `σ(x)`.
    pub fn act(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let n = self.dim();
        let mut out = vec![rat(0); n];
        for (c, m) in x.iter().zip(&self.images) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(m.apply(y)) {
                *o += c * v;
            }
        }
        out
    }

    /// Joint kernel `{x : σ(x) = 0}`.
    pub fn kernel(&self) -> Subspace {
        let n = self.dim();
        let cols: Vec<Vector> = self.images.iter().map(Matrix::flatten).collect();
        Matrix::from_cols(n * n, &cols).kernel()
    }

    fn basis(&self, i: usize) -> Vector {
        self.base.basis_vector(i)
    }
}

pub fn check_m1(s: &ModMap) -> Check {
    let n = s.dim();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = s.apply(s.base.structure(i, j));
            if lhs != s.images[i].commutator(&s.images[j]) {
                return Check::fail(Witness::Pair(i, j));
            }
        }
    }
    Check::pass()
}

fn commuting_failure(s: &ModMap) -> Option<(usize, usize)> {
    let n = s.dim();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !s.images[i].commutator(&s.images[j]).is_zero())
}

fn semisimple_imaginary(m: &Matrix) -> bool {
    let chi = RatPoly::char_poly(m).expect("square");
    chi.squarefree_part().eval_matrix(m).is_zero() && has_purely_imaginary_spectrum(m).expect("square")
}

/// Finite form of precompactness: the images commute and every element of
/// an echelon basis of their span is semisimple with purely imaginary
/// spectrum. Commuting semisimple maps diagonalize simultaneously over the
/// complex numbers, so the whole span then passes. On failure the witness is
/// the first failing basis image, if any.
pub fn check_m2(s: &ModMap) -> Check {
    if let Some((i, j)) = commuting_failure(s) {
        return Check::fail(Witness::Pair(i, j));
    }
    let n = s.dim();
    let span = Subspace::from_vectors(n * n, s.images.iter().map(Matrix::flatten).collect());
    for b in span.basis() {
        let m = Matrix::from_flat(n, n, b.clone());
        if !semisimple_imaginary(&m) {
            if let Some(i) = (0..n).find(|&i| !semisimple_imaginary(&s.images[i])) {
                return Check::fail(Witness::Element(s.basis(i)));
            }
            // Express the failing matrix through basis images: solve σ(x) = m.
            let cols: Vec<Vector> = s.images.iter().map(Matrix::flatten).collect();
            let x = Matrix::from_cols(n * n, &cols).solve(b).unwrap_or_default();
            return Check::fail(Witness::Element(x));
        }
    }
    Check::pass()
}

pub fn check_m3(s: &ModMap) -> Check {
    let n = s.dim();
    let ker = s.kernel();
    for i in 0..n {
        for j in 0..n {
            if !ker.contains(&s.images[i].col(j)) {
                return Check::fail(Witness::Pair(i, j));
            }
        }
    }
    Check::pass()
}

pub fn check_all(s: &ModMap) -> ModReport {
    ModReport {
        m1: check_m1(s),
        m2: check_m2(s),
        m3: check_m3(s),
        abelian_image: commuting_failure(s).is_none(),
        theorem_violation: None,
    }
}

/// `[x, y] + σ(x) y - σ(y) x`.
fn graph_bracket(s: &ModMap, x: &[Rational], y: &[Rational]) -> Vector {
    let mut b = s.base.br(x, y);
    let a = s.act(x, y);
    let c = s.act(y, x);
    for k in 0..b.len() {
        b[k] = &b[k] + &a[k] - &c[k];
    }
    b
}

/// First basis pair where `{X + σX}` fails to be closed in `n ⋊ der(n)`:
/// closure means `σ([X,Y]_σ) = [σX, σY]`.
fn graph_closure_failure(s: &ModMap) -> Option<(usize, usize)> {
    let n = s.dim();
    for i in 0..n {
        for j in i + 1..n {
            let b = graph_bracket(s, &s.basis(i), &s.basis(j));
            if s.apply(&b) != s.images[i].commutator(&s.images[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// The upgrade lemma as an oracle: given an abelian, (m2)-valid map whose
/// graph is closed, (m1) and (m3) must follow.
pub fn lemma_upgrade(s: &ModMap) -> Result<ModReport, ModError> {
    let mut report = check_all(s);
    if !report.abelian_image {
        let (i, j) = commuting_failure(s).unwrap();
        return Err(ModError::Precondition(format!("images of {i} and {j} do not commute")));
    }
    if !report.m2.ok {
        return Err(ModError::Precondition(format!("(m2) fails: {:?}", report.m2.witness)));
    }
    if let Some((i, j)) = graph_closure_failure(s) {
        return Err(ModError::Precondition(format!("graph not closed at ({i}, {j})")));
    }
    if !report.m1.ok || !report.m3.ok {
        report.theorem_violation = Some(format!(
            "(m1) {:?}, (m3) {:?} despite valid preconditions",
            report.m1.witness, report.m3.witness
        ));
    }
    Ok(report)
}

fn require_axioms(s: &ModMap) -> Result<(), ModError> {
    let r = check_all(s);
    if r.all_ok() {
        Ok(())
    } else {
        Err(ModError::AxiomFailure(format!(
            "m1 {:?}, m2 {:?}, m3 {:?}",
            r.m1.witness, r.m2.witness, r.m3.witness
        )))
    }
}

/// Algebra on the base coordinates with `[x, y]_σ = [x, y] + σ(x)y - σ(y)x`.
pub fn graph_algebra(s: &ModMap) -> Result<LieAlgebra, ModError> {
    require_axioms(s)?;
    let n = s.dim();
    let mut st = vec![vec![vec![rat(0); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                st[i][j] = graph_bracket(s, &s.basis(i), &s.basis(j));
            }
        }
    }
    let g = LieAlgebra::new(s.base.labels().to_vec(), st)?;
    if !is_solvable(&g) {
        return Err(ModError::AxiomFailure("graph algebra is not solvable".into()));
    }
    Ok(g)
}

pub fn kernel_is_nilradical(s: &ModMap) -> Result<bool, ModError> {
    let g = graph_algebra(s)?;
    Ok(s.kernel() == nilradical(&g))
}

/// A complement `w` of `ker σ` with `σ(n) w = 0`, or `None` if the
/// decomposition `n = ker σ ⊕ w` fails.
pub fn invariant_complement(s: &ModMap) -> Option<Subspace> {
    let n = s.dim();
    let rows: Vec<Vector> = s.images.iter().flat_map(Matrix::to_rows).collect();
    let fixed = Matrix::from_rows(rows).kernel();
    let ker = s.kernel();
    let w = Subspace::from_vectors(n, ker.intersect(&fixed).complement_in(&fixed));
    (ker.dim() + w.dim() == n && ker.sum(&w).is_full()).then_some(w)
}

/// The nilshadow of `Gr(σ)` taken along `w` reproduces the base structure
/// constants, and the default nilshadow has the base fingerprint.
pub fn shadow_roundtrip(s: &ModMap, seed: u64) -> Result<bool, ModError> {
    let g = graph_algebra(s)?;
    let Some(w) = invariant_complement(s) else {
        return Ok(false);
    };
    let along_w = nilshadow_with_v(&g, &w)?;
    if !same_structure(&along_w.shadow, &s.base) {
        return Ok(false);
    }
    let default = nilshadow(&g, seed)?;
    Ok(fingerprint(&default.shadow) == fingerprint(&s.base))
}

/// Equality of structure constants, ignoring labels.
pub fn same_structure(a: &LieAlgebra, b: &LieAlgebra) -> bool {
    a.dim() == b.dim()
        && (0..a.dim()).all(|i| (0..a.dim()).all(|j| a.structure(i, j) == b.structure(i, j)))
}

/// Both displayed identities of the upgrade proof, on all basis pairs and
/// triples:
///   σ[X, Y] = σ(σ(Y)X) - σ(σ(X)Y),
///   σ[[X1, X2], X3] = σ( σ(σX1 X2) X3 - σ(σX2 X1) X3 - σ(σX3 X1) X2
///                        + σ(σX3 X2) X1 + σX2 (σX3 X1) - σX1 (σX3 X2) ).
pub fn sigma_identities(s: &ModMap) -> Check {
    let n = s.dim();
    // both sides are σ of a vector, so each identity is membership in ker σ
    let ker = s.kernel();
    let col = |i: usize, j: usize| s.images[i].col(j);
    for i in 0..n {
        for j in 0..n {
            let mut v = s.base.structure(i, j).clone();
            for ((x, a), b) in v.iter_mut().zip(col(j, i)).zip(col(i, j)) {
                *x += b - a;
            }
            if !ker.contains(&v) {
                return Check::fail(Witness::Pair(i, j));
            }
        }
    }
    // σ(σ(e_a) e_b) and σ(e_a) σ(e_b); every term below is one of their columns
    let sig: Vec<Vec<Matrix>> = (0..n).map(|a| (0..n).map(|b| s.apply(&col(a, b))).collect()).collect();
    let prod: Vec<Vec<Matrix>> = (0..n)
        .map(|a| (0..n).map(|b| &s.images[a] * &s.images[b]).collect())
        .collect();
    for i in 0..n {
        for j in 0..n {
            let c12 = s.base.structure(i, j);
            for k in 0..n {
                let mut v = s.base.br(c12, &s.basis(k));
                let terms = [
                    (sig[i][j].col(k), -1),
                    (sig[j][i].col(k), 1),
                    (sig[k][i].col(j), 1),
                    (sig[k][j].col(i), -1),
                    (prod[j][k].col(i), -1),
                    (prod[i][k].col(j), 1),
                ];
                for (t, sign) in &terms {
                    for (x, y) in v.iter_mut().zip(t) {
                        if *sign > 0 {
                            *x += y;
                        } else {
                            *x -= y;
                        }
                    }
                }
                if !ker.contains(&v) {
                    return Check::fail(Witness::Triple(i, j, k));
                }
            }
        }
    }
    Check::pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn rot_on_abelian3() -> ModMap {
        let z = Matrix::zeros(3, 3);
        ModMap::new(LieAlgebra::abelian(3), vec![z.clone(), z, catalog::rotation(3, 0, 1)]).unwrap()
    }

    #[test]
    fn rotation_on_abelian3() {
        let s = rot_on_abelian3();
        let r = check_all(&s);
        assert!(r.all_ok() && r.abelian_image);
        let g = graph_algebra(&s).unwrap();
        assert!(same_structure(&g, &catalog::e2()));
        assert!(kernel_is_nilradical(&s).unwrap());
        assert!(shadow_roundtrip(&s, 5).unwrap());
        assert!(sigma_identities(&s).ok);
        let up = lemma_upgrade(&s).unwrap();
        assert!(up.all_ok() && up.theorem_violation.is_none());
    }

    #[test]
    fn zero_map_passes_everything() {
        let s = ModMap::zero(catalog::heisenberg(1));
        assert!(check_all(&s).all_ok());
        assert_eq!(graph_algebra(&s).unwrap(), catalog::heisenberg(1));
        assert!(kernel_is_nilradical(&s).unwrap());
        assert!(shadow_roundtrip(&s, 0).unwrap());
        assert!(sigma_identities(&s).ok);
        assert!(lemma_upgrade(&s).unwrap().theorem_violation.is_none());
    }

    #[test]
    fn m1_failure_on_heisenberg() {
        let z = Matrix::zeros(3, 3);
        let s = ModMap::new(catalog::heisenberg(1), vec![z.clone(), z, catalog::rotation(3, 0, 1)]).unwrap();
        assert_eq!(check_m1(&s).witness, Some(Witness::Pair(0, 1)));
    }

    #[test]
    fn m2_examples() {
        let z = Matrix::zeros(3, 3);
        let hyperbolic = Matrix::diag(&[rat(1), rat(-1), rat(0)]);
        let s = ModMap::new(LieAlgebra::abelian(3), vec![z.clone(), z.clone(), hyperbolic]).unwrap();
        assert_eq!(check_m2(&s).witness, Some(Witness::Element(vec![rat(0), rat(0), rat(1)])));
        assert!(check_m2(&rot_on_abelian3()).ok);
        // nilpotent image: imaginary spectrum but not semisimple
        let mut nil = Matrix::zeros(3, 3);
        nil[(1, 0)] = rat(1);
        let s = ModMap::new(LieAlgebra::abelian(3), vec![z.clone(), z, nil]).unwrap();
        assert!(!check_m2(&s).ok);
    }

    #[test]
    fn m3_failure_on_abelian2() {
        // σ(e1): e1 -> e2; σ(e2) nonzero so σ(σ(e1)e1) = σ(e2) ≠ 0
        let mut a = Matrix::zeros(2, 2);
        a[(1, 0)] = rat(1);
        let s = ModMap::new(LieAlgebra::abelian(2), vec![a.clone(), a]).unwrap();
        assert_eq!(check_m3(&s).witness, Some(Witness::Pair(0, 0)));
    }

    #[test]
    fn non_abelian_image_is_a_precondition_failure() {
        // rotations in the (1,2) and (2,3) planes do not commute
        let z = Matrix::zeros(5, 5);
        let s = ModMap::new(
            LieAlgebra::abelian(5),
            vec![z.clone(), z.clone(), z.clone(), catalog::rotation(5, 0, 1), catalog::rotation(5, 1, 2)],
        )
        .unwrap();
        assert!(matches!(lemma_upgrade(&s), Err(ModError::Precondition(_))));
    }

    #[test]
    fn invariant_complement_of_rotation() {
        let w = invariant_complement(&rot_on_abelian3()).unwrap();
        assert_eq!(w, Subspace::from_vectors(3, vec![vec![rat(0), rat(0), rat(1)]]));
    }
}
