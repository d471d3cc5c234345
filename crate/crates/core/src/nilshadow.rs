//! Nilshadows of solvable type (R) algebras.
//!
//! Given `g = nil(g) ⊕ v` with `ad_s(v) v = 0`, the bracket
//! `[X, Y]_nil = [X, Y] - ad_s(π_v X) Y + ad_s(π_v Y) X` is nilpotent.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lie::algebra::{LieAlgebra, LieError};
use crate::lie::killing::nilradical;
use crate::lie::series::{is_nilpotent, is_nilpotent_subspace, is_solvable};
use crate::lie::typer::is_type_r;
use crate::linalg::jordan::jordan_chevalley;
use crate::linalg::matrix::{Matrix, Vector};
use crate::linalg::rational::rat;
use crate::linalg::subspace::Subspace;
use crate::modification::ModMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NilshadowError {
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("algebra is not of type (R): ad has a non-imaginary eigenvalue at {0}")]
    NotTypeR(String),
    #[error("no verified Cartan subalgebra within {attempts} attempts (seed {seed})")]
    CartanBudget { attempts: usize, seed: u64 },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Everything produced along the way to the shadow algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct ShadowData {
    pub source: LieAlgebra,
    pub nilradical: Subspace,
    pub v: Subspace,
    /// Projection onto `v` with kernel the nilradical.
    pub projection_v: Matrix,
    /// `ad_s` of each echelon basis vector of `v`.
    pub ad_s_table: Vec<Matrix>,
    pub shadow: LieAlgebra,
}

impl ShadowData {
    /// `ad_s(π_v(e_i))` for every basis vector.
    pub fn sigma_images(&self) -> Vec<Matrix> {
        let n = self.source.dim();
        (0..n)
            .map(|i| self.sigma_of(&self.projection_v.col(i)))
            .collect()
    }

    /// `ad_s(w)` for `w` in `v`, by linearity over the `ad_s` table.
    fn sigma_of(&self, w: &[crate::linalg::rational::Rational]) -> Matrix {
        let n = self.source.dim();
        let coords = self.v.coordinates(w).expect("vector lies in v");
        coords
            .iter()
            .zip(&self.ad_s_table)
            .filter(|(c, _)| !c.is_zero())
            .fold(Matrix::zeros(n, n), |acc, (c, m)| &acc + &m.scale(c))
    }
}

pub fn semisimple_ad(g: &LieAlgebra, x: &[crate::linalg::rational::Rational]) -> Matrix {
    jordan_chevalley(&g.ad(x)).expect("ad is square").semisimple
}

/// Fitting null component `ker (ad x)^n`.
pub fn fitting_null(g: &LieAlgebra, x: &[crate::linalg::rational::Rational]) -> Subspace {
    g.ad(x).pow(g.dim().max(1)).kernel()
}

pub fn is_cartan(g: &LieAlgebra, h: &Subspace) -> bool {
    g.is_subalgebra(h) && is_nilpotent_subspace(g, h) && g.normalizer(h) == *h
}

const CARTAN_ATTEMPTS: usize = 64;

/// A Cartan subalgebra as the Fitting null component of a sampled element.
/// Candidates have small integer coordinates whose range grows slowly.
pub fn cartan_subalgebra(g: &LieAlgebra, seed: u64) -> Result<Subspace, NilshadowError> {
    if !is_solvable(g) {
        return Err(NilshadowError::NotSolvable);
    }
    if is_nilpotent(g) {
        return Ok(g.full());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Subspace> = None;
    for attempt in 0..CARTAN_ATTEMPTS {
        let h = 1 + attempt as i64 / 8;
        let x: Vector = (0..g.dim()).map(|_| rat(rng.gen_range(-h..=h))).collect();
        let f = fitting_null(g, &x);
        if best.as_ref().is_some_and(|b| b.dim() < f.dim()) {
            continue;
        }
        if is_cartan(g, &f) {
            return Ok(f);
        }
        best = Some(f);
    }
    Err(NilshadowError::CartanBudget {
        attempts: CARTAN_ATTEMPTS,
        seed,
    })
}

/// Complement of `h ∩ nil(g)` inside a Cartan subalgebra `h`.
pub fn choose_v(g: &LieAlgebra, seed: u64) -> Result<Subspace, NilshadowError> {
    let nil = nilradical(g);
    let h = cartan_subalgebra(g, seed)?;
    let comp = h.intersect(&nil).complement_in(&h);
    let v = Subspace::from_vectors(g.dim(), comp);
    verify_v(g, &nil, &v)?;
    Ok(v)
}

fn verify_v(g: &LieAlgebra, nil: &Subspace, v: &Subspace) -> Result<Vec<Matrix>, NilshadowError> {
    if nil.dim() + v.dim() != g.dim() || !nil.sum(v).is_full() {
        return Err(NilshadowError::Verification("v does not complement the nilradical".into()));
    }
    let table: Vec<Matrix> = v.basis().iter().map(|b| semisimple_ad(g, b)).collect();
    for (a, m) in table.iter().enumerate() {
        for (b, w) in v.basis().iter().enumerate() {
            if !m.apply(w).iter().all(Zero::is_zero) {
                return Err(NilshadowError::Verification(format!(
                    "ad_s(v{a}) does not kill v{b}"
                )));
            }
        }
    }
    // ad_s must be additive on v for the bracket to be bilinear.
    for a in 0..table.len() {
        for b in a + 1..table.len() {
            let s: Vector = v.basis()[a].iter().zip(&v.basis()[b]).map(|(x, y)| x + y).collect();
            if semisimple_ad(g, &s) != &table[a] + &table[b] {
                return Err(NilshadowError::Verification("ad_s is not additive on v".into()));
            }
        }
    }
    Ok(table)
}

fn check_preconditions(g: &LieAlgebra) -> Result<(), NilshadowError> {
    if !is_solvable(g) {
        return Err(NilshadowError::NotSolvable);
    }
    let r = is_type_r(g, 0, 0);
    if !r.holds {
        let w = r.witness.map(|w| g.format_vector(&w)).unwrap_or_default();
        return Err(NilshadowError::NotTypeR(w));
    }
    Ok(())
}

pub fn nilshadow(g: &LieAlgebra, seed: u64) -> Result<ShadowData, NilshadowError> {
    check_preconditions(g)?;
    let v = choose_v(g, seed)?;
    nilshadow_with_v(g, &v)
}

/// Nilshadow for a caller-supplied complement `v` of the nilradical.
pub fn nilshadow_with_v(g: &LieAlgebra, v: &Subspace) -> Result<ShadowData, NilshadowError> {
    check_preconditions(g)?;
    let nil = nilradical(g);
    let table = verify_v(g, &nil, v)?;
    let n = g.dim();
    let mut cols = nil.basis().to_vec();
    cols.extend(v.basis().iter().cloned());
    let basis = Matrix::from_cols(n, &cols);
    let inv = basis.inverse().expect("nil ⊕ v spans");
    let mut keep = Matrix::zeros(n, n);
    for k in nil.dim()..n {
        keep[(k, k)] = rat(1);
    }
    let projection_v = &(&basis * &keep) * &inv;
    let mut sd = ShadowData {
        source: g.clone(),
        nilradical: nil,
        v: v.clone(),
        projection_v,
        ad_s_table: table,
        shadow: g.clone(),
    };
    let s = sd.sigma_images();
    let mut st = vec![vec![vec![rat(0); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let ei = g.basis_vector(i);
            let ej = g.basis_vector(j);
            let mut b = g.br(&ei, &ej);
            let a = s[i].apply(&ej);
            let c = s[j].apply(&ei);
            for k in 0..n {
                b[k] = &b[k] - &a[k] + &c[k];
            }
            st[i][j] = b;
        }
    }
    let shadow = LieAlgebra::new(g.labels().to_vec(), st)?;
    if !is_nilpotent(&shadow) {
        return Err(NilshadowError::Verification("shadow bracket is not nilpotent".into()));
    }
    sd.shadow = shadow;
    Ok(sd)
}

/// `σ(X) = ad_s(π_v X)` as a modification map of the shadow algebra.
pub fn canonical_modification(sd: &ShadowData) -> Result<ModMap, NilshadowError> {
    let sigma = ModMap::new(sd.shadow.clone(), sd.sigma_images())
        .map_err(|e| NilshadowError::Verification(e.to_string()))?;
    let report = crate::modification::check_all(&sigma);
    if !report.all_ok() {
        return Err(NilshadowError::Verification(format!(
            "canonical map fails the axioms: {report:?}"
        )));
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::lie::fingerprint::fingerprint;

    #[test]
    fn e2_shadow_is_abelian() {
        let g = catalog::e2();
        let h = cartan_subalgebra(&g, 3).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(is_cartan(&g, &h));
        let sd = nilshadow(&g, 3).unwrap();
        assert_eq!(sd.v, h);
        let flat = LieAlgebra::abelian(3).with_labels(g.labels().to_vec());
        assert_eq!(sd.shadow, flat);
        let t = Subspace::from_vectors(3, vec![vec![rat(0), rat(0), rat(1)]]);
        let sd = nilshadow_with_v(&g, &t).unwrap();
        assert_eq!(sd.shadow, flat);
        assert_eq!(sd.ad_s_table, vec![g.ad(&[rat(0), rat(0), rat(1)])]);
    }

    #[test]
    fn nilpotent_input_is_unchanged() {
        let g = catalog::heisenberg(2);
        let sd = nilshadow(&g, 0).unwrap();
        assert!(sd.v.is_zero());
        assert_eq!(sd.shadow, g);
        assert!(semisimple_ad(&g, &g.basis_vector(0)).is_zero());
    }

    #[test]
    fn heis_rot_shadow() {
        let g = catalog::heis_rot();
        let expect = catalog::heisenberg(1).direct_sum(&LieAlgebra::abelian(1));
        let sampled = nilshadow(&g, 11).unwrap();
        assert_eq!(sampled.v.dim(), 1);
        assert_eq!(fingerprint(&sampled.shadow), fingerprint(&expect));
        let sd = nilshadow_with_v(&g, &Subspace::from_vectors(4, vec![g.basis_vector(3)])).unwrap();
        assert_eq!(fingerprint(&sd.shadow), fingerprint(&expect));
        for i in 0..4 {
            for j in 0..4 {
                let want = if (i, j) == (0, 1) {
                    g.structure(0, 1).clone()
                } else if (i, j) == (1, 0) {
                    g.structure(1, 0).clone()
                } else {
                    vec![rat(0); 4]
                };
                assert_eq!(sd.shadow.structure(i, j), &want);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(nilshadow(&catalog::sl2(), 0), Err(NilshadowError::NotSolvable));
        let g = LieAlgebra::from_brackets(&["X", "T"], &[(1, 0, vec![rat(1), rat(0)])]).unwrap();
        assert!(matches!(nilshadow(&g, 0), Err(NilshadowError::NotTypeR(_))));
    }
}
