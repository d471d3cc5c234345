//! Rational subspaces of `Q^n`, stored as reduced row echelon bases so that
//! structural equality is subspace equality.

use std::fmt;

use num_traits::Zero;

use super::matrix::{combine, Matrix, Vector};
use super::rational::{format_rational, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_vectors(
            ambient,
            (0..ambient).map(|i| super::matrix::unit_vector(ambient, i)).collect(),
        )
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn from_vectors(ambient: usize, vectors: Vec<Vector>) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length mismatch");
        let (r, pivots) = Matrix::from_rows(vectors).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the echelon basis; the result is zero iff `v` lies in here.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut w = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (x, y) in w.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn from_coordinates(&self, coords: &[Rational]) -> Vector {
        combine(coords, &self.basis, self.ambient)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::from_vectors(self.ambient, vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // a.u = b.w  <=>  [U^T | -W^T] (a, b) = 0
        let k = self.dim();
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()));
        let sys = Matrix::from_cols(self.ambient, &cols);
        let null = sys.kernel();
        let vs = null
            .basis
            .iter()
            .map(|c| combine(&c[..k], &self.basis, self.ambient))
            .collect();
        Subspace::from_vectors(self.ambient, vs)
    }

    /// A complement of `self` inside `outer`, chosen greedily from the
    /// echelon basis of `outer`. Requires `self ⊆ outer`.
    pub fn complement_in(&self, outer: &Subspace) -> Vec<Vector> {
        let mut acc = self.clone();
        let mut out = Vec::new();
        for b in &outer.basis {
            if !acc.contains(b) {
                out.push(b.clone());
                acc = acc.sum(&Subspace::from_vectors(self.ambient, vec![b.clone()]));
            }
        }
        out
    }

    /// Complement spanned by standard unit vectors at the non-pivot columns.
    pub fn standard_complement(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Image under a linear map.
    pub fn map(&self, m: &Matrix) -> Subspace {
        Subspace::from_vectors(m.rows(), self.basis.iter().map(|b| m.apply(b)).collect())
    }

    /// The annihilator `{x : <x, s> = 0 for all s in self}` under the
    /// standard dot product.
    pub fn orthogonal(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        Matrix::from_rows(self.basis.clone()).kernel()
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_cols(self.ambient, &self.basis)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace({}; ", self.ambient)?;
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|b| {
                let v: Vec<String> = b.iter().map(format_rational).collect();
                format!("({})", v.join(", "))
            })
            .collect();
        write!(f, "{})", rows.join(", "))
    }
}
