//! Finite-dimensional Lie algebras over Q given by structure constants.

use num_traits::Zero;

use crate::linalg::matrix::{unit_vector, vec_is_zero, Matrix, Vector};
use crate::linalg::rational::Rational;
use crate::linalg::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis has {labels} labels for dimension {dim}")]
    LabelCount { labels: usize, dim: usize },
    #[error("bracket is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("generator {0} is not a derivation")]
    NotDerivation(String),
    #[error("generator brackets disagree with matrix commutators at ({0}, {1})")]
    InconsistentGenerators(usize, usize),
    #[error("subspace is not an ideal")]
    NotIdeal,
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error("change of basis matrix is singular")]
    Singular,
}

/// Structure constants `c[i][j]` hold the coordinates of `[e_i, e_j]`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    structure: Vec<Vec<Vector>>,
    ad_basis: Vec<Matrix>,
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra(dim {}; ", self.dim)?;
        let mut first = true;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = &self.structure[i][j];
                if vec_is_zero(v) {
                    continue;
                }
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "[{},{}]={}", self.labels[i], self.labels[j], self.format_vector(v))?;
            }
        }
        write!(f, ")")
    }
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity on every basis triple.
    pub fn new(labels: Vec<String>, structure: Vec<Vec<Vector>>) -> Result<Self, LieError> {
        let dim = structure.len();
        if labels.len() != dim {
            return Err(LieError::LabelCount {
                labels: labels.len(),
                dim,
            });
        }
        for row in &structure {
            if row.len() != dim {
                return Err(LieError::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for v in row {
                if v.len() != dim {
                    return Err(LieError::DimensionMismatch {
                        expected: dim,
                        got: v.len(),
                    });
                }
            }
        }
        for i in 0..dim {
            for j in i..dim {
                let sum: Vector = structure[i][j]
                    .iter()
                    .zip(&structure[j][i])
                    .map(|(a, b)| a + b)
                    .collect();
                if !vec_is_zero(&sum) {
                    return Err(LieError::NotAntisymmetric(i, j));
                }
            }
        }
        let g = Self::unchecked(labels, structure);
        if let Some((i, j, k)) = g.jacobi_failure() {
            return Err(LieError::Jacobi(i, j, k));
        }
        Ok(g)
    }

    fn unchecked(labels: Vec<String>, structure: Vec<Vec<Vector>>) -> Self {
        let dim = structure.len();
        let ad_basis = (0..dim)
            .map(|i| Matrix::from_cols(dim, &structure[i]))
            .collect();
        LieAlgebra {
            dim,
            labels,
            structure,
            ad_basis,
        }
    }

    /// Builds from the brackets `[e_i, e_j]` for listed pairs; unlisted pairs
    /// commute and antisymmetry is filled in.
    pub fn from_brackets(labels: &[&str], brackets: &[(usize, usize, Vector)]) -> Result<Self, LieError> {
        let dim = labels.len();
        let mut s = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim || v.len() != dim {
                return Err(LieError::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            if i == j {
                if !vec_is_zero(v) {
                    return Err(LieError::NotAntisymmetric(*i, *j));
                }
                continue;
            }
            s[*i][*j] = v.clone();
            s[*j][*i] = v.iter().map(|x| -x).collect();
        }
        Self::new(labels.iter().map(|l| l.to_string()).collect(), s)
    }

    /// Like `from_brackets` with integer coefficient lists `(i, j, [(k, c)])`.
    pub fn from_sparse(labels: &[&str], brackets: &[(usize, usize, &[(usize, Rational)])]) -> Result<Self, LieError> {
        let dim = labels.len();
        let list: Vec<(usize, usize, Vector)> = brackets
            .iter()
            .map(|(i, j, cs)| {
                let mut v = vec![Rational::zero(); dim];
                for (k, c) in cs.iter() {
                    v[*k] += c;
                }
                (*i, *j, v)
            })
            .collect();
        Self::from_brackets(labels, &list)
    }

    pub fn abelian(dim: usize) -> Self {
        let labels = (1..=dim).map(|i| format!("e{i}")).collect();
        Self::unchecked(labels, vec![vec![vec![Rational::zero(); dim]; dim]; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &Vector {
        &self.structure[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.dim, i)
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), LieError> {
        if v.len() == self.dim {
            Ok(())
        } else {
            Err(LieError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            })
        }
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.br(x, y))
    }

    /// Bracket without length checks.
    pub fn br(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = xi * yj;
                for (o, s) in out.iter_mut().zip(&self.structure[i][j]) {
                    if !s.is_zero() {
                        *o += &c * s;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `y -> [x, y]`.
    pub fn ad(&self, x: &[Rational]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = &m + &self.ad_basis[i].scale(xi);
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> &Matrix {
        &self.ad_basis[i]
    }

    /// First basis triple violating Jacobi, if any.
    pub fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                let ij = &self.structure[i][j];
                for k in j + 1..n {
                    let a = self.ad_basis[k].apply(ij);
                    let b = self.ad_basis[i].apply(&self.structure[j][k]);
                    let c = self.ad_basis[j].apply(&self.structure[k][i]);
                    // [[i,j],k] + [[j,k],i] + [[k,i],j] = -( [k,[i,j]] + ... )
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Span of all `[a, b]` with `a` in `s`, `b` in `t`.
    pub fn bracket_spaces(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for a in s.basis() {
            for b in t.basis() {
                let v = self.br(a, b);
                if !vec_is_zero(&v) {
                    vs.push(v);
                }
            }
        }
        Subspace::from_vectors(self.dim, vs)
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        self.bracket_spaces(s, s).is_subspace_of(s)
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        self.bracket_spaces(&self.full(), s).is_subspace_of(s)
    }

    /// `{x : [x, s] = 0}`.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        if s.is_zero() {
            return self.full();
        }
        let rows: Vec<Vector> = s
            .basis()
            .iter()
            .flat_map(|b| self.ad(b).to_rows())
            .collect();
        // [x, b] = -ad(b) x
        Matrix::from_rows(rows).kernel()
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.full())
    }

    /// `{x : [x, s] ⊆ s}`.
    pub fn normalizer(&self, s: &Subspace) -> Subspace {
        // Solve [x, b_k] ∈ s for every basis vector b_k of s: project onto a
        // complement of s via the annihilator.
        let ann = s.orthogonal();
        if ann.is_zero() {
            return self.full();
        }
        let mut rows = Vec::new();
        for b in s.basis() {
            let adb = self.ad(b);
            for f in ann.basis() {
                // f . [x, b] = -f . ad(b) x
                let row: Vector = (0..self.dim)
                    .map(|c| {
                        let mut acc = Rational::zero();
                        for (r, fr) in f.iter().enumerate() {
                            if !fr.is_zero() {
                                acc += fr * &adb[(r, c)];
                            }
                        }
                        acc
                    })
                    .collect();
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return self.full();
        }
        Matrix::from_rows(rows).kernel()
    }

    /// Restriction to a subalgebra, in the subspace's echelon basis.
    pub fn subalgebra(&self, s: &Subspace) -> Result<LieAlgebra, LieError> {
        if !self.is_subalgebra(s) {
            return Err(LieError::NotSubalgebra);
        }
        let k = s.dim();
        let mut st = vec![vec![vec![Rational::zero(); k]; k]; k];
        for i in 0..k {
            for j in 0..k {
                st[i][j] = s
                    .coordinates(&self.br(&s.basis()[i], &s.basis()[j]))
                    .expect("closed under bracket");
            }
        }
        let labels = s.basis().iter().map(|b| self.format_vector(b)).collect();
        Ok(Self::unchecked(labels, st))
    }

    /// Quotient by an ideal; the basis is the images of the standard unit
    /// vectors at non-pivot positions of the ideal's echelon basis.
    pub fn quotient(&self, ideal: &Subspace) -> Result<LieAlgebra, LieError> {
        if !self.is_ideal(ideal) {
            return Err(LieError::NotIdeal);
        }
        let keep = ideal.standard_complement();
        let k = keep.len();
        let project = |v: &Vector| -> Vector {
            let r = ideal.reduce(v);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let mut st = vec![vec![vec![Rational::zero(); k]; k]; k];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                st[a][b] = project(&self.structure[i][j]);
            }
        }
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(Self::unchecked(labels, st))
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim + other.dim;
        let mut st = vec![vec![vec![Rational::zero(); n]; n]; n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    st[i][j][k] = self.structure[i][j][k].clone();
                }
            }
        }
        let o = self.dim;
        for i in 0..other.dim {
            for j in 0..other.dim {
                for k in 0..other.dim {
                    st[o + i][o + j][o + k] = other.structure[i][j][k].clone();
                }
            }
        }
        let mut labels = self.labels.clone();
        for l in &other.labels {
            let mut l = l.clone();
            while labels.contains(&l) {
                l.push('\'');
            }
            labels.push(l);
        }
        Self::unchecked(labels, st)
    }

    /// Re-expresses the algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra, LieError> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(LieError::DimensionMismatch {
                expected: self.dim,
                got: p.rows(),
            });
        }
        let inv = p.inverse().ok_or(LieError::Singular)?;
        let cols: Vec<Vector> = (0..self.dim).map(|j| p.col(j)).collect();
        let mut st = vec![vec![vec![Rational::zero(); self.dim]; self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                st[i][j] = inv.apply(&self.br(&cols[i], &cols[j]));
            }
        }
        Ok(Self::unchecked(self.labels.clone(), st))
    }

    /// True iff `d[x,y] = [dx,y] + [x,dy]` on all basis pairs.
    pub fn is_derivation(&self, d: &Matrix) -> bool {
        self.derivation_failure(d).is_none()
    }

    pub fn derivation_failure(&self, d: &Matrix) -> Option<(usize, usize)> {
        if d.rows() != self.dim || d.cols() != self.dim {
            return Some((0, 0));
        }
        let cols: Vec<Vector> = (0..self.dim).map(|j| d.col(j)).collect();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let lhs = d.apply(&self.structure[i][j]);
                let a = self.br(&cols[i], &self.basis_vector(j));
                let b = self.br(&self.basis_vector(i), &cols[j]);
                if lhs.iter().zip(a.iter().zip(&b)).any(|(l, (x, y))| *l != x + y) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Semidirect sum `n ⋊ span(gens)` with
    /// `[(X, D), (X', D')] = ([X, X'] + D X' - D' X, [D, D'])`.
    /// `gen_brackets` gives `[D_a, D_b]` in generator coordinates; omitted
    /// pairs must commute.
    pub fn semidirect_by_derivations(
        &self,
        gens: &[(String, Matrix)],
        gen_brackets: &[(usize, usize, Vector)],
    ) -> Result<LieAlgebra, LieError> {
        let n = self.dim;
        let k = gens.len();
        for (name, d) in gens {
            if !self.is_derivation(d) {
                return Err(LieError::NotDerivation(name.clone()));
            }
        }
        let mut gb = vec![vec![vec![Rational::zero(); k]; k]; k];
        for (a, b, v) in gen_brackets {
            if *a >= k || *b >= k || v.len() != k {
                return Err(LieError::DimensionMismatch { expected: k, got: v.len() });
            }
            gb[*a][*b] = v.clone();
            gb[*b][*a] = v.iter().map(|x| -x).collect();
        }
        for a in 0..k {
            for b in a + 1..k {
                let comm = gens[a].1.commutator(&gens[b].1);
                let mut expect = Matrix::zeros(n, n);
                for (c, coef) in gb[a][b].iter().enumerate() {
                    if !coef.is_zero() {
                        expect = &expect + &gens[c].1.scale(coef);
                    }
                }
                if comm != expect {
                    return Err(LieError::InconsistentGenerators(a, b));
                }
            }
        }
        let total = n + k;
        let mut st = vec![vec![vec![Rational::zero(); total]; total]; total];
        for i in 0..n {
            for j in 0..n {
                for c in 0..n {
                    st[i][j][c] = self.structure[i][j][c].clone();
                }
            }
        }
        for (a, (_, d)) in gens.iter().enumerate() {
            for j in 0..n {
                let col = d.col(j);
                for c in 0..n {
                    st[n + a][j][c] = col[c].clone();
                    st[j][n + a][c] = -&col[c];
                }
            }
            for b in 0..k {
                for c in 0..k {
                    st[n + a][n + b][n + c] = gb[a][b][c].clone();
                }
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(gens.iter().map(|(l, _)| l.clone()));
        Self::new(labels, st)
    }

    /// Human-readable linear combination of labels.
    pub fn format_vector(&self, v: &[Rational]) -> String {
        let mut parts = Vec::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let lab = self.labels.get(i).map(String::as_str).unwrap_or("?");
            if *c == Rational::from_integer(1.into()) {
                parts.push(lab.to_string());
            } else if *c == Rational::from_integer((-1).into()) {
                parts.push(format!("-{lab}"));
            } else {
                parts.push(format!("{c}*{lab}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}

/// A linear map between algebras; bracket compatibility is checked, not
/// assumed.
#[derive(Debug, Clone, PartialEq)]
pub struct LieHom {
    pub matrix: Matrix,
}

/// True iff `phi[x,y] = [phi x, phi y]` on basis pairs.
pub fn check_hom(source: &LieAlgebra, target: &LieAlgebra, hom: &LieHom) -> Result<bool, LieError> {
    let m = &hom.matrix;
    if m.cols() != source.dim() || m.rows() != target.dim() {
        return Err(LieError::DimensionMismatch {
            expected: source.dim(),
            got: m.cols(),
        });
    }
    let imgs: Vec<Vector> = (0..source.dim()).map(|j| m.col(j)).collect();
    for i in 0..source.dim() {
        for j in i + 1..source.dim() {
            if m.apply(source.structure(i, j)) != target.br(&imgs[i], &imgs[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
