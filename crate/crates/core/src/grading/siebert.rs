//! Gradings `g = ⊕ V_t` read off from the eigenvalue moduli of a
//! contractive automorphism.

use nalgebra::{Complex, DMatrix, DVector};
use num_traits::{One, Signed, Zero};

use crate::lie::algebra::LieAlgebra;
use crate::linalg::matrix::{Matrix, Vector};
use crate::linalg::rational::{pow_rational, rat, rational_power, to_f64, Rational};
use crate::linalg::roots::isolate_roots;
use crate::linalg::spectrum::{primary_component, spectral_radius_lt, spectrum, SpectrumConfig, SpectrumError};
use crate::linalg::subspace::Subspace;

/// Absolute tolerance for numeric layer tests.
pub const NUMERIC_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GradingError {
    #[error("matrix is not a square matrix matching the algebra dimension")]
    Shape,
    #[error("matrix is not an automorphism (fails at basis pair {0}, {1})")]
    NotAutomorphism(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("some eigenvalue has modulus >= 1")]
    NotContractive,
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error("layers do not form a direct sum decomposition")]
    NotADecomposition,
    #[error("weights must be positive and distinct")]
    BadWeights,
    #[error("dilation factor must be positive and different from 1")]
    BadLambda,
    #[error("lambda^t is not rational for weight {0}")]
    NotRepresentable(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum LayerSpace {
    Exact(Subspace),
    /// Orthonormal columns with a residual bound.
    Approximate { basis: DMatrix<f64>, error: f64 },
}

impl LayerSpace {
    pub fn dim(&self) -> usize {
        match self {
            LayerSpace::Exact(s) => s.dim(),
            LayerSpace::Approximate { basis, .. } => basis.ncols(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, LayerSpace::Exact(_))
    }

    pub fn basis_f64(&self) -> DMatrix<f64> {
        match self {
            LayerSpace::Exact(s) => {
                let n = s.ambient_dim();
                DMatrix::from_fn(n, s.dim(), |i, j| to_f64(&s.basis()[j][i]))
            }
            LayerSpace::Approximate { basis, .. } => basis.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    /// `-ln |α|` for the eigenvalues of this layer.
    pub raw_weight: f64,
    pub raw_error: f64,
    /// `raw_weight / raw_weight of the first layer`, when certified rational.
    pub ratio: Option<Rational>,
    pub ratio_f64: f64,
    /// Exact squared eigenvalue modulus, when known.
    pub modulus_sq: Option<Rational>,
    pub space: LayerSpace,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grading {
    pub algebra: LieAlgebra,
    /// Sorted by increasing weight.
    pub layers: Vec<Layer>,
    /// Weight of the first layer; layer `i` has weight `scale * ratio_i`.
    pub scale: Rational,
}

impl Grading {
    /// A grading from explicit rational weights and exact spaces.
    pub fn from_layers(algebra: LieAlgebra, layers: Vec<(Rational, Subspace)>) -> Result<Self, GradingError> {
        let mut layers = layers;
        layers.sort_by(|a, b| a.0.cmp(&b.0));
        if layers.is_empty()
            || !layers[0].0.is_positive()
            || layers.windows(2).any(|w| w[0].0 == w[1].0)
        {
            return Err(GradingError::BadWeights);
        }
        let n = algebra.dim();
        let total = layers
            .iter()
            .fold(Subspace::zero(n), |acc, (_, s)| acc.sum(s));
        let dims: usize = layers.iter().map(|(_, s)| s.dim()).sum();
        if dims != n || !total.is_full() {
            return Err(GradingError::NotADecomposition);
        }
        let scale = layers[0].0.clone();
        let layers = layers
            .into_iter()
            .map(|(w, s)| {
                let r = &w / &scale;
                Layer {
                    raw_weight: to_f64(&w),
                    raw_error: 0.0,
                    ratio_f64: to_f64(&r),
                    ratio: Some(r),
                    modulus_sq: None,
                    space: LayerSpace::Exact(s),
                }
            })
            .collect();
        Ok(Grading {
            algebra,
            layers,
            scale,
        })
    }

    pub fn weight(&self, i: usize) -> f64 {
        to_f64(&self.scale) * self.layers[i].ratio_f64
    }

    pub fn exact_weight(&self, i: usize) -> Option<Rational> {
        self.layers[i].ratio.as_ref().map(|r| r * &self.scale)
    }

    pub fn weights(&self) -> Vec<f64> {
        (0..self.layers.len()).map(|i| self.weight(i)).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.space.dim()).collect()
    }

    /// Factor taking raw weights to the current weights.
    pub fn normalization(&self) -> f64 {
        to_f64(&self.scale) / self.layers[0].raw_weight
    }

    pub fn is_exact(&self) -> bool {
        self.layers.iter().all(|l| l.space.is_exact() && l.ratio.is_some())
    }

    /// Same layers with every weight multiplied by `c > 0`.
    pub fn rescaled(&self, c: &Rational) -> Grading {
        Grading {
            scale: &self.scale * c,
            ..self.clone()
        }
    }

    /// Minimum weight 1.
    pub fn normalized(&self) -> Grading {
        Grading {
            scale: rat(1),
            ..self.clone()
        }
    }

    fn layer_with_weight(&self, i: usize, j: usize) -> Option<usize> {
        let (li, lj) = (&self.layers[i], &self.layers[j]);
        if let (Some(a), Some(b)) = (&li.ratio, &lj.ratio) {
            let sum = a + b;
            if let Some(k) = self.layers.iter().position(|l| l.ratio.as_ref() == Some(&sum)) {
                return Some(k);
            }
            if self.layers.iter().all(|l| l.ratio.is_some()) {
                return None;
            }
        }
        let sum = li.ratio_f64 + lj.ratio_f64;
        self.layers
            .iter()
            .position(|l| (l.ratio_f64 - sum).abs() <= 1e-9 * sum.max(1.0))
    }
}

pub fn is_automorphism(g: &LieAlgebra, a: &Matrix) -> bool {
    let n = g.dim();
    a.rows() == n && a.cols() == n && automorphism_failure(g, a).is_none() && !a.determinant().is_zero()
}

fn automorphism_failure(g: &LieAlgebra, a: &Matrix) -> Option<(usize, usize)> {
    let n = g.dim();
    let cols: Vec<Vector> = (0..n).map(|i| a.col(i)).collect();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| a.apply(g.structure(i, j)) != g.br(&cols[i], &cols[j]))
}

fn structure_f64(g: &LieAlgebra, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
    let n = g.dim();
    let mut out = DVector::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let c = x[i] * y[j];
            if c != 0.0 && i != j {
                for (k, s) in g.structure(i, j).iter().enumerate() {
                    out[k] += c * to_f64(s);
                }
            }
        }
    }
    out
}

/// Failing layer pair and, for exact layers, the failing basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct GradingWitness {
    pub layers: (usize, usize),
    pub vectors: Option<(Vector, Vector)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradingCheck {
    pub ok: bool,
    pub exact: bool,
    pub witness: Option<GradingWitness>,
}

fn residual(target: Option<&DMatrix<f64>>, v: &DVector<f64>) -> f64 {
    match target {
        None => v.norm(),
        Some(q) => {
            let qr = q.clone().qr();
            let qq = qr.q();
            (v - &qq * (qq.transpose() * v)).norm()
        }
    }
}

/// `[V_s, V_t] ⊆ V_{s+t}`, and `[V_s, V_t] = 0` when `s + t` is not a weight.
pub fn check_grading(gr: &Grading) -> GradingCheck {
    let g = &gr.algebra;
    let m = gr.layers.len();
    let mut exact = true;
    for i in 0..m {
        for j in i..m {
            let target = gr.layer_with_weight(i, j);
            let (si, sj) = (&gr.layers[i].space, &gr.layers[j].space);
            let all_exact = si.is_exact()
                && sj.is_exact()
                && target.map_or(true, |k| gr.layers[k].space.is_exact());
            if let (LayerSpace::Exact(a), LayerSpace::Exact(b), true) = (si, sj, all_exact) {
                for x in a.basis() {
                    for y in b.basis() {
                        let z = g.br(x, y);
                        let ok = match target {
                            Some(k) => match &gr.layers[k].space {
                                LayerSpace::Exact(t) => t.contains(&z),
                                LayerSpace::Approximate { .. } => unreachable!(),
                            },
                            None => z.iter().all(Zero::is_zero),
                        };
                        if !ok {
                            return GradingCheck {
                                ok: false,
                                exact: true,
                                witness: Some(GradingWitness {
                                    layers: (i, j),
                                    vectors: Some((x.clone(), y.clone())),
                                }),
                            };
                        }
                    }
                }
                continue;
            }
            exact = false;
            let (bi, bj) = (si.basis_f64(), sj.basis_f64());
            let tb = target.map(|k| gr.layers[k].space.basis_f64());
            for x in bi.column_iter() {
                for y in bj.column_iter() {
                    let z = structure_f64(g, &x.into_owned(), &y.into_owned());
                    if residual(tb.as_ref(), &z) > NUMERIC_TOL * (1.0 + z.norm()) {
                        return GradingCheck {
                            ok: false,
                            exact: false,
                            witness: Some(GradingWitness {
                                layers: (i, j),
                                vectors: None,
                            }),
                        };
                    }
                }
            }
        }
    }
    GradingCheck {
        ok: true,
        exact,
        witness: None,
    }
}

/// Bracket of eigenvalue-modulus classes: `[V_r, V_s]` lies in the class of
/// modulus `r s` (or vanishes), tested on layers with exact moduli. Returns the
/// first failing layer pair.
pub fn modulus_bracket_failure(gr: &Grading) -> Option<(usize, usize)> {
    let g = &gr.algebra;
    let m = gr.layers.len();
    for i in 0..m {
        for j in i..m {
            let (Some(ri), Some(rj)) = (&gr.layers[i].modulus_sq, &gr.layers[j].modulus_sq) else {
                continue;
            };
            let (LayerSpace::Exact(a), LayerSpace::Exact(b)) = (&gr.layers[i].space, &gr.layers[j].space) else {
                continue;
            };
            let prod = ri * rj;
            let target = gr
                .layers
                .iter()
                .find(|l| l.modulus_sq.as_ref() == Some(&prod))
                .and_then(|l| match &l.space {
                    LayerSpace::Exact(t) => Some(t.clone()),
                    LayerSpace::Approximate { .. } => None,
                });
            let br = g.bracket_spaces(a, b);
            let ok = match target {
                Some(t) => br.is_subspace_of(&t),
                None => br.is_zero(),
            };
            if !ok {
                return Some((i, j));
            }
        }
    }
    None
}

/// Small-denominator rational `p/q` with `(r_i²)^q = (r_0²)^p`.
fn exact_ratio(approx: f64, ri: &Rational, r0: &Rational) -> Option<Rational> {
    for q in 1u32..=64 {
        let p = (approx * q as f64).round();
        if p < 1.0 || p > 4096.0 || (p / q as f64 - approx).abs() > 1e-6 {
            continue;
        }
        let p = p as u32;
        if pow_rational(ri, q) == pow_rational(r0, p) {
            return Some(Rational::new(p.into(), q.into()));
        }
    }
    None
}

fn eval_complex_poly(roots: &[Complex<f64>], a: &DMatrix<f64>) -> DMatrix<f64> {
    let mut coeffs = vec![Complex::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex::new(0.0, 0.0); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        coeffs = next;
    }
    let n = a.nrows();
    let mut acc = DMatrix::zeros(n, n);
    for c in coeffs.iter().rev() {
        acc = &acc * a + DMatrix::identity(n, n) * c.re;
    }
    acc
}

fn numeric_kernel(m: &DMatrix<f64>, dim: usize) -> (DMatrix<f64>, f64) {
    let n = m.ncols();
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("requested");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let top = svd.singular_values.max().max(1.0);
    let chosen = &idx[..dim];
    let err = chosen.iter().map(|&k| svd.singular_values[k]).fold(0.0, f64::max) / top;
    let basis = DMatrix::from_fn(n, dim, |i, j| vt[(chosen[j], i)]);
    (basis, err)
}

/// Grading whose layers are the real generalized eigenspaces grouped by
/// eigenvalue modulus, normalized to minimum weight 1.
pub fn siebert_grading(g: &LieAlgebra, a: &Matrix, cfg: &SpectrumConfig) -> Result<Grading, GradingError> {
    let n = g.dim();
    if a.rows() != n || a.cols() != n {
        return Err(GradingError::Shape);
    }
    if let Some((i, j)) = automorphism_failure(g, a) {
        return Err(GradingError::NotAutomorphism(i, j));
    }
    if a.determinant().is_zero() {
        return Err(GradingError::Singular);
    }
    if !spectral_radius_lt(a, &rat(1))? {
        return Err(GradingError::NotContractive);
    }
    let report = spectrum(a, cfg)?;
    let af = a.to_f64();
    let clusters = &report.modulus_clusters;
    let moduli: Vec<f64> = clusters.iter().map(|c| c.modulus).collect();
    let mut layers: Vec<Layer> = Vec::new();
    for (k, c) in clusters.iter().enumerate().rev() {
        let whole = c
            .members
            .iter()
            .all(|&(fi, _)| report.cluster_of_factor(fi) == Some(k));
        let space = if whole {
            let mut s = Subspace::zero(n);
            for &(fi, _) in &c.members {
                let (f, mult) = &report.irreducible_factors[fi];
                s = s.sum(&primary_component(a, f, *mult)?);
            }
            LayerSpace::Exact(s)
        } else {
            let mut roots = Vec::new();
            for &(fi, _) in &c.members {
                let (f, mult) = &report.irreducible_factors[fi];
                let disks = isolate_roots(&f.monic(), 64, 4096)
                    .map_err(|_| SpectrumError::Undecided { bits: 4096 })?;
                for d in disks {
                    let (re, im) = d.center_f64();
                    let r = re.hypot(im);
                    let nearest = (0..moduli.len())
                        .min_by(|&x, &y| (moduli[x] - r).abs().total_cmp(&(moduli[y] - r).abs()))
                        .unwrap();
                    if nearest == k {
                        roots.extend(std::iter::repeat(Complex::new(re, im)).take(*mult));
                    }
                }
            }
            let (basis, error) = numeric_kernel(&eval_complex_poly(&roots, &af), c.count);
            LayerSpace::Approximate { basis, error }
        };
        layers.push(Layer {
            raw_weight: -c.modulus.ln(),
            raw_error: c.error / c.modulus,
            ratio: None,
            ratio_f64: 1.0,
            modulus_sq: c.modulus_sq.clone(),
            space,
        });
    }
    let base = layers[0].raw_weight;
    let base_sq = layers[0].modulus_sq.clone();
    for l in layers.iter_mut() {
        l.ratio_f64 = l.raw_weight / base;
        l.ratio = match (&l.modulus_sq, &base_sq) {
            (Some(ri), Some(r0)) => exact_ratio(l.ratio_f64, ri, r0),
            _ => None,
        };
    }
    layers[0].ratio = Some(Rational::one());
    let gr = Grading {
        algebra: g.clone(),
        layers,
        scale: rat(1),
    };
    let dims: usize = gr.dims().iter().sum();
    let spans = if gr.layers.iter().all(|l| l.space.is_exact()) {
        gr.layers.iter().fold(Subspace::zero(n), |acc, l| match &l.space {
            LayerSpace::Exact(s) => acc.sum(s),
            LayerSpace::Approximate { .. } => acc,
        })
        .is_full()
    } else {
        let cols: Vec<DMatrix<f64>> = gr.layers.iter().map(|l| l.space.basis_f64()).collect();
        let all = DMatrix::from_fn(n, n, |i, j| {
            let mut j = j;
            for c in &cols {
                if j < c.ncols() {
                    return c[(i, j)];
                }
                j -= c.ncols();
            }
            0.0
        });
        all.svd(false, false).singular_values.min() > NUMERIC_TOL
    };
    if dims != n || !spans {
        return Err(GradingError::NotADecomposition);
    }
    let check = check_grading(&gr);
    if !check.ok {
        return Err(GradingError::Verification(format!("grading closure fails: {:?}", check.witness)));
    }
    Ok(gr)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Dilation {
    Exact(Matrix),
    Numeric { matrix: DMatrix<f64>, error: f64 },
}

impl Dilation {
    pub fn to_f64(&self) -> DMatrix<f64> {
        match self {
            Dilation::Exact(m) => m.to_f64(),
            Dilation::Numeric { matrix, .. } => matrix.clone(),
        }
    }
}

fn layer_basis_exact(gr: &Grading) -> Option<Matrix> {
    let n = gr.algebra.dim();
    let mut cols = Vec::new();
    for l in &gr.layers {
        match &l.space {
            LayerSpace::Exact(s) => cols.extend(s.basis().iter().cloned()),
            LayerSpace::Approximate { .. } => return None,
        }
    }
    Some(Matrix::from_cols(n, &cols))
}

/// `δ_λ` with `δ_λ v = λ^t v` on `V_t`: exact when every `λ^t` is rational,
/// numeric otherwise. Verified to be an automorphism either way.
pub fn standard_dilation(gr: &Grading, lambda: &Rational) -> Result<Dilation, GradingError> {
    match exact_dilation(gr, lambda) {
        Ok(d) => Ok(d),
        Err(GradingError::NotRepresentable(_)) => numeric_dilation(gr, lambda),
        Err(e) => Err(e),
    }
}

/// Like [`standard_dilation`] but refuses to fall back to floating point.
pub fn exact_dilation(gr: &Grading, lambda: &Rational) -> Result<Dilation, GradingError> {
    if !lambda.is_positive() || lambda.is_one() {
        return Err(GradingError::BadLambda);
    }
    let basis = layer_basis_exact(gr).ok_or_else(|| GradingError::NotRepresentable("approximate layer".into()))?;
    let mut diag = Vec::new();
    for i in 0..gr.layers.len() {
        let w = gr
            .exact_weight(i)
            .ok_or_else(|| GradingError::NotRepresentable(format!("{}", gr.weight(i))))?;
        let f = rational_power(lambda, &w).ok_or_else(|| GradingError::NotRepresentable(w.to_string()))?;
        diag.extend(std::iter::repeat(f).take(gr.layers[i].space.dim()));
    }
    let inv = basis.inverse().ok_or(GradingError::NotADecomposition)?;
    let m = &(&basis * &Matrix::diag(&diag)) * &inv;
    if !is_automorphism(&gr.algebra, &m) {
        return Err(GradingError::Verification("dilation is not an automorphism".into()));
    }
    Ok(Dilation::Exact(m))
}

fn numeric_dilation(gr: &Grading, lambda: &Rational) -> Result<Dilation, GradingError> {
    let n = gr.algebra.dim();
    let l = to_f64(lambda);
    let mut cols: Vec<DVector<f64>> = Vec::new();
    let mut diag = Vec::new();
    for (i, layer) in gr.layers.iter().enumerate() {
        let b = layer.space.basis_f64();
        for c in b.column_iter() {
            cols.push(c.into_owned());
            diag.push(l.powf(gr.weight(i)));
        }
    }
    let basis = DMatrix::from_columns(&cols);
    let inv = basis.clone().try_inverse().ok_or(GradingError::NotADecomposition)?;
    let m = &basis * DMatrix::from_diagonal(&DVector::from_vec(diag)) * inv;
    let mut err: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let (ei, ej) = (DVector::from_fn(n, |k, _| (k == i) as u8 as f64), DVector::from_fn(n, |k, _| (k == j) as u8 as f64));
            let lhs = &m * structure_f64(&gr.algebra, &ei, &ej);
            let rhs = structure_f64(&gr.algebra, &(&m * &ei), &(&m * &ej));
            err = err.max((lhs - rhs).norm());
        }
    }
    let scale = m.norm().max(1.0);
    if err > NUMERIC_TOL * scale * scale {
        return Err(GradingError::Verification(format!("numeric dilation off by {err:e}")));
    }
    Ok(Dilation::Numeric { matrix: m, error: err })
}

/// Minimum weight at least 1.
pub fn self_similar_admissible(gr: &Grading) -> bool {
    gr.scale >= rat(1)
}

/// Human-readable witness.
pub fn format_witness(gr: &Grading, w: &GradingWitness) -> String {
    match &w.vectors {
        Some((x, y)) => format!(
            "layers {},{}: [{}, {}]",
            w.layers.0,
            w.layers.1,
            gr.algebra.format_vector(x),
            gr.algebra.format_vector(y)
        ),
        None => format!("layers {},{}", w.layers.0, w.layers.1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::rational::ratio;

    fn heis_a() -> Matrix {
        Matrix::diag(&[ratio(1, 2), ratio(1, 2), ratio(1, 4)])
    }

    #[test]
    fn automorphism_examples() {
        let h = catalog::heisenberg(1);
        assert!(is_automorphism(&h, &Matrix::identity(3)));
        assert!(is_automorphism(&h, &heis_a()));
        assert!(!is_automorphism(&h, &Matrix::diag(&[ratio(1, 2), ratio(1, 3), ratio(1, 4)])));
        assert!(!is_automorphism(&LieAlgebra::abelian(2), &Matrix::zeros(2, 2)));
    }

    #[test]
    fn heisenberg_grading() {
        let h = catalog::heisenberg(1);
        let gr = siebert_grading(&h, &heis_a(), &SpectrumConfig::default()).unwrap();
        assert_eq!(gr.dims(), vec![2, 1]);
        assert_eq!(gr.exact_weight(0), Some(rat(1)));
        assert_eq!(gr.exact_weight(1), Some(rat(2)));
        assert!((gr.layers[0].raw_weight - 2f64.ln()).abs() < 1e-12);
        assert!((gr.normalization() - 1.0 / 2f64.ln()).abs() < 1e-12);
        let c = check_grading(&gr);
        assert!(c.ok && c.exact);
        assert!(gr.is_exact());
        assert_eq!(standard_dilation(&gr, &ratio(1, 2)).unwrap(), Dilation::Exact(heis_a()));
        assert_eq!(
            standard_dilation(&gr, &rat(3)).unwrap(),
            Dilation::Exact(Matrix::diag(&[rat(3), rat(3), rat(9)]))
        );
        assert!(self_similar_admissible(&gr));
        assert!(!self_similar_admissible(&gr.rescaled(&ratio(1, 2))));
        assert_eq!(modulus_bracket_failure(&gr), None);
        assert_eq!(standard_dilation(&gr, &rat(1)), Err(GradingError::BadLambda));
    }

    #[test]
    fn abelian_single_layer() {
        let g = LieAlgebra::abelian(3);
        let gr = siebert_grading(&g, &Matrix::identity(3).scale(&ratio(1, 2)), &SpectrumConfig::default()).unwrap();
        assert_eq!(gr.dims(), vec![3]);
        assert!(check_grading(&gr).ok);
        assert!(self_similar_admissible(&gr));
    }

    #[test]
    fn rejects_non_contractive_and_non_automorphisms() {
        let h = catalog::heisenberg(1);
        let a = Matrix::diag(&[rat(1), ratio(1, 2), ratio(1, 2)]);
        assert_eq!(siebert_grading(&h, &a, &SpectrumConfig::default()), Err(GradingError::NotContractive));
        let b = Matrix::diag(&[ratio(1, 2), ratio(1, 3), ratio(1, 4)]);
        assert_eq!(siebert_grading(&h, &b, &SpectrumConfig::default()), Err(GradingError::NotAutomorphism(0, 1)));
    }

    #[test]
    fn corrupted_layers_fail_closure() {
        let h = catalog::heisenberg(1);
        let e = |i| h.basis_vector(i);
        let gr = Grading::from_layers(
            h.clone(),
            vec![(rat(1), Subspace::from_vectors(3, vec![e(0), e(2)])), (rat(2), Subspace::from_vectors(3, vec![e(1)]))],
        )
        .unwrap();
        let c = check_grading(&gr);
        assert!(!c.ok);
        assert_eq!(c.witness.unwrap().vectors, Some((e(0), e(1))));
    }

    #[test]
    fn rotation_scaling_grading_is_exact() {
        // (1/2) times a rotation on the X,Y plane, 1/4 on Z
        let h = catalog::heisenberg(1);
        let a = Matrix::from_rows(vec![
            vec![rat(0), ratio(-1, 2), rat(0)],
            vec![ratio(1, 2), rat(0), rat(0)],
            vec![rat(0), rat(0), ratio(1, 4)],
        ]);
        let gr = siebert_grading(&h, &a, &SpectrumConfig::default()).unwrap();
        assert_eq!(gr.dims(), vec![2, 1]);
        assert_eq!(gr.exact_weight(1), Some(rat(2)));
        assert!(gr.is_exact());
    }

    #[test]
    fn irrational_moduli_split_a_factor() {
        // x^3 - x^2/4 ... : an irreducible cubic with one real root and a
        // complex pair of different modulus, acting on abelian(3).
        let g = LieAlgebra::abelian(3);
        let a = Matrix::from_rows(vec![
            vec![rat(0), rat(0), ratio(1, 20)],
            vec![rat(1), rat(0), ratio(-1, 2)],
            vec![rat(0), rat(1), rat(0)],
        ]);
        let gr = siebert_grading(&g, &a, &SpectrumConfig::default()).unwrap();
        assert_eq!(gr.dims().iter().sum::<usize>(), 3);
        assert!(gr.layers.iter().all(|l| !l.space.is_exact()));
        assert!(check_grading(&gr).ok);
        let d = standard_dilation(&gr, &rat(2)).unwrap();
        assert!(matches!(d, Dilation::Numeric { .. }));
    }
}
