//! Exact spectral questions: imaginary-axis spectra, spectral radius bounds,
//! primary components and eigenvalue-modulus clustering.

use num_traits::{Signed, Zero};

use super::factor::factor;
use super::matrix::Matrix;
use super::poly::{NonSquare, RatPoly};
use super::rational::{exact_root, pow_rational, rat, to_f64, Rational};
use super::roots::{conjugate_pairing, isolate_roots, RootDisk};
use super::sturm::count_negative_roots;
use super::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectrumError {
    #[error(transparent)]
    NonSquare(#[from] NonSquare),
    #[error("eigenvalue moduli not separated at {bits} bits of precision")]
    Undecided { bits: u32 },
    #[error("polynomial {0} does not divide the characteristic polynomial")]
    NotAFactor(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectrumConfig {
    /// Precision floor for modulus separation, in bits.
    pub precision_bits: u32,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig { precision_bits: 128 }
    }
}

/// Roots of equal modulus grouped together.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusCluster {
    /// Floating approximation of the common modulus.
    pub modulus: f64,
    /// Absolute error bound on `modulus`.
    pub error: f64,
    /// Exact squared modulus when it is certified rational.
    pub modulus_sq: Option<Rational>,
    /// Certified rational enclosure of the squared modulus.
    pub modulus_sq_bounds: (Rational, Rational),
    /// `(factor index, number of distinct roots of that factor)`.
    pub members: Vec<(usize, usize)>,
    /// Number of eigenvalues in the cluster, with multiplicity.
    pub count: usize,
}

impl ModulusCluster {
    pub fn is_exact(&self) -> bool {
        self.modulus_sq.is_some()
    }

    /// The modulus itself when it is rational.
    pub fn exact_modulus(&self) -> Option<Rational> {
        self.modulus_sq.as_ref().and_then(|r2| exact_root(r2, 2))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub char_poly: RatPoly,
    pub irreducible_factors: Vec<(RatPoly, usize)>,
    /// Sorted by increasing modulus.
    pub modulus_clusters: Vec<ModulusCluster>,
}

impl SpectrumReport {
    /// Index of the cluster holding every root of factor `f`, or `None` if
    /// the factor's roots are spread over several clusters.
    pub fn cluster_of_factor(&self, f: usize) -> Option<usize> {
        let hits: Vec<usize> = self
            .modulus_clusters
            .iter()
            .enumerate()
            .filter(|(_, c)| c.members.iter().any(|(i, _)| *i == f))
            .map(|(k, _)| k)
            .collect();
        (hits.len() == 1).then(|| hits[0])
    }
}

pub fn has_purely_imaginary_spectrum(m: &Matrix) -> Result<bool, NonSquare> {
    let chi = RatPoly::char_poly(m)?;
    Ok(factor(&chi).iter().all(|(f, _)| {
        if *f == RatPoly::x() {
            return true;
        }
        match f.as_even() {
            Some(g) => count_negative_roots(&g) == g.deg(),
            None => false,
        }
    }))
}

/// Whether every eigenvalue modulus is strictly below `bound`. Decided
/// exactly: the unit disk is mapped to the left half-plane by a Cayley
/// transform and the image polynomial is tested with the Routh array.
pub fn spectral_radius_lt(m: &Matrix, bound: &Rational) -> Result<bool, SpectrumError> {
    let chi = RatPoly::char_poly(m)?;
    let n = chi.deg();
    if n == 0 {
        return Ok(true);
    }
    if !bound.is_positive() {
        return Ok(false);
    }
    let g = chi.scale_argument(bound);
    Ok(schur_stable(&g))
}

/// All roots strictly inside the unit disk.
pub fn schur_stable(g: &RatPoly) -> bool {
    let n = g.deg();
    let one_plus = RatPoly::from_i64(&[1, 1]);
    let one_minus = RatPoly::from_i64(&[1, -1]);
    let mut h = RatPoly::zero();
    for k in 0..=n {
        let term = &(&one_plus.pow(k) * &one_minus.pow(n - k)) * &RatPoly::constant(g.coeff(k));
        h = &h + &term;
    }
    if h.degree() != Some(n) {
        // -1 is a root of g.
        return false;
    }
    hurwitz_stable(&h)
}

/// All roots in the open left half-plane, by the Routh array.
pub fn hurwitz_stable(h: &RatPoly) -> bool {
    let n = h.deg();
    let h = if h.leading().is_negative() { -h } else { h.clone() };
    let c = |i: isize| -> Rational {
        if i < 0 {
            Rational::zero()
        } else {
            h.coeff(i as usize)
        }
    };
    let width = n / 2 + 1;
    let mut prev: Vec<Rational> = (0..width).map(|j| c(n as isize - 2 * j as isize)).collect();
    let mut cur: Vec<Rational> = (0..width).map(|j| c(n as isize - 1 - 2 * j as isize)).collect();
    if !prev[0].is_positive() {
        return false;
    }
    for _ in 1..=n {
        if !cur[0].is_positive() {
            return false;
        }
        let next: Vec<Rational> = (0..width)
            .map(|j| {
                let a = prev.get(j + 1).cloned().unwrap_or_default();
                let b = cur.get(j + 1).cloned().unwrap_or_default();
                (&cur[0] * a - &prev[0] * b) / &cur[0]
            })
            .collect();
        prev = cur;
        cur = next;
    }
    true
}

/// `ker factor(m)^mult`.
pub fn primary_component(m: &Matrix, f: &RatPoly, mult: usize) -> Result<Subspace, SpectrumError> {
    let chi = RatPoly::char_poly(m)?;
    if f.deg() == 0 || !f.divides(&chi) {
        return Err(SpectrumError::NotAFactor(f.to_string()));
    }
    Ok(f.pow(mult).eval_matrix(m).kernel())
}

/// Exact squared modulus shared by every root of `f`, certified through the
/// symmetry `z -> R / conj(z)`; requires monic `f`.
fn inversion_modulus(f: &RatPoly, disks: &[RootDisk]) -> Vec<Option<Rational>> {
    let n = f.deg();
    let none = vec![None; disks.len()];
    let a0 = f.coeff(0);
    if a0.is_zero() {
        return none;
    }
    let Some(big_r) = exact_root(&(&a0 * &a0), n as u32) else {
        return none;
    };
    let reciprocal = (0..=n).all(|m| {
        f.coeff(n - m) * pow_rational(&big_r, (n - m) as u32) == &a0 * &f.coeff(m)
    });
    if !reciprocal {
        return none;
    }
    disks
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let img = d.circle_inverse(&big_r)?;
            let alone = (0..disks.len()).all(|j| j == i || img.disjoint(&disks[j]));
            alone.then(|| big_r.clone())
        })
        .collect()
}

struct RootInfo {
    factor: usize,
    exact: Option<Rational>,
    bounds: (Rational, Rational),
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

fn cluster_at(
    factors: &[(RatPoly, usize)],
    bits: u32,
    max_bits: u32,
) -> Result<Option<Vec<ModulusCluster>>, SpectrumError> {
    let mut roots: Vec<RootInfo> = Vec::new();
    let mut parent: Vec<usize> = Vec::new();
    for (fi, (f, _)) in factors.iter().enumerate() {
        let f = f.monic();
        let disks = isolate_roots(&f, bits, max_bits).map_err(|_| SpectrumError::Undecided { bits: max_bits })?;
        let base = roots.len();
        let mut exact = inversion_modulus(&f, &disks);
        if f.deg() == 1 {
            let a = -f.coeff(0);
            exact = vec![Some(&a * &a)];
        } else if f.deg() == 2 {
            let (b, c) = (f.coeff(1), f.coeff(0));
            if &b * &b < rat(4) * &c {
                exact = vec![Some(c.clone()), Some(c)];
            }
        }
        for (d, e) in disks.iter().zip(exact) {
            roots.push(RootInfo {
                factor: fi,
                exact: e,
                bounds: d.modulus_sq_bounds(bits + 8),
            });
            parent.push(parent.len());
        }
        for (i, j) in conjugate_pairing(&disks).into_iter().enumerate() {
            if let Some(j) = j {
                union(&mut parent, base + i, base + j);
            }
        }
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if let (Some(a), Some(b)) = (&roots[i].exact, &roots[j].exact) {
                if a == b {
                    union(&mut parent, i, j);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..roots.len() {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, v)) => v.push(i),
            None => groups.push((r, vec![i])),
        }
    }
    let mut clusters = Vec::new();
    for (_, members) in &groups {
        let exact = members.iter().find_map(|&i| roots[i].exact.clone());
        let (mut lo, mut hi) = roots[members[0]].bounds.clone();
        for &i in members {
            if roots[i].bounds.0 > lo {
                lo = roots[i].bounds.0.clone();
            }
            if roots[i].bounds.1 < hi {
                hi = roots[i].bounds.1.clone();
            }
        }
        if let Some(e) = &exact {
            lo = e.clone();
            hi = e.clone();
        }
        let mut per_factor: Vec<(usize, usize)> = Vec::new();
        let mut count = 0;
        for &i in members {
            let fi = roots[i].factor;
            count += factors[fi].1;
            match per_factor.iter_mut().find(|(k, _)| *k == fi) {
                Some((_, c)) => *c += 1,
                None => per_factor.push((fi, 1)),
            }
        }
        per_factor.sort();
        let (flo, fhi) = (to_f64(&lo).max(0.0).sqrt(), to_f64(&hi).max(0.0).sqrt());
        clusters.push(ModulusCluster {
            modulus: 0.5 * (flo + fhi),
            error: 0.5 * (fhi - flo) + f64::EPSILON * fhi,
            modulus_sq: exact,
            modulus_sq_bounds: (lo, hi),
            members: per_factor,
            count,
        });
    }
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            let (a, b) = (&clusters[i], &clusters[j]);
            let separated = a.modulus_sq_bounds.1 < b.modulus_sq_bounds.0
                || b.modulus_sq_bounds.1 < a.modulus_sq_bounds.0
                || (a.is_exact() && b.is_exact());
            if !separated {
                return Ok(None);
            }
        }
    }
    clusters.sort_by(|a, b| a.modulus_sq_bounds.0.cmp(&b.modulus_sq_bounds.0));
    Ok(Some(clusters))
}

/// Groups the roots of the given factors by modulus.
pub fn modulus_clusters(
    factors: &[(RatPoly, usize)],
    cfg: &SpectrumConfig,
) -> Result<Vec<ModulusCluster>, SpectrumError> {
    let floor = cfg.precision_bits.max(8);
    let max_bits = floor.saturating_mul(8).max(1024);
    let mut bits = 32.min(floor);
    loop {
        if let Some(c) = cluster_at(factors, bits, max_bits)? {
            return Ok(c);
        }
        if bits >= floor {
            return Err(SpectrumError::Undecided { bits: floor });
        }
        bits = (bits * 2).min(floor);
    }
}

pub fn spectrum(m: &Matrix, cfg: &SpectrumConfig) -> Result<SpectrumReport, SpectrumError> {
    let chi = RatPoly::char_poly(m)?;
    let factors = factor(&chi);
    let clusters = modulus_clusters(&factors, cfg)?;
    Ok(SpectrumReport {
        char_poly: chi,
        irreducible_factors: factors,
        modulus_clusters: clusters,
    })
}

/// Product of `factor^mult`, for reconstruction checks.
pub fn product_of_factors(factors: &[(RatPoly, usize)]) -> RatPoly {
    factors
        .iter()
        .fold(RatPoly::one(), |acc, (f, k)| &acc * &f.pow(*k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::ratio;

    fn rot() -> Matrix {
        Matrix::from_i64(&[&[0, -1], &[1, 0]])
    }

    #[test]
    fn imaginary_spectrum_examples() {
        assert!(has_purely_imaginary_spectrum(&rot()).unwrap());
        assert!(!has_purely_imaginary_spectrum(&Matrix::from_i64(&[&[1, 0], &[0, -1]])).unwrap());
        assert!(has_purely_imaginary_spectrum(&Matrix::zeros(3, 3)).unwrap());
        // x^4 + 1 has roots off both axes
        let c = Matrix::from_i64(&[&[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert!(!has_purely_imaginary_spectrum(&c).unwrap());
    }

    #[test]
    fn spectral_radius_examples() {
        let d = Matrix::diag(&[ratio(1, 2), ratio(1, 4)]);
        assert!(spectral_radius_lt(&d, &rat(1)).unwrap());
        assert!(!spectral_radius_lt(&Matrix::identity(2), &rat(1)).unwrap());
        let golden = Matrix::from_i64(&[&[0, 1], &[1, 1]]);
        assert!(spectral_radius_lt(&golden, &rat(2)).unwrap());
        assert!(!spectral_radius_lt(&golden, &ratio(8, 5)).unwrap());
        assert!(spectral_radius_lt(&golden, &ratio(13, 8)).unwrap());
        assert!(!spectral_radius_lt(&rot(), &rat(1)).unwrap());
        assert!(spectral_radius_lt(&rot(), &ratio(1001, 1000)).unwrap());
    }

    #[test]
    fn primary_components() {
        let d = Matrix::diag(&[rat(1), rat(2)]);
        let v = primary_component(&d, &RatPoly::from_i64(&[-1, 1]), 1).unwrap();
        assert_eq!(v, Subspace::from_vectors(2, vec![vec![rat(1), rat(0)]]));
        let n = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert!(primary_component(&n, &RatPoly::x(), 2).unwrap().is_full());
        assert!(primary_component(&rot(), &RatPoly::from_i64(&[1, 0, 1]), 1).unwrap().is_full());
        assert!(primary_component(&d, &RatPoly::from_i64(&[-3, 1]), 1).is_err());
    }

    #[test]
    fn clusters_of_mixed_spectrum() {
        // eigenvalues 1/2 (x2), -1/2, ±i/2, 3, golden pair
        let m = Matrix::block_diag(
            &Matrix::block_diag(
                &Matrix::diag(&[ratio(1, 2), ratio(1, 2), ratio(-1, 2), rat(3)]),
                &Matrix::from_rows(vec![vec![rat(0), ratio(-1, 2)], vec![ratio(1, 2), rat(0)]]),
            ),
            &Matrix::from_i64(&[&[0, 1], &[1, 1]]),
        );
        let rep = spectrum(&m, &SpectrumConfig::default()).unwrap();
        assert_eq!(product_of_factors(&rep.irreducible_factors), rep.char_poly);
        let counts: Vec<usize> = rep.modulus_clusters.iter().map(|c| c.count).collect();
        assert_eq!(counts, vec![5, 1, 1, 1]);
        assert_eq!(rep.modulus_clusters[0].exact_modulus(), Some(ratio(1, 2)));
        assert!(!rep.modulus_clusters[1].is_exact());
        assert!((rep.modulus_clusters[2].modulus - 1.618033988749895).abs() < 1e-12);
    }

    #[test]
    fn reciprocal_real_roots_share_modulus() {
        // x^2 - 2 and x^2 + 2 have all roots of modulus sqrt(2)
        let m = Matrix::from_i64(&[&[0, 2, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -2], &[0, 0, 1, 0]]);
        let rep = spectrum(&m, &SpectrumConfig::default()).unwrap();
        assert_eq!(rep.modulus_clusters.len(), 1);
        assert_eq!(rep.modulus_clusters[0].modulus_sq, Some(rat(2)));
    }
}
