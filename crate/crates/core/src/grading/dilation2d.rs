//! Dilation families on the plane and their homogeneous distances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::rational::{rat, to_f64, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum DilationKind {
    /// `diag(λ^α, λ^β)` with `d = max(|Δx|^{1/α}, |Δy|^{1/β})`.
    Diagonal { alpha: Rational, beta: Rational },
    /// `λ^α rot(ln λ)` with `d = ‖Δ‖^{1/α}`.
    RotationScaling { alpha: Rational },
    /// `λ^α [[1, α ln λ], [0, 1]]`, `α > 1`.
    Shear { alpha: Rational },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DilationError {
    #[error("exponents must be at least 1 (greater than 1 for the shear family)")]
    Exponent,
    #[error("lambda must be positive and different from 1")]
    Lambda,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DilationFamily2D {
    kind: DilationKind,
    lambda: Rational,
}

impl DilationFamily2D {
    pub fn new(kind: DilationKind, lambda: Rational) -> Result<Self, DilationError> {
        let one = rat(1);
        let ok = match &kind {
            DilationKind::Diagonal { alpha, beta } => *alpha >= one && *beta >= one,
            DilationKind::RotationScaling { alpha } => *alpha >= one,
            DilationKind::Shear { alpha } => *alpha > one,
        };
        if !ok {
            return Err(DilationError::Exponent);
        }
        if lambda <= rat(0) || lambda == one {
            return Err(DilationError::Lambda);
        }
        Ok(DilationFamily2D { kind, lambda })
    }

    pub fn kind(&self) -> &DilationKind {
        &self.kind
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// Row-major matrix of `δ_λ`.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let l = to_f64(&self.lambda);
        match &self.kind {
            DilationKind::Diagonal { alpha, beta } => {
                [[l.powf(to_f64(alpha)), 0.0], [0.0, l.powf(to_f64(beta))]]
            }
            DilationKind::RotationScaling { alpha } => {
                let s = l.powf(to_f64(alpha));
                let (sin, cos) = l.ln().sin_cos();
                [[s * cos, -s * sin], [s * sin, s * cos]]
            }
            DilationKind::Shear { alpha } => {
                let la = l.powf(to_f64(alpha));
                [[la, la * la.ln()], [0.0, la]]
            }
        }
    }

    /// Homogeneous distance between `p` and `q`.
    pub fn distance(&self, p: (f64, f64), q: (f64, f64)) -> f64 {
        let (dx, dy) = (q.0 - p.0, q.1 - p.1);
        match &self.kind {
            DilationKind::Diagonal { alpha, beta } => {
                dx.abs().powf(1.0 / to_f64(alpha)).max(dy.abs().powf(1.0 / to_f64(beta)))
            }
            DilationKind::RotationScaling { alpha } => dx.hypot(dy).powf(1.0 / to_f64(alpha)),
            DilationKind::Shear { alpha } => shear_gauge(to_f64(alpha), dx, dy),
        }
    }

    pub fn apply(&self, p: (f64, f64)) -> (f64, f64) {
        let m = self.matrix();
        (m[0][0] * p.0 + m[0][1] * p.1, m[1][0] * p.0 + m[1][1] * p.1)
    }
}

/// `e^s` for the unique `s` with `‖exp(-s D) v‖ = 1`, where
/// `D = α [[1, 1], [0, 1]]` generates the shear dilations. Scaling `v` by
/// `δ_λ = exp(ln λ D)` shifts `s` by `ln λ`.
pub fn shear_gauge(alpha: f64, x: f64, y: f64) -> f64 {
    if x == 0.0 && y == 0.0 {
        return 0.0;
    }
    // h(s) = -α s + ln ‖(x - α s y, y)‖ is decreasing with h' in [-3α/2, -α/2].
    let h = |s: f64| -alpha * s + 0.5 * ((x - alpha * s * y).powi(2) + y * y).ln();
    let dh = |s: f64| {
        let u = x - alpha * s * y;
        -alpha * (1.0 + y * u / (u * u + y * y))
    };
    let start = 0.5 * (x * x + y * y).ln() / alpha;
    let (mut lo, mut hi) = (start - 1.0, start + 1.0);
    while h(lo) < 0.0 {
        lo -= 2.0 * (hi - lo);
    }
    while h(hi) > 0.0 {
        hi += 2.0 * (hi - lo);
    }
    let mut s = 0.5 * (lo + hi);
    for _ in 0..200 {
        let v = h(s);
        if v == 0.0 {
            break;
        }
        if v > 0.0 {
            lo = s;
        } else {
            hi = s;
        }
        let next = s - v / dh(s);
        let next = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
        if (next - s).abs() <= 1e-15 * s.abs().max(1.0) {
            s = next;
            break;
        }
        s = next;
    }
    s.exp()
}

/// Largest `|d(δp, δq) - λ d(p, q)| / (λ d(p, q))` over seeded samples in
/// `[-10, 10]^2`.
pub fn verify_dilation_property(fam: &DilationFamily2D, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = to_f64(&fam.lambda);
    let mut worst: f64 = 0.0;
    let mut taken = 0;
    while taken < samples {
        let p = (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let q = (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let d = fam.distance(p, q);
        if d == 0.0 {
            continue;
        }
        taken += 1;
        let dd = fam.distance(fam.apply(p), fam.apply(q));
        worst = worst.max((dd - l * d).abs() / (l * d));
    }
    worst
}
