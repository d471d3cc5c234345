//! Certified isolation of complex roots.
//!
//! Floating-point Aberth iteration supplies approximations, which are then
//! certified exactly: with Weierstrass corrections `W_i` the disks centred at
//! `z_i - W_i` of radius `(n-1)|W_i|` cover all roots, and every disk that
//! meets no other contains exactly one root. Disks are refined by exact
//! Durand–Kerner steps rounded to a dyadic grid.

use num_complex::Complex;
use num_traits::{One, Signed, Zero};

use super::poly::RatPoly;
use super::rational::{from_f64, rat, round_dyadic, sqrt_lower, sqrt_upper, to_f64, Rational};

pub type CRational = Complex<Rational>;

/// A closed disk holding exactly one root.
#[derive(Clone, Debug, PartialEq)]
pub struct RootDisk {
    pub center: CRational,
    pub radius_sq: Rational,
}

impl RootDisk {
    pub fn conj(&self) -> RootDisk {
        RootDisk {
            center: self.center.conj(),
            radius_sq: self.radius_sq.clone(),
        }
    }

    /// Certified strict separation of two closed disks.
    pub fn disjoint(&self, other: &RootDisk) -> bool {
        let d2 = (&self.center - &other.center).norm_sqr();
        let s = &d2 - &self.radius_sq - &other.radius_sq;
        if !s.is_positive() {
            return false;
        }
        &s * &s > rat(4) * &self.radius_sq * &other.radius_sq
    }

    pub fn center_f64(&self) -> (f64, f64) {
        (to_f64(&self.center.re), to_f64(&self.center.im))
    }

    pub fn radius_upper(&self, bits: u32) -> Rational {
        sqrt_upper(&self.radius_sq, bits)
    }

    /// Rational bounds on `|z|^2` for `z` in the disk.
    pub fn modulus_sq_bounds(&self, bits: u32) -> (Rational, Rational) {
        let c2 = self.center.norm_sqr();
        let r = self.radius_upper(bits);
        let c_lo = sqrt_lower(&c2, bits);
        let c_hi = sqrt_upper(&c2, bits);
        let lo = &c_lo - &r;
        let lo = if lo.is_positive() { &lo * &lo } else { Rational::zero() };
        let hi = &c_hi + &r;
        (lo, &hi * &hi)
    }

    /// Image under `z -> big_r / conj(z)`, defined when 0 lies outside.
    pub fn circle_inverse(&self, big_r: &Rational) -> Option<RootDisk> {
        let c2 = self.center.norm_sqr();
        let denom = &c2 - &self.radius_sq;
        if !denom.is_positive() {
            return None;
        }
        let k = big_r / &denom;
        Some(RootDisk {
            center: Complex::new(&self.center.re * &k, &self.center.im * &k),
            radius_sq: &self.radius_sq * &k * &k,
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("root isolation did not converge within {bits} bits")]
    NotIsolated { bits: u32 },
    #[error("polynomial is not squarefree")]
    NotSquarefree,
}

fn ceval(p: &RatPoly, z: &CRational) -> CRational {
    let mut acc = CRational::zero();
    for c in p.coeffs().iter().rev() {
        acc = &acc * z + Complex::new(c.clone(), Rational::zero());
    }
    acc
}

fn aberth_f64(p: &RatPoly) -> Vec<Complex<f64>> {
    let n = p.deg();
    let c: Vec<f64> = p.monic().coeffs().iter().map(to_f64).collect();
    let dc: Vec<f64> = (1..=n).map(|i| c[i] * i as f64).collect();
    let ev = |cs: &[f64], z: Complex<f64>| cs.iter().rev().fold(Complex::new(0.0, 0.0), |a, &k| a * z + k);
    let bound = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<Complex<f64>> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex::from_polar(0.5 * bound, t)
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let f = ev(&c, z[i]);
            let d = ev(&dc, z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / d;
            let s: Complex<f64> = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn to_crational(z: Complex<f64>, bits: u32) -> CRational {
    let f = |x: f64| round_dyadic(&from_f64(if x.is_finite() { x } else { 0.0 }).unwrap(), bits);
    Complex::new(f(z.re), f(z.im))
}

/// Exact Weierstrass corrections; `None` if two approximations coincide.
fn weierstrass(p: &RatPoly, z: &[CRational]) -> Option<Vec<CRational>> {
    let lc = Complex::new(p.leading(), Rational::zero());
    let mut out = Vec::with_capacity(z.len());
    for i in 0..z.len() {
        let mut den = lc.clone();
        for j in 0..z.len() {
            if j != i {
                let d = &z[i] - &z[j];
                if d.is_zero() {
                    return None;
                }
                den = den * d;
            }
        }
        out.push(ceval(p, &z[i]) / den);
    }
    Some(out)
}

fn disks_from(z: &[CRational], w: &[CRational]) -> Vec<RootDisk> {
    let n1 = rat(z.len() as i64 - 1);
    let k = &n1 * &n1;
    z.iter()
        .zip(w)
        .map(|(zi, wi)| RootDisk {
            center: zi - wi,
            radius_sq: &k * wi.norm_sqr(),
        })
        .collect()
}

fn pairwise_disjoint(d: &[RootDisk]) -> bool {
    (0..d.len()).all(|i| (i + 1..d.len()).all(|j| d[i].disjoint(&d[j])))
}

/// Isolating disks of radius at most `2^-bits` for a squarefree polynomial.
/// `max_bits` caps the working precision.
pub fn isolate_roots(p: &RatPoly, bits: u32, max_bits: u32) -> Result<Vec<RootDisk>, RootError> {
    let n = p.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    if p.gcd(&p.derivative()).deg() > 0 {
        return Err(RootError::NotSquarefree);
    }
    if n == 1 {
        let c = p.coeffs();
        return Ok(vec![RootDisk {
            center: Complex::new(-&c[0] / &c[1], Rational::zero()),
            radius_sq: Rational::zero(),
        }]);
    }
    let target = Rational::new(One::one(), num_bigint::BigInt::one() << (2 * bits as usize));
    let mut work = 64u32.max(bits + 8);
    let mut z: Vec<CRational> = aberth_f64(p).into_iter().map(|x| to_crational(x, 60)).collect();
    for round in 0..200u32 {
        let w = match weierstrass(p, &z) {
            Some(w) => w,
            None => {
                // Separate coincident starting points.
                for (i, zi) in z.iter_mut().enumerate() {
                    let eps = Rational::new(num_bigint::BigInt::from(i + 1), num_bigint::BigInt::one() << 40usize);
                    zi.im += eps;
                }
                continue;
            }
        };
        let disks = disks_from(&z, &w);
        if pairwise_disjoint(&disks) && disks.iter().all(|d| d.radius_sq <= target) {
            return Ok(disks);
        }
        if work > max_bits {
            return Err(RootError::NotIsolated { bits: max_bits });
        }
        z = z
            .iter()
            .zip(&w)
            .map(|(zi, wi)| {
                let nz = zi - wi;
                Complex::new(round_dyadic(&nz.re, work), round_dyadic(&nz.im, work))
            })
            .collect();
        if round % 2 == 1 {
            work = work.saturating_mul(2);
        }
    }
    Err(RootError::NotIsolated { bits: max_bits })
}

/// For each disk, the index of the disk holding the conjugate root, when the
/// conjugate disk meets exactly one disk. A self-index certifies a real root.
pub fn conjugate_pairing(disks: &[RootDisk]) -> Vec<Option<usize>> {
    disks
        .iter()
        .map(|d| {
            let c = d.conj();
            let hits: Vec<usize> = (0..disks.len()).filter(|&j| !c.disjoint(&disks[j])).collect();
            (hits.len() == 1).then(|| hits[0])
        })
        .collect()
}
