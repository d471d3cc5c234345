//! Type (R): every `ad X` has purely imaginary spectrum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::LieAlgebra;
use super::series::is_solvable;
use crate::linalg::matrix::Vector;
use crate::linalg::rational::{ratio, Rational};
use crate::linalg::spectrum::has_purely_imaginary_spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Confidence {
    /// Decided exactly.
    Exact,
    /// Only sampled elements were tested.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypeRVerdict {
    pub holds: bool,
    pub confidence: Confidence,
    /// An element whose `ad` has a non-imaginary eigenvalue.
    pub witness: Option<Vector>,
}

/// Small random rational vector with numerators in `[-5, 5]` and
/// denominators in `[1, 3]`.
pub fn sample_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    (0..dim)
        .map(|_| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
        .collect()
}

fn imaginary(g: &LieAlgebra, x: &[Rational]) -> bool {
    has_purely_imaginary_spectrum(&g.ad(x)).expect("ad is square")
}

/// For solvable `g` the eigenvalue functionals are linear (Lie's theorem),
/// so the basis decides the question exactly. Otherwise basis vectors plus
/// `samples` seeded random elements are tested; a failure is still exact.
pub fn is_type_r(g: &LieAlgebra, seed: u64, samples: usize) -> TypeRVerdict {
    for i in 0..g.dim() {
        let e = g.basis_vector(i);
        if !imaginary(g, &e) {
            return TypeRVerdict {
                holds: false,
                confidence: Confidence::Exact,
                witness: Some(e),
            };
        }
    }
    if is_solvable(g) {
        return TypeRVerdict {
            holds: true,
            confidence: Confidence::Exact,
            witness: None,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = sample_vector(&mut rng, g.dim());
        if !imaginary(g, &x) {
            return TypeRVerdict {
                holds: false,
                confidence: Confidence::Exact,
                witness: Some(x),
            };
        }
    }
    TypeRVerdict {
        holds: true,
        confidence: Confidence::Sampled { samples, seed },
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::rat;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn examples() {
        let sl2 = LieAlgebra::from_brackets(
            &["H", "E", "F"],
            &[(0, 1, v(&[0, 2, 0])), (0, 2, v(&[0, 0, -2])), (1, 2, v(&[1, 0, 0]))],
        )
        .unwrap();
        let r = is_type_r(&sl2, 1, 10);
        assert!(!r.holds);
        assert_eq!(r.witness, Some(v(&[1, 0, 0])));
        let e2 = LieAlgebra::from_brackets(&["X", "Y", "T"], &[(2, 0, v(&[0, 1, 0])), (2, 1, v(&[-1, 0, 0]))]).unwrap();
        assert_eq!(is_type_r(&e2, 1, 10).confidence, Confidence::Exact);
        assert!(is_type_r(&e2, 1, 10).holds);
        // so(3) is compact: every ad is skew
        let so3 = LieAlgebra::from_brackets(
            &["A", "B", "C"],
            &[(0, 1, v(&[0, 0, 1])), (1, 2, v(&[1, 0, 0])), (2, 0, v(&[0, 1, 0]))],
        )
        .unwrap();
        let r = is_type_r(&so3, 7, 25);
        assert!(r.holds);
        assert_eq!(r.confidence, Confidence::Sampled { samples: 25, seed: 7 });
    }
}
