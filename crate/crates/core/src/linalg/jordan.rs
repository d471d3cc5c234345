//! Jordan–Chevalley decomposition over the rationals.

use super::matrix::Matrix;
use super::poly::{NonSquare, RatPoly};

/// Additive Jordan decomposition `m = semisimple + nilpotent`.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanPair {
    pub semisimple: Matrix,
    pub nilpotent: Matrix,
}

/// Newton iteration `S <- S - q(S) q'(S)^-1` with `q` the squarefree part of
/// the characteristic polynomial; converges in about `log2(n)` steps.
pub fn jordan_chevalley(m: &Matrix) -> Result<JordanPair, NonSquare> {
    let chi = RatPoly::char_poly(m)?;
    let n = m.rows();
    let q = chi.squarefree_part();
    let dq = q.derivative();
    let mut s = m.clone();
    loop {
        let qs = q.eval_matrix(&s);
        if qs.is_zero() {
            break;
        }
        let inv = dq
            .eval_matrix(&s)
            .inverse()
            .expect("q'(S) is invertible for squarefree q");
        s = &s - &(&qs * &inv);
    }
    let nilpotent = m - &s;
    debug_assert!(nilpotent.pow(n.max(1)).is_zero());
    Ok(JordanPair {
        semisimple: s,
        nilpotent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unipotent_block() {
        let m = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        let jp = jordan_chevalley(&m).unwrap();
        assert_eq!(jp.semisimple, Matrix::identity(2));
        assert_eq!(jp.nilpotent, Matrix::from_i64(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn trivial_cases() {
        let n = Matrix::from_i64(&[&[0, 1, 3], &[0, 0, 2], &[0, 0, 0]]);
        let jp = jordan_chevalley(&n).unwrap();
        assert!(jp.semisimple.is_zero());
        let d = Matrix::from_i64(&[&[2, 0], &[0, 3]]);
        let jp = jordan_chevalley(&d).unwrap();
        assert!(jp.nilpotent.is_zero());
    }

    #[test]
    fn mixed_block_commutes() {
        // rotation block plus a nilpotent coupling
        let m = Matrix::from_i64(&[
            &[0, -1, 1, 0],
            &[1, 0, 0, 1],
            &[0, 0, 0, -1],
            &[0, 0, 1, 0],
        ]);
        let jp = jordan_chevalley(&m).unwrap();
        assert!(jp.semisimple.commutator(&jp.nilpotent).is_zero());
        assert!(jp.nilpotent.pow(4).is_zero());
        assert!(!jp.nilpotent.is_zero());
        let q = RatPoly::char_poly(&jp.semisimple).unwrap().squarefree_part();
        assert!(q.eval_matrix(&jp.semisimple).is_zero());
    }
}
