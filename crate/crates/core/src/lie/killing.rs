//! Killing form, annihilators, radical and nilradical.

use num_traits::{Signed, Zero};

use super::algebra::LieAlgebra;
use super::series::{is_nilpotent_subspace, is_solvable_subspace};
use crate::linalg::matrix::{Matrix, Vector};
use crate::linalg::rational::Rational;
use crate::linalg::subspace::Subspace;

/// `B_ij = tr(ad e_i ad e_j)`.
pub fn killing_form(g: &LieAlgebra) -> Matrix {
    let n = g.dim();
    let mut b = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let t = trace_of_product(g.ad_basis(i), g.ad_basis(j));
            b[(i, j)] = t.clone();
            b[(j, i)] = t;
        }
    }
    b
}

fn trace_of_product(a: &Matrix, b: &Matrix) -> Rational {
    let n = a.rows();
    let mut t = Rational::zero();
    for i in 0..n {
        for k in 0..n {
            let x = &a[(i, k)];
            if !x.is_zero() {
                let y = &b[(k, i)];
                if !y.is_zero() {
                    t += x * y;
                }
            }
        }
    }
    t
}

/// `B(x, y)` for arbitrary vectors.
pub fn killing(g: &LieAlgebra, x: &[Rational], y: &[Rational]) -> Rational {
    trace_of_product(&g.ad(x), &g.ad(y))
}

/// `{x : B(x, s) = 0}`.
pub fn killing_annihilator(g: &LieAlgebra, s: &Subspace) -> Subspace {
    if s.is_zero() {
        return g.full();
    }
    let b = killing_form(g);
    let rows: Vec<Vector> = s.basis().iter().map(|v| b.apply(v)).collect();
    Matrix::from_rows(rows).kernel()
}

/// `(positive, negative, zero)` counts of a symmetric rational matrix, by
/// exact congruence diagonalization.
pub fn signature(sym: &Matrix) -> (usize, usize, usize) {
    let n = sym.rows();
    let mut a = sym.clone();
    let (mut pos, mut neg) = (0, 0);
    let swap = |a: &mut Matrix, i: usize, j: usize| {
        if i == j {
            return;
        }
        for c in 0..n {
            let t = a[(i, c)].clone();
            a[(i, c)] = a[(j, c)].clone();
            a[(j, c)] = t;
        }
        for r in 0..n {
            let t = a[(r, i)].clone();
            a[(r, i)] = a[(r, j)].clone();
            a[(r, j)] = t;
        }
    };
    for k in 0..n {
        if let Some(i) = (k..n).find(|&i| !a[(i, i)].is_zero()) {
            swap(&mut a, i, k);
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[(i, j)].is_zero())
        {
            // row_i += row_j, col_i += col_j gives a_ii = 2 a_ij.
            for c in 0..n {
                let t = a[(j, c)].clone();
                a[(i, c)] += t;
            }
            for r in 0..n {
                let t = a[(r, j)].clone();
                a[(r, i)] += t;
            }
            swap(&mut a, i, k);
        } else {
            break;
        }
        let p = a[(k, k)].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &p;
            for c in k..n {
                let t = &f * &a[(k, c)];
                a[(i, c)] -= t;
            }
            for r in k..n {
                let t = &f * &a[(r, k)];
                a[(r, i)] -= t;
            }
        }
    }
    (pos, neg, n - pos - neg)
}

pub fn killing_signature(g: &LieAlgebra) -> (usize, usize, usize) {
    signature(&killing_form(g))
}

/// Largest solvable ideal: the Killing annihilator of `[g, g]`.
pub fn radical(g: &LieAlgebra) -> Subspace {
    let full = g.full();
    let derived = g.bracket_spaces(&full, &full);
    let r = killing_annihilator(g, &derived);
    debug_assert!(g.is_ideal(&r) && is_solvable_subspace(g, &r));
    r
}

/// Whether `s` is an ideal that is nilpotent as a Lie algebra.
pub fn is_nilpotent_ideal(g: &LieAlgebra, s: &Subspace) -> bool {
    g.is_ideal(s) && is_nilpotent_subspace(g, s)
}

/// Largest nilpotent ideal.
///
/// Inside the radical `r`, `m = [g, r]` is a nilpotent ideal and `ad`
/// restricted to a complement `c` of `m` generates an associative algebra
/// that is simultaneously triangularizable over C. An element `x = m + t.c`
/// has nilpotent `ad x` iff `t.ad(c)` lies in the radical of that
/// associative algebra, which is the radical of its trace form.
pub fn nilradical(g: &LieAlgebra) -> Subspace {
    let r = radical(g);
    let m = g.bracket_spaces(&g.full(), &r);
    let comp = m.complement_in(&r);
    if comp.is_empty() {
        return m;
    }
    let gens: Vec<Matrix> = comp.iter().map(|c| g.ad(c)).collect();
    let alg = associative_closure(g.dim(), &gens);
    // tr(ad(c_a) b_k) = 0 for all k
    let rows: Vec<Vector> = alg
        .iter()
        .map(|b| gens.iter().map(|a| trace_of_product(a, b)).collect())
        .collect();
    let sol = Matrix::from_rows(rows).kernel();
    let mut vs = m.basis().to_vec();
    for t in sol.basis() {
        let mut v = vec![Rational::zero(); g.dim()];
        for (ta, ca) in t.iter().zip(&comp) {
            if !ta.is_zero() {
                for (x, y) in v.iter_mut().zip(ca) {
                    *x += ta * y;
                }
            }
        }
        vs.push(v);
    }
    let nil = Subspace::from_vectors(g.dim(), vs);
    assert!(
        verify_nilradical(g, &r, &nil),
        "nilradical post-condition failed"
    );
    nil
}

/// Checks that `nil` is a nilpotent ideal containing `[g, r]` and that no
/// vector of `r` outside it extends it to a nilpotent ideal.
pub fn verify_nilradical(g: &LieAlgebra, r: &Subspace, nil: &Subspace) -> bool {
    if !is_nilpotent_ideal(g, nil) || !nil.is_subspace_of(r) {
        return false;
    }
    if !g.bracket_spaces(&g.full(), r).is_subspace_of(nil) {
        return false;
    }
    nil.complement_in(r).into_iter().all(|v| {
        let ext = nil.sum(&Subspace::from_vectors(g.dim(), vec![v]));
        !is_nilpotent_ideal(g, &ext)
    })
}

/// Basis of the unital associative algebra generated by `gens`.
fn associative_closure(n: usize, gens: &[Matrix]) -> Vec<Matrix> {
    let mut basis: Vec<Matrix> = Vec::new();
    let mut span = Subspace::zero(n * n);
    let mut frontier = vec![Matrix::identity(n)];
    while let Some(m) = frontier.pop() {
        let flat = m.flatten();
        if span.contains(&flat) {
            continue;
        }
        span = span.sum(&Subspace::from_vectors(n * n, vec![flat]));
        for gen in gens {
            frontier.push(&m * gen);
        }
        basis.push(m);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::rat;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| rat(x)).collect()
    }

    fn sl2() -> LieAlgebra {
        LieAlgebra::from_brackets(
            &["H", "E", "F"],
            &[(0, 1, v(&[0, 2, 0])), (0, 2, v(&[0, 0, -2])), (1, 2, v(&[1, 0, 0]))],
        )
        .unwrap()
    }

    #[test]
    fn sl2_killing() {
        let b = killing_form(&sl2());
        assert_eq!(b, Matrix::from_i64(&[&[8, 0, 0], &[0, 0, 4], &[0, 4, 0]]));
        assert_eq!(signature(&b), (2, 1, 0));
        assert!(radical(&sl2()).is_zero());
        assert!(nilradical(&sl2()).is_zero());
        assert!(killing_annihilator(&sl2(), &sl2().full()).is_zero());
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&Matrix::from_i64(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(signature(&Matrix::from_i64(&[&[-2, 0, 0], &[0, 0, 0], &[0, 0, 0]])), (0, 1, 2));
        assert_eq!(signature(&Matrix::zeros(3, 3)), (0, 0, 3));
    }

    #[test]
    fn e2_nilradical() {
        let e2 = LieAlgebra::from_brackets(&["X", "Y", "T"], &[(2, 0, v(&[0, 1, 0])), (2, 1, v(&[-1, 0, 0]))]).unwrap();
        let xy = Subspace::from_vectors(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        assert!(radical(&e2).is_full());
        assert_eq!(nilradical(&e2), xy);
        let t = Subspace::from_vectors(3, vec![v(&[0, 0, 1])]);
        assert_eq!(killing_annihilator(&e2, &t), xy);
        assert_eq!(killing(&e2, &v(&[0, 0, 1]), &v(&[0, 0, 1])), rat(-2));
    }

    #[test]
    fn diagonal_action_nilradical() {
        // [T, X] = X, [T, Y] = Y: nilradical span(X, Y)
        let g = LieAlgebra::from_brackets(&["X", "Y", "T"], &[(2, 0, v(&[1, 0, 0])), (2, 1, v(&[0, 1, 0]))]).unwrap();
        assert_eq!(nilradical(&g).dim(), 2);
        // sl2 + abelian(2): radical is the abelian factor
        let s = sl2().direct_sum(&LieAlgebra::abelian(2));
        let r = radical(&s);
        assert_eq!(r, Subspace::from_vectors(5, vec![v(&[0, 0, 0, 1, 0]), v(&[0, 0, 0, 0, 1])]));
        assert_eq!(nilradical(&s), r);
    }
}
