//! Generators shared by the acceptance and property targets.
#![allow(dead_code)]

use lieshadow::catalog;
use lieshadow::lie::LieAlgebra;
use lieshadow::linalg::rational::{rat, Rational};
use lieshadow::linalg::Matrix;
use lieshadow::modification::ModMap;
use proptest::prelude::*;

/// Recipe for a modification map on `heisenberg(1)? ⊕ abelian(2 planes + drivers)`.
///
/// Each driver coordinate `t_d` maps to `Σ_b coeffs[d][b] R_b`, where the
/// `R_b` are rotations of the Heisenberg `X, Y` plane and of the abelian
/// planes. Every other basis vector maps to zero.
#[derive(Debug, Clone)]
pub struct ModRecipe {
    pub heis: bool,
    pub planes: usize,
    pub coeffs: Vec<Vec<i64>>,
    /// Strictly lower and upper entries of a unipotent `L U` basis change.
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
}

impl ModRecipe {
    pub fn drivers(&self) -> usize {
        self.coeffs.len()
    }

    pub fn dim(&self) -> usize {
        3 * usize::from(self.heis) + 2 * self.planes + self.drivers()
    }
}

pub fn mod_recipe() -> impl Strategy<Value = ModRecipe> {
    (any::<bool>(), 0usize..=2, 1usize..=2)
        .prop_filter("at least one rotation block", |(h, p, _)| *h || *p > 0)
        .prop_map(|(h, p, d)| if h && p == 2 && d == 2 { (h, 1, d) } else { (h, p, d) })
        .prop_flat_map(|(heis, planes, drivers)| {
            let blocks = usize::from(heis) + planes;
            let n = 3 * usize::from(heis) + 2 * planes + drivers;
            let tri = n * (n - 1) / 2;
            (
                Just(heis),
                Just(planes),
                prop::collection::vec(prop::collection::vec(-2i64..=2, blocks), drivers),
                prop::collection::vec(-1i64..=1, tri),
                prop::collection::vec(-1i64..=1, tri),
            )
        })
        .prop_map(|(heis, planes, coeffs, lower, upper)| ModRecipe {
            heis,
            planes,
            coeffs,
            lower,
            upper,
        })
}

/// Unipotent `L U` with the given off-diagonal entries; determinant 1.
pub fn unipotent_change(n: usize, lower: &[i64], upper: &[i64]) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    let mut k = 0;
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = rat(lower[k]);
            u[(j, i)] = rat(upper[k]);
            k += 1;
        }
    }
    &l * &u
}

/// The map in the standard basis, before the basis change.
pub fn build_standard(r: &ModRecipe) -> ModMap {
    let mut base = if r.heis { catalog::heisenberg(1) } else { LieAlgebra::abelian(0) };
    base = base.direct_sum(&LieAlgebra::abelian(2 * r.planes + r.drivers()));
    let n = base.dim();
    let mut blocks = Vec::new();
    if r.heis {
        blocks.push(catalog::rotation(n, 0, 1));
    }
    let off = 3 * usize::from(r.heis);
    for p in 0..r.planes {
        blocks.push(catalog::rotation(n, off + 2 * p, off + 2 * p + 1));
    }
    let first_driver = off + 2 * r.planes;
    let mut images = vec![Matrix::zeros(n, n); n];
    for (d, cs) in r.coeffs.iter().enumerate() {
        images[first_driver + d] = cs
            .iter()
            .zip(&blocks)
            .fold(Matrix::zeros(n, n), |acc, (c, b)| &acc + &b.scale(&rat(*c)));
    }
    ModMap::new(base, images).expect("rotations are derivations")
}

/// `σ'(e_i) = P⁻¹ σ(P e_i) P` on the base re-expressed in the columns of `P`.
pub fn conjugate(s: &ModMap, p: &Matrix) -> ModMap {
    let inv = p.inverse().expect("invertible change of basis");
    let base = s.base().change_basis(p).expect("change of basis");
    let images = (0..s.dim())
        .map(|i| &(&inv * &s.apply(&p.col(i))) * p)
        .collect();
    ModMap::new(base, images).expect("conjugated derivations")
}

pub fn build_mod(r: &ModRecipe) -> ModMap {
    let s = build_standard(r);
    let p = unipotent_change(r.dim(), &r.lower, &r.upper);
    conjugate(&s, &p)
}

/// Antisymmetry and the Jacobi identity straight from a structure tensor
/// `t[i][j][k]`, the `k`-th coordinate of `[e_i, e_j]`.
pub fn jacobi_tensor(t: &[Vec<Vec<Rational>>]) -> bool {
    let n = t.len();
    let c = |i: usize, j: usize, k: usize| &t[i][j][k];
    let antisymmetric = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| *c(i, j, k) == -c(j, i, k))));
    if !antisymmetric {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for m in 0..n {
                    let mut s = Rational::from_integer(0.into());
                    for l in 0..n {
                        s += c(i, j, l) * c(l, k, m) + c(j, k, l) * c(l, i, m) + c(k, i, l) * c(l, j, m);
                    }
                    if s != rat(0) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn tensor(g: &LieAlgebra) -> Vec<Vec<Vec<Rational>>> {
    let n = g.dim();
    (0..n).map(|i| (0..n).map(|j| g.structure(i, j).clone()).collect()).collect()
}

pub fn jacobi_holds(g: &LieAlgebra) -> bool {
    jacobi_tensor(&tensor(g))
}

/// Graded nilpotent algebra `heisenberg(k) ⊕ abelian(m)` with the
/// contractive automorphism `2^{-e}` on each basis vector, where
/// `e(X_i) + e(Y_i) = e(Z)`. Signs flip some eigenvalues negative.
#[derive(Debug, Clone)]
pub struct GradedRecipe {
    pub k: usize,
    pub z_exp: i64,
    pub x_exps: Vec<i64>,
    pub abelian_exps: Vec<i64>,
    pub signs: Vec<bool>,
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
}

pub fn graded_recipe() -> impl Strategy<Value = GradedRecipe> {
    (0usize..=2, 2i64..=5, 0usize..=2)
        .prop_filter("nonzero algebra", |(k, _, m)| k + m > 0)
        .prop_flat_map(|(k, z_exp, m)| {
            let n = if k > 0 { 2 * k + 1 } else { 0 } + m;
            let tri = n * (n - 1) / 2;
            (
                Just(k),
                Just(z_exp),
                prop::collection::vec(1..z_exp, k),
                prop::collection::vec(1i64..=4, m),
                prop::collection::vec(any::<bool>(), n),
                prop::collection::vec(-1i64..=1, tri),
                prop::collection::vec(-1i64..=1, tri),
            )
        })
        .prop_map(|(k, z_exp, x_exps, abelian_exps, signs, lower, upper)| GradedRecipe {
            k,
            z_exp,
            x_exps,
            abelian_exps,
            signs,
            lower,
            upper,
        })
}

impl GradedRecipe {
    /// Exponents in basis order.
    pub fn exponents(&self) -> Vec<i64> {
        let mut e = Vec::new();
        if self.k > 0 {
            e.extend(&self.x_exps);
            e.extend(self.x_exps.iter().map(|x| self.z_exp - x));
            e.push(self.z_exp);
        }
        e.extend(&self.abelian_exps);
        e
    }

    /// The algebra and automorphism after the basis change.
    pub fn build(&self) -> (LieAlgebra, Matrix) {
        let base = if self.k > 0 { catalog::heisenberg(self.k) } else { LieAlgebra::abelian(0) };
        let g = base.direct_sum(&LieAlgebra::abelian(self.abelian_exps.len()));
        let n = g.dim();
        // [A X_i, A Y_i] = A Z forces one common sign product s(X_i) s(Y_i) = s(Z)
        let mut signs = self.signs.clone();
        if self.k > 0 {
            let k = self.k;
            let positive = signs[0] == signs[k];
            for i in 1..k {
                signs[k + i] = if positive { signs[i] } else { !signs[i] };
            }
            signs[2 * k] = positive;
        }
        let diag: Vec<Rational> = self
            .exponents()
            .iter()
            .zip(&signs)
            .map(|(e, s)| {
                let v = Rational::new(1.into(), num_bigint::BigInt::from(2).pow(*e as u32));
                if *s { v } else { -v }
            })
            .collect();
        let p = unipotent_change(n, &self.lower, &self.upper);
        let inv = p.inverse().unwrap();
        let a = &(&inv * &Matrix::diag(&diag)) * &p;
        (g.change_basis(&p).unwrap(), a)
    }
}

/// Block of a matrix with known Jordan structure.
#[derive(Debug, Clone)]
pub enum Block {
    /// Eigenvalue and size of a Jordan block.
    Real(i64, usize),
    /// `[[a, -b], [b, a]]`, repeated `twice` with an identity coupling.
    Rotation { a: i64, b: i64, twice: bool },
}

impl Block {
    fn size(&self) -> usize {
        match self {
            Block::Real(_, k) => *k,
            Block::Rotation { twice, .. } => 2 + 2 * usize::from(*twice),
        }
    }
}

#[derive(Debug, Clone)]
pub struct JordanRecipe {
    pub blocks: Vec<Block>,
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
}

fn block() -> impl Strategy<Value = Block> {
    prop_oneof![
        (-2i64..=2, 1usize..=3).prop_map(|(e, k)| Block::Real(e, k)),
        (-2i64..=2, 1i64..=2, any::<bool>()).prop_map(|(a, b, twice)| Block::Rotation { a, b, twice }),
    ]
}

pub fn jordan_recipe() -> impl Strategy<Value = JordanRecipe> {
    prop::collection::vec(block(), 1..=3)
        .prop_map(|mut bs| {
            while bs.iter().map(Block::size).sum::<usize>() > 6 {
                bs.pop();
            }
            if bs.is_empty() {
                bs.push(Block::Real(1, 2));
            }
            bs
        })
        .prop_flat_map(|bs| {
            let n: usize = bs.iter().map(Block::size).sum();
            let tri = n * (n - 1) / 2;
            (
                Just(bs),
                prop::collection::vec(-1i64..=1, tri),
                prop::collection::vec(-1i64..=1, tri),
            )
        })
        .prop_map(|(blocks, lower, upper)| JordanRecipe { blocks, lower, upper })
}

impl JordanRecipe {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Block::size).sum()
    }

    /// `(J, J_s)`: the block matrix and its semisimple part.
    pub fn blocks_matrix(&self) -> (Matrix, Matrix) {
        let n = self.dim();
        let mut j = Matrix::zeros(n, n);
        let mut s = Matrix::zeros(n, n);
        let mut o = 0;
        for b in &self.blocks {
            match b {
                Block::Real(e, k) => {
                    for i in 0..*k {
                        j[(o + i, o + i)] = rat(*e);
                        s[(o + i, o + i)] = rat(*e);
                        if i + 1 < *k {
                            j[(o + i, o + i + 1)] = rat(1);
                        }
                    }
                }
                Block::Rotation { a, b, twice } => {
                    let reps = 1 + usize::from(*twice);
                    for r in 0..reps {
                        let q = o + 2 * r;
                        for m in [&mut j, &mut s] {
                            m[(q, q)] = rat(*a);
                            m[(q + 1, q + 1)] = rat(*a);
                            m[(q + 1, q)] = rat(*b);
                            m[(q, q + 1)] = rat(-*b);
                        }
                    }
                    if *twice {
                        j[(o, o + 2)] = rat(1);
                        j[(o + 1, o + 3)] = rat(1);
                    }
                }
            }
            o += b.size();
        }
        (j, s)
    }

    /// `(M, S)` with `M = P J P⁻¹` and its expected semisimple part.
    pub fn matrices(&self) -> (Matrix, Matrix) {
        let p = unipotent_change(self.dim(), &self.lower, &self.upper);
        let inv = p.inverse().unwrap();
        let (j, s) = self.blocks_matrix();
        (&(&p * &j) * &inv, &(&p * &s) * &inv)
    }
}
