mod common;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use common::{jordan_recipe, unipotent_change};
use lieshadow::linalg::factor::factor;
use lieshadow::linalg::rational::{ratio, rat};
use lieshadow::linalg::{char_poly, has_purely_imaginary_spectrum, jordan_chevalley, primary_component, Matrix};

fn config(cases: u32, seed: u64) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn rational_matrix(max_dim: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_dim).prop_flat_map(|n| {
        prop::collection::vec((-4i64..=4, 1i64..=3), n * n).prop_map(move |e| {
            let rows = e.chunks(n).map(|r| r.iter().map(|&(p, q)| ratio(p, q)).collect()).collect();
            Matrix::from_rows(rows)
        })
    })
}

/// `P B P⁻¹` with `B` block diagonal: rotation blocks `[[a, -b], [b, a]]`
/// and zeros. Imaginary exactly when every `a` is zero.
fn rotation_matrix() -> impl Strategy<Value = (Matrix, bool)> {
    (prop::collection::vec((-1i64..=1, 1i64..=3), 1..=3), 0usize..=1)
        .prop_filter("dim <= 6", |(b, z)| 2 * b.len() + z <= 6)
        .prop_flat_map(|(blocks, zeros)| {
            let n = 2 * blocks.len() + zeros;
            let tri = n * (n - 1) / 2;
            (
                Just(blocks),
                Just(n),
                prop::collection::vec(-1i64..=1, tri),
                prop::collection::vec(-1i64..=1, tri),
            )
        })
        .prop_map(|(blocks, n, lower, upper)| {
            let mut b = Matrix::zeros(n, n);
            for (i, (a, w)) in blocks.iter().enumerate() {
                let q = 2 * i;
                b[(q, q)] = rat(*a);
                b[(q + 1, q + 1)] = rat(*a);
                b[(q + 1, q)] = rat(*w);
                b[(q, q + 1)] = rat(-*w);
            }
            let p = unipotent_change(n, &lower, &upper);
            let m = &(&p * &b) * &p.inverse().unwrap();
            (m, blocks.iter().all(|(a, _)| *a == 0))
        })
}

fn max_real_part(m: &Matrix) -> f64 {
    m.to_f64()
        .complex_eigenvalues()
        .iter()
        .map(|z| z.re.abs())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(config(100, 0x11))]

    #[test]
    fn jordan_chevalley_recomposes(m in rational_matrix(6)) {
        let jc = jordan_chevalley(&m).unwrap();
        prop_assert_eq!(&jc.semisimple + &jc.nilpotent, m.clone());
        prop_assert_eq!(&jc.semisimple * &jc.nilpotent, &jc.nilpotent * &jc.semisimple);
        prop_assert!(jc.nilpotent.pow(m.rows()).is_zero());
        let q = char_poly(&m).unwrap().squarefree_part();
        prop_assert!(q.eval_matrix(&jc.semisimple).is_zero());
    }

    #[test]
    fn jordan_chevalley_matches_known_structure(r in jordan_recipe()) {
        let (m, s) = r.matrices();
        let jc = jordan_chevalley(&m).unwrap();
        prop_assert_eq!(jc.semisimple, s);
    }

    #[test]
    fn cayley_hamilton(m in rational_matrix(8)) {
        prop_assert!(char_poly(&m).unwrap().eval_matrix(&m).is_zero());
    }

    #[test]
    fn primary_components_fill_the_space(m in rational_matrix(6)) {
        let chi = char_poly(&m).unwrap();
        let total: usize = factor(&chi)
            .iter()
            .map(|(f, k)| primary_component(&m, f, *k).unwrap().dim())
            .sum();
        prop_assert_eq!(total, m.rows());
    }

    #[test]
    fn kernel_is_annihilated(m in rational_matrix(6)) {
        let k = m.kernel();
        prop_assert_eq!(k.dim(), m.rows() - m.rank());
        for v in k.basis() {
            prop_assert!(m.apply(v).iter().all(|x| *x == rat(0)));
        }
    }
}

proptest! {
    #![proptest_config(config(100, 0x12))]

    #[test]
    fn imaginary_spectrum_agrees_with_eigenvalues((m, imaginary) in rotation_matrix()) {
        let exact = has_purely_imaginary_spectrum(&m).unwrap();
        prop_assert_eq!(exact, imaginary);
        let re = max_real_part(&m);
        prop_assert_eq!(exact, re <= 1e-9, "max |Re| = {}", re);
    }

    #[test]
    fn imaginary_spectrum_on_dense_matrices(m in rational_matrix(6)) {
        let exact = has_purely_imaginary_spectrum(&m).unwrap();
        let re = max_real_part(&m);
        if exact {
            prop_assert!(re <= 1e-9, "max |Re| = {}", re);
        } else {
            prop_assert!(re > 1e-9, "max |Re| = {}", re);
        }
    }
}
