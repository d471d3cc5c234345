//! End-to-end acceptance gate. Prints one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p lieshadow --test acceptance -- --nocapture`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use common::{build_mod, jacobi_holds, jordan_recipe, mod_recipe};
use lieshadow::catalog::{self, NAMES};
use lieshadow::grading::{
    check_grading, self_similar_admissible, siebert_grading, standard_dilation, verify_dilation_property,
    Dilation, DilationFamily2D, DilationKind, LayerSpace,
};
use lieshadow::growth::{
    busemann_distance, busemann_gauge, cycle_rotations, doubling_ratio, growth_bound_check, standard_gauge,
    standard_node, FiniteMetric,
};
use lieshadow::lie::killing::killing_annihilator;
use lieshadow::lie::{fingerprint, is_nilpotent, is_type_r, killing_form, nilradical, Confidence, LieAlgebra};
use lieshadow::linalg::rational::{int_rat, rat, ratio, to_f64, Rational};
use lieshadow::linalg::{jordan_chevalley, Matrix, SpectrumConfig, Subspace};
use lieshadow::modification::{
    check_all, graph_algebra, kernel_is_nilradical, same_structure, shadow_roundtrip,
    sigma_identities,
};
use lieshadow::nilshadow::{canonical_modification, nilshadow};

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn within(t: Duration, limit: Duration) -> Result<(), String> {
    ensure(t <= limit, &format!("took {t:?}, limit {limit:?}"))
}

fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn e2_shadow_abelian() -> Outcome {
    let start = Instant::now();
    let sd = nilshadow(&catalog::e2(), 0).map_err(|e| e.to_string())?;
    let n = sd.shadow.dim();
    let zero = (0..n).all(|i| (0..n).all(|j| sd.shadow.structure(i, j).iter().all(|c| *c == rat(0))));
    within(start.elapsed(), Duration::from_secs(1))?;
    ensure(n == 3 && zero, "shadow has a nonzero structure constant")?;
    Ok("all 27 structure constants are 0".into())
}

fn rotation_roundtrip() -> Outcome {
    let start = Instant::now();
    let entry = catalog::build("abelian3").map_err(|e| e.to_string())?;
    let (_, images) = entry.modmaps.iter().find(|(n, _)| n == "rot").ok_or("no rot map")?;
    let s = lieshadow::modification::ModMap::new(entry.algebra, images.clone()).map_err(|e| e.to_string())?;
    let g = graph_algebra(&s).map_err(|e| e.to_string())?;
    ensure(same_structure(&g, &catalog::e2()), "graph algebra differs from e2")?;
    ensure(kernel_is_nilradical(&s).map_err(|e| e.to_string())?, "kernel is not the nilradical")?;
    ensure(shadow_roundtrip(&s, 0).map_err(|e| e.to_string())?, "shadow roundtrip fails")?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("Gr(rot) = e2, ker = nil, shadow returns abelian3".into())
}

fn heis_rot_regenerates() -> Outcome {
    let g = catalog::heis_rot();
    let sd = nilshadow(&g, 0).map_err(|e| e.to_string())?;
    let target = catalog::heisenberg(1).direct_sum(&LieAlgebra::abelian(1));
    ensure(fingerprint(&sd.shadow) == fingerprint(&target), "shadow fingerprint differs")?;
    let sigma = canonical_modification(&sd).map_err(|e| e.to_string())?;
    let back = graph_algebra(&sigma).map_err(|e| e.to_string())?;
    ensure(same_structure(&back, &g), "graph of the canonical map differs from heis_rot")?;
    ensure(back.labels() == g.labels(), "labels differ")?;
    Ok("shadow ≅ heis3 ⊕ R, Gr(σ) reproduces every constant".into())
}

fn heisenberg_grading() -> Outcome {
    let g = catalog::heisenberg(1);
    let a = Matrix::diag(&[ratio(1, 2), ratio(1, 2), ratio(1, 4)]);
    let gr = siebert_grading(&g, &a, &SpectrumConfig::default())
        .map_err(|e| e.to_string())?
        .normalized();
    ensure(gr.dims() == vec![2, 1], "layer dims")?;
    let w: Vec<Option<Rational>> = (0..gr.layers.len()).map(|i| gr.exact_weight(i)).collect();
    ensure(w == vec![Some(rat(1)), Some(rat(2))], "weights")?;
    let xy = Subspace::from_vectors(3, vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]]);
    let z = Subspace::from_vectors(3, vec![vec![rat(0), rat(0), rat(1)]]);
    ensure(gr.layers[0].space == LayerSpace::Exact(xy), "first layer is not span(X, Y)")?;
    ensure(gr.layers[1].space == LayerSpace::Exact(z), "second layer is not span(Z)")?;
    let chk = check_grading(&gr);
    ensure(chk.ok && chk.exact, "check_grading")?;
    match standard_dilation(&gr, &ratio(1, 2)).map_err(|e| e.to_string())? {
        Dilation::Exact(m) => ensure(m == a, "dilation at 1/2 differs from A")?,
        Dilation::Numeric { .. } => return Err("dilation is not exact".into()),
    }
    ensure(self_similar_admissible(&gr), "not admissible")?;
    Ok("dims (2,1), weights (1,2), δ_{1/2} = A".into())
}

fn doubling_counterexample() -> Outcome {
    let start = Instant::now();
    let c = standard_gauge(7);
    for n in 1..=6u32 {
        let y = standard_node(n);
        let expected = int_rat(BigInt::from(2).pow(1u32 << n) + 2);
        let r = doubling_ratio(&c, &y).map_err(|e| e.to_string())?;
        ensure(r == expected, &format!("ratio at y_{n} is {r}, expected {expected}"))?;
    }
    let samples = standard_gauge(6).sample_ordinates();
    ensure(growth_bound_check(&c, &samples).map_err(|e| e.to_string())?, "growth bound fails")?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("ratios y_n + 2 for n = 1..6, bound on {} ordinates", samples.len()))
}

fn type_r_suite() -> Outcome {
    let sl2 = is_type_r(&catalog::sl2(), 0, 64);
    ensure(!sl2.holds && sl2.confidence == Confidence::Exact, "sl2")?;
    for (name, g) in [
        ("heisenberg3", catalog::heisenberg(1)),
        ("heisenberg5", catalog::heisenberg(2)),
        ("e2", catalog::e2()),
        ("heis_rot", catalog::heis_rot()),
    ] {
        let v = is_type_r(&g, 0, 64);
        ensure(v.holds && v.confidence == Confidence::Exact, name)?;
    }
    Ok("sl2 false; heisenberg, e2, heis_rot true (exact)".into())
}

/// `trace(ad x ad y)` with `ad` built from the structure tensor here.
fn trace_oracle(g: &LieAlgebra, i: usize, j: usize) -> Rational {
    let n = g.dim();
    let ad = |a: usize, r: usize, c: usize| g.structure(a, c)[r].clone();
    let mut t = rat(0);
    for r in 0..n {
        for k in 0..n {
            t += ad(i, r, k) * ad(j, k, r);
        }
    }
    t
}

fn killing_suite() -> Outcome {
    let sl2 = catalog::sl2();
    let b = killing_form(&sl2);
    for i in 0..3 {
        for j in 0..3 {
            ensure(b[(i, j)] == trace_oracle(&sl2, i, j), "sl2 Killing form differs from trace oracle")?;
        }
    }
    ensure(b[(0, 0)] == rat(8) && b[(1, 2)] == rat(4) && b[(2, 1)] == rat(4), "B(H,H) or B(E,F)")?;
    let others = [(0, 1), (0, 2), (1, 1), (2, 2)].iter().all(|&(i, j)| b[(i, j)] == rat(0));
    ensure(others, "sl2 off-pattern entries")?;
    for name in NAMES {
        let g = catalog::build(name).map_err(|e| e.to_string())?.algebra;
        if is_nilpotent(&g) {
            ensure(killing_form(&g).is_zero(), &format!("{name}: B is not zero"))?;
        }
    }
    let e2 = catalog::e2();
    let k = Subspace::from_vectors(3, vec![vec![rat(0), rat(0), rat(1)]]);
    let h = killing_annihilator(&e2, &k);
    ensure(h == nilradical(&e2), "annihilator of k is not the nilradical")?;
    ensure(h.dim() + k.dim() == 3 && h.sum(&k).is_full(), "g is not h ⊕ k")?;
    ensure(trace_oracle(&e2, 2, 2) == rat(-2), "B(T,T) for e2")?;
    Ok("B(H,H)=8, B(E,F)=4, nilpotent B ≡ 0, e2: k^B = nil".into())
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let algebras = std::cell::Cell::new(0usize);
    runner(200, 1)
        .run(&mod_recipe(), |r| {
            let s = build_mod(&r);
            let g = graph_algebra(&s).expect("graph algebra");
            for a in [s.base(), &g] {
                assert!(jacobi_holds(a));
            }
            algebras.set(algebras.get() + 2);
            assert!(check_all(&s).all_ok());
            assert!(sigma_identities(&s).ok, "{r:?}");
            Ok(())
        })
        .map_err(|e| format!("jacobi / sigma identities: {e}"))?;
    runner(200, 2)
        .run(&jordan_recipe(), |r| {
            let (m, s) = r.matrices();
            let jc = jordan_chevalley(&m).unwrap();
            assert_eq!(&jc.semisimple + &jc.nilpotent, m);
            assert_eq!(&jc.semisimple * &jc.nilpotent, &jc.nilpotent * &jc.semisimple);
            assert!(jc.nilpotent.pow(r.dim()).is_zero());
            assert_eq!(jc.semisimple, s);
            Ok(())
        })
        .map_err(|e| format!("jordan-chevalley: {e}"))?;
    runner(20, 3)
        .run(&mod_recipe(), |r| {
            let s = build_mod(&r);
            let g = graph_algebra(&s).unwrap();
            let a = nilshadow(&g, 11).unwrap();
            let b = nilshadow(&g, 12).unwrap();
            assert!(jacobi_holds(&a.shadow) && jacobi_holds(&b.shadow));
            assert_eq!(fingerprint(&a.shadow), fingerprint(&b.shadow));
            assert_eq!(fingerprint(&a.shadow), fingerprint(s.base()));
            Ok(())
        })
        .map_err(|e| format!("nilshadow seed independence: {e}"))?;
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("200 + 200 + 20 cases, {} algebras checked, {:.1?}", algebras.get(), start.elapsed()))
}

fn busemann_cycle() -> Outcome {
    let start = Instant::now();
    let fm = FiniteMetric::cycle(4);
    let group = cycle_rotations(4);
    let gauge = busemann_gauge(&fm, 0, &rat(1)).map_err(|e| e.to_string())?;
    ensure(gauge == vec![rat(0), rat(1), rat(2), rat(1)], "gauge")?;
    let eps = rat(1);
    let bd = busemann_distance(&group, &fm, &gauge, &eps).map_err(|e| e.to_string())?;
    ensure(bd.left_invariance_failure().is_none(), "not left invariant")?;
    ensure(bd.metric_axioms_hold(), "metric axioms")?;
    ensure(bd.quasi_isometry_failures(&fm, 0).is_empty(), "quasi-isometry bounds")?;
    // direct supremum, and the bounds d(go,ho) <= d_G <= d(go,ho) + 2/e
    let slack = 2.0 / std::f64::consts::E;
    for (gi, g) in group.iter().enumerate() {
        for (hi, h) in group.iter().enumerate() {
            let direct = (0..4)
                .map(|p| {
                    to_f64(fm.dist(g.apply(p), h.apply(p))) * (-to_f64(&gauge[p])).exp()
                })
                .fold(0.0, f64::max);
            ensure((direct - bd.values[gi][hi]).abs() < 1e-15, "distance differs from direct supremum")?;
            let base = to_f64(fm.dist(g.apply(0), h.apply(0)));
            ensure(base <= direct && direct <= base + slack, "bounds")?;
        }
    }
    let orbit: BTreeSet<usize> = group.iter().map(|g| g.apply(0)).collect();
    ensure(orbit.len() == 4, "orbit is not 0-dense")?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("left invariant metric, (1, 2/e) bounds at all 16 pairs".into())
}

fn dilation_families() -> Outcome {
    let kinds = vec![
        DilationKind::Diagonal { alpha: rat(1), beta: rat(1) },
        DilationKind::Diagonal { alpha: rat(2), beta: rat(3) },
        DilationKind::RotationScaling { alpha: rat(1) },
        DilationKind::RotationScaling { alpha: rat(2) },
        DilationKind::Shear { alpha: rat(2) },
    ];
    let mut worst: f64 = 0.0;
    for (i, kind) in kinds.into_iter().enumerate() {
        for lambda in [rat(2), ratio(1, 2)] {
            let fam = DilationFamily2D::new(kind.clone(), lambda.clone()).map_err(|e| e.to_string())?;
            let err = verify_dilation_property(&fam, 10_000, 100 + i as u64);
            ensure(err <= 1e-9, &format!("{kind:?} at {lambda}: relative error {err:e}"))?;
            worst = worst.max(err);
        }
    }
    Ok(format!("10 families, worst relative error {worst:.2e}"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("e2 nilshadow is abelian", e2_shadow_abelian),
        ("rotation modification roundtrip", rotation_roundtrip),
        ("heis_rot shadow and regeneration", heis_rot_regenerates),
        ("heisenberg grading and dilation", heisenberg_grading),
        ("doubling counterexample", doubling_counterexample),
        ("type (R) suite", type_r_suite),
        ("killing suite", killing_suite),
        ("property suites", property_suites),
        ("busemann distance on the 4-cycle", busemann_cycle),
        ("planar dilation families", dilation_families),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.2?}]", k + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} [{t:.2?}]", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
