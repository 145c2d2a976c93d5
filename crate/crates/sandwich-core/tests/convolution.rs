//! Behavior of the envelope T(x) = inf_y S(x+y) - P(y) and of the three
//! feasibility conditions, cross-checked between the exact, numeric, and
//! grid paths.

use sandwich_core::{
    brute_force_t, check_condition_41, check_condition_42, check_condition_43, compute_t,
    compute_t_exact, compute_t_numeric, generate_instance, Attainment, CheckOptions,
    FunctionalSpec, GridSpec, Subspace, TLevel, Vector, VectorSampler,
};

fn disc_pair() -> (FunctionalSpec, FunctionalSpec, sandwich_core::PartialLinearFunctional) {
    let resolved = sandwich_core::scenarios::example_4_1().resolve().unwrap();
    (resolved.s, resolved.p, resolved.f0)
}

#[test]
fn envelope_is_sandwiched_between_the_bounds() {
    // With a nonempty hull intersection, P <= T <= S pointwise: y = 0 gives
    // T <= S, and superadditivity of P gives P <= T.
    let mut sampler = VectorSampler::new(41);
    let opts = CheckOptions::default();
    for seed in 0..12 {
        let dim = 2 + (seed as usize % 3);
        let inst = generate_instance(dim, seed, true).unwrap();
        for _ in 0..40 {
            let x = sampler.ambient(dim);
            let t = compute_t(&inst.s, &inst.p, &x, None, &opts).unwrap();
            let tv = t.level.finite().expect("feasible pair, finite T");
            let sv = inst.s.evaluate(&x).unwrap();
            let pv = inst.p.evaluate(&x).unwrap();
            let scale = 1.0 + sv.abs().max(pv.abs());
            assert!(tv <= sv + 1e-6 * scale, "T {tv} above S {sv} at seed {seed}");
            assert!(tv >= pv - 1e-6 * scale, "T {tv} below P {pv} at seed {seed}");
        }
    }
}

#[test]
fn envelope_is_subadditive_and_homogeneous() {
    let mut sampler = VectorSampler::new(43);
    let opts = CheckOptions::default();
    for seed in 0..8 {
        let dim = 2 + (seed as usize % 2);
        let inst = generate_instance(dim, 100 + seed, true).unwrap();
        let t_of = |x: &Vector| {
            compute_t(&inst.s, &inst.p, x, None, &opts)
                .unwrap()
                .level
                .finite()
                .unwrap()
        };
        for _ in 0..25 {
            let x = sampler.ambient(dim);
            let y = sampler.ambient(dim);
            let tx = t_of(&x);
            let ty = t_of(&y);
            let txy = t_of(&(&x + &y));
            let scale = 1.0 + tx.abs() + ty.abs();
            assert!(txy <= tx + ty + 1e-6 * scale, "subadditivity: {txy} > {tx} + {ty}");

            let alpha = sampler.alpha();
            let tax = t_of(&x.scale(alpha));
            assert!(
                (tax - alpha * tx).abs() <= 1e-6 * (1.0 + tax.abs()),
                "homogeneity: T({alpha} x) = {tax} vs {alpha} T(x) = {}",
                alpha * tx
            );
        }
    }
}

#[test]
fn tight_floor_makes_the_envelope_collapse_onto_the_ceiling() {
    // With P(x) = -S(-x) the only sandwiched functionals are the supports of
    // the hull itself, so T = S. Polyhedral case is exact; the euclidean
    // case goes through descent.
    let mut sampler = VectorSampler::new(47);
    let opts = CheckOptions::default();

    let gens = vec![
        Vector::new(vec![1.0, 0.2]),
        Vector::new(vec![-0.6, 1.0]),
        Vector::new(vec![-0.1, -1.3]),
    ];
    let s = FunctionalSpec::max_linear(gens).unwrap();
    let p = s.dual_negate();
    for _ in 0..50 {
        let x = sampler.ambient(2);
        let t = compute_t_exact(&s, &p, &x, None).unwrap();
        let tv = t.level.finite().unwrap();
        let sv = s.evaluate(&x).unwrap();
        assert!((tv - sv).abs() <= 1e-9 * (1.0 + sv.abs()), "exact T {tv} vs S {sv}");
    }

    let s = FunctionalSpec::euclidean_norm(2);
    let p = s.dual_negate();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x = sampler.ambient(2);
        let t = compute_t_numeric(&s, &p, &x, None, &opts).unwrap();
        let tv = t.level.finite().unwrap();
        worst = worst.max((tv - s.evaluate(&x).unwrap()).abs());
    }
    assert!(worst < 1e-4, "numeric |T - S| reached {worst}");
}

#[test]
fn envelope_respects_the_reflection_floor() {
    // T(0) = 0 and sublinearity give T(x) >= -T(-x) >= -S(-x).
    let mut sampler = VectorSampler::new(53);
    let opts = CheckOptions::default();
    for seed in 0..8 {
        let inst = generate_instance(3, 200 + seed, true).unwrap();
        for _ in 0..30 {
            let x = sampler.ambient(3);
            let t = compute_t(&inst.s, &inst.p, &x, None, &opts).unwrap();
            let tv = t.level.finite().unwrap();
            let floor = -inst.s.evaluate(&(-&x)).unwrap();
            assert!(tv >= floor - 1e-6 * (1.0 + floor.abs()));
        }
    }
}

#[test]
fn exact_and_numeric_paths_agree() {
    let mut sampler = VectorSampler::new(59);
    let opts = CheckOptions::default();
    for seed in 0..10 {
        let dim = 2 + (seed as usize % 3);
        let inst = generate_instance(dim, 300 + seed, true).unwrap();
        for _ in 0..10 {
            let x = sampler.ambient(dim);
            let exact = compute_t_exact(&inst.s, &inst.p, &x, None).unwrap();
            let numeric = compute_t_numeric(&inst.s, &inst.p, &x, None, &opts).unwrap();
            let ev = exact.level.finite().unwrap();
            let nv = numeric.level.finite().unwrap();
            assert!(
                (ev - nv).abs() <= 1e-5 * (1.0 + ev.abs()),
                "paths disagree at seed {seed}: exact {ev}, numeric {nv}"
            );
        }
    }
}

#[test]
fn grid_oracle_corroborates_the_exact_path() {
    let mut sampler = VectorSampler::with_radius(61, 2.0);
    let spec = GridSpec {
        radii: vec![1.0, 10.0, 100.0],
        ..GridSpec::coarse()
    };
    for seed in 0..6 {
        let dim = 2 + (seed as usize % 2);
        let inst = generate_instance(dim, 400 + seed, true).unwrap();
        for _ in 0..3 {
            let x = sampler.ambient(dim);
            let exact = compute_t_exact(&inst.s, &inst.p, &x, None).unwrap();
            let grid = brute_force_t(&inst.s, &inst.p, &x, None, &spec).unwrap();
            let ev = exact.level.finite().unwrap();
            let gv = grid.level.finite().unwrap();
            assert!(
                (ev - gv).abs() <= 1e-3 * (1.0 + ev.abs()),
                "oracle disagrees at seed {seed}: exact {ev}, grid {gv}"
            );
        }
    }
}

#[test]
fn separated_hulls_collapse_the_envelope() {
    for seed in 0..10 {
        let inst = generate_instance(2, 500 + seed, false).unwrap();
        if !inst.note.contains("separated") {
            continue;
        }
        let t = compute_t_exact(&inst.s, &inst.p, &Vector::zeros(2), None).unwrap();
        assert!(matches!(t.level, TLevel::MinusInfinity), "seed {seed}");
    }
}

#[test]
fn restricting_the_convolution_can_only_raise_it() {
    // Shrinking the y-domain of the infimum raises the value.
    let opts = CheckOptions::default();
    let mut sampler = VectorSampler::new(67);
    for seed in 0..6 {
        let inst = generate_instance(3, 600 + seed, true).unwrap();
        let e = Subspace::new(3, vec![Vector::basis(3, 0), Vector::basis(3, 1)]).unwrap();
        for _ in 0..10 {
            let x = sampler.ambient(3);
            let full = compute_t(&inst.s, &inst.p, &x, None, &opts).unwrap();
            let restricted = compute_t(&inst.s, &inst.p, &x, Some(&e), &opts).unwrap();
            let fv = full.level.finite().unwrap();
            match restricted.level {
                TLevel::Finite(rv) => {
                    assert!(rv >= fv - 1e-6 * (1.0 + fv.abs()), "restriction lowered T");
                }
                TLevel::MinusInfinity => panic!("restricted T diverged on a feasible pair"),
            }
        }
    }
}

#[test]
fn necessary_conditions_follow_from_the_main_one() {
    // Whenever 4.1 holds, 4.2 and 4.3 must hold too.
    let opts = CheckOptions::default();
    for seed in 0..20 {
        let dim = 2 + (seed as usize % 3);
        let feasible = seed % 2 == 0;
        let inst = generate_instance(dim, 700 + seed, feasible).unwrap();
        let r41 = check_condition_41(&inst.s, &inst.p, &inst.f0, None, &opts).unwrap();
        if r41.holds {
            let r42 = check_condition_42(&inst.s, &inst.p, &opts).unwrap();
            let r43 = check_condition_43(&inst.s, &inst.p, &inst.f0, &opts).unwrap();
            assert!(r42.holds, "4.1 held but 4.2 failed at seed {seed}");
            assert!(r43.holds, "4.1 held but 4.3 failed at seed {seed}");
        }
        assert_eq!(
            r41.holds, inst.feasible,
            "4.1 disagrees with the construction at seed {seed} ({})",
            inst.note
        );
    }
}

#[test]
fn the_disc_pair_defeats_the_converse() {
    // The classic counterexample: both necessary conditions hold, the main
    // one fails, and the envelope at (1, 0) vanishes without attainment.
    let (s, p, f0) = disc_pair();
    let opts = CheckOptions::default();

    let r42 = check_condition_42(&s, &p, &opts).unwrap();
    let r43 = check_condition_43(&s, &p, &f0, &opts).unwrap();
    let r41 = check_condition_41(&s, &p, &f0, None, &opts).unwrap();
    assert!(r42.holds, "4.2 should hold: {}", r42.detail);
    assert!(r43.holds, "4.3 should hold: {}", r43.detail);
    assert!(!r41.holds, "4.1 should fail: {}", r41.detail);
    assert!(r41.witness.is_some());

    let t = compute_t_numeric(&s, &p, &Vector::new(vec![1.0, 0.0]), None, &opts).unwrap();
    assert!(t.level.finite().unwrap().abs() < 1e-6);
    assert!(matches!(t.attainment, Attainment::LimitOnly));

    let t = compute_t_numeric(&s, &p, &Vector::new(vec![0.0, -1.0]), None, &opts).unwrap();
    assert!((t.level.finite().unwrap() + 1.0).abs() < 1e-5);
}
