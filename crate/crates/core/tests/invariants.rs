use bdldp::analysis::{
    baranyai_min_cost, comm_cost, k_opt_set, k_star, mechanism_cost, put_boundary, shared_entropy_bits,
};
use bdldp::designs::{
    affine_geometry_design, binomial, complete_design, gaussian_binomial, hadamard3_design, hadamard_matrix,
    round_robin_design, verify_block_design, IncidenceStructure,
};
use bdldp::mechanisms::{build_mechanism, decompose, verify_decomposition, verify_ldp, SharedRandomnessChannel};
use bdldp::resolutions::{
    baranyai_resolution, cyclic_shift_resolution, h3_resolution, parallel_class_resolution, trivial_resolution,
    verify_resolution, Resolution,
};
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Every design and resolution the crate builds with at most 12 points.
fn small_cases() -> Vec<(String, IncidenceStructure, Resolution)> {
    let mut out = Vec::new();
    for v in 2..=12 {
        for k in 1..v {
            let (d, r) = cyclic_shift_resolution(v, k).unwrap();
            out.push((format!("cyclic({v},{k})"), d.clone(), r));
            out.push((format!("trivial({v},{k})"), d.clone(), trivial_resolution(&d).unwrap()));
            let (d, r) = baranyai_resolution(v, k, 3).unwrap();
            out.push((format!("baranyai({v},{k})"), d, r));
        }
    }
    for (d, m, q) in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (3, 2, 2)] {
        let s = affine_geometry_design(d, m, q).unwrap();
        let r = parallel_class_resolution(&s).unwrap();
        out.push((format!("AG_{m}({d},{q})"), s, r));
    }
    for t in 1..=3 {
        let s = hadamard3_design(t).unwrap();
        let r = h3_resolution(&s).unwrap();
        out.push((format!("H3({t})"), s, r));
    }
    for v in (4..=12).step_by(2) {
        let s = round_robin_design(v, 1).unwrap();
        let r = parallel_class_resolution(&s).unwrap();
        out.push((format!("round robin {v}"), s, r));
    }
    out
}

#[test]
fn every_small_decomposition_round_trips() {
    for (name, design, res) in small_cases() {
        assert!(verify_resolution(&design, res.classes()).unwrap().is_ok(), "{name}");
        for eps in [0.3, 1.0, 2.5] {
            let mech = build_mechanism(design.clone(), eps).unwrap();
            let dec = decompose(&mech, &res).unwrap();
            let report = verify_decomposition(&mech, &dec, 1e-12).unwrap();
            assert!(report.passed, "{name} at ε = {eps}: deviation {}", report.max_deviation);

            let identity = mechanism_cost(&mech) - shared_entropy_bits(&dec);
            assert!((comm_cost(&dec) - identity).abs() < 1e-12, "{name}: entropy accounting");

            for u in 0..dec.realization_count() {
                let q = dec.subchannel(u);
                for x in 0..q.rows() {
                    let s: f64 = q.row(x).iter().sum();
                    assert!(
                        (s - 1.0).abs() < 1e-12,
                        "{name}: row {x} of realization {u} sums to {s}"
                    );
                }
            }
        }
    }
}

#[test]
fn ldp_ratio_is_attained_exactly() {
    for (name, design, res) in small_cases().into_iter().step_by(3) {
        let eps = 0.8f64;
        let mech = build_mechanism(design, eps).unwrap();
        let plain = verify_ldp(&mech, eps, 1e-9);
        assert!(
            plain.passed && (plain.max_ratio - eps.exp()).abs() < 1e-12,
            "{name}: {}",
            plain.max_ratio
        );
        let dec = decompose(&mech, &res).unwrap();
        let split = verify_ldp(&dec, eps, 1e-9);
        assert!(
            split.passed && (split.max_ratio - eps.exp()).abs() < 1e-12,
            "{name}: {}",
            split.max_ratio
        );
    }
}

#[test]
fn designs_satisfy_counting_identities() {
    for (name, design, _) in small_cases() {
        let p = verify_block_design(&design).unwrap();
        assert!(p.satisfies_counting_identities(), "{name}: {p}");
    }
    for v in 2..=12u64 {
        for k in 1..v {
            let p = verify_block_design(&complete_design(v as usize, k as usize).unwrap()).unwrap();
            assert_eq!(p.r as u64, binomial(v - 1, k - 1).to_u64().unwrap());
        }
    }
}

#[test]
fn affine_pairs_meet_gaussian_binomial_times() {
    for (d, m, q) in [
        (2, 1, 2),
        (2, 1, 3),
        (2, 1, 4),
        (2, 1, 5),
        (2, 1, 7),
        (2, 1, 8),
        (2, 1, 9),
        (3, 1, 3),
        (3, 2, 3),
        (4, 1, 3),
        (4, 2, 3),
        (4, 3, 3),
        (6, 3, 2),
    ] {
        let s = affine_geometry_design(d, m, q).unwrap();
        let p = verify_block_design(&s).unwrap();
        let want = gaussian_binomial(d as u64 - 1, m as u64 - 1, q as u64).unwrap();
        assert_eq!(p.lambda as u64, want.to_u64().unwrap(), "AG_{m}({d},{q})");
        assert_eq!(p.v, (q as usize).pow(d));
        assert_eq!(p.k, (q as usize).pow(m));
    }
}

#[test]
fn hadamard_matrices_are_orthogonal() {
    for order in [1, 2, 4, 8, 12, 16, 20, 24, 28, 32, 44, 48, 60, 64] {
        let h = hadamard_matrix(order).unwrap();
        let e = h.entries();
        for i in 0..order {
            for j in 0..order {
                let dot: i64 = (0..order).map(|c| e[i][c] as i64 * e[j][c] as i64).sum();
                assert_eq!(dot, if i == j { order as i64 } else { 0 }, "order {order}");
            }
        }
    }
}

#[test]
fn h3_blocks_pair_with_complements() {
    for t in 1..=6 {
        let s = hadamard3_design(t).unwrap();
        let half = 4 * t - 1;
        for j in 0..half {
            let mut union: Vec<usize> = s.block(j).iter().chain(s.block(j + half)).copied().collect();
            union.sort_unstable();
            assert_eq!(union, (0..4 * t).collect::<Vec<_>>(), "t = {t}, block {j}");
        }
    }
}

#[test]
fn cyclic_orbit_sizes() {
    for v in 2..=14usize {
        for k in 1..v {
            let (_, r) = cyclic_shift_resolution(v, k).unwrap();
            assert_eq!(r.block_count() as u64, binomial(v as u64, k as u64).to_u64().unwrap());
            for class in r.classes() {
                assert_eq!(v % class.len(), 0, "({v},{k})");
                assert_eq!((k * class.len()) % v, 0, "({v},{k})");
            }
        }
    }
}

#[test]
fn optimal_sets_tile_the_budget_axis() {
    for v in 2..=50 {
        for i in 1..=500 {
            let eps = 0.01 * i as f64;
            let set = k_opt_set(v, eps).unwrap();
            assert!((1..=2).contains(&set.len()), "v = {v}, ε = {eps}: {set:?}");
            if set.len() == 2 {
                assert_eq!(set[1], set[0] + 1);
            }
        }
    }
}

#[test]
fn constructed_optimal_decompositions_respect_minimum_cost() {
    for v in 2..=12 {
        for i in 1..=60 {
            let eps = 0.05 * i as f64;
            let floor = baranyai_min_cost(v, eps).unwrap();
            let k = k_star(v, eps).unwrap();

            let (d, r) = baranyai_resolution(v, k, 0).unwrap();
            let dec = decompose(&build_mechanism(d, eps).unwrap(), &r).unwrap();
            assert!(
                (comm_cost(&dec) - floor).abs() < 1e-12,
                "baranyai ({v},{k}) at ε = {eps}"
            );

            for &k in &k_opt_set(v, eps).unwrap() {
                let (d, r) = cyclic_shift_resolution(v, k).unwrap();
                let dec = decompose(&build_mechanism(d, eps).unwrap(), &r).unwrap();
                assert!(comm_cost(&dec) >= floor - 1e-9, "cyclic ({v},{k}) at ε = {eps}");
            }
        }
    }
}

#[test]
fn h3_window() {
    for t in 1..=6usize {
        let edge = 0.5 * ((2 * t + 1) as f64 / (2 * t - 1) as f64).ln();
        for i in 1..=300 {
            let eps = 0.01 * i as f64;
            assert_eq!(
                eps <= edge,
                k_opt_set(4 * t, eps).unwrap().contains(&(2 * t)),
                "t = {t}, ε = {eps}"
            );
        }
        assert!(k_opt_set(4 * t, edge).unwrap().contains(&(2 * t)));
        assert!((put_boundary::<f64>(2 * t - 1, 2 * t, 4 * t) - edge).abs() < 1e-15);
    }
}

#[test]
fn baranyai_alpha_meets_lower_bound() {
    for v in 2..=12usize {
        for k in 1..v {
            for seed in [0, 9] {
                let (_, r) = baranyai_resolution(v, k, seed).unwrap();
                assert_eq!(r.uniform_alpha(), Some(k / v.gcd(&k)));
            }
        }
    }
}

mod sum_to_one {
    use bdldp::estimation::estimate;
    use proptest::prelude::*;

    fn counts() -> impl Strategy<Value = (Vec<u64>, u64, usize, f64)> {
        (3usize..30, 1u64..100_000, 0.01f64..8.0).prop_flat_map(|(v, n, eps)| {
            (1..v).prop_flat_map(move |k| {
                // Any split of n·k incidences over v points.
                proptest::collection::vec(0.0f64..1.0, v).prop_map(move |w| {
                    let total = n * k as u64;
                    let s: f64 = w.iter().sum::<f64>().max(1e-12);
                    let mut c: Vec<u64> = w.iter().map(|x| (x / s * total as f64).floor() as u64).collect();
                    let short = total - c.iter().sum::<u64>();
                    c[0] += short;
                    (c, n, k, eps)
                })
            })
        })
    }

    proptest! {
        #[test]
        fn estimates_sum_to_one((counts, n, k, eps) in counts()) {
            let v = counts.len();
            let est = estimate(&counts, n, v, k, eps).unwrap();
            prop_assert!((est.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }
}
