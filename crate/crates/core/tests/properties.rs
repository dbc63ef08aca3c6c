//! Property tests over randomly generated comparison data.

use hre_core::baselines::{evm, gmm, harker_evm, incomplete_gmm};
use hre_core::consistency::{
    consistent_completion, consistent_completion_from_root, harker_ci, saaty_ci,
};
use hre_core::hre::{
    assemble_arithmetic_complete, assemble_arithmetic_incomplete, assemble_geometric_complete,
    assemble_geometric_incomplete, check_applicability, rank,
};
use hre_core::numerics::{
    gershgorin_excludes_zero, residual_inf, scaled_shift_radius, solve, spectral_radius,
    PowerOptions, SquareMatrix, DEFAULT_SINGULAR_TOL,
};
use hre_core::{HreProblem, MissingScope, PcMatrix, RankOptions, Variant};
use hre_testkit as kit;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;

fn eigen_oracle(m: &SquareMatrix) -> f64 {
    let k = m.dim();
    let dm = DMatrix::from_row_slice(k, k, m.as_slice());
    dm.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn radius(m: &SquareMatrix) -> f64 {
    let r = spectral_radius(m, &PowerOptions::default()).unwrap();
    assert!(r.converged);
    r.radius
}

fn to_square(c: &PcMatrix) -> SquareMatrix {
    let rows: Vec<Vec<f64>> = c.rows().into_iter().map(|r| r.into_iter().map(Option::unwrap).collect()).collect();
    SquareMatrix::from_rows(&rows).unwrap()
}

fn permute(c: &PcMatrix, perm: &[usize]) -> PcMatrix {
    c.submatrix(perm).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn upper_triangle_ingestion_is_always_valid(seed in any::<u64>(), n in 2usize..9) {
        let mut rng = kit::rng(seed);
        let pattern = kit::connected_pattern(&mut rng, n, 0.5);
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if pattern[i][j] { Some(10f64.powf(rng.random_range(-2.0..2.0))) } else { None }).collect())
            .collect();
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        let c = PcMatrix::from_upper_triangle(labels, rows).unwrap();
        prop_assert!(c.validate().is_clean());
    }

    #[test]
    fn edge_count_is_twice_known_pairs(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = kit::rng(seed);
        let pattern = kit::connected_pattern(&mut rng, n, 0.3);
        let c = kit::random_matrix(&mut rng, &pattern, 9.0);
        let pairs = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).filter(|&(i, j)| pattern[i][j]).count();
        prop_assert_eq!(c.comparison_graph().edge_count(), 2 * pairs);
    }

    #[test]
    fn irreducibility_is_permutation_invariant(seed in any::<u64>(), n in 2usize..9) {
        let mut rng = kit::rng(seed);
        // sparse random pattern that is often disconnected
        let mut pattern = vec![vec![false; n]; n];
        for i in 0..n {
            pattern[i][i] = true;
            for j in (i + 1)..n {
                let b = rng.random_bool(0.3);
                pattern[i][j] = b;
                pattern[j][i] = b;
            }
        }
        let c = kit::random_matrix(&mut rng, &pattern, 9.0);
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        prop_assert_eq!(c.is_irreducible(), permute(&c, &perm).is_irreducible());
    }

    #[test]
    fn complete_matrices_have_no_missing(seed in any::<u64>(), n in 1usize..8) {
        let mut rng = kit::rng(seed);
        let c = PcMatrix::from_weights(&kit::log_uniform_weights(&mut rng, n)).unwrap();
        let rows: Vec<usize> = (0..n).collect();
        for scope in [MissingScope::AllColumns, MissingScope::Columns(rows[..n / 2].to_vec())] {
            let m = c.missing_counts(&rows, &scope);
            prop_assert!(m.counts.iter().all(|&s| s == 0));
            prop_assert_eq!((m.s_max, m.s_min), (0, 0));
        }
    }

    #[test]
    fn spectral_radius_matches_eigen_oracle(seed in any::<u64>(), k in 1usize..9, sparsity in 0.0f64..0.7) {
        let mut rng = kit::rng(seed);
        let m = kit::nonnegative_matrix(&mut rng, k, sparsity);
        let oracle = eigen_oracle(&m);
        prop_assert!((radius(&m) - oracle).abs() <= 1e-8 * oracle.max(1.0), "{} vs {}", radius(&m), oracle);
    }

    #[test]
    fn spectral_radius_is_monotone(seed in any::<u64>(), k in 1usize..9) {
        let mut rng = kit::rng(seed);
        let a = kit::nonnegative_matrix(&mut rng, k, 0.4);
        let bump = kit::nonnegative_matrix(&mut rng, k, 0.6);
        let b = SquareMatrix::new(k, a.as_slice().iter().zip(bump.as_slice()).map(|(x, y)| x + y).collect()).unwrap();
        prop_assert!(radius(&a) <= radius(&b) + 1e-8);
    }

    #[test]
    fn shifted_radius_identity(seed in any::<u64>(), k in 1usize..9, alpha in 1e-3f64..=2.0) {
        let mut rng = kit::rng(seed);
        let pattern = vec![vec![true; k]; k];
        let c = to_square(&kit::random_matrix(&mut rng, &pattern, 9.0));
        let via_identity = scaled_shift_radius(&c, alpha, &PowerOptions::default()).unwrap();
        let direct = radius(&c.shifted_scaled(alpha));
        prop_assert!((via_identity - direct).abs() <= 1e-8 * via_identity.max(1.0));
    }

    #[test]
    fn neumann_criterion_implies_nonsingular(seed in any::<u64>(), k in 1usize..9, target in 0.0f64..(1.0 - 1e-6)) {
        let mut rng = kit::rng(seed);
        let b0 = kit::nonnegative_matrix(&mut rng, k, 0.3);
        let rho0 = radius(&b0);
        prop_assume!(rho0 > 0.0);
        let b = b0.map(|v| v * target / rho0);
        prop_assume!(radius(&b) < 1.0 - 1e-6);
        let mut m = b.map(|v| -v);
        for i in 0..k {
            m.set(i, i, 1.0 + m.get(i, i));
        }
        let rhs: Vec<f64> = (0..k).map(|_| rng.random_range(-1.0..1.0)).collect();
        prop_assert!(!solve(&m, &rhs, DEFAULT_SINGULAR_TOL).unwrap().is_singular());
    }

    #[test]
    fn solutions_meet_residual_bound(seed in any::<u64>(), k in 1usize..12) {
        let mut rng = kit::rng(seed);
        let data = (0..k * k).map(|_| rng.random_range(-10.0..10.0)).collect();
        let a = SquareMatrix::new(k, data).unwrap();
        let b: Vec<f64> = (0..k).map(|_| rng.random_range(-10.0..10.0)).collect();
        let r = solve(&a, &b, DEFAULT_SINGULAR_TOL).unwrap();
        if let Some(x) = r.unique() {
            let x_norm = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let b_norm = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            prop_assert!(residual_inf(&a, x, &b) <= 1e-8 * (a.norm_inf() * x_norm + b_norm));
        }
    }

    #[test]
    fn diagonal_dominance_implies_nonsingular(seed in any::<u64>(), k in 1usize..10) {
        let mut rng = kit::rng(seed);
        let mut data: Vec<f64> = (0..k * k).map(|_| rng.random_range(-1.0..1.0)).collect();
        for i in 0..k {
            let off: f64 = (0..k).filter(|&j| j != i).map(|j| data[i * k + j].abs()).sum();
            data[i * k + i] = (off + rng.random_range(1e-3..1.0)) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        }
        let m = SquareMatrix::new(k, data).unwrap();
        prop_assert!(gershgorin_excludes_zero(&m));
        let b: Vec<f64> = (0..k).map(|_| rng.random_range(-1.0..1.0)).collect();
        prop_assert!(!solve(&m, &b, DEFAULT_SINGULAR_TOL).unwrap().is_singular());
    }

    #[test]
    fn saaty_index_nonnegative(seed in any::<u64>(), n in 2usize..9) {
        let mut rng = kit::rng(seed);
        let pattern = vec![vec![true; n]; n];
        let c = kit::random_matrix(&mut rng, &pattern, 9.0);
        let s = saaty_ci(&c).unwrap();
        let h = harker_ci(&c).unwrap();
        prop_assert!(s.index_value >= -1e-9);
        prop_assert_eq!(s.index_value.to_bits(), h.index_value.to_bits());
    }

    #[test]
    fn harker_index_nonnegative(seed in any::<u64>(), n in 2usize..9) {
        let mut rng = kit::rng(seed);
        let pattern = kit::connected_pattern(&mut rng, n, 0.4);
        let c = kit::random_matrix(&mut rng, &pattern, 9.0);
        prop_assert!(harker_ci(&c).unwrap().index_value >= -1e-9);
    }

    #[test]
    fn completion_properties(seed in any::<u64>(), n in 2usize..9) {
        let mut rng = kit::rng(seed);
        let w = kit::log_uniform_weights(&mut rng, n);
        let pattern = kit::connected_pattern(&mut rng, n, 0.3);
        let c = kit::perturbed_matrix(&mut rng, &w, &pattern, 0.0);
        let full = consistent_completion(&c).unwrap();
        prop_assert!(full.validate().is_clean());
        prop_assert!(full.is_complete());
        if n >= 2 {
            prop_assert!(saaty_ci(&full).unwrap().index_value.abs() < 1e-9);
        }
        prop_assert_eq!(consistent_completion(&full).unwrap(), full.clone());
        let other_root = consistent_completion_from_root(&c, n - 1).unwrap();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (full.get(i, j).unwrap(), other_root.get(i, j).unwrap());
                prop_assert!((a - b).abs() <= 1e-9 * a);
                prop_assert!((a - w[i] / w[j]).abs() <= 1e-9 * a);
            }
        }
    }

    #[test]
    fn consistent_problems_are_recovered_exactly(seed in any::<u64>(), n in 3usize..11) {
        let mut rng = kit::rng(seed);
        let w = kit::log_uniform_weights(&mut rng, n);
        let pattern = kit::connected_pattern(&mut rng, n, 0.3);
        let c = kit::perturbed_matrix(&mut rng, &w, &pattern, 0.0);
        let k = rng.random_range(1..n);
        let p = kit::split_problem(&mut rng, c, &w, k);
        let full = consistent_completion(p.matrix()).unwrap();
        let (anchor, anchor_w) = p.references()[p.references().len() - 1];
        let arith = rank(&p, Variant::Arithmetic, &RankOptions::default()).unwrap();
        let geo = rank(&p, Variant::Geometric, &RankOptions::default()).unwrap();
        for &u in p.unknowns() {
            let expected = full.get(u, anchor).unwrap() * anchor_w;
            let a = arith.priorities.weights[u];
            let g = geo.priorities.weights[u];
            prop_assert!((a - expected).abs() <= 1e-9 * expected, "{} vs {}", a, expected);
            prop_assert!((g - a).abs() <= 1e-9 * a);
        }
        for &(r, wr) in p.references() {
            prop_assert_eq!(arith.priorities.weights[r].to_bits(), wr.to_bits());
            prop_assert_eq!(geo.priorities.weights[r].to_bits(), wr.to_bits());
        }
    }

    #[test]
    fn incomplete_assemblers_agree_on_complete_input(seed in any::<u64>(), n in 2usize..9) {
        let mut rng = kit::rng(seed);
        let pattern = vec![vec![true; n]; n];
        let c = kit::random_matrix(&mut rng, &pattern, 9.0);
        let w = kit::log_uniform_weights(&mut rng, n);
        let k = rng.random_range(1..n);
        let p = kit::split_problem(&mut rng, c, &w, k);
        let (a, ai) = (assemble_arithmetic_complete(&p).unwrap(), assemble_arithmetic_incomplete(&p).unwrap());
        let (g, gi) = (assemble_geometric_complete(&p).unwrap(), assemble_geometric_incomplete(&p).unwrap());
        prop_assert_eq!(&a.coefficients, &ai.coefficients);
        prop_assert_eq!(a.rhs.iter().map(|v| v.to_bits()).collect::<Vec<_>>(), ai.rhs.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
        prop_assert_eq!(&g.coefficients, &gi.coefficients);
        prop_assert_eq!(g.rhs.iter().map(|v| v.to_bits()).collect::<Vec<_>>(), gi.rhs.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
    }

    #[test]
    fn geometric_systems_always_solvable(seed in any::<u64>(), n in 2usize..11) {
        let mut rng = kit::rng(seed);
        let pattern = kit::connected_pattern(&mut rng, n, 0.4);
        let c = kit::random_matrix(&mut rng, &pattern, 9.0);
        let w = kit::log_uniform_weights(&mut rng, n);
        let k = rng.random_range(1..n);
        let p = kit::split_problem(&mut rng, c, &w, k);
        let s = hre_core::hre::assemble(&p, Variant::Geometric).unwrap();
        let m = &s.coefficients;
        for i in 0..m.dim() {
            let off: f64 = (0..m.dim()).filter(|&j| j != i).map(|j| m.get(i, j).abs()).sum();
            prop_assert!(m.get(i, i) >= off);
        }
        // strict dominance exactly when every unknown has a known reference comparison
        let touches_reference = |u: usize| p.references().iter().any(|&(r, _)| p.matrix().is_known(u, r));
        prop_assert_eq!(gershgorin_excludes_zero(m), s.unknowns.iter().all(|&u| touches_reference(u)));
        prop_assert!(!s.solve(DEFAULT_SINGULAR_TOL).unwrap().is_singular());
    }

    #[test]
    fn guaranteed_arithmetic_never_singular(seed in any::<u64>(), n in 3usize..11, noise in 0.0f64..0.6) {
        let mut rng = kit::rng(seed);
        let w = kit::log_uniform_weights(&mut rng, n);
        let pattern = kit::connected_pattern(&mut rng, n, 0.5);
        let c = kit::perturbed_matrix(&mut rng, &w, &pattern, noise);
        let k = rng.random_range(1..n);
        let p = kit::split_problem(&mut rng, c, &w, k);
        if check_applicability(&p, Variant::Arithmetic).is_guaranteed() {
            let s = hre_core::hre::assemble(&p, Variant::Arithmetic).unwrap();
            prop_assert!(!s.solve(DEFAULT_SINGULAR_TOL).unwrap().is_singular());
        }
    }

    #[test]
    fn baselines_normalized_and_equivariant(seed in any::<u64>(), n in 2usize..9) {
        let mut rng = kit::rng(seed);
        let full = vec![vec![true; n]; n];
        let c = kit::random_matrix(&mut rng, &full, 9.0);
        let pattern = kit::connected_pattern(&mut rng, n, 0.4);
        let partial = kit::random_matrix(&mut rng, &pattern, 9.0);
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);

        type Method = fn(&PcMatrix) -> Result<hre_core::PriorityVector, hre_core::baselines::BaselineError>;
        let methods: [(Method, &PcMatrix); 4] = [(evm, &c), (gmm, &c), (harker_evm, &partial), (incomplete_gmm, &partial)];
        for (method, m) in methods {
            let out = method(m).unwrap();
            prop_assert!((out.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!(out.weights.iter().all(|&v| v > 0.0));
            let permuted = method(&permute(m, &perm)).unwrap();
            for (new, &old) in perm.iter().enumerate() {
                prop_assert!((permuted.weights[new] - out.weights[old]).abs() <= 1e-9 * out.weights[old]);
            }
        }
    }

    #[test]
    fn baselines_coincide_on_consistent_data(seed in any::<u64>(), n in 2usize..9) {
        let mut rng = kit::rng(seed);
        let w = kit::log_uniform_weights(&mut rng, n);
        let total: f64 = w.iter().sum();
        let c = PcMatrix::from_weights(&w).unwrap();
        let pattern = kit::connected_pattern(&mut rng, n, 0.3);
        let partial = kit::perturbed_matrix(&mut rng, &w, &pattern, 0.0);
        let outs = [evm(&c).unwrap(), gmm(&c).unwrap(), harker_evm(&partial).unwrap(), incomplete_gmm(&partial).unwrap()];
        for out in outs {
            for (v, wi) in out.weights.iter().zip(&w) {
                prop_assert!((v - wi / total).abs() <= 1e-9 * wi / total);
            }
        }
    }
}

#[test]
fn problem_with_unknowns_in_arbitrary_order() {
    let w = [3.0, 1.0, 4.0, 1.5, 9.0, 2.6];
    let c = PcMatrix::from_weights(&w).unwrap().without_pair(0, 5).without_pair(2, 4);
    let p = HreProblem::new(c, vec![4, 0, 2], vec![(5, 2.6), (1, 1.0), (3, 1.5)]).unwrap();
    let out = rank(&p, Variant::Arithmetic, &RankOptions::default()).unwrap();
    for (got, want) in out.priorities.weights.iter().zip(w) {
        assert!((got - want).abs() < 1e-12 * want);
    }
    assert_eq!(out.priorities.computed, vec![true, false, true, false, true, false]);
}
