mod common;

use common::*;
use laplacian_states::criteria::{zero_discord_structural, StructuralOptions};
use laplacian_states::density::{from_graph, is_graphical, LaplacianKind};
use laplacian_states::linalg::CMatrix;
use laplacian_states::oracle::*;
use laplacian_states::states::*;
use laplacian_states::DensityMatrix;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn flip(d: usize) -> CMatrix {
    CMatrix::from_fn(d * d, d * d, |r, s| {
        let (i, j, k, l) = (r / d, r % d, s / d, s % d);
        c(if i == l && j == k { 1.0 } else { 0.0 }, 0.0)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn partial_trace_matches_oracle(seed in any::<u64>(), m in 1usize..4, n in 1usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rho = random_density(&mut rng, m * n);
        for (side, keep_first) in [(Side::Second, true), (Side::First, false)] {
            let reduced = partial_trace(&rho, m, n, side).unwrap();
            let expected = partial_trace_oracle(rho.as_matrix(), m, n, keep_first);
            prop_assert!(max_abs(&(reduced.as_matrix() - expected)) < 1e-14);
            let tr: f64 = reduced.as_matrix().diagonal().iter().map(|z| z.re).sum();
            prop_assert!((tr - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn entropies_match_oracle(seed in any::<u64>(), order in 1usize..7) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rho = random_density(&mut rng, order);
        prop_assert!((von_neumann_entropy(&rho) - entropy_oracle(rho.as_matrix())).abs() < 1e-9);
        let other = random_density(&mut rng, order);
        let mix = DensityMatrix::new((rho.as_matrix() + other.as_matrix()) * c(0.5, 0.0)).unwrap();
        prop_assert!(von_neumann_entropy(&mix) >= 0.5 * (von_neumann_entropy(&rho) + von_neumann_entropy(&other)) - 1e-10);
    }

    #[test]
    fn information_quantities_match_oracle(seed in any::<u64>(), m in 1usize..4, n in 2usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rho = random_density(&mut rng, m * n);
        prop_assert!((mutual_information(&rho, m, n).unwrap() - mutual_information_oracle(rho.as_matrix(), m, n)).abs() < 1e-9);
        let mut bases = vec![MeasurementBasis::computational(n)];
        if n == 2 {
            bases.push(MeasurementBasis::qubit(rng.gen_range(0.0..3.2), rng.gen_range(0.0..6.3)));
        }
        for basis in bases {
            let direct = conditional_information(&rho, m, n, &basis).unwrap();
            let oracle = conditional_information_oracle(rho.as_matrix(), m, n, basis.vectors());
            prop_assert!((direct - oracle).abs() < 1e-9, "{} vs {}", direct, oracle);
        }
    }

    #[test]
    fn discord_estimate_is_nonnegative(seed in any::<u64>(), m in 1usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rho = random_density(&mut rng, 2 * m);
        prop_assert!(discord_estimate(&rho, m, 2, 12).unwrap() >= -1e-9);
    }

    #[test]
    fn classical_quantum_states_have_no_discord(seed in any::<u64>(), m in 1usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let basis = qubit_grid_basis(&mut rng, 16);
        let rho = classical_quantum(&mut rng, m, &basis);
        prop_assert!(discord_estimate(&rho, m, 2, 16).unwrap() < 1e-6);
        let i = mutual_information(&rho, m, 2).unwrap();
        prop_assert!((conditional_information(&rho, m, 2, &basis).unwrap() - i).abs() < 1e-9);
    }

    #[test]
    fn block_families_reassemble(seed in any::<u64>(), m in 1usize..4, n in 1usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rho = random_density(&mut rng, m * n);
        prop_assert_eq!(&blocks_of_density(&rho, m, n).unwrap().reassemble(), rho.as_matrix());
    }

    #[test]
    fn xstate_conditions_agree_with_the_criterion(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        for branch in [XBranch::Satisfied, XBranch::UnequalCrossBlocks, XBranch::AsymmetricDegrees] {
            for kind in LaplacianKind::ALL {
                let cg = xstate_graph(&xstate_instance(&mut rng, branch, kind)).unwrap();
                prop_assert!(is_xstate(&cg));
                let expected = branch == XBranch::Satisfied;
                prop_assert_eq!(xstate_zero_discord(&cg, kind, 1e-9).unwrap(), expected);
                prop_assert_eq!(zero_discord_structural(&cg, kind, StructuralOptions::default()).unwrap().verdict, expected);
                prop_assert_eq!(is_commuting_normal_family(&cg.density_blocks(kind).unwrap(), 1e-9), expected);
            }
        }
    }
}

#[test]
fn werner_states_are_flip_invariant_and_graphical() {
    for d in 2..=4 {
        let f = flip(d);
        for k in 0..=100 {
            let rho = werner_density(WernerParams::new(d, k as f64 / 100.0).unwrap());
            assert!(max_abs(&(&f * rho.as_matrix() * &f - rho.as_matrix())) < 1e-12);
            assert!(is_graphical(&rho), "d={d} x={}", k as f64 / 100.0);
        }
    }
}

#[test]
fn werner_blocks_at_zero_are_not_a_commuting_normal_family() {
    let rho = werner_density(WernerParams::new(2, 0.0).unwrap());
    assert!(!is_commuting_normal_family(&blocks_of_density(&rho, 2, 2).unwrap(), 1e-9));
    let half = werner_density(WernerParams::new(2, 0.5).unwrap());
    assert!(mutual_information(&half, 2, 2).unwrap().abs() < 1e-12);
}

#[test]
fn generators_roundtrip_through_their_graphs() {
    for d in 2..=4 {
        for k in 0..=20 {
            let p = WernerParams::new(d, k as f64 / 20.0).unwrap();
            let back = from_graph(werner_graph(p).unwrap().graph(), LaplacianKind::Signless).unwrap();
            assert!(back.max_deviation(&werner_density(p)) < 1e-12);
        }
        let (lo, hi) = isotropic_graphical_range(d).unwrap();
        for k in 0..=20 {
            let p = IsotropicParams::new(d, (lo + (hi - lo) * k as f64 / 20.0).min(hi)).unwrap();
            let back = from_graph(isotropic_graph(p).unwrap().graph(), LaplacianKind::Signless).unwrap();
            assert!(back.max_deviation(&isotropic_density(p)) < 1e-12);
        }
    }
}

#[test]
fn isotropic_graphicality_flips_at_the_dominance_endpoints() {
    for d in 2..=6 {
        let (lo, hi) = isotropic_diagonal_dominance_range(d).unwrap();
        let graphical = |f: f64| is_graphical(&isotropic_density(IsotropicParams::new(d, f).unwrap()));
        assert!(graphical(lo) && graphical(lo + 1e-6));
        assert!(graphical(hi) && graphical(hi - 1e-6));
        if hi < 1.0 {
            assert!(!graphical(hi + 1e-6));
        }
    }
}

#[test]
fn isotropic_verdicts_match_the_oracle() {
    for d in 2..=3 {
        let (lo, hi) = isotropic_graphical_range(d).unwrap();
        let mut grid: Vec<f64> = (0..=10).map(|k| (lo + (hi - lo) * k as f64 / 10.0).min(hi)).collect();
        grid.push(1.0 / (d * d) as f64);
        for f in grid {
            let p = IsotropicParams::new(d, f).unwrap();
            let verdict = isotropic_discord_verdict(p).unwrap().verdict;
            let oracle = is_commuting_normal_family(&blocks_of_density(&isotropic_density(p), d, d).unwrap(), 1e-9);
            assert_eq!(verdict, oracle, "d={d} F={f}");
            assert_eq!(verdict, (f - 1.0 / (d * d) as f64).abs() < 1e-12, "d={d} F={f}");
        }
    }
}
