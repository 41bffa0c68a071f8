//! Cross-checks between independent routes to the same law.

use halfspace_core::asep::{self, ASEPRates, McEstimate};
use halfspace_core::halfspace::{pmm_prob, support_distribution, support_distribution_truncated, SupportVector};
use halfspace_core::kernels::{self, ContourKernel, ContourSpec, CoefficientKernel, ParityMode, RescaledKernel, Symbol};
use halfspace_core::lattice::{enumerate_exact, sample_path_strings};
use halfspace_core::partitions::enumerate_partitions;
use halfspace_core::symfunc::{ModelParams, TruncationPolicy};
use halfspace_core::Complex64;

#[test]
fn vertex_law_matches_support_law_in_floating_point() {
    for n in [5usize, 6] {
        let a: Vec<f64> = (0..n).map(|k| 0.15 + 0.11 * k as f64).collect();
        let params = ModelParams::hall_littlewood(0.35, a).unwrap();
        let six = enumerate_exact(n, &params).unwrap();
        let hl = support_distribution(n, &params).unwrap();
        for s in SupportVector::all(n) {
            let d = (six.get(&s) - hl.get(&s)).abs();
            assert!(d <= 1e-12, "n = {n}, {s}: {d:e}");
        }
    }
}

#[test]
fn chain_enumeration_converges_to_the_support_law() {
    let params = ModelParams::hall_littlewood(0.4, vec![0.3, 0.45, 0.25, 0.5]).unwrap();
    let exact = support_distribution(4, &params).unwrap();
    let trunc = support_distribution_truncated(4, &params, &TruncationPolicy::with_max_part(14)).unwrap();
    for s in SupportVector::all(4) {
        assert!((exact.get(&s) - trunc.get(&s)).abs() < 1e-7, "{s}");
    }
}

#[test]
fn sampled_path_strings_follow_the_exact_law() {
    let params = ModelParams::hall_littlewood(0.5, vec![0.6, 0.4, 0.7, 0.5]).unwrap();
    let exact = support_distribution(4, &params).unwrap();
    let emp = sample_path_strings(4, &params, 12_345, 200_000).unwrap();
    for (s, &(p, _)) in &emp.frequencies {
        let want = exact.get(&s.parse().unwrap());
        let se = (want * (1.0 - want) / emp.samples as f64).sqrt();
        assert!((p - want).abs() <= 4.0 * se + 1e-12, "{s}: {p} vs {want}");
    }
}

#[test]
fn gap_probability_matches_enumeration() {
    // the complement process has no point in {0..x} exactly when every such
    // site is some λ_i + n - i
    let a = [0.3, 0.5, 0.2, 0.45];
    let params = ModelParams::hall_littlewood(0.0, a.to_vec()).unwrap();
    let pol = TruncationPolicy::with_max_part(40);
    let parts = enumerate_partitions(40, 4, true);
    for x in 0..6usize {
        let want: f64 = parts
            .iter()
            .filter(|l| (0..=x as u32).all(|s| (1..=4).any(|i| l.part(i) + 4 - i as u32 == s)))
            .map(|l| pmm_prob(l, &params, &pol).unwrap())
            .sum();
        let got = kernels::schur_complement_gap(x, &a).unwrap();
        assert!((got.re - want).abs() < 1e-10 && got.im.abs() < 1e-12, "x = {x}: {got} vs {want}");
    }
}

#[test]
fn trapezoid_entries_converge_to_the_coefficient_entries() {
    let sym = Symbol::Exponential { c: 0.9 };
    let coeff = CoefficientKernel::new(sym.clone(), 30);
    for nodes in [256usize, 512] {
        let ck = ContourKernel::new(&sym, &ContourSpec::circle(0.6, nodes)).unwrap();
        for (u, v) in [(0i64, 3i64), (2, 5), (7, 1), (4, 4)] {
            let (a, b, c) = ck.entries(u, v);
            let (x, y, z) = coeff.entries(u, v);
            let d = (a.re - x).abs().max((b.re - y).abs()).max((c.re - z).abs());
            assert!(d < 1e-11, "nodes {nodes}, ({u},{v}): {d:e}");
        }
    }
}

#[test]
fn discrete_truncation_is_converged() {
    let m1 = Complex64::new(-1.0, 0.0);
    for (x, tau, t) in [(0.5, 1.0, 0.4), (1.0, 2.0, 0.6)] {
        let fine = kernels::asep_fredholm(x, tau, t, m1).unwrap();
        let coarse = kernels::discrete_fredholm(
            |n| CoefficientKernel::asep(tau, t, n),
            |j| kernels::h_weight(x, j, t, m1),
            1e-12,
        )
        .unwrap();
        assert!(coarse.sites < fine.sites);
        let d = (fine.result.value - coarse.result.value).norm();
        assert!(d < 1e-9, "{d:e}");
    }
}

#[test]
fn rescaled_kernel_approaches_its_limit() {
    let big_t = 1e4;
    let k = RescaledKernel::new(big_t, 0.0, ParityMode::Averaged).unwrap();
    let contour = ContourSpec::goe(8.0, 100);
    let pts = kernels::lattice_points(0.0, 2.0, big_t);
    let pick: Vec<f64> = pts.iter().step_by(pts.len() / 5).copied().collect();
    let mut worst: f64 = 0.0;
    for &x in &pick {
        for &y in &pick {
            if x == y {
                continue;
            }
            let a = k.density_block(x, y).unwrap();
            let b = kernels::k_infinity(x, y, &contour).unwrap();
            for (p, q) in [(a.k11, b.k11), (a.k12, b.k12), (a.k21, b.k21), (a.k22, b.k22)] {
                worst = worst.max((p - q).norm());
            }
        }
    }
    assert!(worst < 5e-2, "{worst}");
}

#[test]
fn mean_current_matches_the_master_equation() {
    let rates = ASEPRates::preset(0.5).unwrap();
    let tau = 1.0;
    let l = 10;
    let dist = asep::master_oracle(tau, &rates, l).unwrap();
    let oracle: f64 = asep::site_marginals(&dist, l).iter().sum();
    let ns = asep::sample_currents(tau, &rates, 77, 100_000).unwrap();
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let mc = McEstimate::from_samples(&xs, 77);
    assert!(mc.z_score(oracle) < 4.0, "{} +- {} vs {oracle}", mc.mean, mc.se);
}

#[test]
fn current_observable_matches_its_pfaffian() {
    let (tau, t, x) = (1.5, 0.5, 0.75);
    let rates = ASEPRates::preset(t).unwrap();
    let m1 = Complex64::new(-1.0, 0.0);
    let mc = asep::mc_current_observable(tau, &rates, 31, 60_000, |n| Ok(asep::pochhammer_observable(n, x, t, m1)?.re)).unwrap();
    let pf = kernels::asep_fredholm(x, tau, t, m1).unwrap().result.value.re;
    assert!(mc.z_score(pf) < 4.0, "{} +- {} vs {pf}", mc.mean, mc.se);
}

#[test]
fn preset_rates_satisfy_the_boundary_condition() {
    for t in [0.0, 0.25, 0.5, 0.9] {
        assert!(ASEPRates::preset(t).unwrap().liggett());
    }
}
