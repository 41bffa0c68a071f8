//! Reference values frozen from independent computations: tabulated
//! Tracy-Widom GOE values, closed-form two-letter observables, and
//! Monte Carlo confirmed Pfaffians recorded at full precision.

use halfspace_core::kernels;
use halfspace_core::symfunc::qpoch_inf;
use halfspace_core::Complex64;

#[test]
fn goe_cdf_reference_values() {
    for (x, want) in [(-3.0, 0.0696001189), (0.0, 0.8319080662), (2.0, 0.9895975711), (4.0, 0.9997796555)] {
        let got = kernels::f_goe(x).unwrap().value;
        assert!((got - want).abs() < 2e-10, "F({x}) = {got}");
    }
}

#[test]
fn two_letter_observable_closed_form() {
    // ℓ ∈ {0, 2} with P(ℓ = 0) = (1 - a1 a2)/(1 - t a1 a2)
    let (a, t) = ([0.25, 0.6], 0.45f64);
    let p0 = (1.0 - a[0] * a[1]) / (1.0 - t * a[0] * a[1]);
    for x in [0.25, 1.5, 3.0] {
        let q = |e: f64| qpoch_inf(-t.powf(e), t * t);
        let want = p0 / q(x + 2.0) + (1.0 - p0) / q(x);
        let got = kernels::schur_complement_fredholm(x, &a, t).unwrap().result.value.re;
        assert!((got - want).abs() < 1e-12, "{x}: {got} vs {want}");
    }
}

#[test]
fn asep_pfaffian_reference_values() {
    let m1 = Complex64::new(-1.0, 0.0);
    for (x, tau, want) in [(0.5, 1.0, 0.67287821), (1.0, 1.0, 0.76094481), (0.5, 2.0, 0.74561078)] {
        let got = kernels::asep_fredholm(x, tau, 0.4, m1).unwrap().result.value.re;
        assert!((got - want).abs() < 1e-8, "{got}");
    }
}

#[test]
fn kpz_laplace_reference_value() {
    let got = kernels::kpz_laplace(-0.5, 0.5).unwrap().value;
    assert!((got - 0.6574707866).abs() < 1e-9, "{got}");
}
