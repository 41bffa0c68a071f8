//! Randomized invariants across the core modules.

use halfspace_core::asep::McEstimate;
use halfspace_core::kernels::{CoefficientKernel, ParityMode, Symbol};
use halfspace_core::lattice::{self, bulk_weight, VertexState};
use halfspace_core::partitions::{enumerate_partitions, interlaces, strips_above};
use halfspace_core::pfaffian::{self, SkewKernel, SkewMatrix};
use halfspace_core::{Complex64, Partition};
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..7, 0..6).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn skew(n: usize) -> impl Strategy<Value = SkewMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * (n - 1) / 2).prop_map(move |up| {
        let upper: Vec<Complex64> = up.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
        SkewMatrix::from_upper(n, &upper).unwrap()
    })
}

fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * b.norm().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transpose_is_an_involution(l in partition()) {
        let t = l.transpose();
        prop_assert_eq!(t.size(), l.size());
        prop_assert_eq!(t.transpose(), l);
    }

    #[test]
    fn legs_count_the_boxes_above(l in partition()) {
        // Σ leg = Σ (i-1) λ_i
        let legs: u32 = l.arms_legs().iter().map(|&(_, leg)| leg).sum();
        let want: u32 = l.parts().iter().enumerate().map(|(i, &p)| i as u32 * p).sum();
        prop_assert_eq!(legs, want);
    }

    #[test]
    fn horizontal_strips_interlace(mu in partition(), cap in 6u32..9) {
        for nu in strips_above(&mu, None, cap.max(mu.part(1))) {
            prop_assert!(interlaces(&mu, &nu));
            prop_assert!(nu.part(1) <= cap.max(mu.part(1)));
        }
    }

    #[test]
    fn pf_squared_is_det(a in (1usize..6).prop_flat_map(|h| skew(2 * h))) {
        let p = pfaffian::pf(&a).unwrap();
        prop_assert!(close(p * p, pfaffian::det(a.dim(), a.data()), 1e-10));
    }

    #[test]
    fn pf_matches_the_matching_expansion(a in (1usize..5).prop_flat_map(|h| skew(2 * h))) {
        prop_assert!(close(pfaffian::pf(&a).unwrap(), pfaffian::pf_definition(&a).unwrap(), 1e-11));
    }

    #[test]
    fn pf_flips_sign_under_a_transposition(a in (2usize..6).prop_flat_map(|h| skew(2 * h)), i in 0usize..4, j in 0usize..4) {
        prop_assume!(i != j);
        let n = a.dim();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, j);
        let data: Vec<Complex64> = (0..n * n).map(|k| a.get(perm[k / n], perm[k % n])).collect();
        let b = SkewMatrix::new(n, data).unwrap();
        prop_assert!(close(pfaffian::pf(&b).unwrap(), -pfaffian::pf(&a).unwrap(), 1e-10));
    }

    #[test]
    fn coefficient_kernels_are_skew(c in 0.05f64..3.0, u in 0i64..30, v in 0i64..30, averaged in any::<bool>()) {
        let parity = if averaged { ParityMode::Averaged } else { ParityMode::Literal };
        let k = CoefficientKernel::new(Symbol::Exponential { c }, 40).with_parity(parity);
        let (a, b) = (k.block(u as f64, v as f64), k.block(v as f64, u as f64));
        let tol = 1e-12 * (1.0 + a.max_abs());
        prop_assert!((a.k11 + b.k11).norm() < tol);
        prop_assert!((a.k22 + b.k22).norm() < tol);
        prop_assert!((a.k12 + b.k21).norm() < tol);
    }

    #[test]
    fn schur_complement_kernel_is_skew(a in prop::collection::vec(0.0f64..0.9, 1..3), u in 0i64..15, v in 0i64..15) {
        let alphabet: Vec<f64> = a.iter().flat_map(|&x| [x, 0.5 * x]).collect();
        let k = CoefficientKernel::schur_complement(&alphabet, 20).unwrap();
        let (p, q) = (k.block(u as f64, v as f64), k.block(v as f64, u as f64));
        prop_assert!((p.k11 + q.k11).norm() < 1e-12);
        prop_assert!((p.k22 + q.k22).norm() < 1e-12);
        prop_assert!((p.k12 + q.k21).norm() < 1e-12);
    }

    #[test]
    fn bulk_vertices_are_stochastic(axy in 0.0f64..1.0, t in 0.0f64..1.0) {
        for (i1, i2) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
            let s: f64 = VertexState::all()
                .filter(|v| v.i1 == i1 && v.i2 == i2)
                .map(|v| bulk_weight(v, &axy, &t))
                .sum();
            prop_assert!((s - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn yang_baxter_and_reflection(ax in 0.0f64..1.0, ay in 0.0f64..1.0, az in 0.0f64..1.0, t in 0.0f64..1.0) {
        prop_assert!(lattice::verify_ybe_sixvertex(ax, ay, az, t) < 1e-12);
        prop_assert!(lattice::verify_reflection(ax, ay, t) < 1e-12);
    }

    #[test]
    fn mc_merge_equals_pooled_samples(xs in prop::collection::vec(-5.0f64..5.0, 2..40), k in 1usize..39) {
        let k = k.min(xs.len() - 1);
        let pooled = McEstimate::from_samples(&xs, 0);
        let merged = McEstimate::from_samples(&xs[..k], 0).merge(&McEstimate::from_samples(&xs[k..], 0));
        prop_assert!((pooled.mean - merged.mean).abs() < 1e-12);
        prop_assert_eq!(pooled.n, merged.n);
        if xs.len() > 2 && pooled.se.is_finite() {
            prop_assert!((pooled.se - merged.se).abs() < 1e-10 * (1.0 + pooled.se));
        }
    }
}

#[test]
fn even_conjugate_enumeration_is_the_filtered_full_enumeration() {
    let all: Vec<Partition> = enumerate_partitions(5, 4, false).into_iter().filter(|l| l.is_conjugate_even()).collect();
    let mut even = enumerate_partitions(5, 4, true);
    let mut all = all;
    all.sort_by_key(|l| l.parts().to_vec());
    even.sort_by_key(|l| l.parts().to_vec());
    assert_eq!(all, even);
}
