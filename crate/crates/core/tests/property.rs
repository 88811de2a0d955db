//! Randomized invariant checks. Each suite runs at least 1000 generated
//! cases; failures shrink to minimal counterexamples.

use nalgebra::DMatrix;
use proptest::prelude::*;
use specad_core::detect::{
    confidence_level, contribution_fractions, evaluate_tdr_far, location_indicator,
    AlarmRecord, TruthEvent,
};
use specad_core::spectra::{js_divergence, mgf_roots, sample_ar1_rows_seeded, SpectralDensity};
use specad_core::synth::{generate, ScenarioSpec};
use specad_core::window::{covariance, form_window, standardize_matrix, TimeSeriesSet};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() }
}

/// A small matrix with rows that are guaranteed non-constant, so row
/// standardization is well defined.
fn varied_matrix() -> impl Strategy<Value = DMatrix<f64>> {
    ((2usize..6), (8usize..16)).prop_flat_map(|(n, t)| {
        proptest::collection::vec(-1e3f64..1e3, n * t).prop_filter_map(
            "rows must vary",
            move |cells| {
                let m = DMatrix::from_vec(n, t, cells);
                let varied = (0..n).all(|i| {
                    let row = m.row(i);
                    let first = row[0];
                    row.iter().any(|&x| (x - first).abs() > 1e-6)
                });
                varied.then_some(m)
            },
        )
    })
}

fn histogram_pair() -> impl Strategy<Value = (SpectralDensity, SpectralDensity)> {
    (2usize..12).prop_flat_map(|bins| {
        let masses = proptest::collection::vec(0.0f64..1.0, bins).prop_filter_map(
            "mass must be normalizable",
            move |raw| {
                let total: f64 = raw.iter().sum();
                (total > 1e-9).then(|| raw.iter().map(|x| x / total).collect::<Vec<f64>>())
            },
        );
        (masses.clone(), masses).prop_map(move |(p, q)| {
            let edges: Vec<f64> = (0..=bins).map(|i| i as f64).collect();
            (
                SpectralDensity { bin_edges: edges.clone(), mass: p },
                SpectralDensity { bin_edges: edges, mass: q },
            )
        })
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn standardization_is_idempotent(m in varied_matrix()) {
        let once = standardize_matrix(&m).unwrap();
        let twice = standardize_matrix(&once.matrix).unwrap();
        let diff = (&once.matrix - &twice.matrix).abs().max();
        prop_assert!(diff < 1e-9, "re-standardizing moved entries by {diff}");
    }

    #[test]
    fn covariance_is_psd_with_unit_trace_per_channel(m in varied_matrix()) {
        let w = standardize_matrix(&m).unwrap();
        let sigma = covariance(&w);
        prop_assert!((sigma.trace() - w.n() as f64).abs() < 1e-8);
        let eigs = sigma.symmetric_eigenvalues();
        for lambda in eigs.iter() {
            prop_assert!(*lambda > -1e-10, "negative covariance eigenvalue {lambda}");
        }
    }

    #[test]
    fn js_divergence_is_symmetric_and_bounded((p, q) in histogram_pair()) {
        let pq = js_divergence(&p, &q).unwrap();
        let qp = js_divergence(&q, &p).unwrap();
        prop_assert!((pq - qp).abs() < 1e-12);
        prop_assert!(pq >= 0.0);
        prop_assert!(pq <= std::f64::consts::LN_2 + 1e-12);
        let self_distance = js_divergence(&p, &p).unwrap();
        prop_assert!(self_distance.abs() < 1e-15);
    }

    #[test]
    fn location_profile_is_nonnegative_and_scale_equivariant(
        m in varied_matrix(),
        scale in 0.1f64..100.0,
    ) {
        let w = standardize_matrix(&m).unwrap();
        let sigma = covariance(&w);
        let (eigs, vecs) = specad_core::window::esd_eigen(&sigma);
        let eta = location_indicator(&eigs, &vecs).unwrap();
        for v in &eta {
            prop_assert!(*v >= 0.0);
        }
        let scaled: Vec<f64> = eigs.iter().map(|x| x * scale).collect();
        let eta_scaled = location_indicator(&scaled, &vecs).unwrap();
        for (a, b) in eta.iter().zip(&eta_scaled) {
            prop_assert!((a * scale - b).abs() <= 1e-9 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn contribution_fractions_sum_to_one(
        raw in proptest::collection::vec(-1e3f64..1e3, 2..40)
    ) {
        prop_assume!(raw.iter().any(|x| x.abs() > 1e-6));
        let fractions = contribution_fractions(&raw);
        let total: f64 = fractions.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-10, "fractions summed to {total}");
        for f in fractions {
            prop_assert!(f >= 0.0);
        }
    }

    #[test]
    fn generation_is_deterministic_under_seed(seed in any::<u64>()) {
        let spec = ScenarioSpec { channels: 4, samples: 12, seed, ..ScenarioSpec::default() };
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        prop_assert_eq!(&a.values, &b.values);
        let rows_a = sample_ar1_rows_seeded(3, 10, 0.4, seed).unwrap();
        let rows_b = sample_ar1_rows_seeded(3, 10, 0.4, seed).unwrap();
        prop_assert_eq!(rows_a, rows_b);
    }

    #[test]
    fn quartic_roots_satisfy_their_polynomial(
        x in 0.01f64..20.0,
        y in 1e-4f64..2.0,
        lag in 0.0f64..0.97,
        ratio in 0.02f64..1.0,
    ) {
        let z = num_complex::Complex64::new(x, y);
        let coeffs = specad_core::spectra::mgf_quartic_coeffs(z, lag, ratio).unwrap();
        let roots = mgf_roots(z, lag, ratio).unwrap();
        prop_assert_eq!(roots.len(), 4);
        for r in roots {
            prop_assert!(r.is_finite(), "non-finite root {r}");
            let mut value = num_complex::Complex64::new(0.0, 0.0);
            let mut scale = 0.0f64;
            for c in &coeffs {
                value = value * r + c;
                scale = scale * r.norm() + c.norm();
            }
            prop_assert!(
                value.norm() <= 1e-7 * scale.max(1e-300),
                "root {r} leaves residual {} at z={z}, b={lag}, c={ratio}",
                value.norm()
            );
        }
    }

    #[test]
    fn confidence_is_invariant_under_affine_history_maps(
        raw in proptest::collection::vec(-100.0f64..100.0, 3..40),
        scale in 0.01f64..50.0,
        shift in -1e3f64..1e3,
    ) {
        let spread = raw.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - raw.iter().cloned().fold(f64::INFINITY, f64::min);
        prop_assume!(spread > 0.1);
        let base = confidence_level(&raw).unwrap();
        let mapped: Vec<f64> = raw.iter().map(|x| scale * x + shift).collect();
        let transformed = confidence_level(&mapped).unwrap();
        prop_assert_eq!(base.zero_variance, transformed.zero_variance);
        prop_assert!(base.value >= 0.0 && base.value < 1.0);
        if !base.zero_variance {
            prop_assert!(
                (base.value - transformed.value).abs() < 1e-7,
                "affine map changed confidence {} -> {}",
                base.value,
                transformed.value
            );
        }
    }

    #[test]
    fn windows_ignore_samples_outside_their_range(
        seed in any::<u64>(),
        noise in -1e6f64..1e6,
    ) {
        let spec = ScenarioSpec { channels: 3, samples: 30, seed, ..ScenarioSpec::default() };
        let data = generate(&spec).unwrap();
        let mut perturbed_values = data.values.clone();
        for i in 0..3 {
            for j in 0..10 {
                perturbed_values[(i, j)] += noise;
            }
        }
        let perturbed = TimeSeriesSet::new(
            data.channels.clone(),
            data.timestamps.clone(),
            perturbed_values,
        )
        .unwrap();
        let original = form_window(&data, 29, 15).unwrap();
        let shifted = form_window(&perturbed, 29, 15).unwrap();
        prop_assert_eq!(&original.matrix, &shifted.matrix);
        prop_assert_eq!(original.end_time, shifted.end_time);
    }

    #[test]
    fn detection_rates_stay_in_bounds(
        alarm_starts in proptest::collection::vec(0i64..1000, 0..30),
        truth_onsets in proptest::collection::vec(0i64..1000, 0..30),
        tolerance in 0i64..50,
    ) {
        let alarms: Vec<AlarmRecord> = alarm_starts
            .iter()
            .map(|&s| AlarmRecord {
                start_time: s,
                end_time: s + 5,
                peak_time: s,
                window_count: 6,
                indicator: "combined".into(),
                confidence: 1.0,
                leading_channel: 0,
                located_channels: Vec::new(),
            })
            .collect();
        let truths: Vec<TruthEvent> =
            truth_onsets.iter().map(|&onset| TruthEvent { onset, channel: None }).collect();
        let eval = evaluate_tdr_far(&alarms, &truths, tolerance);
        prop_assert!(eval.n_correct <= eval.n_truth.min(eval.n_alarms));
        if let Some(tdr) = eval.tdr {
            prop_assert!((0.0..=1.0).contains(&tdr));
        } else {
            prop_assert_eq!(eval.n_truth, 0);
        }
        prop_assert!((0.0..=1.0).contains(&eval.far));
    }
}
