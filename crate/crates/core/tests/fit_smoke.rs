use specad_core::factor::{fit_window, FitConfig, ModelDensityCache};
use specad_core::synth::plant_factors;
use specad_core::window::standardize_matrix;

#[test]
#[ignore]
fn planted_recovery_batch_stats() {
    let config = FitConfig::default();
    let cache = ModelDensityCache::build(57.0 / 200.0, &config).unwrap();
    for base in [1000u64, 1100, 1200, 1300, 1400, 1500, 1600, 1700, 1800, 1900] {
        let start = std::time::Instant::now();
        let mut hits = 0;
        let mut lag_err_sum = 0.0;
        let mut divs = Vec::new();
        for trial in 0..20 {
            let data = plant_factors(57, 200, 3, 4.0, 0.5, base + trial).unwrap();
            let w = standardize_matrix(&data.values).unwrap();
            let est = fit_window(&w, &cache, &config).unwrap();
            if est.factor_count == 3 {
                hits += 1;
            } else {
                eprintln!("  base {base} trial {trial}: p_hat={}", est.factor_count);
            }
            lag_err_sum += (est.lag - 0.5).abs();
            divs.push(est.divergence);
        }
        let mean_div = divs.iter().sum::<f64>() / divs.len() as f64;
        eprintln!(
            "base {base}: hits={hits}/20 mean|b̂−0.5|={:.4} mean_div={:.4} elapsed={:?}",
            lag_err_sum / 20.0,
            mean_div,
            start.elapsed()
        );
    }
}

#[test]
fn planted_recovery_single_seed() {
    let data = plant_factors(57, 200, 3, 4.0, 0.5, 1000).unwrap();
    let w = standardize_matrix(&data.values).unwrap();
    let config = FitConfig::default();
    let cache = ModelDensityCache::build(57.0 / 200.0, &config).unwrap();
    let est = fit_window(&w, &cache, &config).unwrap();
    eprintln!(
        "p_hat={} b_hat={} divergence={:.4}",
        est.factor_count, est.lag, est.divergence
    );
    assert_eq!(est.factor_count, 3);
    assert!((est.lag - 0.5).abs() <= 0.07, "b_hat {}", est.lag);
    assert!(est.divergence < 0.08, "divergence {}", est.divergence);
}
