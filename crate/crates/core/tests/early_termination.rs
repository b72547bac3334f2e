use avgdeg_core::validators::{termination_profile, Algorithm, EARLY_TERMINATION_BOUND};
use avgdeg_core::{EstimatorConfig, GraphSpec};

// With very few samples per pass, stopping while τ is still above 8d is
// governed by Markov's inequality alone: P(mean > τ) ≤ d/τ per pass.
#[test]
fn low_sample_runs_rarely_stop_early() {
    let g = GraphSpec::IsolatedPlusClique { n_iso: 990, k: 10 }.generate().unwrap();
    let cfg = EstimatorConfig::new(0.45).with_c(1.0);
    let p = termination_profile(&g.graph, Algorithm::Ers { alpha: 5.0 }, &cfg, 2000, 7).unwrap();
    let d = p.d;
    let markov: f64 = [5.0, 2.5, 1.25].iter().map(|tau| d / tau).sum();
    assert!(markov < EARLY_TERMINATION_BOUND);
    assert!(p.early_rate <= markov + 3.0 * p.early_sigma, "{} vs {markov}", p.early_rate);
    assert!(p.early_terminations > 0, "the regime should actually produce early stops");
}
