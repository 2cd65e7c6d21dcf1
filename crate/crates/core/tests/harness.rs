use corrwish::ensemble::{Beta, EnsembleConfig, SpectrumSpec};
use corrwish::harness::{run_experiment, run_experiment_with_threads, samples_csv, write_outputs, Adjustment, ExperimentConfig, ExperimentSummary};
use corrwish::scaling::Edge;
use corrwish::tracywidom::GseConvention;
use corrwish::Error;

fn config(beta: Beta, trials: usize) -> ExperimentConfig {
    let ensemble = EnsembleConfig { beta, p: 8, n: 24, spectrum: SpectrumSpec::Uniform { mean: 2.0, var_exponent: 1.75 }, seed: 42 };
    ExperimentConfig::new(ensemble, trials)
}

#[test]
fn samples_do_not_depend_on_thread_count() {
    for beta in Beta::ALL {
        let cfg = config(beta, 300);
        let a = run_experiment_with_threads(&cfg, Some(1)).unwrap();
        let b = run_experiment_with_threads(&cfg, Some(8)).unwrap();
        assert_eq!(samples_csv(&a), samples_csv(&b), "beta {beta}");
    }
}

#[test]
fn seed_changes_samples() {
    let a = run_experiment(&config(Beta::Real, 200)).unwrap();
    let mut cfg = config(Beta::Real, 200);
    cfg.ensemble.seed = 43;
    let b = run_experiment(&cfg).unwrap();
    assert_ne!(a.x_max, b.x_max);
}

#[test]
fn outputs_are_written_and_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_experiment(&config(Beta::Quaternion, 400)).unwrap();
    let paths = write_outputs(&r, dir.path()).unwrap();
    let names: Vec<String> = paths.iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect();
    assert_eq!(names, ["samples.csv", "summary.json", "hist_max.csv", "hist_min.csv"]);

    let samples = std::fs::read_to_string(dir.path().join("samples.csv")).unwrap();
    assert_eq!(samples.lines().count(), 401);
    assert_eq!(samples.lines().next().unwrap(), "trial,x_max,x_min,chi_max,chi_min");

    let summary: ExperimentSummary = serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary.seed, 42);
    assert_eq!(summary.gse_convention, GseConvention::DEFAULT);
    assert!((summary.gamma_squared - 8.0 / 24.0).abs() < 1e-15);
    assert_eq!(summary.edges.len(), 2);
    assert_eq!(summary.edges[0].scaling_mode, Adjustment::Adjusted);
    assert_eq!(summary.edges[1].scaling_mode, Adjustment::Fitted);
    assert!(summary.edges[1].fit.is_some());

    let hist = std::fs::read_to_string(dir.path().join("hist_max.csv")).unwrap();
    assert_eq!(hist.lines().count(), 61);
    let area: f64 = {
        let e = r.edge(Edge::Max).unwrap();
        e.histogram.area()
    };
    assert!((area - 1.0).abs() < 1e-9);
}

#[test]
fn rescaled_extremes_do_not_depend_on_the_level() {
    // χ is invariant when every Λ is multiplied by the same constant
    let ident = |level: f64| {
        let mut c = config(Beta::Complex, 200);
        c.ensemble.spectrum = SpectrumSpec::Explicit { values: vec![level; 8] };
        run_experiment(&c).unwrap()
    };
    let (x, y) = (ident(1.0), ident(3.5));
    for (u, v) in x.edge(Edge::Max).unwrap().chi.iter().zip(&y.edge(Edge::Max).unwrap().chi) {
        assert!((u - v).abs() < 1e-9);
    }
}

#[test]
fn degenerate_and_invalid_configs_are_rejected() {
    let mut cfg = config(Beta::Complex, 200);
    cfg.ensemble.n = 8;
    assert!(matches!(run_experiment(&cfg), Err(Error::DegenerateEdge(_))));
    cfg.edges = vec![Edge::Max];
    assert!(run_experiment(&cfg).is_ok());
    let mut cfg = config(Beta::Complex, 50);
    assert!(run_experiment(&cfg).is_err());
    cfg.trials = 200;
    cfg.histogram_bins = 5;
    assert!(run_experiment(&cfg).is_err());
}

#[test]
fn config_round_trips_through_json() {
    let mut cfg = config(Beta::Quaternion, 1000);
    cfg.gse_convention = Some(GseConvention::Sqrt2);
    let json = serde_json::to_string(&cfg).unwrap();
    let back: ExperimentConfig = serde_json::from_str(&json).unwrap();
    assert_eq!(cfg, back);
    let minimal: ExperimentConfig =
        serde_json::from_str(r#"{"beta": 2, "p": 4, "n": 9, "spectrum": {"kind": "identity"}, "seed": 1, "trials": 500}"#).unwrap();
    assert_eq!(minimal.edges, vec![Edge::Max, Edge::Min]);
    assert_eq!(minimal.adjustment(Edge::Min), Adjustment::Fitted);
}
