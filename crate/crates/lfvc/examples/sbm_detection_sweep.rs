//! Block-model benchmark: average sensitivity and specificity of the
//! detectors over a grid of signal-to-noise ratios. This run is scaled
//! down to finish quickly; the full protocol (100 trials, ratios 1..5 in
//! steps of 0.5, all detectors) ships as the default of `lfvc sweep`.
//!
//! ```bash
//! cargo run --release --example sbm_detection_sweep
//! ```

use lfvc::io::sweep_to_csv;
use lfvc::sbm::{sweep, Detector, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SweepConfig {
        ratios: vec![1.0, 2.0, 3.0, 5.0],
        trials: 10,
        detectors: vec![Detector::NodeLfvc, Detector::Modularity, Detector::SpectralClustering],
        null_trials: 50,
        ..SweepConfig::default()
    };
    eprintln!(
        "block model: one community of {} in {} nodes, c_out = {}, {} trials per ratio",
        cfg.n_in,
        cfg.n_in + cfg.n_out,
        cfg.c_out,
        cfg.trials
    );
    let rows = sweep(&cfg)?;
    print!("{}", sweep_to_csv(&rows));
    Ok(())
}
