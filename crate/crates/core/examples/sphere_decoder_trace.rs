//! Sphere-decoder MSDD on one block under each acceleration setting.
//!
//! `cargo run --release --example sphere_decoder_trace`

use uwb_detect::acr::ZMatrix;
use uwb_detect::detectors::{msdd_bruteforce, msdd_sd, DetectorOptions, InitialRadius};
use uwb_detect::harness::{BurstSimulator, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Hand-sized block first.
    let z = ZMatrix::from_rows(&[
        vec![0.0, 0.5, -0.2],
        vec![0.5, 0.0, 0.4],
        vec![-0.2, 0.4, 0.0],
    ])?;
    let t = msdd_sd(&z, &DetectorOptions::default());
    println!(
        "3x3: best {} metric {:.2} order {:?}",
        t.best_sequence,
        t.best_metric,
        t.order.as_slice()
    );

    // Then a noisy L = 10 block from the waveform simulator.
    let cfg = ExperimentConfig {
        n_symbols: 10,
        seed: 3,
        ..Default::default()
    };
    let burst = BurstSimulator::new(&cfg, 10)?.simulate(0, 8.0)?;
    let z = burst.band.block(0, 10)?;
    let (reference, metric) = msdd_bruteforce(&z)?;
    println!("\nL = 10 block, exhaustive optimum {reference} metric {metric:.4}");

    println!("\nsort  stop  init      adds  nodes  leaves  terminated_by   ok");
    for sort_input in [true, false] {
        for use_stopping_radius in [true, false] {
            for initial_radius in [InitialRadius::Infinite, InitialRadius::DdMetric] {
                let opts = DetectorOptions {
                    use_stopping_radius,
                    initial_radius,
                    sort_input,
                };
                let t = msdd_sd(&z, &opts);
                println!(
                    "{:<5} {:<5} {:<8} {:>5}  {:>5}  {:>6}  {:<15} {}",
                    sort_input,
                    use_stopping_radius,
                    format!("{initial_radius:?}"),
                    t.adds,
                    t.nodes_visited,
                    t.leaves,
                    format!("{:?}", t.terminated_by),
                    t.best_sequence == reference,
                );
            }
        }
    }
    Ok(())
}
