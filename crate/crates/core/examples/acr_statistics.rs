//! ACR statistics of one noisy burst next to the Gaussian surrogate.
//!
//! `cargo run --release --example acr_statistics`

use uwb_detect::acr::{model_z_direct, ZSurrogate};
use uwb_detect::harness::{BurstSimulator, ExperimentConfig};
use uwb_detect::waveform::differential_encode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig {
        n_symbols: 12,
        seed: 7,
        ..Default::default()
    };
    let sim = BurstSimulator::new(&cfg, 3)?;
    let snr_db = 10.0;
    let burst = sim.simulate(0, snr_db)?;
    let b = differential_encode(&burst.info, 1)?;

    let (p, filter) = sim.receive_pulse(0)?;
    let bcfg = sim.burst_config().clone().with_ebn0_db(snr_db);
    let model = ZSurrogate::from_pulse(&p, &filter, &bcfg)?;
    println!(
        "E_cap = {:.4}, noise sd = {:.4}",
        model.e_cap,
        model.noise_var.sqrt()
    );

    let surrogate = model_z_direct(&b, &model, 3, 99)?;
    println!("\n  i  lag  b b E_cap   waveform  surrogate");
    for i in 1..=burst.band.n_symbols() {
        for lag in 1..=3.min(i) {
            let l = i - lag;
            println!(
                "{i:>3}  {lag:>3}  {:>+9.4}  {:>+9.4}  {:>+9.4}",
                f64::from(b[l] * b[i]) * burst.e_cap,
                burst.band.get(l, i),
                surrogate.get(l, i),
            );
        }
    }
    Ok(())
}
