//! Block DF-DD with and without magnitude sorting, and the continuous variant.
//!
//! `cargo run --release --example dfdd_sorting -- [bursts]`

use uwb_detect::detectors::{detect_burst, DetectorKind};
use uwb_detect::harness::{BurstSimulator, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bursts: u64 = std::env::args().nth(1).map_or(Ok(300), |s| s.parse())?;
    let (n, l, snr_db) = (100, 10, 10.0);
    let cfg = ExperimentConfig {
        n_symbols: n,
        seed: 11,
        ..Default::default()
    };
    let sim = BurstSimulator::new(&cfg, l)?;
    let kinds = [
        DetectorKind::Dd,
        DetectorKind::Bdfdd,
        DetectorKind::Sbdfdd,
        DetectorKind::Cdfdd,
    ];

    let mut errors = [0usize; 4];
    let mut adds = [0u64; 4];
    for k in 0..bursts {
        let burst = sim.simulate(k, snr_db)?;
        for (j, &kind) in kinds.iter().enumerate() {
            let d = detect_burst(&burst.band, kind, l)?;
            errors[j] += d.info.hamming(&burst.info);
            adds[j] += d.units.iter().map(|u| u.0).sum::<u64>();
        }
    }
    let bits = (bursts as usize * n) as f64;
    println!("{bursts} bursts, N = {n}, L = {l}, {snr_db} dB");
    println!("detector       ber  adds/symbol");
    for (j, kind) in kinds.iter().enumerate() {
        println!(
            "{:<8} {:>9.2e}  {:>11.2}",
            kind.name(),
            errors[j] as f64 / bits,
            adds[j] as f64 / bits
        );
    }
    Ok(())
}
