//! Viterbi detection with growing memory converging to exhaustive sequence estimation.
//!
//! `cargo run --release --example viterbi_vs_inse`

use uwb_detect::complexity::{va_measured_adds_per_symbol, va_quoted_adds_per_symbol, AddCounter};
use uwb_detect::detectors::{inse_bruteforce, viterbi_counted};
use uwb_detect::harness::{BurstSimulator, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 12;
    let cfg = ExperimentConfig {
        n_symbols: n,
        seed: 5,
        ..Default::default()
    };
    let sim = BurstSimulator::new(&cfg, n)?;
    let bursts = 200;
    // Short bursts sit mostly in the trellis start-up, so measured costs
    // stay below the steady-state columns for large memory.

    println!("memory  agree_with_inse  adds/symbol  (L+1)2^L  2L*2^L");
    for l in [1, 2, 4, 8, n] {
        let mut agree = 0;
        let mut adds = 0;
        for k in 0..bursts {
            let burst = sim.simulate(k, 6.0)?;
            let reference = inse_bruteforce(&burst.band.block(0, n)?)?;
            let mut counter = AddCounter::new();
            let b = viterbi_counted(&burst.band.narrowed(l)?, l, &mut counter)?;
            agree += usize::from(b == reference);
            adds += counter.adds();
        }
        println!(
            "{l:>6}  {agree:>11}/{bursts}  {:>11.1}  {:>8}  {:>6}",
            adds as f64 / (bursts as usize * n) as f64,
            va_measured_adds_per_symbol(l as u64),
            va_quoted_adds_per_symbol(l as u64),
        );
    }
    Ok(())
}
