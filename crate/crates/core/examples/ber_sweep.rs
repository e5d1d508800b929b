//! Waveform-level BER sweep over an SV channel.
//!
//! `cargo run --release --example ber_sweep -- [bursts]`

use uwb_detect::detectors::DetectorKind;
use uwb_detect::harness::{run_sweep, write_csv, ChannelSpec, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bursts: u64 = std::env::args().nth(1).map_or(Ok(200), |s| s.parse())?;
    let cfg = ExperimentConfig {
        snr_db_list: vec![4.0, 8.0, 12.0],
        n_symbols: 100,
        l_branches: vec![10],
        detectors: vec![
            DetectorKind::Dd,
            DetectorKind::Msdd,
            DetectorKind::Sbdfdd,
            DetectorKind::Va,
        ],
        channel: ChannelSpec::SvCm2,
        min_errors: 200,
        max_bursts: bursts,
        seed: 1,
        ..Default::default()
    };
    let out = run_sweep(&cfg)?;
    write_csv(&out.records, std::io::stdout().lock())?;
    Ok(())
}
