//! Per-block add-count histograms of the sphere decoder and sorted DF-DD.
//!
//! `cargo run --release --example complexity_histogram -- [out_dir]`

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use uwb_detect::detectors::DetectorKind;
use uwb_detect::harness::{run_sweep, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out_dir = std::env::args().nth(1).map(PathBuf::from);
    let cfg = ExperimentConfig {
        snr_db_list: vec![6.0, 12.0],
        n_symbols: 100,
        l_branches: vec![10],
        detectors: vec![
            DetectorKind::Msdd,
            DetectorKind::MsddNoSort,
            DetectorKind::Sbdfdd,
        ],
        max_bursts: 200,
        seed: 2,
        ..Default::default()
    };
    let out = run_sweep(&cfg)?;
    println!("detector      snr   mean     max      var");
    for pc in &out.complexity {
        let r = &pc.report;
        println!(
            "{:<12} {:>4}  {:>6.2}  {:>6.1}  {:>8.1}",
            r.detector.name(),
            pc.snr_db,
            r.adds_per_symbol_mean(),
            r.adds_per_symbol_max(),
            r.adds_per_symbol_variance(),
        );
        if let Some(dir) = &out_dir {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(format!(
                "{}_L{}_snr{}.csv",
                r.detector.name(),
                pc.l,
                pc.snr_db
            ));
            r.write_histogram_csv(BufWriter::new(File::create(path)?))?;
        }
    }
    Ok(())
}
