//! Monte Carlo BER and complexity sweeps.
//!
//! Every operating point `(snr)` runs bursts in fixed-size batches. Burst `k`
//! draws its channel, data and noise from seeds derived as
//! `rng::split(seed, &[k, stream])`, so all detectors and all SNR points see
//! the same channels and data, and the result does not depend on how batches
//! are spread over worker threads. A `(detector, L)` record stops counting
//! after the first batch in which it reaches `min_errors`; every point stops
//! at `max_bursts`.

mod config;
mod csv;
mod selftest;

pub use config::{ChannelSpec, ExperimentConfig};
pub use csv::{emit_csv, parse_csv, write_csv, CSV_HEADER};
pub use selftest::{selftest, CheckOutcome};

use rand::Rng;
use rayon::prelude::*;

use crate::acr::{build_z_band, ZBand};
use crate::complexity::{va_quoted_adds_per_symbol, ComplexityReport};
use crate::detectors::{detect_burst, DetectorKind};
use crate::error::{invalid, Result};
use crate::rng::{rng_from_seed, split};
use crate::waveform::{
    differential_encode, gaussian_monocycle, generate_channel, load_channel_trace,
    synthesize_burst, synthesize_receive_pulse, BurstConfig, ChannelModel, ChannelRealization,
    PulseTemplate, ReceiveFilter, SvParams, SymbolSeq,
};

/// Bursts simulated between stopping checks.
pub const BATCH_BURSTS: u64 = 32;

/// Worker-count cap read from the environment.
pub const THREADS_ENV: &str = "UWB_DETECT_THREADS";

#[derive(Debug, Clone, PartialEq)]
pub struct BerRecord {
    pub detector: DetectorKind,
    pub l: usize,
    pub n: usize,
    pub snr_db: f64,
    pub bits: u64,
    pub errors: u64,
    pub ber: f64,
    pub adds_per_symbol_mean: f64,
    pub adds_per_symbol_max: f64,
}

/// Complexity histogram of one `(detector, L, snr)` point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointComplexity {
    pub l: usize,
    pub snr_db: f64,
    pub report: ComplexityReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub records: Vec<BerRecord>,
    pub complexity: Vec<PointComplexity>,
}

enum ChannelSource {
    Model(ChannelModel),
    Fixed(ChannelRealization),
}

/// One simulated burst: the sent information symbols and the ACR band.
#[derive(Debug, Clone)]
pub struct SimulatedBurst {
    pub info: SymbolSeq,
    pub band: ZBand,
    /// Captured energy `int_0^{T_i} p^2` of this burst's receive pulse.
    pub e_cap: f64,
}

/// Waveform-level burst generator shared by the sweep and the examples.
pub struct BurstSimulator {
    tx: PulseTemplate,
    channel: ChannelSource,
    burst: BurstConfig,
    seed: u64,
}

impl BurstSimulator {
    /// Streams of burst `k`: `split(seed, &[k, stream])`.
    const CHANNEL_STREAM: u64 = 0;
    const DATA_STREAM: u64 = 1;
    const NOISE_STREAM: u64 = 2;

    /// `bandwidth` is the number of ACR branches computed per burst.
    pub fn new(cfg: &ExperimentConfig, bandwidth: usize) -> Result<Self> {
        let tx = gaussian_monocycle(cfg.center_freq, cfg.bandwidth_10db, cfg.sample_rate)?;
        let channel = match &cfg.channel {
            ChannelSpec::SvCm2 => {
                ChannelSource::Model(ChannelModel::SalehValenzuela(SvParams::cm2()))
            }
            ChannelSpec::SingleTap => ChannelSource::Model(ChannelModel::SingleTap),
            ChannelSpec::File(path) => ChannelSource::Fixed(load_channel_trace(path)?),
        };
        let burst = BurstConfig {
            n_symbols: cfg.n_symbols,
            sample_rate: cfg.sample_rate,
            samples_per_symbol: (cfg.t_seconds * cfg.sample_rate).round() as usize,
            integration_time: cfg.ti_seconds,
            l_branches: bandwidth,
            noise_psd: 0.0,
        };
        burst.validate()?;
        Ok(Self {
            tx,
            channel,
            burst,
            seed: cfg.seed,
        })
    }

    pub fn burst_config(&self) -> &BurstConfig {
        &self.burst
    }

    /// Receive pulse and matching receive filter of burst `index`.
    pub fn receive_pulse(&self, index: u64) -> Result<(PulseTemplate, ReceiveFilter)> {
        let channel = match &self.channel {
            ChannelSource::Model(m) => {
                generate_channel(m, split(self.seed, &[index, Self::CHANNEL_STREAM]))?
            }
            ChannelSource::Fixed(c) => c.clone(),
        };
        synthesize_receive_pulse(&self.tx, &channel, self.burst.symbol_period())
    }

    pub fn simulate(&self, index: u64, snr_db: f64) -> Result<SimulatedBurst> {
        let (p, filter) = self.receive_pulse(index)?;
        let mut rng = rng_from_seed(split(self.seed, &[index, Self::DATA_STREAM]));
        let info = SymbolSeq::new(
            (0..self.burst.n_symbols)
                .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
                .collect(),
        )?;
        let b = differential_encode(&info, 1)?;
        let cfg = self.burst.clone().with_ebn0_db(snr_db);
        let r = synthesize_burst(
            &b,
            &p,
            &filter,
            &cfg,
            split(self.seed, &[index, Self::NOISE_STREAM]),
        )?;
        let band = build_z_band(&r, &cfg)?;
        Ok(SimulatedBurst {
            info,
            band,
            e_cap: p.energy_within(cfg.integration_samples()),
        })
    }
}

#[derive(Debug, Clone)]
struct Tally {
    bits: u64,
    errors: u64,
    report: ComplexityReport,
    done: bool,
}

/// Thread pool honouring [`THREADS_ENV`].
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .map_or(available, |t| t.min(available));
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| invalid(format!("thread pool: {e}")))
}

/// Runs the sweep described by `cfg`.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepOutput> {
    cfg.validate()?;
    let combos: Vec<(DetectorKind, usize)> = cfg
        .detectors
        .iter()
        .flat_map(|&d| cfg.l_branches.iter().map(move |&l| (d, l)))
        .collect();
    let bandwidth = combos
        .iter()
        .map(|&(d, l)| d.required_bandwidth(l, cfg.n_symbols))
        .max()
        .unwrap_or(1);
    let sim = BurstSimulator::new(cfg, bandwidth)?;
    let pool = thread_pool()?;

    let mut records = Vec::new();
    let mut complexity = Vec::new();
    for &snr_db in &cfg.snr_db_list {
        let mut tallies: Vec<Tally> = combos
            .iter()
            .map(|&(d, l)| {
                let mut report = ComplexityReport::new(d);
                if d == DetectorKind::Va {
                    report.quoted_adds_per_symbol =
                        Some(va_quoted_adds_per_symbol(l as u64) as f64);
                }
                Tally {
                    bits: 0,
                    errors: 0,
                    report,
                    done: false,
                }
            })
            .collect();
        let mut bursts = 0u64;
        while bursts < cfg.max_bursts && tallies.iter().any(|t| !t.done) {
            let batch = BATCH_BURSTS.min(cfg.max_bursts - bursts);
            let active: Vec<bool> = tallies.iter().map(|t| !t.done).collect();
            let results: Vec<Vec<Option<(u64, Vec<(u64, u64)>)>>> = pool.install(|| {
                (bursts..bursts + batch)
                    .into_par_iter()
                    .map(|k| -> Result<_> {
                        let burst = sim.simulate(k, snr_db)?;
                        combos
                            .iter()
                            .zip(&active)
                            .map(|(&(d, l), &on)| {
                                if !on {
                                    return Ok(None);
                                }
                                let dec = detect_burst(&burst.band, d, l)?;
                                Ok(Some((dec.info.hamming(&burst.info) as u64, dec.units)))
                            })
                            .collect()
                    })
                    .collect::<Result<Vec<_>>>()
            })?;
            for per_burst in results {
                for (t, r) in tallies.iter_mut().zip(per_burst) {
                    if let Some((errors, units)) = r {
                        t.errors += errors;
                        t.bits += cfg.n_symbols as u64;
                        for (adds, symbols) in units {
                            t.report.record_unit(adds, symbols);
                        }
                    }
                }
            }
            bursts += batch;
            for t in &mut tallies {
                t.done |= t.errors >= cfg.min_errors;
            }
        }
        for (&(d, l), t) in combos.iter().zip(tallies) {
            records.push(BerRecord {
                detector: d,
                l,
                n: cfg.n_symbols,
                snr_db,
                bits: t.bits,
                errors: t.errors,
                ber: if t.bits == 0 {
                    0.0
                } else {
                    t.errors as f64 / t.bits as f64
                },
                adds_per_symbol_mean: t.report.adds_per_symbol_mean(),
                adds_per_symbol_max: t.report.adds_per_symbol_max(),
            });
            complexity.push(PointComplexity {
                l,
                snr_db,
                report: t.report,
            });
        }
    }
    sort_records(&mut records);
    complexity.sort_by(|a, b| {
        (a.report.detector.name(), a.l)
            .cmp(&(b.report.detector.name(), b.l))
            .then(a.snr_db.total_cmp(&b.snr_db))
    });
    Ok(SweepOutput {
        records,
        complexity,
    })
}

/// Orders records by detector name, then `L`, then ascending SNR.
pub fn sort_records(records: &mut [BerRecord]) {
    records.sort_by(|a, b| {
        (a.detector.name(), a.l, a.n)
            .cmp(&(b.detector.name(), b.l, b.n))
            .then(a.snr_db.total_cmp(&b.snr_db))
    });
}

/// SNR at which a BER curve crosses `target`, by linear interpolation of
/// `log10(BER)` between the bracketing points. `points` must be sorted by SNR.
pub fn snr_at_ber(points: &[(f64, f64)], target: f64) -> Option<f64> {
    let lt = target.log10();
    points.windows(2).find_map(|w| {
        let ((s0, b0), (s1, b1)) = (w[0], w[1]);
        if b0 >= target && b1 <= target && b0 > 0.0 {
            if b1 <= 0.0 {
                return Some(s1);
            }
            let (l0, l1) = (b0.log10(), b1.log10());
            if l0 == l1 {
                return Some(s0);
            }
            Some(s0 + (lt - l0) / (l1 - l0) * (s1 - s0))
        } else {
            None
        }
    })
}
