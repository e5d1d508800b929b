//! Receive-signal synthesis: `r(t) = sum_i b_i p(t - iT) + n(t)`.
//!
//! Pulse shaping, the multipath channel and the matched receive filter are
//! folded into a single unit-energy receive pulse `p`; the noise is white
//! Gaussian of two-sided PSD `N0/2` passed through the same receive filter.

mod channel;
mod pulse;
mod symbols;

pub use channel::{
    generate_channel, load_channel_trace, parse_channel_trace, rms_delay_spread, ChannelModel,
    ChannelRealization, SvParams,
};
pub use pulse::{
    gaussian_monocycle, measure_spectrum, synthesize_receive_pulse, PulseTemplate, ReceiveFilter,
    SpectrumMeasurement,
};
pub use symbols::{differential_decode, differential_encode, SymbolSeq};

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Result};
use crate::rng::rng_from_seed;

/// Burst timing, receiver and noise configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct BurstConfig {
    /// Number of information symbols `N`; the burst carries `N + 1` symbols.
    pub n_symbols: usize,
    pub sample_rate: f64,
    /// Samples per symbol period; `T = samples_per_symbol / sample_rate`.
    pub samples_per_symbol: usize,
    /// ACR integration time `T_i <= T`, truncated to whole samples.
    pub integration_time: f64,
    pub l_branches: usize,
    /// Two-sided noise PSD `N0/2`.
    pub noise_psd: f64,
}

impl BurstConfig {
    pub fn symbol_period(&self) -> f64 {
        self.samples_per_symbol as f64 / self.sample_rate
    }

    pub fn sample_period(&self) -> f64 {
        1.0 / self.sample_rate
    }

    /// Number of samples inside one ACR integration window.
    pub fn integration_samples(&self) -> usize {
        (self.integration_time * self.sample_rate * (1.0 + 1e-12)).floor() as usize
    }

    pub fn total_samples(&self) -> usize {
        (self.n_symbols + 1) * self.samples_per_symbol
    }

    /// Sets `N0/2` from `Eb/N0` in dB with `Eb = 1`; `+inf` gives a noiseless burst.
    pub fn with_ebn0_db(mut self, snr_db: f64) -> Self {
        self.noise_psd = if snr_db.is_infinite() && snr_db > 0.0 {
            0.0
        } else {
            0.5 * 10f64.powf(-snr_db / 10.0)
        };
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_symbols == 0 {
            return Err(invalid("n_symbols must be at least 1"));
        }
        if !(self.sample_rate > 0.0) || self.samples_per_symbol == 0 {
            return Err(invalid(
                "sample rate and samples per symbol must be positive",
            ));
        }
        if self.l_branches == 0 || self.l_branches > self.n_symbols {
            return Err(invalid(format!(
                "l_branches must satisfy 1 <= L <= N (L = {}, N = {})",
                self.l_branches, self.n_symbols
            )));
        }
        if !(self.integration_time > 0.0) || self.integration_samples() > self.samples_per_symbol {
            return Err(invalid("integration time must satisfy 0 < T_i <= T"));
        }
        if self.integration_samples() == 0 {
            return Err(invalid("integration window is shorter than one sample"));
        }
        if !(self.noise_psd >= 0.0) || !self.noise_psd.is_finite() {
            return Err(invalid("noise PSD must be finite and non-negative"));
        }
        Ok(())
    }
}

/// Synthesises the sampled receive signal of one burst.
///
/// `b` holds the `N + 1` transmit symbols. `filter` is the receive filter
/// that shapes the noise; it is ignored when `cfg.noise_psd == 0`, in which
/// case the output is the exact noiseless superposition.
pub fn synthesize_burst(
    b: &SymbolSeq,
    p: &PulseTemplate,
    filter: &ReceiveFilter,
    cfg: &BurstConfig,
    seed: u64,
) -> Result<Vec<f64>> {
    cfg.validate()?;
    if b.len() != cfg.n_symbols + 1 {
        return Err(invalid(format!(
            "burst needs {} transmit symbols, got {}",
            cfg.n_symbols + 1,
            b.len()
        )));
    }
    if p.samples.len() > cfg.samples_per_symbol {
        return Err(invalid("receive pulse is longer than one symbol period"));
    }
    let sps = cfg.samples_per_symbol;
    let mut r = vec![0.0; cfg.total_samples()];
    for (i, &bi) in b.iter().enumerate() {
        let frame = &mut r[i * sps..i * sps + p.samples.len()];
        for (x, &pv) in frame.iter_mut().zip(&p.samples) {
            *x = f64::from(bi) * pv;
        }
    }
    if cfg.noise_psd > 0.0 {
        add_filtered_noise(&mut r, filter, cfg, seed);
    }
    Ok(r)
}

/// Adds white Gaussian noise of two-sided PSD `N0/2` filtered by `filter`.
///
/// The white sequence has per-sample variance `(N0/2) / dt`; the discrete
/// convolution carries the `dt` of the continuous integral, so the filtered
/// variance is `(N0/2) * sum(h^2) * dt`.
fn add_filtered_noise(r: &mut [f64], filter: &ReceiveFilter, cfg: &BurstConfig, seed: u64) {
    let dt = cfg.sample_period();
    let taps: Vec<f64> = filter.taps.iter().map(|h| h * dt).collect();
    let k = taps.len();
    let white_std = (cfg.noise_psd / dt).sqrt();
    let mut rng = rng_from_seed(seed);
    let white: Vec<f64> = (0..r.len() + k - 1)
        .map(|_| white_std * rng.sample::<f64, _>(StandardNormal))
        .collect();
    // Taps reversed so each output is a forward dot product.
    let rev: Vec<f64> = taps.iter().rev().copied().collect();
    for (n, x) in r.iter_mut().enumerate() {
        let w = &white[n..n + k];
        *x += w.iter().zip(&rev).map(|(a, b)| a * b).sum::<f64>();
    }
}
