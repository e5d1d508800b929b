use std::f64::consts::PI;

use super::channel::ChannelRealization;
use crate::error::{invalid, Error, Result};

/// A sampled pulse. Sample 0 sits at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseTemplate {
    pub samples: Vec<f64>,
    pub sample_rate: f64,
    pub center_freq: f64,
    pub bandwidth_10db: f64,
}

impl PulseTemplate {
    pub fn sample_period(&self) -> f64 {
        1.0 / self.sample_rate
    }

    /// Rectangle-rule energy `sum(s^2) * dt`.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|s| s * s).sum::<f64>() * self.sample_period()
    }

    /// Energy inside `[0, t)`, e.g. the ACR's captured energy for `t = T_i`.
    pub fn energy_within(&self, n_samples: usize) -> f64 {
        self.samples
            .iter()
            .take(n_samples)
            .map(|s| s * s)
            .sum::<f64>()
            * self.sample_period()
    }

    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate
    }

    fn normalize(&mut self) {
        let scale = self.energy().sqrt().recip();
        self.samples.iter_mut().for_each(|s| *s *= scale);
    }
}

/// Receive filter matched to the transmit pulse.
///
/// Taps are impulse-response samples in 1/s, scaled so the peak magnitude of
/// the frequency response is 1. White noise of PSD `N0/2` then leaves the
/// filter with variance `N0/2 * energy()`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReceiveFilter {
    pub taps: Vec<f64>,
    pub sample_rate: f64,
}

impl ReceiveFilter {
    pub fn matched_to(tx: &PulseTemplate) -> Self {
        let mut filter = Self {
            taps: tx.samples.iter().rev().copied().collect(),
            sample_rate: tx.sample_rate,
        };
        let scale = filter.peak_gain().recip();
        filter.taps.iter_mut().for_each(|h| *h *= scale);
        filter
    }

    /// `int h^2 dt`, equal to the two-sided noise bandwidth in Hz.
    pub fn energy(&self) -> f64 {
        self.taps.iter().map(|h| h * h).sum::<f64>() / self.sample_rate
    }

    /// Largest `|H(f)|` over a uniform grid on `[0, fs/2]`.
    pub fn peak_gain(&self) -> f64 {
        const GRID: usize = 8192;
        let dt = self.sample_rate.recip();
        (0..=GRID)
            .map(|g| {
                let w = std::f64::consts::PI * g as f64 / GRID as f64;
                let (re, im) = self
                    .taps
                    .iter()
                    .enumerate()
                    .fold((0.0, 0.0), |(re, im), (k, h)| {
                        let (s, c) = (w * k as f64).sin_cos();
                        (re + h * c, im - h * s)
                    });
                dt * re.hypot(im)
            })
            .fold(0.0, f64::max)
    }
}

/// Odd-symmetric Gaussian monocycle `sin(2 pi f_c t) exp(-t^2 / 2 sigma^2)`.
///
/// The envelope width `sigma` is solved so that the -10 dB bandwidth of the
/// continuous pulse equals `bandwidth_10db`; a plain Gaussian derivative has
/// a fixed fractional bandwidth and cannot match arbitrary requests. The
/// output is DC-free and has unit energy.
pub fn gaussian_monocycle(
    center_freq: f64,
    bandwidth_10db: f64,
    sample_rate: f64,
) -> Result<PulseTemplate> {
    if !(center_freq > 0.0 && bandwidth_10db > 0.0 && sample_rate > 0.0) {
        return Err(invalid("pulse frequencies must be positive"));
    }
    let min_rate = 4.0 * (center_freq + bandwidth_10db / 2.0);
    if sample_rate < min_rate {
        return Err(invalid(format!(
            "sample rate {sample_rate:.4e} Hz below the oversampling minimum {min_rate:.4e} Hz"
        )));
    }

    let f_max = sample_rate / 2.0;
    let bandwidth_of = |sigma: f64| {
        let g = |f: f64| (-2.0 * PI * PI * sigma * sigma * f * f).exp();
        measure_magnitude(|f| (g(f - center_freq) - g(f + center_freq)).abs(), f_max).bandwidth_10db
    };

    // Bandwidth shrinks monotonically as the envelope widens.
    let (mut lo, mut hi) = (0.02 / bandwidth_10db, 20.0 / bandwidth_10db);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if bandwidth_of(mid) > bandwidth_10db {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let sigma = 0.5 * (lo + hi);

    let half = (5.0 * sigma * sample_rate).ceil() as i64;
    let samples = (-half..=half)
        .map(|k| {
            let t = k as f64 / sample_rate;
            (2.0 * PI * center_freq * t).sin() * (-t * t / (2.0 * sigma * sigma)).exp()
        })
        .collect();
    let mut pulse = PulseTemplate {
        samples,
        sample_rate,
        center_freq,
        bandwidth_10db,
    };
    pulse.normalize();
    Ok(pulse)
}

/// Spectral peak and -10 dB bandwidth of a magnitude response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumMeasurement {
    pub peak_freq: f64,
    pub bandwidth_10db: f64,
    pub lower_10db: f64,
    pub upper_10db: f64,
}

const SPECTRUM_GRID: usize = 20_000;

fn measure_magnitude(mag: impl Fn(f64) -> f64, f_max: f64) -> SpectrumMeasurement {
    let step = f_max / SPECTRUM_GRID as f64;
    let grid: Vec<f64> = (0..=SPECTRUM_GRID).map(|k| mag(k as f64 * step)).collect();
    let (peak_idx, &peak) = grid
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty grid");
    let level = peak / 10f64.sqrt();
    let crossing = |k_in: usize, k_out: usize| {
        let (a, b) = (grid[k_in], grid[k_out]);
        let t = (a - level) / (a - b);
        (k_in as f64 + t * (k_out as f64 - k_in as f64)) * step
    };
    let lower = (1..=peak_idx)
        .rev()
        .find(|&k| grid[k - 1] < level)
        .map_or(0.0, |k| crossing(k, k - 1));
    let upper = (peak_idx..SPECTRUM_GRID)
        .find(|&k| grid[k + 1] < level)
        .map_or(f_max, |k| crossing(k, k + 1));
    SpectrumMeasurement {
        peak_freq: peak_idx as f64 * step,
        bandwidth_10db: upper - lower,
        lower_10db: lower,
        upper_10db: upper,
    }
}

/// Measures a sampled pulse through its discrete-time Fourier transform.
pub fn measure_spectrum(pulse: &PulseTemplate) -> SpectrumMeasurement {
    let fs = pulse.sample_rate;
    measure_magnitude(
        |f| {
            let w = 2.0 * PI * f / fs;
            let (re, im) =
                pulse
                    .samples
                    .iter()
                    .enumerate()
                    .fold((0.0, 0.0), |(re, im), (k, &s)| {
                        let ph = w * k as f64;
                        (re + s * ph.cos(), im - s * ph.sin())
                    });
            re.hypot(im)
        },
        fs / 2.0,
    )
}

/// `p = tx * channel * h` with `h` the matched filter, scaled so that `p`
/// has unit energy. Returns `p` together with that scaled `h`.
///
/// Noise must be filtered by the returned filter: the pulse at the receiver
/// input has unit energy, so `Eb/N0` keeps its input-referred meaning and
/// the filter's own gain cancels out.
///
/// Channel taps are placed on the nearest sample. Fails with
/// [`Error::IsiViolation`] if more than `1e-6` of the energy falls outside
/// `[0, symbol_period)`; otherwise the tail is cut at the symbol period.
pub fn synthesize_receive_pulse(
    tx: &PulseTemplate,
    channel: &ChannelRealization,
    symbol_period: f64,
) -> Result<(PulseTemplate, ReceiveFilter)> {
    if tx.samples.is_empty() {
        return Err(invalid("empty transmit pulse"));
    }
    let fs = tx.sample_rate;
    let dt = 1.0 / fs;
    let k = tx.samples.len();
    // Pulse autocorrelation: tx convolved with its time reverse.
    let autocorr: Vec<f64> = (0..2 * k - 1)
        .map(|n| {
            let lag = n as i64 - (k as i64 - 1);
            (0..k as i64)
                .filter_map(|j| {
                    let m = j + lag;
                    (0..k as i64)
                        .contains(&m)
                        .then(|| tx.samples[j as usize] * tx.samples[m as usize])
                })
                .sum::<f64>()
                * dt
        })
        .collect();

    let offsets: Vec<usize> = channel
        .tap_delays
        .iter()
        .map(|d| (d * fs).round() as usize)
        .collect();
    let len = offsets.iter().max().copied().unwrap_or(0) + autocorr.len();
    let mut samples = vec![0.0; len];
    for (&off, &g) in offsets.iter().zip(&channel.tap_gains) {
        for (s, &r) in samples[off..].iter_mut().zip(&autocorr) {
            *s += g * r;
        }
    }
    let mut pulse = PulseTemplate {
        samples,
        sample_rate: fs,
        center_freq: tx.center_freq,
        bandwidth_10db: tx.bandwidth_10db,
    };
    let raw = pulse.energy();
    if !(raw > 0.0) {
        return Err(invalid("receive pulse has zero energy"));
    }
    let mut gain = raw.sqrt().recip();
    pulse.normalize();

    let period_samples = (symbol_period * fs).round() as usize;
    if pulse.samples.len() > period_samples {
        let inside = pulse.energy_within(period_samples);
        if 1.0 - inside > 1e-6 {
            return Err(Error::IsiViolation {
                outside_fraction: 1.0 - inside,
            });
        }
        pulse.samples.truncate(period_samples);
        gain /= pulse.energy().sqrt();
        pulse.normalize();
    }
    let filter = ReceiveFilter {
        taps: tx.samples.iter().rev().map(|s| s * gain).collect(),
        sample_rate: fs,
    };
    Ok((pulse, filter))
}
