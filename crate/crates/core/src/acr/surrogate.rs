//! Statistic-level Gaussian surrogate of the ACR output.
//!
//! `Z[l][i] = b_l b_i E_cap + eta` with independent zero-mean Gaussian `eta`.
//! The variance is the discrete signal x noise plus noise x noise
//! decomposition for noise of two-sided PSD `N0/2` shaped by the receive
//! filter `h`:
//!
//! ```text
//! rho[d]   = (N0/2) * sum_j h[j] h[j+d] * dt
//! var(eta) = dt^2 * ( 2 * sum_{k,m} p[k] p[m] rho[k-m] + sum_{k,m} rho[k-m]^2 )
//! ```
//!
//! with `k, m` ranging over one integration window. Cross-covariances between
//! statistics sharing a window are not modelled, so this is an approximation
//! for quick experiments; the harness always runs at waveform level.

use rand::Rng;
use rand_distr::StandardNormal;

use super::ZBand;
use crate::error::{invalid, Result};
use crate::rng::rng_from_seed;
use crate::waveform::{BurstConfig, PulseTemplate, ReceiveFilter, SymbolSeq};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZSurrogate {
    /// Captured energy `int_0^{T_i} p^2 dt`.
    pub e_cap: f64,
    /// Variance of the noise term of each statistic.
    pub noise_var: f64,
}

impl ZSurrogate {
    pub fn new(e_cap: f64, noise_var: f64) -> Result<Self> {
        if !(noise_var >= 0.0) || !noise_var.is_finite() || !e_cap.is_finite() {
            return Err(invalid(
                "surrogate needs finite E_cap and a non-negative variance",
            ));
        }
        Ok(Self { e_cap, noise_var })
    }

    pub fn from_pulse(
        p: &PulseTemplate,
        filter: &ReceiveFilter,
        cfg: &BurstConfig,
    ) -> Result<Self> {
        let dt = cfg.sample_period();
        let w = cfg.integration_samples();
        let e_cap = p.energy_within(w);
        let h = &filter.taps;
        let rho: Vec<f64> = (0..h.len())
            .map(|d| cfg.noise_psd * h.iter().zip(&h[d..]).map(|(a, b)| a * b).sum::<f64>() * dt)
            .collect();
        let lag = |k: usize, m: usize| rho.get(k.abs_diff(m)).copied().unwrap_or(0.0);

        let mut signal_noise = 0.0;
        let pw: Vec<f64> = (0..w)
            .map(|k| p.samples.get(k).copied().unwrap_or(0.0))
            .collect();
        for k in 0..w {
            if pw[k] == 0.0 {
                continue;
            }
            let lo = k.saturating_sub(rho.len() - 1);
            let hi = (k + rho.len()).min(w);
            signal_noise += pw[k] * (lo..hi).map(|m| pw[m] * lag(k, m)).sum::<f64>();
        }
        let noise_noise: f64 = rho
            .iter()
            .enumerate()
            .filter(|(d, _)| *d < w)
            .map(|(d, r)| {
                let pairs = if d == 0 { w } else { 2 * (w - d) };
                pairs as f64 * r * r
            })
            .sum();
        Self::new(e_cap, dt * dt * (2.0 * signal_noise + noise_noise))
    }
}

/// Draws a band of surrogate statistics for transmit symbols `b`.
pub fn model_z_direct(
    b: &SymbolSeq,
    model: &ZSurrogate,
    bandwidth: usize,
    seed: u64,
) -> Result<ZBand> {
    if b.len() < 2 {
        return Err(invalid("need at least two transmit symbols"));
    }
    let mut rng = rng_from_seed(seed);
    let sd = model.noise_var.sqrt();
    ZBand::from_fn(b.len() - 1, bandwidth.min(b.len() - 1), |l, i| {
        let noise: f64 = if sd > 0.0 {
            sd * rng.sample::<f64, _>(StandardNormal)
        } else {
            0.0
        };
        f64::from(b[l] * b[i]) * model.e_cap + noise
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_noise_is_exact_signal_term() {
        let b = SymbolSeq::new(vec![1, -1, -1, 1]).unwrap();
        let m = ZSurrogate::new(0.8, 0.0).unwrap();
        let band = model_z_direct(&b, &m, 3, 1).unwrap();
        assert_eq!(band.get(0, 1), -0.8);
        assert_eq!(band.get(1, 2), 0.8);
        assert_eq!(band.get(0, 3), 0.8);
    }

    #[test]
    fn seeded_and_validated() {
        let b = SymbolSeq::new(vec![1; 6]).unwrap();
        let m = ZSurrogate::new(0.8, 0.3).unwrap();
        assert_eq!(
            model_z_direct(&b, &m, 2, 5).unwrap(),
            model_z_direct(&b, &m, 2, 5).unwrap()
        );
        assert_ne!(
            model_z_direct(&b, &m, 2, 5).unwrap(),
            model_z_direct(&b, &m, 2, 6).unwrap()
        );
        assert!(ZSurrogate::new(0.8, -1.0).is_err());
    }
}
