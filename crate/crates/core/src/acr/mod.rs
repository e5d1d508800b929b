//! L-branch autocorrelation receiver.
//!
//! For symbol interval `i` and lag `l = 1..L` the front-end integrates
//! `Z[i-l][i] = int_0^{T_i} r(t + (i-l)T) r(t + iT) dt` with the rectangle
//! rule at the simulation rate. `T_i` is truncated to whole samples.

mod band;
mod matrix;
mod surrogate;

pub use band::ZBand;
pub use matrix::ZMatrix;
pub use surrogate::{model_z_direct, ZSurrogate};

use crate::error::{Error, Result};
use crate::waveform::BurstConfig;

/// One block of the burst: information symbols `start+1 ..= start+len`,
/// i.e. transmit symbols `start ..= start+len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSpan {
    pub start: usize,
    pub len: usize,
}

/// Splits `n` information symbols into blocks of `l` overlapping by one
/// transmit symbol. The final block is shortened to `n mod l` when nonzero.
pub fn block_layout(n: usize, l: usize) -> Vec<BlockSpan> {
    assert!(l >= 1, "block length must be positive");
    (0..n)
        .step_by(l)
        .map(|start| BlockSpan {
            start,
            len: l.min(n - start),
        })
        .collect()
}

fn window<'a>(r: &'a [f64], symbol: usize, cfg: &BurstConfig) -> Result<&'a [f64]> {
    let begin = symbol * cfg.samples_per_symbol;
    let end = begin + cfg.integration_samples();
    r.get(begin..end).ok_or_else(|| {
        Error::IndexOutOfRange(format!(
            "integration window of symbol {symbol} ends at sample {end}, signal has {}",
            r.len()
        ))
    })
}

fn correlate_windows(a: &[f64], b: &[f64], dt: f64) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() * dt
}

/// `Z[i-l][i]` for lag `l >= 1`.
pub fn acr_correlate(r: &[f64], i: usize, l: usize, cfg: &BurstConfig) -> Result<f64> {
    if l == 0 || l > i {
        return Err(Error::IndexOutOfRange(format!(
            "lag {l} invalid for symbol {i}"
        )));
    }
    let a = window(r, i - l, cfg)?;
    let b = window(r, i, cfg)?;
    Ok(correlate_windows(a, b, cfg.sample_period()))
}

/// All pairwise statistics of the block of `block_len` information symbols
/// starting at transmit symbol `block_start`.
pub fn build_block_z(
    r: &[f64],
    block_start: usize,
    block_len: usize,
    cfg: &BurstConfig,
) -> Result<ZMatrix> {
    let windows = (block_start..=block_start + block_len)
        .map(|s| window(r, s, cfg))
        .collect::<Result<Vec<_>>>()?;
    let dt = cfg.sample_period();
    ZMatrix::from_upper(block_len + 1, |l, i| {
        correlate_windows(windows[l], windows[i], dt)
    })
}

/// Banded statistics of the whole burst with bandwidth `cfg.l_branches`.
pub fn build_z_band(r: &[f64], cfg: &BurstConfig) -> Result<ZBand> {
    let windows = (0..=cfg.n_symbols)
        .map(|s| window(r, s, cfg))
        .collect::<Result<Vec<_>>>()?;
    let dt = cfg.sample_period();
    ZBand::from_fn(cfg.n_symbols, cfg.l_branches, |l, i| {
        correlate_windows(windows[l], windows[i], dt)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveform::{
        differential_encode, gaussian_monocycle, generate_channel, synthesize_burst,
        synthesize_receive_pulse, ChannelModel, PulseTemplate, ReceiveFilter, SvParams, SymbolSeq,
    };

    fn setup(n: usize, l: usize, seed: u64) -> (PulseTemplate, ReceiveFilter, BurstConfig) {
        let tx = gaussian_monocycle(2.25e9, 3.3e9, 2.0e10).unwrap();
        let ch = generate_channel(&ChannelModel::SalehValenzuela(SvParams::cm2()), seed).unwrap();
        let (p, filter) = synthesize_receive_pulse(&tx, &ch, 64e-9).unwrap();
        let cfg = BurstConfig {
            n_symbols: n,
            sample_rate: 2.0e10,
            samples_per_symbol: 1280,
            integration_time: 30e-9,
            l_branches: l,
            noise_psd: 0.0,
        };
        (p, filter, cfg)
    }

    #[test]
    fn layout_examples() {
        let spans: Vec<(usize, usize)> = block_layout(5, 2)
            .iter()
            .map(|b| (b.start, b.len))
            .collect();
        assert_eq!(spans, vec![(0, 2), (2, 2), (4, 1)]);
        assert_eq!(block_layout(6, 3).len(), 2);
        assert_eq!(block_layout(7, 10), vec![BlockSpan { start: 0, len: 7 }]);
    }

    #[test]
    fn noiseless_statistics_follow_sign_pattern() {
        let (p, filter, cfg) = setup(6, 3, 2);
        let e_cap = p.energy_within(cfg.integration_samples());
        let b = SymbolSeq::new(vec![1, 1, -1, -1, 1, -1, 1]).unwrap();
        let r = synthesize_burst(&b, &p, &filter, &cfg, 0).unwrap();
        for i in 1..=6 {
            for l in 1..=i {
                let z = acr_correlate(&r, i, l, &cfg).unwrap();
                let expect = f64::from(b[i - l] * b[i]) * e_cap;
                assert!((z - expect).abs() < 1e-12, "{z} vs {expect}");
            }
        }
        assert!(acr_correlate(&r, 2, 3, &cfg).is_err());
        assert!(acr_correlate(&r, 7, 1, &cfg).is_err());
    }

    #[test]
    fn block_matrix_matches_hand_pattern() {
        let (p, filter, cfg) = setup(2, 2, 3);
        let e_cap = p.energy_within(cfg.integration_samples());
        let b = SymbolSeq::new(vec![1, 1, -1]).unwrap();
        let r = synthesize_burst(&b, &p, &filter, &cfg, 0).unwrap();
        let z = build_block_z(&r, 0, 2, &cfg).unwrap();
        let pattern = [[0.0, 1.0, -1.0], [1.0, 0.0, -1.0], [-1.0, -1.0, 0.0]];
        for (l, row) in pattern.iter().enumerate() {
            for (i, s) in row.iter().enumerate() {
                assert!((z.get(l, i) - s * e_cap).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn band_and_blocks_agree_on_noisy_burst() {
        let (p, filter, cfg) = setup(9, 4, 5);
        let cfg = cfg.with_ebn0_db(8.0);
        let a = SymbolSeq::new(vec![1, -1, -1, 1, 1, -1, 1, 1, -1]).unwrap();
        let b = differential_encode(&a, 1).unwrap();
        let r = synthesize_burst(&b, &p, &filter, &cfg, 17).unwrap();
        let band = build_z_band(&r, &cfg).unwrap();
        assert_eq!(band.entry_count(), 30);
        for span in block_layout(9, 4) {
            let zm = build_block_z(&r, span.start, span.len, &cfg).unwrap();
            assert!(zm.is_symmetric_zero_diagonal());
            assert_eq!(zm, band.block(span.start, span.len).unwrap());
        }
        for i in 1..=9usize {
            for l in i.saturating_sub(4)..i {
                assert_eq!(band.get(l, i), acr_correlate(&r, i, i - l, &cfg).unwrap());
            }
        }
    }
}
