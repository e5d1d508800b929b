use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, Exp, Normal};

use crate::error::{invalid, Error, Result};
use crate::rng::rng_from_seed;

/// Saleh-Valenzuela cluster/ray parameters. Rates in 1/s, times in s.
#[derive(Debug, Clone, PartialEq)]
pub struct SvParams {
    pub cluster_rate: f64,
    pub ray_rate: f64,
    pub cluster_decay: f64,
    pub ray_decay: f64,
    /// Log-normal fading standard deviation per cluster, dB.
    pub cluster_fading_db: f64,
    /// Log-normal fading standard deviation per ray, dB.
    pub ray_fading_db: f64,
    /// Rays arriving after this excess delay are discarded.
    pub max_excess_delay: f64,
    /// Documented mean RMS delay spread of the model.
    pub target_rms_delay_spread: f64,
}

impl SvParams {
    /// Indoor NLOS short-range parameter set (0-4 m): `Lambda = 0.4/ns`,
    /// `lambda = 0.5/ns`, `Gamma = 5.5 ns`, `gamma = 6.7 ns`, 3.4 dB
    /// cluster/ray fading, 8 ns nominal RMS delay spread, truncated at 60 ns.
    pub fn cm2() -> Self {
        Self {
            cluster_rate: 0.4e9,
            ray_rate: 0.5e9,
            cluster_decay: 5.5e-9,
            ray_decay: 6.7e-9,
            cluster_fading_db: 3.4,
            ray_fading_db: 3.4,
            max_excess_delay: 60e-9,
            target_rms_delay_spread: 8e-9,
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = [
            ("cluster_rate", self.cluster_rate),
            ("ray_rate", self.ray_rate),
            ("cluster_decay", self.cluster_decay),
            ("ray_decay", self.ray_decay),
            ("max_excess_delay", self.max_excess_delay),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.cluster_fading_db >= 0.0 && self.ray_fading_db >= 0.0) {
            return Err(invalid("fading deviations must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChannelModel {
    /// Degenerate AWGN channel: one tap at delay 0.
    SingleTap,
    SalehValenzuela(SvParams),
}

/// One multipath realisation, constant over a burst. Taps are sorted by
/// delay and `sum(gain^2) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub tap_delays: Vec<f64>,
    pub tap_gains: Vec<f64>,
    pub rng_seed: u64,
}

impl ChannelRealization {
    /// Builds a realisation from raw taps, sorting by delay and normalising energy.
    pub fn from_taps(mut taps: Vec<(f64, f64)>, rng_seed: u64) -> Result<Self> {
        if taps.is_empty() {
            return Err(invalid("channel needs at least one tap"));
        }
        if taps
            .iter()
            .any(|&(d, g)| !(d >= 0.0) || !d.is_finite() || !g.is_finite())
        {
            return Err(invalid(
                "tap delays must be finite and non-negative, gains finite",
            ));
        }
        taps.sort_by(|a, b| a.0.total_cmp(&b.0));
        let energy: f64 = taps.iter().map(|t| t.1 * t.1).sum();
        if !(energy > 0.0) {
            return Err(invalid("channel has zero energy"));
        }
        let scale = energy.sqrt().recip();
        Ok(Self {
            tap_delays: taps.iter().map(|t| t.0).collect(),
            tap_gains: taps.iter().map(|t| t.1 * scale).collect(),
            rng_seed,
        })
    }

    pub fn energy(&self) -> f64 {
        self.tap_gains.iter().map(|g| g * g).sum()
    }
}

pub fn generate_channel(model: &ChannelModel, seed: u64) -> Result<ChannelRealization> {
    let mut rng = rng_from_seed(seed);
    match model {
        ChannelModel::SingleTap => {
            let g = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            ChannelRealization::from_taps(vec![(0.0, g)], seed)
        }
        ChannelModel::SalehValenzuela(sv) => {
            sv.validate()?;
            let cluster_gap = Exp::new(sv.cluster_rate).map_err(|e| invalid(e.to_string()))?;
            let ray_gap = Exp::new(sv.ray_rate).map_err(|e| invalid(e.to_string()))?;
            let cluster_fade = Normal::new(0.0, sv.cluster_fading_db).unwrap();
            let ray_fade = Normal::new(0.0, sv.ray_fading_db).unwrap();

            let mut taps = Vec::new();
            let mut cluster_t = 0.0;
            while cluster_t <= sv.max_excess_delay {
                let cluster_db = cluster_fade.sample(&mut rng);
                let mut ray_t = 0.0;
                while cluster_t + ray_t <= sv.max_excess_delay {
                    let power = (-cluster_t / sv.cluster_decay - ray_t / sv.ray_decay).exp();
                    let fade = 10f64.powf((cluster_db + ray_fade.sample(&mut rng)) / 20.0);
                    let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                    taps.push((cluster_t + ray_t, sign * power.sqrt() * fade));
                    ray_t += ray_gap.sample(&mut rng);
                }
                cluster_t += cluster_gap.sample(&mut rng);
            }
            ChannelRealization::from_taps(taps, seed)
        }
    }
}

pub fn rms_delay_spread(ch: &ChannelRealization) -> f64 {
    let energy = ch.energy();
    let (m1, m2) = ch
        .tap_delays
        .iter()
        .zip(&ch.tap_gains)
        .fold((0.0, 0.0), |(m1, m2), (&d, &g)| {
            (m1 + g * g * d, m2 + g * g * d * d)
        });
    let (m1, m2) = (m1 / energy, m2 / energy);
    (m2 - m1 * m1).max(0.0).sqrt()
}

/// Parses a channel trace: one `delay_seconds<TAB>gain` per line, `#` starts
/// a comment. The result is normalised to unit energy.
pub fn parse_channel_trace(text: &str) -> Result<ChannelRealization> {
    let mut taps = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |msg: &str| Error::Parse {
            line: n + 1,
            msg: msg.to_string(),
        };
        let mut fields = line.split_whitespace();
        let delay: f64 = fields
            .next()
            .and_then(|f| f.parse().ok())
            .ok_or_else(|| parse_err("bad delay"))?;
        let gain: f64 = fields
            .next()
            .and_then(|f| f.parse().ok())
            .ok_or_else(|| parse_err("bad gain"))?;
        if fields.next().is_some() {
            return Err(parse_err("expected two columns"));
        }
        taps.push((delay, gain));
    }
    ChannelRealization::from_taps(taps, 0)
}

pub fn load_channel_trace(path: impl AsRef<Path>) -> Result<ChannelRealization> {
    parse_channel_trace(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_tap() {
        for seed in 0..8 {
            let ch = generate_channel(&ChannelModel::SingleTap, seed).unwrap();
            assert_eq!(ch.tap_delays, vec![0.0]);
            assert_eq!(ch.tap_gains[0].abs(), 1.0);
        }
    }

    #[test]
    fn deterministic_and_normalised() {
        let model = ChannelModel::SalehValenzuela(SvParams::cm2());
        let a = generate_channel(&model, 42).unwrap();
        assert_eq!(a, generate_channel(&model, 42).unwrap());
        assert_ne!(a, generate_channel(&model, 43).unwrap());
        assert!((a.energy() - 1.0).abs() < 1e-9);
        assert!(a.tap_delays.windows(2).all(|w| w[0] <= w[1]));
        assert!(a.tap_delays.iter().all(|&d| (0.0..=60e-9).contains(&d)));
    }

    #[test]
    fn mean_rms_delay_spread_near_target() {
        let sv = SvParams::cm2();
        let model = ChannelModel::SalehValenzuela(sv.clone());
        let mean = (0..1000)
            .map(|s| rms_delay_spread(&generate_channel(&model, s).unwrap()))
            .sum::<f64>()
            / 1000.0;
        let rel = mean / sv.target_rms_delay_spread - 1.0;
        assert!(rel.abs() <= 0.25, "mean rms {mean:.3e}");
    }

    #[test]
    fn rejects_negative_parameters() {
        let mut sv = SvParams::cm2();
        sv.ray_decay = -1.0;
        assert!(generate_channel(&ChannelModel::SalehValenzuela(sv), 0).is_err());
        let mut sv = SvParams::cm2();
        sv.cluster_rate = -0.4e9;
        assert!(generate_channel(&ChannelModel::SalehValenzuela(sv), 0).is_err());
    }

    #[test]
    fn trace_file_roundtrip() {
        let text = "# delay\tgain\n0\t3.0\n2e-9\t-4.0 # second path\n\n";
        let ch = parse_channel_trace(text).unwrap();
        assert_eq!(ch.tap_delays, vec![0.0, 2e-9]);
        assert!((ch.tap_gains[0] - 0.6).abs() < 1e-12);
        assert!((ch.tap_gains[1] + 0.8).abs() < 1e-12);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cir.txt");
        std::fs::write(&path, text).unwrap();
        assert_eq!(load_channel_trace(&path).unwrap(), ch);

        assert!(matches!(
            parse_channel_trace("0\tx\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_channel_trace("# nothing\n").is_err());
    }
}
