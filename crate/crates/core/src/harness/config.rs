use std::path::{Path, PathBuf};

use crate::detectors::DetectorKind;
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ChannelSpec {
    SvCm2,
    SingleTap,
    /// Channel trace file used for every burst.
    File(PathBuf),
}

impl std::str::FromStr for ChannelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "" => Err(invalid("empty channel spec")),
            "sv_cm2" => Ok(Self::SvCm2),
            "single_tap" => Ok(Self::SingleTap),
            path => Ok(Self::File(PathBuf::from(path))),
        }
    }
}

impl std::fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::SvCm2 => f.write_str("sv_cm2"),
            Self::SingleTap => f.write_str("single_tap"),
            Self::File(p) => write!(f, "{}", p.display()),
        }
    }
}

/// Monte Carlo sweep definition. Field names double as config-file keys.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// `Eb/N0` points in dB; `inf` runs noiseless.
    pub snr_db_list: Vec<f64>,
    pub n_symbols: usize,
    pub l_branches: Vec<usize>,
    pub detectors: Vec<DetectorKind>,
    pub channel: ChannelSpec,
    pub ti_seconds: f64,
    pub t_seconds: f64,
    pub center_freq: f64,
    pub bandwidth_10db: f64,
    pub sample_rate: f64,
    pub seed: u64,
    pub min_errors: u64,
    pub max_bursts: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            snr_db_list: vec![10.0],
            n_symbols: 100,
            l_branches: vec![10],
            detectors: vec![DetectorKind::Dd],
            channel: ChannelSpec::SvCm2,
            ti_seconds: 30e-9,
            t_seconds: 64e-9,
            center_freq: 2.25e9,
            bandwidth_10db: 3.3e9,
            sample_rate: 2.0e10,
            seed: 0,
            min_errors: 200,
            max_bursts: 1_000_000,
        }
    }
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>()
                .map_err(|e| invalid(format!("{key}: `{s}`: {e}")))
        })
        .collect()
}

fn parse_one<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .trim()
        .parse::<T>()
        .map_err(|e| invalid(format!("{key}: `{}`: {e}", value.trim())))
}

impl ExperimentConfig {
    pub const KEYS: [&'static str; 13] = [
        "snr_db_list",
        "n_symbols",
        "l_branches",
        "detectors",
        "channel",
        "ti_seconds",
        "t_seconds",
        "center_freq",
        "bandwidth_10db",
        "sample_rate",
        "seed",
        "min_errors",
        "max_bursts",
    ];

    /// Sets one field from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim() {
            "snr_db_list" => self.snr_db_list = parse_list(key, value)?,
            "n_symbols" => self.n_symbols = parse_one(key, value)?,
            "l_branches" => self.l_branches = parse_list(key, value)?,
            "detectors" => {
                self.detectors = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(str::parse)
                    .collect::<Result<_>>()?
            }
            "channel" => self.channel = value.parse()?,
            "ti_seconds" => self.ti_seconds = parse_one(key, value)?,
            "t_seconds" => self.t_seconds = parse_one(key, value)?,
            "center_freq" => self.center_freq = parse_one(key, value)?,
            "bandwidth_10db" => self.bandwidth_10db = parse_one(key, value)?,
            "sample_rate" => self.sample_rate = parse_one(key, value)?,
            "seed" => self.seed = parse_one(key, value)?,
            "min_errors" => self.min_errors = parse_one(key, value)?,
            "max_bursts" => self.max_bursts = parse_one(key, value)?,
            other => {
                return Err(invalid(format!(
                    "unknown key `{other}` (known: {})",
                    Self::KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Parses flat `key = value` text on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: n + 1,
                msg: "expected `key = value`".into(),
            })?;
            cfg.set(key, value).map_err(|e| match e {
                Error::InvalidParameter(msg) => Error::Parse { line: n + 1, msg },
                other => other,
            })?;
        }
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let join = |v: Vec<String>| v.join(",");
        [
            (
                "snr_db_list",
                join(self.snr_db_list.iter().map(f64::to_string).collect()),
            ),
            ("n_symbols", self.n_symbols.to_string()),
            (
                "l_branches",
                join(self.l_branches.iter().map(usize::to_string).collect()),
            ),
            (
                "detectors",
                join(
                    self.detectors
                        .iter()
                        .map(|d| d.name().to_string())
                        .collect(),
                ),
            ),
            ("channel", self.channel.to_string()),
            ("ti_seconds", self.ti_seconds.to_string()),
            ("t_seconds", self.t_seconds.to_string()),
            ("center_freq", self.center_freq.to_string()),
            ("bandwidth_10db", self.bandwidth_10db.to_string()),
            ("sample_rate", self.sample_rate.to_string()),
            ("seed", self.seed.to_string()),
            ("min_errors", self.min_errors.to_string()),
            ("max_bursts", self.max_bursts.to_string()),
        ]
        .iter()
        .map(|(k, v)| format!("{k} = {v}\n"))
        .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.snr_db_list.is_empty() || self.l_branches.is_empty() || self.detectors.is_empty() {
            return Err(invalid(
                "snr_db_list, l_branches and detectors must be non-empty",
            ));
        }
        if self
            .snr_db_list
            .iter()
            .any(|s| s.is_nan() || *s == f64::NEG_INFINITY)
        {
            return Err(invalid("SNR values must be numbers or +inf"));
        }
        if self.n_symbols == 0 {
            return Err(invalid("n_symbols must be at least 1"));
        }
        if let Some(l) = self
            .l_branches
            .iter()
            .find(|&&l| l == 0 || l > self.n_symbols)
        {
            return Err(invalid(format!(
                "L = {l} outside 1..=N ({})",
                self.n_symbols
            )));
        }
        if self.min_errors < 100 {
            return Err(invalid("min_errors must be at least 100"));
        }
        if self.max_bursts == 0 {
            return Err(invalid("max_bursts must be positive"));
        }
        if !(self.ti_seconds > 0.0 && self.ti_seconds <= self.t_seconds) {
            return Err(invalid("need 0 < ti_seconds <= t_seconds"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_roundtrip() {
        let text = "# sweep\nsnr_db_list = 4, 6,8\nn_symbols=15\nl_branches = 15\n\
                    detectors = dd,sbdfdd , bdfdd\nchannel = single_tap\nseed = 7\n";
        let cfg = ExperimentConfig::parse(text).unwrap();
        assert_eq!(cfg.snr_db_list, vec![4.0, 6.0, 8.0]);
        assert_eq!(cfg.n_symbols, 15);
        assert_eq!(
            cfg.detectors,
            vec![DetectorKind::Dd, DetectorKind::Sbdfdd, DetectorKind::Bdfdd]
        );
        assert_eq!(cfg.channel, ChannelSpec::SingleTap);
        assert_eq!(cfg.min_errors, 200);
        assert_eq!(ExperimentConfig::parse(&cfg.to_text()).unwrap(), cfg);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(
            ExperimentConfig::parse("n_symbols = 5\nbogus = 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            ExperimentConfig::parse("detectors = dd, turbo\n"),
            Err(Error::UnknownDetector { .. })
        ));
        assert!(ExperimentConfig::parse("no equals sign\n").is_err());
    }

    #[test]
    fn validation() {
        let mut cfg = ExperimentConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.min_errors = 10;
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig {
            l_branches: vec![200],
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig {
            detectors: vec![],
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::default();
        cfg.set("snr_db_list", "inf").unwrap();
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.channel, "sv_cm2".parse().unwrap());
        assert_eq!(
            "cir.txt".parse::<ChannelSpec>().unwrap(),
            ChannelSpec::File("cir.txt".into())
        );
    }
}
