//! Decision units operating on ACR statistics.
//!
//! Block detectors (`inse`, `msdd*`, `bdfdd`, `sbdfdd`) work on
//! [`ZMatrix`] blocks of `L + 1` transmit symbols with the block reference
//! fixed to `+1`; streaming detectors (`dd`, `va`, `cdfdd`) work on the
//! whole-burst [`ZBand`]. Tie rules everywhere: `sign(0) = +1`, argmax ties
//! pick the lowest index, equal-metric leaves keep the first found.

mod dfdd;
mod exhaustive;
mod sphere;
mod viterbi;

use std::fmt;
use std::str::FromStr;

pub use dfdd::{bdfdd, bdfdd_counted, cdfdd, cdfdd_counted, sbdfdd, sbdfdd_counted};
pub use exhaustive::{
    inse_bruteforce, inse_objective, msdd_bruteforce, msdd_metric, INSE_MAX_SYMBOLS,
    MSDD_BRUTEFORCE_MAX_SYMBOLS,
};
pub use sphere::{
    dd_initial_radius, dd_initial_radius_counted, msdd_sd, path_metric_counted, sort_for_sd,
    sort_for_sd_counted, stopping_radius, DecisionOrder, SdTrace, Termination,
};
pub use viterbi::{viterbi, viterbi_counted, VITERBI_MAX_MEMORY};

use crate::acr::{block_layout, ZBand, ZMatrix};
use crate::complexity::AddCounter;
use crate::error::{invalid, Error, Result};
use crate::sign;
use crate::waveform::SymbolSeq;

/// Conventional differential detection `a_i = sign(Z[i-1][i])`.
pub fn dd(band: &ZBand) -> SymbolSeq {
    SymbolSeq::from_vec_unchecked(
        (1..=band.n_symbols())
            .map(|i| sign(band.get(i - 1, i)))
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitialRadius {
    #[default]
    Infinite,
    /// Start from the metric of the block's DD sequence.
    DdMetric,
}

/// Sphere-decoder acceleration switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetectorOptions {
    pub use_stopping_radius: bool,
    pub initial_radius: InitialRadius,
    pub sort_input: bool,
}

impl Default for DetectorOptions {
    fn default() -> Self {
        Self {
            use_stopping_radius: true,
            initial_radius: InitialRadius::Infinite,
            sort_input: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DetectorKind {
    Dd,
    Inse,
    Msdd,
    MsddNoSort,
    MsddDdInit,
    MsddNoStop,
    Va,
    Bdfdd,
    Sbdfdd,
    Cdfdd,
}

impl DetectorKind {
    pub const ALL: [DetectorKind; 10] = [
        Self::Dd,
        Self::Inse,
        Self::Msdd,
        Self::MsddNoSort,
        Self::MsddDdInit,
        Self::MsddNoStop,
        Self::Va,
        Self::Bdfdd,
        Self::Sbdfdd,
        Self::Cdfdd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Dd => "dd",
            Self::Inse => "inse",
            Self::Msdd => "msdd",
            Self::MsddNoSort => "msdd-nosort",
            Self::MsddDdInit => "msdd-ddinit",
            Self::MsddNoStop => "msdd-nostop",
            Self::Va => "va",
            Self::Bdfdd => "bdfdd",
            Self::Sbdfdd => "sbdfdd",
            Self::Cdfdd => "cdfdd",
        }
    }

    pub fn allowed_names() -> String {
        Self::ALL
            .iter()
            .map(|k| k.name())
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Sphere-decoder options of the MSDD variants.
    pub fn sd_options(self) -> Option<DetectorOptions> {
        let base = DetectorOptions::default();
        match self {
            Self::Msdd => Some(base),
            Self::MsddNoSort => Some(DetectorOptions {
                sort_input: false,
                ..base
            }),
            Self::MsddDdInit => Some(DetectorOptions {
                initial_radius: InitialRadius::DdMetric,
                ..base
            }),
            Self::MsddNoStop => Some(DetectorOptions {
                use_stopping_radius: false,
                ..base
            }),
            _ => None,
        }
    }

    /// Band width the detector needs for memory/block length `l` on a burst of `n`.
    pub fn required_bandwidth(self, l: usize, n: usize) -> usize {
        match self {
            Self::Dd => 1,
            Self::Inse => n,
            _ => l.min(n),
        }
    }
}

impl fmt::Display for DetectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DetectorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownDetector {
                name: s.to_string(),
                allowed: Self::allowed_names(),
            })
    }
}

/// Information-symbol decisions of one burst plus the add count of each
/// processing unit as `(adds, symbols)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BurstDecision {
    pub info: SymbolSeq,
    pub units: Vec<(u64, u64)>,
}

fn detect_block(z: &ZMatrix, kind: DetectorKind, counter: &mut AddCounter) -> Result<SymbolSeq> {
    Ok(match kind {
        DetectorKind::Bdfdd => bdfdd_counted(z, counter),
        DetectorKind::Sbdfdd => sbdfdd_counted(z, counter).0,
        DetectorKind::Inse => inse_bruteforce(z)?,
        k => {
            let opts = k.sd_options().expect("block detector");
            let trace = msdd_sd(z, &opts);
            counter.charge(trace.adds);
            trace.best_sequence
        }
    })
}

/// Detects the `N` information symbols of a burst from its band statistics.
///
/// Block detectors split the burst into blocks of `l` (the last one
/// shortened to `N mod l`), fix each block reference to `+1` and decode
/// `a_k = b_k b_{k-1}` inside the block. `inse` ignores `l` and treats the
/// whole burst as one block. `dd` uses only the lag-1 statistics.
pub fn detect_burst(band: &ZBand, kind: DetectorKind, l: usize) -> Result<BurstDecision> {
    let n = band.n_symbols();
    if l == 0 {
        return Err(invalid("L must be at least 1"));
    }
    let need = kind.required_bandwidth(l, n);
    if band.bandwidth() < need {
        return Err(invalid(format!(
            "{kind} with L = {l} needs band width {need}, have {}",
            band.bandwidth()
        )));
    }
    let decode = |b: &SymbolSeq| -> SymbolSeq {
        SymbolSeq::from_vec_unchecked(b.as_slice().windows(2).map(|w| w[0] * w[1]).collect())
    };
    match kind {
        DetectorKind::Dd => Ok(BurstDecision {
            info: dd(band),
            units: vec![(0, n as u64)],
        }),
        DetectorKind::Va | DetectorKind::Cdfdd => {
            let mut counter = AddCounter::new();
            let b = if kind == DetectorKind::Va {
                viterbi_counted(band, l.min(n), &mut counter)?
            } else {
                cdfdd_counted(band, l.min(n), &mut counter)?
            };
            Ok(BurstDecision {
                info: decode(&b),
                units: vec![(counter.adds(), n as u64)],
            })
        }
        _ => {
            let spans = if kind == DetectorKind::Inse {
                block_layout(n, n)
            } else {
                block_layout(n, l)
            };
            let mut info = Vec::with_capacity(n);
            let mut units = Vec::with_capacity(spans.len());
            for span in spans {
                let z = band.block(span.start, span.len)?;
                let mut counter = AddCounter::new();
                let b = detect_block(&z, kind, &mut counter)?;
                info.extend(decode(&b).into_vec());
                units.push((counter.adds(), span.len as u64));
            }
            Ok(BurstDecision {
                info: SymbolSeq::from_vec_unchecked(info),
                units,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use crate::waveform::differential_encode;

    #[test]
    fn dd_signs_and_ties() {
        let band = ZBand::from_fn(3, 1, |l, _| [-0.3, 0.0, 0.2][l]).unwrap();
        assert_eq!(dd(&band).as_slice(), &[-1, 1, 1]);
    }

    #[test]
    fn names_roundtrip() {
        for k in DetectorKind::ALL {
            assert_eq!(k.name().parse::<DetectorKind>().unwrap(), k);
        }
        let err = "msdd2".parse::<DetectorKind>().unwrap_err();
        assert!(err.to_string().contains("msdd-nosort"));
    }

    #[test]
    fn noiseless_recovery_for_every_detector() {
        let mut rng = rng_from_seed(21);
        for n in [1usize, 2, 5, 12] {
            let a = SymbolSeq::new(
                (0..n)
                    .map(|_| {
                        if rand::Rng::gen::<bool>(&mut rng) {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect(),
            )
            .unwrap();
            let b = differential_encode(&a, 1).unwrap();
            let band = ZBand::from_fn(n, n, |l, i| 0.9 * f64::from(b[l] * b[i])).unwrap();
            for kind in DetectorKind::ALL {
                for l in 1..=n {
                    let d = detect_burst(&band, kind, l).unwrap();
                    assert_eq!(d.info, a, "{kind} L = {l}");
                }
            }
        }
    }

    #[test]
    fn block_units_follow_layout() {
        let z = ZMatrix::random(6, &mut rng_from_seed(2));
        let band = ZBand::from(&z);
        let d = detect_burst(&band, DetectorKind::Bdfdd, 2).unwrap();
        assert_eq!(d.units, vec![(1, 2), (1, 2), (0, 1)]);
        assert_eq!(d.info.len(), 5);
        let d = detect_burst(&band, DetectorKind::Sbdfdd, 2).unwrap();
        assert_eq!(
            d.units.iter().map(|u| u.1).collect::<Vec<_>>(),
            vec![2, 2, 1]
        );
    }

    #[test]
    fn every_detector_is_dd_at_l_one() {
        let mut rng = rng_from_seed(8);
        for _ in 0..100 {
            let z = ZMatrix::random(9, &mut rng);
            let band = ZBand::from(&z);
            let reference = dd(&band);
            for kind in DetectorKind::ALL
                .into_iter()
                .filter(|k| *k != DetectorKind::Inse)
            {
                assert_eq!(
                    detect_burst(&band, kind, 1).unwrap().info,
                    reference,
                    "{kind}"
                );
            }
        }
    }

    #[test]
    fn bandwidth_is_checked() {
        let band = ZBand::from_fn(6, 2, |_, _| 1.0).unwrap();
        assert!(detect_burst(&band, DetectorKind::Msdd, 3).is_err());
        assert!(detect_burst(&band, DetectorKind::Inse, 2).is_err());
        assert!(detect_burst(&band, DetectorKind::Dd, 5).is_ok());
    }
}
