//! Real-valued addition counting for the decision units.
//!
//! Accounting rules:
//!
//! - one add per binary addition or subtraction of two real values;
//! - sign inversion, absolute value, sign extraction and comparisons are free
//!   (binary alphabet, two's-complement arithmetic);
//! - the first term accumulated into a zero-initialised accumulator is free,
//!   so a sum of `n` terms costs `n - 1` adds;
//! - the ACR front-end, DD decisions, the stopping-radius computation and the
//!   final differential decoding are not counted.
//!
//! With these rules the closed forms in this module are exact.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::io::Write;

use crate::detectors::DetectorKind;

/// Counts additions as they are performed.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct AddCounter {
    adds: u64,
}

impl AddCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn adds(&self) -> u64 {
        self.adds
    }

    /// Books adds counted elsewhere, e.g. by a sub-detector.
    pub fn charge(&mut self, adds: u64) {
        self.adds += adds;
    }

    #[inline]
    pub fn add(&mut self, a: f64, b: f64) -> f64 {
        self.adds += 1;
        a + b
    }

    #[inline]
    pub fn sub(&mut self, a: f64, b: f64) -> f64 {
        self.adds += 1;
        a - b
    }

    /// Sums `terms` into a fresh accumulator: `n` terms cost `n - 1` adds.
    #[inline]
    pub fn sum(&mut self, terms: impl IntoIterator<Item = f64>) -> f64 {
        let mut it = terms.into_iter();
        let Some(first) = it.next() else { return 0.0 };
        it.fold(first, |acc, t| self.add(acc, t))
    }
}

/// `L(L-1)/2` adds per block of `L` for block-wise DF-DD, sorted or not.
pub fn bdfdd_block_adds(l: u64) -> u64 {
    l * l.saturating_sub(1) / 2
}

/// `L - 1` adds per symbol for continuous DF-DD in steady state.
pub fn cdfdd_steady_adds(l: u64) -> u64 {
    l.saturating_sub(1)
}

/// `L(L+1) - 1` adds: one metric path evaluated step by step, the SD best
/// case and the cost of a DD initial radius.
pub fn sd_path_adds(l: u64) -> u64 {
    l * (l + 1) - 1
}

/// Upper bound `L 2^(L+1)` on the SD search adds of one block.
pub fn sd_worst_case_bound(l: u64) -> u64 {
    l << (l + 1)
}

/// Measured steady-state VA cost per symbol: each of the `2^L` states
/// sums `L` statistics (`L - 1` adds) shared by both branch signs, then adds
/// the branch metric to the path metric for each branch.
pub fn va_measured_adds_per_symbol(l: u64) -> u64 {
    (l + 1) << l
}

/// The `2L` adds per state figure quoted for the VA, `2L 2^L` per symbol.
pub fn va_quoted_adds_per_symbol(l: u64) -> u64 {
    (2 * l) << l
}

/// Adds-per-symbol value of one processing unit: `adds / symbols`, reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bucket {
    adds: u64,
    symbols: u64,
}

impl Bucket {
    pub fn new(adds: u64, symbols: u64) -> Self {
        assert!(symbols > 0, "a unit covers at least one symbol");
        let g = gcd(adds, symbols);
        Self {
            adds: adds / g,
            symbols: symbols / g,
        }
    }

    pub fn value(&self) -> f64 {
        self.adds as f64 / self.symbols as f64
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl Ord for Bucket {
    fn cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.adds) * u128::from(other.symbols))
            .cmp(&(u128::from(other.adds) * u128::from(self.symbols)))
    }
}

impl PartialOrd for Bucket {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Add counts of one detector over many processing units (blocks for block
/// detectors, whole bursts for streaming detectors).
///
/// The histogram maps adds-per-symbol to the number of symbols processed at
/// that cost, so `adds_total == sum(value * count)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityReport {
    pub detector: DetectorKind,
    pub adds_total: u64,
    pub symbols: u64,
    pub histogram: BTreeMap<Bucket, u64>,
    /// Quoted per-symbol figure shown next to the measured one, where the
    /// two accountings differ (VA).
    pub quoted_adds_per_symbol: Option<f64>,
}

impl ComplexityReport {
    pub fn new(detector: DetectorKind) -> Self {
        Self {
            detector,
            adds_total: 0,
            symbols: 0,
            histogram: BTreeMap::new(),
            quoted_adds_per_symbol: None,
        }
    }

    pub fn record_unit(&mut self, adds: u64, symbols: u64) {
        if symbols == 0 {
            return;
        }
        self.adds_total += adds;
        self.symbols += symbols;
        *self
            .histogram
            .entry(Bucket::new(adds, symbols))
            .or_default() += symbols;
    }

    pub fn merge(&mut self, other: &ComplexityReport) {
        self.adds_total += other.adds_total;
        self.symbols += other.symbols;
        for (b, c) in &other.histogram {
            *self.histogram.entry(*b).or_default() += c;
        }
        if self.quoted_adds_per_symbol.is_none() {
            self.quoted_adds_per_symbol = other.quoted_adds_per_symbol;
        }
    }

    pub fn adds_per_symbol_mean(&self) -> f64 {
        if self.symbols == 0 {
            0.0
        } else {
            self.adds_total as f64 / self.symbols as f64
        }
    }

    pub fn adds_per_symbol_max(&self) -> f64 {
        self.histogram.keys().next_back().map_or(0.0, Bucket::value)
    }

    /// Per-symbol variance of the add count over processed symbols.
    pub fn adds_per_symbol_variance(&self) -> f64 {
        if self.symbols == 0 {
            return 0.0;
        }
        let mean = self.adds_per_symbol_mean();
        self.histogram
            .iter()
            .map(|(b, &c)| c as f64 * (b.value() - mean).powi(2))
            .sum::<f64>()
            / self.symbols as f64
    }

    /// Writes the histogram as CSV with columns `adds_per_symbol,count`.
    pub fn write_histogram_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "adds_per_symbol,count")?;
        for (b, c) in &self.histogram {
            writeln!(out, "{},{}", b.value(), c)?;
        }
        Ok(())
    }
}
