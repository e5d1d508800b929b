use super::ZMatrix;
use crate::error::{invalid, Error, Result};

/// Streaming statistics `Z[l][i]` for `i = 1..=N`, `max(0, i-L) <= l < i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZBand {
    n_symbols: usize,
    bandwidth: usize,
    /// Row `i-1` holds lags `1..=L`; lags beyond `i` stay zero and unused.
    data: Vec<f64>,
}

impl ZBand {
    /// Builds a band from `f(l, i)` over the banded index domain.
    pub fn from_fn(
        n_symbols: usize,
        bandwidth: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        if n_symbols == 0 || bandwidth == 0 {
            return Err(invalid("band needs N >= 1 and L >= 1"));
        }
        let mut data = vec![0.0; n_symbols * bandwidth];
        for i in 1..=n_symbols {
            for lag in 1..=bandwidth.min(i) {
                let v = f(i - lag, i);
                if !v.is_finite() {
                    return Err(invalid(format!("non-finite statistic Z[{}][{i}]", i - lag)));
                }
                data[(i - 1) * bandwidth + lag - 1] = v;
            }
        }
        Ok(Self {
            n_symbols,
            bandwidth,
            data,
        })
    }

    pub fn n_symbols(&self) -> usize {
        self.n_symbols
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    /// `Z[l][i]`; panics outside the banded domain.
    #[inline]
    pub fn get(&self, l: usize, i: usize) -> f64 {
        assert!(
            l < i && i <= self.n_symbols && i - l <= self.bandwidth,
            "Z[{l}][{i}] outside band"
        );
        self.data[(i - 1) * self.bandwidth + (i - l) - 1]
    }

    /// Number of statistics in the band, `sum_i min(i, L)`.
    pub fn entry_count(&self) -> usize {
        (1..=self.n_symbols).map(|i| i.min(self.bandwidth)).sum()
    }

    /// Block matrix over transmit symbols `start ..= start + len`.
    pub fn block(&self, start: usize, len: usize) -> Result<ZMatrix> {
        if len == 0 || len > self.bandwidth || start + len > self.n_symbols {
            return Err(Error::IndexOutOfRange(format!(
                "block ({start}, {len}) does not fit band N = {}, L = {}",
                self.n_symbols, self.bandwidth
            )));
        }
        ZMatrix::from_upper(len + 1, |l, i| self.get(start + l, start + i))
    }

    /// The same statistics with a narrower band.
    pub fn narrowed(&self, bandwidth: usize) -> Result<Self> {
        if bandwidth > self.bandwidth {
            return Err(invalid("cannot widen a band"));
        }
        Self::from_fn(self.n_symbols, bandwidth, |l, i| self.get(l, i))
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            data: self.data.iter().map(|z| z * c).collect(),
            ..self.clone()
        }
    }
}

impl From<&ZMatrix> for ZBand {
    /// Full-bandwidth band of a burst-wide matrix (`N = L = order - 1`).
    fn from(z: &ZMatrix) -> Self {
        let n = z.block_len();
        Self::from_fn(n, n, |l, i| z.get(l, i)).expect("matrix entries are finite")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_count_matches_band_shape() {
        let band = ZBand::from_fn(100, 10, |l, i| (l * 1000 + i) as f64).unwrap();
        assert_eq!(band.entry_count(), 955);
        assert_eq!(band.get(90, 100), 90_100.0);
        assert_eq!(band.get(0, 3), 3.0);
    }

    #[test]
    #[should_panic]
    fn outside_band_panics() {
        let band = ZBand::from_fn(10, 2, |_, _| 1.0).unwrap();
        band.get(1, 5);
    }

    #[test]
    fn block_extraction_bounds() {
        let band = ZBand::from_fn(5, 2, |l, i| (l + 10 * i) as f64).unwrap();
        let z = band.block(2, 2).unwrap();
        assert_eq!(z.get(0, 2), band.get(2, 4));
        assert!(band.block(4, 2).is_err());
        assert!(band.block(0, 3).is_err());
        assert_eq!(band.narrowed(1).unwrap().get(3, 4), band.get(3, 4));
    }
}
