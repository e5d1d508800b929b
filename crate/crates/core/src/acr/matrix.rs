use std::fmt::Write as _;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Error, Result};

/// Symmetric block statistics `Z[l][i]` with a forced zero diagonal.
///
/// Order `M + 1` covers the `M + 1` transmit symbols of a block of `M`
/// information symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct ZMatrix {
    order: usize,
    data: Vec<f64>,
}

impl ZMatrix {
    /// Builds a matrix from its strict upper triangle, `f(l, i)` for `l < i`.
    pub fn from_upper(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        if order < 2 {
            return Err(invalid("Z matrix needs order >= 2"));
        }
        let mut data = vec![0.0; order * order];
        for i in 1..order {
            for l in 0..i {
                let v = f(l, i);
                if !v.is_finite() {
                    return Err(invalid(format!("non-finite statistic Z[{l}][{i}]")));
                }
                data[l * order + i] = v;
                data[i * order + l] = v;
            }
        }
        Ok(Self { order, data })
    }

    /// Builds a matrix from full rows. Rows must be symmetric; the diagonal
    /// is overwritten with zeros.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(invalid("Z matrix rows must form a square"));
        }
        for i in 0..order {
            for l in 0..i {
                if rows[l][i] != rows[i][l] {
                    return Err(Error::NotSymmetric { row: l, col: i });
                }
            }
        }
        Self::from_upper(order, |l, i| rows[l][i])
    }

    /// Random matrix with i.i.d. standard normal off-diagonal entries.
    pub fn random<R: Rng + ?Sized>(order: usize, rng: &mut R) -> Self {
        Self::from_upper(order, |_, _| rng.sample(StandardNormal)).expect("order >= 2")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of information symbols `M = order - 1`.
    pub fn block_len(&self) -> usize {
        self.order - 1
    }

    #[inline]
    pub fn get(&self, l: usize, i: usize) -> f64 {
        self.data[l * self.order + i]
    }

    pub fn row(&self, l: usize) -> &[f64] {
        &self.data[l * self.order..(l + 1) * self.order]
    }

    /// Reorders rows and columns: entry `(k, m)` of the result is
    /// `Z[order[k]][order[m]]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.order);
        Self::from_upper(self.order, |k, m| self.get(order[k], order[m])).expect("same order")
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            order: self.order,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn is_symmetric_zero_diagonal(&self) -> bool {
        (0..self.order).all(|i| {
            self.get(i, i) == 0.0 && (0..self.order).all(|l| self.get(l, i) == self.get(i, l))
        })
    }

    /// Off-diagonal entries `(l, i, Z[l][i])` with `l < i`.
    pub fn upper(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (1..self.order).flat_map(move |i| (0..i).map(move |l| (l, i, self.get(l, i))))
    }

    /// Plain-text dump: one row per line, whitespace-separated.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in 0..self.order {
            let row: Vec<String> = self.row(l).iter().map(|v| format!("{v:e}")).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
        out
    }

    /// Parses the [`to_text`](Self::to_text) format. Blank lines and `#`
    /// comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<f64>().map_err(|e| Error::Parse {
                        line: n + 1,
                        msg: e.to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_rows(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    #[test]
    fn layout_and_symmetry() {
        let z = ZMatrix::from_upper(3, |l, i| [[0.0, 0.5, -0.2], [0.0, 0.0, 0.4]][l][i]).unwrap();
        let rows: Vec<Vec<f64>> = (0..3).map(|l| z.row(l).to_vec()).collect();
        assert_eq!(
            rows,
            vec![
                vec![0.0, 0.5, -0.2],
                vec![0.5, 0.0, 0.4],
                vec![-0.2, 0.4, 0.0]
            ]
        );
        assert!(z.is_symmetric_zero_diagonal());
        assert_eq!(z.block_len(), 2);
    }

    #[test]
    fn from_rows_checks() {
        assert!(matches!(
            ZMatrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]),
            Err(Error::NotSymmetric { .. })
        ));
        let z = ZMatrix::from_rows(&[vec![5.0, 1.0], vec![1.0, 7.0]]).unwrap();
        assert_eq!(z.get(0, 0), 0.0);
        assert!(ZMatrix::from_rows(&[vec![0.0]]).is_err());
        assert!(ZMatrix::from_upper(2, |_, _| f64::NAN).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let z = ZMatrix::random(6, &mut rng_from_seed(4));
        assert_eq!(ZMatrix::parse(&z.to_text()).unwrap(), z);
        assert!(ZMatrix::parse("0 1\n1 zero\n").is_err());
    }

    #[test]
    fn permutation() {
        let z = ZMatrix::random(4, &mut rng_from_seed(1));
        let p = z.permuted(&[0, 2, 1, 3]);
        assert_eq!(p.get(0, 1), z.get(0, 2));
        assert_eq!(p.get(1, 2), z.get(2, 1));
        assert_eq!(p.get(1, 3), z.get(2, 3));
        assert!(p.is_symmetric_zero_diagonal());
    }
}
