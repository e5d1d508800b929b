//! Exhaustive reference detectors.
//!
//! Both walk the full binary tree depth-first, `+1` before `-1`, so the
//! first optimum found is the lexicographically smallest under `+1 < -1`.

use crate::acr::ZMatrix;
use crate::error::{Error, Result};
use crate::waveform::SymbolSeq;

pub const INSE_MAX_SYMBOLS: usize = 24;
pub const MSDD_BRUTEFORCE_MAX_SYMBOLS: usize = 20;

/// Block MSDD metric `sum_i sum_{l<i} (|Z[l][i]| - b_i b_l Z[l][i])`.
pub fn msdd_metric(z: &ZMatrix, b: &[i8]) -> f64 {
    z.upper()
        .map(|(l, i, v)| v.abs() - f64::from(b[l] * b[i]) * v)
        .sum()
}

/// Sequence-estimation objective `sum_i b_i sum_{l<i} b_l Z[l][i]`.
pub fn inse_objective(z: &ZMatrix, b: &[i8]) -> f64 {
    z.upper().map(|(l, i, v)| f64::from(b[l] * b[i]) * v).sum()
}

struct Walk<'a, F> {
    z: &'a ZMatrix,
    b: Vec<i8>,
    increment: F,
    best: Option<(Vec<i8>, f64)>,
}

impl<F: Fn(f64, f64) -> f64> Walk<'_, F> {
    /// `increment(|Z|, b_i b_l Z)` accumulates one pair; smaller totals win.
    fn descend(&mut self, i: usize, partial: f64) {
        if i == self.z.order() {
            if self.best.as_ref().map_or(true, |(_, m)| partial < *m) {
                self.best = Some((self.b.clone(), partial));
            }
            return;
        }
        for s in [1i8, -1] {
            self.b[i] = s;
            let mut total = partial;
            for l in 0..i {
                let v = self.z.get(l, i);
                total += (self.increment)(v.abs(), f64::from(self.b[l] * s) * v);
            }
            self.descend(i + 1, total);
        }
    }
}

fn walk(z: &ZMatrix, increment: impl Fn(f64, f64) -> f64) -> (Vec<i8>, f64) {
    let b = vec![1i8; z.order()];
    let mut w = Walk {
        z,
        b,
        increment,
        best: None,
    };
    w.descend(1, 0.0);
    w.best.expect("tree has at least one leaf")
}

/// Exhaustive sequence estimation over the whole burst matrix, `b_0 = +1`.
pub fn inse_bruteforce(z: &ZMatrix) -> Result<SymbolSeq> {
    if z.block_len() > INSE_MAX_SYMBOLS {
        return Err(Error::BlockTooLarge {
            order: z.order(),
            max: INSE_MAX_SYMBOLS + 1,
        });
    }
    // Maximise the objective by minimising its negation.
    let (b, _) = walk(z, |_, corr| -corr);
    Ok(SymbolSeq::from_vec_unchecked(b))
}

/// Exhaustive block MSDD: the minimiser of [`msdd_metric`] and its value.
pub fn msdd_bruteforce(z: &ZMatrix) -> Result<(SymbolSeq, f64)> {
    if z.block_len() > MSDD_BRUTEFORCE_MAX_SYMBOLS {
        return Err(Error::BlockTooLarge {
            order: z.order(),
            max: MSDD_BRUTEFORCE_MAX_SYMBOLS + 1,
        });
    }
    let (b, _) = walk(z, |abs, corr| abs - corr);
    let metric = msdd_metric(z, &b);
    Ok((SymbolSeq::from_vec_unchecked(b), metric))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    fn running_example() -> ZMatrix {
        ZMatrix::from_rows(&[
            vec![0.0, 0.5, -0.2],
            vec![0.5, 0.0, 0.4],
            vec![-0.2, 0.4, 0.0],
        ])
        .unwrap()
    }

    /// Independent oracle: plain loop over all bit masks with the full metric.
    fn mask_oracle(z: &ZMatrix) -> (Vec<i8>, f64) {
        let m = z.block_len();
        let mut best: Option<(Vec<i8>, f64)> = None;
        for mask in 0u32..(1 << m) {
            let b: Vec<i8> = std::iter::once(1)
                .chain((1..=m).map(|i| if mask >> (m - i) & 1 == 1 { -1 } else { 1 }))
                .collect();
            let metric = msdd_metric(z, &b);
            if best.as_ref().map_or(true, |(_, bm)| metric < *bm) {
                best = Some((b, metric));
            }
        }
        best.unwrap()
    }

    #[test]
    fn running_example_values() {
        let z = running_example();
        let b = inse_bruteforce(&z).unwrap();
        assert_eq!(b.as_slice(), &[1, 1, 1]);
        assert!((inse_objective(&z, b.as_slice()) - 0.7).abs() < 1e-12);
        let (b, metric) = msdd_bruteforce(&z).unwrap();
        assert_eq!(b.as_slice(), &[1, 1, 1]);
        assert!((metric - 0.4).abs() < 1e-12);
        // All four candidates: 0.4, 0.8, 2.2, 1.0.
        let metrics: Vec<f64> = [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]]
            .iter()
            .map(|b| msdd_metric(&z, b))
            .collect();
        for (m, e) in metrics.iter().zip([0.4, 0.8, 2.2, 1.0]) {
            assert!((m - e).abs() < 1e-12);
        }
    }

    #[test]
    fn single_symbol_is_dd() {
        for v in [0.3, -0.3, 0.0] {
            let z = ZMatrix::from_upper(2, |_, _| v).unwrap();
            let expect = if v < 0.0 { -1 } else { 1 };
            assert_eq!(inse_bruteforce(&z).unwrap().as_slice(), &[1, expect]);
            assert_eq!(msdd_bruteforce(&z).unwrap().0.as_slice(), &[1, expect]);
        }
    }

    #[test]
    fn all_positive_is_all_plus() {
        let z = ZMatrix::from_upper(6, |l, i| 0.1 + (l + i) as f64).unwrap();
        let (b, metric) = msdd_bruteforce(&z).unwrap();
        assert!(b.iter().all(|&s| s == 1));
        assert_eq!(metric, 0.0);
    }

    #[test]
    fn agrees_with_mask_enumeration_and_inse() {
        let mut rng = rng_from_seed(9);
        for order in 2..=9 {
            for _ in 0..200 {
                let z = ZMatrix::random(order, &mut rng);
                let (b, metric) = msdd_bruteforce(&z).unwrap();
                let (ob, ometric) = mask_oracle(&z);
                assert!((metric - ometric).abs() < 1e-9);
                assert_eq!(b.as_slice(), ob.as_slice());
                assert_eq!(inse_bruteforce(&z).unwrap(), b);
            }
        }
    }

    #[test]
    fn guards() {
        let z = ZMatrix::from_upper(22, |_, _| 1.0).unwrap();
        assert!(matches!(
            msdd_bruteforce(&z),
            Err(Error::BlockTooLarge { .. })
        ));
        let z = ZMatrix::from_upper(26, |_, _| 1.0).unwrap();
        assert!(matches!(
            inse_bruteforce(&z),
            Err(Error::BlockTooLarge { .. })
        ));
    }
}
