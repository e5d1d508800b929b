//! Decision-feedback differential detection.

use super::DecisionOrder;
use crate::acr::{ZBand, ZMatrix};
use crate::complexity::AddCounter;
use crate::error::{invalid, Result};
use crate::sign;
use crate::waveform::SymbolSeq;

/// Block-wise DF-DD with a feedback window growing from 1 to `M`:
/// `b_0 = +1`, `b_i = sign(sum_{l<i} Z[l][i] b_l)`.
pub fn bdfdd(z: &ZMatrix) -> SymbolSeq {
    bdfdd_counted(z, &mut AddCounter::new())
}

pub fn bdfdd_counted(z: &ZMatrix, counter: &mut AddCounter) -> SymbolSeq {
    let mut b = vec![1i8; z.order()];
    for i in 1..z.order() {
        b[i] = sign(counter.sum((0..i).map(|l| f64::from(b[l]) * z.get(l, i))));
    }
    SymbolSeq::from_vec_unchecked(b)
}

/// Sorted block-wise DF-DD.
///
/// Each step decides the undecided symbol whose feedback sum
/// `|sum_{k'<k} Z[i_k'][i] b_i_k'|` is largest (lowest index on ties). The
/// running sums are updated once per decision, so the cost equals
/// [`bdfdd`]'s. Output is in natural index order.
pub fn sbdfdd(z: &ZMatrix) -> SymbolSeq {
    sbdfdd_counted(z, &mut AddCounter::new()).0
}

pub fn sbdfdd_counted(z: &ZMatrix, counter: &mut AddCounter) -> (SymbolSeq, DecisionOrder) {
    let m = z.block_len();
    let mut b = vec![1i8; m + 1];
    let mut order = Vec::with_capacity(m + 1);
    order.push(0);
    // feedback[i]: running decision-feedback sum of undecided symbol i.
    let mut feedback: Vec<f64> = (0..=m).map(|i| z.get(0, i)).collect();
    let mut undecided: Vec<usize> = (1..=m).collect();
    while !undecided.is_empty() {
        let mut pick = 0;
        for (pos, &i) in undecided.iter().enumerate().skip(1) {
            if feedback[i].abs() > feedback[undecided[pick]].abs() {
                pick = pos;
            }
        }
        let next = undecided.remove(pick);
        b[next] = sign(feedback[next]);
        order.push(next);
        for &i in &undecided {
            feedback[i] = counter.add(feedback[i], f64::from(b[next]) * z.get(next, i));
        }
    }
    (
        SymbolSeq::from_vec_unchecked(b),
        DecisionOrder::new_unchecked(order),
    )
}

/// Continuous DF-DD over the whole burst with `L` fed-back decisions:
/// `b_i = sign(sum_{l=max(0,i-L)}^{i-1} Z[l][i] b_l)`.
pub fn cdfdd(band: &ZBand, l: usize) -> Result<SymbolSeq> {
    cdfdd_counted(band, l, &mut AddCounter::new())
}

pub fn cdfdd_counted(band: &ZBand, l: usize, counter: &mut AddCounter) -> Result<SymbolSeq> {
    if l == 0 || l > band.bandwidth() {
        return Err(invalid(format!(
            "feedback length {l} needs a band of at least that width (have {})",
            band.bandwidth()
        )));
    }
    let n = band.n_symbols();
    let mut b = vec![1i8; n + 1];
    for i in 1..=n {
        let lo = i.saturating_sub(l);
        b[i] = sign(counter.sum((lo..i).map(|k| f64::from(b[k]) * band.get(k, i))));
    }
    Ok(SymbolSeq::from_vec_unchecked(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::{bdfdd_block_adds, cdfdd_steady_adds};
    use crate::rng::rng_from_seed;

    fn running_example() -> ZMatrix {
        ZMatrix::from_rows(&[
            vec![0.0, 0.5, -0.2],
            vec![0.5, 0.0, 0.4],
            vec![-0.2, 0.4, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn running_example_decisions() {
        let z = running_example();
        assert_eq!(bdfdd(&z).as_slice(), &[1, 1, 1]);
        let (b, order) = sbdfdd_counted(&z, &mut AddCounter::new());
        assert_eq!(b.as_slice(), &[1, 1, 1]);
        assert_eq!(order.as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn sorting_picks_strongest_first_and_lowest_on_ties() {
        let z = ZMatrix::from_rows(&[
            vec![0.0, 0.1, -0.9, 0.1],
            vec![0.1, 0.0, 0.3, 0.2],
            vec![-0.9, 0.3, 0.0, 0.2],
            vec![0.1, 0.2, 0.2, 0.0],
        ])
        .unwrap();
        let (b, order) = sbdfdd_counted(&z, &mut AddCounter::new());
        // i=2 first (|-0.9|), b_2 = -1; then feedback for 1: 0.1-0.3 = -0.2,
        // for 3: 0.1-0.2 = -0.1; pick 1 (b_1 = -1); then 3: -0.1-0.2 = -0.3.
        assert_eq!(order.as_slice(), &[0, 2, 1, 3]);
        assert_eq!(b.as_slice(), &[1, -1, -1, -1]);

        let tie = ZMatrix::from_upper(4, |_, _| 0.5).unwrap();
        let (_, order) = sbdfdd_counted(&tie, &mut AddCounter::new());
        assert_eq!(order.as_slice(), &[0, 1, 2, 3]);
    }

    #[test]
    fn order_one_is_dd() {
        for v in [0.4, -0.4, 0.0] {
            let z = ZMatrix::from_upper(2, |_, _| v).unwrap();
            let dd = if v < 0.0 { -1 } else { 1 };
            assert_eq!(bdfdd(&z).as_slice(), &[1, dd]);
            assert_eq!(sbdfdd(&z).as_slice(), &[1, dd]);
        }
    }

    #[test]
    fn block_counts_match_closed_form() {
        let mut rng = rng_from_seed(3);
        for m in 1..=32u64 {
            let z = ZMatrix::random(m as usize + 1, &mut rng);
            let mut c = AddCounter::new();
            bdfdd_counted(&z, &mut c);
            assert_eq!(c.adds(), bdfdd_block_adds(m));
            let mut c = AddCounter::new();
            sbdfdd_counted(&z, &mut c);
            assert_eq!(c.adds(), bdfdd_block_adds(m));
        }
    }

    #[test]
    fn continuous_counts_and_full_window_equivalence() {
        let mut rng = rng_from_seed(5);
        for l in 1..=12usize {
            let n = 40;
            let z = ZMatrix::random(n + 1, &mut rng);
            let band = ZBand::from(&z);
            let mut c = AddCounter::new();
            cdfdd_counted(&band, l, &mut c).unwrap();
            let transient: u64 = (1..l as u64).map(|i| i - 1).sum();
            let steady = (n - l + 1) as u64 * cdfdd_steady_adds(l as u64);
            assert_eq!(c.adds(), transient + steady, "L = {l}");
        }
        for n in 1..=15 {
            let z = ZMatrix::random(n + 1, &mut rng);
            assert_eq!(cdfdd(&ZBand::from(&z), n).unwrap(), bdfdd(&z));
        }
        let band = ZBand::from_fn(4, 2, |_, _| 1.0).unwrap();
        assert!(cdfdd(&band, 3).is_err());
    }
}
