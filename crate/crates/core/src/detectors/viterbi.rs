use crate::acr::ZBand;
use crate::complexity::AddCounter;
use crate::error::{invalid, Result};
use crate::waveform::SymbolSeq;

pub const VITERBI_MAX_MEMORY: usize = 16;

/// Viterbi detection with memory `L` on a `2^L`-state trellis.
///
/// Maximises `sum_i b_i sum_{l=max(0,i-L)}^{i-1} b_l Z[l][i]` with `b_0 = +1`.
/// The state after step `i` holds `b_{i-L+1} ..= b_i` (bit `j` set means
/// `b_{i-j} = -1`). When two paths merge, the one whose dropped symbol is
/// `+1` wins ties; the final state is the best metric with the lowest index.
pub fn viterbi(band: &ZBand, l: usize) -> Result<SymbolSeq> {
    viterbi_counted(band, l, &mut AddCounter::new())
}

pub fn viterbi_counted(band: &ZBand, l: usize, counter: &mut AddCounter) -> Result<SymbolSeq> {
    if l == 0 || l > VITERBI_MAX_MEMORY {
        return Err(invalid(format!(
            "VA memory must be in 1..={VITERBI_MAX_MEMORY}, got {l}"
        )));
    }
    if l > band.bandwidth() {
        return Err(invalid(format!(
            "VA memory {l} exceeds band width {}",
            band.bandwidth()
        )));
    }
    let n = band.n_symbols();
    let bits = l.min(n);
    let states = 1usize << bits;
    let mask = states - 1;

    let mut metric = vec![f64::NEG_INFINITY; states];
    metric[0] = 0.0;
    let mut next = vec![f64::NEG_INFINITY; states];
    let mut survivors = vec![0u32; n * states];
    let symbol = |s: usize, j: usize| if s >> j & 1 == 1 { -1.0 } else { 1.0 };

    for i in 1..=n {
        next.fill(f64::NEG_INFINITY);
        let span = i.min(l);
        let row = &mut survivors[(i - 1) * states..i * states];
        for (s, &pm) in metric.iter().enumerate() {
            if pm == f64::NEG_INFINITY {
                continue;
            }
            // Shared by both branches: sum over the fed-back symbols b_{i-1}, .., b_{i-span}.
            let feedback =
                counter.sum((1..=span).map(|lag| symbol(s, lag - 1) * band.get(i - lag, i)));
            for (bit, sgn) in [(0usize, 1.0), (1, -1.0)] {
                let cand = if i == 1 {
                    sgn * feedback
                } else {
                    counter.add(pm, sgn * feedback)
                };
                let ns = ((s << 1) | bit) & mask;
                if cand > next[ns] {
                    next[ns] = cand;
                    row[ns] = s as u32;
                }
            }
        }
        std::mem::swap(&mut metric, &mut next);
    }

    let mut state = 0;
    for (s, &m) in metric.iter().enumerate() {
        if m > metric[state] {
            state = s;
        }
    }
    let mut b = vec![1i8; n + 1];
    for i in (1..=n).rev() {
        b[i] = if state & 1 == 1 { -1 } else { 1 };
        state = survivors[(i - 1) * states + state] as usize;
    }
    Ok(SymbolSeq::from_vec_unchecked(b))
}
