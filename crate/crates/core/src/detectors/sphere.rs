//! Sphere-decoder MSDD on the transmit symbols.
//!
//! Depth-first Schnorr-Euchner search: at depth `i` the first child is
//! `b_i = sign(p_i)` with `p_i = sum_{l<i} Z[l][i] b_l`, the metric grows by
//! `delta_i = q_i - b_i p_i` with `q_i = sum_{l<i} |Z[l][i]|`, and a node is
//! extended only while its partial metric is strictly below the radius. Each
//! leaf shrinks the radius to its metric. `p_i, q_i` are computed on every
//! descent; a sibling only flips `b_i` and re-evaluates `delta_i`.

use super::{msdd_metric, DetectorOptions, InitialRadius};
use crate::acr::ZMatrix;
use crate::complexity::AddCounter;
use crate::sign;
use crate::waveform::SymbolSeq;

/// Decision order `<0, i_1, .., i_M>`, a permutation of `0..=M` fixing 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionOrder(Vec<usize>);

impl DecisionOrder {
    pub fn new(order: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; order.len()];
        for &i in &order {
            if i >= order.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        (order.first() == Some(&0)).then_some(Self(order))
    }

    pub(crate) fn new_unchecked(order: Vec<usize>) -> Self {
        debug_assert!(Self::new(order.clone()).is_some());
        Self(order)
    }

    pub fn identity(order: usize) -> Self {
        Self((0..order).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Maps a sequence in decision order back to natural index order.
    pub fn unpermute(&self, permuted: &[i8]) -> Vec<i8> {
        let mut natural = vec![1i8; permuted.len()];
        for (k, &i) in self.0.iter().enumerate() {
            natural[i] = permuted[k];
        }
        natural
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The tree was searched to the end (or the initial radius left nothing to search).
    Exhausted,
    /// A metric below the stopping radius proved optimality early.
    StoppingRadius,
}

/// Result and bookkeeping of one [`msdd_sd`] call.
#[derive(Debug, Clone, PartialEq)]
pub struct SdTrace {
    pub best_sequence: SymbolSeq,
    pub best_metric: f64,
    /// `search_adds + sort_adds + init_adds`.
    pub adds: u64,
    pub search_adds: u64,
    pub sort_adds: u64,
    pub init_adds: u64,
    /// Metric updates performed, one per visited node.
    pub nodes_visited: u64,
    pub leaves: u64,
    pub terminated_by: Termination,
    /// First leaf reached, in natural order.
    pub first_leaf: Option<SymbolSeq>,
    pub order: DecisionOrder,
    pub stopping_radius: f64,
    pub initial_radius: f64,
}

/// `M * min_{l != i} |Z[l][i]|`: any sequence with a metric below this is optimal.
pub fn stopping_radius(z: &ZMatrix) -> f64 {
    let min = z
        .upper()
        .map(|(_, _, v)| v.abs())
        .fold(f64::INFINITY, f64::min);
    z.block_len() as f64 * min
}

/// Metric of `b` evaluated the way the search evaluates one path,
/// `M(M+1) - 1` adds.
pub fn path_metric_counted(z: &ZMatrix, b: &[i8], counter: &mut AddCounter) -> f64 {
    let mut delta = 0.0;
    for i in 1..z.order() {
        let p = counter.sum((0..i).map(|l| f64::from(b[l]) * z.get(l, i)));
        let q = counter.sum((0..i).map(|l| z.get(l, i).abs()));
        let inc = f64::from(b[i]) * p;
        delta = if i == 1 {
            counter.sub(q, inc)
        } else {
            let acc = counter.add(delta, q);
            counter.sub(acc, inc)
        };
    }
    delta
}

/// DD sequence of the block (`b_i = b_{i-1} sign(Z[i-1][i])`) and its metric.
pub fn dd_initial_radius(z: &ZMatrix) -> (SymbolSeq, f64) {
    dd_initial_radius_counted(z, &mut AddCounter::new())
}

pub fn dd_initial_radius_counted(z: &ZMatrix, counter: &mut AddCounter) -> (SymbolSeq, f64) {
    let mut b = vec![1i8; z.order()];
    for i in 1..z.order() {
        b[i] = b[i - 1] * sign(z.get(i - 1, i));
    }
    let metric = path_metric_counted(z, &b, counter);
    (SymbolSeq::from_vec_unchecked(b), metric)
}

/// Orders the block for the search: successively picks the symbol with the
/// largest `sum_{k'<k} |Z[i_k'][i]|` (lowest index on ties), the
/// triangle-inequality bound of the sorted DF-DD criterion.
pub fn sort_for_sd(z: &ZMatrix) -> (ZMatrix, DecisionOrder) {
    sort_for_sd_counted(z, &mut AddCounter::new())
}

pub fn sort_for_sd_counted(z: &ZMatrix, counter: &mut AddCounter) -> (ZMatrix, DecisionOrder) {
    let m = z.block_len();
    let mut bound: Vec<f64> = (0..=m).map(|i| z.get(0, i).abs()).collect();
    let mut remaining: Vec<usize> = (1..=m).collect();
    let mut order = vec![0];
    while !remaining.is_empty() {
        let mut pick = 0;
        for (pos, &i) in remaining.iter().enumerate().skip(1) {
            if bound[i] > bound[remaining[pick]] {
                pick = pos;
            }
        }
        let next = remaining.remove(pick);
        order.push(next);
        // The last candidate is taken regardless of its bound.
        if remaining.len() > 1 {
            for &i in &remaining {
                bound[i] = counter.add(bound[i], z.get(next, i).abs());
            }
        }
    }
    let order = DecisionOrder::new_unchecked(order);
    (z.permuted(order.as_slice()), order)
}

struct Search {
    best: Option<Vec<i8>>,
    radius: f64,
    first_leaf: Option<Vec<i8>>,
    nodes: u64,
    leaves: u64,
    terminated_by: Termination,
}

fn search(z: &ZMatrix, radius: f64, r_stop: f64, counter: &mut AddCounter) -> Search {
    let m = z.block_len();
    let mut out = Search {
        best: None,
        radius,
        first_leaf: None,
        nodes: 0,
        leaves: 0,
        terminated_by: Termination::Exhausted,
    };
    let mut b = vec![1i8; m + 1];
    let mut p = vec![0.0; m + 1];
    let mut q = vec![0.0; m + 1];
    // n[i] counts the children of level i-1 tried so far; n[0] = 1 stops backtracking at the root.
    let mut n = vec![1u8; m + 1];
    let mut delta = vec![0.0; m + 1];

    let expand =
        |i: usize, b: &mut [i8], p: &mut [f64], q: &mut [f64], counter: &mut AddCounter| {
            p[i] = counter.sum((0..i).map(|l| f64::from(b[l]) * z.get(l, i)));
            q[i] = counter.sum((0..i).map(|l| z.get(l, i).abs()));
            b[i] = sign(p[i]);
        };
    let backtrack = |i: &mut usize, b: &mut [i8], n: &mut [u8]| {
        *i -= 1;
        while n[*i] > 1 {
            *i -= 1;
        }
        b[*i] = -b[*i];
        n[*i] += 1;
    };

    let mut i = 1;
    expand(i, &mut b, &mut p, &mut q, counter);
    n[i] = 1;
    while i > 0 {
        let inc = f64::from(b[i]) * p[i];
        delta[i] = if i == 1 {
            counter.sub(q[i], inc)
        } else {
            let acc = counter.add(delta[i - 1], q[i]);
            counter.sub(acc, inc)
        };
        out.nodes += 1;
        if delta[i] < out.radius {
            if i < m {
                i += 1;
                expand(i, &mut b, &mut p, &mut q, counter);
                n[i] = 1;
            } else {
                out.best = Some(b.clone());
                out.radius = delta[i];
                out.leaves += 1;
                out.first_leaf.get_or_insert_with(|| b.clone());
                if out.radius < r_stop {
                    out.terminated_by = Termination::StoppingRadius;
                    break;
                }
                backtrack(&mut i, &mut b, &mut n);
            }
        } else {
            backtrack(&mut i, &mut b, &mut n);
        }
    }
    out
}

/// Exact block MSDD by sphere decoding, with the acceleration techniques
/// selected in `opts`. None of them changes the returned sequence or metric.
pub fn msdd_sd(z: &ZMatrix, opts: &DetectorOptions) -> SdTrace {
    let r_stop = if opts.use_stopping_radius {
        stopping_radius(z)
    } else {
        f64::NEG_INFINITY
    };

    let mut init_counter = AddCounter::new();
    let dd_start = match opts.initial_radius {
        InitialRadius::Infinite => None,
        InitialRadius::DdMetric => Some(dd_initial_radius_counted(z, &mut init_counter)),
    };
    let initial_radius = dd_start.as_ref().map_or(f64::INFINITY, |(_, m)| *m);

    // The reported metric is re-evaluated in natural order so that it does
    // not depend on the path that found the sequence; this is bookkeeping
    // and is not charged.
    let finish =
        |best: SymbolSeq, _path_metric: f64, search: Option<(Search, DecisionOrder, u64, u64)>| {
            let metric = msdd_metric(z, best.as_slice());
            let init_adds = init_counter.adds();
            match search {
                None => SdTrace {
                    best_sequence: best,
                    best_metric: metric,
                    adds: init_adds,
                    search_adds: 0,
                    sort_adds: 0,
                    init_adds,
                    nodes_visited: 0,
                    leaves: 0,
                    terminated_by: Termination::StoppingRadius,
                    first_leaf: None,
                    order: DecisionOrder::identity(z.order()),
                    stopping_radius: r_stop,
                    initial_radius,
                },
                Some((s, order, search_adds, sort_adds)) => SdTrace {
                    best_sequence: best,
                    best_metric: metric,
                    adds: search_adds + sort_adds + init_adds,
                    search_adds,
                    sort_adds,
                    init_adds,
                    nodes_visited: s.nodes,
                    leaves: s.leaves,
                    terminated_by: s.terminated_by,
                    first_leaf: s
                        .first_leaf
                        .as_ref()
                        .map(|f| SymbolSeq::from_vec_unchecked(order.unpermute(f))),
                    order,
                    stopping_radius: r_stop,
                    initial_radius,
                },
            }
        };

    if let Some((dd, metric)) = &dd_start {
        if *metric < r_stop {
            return finish(dd.clone(), *metric, None);
        }
    }

    let mut sort_counter = AddCounter::new();
    let (sorted, order) = if opts.sort_input {
        sort_for_sd_counted(z, &mut sort_counter)
    } else {
        (z.clone(), DecisionOrder::identity(z.order()))
    };
    let mut search_counter = AddCounter::new();
    let s = search(&sorted, initial_radius, r_stop, &mut search_counter);
    let (best, metric) = match (&s.best, &dd_start) {
        (Some(b), _) => (SymbolSeq::from_vec_unchecked(order.unpermute(b)), s.radius),
        (None, Some((dd, m))) => (dd.clone(), *m),
        (None, None) => unreachable!("an infinite radius always reaches a leaf"),
    };
    finish(
        best,
        metric,
        Some((s, order, search_counter.adds(), sort_counter.adds())),
    )
}
