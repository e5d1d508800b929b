//! Oracle-equivalence and closed-form complexity checks run by the CLI.

use crate::acr::{ZBand, ZMatrix};
use crate::complexity::{bdfdd_block_adds, sd_path_adds, sd_worst_case_bound, AddCounter};
use crate::detectors::{
    bdfdd, bdfdd_counted, cdfdd, dd_initial_radius_counted, detect_burst, inse_bruteforce,
    msdd_bruteforce, msdd_metric, msdd_sd, sbdfdd, sbdfdd_counted, viterbi, DetectorKind,
    DetectorOptions, InitialRadius,
};
use crate::error::Result;
use crate::rng::{rng_from_seed, split};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn all_sd_options() -> Vec<DetectorOptions> {
    let mut v = Vec::new();
    for stop in [false, true] {
        for sort in [false, true] {
            for init in [InitialRadius::Infinite, InitialRadius::DdMetric] {
                v.push(DetectorOptions {
                    use_stopping_radius: stop,
                    initial_radius: init,
                    sort_input: sort,
                });
            }
        }
    }
    v
}

fn check(
    name: &'static str,
    cases: u64,
    seed: u64,
    tag: u64,
    mut f: impl FnMut(u64, &mut rand_chacha::ChaCha8Rng) -> Result<bool>,
) -> Result<CheckOutcome> {
    let mut rng = rng_from_seed(split(seed, &[tag]));
    let mut failures = 0;
    for k in 0..cases {
        if !f(k, &mut rng)? {
            failures += 1;
        }
    }
    Ok(CheckOutcome {
        name,
        cases,
        failures,
    })
}

/// Runs every check on `instances` random instances (or all `L` for the
/// closed-form checks).
pub fn selftest(instances: u64, seed: u64) -> Result<Vec<CheckOutcome>> {
    let opts = all_sd_options();
    let mut out = Vec::new();

    out.push(check(
        "msdd_sd optimal under all options",
        instances,
        seed,
        1,
        |k, rng| {
            let z = ZMatrix::random(2 + (k % 7) as usize, rng);
            let (_, best) = msdd_bruteforce(&z)?;
            Ok(opts.iter().all(|o| {
                let t = msdd_sd(&z, o);
                t.best_metric == best && msdd_metric(&z, t.best_sequence.as_slice()) == best
            }))
        },
    )?);

    out.push(check(
        "sbdfdd = msdd at M = 2",
        instances,
        seed,
        2,
        |_, rng| {
            let z = ZMatrix::random(3, rng);
            Ok(sbdfdd(&z) == msdd_bruteforce(&z)?.0)
        },
    )?);

    out.push(check(
        "first SD leaf = bdfdd",
        instances,
        seed,
        3,
        |k, rng| {
            let z = ZMatrix::random(2 + (k % 10) as usize, rng);
            let t = msdd_sd(
                &z,
                &DetectorOptions {
                    sort_input: false,
                    ..Default::default()
                },
            );
            Ok(t.first_leaf.as_ref() == Some(&bdfdd(&z)))
        },
    )?);

    out.push(check(
        "cdfdd(L = N) = bdfdd",
        instances,
        seed,
        4,
        |k, rng| {
            let z = ZMatrix::random(2 + (k % 12) as usize, rng);
            let band = ZBand::from(&z);
            Ok(cdfdd(&band, z.block_len())? == bdfdd(&z))
        },
    )?);

    out.push(check(
        "viterbi(L = N) = inse",
        instances,
        seed,
        5,
        |k, rng| {
            let z = ZMatrix::random(2 + (k % 12) as usize, rng);
            let band = ZBand::from(&z);
            Ok(viterbi(&band, z.block_len())? == inse_bruteforce(&z)?)
        },
    )?);

    out.push(check(
        "every detector = dd at L = 1",
        instances,
        seed,
        6,
        |k, rng| {
            let n = 1 + (k % 12) as usize;
            let band = ZBand::from(&ZMatrix::random(n + 1, rng)).narrowed(1)?;
            let reference = detect_burst(&band, DetectorKind::Dd, 1)?.info;
            for kind in DetectorKind::ALL {
                if kind == DetectorKind::Inse {
                    continue;
                }
                if detect_burst(&band, kind, 1)?.info != reference {
                    return Ok(false);
                }
            }
            Ok(true)
        },
    )?);

    let ls: Vec<u64> = (2..=16).collect();
    let mut closed = |name: &'static str, f: &dyn Fn(u64) -> Result<bool>| -> Result<()> {
        let failures = ls.iter().map(|&l| f(l)).collect::<Result<Vec<_>>>()?;
        out.push(CheckOutcome {
            name,
            cases: ls.len() as u64,
            failures: failures.iter().filter(|ok| !**ok).count() as u64,
        });
        Ok(())
    };
    let mut rng = rng_from_seed(split(seed, &[7]));
    let blocks: Vec<ZMatrix> = ls
        .iter()
        .map(|&l| ZMatrix::random(l as usize + 1, &mut rng))
        .collect();
    let z = |l: u64| &blocks[(l - 2) as usize];
    closed("bdfdd and sbdfdd adds = L(L-1)/2", &|l| {
        let mut a = AddCounter::new();
        bdfdd_counted(z(l), &mut a);
        let mut b = AddCounter::new();
        sbdfdd_counted(z(l), &mut b);
        Ok(a.adds() == bdfdd_block_adds(l) && b.adds() == bdfdd_block_adds(l))
    })?;
    closed("dd initial radius adds = L(L+1)-1", &|l| {
        let mut c = AddCounter::new();
        dd_initial_radius_counted(z(l), &mut c);
        Ok(c.adds() == sd_path_adds(l))
    })?;
    closed("SD first-leaf stop adds = L(L+1)-1", &|l| {
        // Sign-consistent block: the first leaf has metric 0 < R_stop.
        let m = l as usize + 1;
        let b: Vec<f64> = (0..m)
            .map(|i| if i % 3 == 1 { -1.0 } else { 1.0 })
            .collect();
        let zz = ZMatrix::from_upper(m, |i, j| b[i] * b[j] * (1.0 + 0.1 * (i + j) as f64))?;
        let t = msdd_sd(
            &zz,
            &DetectorOptions {
                sort_input: false,
                ..Default::default()
            },
        );
        Ok(t.leaves == 1 && t.search_adds == sd_path_adds(l))
    })?;
    closed("SD worst case <= L 2^(L+1)", &|l| {
        let t = msdd_sd(
            z(l),
            &DetectorOptions {
                use_stopping_radius: false,
                sort_input: false,
                ..Default::default()
            },
        );
        Ok(t.search_adds <= sd_worst_case_bound(l))
    })?;
    Ok(out)
}
