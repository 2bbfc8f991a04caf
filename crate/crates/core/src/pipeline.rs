//! End-to-end computation for one tiling configuration.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::oracle::oracle_agrees;
use crate::arrangement::{build_arrangement, intersect_subtori, Arrangement, Subtorus};
use crate::assemble::{compute, relevant_primes, verify_mod_p, Computation};
use crate::config::TilingConfig;
use crate::error::Result;
use crate::report::Report;
use crate::wedgelat::{group_closure, MatrixGroup};

const ORACLE_SEED: u64 = 0x7469_6c65_636f_6821;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Run the modular identities and the sampled intersection oracle.
    pub verify: bool,
    /// Extra primes for `F_p` rank tables.
    pub primes: Vec<u64>,
}

/// Outcome of the sampled intersection oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub denominator_cap: u64,
    pub sampled: usize,
    pub agreed: usize,
    /// Pairs whose covering grid exceeded the cap.
    pub skipped: usize,
    /// `(kind, i, j)` for pairs where the oracle disagreed.
    pub disagreements: Vec<(String, usize, usize)>,
}

impl OracleSummary {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Everything a run produces, before it is flattened into a [`Report`].
pub struct Run {
    pub config: TilingConfig,
    pub group: MatrixGroup,
    pub arrangement: Arrangement,
    pub computation: Computation,
    pub verification: Vec<crate::assemble::VerificationReport>,
    pub oracle: Option<OracleSummary>,
}

pub fn run(config: &TilingConfig, options: &RunOptions) -> Result<Report> {
    Ok(Report::from_run(&execute(config, options)?))
}

pub fn execute(config: &TilingConfig, options: &RunOptions) -> Result<Run> {
    let group = group_closure(6, &config.symmetry_generators, config.group_order_bound)?;
    let seeds = config.seeds()?;
    let arrangement = build_arrangement(&group, &seeds)?;
    arrangement.check_invariants()?;

    let table_primes: BTreeSet<u64> = options
        .primes
        .iter()
        .chain(if options.verify { &config.verify.primes[..] } else { &[] })
        .copied()
        .collect();
    let table_primes: Vec<u64> = table_primes.into_iter().collect();
    let computation = compute(&arrangement, &table_primes)?;

    let (verification, oracle) = if options.verify {
        let mut primes: BTreeSet<u64> = relevant_primes(&computation.result).into_iter().collect();
        primes.extend(&config.verify.primes);
        let verification = primes
            .into_iter()
            .map(|p| verify_mod_p(&arrangement, &computation.result, p))
            .collect::<Result<Vec<_>>>()?;
        let oracle = sample_oracle(
            &arrangement,
            config.verify.oracle_samples,
            config.verify.oracle_denominator_cap,
        )?;
        (verification, Some(oracle))
    } else {
        (Vec::new(), None)
    };

    Ok(Run {
        config: config.clone(),
        group,
        arrangement,
        computation,
        verification,
        oracle,
    })
}

fn sample_pairs(n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let total = n * n.saturating_sub(1) / 2;
    let mut picked: Vec<usize> = sample(rng, total, count.min(total)).into_vec();
    picked.sort_unstable();
    picked
        .into_iter()
        .map(|mut k| {
            let mut i = 0;
            while k >= n - 1 - i {
                k -= n - 1 - i;
                i += 1;
            }
            (i, i + 1 + k)
        })
        .collect()
}

/// Checks up to `samples` pairs of 4-tori and `samples` pairs of 2-tori
/// against the covering-grid oracle.
pub fn sample_oracle(arr: &Arrangement, samples: usize, cap: u64) -> Result<OracleSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let mut jobs: Vec<(&'static str, &[Subtorus], usize, usize)> = Vec::new();
    for (kind, list) in [("4-tori", arr.four_tori()), ("2-tori", arr.two_tori())] {
        for (i, j) in sample_pairs(list.len(), samples, &mut rng) {
            jobs.push((kind, list, i, j));
        }
    }
    let outcomes: Vec<Option<bool>> = jobs
        .par_iter()
        .map(|&(_, list, i, j)| {
            let comps = intersect_subtori(&list[i], &list[j])?;
            oracle_agrees(&list[i], &list[j], &comps, cap)
        })
        .collect::<Result<_>>()?;
    let mut summary = OracleSummary {
        denominator_cap: cap,
        sampled: jobs.len(),
        agreed: 0,
        skipped: 0,
        disagreements: Vec::new(),
    };
    for (&(kind, _, i, j), outcome) in jobs.iter().zip(outcomes) {
        match outcome {
            Some(true) => summary.agreed += 1,
            Some(false) => summary.disagreements.push((kind.to_string(), i, j)),
            None => summary.skipped += 1,
        }
    }
    Ok(summary)
}
