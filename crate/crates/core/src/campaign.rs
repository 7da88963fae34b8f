//! Seeded verification campaigns.
//!
//! Each instance draws from its own ChaCha stream (master seed, stream =
//! instance index), so results do not depend on how instances are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lpp::lpp_growth;
use crate::mideal::HilbertFunction;
use crate::monom::{box_monomials, lex_segment, upper_shadow, Ambient, DegreeSequence};
use crate::polyfp::{random_containing_ideal, random_regular_sequence, PolynomialIdeal, PrimeField, DEFAULT_ATTEMPTS, DEFAULT_DENSITY};

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub n: usize,
    pub degrees: DegreeSequence,
    pub field: PrimeField,
    pub trials: usize,
    pub seed: u64,
    /// Worker threads; 0 picks the rayon default.
    pub jobs: usize,
    pub max_extra: usize,
    pub density: f64,
    pub attempts: usize,
}

impl CampaignConfig {
    pub fn new(n: usize, degrees: DegreeSequence, field: PrimeField, trials: usize, seed: u64) -> Self {
        CampaignConfig {
            n,
            degrees,
            field,
            trials,
            seed,
            jobs: 0,
            max_extra: 3,
            density: DEFAULT_DENSITY,
            attempts: DEFAULT_ATTEMPTS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthRow {
    pub d: u32,
    pub h_d: u64,
    pub h_next: u64,
    pub bound: u64,
}

impl GrowthRow {
    pub fn passes(&self) -> bool {
        self.h_next <= self.bound
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub index: usize,
    pub ideal: PolynomialIdeal,
    pub hilbert: HilbertFunction,
    pub rows: Vec<GrowthRow>,
}

impl Instance {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.passes()).count()
    }
}

#[derive(Debug, Clone)]
pub struct CampaignReport {
    pub instances: Vec<Instance>,
}

impl CampaignReport {
    pub fn violations(&self) -> usize {
        self.instances.iter().map(Instance::violations).sum()
    }

    pub fn rows_checked(&self) -> usize {
        self.instances.iter().map(|i| i.rows.len()).sum()
    }
}

pub fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// One random ideal containing a random regular sequence of the configured
/// degrees, plus up to `max_extra` forms of degree in `[2, s]`, checked
/// against `lpp_growth` at every `d <= s`.
pub fn run_instance(config: &CampaignConfig, index: usize) -> Result<Instance> {
    let n = config.n;
    let a = &config.degrees;
    if !a.is_finite() || a.len() != n {
        return Err(Error::Precondition(
            "the campaign needs a finite degree sequence of length n".into(),
        ));
    }
    let s = a.socle_degree().expect("finite");
    let ambient = Ambient::standard(n);
    let mut rng = instance_rng(config.seed, index);
    let fs = random_regular_sequence(&ambient, a, config.field, rng.gen(), config.attempts)?;
    let count = rng.gen_range(0..=config.max_extra);
    let extra: Vec<u32> = (0..count).map(|_| rng.gen_range(2..=s.max(2))).collect();
    let ideal = random_containing_ideal(&ambient, &fs, &extra, config.density, config.field, rng.gen())?;
    let hilbert = ideal.hilbert_function(s + 1)?;
    let mut rows = Vec::with_capacity(s as usize + 1);
    for d in 0..=s {
        let h_d = hilbert.value(d).expect("in range");
        let h_next = hilbert.value(d + 1).expect("in range");
        let bound = lpp_growth(a, n, d, h_d)?;
        rows.push(GrowthRow { d, h_d, h_next, bound });
    }
    Ok(Instance {
        index,
        ideal,
        hilbert,
        rows,
    })
}

pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let instances = pool.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|k| run_instance(config, k))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(CampaignReport { instances })
}

/// Outcome of the exhaustive shadow comparison for one `(d, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchRow {
    pub d: u32,
    pub k: usize,
    pub subsets: u64,
    pub lex_shadow: usize,
    pub min_shadow: usize,
    pub violations: u64,
}

/// Compares the upper shadow of every `k`-subset of degree-`d` box monomials
/// with that of the lex segment of size `k`, for all `d <= max_degree`.
/// Fails with `BudgetExceeded` when a degree has more than `budget` subsets.
pub fn cl_search(n: usize, a: &DegreeSequence, max_degree: u32, budget: u128) -> Result<Vec<SearchRow>> {
    let mut rows = Vec::new();
    for d in 0..=max_degree {
        let cells = box_monomials(n, a, d)?;
        if cells.len() >= 64 || (1u128 << cells.len()) > budget {
            return Err(Error::BudgetExceeded {
                size: 1u128.checked_shl(cells.len() as u32).unwrap_or(u128::MAX),
                budget,
            });
        }
        let m = cells.len();
        let mut per_k: Vec<(u64, usize, u64)> = vec![(0, usize::MAX, 0); m + 1];
        let lex: Vec<usize> = (0..=m)
            .map(|k| Ok(upper_shadow(n, a, &lex_segment(n, a, d, k)?)?.len()))
            .collect::<Result<_>>()?;
        let results: Vec<(usize, usize)> = (0u64..(1u64 << m))
            .into_par_iter()
            .map(|mask| {
                let subset: Vec<_> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| cells[i].clone()).collect();
                let size = upper_shadow(n, a, &subset).expect("box monomials").len();
                (subset.len(), size)
            })
            .collect();
        for (k, size) in results {
            let row = &mut per_k[k];
            row.0 += 1;
            row.1 = row.1.min(size);
            if size < lex[k] {
                row.2 += 1;
            }
        }
        for (k, (subsets, min_shadow, violations)) in per_k.into_iter().enumerate() {
            rows.push(SearchRow {
                d,
                k,
                subsets,
                lex_shadow: lex[k],
                min_shadow,
                violations,
            });
        }
    }
    Ok(rows)
}
