//! Monte-Carlo estimate of how often a union of `r` random factors is connected.
//!
//! Each sample is a uniformly random ordering of the factors. Its prefix of
//! length `r` is a uniform `r`-subset, so one ordering yields a sample for
//! every `r` at once. The union-find is grown one factor at a time and the
//! sample's threshold is the first prefix length that connects `Q_d`.

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::components::IncrementalUnion;
use crate::code::CodeContext;
use crate::construct::{
    construct_explicit, directional, random_greedy_factorisation, ConstructionParams,
    ExplicitFactorisation,
};
use crate::error::Result;
use crate::tape::{RandomTape, Tag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionKind {
    Paper,
    Directional,
    Greedy,
}

impl ConstructionKind {
    pub fn build(
        self,
        ctx: &CodeContext,
        params: &ConstructionParams,
        tape: &RandomTape,
    ) -> Result<ExplicitFactorisation> {
        match self {
            ConstructionKind::Paper => Ok(construct_explicit(ctx, params, tape)?.1),
            ConstructionKind::Directional => directional(ctx),
            ConstructionKind::Greedy => random_greedy_factorisation(ctx, tape),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub master_seed: u64,
    pub seeds: usize,
    pub samples: usize,
    pub params: ConstructionParams,
    pub kinds: Vec<ConstructionKind>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeedProfile {
    pub seed: u64,
    /// Per sample, the least `r` whose prefix union is connected.
    pub thresholds: Vec<usize>,
    /// Index `r - 1`: fraction of samples connected at `r`.
    pub fractions: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KindProfile {
    pub kind: ConstructionKind,
    pub per_seed: Vec<SeedProfile>,
    /// Index `r - 1`: fraction over all seeds and samples.
    pub fractions: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub d: u32,
    pub master_seed: u64,
    pub seeds: Vec<u64>,
    pub samples: usize,
    pub profiles: Vec<KindProfile>,
}

/// Connection threshold of each sampled factor ordering.
pub fn connectivity_thresholds(
    fac: &ExplicitFactorisation,
    samples: usize,
    tape: &RandomTape,
) -> Vec<usize> {
    let d = fac.d();
    (0..samples)
        .map(|j| {
            let mut order: Vec<usize> = (0..d).collect();
            order.shuffle(&mut tape.stream(j as u64, Tag::Subset));
            let mut uf = IncrementalUnion::new(fac.vertex_count());
            for (i, &x) in order.iter().enumerate() {
                uf.add_factor(fac, x);
                if uf.count() == 1 {
                    return i + 1;
                }
            }
            unreachable!("the union of all factors is connected")
        })
        .collect()
}

fn fractions(thresholds: &[usize], d: usize) -> Vec<f64> {
    (1..=d)
        .map(|r| thresholds.iter().filter(|&&t| t <= r).count() as f64 / thresholds.len() as f64)
        .collect()
}

pub fn run_experiment(ctx: &CodeContext, config: &ExperimentConfig) -> Result<ExperimentReport> {
    ctx.check_explicit()?;
    let d = ctx.d() as usize;
    let master = RandomTape::new(config.master_seed);
    let seeds: Vec<u64> = (0..config.seeds as u64)
        .map(|i| master.word(i, Tag::Experiment))
        .collect();
    let mut profiles = Vec::new();
    for &kind in &config.kinds {
        let per_seed = seeds
            .par_iter()
            .map(|&seed| {
                let tape = RandomTape::new(seed);
                let fac = kind.build(ctx, &config.params, &tape)?;
                let thresholds = connectivity_thresholds(&fac, config.samples, &tape);
                Ok(SeedProfile {
                    seed,
                    fractions: fractions(&thresholds, d),
                    thresholds,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let all: Vec<usize> = per_seed.iter().flat_map(|s| s.thresholds.iter().copied()).collect();
        profiles.push(KindProfile {
            kind,
            fractions: fractions(&all, d),
            per_seed,
        });
    }
    Ok(ExperimentReport {
        d: ctx.d(),
        master_seed: config.master_seed,
        seeds,
        samples: config.samples,
        profiles,
    })
}
