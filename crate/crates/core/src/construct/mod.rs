//! The randomised 1-factorisation and its baselines.
//!
//! Starting from the directional matchings `M_x`, the construction samples
//! codeword sets `G' ⊇ G` and `H`, swaps a random square around each
//! eligible codeword of `H` and cyclically relabels a random subcube around
//! each codeword of `G`. Both forms agree exactly:
//!
//! * [`ExplicitFactorisation`] materialises a `d * 2^d` slot table;
//! * [`ImplicitFactorisation`] answers `partner(u, x)` from the neighbourhood
//!   of `u` alone, reading the same keyed random tape.

mod explicit;
mod greedy;
mod implicit;
mod plan;
mod regions;

pub use explicit::{apply_explicit, directional, ExplicitFactorisation, CONFLICT_SLOT, UNSET_SLOT};
pub use greedy::random_greedy_factorisation;
pub use implicit::ImplicitFactorisation;
pub use plan::{sample_plan, PlanSummary, SwapPlan};
pub use regions::{conflict_blocked, draw_cycle, draw_pq, Region};

use serde::{Deserialize, Serialize};

use crate::code::CodeContext;
use crate::cube::{Edge, Vertex};
use crate::error::{Error, Result};
use crate::tape::RandomTape;

/// Smallest dimension accepted by the full construction.
pub const MIN_CONSTRUCTION_D: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionParams {
    /// Probability that a codeword joins `G'`.
    pub pg: f64,
    /// Points of `G'` with another point of `G'` within this distance are dropped from `G`.
    pub rg: u32,
    /// Codewords within this distance of `G'` are excluded from `H`.
    pub rh: u32,
    /// Dimension of the subcube relabelled around each point of `G`.
    pub cube_dim: u32,
    /// Apply the square-swap conflict rule.
    pub conflict_check: bool,
    /// Drop squares and cubes whose edges collide with another cube.
    pub cube_precedence: bool,
}

impl ConstructionParams {
    pub fn paper_defaults(d: u32) -> Self {
        ConstructionParams {
            pg: 2f64.powf(-(d as f64) / 10.0),
            rg: 14,
            rh: 10,
            cube_dim: 6,
            conflict_check: true,
            cube_precedence: true,
        }
    }

    /// The reduced radii used for desk-scale cross-mode checks.
    pub fn scaled(pg: f64, rg: u32, rh: u32, cube_dim: u32) -> Self {
        ConstructionParams {
            pg,
            rg,
            rh,
            cube_dim,
            conflict_check: true,
            cube_precedence: true,
        }
    }

    pub fn validate(&self, d: u32) -> Result<()> {
        if d < MIN_CONSTRUCTION_D {
            return Err(Error::UnsupportedDimension {
                d,
                reason: format!("the full construction requires d >= {MIN_CONSTRUCTION_D}"),
            });
        }
        if !(0.0..=1.0).contains(&self.pg) {
            return Err(Error::InvalidParams(format!("pg = {} not in [0, 1]", self.pg)));
        }
        if self.rg < self.rh {
            return Err(Error::InvalidParams(format!(
                "rg = {} must be at least rh = {}",
                self.rg, self.rh
            )));
        }
        if self.cube_dim == 0 || self.cube_dim > d {
            return Err(Error::InvalidParams(format!(
                "cube_dim = {} must be in 1..={d}",
                self.cube_dim
            )));
        }
        Ok(())
    }

    /// Whether the radii guarantee edge-disjoint swap regions without any
    /// precedence rule: `rg > 2 * cube_dim` and `rh > cube_dim + 2`.
    pub fn radii_separate_regions(&self) -> bool {
        self.rg > 2 * self.cube_dim && self.rh > self.cube_dim + 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Explicit,
    Implicit,
}

/// A 1-factorisation of `Q_X`, factor labels being direction indices.
#[derive(Clone, Debug)]
pub enum Factorisation {
    Explicit(ExplicitFactorisation),
    Implicit(ImplicitFactorisation),
}

impl Factorisation {
    pub fn ctx(&self) -> &CodeContext {
        match self {
            Factorisation::Explicit(f) => f.ctx(),
            Factorisation::Implicit(f) => f.ctx(),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Factorisation::Explicit(_) => Mode::Explicit,
            Factorisation::Implicit(_) => Mode::Implicit,
        }
    }

    /// Slot row at `u`: entry `x` is the direction index of the factor-`x` edge.
    pub fn slots_at(&self, u: Vertex) -> Result<Vec<u8>> {
        match self {
            Factorisation::Explicit(f) => Ok(f.slots_at(u).to_vec()),
            Factorisation::Implicit(f) => f.slots_at(u),
        }
    }

    /// The vertex matched to `u` in factor `x`.
    pub fn partner(&self, u: Vertex, x: usize) -> Result<Vertex> {
        match self {
            Factorisation::Explicit(f) => Ok(f.partner(u, x)),
            Factorisation::Implicit(f) => f.partner(u, x),
        }
    }

    /// Whether `e` still lies in the factor of its own direction.
    pub fn untouched(&self, e: Edge) -> Result<bool> {
        match self {
            Factorisation::Explicit(f) => Ok(f.untouched(e)),
            Factorisation::Implicit(f) => f.untouched(e),
        }
    }

    pub fn as_explicit(&self) -> Option<&ExplicitFactorisation> {
        match self {
            Factorisation::Explicit(f) => Some(f),
            Factorisation::Implicit(_) => None,
        }
    }

    /// The slot table, evaluating an implicit factorisation at every vertex.
    pub fn to_explicit(&self) -> Result<ExplicitFactorisation> {
        match self {
            Factorisation::Explicit(f) => Ok(f.clone()),
            Factorisation::Implicit(f) => {
                let ctx = f.ctx();
                let mut table = ExplicitFactorisation::empty(ctx)?;
                for u in 0..1u64 << ctx.d() {
                    let u = Vertex(u);
                    for (x, y) in f.slots_at(u)?.into_iter().enumerate() {
                        table.set_slot(u, x, y);
                    }
                }
                Ok(table)
            }
        }
    }
}

/// Samples the plan and materialises the factorisation.
pub fn construct_explicit(
    ctx: &CodeContext,
    params: &ConstructionParams,
    tape: &RandomTape,
) -> Result<(SwapPlan, ExplicitFactorisation)> {
    let plan = sample_plan(ctx, params, tape)?;
    let fac = apply_explicit(ctx, &plan)?;
    Ok((plan, fac))
}
