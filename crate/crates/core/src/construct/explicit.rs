use std::collections::HashSet;

use super::plan::SwapPlan;
use crate::code::CodeContext;
use crate::cube::{Edge, Vertex};
use crate::error::{Error, Result};

/// Slot value for a factor with no edge recorded at a vertex.
pub const UNSET_SLOT: u8 = u8::MAX;
/// Slot value for a factor given two different edges at a vertex.
pub const CONFLICT_SLOT: u8 = u8::MAX - 1;

/// A fully materialised factorisation.
///
/// `slots[u * d + x]` is the direction index of the unique factor-`x` edge at
/// `u`, so `partner(u, x) = u + b(slots[u * d + x])`.
#[derive(Clone, Debug)]
pub struct ExplicitFactorisation {
    ctx: CodeContext,
    slots: Vec<u8>,
}

impl ExplicitFactorisation {
    fn filled(ctx: &CodeContext, fill: impl Fn(usize) -> u8) -> Result<Self> {
        ctx.check_explicit()?;
        let d = ctx.d() as usize;
        let n = 1usize << d;
        let slots = (0..n * d).map(|i| fill(i % d)).collect();
        Ok(ExplicitFactorisation {
            ctx: ctx.clone(),
            slots,
        })
    }

    /// A table with every slot unset, to be filled by [`Self::assign_edge`].
    pub fn empty(ctx: &CodeContext) -> Result<Self> {
        Self::filled(ctx, |_| UNSET_SLOT)
    }

    pub fn ctx(&self) -> &CodeContext {
        &self.ctx
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.ctx.d() as usize
    }

    pub fn vertex_count(&self) -> usize {
        1usize << self.d()
    }

    #[inline]
    pub fn slots_at(&self, u: Vertex) -> &[u8] {
        let d = self.d();
        let base = u.0 as usize * d;
        &self.slots[base..base + d]
    }

    #[inline]
    pub fn slot(&self, u: Vertex, x: usize) -> u8 {
        self.slots[u.0 as usize * self.d() + x]
    }

    /// Overwrites one slot; no consistency is enforced.
    pub fn set_slot(&mut self, u: Vertex, x: usize, dir: u8) {
        let d = self.d();
        self.slots[u.0 as usize * d + x] = dir;
    }

    /// Records edge `e` in factor `x` at both endpoints, marking clashes.
    pub fn assign_edge(&mut self, e: Edge, x: usize) {
        for end in [e.lo, e.hi()] {
            let cur = self.slot(end, x);
            let new = if cur == UNSET_SLOT || cur == e.dir as u8 {
                e.dir as u8
            } else {
                CONFLICT_SLOT
            };
            self.set_slot(end, x, new);
        }
    }

    /// Partner of `u` in factor `x`. Assumes a valid table.
    #[inline]
    pub fn partner(&self, u: Vertex, x: usize) -> Vertex {
        u.flip_index(self.slot(u, x) as usize)
    }

    /// Factor label of edge `e`, if present in the table at `e.lo`.
    pub fn label_of(&self, e: Edge) -> Option<usize> {
        self.slots_at(e.lo).iter().position(|&y| y as usize == e.dir)
    }

    pub fn untouched(&self, e: Edge) -> bool {
        self.slot(e.lo, e.dir) as usize == e.dir
    }

    /// Number of canonical edges not in their own direction's factor.
    pub fn touched_edge_count(&self) -> usize {
        let d = self.d();
        (0..self.vertex_count())
            .map(|u| {
                let row = &self.slots[u * d..u * d + d];
                (0..d)
                    .filter(|&y| u >> y & 1 == 0 && row[y] as usize != y)
                    .count()
            })
            .sum()
    }

    /// Canonical edges of factor `x`, ordered by lower endpoint.
    pub fn factor_edges(&self, x: usize) -> impl Iterator<Item = Edge> + '_ {
        (0..self.vertex_count() as u64).filter_map(move |u| {
            let y = self.slot(Vertex(u), x);
            (y < self.d() as u8 && u >> y & 1 == 0).then_some(Edge {
                lo: Vertex(u),
                dir: y as usize,
            })
        })
    }
}

impl PartialEq for ExplicitFactorisation {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.d() == other.ctx.d() && self.slots == other.slots
    }
}

/// The directional matchings: factor `x` is every edge in direction `x`.
pub fn directional(ctx: &CodeContext) -> Result<ExplicitFactorisation> {
    ExplicitFactorisation::filled(ctx, |x| x as u8)
}

/// Applies the plan's squares and cubes to the directional matchings.
///
/// Every relabelled edge is recorded; an edge claimed by two regions aborts
/// with [`Error::OverlappingSwapRegions`] instead of producing a non-matching.
pub fn apply_explicit(ctx: &CodeContext, plan: &SwapPlan) -> Result<ExplicitFactorisation> {
    let mut fac = directional(ctx)?;
    let mut touched: HashSet<Edge> = HashSet::new();
    for region in plan.regions() {
        for e in region.edges() {
            if !touched.insert(e) {
                return Err(Error::OverlappingSwapRegions {
                    lo: e.lo.0,
                    dir: e.dir,
                });
            }
        }
        let n = region.dirs.len();
        for a in region.vertices() {
            for (i, &y) in region.dirs.iter().enumerate() {
                let label = region.dirs[(i + 1) % n];
                fac.set_slot(a, label, y as u8);
            }
        }
    }
    Ok(fac)
}
