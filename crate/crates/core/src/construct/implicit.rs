//! Local evaluation of the construction.
//!
//! Only the squares and cubes that contain `u` can relabel an edge at `u`.
//! A square anchored at `w` has vertices within distance 2 of `w`, and a cube
//! within `cube_dim`, so the candidate sites are codewords in those balls
//! around `u`. Each candidate's status is settled by further ball queries
//! around it:
//!
//! * `v ∈ G'`: a keyed coin;
//! * `v ∈ G`: no other point of `G'` within `rg`;
//! * `w ∈ H`: no point of `G'` within `rh`;
//! * cube precedence: points of `G` whose cubes could share an edge lie within
//!   `2 * cube_dim` (cube vs cube) or `cube_dim + 2` (cube vs square).

use super::regions::{conflict_blocked, cube_region, square_region, Region};
use super::ConstructionParams;
use crate::code::CodeContext;
use crate::cube::{Edge, Vertex};
use crate::error::{Error, Result};
use crate::tape::{RandomTape, Tag};

#[derive(Clone, Debug)]
pub struct ImplicitFactorisation {
    ctx: CodeContext,
    params: ConstructionParams,
    tape: RandomTape,
}

impl ImplicitFactorisation {
    pub fn new(ctx: &CodeContext, params: &ConstructionParams, tape: &RandomTape) -> Result<Self> {
        params.validate(ctx.d())?;
        Ok(ImplicitFactorisation {
            ctx: ctx.clone(),
            params: *params,
            tape: *tape,
        })
    }

    pub fn ctx(&self) -> &CodeContext {
        &self.ctx
    }

    pub fn params(&self) -> &ConstructionParams {
        &self.params
    }

    pub fn tape(&self) -> &RandomTape {
        &self.tape
    }

    pub fn in_gprime(&self, v: Vertex) -> bool {
        self.tape.coin(v.0, Tag::GPrime, self.params.pg)
    }

    pub fn in_g(&self, v: Vertex) -> Result<bool> {
        if !self.in_gprime(v) {
            return Ok(false);
        }
        Ok(self
            .ctx
            .codewords_in_ball(v, self.params.rg)?
            .into_iter()
            .all(|w| w == v || !self.in_gprime(w)))
    }

    pub fn in_h(&self, w: Vertex) -> Result<bool> {
        Ok(self
            .ctx
            .codewords_in_ball(w, self.params.rh)?
            .into_iter()
            .all(|v| !self.in_gprime(v)))
    }

    fn cube_of(&self, v: Vertex) -> Region {
        cube_region(&self.ctx, &self.tape, v, self.params.cube_dim)
    }

    /// Cubes of `G` anchored within `radius` of `center` that share an edge with `region`.
    fn hits_other_cube(&self, center: Vertex, radius: u32, region: &Region) -> Result<bool> {
        for v in self.ctx.codewords_in_ball(center, radius)? {
            if v == region.anchor {
                continue;
            }
            if self.in_g(v)? && self.cube_of(v).shares_edge(region) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn cube_applied(&self, v: Vertex) -> Result<bool> {
        if !self.in_g(v)? {
            return Ok(false);
        }
        if !self.params.cube_precedence {
            return Ok(true);
        }
        let cube = self.cube_of(v);
        Ok(!self.hits_other_cube(v, 2 * self.params.cube_dim, &cube)?)
    }

    pub fn square_active(&self, w: Vertex) -> Result<bool> {
        if !self.in_h(w)? {
            return Ok(false);
        }
        if self.params.conflict_check && conflict_blocked(&self.ctx, &self.tape, w) {
            return Ok(false);
        }
        if self.params.cube_precedence {
            let square = square_region(&self.ctx, &self.tape, w);
            if self.hits_other_cube(w, self.params.cube_dim + 2, &square)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The relabelled regions containing `u`.
    pub fn regions_at(&self, u: Vertex) -> Result<Vec<Region>> {
        let mut out = Vec::new();
        for w in self.ctx.codewords_in_ball(u, 2)? {
            let square = square_region(&self.ctx, &self.tape, w);
            if square.contains(u) && self.square_active(w)? {
                out.push(square);
            }
        }
        for v in self.ctx.codewords_in_ball(u, self.params.cube_dim)? {
            if !self.in_gprime(v) {
                continue;
            }
            let cube = self.cube_of(v);
            if cube.contains(u) && self.cube_applied(v)? {
                out.push(cube);
            }
        }
        Ok(out)
    }

    /// Slot row at `u` (entry `x` = direction of the factor-`x` edge).
    pub fn slots_at(&self, u: Vertex) -> Result<Vec<u8>> {
        let d = self.ctx.d() as usize;
        let mut slots: Vec<u8> = (0..d as u8).collect();
        let mut claimed = 0u64;
        for region in self.regions_at(u)? {
            if claimed & region.mask != 0 {
                let dir = (claimed & region.mask).trailing_zeros() as usize;
                return Err(Error::OverlappingSwapRegions {
                    lo: Edge::at(u, dir).lo.0,
                    dir,
                });
            }
            claimed |= region.mask;
            let n = region.dirs.len();
            for (i, &y) in region.dirs.iter().enumerate() {
                slots[region.dirs[(i + 1) % n]] = y as u8;
            }
        }
        Ok(slots)
    }

    pub fn partner(&self, u: Vertex, x: usize) -> Result<Vertex> {
        let slots = self.slots_at(u)?;
        Ok(u.flip_index(slots[x] as usize))
    }

    pub fn untouched(&self, e: Edge) -> Result<bool> {
        Ok(self.slots_at(e.lo)?[e.dir] as usize == e.dir)
    }
}
