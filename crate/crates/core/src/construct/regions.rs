//! Swap regions and the per-site random choices shared by both modes.

use crate::code::CodeContext;
use crate::cube::{hamming_distance, Edge, Vertex};
use crate::tape::{RandomTape, Tag};

/// A subcube `anchor + span(dirs)` whose edges are relabelled cyclically:
/// the edge in direction `dirs[i]` moves to factor `dirs[i + 1 mod len]`.
///
/// A square swap is the two-direction case `[p, q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub anchor: Vertex,
    pub dirs: Vec<usize>,
    pub mask: u64,
}

impl Region {
    pub fn new(anchor: Vertex, dirs: Vec<usize>) -> Self {
        let mask = dirs.iter().fold(0u64, |m, &i| m | (1u64 << i));
        Region { anchor, dirs, mask }
    }

    #[inline]
    pub fn contains(&self, u: Vertex) -> bool {
        (u.0 ^ self.anchor.0) & !self.mask == 0
    }

    /// Two subcubes share an edge iff they intersect and have a common direction.
    #[inline]
    pub fn shares_edge(&self, other: &Region) -> bool {
        (self.anchor.0 ^ other.anchor.0) & !(self.mask | other.mask) == 0
            && self.mask & other.mask != 0
    }

    /// The factor label the region gives to its edges in direction `dir`.
    pub fn label_for(&self, dir: usize) -> Option<usize> {
        let i = self.dirs.iter().position(|&y| y == dir)?;
        Some(self.dirs[(i + 1) % self.dirs.len()])
    }

    /// Vertices of the subcube.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        submasks(self.mask).map(move |s| self.anchor.xor_mask(s))
    }

    /// Canonical edges of the subcube.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.dirs.iter().flat_map(move |&y| {
            submasks(self.mask & !(1u64 << y)).map(move |s| Edge::at(self.anchor.xor_mask(s), y))
        })
    }
}

/// All submasks of `mask`, including `0` and `mask`.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        // Increment within the bits of `mask`.
        let succ = (cur.wrapping_sub(mask)) & mask;
        next = (succ != 0).then_some(succ);
        Some(cur)
    })
}

/// The ordered pair `(p_w, q_w)` of distinct direction indices for codeword `w`.
pub fn draw_pq(ctx: &CodeContext, tape: &RandomTape, w: Vertex) -> (usize, usize) {
    let v = tape.distinct(w.0, Tag::Pq, ctx.d() as usize, 2);
    (v[0], v[1])
}

/// The ordered cube directions `r_v^(1..=cube_dim)` for `v`.
pub fn draw_cycle(ctx: &CodeContext, tape: &RandomTape, v: Vertex, cube_dim: u32) -> Vec<usize> {
    tape.distinct(v.0, Tag::R6, ctx.d() as usize, cube_dim as usize)
}

pub(crate) fn square_region(ctx: &CodeContext, tape: &RandomTape, w: Vertex) -> Region {
    let (p, q) = draw_pq(ctx, tape, w);
    Region::new(w, vec![p, q])
}

pub(crate) fn cube_region(ctx: &CodeContext, tape: &RandomTape, v: Vertex, cube_dim: u32) -> Region {
    Region::new(v, draw_cycle(ctx, tape, v, cube_dim))
}

/// The square-swap conflict rule for codeword `u`.
///
/// Let `w` be the codeword adjacent to `u + b(p_u) + b(q_u)`. If `w` exists and
/// `w + b(p_w) + b(q_w)` is adjacent to `u`, neither square is swapped. The
/// relation is symmetric in `u` and `w`.
pub fn conflict_blocked(ctx: &CodeContext, tape: &RandomTape, u: Vertex) -> bool {
    let (p, q) = draw_pq(ctx, tape, u);
    let far = u.flip_index(p).flip_index(q);
    let Some((w, _)) = ctx.adjacent_codeword(far) else {
        return false;
    };
    let (pw, qw) = draw_pq(ctx, tape, w);
    let far_w = w.flip_index(pw).flip_index(qw);
    hamming_distance(far_w, u) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn submasks_enumerates_all() {
        let subs: Vec<u64> = submasks(0b1010).collect();
        assert_eq!(subs, vec![0, 0b0010, 0b1000, 0b1010]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn region_edges_and_vertices() {
        let r = Region::new(Vertex(0b100000), vec![0, 2, 3]);
        assert_eq!(r.vertices().count(), 8);
        let edges: HashSet<Edge> = r.edges().collect();
        assert_eq!(edges.len(), 12);
        for e in &edges {
            assert!(r.contains(e.lo) && r.contains(e.hi()));
        }
        assert_eq!(r.label_for(3), Some(0));
        assert_eq!(r.label_for(0), Some(2));
        assert_eq!(r.label_for(1), None);
    }

    /// Edge sharing by the closed form agrees with explicit edge sets.
    #[test]
    fn shares_edge_matches_edge_sets() {
        let tape = RandomTape::new(9);
        let mut rng_regions = Vec::new();
        for i in 0..60u64 {
            let dim = 1 + (tape.word(i, Tag::Subset) % 4) as usize;
            let dirs = tape.distinct(i, Tag::R6, 7, dim);
            let anchor = Vertex(tape.word(i, Tag::GPrime) & 0x7f);
            rng_regions.push(Region::new(anchor, dirs));
        }
        for a in &rng_regions {
            let ea: HashSet<Edge> = a.edges().collect();
            for b in &rng_regions {
                let eb: HashSet<Edge> = b.edges().collect();
                assert_eq!(a.shares_edge(b), !ea.is_disjoint(&eb));
            }
        }
    }
}
