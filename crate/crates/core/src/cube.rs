//! The hypercube `Q_X` with directions indexed by a set `X` of nonzero
//! vectors of `F_2^k`.
//!
//! Directions are sorted by their integer value; a direction's position in
//! that order is its *index*, and bit `i` of a [`Vertex`] is the coordinate in
//! direction `directions[i]`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{width_mask, Gf2Vec};

/// A direction of the cube, which is also an element of `F_2^k`.
pub type Direction = Gf2Vec;

pub const MAX_DIMENSION: u32 = 64;

/// A vertex of `Q_X`, bit `i` being the coordinate in direction index `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(pub u64);

impl Vertex {
    pub const ZERO: Vertex = Vertex(0);

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn bit(self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }

    #[inline]
    pub fn flip_index(self, i: usize) -> Vertex {
        Vertex(self.0 ^ (1u64 << i))
    }

    #[inline]
    pub fn xor_mask(self, mask: u64) -> Vertex {
        Vertex(self.0 ^ mask)
    }

    #[inline]
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// Text form: `d` characters with index 0 rightmost, so the last
    /// character is the coordinate at index 0.
    pub fn to_bit_string(self, d: u32) -> String {
        (0..d as usize)
            .rev()
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }

    pub fn parse_bit_string(s: &str) -> Result<Vertex> {
        if s.len() > MAX_DIMENSION as usize {
            return Err(Error::Parse {
                line: 0,
                message: format!("vertex string longer than {MAX_DIMENSION}"),
            });
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().rev().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => {
                    return Err(Error::Parse {
                        line: 0,
                        message: format!("invalid vertex character {c:?} in {s:?}"),
                    })
                }
            }
        }
        Ok(Vertex(bits))
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex({:#x})", self.0)
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Vertex::parse_bit_string(s)
    }
}

/// A canonical undirected edge `{lo, lo + b(dir)}` where `lo` has a zero at `dir`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Edge {
    pub lo: Vertex,
    pub dir: usize,
}

impl Edge {
    /// Canonical edge through `u` in direction index `dir`.
    #[inline]
    pub fn at(u: Vertex, dir: usize) -> Edge {
        Edge {
            lo: Vertex(u.0 & !(1u64 << dir)),
            dir,
        }
    }

    #[inline]
    pub fn hi(self) -> Vertex {
        self.lo.flip_index(self.dir)
    }
}

/// Identifier of a small cube: a vertex with every coordinate in `D` cleared.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SmallCubeId(pub u64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeSpace {
    d: u32,
    directions: Vec<Direction>,
    index: HashMap<Direction, usize>,
}

impl CubeSpace {
    /// Builds the cube on the given directions (sorted and validated here).
    pub fn new(mut directions: Vec<Direction>) -> Result<Self> {
        directions.sort_unstable();
        directions.dedup();
        let d = directions.len() as u32;
        if d == 0 || d > MAX_DIMENSION {
            return Err(Error::UnsupportedDimension {
                d,
                reason: format!("need 1 <= d <= {MAX_DIMENSION} distinct directions"),
            });
        }
        if directions[0].is_zero() {
            return Err(Error::UnknownDirection(0));
        }
        let index = directions.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        Ok(CubeSpace {
            d,
            directions,
            index,
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    #[inline]
    pub fn direction(&self, i: usize) -> Direction {
        self.directions[i]
    }

    pub fn position(&self, x: Direction) -> Result<usize> {
        self.index
            .get(&x)
            .copied()
            .ok_or(Error::UnknownDirection(x.0))
    }

    pub fn contains_direction(&self, x: Direction) -> bool {
        self.index.contains_key(&x)
    }

    /// Mask of all `d` coordinates.
    #[inline]
    pub fn full_mask(&self) -> u64 {
        width_mask(self.d)
    }

    pub fn vertex_count(&self) -> u128 {
        1u128 << self.d
    }

    pub fn basis_vertex(&self, x: Direction) -> Result<Vertex> {
        Ok(Vertex(1u64 << self.position(x)?))
    }

    pub fn flip(&self, u: Vertex, x: Direction) -> Result<Vertex> {
        Ok(u.flip_index(self.position(x)?))
    }

    /// Mask of coordinate positions for a set of directions.
    pub fn mask_of(&self, dirs: &[Direction]) -> Result<u64> {
        dirs.iter()
            .try_fold(0u64, |m, x| Ok(m | (1u64 << self.position(*x)?)))
    }

    pub fn small_cube_id(&self, u: Vertex, dir_mask: u64) -> SmallCubeId {
        SmallCubeId(u.0 & !dir_mask & self.full_mask())
    }

    /// All vertices within Hamming distance `radius` of `u`, by increasing distance.
    pub fn ball(&self, u: Vertex, radius: u32) -> impl Iterator<Item = Vertex> + '_ {
        let r = radius.min(self.d);
        (0..=r).flat_map(move |w| MaskCombinations::new(self.d, w).map(move |m| u.xor_mask(m)))
    }
}

#[inline]
pub fn hamming_distance(u: Vertex, v: Vertex) -> u32 {
    (u.0 ^ v.0).count_ones()
}

/// Iterates every `n`-bit mask of weight `w` in increasing numeric order.
#[derive(Clone, Debug)]
pub struct MaskCombinations {
    current: Option<u128>,
    limit: u128,
}

impl MaskCombinations {
    pub fn new(n: u32, w: u32) -> Self {
        let current = (w <= n).then(|| (1u128 << w) - 1);
        MaskCombinations {
            current,
            limit: 1u128 << n,
        }
    }
}

impl Iterator for MaskCombinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let c = self.current?;
        if c >= self.limit {
            self.current = None;
            return None;
        }
        // Gosper's hack.
        self.current = if c == 0 {
            None
        } else {
            let t = c & c.wrapping_neg();
            let r = c + t;
            Some((((r ^ c) >> 2) / t) | r)
        };
        Some(c as u64)
    }
}

/// `sum_{i <= r} C(n, i)`, saturating.
pub fn binomial_sum(n: u32, r: u32) -> u128 {
    let mut total = 0u128;
    let mut term = 1u128;
    for i in 0..=r.min(n) {
        total = total.saturating_add(term);
        term = term.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    total
}
