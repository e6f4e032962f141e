//! The Hamming code `C_X = { u : phi(u) = 0 }` on `Q_X`.
//!
//! For dimension `d` we take `k = ceil(log2(d + 1))` and let `X` contain every
//! odd-weight element of `F_2^k` plus the smallest even-weight nonzero
//! elements needed to reach `|X| = d`. With this choice `phi` is surjective,
//! `|C| = 2^(d-k)`, and the code has minimum distance 3.

use serde::{Deserialize, Serialize};

use crate::cube::{binomial_sum, CubeSpace, Vertex};
use crate::error::{Error, Result};
use crate::gf2::Gf2Vec;
use crate::limits;

/// Default ceiling on the number of ball vertices a codeword search may scan.
pub const DEFAULT_BALL_LIMIT: u64 = 1_000_000_000;

#[derive(Clone, Debug)]
pub struct CodeContext {
    d: u32,
    k: u32,
    space: CubeSpace,
    /// `syndrome_index[s]` is the position of `s` in `X`, if `s` is active.
    syndrome_index: Vec<Option<u8>>,
    /// Positions of the unit vectors `e_0..e_{k-1}` (always active).
    unit_positions: Vec<usize>,
    ball_limit: u64,
    explicit_cap: u32,
}

/// JSON description of a context: `{d, k, X}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextDescription {
    pub d: u32,
    pub k: u32,
    #[serde(rename = "X")]
    pub x: Vec<u64>,
}

/// Smallest `k` with `2^k >= d + 1`.
pub fn syndrome_width(d: u32) -> u32 {
    let mut k = 0;
    while (1u64 << k) < d as u64 + 1 {
        k += 1;
    }
    k
}

/// The direction set chosen for dimension `d`, ascending.
pub fn direction_set(d: u32) -> Vec<Gf2Vec> {
    let k = syndrome_width(d);
    let all = 1u64..(1u64 << k);
    let odd = all.clone().filter(|v| v.count_ones() % 2 == 1);
    let even = all.filter(|v| v.count_ones() % 2 == 0);
    let extra = d as usize - (1usize << (k - 1));
    let mut x: Vec<Gf2Vec> = odd.chain(even.take(extra)).map(Gf2Vec).collect();
    x.sort_unstable();
    x
}

pub fn build_context(d: u32) -> Result<CodeContext> {
    if d < 3 {
        return Err(Error::UnsupportedDimension {
            d,
            reason: "the code needs d >= 3".into(),
        });
    }
    if d > crate::cube::MAX_DIMENSION {
        return Err(Error::UnsupportedDimension {
            d,
            reason: format!("vertices are limited to {} bits", crate::cube::MAX_DIMENSION),
        });
    }
    let k = syndrome_width(d);
    let space = CubeSpace::new(direction_set(d))?;
    let mut syndrome_index = vec![None; 1usize << k];
    for (i, x) in space.directions().iter().enumerate() {
        syndrome_index[x.0 as usize] = Some(i as u8);
    }
    let unit_positions = (0..k)
        .map(|j| space.position(Gf2Vec::unit(j)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CodeContext {
        d,
        k,
        space,
        syndrome_index,
        unit_positions,
        ball_limit: DEFAULT_BALL_LIMIT,
        explicit_cap: limits::explicit_cap(),
    })
}

impl CodeContext {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn space(&self) -> &CubeSpace {
        &self.space
    }

    pub fn ball_limit(&self) -> u64 {
        self.ball_limit
    }

    pub fn with_ball_limit(mut self, limit: u64) -> Self {
        self.ball_limit = limit;
        self
    }

    pub fn explicit_cap(&self) -> u32 {
        self.explicit_cap
    }

    pub fn with_explicit_cap(mut self, cap: u32) -> Self {
        self.explicit_cap = cap;
        self
    }

    /// Fails unless the whole cube may be materialised.
    pub fn check_explicit(&self) -> Result<()> {
        if self.d > self.explicit_cap {
            Err(Error::ExplicitCapExceeded {
                d: self.d,
                cap: self.explicit_cap,
            })
        } else {
            Ok(())
        }
    }

    pub fn describe(&self) -> ContextDescription {
        ContextDescription {
            d: self.d,
            k: self.k,
            x: self.space.directions().iter().map(|x| x.0).collect(),
        }
    }

    /// Whether `s` is an element of `X`.
    pub fn is_active(&self, s: Gf2Vec) -> bool {
        self.active_position(s).is_some()
    }

    /// Position of `s` in `X`, if active.
    #[inline]
    pub fn active_position(&self, s: Gf2Vec) -> Option<usize> {
        self.syndrome_index
            .get(s.0 as usize)
            .copied()
            .flatten()
            .map(usize::from)
    }

    /// `phi(u) = sum_{x in X} u_x x`.
    #[inline]
    pub fn phi(&self, u: Vertex) -> Gf2Vec {
        let mut acc = 0u64;
        let mut bits = u.0;
        let dirs = self.space.directions();
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc ^= dirs[i].0;
            bits &= bits - 1;
        }
        Gf2Vec(acc)
    }

    #[inline]
    pub fn in_code(&self, u: Vertex) -> bool {
        self.phi(u).is_zero()
    }

    /// The unique codeword adjacent to `u`, with the direction index joining them.
    ///
    /// Returns `None` when `u` is itself a codeword or its syndrome is inactive.
    pub fn adjacent_codeword(&self, u: Vertex) -> Option<(Vertex, usize)> {
        let s = self.phi(u);
        if s.is_zero() {
            return None;
        }
        self.active_position(s).map(|i| (u.flip_index(i), i))
    }

    fn check_ball(&self, radius: u32) -> Result<u32> {
        let r = radius.min(self.d);
        let work = binomial_sum(self.d, r);
        if work > self.ball_limit as u128 {
            return Err(Error::RadiusInfeasible {
                radius,
                work,
                limit: self.ball_limit,
            });
        }
        Ok(r)
    }

    /// All codewords at distance at most `radius` from `u`.
    ///
    /// Subsets `S` of size below `radius` are enumerated; the syndrome of
    /// `u + b(S)` then forces at most one further coordinate. Counting only
    /// completions above `max(S)` yields each codeword once.
    pub fn codewords_in_ball(&self, u: Vertex, radius: u32) -> Result<Vec<Vertex>> {
        let r = self.check_ball(radius)?;
        let mut out = Vec::new();
        let base = self.phi(u);
        if base.is_zero() {
            out.push(u);
        }
        if r == 0 {
            return Ok(out);
        }
        let dirs = self.space.directions();
        let d = self.d as usize;
        // Depth-first over increasing index sequences of length < r.
        let mut stack: Vec<(usize, u64, Gf2Vec, u32)> = vec![(0, 0, base, 0)];
        while let Some((start, mask, syn, len)) = stack.pop() {
            // Complete with one more coordinate above the current maximum.
            if let Some(i) = self.active_position(syn) {
                if i >= start {
                    out.push(u.xor_mask(mask | (1u64 << i)));
                }
            }
            if len + 1 < r {
                for (i, &x) in dirs.iter().enumerate().take(d).skip(start) {
                    stack.push((i + 1, mask | (1u64 << i), syn + x, len + 1));
                }
            }
        }
        Ok(out)
    }

    /// All `2^(d-k)` codewords, ordered by their free coordinates.
    ///
    /// The unit vectors `e_j` are active and act as pivots: the free
    /// coordinates are chosen arbitrarily and pivot bits are set to cancel
    /// the partial syndrome.
    pub fn enumerate_code(&self) -> Result<impl Iterator<Item = Vertex> + '_> {
        self.check_explicit()?;
        let pivot_mask: u64 = self.unit_positions.iter().map(|p| 1u64 << p).sum();
        let free: Vec<usize> = (0..self.d as usize)
            .filter(|i| pivot_mask >> i & 1 == 0)
            .collect();
        let count = 1u64 << free.len();
        Ok((0..count).map(move |m| {
            let mut u = 0u64;
            let mut bits = m;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                u |= 1u64 << free[j];
                bits &= bits - 1;
            }
            let s = self.phi(Vertex(u));
            let mut fix = u;
            for (j, p) in self.unit_positions.iter().enumerate() {
                if s.bit(j as u32) {
                    fix |= 1u64 << p;
                }
            }
            Vertex(fix)
        }))
    }

    /// Number of codewords, `2^(d-k)`.
    pub fn code_size(&self) -> u128 {
        1u128 << (self.d - self.k)
    }
}
