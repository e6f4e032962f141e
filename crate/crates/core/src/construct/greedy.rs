//! A randomised (non-uniform) 1-factorisation sampler.
//!
//! `Q_d` is bipartite by parity and every intermediate graph is regular, so a
//! perfect matching always exists. Each round shuffles adjacency orders, seeds
//! a random greedy matching and completes it with Hopcroft-Karp.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use super::explicit::ExplicitFactorisation;
use crate::code::CodeContext;
use crate::cube::{Edge, Vertex};
use crate::error::Result;
use crate::tape::{RandomTape, Tag};

const FREE: u32 = u32::MAX;

struct Matcher {
    /// Even-parity vertices, in left-index order.
    left: Vec<u32>,
    /// Available direction indices per left vertex, shuffled.
    adj: Vec<Vec<u8>>,
    mate_left: Vec<u32>,
    /// Indexed by vertex id; holds a left index.
    mate_right: Vec<u32>,
    dist: Vec<u32>,
}

impl Matcher {
    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        let mut found = false;
        for (i, m) in self.mate_left.iter().enumerate() {
            if *m == FREE {
                self.dist[i] = 0;
                queue.push_back(i);
            } else {
                self.dist[i] = u32::MAX;
            }
        }
        while let Some(i) = queue.pop_front() {
            let u = self.left[i];
            for &y in &self.adj[i] {
                let v = u ^ (1 << y);
                let j = self.mate_right[v as usize];
                if j == FREE {
                    found = true;
                } else if self.dist[j as usize] == u32::MAX {
                    self.dist[j as usize] = self.dist[i] + 1;
                    queue.push_back(j as usize);
                }
            }
        }
        found
    }

    /// Iterative layered DFS from free left vertex `root`.
    fn augment(&mut self, root: usize, cursor: &mut [usize]) -> bool {
        let mut stack: Vec<usize> = vec![root];
        loop {
            let Some(&i) = stack.last() else {
                return false;
            };
            if cursor[i] == self.adj[i].len() {
                self.dist[i] = u32::MAX;
                stack.pop();
                continue;
            }
            let y = self.adj[i][cursor[i]];
            cursor[i] += 1;
            let v = self.left[i] ^ (1 << y);
            let j = self.mate_right[v as usize];
            if j == FREE {
                // Flip the path recorded on the stack.
                let mut target = v;
                while let Some(li) = stack.pop() {
                    let prev = self.mate_left[li];
                    self.mate_left[li] = target;
                    self.mate_right[target as usize] = li as u32;
                    target = prev;
                }
                return true;
            }
            if self.dist[j as usize] == self.dist[i] + 1 {
                stack.push(j as usize);
            }
        }
    }

    fn run(&mut self) {
        let n = self.left.len();
        while self.bfs() {
            let mut cursor = vec![0usize; n];
            for i in 0..n {
                if self.mate_left[i] == FREE {
                    self.augment(i, &mut cursor);
                }
            }
        }
    }
}

fn random_perfect_matching(
    d: u32,
    left: &[u32],
    used: &[u64],
    rng: &mut ChaCha8Rng,
) -> Vec<u32> {
    let n_left = left.len();
    let adj: Vec<Vec<u8>> = left
        .iter()
        .map(|&u| {
            let mut dirs: Vec<u8> = (0..d as u8)
                .filter(|&y| used[u as usize] >> y & 1 == 0)
                .collect();
            dirs.shuffle(rng);
            dirs
        })
        .collect();
    let mut m = Matcher {
        left: left.to_vec(),
        adj,
        mate_left: vec![FREE; n_left],
        mate_right: vec![FREE; 1usize << d],
        dist: vec![0; n_left],
    };
    let mut order: Vec<usize> = (0..n_left).collect();
    order.shuffle(rng);
    for i in order {
        let u = m.left[i];
        for &y in &m.adj[i] {
            let v = u ^ (1 << y);
            if m.mate_right[v as usize] == FREE {
                m.mate_left[i] = v;
                m.mate_right[v as usize] = i as u32;
                break;
            }
        }
    }
    m.run();
    debug_assert!(m.mate_left.iter().all(|&v| v != FREE));
    m.mate_left
}

/// Extracts `d` random perfect matchings in turn; factor `i` is the `i`-th one.
pub fn random_greedy_factorisation(
    ctx: &CodeContext,
    tape: &RandomTape,
) -> Result<ExplicitFactorisation> {
    ctx.check_explicit()?;
    let d = ctx.d();
    let n = 1usize << d;
    let left: Vec<u32> = (0..n as u32).filter(|u| u.count_ones() % 2 == 0).collect();
    let mut used = vec![0u64; n];
    let mut fac = ExplicitFactorisation::empty(ctx)?;
    let mut rng = tape.stream(0, Tag::Greedy);
    for x in 0..d as usize {
        let mates = random_perfect_matching(d, &left, &used, &mut rng);
        for (i, &v) in mates.iter().enumerate() {
            let u = left[i];
            let y = (u ^ v).trailing_zeros() as usize;
            used[u as usize] |= 1 << y;
            used[v as usize] |= 1 << y;
            fac.assign_edge(Edge::at(Vertex(u as u64), y), x);
        }
    }
    Ok(fac)
}
