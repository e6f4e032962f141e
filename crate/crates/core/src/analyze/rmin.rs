use std::time::Instant;

use serde::Serialize;

use super::components::IncrementalUnion;
use crate::construct::ExplicitFactorisation;
use crate::error::{Error, Result};
use crate::limits::RMIN_CAP;

/// `r`-subsets of `0..n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct LexCombinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl LexCombinations {
    pub fn new(n: usize, r: usize) -> Self {
        LexCombinations {
            n,
            current: (r <= n).then(|| (0..r).collect()),
        }
    }
}

impl Iterator for LexCombinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let c = self.current.as_mut().unwrap();
        let r = c.len();
        match (0..r).rev().find(|&i| c[i] < self.n - r + i) {
            Some(i) => {
                c[i] += 1;
                for j in i + 1..r {
                    c[j] = c[j - 1] + 1;
                }
            }
            None => self.current = None,
        }
        Some(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RminStep {
    pub r: usize,
    pub subsets_checked: u64,
    pub all_connected: bool,
    /// The first disconnected subset, in lexicographic order.
    pub witness: Option<Vec<usize>>,
    #[serde(skip)]
    pub elapsed_secs: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RminReport {
    pub r: usize,
    pub steps: Vec<RminStep>,
}

fn subset_connected(fac: &ExplicitFactorisation, subset: &[usize]) -> bool {
    let mut uf = IncrementalUnion::new(fac.vertex_count());
    for &x in subset {
        uf.add_factor(fac, x);
    }
    uf.count() == 1
}

/// The least `r` for which every union of `r` factors is connected.
///
/// Sizes are scanned upwards; within a size, subsets are checked in
/// lexicographic order and the scan moves on at the first disconnected one.
pub fn r_of(fac: &ExplicitFactorisation) -> Result<RminReport> {
    let d = fac.d();
    if d as u32 > RMIN_CAP {
        return Err(Error::RminGuard {
            d: d as u32,
            cap: RMIN_CAP,
        });
    }
    let mut steps = Vec::new();
    for r in 1..=d {
        let start = Instant::now();
        let mut checked = 0u64;
        let mut witness = None;
        for subset in LexCombinations::new(d, r) {
            checked += 1;
            if !subset_connected(fac, &subset) {
                witness = Some(subset);
                break;
            }
        }
        let all_connected = witness.is_none();
        steps.push(RminStep {
            r,
            subsets_checked: checked,
            all_connected,
            witness,
            elapsed_secs: start.elapsed().as_secs_f64(),
        });
        if all_connected {
            return Ok(RminReport { r, steps });
        }
    }
    unreachable!("the union of all factors is Q_d, which is connected")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::build_context;
    use crate::construct::directional;

    #[test]
    fn lex_order() {
        let all: Vec<Vec<usize>> = LexCombinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(LexCombinations::new(5, 0).count(), 1);
        assert_eq!(LexCombinations::new(3, 4).count(), 0);
    }

    #[test]
    fn directional_d3() {
        let ctx = build_context(3).unwrap();
        let rep = r_of(&directional(&ctx).unwrap()).unwrap();
        assert_eq!(rep.r, 3);
        assert_eq!(rep.steps[1].witness, Some(vec![0, 1]));
    }

    #[test]
    fn guard() {
        let ctx = build_context(11).unwrap();
        assert!(matches!(
            r_of(&directional(&ctx).unwrap()),
            Err(Error::RminGuard { d: 11, cap: 10 })
        ));
    }
}
