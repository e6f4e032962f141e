//! Sampling the swap plan over a materialised code.
//!
//! Distances to `G'` are found with a bounded multi-source BFS that keeps the
//! two nearest distinct sources per vertex, rather than with the ball queries
//! the implicit oracle uses; the two routes are cross-checked in tests.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::regions::{conflict_blocked, cube_region, draw_pq, square_region, Region};
use super::ConstructionParams;
use crate::code::CodeContext;
use crate::cube::{Edge, Vertex};
use crate::error::Result;
use crate::tape::{RandomTape, Tag};

#[derive(Clone, Debug, PartialEq)]
pub struct SwapPlan {
    pub params: ConstructionParams,
    pub gprime: BTreeSet<Vertex>,
    pub g: BTreeSet<Vertex>,
    pub h: BTreeSet<Vertex>,
    /// `(p_u, q_u)` for every codeword.
    pub pq: BTreeMap<Vertex, (usize, usize)>,
    /// Ordered cube directions for every point of `G`.
    pub r6: BTreeMap<Vertex, Vec<usize>>,
    /// Points of `H` whose square is swapped.
    pub active_squares: BTreeSet<Vertex>,
    /// Points of `G` whose cube is relabelled.
    pub applied_cubes: BTreeSet<Vertex>,
    /// Points of `H` dropped by the conflict rule.
    pub conflict_blocked: usize,
    /// Points of `H` (or `G`) dropped because their region hits a cube.
    pub cube_blocked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanSummary {
    pub codewords: usize,
    pub gprime: usize,
    pub g: usize,
    pub h: usize,
    pub active_squares: usize,
    pub applied_cubes: usize,
    pub conflict_blocked: usize,
    pub cube_blocked: usize,
}

impl SwapPlan {
    pub fn summary(&self) -> PlanSummary {
        PlanSummary {
            codewords: self.pq.len(),
            gprime: self.gprime.len(),
            g: self.g.len(),
            h: self.h.len(),
            active_squares: self.active_squares.len(),
            applied_cubes: self.applied_cubes.len(),
            conflict_blocked: self.conflict_blocked,
            cube_blocked: self.cube_blocked,
        }
    }

    pub fn square(&self, u: Vertex) -> Option<Region> {
        self.pq.get(&u).map(|&(p, q)| Region::new(u, vec![p, q]))
    }

    pub fn cube(&self, v: Vertex) -> Option<Region> {
        self.r6.get(&v).map(|dirs| Region::new(v, dirs.clone()))
    }

    /// Every region that [`super::apply_explicit`] will relabel.
    pub fn regions(&self) -> Vec<Region> {
        self.active_squares
            .iter()
            .filter_map(|&u| self.square(u))
            .chain(self.applied_cubes.iter().filter_map(|&v| self.cube(v)))
            .collect()
    }
}

const NONE: u32 = u32::MAX;

/// For each vertex, the distances to its nearest and second-nearest distinct
/// source, up to `radius`.
struct TwoNearest {
    src: Vec<[u32; 2]>,
    dist: Vec<[u8; 2]>,
}

impl TwoNearest {
    fn compute(d: u32, sources: &[Vertex], radius: u32) -> Self {
        let n = 1usize << d;
        let mut src = vec![[NONE; 2]; n];
        let mut dist = vec![[u8::MAX; 2]; n];
        let mut queue = VecDeque::new();
        for (i, s) in sources.iter().enumerate() {
            src[s.0 as usize][0] = i as u32;
            dist[s.0 as usize][0] = 0;
            queue.push_back((s.0 as u32, i as u32, 0u8));
        }
        while let Some((v, s, dv)) = queue.pop_front() {
            if dv as u32 >= radius {
                continue;
            }
            for y in 0..d {
                let nb = (v ^ (1 << y)) as usize;
                let slots = &mut src[nb];
                if slots[0] == s || slots[1] == s {
                    continue;
                }
                let slot = if slots[0] == NONE {
                    0
                } else if slots[1] == NONE {
                    1
                } else {
                    continue;
                };
                slots[slot] = s;
                dist[nb][slot] = dv + 1;
                queue.push_back((nb as u32, s, dv + 1));
            }
        }
        TwoNearest { src, dist }
    }

    fn nearest(&self, v: Vertex) -> Option<u32> {
        let i = v.0 as usize;
        (self.src[i][0] != NONE).then(|| self.dist[i][0] as u32)
    }

    fn second(&self, v: Vertex) -> Option<u32> {
        let i = v.0 as usize;
        (self.src[i][1] != NONE).then(|| self.dist[i][1] as u32)
    }
}

pub fn sample_plan(
    ctx: &CodeContext,
    params: &ConstructionParams,
    tape: &RandomTape,
) -> Result<SwapPlan> {
    params.validate(ctx.d())?;
    ctx.check_explicit()?;
    let d = ctx.d();
    let code: Vec<Vertex> = ctx.enumerate_code()?.collect();

    let gprime: BTreeSet<Vertex> = code
        .iter()
        .copied()
        .filter(|w| tape.coin(w.0, Tag::GPrime, params.pg))
        .collect();
    let sources: Vec<Vertex> = gprime.iter().copied().collect();
    let radius = params.rg.max(params.rh).min(d);
    let near = TwoNearest::compute(d, &sources, radius);

    let g: BTreeSet<Vertex> = gprime
        .iter()
        .copied()
        .filter(|&v| near.second(v).is_none_or(|r| r > params.rg))
        .collect();
    let h: BTreeSet<Vertex> = code
        .iter()
        .copied()
        .filter(|&u| near.nearest(u).is_none_or(|r| r > params.rh))
        .collect();

    let pq: BTreeMap<Vertex, (usize, usize)> =
        code.iter().map(|&u| (u, draw_pq(ctx, tape, u))).collect();
    let r6: BTreeMap<Vertex, Vec<usize>> = g
        .iter()
        .map(|&v| (v, cube_region(ctx, tape, v, params.cube_dim).dirs))
        .collect();

    // Edge multiplicities over all cubes of G.
    let mut cube_edges: HashMap<Edge, u32> = HashMap::new();
    for (&v, dirs) in &r6 {
        for e in Region::new(v, dirs.clone()).edges() {
            *cube_edges.entry(e).or_insert(0) += 1;
        }
    }

    let mut cube_blocked = 0;
    let applied_cubes: BTreeSet<Vertex> = if params.cube_precedence {
        r6.iter()
            .filter(|(&v, dirs)| {
                let ok = Region::new(v, (*dirs).clone())
                    .edges()
                    .all(|e| cube_edges[&e] == 1);
                if !ok {
                    cube_blocked += 1;
                }
                ok
            })
            .map(|(&v, _)| v)
            .collect()
    } else {
        g.clone()
    };

    let mut conflict_count = 0;
    let mut active_squares = BTreeSet::new();
    for &u in &h {
        if params.conflict_check && conflict_blocked(ctx, tape, u) {
            conflict_count += 1;
            continue;
        }
        if params.cube_precedence
            && square_region(ctx, tape, u)
                .edges()
                .any(|e| cube_edges.contains_key(&e))
        {
            cube_blocked += 1;
            continue;
        }
        active_squares.insert(u);
    }

    Ok(SwapPlan {
        params: *params,
        gprime,
        g,
        h,
        pq,
        r6,
        active_squares,
        applied_cubes,
        conflict_blocked: conflict_count,
        cube_blocked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::build_context;
    use crate::cube::hamming_distance;

    fn brute_plan_sets(
        ctx: &CodeContext,
        params: &ConstructionParams,
        tape: &RandomTape,
    ) -> (BTreeSet<Vertex>, BTreeSet<Vertex>) {
        let code: Vec<Vertex> = ctx.enumerate_code().unwrap().collect();
        let gp: Vec<Vertex> = code
            .iter()
            .copied()
            .filter(|w| tape.coin(w.0, Tag::GPrime, params.pg))
            .collect();
        let g = gp
            .iter()
            .copied()
            .filter(|&v| gp.iter().all(|&w| w == v || hamming_distance(v, w) > params.rg))
            .collect();
        let h = code
            .iter()
            .copied()
            .filter(|&u| gp.iter().all(|&w| hamming_distance(u, w) > params.rh))
            .collect();
        (g, h)
    }

    #[test]
    fn bfs_sets_match_pairwise_oracle() {
        for d in [8u32, 10, 11] {
            let ctx = build_context(d).unwrap();
            for seed in 0..4 {
                let params = ConstructionParams::scaled(0.15, 5, 3, 3);
                let tape = RandomTape::new(seed);
                let plan = sample_plan(&ctx, &params, &tape).unwrap();
                let (g, h) = brute_plan_sets(&ctx, &params, &tape);
                assert_eq!(plan.g, g, "G differs at d={d} seed={seed}");
                assert_eq!(plan.h, h, "H differs at d={d} seed={seed}");
            }
        }
    }

    #[test]
    fn pg_zero_gives_empty_g_and_full_h() {
        let ctx = build_context(9).unwrap();
        let mut params = ConstructionParams::paper_defaults(9);
        params.pg = 0.0;
        let plan = sample_plan(&ctx, &params, &RandomTape::new(5)).unwrap();
        assert!(plan.gprime.is_empty() && plan.g.is_empty());
        assert_eq!(plan.h.len() as u128, ctx.code_size());
        assert_eq!(plan.pq.len() as u128, ctx.code_size());
    }

    #[test]
    fn pg_one_at_d7_empties_g_and_h() {
        let ctx = build_context(7).unwrap();
        let mut params = ConstructionParams::paper_defaults(7);
        params.pg = 1.0;
        let plan = sample_plan(&ctx, &params, &RandomTape::new(1)).unwrap();
        assert_eq!(plan.gprime.len(), 16);
        assert!(plan.g.is_empty());
        assert!(plan.h.is_empty());
    }

    #[test]
    fn plan_invariants() {
        let ctx = build_context(12).unwrap();
        let params = ConstructionParams::scaled(0.02, 6, 4, 4);
        for seed in 0..3 {
            let plan = sample_plan(&ctx, &params, &RandomTape::new(seed)).unwrap();
            assert!(plan.g.is_subset(&plan.gprime));
            assert!(plan.gprime.iter().all(|&w| ctx.in_code(w)));
            assert!(plan.h.iter().all(|&w| ctx.in_code(w)));
            for &u in &plan.h {
                assert!(plan.gprime.iter().all(|&v| hamming_distance(u, v) > params.rh));
            }
            for &a in &plan.g {
                for &b in &plan.g {
                    assert!(a == b || hamming_distance(a, b) > params.rg);
                }
            }
            for (p, q) in plan.pq.values() {
                assert_ne!(p, q);
            }
            assert!(plan.active_squares.is_subset(&plan.h));
            assert!(plan.applied_cubes.is_subset(&plan.g));
        }
    }

    #[test]
    fn conflict_rule_excludes_both_ends() {
        let ctx = build_context(10).unwrap();
        let mut params = ConstructionParams::paper_defaults(10);
        params.pg = 0.0;
        let mut seen = 0;
        for seed in 0..6 {
            let tape = RandomTape::new(seed);
            let plan = sample_plan(&ctx, &params, &tape).unwrap();
            for (&u, &(p, q)) in &plan.pq {
                let Some((w, _)) = ctx.adjacent_codeword(u.flip_index(p).flip_index(q)) else {
                    continue;
                };
                let (pw, qw) = plan.pq[&w];
                if hamming_distance(w.flip_index(pw).flip_index(qw), u) == 1 {
                    seen += 1;
                    assert!(!plan.active_squares.contains(&u));
                    assert!(!plan.active_squares.contains(&w));
                }
            }
        }
        assert!(seen > 0, "no conflicting pair found to exercise the rule");
    }
}
