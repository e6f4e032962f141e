use std::collections::BTreeMap;

use serde::Serialize;

use crate::construct::ExplicitFactorisation;
use crate::cube::{Edge, Vertex};
use crate::error::{Error, Result};

/// The `d - 1` paths `u, u+b(x), v+b(x), v` parallel to an edge `{u, v}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathStats {
    pub edge: Edge,
    pub codeword: Vertex,
    pub untouched: usize,
    /// Direction indices `x` whose path has a relabelled edge.
    pub disturbed: Vec<usize>,
}

impl PathStats {
    pub fn disturbed_count(&self) -> usize {
        self.disturbed.len()
    }
}

pub fn untouched_path_stats(fac: &ExplicitFactorisation, e: Edge) -> Result<PathStats> {
    let ctx = fac.ctx();
    let (u, v) = (e.lo, e.hi());
    let codeword = if ctx.in_code(u) {
        u
    } else if ctx.in_code(v) {
        v
    } else {
        return Err(Error::NotACodeword(u.0));
    };
    let mut disturbed = Vec::new();
    for x in (0..fac.d()).filter(|&x| x != e.dir) {
        let ok = fac.untouched(Edge::at(u, x))
            && fac.untouched(Edge::at(u.flip_index(x), e.dir))
            && fac.untouched(Edge::at(v, x));
        if !ok {
            disturbed.push(x);
        }
    }
    Ok(PathStats {
        edge: e,
        codeword,
        untouched: fac.d() - 1 - disturbed.len(),
        disturbed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PathHistogram {
    pub edges: usize,
    /// Disturbed-path count -> number of edges.
    pub histogram: BTreeMap<usize, usize>,
    pub max_disturbed: usize,
    pub mean_disturbed: f64,
}

/// Aggregates [`untouched_path_stats`] over every edge at every codeword.
pub fn untouched_path_histogram(fac: &ExplicitFactorisation) -> Result<PathHistogram> {
    let ctx = fac.ctx();
    let mut histogram = BTreeMap::new();
    let mut edges = 0usize;
    let mut total = 0usize;
    for c in ctx.enumerate_code()? {
        for y in 0..fac.d() {
            let s = untouched_path_stats(fac, Edge::at(c, y))?;
            *histogram.entry(s.disturbed_count()).or_insert(0) += 1;
            edges += 1;
            total += s.disturbed_count();
        }
    }
    Ok(PathHistogram {
        edges,
        max_disturbed: histogram.keys().next_back().copied().unwrap_or(0),
        mean_disturbed: if edges == 0 { 0.0 } else { total as f64 / edges as f64 },
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::build_context;
    use crate::construct::directional;

    #[test]
    fn directional_paths_untouched() {
        let ctx = build_context(7).unwrap();
        let fac = directional(&ctx).unwrap();
        let s = untouched_path_stats(&fac, Edge::at(Vertex::ZERO, 3)).unwrap();
        assert_eq!(s.untouched, 6);
        assert!(s.disturbed.is_empty());
        let h = untouched_path_histogram(&fac).unwrap();
        assert_eq!(h.edges, 16 * 7);
        assert_eq!(h.max_disturbed, 0);
    }

    #[test]
    fn edge_away_from_code_rejected() {
        let ctx = build_context(7).unwrap();
        let fac = directional(&ctx).unwrap();
        // 0b11 has syndrome 1 ^ 2 = 3, and flipping bit 4 gives syndrome 3 ^ 5 != 0.
        let u = Vertex(0b11);
        assert!(!ctx.in_code(u));
        let e = Edge::at(u, 4);
        assert!(!ctx.in_code(e.hi()));
        assert!(matches!(untouched_path_stats(&fac, e), Err(Error::NotACodeword(_))));
    }
}
