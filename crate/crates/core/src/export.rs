//! Union graphs of selected factors as DOT or as an edge list.
//!
//! Edge-list lines are `lo hi direction`, the last field naming the factor
//! by its direction. Vertices use the text form of [`Vertex`].

use std::io::{BufRead, Write};

use petgraph::unionfind::UnionFind;

use crate::analyze::{ComponentReport, SubsetSpec};
use crate::construct::ExplicitFactorisation;
use crate::cube::Vertex;
use crate::error::{Error, Result};
use crate::limits::DOT_CAP;

pub fn write_dot<W: Write>(mut out: W, fac: &ExplicitFactorisation, spec: &SubsetSpec) -> Result<()> {
    let d = fac.ctx().d();
    if d > DOT_CAP {
        return Err(Error::UnsupportedDimension {
            d,
            reason: format!("DOT export needs d <= {DOT_CAP}"),
        });
    }
    let space = fac.ctx().space();
    writeln!(out, "graph union {{")?;
    for u in 0..fac.vertex_count() as u64 {
        writeln!(out, "  \"{}\";", Vertex(u).to_bit_string(d))?;
    }
    for &x in spec.indices() {
        for e in fac.factor_edges(x) {
            writeln!(
                out,
                "  \"{}\" -- \"{}\" [label={}];",
                e.lo.to_bit_string(d),
                e.hi().to_bit_string(d),
                space.direction(x).0
            )?;
        }
    }
    writeln!(out, "}}")?;
    Ok(())
}

pub fn write_edge_list<W: Write>(
    mut out: W,
    fac: &ExplicitFactorisation,
    spec: &SubsetSpec,
) -> Result<()> {
    let d = fac.ctx().d();
    let space = fac.ctx().space();
    for &x in spec.indices() {
        for e in fac.factor_edges(x) {
            writeln!(
                out,
                "{} {} {}",
                e.lo.to_bit_string(d),
                e.hi().to_bit_string(d),
                space.direction(x).0
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Parses an edge list back into `(lo, hi, direction)` triples.
pub fn read_edge_list<R: BufRead>(input: R) -> Result<Vec<(Vertex, Vertex, u64)>> {
    let mut edges = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let err = |m: String| Error::Parse {
            line: i + 1,
            message: m,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let [lo, hi, x] = fields[..] else {
            return Err(err(format!("expected 3 fields, got {}", fields.len())));
        };
        let lo: Vertex = lo.parse().map_err(|e: Error| err(e.to_string()))?;
        let hi: Vertex = hi.parse().map_err(|e: Error| err(e.to_string()))?;
        let x: u64 = x.parse().map_err(|_| err(format!("bad direction {x:?}")))?;
        edges.push((lo, hi, x));
    }
    Ok(edges)
}

/// Components of the graph on `2^d` vertices with the given edges.
pub fn edge_list_components(d: u32, edges: &[(Vertex, Vertex, u64)]) -> ComponentReport {
    let n = 1usize << d;
    let mut uf: UnionFind<u32> = UnionFind::new(n);
    for &(a, b, _) in edges {
        uf.union(a.0 as u32, b.0 as u32);
    }
    let mut sizes = std::collections::BTreeMap::<u32, u64>::new();
    for l in uf.into_labeling() {
        *sizes.entry(l).or_default() += 1;
    }
    let mut component_sizes: Vec<u64> = sizes.into_values().collect();
    component_sizes.sort_unstable();
    ComponentReport {
        component_count: component_sizes.len(),
        component_sizes,
        elapsed_secs: 0.0,
    }
}
