use std::collections::{BTreeMap, VecDeque};
use std::time::Instant;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::algebra::TfStructure;
use super::SubsetSpec;
use crate::construct::ExplicitFactorisation;
use crate::cube::{SmallCubeId, Vertex};
use crate::gf2::Gf2Vec;

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub component_count: usize,
    /// Ascending.
    pub component_sizes: Vec<u64>,
    #[serde(skip)]
    pub elapsed_secs: f64,
}

impl ComponentReport {
    fn from_labels(labels: &[u32], elapsed_secs: f64) -> Self {
        let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
        for &l in labels {
            *counts.entry(l).or_default() += 1;
        }
        let mut component_sizes: Vec<u64> = counts.into_values().collect();
        component_sizes.sort_unstable();
        ComponentReport {
            component_count: component_sizes.len(),
            component_sizes,
            elapsed_secs,
        }
    }
}

/// Vertex classes of `(V, ∪_{x ∈ D} M_x)`.
#[derive(Clone, Debug)]
pub struct Connectivity {
    labels: Vec<u32>,
    count: usize,
}

impl Connectivity {
    pub fn new(fac: &ExplicitFactorisation, spec: &SubsetSpec) -> Self {
        let mut uf = IncrementalUnion::new(fac.vertex_count());
        for &x in spec.indices() {
            uf.add_factor(fac, x);
        }
        uf.finish()
    }

    /// Component representative of `u`.
    pub fn label(&self, u: Vertex) -> u32 {
        self.labels[u.0 as usize]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn same(&self, u: Vertex, v: Vertex) -> bool {
        self.label(u) == self.label(v)
    }
}

/// Union-find that tracks the number of classes as factors are added.
pub(crate) struct IncrementalUnion {
    uf: UnionFind<u32>,
    count: usize,
}

impl IncrementalUnion {
    pub(crate) fn new(n: usize) -> Self {
        IncrementalUnion {
            uf: UnionFind::new(n),
            count: n,
        }
    }

    pub(crate) fn add_factor(&mut self, fac: &ExplicitFactorisation, x: usize) {
        for e in fac.factor_edges(x) {
            if self.uf.union(e.lo.0 as u32, e.hi().0 as u32) {
                self.count -= 1;
            }
        }
    }

    pub(crate) fn count(&self) -> usize {
        self.count
    }

    fn finish(self) -> Connectivity {
        Connectivity {
            count: self.count,
            labels: self.uf.into_labeling(),
        }
    }
}

pub fn component_labels(fac: &ExplicitFactorisation, spec: &SubsetSpec) -> Vec<u32> {
    Connectivity::new(fac, spec).labels
}

pub fn union_components(fac: &ExplicitFactorisation, spec: &SubsetSpec) -> ComponentReport {
    let start = Instant::now();
    let conn = Connectivity::new(fac, spec);
    ComponentReport::from_labels(&conn.labels, start.elapsed().as_secs_f64())
}

pub fn union_is_connected(fac: &ExplicitFactorisation, spec: &SubsetSpec) -> bool {
    Connectivity::new(fac, spec).count == 1
}

/// Breadth-first search over `partner(u, x)`, kept independent of the union-find path.
pub fn bfs_components(fac: &ExplicitFactorisation, spec: &SubsetSpec) -> ComponentReport {
    let start = Instant::now();
    let n = fac.vertex_count();
    let mut comp = vec![u32::MAX; n];
    let mut next = 0u32;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if comp[s] != u32::MAX {
            continue;
        }
        comp[s] = next;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &x in spec.indices() {
                let v = fac.partner(Vertex(u as u64), x).0 as usize;
                if comp[v] == u32::MAX {
                    comp[v] = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    ComponentReport::from_labels(&comp, start.elapsed().as_secs_f64())
}

#[derive(Clone, Debug, Serialize)]
pub struct SmallCubeReport {
    pub cube_count: usize,
    pub connected_count: usize,
    pub fraction: f64,
    /// Ids of the small cubes whose vertices are split across components.
    pub disconnected: Vec<SmallCubeId>,
    #[serde(skip)]
    pub connected: BTreeMap<SmallCubeId, bool>,
}

/// For each small cube of `D`, whether its vertices share one component of the whole union.
pub fn small_cube_connectivity(fac: &ExplicitFactorisation, spec: &SubsetSpec) -> SmallCubeReport {
    let conn = Connectivity::new(fac, spec);
    let space = fac.ctx().space();
    let mut first: BTreeMap<SmallCubeId, (u32, bool)> = BTreeMap::new();
    for u in 0..fac.vertex_count() as u64 {
        let u = Vertex(u);
        let id = space.small_cube_id(u, spec.mask());
        let l = conn.label(u);
        first
            .entry(id)
            .and_modify(|e| e.1 &= e.0 == l)
            .or_insert((l, true));
    }
    let connected: BTreeMap<SmallCubeId, bool> =
        first.into_iter().map(|(id, (_, ok))| (id, ok)).collect();
    let connected_count = connected.values().filter(|&&b| b).count();
    let cube_count = connected.len();
    SmallCubeReport {
        cube_count,
        connected_count,
        fraction: connected_count as f64 / cube_count as f64,
        disconnected: connected
            .iter()
            .filter(|(_, &ok)| !ok)
            .map(|(&id, _)| id)
            .collect(),
        connected,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TfClassReport {
    /// Bit `t` holds `f_t` for coset label `t >= 1`.
    pub f: u64,
    pub psi: Gf2Vec,
    pub size: u64,
    /// Number of union components meeting the class.
    pub components: usize,
    pub connected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TfConnectivityReport {
    pub classes: Vec<TfClassReport>,
    pub global_components: usize,
    /// All classes lie in one component, i.e. the union is connected.
    pub all_connected: bool,
}

/// Connectivity of each class `T_f` inside the union of `D`.
pub fn tf_connectivity(fac: &ExplicitFactorisation, spec: &SubsetSpec) -> TfConnectivityReport {
    let conn = Connectivity::new(fac, spec);
    let tf = TfStructure::new(fac.ctx(), spec);
    let mut classes: BTreeMap<u64, (u64, Vec<u32>)> = BTreeMap::new();
    for u in 0..fac.vertex_count() as u64 {
        let u = Vertex(u);
        let entry = classes.entry(tf.f_of(u)).or_default();
        entry.0 += 1;
        entry.1.push(conn.label(u));
    }
    let classes = classes
        .into_iter()
        .map(|(f, (size, mut labels))| {
            labels.sort_unstable();
            labels.dedup();
            TfClassReport {
                f,
                psi: tf.psi_of(f),
                size,
                components: labels.len(),
                connected: labels.len() == 1,
            }
        })
        .collect();
    TfConnectivityReport {
        classes,
        global_components: conn.count(),
        all_connected: conn.count() == 1,
    }
}
