//! The span `W` of a direction set, its cosets, and the parity classes `T_f`.
//!
//! Each direction `x ∈ X` lies in exactly one coset `L_t = t + W`, so the
//! coordinates of a vertex split into one block per coset. `f_t` is the
//! parity of `u` over block `t`; block 0 contains `D` itself, which is why
//! `f` is constant on small cubes.

use serde::Serialize;

use super::SubsetSpec;
use crate::code::CodeContext;
use crate::cube::{Direction, SmallCubeId, Vertex};
use crate::error::Result;
use crate::gf2::{decompose, span_basis, Decomposition, Gf2Vec};

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub dirs: Vec<Direction>,
    pub w_basis: Vec<Gf2Vec>,
    /// A basis of `W` drawn from `D`.
    pub e: Vec<Direction>,
    pub ell: usize,
    /// Basis of the complement standing in for `U`.
    pub u_basis: Vec<Gf2Vec>,
    pub coset_count: u64,
    #[serde(skip)]
    pub decomposition: Decomposition,
}

pub fn decomposition_of(ctx: &CodeContext, spec: &SubsetSpec) -> DecompositionReport {
    let dirs = spec.directions(ctx);
    let w = span_basis(ctx.k(), dirs.iter().copied());
    let e = w.source_indices().into_iter().map(|i| dirs[i]).collect();
    let decomposition = decompose(&w, ctx.k());
    DecompositionReport {
        w_basis: w.basis().to_vec(),
        e,
        ell: w.dim(),
        u_basis: decomposition.complement().to_vec(),
        coset_count: decomposition.coset_count(),
        decomposition,
        dirs,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TfLabel {
    /// Bit `t` holds `f_t` for coset label `t >= 1`; bit 0 is always clear.
    pub f: u64,
    /// `ψ(f)` as an element of the complement.
    pub psi: Gf2Vec,
}

#[derive(Clone, Debug)]
pub struct TfStructure {
    decomposition: Decomposition,
    /// Coordinate mask of the directions in each coset, by coset label.
    coset_masks: Vec<u64>,
    dir_mask: u64,
    d: u32,
}

impl TfStructure {
    pub fn new(ctx: &CodeContext, spec: &SubsetSpec) -> Self {
        let decomposition = decomposition_of(ctx, spec).decomposition;
        let mut coset_masks = vec![0u64; decomposition.coset_count() as usize];
        for (i, &x) in ctx.space().directions().iter().enumerate() {
            coset_masks[decomposition.coset_label(x).0 as usize] |= 1 << i;
        }
        TfStructure {
            decomposition,
            coset_masks,
            dir_mask: spec.mask(),
            d: ctx.d(),
        }
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn coset_masks(&self) -> &[u64] {
        &self.coset_masks
    }

    pub fn f_of(&self, u: Vertex) -> u64 {
        self.coset_masks
            .iter()
            .enumerate()
            .skip(1)
            .fold(0u64, |f, (t, &m)| f | (((u.0 & m).count_ones() as u64 & 1) << t))
    }

    pub fn psi_of(&self, f: u64) -> Gf2Vec {
        let label = (1..self.coset_masks.len())
            .filter(|&t| f >> t & 1 == 1)
            .fold(0u64, |acc, t| acc ^ t as u64);
        self.decomposition.lift_label(Gf2Vec(label))
    }

    pub fn label(&self, u: Vertex) -> TfLabel {
        let f = self.f_of(u);
        TfLabel {
            f,
            psi: self.psi_of(f),
        }
    }

    /// Nonzero cosets containing at least one direction of `X`.
    pub fn active_coset_count(&self) -> usize {
        self.coset_masks.iter().skip(1).filter(|&&m| m != 0).count()
    }

    /// Whether every nonzero coset of `W` meets `X`.
    pub fn all_cosets_active(&self) -> bool {
        self.active_coset_count() + 1 == self.coset_masks.len()
    }

    /// Number of distinct labels: each active coset contributes one free parity.
    pub fn class_count(&self) -> u64 {
        1u64 << self.active_coset_count()
    }

    pub fn class_size(&self) -> u64 {
        1u64 << (self.d as usize - self.active_coset_count())
    }

    pub fn psi_zero(&self, cube: SmallCubeId) -> bool {
        self.label(Vertex(cube.0)).psi.is_zero()
    }

    /// `|S ∩ C|` by enumerating the `2^|D|` vertices of the small cube.
    pub fn count_codewords(&self, ctx: &CodeContext, cube: SmallCubeId) -> u64 {
        let base = cube.0 & !self.dir_mask;
        let mut sub = self.dir_mask;
        let mut count = 0u64;
        loop {
            if ctx.in_code(Vertex(base | sub)) {
                count += 1;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & self.dir_mask;
        }
        count
    }
}

pub fn tf_label(ctx: &CodeContext, spec: &SubsetSpec, u: Vertex) -> TfLabel {
    TfStructure::new(ctx, spec).label(u)
}

/// `|S ∩ C|` for the small cube `cube` of `D`.
pub fn code_intersection(ctx: &CodeContext, spec: &SubsetSpec, cube: SmallCubeId) -> Result<u64> {
    ctx.check_explicit()?;
    Ok(TfStructure::new(ctx, spec).count_codewords(ctx, cube))
}

/// Whether `ψ(f) = 0` for the label of the small cube `cube`.
pub fn psi_criterion(ctx: &CodeContext, spec: &SubsetSpec, cube: SmallCubeId) -> bool {
    TfStructure::new(ctx, spec).psi_zero(cube)
}
