//! Validation and connectivity analysis of factorisations.

mod algebra;
mod components;
mod experiment;
mod paths;
mod rmin;
mod validate;

pub use algebra::{
    code_intersection, decomposition_of, psi_criterion, tf_label, DecompositionReport, TfLabel,
    TfStructure,
};
pub use components::{
    bfs_components, component_labels, small_cube_connectivity, tf_connectivity,
    union_components, union_is_connected, ComponentReport, Connectivity, SmallCubeReport,
    TfClassReport, TfConnectivityReport,
};
pub use experiment::{
    connectivity_thresholds, run_experiment, ConstructionKind, ExperimentConfig,
    ExperimentReport, KindProfile, SeedProfile,
};
pub use paths::{untouched_path_histogram, untouched_path_stats, PathHistogram, PathStats};
pub use rmin::{r_of, LexCombinations, RminReport, RminStep};
pub use validate::{validate, validate_explicit, ValidationReport, Violation, ViolationKind};

use serde::Serialize;

use crate::code::CodeContext;
use crate::cube::Direction;
use crate::error::{Error, Result};

/// A chosen set `D` of factors, stored as sorted direction indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SubsetSpec {
    dirs: Vec<usize>,
    #[serde(skip)]
    mask: u64,
}

impl SubsetSpec {
    pub fn from_indices(ctx: &CodeContext, indices: &[usize]) -> Result<Self> {
        let d = ctx.d() as usize;
        let mut dirs = indices.to_vec();
        dirs.sort_unstable();
        dirs.dedup();
        if dirs.is_empty() {
            return Err(Error::InvalidSubset("D must be nonempty".into()));
        }
        if let Some(&bad) = dirs.iter().find(|&&i| i >= d) {
            return Err(Error::InvalidSubset(format!("index {bad} out of range for d={d}")));
        }
        let mask = dirs.iter().fold(0u64, |m, &i| m | (1u64 << i));
        Ok(SubsetSpec { dirs, mask })
    }

    pub fn from_directions(ctx: &CodeContext, directions: &[Direction]) -> Result<Self> {
        let idx = directions
            .iter()
            .map(|&x| ctx.space().position(x))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(ctx, &idx)
    }

    pub fn from_mask(ctx: &CodeContext, mask: u64) -> Result<Self> {
        let idx: Vec<usize> = (0..64).filter(|i| mask >> i & 1 == 1).collect();
        Self::from_indices(ctx, &idx)
    }

    pub fn all(ctx: &CodeContext) -> Self {
        let idx: Vec<usize> = (0..ctx.d() as usize).collect();
        Self::from_indices(ctx, &idx).expect("d >= 1")
    }

    pub fn indices(&self) -> &[usize] {
        &self.dirs
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn directions(&self, ctx: &CodeContext) -> Vec<Direction> {
        self.dirs.iter().map(|&i| ctx.space().direction(i)).collect()
    }
}
