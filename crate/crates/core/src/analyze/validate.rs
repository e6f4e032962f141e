use serde::Serialize;

use crate::construct::{ExplicitFactorisation, Factorisation, CONFLICT_SLOT, UNSET_SLOT};
use crate::cube::Vertex;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ViolationKind {
    /// No factor-`x` edge at the vertex.
    MissingEdge,
    /// Two different edges of factor `x` meet at the vertex.
    TwoEdgesInFactor,
    /// The edge in direction `dir` is claimed by two factors at the vertex.
    EdgeInTwoFactors { dir: usize },
    /// The factor-`x` edge at the vertex is not the factor-`x` edge at its other end.
    NotInvolution { partner: Vertex },
    /// A slot holds something other than a direction index.
    InvalidSlot { value: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub vertex: Vertex,
    pub factor: usize,
    #[serde(flatten)]
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    fn from_violation(v: Option<Violation>) -> Self {
        ValidationReport {
            ok: v.is_none(),
            violation: v,
        }
    }
}

/// Checks that every factor is a perfect matching and that the factors
/// partition the edges, stopping at the first violation in `(u, x)` order.
pub fn validate_explicit(fac: &ExplicitFactorisation) -> ValidationReport {
    let d = fac.d();
    for u in 0..fac.vertex_count() as u64 {
        let u = Vertex(u);
        let mut seen = 0u64;
        for (x, &y) in fac.slots_at(u).iter().enumerate() {
            let kind = match y {
                UNSET_SLOT => Some(ViolationKind::MissingEdge),
                CONFLICT_SLOT => Some(ViolationKind::TwoEdgesInFactor),
                y if y as usize >= d => Some(ViolationKind::InvalidSlot { value: y }),
                y if seen >> y & 1 == 1 => Some(ViolationKind::EdgeInTwoFactors { dir: y as usize }),
                y => {
                    seen |= 1 << y;
                    let v = u.flip_index(y as usize);
                    (fac.slot(v, x) != y).then_some(ViolationKind::NotInvolution { partner: v })
                }
            };
            if let Some(kind) = kind {
                return ValidationReport::from_violation(Some(Violation {
                    vertex: u,
                    factor: x,
                    kind,
                }));
            }
        }
    }
    ValidationReport::from_violation(None)
}

/// Validates either form; an implicit factorisation is evaluated at every vertex first.
pub fn validate(fac: &Factorisation) -> Result<ValidationReport> {
    match fac {
        Factorisation::Explicit(f) => Ok(validate_explicit(f)),
        Factorisation::Implicit(_) => Ok(validate_explicit(&fac.to_explicit()?)),
    }
}
