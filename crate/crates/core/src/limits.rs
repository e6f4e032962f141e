//! Size guards for operations that materialise the whole cube.

/// Default largest `d` for explicit (fully materialised) factorisations.
pub const DEFAULT_EXPLICIT_CAP: u32 = 22;

/// Largest `d` for which `r(M)` is computed by exhaustive subset search.
pub const RMIN_CAP: u32 = 10;

/// Largest `d` for DOT export.
pub const DOT_CAP: u32 = 10;

pub const EXPLICIT_CAP_ENV: &str = "CUBEFACTORS_MAX_EXPLICIT_D";

/// Explicit-mode cap, honouring `CUBEFACTORS_MAX_EXPLICIT_D` when it parses.
pub fn explicit_cap() -> u32 {
    std::env::var(EXPLICIT_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .map(|v| v.min(32))
        .unwrap_or(DEFAULT_EXPLICIT_CAP)
}
