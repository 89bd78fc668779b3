//! Newton augmented Lagrangian (NAL) solver for symmetric cone programs.
//!
//! Solves the primal-dual pair
//!
//! ```text
//!   (P)  min ⟨c, x⟩            (D)  min −⟨b, λ⟩
//!        s.t. A x = b               s.t. A*λ + s = c
//!             x ∈ K                      s ∈ K
//! ```
//!
//! over products of nonnegative orthants, second-order cones, and PSD cones.
//! Each outer iteration minimizes a barrier-smoothed augmented Lagrangian in
//! the multiplier λ with a damped Newton method; the slack pair (s, z) is
//! recovered in closed form and sits exactly on the central path s∘z = ρμe.
//!
//! Crate layout:
//! - [`cones`]: Euclidean Jordan algebra kernels (products, spectral
//!   decompositions, barrier calculus, the Lyapunov-based weight operator).
//! - [`linalg`]: the constraint operator, Schur complement assembly,
//!   factorization, and condition numbers.
//! - [`nal`]: the solver itself (central-path pair, Newton inner loop,
//!   outer μ/ρ schedule, KKT residuals).
//! - [`probio`]: problem ingestion (NALP text format, an MPS subset) and
//!   reproducible instance generators.
//! - [`diagnostics`]: condition-number scans, shifted geometric means, and
//!   performance profiles.
//!
//! The `parallel` feature (on by default) parallelizes Schur complement
//! assembly with rayon; disable it for a fully sequential build.

pub mod cones;
pub mod diagnostics;
pub mod linalg;
pub mod nal;
pub mod probio;

pub use cones::{BlockKind, ConeDesc, ConeError, Element, Spectral};
pub use linalg::{LinalgError, LinearMap, ScmMatrix};
pub use nal::{IterRecord, SolveError, SolveOutput, SolveStatus, SolverConfig};
pub use probio::Problem;

/// True when expensive cross-checks (dual merit formula, per-step central
/// path identities) should run: debug builds, or `NAL_DEBUG=1` in release.
pub(crate) fn debug_checks_enabled() -> bool {
    static ENABLED: std::sync::OnceLock<bool> = std::sync::OnceLock::new();
    *ENABLED.get_or_init(|| {
        cfg!(debug_assertions)
            || std::env::var("NAL_DEBUG").map(|v| v == "1").unwrap_or(false)
    })
}
