//! Problem ingestion and instance generation.
//!
//! Problems arrive either from the native NALP text format, from a minimal
//! MPS subset (LP only), or from the built-in reproducible generators.

mod generate;
mod mps;
mod nalp;
pub mod rng;

pub use generate::{
    gen_degenerate_lp, gen_maxcut_from_edges, gen_maxcut_sdp, gen_meb, gen_meb_from_points,
    gen_random_lp, gen_sqrt_lasso, gen_sqrt_lasso_from_data, generate, GeneratorSpec,
};
pub use mps::parse_mps_lp;
pub use nalp::{parse_nalp, write_nalp};

use thiserror::Error;

use crate::cones::{ConeDesc, Element};
use crate::linalg::{LinalgError, LinearMap};

/// Parse and validation errors for problem ingestion.
#[derive(Debug, Error)]
pub enum ProbError {
    #[error("line {line}, col {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unsupported feature: {0}")]
    UnsupportedFeature(String),
    #[error("inconsistent problem: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Extra bookkeeping carried alongside the standard-form data.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProblemMeta {
    /// Constant added to ⟨c, x⟩ when reporting objective values (MPS
    /// objective RHS, bound shifts).
    pub objective_constant: f64,
    /// Human-readable description of the generator call, when generated.
    pub generator: Option<String>,
}

/// Standard-form conic problem: min ⟨c,x⟩ s.t. Ax = b, x ∈ K.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: String,
    pub cone: ConeDesc,
    pub a: LinearMap,
    pub b: Vec<f64>,
    pub c: Element,
    pub meta: ProblemMeta,
}

impl Problem {
    pub fn new(
        name: impl Into<String>,
        cone: ConeDesc,
        a: LinearMap,
        b: Vec<f64>,
        c: Element,
    ) -> Result<Self, ProbError> {
        let p = Problem {
            name: name.into(),
            cone,
            a,
            b,
            c,
            meta: ProblemMeta::default(),
        };
        p.check_dims()?;
        Ok(p)
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    fn check_dims(&self) -> Result<(), ProbError> {
        if self.a.cols() != self.cone.vec_len() {
            return Err(ProbError::Inconsistent(format!(
                "operator has {} columns but the cone has length {}",
                self.a.cols(),
                self.cone.vec_len()
            )));
        }
        if self.b.len() != self.a.rows() {
            return Err(ProbError::Inconsistent(format!(
                "rhs has {} entries but the operator has {} rows",
                self.b.len(),
                self.a.rows()
            )));
        }
        if self.c.len() != self.cone.vec_len() {
            return Err(ProbError::Inconsistent(format!(
                "cost has {} entries but the cone has length {}",
                self.c.len(),
                self.cone.vec_len()
            )));
        }
        if !self.c.is_finite() || self.b.iter().any(|v| !v.is_finite()) {
            return Err(ProbError::Inconsistent("non-finite problem data".into()));
        }
        Ok(())
    }

    /// Full validation: dimensions plus the (cached) surjectivity check on
    /// 𝒜𝒜*.
    pub fn validate(&self) -> Result<(), ProbError> {
        self.check_dims()?;
        self.a.validate_full_rank()?;
        Ok(())
    }
}
