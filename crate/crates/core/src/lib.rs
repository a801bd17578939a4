//! Exact-arithmetic workbench for candidate modular data.
//!
//! The crate builds modular data from pairs of involutive metric groups,
//! checks the modular-data axioms in exact cyclotomic arithmetic, extracts
//! fusion rings with the Verlinde formula, analyses condensation of a
//! bosonic invertible object, generates `SU(3)_k` fusion data independently,
//! and decides fusion-ring and modular-data equivalence up to relabeling.

pub mod condense;
pub mod cyclo;
pub mod gidata;
pub mod linalg;
pub mod modular;
pub mod par;
pub mod pipeline;
pub mod premetric;
pub mod rings;
pub mod su3k;

pub use cyclo::{CycloNum, Phase};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{k} is not a unit modulo {n}")]
    NotUnit { k: i64, n: u32 },
    #[error("conductor mismatch: {0}")]
    Conductor(String),
    #[error("element {element:?} does not belong to Z/{moduli:?}")]
    ElementMismatch { element: Vec<i64>, moduli: Vec<u32> },
    #[error("invalid group: {0}")]
    Group(String),
    #[error("invalid quadratic form: {0}")]
    Form(String),
    #[error("invalid automorphism: {0}")]
    Automorphism(String),
    #[error("compatibility condition 1 fails: {0}")]
    Condition1(String),
    #[error("compatibility condition 2 fails: {0}")]
    Condition2(String),
    #[error("invalid transversal: {0}")]
    Transversal(String),
    #[error("not modular data: {0}")]
    NotModular(String),
    #[error("label {0} is not invertible")]
    NotInvertible(usize),
    #[error("pointed part is not cyclic: {0}")]
    NotCyclic(String),
    #[error("domain not closed under fusion with the boson: {0}")]
    DomainNotClosed(String),
    #[error("no consistent fusion ring: {0}")]
    NoSolution(String),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("invalid fusion ring: {0}")]
    Ring(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("stage {stage} failed: {message}")]
    Stage { stage: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
