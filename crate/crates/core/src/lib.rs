//! Block systems of finite-dimensional coalgebras.
//!
//! * [`model`]: block systems, flags and certificates.
//! * [`rules`]: necessary conditions for block systems of Hopf algebras.
//! * [`solver`]: lower bounds, minimal forms and exhaustive feasibility search.
//! * [`oracle`]: an independent brute-force enumerator for cross-checking the solver.
//! * [`coalgebra`] and [`analyzer`]: explicit coalgebras over the rationals and
//!   the computation of their coradical filtration and block system.

pub mod analyzer;
pub mod coalgebra;
pub mod error;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod rules;
pub mod solver;

pub use analyzer::{analyze, AnalysisResult, FiltrationChain, SimpleComponent};
pub use coalgebra::{AxiomFailure, Coalgebra};
pub use error::{Error, Result};
pub use model::{
    BlockIndex, BlockSystem, Certificate, ModeFlags, NspRegime, RefutationCase, SearchStats, Verdict,
};
pub use oracle::{oracle_enumerate, oracle_solve};
pub use rules::{check, explain, Rule, RuleViolation};
pub use solver::{
    admissible_group_orders, basic_block_dim, lower_bound, minimal_form, scan, solve, solve_with,
    BasicBlock, FeasibilityProblem, GridBounds, ScanRow, SolveOptions,
};
