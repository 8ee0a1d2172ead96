//! Episodic learning toolkit: a black-box optimizer suite (HC, tabu, GA,
//! PSO, CMA-ES), an episodic-task interface, a contextual RBF kick policy
//! with its trainer and surrogate task, and the RL state-vector assembler.

pub mod algos;
pub mod episodic;
pub mod error;
pub mod objective;

pub use algos::{cmaes_optimize_diagnostic, optimize, optimize_with, Algorithm, SuiteConfig};
pub use episodic::{run_episode, EpisodicTask, StepOutcome};
pub use error::{Error, ErrorKind, Result};
pub use objective::{rosenbrock, sphere, FnObjective, Objective, OptResult};
