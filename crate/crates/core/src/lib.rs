//! Multi-task inductive logic programming by generate, test and constrain.
//!
//! A [`scheduler::MultiTaskProblem`] is a set of learning tasks sharing
//! background knowledge. Each task is searched size by size: candidate
//! programs come from the hypothesis space in [`space`], are tested
//! against the task's examples with the SLD prover in [`logic`], and every
//! failure adds constraints ([`constraints`]) that prune later candidates.
//! Solved tasks are added to the background knowledge so the remaining
//! tasks can call them. The strategies in [`scheduler`] differ in the
//! order tasks and sizes are visited and in whether constraints survive
//! those updates.
//!
//! ```
//! use mtilp::datasets::gen_kinship;
//! use mtilp::scheduler::{run, StrategyConfig, StrategyKind};
//!
//! let problem = gen_kinship(2).unwrap().to_problem().unwrap();
//! let out = run(&problem, &StrategyConfig::new(StrategyKind::Id).shuffle(false));
//! assert_eq!(out.solutions.len(), 2);
//! ```

pub mod bench;
pub mod constraints;
pub mod datasets;
pub mod learner;
pub mod logic;
pub mod scheduler;
pub mod space;
pub mod trace;
