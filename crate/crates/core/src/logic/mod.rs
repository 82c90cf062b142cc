//! Terms, clauses, the clause reader and the bounded prover.

pub mod eval;
pub mod parse;
pub mod symbol;
pub mod term;

pub use eval::{entails, test_hypothesis, Database, Entailment, EvalLimits, ExampleError, ExampleSet, Outcome, Prover};
pub use parse::{parse_atom, parse_clause, parse_clauses, parse_program, ParseError};
pub use symbol::Sym;
pub use term::{unify, Atom, Clause, PredSig, Program, Substitution, Term, Var};
