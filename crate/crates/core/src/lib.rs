//! Synthesis of Mealy machines from assumption/guarantee specifications
//! whose conjuncts each have Rabin index one.
//!
//! The pipeline compiles every conjunct to a deterministic automaton, sorts
//! the pieces into Büchi/co-Büchi assumptions and guarantees, builds a
//! deterministic parity automaton with at most five colours that accepts
//! exactly the words satisfying `assumptions -> guarantees`, turns it into a
//! two-player parity game and solves that game with Zielonka's algorithm.

pub mod ap;
pub mod automaton;
pub mod boolean;
mod cycles;
pub mod game;
pub mod hoa;
pub mod lasso;
pub mod ltl;
pub mod mealy;
pub mod product;
pub mod random;
pub mod solver;
pub mod spec;
pub mod synthesis;

pub use ap::{ApTable, Letter};
pub use automaton::{Acceptance, DeterministicOmegaAutomaton, Edge, StateSet};
pub use game::{build_game, Player, SynthesisGame};
pub use lasso::{eval_lasso, Lasso};
pub use mealy::{extract_mealy, verify_mealy, MachineVerdict, MealyMachine};
pub use product::{build_product, NormalizedSpec, ParityAutomaton};
pub use solver::{certify_strategy, solve_progress_measures, solve_zielonka, Solution};
pub use spec::SpecProblem;
pub use synthesis::{differential_test, lasso_oracle, synthesize, SynthesisOutcome};
