//! End-to-end synthesis and the lasso-level correctness oracle.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::time::{Duration, Instant};

use serde_json::{json, Value};
use thiserror::Error;

use crate::ap::{ApTable, Letter};
use crate::game::{build_game, Player, SynthesisGame};
use crate::lasso::{enumerate_lassos, eval_lasso, lasso_count, Lasso};
use crate::mealy::{extract_mealy, verify_mealy, MachineVerdict, MealyMachine};
use crate::product::{
    build_product_with_limit, NormalizedSpec, ParityAutomaton, ProductError, DEFAULT_STATE_LIMIT,
};
use crate::solver::{certify_strategy, solve_zielonka, CertificationFailure, Solution};

/// Alphabet size up to which [`differential_test`] enumerates lassos.
pub const DEFAULT_ORACLE_APS: usize = 3;

#[derive(Debug, Clone, Copy)]
pub struct SynthesisOptions {
    pub state_limit: u128,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            state_limit: DEFAULT_STATE_LIMIT,
        }
    }
}

#[derive(Debug, Error)]
pub enum SynthesisError {
    #[error(transparent)]
    Capacity(#[from] ProductError),
    /// The solver produced a strategy that does not check out. Always a bug.
    #[error("internal error: solver strategy failed certification: {0}")]
    Strategy(CertificationFailure),
    /// The extracted machine violates the specification. Always a bug.
    #[error("internal error: extracted machine violates the specification on {0}")]
    Machine(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisStats {
    pub product_states: usize,
    pub raw_bound: u128,
    pub game_vertices: usize,
    pub colours_used: BTreeSet<u8>,
    pub machine_states: Option<usize>,
    pub solve_time: Duration,
}

impl SynthesisStats {
    pub fn to_json(&self) -> Value {
        json!({
            "product_states": self.product_states,
            "raw_bound": self.raw_bound.to_string(),
            "game_vertices": self.game_vertices,
            "colours_used": self.colours_used,
            "machine_states": self.machine_states,
            "solve_time_ms": self.solve_time.as_secs_f64() * 1000.0,
        })
    }
}

/// One Environment move: at automaton state `state` play `input`; the
/// System's possible answers lead to `next[y]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterMove {
    pub state: usize,
    pub colour: u8,
    pub input: Letter,
    pub next: Vec<usize>,
}

/// Positional Environment strategy restricted to the states it can reach
/// from the initial state, whatever the System answers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterstrategy {
    pub inputs: ApTable,
    pub outputs: ApTable,
    pub moves: Vec<CounterMove>,
}

impl Counterstrategy {
    pub fn input_at(&self, state: usize) -> Option<Letter> {
        self.moves
            .iter()
            .find(|m| m.state == state)
            .map(|m| m.input)
    }

    pub fn to_json(&self) -> String {
        let names = |aps: &ApTable, l: Letter| {
            let mut v: Vec<&str> = aps.letter_names(l);
            v.sort_unstable();
            v.into_iter().map(str::to_owned).collect::<Vec<_>>()
        };
        let moves: Vec<Value> = self
            .moves
            .iter()
            .map(|m| {
                let next: Vec<Value> = self
                    .outputs
                    .letters()
                    .zip(&m.next)
                    .map(|(y, &t)| json!({"output": names(&self.outputs, y), "to": t}))
                    .collect();
                json!({"state": m.state, "colour": m.colour, "input": names(&self.inputs, m.input), "next": next})
            })
            .collect();
        let value = json!({
            "inputs": self.inputs.names(),
            "outputs": self.outputs.names(),
            "initial": 0,
            "moves": moves,
        });
        serde_json::to_string_pretty(&value).expect("plain data serializes") + "\n"
    }
}

#[derive(Debug, Clone)]
pub enum SynthesisOutcome {
    Realizable {
        machine: MealyMachine,
        stats: SynthesisStats,
    },
    Unrealizable {
        counterstrategy: Counterstrategy,
        stats: SynthesisStats,
    },
}

impl SynthesisOutcome {
    pub fn is_realizable(&self) -> bool {
        matches!(self, SynthesisOutcome::Realizable { .. })
    }

    pub fn stats(&self) -> &SynthesisStats {
        match self {
            SynthesisOutcome::Realizable { stats, .. }
            | SynthesisOutcome::Unrealizable { stats, .. } => stats,
        }
    }
}

/// Every intermediate artefact of a synthesis run.
#[derive(Debug, Clone)]
pub struct SynthesisRun {
    pub product: ParityAutomaton,
    pub game: SynthesisGame,
    pub solution: Solution,
    pub outcome: SynthesisOutcome,
}

pub fn synthesize(spec: &NormalizedSpec) -> Result<SynthesisOutcome, SynthesisError> {
    Ok(synthesize_with(spec, SynthesisOptions::default())?.outcome)
}

/// Builds product and game, solves, and either extracts and model-checks a
/// machine or extracts the Environment's counterstrategy.
pub fn synthesize_with(
    spec: &NormalizedSpec,
    options: SynthesisOptions,
) -> Result<SynthesisRun, SynthesisError> {
    let product = build_product_with_limit(spec, options.state_limit)?;
    let game = build_game(&product, spec.inputs(), spec.outputs())
        .expect("product alphabet is inputs ++ outputs");
    let start = Instant::now();
    let solution = solve_zielonka(&game);
    let solve_time = start.elapsed();
    certify_strategy(&game, &solution).map_err(SynthesisError::Strategy)?;
    log::debug!(
        "product {} states (bound {}), game {} vertices, solved in {:?}",
        product.num_states(),
        product.raw_bound(),
        game.num_vertices(),
        solve_time
    );

    let mut stats = SynthesisStats {
        product_states: product.num_states(),
        raw_bound: product.raw_bound(),
        game_vertices: game.num_vertices(),
        colours_used: product.colours_used(),
        machine_states: None,
        solve_time,
    };
    let outcome = if solution.winner(game.initial()) == Player::System {
        let machine = if spec.guarantees().next().is_none() {
            // Nothing to guarantee: stay put and emit the empty output.
            let transitions = vec![(0, Letter::EMPTY); spec.inputs().num_letters()];
            MealyMachine::new(
                spec.inputs().clone(),
                spec.outputs().clone(),
                0,
                transitions,
            )
            .expect("single state machine is well formed")
        } else {
            extract_mealy(&game, &solution).expect("initial vertex is System-won")
        };
        match verify_mealy(&machine, &product).expect("machine alphabet matches the spec") {
            MachineVerdict::Pass => {}
            MachineVerdict::Violation(lasso) => {
                return Err(SynthesisError::Machine(
                    lasso.display(product.aps()).to_string(),
                ))
            }
        }
        stats.machine_states = Some(machine.num_states());
        SynthesisOutcome::Realizable { machine, stats }
    } else {
        SynthesisOutcome::Unrealizable {
            counterstrategy: counterstrategy(&game, &solution),
            stats,
        }
    };
    Ok(SynthesisRun {
        product,
        game,
        solution,
        outcome,
    })
}

fn counterstrategy(game: &SynthesisGame, solution: &Solution) -> Counterstrategy {
    let mut seen = HashSet::from([game.initial()]);
    let mut queue = VecDeque::from([game.initial()]);
    let mut moves = Vec::new();
    while let Some(q) = queue.pop_front() {
        let input = solution
            .choice(q)
            .expect("Environment-won vertices have a choice");
        let v1 = game.v1(q, input);
        let next: Vec<usize> = game.successors(v1).map(|(_, t)| t).collect();
        for &t in &next {
            if seen.insert(t) {
                queue.push_back(t);
            }
        }
        moves.push(CounterMove {
            state: q,
            colour: game.colour(q),
            input,
            next,
        });
    }
    moves.sort_by_key(|m| m.state);
    Counterstrategy {
        inputs: game.inputs().clone(),
        outputs: game.outputs().clone(),
        moves,
    }
}

/// Semantic reference: the lasso satisfies the specification iff some
/// assumption automaton rejects it or every guarantee automaton accepts it.
pub fn lasso_oracle(spec: &NormalizedSpec, lasso: &Lasso) -> bool {
    spec.assumptions().any(|a| !eval_lasso(a, lasso))
        || spec.guarantees().all(|g| eval_lasso(g, lasso))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialReport {
    pub checked: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<Lasso>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DifferentialError {
    #[error(transparent)]
    Capacity(#[from] ProductError),
    #[error("{aps} propositions are too many to enumerate lassos (limit {limit})")]
    TooManyAps { aps: usize, limit: usize },
}

/// Compares the product automaton with [`lasso_oracle`] on every lasso with
/// `|stem| <= max_stem` and `1 <= |period| <= max_period`.
pub fn differential_test(
    spec: &NormalizedSpec,
    max_stem: usize,
    max_period: usize,
) -> Result<DifferentialReport, DifferentialError> {
    differential_test_with_limit(spec, max_stem, max_period, DEFAULT_ORACLE_APS)
}

pub fn differential_test_with_limit(
    spec: &NormalizedSpec,
    max_stem: usize,
    max_period: usize,
    ap_limit: usize,
) -> Result<DifferentialReport, DifferentialError> {
    let aps = spec.aps().len();
    if aps > ap_limit {
        return Err(DifferentialError::TooManyAps {
            aps,
            limit: ap_limit,
        });
    }
    let product = build_product_with_limit(spec, DEFAULT_STATE_LIMIT)?;
    let mut report = DifferentialReport {
        checked: 0,
        mismatches: 0,
        first_mismatch: None,
    };
    debug_assert_eq!(
        lasso_count(aps, max_stem, max_period) as usize,
        enumerate_lassos(aps, max_stem, max_period).count()
    );
    for lasso in enumerate_lassos(aps, max_stem, max_period) {
        report.checked += 1;
        if product.accepts(&lasso) != lasso_oracle(spec, &lasso) {
            report.mismatches += 1;
            report.first_mismatch.get_or_insert(lasso);
        }
    }
    Ok(report)
}
