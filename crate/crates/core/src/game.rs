//! Bipartite parity game derived from a parity automaton.
//!
//! The Environment owns the automaton states (`V0`) and picks an input
//! letter; the System owns the intermediate vertices `(q, x)` (`V1`) and
//! picks an output letter, which moves the automaton on `x ∪ y`. Only `V0`
//! vertices carry colours; `V1` vertices are coloured 0. The System wins a
//! play iff the largest colour seen infinitely often is even.
//!
//! Vertices are numbered densely: `V0` first, in automaton state order, then
//! `V1` with `(q, x)` at `|V0| + q·2^|I| + x`.

use serde_json::{json, Value};
use thiserror::Error;

use crate::ap::{ApTable, Letter};
use crate::product::ParityAutomaton;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Environment,
    System,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Environment => Player::System,
            Player::System => Player::Environment,
        }
    }

    /// The player favoured by `colour` under max-parity.
    pub fn of_colour(colour: u8) -> Player {
        if colour.is_multiple_of(2) {
            Player::System
        } else {
            Player::Environment
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("automaton propositions {automaton:?} do not match inputs ++ outputs {expected:?}")]
    AlphabetMismatch {
        automaton: Vec<String>,
        expected: Vec<String>,
    },
    #[error("game has {got} successor entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("successor {target} out of range")]
    TargetOutOfRange { target: usize },
    #[error("game needs at least one automaton state")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisGame {
    inputs: ApTable,
    outputs: ApTable,
    colours: Vec<u8>,
    /// `(q·2^|I| + x)·2^|O| + y` ↦ successor automaton state.
    moves: Vec<u32>,
}

impl SynthesisGame {
    /// Game over arbitrary colours and moves, state 0 initial.
    pub fn from_parts(
        inputs: ApTable,
        outputs: ApTable,
        colours: Vec<u8>,
        moves: Vec<u32>,
    ) -> Result<Self, GameError> {
        if colours.is_empty() {
            return Err(GameError::Empty);
        }
        let expected = colours.len() * inputs.num_letters() * outputs.num_letters();
        if moves.len() != expected {
            return Err(GameError::TableSize {
                expected,
                got: moves.len(),
            });
        }
        if let Some(&t) = moves.iter().find(|&&t| t as usize >= colours.len()) {
            return Err(GameError::TargetOutOfRange { target: t as usize });
        }
        Ok(SynthesisGame {
            inputs,
            outputs,
            colours,
            moves,
        })
    }

    pub fn inputs(&self) -> &ApTable {
        &self.inputs
    }

    pub fn outputs(&self) -> &ApTable {
        &self.outputs
    }

    pub fn num_v0(&self) -> usize {
        self.colours.len()
    }

    pub fn num_v1(&self) -> usize {
        self.colours.len() * self.inputs.num_letters()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_v0() + self.num_v1()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn is_v0(&self, v: usize) -> bool {
        v < self.num_v0()
    }

    pub fn owner(&self, v: usize) -> Player {
        if self.is_v0(v) {
            Player::Environment
        } else {
            Player::System
        }
    }

    pub fn colour(&self, v: usize) -> u8 {
        self.colours.get(v).copied().unwrap_or(0)
    }

    pub fn v0_colours(&self) -> &[u8] {
        &self.colours
    }

    /// The `V1` vertex reached from state `q` on input `x`.
    pub fn v1(&self, q: usize, x: Letter) -> usize {
        self.num_v0() + (q << self.inputs.len()) + x.index()
    }

    /// `(q, x)` for a `V1` vertex.
    pub fn v1_parts(&self, v: usize) -> (usize, Letter) {
        let k = v - self.num_v0();
        (
            k >> self.inputs.len(),
            Letter((k & (self.inputs.num_letters() - 1)) as u32),
        )
    }

    /// Automaton state reached from `V1` vertex `v` on output `y`.
    pub fn step(&self, v: usize, y: Letter) -> usize {
        let k = v - self.num_v0();
        self.moves[(k << self.outputs.len()) | y.index()] as usize
    }

    /// Outgoing edges as `(letter, target vertex)`, letters ascending.
    pub fn successors(&self, v: usize) -> impl Iterator<Item = (Letter, usize)> + '_ {
        let (is_v0, count) = if self.is_v0(v) {
            (true, self.inputs.num_letters())
        } else {
            (false, self.outputs.num_letters())
        };
        (0..count as u32).map(move |l| {
            let l = Letter(l);
            if is_v0 {
                (l, self.v1(v, l))
            } else {
                (l, self.step(v, l))
            }
        })
    }

    /// Debug dump of vertices, colours and edges. Not a stable format.
    pub fn to_debug_json(&self) -> Value {
        let names = |aps: &ApTable, l: Letter| -> Vec<String> {
            aps.letter_names(l).into_iter().map(str::to_owned).collect()
        };
        let v0: Vec<Value> = (0..self.num_v0())
            .map(|q| {
                let edges: Vec<Value> = self
                    .successors(q)
                    .map(|(x, t)| json!({"input": names(&self.inputs, x), "to": t}))
                    .collect();
                json!({"id": q, "colour": self.colours[q], "edges": edges})
            })
            .collect();
        let v1: Vec<Value> = (self.num_v0()..self.num_vertices())
            .map(|v| {
                let (q, x) = self.v1_parts(v);
                let edges: Vec<Value> = self
                    .successors(v)
                    .map(|(y, t)| json!({"output": names(&self.outputs, y), "to": t}))
                    .collect();
                json!({"id": v, "state": q, "input": names(&self.inputs, x), "edges": edges})
            })
            .collect();
        json!({
            "inputs": self.inputs.names(),
            "outputs": self.outputs.names(),
            "initial": self.initial(),
            "v0": v0,
            "v1": v1,
        })
    }
}

/// Splits the automaton alphabet into Environment inputs and System outputs.
pub fn build_game(
    pa: &ParityAutomaton,
    inputs: &ApTable,
    outputs: &ApTable,
) -> Result<SynthesisGame, GameError> {
    let mismatch = || GameError::AlphabetMismatch {
        automaton: pa.aps().names().to_vec(),
        expected: inputs
            .names()
            .iter()
            .chain(outputs.names())
            .cloned()
            .collect(),
    };
    if pa.aps().len() != inputs.len() + outputs.len() {
        return Err(mismatch());
    }
    let position = |name: &str| pa.aps().index_of(name).ok_or_else(mismatch);
    let in_bits = inputs
        .names()
        .iter()
        .map(|n| position(n))
        .collect::<Result<Vec<_>, _>>()?;
    let out_bits = outputs
        .names()
        .iter()
        .map(|n| position(n))
        .collect::<Result<Vec<_>, _>>()?;
    let scatter = |letter: Letter, bits: &[usize]| {
        bits.iter()
            .enumerate()
            .filter(|&(i, _)| letter.contains(i))
            .fold(Letter::EMPTY, |acc, (_, &b)| acc.with(b))
    };
    let mut moves = Vec::with_capacity(pa.num_states() * pa.aps().num_letters());
    for q in 0..pa.num_states() {
        for x in inputs.letters() {
            let xs = scatter(x, &in_bits);
            for y in outputs.letters() {
                moves.push(pa.successor(q, xs.union(scatter(y, &out_bits))) as u32);
            }
        }
    }
    SynthesisGame::from_parts(
        inputs.clone(),
        outputs.clone(),
        pa.colours().to_vec(),
        moves,
    )
}
