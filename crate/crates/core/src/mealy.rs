//! Mealy machines: extraction from a solved game, verification against the
//! parity automaton, JSON and DOT export.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ap::{ApError, ApTable, Letter};
use crate::cycles::ColouredGraph;
use crate::game::{Player, SynthesisGame};
use crate::lasso::Lasso;
use crate::product::ParityAutomaton;
use crate::solver::Solution;

#[derive(Debug, Error)]
pub enum MachineError {
    #[error("malformed machine JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Ap(#[from] ApError),
    #[error("machine has no states")]
    NoStates,
    #[error("state {0} out of range")]
    StateOutOfRange(usize),
    #[error("output letter {0} out of range")]
    OutputOutOfRange(u32),
    #[error("transition for state {state} on input {input} is {problem}")]
    Transition {
        state: usize,
        input: String,
        problem: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the initial vertex is won by the environment")]
pub struct NotRealizable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("machine propositions {machine:?} do not match automaton propositions {automaton:?}")]
pub struct IncompatibleAlphabets {
    pub machine: Vec<String>,
    pub automaton: Vec<String>,
}

/// Outcome of [`verify_mealy`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MachineVerdict {
    Pass,
    /// An input sequence on which the induced word is rejected, as a lasso
    /// over the automaton's alphabet.
    Violation(Lasso),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyMachine {
    inputs: ApTable,
    outputs: ApTable,
    initial: usize,
    /// `s·2^|I| + x` ↦ (successor, output).
    transitions: Vec<(u32, Letter)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MachineJson {
    inputs: Vec<String>,
    outputs: Vec<String>,
    states: usize,
    initial: usize,
    transitions: Vec<TransitionJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransitionJson {
    from: usize,
    on: Vec<String>,
    to: usize,
    out: Vec<String>,
}

fn sorted_names(aps: &ApTable, letter: Letter) -> Vec<String> {
    let mut names: Vec<String> = aps
        .letter_names(letter)
        .into_iter()
        .map(str::to_owned)
        .collect();
    names.sort();
    names
}

impl MealyMachine {
    /// `transitions[s·2^|I| + x]` is the successor and output of state `s`
    /// on input `x`.
    pub fn new(
        inputs: ApTable,
        outputs: ApTable,
        initial: usize,
        transitions: Vec<(usize, Letter)>,
    ) -> Result<Self, MachineError> {
        let per_state = inputs.num_letters();
        if transitions.is_empty() {
            return Err(MachineError::NoStates);
        }
        if !transitions.len().is_multiple_of(per_state) {
            return Err(MachineError::Transition {
                state: transitions.len() / per_state,
                input: String::new(),
                problem: "missing",
            });
        }
        let n = transitions.len() / per_state;
        if initial >= n {
            return Err(MachineError::StateOutOfRange(initial));
        }
        for &(t, y) in &transitions {
            if t >= n {
                return Err(MachineError::StateOutOfRange(t));
            }
            if y.index() >= outputs.num_letters() {
                return Err(MachineError::OutputOutOfRange(y.0));
            }
        }
        Ok(MealyMachine {
            inputs,
            outputs,
            initial,
            transitions: transitions
                .into_iter()
                .map(|(t, y)| (t as u32, y))
                .collect(),
        })
    }

    pub fn inputs(&self) -> &ApTable {
        &self.inputs
    }

    pub fn outputs(&self) -> &ApTable {
        &self.outputs
    }

    pub fn num_states(&self) -> usize {
        self.transitions.len() / self.inputs.num_letters()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    /// Successor state and output letter.
    pub fn step(&self, state: usize, input: Letter) -> (usize, Letter) {
        let (t, y) = self.transitions[(state << self.inputs.len()) | input.index()];
        (t as usize, y)
    }

    /// Outputs produced along an input sequence from the initial state.
    pub fn run(&self, inputs: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
        let mut s = self.initial;
        inputs
            .into_iter()
            .map(|x| {
                let (t, y) = self.step(s, x);
                s = t;
                y
            })
            .collect()
    }

    /// The word produced on an input lasso, as a lasso over `aps`, which
    /// must contain every input and output name.
    pub fn induced_lasso(&self, aps: &ApTable, inputs: &Lasso) -> Result<Lasso, ApError> {
        let bits = |table: &ApTable| {
            table
                .names()
                .iter()
                .map(|n| aps.index_of(n).ok_or_else(|| ApError::Unknown(n.clone())))
                .collect::<Result<Vec<_>, _>>()
        };
        let (in_bits, out_bits) = (bits(&self.inputs)?, bits(&self.outputs)?);
        let scatter = |letter: Letter, bits: &[usize]| {
            bits.iter()
                .enumerate()
                .filter(|&(i, _)| letter.contains(i))
                .fold(Letter::EMPTY, |acc, (_, &b)| acc.with(b))
        };
        let mut s = self.initial;
        let mut word = Vec::new();
        let feed = |s: &mut usize, x: Letter, word: &mut Vec<Letter>| {
            let (t, y) = self.step(*s, x);
            word.push(scatter(x, &in_bits).union(scatter(y, &out_bits)));
            *s = t;
        };
        for &x in inputs.stem() {
            feed(&mut s, x, &mut word);
        }
        // Unroll whole periods until the machine state at a period boundary
        // repeats.
        let mut boundaries: Vec<usize> = Vec::new();
        loop {
            if let Some(i) = boundaries.iter().position(|&b| b == s) {
                let split = inputs.stem().len() + i * inputs.period().len();
                let period = word.split_off(split);
                return Ok(Lasso::new(word, period).expect("periods are non-empty"));
            }
            boundaries.push(s);
            for &x in inputs.period() {
                feed(&mut s, x, &mut word);
            }
        }
    }

    /// JSON with letters as sorted name arrays, transitions ordered by
    /// state and then by input letter.
    pub fn to_json(&self) -> String {
        let mut transitions = Vec::with_capacity(self.transitions.len());
        for s in 0..self.num_states() {
            for x in self.inputs.letters() {
                let (to, y) = self.step(s, x);
                transitions.push(TransitionJson {
                    from: s,
                    on: sorted_names(&self.inputs, x),
                    to,
                    out: sorted_names(&self.outputs, y),
                });
            }
        }
        let json = MachineJson {
            inputs: self.inputs.names().to_vec(),
            outputs: self.outputs.names().to_vec(),
            states: self.num_states(),
            initial: self.initial,
            transitions,
        };
        serde_json::to_string_pretty(&json).expect("plain data serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, MachineError> {
        let json: MachineJson = serde_json::from_str(text)?;
        let inputs = ApTable::new(json.inputs)?;
        let outputs = ApTable::new(json.outputs)?;
        if json.states == 0 {
            return Err(MachineError::NoStates);
        }
        let per_state = inputs.num_letters();
        let mut table: Vec<Option<(usize, Letter)>> = vec![None; json.states * per_state];
        for t in &json.transitions {
            if t.from >= json.states {
                return Err(MachineError::StateOutOfRange(t.from));
            }
            let x = inputs.letter_from_names(&t.on)?;
            let y = outputs.letter_from_names(&t.out)?;
            let slot = &mut table[t.from * per_state + x.index()];
            if slot.is_some() {
                return Err(MachineError::Transition {
                    state: t.from,
                    input: inputs.display_letter(x).to_string(),
                    problem: "duplicated",
                });
            }
            *slot = Some((t.to, y));
        }
        let transitions = table
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| MachineError::Transition {
                    state: i / per_state,
                    input: inputs
                        .display_letter(Letter((i % per_state) as u32))
                        .to_string(),
                    problem: "missing",
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        MealyMachine::new(inputs, outputs, json.initial, transitions)
    }

    /// Graphviz rendering; edges are labelled `input / output`.
    pub fn to_dot(&self) -> String {
        let label = |aps: &ApTable, l: Letter| {
            let names = sorted_names(aps, l);
            if names.is_empty() {
                "{}".to_owned()
            } else {
                names.join(",")
            }
        };
        let mut out = String::from("digraph mealy {\n  rankdir=LR;\n  init [shape=point];\n");
        for s in 0..self.num_states() {
            let _ = writeln!(out, "  s{s} [shape=circle,label=\"{s}\"];");
        }
        let _ = writeln!(out, "  init -> s{};", self.initial);
        for s in 0..self.num_states() {
            for x in self.inputs.letters() {
                let (t, y) = self.step(s, x);
                let _ = writeln!(
                    out,
                    "  s{s} -> s{t} [label=\"{} / {}\"];",
                    label(&self.inputs, x),
                    label(&self.outputs, y)
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Machine that follows the System strategy from the initial vertex.
///
/// States are the automaton states reachable under the strategy, renumbered
/// in breadth-first order.
pub fn extract_mealy(
    game: &SynthesisGame,
    solution: &Solution,
) -> Result<MealyMachine, NotRealizable> {
    if solution.winner(game.initial()) != Player::System {
        return Err(NotRealizable);
    }
    let mut ids: HashMap<usize, usize> = HashMap::from([(game.initial(), 0)]);
    let mut order = vec![game.initial()];
    let mut queue = VecDeque::from([game.initial()]);
    let mut transitions = Vec::new();
    while let Some(q) = queue.pop_front() {
        for x in game.inputs().letters() {
            let v1 = game.v1(q, x);
            let y = solution
                .choice(v1)
                .expect("System-won vertices have a choice");
            let next = game.step(v1, y);
            let id = *ids.entry(next).or_insert_with(|| {
                order.push(next);
                queue.push_back(next);
                order.len() - 1
            });
            transitions.push((id, y));
        }
    }
    Ok(MealyMachine::new(
        game.inputs().clone(),
        game.outputs().clone(),
        0,
        transitions,
    )
    .expect("extracted transitions are in range"))
}

/// Model-checks the machine against the parity automaton.
///
/// Explores pairs (machine state, automaton state) reachable from the
/// initial pair and looks for a cycle whose largest colour is odd.
pub fn verify_mealy(
    machine: &MealyMachine,
    pa: &ParityAutomaton,
) -> Result<MachineVerdict, IncompatibleAlphabets> {
    let incompatible = || IncompatibleAlphabets {
        machine: machine
            .inputs
            .names()
            .iter()
            .chain(machine.outputs.names())
            .cloned()
            .collect(),
        automaton: pa.aps().names().to_vec(),
    };
    if pa.aps().len() != machine.inputs.len() + machine.outputs.len() {
        return Err(incompatible());
    }
    let position = |name: &String| pa.aps().index_of(name).ok_or_else(incompatible);
    let in_bits = machine
        .inputs
        .names()
        .iter()
        .map(position)
        .collect::<Result<Vec<_>, _>>()?;
    let out_bits = machine
        .outputs
        .names()
        .iter()
        .map(position)
        .collect::<Result<Vec<_>, _>>()?;
    let scatter = |letter: Letter, bits: &[usize]| {
        bits.iter()
            .enumerate()
            .filter(|&(i, _)| letter.contains(i))
            .fold(Letter::EMPTY, |acc, (_, &b)| acc.with(b))
    };

    let start = (machine.initial, pa.initial());
    let mut ids: HashMap<(usize, usize), usize> = HashMap::from([(start, 0)]);
    let mut nodes = vec![start];
    let mut parent: Vec<Option<(usize, Letter)>> = vec![None];
    let mut succ: Vec<Vec<(u32, usize)>> = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let (s, q) = nodes[i];
        let mut out = Vec::with_capacity(machine.inputs.num_letters());
        for x in machine.inputs.letters() {
            let (t, y) = machine.step(s, x);
            let full = scatter(x, &in_bits).union(scatter(y, &out_bits));
            let next = (t, pa.successor(q, full));
            let id = *ids.entry(next).or_insert_with(|| {
                nodes.push(next);
                parent.push(Some((i, full)));
                nodes.len() - 1
            });
            out.push((full.0, id));
        }
        succ.push(out);
        i += 1;
    }
    let graph = ColouredGraph {
        colour: nodes.iter().map(|&(_, q)| pa.colour(q)).collect(),
        succ,
    };
    let Some(cycle) = graph.cycle_with_max_parity(1) else {
        return Ok(MachineVerdict::Pass);
    };
    let mut stem = Vec::new();
    let mut v = cycle[0].0;
    while let Some((p, l)) = parent[v] {
        stem.push(l);
        v = p;
    }
    stem.reverse();
    let period = cycle.iter().map(|&(_, l)| Letter(l)).collect();
    Ok(MachineVerdict::Violation(
        Lasso::new(stem, period).expect("cycles are non-empty"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn machine() -> MealyMachine {
        let inputs = ApTable::new(["request"]).unwrap();
        let outputs = ApTable::new(["grant", "ack"]).unwrap();
        MealyMachine::new(
            inputs,
            outputs,
            0,
            vec![
                (1, Letter(0)),
                (0, Letter(1)),
                (0, Letter(3)),
                (1, Letter(2)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let m = machine();
        let text = m.to_json();
        let back = MealyMachine::from_json(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json(), text);
        assert!(text.contains("\"out\": [\n        \"ack\",\n        \"grant\"\n      ]"));
    }

    #[test]
    fn malformed_json() {
        let text = machine().to_json().replace("\"to\": 1", "\"to\": 7");
        assert!(matches!(
            MealyMachine::from_json(&text),
            Err(MachineError::StateOutOfRange(7))
        ));
        let missing = r#"{"inputs":["r"],"outputs":[],"states":1,"initial":0,"transitions":[{"from":0,"on":[],"to":0,"out":[]}]}"#;
        assert!(matches!(
            MealyMachine::from_json(missing),
            Err(MachineError::Transition {
                problem: "missing",
                ..
            })
        ));
        assert!(MealyMachine::from_json("{").is_err());
    }

    #[test]
    fn induced_lasso_unrolls_until_state_repeats() {
        let m = machine();
        let aps = ApTable::new(["grant", "request", "ack"]).unwrap();
        // Input period {} alternates the machine between states 0 and 1.
        let word = m
            .induced_lasso(&aps, &Lasso::new(vec![], vec![Letter(0)]).unwrap())
            .unwrap();
        assert!(word.stem().is_empty());
        assert_eq!(word.period(), &[Letter(0), Letter(0b101)]);
    }

    #[test]
    fn run_and_dot() {
        let m = machine();
        assert_eq!(
            m.run([Letter(0), Letter(0), Letter(1)]),
            vec![Letter(0), Letter(3), Letter(1)]
        );
        let dot = m.to_dot();
        assert!(dot.contains("s1 -> s0 [label=\"{} / ack,grant\"];"));
    }
}
