//! The five-colour parity automaton for `(a_1 ∧ … ∧ a_n) → (g_1 ∧ … ∧ g_m)`.
//!
//! Every conjunct has already been split into Büchi or co-Büchi pieces,
//! grouped as
//!
//! * `A`: Büchi assumptions, `B`: co-Büchi assumptions,
//! * `C`: Büchi guarantees,  `D`: co-Büchi guarantees.
//!
//! A product state runs all component automata in lockstep and carries a
//! small control structure:
//!
//! * `qw ∈ 0..=|A|`: round-robin pointer to the Büchi assumption whose
//!   accepting state is awaited next (0 is a free slot that always advances),
//! * `qr ∈ 0..=|C|`: the same for Büchi guarantees,
//! * `qv`: set whenever `qw` wraps to 0, cleared after a co-Büchi guarantee
//!   visits a rejecting state.
//!
//! Colours, highest applicable wins: 4 if some `B` is rejecting, 3 if `qv`
//! and some `D` is rejecting, 2 if `qr = 0`, 1 if `qw = 0`, else 0. A run is
//! accepted iff the largest colour seen infinitely often is even, which
//! happens exactly when some assumption fails or all guarantees hold.
//!
//! Acceptance flags are read from the source state of a transition; the
//! `qv` update reads the already-updated `qw`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::ap::{ApError, ApTable, Letter};
use crate::automaton::{Acceptance, DeterministicOmegaAutomaton};
use crate::hoa;
use crate::lasso::{recurring_states, Lasso};
use crate::ltl::{ClassifiedConjunct, ConjunctKind, Role};

/// Default cap on the raw product size.
pub const DEFAULT_STATE_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("input and output propositions overlap: {0}")]
    OverlappingAps(ApError),
    #[error("conjunct automaton is over {got} APs, expected {expected}")]
    AlphabetMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("product bound {bound} exceeds the state limit {limit}")]
    CapacityExceeded { bound: u128, limit: u128 },
}

/// Conjunct automata sorted into the four groups, all over the unified
/// alphabet `inputs ++ outputs`.
#[derive(Debug, Clone)]
pub struct NormalizedSpec {
    inputs: ApTable,
    outputs: ApTable,
    aps: ApTable,
    buchi_assumptions: Vec<DeterministicOmegaAutomaton>,
    cobuchi_assumptions: Vec<DeterministicOmegaAutomaton>,
    buchi_guarantees: Vec<DeterministicOmegaAutomaton>,
    cobuchi_guarantees: Vec<DeterministicOmegaAutomaton>,
}

impl NormalizedSpec {
    pub fn new(
        inputs: ApTable,
        outputs: ApTable,
        conjuncts: impl IntoIterator<Item = ClassifiedConjunct>,
    ) -> Result<Self, SpecError> {
        let aps = inputs.concat(&outputs).map_err(SpecError::OverlappingAps)?;
        let mut spec = NormalizedSpec {
            inputs,
            outputs,
            aps,
            buchi_assumptions: Vec::new(),
            cobuchi_assumptions: Vec::new(),
            buchi_guarantees: Vec::new(),
            cobuchi_guarantees: Vec::new(),
        };
        for c in conjuncts {
            if c.automaton.num_aps() != spec.aps.len() {
                return Err(SpecError::AlphabetMismatch {
                    expected: spec.aps.len(),
                    got: c.automaton.num_aps(),
                });
            }
            let group = match (c.role, c.kind) {
                (Role::Assumption, ConjunctKind::Buchi) => &mut spec.buchi_assumptions,
                (Role::Assumption, ConjunctKind::CoBuchi) => &mut spec.cobuchi_assumptions,
                (Role::Guarantee, ConjunctKind::Buchi) => &mut spec.buchi_guarantees,
                (Role::Guarantee, ConjunctKind::CoBuchi) => &mut spec.cobuchi_guarantees,
            };
            group.push(c.automaton);
        }
        Ok(spec)
    }

    pub fn inputs(&self) -> &ApTable {
        &self.inputs
    }

    pub fn outputs(&self) -> &ApTable {
        &self.outputs
    }

    /// `inputs ++ outputs`; every component automaton is over this table.
    pub fn aps(&self) -> &ApTable {
        &self.aps
    }

    /// Group `A`.
    pub fn buchi_assumptions(&self) -> &[DeterministicOmegaAutomaton] {
        &self.buchi_assumptions
    }

    /// Group `B`.
    pub fn cobuchi_assumptions(&self) -> &[DeterministicOmegaAutomaton] {
        &self.cobuchi_assumptions
    }

    /// Group `C`.
    pub fn buchi_guarantees(&self) -> &[DeterministicOmegaAutomaton] {
        &self.buchi_guarantees
    }

    /// Group `D`.
    pub fn cobuchi_guarantees(&self) -> &[DeterministicOmegaAutomaton] {
        &self.cobuchi_guarantees
    }

    pub fn assumptions(&self) -> impl Iterator<Item = &DeterministicOmegaAutomaton> {
        self.buchi_assumptions
            .iter()
            .chain(&self.cobuchi_assumptions)
    }

    pub fn guarantees(&self) -> impl Iterator<Item = &DeterministicOmegaAutomaton> {
        self.buchi_guarantees.iter().chain(&self.cobuchi_guarantees)
    }

    /// Components in product order: A, B, C, D.
    pub fn components(&self) -> impl Iterator<Item = &DeterministicOmegaAutomaton> {
        self.buchi_assumptions
            .iter()
            .chain(&self.cobuchi_assumptions)
            .chain(&self.buchi_guarantees)
            .chain(&self.cobuchi_guarantees)
    }

    /// `∏|Q_i| · (|A|+1) · (|C|+1) · 2`, saturating.
    pub fn raw_bound(&self) -> u128 {
        self.components()
            .map(|a| a.num_states() as u128)
            .chain([
                self.buchi_assumptions.len() as u128 + 1,
                self.buchi_guarantees.len() as u128 + 1,
                2,
            ])
            .fold(1u128, |acc, x| acc.saturating_mul(x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductState {
    /// One state per component, A, B, C, D order.
    pub components: Vec<u32>,
    pub qw: u32,
    pub qr: u32,
    pub qv: bool,
}

/// Control-structure update for one step.
///
/// `a_accepting[i]` / `c_accepting[i]` tell whether the source state of the
/// `(i+1)`-th Büchi assumption / guarantee is accepting; `d_rejecting[i]`
/// whether the `(i+1)`-th co-Büchi guarantee is rejecting.
pub fn control_successor(
    qw: u32,
    qr: u32,
    qv: bool,
    a_accepting: &[bool],
    c_accepting: &[bool],
    d_rejecting: &[bool],
) -> (u32, u32, bool) {
    let advance = |counter: u32, flags: &[bool]| {
        if counter == 0 || flags[counter as usize - 1] {
            (counter + 1) % (flags.len() as u32 + 1)
        } else {
            counter
        }
    };
    let qw_next = advance(qw, a_accepting);
    let qr_next = advance(qr, c_accepting);
    let qv_next = qw_next == 0 || (qv && !d_rejecting.iter().any(|&r| r));
    (qw_next, qr_next, qv_next)
}

fn colour(b_rejecting: bool, d_rejecting: bool, qw: u32, qr: u32, qv: bool) -> u8 {
    if b_rejecting {
        4
    } else if qv && d_rejecting {
        3
    } else if qr == 0 {
        2
    } else if qw == 0 {
        1
    } else {
        0
    }
}

/// Colour of a product state.
pub fn colour_of(state: &ProductState, spec: &NormalizedSpec) -> u8 {
    let (n1, n2, n3) = (
        spec.buchi_assumptions.len(),
        spec.cobuchi_assumptions.len(),
        spec.buchi_guarantees.len(),
    );
    let b = &state.components[n1..n1 + n2];
    let d = &state.components[n1 + n2 + n3..];
    let b_rejecting = spec
        .cobuchi_assumptions
        .iter()
        .zip(b)
        .any(|(a, &q)| rejecting(a, q));
    let d_rejecting = spec
        .cobuchi_guarantees
        .iter()
        .zip(d)
        .any(|(a, &q)| rejecting(a, q));
    colour(b_rejecting, d_rejecting, state.qw, state.qr, state.qv)
}

fn rejecting(aut: &DeterministicOmegaAutomaton, q: u32) -> bool {
    match aut.acceptance() {
        Acceptance::CoBuchi { rejecting } => rejecting.contains(&(q as usize)),
        _ => false,
    }
}

fn accepting(aut: &DeterministicOmegaAutomaton, q: u32) -> bool {
    match aut.acceptance() {
        Acceptance::Buchi { accepting } => accepting.contains(&(q as usize)),
        _ => false,
    }
}

/// Reachable part of the product, densely indexed in breadth-first order.
/// State 0 is the initial state.
#[derive(Debug, Clone)]
pub struct ParityAutomaton {
    aps: ApTable,
    states: Vec<ProductState>,
    colours: Vec<u8>,
    table: Vec<u32>,
    raw_bound: u128,
}

impl ParityAutomaton {
    pub fn aps(&self) -> &ApTable {
        &self.aps
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn state(&self, index: usize) -> &ProductState {
        &self.states[index]
    }

    pub fn colour(&self, index: usize) -> u8 {
        self.colours[index]
    }

    pub fn colours(&self) -> &[u8] {
        &self.colours
    }

    pub fn colours_used(&self) -> BTreeSet<u8> {
        self.colours.iter().copied().collect()
    }

    /// `∏|Q_i| · (|A|+1) · (|C|+1) · 2` for the spec this was built from.
    pub fn raw_bound(&self) -> u128 {
        self.raw_bound
    }

    #[inline]
    pub fn successor(&self, state: usize, letter: Letter) -> usize {
        self.table[(state << self.aps.len()) | letter.index()] as usize
    }

    /// States visited infinitely often on the lasso.
    pub fn recurring_states(&self, lasso: &Lasso) -> Vec<usize> {
        recurring_states(0, |q, l| self.successor(q, l), lasso)
    }

    /// Parity acceptance of the run on the lasso.
    pub fn accepts(&self, lasso: &Lasso) -> bool {
        self.recurring_states(lasso)
            .into_iter()
            .map(|q| self.colours[q])
            .max()
            .is_some_and(|c| c % 2 == 0)
    }

    /// As a plain automaton with parity acceptance.
    pub fn to_automaton(&self) -> DeterministicOmegaAutomaton {
        let table: Vec<usize> = self.table.iter().map(|&t| t as usize).collect();
        let colours = self.colours.iter().map(|&c| u32::from(c)).collect();
        DeterministicOmegaAutomaton::from_table(
            self.aps.len(),
            0,
            &table,
            Acceptance::Parity { colours },
        )
        .expect("product is deterministic and total")
    }

    /// HOA text with `acc-name: parity max even 5`.
    pub fn to_hoa(&self) -> String {
        hoa::emit_hoa(&self.to_automaton(), &self.aps).expect("parity is writable")
    }
}

/// Builds the reachable product with the default state limit.
pub fn build_product(spec: &NormalizedSpec) -> Result<ParityAutomaton, ProductError> {
    build_product_with_limit(spec, DEFAULT_STATE_LIMIT)
}

pub fn build_product_with_limit(
    spec: &NormalizedSpec,
    limit: u128,
) -> Result<ParityAutomaton, ProductError> {
    let bound = spec.raw_bound();
    if bound > limit {
        return Err(ProductError::CapacityExceeded { bound, limit });
    }
    let components: Vec<&DeterministicOmegaAutomaton> = spec.components().collect();
    let n1 = spec.buchi_assumptions.len();
    let n2 = spec.cobuchi_assumptions.len();
    let n3 = spec.buchi_guarantees.len();
    let b_range = n1..n1 + n2;
    let c_range = n1 + n2..n1 + n2 + n3;
    let d_range = n1 + n2 + n3..components.len();

    // Per component, per state: accepting (A, C) or rejecting (B, D).
    let flags: Vec<Vec<bool>> = components
        .iter()
        .enumerate()
        .map(|(i, aut)| {
            (0..aut.num_states() as u32)
                .map(|q| {
                    if i < n1 || c_range.contains(&i) {
                        accepting(aut, q)
                    } else {
                        rejecting(aut, q)
                    }
                })
                .collect()
        })
        .collect();

    let num_letters = spec.aps.num_letters();
    let initial = ProductState {
        components: components.iter().map(|a| a.initial() as u32).collect(),
        qw: 0,
        qr: 0,
        qv: false,
    };
    let mut index: HashMap<ProductState, u32> = HashMap::new();
    let mut states = Vec::new();
    let mut queue = VecDeque::new();
    index.insert(initial.clone(), 0);
    states.push(initial.clone());
    queue.push_back(initial);
    let mut table: Vec<u32> = Vec::new();
    let mut colours = Vec::new();

    let mut a_acc = vec![false; n1];
    let mut c_acc = vec![false; n3];
    let mut d_rej = vec![false; d_range.len()];
    while let Some(state) = queue.pop_front() {
        let flag = |i: usize| flags[i][state.components[i] as usize];
        for (i, slot) in a_acc.iter_mut().enumerate() {
            *slot = flag(i);
        }
        for (k, slot) in c_acc.iter_mut().enumerate() {
            *slot = flag(c_range.start + k);
        }
        for (k, slot) in d_rej.iter_mut().enumerate() {
            *slot = flag(d_range.start + k);
        }
        let b_rejecting = b_range.clone().any(flag);
        let d_rejecting = d_rej.iter().any(|&r| r);
        colours.push(colour(
            b_rejecting,
            d_rejecting,
            state.qw,
            state.qr,
            state.qv,
        ));

        let (qw, qr, qv) = control_successor(state.qw, state.qr, state.qv, &a_acc, &c_acc, &d_rej);
        for l in 0..num_letters {
            let letter = Letter(l as u32);
            let next = ProductState {
                components: components
                    .iter()
                    .zip(&state.components)
                    .map(|(aut, &q)| aut.successor(q as usize, letter) as u32)
                    .collect(),
                qw,
                qr,
                qv,
            };
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = states.len() as u32;
                    index.insert(next.clone(), id);
                    states.push(next.clone());
                    queue.push_back(next);
                    id
                }
            };
            table.push(id);
        }
    }
    debug_assert_eq!(table.len(), states.len() * num_letters);
    Ok(ParityAutomaton {
        aps: spec.aps.clone(),
        states,
        colours,
        table,
        raw_bound: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::{compile_pattern, normalize, parse_ltl};

    fn spec(
        inputs: &[&str],
        outputs: &[&str],
        assume: &[&str],
        guarantee: &[&str],
    ) -> NormalizedSpec {
        let inputs = ApTable::new(inputs.iter().copied()).unwrap();
        let outputs = ApTable::new(outputs.iter().copied()).unwrap();
        let aps = inputs.concat(&outputs).unwrap();
        let mut conjuncts = Vec::new();
        for (texts, role) in [(assume, Role::Assumption), (guarantee, Role::Guarantee)] {
            for text in texts {
                for p in parse_ltl(text, &aps).unwrap() {
                    conjuncts.extend(normalize(&compile_pattern(&p, aps.len()), role).unwrap());
                }
            }
        }
        NormalizedSpec::new(inputs, outputs, conjuncts).unwrap()
    }

    #[test]
    fn counter_increments() {
        assert_eq!(
            control_successor(1, 0, false, &[true, false], &[], &[]).0,
            2
        );
        assert_eq!(
            control_successor(0, 0, false, &[false, false], &[], &[]).0,
            1
        );
        assert_eq!(control_successor(0, 0, false, &[false], &[], &[]).0, 1);
        // stalled
        assert_eq!(
            control_successor(1, 0, false, &[false, true], &[], &[]).0,
            1
        );
        assert_eq!(control_successor(0, 1, false, &[], &[false], &[]).1, 1);
        assert_eq!(control_successor(0, 1, false, &[], &[true], &[]).1, 0);
    }

    #[test]
    fn wrap_sets_verification_bit() {
        let (qw, _, qv) = control_successor(2, 0, false, &[false, true], &[], &[true, true]);
        assert_eq!((qw, qv), (0, true));
    }

    #[test]
    fn rejecting_guarantee_clears_verification_bit() {
        let (qw, _, qv) = control_successor(2, 0, true, &[false, false], &[], &[false, true]);
        assert_eq!((qw, qv), (2, false));
        let (_, _, qv) = control_successor(2, 0, true, &[false, false], &[], &[false, false]);
        assert!(qv);
    }

    #[test]
    fn no_buchi_assumptions_pins_counter() {
        for qv in [false, true] {
            assert_eq!(control_successor(0, 0, qv, &[], &[], &[true]).0, 0);
            assert!(control_successor(0, 0, qv, &[], &[], &[true]).2);
        }
    }

    #[test]
    fn colour_clauses() {
        // GF r -> GF g with one co-Büchi assumption and guarantee added.
        let s = spec(&["r"], &["g"], &["GF r", "FG r"], &["GF g", "FG g"]);
        // Components: A = GF r, B = FG r, C = GF g, D = FG g; state 0 of the
        // trackers is "last letter false", which is rejecting for B and D.
        let st = |b: u32, d: u32, qw: u32, qr: u32, qv: bool| ProductState {
            components: vec![1, b, 1, d],
            qw,
            qr,
            qv,
        };
        assert_eq!(colour_of(&st(0, 0, 1, 1, false), &s), 4);
        assert_eq!(colour_of(&st(1, 0, 1, 1, true), &s), 3);
        assert_eq!(colour_of(&st(1, 0, 1, 1, false), &s), 0);
        assert_eq!(colour_of(&st(1, 1, 1, 0, false), &s), 2);
        assert_eq!(colour_of(&st(1, 1, 0, 1, false), &s), 1);
        assert_eq!(colour_of(&st(1, 1, 1, 1, true), &s), 0);
        assert_eq!(colour_of(&st(1, 1, 0, 0, true), &s), 2);
    }

    #[test]
    fn gr1_example_bounds() {
        let s = spec(&["r"], &["g"], &["GF r"], &["GF g"]);
        assert_eq!(s.raw_bound(), 32);
        let pa = build_product(&s).unwrap();
        assert!(pa.num_states() as u128 <= 32);
        assert!(pa.colours_used().is_subset(&[0, 1, 2].into()));
        for q in 0..pa.num_states() {
            assert_eq!(colour_of(pa.state(q), &s), pa.colour(q));
        }
    }

    #[test]
    fn single_cobuchi_guarantee() {
        let s = spec(&[], &["g"], &[], &["FG g"]);
        let pa = build_product(&s).unwrap();
        assert!(pa.colours_used().is_subset(&[2, 3].into()));
        for q in 0..pa.num_states() {
            assert_eq!((pa.state(q).qw, pa.state(q).qr), (0, 0));
        }
    }

    #[test]
    fn empty_spec_is_all_even() {
        // The verification bit is raised on the first step, so the initial
        // state and its successor differ only in `qv`.
        let s = spec(&["x"], &["y"], &[], &[]);
        let pa = build_product(&s).unwrap();
        assert_eq!(pa.num_states(), 2);
        assert_eq!(pa.colours_used(), [2].into());
    }

    #[test]
    fn capacity_limit() {
        let s = spec(&["r"], &["g"], &["GF r"], &["GF g"]);
        assert_eq!(
            build_product_with_limit(&s, 31).unwrap_err(),
            ProductError::CapacityExceeded {
                bound: 32,
                limit: 31
            }
        );
    }

    #[test]
    fn product_hoa_header() {
        let s = spec(&["r"], &["g"], &["GF r"], &["GF g"]);
        let text = build_product(&s).unwrap().to_hoa();
        assert!(text.contains("acc-name: parity max even 5\n"));
        let (back, aps) = hoa::parse_hoa(&text).unwrap();
        assert_eq!(&aps, s.aps());
        assert_eq!(back.num_states(), build_product(&s).unwrap().num_states());
    }
}
