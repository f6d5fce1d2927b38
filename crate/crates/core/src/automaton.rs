//! Deterministic, total omega-automata over `2^AP` with state-based acceptance.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::ap::{ApTable, Letter, MAX_APS};
use crate::boolean::BoolExpr;

pub type StateSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub guard: BoolExpr,
    pub target: usize,
}

impl Edge {
    pub fn new(guard: BoolExpr, target: usize) -> Self {
        Edge { guard, target }
    }
}

/// Acceptance conditions, evaluated on the set of states a run visits
/// infinitely often.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Acceptance {
    /// A run is rejected iff it enters one of the `sink` states. The sink set
    /// must be closed under transitions. An empty sink accepts every run.
    Safety { sink: StateSet },
    /// `inf ∩ accepting ≠ ∅`.
    Buchi { accepting: StateSet },
    /// `inf ∩ rejecting = ∅`.
    CoBuchi { rejecting: StateSet },
    /// `inf ⊆ allowed` and `inf ∩ recurring ≠ ∅`.
    OnePairRabin {
        allowed: StateSet,
        recurring: StateSet,
    },
    /// Maximal colour in `inf` is even. One colour per state.
    Parity { colours: Vec<u32> },
    /// Every set is visited infinitely often.
    GeneralizedBuchi { sets: Vec<StateSet> },
    /// For every pair `(f, g)`: `inf ⊄ f` or `inf ∩ g = ∅`.
    Streett { pairs: Vec<(StateSet, StateSet)> },
    /// `inf` is one of the listed sets.
    Muller { table: Vec<StateSet> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AcceptanceKind {
    Safety,
    Buchi,
    CoBuchi,
    OnePairRabin,
    Parity,
    GeneralizedBuchi,
    Streett,
    Muller,
}

impl fmt::Display for AcceptanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            AcceptanceKind::Safety => "safety",
            AcceptanceKind::Buchi => "Buchi",
            AcceptanceKind::CoBuchi => "co-Buchi",
            AcceptanceKind::OnePairRabin => "Rabin 1",
            AcceptanceKind::Parity => "parity",
            AcceptanceKind::GeneralizedBuchi => "generalized-Buchi",
            AcceptanceKind::Streett => "Streett",
            AcceptanceKind::Muller => "Muller",
        };
        f.write_str(name)
    }
}

impl Acceptance {
    pub fn kind(&self) -> AcceptanceKind {
        match self {
            Acceptance::Safety { .. } => AcceptanceKind::Safety,
            Acceptance::Buchi { .. } => AcceptanceKind::Buchi,
            Acceptance::CoBuchi { .. } => AcceptanceKind::CoBuchi,
            Acceptance::OnePairRabin { .. } => AcceptanceKind::OnePairRabin,
            Acceptance::Parity { .. } => AcceptanceKind::Parity,
            Acceptance::GeneralizedBuchi { .. } => AcceptanceKind::GeneralizedBuchi,
            Acceptance::Streett { .. } => AcceptanceKind::Streett,
            Acceptance::Muller { .. } => AcceptanceKind::Muller,
        }
    }

    /// Verdict for a run whose infinitely-visited states are `inf`.
    /// `inf` is never empty for a run of a total automaton.
    pub fn accepts(&self, inf: &StateSet) -> bool {
        let meets = |set: &StateSet| inf.iter().any(|q| set.contains(q));
        match self {
            Acceptance::Safety { sink } => !meets(sink),
            Acceptance::Buchi { accepting } => meets(accepting),
            Acceptance::CoBuchi { rejecting } => !meets(rejecting),
            Acceptance::OnePairRabin { allowed, recurring } => {
                inf.is_subset(allowed) && meets(recurring)
            }
            Acceptance::Parity { colours } => inf
                .iter()
                .map(|&q| colours[q])
                .max()
                .is_some_and(|c| c % 2 == 0),
            Acceptance::GeneralizedBuchi { sets } => sets.iter().all(meets),
            Acceptance::Streett { pairs } => {
                pairs.iter().all(|(f, g)| !inf.is_subset(f) || !meets(g))
            }
            Acceptance::Muller { table } => table.iter().any(|set| set == inf),
        }
    }

    fn state_sets(&self) -> Vec<&StateSet> {
        match self {
            Acceptance::Safety { sink } => vec![sink],
            Acceptance::Buchi { accepting } => vec![accepting],
            Acceptance::CoBuchi { rejecting } => vec![rejecting],
            Acceptance::OnePairRabin { allowed, recurring } => vec![allowed, recurring],
            Acceptance::Parity { .. } => vec![],
            Acceptance::GeneralizedBuchi { sets } => sets.iter().collect(),
            Acceptance::Streett { pairs } => pairs.iter().flat_map(|(f, g)| [f, g]).collect(),
            Acceptance::Muller { table } => table.iter().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("automaton has no states")]
    NoStates,
    #[error("too many atomic propositions ({0})")]
    TooManyAps(usize),
    #[error("initial state {0} out of range")]
    InitialOutOfRange(usize),
    #[error("state {state}: edge target {target} out of range")]
    TargetOutOfRange { state: usize, target: usize },
    #[error("state {state}: guard mentions AP {ap}, but only {num_aps} APs exist")]
    GuardOutOfRange {
        state: usize,
        ap: usize,
        num_aps: usize,
    },
    #[error("state {state}: more than one edge enabled on letter {letter:?}")]
    NondeterministicEdge { state: usize, letter: Letter },
    #[error("state {state}: no edge enabled on letter {letter:?}")]
    MissingEdge { state: usize, letter: Letter },
    #[error("acceptance set mentions state {0}, which is out of range")]
    AcceptanceOutOfRange(usize),
    #[error("parity colouring has {got} entries for {expected} states")]
    ColouringLength { expected: usize, got: usize },
    #[error("safety sink state {0} has a successor outside the sink")]
    SinkNotClosed(usize),
    #[error("automaton is over {automaton} APs but the table has {table}")]
    ApCountMismatch { automaton: usize, table: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ValidationErrors(pub Vec<ValidationError>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.0.iter().take(5).map(|e| e.to_string()).collect();
        write!(f, "{}", shown.join("; "))?;
        if self.0.len() > 5 {
            write!(f, "; ... ({} errors total)", self.0.len())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expected {expected} acceptance, found {found}")]
pub struct WrongAcceptanceKind {
    pub expected: AcceptanceKind,
    pub found: AcceptanceKind,
}

/// Checks determinism, totality and ranges. On success returns the dense
/// successor table indexed by `state * 2^num_aps + letter`.
pub fn check_structure(
    num_aps: usize,
    initial: usize,
    edges: &[Vec<Edge>],
    acceptance: &Acceptance,
) -> Result<Vec<u32>, ValidationErrors> {
    let n = edges.len();
    let mut errors = Vec::new();
    if num_aps > MAX_APS {
        return Err(ValidationErrors(vec![ValidationError::TooManyAps(num_aps)]));
    }
    if n == 0 {
        return Err(ValidationErrors(vec![ValidationError::NoStates]));
    }
    if initial >= n {
        errors.push(ValidationError::InitialOutOfRange(initial));
    }
    let num_letters = 1usize << num_aps;
    let mut table = vec![0u32; n * num_letters];
    for (state, out) in edges.iter().enumerate() {
        let mut guards_ok = true;
        for edge in out {
            if edge.target >= n {
                errors.push(ValidationError::TargetOutOfRange {
                    state,
                    target: edge.target,
                });
                guards_ok = false;
            }
            if let Some(ap) = edge.guard.max_var().filter(|&ap| ap >= num_aps) {
                errors.push(ValidationError::GuardOutOfRange { state, ap, num_aps });
                guards_ok = false;
            }
        }
        if !guards_ok {
            continue;
        }
        for l in 0..num_letters {
            let letter = Letter(l as u32);
            let mut enabled = out.iter().filter(|e| e.guard.eval(letter));
            match (enabled.next(), enabled.next()) {
                (Some(e), None) => table[state * num_letters + l] = e.target as u32,
                (None, _) => errors.push(ValidationError::MissingEdge { state, letter }),
                (Some(_), Some(_)) => {
                    errors.push(ValidationError::NondeterministicEdge { state, letter })
                }
            }
        }
    }
    for set in acceptance.state_sets() {
        if let Some(&q) = set.iter().find(|&&q| q >= n) {
            errors.push(ValidationError::AcceptanceOutOfRange(q));
        }
    }
    if let Acceptance::Parity { colours } = acceptance {
        if colours.len() != n {
            errors.push(ValidationError::ColouringLength {
                expected: n,
                got: colours.len(),
            });
        }
    }
    if errors.is_empty() {
        if let Acceptance::Safety { sink } = acceptance {
            for &s in sink {
                let row = &table[s * num_letters..(s + 1) * num_letters];
                if row.iter().any(|&t| !sink.contains(&(t as usize))) {
                    errors.push(ValidationError::SinkNotClosed(s));
                }
            }
        }
    }
    if errors.is_empty() {
        Ok(table)
    } else {
        Err(ValidationErrors(errors))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterministicOmegaAutomaton {
    num_aps: usize,
    initial: usize,
    edges: Vec<Vec<Edge>>,
    acceptance: Acceptance,
    table: Vec<u32>,
}

impl DeterministicOmegaAutomaton {
    pub fn new(
        num_aps: usize,
        initial: usize,
        edges: Vec<Vec<Edge>>,
        acceptance: Acceptance,
    ) -> Result<Self, ValidationErrors> {
        let table = check_structure(num_aps, initial, &edges, &acceptance)?;
        Ok(DeterministicOmegaAutomaton {
            num_aps,
            initial,
            edges,
            acceptance,
            table,
        })
    }

    /// Builds an automaton from a dense successor table (`state * 2^num_aps +
    /// letter`), synthesising one guard per distinct target.
    pub fn from_table(
        num_aps: usize,
        initial: usize,
        table: &[usize],
        acceptance: Acceptance,
    ) -> Result<Self, ValidationErrors> {
        let num_letters = 1usize << num_aps;
        let edges = table.chunks(num_letters).map(guards_for_row).collect();
        Self::new(num_aps, initial, edges, acceptance)
    }

    pub fn num_aps(&self) -> usize {
        self.num_aps
    }

    pub fn num_letters(&self) -> usize {
        1 << self.num_aps
    }

    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn edges(&self, state: usize) -> &[Edge] {
        &self.edges[state]
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
    }

    #[inline]
    pub fn successor(&self, state: usize, letter: Letter) -> usize {
        self.table[state * self.num_letters() + letter.index()] as usize
    }

    /// Successor table row of `state`, indexed by letter.
    pub fn row(&self, state: usize) -> &[u32] {
        let w = self.num_letters();
        &self.table[state * w..(state + 1) * w]
    }

    /// Same transition structure, different acceptance.
    pub fn with_acceptance(&self, acceptance: Acceptance) -> Result<Self, ValidationErrors> {
        Self::new(self.num_aps, self.initial, self.edges.clone(), acceptance)
    }

    /// Moves the automaton onto a larger AP table; `mapping[i]` is the new
    /// index of old AP `i`. Propositions not in the image are don't-cares.
    pub fn remap_aps(
        &self,
        mapping: &[usize],
        new_num_aps: usize,
    ) -> Result<Self, ValidationErrors> {
        assert_eq!(mapping.len(), self.num_aps, "mapping must cover every AP");
        let edges = self
            .edges
            .iter()
            .map(|out| {
                out.iter()
                    .map(|e| Edge::new(e.guard.map_vars(&|i| mapping[i]), e.target))
                    .collect()
            })
            .collect();
        Self::new(new_num_aps, self.initial, edges, self.acceptance.clone())
    }
}

/// Groups one successor row into guarded edges, ordered by target.
pub(crate) fn guards_for_row(row: &[usize]) -> Vec<Edge> {
    let targets: BTreeSet<usize> = row.iter().copied().collect();
    targets
        .into_iter()
        .map(|t| {
            let members: Vec<bool> = row.iter().map(|&x| x == t).collect();
            Edge::new(BoolExpr::from_letter_set(&members), t)
        })
        .collect()
}

/// Re-checks an automaton against an AP table.
pub fn validate(aut: &DeterministicOmegaAutomaton, aps: &ApTable) -> Result<(), ValidationErrors> {
    if aut.num_aps() != aps.len() {
        return Err(ValidationErrors(vec![ValidationError::ApCountMismatch {
            automaton: aut.num_aps(),
            table: aps.len(),
        }]));
    }
    check_structure(aut.num_aps, aut.initial, &aut.edges, &aut.acceptance).map(|_| ())
}

/// Splits a one-pair Rabin automaton `(F, G)` into the co-Büchi automaton
/// rejecting `Q \ F` and the Büchi automaton accepting `G`, both on the same
/// transition structure.
pub fn decompose_rabin(
    aut: &DeterministicOmegaAutomaton,
) -> Result<(DeterministicOmegaAutomaton, DeterministicOmegaAutomaton), WrongAcceptanceKind> {
    let Acceptance::OnePairRabin { allowed, recurring } = aut.acceptance() else {
        return Err(WrongAcceptanceKind {
            expected: AcceptanceKind::OnePairRabin,
            found: aut.acceptance().kind(),
        });
    };
    let rejecting = (0..aut.num_states())
        .filter(|q| !allowed.contains(q))
        .collect();
    let mut co = aut.clone();
    co.acceptance = Acceptance::CoBuchi { rejecting };
    let mut buchi = aut.clone();
    buchi.acceptance = Acceptance::Buchi {
        accepting: recurring.clone(),
    };
    Ok((co, buchi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> StateSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn single_true_self_loop_is_valid() {
        let aut = DeterministicOmegaAutomaton::new(
            2,
            0,
            vec![vec![Edge::new(BoolExpr::Const(true), 0)]],
            Acceptance::Buchi {
                accepting: set(&[0]),
            },
        );
        assert!(aut.is_ok());
        let aps = ApTable::new(["p", "q"]).unwrap();
        assert!(validate(&aut.unwrap(), &aps).is_ok());
    }

    #[test]
    fn overlapping_guards_are_nondeterministic() {
        let p = BoolExpr::var(0);
        let p_or_q = BoolExpr::or(BoolExpr::var(0), BoolExpr::var(1));
        let err = DeterministicOmegaAutomaton::new(
            2,
            0,
            vec![vec![Edge::new(p, 0), Edge::new(p_or_q, 0)]],
            Acceptance::Buchi {
                accepting: set(&[0]),
            },
        )
        .unwrap_err();
        assert!(err.0.contains(&ValidationError::NondeterministicEdge {
            state: 0,
            letter: Letter(0b11)
        }));
    }

    #[test]
    fn uncovered_letter_is_missing_edge() {
        let err = DeterministicOmegaAutomaton::new(
            1,
            0,
            vec![
                vec![Edge::new(BoolExpr::Const(true), 1)],
                vec![Edge::new(BoolExpr::var(0), 1)],
            ],
            Acceptance::Buchi {
                accepting: set(&[0]),
            },
        )
        .unwrap_err();
        assert_eq!(
            err.0,
            vec![ValidationError::MissingEdge {
                state: 1,
                letter: Letter(0)
            }]
        );
    }

    #[test]
    fn range_errors() {
        let err = DeterministicOmegaAutomaton::new(
            1,
            3,
            vec![vec![Edge::new(BoolExpr::var(4), 7)]],
            Acceptance::CoBuchi {
                rejecting: set(&[9]),
            },
        )
        .unwrap_err();
        assert!(err.0.contains(&ValidationError::InitialOutOfRange(3)));
        assert!(err.0.contains(&ValidationError::TargetOutOfRange {
            state: 0,
            target: 7
        }));
        assert!(err.0.contains(&ValidationError::AcceptanceOutOfRange(9)));
        assert!(err
            .0
            .iter()
            .any(|e| matches!(e, ValidationError::GuardOutOfRange { ap: 4, .. })));
    }

    #[test]
    fn safety_sink_must_be_closed() {
        let t = BoolExpr::Const(true);
        let err = DeterministicOmegaAutomaton::new(
            0,
            0,
            vec![vec![Edge::new(t.clone(), 1)], vec![Edge::new(t, 0)]],
            Acceptance::Safety { sink: set(&[1]) },
        )
        .unwrap_err();
        assert_eq!(err.0, vec![ValidationError::SinkNotClosed(1)]);
    }

    #[test]
    fn rabin_decomposition_sets() {
        let t = BoolExpr::Const(true);
        let aut = DeterministicOmegaAutomaton::new(
            0,
            0,
            vec![vec![Edge::new(t.clone(), 1)], vec![Edge::new(t, 0)]],
            Acceptance::OnePairRabin {
                allowed: set(&[0, 1]),
                recurring: set(&[1]),
            },
        )
        .unwrap();
        let (co, bu) = decompose_rabin(&aut).unwrap();
        assert_eq!(
            co.acceptance(),
            &Acceptance::CoBuchi {
                rejecting: set(&[])
            }
        );
        assert_eq!(
            bu.acceptance(),
            &Acceptance::Buchi {
                accepting: set(&[1])
            }
        );
        assert_eq!(co.row(0), aut.row(0));

        let err = decompose_rabin(&bu).unwrap_err();
        assert_eq!(err.found, AcceptanceKind::Buchi);
    }

    #[test]
    fn table_construction_round_trips() {
        let table = vec![1, 0, 1, 1, 0, 0, 1, 0];
        let aut = DeterministicOmegaAutomaton::from_table(
            2,
            0,
            &table,
            Acceptance::Buchi {
                accepting: set(&[1]),
            },
        )
        .unwrap();
        for q in 0..2 {
            for l in 0..4u32 {
                assert_eq!(aut.successor(q, Letter(l)), table[q * 4 + l as usize]);
            }
        }
    }

    #[test]
    fn remap_makes_new_aps_dont_care() {
        // GF p over {p}, moved to index 2 of {a, b, p}.
        let aut = DeterministicOmegaAutomaton::from_table(
            1,
            0,
            &[0, 1, 0, 1],
            Acceptance::Buchi {
                accepting: set(&[1]),
            },
        )
        .unwrap();
        let moved = aut.remap_aps(&[2], 3).unwrap();
        for l in 0..8u32 {
            let expect = usize::from(Letter(l).contains(2));
            assert_eq!(moved.successor(0, Letter(l)), expect);
        }
    }
}
