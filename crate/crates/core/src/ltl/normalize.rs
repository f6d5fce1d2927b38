use thiserror::Error;

use crate::automaton::{
    decompose_rabin, Acceptance, AcceptanceKind, DeterministicOmegaAutomaton, StateSet,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Assumption,
    Guarantee,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConjunctKind {
    Buchi,
    CoBuchi,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("{0} acceptance is not supported for conjuncts; each conjunct needs a safety, Buchi, co-Buchi or one-pair Rabin automaton")]
    UnsupportedAcceptance(AcceptanceKind),
}

/// A conjunct automaton sorted into one of the four groups of the product:
/// Büchi assumptions, co-Büchi assumptions, Büchi guarantees, co-Büchi
/// guarantees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedConjunct {
    pub automaton: DeterministicOmegaAutomaton,
    pub role: Role,
    pub kind: ConjunctKind,
}

fn conjunct(automaton: DeterministicOmegaAutomaton, role: Role) -> ClassifiedConjunct {
    let kind = match automaton.acceptance() {
        Acceptance::Buchi { .. } => ConjunctKind::Buchi,
        Acceptance::CoBuchi { .. } => ConjunctKind::CoBuchi,
        other => unreachable!("only Büchi/co-Büchi reach here, got {}", other.kind()),
    };
    ClassifiedConjunct {
        automaton,
        role,
        kind,
    }
}

/// Rewrites one conjunct automaton into Büchi / co-Büchi pieces.
///
/// Safety automata become Büchi automata accepting every non-sink state;
/// one-pair Rabin automata are split into a co-Büchi and a Büchi part.
pub fn normalize(
    aut: &DeterministicOmegaAutomaton,
    role: Role,
) -> Result<Vec<ClassifiedConjunct>, NormalizeError> {
    match aut.acceptance() {
        Acceptance::Safety { sink } => {
            let accepting: StateSet = (0..aut.num_states())
                .filter(|q| !sink.contains(q))
                .collect();
            let buchi = aut
                .with_acceptance(Acceptance::Buchi { accepting })
                .expect("same structure, in-range set");
            Ok(vec![conjunct(buchi, role)])
        }
        Acceptance::Buchi { .. } | Acceptance::CoBuchi { .. } => {
            Ok(vec![conjunct(aut.clone(), role)])
        }
        Acceptance::OnePairRabin { .. } => {
            let (co, buchi) = decompose_rabin(aut).expect("checked Rabin above");
            Ok(vec![conjunct(co, role), conjunct(buchi, role)])
        }
        other => Err(NormalizeError::UnsupportedAcceptance(other.kind())),
    }
}
