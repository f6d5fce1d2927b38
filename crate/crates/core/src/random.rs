//! Seeded generators of small specifications and games for randomized
//! testing.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::ap::ApTable;
use crate::automaton::{Acceptance, DeterministicOmegaAutomaton, StateSet};
use crate::game::SynthesisGame;
use crate::ltl::{normalize, ClassifiedConjunct, Role};
use crate::product::NormalizedSpec;

/// Shape limits for [`random_spec`].
#[derive(Debug, Clone, Copy)]
pub struct SpecShape {
    pub max_aps: usize,
    pub max_conjuncts: usize,
    pub max_states: usize,
}

impl Default for SpecShape {
    fn default() -> Self {
        SpecShape {
            max_aps: 3,
            max_conjuncts: 2,
            max_states: 3,
        }
    }
}

/// Shape limits for [`random_game`].
#[derive(Debug, Clone, Copy)]
pub struct GameShape {
    pub max_states: usize,
    pub max_inputs: usize,
    pub max_outputs: usize,
    pub max_colour: u8,
}

impl Default for GameShape {
    fn default() -> Self {
        GameShape {
            max_states: 50,
            max_inputs: 2,
            max_outputs: 2,
            max_colour: 4,
        }
    }
}

fn subset(rng: &mut impl Rng, n: usize) -> StateSet {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

/// Random total deterministic automaton with safety, Büchi, co-Büchi or
/// one-pair Rabin acceptance.
pub fn random_automaton(
    rng: &mut impl Rng,
    num_aps: usize,
    max_states: usize,
) -> DeterministicOmegaAutomaton {
    let n = rng.gen_range(1..=max_states);
    let letters = 1usize << num_aps;
    let mut table: Vec<usize> = (0..n * letters).map(|_| rng.gen_range(0..n)).collect();
    let acceptance = match rng.gen_range(0..4) {
        0 => {
            // The sink must be closed under every letter.
            let sink: StateSet = subset(rng, n);
            for &q in &sink {
                for l in 0..letters {
                    let targets: Vec<usize> = sink.iter().copied().collect();
                    table[q * letters + l] = *targets.choose(rng).expect("non-empty");
                }
            }
            Acceptance::Safety { sink }
        }
        1 => Acceptance::Buchi {
            accepting: subset(rng, n),
        },
        2 => Acceptance::CoBuchi {
            rejecting: subset(rng, n),
        },
        _ => Acceptance::OnePairRabin {
            allowed: subset(rng, n),
            recurring: subset(rng, n),
        },
    };
    DeterministicOmegaAutomaton::from_table(num_aps, 0, &table, acceptance)
        .expect("generated automata are well formed")
}

/// Random specification with `1..=max_aps` propositions split into inputs
/// and outputs, and `0..=max_conjuncts` conjuncts on each side.
pub fn random_spec(rng: &mut impl Rng, shape: SpecShape) -> NormalizedSpec {
    let num_aps = rng.gen_range(1..=shape.max_aps);
    let num_inputs = rng.gen_range(0..=num_aps);
    let inputs = ApTable::new((0..num_inputs).map(|i| format!("i{i}"))).expect("valid names");
    let outputs =
        ApTable::new((0..num_aps - num_inputs).map(|i| format!("o{i}"))).expect("valid names");
    let mut conjuncts: Vec<ClassifiedConjunct> = Vec::new();
    for role in [Role::Assumption, Role::Guarantee] {
        for _ in 0..rng.gen_range(0..=shape.max_conjuncts) {
            let aut = random_automaton(rng, num_aps, shape.max_states);
            conjuncts.extend(normalize(&aut, role).expect("generated kinds normalize"));
        }
    }
    NormalizedSpec::new(inputs, outputs, conjuncts).expect("fresh names are disjoint")
}

/// Random game with arbitrary colours and moves.
pub fn random_game(rng: &mut impl Rng, shape: GameShape) -> SynthesisGame {
    let n = rng.gen_range(1..=shape.max_states);
    let ni = rng.gen_range(0..=shape.max_inputs);
    let no = rng.gen_range(0..=shape.max_outputs);
    let inputs = ApTable::new((0..ni).map(|i| format!("i{i}"))).expect("valid names");
    let outputs = ApTable::new((0..no).map(|i| format!("o{i}"))).expect("valid names");
    let colours = (0..n)
        .map(|_| rng.gen_range(0..=shape.max_colour))
        .collect();
    let moves = (0..n << (ni + no))
        .map(|_| rng.gen_range(0..n as u32))
        .collect();
    SynthesisGame::from_parts(inputs, outputs, colours, moves).expect("consistent sizes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_game(&mut ChaCha8Rng::seed_from_u64(7), GameShape::default());
        let b = random_game(&mut ChaCha8Rng::seed_from_u64(7), GameShape::default());
        assert_eq!(a, b);
    }

    #[test]
    fn specs_respect_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let s = random_spec(&mut rng, SpecShape::default());
            assert!(s.aps().len() <= 3 && !s.aps().is_empty());
            assert!(s.components().all(|a| a.num_states() <= 3));
            // A Rabin conjunct splits in two.
            assert!(s.assumptions().count() <= 4 && s.guarantees().count() <= 4);
        }
    }
}
