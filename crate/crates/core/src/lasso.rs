//! Ultimately periodic words `u·v^ω` and run evaluation on them.

use std::fmt;

use thiserror::Error;

use crate::ap::{ApTable, Letter};
use crate::automaton::{DeterministicOmegaAutomaton, StateSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LassoError {
    #[error("lasso period must be non-empty")]
    EmptyPeriod,
}

/// The word `stem · period^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso {
    stem: Vec<Letter>,
    period: Vec<Letter>,
}

impl Lasso {
    pub fn new(stem: Vec<Letter>, period: Vec<Letter>) -> Result<Self, LassoError> {
        if period.is_empty() {
            return Err(LassoError::EmptyPeriod);
        }
        Ok(Lasso { stem, period })
    }

    pub fn stem(&self) -> &[Letter] {
        &self.stem
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    /// Letter at position `i` of the infinite word.
    pub fn letter_at(&self, i: usize) -> Letter {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.period[(i - self.stem.len()) % self.period.len()]
        }
    }

    /// True when every letter lies in `2^num_aps`.
    pub fn fits(&self, num_aps: usize) -> bool {
        let bound = 1u64 << num_aps;
        self.stem
            .iter()
            .chain(&self.period)
            .all(|l| u64::from(l.0) < bound)
    }

    pub fn display<'a>(&'a self, aps: &'a ApTable) -> LassoDisplay<'a> {
        LassoDisplay { lasso: self, aps }
    }
}

pub struct LassoDisplay<'a> {
    lasso: &'a Lasso,
    aps: &'a ApTable,
}

impl fmt::Display for LassoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ls: &[Letter]| {
            ls.iter()
                .map(|&l| self.aps.display_letter(l).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "{} ({})^w",
            join(&self.lasso.stem),
            join(&self.lasso.period)
        )
    }
}

/// Runs a deterministic step function on the lasso and returns the states
/// visited infinitely often, sorted.
///
/// The run is iterated over whole periods until the state at a period
/// boundary repeats; the states visited between the two occurrences form
/// the infinitely repeating cycle.
pub fn recurring_states(
    initial: usize,
    mut step: impl FnMut(usize, Letter) -> usize,
    lasso: &Lasso,
) -> Vec<usize> {
    let mut q = initial;
    for &l in &lasso.stem {
        q = step(q, l);
    }
    let mut boundaries: Vec<usize> = Vec::new();
    let mut trace: Vec<usize> = Vec::new();
    loop {
        if let Some(i) = boundaries.iter().position(|&b| b == q) {
            let mut inf = trace.split_off(i * lasso.period.len());
            inf.sort_unstable();
            inf.dedup();
            return inf;
        }
        boundaries.push(q);
        for &l in &lasso.period {
            trace.push(q);
            q = step(q, l);
        }
    }
}

/// Acceptance verdict of `aut` on the lasso.
pub fn eval_lasso(aut: &DeterministicOmegaAutomaton, lasso: &Lasso) -> bool {
    debug_assert!(lasso.fits(aut.num_aps()));
    let inf: StateSet = recurring_states(aut.initial(), |q, l| aut.successor(q, l), lasso)
        .into_iter()
        .collect();
    aut.acceptance().accepts(&inf)
}

/// All lassos over `2^num_aps` with `|stem| <= max_stem` and
/// `1 <= |period| <= max_period`, shortest stems first.
pub fn enumerate_lassos(
    num_aps: usize,
    max_stem: usize,
    max_period: usize,
) -> impl Iterator<Item = Lasso> {
    let num_letters = 1u32 << num_aps;
    (0..=max_stem).flat_map(move |s| {
        words(num_letters, s).flat_map(move |stem| {
            (1..=max_period).flat_map(move |p| {
                let stem = stem.clone();
                words(num_letters, p).map(move |period| Lasso {
                    stem: stem.clone(),
                    period,
                })
            })
        })
    })
}

/// Number of lassos produced by [`enumerate_lassos`].
pub fn lasso_count(num_aps: usize, max_stem: usize, max_period: usize) -> u128 {
    let k = 1u128 << num_aps;
    let stems: u128 = (0..=max_stem as u32).map(|i| k.pow(i)).sum();
    let periods: u128 = (1..=max_period as u32).map(|i| k.pow(i)).sum();
    stems * periods
}

fn words(num_letters: u32, len: usize) -> impl Iterator<Item = Vec<Letter>> {
    let total = (num_letters as u64).pow(len as u32);
    (0..total).map(move |mut code| {
        let mut w = Vec::with_capacity(len);
        for _ in 0..len {
            w.push(Letter((code % num_letters as u64) as u32));
            code /= num_letters as u64;
        }
        w
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Acceptance;
    use proptest::prelude::*;

    fn set(xs: &[usize]) -> StateSet {
        xs.iter().copied().collect()
    }

    /// q_nb = 0, q_b = 1; q_b is entered exactly on letters containing p.
    fn gf_tracker(acceptance: Acceptance) -> DeterministicOmegaAutomaton {
        DeterministicOmegaAutomaton::from_table(1, 0, &[0, 1, 0, 1], acceptance).unwrap()
    }

    fn lasso(stem: &[u32], period: &[u32]) -> Lasso {
        Lasso::new(
            stem.iter().map(|&b| Letter(b)).collect(),
            period.iter().map(|&b| Letter(b)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn empty_period_rejected() {
        assert_eq!(Lasso::new(vec![], vec![]), Err(LassoError::EmptyPeriod));
    }

    #[test]
    fn all_accepting_buchi_accepts_everything() {
        let aut = gf_tracker(Acceptance::Buchi {
            accepting: set(&[0, 1]),
        });
        for l in enumerate_lassos(1, 2, 3) {
            assert!(eval_lasso(&aut, &l));
        }
    }

    #[test]
    fn gf_tracker_buchi_and_cobuchi() {
        let buchi = gf_tracker(Acceptance::Buchi {
            accepting: set(&[1]),
        });
        let co = gf_tracker(Acceptance::CoBuchi {
            rejecting: set(&[0]),
        });
        // loop ({p}, {}): both states recur.
        let l = lasso(&[], &[1, 0]);
        assert_eq!(
            recurring_states(0, |q, x| buchi.successor(q, x), &l),
            vec![0, 1]
        );
        assert!(eval_lasso(&buchi, &l));
        assert!(!eval_lasso(&co, &l));
        assert!(!eval_lasso(&buchi, &lasso(&[1, 1], &[0])));
        assert!(eval_lasso(&co, &lasso(&[0], &[1])));
    }

    #[test]
    fn rabin_with_empty_recurring_set_rejects() {
        let aut = gf_tracker(Acceptance::OnePairRabin {
            allowed: set(&[0, 1]),
            recurring: set(&[]),
        });
        assert!(enumerate_lassos(1, 2, 2).all(|l| !eval_lasso(&aut, &l)));
    }

    #[test]
    fn evaluator_only_conditions() {
        let gb = gf_tracker(Acceptance::GeneralizedBuchi {
            sets: vec![set(&[0]), set(&[1])],
        });
        assert!(eval_lasso(&gb, &lasso(&[], &[0, 1])));
        assert!(!eval_lasso(&gb, &lasso(&[], &[1])));
        // Streett pair ({1}, {1}): fails exactly when inf = {1}.
        let st = gf_tracker(Acceptance::Streett {
            pairs: vec![(set(&[1]), set(&[1]))],
        });
        assert!(!eval_lasso(&st, &lasso(&[], &[1])));
        assert!(eval_lasso(&st, &lasso(&[], &[0, 1])));
        let mu = gf_tracker(Acceptance::Muller {
            table: vec![set(&[0, 1])],
        });
        assert!(eval_lasso(&mu, &lasso(&[0], &[1, 0])));
        assert!(!eval_lasso(&mu, &lasso(&[], &[0])));
        let par = gf_tracker(Acceptance::Parity {
            colours: vec![1, 2],
        });
        assert!(eval_lasso(&par, &lasso(&[], &[0, 1])));
        assert!(!eval_lasso(&par, &lasso(&[], &[0])));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(
            enumerate_lassos(1, 2, 3).count() as u128,
            lasso_count(1, 2, 3)
        );
        assert_eq!(lasso_count(1, 2, 3), 7 * 14);
        assert_eq!(enumerate_lassos(2, 1, 1).count(), 5 * 4);
    }

    fn random_aut(seed: u64, num_states: usize, colours: &[u32]) -> DeterministicOmegaAutomaton {
        let table: Vec<usize> = (0..num_states * 4)
            .map(|i| ((seed >> (i * 2 % 60)) as usize + i) % num_states)
            .collect();
        DeterministicOmegaAutomaton::from_table(
            2,
            0,
            &table,
            Acceptance::Parity {
                colours: colours[..num_states].to_vec(),
            },
        )
        .unwrap()
    }

    proptest! {
        #[test]
        fn rotation_invariance(
            seed in any::<u64>(),
            cols in proptest::collection::vec(0u32..5, 4),
            stem in proptest::collection::vec(0u32..4, 0..3),
            period in proptest::collection::vec(0u32..4, 1..5),
            split in 0usize..5,
        ) {
            let aut = random_aut(seed, 4, &cols);
            let split = split % period.len();
            let base = lasso(&stem, &period);
            let mut new_stem = stem.clone();
            new_stem.extend_from_slice(&period[..split]);
            let mut rotated = period[split..].to_vec();
            rotated.extend_from_slice(&period[..split]);
            prop_assert_eq!(eval_lasso(&aut, &base), eval_lasso(&aut, &lasso(&new_stem, &rotated)));
        }

        #[test]
        fn unrolling_invariance(
            seed in any::<u64>(),
            cols in proptest::collection::vec(0u32..5, 3),
            stem in proptest::collection::vec(0u32..4, 0..3),
            period in proptest::collection::vec(0u32..4, 1..4),
        ) {
            let aut = random_aut(seed, 3, &cols);
            let doubled: Vec<u32> = period.iter().chain(&period).copied().collect();
            let a = eval_lasso(&aut, &lasso(&stem, &period));
            prop_assert_eq!(a, eval_lasso(&aut, &lasso(&stem, &doubled)));
            prop_assert_eq!(a, eval_lasso(&aut, &lasso(&stem, &period)));
        }
    }
}
