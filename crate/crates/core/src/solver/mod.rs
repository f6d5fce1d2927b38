//! Parity game solvers.
//!
//! [`solve_zielonka`] is the production solver and produces positional
//! strategies. [`solve_progress_measures`] is an independent small progress
//! measure solver used to cross-check winning regions, and
//! [`certify_strategy`] checks a solution without trusting either.

mod certify;
mod progress;
mod zielonka;

pub use certify::{certify_strategy, CertificationFailure};
pub use progress::solve_progress_measures;
pub use zielonka::solve_zielonka;

use crate::ap::Letter;
use crate::game::{Player, SynthesisGame};

/// Winning regions and positional strategies.
///
/// `strategy[v]` is the letter chosen at `v` when `v` belongs to the player
/// who wins it, and `None` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub winner: Vec<Player>,
    pub strategy: Vec<Option<Letter>>,
}

impl Solution {
    pub fn winner(&self, v: usize) -> Player {
        self.winner[v]
    }

    pub fn choice(&self, v: usize) -> Option<Letter> {
        self.strategy[v]
    }

    pub fn region(&self, player: Player) -> impl Iterator<Item = usize> + '_ {
        self.winner
            .iter()
            .enumerate()
            .filter(move |&(_, &p)| p == player)
            .map(|(v, _)| v)
    }

    pub fn system_region(&self) -> Vec<bool> {
        self.winner.iter().map(|&p| p == Player::System).collect()
    }
}

/// Flattened adjacency with predecessor lists, one entry per edge.
pub(crate) struct Arena {
    pub owner: Vec<Player>,
    pub colour: Vec<u8>,
    succ_start: Vec<usize>,
    succ: Vec<(u32, u32)>,
    pred_start: Vec<usize>,
    pred: Vec<u32>,
}

impl Arena {
    pub fn new(game: &SynthesisGame) -> Self {
        let n = game.num_vertices();
        let mut succ_start = Vec::with_capacity(n + 1);
        let mut succ = Vec::new();
        let mut in_degree = vec![0usize; n];
        for v in 0..n {
            succ_start.push(succ.len());
            for (l, w) in game.successors(v) {
                succ.push((l.0, w as u32));
                in_degree[w] += 1;
            }
        }
        succ_start.push(succ.len());
        let mut pred_start = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for d in &in_degree {
            pred_start.push(acc);
            acc += d;
        }
        pred_start.push(acc);
        let mut fill = pred_start.clone();
        let mut pred = vec![0u32; acc];
        for v in 0..n {
            for &(_, w) in &succ[succ_start[v]..succ_start[v + 1]] {
                pred[fill[w as usize]] = v as u32;
                fill[w as usize] += 1;
            }
        }
        Arena {
            owner: (0..n).map(|v| game.owner(v)).collect(),
            colour: (0..n).map(|v| game.colour(v)).collect(),
            succ_start,
            succ,
            pred_start,
            pred,
        }
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    /// `(label, target)` pairs, labels ascending.
    pub fn succ(&self, v: usize) -> &[(u32, u32)] {
        &self.succ[self.succ_start[v]..self.succ_start[v + 1]]
    }

    pub fn pred(&self, v: usize) -> &[u32] {
        &self.pred[self.pred_start[v]..self.pred_start[v + 1]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ap::ApTable;

    /// One v0 vertex with the given colour looping through one v1 vertex.
    pub(super) fn self_loop(colour: u8) -> SynthesisGame {
        SynthesisGame::from_parts(
            ApTable::default(),
            ApTable::default(),
            vec![colour],
            vec![0],
        )
        .unwrap()
    }

    #[test]
    fn arena_edges_and_predecessors() {
        let g = self_loop(0);
        let a = Arena::new(&g);
        assert_eq!(a.len(), 2);
        assert_eq!(a.succ(0), &[(0, 1)]);
        assert_eq!(a.succ(1), &[(0, 0)]);
        assert_eq!(a.pred(0), &[1]);
        assert_eq!(a.pred(1), &[0]);
    }

    #[test]
    fn trivial_games() {
        for colour in 0..5u8 {
            let g = self_loop(colour);
            let z = solve_zielonka(&g);
            let expected = Player::of_colour(colour);
            assert!(z.winner.iter().all(|&p| p == expected));
            assert_eq!(solve_progress_measures(&g), z.system_region());
            assert_eq!(certify_strategy(&g, &z), Ok(()));
        }
    }
}
