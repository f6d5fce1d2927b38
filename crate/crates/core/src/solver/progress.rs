use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::game::{Player, SynthesisGame};
use crate::solver::Arena;

/// Small progress measures, adapted to max-parity with the System winning
/// on even colours.
///
/// A measure has one counter per odd colour `c`, bounded by the number of
/// vertices of colour `c`, compared with the highest colour most
/// significant. Returns the System's winning region: every vertex whose
/// measure stays below top.
pub fn solve_progress_measures(game: &SynthesisGame) -> Vec<bool> {
    let arena = Arena::new(game);
    let n = arena.len();
    let max_colour = arena.colour.iter().copied().max().unwrap_or(0) as usize;
    let k = max_colour.div_ceil(2).max(1);
    let mut bound = vec![0u32; k];
    for &c in &arena.colour {
        if c % 2 == 1 {
            bound[(c as usize - 1) / 2] += 1;
        }
    }
    let mut pm = Measures {
        k,
        bound,
        values: vec![0; n * k],
        top: vec![false; n],
    };

    let mut queued = vec![true; n];
    let mut queue: VecDeque<usize> = (0..n).collect();
    let mut scratch = vec![0u32; k];
    let mut best = vec![0u32; k];
    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        if pm.top[v] {
            continue;
        }
        let minimise = arena.owner[v] == Player::System;
        let c = arena.colour[v];
        let mut best_top = minimise;
        let mut first = true;
        for &(_, w) in arena.succ(v) {
            let t = pm.prog(w as usize, c, &mut scratch);
            let better = if first {
                true
            } else if minimise {
                Measures::cmp(t, &scratch, best_top, &best) == Ordering::Less
            } else {
                Measures::cmp(t, &scratch, best_top, &best) == Ordering::Greater
            };
            if better {
                best_top = t;
                best.copy_from_slice(&scratch);
            }
            first = false;
        }
        if Measures::cmp(best_top, &best, false, pm.get(v)) == Ordering::Greater {
            if best_top {
                pm.top[v] = true;
            } else {
                pm.values[v * k..(v + 1) * k].copy_from_slice(&best);
            }
            for &u in arena.pred(v) {
                let u = u as usize;
                if !queued[u] && !pm.top[u] {
                    queued[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    pm.top.iter().map(|&t| !t).collect()
}

struct Measures {
    k: usize,
    bound: Vec<u32>,
    values: Vec<u32>,
    top: Vec<bool>,
}

impl Measures {
    fn get(&self, v: usize) -> &[u32] {
        &self.values[v * self.k..(v + 1) * self.k]
    }

    /// Least measure `m` that agrees with `ρ(w)` on counters for colours
    /// `>= c` (strictly exceeds it there when `c` is odd). Writes `m` into
    /// `out` and returns whether it is top.
    fn prog(&self, w: usize, c: u8, out: &mut [u32]) -> bool {
        if self.top[w] {
            return true;
        }
        out.copy_from_slice(self.get(w));
        let c = c as usize;
        // Counter i belongs to colour 2i+1; drop those below c.
        for (i, slot) in out.iter_mut().enumerate() {
            if 2 * i + 1 < c {
                *slot = 0;
            }
        }
        if c.is_multiple_of(2) {
            return false;
        }
        for i in (c - 1) / 2..self.k {
            if out[i] < self.bound[i] {
                out[i] += 1;
                return false;
            }
            out[i] = 0;
        }
        true
    }

    fn cmp(a_top: bool, a: &[u32], b_top: bool, b: &[u32]) -> Ordering {
        match (a_top, b_top) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => a.iter().rev().cmp(b.iter().rev()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ap::ApTable;

    #[test]
    fn odd_sink_reachable_by_environment() {
        let inputs = ApTable::new(["r"]).unwrap();
        let game =
            SynthesisGame::from_parts(inputs, ApTable::default(), vec![2, 1], vec![1, 0, 1, 1])
                .unwrap();
        assert!(solve_progress_measures(&game).iter().all(|&s| !s));
    }

    #[test]
    fn higher_even_colour_dominates() {
        // 0 (colour 3) <-> 1 (colour 4): max inf colour 4, System wins.
        let game = SynthesisGame::from_parts(
            ApTable::default(),
            ApTable::default(),
            vec![3, 4],
            vec![1, 0],
        )
        .unwrap();
        assert!(solve_progress_measures(&game).iter().all(|&s| s));
    }
}
