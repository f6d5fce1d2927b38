use crate::ap::Letter;
use crate::game::{Player, SynthesisGame};
use crate::solver::{Arena, Solution};

const NONE: u32 = u32::MAX;

struct Solver<'a> {
    arena: &'a Arena,
    winner: Vec<Player>,
    strategy: Vec<u32>,
}

/// Zielonka's recursive algorithm.
///
/// The recursion only descends on the highest colour; the step that removes
/// an opponent attractor and re-solves the rest is a loop, so the depth is
/// bounded by the number of distinct colours.
///
/// Strategies: attractor vertices move to a vertex added strictly earlier,
/// choosing the smallest such letter; vertices of the top colour take the
/// smallest letter that stays in the current subgame.
pub fn solve_zielonka(game: &SynthesisGame) -> Solution {
    let arena = Arena::new(game);
    let n = arena.len();
    let mut solver = Solver {
        arena: &arena,
        winner: vec![Player::System; n],
        strategy: vec![NONE; n],
    };
    let alive = vec![true; n];
    solver.solve(alive);
    let strategy = solver
        .strategy
        .iter()
        .enumerate()
        .map(|(v, &l)| (l != NONE && arena.owner[v] == solver.winner[v]).then_some(Letter(l)))
        .collect();
    Solution {
        winner: solver.winner,
        strategy,
    }
}

impl Solver<'_> {
    fn solve(&mut self, mut alive: Vec<bool>) {
        loop {
            let Some(d) = (0..alive.len())
                .filter(|&v| alive[v])
                .map(|v| self.arena.colour[v])
                .max()
            else {
                return;
            };
            let p = Player::of_colour(d);
            let top: Vec<usize> = (0..alive.len())
                .filter(|&v| alive[v] && self.arena.colour[v] == d)
                .collect();
            let attr = self.attractor(p, &top, &alive);
            let sub: Vec<bool> = (0..alive.len()).map(|v| alive[v] && !attr[v]).collect();
            self.solve(sub.clone());

            let opponent: Vec<usize> = (0..alive.len())
                .filter(|&v| sub[v] && self.winner[v] == p.opponent())
                .collect();
            if opponent.is_empty() {
                for v in 0..alive.len() {
                    if attr[v] {
                        self.winner[v] = p;
                    }
                }
                for &v in &top {
                    if self.arena.owner[v] == p {
                        self.strategy[v] = self
                            .arena
                            .succ(v)
                            .iter()
                            .find(|&&(_, w)| alive[w as usize])
                            .map(|&(l, _)| l)
                            .expect("subgames have no dead ends");
                    }
                }
                return;
            }
            let lost = self.attractor(p.opponent(), &opponent, &alive);
            for v in 0..alive.len() {
                if lost[v] {
                    self.winner[v] = p.opponent();
                    alive[v] = false;
                }
            }
        }
    }

    /// `player`'s attractor to `target` within `alive`, recording the
    /// attracting letter for `player`'s vertices outside `target`.
    fn attractor(&mut self, player: Player, target: &[usize], alive: &[bool]) -> Vec<bool> {
        let arena = self.arena;
        let n = alive.len();
        let mut rank = vec![u32::MAX; n];
        let mut remaining = vec![u32::MAX; n];
        for &v in target {
            rank[v] = 0;
        }
        let mut frontier = target.to_vec();
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for &v in &frontier {
                for &u in arena.pred(v) {
                    let u = u as usize;
                    if !alive[u] || rank[u] != u32::MAX {
                        continue;
                    }
                    if arena.owner[u] == player {
                        rank[u] = level;
                        next.push(u);
                    } else {
                        if remaining[u] == u32::MAX {
                            remaining[u] = arena
                                .succ(u)
                                .iter()
                                .filter(|&&(_, w)| alive[w as usize])
                                .count() as u32;
                        }
                        remaining[u] -= 1;
                        if remaining[u] == 0 {
                            rank[u] = level;
                            next.push(u);
                        }
                    }
                }
            }
            for &u in &next {
                if arena.owner[u] == player {
                    self.strategy[u] = arena
                        .succ(u)
                        .iter()
                        .find(|&&(_, w)| rank[w as usize] < level)
                        .map(|&(l, _)| l)
                        .expect("attracted along an edge");
                }
            }
            frontier = next;
        }
        rank.iter().map(|&r| r != u32::MAX).collect()
    }
}
