use thiserror::Error;

use crate::cycles::ColouredGraph;
use crate::game::{Player, SynthesisGame};
use crate::solver::Solution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificationFailure {
    #[error("malformed solution at vertex {vertex}: {reason}")]
    Shape { vertex: usize, reason: String },
    #[error("{player:?} strategy admits a losing cycle through vertices {cycle:?}")]
    Cycle { player: Player, cycle: Vec<usize> },
}

/// Checks both strategies of a solution independently of the solver.
///
/// For each player, the strategy is fixed inside that player's region and
/// the opponent may move freely; the check fails if the opponent can leave
/// the region, or if the restricted graph contains a cycle whose maximum
/// colour favours the opponent.
pub fn certify_strategy(
    game: &SynthesisGame,
    solution: &Solution,
) -> Result<(), CertificationFailure> {
    let n = game.num_vertices();
    let shape = |vertex: usize, reason: &str| CertificationFailure::Shape {
        vertex,
        reason: reason.into(),
    };
    if solution.winner.len() != n || solution.strategy.len() != n {
        return Err(shape(0, "solution size differs from the game"));
    }
    for player in [Player::System, Player::Environment] {
        let mut succ = vec![Vec::new(); n];
        for v in 0..n {
            if solution.winner[v] != player {
                continue;
            }
            if game.owner(v) == player {
                let Some(l) = solution.strategy[v] else {
                    return Err(shape(v, "no strategy choice for a winning vertex"));
                };
                let Some((_, w)) = game.successors(v).find(|&(m, _)| m == l) else {
                    return Err(shape(v, "strategy letter out of range"));
                };
                if solution.winner[w] != player {
                    return Err(shape(v, "strategy leaves the winning region"));
                }
                succ[v].push((l.0, w));
            } else {
                if solution.strategy[v].is_some() {
                    return Err(shape(v, "strategy choice on a losing vertex"));
                }
                for (l, w) in game.successors(v) {
                    if solution.winner[w] != player {
                        return Err(shape(v, "opponent can leave the winning region"));
                    }
                    succ[v].push((l.0, w));
                }
            }
        }
        let graph = ColouredGraph {
            colour: (0..n).map(|v| game.colour(v)).collect(),
            succ,
        };
        let bad_parity = match player {
            Player::System => 1,
            Player::Environment => 0,
        };
        if let Some(cycle) = graph.cycle_with_max_parity(bad_parity) {
            return Err(CertificationFailure::Cycle {
                player,
                cycle: cycle.into_iter().map(|(v, _)| v).collect(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ap::{ApTable, Letter};
    use crate::solver::solve_zielonka;

    fn choice_game() -> SynthesisGame {
        // State 0 (colour 2): output 0 goes to odd sink 1, output 1 stays.
        let outputs = ApTable::new(["y"]).unwrap();
        SynthesisGame::from_parts(ApTable::default(), outputs, vec![2, 3], vec![1, 0, 1, 1])
            .unwrap()
    }

    #[test]
    fn zielonka_solution_certifies() {
        let g = choice_game();
        assert_eq!(certify_strategy(&g, &solve_zielonka(&g)), Ok(()));
    }

    #[test]
    fn redirected_choice_is_caught() {
        let g = choice_game();
        let mut s = solve_zielonka(&g);
        s.strategy[g.v1(0, Letter(0))] = Some(Letter(0));
        assert!(matches!(
            certify_strategy(&g, &s),
            Err(CertificationFailure::Shape { .. })
        ));
    }

    #[test]
    fn wrong_region_yields_cycle() {
        // Claim System wins the odd self-loop.
        let g = SynthesisGame::from_parts(ApTable::default(), ApTable::default(), vec![1], vec![0])
            .unwrap();
        let s = Solution {
            winner: vec![Player::System; 2],
            strategy: vec![None, Some(Letter(0))],
        };
        assert_eq!(
            certify_strategy(&g, &s),
            Err(CertificationFailure::Cycle {
                player: Player::System,
                cycle: vec![0, 1]
            })
        );
    }
}
