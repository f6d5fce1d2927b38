use std::collections::BTreeSet;

use crate::automaton::{Acceptance, DeterministicOmegaAutomaton, Edge};
use crate::boolean::BoolExpr;
use crate::ltl::PatternFormula;

fn t() -> BoolExpr {
    BoolExpr::Const(true)
}

fn not(b: &BoolExpr) -> BoolExpr {
    BoolExpr::not(b.clone())
}

fn and(a: BoolExpr, b: BoolExpr) -> BoolExpr {
    BoolExpr::and(a, b)
}

fn buchi(states: &[usize]) -> Acceptance {
    Acceptance::Buchi {
        accepting: states.iter().copied().collect(),
    }
}

/// Compiles a pattern into a deterministic total automaton over `num_aps`
/// propositions.
///
/// | pattern           | states                    | acceptance        |
/// |-------------------|---------------------------|-------------------|
/// | `b`               | init, ok, fail            | Büchi {ok}        |
/// | `G b`             | ok, fail                  | Büchi {ok}        |
/// | `GF b`            | last letter ¬b, last b    | Büchi {last b}    |
/// | `FG b`            | last letter ¬b, last b    | co-Büchi {last ¬b}|
/// | `G (t -> X r)`    | idle, pending, fail       | Büchi {idle, pending} |
/// | `G (t -> F r)`    | idle, waiting             | Büchi {idle}      |
pub fn compile_pattern(pattern: &PatternFormula, num_aps: usize) -> DeterministicOmegaAutomaton {
    let (edges, acceptance): (Vec<Vec<Edge>>, Acceptance) = match pattern {
        PatternFormula::StateInit(b) => (
            vec![
                vec![Edge::new(b.clone(), 1), Edge::new(not(b), 2)],
                vec![Edge::new(t(), 1)],
                vec![Edge::new(t(), 2)],
            ],
            buchi(&[1]),
        ),
        PatternFormula::Always(b) => (
            vec![
                vec![Edge::new(b.clone(), 0), Edge::new(not(b), 1)],
                vec![Edge::new(t(), 1)],
            ],
            buchi(&[0]),
        ),
        PatternFormula::Recurrence(b) | PatternFormula::Persistence(b) => {
            let tracker = vec![Edge::new(not(b), 0), Edge::new(b.clone(), 1)];
            let acceptance = if matches!(pattern, PatternFormula::Recurrence(_)) {
                buchi(&[1])
            } else {
                Acceptance::CoBuchi {
                    rejecting: BTreeSet::from([0]),
                }
            };
            (vec![tracker.clone(), tracker], acceptance)
        }
        PatternFormula::NextResponse(trigger, response) => (
            vec![
                vec![Edge::new(not(trigger), 0), Edge::new(trigger.clone(), 1)],
                vec![
                    Edge::new(and(response.clone(), not(trigger)), 0),
                    Edge::new(and(response.clone(), trigger.clone()), 1),
                    Edge::new(not(response), 2),
                ],
                vec![Edge::new(t(), 2)],
            ],
            buchi(&[0, 1]),
        ),
        PatternFormula::Response(trigger, response) => {
            let opens = and(trigger.clone(), not(response));
            (
                vec![
                    vec![Edge::new(not(&opens), 0), Edge::new(opens.clone(), 1)],
                    vec![Edge::new(response.clone(), 0), Edge::new(not(response), 1)],
                ],
                buchi(&[0]),
            )
        }
    };
    DeterministicOmegaAutomaton::new(num_aps, 0, edges, acceptance)
        .expect("pattern automata are deterministic and total by construction")
}
