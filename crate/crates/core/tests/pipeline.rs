use std::path::PathBuf;

use grabin::hoa::{emit_hoa, parse_hoa};
use grabin::lasso::enumerate_lassos;
use grabin::mealy::{verify_mealy, MachineVerdict, MealyMachine};
use grabin::product::build_product;
use grabin::random::{random_spec, SpecShape};
use grabin::solver::solve_progress_measures;
use grabin::synthesis::{
    lasso_oracle, synthesize, synthesize_with, SynthesisOptions, SynthesisOutcome,
};
use grabin::{Lasso, Letter, NormalizedSpec, SpecProblem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn corpus() -> Vec<(String, NormalizedSpec, bool)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut out = Vec::new();
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_owned();
        let Some(stem) = name.strip_suffix(".json") else {
            continue;
        };
        if stem.ends_with(".expected") {
            continue;
        }
        let sidecar: Value = serde_json::from_str(
            &std::fs::read_to_string(dir.join(format!("{stem}.expected.json"))).unwrap(),
        )
        .unwrap();
        let spec = SpecProblem::load(&path).unwrap().normalize().unwrap();
        out.push((
            stem.to_owned(),
            spec,
            sidecar["realizable"].as_bool().unwrap(),
        ));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    assert!(out.len() >= 5);
    out
}

#[test]
fn corpus_verdicts_match_sidecars() {
    for (name, spec, expected) in corpus() {
        let run = synthesize_with(&spec, SynthesisOptions::default()).unwrap();
        assert_eq!(run.outcome.is_realizable(), expected, "{name}");
        let pm = solve_progress_measures(&run.game);
        assert_eq!(pm[run.game.initial()], expected, "{name}: solvers disagree");
        if let SynthesisOutcome::Realizable { machine, .. } = &run.outcome {
            assert_eq!(
                verify_mealy(machine, &run.product).unwrap(),
                MachineVerdict::Pass
            );
        }
    }
}

/// Every word a machine produces on a small input lasso satisfies the spec.
#[test]
fn machines_only_produce_satisfying_words() {
    for (name, spec, _) in corpus() {
        let Ok(SynthesisOutcome::Realizable { machine, .. }) = synthesize(&spec) else {
            continue;
        };
        for inputs in enumerate_lassos(spec.inputs().len(), 2, 3) {
            let word = machine.induced_lasso(spec.aps(), &inputs).unwrap();
            assert!(
                lasso_oracle(&spec, &word),
                "{name} on {}",
                word.display(spec.aps())
            );
        }
    }
}

#[test]
fn machines_on_random_specs_satisfy_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut realizable = 0;
    for _ in 0..150 {
        let spec = random_spec(&mut rng, SpecShape::default());
        let SynthesisOutcome::Realizable { machine, .. } = synthesize(&spec).unwrap() else {
            continue;
        };
        realizable += 1;
        for inputs in enumerate_lassos(spec.inputs().len(), 1, 2) {
            let word = machine.induced_lasso(spec.aps(), &inputs).unwrap();
            assert!(lasso_oracle(&spec, &word));
        }
    }
    assert!(realizable > 10);
}

#[test]
fn synthesis_is_deterministic() {
    for (name, spec, _) in corpus() {
        let a = synthesize(&spec).unwrap();
        let b = synthesize(&spec).unwrap();
        match (a, b) {
            (
                SynthesisOutcome::Realizable { machine: m1, .. },
                SynthesisOutcome::Realizable { machine: m2, .. },
            ) => {
                assert_eq!(m1.to_json(), m2.to_json(), "{name}")
            }
            (
                SynthesisOutcome::Unrealizable {
                    counterstrategy: c1,
                    ..
                },
                SynthesisOutcome::Unrealizable {
                    counterstrategy: c2,
                    ..
                },
            ) => assert_eq!(c1.to_json(), c2.to_json(), "{name}"),
            _ => panic!("{name}: verdict changed between runs"),
        }
    }
}

#[test]
fn never_grant_machine_is_caught() {
    let spec = SpecProblem::from_json(
        r#"{"inputs":["request"],"outputs":["grant"],"guarantees":[{"ltl":"G (request -> grant)"}]}"#,
        ".",
    )
    .unwrap()
    .normalize()
    .unwrap();
    let pa = build_product(&spec).unwrap();
    let never = MealyMachine::new(
        spec.inputs().clone(),
        spec.outputs().clone(),
        0,
        vec![(0, Letter(0)); 2],
    )
    .unwrap();
    let MachineVerdict::Violation(lasso) = verify_mealy(&never, &pa).unwrap() else {
        panic!("never granting violates the arbiter spec")
    };
    let word_has_request = lasso
        .stem()
        .iter()
        .chain(lasso.period())
        .any(|l| l.contains(0));
    assert!(word_has_request, "{}", lasso.display(pa.aps()));
    assert!(!lasso_oracle(&spec, &lasso));
    // The always-grant machine passes.
    let always = MealyMachine::new(
        spec.inputs().clone(),
        spec.outputs().clone(),
        0,
        vec![(0, Letter(1)); 2],
    )
    .unwrap();
    assert_eq!(verify_mealy(&always, &pa).unwrap(), MachineVerdict::Pass);
}

#[test]
fn counterstrategy_for_input_invariant_withholds_r() {
    let spec = SpecProblem::from_json(
        r#"{"inputs":["r"],"outputs":[],"guarantees":[{"ltl":"G r"}]}"#,
        ".",
    )
    .unwrap()
    .normalize()
    .unwrap();
    let SynthesisOutcome::Unrealizable {
        counterstrategy, ..
    } = synthesize(&spec).unwrap()
    else {
        panic!()
    };
    assert_eq!(counterstrategy.input_at(0), Some(Letter::EMPTY));
    // Replaying it produces a violating word.
    let word = Lasso::new(vec![], vec![Letter::EMPTY]).unwrap();
    assert!(!lasso_oracle(&spec, &word));
}

#[test]
fn round_trips_on_corpus() {
    for (name, spec, _) in corpus() {
        let pa = build_product(&spec).unwrap();
        let text = pa.to_hoa();
        let (aut, aps) = parse_hoa(&text).unwrap();
        assert_eq!(aut, pa.to_automaton(), "{name}");
        assert_eq!(emit_hoa(&aut, &aps).unwrap(), text, "{name}");
        for component in spec.components() {
            let text = emit_hoa(component, spec.aps()).unwrap();
            let (aut, aps) = parse_hoa(&text).unwrap();
            assert_eq!(aut.acceptance(), component.acceptance(), "{name}");
            for q in 0..aut.num_states() {
                assert_eq!(aut.row(q), component.row(q), "{name}");
            }
            assert_eq!(emit_hoa(&aut, &aps).unwrap(), text);
        }
        if let SynthesisOutcome::Realizable { machine, .. } = synthesize(&spec).unwrap() {
            let json = machine.to_json();
            let back = MealyMachine::from_json(&json).unwrap();
            assert_eq!(back, machine);
            assert_eq!(back.to_json(), json);
        }
    }
}
