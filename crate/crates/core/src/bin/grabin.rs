use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use grabin::lasso::Lasso;
use grabin::mealy::{verify_mealy, MachineVerdict, MealyMachine};
use grabin::product::{build_product_with_limit, NormalizedSpec, DEFAULT_STATE_LIMIT};
use grabin::spec::SpecProblem;
use grabin::synthesis::{
    differential_test_with_limit, synthesize_with, SynthesisOptions, SynthesisOutcome,
    DEFAULT_ORACLE_APS,
};
use grabin::ApTable;

/// Reactive synthesis for assumption/guarantee specifications.
///
/// Exit codes: 0 realizable / check passed, 1 unrealizable / check failed,
/// 2 usage, input or internal error.
#[derive(Parser)]
#[command(name = "grabin", version)]
struct Cli {
    /// Print results as a single JSON document on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    /// Refuse products whose raw state bound exceeds this.
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_LIMIT)]
    state_limit: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a Mealy machine, or a counterstrategy if unrealizable.
    Synth {
        spec: PathBuf,
        /// Write the machine as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the machine as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the environment's counterstrategy as JSON.
        #[arg(long)]
        counterstrategy: Option<PathBuf>,
        /// Write a debug dump of the parity game as JSON.
        #[arg(long)]
        game: Option<PathBuf>,
    },
    /// Decide realizability only.
    Check { spec: PathBuf },
    /// Emit the parity automaton of the specification as HOA.
    Product {
        spec: PathBuf,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Model-check a machine against the specification.
    Verify { spec: PathBuf, machine: PathBuf },
    /// Compare the parity automaton with the per-conjunct semantics on all
    /// small lassos.
    OracleTest {
        spec: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_stem: usize,
        #[arg(long, default_value_t = 3)]
        max_loop: usize,
        /// Largest alphabet to enumerate over.
        #[arg(long, default_value_t = DEFAULT_ORACLE_APS)]
        max_aps: usize,
    },
}

type Result<T> = std::result::Result<T, Box<dyn Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<NormalizedSpec> {
    Ok(SpecProblem::load(path)?.normalize()?)
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()).into())
}

fn emit(cli: &Cli, value: Value, human: impl FnOnce()) {
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("plain data serializes")
        );
    } else {
        human();
    }
}

fn lasso_json(lasso: &Lasso, aps: &ApTable) -> Value {
    let letters = |ls: &[grabin::Letter]| -> Vec<Vec<&str>> {
        ls.iter().map(|&l| aps.letter_names(l)).collect()
    };
    json!({"stem": letters(lasso.stem()), "loop": letters(lasso.period())})
}

fn print_machine(machine: &MealyMachine) {
    let names = |table: &ApTable, l| match table.letter_names(l) {
        v if v.is_empty() => "-".to_owned(),
        v => v.join(" "),
    };
    for s in 0..machine.num_states() {
        for x in machine.inputs().letters() {
            let (to, y) = machine.step(s, x);
            println!(
                "  {s} --[{} / {}]--> {to}",
                names(machine.inputs(), x),
                names(machine.outputs(), y)
            );
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let options = SynthesisOptions {
        state_limit: cli.state_limit,
    };
    match &cli.command {
        Command::Synth {
            spec,
            out,
            dot,
            counterstrategy,
            game,
        } => {
            let run = synthesize_with(&load(spec)?, options)?;
            if let Some(path) = game {
                let dump = serde_json::to_string_pretty(&run.game.to_debug_json())?;
                write(path, &(dump + "\n"))?;
            }
            let stats = run.outcome.stats().to_json();
            match &run.outcome {
                SynthesisOutcome::Realizable { machine, .. } => {
                    if let Some(path) = out {
                        write(path, &machine.to_json())?;
                    }
                    if let Some(path) = dot {
                        write(path, &machine.to_dot())?;
                    }
                    let machine_json: Value = serde_json::from_str(&machine.to_json())?;
                    emit(
                        cli,
                        json!({"realizable": true, "machine": machine_json, "stats": stats}),
                        || {
                            println!("realizable: {} state machine", machine.num_states());
                            if out.is_none() {
                                print_machine(machine);
                            }
                        },
                    );
                    Ok(0)
                }
                SynthesisOutcome::Unrealizable {
                    counterstrategy: cs,
                    ..
                } => {
                    if let Some(path) = counterstrategy {
                        write(path, &cs.to_json())?;
                    }
                    let cs_json: Value = serde_json::from_str(&cs.to_json())?;
                    emit(
                        cli,
                        json!({"realizable": false, "counterstrategy": cs_json, "stats": stats}),
                        || {
                            println!(
                                "unrealizable: environment wins with {} positional moves",
                                cs.moves.len()
                            )
                        },
                    );
                    Ok(1)
                }
            }
        }
        Command::Check { spec } => {
            let run = synthesize_with(&load(spec)?, options)?;
            let realizable = run.outcome.is_realizable();
            emit(
                cli,
                json!({"realizable": realizable, "stats": run.outcome.stats().to_json()}),
                || {
                    println!(
                        "{}",
                        if realizable {
                            "realizable"
                        } else {
                            "unrealizable"
                        }
                    )
                },
            );
            Ok(if realizable { 0 } else { 1 })
        }
        Command::Product { spec, out } => {
            let pa = build_product_with_limit(&load(spec)?, cli.state_limit)?;
            let hoa = pa.to_hoa();
            match out {
                Some(path) => {
                    write(path, &hoa)?;
                    emit(
                        cli,
                        json!({"states": pa.num_states(), "raw_bound": pa.raw_bound().to_string(), "colours_used": pa.colours_used()}),
                        || {
                            println!(
                                "{} states, colours {:?}",
                                pa.num_states(),
                                pa.colours_used()
                            )
                        },
                    );
                }
                None if cli.json => println!("{}", json!({"hoa": hoa})),
                None => print!("{hoa}"),
            }
            Ok(0)
        }
        Command::Verify { spec, machine } => {
            let pa = build_product_with_limit(&load(spec)?, cli.state_limit)?;
            let text = fs::read_to_string(machine)
                .map_err(|e| format!("cannot read {}: {e}", machine.display()))?;
            let machine = MealyMachine::from_json(&text)?;
            match verify_mealy(&machine, &pa)? {
                MachineVerdict::Pass => {
                    emit(cli, json!({"ok": true}), || println!("ok"));
                    Ok(0)
                }
                MachineVerdict::Violation(lasso) => {
                    emit(
                        cli,
                        json!({"ok": false, "violation": lasso_json(&lasso, pa.aps())}),
                        || println!("violation: {}", lasso.display(pa.aps())),
                    );
                    Ok(1)
                }
            }
        }
        Command::OracleTest {
            spec,
            max_stem,
            max_loop,
            max_aps,
        } => {
            let spec = load(spec)?;
            let report = differential_test_with_limit(&spec, *max_stem, *max_loop, *max_aps)?;
            let first = report
                .first_mismatch
                .as_ref()
                .map(|l| lasso_json(l, spec.aps()));
            emit(
                cli,
                json!({"checked": report.checked, "mismatches": report.mismatches, "first_mismatch": first}),
                || {
                    println!(
                        "checked {} lassos, {} mismatches",
                        report.checked, report.mismatches
                    );
                    if let Some(l) = &report.first_mismatch {
                        println!("first mismatch: {}", l.display(spec.aps()));
                    }
                },
            );
            Ok(if report.mismatches == 0 { 0 } else { 1 })
        }
    }
}
