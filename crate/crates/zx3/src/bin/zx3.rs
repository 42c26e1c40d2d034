//! Command-line interface to the qutrit ZX engine.
//!
//! Exit codes: 0 on success (and for Equal verdicts), 1 for Unequal, 2 for
//! any error.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use zx3::arith::ScalarVerdict;
use zx3::diagram::Diagram;
use zx3::pipeline::{self, EqVerdict};
use zx3::{clifford1, rules, semantics, tableau};

#[derive(Parser)]
#[command(name = "zx3", about = "Exact qutrit stabilizer ZX-calculus engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Interpret a diagram as an exact matrix over the Eisenstein integers.
    Interpret { file: PathBuf },
    /// Normalize a diagram to reduced GS-LC form.
    Normalize {
        file: PathBuf,
        /// Cross-check the result against the exact interpreter.
        #[arg(long)]
        check: bool,
        /// Print the normal form as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Decide equality of two diagrams up to a nonzero scalar.
    Eq {
        file1: PathBuf,
        file2: PathBuf,
        /// Cross-check the verdict against the exact interpreter.
        #[arg(long)]
        check: bool,
    },
    /// Verify the soundness of the built-in rewrite rules.
    Soundness {
        /// Check a single rule by name.
        #[arg(long)]
        rule: Option<String>,
    },
    /// Inspect the single-qutrit Clifford group.
    Clifford1 {
        /// Print all 216 normal forms with matrices.
        #[arg(long)]
        enumerate: bool,
        /// Run the enumeration and group-law checks.
        #[arg(long)]
        check: bool,
    },
    /// Simulate a state diagram into a canonical stabilizer tableau.
    Tableau { file: PathBuf },
    /// Generate a seeded random stabilizer diagram (text format on stdout).
    Random {
        #[arg(long)]
        wires: usize,
        #[arg(long)]
        gates: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Run randomized agreement checks between the normalizer and the
    /// exact interpreter.
    Selftest {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load_diagram(path: &PathBuf) -> Result<Diagram, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let diagram = if text.trim_start().starts_with('{') {
        let v: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        Diagram::from_json(&v).map_err(|e| e.to_string())?
    } else {
        Diagram::parse(&text).map_err(|e| e.to_string())?
    };
    diagram
        .validate()
        .map_err(|errs| format!("invalid diagram: {errs:?}"))?;
    Ok(diagram)
}

fn matrix_json(m: &zx3::arith::ExactMatrix) -> serde_json::Value {
    let entries: Vec<[i64; 2]> = m.entries().iter().map(|e| [e.u, e.v]).collect();
    serde_json::json!({ "rows": m.rows, "cols": m.cols, "entries": entries })
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Interpret { file } => {
            let d = load_diagram(&file)?;
            let m = semantics::interpret(&d).map_err(|e| e.to_string())?;
            println!("{}", matrix_json(&m));
            Ok(ExitCode::SUCCESS)
        }
        Command::Normalize { file, check, json } => {
            let d = load_diagram(&file)?;
            let nf = if check {
                pipeline::normalize_checked(&d).map_err(|e| e.to_string())?
            } else {
                pipeline::normalize(&d).map_err(|e| e.to_string())?
            };
            if json {
                println!("{}", nf.to_json());
            } else {
                match &nf {
                    pipeline::NormalForm::Zero { inputs, outputs } => {
                        println!("ZERO ({inputs} -> {outputs})");
                    }
                    pipeline::NormalForm::State(r) => {
                        println!("state on {} qutrits", r.n());
                        println!("{}", r.to_json());
                    }
                    pipeline::NormalForm::Map {
                        inputs,
                        outputs,
                        state,
                    } => {
                        println!("map {inputs} -> {outputs}, bent state:");
                        println!("{}", state.to_json());
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eq {
            file1,
            file2,
            check,
        } => {
            let d1 = load_diagram(&file1)?;
            let d2 = load_diagram(&file2)?;
            let verdict = if check {
                pipeline::decide_equal_checked(&d1, &d2).map_err(|e| e.to_string())?
            } else {
                pipeline::decide_equal(&d1, &d2).map_err(|e| e.to_string())?
            };
            match verdict {
                EqVerdict::Equal => {
                    println!("Equal");
                    Ok(ExitCode::SUCCESS)
                }
                EqVerdict::BothZero => {
                    println!("Equal (both zero)");
                    Ok(ExitCode::SUCCESS)
                }
                EqVerdict::Unequal => {
                    println!("Unequal");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Soundness { rule } => {
            let all = rules::builtin_rules();
            let selected: Vec<_> = match &rule {
                Some(name) => {
                    let found: Vec<_> = all.iter().filter(|r| r.name == name).collect();
                    if found.is_empty() {
                        return Err(format!("unknown rule `{name}`"));
                    }
                    found
                }
                None => all.iter().collect(),
            };
            let mut failed = false;
            for r in selected {
                let report = rules::verify_rule(r);
                println!(
                    "{:4} {} ({} instances)",
                    r.name,
                    if report.all_sound { "sound" } else { "UNSOUND" },
                    report.instances_checked
                );
                for c in &report.counterexamples {
                    println!("     counterexample: {c}");
                    failed = true;
                }
            }
            if rule.is_none() {
                for eq in rules::derived_equalities() {
                    let ok = semantics::semantically_equal(&eq.lhs, &eq.rhs)
                        .map(|v| v == ScalarVerdict::EqualUpToScalar)
                        .unwrap_or(false);
                    println!("{:20} {}", eq.name, if ok { "holds" } else { "FAILS" });
                    failed |= !ok;
                }
            }
            Ok(if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Clifford1 { enumerate, check } => {
            let t = clifford1::table();
            if enumerate {
                for (nf, m) in clifford1::enumerate() {
                    println!("{nf}");
                    for i in 0..3 {
                        let row: Vec<String> = (0..3).map(|j| m[(i, j)].to_string()).collect();
                        println!("    [{}]", row.join(", "));
                    }
                }
            }
            if check || !enumerate {
                // the table build itself performs the closure and bijection
                // checks; re-state the headline facts
                println!("classes: {}", t.len());
                println!("normal-form bijection: ok");
                println!("generator word length bound: {}", t.max_word_len);
                let mut ok = true;
                for i in 0..t.len() {
                    let c = clifford1::CliffordClass(i as u16);
                    ok &= t.compose(c, t.inverse(c)) == t.identity;
                }
                println!("inverses: {}", if ok { "ok" } else { "BROKEN" });
                println!("|R| = {}", t.r_set().len());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tableau { file } => {
            let d = load_diagram(&file)?;
            let state = if d.arity().0 > 0 { d.bend() } else { d };
            match tableau::diagram_to_tableau(&state).map_err(|e| e.to_string())? {
                tableau::Simulated::Zero => println!("ZERO"),
                tableau::Simulated::State(t) => {
                    println!("{}", t.canonicalize().to_json());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Random { wires, gates, seed } => {
            if wires == 0 {
                return Err("need at least one wire".into());
            }
            let d = pipeline::random_stabilizer_diagram(wires, gates, seed);
            print!("{}", d.serialize());
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { trials, seed } => {
            let report = pipeline::selftest(trials, seed);
            println!(
                "trials: {}  equal: {}  unequal: {}  zero: {}",
                report.trials, report.equal_seen, report.unequal_seen, report.zero_seen
            );
            if report.passed() {
                println!("all verdicts agree with the exact interpreter");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("DISAGREEMENTS at seeds: {:?}", report.disagreements);
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
