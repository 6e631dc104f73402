//! `gp`: Gauss phrase invariants, comparison, realization and census.
//!
//! Exit codes: 0 success, 1 rejected input or inequivalent pair, 2 usage,
//! 3 search gave up without a verdict.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use gauss_phrase::explorer::{
    decide_equivalence_with, fuzz_invariance, tabulate, FuzzCaps, Relation, SearchBounds,
    SearchVerdict,
};
use gauss_phrase::realize::{
    parse_s_target, parse_so_target, realize_linking_matrix, realize_s, realize_so,
    realize_so_with_linking,
};
use gauss_phrase::report::InvariantReport;
use gauss_phrase::z2::parse_matrix;
use gauss_phrase::{parse_phrase, Exec, GaussPhrase};

#[derive(Parser)]
#[command(
    name = "gp",
    version,
    about = "Gauss phrase invariants and homotopy exploration"
)]
struct Cli {
    /// Run on one thread (output is identical either way).
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a phrase is a Gauss phrase.
    Validate {
        #[arg(allow_hyphen_values = true)]
        phrase: String,
    },
    /// Print every invariant of a phrase.
    Inv {
        #[arg(allow_hyphen_values = true)]
        phrase: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two phrases are equivalent.
    Compare(Pair),
    /// Like compare, but print only the move trace or certificate.
    Search(Pair),
    /// Build a phrase with prescribed invariants.
    Realize(RealizeArgs),
    /// Group all small phrases by invariant values.
    Tabulate {
        #[arg(long)]
        letters: usize,
        #[arg(long)]
        components: usize,
    },
    /// Check invariance under random moves.
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 8)]
        max_letters: usize,
        #[arg(long, default_value_t = 4)]
        max_components: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    Open,
    Homotopy,
    Unordered,
}

impl From<RelationArg> for Relation {
    fn from(r: RelationArg) -> Self {
        match r {
            RelationArg::Open => Relation::OpenHomotopy,
            RelationArg::Homotopy => Relation::Homotopy,
            RelationArg::Unordered => Relation::Unordered,
        }
    }
}

#[derive(Args)]
struct Pair {
    #[arg(allow_hyphen_values = true)]
    p: String,
    #[arg(allow_hyphen_values = true)]
    q: String,
    #[arg(long, value_enum)]
    relation: RelationArg,
    /// Defaults to the larger alphabet plus two.
    #[arg(long)]
    max_letters: Option<usize>,
    #[arg(long, default_value_t = SearchBounds::DEFAULT_DEPTH)]
    max_depth: usize,
    #[arg(long, default_value_t = SearchBounds::DEFAULT_STATES)]
    max_states: usize,
}

#[derive(Args)]
#[group(required = true, multiple = true)]
struct RealizeArgs {
    /// Linking matrix file; alone, or together with --so-target.
    #[arg(long)]
    linking: Option<PathBuf>,
    #[arg(long, conflicts_with = "s_target")]
    so_target: Option<PathBuf>,
    #[arg(long, conflicts_with = "linking")]
    s_target: Option<PathBuf>,
}

/// What a command prints and the code it exits with.
struct Outcome {
    stdout: String,
    code: u8,
}

fn ok(stdout: String) -> Result<Outcome> {
    Ok(Outcome { stdout, code: 0 })
}

fn phrase(text: &str) -> Result<GaussPhrase> {
    parse_phrase(text).with_context(|| format!("invalid phrase {text:?}"))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn compare(pair: &Pair, exec: Exec, trace_only: bool) -> Result<Outcome> {
    let (p, q) = (phrase(&pair.p)?, phrase(&pair.q)?);
    let defaults = SearchBounds::for_pair(&p, &q);
    let bounds = SearchBounds {
        max_letters: pair.max_letters.unwrap_or(defaults.max_letters),
        max_depth: pair.max_depth,
        max_states: pair.max_states,
    };
    let relation = Relation::from(pair.relation);
    let mut out = String::new();
    let code = match decide_equivalence_with(&p, &q, relation, &bounds, exec) {
        SearchVerdict::Equivalent(trace) => {
            if !trace_only {
                out.push_str(&format!(
                    "equivalent under {relation} in {} moves\n",
                    trace.len()
                ));
            }
            for site in trace {
                out.push_str(&format!("{site}\n"));
            }
            0
        }
        SearchVerdict::NotEquivalentCertified(c) => {
            if !trace_only {
                out.push_str(&format!("not equivalent under {relation}\n"));
            }
            out.push_str(&format!("{c}\n"));
            1
        }
        SearchVerdict::Unknown(why) => {
            out.push_str(&format!("unknown: {why}\n"));
            3
        }
    };
    Ok(Outcome { stdout: out, code })
}

fn realize(args: &RealizeArgs) -> Result<Outcome> {
    let p = match (&args.linking, &args.so_target, &args.s_target) {
        (None, None, Some(s)) => realize_s(&parse_s_target(&read(s)?)?)?,
        (l, Some(so), None) => {
            let t = parse_so_target(&read(so)?)?;
            match l {
                Some(l) => realize_so_with_linking(&t, &parse_matrix(&read(l)?)?)?,
                None => realize_so(&t)?,
            }
        }
        (Some(l), None, None) => realize_linking_matrix(&parse_matrix(&read(l)?)?)?,
        _ => anyhow::bail!("choose one of --linking, --so-target [--linking], --s-target"),
    };
    ok(format!("{p}\n"))
}

fn run(cli: Cli) -> Result<Outcome> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    match cli.command {
        Command::Validate { phrase: text } => {
            let p = phrase(&text)?;
            ok(format!(
                "valid: {} components, {} letters\n",
                p.n(),
                p.alphabet_size()
            ))
        }
        Command::Inv { phrase: text, json } => {
            let r = InvariantReport::of(&phrase(&text)?);
            if json {
                ok(format!("{}\n", serde_json::to_string_pretty(&r)?))
            } else {
                ok(r.to_text())
            }
        }
        Command::Compare(pair) => compare(&pair, exec, false),
        Command::Search(pair) => compare(&pair, exec, true),
        Command::Realize(args) => realize(&args),
        Command::Tabulate {
            letters,
            components,
        } => {
            anyhow::ensure!(components >= 1, "--components must be at least 1");
            ok(tabulate(letters, components, exec).to_string())
        }
        Command::Fuzz {
            seed,
            trials,
            max_letters,
            max_components,
            json,
        } => {
            anyhow::ensure!(max_components >= 1, "--max-components must be at least 1");
            let caps = FuzzCaps {
                max_letters,
                max_components,
            };
            let r = fuzz_invariance(seed, trials, caps, exec);
            let text = if json {
                format!("{}\n", serde_json::to_string_pretty(&r)?)
            } else {
                let mut s = format!("seed {} trials {}\n", r.seed, r.trials);
                for (kind, count) in &r.moves {
                    s.push_str(&format!("moves {kind} {count}\n"));
                }
                s.push_str(&format!("violations {}\n", r.violations.len()));
                for v in &r.violations {
                    s.push_str(&format!(
                        "  trial {} {} {}: {} changed\n",
                        v.trial, v.phrase, v.site, v.invariant
                    ));
                }
                s.push_str(&format!("shift changes S_o {}\n", r.so_shift_changes));
                if let Some((p, site)) = &r.so_shift_witness {
                    s.push_str(&format!("  witness {p} {site}\n"));
                }
                s
            };
            Ok(Outcome {
                stdout: text,
                code: if r.violations.is_empty() { 0 } else { 1 },
            })
        }
    }
}

fn main() -> ExitCode {
    // no styling is ever emitted, so GP_COLOR needs no handling
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
