use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use fusionkit::{
    all_passed, builtin_example, builtin_examples, builtin_names, parse_spec, run_spec, with_single_check, Options,
    SpecFile,
};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "fusionkit", version, about = "Fusion systems on finite p-groups: checks and realizations")]
struct Cli {
    /// Largest group order to enumerate; also caps the degree of star quotients.
    #[arg(long, global = true, default_value_t = Options::default().cap)]
    cap: usize,
    /// Include witness words and factorization steps in the report.
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check in a spec file.
    Run { file: PathBuf },
    /// Hom-set census of a fusion system.
    Closure { file: PathBuf, fusion: String },
    /// Saturation report of a fusion system.
    Saturated {
        file: PathBuf,
        fusion: String,
        /// Use the simplified axioms.
        #[arg(long)]
        simplified: bool,
    },
    /// Permutation realization of a rose's presentation.
    RealizeRose { file: PathBuf, rose: String },
    /// Finite permutation quotient of a star's amalgam.
    RealizeStar { file: PathBuf, star: String },
    /// The Alperin conditions for a star against a fusion system.
    Alperin { file: PathBuf, star: String, fusion: String },
    /// Factor the conjugation map of a rose word on a subgroup.
    Decompose {
        file: PathBuf,
        rose: String,
        subgroup: String,
        /// Letters: permutations of S, `t<i>` or `t<i>^-1`.
        #[arg(allow_hyphen_values = true)]
        word: Vec<String>,
    },
    /// A permutation of |S| points conjugating the Cayley image of a morphism.
    CayleyRealize { file: PathBuf, group: String, morphism: String },
    /// The built-in configurations.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    /// List the built-in configurations.
    List,
    /// Print the spec text of one configuration.
    Show { name: String },
    /// Run one configuration, or `all`.
    Run { name: String },
}

fn read_spec(path: &Path) -> anyhow::Result<SpecFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_spec(&text).with_context(|| path.display().to_string())
}

fn single(path: &Path, kind: &str, args: Vec<String>) -> anyhow::Result<SpecFile> {
    Ok(with_single_check(&read_spec(path)?, kind, args))
}

fn print(report: &Value) {
    println!("{}", serde_json::to_string_pretty(report).expect("reports serialize"));
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let options = Options { cap: cli.cap, trace: cli.trace };
    let spec = match cli.command {
        Command::Run { file } => read_spec(&file)?,
        Command::Closure { file, fusion } => single(&file, "closure", vec![fusion])?,
        Command::Saturated { file, fusion, simplified } => {
            let kind = if simplified { "saturated-simplified" } else { "saturated" };
            single(&file, kind, vec![fusion])?
        }
        Command::RealizeRose { file, rose } => single(&file, "realize-rose", vec![rose])?,
        Command::RealizeStar { file, star } => single(&file, "realize-star", vec![star])?,
        Command::Alperin { file, star, fusion } => single(&file, "alperin", vec![star, fusion])?,
        Command::Decompose { file, rose, subgroup, word } => {
            single(&file, "decompose", [rose, subgroup].into_iter().chain(word).collect())?
        }
        Command::CayleyRealize { file, group, morphism } => single(&file, "cayley-realize", vec![group, morphism])?,
        Command::Examples { action: ExamplesAction::List } => {
            for (name, summary) in builtin_names() {
                println!("{name}  {summary}");
            }
            return Ok(true);
        }
        Command::Examples { action: ExamplesAction::Show { name } } => {
            let Some(example) = builtin_example(&name) else { bail!("no built-in example `{name}`") };
            print!("{}", example.text);
            return Ok(true);
        }
        Command::Examples { action: ExamplesAction::Run { name } } => {
            let selected = if name == "all" {
                builtin_examples()
            } else {
                vec![builtin_example(&name).with_context(|| format!("no built-in example `{name}`"))?]
            };
            let mut reports = Map::new();
            let mut ok = true;
            for example in selected {
                let spec = parse_spec(&example.text).with_context(|| example.name)?;
                let report = run_spec(&spec, &options).with_context(|| example.name)?;
                ok &= all_passed(&report);
                reports.insert(example.name.to_string(), report);
            }
            print(&json!({ "examples": reports, "passed": ok }));
            return Ok(ok);
        }
    };
    let report = run_spec(&spec, &options)?;
    print(&report);
    Ok(all_passed(&report))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
