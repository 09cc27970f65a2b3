//! `movcone`: exact cones of curves for bundled and user-supplied datasets.
//!
//! # Exit codes
//!
//! - 0: success, or every verification passed
//! - 1: a check failed, or a dataset could not be loaded or rendered
//! - 2: unknown dataset
//! - 64: usage error

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use movcone_core::render::{section_csv, section_svg, section_vertices, SectionCone};
use movcone_core::verify::{run_verification, VerificationReport};
use movcone_core::{Cone, DatasetError, LinkedContraction, Registry, VarietyData};
use serde_json::json;

const EXIT_FAILURE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "movcone", version, about = "Mori, effective and moving cones of Fano threefolds")]
struct Cli {
    /// Extra directory of dataset files (*.json), searched after the bundled ones
    #[arg(long, global = true, env = "MOVCONE_DATA", value_name = "DIR")]
    data: Option<PathBuf>,
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List available datasets
    List,
    /// Print a dataset
    Show { name: String },
    /// Extremal rays of the Mori cone NE
    Ne { name: String },
    /// Extremal rays of the effective cone (divisor coordinates)
    Eff { name: String },
    /// Extremal rays of the dual of the effective cone
    Sme { name: String },
    /// Extremal rays of the moving cone
    Mov { name: String },
    /// Run the verification suite
    Verify(VerifyArgs),
    /// Numerical pullback of the target's NE rays along a contraction
    Pullback {
        name: String,
        /// Index into the dataset's ne_rays
        #[arg(long)]
        ray_index: usize,
    },
    /// Cross-section of a cone of a Picard-rank-3 dataset
    Section {
        name: String,
        #[arg(long, value_enum)]
        cone: ConeArg,
        #[arg(long, value_enum)]
        format: FormatArg,
        /// Output file; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(required_unless_present = "all", conflicts_with = "all")]
    name: Option<String>,
    /// Verify every available dataset
    #[arg(long)]
    all: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ConeArg {
    Ne,
    Mov,
    Sme,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Csv,
    Svg,
}

impl From<ConeArg> for SectionCone {
    fn from(c: ConeArg) -> Self {
        match c {
            ConeArg::Ne => SectionCone::Ne,
            ConeArg::Mov => SectionCone::Mov,
            ConeArg::Sme => SectionCone::Sme,
        }
    }
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<DatasetError> for Failure {
    fn from(e: DatasetError) -> Self {
        let code = if matches!(e, DatasetError::UnknownDataset(_)) { EXIT_UNKNOWN } else { EXIT_FAILURE };
        Failure::new(code, e.to_string())
    }
}

fn lookup<'r>(registry: &'r Registry, name: &str) -> Result<&'r VarietyData, Failure> {
    registry.get(name).map_err(|e| match e {
        e @ DatasetError::UnknownDataset(_) => Failure::from(e),
        e => Failure::new(EXIT_FAILURE, format!("dataset `{name}`: {e}")),
    })
}

fn print_cone(json: bool, dataset: &str, which: &str, cone: &Cone) {
    let rays = cone.generators();
    let lineality = cone.lineality_basis();
    if json {
        let doc = json!({
            "dataset": dataset,
            "cone": which,
            "rays": rays.iter().map(|r| output::json_vec(r)).collect::<Vec<_>>(),
            "lineality": lineality.iter().map(|r| output::json_vec(r)).collect::<Vec<_>>(),
        });
        println!("{doc}");
    } else {
        for r in rays {
            println!("{}", movcone_core::variety::format_coords(r));
        }
        for l in lineality {
            println!("line {}", movcone_core::variety::format_coords(l));
        }
    }
}

fn verify_all(registry: &Registry, names: &[String]) -> Result<Vec<VerificationReport>, Failure> {
    let loaded: Vec<&VarietyData> = names.iter().map(|n| lookup(registry, n)).collect::<Result<_, _>>()?;
    let reports = std::thread::scope(|s| {
        let handles: Vec<_> = loaded.iter().map(|v| s.spawn(move || run_verification(v, registry))).collect();
        handles.into_iter().map(|h| h.join().expect("verification panicked")).collect()
    });
    Ok(reports)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut registry = Registry::bundled();
    if let Some(dir) = &cli.data {
        registry.add_directory(dir)?;
    }
    let json = cli.json;
    match cli.command {
        Command::List => {
            let names: Vec<&str> = registry.names().collect();
            if json {
                println!("{}", json!({ "datasets": names }));
            } else {
                for n in names {
                    println!("{n}");
                }
            }
        }
        Command::Show { name } => {
            let v = lookup(&registry, &name)?;
            if json {
                print!("{}", movcone_core::dataset::to_json(v));
            } else {
                print!("{}", output::describe(v));
            }
        }
        Command::Ne { name } => {
            let v = lookup(&registry, &name)?;
            print_cone(json, &name, "ne", &v.mori_cone());
        }
        Command::Eff { name } => {
            let v = lookup(&registry, &name)?;
            let cone = v.eff_cone().map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
            print_cone(json, &name, "eff", &cone);
        }
        Command::Sme { name } => {
            let v = lookup(&registry, &name)?;
            let cone = v.sme_cone().map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
            print_cone(json, &name, "sme", &cone);
        }
        Command::Mov { name } => {
            let v = lookup(&registry, &name)?;
            print_cone(json, &name, "mov", &v.moving_cone());
        }
        Command::Verify(args) => {
            let names: Vec<String> = match args.name {
                Some(n) => vec![n],
                None => registry.names().map(str::to_string).collect(),
            };
            let reports = verify_all(&registry, &names)?;
            let passed = reports.iter().all(|r| r.passed);
            if json {
                println!("{}", json!({ "passed": passed, "reports": reports }));
            } else {
                for r in &reports {
                    print!("{}", output::report(r));
                }
            }
            if !passed {
                return Err(Failure::new(EXIT_FAILURE, "verification failed"));
            }
        }
        Command::Pullback { name, ray_index } => pullback(&registry, json, &name, ray_index)?,
        Command::Section { name, cone, format, out } => {
            let v = lookup(&registry, &name)?;
            let which = SectionCone::from(cone);
            let render_err = |e: movcone_core::render::RenderError| Failure::new(EXIT_FAILURE, e.to_string());
            let content = match format {
                FormatArg::Csv => section_csv(v, which),
                FormatArg::Svg => section_svg(v, which),
            }
            .map_err(render_err)?;
            if let Some(path) = &out {
                std::fs::write(path, &content)
                    .map_err(|e| Failure::new(EXIT_FAILURE, format!("cannot write {}: {e}", path.display())))?;
            }
            if json {
                let vertices = section_vertices(v, which).map_err(render_err)?;
                let mut doc = json!({
                    "dataset": name,
                    "cone": format!("{cone:?}").to_lowercase(),
                    "vertices": vertices.iter().map(|p| output::json_vec(p)).collect::<Vec<_>>(),
                });
                match &out {
                    Some(path) => doc["out"] = json!(path.display().to_string()),
                    None => doc["content"] = json!(content),
                }
                println!("{doc}");
            } else if out.is_none() {
                print!("{content}");
            }
        }
    }
    Ok(())
}

fn pullback(registry: &Registry, json: bool, name: &str, ray_index: usize) -> Result<(), Failure> {
    let v = lookup(registry, name)?;
    let ray = v.ne_rays().get(ray_index).ok_or_else(|| {
        Failure::new(EXIT_FAILURE, format!("ray index {ray_index} out of range; `{name}` has {} rays", v.ne_rays().len()))
    })?;
    let link = ray
        .contraction
        .target
        .as_ref()
        .ok_or_else(|| Failure::new(EXIT_FAILURE, format!("ray {ray_index} of `{name}` records no contraction target")))?;
    let target = lookup(registry, &link.name)?;
    let phi = LinkedContraction::new(v, ray_index, target).map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
    let mut rows = Vec::new();
    for r in target.ne_rays() {
        let pulled = phi.numerical_pullback(&r.class).map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
        rows.push((r.class.coords.clone(), pulled.coords));
    }
    if json {
        let doc = json!({
            "dataset": name,
            "ray_index": ray_index,
            "target": link.name,
            "pullbacks": rows
                .iter()
                .map(|(c, p)| json!({ "target_ray": output::json_vec(c), "pullback": output::json_vec(p) }))
                .collect::<Vec<_>>(),
        });
        println!("{doc}");
    } else {
        for (c, p) in &rows {
            let fmt = movcone_core::variety::format_coords;
            println!("{} -> {}", fmt(c), fmt(p));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("movcone: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
