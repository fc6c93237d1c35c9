use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use layermesh::formats::{mesh_to_json, mesh_to_text, solution_to_json, solution_to_text};
use layermesh::reference::{DEFAULT_TOL_ERROR, DEFAULT_TOL_RATE};
use layermesh::{
    compare_reference, load_reference, mesh_report, run_study, OutputFormat, StudyConfig,
};
use layermesh_core::fem::{energy_error, error_quadrature, galerkin_solve};
use layermesh_core::{paper_problem, MeshFamily, MeshParams};

#[derive(Parser)]
#[command(name = "layermesh", version, about = "Layer-adapted meshes and 1D FEM convergence studies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Bs,
    ExpS,
    Exp,
    BsStar,
    ExpSStar,
}

impl From<Family> for MeshFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::Bs => MeshFamily::Bs,
            Family::ExpS => MeshFamily::ExpS,
            Family::Exp => MeshFamily::Exp,
            Family::BsStar => MeshFamily::BsStar,
            Family::ExpSStar => MeshFamily::ExpSStar,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MeshFormat {
    Json,
    Txt,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Markdown,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(clap::Args)]
struct MeshArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1e-6)]
    epsilon: f64,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a mesh and write its nodes.
    Generate {
        #[command(flatten)]
        mesh: MeshArgs,
        #[arg(long, default_value_t = 2.0)]
        sigma: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MeshFormat::Json)]
        format: MeshFormat,
    },
    /// Solve the benchmark problem on one mesh and print the energy error.
    Solve {
        #[command(flatten)]
        mesh: MeshArgs,
        #[arg(long)]
        p: usize,
        /// Defaults to p + 1.
        #[arg(long)]
        sigma: Option<f64>,
        /// Only the benchmark problem "paper-1d" is available.
        #[arg(long, default_value = "paper-1d")]
        problem: String,
        #[arg(long)]
        dump_solution: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MeshFormat::Json)]
        dump_format: MeshFormat,
        /// Samples per cell for the text dump.
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Run the convergence study and print the table.
    Study {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<TableFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the study and compare it against reference data.
    Verify {
        #[arg(long)]
        reference: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL_ERROR)]
        tol_error: f64,
        #[arg(long, default_value_t = DEFAULT_TOL_RATE)]
        tol_rate: f64,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Print transition point, cell widths, alpha, max |psi'| and decay of a mesh.
    MeshReport {
        #[command(flatten)]
        mesh: MeshArgs,
        #[arg(long, default_value_t = 2.0)]
        sigma: f64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

fn emit(out: Option<&Path>, text: &str) -> layermesh::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load_config(path: Option<&Path>) -> layermesh::Result<StudyConfig> {
    match path {
        Some(p) => StudyConfig::from_json(&std::fs::read_to_string(p)?),
        None => Ok(StudyConfig::default()),
    }
}

fn params(mesh: &MeshArgs, sigma: f64) -> layermesh::Result<MeshParams> {
    Ok(MeshParams::new(mesh.epsilon, sigma, mesh.beta, mesh.n)?)
}

fn run(cli: Cli) -> layermesh::Result<ExitCode> {
    match cli.command {
        Command::Generate {
            mesh,
            sigma,
            out,
            format,
        } => {
            let m = MeshFamily::from(mesh.family).build(&params(&mesh, sigma)?)?;
            let text = match format {
                MeshFormat::Json => mesh_to_json(&m) + "\n",
                MeshFormat::Txt => mesh_to_text(&m),
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Solve {
            mesh,
            p,
            sigma,
            problem,
            dump_solution,
            dump_format,
            samples,
        } => {
            if problem != "paper-1d" {
                return Err(layermesh::Error::Config(format!(
                    "unknown problem {problem:?} (available: paper-1d)"
                )));
            }
            let family = MeshFamily::from(mesh.family);
            let m = family.build(&params(&mesh, sigma.unwrap_or(p as f64 + 1.0))?)?;
            let bvp = paper_problem(mesh.epsilon)?;
            let solved = galerkin_solve(&bvp, &m.nodes, p)?;
            let err = energy_error(&solved.solution, &bvp, mesh.epsilon, error_quadrature(p))?;
            println!("family           {family}");
            println!("p                {p}");
            println!("N                {}", mesh.n);
            println!("dofs             {}", solved.solution.coefficients.len());
            println!("energy error     {:e}", err.total());
            println!("eps |e'|^2       {:e}", err.gradient_part);
            println!("|e|^2            {:e}", err.l2_part);
            println!("solver residual  {:e}", solved.residual);
            if let Some(path) = dump_solution {
                let text = match dump_format {
                    MeshFormat::Json => solution_to_json(&m, &solved.solution) + "\n",
                    MeshFormat::Txt => solution_to_text(&solved.solution, samples),
                };
                std::fs::write(path, text)?;
            }
        }
        Command::Study {
            config,
            format,
            out,
        } => {
            let config = load_config(config.as_deref())?;
            let format = match format {
                Some(TableFormat::Markdown) => OutputFormat::Markdown,
                Some(TableFormat::Csv) => OutputFormat::Csv,
                Some(TableFormat::Json) => OutputFormat::Json,
                None => config.output_format,
            };
            let table = run_study(&config)?;
            let mut text = table.render(format);
            if !text.ends_with('\n') {
                text.push('\n');
            }
            emit(out.as_deref(), &text)?;
        }
        Command::Verify {
            reference,
            tol_error,
            tol_rate,
            config,
        } => {
            let reference = load_reference(&std::fs::read_to_string(reference)?)?;
            let table = run_study(&load_config(config.as_deref())?)?;
            let report = compare_reference(&table, &reference, tol_error, tol_rate);
            print!("{}", report.to_text());
            if !report.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::MeshReport {
            mesh,
            sigma,
            format,
        } => {
            let report = mesh_report(&params(&mesh, sigma)?, mesh.family.into())?;
            match format {
                ReportFormat::Text => println!("{report}"),
                ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
