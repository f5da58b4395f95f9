use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use quadfem::experiments::{
    emit_plot, infsup_csv, run_complex_check, run_convergence, run_infsup, to_csv, ExperimentConfig,
    GridConfig, GridKind, Problem,
};
use quadfem::mesh::{read_mesh, write_mesh, MixedPattern};
use quadfem::{Error, Result};

#[derive(Parser)]
#[command(name = "fem", about = "Nonconforming Stokes, Poisson and biharmonic experiments on quadrilateral and mixed grids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GridArgs {
    /// quad, perturbed-quad or mixed
    #[arg(long, default_value = "quad")]
    grid: GridKind,
    /// Split pattern for mixed grids: checkerboard, diagonal-split-half, all, none
    #[arg(long, default_value = "checkerboard")]
    pattern: MixedPattern,
    /// Vertex perturbation as a fraction of h (perturbed-quad defaults to 0.2)
    #[arg(long)]
    perturb: Option<f64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl GridArgs {
    fn config(&self) -> GridConfig {
        match self.grid {
            GridKind::Quad => GridConfig::quad(),
            GridKind::PerturbedQuad => GridConfig::perturbed(self.perturb.unwrap_or(0.2), self.seed),
            GridKind::Mixed => GridConfig::mixed(self.pattern, self.perturb.unwrap_or(0.0), self.seed),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Refinement study against a manufactured solution
    Convergence {
        /// poisson, stokes or biharmonic
        #[arg(long)]
        problem: Problem,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_delimiter = ',', default_value = "4,8,16,32")]
        levels: Vec<usize>,
        /// Write the table here instead of stdout
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check exactness and commutativity of the discrete Stokes complex
    ComplexCheck {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Print the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Tabulate the discrete inf-sup constant
    Infsup {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_delimiter = ',', default_value = "4,8,16")]
        levels: Vec<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Generate or inspect mesh files
    Mesh {
        #[command(subcommand)]
        action: MeshAction,
    },
}

#[derive(Subcommand)]
enum MeshAction {
    /// Write a generated mesh
    Gen {
        file: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Print counts and quality of a mesh file
    Info { file: PathBuf },
}

fn write_or_print(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Convergence { problem, grid, levels, csv, svg } => {
            let config = ExperimentConfig { problem, grid: grid.config(), levels };
            let rows = run_convergence(&config)?;
            write_or_print(csv.as_ref(), &to_csv(problem, &rows))?;
            if let Some(path) = svg {
                std::fs::write(path, emit_plot(&rows)?)?;
            }
            Ok(true)
        }
        Command::ComplexCheck { grid, n, json } => {
            let mesh = grid.config().mesh(n)?;
            let report = run_complex_check(&mesh)?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if let Some(c) = report.first_failure() {
                eprintln!("complex check failed: {}: {}", c.name, c.detail);
            }
            Ok(report.passed())
        }
        Command::Infsup { grid, levels, csv } => {
            let rows = run_infsup(&grid.config(), &levels)?;
            write_or_print(csv.as_ref(), &infsup_csv(&rows))?;
            let min = rows.iter().map(|r| r.gamma).fold(f64::INFINITY, f64::min);
            let min_ratio = rows.iter().filter_map(|r| r.ratio).fold(f64::INFINITY, f64::min);
            eprintln!("min gamma = {min:.6}");
            if min_ratio.is_finite() {
                eprintln!("min consecutive ratio = {min_ratio:.6}");
            }
            Ok(true)
        }
        Command::Mesh { action } => match action {
            MeshAction::Gen { file, grid, n } => {
                write_mesh(&grid.config().mesh(n)?, file)?;
                Ok(true)
            }
            MeshAction::Info { file } => {
                let mesh = read_mesh(file)?;
                let c = mesh.counts();
                println!("cells {} (quads {}, triangles {})", c.cells, c.quads, c.triangles);
                println!("vertices {} (interior {}, boundary {})", c.vertices, c.interior_vertices, c.boundary_vertices);
                println!("edges {} (interior {}, boundary {})", c.edges, c.interior_edges, c.boundary_edges);
                println!("euler F + X = E + 1: {}", c.euler_holds());
                println!("h_max {:.6e}", mesh.h_max());
                if let Some(r) = mesh.max_shape_regularity() {
                    println!("max shape regularity {r:.6}");
                }
                if let Some(d) = mesh.max_distortion() {
                    println!("max |alpha| + |beta| {d:.6}");
                }
                Ok(true)
            }
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Config(_)) {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
