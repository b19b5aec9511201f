use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gradaut::cli::{
    cmd_aut_mds, cmd_aut_ring, cmd_dim_bound, cmd_git_cone, cmd_symmetries, cmd_veronese, error_document,
    parse_chamber, ProblemFile, ResultDocument,
};
use gradaut::{Error, Parallelism};

/// Graded automorphism groups and automorphism groups of Mori dream spaces.
#[derive(Parser)]
#[command(name = "gradaut", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// problem file
    file: PathBuf,
    /// maximum number of S-pairs per Gröbner basis run
    #[arg(long)]
    budget_pairs: Option<usize>,
    /// maximum S-pair degree
    #[arg(long)]
    budget_degree: Option<u32>,
    /// maximum number of candidate faces for the GIT chamber
    #[arg(long)]
    budget_faces: Option<usize>,
    /// print only the machine-readable section
    #[arg(long)]
    machine_output: bool,
    /// record the wall-clock time in the result
    #[arg(long)]
    timing: bool,
    /// run on one thread
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SymFormat {
    Zero,
    One,
}

#[derive(Subcommand)]
enum Command {
    /// graded automorphism group of the ring
    AutRing(Common),
    /// automorphism group of the variety with the given ample class
    AutMds {
        #[command(flatten)]
        common: Common,
        /// file with generators of a chamber to use instead of computing it
        #[arg(long)]
        chamber_file: Option<PathBuf>,
    },
    /// variable permutations preserving the ideal
    Symmetries {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "one")]
        sym_format: SymFormat,
    },
    /// GIT chamber of the ample class
    GitCone {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        chamber_file: Option<PathBuf>,
    },
    /// Veronese subalgebra; without --subgroup, the degree-zero part
    Veronese {
        #[command(flatten)]
        common: Common,
        /// generator of the subgroup, e.g. "2 0 1"; repeatable
        #[arg(long, allow_hyphen_values = true)]
        subgroup: Vec<String>,
    },
    /// upper bounds for the dimension of the automorphism groups
    DimBound(Common),
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load(c: &Common) -> Result<ProblemFile, Error> {
    let mut p = ProblemFile::parse(&read(&c.file)?)?;
    if let Some(v) = c.budget_pairs {
        p.budget.max_pairs = v;
    }
    if let Some(v) = c.budget_degree {
        p.budget.max_degree = v;
    }
    if let Some(v) = c.budget_faces {
        p.budget.max_faces = v;
    }
    Ok(p)
}

fn chamber(path: &Option<PathBuf>) -> Result<Option<Vec<Vec<i64>>>, Error> {
    path.as_ref().map(|f| parse_chamber(&read(f)?)).transpose()
}

fn subgroup(gens: &[String]) -> Result<Vec<Vec<i64>>, Error> {
    gens.iter()
        .map(|g| {
            g.split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad subgroup entry `{t}`"))))
                .collect()
        })
        .collect()
}

fn run(cli: &Cli) -> Result<(ResultDocument, &Common), Error> {
    let mode = |c: &Common| if c.sequential { Parallelism::Sequential } else { Parallelism::Parallel };
    match &cli.command {
        Command::AutRing(c) => Ok((cmd_aut_ring(&load(c)?, mode(c))?, c)),
        Command::AutMds { common: c, chamber_file } => {
            let ch = chamber(chamber_file)?;
            Ok((cmd_aut_mds(&load(c)?, ch.as_deref(), mode(c))?, c))
        }
        Command::Symmetries { common: c, sym_format } => {
            let one = matches!(sym_format, SymFormat::One);
            Ok((cmd_symmetries(&load(c)?, one, mode(c))?, c))
        }
        Command::GitCone { common: c, chamber_file } => {
            let ch = chamber(chamber_file)?;
            Ok((cmd_git_cone(&load(c)?, ch.as_deref(), mode(c))?, c))
        }
        Command::Veronese { common: c, subgroup: s } => {
            let sub = subgroup(s)?;
            Ok((cmd_veronese(&load(c)?, &sub, mode(c))?, c))
        }
        Command::DimBound(c) => Ok((cmd_dim_bound(&load(c)?)?, c)),
    }
}

fn common(cli: &Cli) -> &Common {
    match &cli.command {
        Command::AutRing(c) | Command::DimBound(c) => c,
        Command::AutMds { common, .. }
        | Command::Symmetries { common, .. }
        | Command::GitCone { common, .. }
        | Command::Veronese { common, .. } => common,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok((mut doc, c)) => {
            if c.timing {
                doc.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            if c.machine_output {
                println!("{}", doc.machine());
            } else {
                print!("{}", doc.render());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if common(&cli).machine_output {
                println!("{}", error_document(&e));
            }
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
