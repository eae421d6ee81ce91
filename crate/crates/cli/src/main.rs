//! `octavian`: batch verifications over the octavian integers, their Leech
//! lattices and reflection groups. Reports go to stdout as JSON (or text);
//! progress goes to stderr.

mod cache;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "octavian",
    version,
    about = "Exact verifications for octavian integers and octonion Leech lattices"
)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Config {
    /// Which zero of x² + x + 2 (index into the 576 sorted candidates).
    #[arg(long, global = true, default_value_t = 0)]
    pub lambda_index: usize,
    /// Unit for the translated lattice L_u Λ(λ̄, λ) (index into the 240 sorted units).
    #[arg(long, global = true)]
    pub unit_index: Option<usize>,
    /// Seed for randomized Schreier–Sims.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Largest vector orbit to enumerate.
    #[arg(long, global = true, default_value_t = octavian::reflection::DEFAULT_ORBIT_CAP)]
    pub orbit_cap: usize,
    /// Largest projector orbit to enumerate.
    #[arg(long, global = true, default_value_t = octavian::projective::DEFAULT_PROJECTIVE_CAP)]
    pub projective_cap: usize,
    /// Directory for cached short-vector lists.
    #[arg(long, global = true, env = "OCTAVIAN_CACHE")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
    /// Include wall-clock timings (the report is then no longer reproducible byte for byte).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Census and automorphism checks.
    Verify {
        #[arg(value_enum)]
        what: VerifyTarget,
    },
    /// Leech lattice Λ(λ̄, λ) checks.
    Leech {
        #[arg(value_enum)]
        what: LeechTarget,
        /// Norm of the vectors to enumerate (shortvectors).
        #[arg(long, default_value_t = 4)]
        norm: i64,
        /// Print only the number of vectors (shortvectors).
        #[arg(long)]
        count_only: bool,
    },
    /// Order of the group generated by the reflections in S_λ′ for k of the λ′.
    Suzuki {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        k: u8,
        #[arg(long, default_value = "14a", value_parser = ["14a", "42", "14b"])]
        quad_orbit: String,
    },
    /// The two generating sets of the automorphism group of Λ(λ̄, λ).
    Co1 {
        #[arg(long, value_enum, ignore_case = true)]
        variant: Variant,
        /// Certify the order (randomized Schreier–Sims plus verification; slow).
        #[arg(long)]
        confirm_order: bool,
        /// Prove that both variants generate the same group.
        #[arg(long)]
        compare: bool,
    },
    /// Projector orbit and Jordan-frame geometry.
    Hexagon {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        k: u8,
        /// For k = 4; defaults to the hexagonal 14-orbit.
        #[arg(long, value_parser = ["14a", "42", "14b"])]
        quad_orbit: Option<String>,
    },
    /// Vector side and projective side of the same generating set.
    Construction {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        k: u8,
        #[arg(long, value_parser = ["14a", "42", "14b"])]
        quad_orbit: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VerifyTarget {
    Ring,
    Mod2,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LeechTarget {
    Build,
    Shortvectors,
    Reflections,
    Orbit8640,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    A,
    B,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = cli.config;
    let outcome = match cli.command {
        Command::Verify {
            what: VerifyTarget::Ring,
        } => commands::verify_ring(&cfg),
        Command::Verify {
            what: VerifyTarget::Mod2,
        } => commands::verify_mod2(&cfg),
        Command::Leech { what, norm, count_only } => match what {
            LeechTarget::Build => commands::leech_build(&cfg),
            LeechTarget::Shortvectors if count_only => {
                return match commands::leech_count(&cfg, norm) {
                    Ok(report) => {
                        println!("{}", report.results["count"]);
                        ExitCode::from(u8::from(!report.all_pass()))
                    }
                    Err(e) => {
                        eprintln!("error: {e:#}");
                        ExitCode::from(2)
                    }
                };
            }
            LeechTarget::Shortvectors => commands::leech_shortvectors(&cfg, norm),
            LeechTarget::Reflections => commands::leech_reflections(&cfg),
            LeechTarget::Orbit8640 => commands::leech_orbit8640(&cfg),
        },
        Command::Suzuki { k, quad_orbit } => commands::suzuki(&cfg, k as usize, &quad_orbit),
        Command::Co1 {
            variant,
            confirm_order,
            compare,
        } => commands::co1(&cfg, variant, confirm_order, compare),
        Command::Hexagon { k, quad_orbit } => commands::hexagon(&cfg, k as usize, quad_orbit.as_deref()),
        Command::Construction { k, quad_orbit } => commands::construction(&cfg, k as usize, quad_orbit.as_deref()),
    };
    match outcome {
        Ok(report) => {
            match cfg.output {
                Output::Json => {
                    let v = report.to_json(cfg.timings);
                    println!("{}", serde_json::to_string_pretty(&v).expect("report serializes"));
                }
                Output::Text => print!("{}", report.to_text(cfg.timings)),
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
