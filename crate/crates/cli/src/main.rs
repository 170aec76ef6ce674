use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toric_core::cones::FaceId;
use toric_core::invariants::{MilnorMode, MorseMode};
use toric_core::io::{parse_problem, run_command, Command, Flags, OracleKind};
use toric_core::ToricError;

/// Exact invariants of non-degenerate functions on affine toric varieties.
#[derive(Parser)]
#[command(name = "toric", version)]
struct Cli {
    /// Emit the machine-readable report instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Number of worker threads for per-face work.
    #[arg(long, global = true, value_name = "N")]
    parallel: Option<usize>,
    /// Refuse to answer with a relation when Euler obstruction values are unknown.
    #[arg(long, global = true)]
    strict_eu: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Input {
    /// Problem file (toric-problem/1 JSON).
    file: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Face lattice of the dual cone.
    Faces(Input),
    /// Orbits along which a function is critical.
    Orbits {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        g: String,
    },
    /// Compact facets of the Newton polygon on each face.
    Newton {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        f: String,
        #[arg(long)]
        face: Option<FaceId>,
    },
    /// Milnor-fibre Euler characteristic along each orbit.
    Chi {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        f: String,
        #[arg(long)]
        face: Option<FaceId>,
    },
    /// Normalized volumes of the polytopes in the file.
    Volume {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        polytope: Option<String>,
    },
    /// Normalized mixed volume in the full lattice; give NAME or NAME:MULT.
    MixedVolume {
        #[command(flatten)]
        input: Input,
        #[arg(long = "polytope", required = true)]
        polytopes: Vec<String>,
    },
    /// Brasselet number of a hypersurface germ.
    Brasselet {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        f: String,
    },
    /// Brasselet number on a complete intersection cut out by the priors.
    BrasseletCi {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        f: String,
        #[arg(long = "prior")]
        priors: Vec<String>,
    },
    /// Number of stratified Morse points of g on the Milnor fibre of f.
    Morse {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Compute both Brasselet numbers from Newton data.
        #[arg(long, conflicts_with = "generic_linear")]
        combinatorial: bool,
        /// Use Eu at the origin for both Brasselet numbers (f must be generic linear).
        #[arg(long)]
        generic_linear: bool,
        /// Take the correction strata from refined_strata in the file.
        #[arg(long)]
        refined: bool,
    },
    /// Milnor number relation on Cⁿ.
    MilnorCn {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        g: String,
        /// Fail unless m is determined.
        #[arg(long, conflicts_with = "relation")]
        solve: bool,
        /// Emit the relation (the default).
        #[arg(long)]
        relation: bool,
    },
    /// Newton polygon constancy of a family, and member-independence of the Morse count.
    FamilyCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        family: String,
        #[arg(long)]
        g_family: Option<String>,
    },
    /// Independent cross-checks.
    Oracle {
        #[command(flatten)]
        input: Input,
        kind: Kind,
        #[arg(long)]
        f: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Volume,
    Kouchnirenko,
    Faces,
}

fn slot(s: &str) -> Result<(String, usize), ToricError> {
    match s.rsplit_once(':') {
        Some((n, m)) => m
            .parse()
            .map(|m| (n.to_string(), m))
            .map_err(|_| ToricError::Parse(format!("bad multiplicity in {}", s))),
        None => Ok((s.to_string(), 1)),
    }
}

fn convert(cmd: Cmd) -> Result<(PathBuf, Command), ToricError> {
    Ok(match cmd {
        Cmd::Faces(i) => (i.file, Command::Faces),
        Cmd::Orbits { input, g } => (input.file, Command::Orbits { g }),
        Cmd::Newton { input, f, face } => (input.file, Command::Newton { f, face }),
        Cmd::Chi { input, f, face } => (input.file, Command::Chi { f, face }),
        Cmd::Volume { input, polytope } => (input.file, Command::Volume { polytope }),
        Cmd::MixedVolume { input, polytopes } => (
            input.file,
            Command::MixedVolume {
                slots: polytopes.iter().map(|s| slot(s)).collect::<Result<_, _>>()?,
            },
        ),
        Cmd::Brasselet { input, f } => (input.file, Command::Brasselet { f }),
        Cmd::BrasseletCi { input, f, priors } => (input.file, Command::BrasseletCi { f, priors }),
        Cmd::Morse {
            input,
            f,
            g,
            combinatorial,
            generic_linear,
            refined,
        } => {
            let mode = match (combinatorial, generic_linear) {
                (true, _) => Some(MorseMode::Combinatorial),
                (_, true) => Some(MorseMode::GenericLinear),
                _ => None,
            };
            (input.file, Command::Morse { f, g, mode, refined })
        }
        Cmd::MilnorCn { input, g, solve, .. } => {
            let mode = if solve { MilnorMode::Solve } else { MilnorMode::Relation };
            (input.file, Command::MilnorCn { g, mode })
        }
        Cmd::FamilyCheck { input, family, g_family } => (input.file, Command::FamilyCheck { family, g_family }),
        Cmd::Oracle { input, kind, f } => {
            let kind = match kind {
                Kind::Volume => OracleKind::Volume,
                Kind::Kouchnirenko => OracleKind::Kouchnirenko,
                Kind::Faces => OracleKind::Faces,
            };
            (input.file, Command::Oracle { kind, f })
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags = Flags {
        strict_eu: cli.strict_eu,
        parallel: cli.parallel,
    };
    let outcome = convert(cli.command).and_then(|(path, cmd)| {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| ToricError::Parse(format!("cannot read {}: {}", path.display(), e)))?;
        let problem = parse_problem(&text)?;
        run_command(&cmd, &problem, &flags)
    });
    match outcome {
        Ok(doc) => {
            print!("{}", doc.render(cli.json));
            if doc.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: a cross-check inside the command failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
