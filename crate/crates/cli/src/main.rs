use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use phasesphere_core::cell::{all_labels, in_pn, meet, nu, CellLabel};
use phasesphere_core::covector::{
    enumerate_covectors, is_covector, is_sign_covector, Covectors, FieldKind, PhaseVector, SignVector,
};
use phasesphere_core::gluing::verify_slice_claims;
use phasesphere_core::homology::{betti, FieldKind as HomologyField};
use phasesphere_core::mesh::{assemble_full, assemble_slice, read_complex, write_complex, FullAssembly};
use phasesphere_core::order_complex::{delta_member, ModelPoint};
use phasesphere_core::phase::{hsum_fold, sign_hsum_fold, Phase, Sign};
use phasesphere_core::verify::{run_suite, Suite, SuiteParams};
use phasesphere_core::Execution;

#[derive(Parser)]
#[command(name = "phasesphere", version, about = "Exact checks for phase covector spaces and their sphere structure")]
struct Cli {
    /// Run every kernel on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hyperfield arithmetic.
    #[command(subcommand)]
    Hf(HfCmd),
    /// Covector membership and enumeration against the all-ones vector.
    #[command(subcommand)]
    Covector(CovectorCmd),
    /// Membership in the model of the covector space.
    #[command(subcommand)]
    Delta(DeltaCmd),
    /// The cell-label poset.
    #[command(subcommand)]
    Pn(PnCmd),
    /// Gluing checks for the slice.
    #[command(subcommand)]
    Glue(GlueCmd),
    /// Build triangulations and write them as JSON.
    #[command(subcommand)]
    Mesh(MeshCmd),
    /// Betti numbers of a triangulation file.
    Homology {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Run a named verification suite (or `all`).
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    Phase,
    Sign,
}

#[derive(Subcommand)]
enum HfCmd {
    /// Set-valued sum of a comma-separated list (`z` or a turn fraction for phase; -,0,+ for sign).
    Sum {
        #[arg(long, value_enum, default_value = "phase")]
        field: Field,
        #[arg(long, allow_hyphen_values = true)]
        elems: String,
    },
}

#[derive(Subcommand)]
enum CovectorCmd {
    /// Whether x is a covector of the rescaled all-ones vector v.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value = "phase")]
        field: Field,
    },
    /// Enumerate covectors on the grid of m-th turns (sign field ignores m).
    Enumerate {
        #[arg(long, value_enum, default_value = "phase")]
        field: Field,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        m: u32,
        /// Print every covector, not just the count.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum DeltaCmd {
    Member {
        #[arg(long)]
        v: String,
        /// Points as `r@a;r@a;...`.
        #[arg(long)]
        z: String,
    },
}

#[derive(Subcommand)]
enum PnCmd {
    /// Every admissible label with its dimension.
    List {
        #[arg(long)]
        n: usize,
    },
    Meet {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    Nu {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
}

#[derive(Subcommand)]
enum GlueCmd {
    VerifySlice {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum MeshCmd {
    /// The slice complex at the fixed last coordinate.
    Slice(MeshArgs),
    /// The whole space (n = 2 or 3).
    Full(MeshArgs),
}

#[derive(Args)]
struct MeshArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    suite: String,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Include runtimes in the report.
    #[arg(long)]
    timings: bool,
}

fn parse_list<T: std::str::FromStr<Err = phasesphere_core::Error>>(s: &str) -> Result<Vec<T>> {
    s.split(',').map(|t| t.trim().parse::<T>().map_err(Into::into)).collect()
}

fn run(cli: Cli) -> Result<bool> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match cli.cmd {
        Cmd::Hf(HfCmd::Sum { field, elems }) => {
            match field {
                Field::Phase => println!("{}", hsum_fold(&parse_list::<Phase>(&elems)?)?),
                Field::Sign => {
                    let s = sign_hsum_fold(&parse_list::<Sign>(&elems)?)?;
                    let parts: Vec<String> = s.iter().map(Sign::to_string).collect();
                    println!("{{{}}}", parts.join(", "));
                }
            }
            Ok(true)
        }
        Cmd::Covector(CovectorCmd::Check { v, x, field }) => {
            let ok = match field {
                Field::Phase => {
                    let x: PhaseVector = x.parse()?;
                    let v = match v {
                        Some(v) => v.parse()?,
                        None => PhaseVector::ones(x.len()),
                    };
                    is_covector(&v, &x)?
                }
                Field::Sign => {
                    if v.is_some() {
                        bail!("--v only applies to the phase field");
                    }
                    is_sign_covector(&x.parse::<SignVector>()?)
                }
            };
            println!("{ok}");
            Ok(ok)
        }
        Cmd::Covector(CovectorCmd::Enumerate { field, n, m, list }) => {
            let kind = match field {
                Field::Phase => FieldKind::Phase,
                Field::Sign => FieldKind::Sign,
            };
            let all = enumerate_covectors(kind, n, m, exec)?;
            if list {
                match &all {
                    Covectors::Phase(v) => v.iter().for_each(|x| println!("{x}")),
                    Covectors::Sign(v) => v.iter().for_each(|x| println!("{x}")),
                }
            }
            println!("count: {}", all.len());
            Ok(true)
        }
        Cmd::Delta(DeltaCmd::Member { v, z }) => {
            let v: PhaseVector = v.parse()?;
            let z: ModelPoint = z.parse()?;
            let ok = delta_member(&v, &z)?;
            println!("{ok}");
            Ok(ok)
        }
        Cmd::Pn(PnCmd::List { n }) => {
            if n < 2 {
                bail!("n must be at least 2");
            }
            for x in all_labels(n) {
                println!("{x}\tnu={}", nu(&x));
            }
            Ok(true)
        }
        Cmd::Pn(PnCmd::Meet { x, y }) => {
            let x: CellLabel = x.parse()?;
            let y: CellLabel = y.parse()?;
            let z = meet(&x, &y)?;
            println!("{z}");
            Ok(in_pn(z.labels()))
        }
        Cmd::Pn(PnCmd::Nu { x }) => {
            let x: CellLabel = x.parse()?;
            println!("{}", nu(&x));
            Ok(true)
        }
        Cmd::Glue(GlueCmd::VerifySlice { n, samples, seed, json }) => {
            let report = verify_slice_claims(n, samples, seed, exec)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                for c in &report.claims {
                    let status = if c.vacuous {
                        "SKIP"
                    } else if c.passed() {
                        "PASS"
                    } else {
                        "FAIL"
                    };
                    println!("[{status}] {}: {} instances, {} failures", c.claim, c.checked, c.failures);
                    for w in &c.witnesses {
                        println!("    witness: {w}");
                    }
                }
            }
            Ok(report.passed())
        }
        Cmd::Mesh(MeshCmd::Slice(a)) => {
            let (k, report) = assemble_slice(a.n, a.m, exec)?;
            write_complex(&k, &a.out).with_context(|| format!("writing {}", a.out.display()))?;
            println!(
                "slice n={} m={}: {} charts, f-vector {:?}, {} validity failures",
                a.n,
                a.m,
                report.charts,
                k.f_vector(),
                report.failures.len()
            );
            for f in report.failures.iter().take(5) {
                println!("    {f}");
            }
            Ok(report.passed())
        }
        Cmd::Mesh(MeshCmd::Full(a)) => match assemble_full(a.n, a.m)? {
            FullAssembly::Glued(k) => {
                write_complex(&k, &a.out).with_context(|| format!("writing {}", a.out.display()))?;
                println!("full n={} m={}: f-vector {:?}", a.n, a.m, k.f_vector());
                Ok(true)
            }
            FullAssembly::Split { a: ka, reason, .. } => {
                write_complex(&ka, &a.out)?;
                println!("full n={} m={}: charts do not glue ({reason}); wrote region A only", a.n, a.m);
                Ok(false)
            }
        },
        Cmd::Homology { input, field } => {
            let field: HomologyField = field.parse()?;
            let k = read_complex(&input).with_context(|| format!("reading {}", input.display()))?;
            println!("{}", betti(&k, field));
            Ok(true)
        }
        Cmd::Verify(a) => {
            let suite: Suite = a.suite.parse()?;
            let params =
                SuiteParams { max_n: a.max_n, m: a.m, samples: a.samples, seed: a.seed, exec, timings: a.timings };
            let report = run_suite(suite, &params)?;
            print!("{}", report.to_text());
            if let Some(path) = a.report {
                std::fs::write(&path, report.to_json()?).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
