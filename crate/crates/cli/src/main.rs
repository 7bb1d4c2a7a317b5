use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use einet::admissible::{self, assemble_vector_field, symbolic_jacobian};
use einet::catalog::build_catalog;
use einet::sim::{check_synchrony_invariance, integrate, SyncCheck};
use einet::{
    balanced_colourings, classify_network, enumerate_networks, minimal_representatives, network_id,
    parametric_class_id, partition_classes, quotient, Colouring, CouplingSpec, EiNetwork,
    EnumerationSpec, NetworkClass,
};

#[derive(Parser)]
#[command(
    name = "einet",
    version,
    about = "Excitatory-inhibitory network toolkit"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(clap::Args)]
struct EnumArgs {
    #[arg(long)]
    class: NetworkClass,
    #[arg(long, default_value_t = 2)]
    nodes: usize,
    #[arg(long, default_value_t = 2)]
    max_valence: u32,
    /// Keep disconnected networks too.
    #[arg(long)]
    include_disconnected: bool,
    #[arg(long)]
    no_duality: bool,
}

impl EnumArgs {
    fn spec(&self) -> EnumerationSpec {
        EnumerationSpec {
            n_nodes: self.nodes,
            class: self.class,
            max_valence: self.max_valence,
            connected_only: !self.include_disconnected,
            modulo_duality: !self.no_duality,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// List networks of a class up to renumbering (and duality).
    Enumerate {
        #[command(flatten)]
        args: EnumArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Partition a class into ODE-classes.
    Classify {
        #[command(flatten)]
        args: EnumArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Fewest-arrow networks ODE-equivalent to the given one.
    Minimal {
        network: PathBuf,
        #[arg(long)]
        entry_bound: Option<u32>,
        #[arg(long)]
        no_duality: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// All balanced colourings.
    Colourings {
        network: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Quotient by a balanced colouring such as `1,2|3`.
    Quotient {
        network: PathBuf,
        colouring: Colouring,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Admissible ODE in table notation.
    Signature {
        network: PathBuf,
        /// Unicode instead of LaTeX.
        #[arg(long)]
        unicode: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Symbolic Jacobian of the linearisation.
    Jacobian {
        network: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Integrate an admissible field given by a coupling spec.
    Simulate {
        network: PathBuf,
        #[arg(long)]
        coupling: PathBuf,
        /// Comma separated initial state.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x0: Vec<f64>,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        /// Print every n-th state.
        #[arg(long, default_value_t = 1)]
        every: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Numerically test flow invariance of a colouring's synchrony subspace.
    VerifySynchrony {
        network: PathBuf,
        #[arg(long)]
        colouring: Colouring,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, env = "EINET_SEED", default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 10.0)]
        horizon: f64,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        #[arg(long, default_value_t = 1)]
        state_dim: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Regenerate two-node catalogs (all four by default) and compare them with the golden files.
    Catalog {
        #[arg(long)]
        class: Option<NetworkClass>,
        #[arg(long, default_value_t = 2)]
        max_valence: u32,
        #[arg(long, default_value = concat!(env!("CARGO_MANIFEST_DIR"), "/../../golden"))]
        golden_dir: PathBuf,
        /// Overwrite the golden file instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

fn read_network(path: &Path) -> Result<EiNetwork> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(EiNetwork::from_json(&text)?)
}

fn json<T: serde::Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialisable")
}

fn net_row(g: &EiNetwork) -> String {
    let classes: Vec<&str> = classify_network(g).iter().map(|c| c.name()).collect();
    format!("{:<16} {:<8} {}", network_id(g), classes.join(","), g)
}

/// Outcome of a subcommand that can report a mismatch.
enum Outcome {
    Ok,
    Mismatch,
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.cmd {
        Cmd::Enumerate { args, format } => {
            let nets = enumerate_networks(&args.spec())?;
            match format {
                Format::Json => println!("{}", json(&nets)),
                Format::Dot => {
                    for g in &nets {
                        print!("{}", g.to_dot(&network_id(g)));
                    }
                }
                Format::Table => {
                    for g in &nets {
                        println!("{}", net_row(g));
                    }
                    println!("{} networks", nets.len());
                }
            }
        }
        Cmd::Classify { args, format } => {
            let spec = args.spec();
            let nets = enumerate_networks(&spec)?;
            let classes = partition_classes(&nets, spec.modulo_duality)?;
            match format {
                Format::Json => println!("{}", json(&classes)),
                Format::Dot => bail!("dot output is not available for classify"),
                Format::Table => {
                    for (k, c) in classes.iter().enumerate() {
                        let label = c.members.iter().find_map(|g| parametric_class_id(g).ok());
                        println!(
                            "class {k}: {} members{}",
                            c.members.len(),
                            label.map(|l| format!(" [{l}]")).unwrap_or_default()
                        );
                        println!("  span {}", c.signature.span);
                        for g in &c.members {
                            println!("  member  {}", net_row(g));
                        }
                        for g in &c.minimal {
                            println!("  minimal {}", net_row(g));
                        }
                    }
                    let sizes: Vec<String> = classes
                        .iter()
                        .map(|c| c.members.len().to_string())
                        .collect();
                    println!(
                        "{} networks, {} ODE-classes ({})",
                        nets.len(),
                        classes.len(),
                        sizes.join(" + ")
                    );
                }
            }
        }
        Cmd::Minimal {
            network,
            entry_bound,
            no_duality,
            format,
        } => {
            let g = read_network(&network)?;
            let bound = entry_bound.unwrap_or_else(|| g.total_arrows().max(1));
            let reps = minimal_representatives(&g, bound, !no_duality)?;
            match format {
                Format::Json => println!("{}", json(&reps)),
                Format::Dot => reps
                    .iter()
                    .for_each(|r| print!("{}", r.to_dot(&network_id(r)))),
                Format::Table => reps.iter().for_each(|r| println!("{}", net_row(r))),
            }
        }
        Cmd::Colourings { network, format } => {
            let g = read_network(&network)?;
            let cs = balanced_colourings(&g);
            match format {
                Format::Json => println!("{}", json(&cs)),
                _ => cs.iter().for_each(|c| println!("{c}")),
            }
        }
        Cmd::Quotient {
            network,
            colouring,
            format,
        } => {
            let g = read_network(&network)?;
            let q = quotient(&g, &colouring)?;
            match format {
                Format::Json => println!("{}", q.to_json()),
                Format::Dot => print!("{}", q.to_dot("quotient")),
                Format::Table => println!("{}", net_row(&q)),
            }
        }
        Cmd::Signature {
            network,
            unicode,
            format,
        } => {
            let g = read_network(&network)?;
            let s = admissible::signature(&g);
            match format {
                Format::Json => println!("{}", json(&s)),
                _ => {
                    let lines = if unicode {
                        s.unicode_lines()
                    } else {
                        s.latex_lines()
                    };
                    lines.iter().for_each(|l| println!("{l}"));
                }
            }
        }
        Cmd::Jacobian { network, format } => {
            let g = read_network(&network)?;
            let j = symbolic_jacobian(&g);
            match format {
                Format::Json => println!("{}", json(&j)),
                _ => println!("{j}"),
            }
        }
        Cmd::Simulate {
            network,
            coupling,
            x0,
            dt,
            steps,
            every,
            format,
        } => {
            let g = read_network(&network)?;
            let text = std::fs::read_to_string(&coupling)
                .with_context(|| format!("reading {}", coupling.display()))?;
            let spec = CouplingSpec::from_json(&text)?;
            let field = assemble_vector_field(&g, &spec)?;
            let x0 = if x0.is_empty() {
                vec![0.0; field.dim()]
            } else {
                x0
            };
            if x0.len() != field.dim() {
                bail!(
                    "x0 has {} entries, state dimension is {}",
                    x0.len(),
                    field.dim()
                );
            }
            let traj = integrate(|x, d| field.eval(x, d), &x0, dt, steps)?;
            let every = every.max(1);
            match format {
                Format::Json => println!("{}", json(&traj)),
                _ => {
                    for (t, x) in traj.times.iter().zip(&traj.states).step_by(every) {
                        let xs: Vec<String> = x.iter().map(|v| format!("{v:.9}")).collect();
                        println!("{t:.6} {}", xs.join(" "));
                    }
                }
            }
        }
        Cmd::VerifySynchrony {
            network,
            colouring,
            trials,
            tol,
            seed,
            horizon,
            dt,
            state_dim,
            format,
        } => {
            let g = read_network(&network)?;
            let cfg = SyncCheck {
                trials,
                horizon,
                dt,
                tol,
                seed,
                state_dim,
            };
            let report = check_synchrony_invariance(&g, &colouring, &cfg)?;
            match format {
                Format::Json => println!("{}", json(&report)),
                _ => {
                    let diverged = report
                        .trials
                        .iter()
                        .filter(|t| t.diverged_at.is_some())
                        .count();
                    println!(
                        "colouring {} balanced={} verdict={:?} max_deviation={:e} trials={} diverged={}",
                        report.colouring, report.balanced, report.verdict, report.max_deviation, trials, diverged
                    );
                    if let Some(s) = report.counterexample_seed {
                        println!("counterexample seed {s}");
                    }
                }
            }
            if report.balanced && !report.passed() {
                return Ok(Outcome::Mismatch);
            }
        }
        Cmd::Catalog {
            class,
            max_valence,
            golden_dir,
            bless,
        } => {
            let classes = match class {
                Some(c) => vec![c],
                None => vec![
                    NetworkClass::Rei,
                    NetworkClass::Pei,
                    NetworkClass::Uei,
                    NetworkClass::Cei,
                ],
            };
            let mut outcome = Outcome::Ok;
            for class in classes {
                if let Outcome::Mismatch = catalog(class, max_valence, &golden_dir, bless)? {
                    outcome = Outcome::Mismatch;
                }
            }
            return Ok(outcome);
        }
    }
    Ok(Outcome::Ok)
}

fn golden_path(dir: &Path, class: NetworkClass, max_valence: u32) -> PathBuf {
    let name = class.name().to_lowercase();
    if max_valence == 2 {
        dir.join(format!("{name}.json"))
    } else {
        dir.join(format!("{name}_v{max_valence}.json"))
    }
}

fn catalog(
    class: NetworkClass,
    max_valence: u32,
    golden_dir: &Path,
    bless: bool,
) -> Result<Outcome> {
    let cat = build_catalog(&EnumerationSpec::two_node(class, max_valence))?;
    let text = cat.to_json();
    let path = golden_path(golden_dir, class, max_valence);
    println!("{}: {}", class, cat.summary());
    if bless {
        std::fs::create_dir_all(golden_dir)?;
        std::fs::write(&path, &text)?;
        println!("wrote {}", path.display());
        return Ok(Outcome::Ok);
    }
    let golden =
        std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    if golden == text {
        println!("matches {}", path.display());
        return Ok(Outcome::Ok);
    }
    match golden.lines().zip(text.lines()).position(|(a, b)| a != b) {
        Some(k) => eprintln!("mismatch with {} at line {}", path.display(), k + 1),
        None => eprintln!("mismatch with {}: lengths differ", path.display()),
    }
    Ok(Outcome::Mismatch)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
