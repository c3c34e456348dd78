use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use entop::gates::GateSpec;
use entop::hs::{schmidt_spectrum, OperatorState};
use entop::measures::{
    concurrence_two_term, entangling_power_direct, entangling_power_mc,
    entangling_power_via_relation, exchange_entropy, linear_entropy, linear_entropy_fold4,
    measure_report, CapPolicy, TwoTermDecomposition, FOLD4_DIM_CAP,
};
use entop::tensor::{check_unitary, Bipartition, UNITARY_TOL};
use entop_cli::matfile::MatrixFile;
use entop_cli::render::{mc_text, measure_text, power_value_text, RouteDetail};
use entop_cli::sweep::{sweep_rows, theta_points, write_csv, SweepFamily};
use entop_cli::verify::run_checks;
use entop_cli::CliError;

#[derive(Parser)]
#[command(
    name = "entop",
    version,
    about = "Entanglement measures for unitary operators on bipartite systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct an operator and write it to a matrix file
    Gate {
        #[command(subcommand)]
        gate: GateArg,
        /// Output matrix file (JSON)
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Report all entanglement measures of an operator
    Measure {
        #[command(subcommand)]
        input: GateArg,
        /// Machine-readable report
        #[arg(long, global = true)]
        json: bool,
        /// Run fold-4 routes beyond the size cap
        #[arg(long, global = true)]
        force_fold4: bool,
        /// Accept operators that fail the unitarity check
        #[arg(long, global = true)]
        allow_nonunitary: bool,
    },
    /// Sweep θ and write closed-form vs numeric concurrence as CSV
    Sweep {
        #[command(subcommand)]
        family: SweepArg,
        /// Sweep start (radians); requires --to
        #[arg(long, global = true, requires = "to")]
        from: Option<f64>,
        /// Sweep end (radians); requires --from
        #[arg(long, global = true, requires = "from")]
        to: Option<f64>,
        /// Number of grid points
        #[arg(long, global = true, default_value_t = 400)]
        steps: usize,
        /// Output CSV file
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Entangling power by a chosen route
    Power {
        #[command(subcommand)]
        input: GateArg,
        #[arg(long, global = true, value_enum, default_value_t = Method::Mc)]
        method: Method,
        /// Seed of the Monte-Carlo stream
        #[arg(long, global = true, default_value_t = 0)]
        seed: u64,
        /// Monte-Carlo sample count
        #[arg(long, global = true, default_value_t = 10000)]
        samples: u64,
        #[arg(long, global = true)]
        json: bool,
        #[arg(long, global = true)]
        force_fold4: bool,
        #[arg(long, global = true)]
        allow_nonunitary: bool,
    },
    /// Run the self-verification suite
    Verify {
        /// Skip the Monte-Carlo checks
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Subcommand, Clone)]
enum GateArg {
    /// Controlled-NOT on 2x2
    Cnot,
    /// Controlled^N-NOT on n+1 qubits, split after qubit k
    Cnnot {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Spin coupling exp(-i 2θ σz⊗Jz) on 2 x (two_j + 1)
    Spin {
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        two_j: u32,
    },
    /// Parity interaction exp(-iπ N1⊗N2) on d1 x d2
    Parity {
        #[arg(long)]
        d1: usize,
        #[arg(long)]
        d2: usize,
    },
    /// σz chain exp(-iθ σz^⊗n), split after qubit k
    Zchain {
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Swap operator on d x d
    Swap {
        #[arg(long)]
        d: usize,
    },
    /// Operator read from a matrix file
    Custom {
        path: PathBuf,
        #[arg(long)]
        d1: Option<usize>,
        #[arg(long)]
        d2: Option<usize>,
    },
}

#[derive(Subcommand, Clone)]
enum SweepArg {
    /// Spin coupling concurrence against θ
    Spin {
        #[arg(long)]
        two_j: u32,
    },
    /// σz chain concurrence against θ
    Zchain {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Relation,
    Mc,
}

struct ResolvedInput {
    name: String,
    state: OperatorState,
    decomposition: Option<TwoTermDecomposition>,
}

fn catalog_spec(arg: &GateArg) -> Option<GateSpec> {
    match *arg {
        GateArg::Cnot => Some(GateSpec::Cnot),
        GateArg::Cnnot { n, k } => Some(GateSpec::Cnnot { n, k }),
        GateArg::Spin { theta, two_j } => Some(GateSpec::Spin { theta, two_j }),
        GateArg::Parity { d1, d2 } => Some(GateSpec::Parity { d1, d2 }),
        GateArg::Zchain { theta, n, k } => Some(GateSpec::Zchain { theta, n, k }),
        GateArg::Swap { d } => Some(GateSpec::Swap { d }),
        GateArg::Custom { .. } => None,
    }
}

fn describe(spec: &GateSpec) -> String {
    match *spec {
        GateSpec::Cnot => "cnot".into(),
        GateSpec::Cnnot { n, k } => format!("cnnot(n={n}, k={k})"),
        GateSpec::Spin { theta, two_j } => format!("spin(theta={theta}, two_j={two_j})"),
        GateSpec::Parity { d1, d2 } => format!("parity({d1}x{d2})"),
        GateSpec::Zchain { theta, n, k } => format!("zchain(theta={theta}, n={n}, k={k})"),
        GateSpec::Swap { d } => format!("swap(d={d})"),
    }
}

fn read_custom(
    path: &Path,
    d1: Option<usize>,
    d2: Option<usize>,
) -> Result<(MatrixFile, Option<Bipartition>), CliError> {
    let file = MatrixFile::read(path)?;
    let matrix_rows = file.rows;
    let dims = match (d1, d2) {
        (Some(a), Some(b)) => Some((a, b)),
        (None, None) => file.bipartition(),
        _ => {
            return Err(CliError::Usage(
                "--d1 and --d2 must be given together".into(),
            ))
        }
    };
    let bp = match dims {
        Some((a, b)) => {
            let bp = Bipartition::new(a, b).map_err(|e| CliError::Usage(e.to_string()))?;
            if bp.dim() != matrix_rows {
                return Err(CliError::Input(format!(
                    "bipartition {bp} does not match the {matrix_rows}x{} matrix",
                    file.cols
                )));
            }
            Some(bp)
        }
        None => None,
    };
    Ok((file, bp))
}

fn resolve_input(arg: &GateArg) -> Result<ResolvedInput, CliError> {
    if let Some(spec) = catalog_spec(arg) {
        let state = spec.build()?;
        let decomposition = spec.two_term().ok();
        return Ok(ResolvedInput { name: describe(&spec), state, decomposition });
    }
    let GateArg::Custom { path, d1, d2 } = arg else { unreachable!() };
    let (file, bp) = read_custom(path, *d1, *d2)?;
    let bp = bp.ok_or_else(|| {
        CliError::Usage("custom input needs --d1 and --d2 (or a file that carries them)".into())
    })?;
    let state = OperatorState::new(file.to_matrix()?, bp)?;
    Ok(ResolvedInput { name: path.display().to_string(), state, decomposition: None })
}

fn require_unitary(state: &OperatorState, allow: bool) -> Result<Option<f64>, CliError> {
    let check = check_unitary(state.op(), UNITARY_TOL);
    if !check.is_unitary() && !allow {
        return Err(CliError::Input(format!(
            "operator is not unitary (max |U†U - I| entry {:.3e}); pass --allow-nonunitary",
            check.deviation
        )));
    }
    Ok(Some(check.deviation))
}

fn fold4_policy(state: &OperatorState, force: bool) -> Result<CapPolicy, CliError> {
    if state.bipartition().dim() > FOLD4_DIM_CAP && !force {
        return Err(CliError::Input(format!(
            "system dimension {} exceeds the fold-4 cap {FOLD4_DIM_CAP}; pass --force-fold4",
            state.bipartition().dim()
        )));
    }
    Ok(if force { CapPolicy::Override } else { CapPolicy::Enforce })
}

fn cmd_gate(gate: GateArg, out: Option<PathBuf>) -> Result<(), CliError> {
    let out = out.ok_or_else(|| CliError::Usage("--out is required".into()))?;
    let file = match catalog_spec(&gate) {
        Some(spec) => {
            let state = spec.build()?;
            MatrixFile::from_matrix(state.op(), Some(state.bipartition()))
        }
        None => {
            let GateArg::Custom { path, d1, d2 } = &gate else { unreachable!() };
            let (file, bp) = read_custom(path, *d1, *d2)?;
            // Round-trips through the dense matrix, re-validating entries.
            MatrixFile::from_matrix(&file.to_matrix()?, bp)
        }
    };
    file.write(&out)?;
    println!("wrote {}x{} matrix to {}", file.rows, file.cols, out.display());
    Ok(())
}

fn cmd_measure(
    input: GateArg,
    json: bool,
    force_fold4: bool,
    allow_nonunitary: bool,
) -> Result<(), CliError> {
    let resolved = resolve_input(&input)?;
    let deviation = require_unitary(&resolved.state, allow_nonunitary)?;
    let cap = fold4_policy(&resolved.state, force_fold4)?;
    let report = measure_report(&resolved.state, resolved.decomposition.as_ref(), cap)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
        return Ok(());
    }
    let detail = RouteDetail {
        e_fold4: linear_entropy_fold4(&resolved.state, cap).ok(),
        ep_direct: entangling_power_direct(&resolved.state, cap).ok(),
        c_two_term: match &resolved.decomposition {
            Some(d) => Some(concurrence_two_term(d)?),
            None => None,
        },
        unitarity_deviation: deviation,
    };
    println!(
        "{}",
        measure_text(&resolved.name, resolved.state.bipartition(), &report, &detail)
    );
    Ok(())
}

fn cmd_sweep(
    family: SweepArg,
    from: Option<f64>,
    to: Option<f64>,
    steps: usize,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let out = out.ok_or_else(|| CliError::Usage("--out is required".into()))?;
    let range = from.zip(to);
    let thetas = theta_points(range, steps)?;
    let family = match family {
        SweepArg::Spin { two_j } => SweepFamily::Spin { two_j },
        SweepArg::Zchain { n, k } => SweepFamily::Zchain { n, k },
    };
    let rows = sweep_rows(family, &thetas)?;
    write_csv(&out, &rows)?;
    println!("wrote {} rows to {}", rows.len(), out.display());
    Ok(())
}

fn cmd_power(
    input: GateArg,
    method: Method,
    seed: u64,
    samples: u64,
    json: bool,
    force_fold4: bool,
    allow_nonunitary: bool,
) -> Result<(), CliError> {
    let resolved = resolve_input(&input)?;
    require_unitary(&resolved.state, allow_nonunitary)?;
    match method {
        Method::Direct => {
            let cap = fold4_policy(&resolved.state, force_fold4)?;
            let value = entangling_power_direct(&resolved.state, cap)?;
            if json {
                println!("{}", serde_json::json!({ "method": "direct", "value": value }));
            } else {
                println!("{}", power_value_text("direct", value));
            }
        }
        Method::Relation => {
            let cap = fold4_policy(&resolved.state, force_fold4)?;
            let e = linear_entropy(&schmidt_spectrum(&resolved.state)?);
            let e_tilde = exchange_entropy(&resolved.state, cap)?;
            let value = entangling_power_via_relation(e, e_tilde, resolved.state.bipartition());
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "method": "relation", "value": value, "e": e, "e_tilde": e_tilde
                    })
                );
            } else {
                println!("{}", power_value_text("relation", value));
            }
        }
        Method::Mc => {
            let estimate = entangling_power_mc(&resolved.state, samples, seed)?;
            if json {
                println!("{}", serde_json::to_string(&estimate)?);
            } else {
                println!("{}", mc_text(&estimate));
            }
        }
    }
    Ok(())
}

fn cmd_verify(quick: bool) -> ExitCode {
    let checks = run_checks(quick);
    let mut failed = 0;
    for check in &checks {
        println!("{}", check.render());
        if !check.pass {
            failed += 1;
        }
    }
    println!("{} checks, {failed} failed", checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Gate { gate, out } => cmd_gate(gate, out)?,
        Command::Measure { input, json, force_fold4, allow_nonunitary } => {
            cmd_measure(input, json, force_fold4, allow_nonunitary)?
        }
        Command::Sweep { family, from, to, steps, out } => {
            cmd_sweep(family, from, to, steps, out)?
        }
        Command::Power { input, method, seed, samples, json, force_fold4, allow_nonunitary } => {
            cmd_power(input, method, seed, samples, json, force_fold4, allow_nonunitary)?
        }
        Command::Verify { quick } => return Ok(cmd_verify(quick)),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
