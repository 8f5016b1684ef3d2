//! Argument parsing and command dispatch.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for bad
//! input. Structured output goes to stdout; the one-line summary to stderr.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use infocalc_core::channels::{decohere, DecoherenceParams};
use infocalc_core::clifford::{
    antiqubit_density, check_clifford, check_qubit_field_algebra, pauli_triple, GammaRep,
};
use infocalc_core::entropy::{
    chain_rule_check, conditional_entropy, holographic_bound_bits, planck_length_sq,
    von_neumann_report, TripartiteEntropies,
};
use infocalc_core::linalg::{c64, DEFAULT_SUPPORT_CUTOFF};
use infocalc_core::protocols::{
    builtin_diagram, check_conservation, superdense_outcome, teleport, teleport_branch,
    BellOutcome, InfoDiagram, SpeciesWeights,
};
use infocalc_core::sampling::{random_unitary, seeded_rng};
use infocalc_core::sigma::{evolve, LatticeField};
use infocalc_core::states::{
    bell_state, classically_correlated, density_of, ghz_state, werner_state, DensityMatrix,
    QubitState,
};
use infocalc_core::susyqm::{
    build_model, check_superalgebra, pair_spectra, sqrt_not, Grid, Superpotential,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::formats::{
    complex, matrix_json, pairing_csv, read_diagram, read_state, series_csv, DiagramFile,
};

/// Default seed when neither `--seed` nor the environment gives one.
pub const SEED_ENV: &str = "QFT_INFOCALC_SEED";

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    /// JSON or CSV document for stdout.
    pub output: String,
    /// Human-readable line for stderr.
    pub summary: String,
}

impl CommandResult {
    fn checked(passed: bool, output: String, summary: String) -> Self {
        Self {
            exit_code: if passed { 0 } else { 1 },
            output,
            summary,
        }
    }

    fn json(passed: bool, doc: &Value, summary: String) -> Self {
        let mut text = serde_json::to_string_pretty(doc).expect("JSON values serialize");
        text.push('\n');
        Self::checked(passed, text, summary)
    }

    fn input_error(message: String) -> Self {
        Self {
            exit_code: 2,
            output: String::new(),
            summary: format!("error: {message}"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qft-infocalc",
    version,
    about = "Quantum information calculus, SUSY QM spectra and O(3) sigma-model dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Von Neumann entropy of a state
    Entropy(StateArgs),
    /// Bipartite conditional entropy by the difference and operator forms
    Conditional {
        #[command(flatten)]
        state: StateArgs,
        /// Subsystem to condition on (0 or 1)
        #[arg(long, default_value_t = 1)]
        condition_on: usize,
    },
    /// Tripartite entropies: ternary and conditional mutual entropy, chain rule
    Ternary(StateArgs),
    /// Teleport one qubit through a Bell pair
    Teleport {
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        /// Qubit state file; defaults to (0.6, 0.8)
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Send two classical bits through one qubit of a Bell pair
    Superdense {
        /// Two bits, e.g. 10
        #[arg(long)]
        bits: String,
    },
    /// Check entropy conservation at every vertex of a diagram
    Diagram {
        #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        builtin: Option<BuiltinDiagram>,
        /// Print the diagram itself as JSON instead of the report
        #[arg(long)]
        emit: bool,
    },
    /// Partner spectra of a discretized SUSY model
    Susy(SusyArgs),
    /// Evolve the O(3) sigma model on a periodic lattice
    Sigma(SigmaArgs),
    /// Decohere a qubit (or antiqubit) density matrix
    Decohere {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        tau: f64,
        /// Qubit state file; defaults to the equal superposition
        #[arg(long)]
        state: Option<PathBuf>,
        /// Use the antiqubit density matrix
        #[arg(long)]
        antiqubit: bool,
    },
    /// Holographic entropy bound for an enclosing area in m^2
    Bound {
        #[arg(long)]
        area: f64,
    },
    /// Run every exact-identity suite
    Selfcheck,
}

#[derive(Debug, Args)]
struct StateArgs {
    /// State file (JSON)
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    state: Option<PathBuf>,
    #[arg(long, value_enum)]
    builtin: Option<BuiltinState>,
    /// Werner mixing parameter
    #[arg(long, default_value_t = 0.5)]
    p: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BuiltinState {
    Bell,
    Ghz,
    Werner,
    Mixed,
    Classical,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BuiltinDiagram {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Potential {
    Linear,
    Tanh,
    Cubic,
    Zero,
}

#[derive(Debug, Args)]
struct SusyArgs {
    #[arg(long, value_enum, default_value = "linear")]
    potential: Potential,
    /// Interior grid points of sector 0
    #[arg(long, default_value_t = 400)]
    n: usize,
    /// Positive levels to pair
    #[arg(long, default_value_t = 10)]
    levels: usize,
    /// Slope (linear) or c (cubic)
    #[arg(long)]
    param: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    x_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    x_max: Option<f64>,
    #[arg(long)]
    zero_tol: Option<f64>,
    #[arg(long)]
    pairing_tol: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Preset {
    Uniform,
    Wave,
    Random,
}

#[derive(Debug, Args)]
struct SigmaArgs {
    #[arg(long, value_enum, default_value = "wave")]
    preset: Preset,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
    #[arg(long, default_value_t = 64)]
    sites: usize,
    #[arg(long, default_value_t = 0.1)]
    dx: f64,
    /// Spin-wave mode number
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0.1)]
    amplitude: f64,
    /// Typical speed for the random preset
    #[arg(long, default_value_t = 1.0)]
    speed: f64,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
    /// Record every n-th step
    #[arg(long, default_value_t = 100)]
    every: usize,
    #[arg(long)]
    traveling: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

/// Parse `argv` (program name first) and run the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandResult {
                    exit_code: 0,
                    output: text,
                    summary: String::new(),
                }
            } else {
                CommandResult {
                    exit_code: 2,
                    output: String::new(),
                    summary: text.trim_end().to_string(),
                }
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(|e| CommandResult::input_error(e.to_string()))
}

fn dispatch(cmd: Command) -> Result<CommandResult, CliError> {
    match cmd {
        Command::Entropy(s) => entropy_cmd(&s),
        Command::Conditional {
            state,
            condition_on,
        } => conditional_cmd(&state, condition_on),
        Command::Ternary(s) => ternary_cmd(&s),
        Command::Teleport { seed, state } => teleport_cmd(seed, state),
        Command::Superdense { bits } => superdense_cmd(&bits),
        Command::Diagram {
            file,
            builtin,
            emit,
        } => diagram_cmd(file, builtin, emit),
        Command::Susy(a) => susy_cmd(&a),
        Command::Sigma(a) => sigma_cmd(&a),
        Command::Decohere {
            t,
            tau,
            state,
            antiqubit,
        } => decohere_cmd(t, tau, state, antiqubit),
        Command::Bound { area } => bound_cmd(area),
        Command::Selfcheck => selfcheck_cmd(),
    }
}

fn load_state(s: &StateArgs) -> Result<DensityMatrix, CliError> {
    if let Some(path) = &s.state {
        return read_state(path)?.to_density();
    }
    Ok(match s.builtin {
        Some(BuiltinState::Bell) => bell_state(),
        Some(BuiltinState::Ghz) => ghz_state(),
        Some(BuiltinState::Werner) => werner_state(s.p).map_err(|e| CliError::field("p", e))?,
        Some(BuiltinState::Mixed) => DensityMatrix::maximally_mixed(vec![2, 2]),
        Some(BuiltinState::Classical) => classically_correlated(3),
        None => return Err(CliError::Usage("need --state or --builtin".into())),
    })
}

fn load_qubit(path: Option<PathBuf>, default: QubitState) -> Result<QubitState, CliError> {
    let Some(path) = path else { return Ok(default) };
    let file = read_state(&path)?;
    if file.dims != [2] {
        return Err(CliError::input(
            "dims",
            format!("expected [2] for a qubit, got {:?}", file.dims),
        ));
    }
    let amps = file
        .amplitude_vector()
        .ok_or_else(|| CliError::input("amplitudes", "a qubit needs pure amplitudes"))?;
    if amps.len() != 2 {
        return Err(CliError::input(
            "amplitudes",
            format!("expected 2 amplitudes, got {}", amps.len()),
        ));
    }
    QubitState::new(amps[0], amps[1]).map_err(|e| CliError::field("amplitudes", e))
}

fn entropy_cmd(s: &StateArgs) -> Result<CommandResult, CliError> {
    let rho = load_state(s)?;
    let r = von_neumann_report(&rho).map_err(|e| CliError::field("state", e))?;
    let eig = rho
        .spectrum()
        .map_err(|e| CliError::field("state", e))?
        .eigenvalues;
    let doc = json!({
        "command": "entropy",
        "dims": rho.dims(),
        "entropy": r.value,
        "support_rank": r.support_rank,
        "eigenvalues": eig,
    });
    Ok(CommandResult::json(
        true,
        &doc,
        format!("S = {:.6} bits (rank {})", r.value, r.support_rank),
    ))
}

/// Operator and difference forms must agree to this when both apply.
pub const CONDITIONAL_AGREEMENT_TOL: f64 = 1e-8;

fn conditional_cmd(s: &StateArgs, condition_on: usize) -> Result<CommandResult, CliError> {
    let rho = load_state(s)?;
    let ce = conditional_entropy(&rho, condition_on).map_err(|e| CliError::field("state", e))?;
    let agree = ce
        .discrepancy()
        .is_none_or(|d| d <= CONDITIONAL_AGREEMENT_TOL);
    let doc = json!({
        "command": "conditional",
        "condition_on": condition_on,
        "value": ce.value(),
        "difference_form": ce.difference.value,
        "operator_form": ce.operator.map(|o| o.value),
        "discrepancy": ce.discrepancy(),
        "support_rank": ce.difference.support_rank,
        "forms_agree": agree,
    });
    let op = match ce.operator {
        Some(o) => format!("operator form {:.6}", o.value),
        None => "operator form n/a (rank deficient)".into(),
    };
    Ok(CommandResult::json(
        agree,
        &doc,
        format!("S(A|B) = {:.6} bits; {op}", ce.value()),
    ))
}

/// Tolerance for the pure-state identities reported by `ternary`.
pub const IDENTITY_TOL: f64 = 1e-8;

fn ternary_cmd(s: &StateArgs) -> Result<CommandResult, CliError> {
    let rho = load_state(s)?;
    let e = TripartiteEntropies::of(&rho).map_err(|e| CliError::field("state", e))?;
    let chain = chain_rule_check(&rho).map_err(|e| CliError::field("state", e))?;
    let pure = (rho.purity() - 1.0).abs() <= IDENTITY_TOL;
    let mut passed = chain.telescoping <= IDENTITY_TOL;
    if pure {
        passed &= e.ternary().abs() <= IDENTITY_TOL && e.schmidt_deviation() <= IDENTITY_TOL;
    }
    let doc = json!({
        "command": "ternary",
        "entropies": {
            "u": e.u, "d": e.d, "s": e.s, "ud": e.ud, "us": e.us, "ds": e.ds, "uds": e.uds,
        },
        "ternary_mutual": e.ternary(),
        "conditional_mutual": e.conditional_mutual(),
        "chain_rule": {
            "telescoping_residual": chain.telescoping,
            "unconditioned_middle_residual": chain.unconditioned_middle,
        },
        "pure": pure,
        "schmidt_deviation": if pure { Some(e.schmidt_deviation()) } else { None },
        "passed": passed,
    });
    Ok(CommandResult::json(
        passed,
        &doc,
        format!(
            "S(u:d:s) = {:.6}, S(u:d|s) = {:.6}",
            e.ternary(),
            e.conditional_mutual()
        ),
    ))
}

/// Fidelity tolerance for teleportation branches.
pub const FIDELITY_TOL: f64 = 1e-12;

fn teleport_cmd(seed: u64, state: Option<PathBuf>) -> Result<CommandResult, CliError> {
    let q = load_qubit(state, QubitState::from_real(0.6, 0.8).expect("normalized"))?;
    let run = teleport(&q, seed).map_err(|e| CliError::field("state", e))?;
    let branches = BellOutcome::ALL
        .iter()
        .map(|&o| teleport_branch(&q, o))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::field("state", e))?;
    let passed = branches
        .iter()
        .all(|b| (b.fidelity - 1.0).abs() <= FIDELITY_TOL);
    let doc = json!({
        "command": "teleport",
        "seed": seed,
        "input": q.amplitudes().map(complex),
        "output": run.output.amplitudes().map(complex),
        "classical_bits": [run.classical_bits.0, run.classical_bits.1],
        "probability": run.probability,
        "fidelity": run.fidelity,
        "branches": branches.iter().map(|b| json!({
            "bits": [b.outcome.x, b.outcome.z],
            "probability": b.probability,
            "fidelity": b.fidelity,
        })).collect::<Vec<_>>(),
        "passed": passed,
    });
    Ok(CommandResult::json(
        passed,
        &doc,
        format!(
            "bits ({}, {}), fidelity {:.15}",
            run.classical_bits.0, run.classical_bits.1, run.fidelity
        ),
    ))
}

fn parse_bits(bits: &str) -> Result<(u8, u8), CliError> {
    let b: Vec<u8> = bits
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(CliError::input(
                "bits",
                format!("expected two characters from {{0, 1}}, got {bits:?}"),
            )),
        })
        .collect::<Result<_, _>>()?;
    match b[..] {
        [x, y] => Ok((x, y)),
        _ => Err(CliError::input(
            "bits",
            format!("expected exactly two bits, got {bits:?}"),
        )),
    }
}

fn superdense_cmd(bits: &str) -> Result<CommandResult, CliError> {
    let sent = parse_bits(bits)?;
    let out = superdense_outcome(sent).map_err(|e| CliError::field("bits", e))?;
    let passed = out.recovered == sent;
    let doc = json!({
        "command": "superdense",
        "sent": [sent.0, sent.1],
        "recovered": [out.recovered.0, out.recovered.1],
        "bell_probabilities": out.probabilities,
        "passed": passed,
    });
    Ok(CommandResult::json(
        passed,
        &doc,
        format!(
            "sent {}{}, recovered {}{}",
            sent.0, sent.1, out.recovered.0, out.recovered.1
        ),
    ))
}

fn diagram_cmd(
    file: Option<PathBuf>,
    builtin: Option<BuiltinDiagram>,
    emit: bool,
) -> Result<CommandResult, CliError> {
    let (name, d): (String, InfoDiagram) = match (file, builtin) {
        (Some(path), _) => (path.display().to_string(), read_diagram(&path)?),
        (None, Some(b)) => {
            let n = match b {
                BuiltinDiagram::Fig1 => "fig1",
                BuiltinDiagram::Fig2 => "fig2",
                BuiltinDiagram::Fig3 => "fig3",
            };
            (
                n.to_string(),
                builtin_diagram(n).map_err(|e| CliError::field("builtin", e))?,
            )
        }
        (None, None) => return Err(CliError::Usage("need --file or --builtin".into())),
    };
    let file = DiagramFile::from_diagram(&d);
    if emit {
        let mut text = serde_json::to_string_pretty(&file).expect("diagram serializes");
        text.push('\n');
        return Ok(CommandResult::checked(
            true,
            text,
            format!("{name}: emitted"),
        ));
    }
    let r = check_conservation(&d, &SpeciesWeights::default());
    let doc = json!({
        "command": "diagram",
        "name": name,
        "diagram": file,
        "vertices": r.vertices.iter().map(|v| json!({
            "id": v.id,
            "kind": v.kind.as_str(),
            "incoming": v.incoming,
            "outgoing": v.outgoing,
            "residual": v.residual(),
        })).collect::<Vec<_>>(),
        "max_residual": r.max_residual(),
        "balanced": r.balanced(),
    });
    let summary = if r.balanced() {
        format!("{name}: all {} vertices balanced", r.vertices.len())
    } else {
        let bad: Vec<&str> = r.violations().map(|v| v.id.as_str()).collect();
        format!("{name}: unbalanced at {}", bad.join(", "))
    };
    Ok(CommandResult::json(r.balanced(), &doc, summary))
}

/// Superalgebra tolerance (exact identities absolute, intertwining relative).
pub const ALGEBRA_TOL: f64 = 1e-12;

fn susy_cmd(a: &SusyArgs) -> Result<CommandResult, CliError> {
    let name = match a.potential {
        Potential::Linear => "linear",
        Potential::Tanh => "tanh",
        Potential::Cubic => "cubic",
        Potential::Zero => "zero",
    };
    let v = Superpotential::from_name(name, a.param).map_err(|e| CliError::field("param", e))?;
    let (lo, hi) = v.default_domain();
    let grid = Grid::new(a.x_min.unwrap_or(lo), a.x_max.unwrap_or(hi), a.n)
        .map_err(|e| CliError::field("grid", e))?;
    let mut model = build_model(&v, grid).map_err(|e| CliError::field("potential", e))?;
    if let Some(t) = a.zero_tol {
        model = model.with_zero_mode_tol(t);
    }
    if let Some(t) = a.pairing_tol {
        model = model.with_pairing_tol(t);
    }
    let pairing = pair_spectra(&model, a.levels).map_err(|e| CliError::field("levels", e))?;
    let algebra = check_superalgebra(&model).map_err(|e| CliError::field("potential", e))?;
    let passed = pairing.passes() && algebra.passes(ALGEBRA_TOL);
    let summary = format!(
        "{name} n={}: {} pairs, max gap {:.3e}, {} zero mode(s), algebra max {:.3e} exact / {:.3e} relative",
        a.n,
        pairing.pairs.len(),
        pairing.max_gap(),
        pairing.zero_modes.len(),
        algebra.max_exact(),
        algebra.max_intertwining_relative()
    );
    if a.format == Format::Csv {
        return Ok(CommandResult::checked(
            passed,
            pairing_csv(&pairing),
            summary,
        ));
    }
    let doc = json!({
        "command": "susy",
        "potential": name,
        "grid": { "x_min": grid.x_min, "x_max": grid.x_max, "n": grid.n, "dx": grid.dx() },
        "levels0": pairing.levels0,
        "levels1": pairing.levels1,
        "pairs": pairing.pairs.iter().map(|&(e0, e1)| json!({"e0": e0, "e1": e1, "gap": (e0 - e1).abs()})).collect::<Vec<_>>(),
        "zero_modes": pairing.zero_modes.iter().map(|&(s, e)| json!({"sector": s, "energy": e})).collect::<Vec<_>>(),
        "max_gap": pairing.max_gap(),
        "zero_mode_tol": pairing.zero_mode_tol,
        "pairing_tol": pairing.pairing_tol,
        "superalgebra": {
            "q_plus_squared": algebra.q_plus_squared,
            "q_minus_squared": algebra.q_minus_squared,
            "q_squared_minus_h": algebra.q_squared_minus_h,
            "anticommutator_minus_h": algebra.anticommutator_minus_h,
            "s_h_commutator": algebra.s_h_commutator,
            "s_q_anticommutator": algebra.s_q_anticommutator,
            "transpose_deviation": algebra.transpose_deviation,
            "intertwining_plus": algebra.intertwining_plus,
            "intertwining_minus": algebra.intertwining_minus,
            "h_q_commutator": algebra.h_q_commutator,
            "product_scale": algebra.product_scale,
        },
        "passed": passed,
    });
    Ok(CommandResult::json(passed, &doc, summary))
}

/// Largest tolerated `| |phi| - 1 |` during a run.
pub const CONSTRAINT_TOL: f64 = 1e-10;

fn sigma_cmd(a: &SigmaArgs) -> Result<CommandResult, CliError> {
    let field = match a.preset {
        Preset::Uniform => LatticeField::uniform(a.sites, a.dx, a.dt),
        Preset::Wave => LatticeField::spin_wave(a.sites, a.dx, a.dt, a.k, a.amplitude, a.traveling),
        Preset::Random => LatticeField::random(a.sites, a.dx, a.dt, a.speed, a.seed),
    };
    let mut field = field.map_err(|e| CliError::field("preset", e))?;
    let rows = evolve(&mut field, a.steps, a.every);
    let worst = rows
        .iter()
        .map(|r| r.constraint_residual.max(r.tangency_residual))
        .fold(0.0, f64::max);
    let passed = worst <= CONSTRAINT_TOL;
    let (e0, e1) = (rows[0].energy, rows[rows.len() - 1].energy);
    let summary = format!(
        "{} steps, energy {e0:.9} -> {e1:.9}, max constraint residual {worst:.3e}",
        a.steps
    );
    if a.format == Format::Csv {
        return Ok(CommandResult::checked(passed, series_csv(&rows), summary));
    }
    let doc = json!({
        "command": "sigma",
        "sites": a.sites, "dx": a.dx, "dt": a.dt, "steps": a.steps,
        "series": rows.iter().map(|r| json!({
            "step": r.step, "time": r.time, "energy": r.energy, "momentum": r.momentum,
            "constraint_residual": r.constraint_residual, "tangency_residual": r.tangency_residual,
        })).collect::<Vec<_>>(),
        "max_constraint_residual": worst,
        "passed": passed,
    });
    Ok(CommandResult::json(passed, &doc, summary))
}

fn decohere_cmd(
    t: f64,
    tau: f64,
    state: Option<PathBuf>,
    antiqubit: bool,
) -> Result<CommandResult, CliError> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let q = load_qubit(
        state,
        QubitState::new(c64(h, 0.0), c64(h, 0.0)).expect("normalized"),
    )?;
    let p = DecoherenceParams::new(t, tau).map_err(|e| CliError::field("tau", e))?;
    let rho = if antiqubit {
        antiqubit_density(&q)
    } else {
        density_of(&q)
    };
    let out = decohere(&rho, p).map_err(|e| CliError::field("state", e))?;
    let doc = json!({
        "command": "decohere",
        "t": t,
        "tau": tau,
        "antiqubit": antiqubit,
        "envelope": p.envelope(),
        "input": matrix_json(rho.matrix()),
        "output": matrix_json(out.matrix()),
    });
    Ok(CommandResult::json(
        true,
        &doc,
        format!("off-diagonals scaled by {:.6}", p.envelope()),
    ))
}

fn bound_cmd(area: f64) -> Result<CommandResult, CliError> {
    let bits = holographic_bound_bits(area).map_err(|e| CliError::field("area", e))?;
    let doc = json!({
        "command": "bound",
        "area_m2": area,
        "planck_length_sq_m2": planck_length_sq(),
        "bits": bits,
    });
    Ok(CommandResult::json(
        true,
        &doc,
        format!("at most {bits:.6e} bits"),
    ))
}

/// Seed for the rotated triples in `selfcheck`.
const SELFCHECK_SEED: u64 = 20;

fn selfcheck_cmd() -> Result<CommandResult, CliError> {
    let core = |e| CliError::field("selfcheck", e);
    let mut suites = Vec::new();
    let mut push = |name: &str, deviation: f64, tol: f64| {
        suites.push((name.to_string(), deviation, tol));
    };
    push(
        "clifford",
        check_clifford(&GammaRep::standard()).max_deviation,
        0.0,
    );
    push(
        "qubit_field_algebra",
        check_qubit_field_algebra(&pauli_triple()).max_deviation,
        0.0,
    );
    let mut rng = seeded_rng(SELFCHECK_SEED);
    let rotated = (0..20)
        .map(|_| {
            let u = random_unitary(&mut rng, 2);
            let triple = pauli_triple().map(|p| &(&u * &p) * &u.adjoint());
            check_qubit_field_algebra(&triple).max_deviation
        })
        .fold(0.0, f64::max);
    push("qubit_field_algebra_rotated", rotated, 1e-12);
    for v in [
        Superpotential::Linear { slope: 1.0 },
        Superpotential::Tanh,
        Superpotential::Cubic { c: 1.0 },
        Superpotential::Zero,
    ] {
        let (lo, hi) = v.default_domain();
        let m = build_model(&v, Grid::new(lo, hi, 128).map_err(core)?).map_err(core)?;
        let r = check_superalgebra(&m).map_err(core)?;
        push(&format!("superalgebra_exact_{v}"), r.max_exact(), 0.0);
        push(
            &format!("superalgebra_intertwining_{v}"),
            r.max_intertwining_relative(),
            ALGEBRA_TOL,
        );
    }
    let s = sqrt_not().map_err(core)?;
    push("sqrt_not_unitary", s.unitarity_deviation, ALGEBRA_TOL);
    push("sqrt_not_square", s.square_minus_not, 0.0);
    let passed = suites.iter().all(|(_, d, t)| d <= t);
    let failed: Vec<&str> = suites
        .iter()
        .filter(|(_, d, t)| d > t)
        .map(|(n, _, _)| n.as_str())
        .collect();
    let doc = json!({
        "command": "selfcheck",
        "support_cutoff": DEFAULT_SUPPORT_CUTOFF,
        "suites": suites.iter().map(|(n, d, t)| json!({
            "name": n, "max_deviation": d, "tolerance": t, "passed": d <= t,
        })).collect::<Vec<_>>(),
        "passed": passed,
    });
    let summary = if passed {
        format!("all {} suites passed", suites.len())
    } else {
        format!("failed: {}", failed.join(", "))
    };
    Ok(CommandResult::json(passed, &doc, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CommandResult {
        run(std::iter::once("qft-infocalc").chain(args.iter().copied()))
    }

    #[test]
    fn bell_conditional() {
        let r = run_args(&["conditional", "--builtin", "bell"]);
        assert_eq!(r.exit_code, 0, "{}", r.summary);
        let v: Value = serde_json::from_str(&r.output).unwrap();
        assert!((v["value"].as_f64().unwrap() + 1.0).abs() < 1e-10);
        assert!(v["operator_form"].is_null());
    }

    #[test]
    fn bits_parsing() {
        assert_eq!(parse_bits("10").unwrap(), (1, 0));
        assert!(parse_bits("1").is_err());
        assert!(parse_bits("12").is_err());
        assert!(parse_bits("100").is_err());
    }

    #[test]
    fn unknown_subcommand_is_input_error() {
        assert_eq!(run_args(&["frobnicate"]).exit_code, 2);
        assert_eq!(run_args(&["bound", "--area", "-1"]).exit_code, 2);
        assert_eq!(run_args(&["entropy"]).exit_code, 2);
    }

    #[test]
    fn help_exits_zero() {
        let r = run_args(&["--help"]);
        assert_eq!(r.exit_code, 0);
        assert!(r.output.contains("selfcheck"));
    }
}
