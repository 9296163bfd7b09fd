mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use multiport::lift::apply_mode_unitary;
use multiport::scissors::{fidelity, run_scissors, solve_balanced, EprResource, ScissorsInput};
use multiport::su2::{multiplet_label, su2_adjoint};
use multiport::su3::{enumerate_multiplet, su3_adjoint, su3_euler, t3_y_label, EulerAngles, MultipletLabel3};
use multiport::{selfcheck, Complex64, Occupation};
use num_complex::Complex;
use serde::Serialize;
use serde_json::json;

use io::{emit, format_complex, parse_complex, read_state, read_unitary, CliResult, Failure};

/// Exact few-photon linear optics: Fock-space lifts, SU(2)/SU(3) multiplets
/// and the three-state quantum scissors.
#[derive(Parser)]
#[command(name = "multiport", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a mode unitary to a state file.
    Apply {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        /// First mode the unitary acts on.
        #[arg(long, default_value_t = 0)]
        offset: usize,
    },
    /// Two-mode (beam splitter) algebra.
    #[command(subcommand)]
    Su2(Su2Command),
    /// Three-mode (tritter) algebra.
    #[command(subcommand)]
    Su3(Su3Command),
    /// Quantum scissors teleportation.
    #[command(subcommand)]
    Scissors(ScissorsCommand),
    /// Run the built-in invariant checks.
    Selfcheck,
}

#[derive(Subcommand)]
enum Su2Command {
    /// (l, l3) of the occupation |n, m>.
    Label {
        n: u32,
        m: u32,
    },
    /// 3x3 rotation induced by a 2x2 unitary.
    Adjoint {
        matrix: PathBuf,
    },
}

#[derive(Subcommand)]
enum Su3Command {
    /// (t3, y) and multiplet of the occupation |n, l, m>.
    Label {
        n: u32,
        l: u32,
        m: u32,
    },
    /// All states of the (n, 0) multiplet.
    Multiplet {
        #[arg(long)]
        n: u32,
    },
    /// Special unitary from eight Euler angles.
    Euler {
        /// alpha,beta,gamma,theta,a,b,c,phi
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        angles: Vec<f64>,
    },
    /// 8x8 rotation induced by a 3x3 unitary.
    Adjoint {
        matrix: PathBuf,
    },
}

#[derive(Subcommand)]
enum ScissorsCommand {
    /// Outcome table for one configuration.
    Run {
        /// a0,a1,a2 as re+imj
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        input: Vec<String>,
        /// c-1,c0,c1 as re+imj
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        epr: Vec<String>,
        /// Beam-splitter matrix file.
        #[arg(long)]
        bs: PathBuf,
    },
    /// Find a beam splitter and resource giving equal coincidence coefficients.
    Solve {
        /// Common coefficient value; 1/3 is the balanced point.
        #[arg(long, default_value_t = 1.0 / 3.0)]
        target: f64,
    },
}

#[derive(Serialize)]
struct Label3Row {
    occ: Occupation,
    t3: f64,
    y: f64,
    t3_exact: String,
    y_exact: String,
    multiplet: (u32, u32),
}

impl Label3Row {
    fn new(occ: Occupation, label: MultipletLabel3) -> Self {
        Label3Row {
            occ,
            t3: label.t3.to_f64(),
            y: *label.y.numer() as f64 / *label.y.denom() as f64,
            t3_exact: label.t3.to_string(),
            y_exact: label.y.to_string(),
            multiplet: label.multiplet,
        }
    }
}

fn triple(values: &[String]) -> CliResult<[Complex64; 3]> {
    let parsed: Vec<Complex64> = values.iter().map(|s| parse_complex(s)).collect::<Result<_, _>>().map_err(Failure::Usage)?;
    parsed.try_into().map_err(|_| Failure::Usage("expected three comma-separated amplitudes".into()))
}

fn complex_list(values: &[Complex64]) -> Vec<String> {
    values.iter().copied().map(format_complex).collect()
}

fn rows_of(m: impl Fn(usize, usize) -> f64, n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|r| (0..n).map(|c| m(r, c)).collect()).collect()
}

fn run(cli: Cli) -> CliResult<()> {
    let output = cli.output.as_ref();
    match cli.command {
        Command::Apply { state, matrix, offset } => {
            let state = read_state(&state)?;
            let u = read_unitary(&matrix)?;
            emit(&apply_mode_unitary(&u, &state, offset)?, output)
        }
        Command::Su2(Su2Command::Label { n, m }) => {
            let label = multiplet_label(&Occupation::from([n, m]))?;
            emit(&json!({ "l": label.l.to_f64(), "l3": label.l3.to_f64() }), output)
        }
        Command::Su2(Su2Command::Adjoint { matrix }) => {
            let o = su2_adjoint(&read_unitary(&matrix)?)?;
            emit(&json!({ "dim": 3, "rows": rows_of(|r, c| o[(r, c)], 3) }), output)
        }
        Command::Su3(Su3Command::Label { n, l, m }) => {
            let occ = Occupation::from([n, l, m]);
            let label = t3_y_label(&occ)?;
            emit(&Label3Row::new(occ, label), output)
        }
        Command::Su3(Su3Command::Multiplet { n }) => {
            let rows: Vec<Label3Row> =
                enumerate_multiplet(n).into_iter().map(|(occ, label)| Label3Row::new(occ, label)).collect();
            emit(&json!({ "n": n, "multiplet": [n, 0], "rows": rows }), output)
        }
        Command::Su3(Su3Command::Euler { angles }) => {
            let angles: [f64; 8] =
                angles.try_into().map_err(|_| Failure::Usage("expected eight comma-separated angles".into()))?;
            emit(&su3_euler(&EulerAngles::from_array(angles))?, output)
        }
        Command::Su3(Su3Command::Adjoint { matrix }) => {
            let r = su3_adjoint(&read_unitary(&matrix)?)?;
            emit(&json!({ "dim": 8, "rows": rows_of(|i, j| r[(i, j)], 8) }), output)
        }
        Command::Scissors(ScissorsCommand::Run { input, epr, bs }) => {
            let [a0, a1, a2] = triple(&input)?;
            let [c0, c1, c2] = triple(&epr)?;
            let input = ScissorsInput::new(a0, a1, a2)?;
            let epr = EprResource::new(c0, c1, c2)?;
            let bs = read_unitary(&bs)?;
            let outcomes: Vec<_> = run_scissors(&input, &epr, &bs)?
                .into_iter()
                .map(|r| {
                    json!({
                        "detectors": [r.detectors.0, r.detectors.1],
                        "probability": r.probability,
                        "l": r.label.l.to_f64(),
                        "l3": r.label.l3.to_f64(),
                        "conditional": r.conditional,
                    })
                })
                .collect();
            emit(
                &json!({
                    "input": { "amplitudes": complex_list(&input.amplitudes()), "renormalized": input.renormalized() },
                    "epr": { "coefficients": complex_list(&epr.coefficients()), "renormalized": epr.renormalized() },
                    "outcomes": outcomes,
                }),
                output,
            )
        }
        Command::Scissors(ScissorsCommand::Solve { target }) => {
            let config = solve_balanced(target)?;
            let one = Complex::new(1.0, 0.0);
            let zero = Complex::new(0.0, 0.0);
            let mut checks = Vec::new();
            let mut min_fidelity = f64::INFINITY;
            let mut p11 = 0.0;
            for a in [[one, zero, zero], [zero, one, zero], [zero, zero, one]] {
                let input = ScissorsInput::new(a[0], a[1], a[2])?;
                let records = run_scissors(&input, &config.epr, &config.bs)?;
                let hit = records.iter().find(|r| r.is_coincidence()).expect("coincidence is always reported");
                let f = if hit.probability > 0.0 { fidelity(&input.state(), &hit.conditional)? } else { 0.0 };
                min_fidelity = min_fidelity.min(f);
                p11 = hit.probability;
                checks.push(json!({ "input": complex_list(&a), "p11": hit.probability, "fidelity": f }));
            }
            emit(
                &json!({
                    "target": target,
                    "theta": config.theta,
                    "phi": config.phi,
                    "transmissivity": config.theta.cos().powi(2),
                    "bs": config.bs,
                    "epr": complex_list(&config.epr.coefficients()),
                    "achieved": complex_list(&config.achieved),
                    "residual": config.residual,
                    "verification": { "p11": p11, "min_fidelity": min_fidelity, "basis_inputs": checks },
                }),
                output,
            )
        }
        Command::Selfcheck => {
            let checks = selfcheck::run_all();
            let passed = checks.iter().all(|c| c.passed);
            let rows: Vec<_> =
                checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect();
            emit(&json!({ "passed": passed, "checks": rows }), output)?;
            if passed {
                Ok(())
            } else {
                let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
                Err(Failure::Invalid(format!("failed checks: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
