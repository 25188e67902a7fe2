use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uninorm::analysis::{
    check_axioms, decompose_with_tol, format_sig, verify_pointwise, Axiom, AxiomOutcome, AxiomReport,
    DECOMPOSE_GRID, DECOMPOSE_TOL,
};
use uninorm::extended_sum::Side;
use uninorm::Operator;

use crate::document::Document;
use crate::error::{exit, CliError};
use crate::render::rasterize;

/// Random triples drawn per `--seed` witness search.
pub const SEARCH_SAMPLES: usize = 20_000;

const DEFAULT_GRID: usize = 101;

#[derive(Debug, Parser)]
#[command(name = "uninorm", version, about = "Construct, evaluate and analyse uninorms from JSON documents")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Points per axis of the sampling grid.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Tolerance; defaults depend on the command and the construction.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write the report (or, for `render`, the output stem) here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for the randomized witness search.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print U(x, y) with 12 significant digits.
    Eval {
        spec: PathBuf,
        x: f64,
        y: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Write `<out>.csv` with grid values and `<out>.pgm` with the jump field.
    Render {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Recover an extended ordinal sum from the construction, used as a black box.
    Decompose {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Check the uninorm axioms on a grid; exits 1 when any fails.
    Axioms {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Largest pointwise difference between two constructions; exits 1 above `--tol`.
    Verify {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn build(path: &Path) -> Result<Operator, CliError> {
    Document::load(path)?.build()
}

fn check_unit(name: &str, value: f64) -> Result<f64, CliError> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(CliError::Schema(format!("{name} = {value} is outside [0, 1]")))
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Runs one command, writing its report to `--out` or to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<u8, CliError> {
    let (lines, code, out) = match cli.command {
        Command::Eval { spec, x, y, common } => {
            let op = build(&spec)?;
            let value = op.apply(check_unit("x", x)?, check_unit("y", y)?);
            (vec![format_sig(value)], exit::OK, common.out)
        }
        Command::Render { spec, common } => {
            let op = build(&spec)?;
            let stem = common.out.unwrap_or_else(|| PathBuf::from("render"));
            let lines = render(&op, common.grid.unwrap_or(DEFAULT_GRID), &stem)?;
            (lines, exit::OK, None)
        }
        Command::Decompose { spec, common } => {
            let op = build(&spec)?;
            let lines = decompose_report(
                &op,
                common.grid.unwrap_or(DECOMPOSE_GRID),
                common.tol.unwrap_or(DECOMPOSE_TOL),
            )?;
            (lines, exit::OK, common.out)
        }
        Command::Axioms { spec, common } => {
            let op = build(&spec)?;
            let tol = common.tol.unwrap_or_else(|| op.default_tolerance());
            let mut report = check_axioms(&op, common.grid.unwrap_or(DEFAULT_GRID), tol);
            if let Some(seed) = common.seed {
                random_search(&op, seed, SEARCH_SAMPLES, &mut report);
            }
            let code = if report.passed() { exit::OK } else { exit::CHECK_FAILED };
            (report.report_lines(), code, common.out)
        }
        Command::Verify { left, right, common } => {
            let (a, b) = (build(&left)?, build(&right)?);
            let tol = common
                .tol
                .unwrap_or_else(|| a.default_tolerance().max(b.default_tolerance()));
            let r = verify_pointwise(&a, &b, common.grid.unwrap_or(DEFAULT_GRID), tol);
            let line = format!(
                "max_diff={} witness={},{} left={} right={} tol={}",
                format_sig(r.max_diff),
                format_sig(r.witness.0),
                format_sig(r.witness.1),
                format_sig(r.left),
                format_sig(r.right),
                format_sig(tol)
            );
            let code = if r.passed() { exit::OK } else { exit::CHECK_FAILED };
            (vec![line], code, common.out)
        }
    };
    match out {
        Some(path) => {
            let mut file = create(&path)?;
            for line in &lines {
                writeln!(file, "{line}").map_err(io_error(&path))?;
            }
            file.flush().map_err(io_error(&path))?;
        }
        None => {
            for line in &lines {
                writeln!(stdout, "{line}").map_err(io_error(Path::new("<stdout>")))?;
            }
        }
    }
    Ok(code)
}

fn render(op: &Operator, grid_n: usize, stem: &Path) -> Result<Vec<String>, CliError> {
    let raster = rasterize(op, grid_n);
    let csv = stem.with_extension("csv");
    let pgm = stem.with_extension("pgm");
    let mut file = create(&csv)?;
    raster.write_csv(&mut file).map_err(io_error(&csv))?;
    file.flush().map_err(io_error(&csv))?;
    let mut file = create(&pgm)?;
    raster.write_pgm(&mut file).map_err(io_error(&pgm))?;
    file.flush().map_err(io_error(&pgm))?;
    Ok(vec![
        format!("csv={}", csv.display()),
        format!("pgm={} jump_pixels={}", pgm.display(), raster.jump_pixels()),
    ])
}

fn decompose_report(op: &Operator, grid_n: usize, tol: f64) -> Result<Vec<String>, CliError> {
    let result = decompose_with_tol(op, grid_n, tol).map_err(|e| match e {
        uninorm::Error::Residual { .. } => CliError::Residual(e),
        other => CliError::Analysis(other),
    })?;
    let base = result.spec.base();
    let mut lines = vec![format!(
        "neutral={} summands={} residual={} witness={},{}",
        format_sig(base.e()),
        base.summands().len(),
        format_sig(result.residual),
        format_sig(result.witness.0),
        format_sig(result.witness.1)
    )];
    for (k, (s, kind)) in base.summands().iter().zip(&result.summand_kinds).enumerate() {
        lines.push(format!(
            "summand={k} kind={kind} a={} b={} c={} d={} v={}",
            format_sig(s.a),
            format_sig(s.b),
            format_sig(s.c),
            format_sig(s.d),
            format_sig(base.v(k))
        ));
    }
    for (side, choices) in [(Side::G, result.spec.g()), (Side::H, result.spec.h())] {
        for (point, choice) in choices {
            let side = match side {
                Side::G => "g",
                Side::H => "h",
            };
            lines.push(format!("choice={side} point={} value={choice}", format_sig(*point)));
        }
    }
    Ok(lines)
}

/// Samples random points and folds any violation larger than the grid's
/// into `report`.
pub fn random_search(op: &Operator, seed: u64, samples: usize, report: &mut AxiomReport) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = op.neutral();
    let mut worst = |axiom: Axiom, value: f64, witness: (f64, f64, f64)| {
        let outcome: &mut AxiomOutcome = report
            .outcomes
            .iter_mut()
            .find(|o| o.axiom == axiom)
            .expect("every axiom is reported");
        if value > outcome.max_violation {
            outcome.max_violation = value;
            outcome.witness = witness;
        }
    };
    for _ in 0..samples {
        let (x, y, z): (f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen());
        worst(Axiom::Commutativity, (op.apply(x, y) - op.apply(y, x)).abs(), (x, y, 0.0));
        let assoc = (op.apply(op.apply(x, y), z) - op.apply(x, op.apply(y, z))).abs();
        worst(Axiom::Associativity, assoc, (x, y, z));
        let (lo, hi) = if y <= z { (y, z) } else { (z, y) };
        worst(Axiom::Monotonicity, op.apply(x, lo) - op.apply(x, hi), (x, lo, hi));
        worst(Axiom::Neutrality, (op.apply(e, x) - x).abs(), (e, x, 0.0));
    }
}
