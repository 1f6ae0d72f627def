// SPDX-License-Identifier: Apache-2.0

//! Command-line interface for the matrix-matrix exponentiation toolkit.
//!
//! Exit codes: 0 on success, 1 on domain/parse/compute errors, 2 on usage
//! errors.

use mmexp::conditioning::{exact_cond, power_method_estimate, DEFAULT_MAX_ITER, DEFAULT_TOL};
use mmexp::experiment::{run_experiment, GallerySpec};
use mmexp::frechet::frechet_mmexp;
use mmexp::gallery::gallery;
use mmexp::linalg::ComplexMatrix;
use mmexp::matfun::validate_domain;
use mmexp::mmexp::{mm_exp, MatrixPair};
use mmexp::mtx::{format_g17, read_matrix, render_matrix, write_matrix};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const USAGE: &str = "\
usage: mmexp <command> [options]

commands:
  compute    --a <path> --b <path> [--out <path>]
             compute A^B and write it (Matrix Market) or print to stdout
  frechet    --a <path> --b <path> --e <path> --f <path> [--out <path>]
             Frechet derivative of A^B in direction (E, F)
  cond       --a <path> --b <path> [--tol 1e-1] [--max-iter 20] [--exact] [--json]
             power-method condition-number estimate (exact oracle with --exact)
  experiment [--seed 42] [--tol 1e-1] --out <prefix>
             run the default ten-pair study; writes <prefix>.csv and <prefix>.json
  gallery    --name <label> --n <int> [--seed 42] --out <path>
             write a gallery matrix (lehmer, hilbert, cauchy, minij,
             condex-like, randc, randshift)
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            eprint!("{USAGE}");
            ExitCode::from(2)
        }
        Err(CliError::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

enum CliError {
    /// Bad invocation: unknown command/flag, missing value.
    Usage(String),
    /// The invocation was fine but the work failed.
    Run(mmexp::Error),
}

impl From<mmexp::Error> for CliError {
    fn from(e: mmexp::Error) -> Self {
        CliError::Run(e)
    }
}

fn run(args: &[String]) -> Result<(), CliError> {
    let Some(command) = args.first() else {
        return Err(CliError::Usage(String::new()));
    };
    let flags = Flags::parse(&args[1..])?;
    match command.as_str() {
        "compute" => cmd_compute(&flags),
        "frechet" => cmd_frechet(&flags),
        "cond" => cmd_cond(&flags),
        "experiment" => cmd_experiment(&flags),
        "gallery" => cmd_gallery(&flags),
        other => Err(CliError::Usage(format!("unknown command `{other}`"))),
    }
}

/// Parsed `--flag value` pairs plus boolean switches.
struct Flags {
    values: Vec<(String, String)>,
    switches: Vec<String>,
}

impl Flags {
    fn parse(args: &[String]) -> Result<Self, CliError> {
        const SWITCHES: [&str; 2] = ["--exact", "--json"];
        const VALUED: [&str; 10] =
            ["--a", "--b", "--e", "--f", "--out", "--tol", "--max-iter", "--seed", "--name", "--n"];
        let mut values = Vec::new();
        let mut switches = Vec::new();
        let mut it = args.iter();
        while let Some(arg) = it.next() {
            if VALUED.contains(&arg.as_str()) {
                let Some(v) = it.next() else {
                    return Err(CliError::Usage(format!("flag `{arg}` needs a value")));
                };
                values.push((arg.clone(), v.clone()));
            } else if SWITCHES.contains(&arg.as_str()) {
                switches.push(arg.clone());
            } else {
                return Err(CliError::Usage(format!("unknown flag `{arg}`")));
            }
        }
        Ok(Flags { values, switches })
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.values.iter().rev().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }

    fn require(&self, name: &str) -> Result<&str, CliError> {
        self.get(name).ok_or_else(|| CliError::Usage(format!("missing required flag `{name}`")))
    }

    fn has(&self, name: &str) -> bool {
        self.switches.iter().any(|s| s == name)
    }

    fn parse_f64(&self, name: &str, default: f64) -> Result<f64, CliError> {
        match self.get(name) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| CliError::Usage(format!("flag `{name}` expects a number, got `{v}`"))),
        }
    }

    fn parse_usize(&self, name: &str, default: usize) -> Result<usize, CliError> {
        match self.get(name) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| {
                CliError::Usage(format!("flag `{name}` expects an integer, got `{v}`"))
            }),
        }
    }

    fn parse_u64(&self, name: &str, default: u64) -> Result<u64, CliError> {
        match self.get(name) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| {
                CliError::Usage(format!("flag `{name}` expects an integer, got `{v}`"))
            }),
        }
    }
}

fn read_square(path: &str) -> Result<ComplexMatrix, CliError> {
    let m = read_matrix(Path::new(path))?;
    if !m.is_square() {
        return Err(CliError::Run(mmexp::Error::ShapeMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{} in {path}", m.rows(), m.cols()),
        }));
    }
    Ok(m)
}

fn emit(result: &ComplexMatrix, out: Option<&str>) -> Result<(), CliError> {
    match out {
        Some(path) => write_matrix(Path::new(path), result)?,
        None => print!("{}", render_matrix(result)),
    }
    Ok(())
}

fn load_pair(flags: &Flags) -> Result<MatrixPair, CliError> {
    let a = read_square(flags.require("--a")?)?;
    let b = read_square(flags.require("--b")?)?;
    let checked = validate_domain(&a)?;
    Ok(MatrixPair::new(checked, b)?)
}

fn cmd_compute(flags: &Flags) -> Result<(), CliError> {
    let pair = load_pair(flags)?;
    let result = mm_exp(&pair)?;
    emit(&result, flags.get("--out"))
}

fn cmd_frechet(flags: &Flags) -> Result<(), CliError> {
    let a = read_square(flags.require("--a")?)?;
    let b = read_square(flags.require("--b")?)?;
    let e = read_square(flags.require("--e")?)?;
    let f = read_square(flags.require("--f")?)?;
    let checked = validate_domain(&a)?;
    let result = frechet_mmexp(&checked, &b, &e, &f)?;
    emit(&result, flags.get("--out"))
}

fn cmd_cond(flags: &Flags) -> Result<(), CliError> {
    let pair = load_pair(flags)?;
    let tol = flags.parse_f64("--tol", DEFAULT_TOL)?;
    let max_iter = flags.parse_usize("--max-iter", DEFAULT_MAX_ITER)?;
    let report = power_method_estimate(&pair, tol, max_iter, None)?;
    let exact = if flags.has("--exact") { Some(exact_cond(&pair)?) } else { None };

    if flags.has("--json") {
        let gammas: Vec<String> = report.gammas.iter().map(|g| format_g17(*g)).collect();
        println!("{{");
        println!("  \"estimate_opnorm\": {},", format_g17(report.estimate_opnorm));
        println!("  \"kappa\": {},", format_g17(report.kappa));
        println!("  \"gammas\": [{}],", gammas.join(", "));
        println!("  \"iterations\": {},", report.iterations);
        println!("  \"converged\": {},", report.converged);
        println!("  \"upper_bound\": {},", format_g17(report.upper_bound));
        println!("  \"tol\": {},", format_g17(report.tol));
        match &exact {
            Some(ex) => {
                let sigma = ex.exact_opnorm.unwrap_or(ex.estimate_opnorm);
                let rel =
                    if ex.kappa > 0.0 { (report.kappa - ex.kappa).abs() / ex.kappa } else { 0.0 };
                println!("  \"exact_opnorm\": {},", format_g17(sigma));
                println!("  \"kappa_exact\": {},", format_g17(ex.kappa));
                println!("  \"rel_error\": {}", format_g17(rel));
            }
            None => {
                println!("  \"exact_opnorm\": null,");
                println!("  \"kappa_exact\": null,");
                println!("  \"rel_error\": null");
            }
        }
        println!("}}");
    } else {
        println!("estimate ||L_f||_F : {}", format_g17(report.estimate_opnorm));
        println!("kappa_f (estimate) : {}", format_g17(report.kappa));
        println!("iterations         : {}", report.iterations);
        println!("converged          : {}", report.converged);
        println!("upper bound        : {}", format_g17(report.upper_bound));
        if let Some(ex) = &exact {
            let rel =
                if ex.kappa > 0.0 { (report.kappa - ex.kappa).abs() / ex.kappa } else { 0.0 };
            println!("kappa_f (exact)    : {}", format_g17(ex.kappa));
            println!("rel error          : {}", format_g17(rel));
        }
    }
    Ok(())
}

fn cmd_experiment(flags: &Flags) -> Result<(), CliError> {
    let seed = flags.parse_u64("--seed", 42)?;
    let tol = flags.parse_f64("--tol", DEFAULT_TOL)?;
    let out = PathBuf::from(flags.require("--out")?);
    let spec = GallerySpec::default_ten_pairs(seed);
    let records = run_experiment(&spec, tol, Some(&out))?;
    for r in &records {
        match &r.error {
            None => println!(
                "{}: n={} kappa_est={} kappa_exact={} rel_error={} iterations={}",
                r.pair_id,
                r.n,
                format_g17(r.kappa_estimate),
                format_g17(r.kappa_exact),
                format_g17(r.rel_error),
                r.iterations
            ),
            Some(e) => println!("{}: FAILED ({e})", r.pair_id),
        }
    }
    println!(
        "wrote {} and {}",
        out.with_extension("csv").display(),
        out.with_extension("json").display()
    );
    Ok(())
}

fn cmd_gallery(flags: &Flags) -> Result<(), CliError> {
    let name = flags.require("--name")?;
    let n_str = flags.require("--n")?;
    let n: usize = n_str
        .parse()
        .map_err(|_| CliError::Usage(format!("flag `--n` expects an integer, got `{n_str}`")))?;
    let seed = flags.parse_u64("--seed", 42)?;
    let out = flags.require("--out")?;
    let matrix = gallery(name, n, seed)?;
    write_matrix(Path::new(out), &matrix)?;
    Ok(())
}
