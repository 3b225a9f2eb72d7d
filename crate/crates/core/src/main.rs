use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::json;

use ldikit::{
    canonicalize, detection_distance, format_code_file, format_pauli_string, min_entanglement,
    parse_code_file, prime_scan, rates, threshold, transform_with, verify, verify_output, CodeSpec,
    Error, MagnitudeMode, PrimeModulus,
};

/// Exit codes: 0 success, 1 verification or validation failure, 2 parse
/// errors (bad files, bad headers, composite moduli).
#[derive(Parser)]
#[command(
    name = "ldikit",
    version,
    about = "Analyze qudit stabilizer and entanglement-assisted codes, and re-target their local dimension"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Generator matrix file.
    file: PathBuf,
    /// Machine-readable output with a stable layout.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Code parameters, entanglement count, and codeword count.
    Info {
        #[command(flatten)]
        common: Common,
        /// Read the generators at this prime instead of the header q.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Bring the generators to the identity-led form, with a step log.
    Canonical {
        #[command(flatten)]
        common: Common,
        /// Write the canonical generators to this file.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Lift the code to integer generators that commute at a new prime.
    Transform {
        #[command(flatten)]
        common: Common,
        /// Target prime (must differ from the header q).
        #[arg(long = "to-p")]
        to_p: u64,
        /// Re-center the lift coefficients to shrink entry magnitudes.
        #[arg(long)]
        minimize: bool,
        /// Write the lifted generators to this file.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Re-check a lifted generator file: mod-q preservation, mod-p
    /// commutation, and the shape of the added block.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Prime the lifted generators must commute at.
        #[arg(long)]
        p: u64,
    },
    /// Brute-force detection distance.
    Distance {
        #[command(flatten)]
        common: Common,
        /// Evaluate at this prime instead of the header q.
        #[arg(long)]
        p: Option<u64>,
        /// Stop the search at this error weight (default n).
        #[arg(long = "max-weight")]
        max_weight: Option<usize>,
    },
    /// Entry bound B and the distance-preservation threshold p*.
    Bounds {
        #[command(flatten)]
        common: Common,
        /// Distance to evaluate p* at (default: the declared d).
        #[arg(long)]
        distance: Option<u64>,
    },
    /// Entanglement-assisted, trade-off, and catalytic rates.
    Rates {
        #[command(flatten)]
        common: Common,
        /// Evaluate at this prime instead of the header q.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Transform and re-check the code across several primes.
    Scan {
        #[command(flatten)]
        common: Common,
        /// Comma-separated target primes.
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        /// Distance search cap per prime (default n).
        #[arg(long = "max-weight")]
        max_weight: Option<usize>,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> ExitCode {
    match e {
        Error::SyntaxError { .. }
        | Error::HeaderMismatch(_)
        | Error::NonPrimeModulus(_)
        | Error::ModulusTooLarge(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn load(path: &PathBuf) -> Result<CodeSpec, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::SyntaxError {
        line: 0,
        column: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_code_file(&text)
}

fn write_out(path: &PathBuf, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|e| Error::SyntaxError {
        line: 0,
        column: 0,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn emit(json_mode: bool, value: &serde_json::Value, text: String) {
    if json_mode {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("valid json")
        );
    } else {
        print!("{text}");
    }
}

fn matrix_lines(m: &ldikit::Mat) -> String {
    let n = m.cols() / 2;
    (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let half = |s: &[i64]| {
                s.iter()
                    .map(|e| format!("{e:>3}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            format!("  {} | {}\n", half(&row[..n]), half(&row[n..]))
        })
        .collect()
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Info { common, p } => {
            let code = view(load(&common.file)?, p)?;
            let rep = min_entanglement(&code)?;
            let (n, k, c) = (code.n(), code.k(), rep.c);
            let logical = (n + c).saturating_sub(k);
            let codewords = BigUint::from(code.q().value()).pow(logical as u32);
            let value = json!({
                "q": code.q().value(),
                "n": n,
                "k": k,
                "c": c,
                "s": rep.s,
                "logical_qudits": logical,
                "codewords": codewords.to_string(),
                "declared_c": code.declared_c,
                "declared_d": code.declared_d,
                "noncommuting_pairs": rep.noncommuting_pairs,
            });
            let mut text = format!(
                "[[{}, {}, {}; {}]]_{}  (k = {} generators, s = {} commuting)\n",
                n,
                logical,
                code.declared_d.map_or("?".to_string(), |d| d.to_string()),
                c,
                code.q(),
                k,
                rep.s
            );
            text.push_str(&format!("codewords: {codewords}\n"));
            if !rep.noncommuting_pairs.is_empty() {
                text.push_str("noncommuting pairs (i, j, product):\n");
                for (i, j, v) in &rep.noncommuting_pairs {
                    text.push_str(&format!("  ({i}, {j}) -> {v}\n"));
                }
            }
            emit(common.json, &value, text);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Canonical { common, out } => {
            let code = load(&common.file)?;
            let canon = canonicalize(&code)?;
            if let Some(path) = &out {
                write_out(path, &format_code_file(canon.code()))?;
            }
            let value = json!({
                "q": canon.code().q().value(),
                "matrix": canon.code().matrix(),
                "x2": canon.x2(),
                "z1": canon.z1(),
                "z2": canon.z2(),
                "log": canon.log(),
            });
            let mut text = String::from("canonical generators:\n");
            text.push_str(&matrix_lines(canon.code().matrix()));
            text.push_str(&format!(
                "log ({} steps): {}\n",
                canon.log().steps().len(),
                serde_json::to_string(canon.log()).expect("valid json")
            ));
            emit(common.json, &value, text);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Transform {
            common,
            to_p,
            minimize,
            out,
        } => {
            let code = load(&common.file)?;
            let p = PrimeModulus::new(to_p)?;
            let mode = if minimize {
                MagnitudeMode::Minimize
            } else {
                MagnitudeMode::Exact
            };
            let result = transform_with(&code, p, mode)?;
            let report = verify(&result);
            if let Some(path) = &out {
                let lifted = CodeSpec::new_unbounded(code.q(), code.n(), result.output.row_vecs())?;
                write_out(path, &format_code_file(&lifted))?;
            }
            let value = json!({
                "q": code.q().value(),
                "p": to_p,
                "label": result.label,
                "l": result.l,
                "output": result.output,
                "decomposition": result.decomposition,
                "log": result.source.log(),
                "verification": report,
            });
            let mut text = format!(
                "lift to p = {to_p} ({})\n",
                serde_json::to_string(&result.label).expect("valid json")
            );
            text.push_str(&matrix_lines(&result.output));
            text.push_str(&format!(
                "verification: mod-q preserved = {}, commutes mod p = {}, L valid = {}, max entry = {}\n",
                report.mod_q_preserved,
                report.mod_p_commuting,
                report.l_valid,
                report.max_entry_observed
            ));
            emit(common.json, &value, text);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { common, p } => {
            let code = load(&common.file)?;
            let p = PrimeModulus::new(p)?;
            let report = verify_output(code.matrix(), code.q(), p)?;
            let value = json!({
                "q": code.q().value(),
                "p": p.value(),
                "report": report,
                "passed": report.passed(),
            });
            let text = format!(
                "mod-q preserved = {}, commutes mod p = {}, L valid = {}, max entry = {}\n{}\n",
                report.mod_q_preserved,
                report.mod_p_commuting,
                report.l_valid,
                report.max_entry_observed,
                if report.passed() { "PASS" } else { "FAIL" }
            );
            emit(common.json, &value, text);
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Distance {
            common,
            p,
            max_weight,
        } => {
            let code = load(&common.file)?;
            let p = match p {
                Some(v) => PrimeModulus::new(v)?,
                None => code.q(),
            };
            let cap = max_weight.unwrap_or(code.n());
            let report = detection_distance(code.matrix(), p, cap);
            let value = json!({
                "p": p.value(),
                "report": report,
                "witness_pauli": report.witness.as_ref().map(format_pauli_string),
            });
            let mut text = format!(
                "p = {p}: d_pure = {}, d = {}, distance = {}\n",
                opt(report.d_pure),
                opt(report.d),
                opt(report.distance())
            );
            if let Some(w) = &report.witness {
                text.push_str(&format!("witness: {} ({})\n", w, format_pauli_string(w)));
            }
            text.push_str(&format!(
                "degenerate = {}, cap_hit = {}\n",
                report.degenerate, report.cap_hit
            ));
            emit(common.json, &value, text);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bounds { common, distance } => {
            let code = load(&common.file)?;
            let d = distance.or(code.declared_d);
            let report = match d {
                Some(d) => threshold(&code, d),
                None => ldikit::entry_bound(&code),
            };
            let value = json!({ "bounds": report });
            let mut text = format!("B = {}\n", report.b);
            match (&report.p_star, report.d_used) {
                (Some(p_star), Some(d)) => {
                    text.push_str(&format!("p* = {p_star} at d = {d}\n"));
                    if d == 1 {
                        text.push_str("note: d = 1 makes the threshold vacuous (p* = 1 by the 0^0 = 1 convention)\n");
                    }
                }
                _ => text.push_str("p*: give --distance (no declared d in the file)\n"),
            }
            text.push_str(&format!("max |entry| = {}\n", report.max_entry_observed));
            emit(common.json, &value, text);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Rates { common, p } => {
            let code = view(load(&common.file)?, p)?;
            let rep = min_entanglement(&code)?;
            let r = rates(code.n(), code.k(), rep.c);
            let value = json!({
                "q": code.q().value(),
                "c": rep.c,
                "rates": r,
            });
            let text = format!(
                "entanglement-assisted rate: {}\ntrade-off rate: ({}, {})\ncatalytic rate: {}\n",
                r.ea, r.tradeoff.0, r.tradeoff.1, r.catalytic
            );
            emit(common.json, &value, text);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Scan {
            common,
            primes,
            max_weight,
        } => {
            let code = load(&common.file)?;
            let entries = prime_scan(&code, &primes, max_weight);
            let value = json!({ "scan": entries });
            let mut text = String::new();
            for e in &entries {
                match &e.error {
                    Some(err) => text.push_str(&format!("p = {:>4}: error: {err}\n", e.p)),
                    None => {
                        let v = e.verification.expect("present when no error");
                        text.push_str(&format!(
                            "p = {:>4}: verified = {}, distance = {}, preserved = {}\n",
                            e.p,
                            v.passed(),
                            opt(e.distance.as_ref().and_then(|d| d.distance())),
                            e.preserved.map_or("?".into(), |b| b.to_string()),
                        ));
                    }
                }
            }
            emit(common.json, &value, text);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn view(code: CodeSpec, p: Option<u64>) -> Result<CodeSpec, Error> {
    match p {
        Some(v) => code.reduced(PrimeModulus::new(v)?),
        None => {
            if code.is_unbounded() {
                code.reduced(code.q())
            } else {
                Ok(code)
            }
        }
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or("-".to_string(), |x| x.to_string())
}
