//! `chowstab` command-line front end.
//!
//! Exit codes: 0 on success (whatever the verdict), 2 for invalid input,
//! 3 for unsupported configurations, 4 for violated preconditions.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chowstab::ratlin::parse_rational;
use chowstab::{
    absolute_verdict, commutation_check, config_chow_weight, decompose_span, futaki_correction, mumford_weight,
    oracle_search, parse_document, parse_matrix, relative_verdict, verify_certificate, Document, Error, ErrorClass,
    OnePS, RatMatrix, Rational, StabilityReport, Verdict,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(
    name = "chowstab",
    version,
    about = "Exact Chow-stability of point and subspace configurations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Absolute stability of a point configuration.
    Analyze(Common),
    /// Stability relative to the linear span decomposition.
    Relative(Common),
    /// Decomposition of the linear span into minimal coordinate blocks.
    Decompose(Common),
    /// Mumford weight of the document's one-parameter subgroup.
    Mu(Common),
    /// Chow weight of the document's one-parameter subgroup.
    ChowWeight(Common),
    /// Leading Futaki correction on the blow-up.
    Futaki(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Input document (JSON).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Include destabilizing certificates.
    #[arg(long)]
    certificate: bool,
    /// Replace the weights q by the mean-zero representative (n+1)q - (sum q).
    #[arg(long)]
    normalize: bool,
    /// Cross-check the verdict with a bounded search over one-parameter subgroups.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 3)]
    oracle_bound: u32,
    #[arg(long, default_value_t = 20)]
    oracle_samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON list of matrices that must commute with the subgroup's generator.
    #[arg(long)]
    check_commutes: Option<PathBuf>,
    /// Futaki invariant of the base manifold, as an exact rational.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    base_futaki: String,
}

#[derive(Serialize, Default)]
struct Checks {
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate_verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    commutes: Option<bool>,
}

#[derive(Serialize)]
struct OracleCheck {
    bound: u32,
    samples: usize,
    seed: u64,
    found_destabilizing: bool,
    agrees: bool,
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    input_digest: String,
    result: Value,
    checks: Checks,
    warnings: Vec<String>,
}

#[derive(Debug)]
struct Failure {
    class: ErrorClass,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            class: e.class(),
            message: e.to_string(),
        }
    }
}

fn invalid(message: String) -> Failure {
    Failure {
        class: ErrorClass::InvalidInput,
        message,
    }
}

fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::InvalidInput => 2,
        ErrorClass::Unsupported => 3,
        ErrorClass::Precondition => 4,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn digest(doc: &Document) -> String {
    format!("sha256:{:x}", Sha256::digest(doc.to_json().as_bytes()))
}

fn require_one_ps(doc: &Document, flags: &Common) -> Result<OnePS, Failure> {
    let lambda = doc
        .one_ps
        .clone()
        .ok_or_else(|| invalid("document has no \"one_ps\" entry".into()))?;
    Ok(if flags.normalize { lambda.normalized() } else { lambda })
}

/// Drops certificates, recursively, from a serialized stability report.
fn strip_certificates(v: &mut Value) {
    if let Value::Object(map) = v {
        map.insert("certificate".into(), Value::Null);
        if let Some(Value::Array(parts)) = map.get_mut("component_reports") {
            for part in parts {
                if let Some(r) = part.get_mut("report") {
                    strip_certificates(r);
                }
            }
        }
    }
}

fn stability_value(report: &StabilityReport, flags: &Common) -> Value {
    let mut v = to_value(report);
    if !flags.certificate {
        strip_certificates(&mut v);
    }
    v
}

fn polystability_warning(report: &StabilityReport, warnings: &mut Vec<String>) {
    if report.verdict == Verdict::SemistablePolystabilityUndetermined {
        warnings.push("semistable, but polystability is not decided for this configuration".into());
    }
}

fn commutation(lambda: &OnePS, flags: &Common, checks: &mut Checks, warnings: &mut Vec<String>) -> Result<(), Failure> {
    let Some(path) = &flags.check_commutes else {
        return Ok(());
    };
    let raw: Vec<Vec<Vec<String>>> =
        serde_json::from_str(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let generators = raw
        .iter()
        .map(|m| parse_matrix(m))
        .collect::<Result<Vec<RatMatrix>, _>>()?;
    let ok = commutation_check(lambda, &generators)?;
    if !ok {
        warnings.push("the one-parameter subgroup does not commute with the given generators".into());
    }
    checks.commutes = Some(ok);
    Ok(())
}

fn run(name: &'static str, flags: &Common) -> Result<Report, Failure> {
    let doc = parse_document(&read(&flags.input)?)?;
    let c = &doc.configuration;
    let mut checks = Checks::default();
    let mut warnings = Vec::new();
    let result = match name {
        "analyze" => {
            let report = absolute_verdict(c)?;
            if let Some(cert) = &report.certificate {
                if flags.certificate {
                    checks.certificate_verified = Some(verify_certificate(c, cert)?);
                }
            }
            if flags.oracle {
                let found = oracle_search(c, flags.oracle_bound, flags.oracle_samples, flags.seed)?.is_some();
                let agrees = found == (report.verdict == Verdict::Unstable);
                if !agrees {
                    warnings.push("bounded oracle search disagrees with the verdict".into());
                }
                checks.oracle = Some(OracleCheck {
                    bound: flags.oracle_bound,
                    samples: flags.oracle_samples,
                    seed: flags.seed,
                    found_destabilizing: found,
                    agrees,
                });
            }
            polystability_warning(&report, &mut warnings);
            stability_value(&report, flags)
        }
        "relative" => {
            let report = relative_verdict(c)?;
            if let Some(cert) = &report.certificate {
                if flags.certificate {
                    checks.certificate_verified = Some(verify_certificate(c, cert)?);
                }
            }
            polystability_warning(&report, &mut warnings);
            let mut v = stability_value(&report, flags);
            v["decomposition"] = to_value(&decompose_span(c)?);
            v
        }
        "decompose" => to_value(&decompose_span(c)?),
        "mu" => {
            let lambda = require_one_ps(&doc, flags)?;
            commutation(&lambda, flags, &mut checks, &mut warnings)?;
            let mut v = to_value(&mumford_weight(c, &lambda)?);
            v["one_ps"] = to_value(&lambda);
            v
        }
        "chow-weight" => {
            let lambda = require_one_ps(&doc, flags)?;
            commutation(&lambda, flags, &mut checks, &mut warnings)?;
            to_value(&config_chow_weight(c, &lambda)?)
        }
        "futaki" => {
            let lambda = require_one_ps(&doc, flags)?;
            commutation(&lambda, flags, &mut checks, &mut warnings)?;
            let base: Rational =
                parse_rational(&flags.base_futaki).map_err(|e| invalid(format!("--base-futaki: {e}")))?;
            to_value(&futaki_correction(c, &lambda, &base)?)
        }
        _ => unreachable!("unknown command {name}"),
    };
    Ok(Report {
        command: name,
        input_digest: digest(&doc),
        result,
        checks,
        warnings,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, flags) = match &cli.command {
        Command::Analyze(f) => ("analyze", f),
        Command::Relative(f) => ("relative", f),
        Command::Decompose(f) => ("decompose", f),
        Command::Mu(f) => ("mu", f),
        Command::ChowWeight(f) => ("chow-weight", f),
        Command::Futaki(f) => ("futaki", f),
    };
    match run(name, flags) {
        Ok(report) => {
            match flags.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize")),
                Format::Text => print!("{}", render::text(&to_value(&report))),
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(exit_code(f.class))
        }
    }
}
