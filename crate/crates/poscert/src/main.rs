//! Command-line front door.
//!
//! Polynomials are ascending comma-separated rationals (constant term
//! first): `"2,-3,1"` is x^2 - 3x + 2. Arguments accepting input take a
//! literal value, `-` for stdin, or `@path` for a file.
//!
//! Exit codes: 0 success/verified; 1 claim false or verification
//! failed; 2 input error; 3 precision insufficient (retry with a higher
//! `--precision` or pass `--auto-precision`).

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rug::{Integer, Rational};
use serde_json::json;

use poscert::aberth::{default_cluster_radius, find_roots, snap_rootspec};
use poscert::cert::{certify_positive, certify_variations, Certificate};
use poscert::error::Error;
use poscert::roots::{
    count_positive_roots, parse_rootspec, partition_roots, rootspec_to_json, RootSpec,
};
use poscert::verify::{
    check_lemma1, check_lemma2, check_lemma3, parse_certificate, verify_certificate,
};
use poscert::{Ball, RatPoly, Result};

#[derive(Parser)]
#[command(name = "poscert", version, about = "Sign-variation audits and multiplier certificates")]
struct Cli {
    /// Working precision in bits for float mode (>= 64)
    #[arg(long, global = true, default_value_t = 256)]
    precision: u32,

    /// On precision failure, retry with doubled precision up to 4096 bits
    #[arg(long, global = true)]
    auto_precision: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report V(F), Z(F) and nu(F) = V - Z
    Audit {
        /// Ascending comma-separated rational coefficients
        #[arg(long, conflicts_with = "roots", allow_hyphen_values = true)]
        poly: Option<String>,
        /// Root specification JSON
        #[arg(long)]
        roots: Option<String>,
    },
    /// Build a positivity certificate (Theorem-1 multiplier G)
    CertifyPositive {
        #[arg(long, conflicts_with = "roots", allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long)]
        roots: Option<String>,
        /// Write the certificate here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a variation certificate (Theorem-2 multiplier K = G*H)
    CertifyVariations {
        #[arg(long, conflicts_with = "roots", allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long)]
        roots: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate against a polynomial
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Certificate JSON (literal, `-`, or `@path`)
        #[arg(long)]
        cert: String,
    },
    /// Approximate all roots and report them as a root specification
    Roots {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Merge roots closer than this rational distance (default 2^-(precision/4))
        #[arg(long)]
        cluster_radius: Option<String>,
    },
    /// Check one of the three supporting lemmas directly
    LemmaCheck {
        /// Which lemma: 1 (trig product), 2 (geometric identity), 3 (V(L*M) = p)
        #[arg(long)]
        lemma: u32,
        /// Lemma 1: beta > 0 (rational)
        #[arg(long)]
        beta: Option<String>,
        /// Lemma 1: phi in radians (rational)
        #[arg(long)]
        phi: Option<String>,
        /// Lemma 1: override the derived n
        #[arg(long)]
        n: Option<u32>,
        /// Lemma 2: alpha > 0 (rational)
        #[arg(long)]
        alpha: Option<String>,
        /// Lemma 2: the exponent m >= 1
        #[arg(long)]
        m: Option<usize>,
        /// Lemma 3: the polynomial L
        #[arg(long, allow_hyphen_values = true)]
        l: Option<String>,
        /// Lemma 3: positive roots as "alpha:mult,alpha:mult"
        #[arg(long)]
        alphas: Option<String>,
        /// Lemma 3: the stride q
        #[arg(long)]
        q: Option<usize>,
        /// Lemma 3: require strictly positive coefficients (paper's literal hypothesis)
        #[arg(long)]
        strict: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    if cli.precision < 64 {
        emit_error(
            &Error::Domain("--precision must be >= 64".into()),
            cli.format,
        );
        std::process::exit(2);
    }

    let mut precision = cli.precision;
    loop {
        match run(&cli.cmd, precision) {
            Ok((code, report)) => {
                print_report(&report, cli.format);
                std::process::exit(code);
            }
            Err(e) => {
                let code = exit_code(&e);
                if code == 3 && cli.auto_precision && precision < 4096 {
                    precision = (precision * 2).min(4096);
                    continue;
                }
                emit_error(&e, cli.format);
                std::process::exit(code);
            }
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistency(_) => 1,
        Error::PrecisionInsufficient(_) | Error::Numeric(_) | Error::Classification(_) => 3,
        _ => 2,
    }
}

fn emit_error(e: &Error, format: Format) {
    let v = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
    match format {
        Format::Json => eprintln!("{v}"),
        Format::Text => eprintln!("error[{}]: {e}", e.kind()),
    }
}

fn print_report(v: &serde_json::Value, format: Format) {
    match format {
        Format::Json => println!("{v}"),
        Format::Text => {
            let mut out = String::new();
            render_text(v, "", &mut out);
            print!("{out}");
        }
    }
}

fn render_text(v: &serde_json::Value, prefix: &str, out: &mut String) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                render_text(val, &key, out);
            }
        }
        serde_json::Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{prefix}: []\n"));
            }
            for (i, val) in items.iter().enumerate() {
                render_text(val, &format!("{prefix}[{i}]"), out);
            }
        }
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

/// Resolve a CLI input value: `-` reads stdin, `@path` reads a file,
/// anything else is taken literally.
fn read_input(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse {
                offset: 0,
                message: format!("failed to read stdin: {e}"),
            })?;
        Ok(buf.trim().to_string())
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Error::Parse {
                offset: 0,
                message: format!("failed to read {path}: {e}"),
            })
    } else {
        Ok(arg.to_string())
    }
}

/// The polynomial pipeline shared by `audit`, `certify-*` and `roots`:
/// parse, strip x^m, normalize the sign, make monic, find roots, and
/// snap them back to exact rationals when that reproduces the input.
struct PolyInput {
    monic: RatPoly,
    origin_mult: usize,
    negated: bool,
    spec: RootSpec,
}

fn prepare_poly(text: &str, precision: u32) -> Result<PolyInput> {
    let poly = RatPoly::parse(text)?;
    let (stripped, origin_mult) = poly.strip_zero_roots()?;
    let (normalized, negated) = stripped.sign_normalize()?;
    if normalized.degree() == Some(0) {
        return Ok(PolyInput {
            monic: RatPoly::one(),
            origin_mult,
            negated,
            spec: RootSpec::exact(vec![]),
        });
    }
    let monic = normalized.make_monic()?;
    let spec = find_roots(&monic, precision, &default_cluster_radius(precision))?;
    let max_den = Integer::from(1) << (precision / 8);
    let spec = snap_rootspec(&spec, &monic, &max_den).unwrap_or(spec);
    Ok(PolyInput {
        monic,
        origin_mult,
        negated,
        spec,
    })
}

fn spec_from_args(
    poly: &Option<String>,
    roots: &Option<String>,
    precision: u32,
) -> Result<(RootSpec, usize)> {
    match (poly, roots) {
        (Some(p), None) => {
            let input = prepare_poly(&read_input(p)?, precision)?;
            Ok((input.spec, input.origin_mult))
        }
        (None, Some(r)) => {
            let spec = parse_rootspec(&read_input(r)?)?;
            let (stripped, origin_mult) = spec.strip_origin();
            Ok((stripped, origin_mult as usize))
        }
        _ => Err(Error::Domain(
            "provide exactly one of --poly or --roots".into(),
        )),
    }
}

fn parse_rat(s: &str) -> Result<Rational> {
    poscert::scalar::parse_rational(s).map_err(|message| Error::Parse { offset: 0, message })
}

fn require<'a, T>(opt: &'a Option<T>, flag: &str) -> Result<&'a T> {
    opt.as_ref()
        .ok_or_else(|| Error::Domain(format!("{flag} is required for this lemma")))
}

fn certificate_output(
    mut cert: Certificate,
    approximate: bool,
    origin_mult: usize,
    out: &Option<PathBuf>,
) -> Result<(i32, serde_json::Value)> {
    cert.approximate = approximate;
    if origin_mult > 0 {
        cert.assumptions.push(format!(
            "factor x^{origin_mult} stripped before certification (V is unchanged)"
        ));
    }
    let v = cert.to_json();
    if let Some(path) = out {
        std::fs::write(path, format!("{v}\n")).map_err(|e| {
            Error::Generation(format!("failed to write {}: {e}", path.display()))
        })?;
        Ok((0, json!({"written": path.display().to_string()})))
    } else {
        Ok((0, v))
    }
}

fn run(cmd: &Cmd, precision: u32) -> Result<(i32, serde_json::Value)> {
    match cmd {
        Cmd::Audit { poly, roots } => {
            let (v, spec, origin_mult, negated) = match (poly, roots) {
                (Some(p), None) => {
                    let input = prepare_poly(&read_input(p)?, precision)?;
                    let v = input.monic.sign_variations()?;
                    (v, input.spec, input.origin_mult, input.negated)
                }
                (None, Some(r)) => {
                    let spec = parse_rootspec(&read_input(r)?)?;
                    let (stripped, origin_mult) = spec.strip_origin();
                    let part = partition_roots(&stripped)?;
                    let f = poscert::roots::expand_from_partition(&part).f;
                    (f.sign_variations()?, stripped, origin_mult as usize, false)
                }
                _ => {
                    return Err(Error::Domain(
                        "provide exactly one of --poly or --roots".into(),
                    ))
                }
            };
            let part = partition_roots(&spec)?;
            let z = count_positive_roots(&part);
            if v < z || !(v - z).is_multiple_of(2) {
                return Err(Error::Classification(format!(
                    "V = {v}, Z = {z}: parity violated (root classification suspect)"
                )));
            }
            Ok((
                0,
                json!({
                    "V": v,
                    "Z": z,
                    "nu": v - z,
                    "origin_mult": origin_mult,
                    "sign_normalized": negated,
                    "approximate_roots": spec.approximate,
                }),
            ))
        }

        Cmd::CertifyPositive { poly, roots, out } => {
            let (spec, origin_mult) = spec_from_args(poly, roots, precision)?;
            let part = partition_roots(&spec)?;
            if count_positive_roots(&part) > 0 {
                return Ok((
                    1,
                    json!({
                        "passed": false,
                        "reason": "F has positive roots, so it is not positive on (0, inf)",
                    }),
                ));
            }
            let cert = certify_positive(&part, precision)?;
            certificate_output(cert, spec.approximate, origin_mult, out)
        }

        Cmd::CertifyVariations { poly, roots, out } => {
            let (spec, origin_mult) = spec_from_args(poly, roots, precision)?;
            let part = partition_roots(&spec)?;
            let cert = certify_variations(&part, precision)?;
            certificate_output(cert, spec.approximate, origin_mult, out)
        }

        Cmd::Verify { poly, cert } => {
            let f = RatPoly::parse(&read_input(poly)?)?;
            let claim = parse_certificate(&read_input(cert)?)?;
            let outcome = verify_certificate(&f, &claim, precision)?;
            let code = if outcome.passed { 0 } else { 1 };
            Ok((code, outcome.to_json()))
        }

        Cmd::Roots {
            poly,
            cluster_radius,
        } => {
            let text = read_input(poly)?;
            let p = RatPoly::parse(&text)?;
            let (stripped, origin_mult) = p.strip_zero_roots()?;
            let (normalized, _) = stripped.sign_normalize()?;
            let monic = normalized.make_monic()?;
            let cr = match cluster_radius {
                Some(s) => parse_rat(s)?,
                None => default_cluster_radius(precision),
            };
            let spec = find_roots(&monic, precision, &cr)?;
            let max_den = Integer::from(1) << (precision / 8);
            let spec = snap_rootspec(&spec, &monic, &max_den).unwrap_or(spec);
            let mut v = rootspec_to_json(&spec);
            v["origin_mult"] = json!(origin_mult);
            Ok((0, v))
        }

        Cmd::LemmaCheck {
            lemma,
            beta,
            phi,
            n,
            alpha,
            m,
            l,
            alphas,
            q,
            strict,
        } => match lemma {
            1 => {
                let beta = Ball::from_rational(&parse_rat(require(beta, "--beta")?)?, precision);
                let phi = Ball::from_rational(&parse_rat(require(phi, "--phi")?)?, precision);
                let chk = check_lemma1(&beta, &phi, *n, precision)?;
                let code = if chk.report.passed { 0 } else { 1 };
                let mut v = chk.report.to_json();
                v["n"] = json!(chk.n);
                v["boundary_assumed"] = json!(chk.boundary_assumed);
                v["max_interior_rel"] = json!(format!("{:e}", chk.max_interior_rel));
                Ok((code, v))
            }
            2 => {
                let alpha = parse_rat(require(alpha, "--alpha")?)?;
                let m = *require(m, "--m")?;
                if m < 1 {
                    return Err(Error::Domain("--m must be >= 1".into()));
                }
                let report = check_lemma2(&alpha, m)?;
                let code = if report.passed { 0 } else { 1 };
                Ok((code, report.to_json()))
            }
            3 => {
                let l = RatPoly::parse(&read_input(require(l, "--l")?)?)?;
                let q = *require(q, "--q")?;
                let mut pairs = Vec::new();
                for piece in require(alphas, "--alphas")?.split(',') {
                    let (a, mult) = piece.split_once(':').ok_or_else(|| Error::Parse {
                        offset: 0,
                        message: "expected alpha:mult pairs".into(),
                    })?;
                    pairs.push((
                        parse_rat(a)?,
                        mult.parse::<u32>().map_err(|e| Error::Parse {
                            offset: 0,
                            message: format!("bad multiplicity: {e}"),
                        })?,
                    ));
                }
                let report = check_lemma3(&l, &pairs, q, *strict)?;
                let code = if report.passed { 0 } else { 1 };
                Ok((code, report.to_json()))
            }
            other => Err(Error::Domain(format!("unknown lemma {other}"))),
        },
    }
}
