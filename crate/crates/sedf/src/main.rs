//! Command-line interface for the `sedf` library.
//!
//! Subcommands:
//!
//! * `field`  — construct a finite field and certify its generator.
//! * `cyclo`  — print a cyclotomic-number table plus identity checks.
//! * `verify` — verify a family of sets as an SEDF and emit a certificate.
//! * `scan`   — evaluate the cyclotomic construction across prime powers.
//! * `search` — exhaustively search one group for SEDFs.
//!
//! Exit codes: `0` the object verified or at least one family was found,
//! `1` the object is invalid or no family exists, `2` usage, parse, or
//! capacity errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sedf::{
    certificate_to_family, dedup_by_scalar, feasible_tuples, sedf_from_cyclotomy, verify_sedf,
    CyclotomicSystem, Error, FieldSpec, FieldTable, GroupSet, GroupSpec, IdentityReport,
    PrimitivityCertificate, Result, ScanRow, SedfCertificate, SearchOutcome,
};

#[cfg(feature = "parallel")]
use sedf::parallel::{exhaustive_search, scan_cyclotomic};
#[cfg(not(feature = "parallel"))]
use sedf::{exhaustive_search, scan_cyclotomic};

#[derive(Parser)]
#[command(name = "sedf", version, about = "Construct, verify, and search strong external difference families")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (default: tsv for field/cyclo/scan, json for verify/search).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Construct GF(p^m), pick the canonical generator, and certify its order.
    Field(FieldArgs),
    /// Print the order-e cyclotomic-number table of GF(p^m) with identity checks.
    Cyclo(CycloArgs),
    /// Verify a family of disjoint sets as an SEDF and emit a certificate.
    Verify(VerifyArgs),
    /// Evaluate the cyclotomic-class construction for every prime power up to a bound.
    Scan(ScanArgs),
    /// Exhaustively search one abelian group for SEDFs with given shape.
    Search(SearchArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Characteristic (a prime).
    #[arg(short)]
    p: u64,

    /// Extension degree.
    #[arg(short, default_value_t = 1)]
    m: usize,

    /// Monic modulus polynomial, ascending coefficients "c0,...,cm" with cm = 1.
    #[arg(long, value_name = "COEFFS")]
    modulus: Option<String>,

    /// Also print the full power table of the generator.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct CycloArgs {
    /// Characteristic (a prime).
    #[arg(short)]
    p: u64,

    /// Extension degree.
    #[arg(short, default_value_t = 1)]
    m: usize,

    /// Monic modulus polynomial, ascending coefficients "c0,...,cm" with cm = 1.
    #[arg(long, value_name = "COEFFS")]
    modulus: Option<String>,

    /// Class order e (must divide q - 1).
    #[arg(short)]
    e: u32,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify the family of order-e cyclotomic classes of GF(p^m).
    #[arg(long)]
    cyclotomic: bool,

    /// Characteristic for --cyclotomic (a prime).
    #[arg(short)]
    p: Option<u64>,

    /// Extension degree for --cyclotomic.
    #[arg(short)]
    m: Option<usize>,

    /// Modulus polynomial for --cyclotomic, ascending "c0,...,cm" with cm = 1.
    #[arg(long, value_name = "COEFFS")]
    modulus: Option<String>,

    /// Class order for --cyclotomic.
    #[arg(short)]
    e: Option<u32>,

    /// Verify explicit sets in the group with these cyclic factors, e.g. "5" or "3,3".
    #[arg(long, value_name = "FACTORS")]
    group: Option<String>,

    /// Explicit sets as rank lists, ';' between sets, ',' within: "1,4;2,3".
    #[arg(long, value_name = "SETS")]
    sets: Option<String>,

    /// Re-verify a stored certificate file and compare against its recorded verdict.
    #[arg(long, value_name = "PATH")]
    recheck: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// Largest prime power to test.
    #[arg(long, value_name = "N")]
    q_max: u64,

    /// Smallest class order to test (at least 2).
    #[arg(long, value_name = "N", default_value_t = 2)]
    m_min: u32,
}

#[derive(Args)]
struct SearchArgs {
    /// Cyclic factors of the ambient group, e.g. "5" or "3,3".
    #[arg(long, value_name = "FACTORS")]
    group: String,

    /// Number of sets in the family.
    #[arg(short)]
    m: usize,

    /// Size of each set.
    #[arg(short)]
    k: usize,

    /// Stop after this many search nodes (placement attempts).
    #[arg(long, value_name = "N")]
    limit: Option<u64>,

    /// Keep one representative per scalar-multiplication-and-translation orbit.
    #[arg(long)]
    dedup: bool,

    /// Print the feasible parameter tuples for this group order and exit.
    #[arg(long)]
    feasible: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let format = cli.format;
    let out = cli.out;
    let (text, code) = match cli.command {
        Command::Field(args) => cmd_field(args, format.unwrap_or(Format::Tsv))?,
        Command::Cyclo(args) => cmd_cyclo(args, format.unwrap_or(Format::Tsv))?,
        Command::Verify(args) => cmd_verify(args, format.unwrap_or(Format::Json))?,
        Command::Scan(args) => cmd_scan(args, format.unwrap_or(Format::Tsv))?,
        Command::Search(args) => cmd_search(args, format.unwrap_or(Format::Json))?,
    };
    emit(&out, &text)?;
    Ok(ExitCode::from(code))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// field
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct FieldReport {
    q: u64,
    p: u64,
    m: usize,
    modulus: String,
    theta: String,
    theta_order: u64,
    certificate: PrimitivityCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    powers: Option<Vec<String>>,
}

fn field_spec(p: u64, m: usize, modulus: &Option<String>) -> Result<FieldSpec> {
    let spec = match modulus {
        Some(text) => FieldSpec::new(p, sedf::parse_coeffs(text)?)?,
        None => FieldSpec::with_default_modulus(p, m)?,
    };
    if spec.m() != m {
        return Err(Error::Parse(format!(
            "modulus has degree {}, but -m {} was given",
            spec.m(),
            m
        )));
    }
    Ok(spec)
}

fn cmd_field(args: FieldArgs, format: Format) -> Result<(String, u8)> {
    let spec = field_spec(args.p, args.m, &args.modulus)?;
    let table = FieldTable::new(spec)?;
    let spec = table.spec();
    let q = table.order();
    let cert = table.order_certificate();
    let powers: Option<Vec<String>> = if args.table {
        let mut rows = Vec::with_capacity((q - 1) as usize);
        for t in 0..q - 1 {
            rows.push(spec.format_element(&table.power_vector(t)?));
        }
        Some(rows)
    } else {
        None
    };

    let text = match format {
        Format::Json => {
            let report = FieldReport {
                q,
                p: spec.p(),
                m: spec.m(),
                modulus: spec.modulus_string(),
                theta: spec.format_element(&table.power_vector(1)?),
                theta_order: cert.group_order,
                certificate: cert,
                powers,
            };
            json_line(&report)?
        }
        Format::Tsv => {
            let mut s = String::new();
            let _ = writeln!(s, "q\t{q}");
            let _ = writeln!(s, "p\t{}", spec.p());
            let _ = writeln!(s, "m\t{}", spec.m());
            let _ = writeln!(s, "modulus\t{}", spec.modulus_string());
            let _ = writeln!(s, "theta\t{}", spec.format_element(&table.power_vector(1)?));
            let _ = writeln!(s, "theta_order\t{}", cert.group_order);
            for w in &cert.witnesses {
                let _ = writeln!(s, "witness\t{}\t{}\t{}", w.prime, w.exponent, w.value);
            }
            let _ = writeln!(s, "primitive\t{}", cert.holds());
            if let Some(rows) = powers {
                for (t, value) in rows.iter().enumerate() {
                    let _ = writeln!(s, "power\t{t}\t{value}");
                }
            }
            s
        }
    };
    Ok((text, 0))
}

// ---------------------------------------------------------------------------
// cyclo
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CycloReport {
    q: u64,
    p: u64,
    m: usize,
    modulus: String,
    theta: String,
    e: u32,
    f: u32,
    numbers: Vec<Vec<u64>>,
    identities: IdentityReport,
}

fn cmd_cyclo(args: CycloArgs, format: Format) -> Result<(String, u8)> {
    let spec = field_spec(args.p, args.m, &args.modulus)?;
    let table = FieldTable::new(spec)?;
    let sys = CyclotomicSystem::new(&table, args.e)?;
    let numbers = sys.cyclotomic_numbers();
    let report = sys.identity_report(&numbers);

    let text = match format {
        Format::Json => {
            let spec = table.spec();
            let full = CycloReport {
                q: table.order(),
                p: spec.p(),
                m: spec.m(),
                modulus: spec.modulus_string(),
                theta: spec.format_element(&table.power_vector(1)?),
                e: sys.e(),
                f: sys.f(),
                numbers: numbers.numbers().to_vec(),
                identities: report,
            };
            json_line(&full)?
        }
        Format::Tsv => {
            let mut s = sys.table_tsv(&numbers);
            if report.ok() {
                let _ = writeln!(
                    s,
                    "# identities: ok (checks={}, f_even={}, minus_one_in_c0={})",
                    report.checks, report.f_even, report.minus_one_in_c0
                );
            } else {
                for v in &report.violations {
                    let _ = writeln!(s, "# identity violation: {v}");
                }
            }
            s
        }
    };
    Ok((text, 0))
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: VerifyArgs, format: Format) -> Result<(String, u8)> {
    let modes =
        args.cyclotomic as u8 + args.group.is_some() as u8 + args.recheck.is_some() as u8;
    if modes != 1 {
        return Err(Error::Parse(
            "choose exactly one of --cyclotomic, --group ... --sets ..., --recheck PATH".into(),
        ));
    }

    if args.cyclotomic {
        let (Some(p), Some(m), Some(e)) = (args.p, args.m, args.e) else {
            return Err(Error::Parse("--cyclotomic requires -p, -m, and -e".into()));
        };
        let spec = field_spec(p, m, &args.modulus)?;
        let table = FieldTable::new(spec)?;
        let sys = CyclotomicSystem::new(&table, e)?;
        let result = sedf_from_cyclotomy(&sys)?;
        if !result.methods_agree {
            return Err(Error::Internal(
                "table criterion disagrees with direct verification".into(),
            ));
        }
        return render_certificate(&result.certificate, format);
    }

    if let Some(factors) = &args.group {
        let Some(sets) = &args.sets else {
            return Err(Error::Parse("--group requires --sets".into()));
        };
        let group = parse_group(factors)?;
        let sets = parse_sets(sets, &group)?;
        let family = sedf::DesignFamily::explicit(group, sets)?;
        let cert = verify_sedf(&family)?;
        return render_certificate(&cert, format);
    }

    let path = args.recheck.expect("mode counted above");
    let stored_text = std::fs::read_to_string(&path)?;
    let stored: SedfCertificate = serde_json::from_str(&stored_text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let family = certificate_to_family(&stored)?;
    let fresh = verify_sedf(&family)?;
    let (text, mut code) = render_certificate(&fresh, format)?;
    if fresh != stored {
        eprintln!("recheck: stored certificate does not match re-verification");
        code = 1;
    }
    Ok((text, code))
}

fn render_certificate(cert: &SedfCertificate, format: Format) -> Result<(String, u8)> {
    let code = if cert.valid { 0 } else { 1 };
    let text = match format {
        Format::Json => json_line(cert)?,
        Format::Tsv => {
            let mut s = String::new();
            let _ = writeln!(s, "valid\t{}", cert.valid);
            let _ = writeln!(s, "disjoint\t{}", cert.disjoint);
            let _ = writeln!(s, "n\t{}", cert.params.n);
            let _ = writeln!(s, "m\t{}", cert.params.m);
            let _ = writeln!(s, "k\t{}", cert.params.k);
            let _ = writeln!(s, "lambda\t{}", opt_str(cert.params.lambda));
            let per: Vec<String> = cert.per_index_lambda.iter().map(|v| opt_str(*v)).collect();
            let _ = writeln!(s, "per_index_lambda\t{}", per.join(","));
            for v in &cert.violations {
                let _ = writeln!(
                    s,
                    "violation\t{}\t{}\t{}\t{}",
                    v.index, v.element, v.count, v.reference
                );
            }
            s
        }
    };
    Ok((text, code))
}

fn opt_str(v: Option<u64>) -> String {
    match v {
        Some(x) => x.to_string(),
        None => "-".into(),
    }
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

fn cmd_scan(args: ScanArgs, format: Format) -> Result<(String, u8)> {
    let rows: Vec<ScanRow> = scan_cyclotomic(args.q_max, args.m_min)?;
    let text = match format {
        Format::Json => json_line(&rows)?,
        Format::Tsv => sedf::scan_tsv(&rows),
    };
    Ok((text, 0))
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

fn cmd_search(args: SearchArgs, format: Format) -> Result<(String, u8)> {
    let group = parse_group(&args.group)?;

    if args.feasible {
        let n = group.order() as u64;
        let tuples = feasible_tuples(n, 2)?;
        let mut s = String::from("n\tm\tk\tlambda\ttrivial\n");
        for t in tuples.iter().filter(|t| t.n == n) {
            let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}", t.n, t.m, t.k, t.lambda, t.trivial);
        }
        return Ok((s, 0));
    }

    let outcome: SearchOutcome = match exhaustive_search(&group, args.m, args.k, args.limit) {
        Ok(outcome) => outcome,
        // Infeasible parameters prove no family exists, which is the
        // none-found outcome rather than a usage error.
        Err(Error::Infeasible(reason)) => {
            eprintln!("no families: {reason}");
            return Ok((String::new(), 1));
        }
        Err(err) => return Err(err),
    };
    if !outcome.complete {
        eprintln!(
            "search stopped at the node limit after {} nodes; results may be incomplete",
            outcome.nodes
        );
    }
    let families = if args.dedup {
        dedup_by_scalar(&group, outcome.families)
    } else {
        outcome.families
    };
    let code = if families.is_empty() { 1 } else { 0 };

    let text = match format {
        Format::Json => {
            let mut s = String::new();
            for family in &families {
                let cert = verify_sedf(family)?;
                s.push_str(&json_line(&cert)?);
            }
            s
        }
        Format::Tsv => {
            let mut s = String::from("family\tn\tm\tk\tsets\n");
            for (i, family) in families.iter().enumerate() {
                let sets: Vec<String> = family
                    .sets()
                    .iter()
                    .map(|set| {
                        set.members()
                            .iter()
                            .map(|r| r.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                let _ = writeln!(
                    s,
                    "{i}\t{}\t{}\t{}\t{}",
                    group.order(),
                    args.m,
                    args.k,
                    sets.join(";")
                );
            }
            s
        }
    };
    Ok((text, code))
}

// ---------------------------------------------------------------------------
// parsing helpers
// ---------------------------------------------------------------------------

fn parse_group(text: &str) -> Result<GroupSpec> {
    let mut factors = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let f: u32 = part
            .parse()
            .map_err(|_| Error::Parse(format!("bad group factor {part:?}")))?;
        factors.push(f);
    }
    GroupSpec::new(factors)
}

fn parse_sets(text: &str, group: &GroupSpec) -> Result<Vec<GroupSet>> {
    let mut sets = Vec::new();
    for chunk in text.split(';') {
        let mut ranks = Vec::new();
        for part in chunk.split(',') {
            let part = part.trim();
            let r: usize = part
                .parse()
                .map_err(|_| Error::Parse(format!("bad element rank {part:?}")))?;
            ranks.push(r);
        }
        sets.push(GroupSet::new(ranks, group)?);
    }
    Ok(sets)
}

fn json_line<T: Serialize>(value: &T) -> Result<String> {
    let line = serde_json::to_string(value)
        .map_err(|e| Error::Internal(format!("serialization: {e}")))?;
    Ok(line + "\n")
}
