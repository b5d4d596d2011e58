use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cartan_core::search::{self, Budget};
use cartan_core::{
    construct_odac, crt_decompose, find_primitive_root, verify_odac, Decomposition, Error, Ring, Verdict,
    VerificationReport, VerifyOptions,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_NO_ODAC: u8 = 2;
const EXIT_NO_CONSTRUCTION: u8 = 3;
const EXIT_VERIFY_FAILED: u8 = 4;
const EXIT_BUDGET: u8 = 5;

#[derive(Parser)]
#[command(name = "cartan-forge", version, about = "Construct and certify orthogonal decompositions of sl_n(R)")]
struct Cli {
    /// Output format for stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build an ODAC of sl_n over a ring, or explain why none is built.
    Construct {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: usize,
        /// Write the decomposition JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a decomposition file.
    Verify {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Expected ring; must match the file.
        #[arg(long)]
        ring: Option<String>,
        /// Also test each component for being classical (fields only).
        #[arg(long)]
        classical: bool,
    },
    /// Search for classical ODACs of sl_3(F_q).
    SearchSl3 {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate commuting pairs with a degenerate-looking first row.
    OracleLemma {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        /// Also enumerate every 2-dimensional subspace orthogonal to H_0.
        #[arg(long)]
        shape_check: bool,
    },
    /// Check that no two-parameter form is classical when 3 does not divide q - 1.
    RemarkCheck {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
    },
    /// Tabulate orthogonal partners and diagonal conjugacy in sl_2(F_q).
    Sl2Analysis {
        #[arg(long)]
        q: u64,
    },
    /// Describe a ring and optionally find a primitive p-th root of unity.
    RingInfo {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        p: Option<u64>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Budget(_)) { EXIT_BUDGET } else { EXIT_ERROR };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: EXIT_ERROR, message: format!("{}: {e}", path.display()) }
}

type Outcome = Result<u8, Failure>;

fn emit(format: Format, text: &str, value: &Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("json values serialize")),
    }
}

fn write_json(path: &Path, value: &Value) -> Result<(), Failure> {
    let body = serde_json::to_string_pretty(value).expect("json values serialize");
    fs::write(path, body + "\n").map_err(|e| io_failure(path, e))
}

fn report_text(report: &VerificationReport) -> String {
    let mark = |b: bool| if b { "ok" } else { "FAILED" };
    let mut lines = vec![
        format!("components free:       {}", mark(report.components_free)),
        format!("direct sum spans:      {}", mark(report.direct_sum_spans)),
        format!("pairwise orthogonal:   {}", mark(report.pairwise_orthogonal)),
        format!("each abelian:          {}", mark(report.each_abelian)),
        format!("each self-normalizing: {}", mark(report.each_self_normalizing)),
    ];
    if let Some(c) = report.all_classical {
        lines.push(format!("all classical:         {}", mark(c)));
    }
    for w in &report.witnesses {
        lines.push(format!("  {}: {}", w.check, w.detail));
    }
    lines.push(if report.passed() { "verdict: ODAC".into() } else { "verdict: not an ODAC".into() });
    lines.join("\n")
}

fn construct(format: Format, ring: &str, n: usize, out: Option<&Path>) -> Outcome {
    let ring = Ring::parse(ring)?;
    match construct_odac(&ring, n)? {
        Verdict::Constructible(d) => {
            let report = verify_odac(&d, VerifyOptions::default())?;
            if let Some(path) = out {
                write_json(path, &d.to_json())?;
            }
            let text = format!(
                "sl_{n}({ring}): {} components of rank {}, u = {}\n{}",
                d.components().len(),
                d.components()[0].subalgebra.basis().len(),
                d.provenance["u"],
                report_text(&report)
            );
            let value = json!({ "verdict": "constructible", "decomposition": d.to_json(), "report": report.to_json() });
            emit(format, &text, &value);
            Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Verdict::NoOdac { reason, witness } => {
            let value = json!({ "verdict": "no_odac", "reason": reason, "witness": witness.to_json() });
            emit(format, &format!("no ODAC: {reason}\ncentral element: {witness}"), &value);
            Ok(EXIT_NO_ODAC)
        }
        Verdict::NoConstruction { reason } => {
            let value = json!({ "verdict": "no_construction", "reason": reason });
            emit(format, &format!("no construction available: {reason}"), &value);
            Ok(EXIT_NO_CONSTRUCTION)
        }
    }
}

fn verify(format: Format, input: &Path, ring: Option<&str>, classical: bool) -> Outcome {
    let body = fs::read_to_string(input).map_err(|e| io_failure(input, e))?;
    let value: Value = serde_json::from_str(&body)
        .map_err(|e| Failure { code: EXIT_ERROR, message: format!("{}: {e}", input.display()) })?;
    let d = Decomposition::from_json(&value)?;
    if let Some(expected) = ring {
        let expected = Ring::parse(expected)?;
        if &expected != d.algebra().ring() {
            return Err(Error::RingMismatch(expected.to_string(), d.algebra().ring().to_string()).into());
        }
    }
    let report = verify_odac(&d, VerifyOptions { classical })?;
    emit(format, &report_text(&report), &report.to_json());
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn search_sl3(format: Format, qs: &[u64], out: Option<&Path>, budget: &Budget) -> Outcome {
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for &q in qs {
        let r = search::classical_odac_search_sl3(q, budget)?;
        lines.push(format!("q = {q}: exists = {}, witnesses = {}, {} ms", r.exists, r.witnesses.len(), r.elapsed_ms));
        rows.push(r.to_json());
    }
    let table = Value::Array(rows);
    if let Some(path) = out {
        write_json(path, &table)?;
    }
    emit(format, &lines.join("\n"), &table);
    Ok(EXIT_OK)
}

fn oracle_lemma(format: Format, qs: &[u64], shape_check: bool, budget: &Budget) -> Outcome {
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for &q in qs {
        let field = Ring::new(cartan_core::RingSpec::field_of_order(q)?)?;
        let r = search::lemma_h_oracle(q, budget)?;
        lines.push(format!(
            "q = {q}: {} counterexamples ({} commuting pairs over {} instances)",
            r.counterexamples.len(),
            r.pairs_checked,
            r.instances
        ));
        let mut row = r.to_json(&field);
        if shape_check {
            let s = search::exhaustive_lemma_shape_check(q, budget)?;
            lines.push(format!(
                "q = {q}: shape check {} ({} subspaces, {} survivors)",
                if s.holds() { "holds" } else { "FAILS" },
                s.subspaces,
                s.survivors
            ));
            row["shape_check"] = s.to_json();
        }
        rows.push(row);
    }
    emit(format, &lines.join("\n"), &Value::Array(rows));
    Ok(EXIT_OK)
}

fn remark_check(format: Format, qs: &[u64], budget: &Budget) -> Outcome {
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for &q in qs {
        let holds = search::verify_remark_no_pair(q, budget)?;
        lines.push(format!("q = {q}: no classical two-parameter form: {holds}"));
        rows.push(json!({ "q": q, "holds": holds }));
    }
    emit(format, &lines.join("\n"), &Value::Array(rows));
    Ok(EXIT_OK)
}

fn sl2_analysis(format: Format, q: u64, budget: &Budget) -> Outcome {
    let r = search::sl2_orthogonality_analysis(q, budget)?;
    let f = &r.field;
    let mut lines: Vec<String> = r
        .rows
        .iter()
        .map(|row| {
            let partners: Vec<String> = row.partners.iter().map(|&b| f.format(b)).collect();
            format!(
                "a = {}: partners [{}], {}, diagonal conjugator {}",
                f.format(row.a),
                partners.join(", "),
                if row.is_square { "square" } else { "non-square" },
                row.diagonal_conjugator.map_or_else(|| "none".into(), |s| format!("diag(1, {})", f.format(s)))
            )
        })
        .collect();
    lines.push(format!("consistent: {}", r.consistent()));
    emit(format, &lines.join("\n"), &r.to_json());
    Ok(EXIT_OK)
}

fn ring_info(format: Format, text: &str, p: Option<u64>) -> Outcome {
    let ring = Ring::parse(text)?;
    let locals = crt_decompose(ring.spec());
    let mut lines = vec![
        format!("ring: {ring}"),
        format!("order: {}", ring.size()),
        format!("characteristic: {}", ring.characteristic()),
        format!("field: {}", ring.is_field()),
    ];
    for lf in &locals {
        lines.push(format!(
            "local factor {}: residue characteristic {}, |k^x| = {}",
            lf.spec, lf.p, lf.residue_field_unit_order
        ));
    }
    let mut value = json!({
        "ring": ring.to_string(),
        "order": ring.size(),
        "characteristic": ring.characteristic(),
        "field": ring.is_field(),
        "local_factors": locals.iter().map(|lf| json!({
            "spec": lf.spec.to_string(),
            "p": lf.p,
            "residue_field_unit_order": lf.residue_field_unit_order,
        })).collect::<Vec<_>>(),
    });
    if let Some(p) = p {
        let u = find_primitive_root(&ring, p)?;
        lines.push(format!(
            "primitive root of order {p} with u - 1 a unit: {}",
            u.map_or_else(|| "absent".into(), |u| ring.format(u))
        ));
        value["primitive_root"] = u.map_or(Value::Null, |u| ring.to_json(u));
    }
    emit(format, &lines.join("\n"), &value);
    Ok(EXIT_OK)
}

fn run(cli: Cli) -> Outcome {
    let budget = Budget::from_env();
    let format = cli.format;
    match cli.command {
        Command::Construct { ring, n, out } => construct(format, &ring, n, out.as_deref()),
        Command::Verify { input, ring, classical } => verify(format, &input, ring.as_deref(), classical),
        Command::SearchSl3 { q, out } => search_sl3(format, &q, out.as_deref(), &budget),
        Command::OracleLemma { q, shape_check } => oracle_lemma(format, &q, shape_check, &budget),
        Command::RemarkCheck { q } => remark_check(format, &q, &budget),
        Command::Sl2Analysis { q } => sl2_analysis(format, q, &budget),
        Command::RingInfo { ring, p } => ring_info(format, &ring, p),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
