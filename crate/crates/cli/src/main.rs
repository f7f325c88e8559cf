use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gcrfields::analysis::{
    howe_generation_check, kernel_dim, monomial_basis, solution_label, verify_diagram, witness_box8, DiagramId,
    DiagramSpec,
};
use gcrfields::poly::Polynomial;
use gcrfields::rep::{
    classify_family, format_decomposition, gt_patterns, lr_decompose, spectrum, value_labels, weyl_dim, GtPattern,
    HighestWeight, FAMILIES,
};
use gcrfields::scalar::{fmt_gaussian, parse_rational, Gaussian, Rational};
use gcrfields::slice::{pulled_back_r2, r2_identity_holds, real_slice_embed, signature_form, Signature};
use gcrfields::tensor::ValueShape;

// Writes to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! out_raw {
    ($($t:tt)*) => {{
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "gcrfields", version, about = "Spin-3/2 field equations on C^6 under SL(4,C), in exact arithmetic")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignatureArg {
    Euclidean,
    Lorentzian,
    Split,
}

impl From<SignatureArg> for Signature {
    fn from(s: SignatureArg) -> Self {
        match s {
            SignatureArg::Euclidean => Signature::Euclidean,
            SignatureArg::Lorentzian => Signature::Lorentzian,
            SignatureArg::Split => Signature::Split,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a tensor product of two irreducible modules.
    TensorDecompose { lambda: HighestWeight, mu: HighestWeight },
    /// Isotypic labels of polynomial fields with values in V, per degree.
    Spectrum {
        #[arg(long, default_value_t = 8)]
        degree: i64,
        /// Value modules; defaults to all eight summands of V.
        #[arg(long, value_delimiter = ' ', num_args = 1..)]
        values: Vec<HighestWeight>,
    },
    /// Gelfand-Tsetlin patterns with a given top row.
    GtPatterns {
        weight: HighestWeight,
        #[arg(long)]
        count: bool,
    },
    /// Monomial basis of the homogeneous solutions of degree m.
    Basis { shape: ValueShape, m: u32 },
    /// Dimension of the homogeneous solutions of degree m.
    KernelDim { shape: ValueShape, m: u32 },
    /// Verify the structure of a Fischer decomposition diagram.
    VerifyDiagram {
        id: DiagramId,
        #[arg(long, default_value_t = 0)]
        m: u32,
        /// Highest homogeneity checked; defaults to m+4.
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Generate an isotypic component from its lowest box.
    HoweCheck {
        mu: HighestWeight,
        #[arg(long, default_value_t = 4)]
        cutoff: u32,
        #[arg(long, default_value_t = 6)]
        word_length: usize,
        /// Also evaluate the two-path composite on box 8 for m = 0..=M.
        #[arg(long, value_name = "M")]
        witness: Option<u32>,
    },
    /// r^2 restricted to a real form of C^6.
    RealSlice {
        #[arg(long, value_enum)]
        signature: Option<SignatureArg>,
        /// Real point as six comma separated rationals.
        #[arg(long, value_delimiter = ',', requires = "signature")]
        point: Vec<String>,
    },
    /// Conformal invariance of the first order systems.
    ConformalTable,
}

enum Failure {
    Verification,
    Usage(String),
}

type Run = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    if format == Format::Dot && !matches!(cli.command, Command::VerifyDiagram { .. }) {
        eprintln!("error: --format dot is only available for verify-diagram");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::TensorDecompose { lambda, mu } => tensor_decompose(format, lambda, mu),
        Command::Spectrum { degree, values } => spectrum_cmd(format, degree, values),
        Command::GtPatterns { weight, count } => gt_cmd(format, weight, count),
        Command::Basis { shape, m } => basis_cmd(format, shape, m),
        Command::KernelDim { shape, m } => kernel_cmd(format, shape, m),
        Command::VerifyDiagram { id, m, depth } => diagram_cmd(format, id, m, depth.unwrap_or(m + 4)),
        Command::HoweCheck { mu, cutoff, word_length, witness } => howe_cmd(format, mu, cutoff, word_length, witness),
        Command::RealSlice { signature, point } => slice_cmd(format, signature.map(Into::into), &point),
        Command::ConformalTable => conformal_cmd(format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(value: Value) {
    out!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
}

fn verdict(ok: bool) -> Run {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn weight_json(w: HighestWeight) -> Value {
    json!(w.normalize().0)
}

fn tensor_decompose(format: Format, lambda: HighestWeight, mu: HighestWeight) -> Run {
    let d = lr_decompose(lambda, mu);
    match format {
        Format::Json => emit(Value::Array(
            d.iter().rev().map(|(w, c)| json!({ "nu": weight_json(*w), "mult": c })).collect(),
        )),
        _ => out!("{}", format_decomposition(&d)),
    }
    Ok(())
}

fn spectrum_cmd(format: Format, degree: i64, values: Vec<HighestWeight>) -> Run {
    if degree < 0 {
        return Err(Failure::Usage("degree must be nonnegative".into()));
    }
    let values = if values.is_empty() { value_labels() } else { values };
    let spec = spectrum(&values, degree);
    let family = |w: HighestWeight| classify_family(w).map(|(i, m)| (FAMILIES[i].0, m));
    match format {
        Format::Json => emit(json!({
            "values": values.iter().map(|w| weight_json(*w)).collect::<Vec<_>>(),
            "max_degree": degree,
            "labels": spec.iter().rev().map(|(w, per)| json!({
                "nu": weight_json(*w),
                "family": family(*w).map(|(f, m)| json!({ "family": f, "m": m })),
                "multiplicity_by_degree": per,
            })).collect::<Vec<_>>(),
        })),
        _ => {
            for (w, per) in spec.iter().rev() {
                let fam = family(*w).map_or_else(|| "-".to_string(), |(f, m)| format!("{f} m={m}"));
                let per: Vec<String> = per.iter().map(u64::to_string).collect();
                out!("{:<10} {:<16} {}", w.to_string(), fam, per.join(" "));
            }
        }
    }
    Ok(())
}

fn pattern_rows(p: &GtPattern) -> Value {
    json!(p.rows.iter().rev().collect::<Vec<_>>())
}

fn pattern_text(p: &GtPattern) -> String {
    p.rows.iter().rev().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join(" | ")
}

fn gt_cmd(format: Format, weight: HighestWeight, count: bool) -> Run {
    let patterns = gt_patterns(weight);
    match (format, count) {
        (Format::Json, true) => emit(json!({ "weight": weight_json(weight), "count": patterns.len() })),
        (Format::Json, false) => emit(json!({
            "weight": weight_json(weight),
            "count": patterns.len(),
            "patterns": patterns.iter().map(pattern_rows).collect::<Vec<_>>(),
        })),
        (_, true) => out!("{}", patterns.len()),
        (_, false) => patterns.iter().for_each(|p| out!("{}", pattern_text(p))),
    }
    Ok(())
}

fn basis_cmd(format: Format, shape: ValueShape, m: u32) -> Run {
    let basis = monomial_basis(shape, m).map_err(|e| Failure::Usage(e.to_string()))?;
    match format {
        Format::Json => emit(json!({
            "shape": shape.tag(),
            "m": m,
            "label": weight_json(solution_label(shape, m)),
            "fields": basis.iter().map(|(p, f)| json!({ "pattern": pattern_rows(p), "field": f.to_json() })).collect::<Vec<_>>(),
        })),
        _ => {
            for (p, f) in &basis {
                out!("{}  ({} terms)", pattern_text(p), f.coordinates().count());
            }
        }
    }
    Ok(())
}

fn kernel_cmd(format: Format, shape: ValueShape, m: u32) -> Run {
    let dim = kernel_dim(shape, m);
    let label = solution_label(shape, m);
    let expected = weyl_dim(label) as usize;
    match format {
        Format::Json => emit(json!({
            "shape": shape.tag(),
            "m": m,
            "dim": dim,
            "label": weight_json(label),
            "expected": expected,
        })),
        _ => out!("{dim}"),
    }
    verdict(dim == expected)
}

fn diagram_cmd(format: Format, id: DiagramId, m: u32, depth: u32) -> Run {
    eprintln!("diagram {id}: m={m} depth={depth}");
    let report = verify_diagram(&DiagramSpec::generate(id, m, depth));
    for c in &report.checks {
        eprintln!("  {} {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.kind.name(), c.subject, c.detail);
    }
    match format {
        Format::Json => emit(report.to_json()),
        Format::Dot => out_raw!("{}", report.to_dot()),
        Format::Text => out_raw!("{}", report.to_text()),
    }
    verdict(report.passed())
}

fn howe_cmd(format: Format, mu: HighestWeight, cutoff: u32, word_length: usize, witness: Option<u32>) -> Run {
    eprintln!("howe {mu}: cutoff={cutoff} words<={word_length}");
    let report = howe_generation_check(mu, cutoff, word_length);
    let witnesses: Vec<(u32, bool)> =
        (0..=witness.unwrap_or(0)).filter(|_| witness.is_some()).map(|m| (m, !witness_box8(m).0.is_zero())).collect();
    let ok = report.saturated() && witnesses.iter().all(|(_, w)| *w);
    match format {
        Format::Json => {
            let mut v = report.to_json();
            if witness.is_some() {
                v["witness_box8"] = witnesses.iter().map(|(m, w)| json!({ "m": m, "nonzero": w })).collect();
            }
            emit(v);
        }
        _ => {
            let dim = weyl_dim(mu);
            for l in &report.lines {
                out!("degree {:>2}: generated {:>4} / {:>4}", l.degree, l.generated as u64 * dim, l.multiplicity * dim);
            }
            out!("saturated: {}", report.saturated());
            for (m, w) in &witnesses {
                out!("box 8 composite witness, m={m}: {}", if *w { "nonzero" } else { "zero" });
            }
        }
    }
    verdict(ok)
}

fn render(p: &Polynomial<Gaussian>, names: [&str; 6]) -> String {
    let mut out = String::new();
    let terms: Vec<_> = p.terms().collect();
    for (mono, c) in terms.into_iter().rev() {
        let vars: Vec<String> = mono
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
            .collect();
        let coeff = fmt_gaussian(c);
        let term = match (coeff.as_str(), vars.is_empty()) {
            (_, true) => coeff.clone(),
            ("1", false) => vars.join(" "),
            ("-1", false) => format!("-{}", vars.join(" ")),
            _ if coeff.contains('i') => format!("({coeff}) {}", vars.join(" ")),
            _ => format!("{coeff} {}", vars.join(" ")),
        };
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            out += &format!(" - {rest}");
        } else {
            out += &format!(" + {term}");
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn slice_cmd(format: Format, signature: Option<Signature>, point: &[String]) -> Run {
    let sigs: Vec<Signature> = signature.map_or_else(|| Signature::ALL.to_vec(), |s| vec![s]);
    let point: Option<[Rational; 6]> = if point.is_empty() {
        None
    } else {
        let vals = point.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>();
        let vals = vals.map_err(|e| Failure::Usage(e.to_string()))?;
        Some(vals.try_into().map_err(|_| Failure::Usage("--point needs six coordinates".into()))?)
    };
    let mut ok = true;
    let mut rows = Vec::new();
    for sig in sigs {
        let holds = r2_identity_holds(sig);
        ok &= holds;
        let names = sig.variable_names();
        let value = point.as_ref().map(|x| fmt_gaussian(&real_slice_embed(sig, x).r2()));
        match format {
            Format::Json => rows.push(json!({
                "signature": sig.name(),
                "r2": pulled_back_r2(sig).to_json(),
                "form": signature_form(sig).to_json(),
                "identity_holds": holds,
                "r2_at_point": value,
            })),
            _ => {
                out!("{}: r2 = {}  [{}]", sig.name(), render(&pulled_back_r2(sig), names), if holds { "ok" } else { "MISMATCH" });
                if let Some(v) = value {
                    out!("{}: r2(point) = {v}", sig.name());
                }
            }
        }
    }
    if format == Format::Json {
        emit(Value::Array(rows));
    }
    verdict(ok)
}

/// Conformal invariance of each first order system, by value module.
const CONFORMAL: [(&str, bool); 8] = [
    ("300", true),
    ("333", true),
    ("100", true),
    ("111", true),
    ("311", false),
    ("322", false),
    ("210", false),
    ("221", false),
];

fn conformal_cmd(format: Format) -> Run {
    match format {
        Format::Json => emit(Value::Array(
            CONFORMAL.iter().map(|(s, c)| json!({ "operator": format!("D^{s}"), "conformally_invariant": c })).collect(),
        )),
        _ => {
            for (s, c) in CONFORMAL {
                out!("D^{s:<4} {}", if c { "conformally invariant" } else { "not conformally invariant" });
            }
        }
    }
    Ok(())
}
