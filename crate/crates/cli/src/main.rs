//! `powersym`: command-line front end for the powersym library.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use powersym::multipoly::{elementary, vandermonde_squared};
use powersym::newton_engine::{
    check_formula, express_e, hankel_det, hankel_det_x, hankel_subset_sum, EFormula, HankelSpec,
    LastRowRelation, Route, Verdict,
};
use powersym::parse::{parse_coeff_list, parse_target};
use powersym::render::Style;
use powersym::subalgebra_lab::{
    membership, witness_closed_form, witness_coefficient, witness_partition, MembershipQuery,
};
use powersym::trace_charpoly::{
    charpoly_from_traces_with, parse_matrix_json, power_traces, simulate_traces, CharpolyOptions,
    TraceSequence,
};
use powersym::{Error, RingSpec};

#[derive(Parser, Debug)]
#[command(name = "powersym", version, about = "Elementary symmetric polynomials from power sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the output document to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Express e_k in n variables as a fraction of power sums.
    Express {
        #[arg(long)]
        ring: RingSpec,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write products of power sums as p_{1334} in LaTeX output.
        #[arg(long)]
        shorthand: bool,
        /// Also print the last-row relation with e_1..e_{k-1} kept symbolic.
        #[arg(long)]
        keep_e: bool,
    },
    /// Synthesize and verify every e_k for the given rings and n.
    VerifySweep {
        #[arg(long, value_delimiter = ',', default_value = "Z,F2,F3,F5")]
        rings: Vec<RingSpec>,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Expand a power-sum Hankel determinant in x1..xn.
    HankelDet {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ring: RingSpec,
        /// Index of the top-left power sum.
        #[arg(long, default_value_t = 1)]
        start: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Recover a characteristic polynomial from traces of powers.
    Charpoly {
        #[arg(long)]
        ring: RingSpec,
        #[arg(long)]
        n: usize,
        /// Comma-separated values of Tr(T), Tr(T^2), ...
        #[arg(long, allow_hyphen_values = true)]
        traces: String,
        /// Return the inductive result without checking that it is the
        /// only polynomial consistent with the traces.
        #[arg(long)]
        no_uniqueness_check: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Traces of powers of a matrix given as a JSON 2-D array.
    TracesOf {
        #[arg(long)]
        ring: RingSpec,
        /// JSON text, or @path to read it from a file.
        #[arg(long)]
        matrix: String,
        /// Number of traces; defaults to the horizon for the matrix size.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide membership of a symmetric polynomial in the power-sum subalgebra.
    Membership {
        #[arg(long)]
        ring: RingSpec,
        #[arg(long)]
        n: usize,
        /// Expression in e_k, p_k and h_k, e.g. "e1^2 - 2*e2".
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Allowed power-sum indices; defaults to those coprime to the characteristic.
        #[arg(long, value_delimiter = ',')]
        generators: Option<Vec<u32>>,
        #[arg(long)]
        verbose: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Coefficient of e_r^a e_b in p_k, where k = a*r + b.
    Witness {
        #[arg(long)]
        ring: RingSpec,
        #[arg(long)]
        k: usize,
        /// Number of variables; defaults to max(k, r).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Outcome of a command that ran to completion.
struct Report {
    document: String,
    negative: bool,
}

impl Report {
    fn ok(document: String) -> Self {
        Report { document, negative: false }
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
    let report = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let mut doc = report.document;
    if !doc.ends_with('\n') {
        doc.push('\n');
    }
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &doc) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{doc}"),
    }
    ExitCode::from(if report.negative { 2 } else { 0 })
}

fn run(cmd: &Command) -> Result<Report, Error> {
    match cmd {
        Command::Express { ring, n, k, format, shorthand, keep_e } => {
            express(*ring, *n, *k, *format, *shorthand, *keep_e)
        }
        Command::VerifySweep { rings, max_n, format } => verify_sweep(rings, *max_n, *format),
        Command::HankelDet { d, n, ring, start, format } => hankel(*ring, *d, *n, *start, *format),
        Command::Charpoly { ring, n, traces, no_uniqueness_check, format } => {
            charpoly(*ring, *n, traces, !no_uniqueness_check, *format)
        }
        Command::TracesOf { ring, matrix, count, format } => traces_of(*ring, matrix, *count, *format),
        Command::Membership { ring, n, target, generators, verbose, format } => {
            member(*ring, *n, target, generators.as_deref(), *verbose, *format)
        }
        Command::Witness { ring, k, n, format } => witness(*ring, *k, *n, *format),
    }
}

fn to_json_string<T: serde::Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable document")
}

fn verdict_word(v: &Verdict) -> &'static str {
    match v {
        Verdict::Verified => "verified",
        Verdict::Mismatch => "MISMATCH",
        Verdict::DenominatorVanishes => "denominator vanishes",
    }
}

fn express(spec: RingSpec, n: usize, k: usize, format: Format, shorthand: bool, keep_e: bool) -> Result<Report, Error> {
    let f = express_e(k, n, spec)?;
    let verdict = check_formula(&f);
    let verified = verdict == Verdict::Verified;
    let relation = match (keep_e, f.route) {
        (true, Route::Hankel) => Some(LastRowRelation::new(n, k, spec)?.render()),
        _ => None,
    };
    let document = match format {
        Format::Json => to_json_string(&f.to_json(Some(verified))),
        Format::Text | Format::Latex => {
            let style = match (format, shorthand) {
                (Format::Text, _) => Style::Text,
                (_, false) => Style::Latex,
                (_, true) => Style::LatexShorthand,
            };
            let lhs = if format == Format::Text { format!("e{k}") } else { format!("e_{{{k}}}") };
            let mut out = format!("{lhs} = {}\n", f.render(style));
            writeln!(out, "ring: {spec}, n: {n}, route: {}, denominator: {}", route_word(f.route), f.denominator_id)
                .unwrap();
            if let Some(rel) = relation {
                writeln!(out, "relation: e{k} = {rel}").unwrap();
            }
            write!(out, "verification: {}", verdict_word(&verdict)).unwrap();
            out
        }
    };
    Ok(Report { document, negative: false })
}

fn route_word(r: Route) -> &'static str {
    match r {
        Route::Newton => "newton",
        Route::Hankel => "hankel",
    }
}

struct SweepRow {
    k: usize,
    n: usize,
    spec: RingSpec,
    verdict: Result<Verdict, Error>,
    denominator: String,
    millis: f64,
}

fn sweep_point(k: usize, n: usize, spec: RingSpec) -> SweepRow {
    let start = Instant::now();
    let outcome = express_e(k, n, spec).map(|f: EFormula| (check_formula(&f), f.denominator_id.to_string()));
    let millis = start.elapsed().as_secs_f64() * 1e3;
    let (verdict, denominator) = match outcome {
        Ok((v, d)) => (Ok(v), d),
        Err(e) => (Err(e), "-".into()),
    };
    SweepRow { k, n, spec, verdict, denominator, millis }
}

fn verify_sweep(rings: &[RingSpec], max_n: usize, format: Format) -> Result<Report, Error> {
    if max_n == 0 || max_n > 12 {
        return Err(Error::InvalidRange("--max-n must be in 1..=12".into()));
    }
    let mut grid = Vec::new();
    for &spec in rings {
        for n in 1..=max_n {
            for k in 1..=n {
                grid.push((k, n, spec));
            }
        }
    }
    let rows: Vec<SweepRow> = grid.par_iter().map(|&(k, n, s)| sweep_point(k, n, s)).collect();
    let total = rows.len();
    let ok = rows.iter().filter(|r| matches!(r.verdict, Ok(Verdict::Verified))).count();
    let document = match format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "k": r.k,
                        "n": r.n,
                        "ring": r.spec.to_string(),
                        "verified": matches!(r.verdict, Ok(Verdict::Verified)),
                        "denominator": r.denominator,
                        "millis": r.millis,
                    })
                })
                .collect();
            to_json_string(&json!({ "rows": items, "verified": ok, "total": total }))
        }
        Format::Text | Format::Latex => {
            let mut out = format!("{:>3} {:>3} {:>4} {:<22} {:<18} {:>10}\n", "k", "n", "ring", "verified", "denominator", "ms");
            for r in &rows {
                let status = match &r.verdict {
                    Ok(v) => verdict_word(v).to_string(),
                    Err(e) => format!("error: {e}"),
                };
                writeln!(
                    out,
                    "{:>3} {:>3} {:>4} {:<22} {:<18} {:>10.3}",
                    r.k,
                    r.n,
                    r.spec.to_string(),
                    status,
                    r.denominator,
                    r.millis
                )
                .unwrap();
            }
            write!(out, "{ok}/{total} verified ({:.1}%)", 100.0 * ok as f64 / total.max(1) as f64).unwrap();
            out
        }
    };
    Ok(Report { document, negative: ok != total })
}

fn hankel(spec: RingSpec, d: usize, n: usize, start: usize, format: Format) -> Result<Report, Error> {
    if d == 0 || n == 0 || start == 0 || d > 8 || n > 8 {
        return Err(Error::InvalidRange("need 1 <= d, n <= 8 and start >= 1".into()));
    }
    let h = HankelSpec { d, n, start };
    let in_p = hankel_det(&h, spec);
    let in_x = in_p.subst_x(n);
    let check = if start != 1 {
        None
    } else if d > n {
        Some(("det vanishes when d > n", in_x.is_zero()))
    } else if d == n {
        let expected = &elementary(n, n, spec) * &vandermonde_squared(n, spec);
        Some(("det = e_n * prod_{i<j} (x_i - x_j)^2", in_x == expected))
    } else {
        Some(("det = sum over d-subsets of det P_{d,d}", in_x == hankel_subset_sum(d, n, spec)))
    };
    debug_assert!(start != 1 || in_x == hankel_det_x(d, n, spec));
    let document = match format {
        Format::Json => to_json_string(&json!({
            "d": d,
            "n": n,
            "start": start,
            "ring": spec.to_string(),
            "det_p": in_p.render(Style::Text),
            "det_x": in_x.to_json(),
            "identity": check.map(|(name, ok)| json!({ "name": name, "holds": ok })),
        })),
        Format::Text | Format::Latex => {
            let style = if format == Format::Text { Style::Text } else { Style::Latex };
            let mut out = format!("{h} = {}\n", in_p.render(style));
            writeln!(out, "in x1..x{n}: {in_x}").unwrap();
            match check {
                Some((name, ok)) => write!(out, "check {name}: {}", if ok { "holds" } else { "FAILS" }).unwrap(),
                None => write!(out, "check: none for start != 1").unwrap(),
            }
            out
        }
    };
    let failed = matches!(check, Some((_, false)));
    Ok(Report { document, negative: failed })
}

fn charpoly(spec: RingSpec, n: usize, traces: &str, gate: bool, format: Format) -> Result<Report, Error> {
    let values = parse_coeff_list(traces, spec)?;
    let t = TraceSequence::new(spec, n, values)?;
    let warnings = t.frobenius_violations();
    for k in &warnings {
        let r = spec.characteristic();
        eprintln!("warning: Tr(T^{}) != Tr(T^{k})^{r}; these traces do not come from a matrix", k * r as usize);
    }
    match charpoly_from_traces_with(&t, CharpolyOptions { uniqueness_check: gate }) {
        Ok(cp) => {
            let document = match format {
                Format::Json => to_json_string(&cp.to_json()),
                Format::Text | Format::Latex => {
                    let mut out = format!("{cp}\n");
                    for (i, p) in cp.provenance().iter().enumerate() {
                        writeln!(out, "e{} = {} ({p})", i + 1, cp.elementary_values()[i].balanced_string()).unwrap();
                    }
                    out
                }
            };
            Ok(Report::ok(document))
        }
        Err(Error::Indeterminate(k)) => {
            let document = match format {
                Format::Json => to_json_string(&json!({ "ring": spec.to_string(), "indeterminate": k })),
                _ => format!("indeterminate: e{k} is not determined by the traces"),
            };
            Ok(Report { document, negative: true })
        }
        Err(e) => Err(e),
    }
}

fn traces_of(spec: RingSpec, matrix: &str, count: Option<usize>, format: Format) -> Result<Report, Error> {
    let text = match matrix.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Error::Json(format!("cannot read {path}: {e}")))?,
        None => matrix.to_string(),
    };
    let m = parse_matrix_json(&text, spec)?;
    let t = match count {
        Some(c) if c > 64 => return Err(Error::InvalidRange("--count must be at most 64".into())),
        Some(c) => power_traces(&m, c)?,
        None => simulate_traces(&m)?.traces().to_vec(),
    };
    let strings: Vec<String> = t.iter().map(|c| c.to_string()).collect();
    let document = match format {
        Format::Json => to_json_string(&json!({ "ring": spec.to_string(), "n": m.len(), "traces": strings })),
        _ => strings.join(","),
    };
    Ok(Report::ok(document))
}

fn member(
    spec: RingSpec,
    n: usize,
    target: &str,
    generators: Option<&[u32]>,
    verbose: bool,
    format: Format,
) -> Result<Report, Error> {
    let t = parse_target(target, n, spec)?;
    let mut q = MembershipQuery::new(t);
    if let Some(g) = generators {
        q = q.with_generators(g.iter().copied());
    }
    let ans = membership(&q)?;
    let document = match format {
        Format::Json => to_json_string(&ans.to_json(spec, n)),
        Format::Text | Format::Latex => {
            let mut out = if ans.member {
                format!("member of {spec}[p's] in {n} variables\n")
            } else {
                format!("NOT a member of {spec}[p's] in {n} variables\n")
            };
            if ans.member {
                let cert: Vec<(bool, String)> = ans
                    .certificate
                    .iter()
                    .map(|(p, c)| {
                        let mut distinct = p.parts().to_vec();
                        distinct.dedup();
                        let factors: Vec<String> = distinct
                            .iter()
                            .map(|&i| match p.multiplicity(i) {
                                1 => format!("p{i}"),
                                m => format!("p{i}^{m}"),
                            })
                            .collect();
                        let c = c.balanced_string();
                        let (negative, magnitude) = match c.strip_prefix('-') {
                            Some(m) => (true, m.to_string()),
                            None => (false, c),
                        };
                        let body = match (magnitude.as_str(), factors.is_empty()) {
                            (m, true) => m.to_string(),
                            ("1", false) => factors.join("*"),
                            (m, false) => format!("{m}*{}", factors.join("*")),
                        };
                        (negative, body)
                    })
                    .collect();
                let mut text = String::new();
                for (i, (negative, body)) in cert.iter().enumerate() {
                    match (i, negative) {
                        (0, true) => text.push('-'),
                        (0, false) => {}
                        (_, true) => text.push_str(" - "),
                        (_, false) => text.push_str(" + "),
                    }
                    text.push_str(body);
                }
                if text.is_empty() {
                    text.push('0');
                }
                writeln!(out, "certificate: target = {text}").unwrap();
            }
            if verbose || !ans.member {
                for s in &ans.slices {
                    writeln!(
                        out,
                        "degree {}: slice dimension {}, {} generator products spanning dimension {}",
                        s.degree, s.slice_dimension, s.generators, s.rank
                    )
                    .unwrap();
                }
            }
            out
        }
    };
    Ok(Report { document, negative: !ans.member })
}

fn witness(spec: RingSpec, k: usize, n: Option<usize>, format: Format) -> Result<Report, Error> {
    let r = spec.characteristic();
    if r == 0 {
        return Err(Error::InvalidRange(format!("{spec} has characteristic zero")));
    }
    if k == 0 || k > 32 {
        return Err(Error::InvalidRange("--k must be in 1..=32".into()));
    }
    let n = n.unwrap_or(k.max(r as usize));
    let (a, b, part) = witness_partition(k, r)?;
    let value = witness_coefficient(k, spec, n)?;
    let closed = witness_closed_form(k, spec)?;
    let document = match format {
        Format::Json => to_json_string(&json!({
            "ring": spec.to_string(),
            "k": k,
            "n": n,
            "a": a,
            "b": b,
            "partition": part.parts(),
            "coefficient": value.to_string(),
            "closed_form": closed.to_string(),
        })),
        _ => format!(
            "coefficient of e{r}^{a}*e{b} in p{k} ({n} variables over {spec}): {value}\nclosed form (-1)^(k+a+1)*k: {closed}"
        ),
    };
    Ok(Report::ok(document))
}
