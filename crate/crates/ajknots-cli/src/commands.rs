//! The commands, each producing its output as text so that golden files
//! can compare it.

use std::fmt::Write as _;

use ajknots::algebra::text::format_ml;
use ajknots::annihilator::{
    build_candidate, check_operator, classify, evaluate_and_compare, minimality_certificate, minimality_scan,
    AJReport, CaseId, CaseParams, CollapsePolicy, ScanReport, ScanWindow,
};
use ajknots::apoly::{apoly_of, apoly_sum_lemma, APoly};
use ajknots::jones::{bracket, degree_bounds, JonesSequence, KnotExpr, TorusKnotParam};
use ajknots::suite::Suite;
use ajknots::Error;
use serde::{Deserialize, Serialize};

use crate::{cache, golden, Cli, Command, Format, ScanArgs};
use crate::{EXIT_MISMATCH, EXIT_OK, EXIT_OUT_OF_SCOPE, EXIT_USAGE};

/// What a command prints and its exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_USAGE }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize to JSON");
    s.push('\n');
    s
}

fn parse_knot(s: &str) -> Result<KnotExpr, Outcome> {
    s.parse::<KnotExpr>().map_err(Outcome::usage)
}

fn parse_sum(s: &str) -> Result<(TorusKnotParam, TorusKnotParam), Outcome> {
    match parse_knot(s)? {
        KnotExpr::Sum(a, b) => Ok((a, b)),
        k => Err(Outcome::usage(format!("{k} is not a connected sum T(p,q)#T(a,b)"))),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    let r = match &cli.command {
        Command::Jones { knot, n_max } => jones(knot, *n_max, format),
        Command::Apoly { knot } => apoly(knot, format),
        Command::Verify { knot, n_max, strict_denominators, scan } => {
            let policy = if *strict_denominators { CollapsePolicy::Fail } else { CollapsePolicy::Skip };
            verify(knot, *n_max, policy, scan, format)
        }
        Command::Scan { knot, n_max, scan } => scan_cmd(knot, *n_max, scan, format),
        Command::Selftest { n_max, criteria, golden } => {
            Ok(selftest(*n_max, criteria, golden.as_deref(), format))
        }
    };
    r.unwrap_or_else(|o| o)
}

#[derive(Debug, Serialize, Deserialize)]
struct JonesRow {
    n: i64,
    value: String,
    /// Lowest and highest degree of `J(n)`, or of `[n] J(n)` for a sum.
    degrees: (i64, i64),
    predicted: (i64, i64),
    check: bool,
}

fn jones(knot: &str, n_max: i64, format: Format) -> Result<Outcome, Outcome> {
    let k = parse_knot(knot)?;
    let seq = JonesSequence::new(k);
    let mut warnings = cache::load(&seq);
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let v = seq.try_value(n).map_err(|e| Outcome { code: EXIT_MISMATCH, ..Outcome::usage(e) })?;
        let measured = match k {
            KnotExpr::Sum(..) => &v * &bracket(n),
            _ => v.clone(),
        };
        let degrees = (
            measured.lowest_degree().expect("J(n) is nonzero for n >= 1"),
            measured.highest_degree().expect("J(n) is nonzero for n >= 1"),
        );
        let predicted = degree_bounds(&k, n).expect("n >= 1");
        rows.push(JonesRow { n, value: v.to_string(), degrees, predicted, check: degrees == predicted });
    }
    warnings.extend(cache::store(&seq));
    let ok = rows.iter().all(|r| r.check);
    let stdout = match format {
        Format::Json => json(&rows),
        Format::Text => {
            let mut s = String::new();
            let measured = if matches!(k, KnotExpr::Sum(..)) { "[n]*J(n)" } else { "J(n)" };
            let _ = writeln!(s, "{k}: degrees of {measured} against the degree formulas");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "n = {:<3} degrees ({}, {}) predicted ({}, {}) {}  J = {}",
                    r.n,
                    r.degrees.0,
                    r.degrees.1,
                    r.predicted.0,
                    r.predicted.1,
                    if r.check { "PASS" } else { "FAIL" },
                    r.value
                );
            }
            s
        }
    };
    let stderr = warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    Ok(Outcome { stdout, stderr, code: if ok { EXIT_OK } else { EXIT_MISMATCH } })
}

#[derive(Debug, Serialize, Deserialize)]
struct ApolyOutput {
    knot: String,
    factored: String,
    expanded: String,
    /// The closed-form pattern of a connected sum.
    #[serde(skip_serializing_if = "Option::is_none")]
    pattern: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<String>,
    /// Whether the product rule and the closed form agree up to units.
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_check: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn apoly(knot: &str, format: Format) -> Result<Outcome, Outcome> {
    let k = parse_knot(knot)?;
    let a: APoly = apoly_of(&k);
    let mut out = ApolyOutput {
        knot: k.to_string(),
        factored: a.to_string(),
        expanded: format_ml(&a.expansion()),
        pattern: None,
        closed_form: None,
        cross_check: None,
        note: None,
    };
    if let KnotExpr::Sum(k1, k2) = k {
        let (case, lemma) = apoly_sum_lemma(k1, k2);
        out.pattern = Some(case.to_string());
        out.closed_form = Some(lemma.to_string());
        out.cross_check = Some(a.equivalent(&lemma));
        if (k1.p > 0) != (k2.p > 0) {
            out.note = Some("opposite signs: no annihilator construction in scope".to_string());
        }
    }
    let ok = out.cross_check != Some(false);
    let stdout = match format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "knot      {}", out.knot);
            let _ = writeln!(s, "factored  {}", out.factored);
            let _ = writeln!(s, "expanded  {}", out.expanded);
            if let (Some(p), Some(c), Some(x)) = (&out.pattern, &out.closed_form, out.cross_check) {
                let _ = writeln!(s, "pattern   {p}");
                let _ = writeln!(s, "closed    {c}");
                let _ = writeln!(s, "cross-check {}", if x { "PASS" } else { "FAIL" });
            }
            if let Some(n) = &out.note {
                let _ = writeln!(s, "note      {n}");
            }
            s
        }
    };
    Ok(Outcome { stdout, stderr: String::new(), code: if ok { EXIT_OK } else { EXIT_MISMATCH } })
}

/// A pipeline stage that could not complete.
#[derive(Debug, Serialize, Deserialize)]
struct StageFailure {
    stage: String,
    error: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct VerifyOutput {
    knot: String,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<CaseId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<CaseParams>,
    failures: Vec<StageFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<AJReport>,
}

fn fail(out: &mut VerifyOutput, stage: &str, e: impl std::fmt::Display) {
    out.failures.push(StageFailure { stage: stage.to_string(), error: e.to_string() });
}

/// The scan window from the flags, or the support of `norm`: shared
/// below the candidate's degree and per coefficient at it.
fn scan_window(args: &ScanArgs, d: i64, norm: &ajknots::torus::SkewOperator) -> Result<ScanWindow, Outcome> {
    match (args.m_window, args.t_window) {
        (Some(m), Some(t)) => Ok(ScanWindow::Box { m, t }),
        (None, None) => {
            let (lo, hi) = norm.l_degree().map_err(Outcome::usage)?;
            let w =
                if hi - lo == d { ScanWindow::support_of(norm) } else { ScanWindow::shared_support_of(norm) };
            w.map_err(Outcome::usage)
        }
        _ => Err(Outcome::usage("--m-window and --t-window must be given together")),
    }
}

fn verify(
    knot: &str,
    n_max: i64,
    policy: CollapsePolicy,
    scan: &ScanArgs,
    format: Format,
) -> Result<Outcome, Outcome> {
    let (k1, k2) = parse_sum(knot)?;
    if scan.scan_degree.is_none() && (scan.m_window.is_some() || scan.t_window.is_some()) {
        return Err(Outcome::usage("scan windows need --scan-degree"));
    }
    let mut out = VerifyOutput {
        knot: KnotExpr::Sum(k1, k2).to_string(),
        ok: false,
        case: None,
        params: None,
        failures: Vec::new(),
        report: None,
    };
    let mut warnings = Vec::new();
    let code = match classify(k1, k2) {
        Err(e @ Error::OppositeSigns(..)) => {
            fail(&mut out, "classify", e);
            EXIT_OUT_OF_SCOPE
        }
        Err(e) => return Err(Outcome::usage(e)),
        Ok((case, params)) => {
            out.case = Some(case);
            out.params = Some(params);
            let seq = JonesSequence::new(params.knot());
            warnings.extend(cache::load(&seq));
            run_pipeline(&mut out, case, params, &seq, n_max, policy, scan)?;
            warnings.extend(cache::store(&seq));
            if out.ok {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            }
        }
    };
    let stdout = match format {
        Format::Json => json(&out),
        Format::Text => render_verify(&out),
    };
    let stderr = warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    Ok(Outcome { stdout, stderr, code })
}

fn run_pipeline(
    out: &mut VerifyOutput,
    case: CaseId,
    params: CaseParams,
    seq: &JonesSequence,
    n_max: i64,
    policy: CollapsePolicy,
    scan: &ScanArgs,
) -> Result<(), Outcome> {
    let (k1, k2) = params.knots();
    let cand = match build_candidate(case, k1, k2) {
        Ok(c) => c,
        Err(e) => {
            fail(out, "build_candidate", e);
            return Ok(());
        }
    };
    let annihilation = match check_operator(&cand.operator, seq, 1..=n_max, policy) {
        Ok(r) => Some(r),
        Err(e) => {
            fail(out, "check_annihilation", e);
            None
        }
    };
    let mut report = match evaluate_and_compare(&cand) {
        Ok(r) => r,
        Err(e) => {
            fail(out, "evaluate_and_compare", e);
            return Ok(());
        }
    };
    report.annihilation = annihilation;
    match minimality_certificate(case, params) {
        Ok(c) => report.certificates = Some(c),
        Err(e) => fail(out, "minimality_certificate", e),
    }
    if let Some(d) = scan.scan_degree {
        let norm = cand.operator.normalize().map_err(Outcome::usage)?;
        let window = scan_window(scan, d, &norm)?;
        match minimality_scan(&params.knot(), d, window, 1..=n_max) {
            Ok(s) => report.scan = Some(s),
            Err(Error::InvalidParams(m)) => return Err(Outcome::usage(m)),
            Err(e) => fail(out, "minimality_scan", e),
        }
    }
    let annihilates = report.annihilation.as_ref().is_some_and(|a| a.ok && !a.checked.is_empty());
    if !report.matches {
        fail(out, "evaluate_and_compare", report.require_match().unwrap_err());
    }
    if let Some(a) = &report.annihilation {
        if let Some((n, v)) = &a.failure {
            fail(out, "check_annihilation", format!("nonzero at n = {n}: {v}"));
        }
    }
    out.ok = out.failures.is_empty() && annihilates;
    out.report = Some(report);
    Ok(())
}

fn render_verify(out: &VerifyOutput) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "knot           {}", out.knot);
    if let (Some(case), Some(p)) = (out.case, out.params) {
        let _ = writeln!(s, "case           {case} with (p, q, a, b) = ({}, {}, {}, {})", p.p, p.q, p.a, p.b);
    }
    if let Some(r) = &out.report {
        let _ = writeln!(s, "L-degree       {}", r.l_degree);
        if let Some(a) = &r.annihilation {
            let status = match &a.failure {
                None => "zero".to_string(),
                Some((n, _)) => format!("NONZERO at n = {n}"),
            };
            let _ = writeln!(s, "annihilation   {status} at n = {:?}", a.checked);
            if !a.skipped.is_empty() {
                let _ = writeln!(s, "skipped        {:?}", a.skipped);
            }
        }
        let factors: Vec<String> =
            r.factors.iter().map(|f| format!("({})^{}", f.display, f.multiplicity)).collect();
        let _ = writeln!(s, "factors at -1  {}", factors.join(" "));
        let repeated =
            if r.repeated_factors.is_empty() { "none".to_string() } else { r.repeated_factors.join(", ") };
        let _ = writeln!(s, "repeated       {repeated}");
        let _ = writeln!(s, "M-factor       {}", r.m_factor);
        let _ = writeln!(s, "squarefree     {}", r.squarefree_part);
        let _ = writeln!(s, "A-polynomial   {}", r.a_polynomial);
        let _ = writeln!(s, "match          {}", r.matches);
        if let Some(c) = &r.certificates {
            for e in &c.entries {
                let agrees = match e.agrees {
                    Some(true) => ", agrees with closed form",
                    Some(false) => ", DISAGREES with closed form",
                    None => "",
                };
                let _ = writeln!(
                    s,
                    "certificate    {} (size {}): {}{agrees}",
                    e.label,
                    e.size,
                    if e.nonzero { "nonzero" } else { "ZERO" }
                );
            }
        }
        if let Some(sc) = &r.scan {
            let _ = writeln!(s, "{}", render_scan_line(sc));
        }
    }
    for f in &out.failures {
        let _ = writeln!(s, "failure        {}: {}", f.stage, f.error);
    }
    let _ = writeln!(s, "verdict        {}", if out.ok { "PASS" } else { "FAIL" });
    s
}

fn render_scan_line(sc: &ScanReport) -> String {
    let mut s = format!(
        "scan           L-degree <= {}, {} unknowns, {} equations, n = {}..{}, rank {} mod {}, kernel {}",
        sc.l_degree_bound,
        sc.unknowns,
        sc.equations,
        sc.n_range.0,
        sc.n_range.1,
        sc.modular_rank,
        sc.prime,
        sc.kernel_dimension
    );
    if let Some(v) = sc.witness_verified {
        let _ = write!(s, ", witness verified on a longer range: {v}");
    }
    s
}

fn scan_cmd(knot: &str, n_max: i64, args: &ScanArgs, format: Format) -> Result<Outcome, Outcome> {
    let (k1, k2) = parse_sum(knot)?;
    let Some(d) = args.scan_degree else {
        return Err(Outcome::usage("scan needs --scan-degree"));
    };
    let (case, params) = match classify(k1, k2) {
        Ok(x) => x,
        Err(e @ Error::OppositeSigns(..)) => {
            return Err(Outcome { code: EXIT_OUT_OF_SCOPE, ..Outcome::usage(e) });
        }
        Err(e) => return Err(Outcome::usage(e)),
    };
    let window = match (args.m_window, args.t_window) {
        (Some(m), Some(t)) => ScanWindow::Box { m, t },
        _ => {
            let cand = build_candidate(case, k1, k2).map_err(Outcome::usage)?;
            let norm = cand.operator.normalize().map_err(Outcome::usage)?;
            scan_window(args, d, &norm)?
        }
    };
    let report = minimality_scan(&params.knot(), d, window, 1..=n_max).map_err(Outcome::usage)?;
    let stdout = match format {
        Format::Json => json(&report),
        Format::Text => {
            let mut s = format!("knot           {}\n{}\n", report.knot, render_scan_line(&report));
            if let Some(w) = &report.witness {
                let _ = writeln!(s, "witness        {w}");
            }
            s
        }
    };
    let code = if report.witness_verified == Some(false) { EXIT_MISMATCH } else { EXIT_OK };
    Ok(Outcome { stdout, stderr: String::new(), code })
}

fn selftest(n_max: i64, criteria: &[u8], golden_dir: Option<&std::path::Path>, format: Format) -> Outcome {
    let suite = Suite::new(n_max);
    let ids: Vec<u8> =
        if criteria.is_empty() { (1..=ajknots::suite::CRITERIA).collect() } else { criteria.to_vec() };
    let mut text = String::new();
    let mut results = Vec::new();
    for id in ids {
        let r = suite.run(id);
        let _ = writeln!(text, "{r}");
        for c in r.checks.iter().filter(|c| !c.passed) {
            let _ = writeln!(text, "    [FAILED] {}: {}", c.label, c.detail);
        }
        results.push(r);
    }
    let goldens = golden_dir.map(golden::compare_dir).unwrap_or_default();
    for g in &goldens {
        let _ = writeln!(text, "{g}");
    }
    let ok = results.iter().all(|r| r.passed) && goldens.iter().all(|g| g.passed);
    let stdout = match format {
        Format::Json => json(&serde_json::json!({ "ok": ok, "criteria": results, "golden": goldens })),
        Format::Text => {
            let _ = writeln!(text, "selftest {}", if ok { "PASS" } else { "FAIL" });
            text
        }
    };
    Outcome { stdout, stderr: String::new(), code: if ok { EXIT_OK } else { EXIT_MISMATCH } }
}
