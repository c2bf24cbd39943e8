//! Command implementations behind the `ginvariant` binary, kept in the
//! library so they can be tested (and reused) directly: analyze one field
//! to a JSON document, survey a range of d to CSV, drive the verification
//! sweep, and emit SageMath scripts that recompute a case in an independent
//! computer-algebra system.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::field::is_square_free;
use crate::ginv::{self, CaseCode, FieldReport, PrimeCase};
use crate::verify::{self, VerifyOutcome};
use crate::{Error, Result};

/// Schema version stamped on every JSON document.
pub const SCHEMA_VERSION: &str = "1";

/// CSV header for `survey` (and `analyze --format csv`).
pub const SURVEY_HEADER: &str =
    "d,discriminant,class_number,g_d,g_source,primes,max_C,elapsed_ms,error";

/// Output encoding for analyze/survey.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Knobs shared by the commands; `Default` mirrors the CLI defaults.
#[derive(Debug, Clone)]
pub struct Options {
    /// Cap for the per-class prime representative search.
    pub search_cap: i64,
    /// Width of the window [C, C + margin) the coverage suite checks.
    pub verify_margin: i64,
    /// Worker threads for the survey (0 = rayon default).
    pub threads: usize,
    pub format: Format,
}

impl Default for Options {
    fn default() -> Self {
        Options { search_cap: 10_000, verify_margin: 512, threads: 0, format: Format::Json }
    }
}

/// Serializable per-field report. Field order is the wire order; two runs
/// with the same flags are byte-identical except `elapsed_ms`.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub schema_version: &'static str,
    pub d: i64,
    pub discriminant: i64,
    pub class_number: u32,
    pub pythagoras: u8,
    pub g: u8,
    pub g_source: &'static str,
    pub classes: Vec<ClassEntry>,
    pub s_description: Vec<ExclusionEntry>,
    pub elapsed_ms: u64,
}

/// One ideal class; the analysis fields are null for the principal class,
/// and conjugate classes repeat the same prime data.
#[derive(Debug, Serialize)]
pub struct ClassEntry {
    pub form: [i64; 3],
    pub principal: bool,
    pub prime: Option<i64>,
    pub case: Option<u8>,
    pub n: Option<i64>,
    #[serde(rename = "C")]
    pub c: Option<i64>,
    #[serde(rename = "E")]
    pub e: Option<Vec<i64>>,
    #[serde(rename = "F")]
    pub f: Option<Vec<i64>>,
    pub g_p: Option<u8>,
}

#[derive(Debug, Serialize)]
pub struct ExclusionEntry {
    pub class_index: usize,
    pub excluded_r: Vec<i64>,
}

/// Assemble the wire document from a field report.
pub fn report_document(report: &FieldReport, elapsed_ms: u64) -> ReportDocument {
    let classes = report
        .classes
        .iter()
        .map(|rep| {
            let prime_report = rep.prime.map(|p| &report.prime_reports[&p]);
            ClassEntry {
                form: [rep.form.a, rep.form.b, rep.form.c],
                principal: rep.is_principal,
                prime: rep.prime,
                case: prime_report.map(|r| r.case.case.code()),
                n: prime_report.and_then(|r| r.case.n),
                c: prime_report.map(|r| r.case.bound),
                e: prime_report.map(|r| r.e_set.clone()),
                f: prime_report.map(|r| r.f_set.clone()),
                g_p: prime_report.map(|r| r.g),
            }
        })
        .collect();
    let s_description = report
        .exclusions
        .iter()
        .map(|e| ExclusionEntry { class_index: e.class_index, excluded_r: e.excluded_r.clone() })
        .collect();
    ReportDocument {
        schema_version: SCHEMA_VERSION,
        d: report.field.d,
        discriminant: report.field.discriminant,
        class_number: report.class_number,
        pythagoras: ginv::pythagoras(report.field.d),
        g: report.g,
        g_source: report.g_source.label(),
        classes,
        s_description,
        elapsed_ms,
    }
}

/// Analyze one field and render it in the requested format.
pub fn cmd_analyze(d: i64, opts: &Options) -> Result<String> {
    let start = Instant::now();
    let report = ginv::analyze_field(d, opts.search_cap)?;
    let elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(match opts.format {
        Format::Json => {
            let doc = report_document(&report, elapsed_ms);
            serde_json::to_string_pretty(&doc).expect("report serializes")
        }
        Format::Csv => format!("{SURVEY_HEADER}\n{}", survey_line(d, &Ok(report), elapsed_ms)),
    })
}

fn sanitize_csv(message: &str) -> String {
    message.replace(',', ";").replace('\n', " ")
}

fn survey_line(d: i64, outcome: &Result<FieldReport>, elapsed_ms: u64) -> String {
    match outcome {
        Ok(report) => {
            let primes = report
                .prime_reports
                .keys()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(";");
            let max_c = report.prime_reports.values().map(|r| r.case.bound).max().unwrap_or(0);
            format!(
                "{},{},{},{},{},{},{},{},",
                d,
                report.field.discriminant,
                report.class_number,
                report.g,
                report.g_source.label(),
                primes,
                max_c,
                elapsed_ms
            )
        }
        Err(e) => format!("{d},,,,,,,{elapsed_ms},{}", sanitize_csv(&e.to_string())),
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum SurveyItem {
    Report(ReportDocument),
    Failed { d: i64, error: String },
}

fn with_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        return job();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(job)
}

/// One row (CSV) or document (JSON) per square-free d ≤ d_max, in
/// increasing d. Analysis parallelizes across d; rows are buffered and
/// emitted in order, so the content is deterministic. Per-d failures land
/// in the `error` column and the stream continues.
pub fn cmd_survey(d_max: i64, opts: &Options) -> Result<String> {
    let ds: Vec<i64> = (1..=d_max).filter(|&d| is_square_free(d)).collect();
    let search_cap = opts.search_cap;
    let results: Vec<(i64, Result<FieldReport>, u64)> = with_pool(opts.threads, || {
        ds.par_iter()
            .map(|&d| {
                let start = Instant::now();
                let outcome = ginv::analyze_field(d, search_cap);
                (d, outcome, start.elapsed().as_millis() as u64)
            })
            .collect()
    });
    match opts.format {
        Format::Csv => {
            let mut out = String::from(SURVEY_HEADER);
            for (d, outcome, elapsed_ms) in &results {
                out.push('\n');
                out.push_str(&survey_line(*d, outcome, *elapsed_ms));
            }
            Ok(out)
        }
        Format::Json => {
            let items: Vec<SurveyItem> = results
                .into_iter()
                .map(|(d, outcome, elapsed_ms)| match outcome {
                    Ok(report) => SurveyItem::Report(report_document(&report, elapsed_ms)),
                    Err(e) => SurveyItem::Failed { d, error: e.to_string() },
                })
                .collect();
            Ok(serde_json::to_string_pretty(&items).expect("survey serializes"))
        }
    }
}

/// Outcome of `verify`: the rendered text plus whether everything passed.
#[derive(Debug)]
pub struct VerifyReport {
    pub text: String,
    pub outcome: VerifyOutcome,
}

/// Run the oracle-equivalence, conjugate-symmetry and bound-coverage suites
/// over all square-free d ≤ d_max, listing every failing (d, p, case).
pub fn cmd_verify(d_max: i64, opts: &Options) -> Result<VerifyReport> {
    let start = Instant::now();
    let outcome = verify::verify_range(d_max, opts.search_cap, opts.verify_margin)?;
    let mut text = String::new();
    for failure in &outcome.failures {
        writeln!(text, "{failure}").expect("string write");
    }
    let elapsed_ms = start.elapsed().as_millis();
    if outcome.passed() {
        writeln!(
            text,
            "all checks passed: {} fields and {} prime cases (d <= {d_max}; margin {}; {elapsed_ms} ms)",
            outcome.fields, outcome.cases, opts.verify_margin
        )
        .expect("string write");
    } else {
        writeln!(
            text,
            "{} of {} prime cases FAILED (d <= {d_max}; margin {}; {elapsed_ms} ms)",
            outcome.failures.len(),
            outcome.cases,
            opts.verify_margin
        )
        .expect("string write");
    }
    Ok(VerifyReport { text, outcome })
}

/// SageMath script that recomputes g(p) and E(p) for (d, p) with
/// `QuadraticForm.representation_number_list`, for cross-validation in an
/// independent system. The ten- and eight-variable forms are five resp.
/// four orthogonal copies of the case's block.
pub fn cmd_emit_sage(d: i64, p: i64, opts: &Options) -> Result<String> {
    let fp = crate::field::FieldParams::new(d)?;
    if !crate::classgroup::is_prime(p) {
        return Err(Error::InvariantViolation(format!("{p} is not prime")));
    }
    let pc = ginv::prime_case(p, &fp)?;
    let _ = opts;
    Ok(sage_script(&pc, d))
}

/// Upper-triangle coefficient list (row-major) for k orthogonal copies of
/// the block [[A, B], [0, C]], as Sage's `QuadraticForm(ZZ, 2k, [...])`
/// expects.
fn sage_coefficients(variables: usize, a: &str, b: &str, c: &str) -> String {
    let mut entries = Vec::with_capacity(variables * (variables + 1) / 2);
    for i in 0..variables {
        for j in i..variables {
            entries.push(if i == j {
                if i % 2 == 0 {
                    a
                } else {
                    c
                }
            } else if j == i + 1 && i % 2 == 0 {
                b
            } else {
                "0"
            });
        }
    }
    entries.join(",")
}

fn sage_script(pc: &PrimeCase, d: i64) -> String {
    let p = pc.p;
    let (header, a, b, c) = match pc.case {
        CaseCode::RamifiedD12 => {
            (format!("p={p}; d={d}; C=(p-1)*d/p"), "p", "0", "d/p")
        }
        CaseCode::RamifiedD3 => {
            (format!("p={p}; d={d}; C=(p-1)*d/p"), "d/p", "-d", "p*(1+d)/4")
        }
        CaseCode::TwoD1Mod4 => (format!("p=2; d={d}; C=(1+d)/2"), "2", "-2", "(1+d)/2"),
        CaseCode::TwoD7Mod8 => (format!("p=2; d={d}; C=(1+d)/2"), "2", "-1", "(1+d)/8"),
        CaseCode::SplitD12 => (
            format!(
                "p={p}; d={d}; n={}; C=p*(p-1)*(p-1)/4+(p-1)*n+(d+n*n)/p+2*p*d",
                pc.n.expect("case 5 carries n")
            ),
            "p",
            "-2*n",
            "(d+n*n)/p",
        ),
        CaseCode::SplitD3 => (
            format!(
                "p={p}; d={d}; n={}; C=p*(p-1)*(p-1)/4+(p-1)*n+(d+n*n)/p+p*(d+1)/4",
                pc.n.expect("case 6 carries n")
            ),
            "p",
            "-n",
            "(d+n*n)/(4*p)",
        ),
    };
    let ten = sage_coefficients(10, a, b, c);
    let eight = sage_coefficients(8, a, b, c);
    format!(
        "sage: {header}\n\
         sage: Q=QuadraticForm(ZZ, 10, [{ten}])\n\
         sage: S=Q.representation_number_list(C)\n\
         sage: Q=QuadraticForm(ZZ, 8, [{eight}])\n\
         sage: T=Q.representation_number_list(C)\n\
         sage: def u(l):\n\
         sage:     if S[l]==0:return l\n\
         sage:     else:return 0\n\
         sage: E=[u(l) for l in [0..C-1]]\n\
         sage: E(p)=[value for value in E if value !=0]\n\
         sage: def v(l):\n\
         sage:     if T[l]==0:return l\n\
         sage:     else:return 0\n\
         sage: F=[v(l) for l in [0..C-1]]\n\
         sage: F(p)=[value for value in F if value !=0]\n\
         sage: def g(p):\n\
         sage:     if E(p)==F(p): return 4\n\
         sage:     else: return 5\n\
         sage: g(p);E(p)\n"
    )
}
