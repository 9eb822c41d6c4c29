//! Code-set files, CSV export and correlation reports.
//!
//! A code-set file is a JSON document with three fields: `format_version`,
//! `metadata` and `codes`. Metadata holds the construction name, `q`, the
//! dimensions `M, N, L, Z` and the full generator parameters, enough for
//! [`crate::oracle::oracle_regenerate`]. `codes` is the `M x N x L` phase
//! array. The writer is canonical: object keys are sorted, metadata is
//! pretty-printed, every sequence sits on its own line and lines end in LF,
//! so reading and rewriting a file reproduces it byte for byte.
//!
//! ```
//! use zccs::construct::{quadratic_form, lemma1_ccc, Lemma1Params};
//! use zccs::io::{from_json_str, to_json_string};
//!
//! let q = quadratic_form(1, 2, &[]).unwrap();
//! let set = lemma1_ccc(&Lemma1Params::new(5, q, vec![0], 1, vec![], 0)).unwrap();
//! let text = to_json_string(&set).unwrap();
//! assert_eq!(from_json_str(&text).unwrap(), set);
//! assert_eq!(to_json_string(&from_json_str(&text).unwrap()).unwrap(), text);
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::codeset::{CodeSet, Dimensions, Provenance};
use crate::correlate::{CorrelationReport, CorrelationValue};
use crate::gbf::BitOrder;

pub const FORMAT_VERSION: u32 = 1;

/// Anything that can go wrong reading or writing a file.
#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),

    #[error("format error: {0}")]
    Format(String),

    #[error("inconsistent contents: {0}")]
    Contents(#[from] crate::Error),
}

fn format_err(msg: impl Into<String>) -> FileError {
    FileError::Format(msg.into())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Metadata {
    /// `None` for sets that did not come from a generator.
    construction: Option<String>,
    q: u32,
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "L")]
    l: usize,
    #[serde(rename = "Z")]
    z: usize,
    parameters: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeSetFile {
    format_version: u32,
    metadata: Metadata,
    codes: Vec<Vec<Vec<u32>>>,
}

fn metadata_of(set: &CodeSet) -> Result<Value, FileError> {
    let d = set.dims();
    let (construction, parameters) = match set.provenance() {
        Some(p) => {
            let mut v = serde_json::to_value(p)?;
            (Some(p.name().to_string()), v["parameters"].take())
        }
        None => (None, Value::Null),
    };
    // Round-tripping through `Value` sorts every object's keys.
    Ok(serde_json::to_value(Metadata {
        construction,
        q: set.q(),
        m: d.m,
        n: d.n,
        l: d.l,
        z: d.z,
        parameters,
    })?)
}

/// Canonical JSON text of a code set.
pub fn to_json_string(set: &CodeSet) -> Result<String, FileError> {
    let meta = serde_json::to_string_pretty(&metadata_of(set)?)?.replace('\n', "\n  ");
    let mut out = String::new();
    let _ = write!(out, "{{\n  \"format_version\": {FORMAT_VERSION},\n  \"metadata\": {meta},\n  \"codes\": [\n");
    let codes = set.codes();
    for (ci, code) in codes.iter().enumerate() {
        out.push_str("    [\n");
        for (ri, row) in code.rows().iter().enumerate() {
            out.push_str("      [");
            for (t, p) in row.phases().iter().enumerate() {
                if t > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{p}");
            }
            out.push(']');
            out.push_str(if ri + 1 < code.n() { ",\n" } else { "\n" });
        }
        out.push_str(if ci + 1 < codes.len() { "    ],\n" } else { "    ]\n" });
    }
    out.push_str("  ]\n}\n");
    Ok(out)
}

/// Parses a code-set file and checks that metadata and array agree.
pub fn from_json_str(text: &str) -> Result<CodeSet, FileError> {
    let file: CodeSetFile = serde_json::from_str(text)?;
    if file.format_version != FORMAT_VERSION {
        return Err(format_err(format!(
            "unsupported format_version {} (expected {FORMAT_VERSION})",
            file.format_version
        )));
    }
    let meta = file.metadata;
    let provenance = match &meta.construction {
        Some(name) => {
            let tagged = serde_json::json!({ "construction": name, "parameters": meta.parameters });
            Some(serde_json::from_value::<Provenance>(tagged)?)
        }
        None if meta.parameters.is_null() => None,
        None => return Err(format_err("parameters given without a construction")),
    };
    let set = CodeSet::from_phases(meta.q, meta.z, file.codes, provenance)?;
    let declared = Dimensions::new(meta.m, meta.n, meta.l, meta.z);
    if set.dims() != declared {
        return Err(format_err(format!(
            "metadata declares {declared} but the code array is {}",
            set.dims()
        )));
    }
    Ok(set)
}

fn read_text(path: &Path) -> Result<String, FileError> {
    fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), FileError> {
    fs::write(path, text).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_code_set(path: impl AsRef<Path>) -> Result<CodeSet, FileError> {
    from_json_str(&read_text(path.as_ref())?)
}

pub fn write_code_set(path: impl AsRef<Path>, set: &CodeSet) -> Result<(), FileError> {
    write_text(path.as_ref(), &to_json_string(set)?)
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

fn bit_order_of(p: &Provenance) -> BitOrder {
    match p {
        Provenance::Lemma1(b) | Provenance::Theorem3(b) => b.bit_order,
        Provenance::Theorem1(t) => t.base.bit_order,
        Provenance::Lemma2(b) => b.bit_order,
        Provenance::Theorem2(t) => t.base.bit_order,
    }
}

/// The `# zccs ...` comment line heading a CSV export.
pub fn csv_comment(set: &CodeSet) -> String {
    let d = set.dims();
    let mut line = String::from("# zccs");
    if let Some(p) = set.provenance() {
        let _ = write!(line, " construction={}", p.name());
    }
    let _ = write!(line, " q={} M={} N={} L={} Z={}", set.q(), d.m, d.n, d.l, d.z);
    if let Some(p) = set.provenance() {
        let _ = write!(line, " bit_order={}", bit_order_of(p));
    }
    line
}

/// One row per `(code, sequence)`, codes outermost. Binary sets are written
/// as `1`/`-1`, everything else as phase integers.
pub fn write_csv<W: Write>(mut w: W, set: &CodeSet) -> Result<(), FileError> {
    writeln!(w, "{}", csv_comment(set)).map_err(|source| FileError::Io {
        path: "<csv>".into(),
        source,
    })?;
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    let binary = set.q() == 2;
    for code in set.codes() {
        for row in code.rows() {
            if binary {
                out.write_record(row.phases().iter().map(|&p| if p == 0 { "1" } else { "-1" }))?;
            } else {
                out.write_record(row.phases().iter().map(|p| p.to_string()))?;
            }
        }
    }
    out.flush().map_err(|source| FileError::Io {
        path: "<csv>".into(),
        source,
    })?;
    Ok(())
}

pub fn to_csv_string(set: &CodeSet) -> Result<String, FileError> {
    let mut buf = Vec::new();
    write_csv(&mut buf, set)?;
    String::from_utf8(buf).map_err(|e| format_err(e.to_string()))
}

fn parse_comment(line: &str) -> Result<BTreeMap<String, String>, FileError> {
    let body = line
        .strip_prefix("# zccs")
        .ok_or_else(|| format_err("CSV must start with a '# zccs' comment line"))?;
    body.split_whitespace()
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| format_err(format!("bad metadata field '{kv}'")))
        })
        .collect()
}

fn field<T: std::str::FromStr>(meta: &BTreeMap<String, String>, key: &str) -> Result<T, FileError> {
    meta.get(key)
        .ok_or_else(|| format_err(format!("CSV metadata lacks {key}")))?
        .parse()
        .map_err(|_| format_err(format!("CSV metadata field {key} is not a number")))
}

/// Reads a CSV export back. Phases are reproduced exactly; construction
/// parameters are not part of the export and come back as `None`.
pub fn read_csv<R: BufRead>(mut r: R) -> Result<CodeSet, FileError> {
    let mut first = String::new();
    r.read_line(&mut first).map_err(|source| FileError::Io {
        path: "<csv>".into(),
        source,
    })?;
    let meta = parse_comment(first.trim_end())?;
    let q: u32 = field(&meta, "q")?;
    let (m, n, l, z): (usize, usize, usize, usize) =
        (field(&meta, "M")?, field(&meta, "N")?, field(&meta, "L")?, field(&meta, "Z")?);
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .from_reader(r);
    let mut rows = Vec::with_capacity(m * n);
    for rec in rdr.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|s| match (q, s) {
                (2, "1") | (2, "+1") => Ok(0),
                (2, "-1") => Ok(1),
                (2, other) => Err(format_err(format!("binary entry '{other}' is not +-1"))),
                (_, other) => other
                    .parse::<u32>()
                    .map_err(|_| format_err(format!("entry '{other}' is not a phase"))),
            })
            .collect::<Result<Vec<u32>, _>>()?;
        rows.push(row);
    }
    if rows.len() != m * n {
        return Err(format_err(format!("expected {} rows, found {}", m * n, rows.len())));
    }
    let mut it = rows.into_iter();
    let phases: Vec<Vec<Vec<u32>>> = (0..m).map(|_| it.by_ref().take(n).collect()).collect();
    let set = CodeSet::from_phases(q, z, phases, None)?;
    if set.dims().l != l {
        return Err(format_err(format!("expected L = {l}, rows have {}", set.dims().l)));
    }
    Ok(set)
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

fn fmt_component(v: f64, exact: bool) -> String {
    if exact {
        format!("{}", v as i64)
    } else {
        format!("{v:.9}")
    }
}

fn fmt_value(v: &CorrelationValue) -> (String, String) {
    (fmt_component(v.re(), v.is_exact()), fmt_component(v.im(), v.is_exact()))
}

/// Summary block as `# key: value` lines, then the table
/// `i,j,tau,re,im` over every pair `i <= j` and every `tau` in `(-L, L)`.
pub fn write_report<W: Write>(mut w: W, report: &CorrelationReport) -> Result<(), FileError> {
    let io = |source| FileError::Io {
        path: "<report>".into(),
        source,
    };
    let d = report.dims;
    let (pr, pi) = fmt_value(&report.peak);
    let summary = [
        ("q", report.q.to_string()),
        ("dimensions", d.to_string()),
        ("checked_z", report.checked_z.to_string()),
        ("arithmetic", if report.exact { "exact".into() } else { format!("float tol={}", report.tolerance) }),
        ("measured_zcz", report.measured_zcz.to_string()),
        ("peak", if pi == "0" { pr } else { format!("{pr}{pi:+}i") }),
        ("zccs_ok", report.zccs_ok.to_string()),
        ("optimal", report.optimal.to_string()),
        ("violations", report.violations.len().to_string()),
    ];
    for (k, v) in summary {
        writeln!(w, "# {k}: {v}").map_err(io)?;
    }
    for v in &report.violations {
        writeln!(w, "# violation: {v}").map_err(io)?;
    }
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["i", "j", "tau", "re", "im"])?;
    let l = d.l as i64;
    for p in &report.profiles {
        for tau in (1 - l)..l {
            let (re, im) = fmt_value(&p.at(tau));
            out.write_record([p.i.to_string(), p.j.to_string(), tau.to_string(), re, im])?;
        }
    }
    out.flush().map_err(io)?;
    Ok(())
}

pub fn report_to_string(report: &CorrelationReport) -> Result<String, FileError> {
    let mut buf = Vec::new();
    write_report(&mut buf, report)?;
    String::from_utf8(buf).map_err(|e| format_err(e.to_string()))
}

/// One table row of a report.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub i: usize,
    pub j: usize,
    pub tau: i64,
    pub re: f64,
    pub im: f64,
}

/// A report read back from text.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportFile {
    /// Summary entries in file order; `violation` may repeat.
    pub summary: Vec<(String, String)>,
    pub rows: Vec<ReportRow>,
}

impl ReportFile {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

pub fn parse_report(text: &str) -> Result<ReportFile, FileError> {
    let mut summary = Vec::new();
    let mut body = String::new();
    for line in text.lines() {
        match line.strip_prefix("# ") {
            Some(s) => {
                let (k, v) = s
                    .split_once(": ")
                    .ok_or_else(|| format_err(format!("bad summary line '{line}'")))?;
                summary.push((k.to_string(), v.to_string()));
            }
            None => {
                body.push_str(line);
                body.push('\n');
            }
        }
    }
    let mut rdr = csv::Reader::from_reader(body.as_bytes());
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let num = |k: usize| rec.get(k).ok_or_else(|| format_err("short report row"));
        let bad = |_| format_err("non-numeric report entry");
        rows.push(ReportRow {
            i: num(0)?.parse().map_err(|_| format_err("bad i"))?,
            j: num(1)?.parse().map_err(|_| format_err("bad j"))?,
            tau: num(2)?.parse().map_err(|_| format_err("bad tau"))?,
            re: num(3)?.parse().map_err(bad)?,
            im: num(4)?.parse().map_err(bad)?,
        });
    }
    Ok(ReportFile { summary, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{lemma2_ccc, quadratic_form, theorem1_zccs, Lemma1Params, Lemma2Params, Theorem1Params};
    use crate::correlate::verify_zccs;

    fn small_thm1() -> CodeSet {
        let q = quadratic_form(2, 2, &[(0, 1, 1)]).unwrap();
        let base = Lemma1Params::new(6, q, vec![1, 0], 1, vec![], 0);
        theorem1_zccs(&Theorem1Params::new(base, 1, 2)).unwrap()
    }

    fn small_q4() -> CodeSet {
        let f = quadratic_form(3, 4, &[(0, 1, 2), (1, 2, 2)])
            .unwrap()
            .with_term(3, &[crate::Literal::var(1)])
            .unwrap();
        lemma2_ccc(&Lemma2Params::new(4, 3, f, vec![], 0)).unwrap()
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        for set in [small_thm1(), small_q4(), small_q4().without_provenance()] {
            let text = to_json_string(&set).unwrap();
            assert!(!text.contains('\r'));
            let back = from_json_str(&text).unwrap();
            assert_eq!(back, set);
            assert_eq!(to_json_string(&back).unwrap(), text);
        }
    }

    #[test]
    fn json_rejects_inconsistent_metadata() {
        let text = to_json_string(&small_thm1()).unwrap();
        let bad = text.replacen("\"M\": 4", "\"M\": 9", 1);
        assert!(matches!(from_json_str(&bad), Err(FileError::Format(_))));
        let bad = text.replacen("\"format_version\": 1", "\"format_version\": 7", 1);
        assert!(matches!(from_json_str(&bad), Err(FileError::Format(_))));
        assert!(matches!(from_json_str("{"), Err(FileError::Json(_))));
        let bad = text.replacen("[0,", "[5,", 1);
        assert!(matches!(from_json_str(&bad), Err(FileError::Contents(_))));
    }

    #[test]
    fn csv_round_trip() {
        for set in [small_thm1(), small_q4()] {
            let text = to_csv_string(&set).unwrap();
            let d = set.dims();
            assert_eq!(text.lines().count(), 1 + d.m * d.n);
            let back = read_csv(text.as_bytes()).unwrap();
            assert_eq!(back.to_phases(), set.to_phases());
        }
    }

    #[test]
    fn csv_binary_entries_are_signs() {
        let text = to_csv_string(&small_thm1()).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "# zccs construction=thm1 q=2 M=4 N=2 L=80 Z=40 bit_order=lsb"
        );
        assert!(lines.flat_map(|l| l.split(',')).all(|e| e == "1" || e == "-1"));
    }

    #[test]
    fn report_summary_matches_table() {
        let set = small_thm1();
        let rep = verify_zccs(&set, set.dims().z).unwrap();
        let parsed = parse_report(&report_to_string(&rep).unwrap()).unwrap();
        assert_eq!(parsed.get("optimal"), Some("true"));
        assert_eq!(parsed.get("peak"), Some("160"));
        let d = set.dims();
        assert_eq!(parsed.rows.len(), d.m * (d.m + 1) / 2 * (2 * d.l - 1));
        let peak = parsed.rows.iter().find(|r| r.i == 0 && r.j == 0 && r.tau == 0).unwrap();
        assert_eq!(peak.re, 160.0);
    }
}
