//! `zccs` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 inadmissible
//! parameters, 3 I/O or format error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use zccs::construct::{
    default_s_r, generate, quadratic_form, Lemma1Params, Lemma2Params, Theorem1Params, Theorem2Params,
};
use zccs::correlate::{is_optimal, verify_zccs};
use zccs::graph::{enumerate_admissible_deletions, graph_of_quadratic};
use zccs::io::{read_code_set, report_to_string, to_csv_string, write_code_set, FileError};
use zccs::{BitOrder, CodeSet, Literal, Provenance};

#[derive(Parser)]
#[command(name = "zccs", version, about = "Generate and verify Z-complementary code sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code set and write it as JSON.
    Generate(GenerateArgs),
    /// Check a code set file against its zone width.
    Verify {
        file: PathBuf,
        /// Zone width to check (default: the declared Z).
        #[arg(long)]
        z: Option<usize>,
        /// Write the full correlation report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// List deletion sets that leave a path.
    Enumerate {
        /// Edge list such as "0-1,1-2".
        #[arg(long, allow_hyphen_values = true)]
        quadratic: String,
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        k: usize,
        /// Required weight of every path edge.
        #[arg(long)]
        weight: Option<u32>,
    },
    /// Write a code set as CSV.
    Export {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the correlation report of a code set.
    Report {
        file: PathBuf,
        #[arg(long)]
        z: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Lemma1,
    Thm1,
    Lemma2,
    Thm2,
    Thm3,
}

#[derive(Args)]
struct GenerateArgs {
    construction: Construction,
    #[arg(long)]
    m1: Option<usize>,
    #[arg(long)]
    m2: Option<usize>,
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Edge list "i-j[:w],..."; weight defaults to 1 (binary) or q/2.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    quadratic: String,
    /// Linear terms "i:c,..." added to f (q-ary constructions).
    #[arg(long, default_value = "")]
    linear: String,
    #[arg(long, default_value = "")]
    d_vec: String,
    #[arg(long, default_value_t = 0)]
    d: u8,
    /// Deleted vertices; k is their count.
    #[arg(long, default_value = "")]
    delete: String,
    #[arg(long)]
    beta1: usize,
    /// Vertex of the row modulation term (default: the other path end).
    #[arg(long)]
    a_vertex: Option<usize>,
    #[arg(long, default_value_t = 1)]
    l: usize,
    #[arg(long = "r", alias = "R", default_value_t = 2)]
    r: usize,
    /// Explicit S_R as integers whose bits (LSB first) give each c.
    #[arg(long)]
    s_r: Option<String>,
    #[arg(long, default_value = "lsb")]
    bit_order: BitOrder,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Verification(String),
    Params(String),
    File(FileError),
}

impl From<zccs::Error> for Failure {
    fn from(e: zccs::Error) -> Self {
        Failure::Params(e.to_string())
    }
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        Failure::File(e)
    }
}

fn params(msg: impl Into<String>) -> Failure {
    Failure::Params(msg.into())
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| params(format!("bad {what} entry '{t}'"))))
        .collect()
}

fn parse_edges(s: &str, default_weight: u32) -> Result<Vec<(usize, usize, u32)>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (pair, w) = match t.split_once(':') {
                Some((p, w)) => (p, w.parse().map_err(|_| params(format!("bad weight in '{t}'")))?),
                None => (t, default_weight),
            };
            let (i, j) = pair
                .split_once('-')
                .ok_or_else(|| params(format!("edge '{t}' is not of the form i-j")))?;
            let parse = |x: &str| x.trim().parse().map_err(|_| params(format!("bad vertex in '{t}'")));
            Ok((parse(i)?, parse(j)?, w))
        })
        .collect()
}

fn s_r_of(a: &GenerateArgs) -> Result<Vec<Vec<u8>>, Failure> {
    match &a.s_r {
        None => Ok(default_s_r(a.l, a.r)),
        Some(s) => parse_list::<usize>(s, "S_R")?
            .into_iter()
            .map(|x| {
                if x >> a.l != 0 {
                    return Err(params(format!("S_R entry {x} does not fit in l = {} bits", a.l)));
                }
                Ok((0..a.l).map(|i| ((x >> i) & 1) as u8).collect())
            })
            .collect(),
    }
}

fn binary_base(a: &GenerateArgs) -> Result<Lemma1Params, Failure> {
    let m1 = a.m1.ok_or_else(|| params("--m1 is required"))?;
    if !(5..=24).contains(&m1) {
        return Err(params(format!("m1 = {m1} is out of range (5 <= m1 <= 24)")));
    }
    if a.q != 2 {
        return Err(params("binary constructions need q = 2"));
    }
    let q = quadratic_form(m1 - 4, 2, &parse_edges(&a.quadratic, 1)?)?;
    let mut p = Lemma1Params::new(
        m1,
        q,
        parse_list(&a.d_vec, "d_vec")?,
        a.d,
        parse_list(&a.delete, "delete")?,
        a.beta1,
    )
    .with_bit_order(a.bit_order);
    if let Some(v) = a.a_vertex {
        p = p.with_a_vertex(v);
    }
    Ok(p)
}

fn qary_base(a: &GenerateArgs) -> Result<Lemma2Params, Failure> {
    let m2 = a.m2.ok_or_else(|| params("--m2 is required"))?;
    if a.q < 2 || !a.q.is_multiple_of(2) {
        return Err(params(format!("q = {} must be even", a.q)));
    }
    let mut f = quadratic_form(m2, a.q, &parse_edges(&a.quadratic, a.q / 2)?)?;
    for t in a.linear.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (i, c) = t
            .split_once(':')
            .ok_or_else(|| params(format!("linear term '{t}' is not of the form i:c")))?;
        let i: usize = i.parse().map_err(|_| params(format!("bad variable in '{t}'")))?;
        let c: i64 = c.parse().map_err(|_| params(format!("bad coefficient in '{t}'")))?;
        f.add_term(c, &[Literal::var(i)])?;
    }
    Ok(Lemma2Params::new(a.q, m2, f, parse_list(&a.delete, "delete")?, a.beta1).with_bit_order(a.bit_order))
}

fn provenance_of(a: &GenerateArgs) -> Result<Provenance, Failure> {
    Ok(match a.construction {
        Construction::Lemma1 => Provenance::Lemma1(binary_base(a)?),
        Construction::Thm3 => Provenance::Theorem3(binary_base(a)?),
        Construction::Thm1 => Provenance::Theorem1(Theorem1Params {
            base: binary_base(a)?,
            l: a.l,
            r: a.r,
            s_r: s_r_of(a)?,
        }),
        Construction::Lemma2 => Provenance::Lemma2(qary_base(a)?),
        Construction::Thm2 => Provenance::Theorem2(Theorem2Params {
            base: qary_base(a)?,
            l: a.l,
            r: a.r,
            s_r: s_r_of(a)?,
        }),
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    let io = |source| FileError::Io {
        path: out.as_ref().map_or("<stdout>".into(), |p| p.display().to_string()),
        source,
    };
    match out {
        Some(p) => fs::write(p, text).map_err(io)?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io)?,
    }
    Ok(())
}

fn checked_z(set: &CodeSet, z: Option<usize>) -> Result<usize, Failure> {
    let l = set.dims().l;
    match z.unwrap_or(set.dims().z) {
        z if z == 0 || z > l => Err(params(format!("Z = {z} violates 1 <= Z <= L = {l}"))),
        z => Ok(z),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate(a) => {
            let set = generate(&provenance_of(&a)?)?;
            let d = set.dims();
            println!("{} {d}", a.construction.to_possible_value().unwrap().get_name());
            println!("optimal: {}", is_optimal(d.m, d.n, d.l, d.z));
            match &a.out {
                Some(p) => write_code_set(p, &set)?,
                None => emit(&None, &zccs::io::to_json_string(&set)?)?,
            }
        }
        Command::Verify { file, z, report } => {
            let set = read_code_set(&file)?;
            let z = checked_z(&set, z)?;
            let rep = verify_zccs(&set, z)?;
            println!("dimensions: {}", rep.dims);
            println!("checked_z: {z}");
            println!("measured_zcz: {}", rep.measured_zcz);
            println!("peak: {}", rep.peak);
            println!("zccs_ok: {}", rep.zccs_ok);
            println!("optimal: {}", rep.optimal);
            println!("violations: {}", rep.violations.len());
            for v in rep.violations.iter().take(10) {
                println!("  {v}");
            }
            if let Some(path) = report {
                emit(&Some(path), &report_to_string(&rep)?)?;
            }
            if !rep.zccs_ok {
                return Err(Failure::Verification(format!(
                    "{} zone violations at Z = {z}",
                    rep.violations.len()
                )));
            }
        }
        Command::Enumerate {
            quadratic,
            vertices,
            k,
            weight,
        } => {
            let edges = parse_edges(&quadratic, weight.unwrap_or(1))?;
            let q = edges.iter().map(|e| e.2).max().unwrap_or(1) * 2;
            let g = graph_of_quadratic(&quadratic_form(vertices, q.max(2), &edges)?)?;
            for cert in enumerate_admissible_deletions(&g, k, weight) {
                println!("{cert}");
            }
        }
        Command::Export { file, out } => {
            let set = read_code_set(&file)?;
            emit(&out, &to_csv_string(&set)?)?;
        }
        Command::Report { file, z, out } => {
            let set = read_code_set(&file)?;
            let z = checked_z(&set, z)?;
            emit(&out, &report_to_string(&verify_zccs(&set, z)?)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Params(msg)) => {
            eprintln!("inadmissible parameters: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::File(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
