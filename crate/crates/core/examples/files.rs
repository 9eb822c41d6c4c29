//! JSON code-set file, CSV export and correlation report, written to a
//! directory given on the command line (default: the system temp dir).

use std::path::PathBuf;

use zccs::construct::{lemma1_ccc, quadratic_form, Lemma1Params};
use zccs::correlate::verify_zccs;
use zccs::io::{read_code_set, report_to_string, to_csv_string, write_code_set};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let q = quadratic_form(2, 2, &[(0, 1, 1)])?;
    let set = lemma1_ccc(&Lemma1Params::new(6, q, vec![1, 0], 1, vec![0], 1))?;

    let json = dir.join("lemma1_m6.json");
    write_code_set(&json, &set)?;
    assert_eq!(read_code_set(&json)?, set);

    let csv = dir.join("lemma1_m6.csv");
    std::fs::write(&csv, to_csv_string(&set)?)?;
    let report = dir.join("lemma1_m6_report.csv");
    std::fs::write(&report, report_to_string(&verify_zccs(&set, set.dims().z)?)?)?;

    for p in [json, csv, report] {
        println!("wrote {}", p.display());
    }
    Ok(())
}
