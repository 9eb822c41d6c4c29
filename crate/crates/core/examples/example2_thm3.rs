//! Three-block (8, 8, 480, 320) ZCCS: every row is `(P, P, -P)`.

use zccs::construct::{quadratic_form, theorem3_zccs, Lemma1Params};
use zccs::correlate::verify_zccs;

fn main() -> zccs::Result<()> {
    let q = quadratic_form(4, 2, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (0, 2, 1)])?;
    let base = Lemma1Params::new(8, q, vec![1, 1, 1, 1], 0, vec![0, 1], 2);
    let set = theorem3_zccs(&base)?;
    let report = verify_zccs(&set, 320)?;
    println!("{} peak={} ok={} optimal={}", set.dims(), report.peak, report.zccs_ok, report.optimal);

    let row = set.codes()[0].rows()[0].phases();
    let (a, b, c) = (&row[..160], &row[160..320], &row[320..]);
    assert_eq!(a, b);
    assert!(a.iter().zip(c).all(|(x, y)| x ^ y == 1));
    Ok(())
}
