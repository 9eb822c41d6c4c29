//! Quaternary ZCCS of power-of-two length: R = 4 blocks of a CCC built
//! from a path-form function, one vertex deleted.

use zccs::construct::{quadratic_form, theorem2_zccs, Lemma2Params, Theorem2Params};
use zccs::correlate::verify_zccs;
use zccs::Literal;

fn main() -> zccs::Result<()> {
    // Path 1-2-3 with weight q/2 = 2; vertex 0 is deleted and may touch
    // anything with any weight.
    let f = quadratic_form(4, 4, &[(1, 2, 2), (2, 3, 2), (0, 2, 1), (0, 3, 3)])?
        .with_term(1, &[Literal::var(1)])?
        .with_term(3, &[Literal::var(3)])?;
    println!("f = {f}");
    let base = Lemma2Params::new(4, 4, f, vec![0], 1);
    let set = theorem2_zccs(&Theorem2Params::new(base, 2, 4))?;
    let report = verify_zccs(&set, set.dims().z)?;
    println!("{} exact={} ok={} optimal={}", set.dims(), report.exact, report.zccs_ok, report.optimal);
    Ok(())
}
