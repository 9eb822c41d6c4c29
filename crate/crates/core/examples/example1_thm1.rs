//! The (16, 8, 320, 160) binary ZCCS from a truncated base with two
//! deleted vertices, two blocks and one sign variable.
//!
//! cargo run --example example1_thm1

use zccs::construct::{quadratic_form, theorem1_zccs, Lemma1Params, Theorem1Params};
use zccs::correlate::verify_zccs;

fn main() -> zccs::Result<()> {
    // z0z1 + z1z2 + z2z3 + z3z0 + z0z2
    let q = quadratic_form(4, 2, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (0, 2, 1)])?;
    let base = Lemma1Params::new(8, q, vec![1, 1, 1, 1], 0, vec![0, 1], 2);
    let cert = base.validate()?;
    println!("path certificate: {cert}");

    let set = theorem1_zccs(&Theorem1Params::new(base, 1, 2))?;
    let report = verify_zccs(&set, set.dims().z)?;
    println!("dimensions   {}", set.dims());
    println!("peak         {}", report.peak);
    println!("measured ZCZ {}", report.measured_zcz);
    println!("zccs ok      {}", report.zccs_ok);
    println!("optimal      {}", report.optimal);

    // Outside the zone the set is not complementary.
    let outside = report.profile(0, 1).unwrap().at(160);
    println!("theta(C0, C1)(160) = {outside}");
    Ok(())
}
