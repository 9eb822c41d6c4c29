//! LSB-first versus MSB-first indexing. Both give the same full-length
//! sequences up to a permutation, but only LSB-first truncation keeps the
//! zone intact.

use zccs::construct::{quadratic_form, theorem1_zccs, Lemma1Params, Theorem1Params};
use zccs::correlate::verify_zccs;
use zccs::BitOrder;

fn main() -> zccs::Result<()> {
    let q = quadratic_form(4, 2, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (0, 2, 1)])?;
    for order in [BitOrder::Lsb, BitOrder::Msb] {
        let base = Lemma1Params::new(8, q.clone(), vec![1, 1, 1, 1], 0, vec![0, 1], 2).with_bit_order(order);
        let set = theorem1_zccs(&Theorem1Params::new(base, 1, 2))?;
        let report = verify_zccs(&set, 160)?;
        println!(
            "{order}: ok={} measured_zcz={} violations={}",
            report.zccs_ok,
            report.measured_zcz,
            report.violations.len()
        );
        for v in report.violations.iter().take(3) {
            println!("    {v}");
        }
    }
    Ok(())
}
