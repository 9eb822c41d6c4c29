//! Non-power-of-two complete complementary codes of length
//! 2^(m1-1) + 2^(m1-3), for every admissible deletion of a small graph.

use zccs::construct::{lemma1_ccc, quadratic_form, Lemma1Params};
use zccs::correlate::measure_zcz;
use zccs::graph::{enumerate_admissible_deletions, graph_of_quadratic};

fn main() -> zccs::Result<()> {
    // A 3-vertex path 0-1-2 over m1 = 7.
    let q = quadratic_form(3, 2, &[(0, 1, 1), (1, 2, 1)])?;
    let g = graph_of_quadratic(&q)?;
    for k in 0..=2 {
        for cert in enumerate_admissible_deletions(&g, k, None) {
            for &beta1 in &cert.end_vertices {
                let p = Lemma1Params::new(7, q.clone(), vec![1, 0, 1], 0, cert.deleted.clone(), beta1);
                let set = lemma1_ccc(&p)?;
                let zcz = measure_zcz(&set)?;
                println!("{:<38} beta1={beta1}  {}  zcz={zcz}", cert.to_string(), set.dims());
                assert_eq!(zcz, set.dims().l);
            }
        }
    }
    Ok(())
}
