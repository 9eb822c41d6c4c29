//! Which vertex deletions leave a path, and why the others fail.

use zccs::construct::quadratic_form;
use zccs::graph::{enumerate_admissible_deletions, graph_of_quadratic, validate_deletion_path};

fn main() -> zccs::Result<()> {
    let q = quadratic_form(4, 2, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (0, 2, 1)])?;
    let g = graph_of_quadratic(&q)?;
    println!("Q = {q}");
    for k in 0..=2 {
        println!("k = {k}:");
        for cert in enumerate_admissible_deletions(&g, k, None) {
            println!("  {cert}");
        }
    }
    for deleted in [vec![], vec![1], vec![3], vec![1, 3]] {
        match validate_deletion_path(&g, &deleted, None) {
            Ok(c) => println!("{deleted:?}: ok, {c}"),
            Err(e) => println!("{deleted:?}: {e}"),
        }
    }
    Ok(())
}
