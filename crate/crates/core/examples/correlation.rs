//! Aperiodic correlation of single sequences and of codes.

use zccs::correlate::{accs, set_accs};
use zccs::{Code, PhaseSequence};

fn main() -> zccs::Result<()> {
    let u = PhaseSequence::new(2, vec![0, 0, 0, 1])?;
    let profile: Vec<String> = (0..4).map(|t| accs(&u, &u, t).map(|v| v.to_string())).collect::<Result<_, _>>()?;
    println!("AACS of (+,+,+,-): {}", profile.join(", "));

    // A Golay pair: the two autocorrelations cancel off the peak.
    let pair = Code::new(vec![u.clone(), PhaseSequence::new(2, vec![0, 0, 1, 0])?])?;
    for tau in -3..=3 {
        println!("theta(C, C)({tau:>2}) = {}", set_accs(&pair, &pair, tau)?);
    }

    // Quaternary values stay exact Gaussian integers.
    let a = PhaseSequence::new(4, vec![0, 1, 2, 3])?;
    let b = PhaseSequence::new(4, vec![0, 0, 1, 1])?;
    println!("accs over Z4 at tau 1: {}", accs(&a, &b, 1)?);
    Ok(())
}
