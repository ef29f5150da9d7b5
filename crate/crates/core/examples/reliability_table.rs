//! Correctness, error and status of every (raw, aggregated, truth) triple,
//! followed by the reliability ratio of a sample tally.

use ctrust::reliability::correctness_error;
use ctrust::{classify, collaborative_reliability, ErrorTally};

fn main() -> ctrust::Result<()> {
    println!("x y T  zeta theta  zeta_c theta_c  status");
    for bits in 0..8u8 {
        let (x, y, t) = (bits & 4 != 0, bits & 2 != 0, bits & 1 != 0);
        let (z, th) = correctness_error(x, t);
        let (zc, thc) = correctness_error(y, t);
        println!(
            "{} {} {}  {:>4} {:>5}  {:>6} {:>7}  {:?}",
            u8::from(x),
            u8::from(y),
            u8::from(t),
            u8::from(z),
            u8::from(th),
            u8::from(zc),
            u8::from(thc),
            classify(x, y, t)
        );
    }
    let tally = ErrorTally {
        unchanged_correct: 70,
        unchanged_error: 10,
        corrected: 15,
        introduced: 5,
    };
    println!(
        "\n{tally:?}\nR^c = {:.4}",
        collaborative_reliability(&tally)?
    );
    Ok(())
}
