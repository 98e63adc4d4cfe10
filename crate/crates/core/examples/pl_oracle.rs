//! Words as piecewise-linear maps of [0, 1], compared exactly.

use thompson_sigma::plrep::{evaluate_word, has_power_slopes, maps_equal};
use thompson_sigma::rational::{format_q, q_frac};
use thompson_sigma::words::GroupWord;

fn main() -> thompson_sigma::Result<()> {
    for n in [2, 3] {
        let f = evaluate_word(&GroupWord::parse(n, "x0")?)?;
        println!("n = {n}: x0 has {} breakpoints", f.points().len());
        for (x, y) in f.points() {
            println!("  {} -> {}", format_q(x), format_q(y));
        }
        let t = q_frac(1, 3);
        println!("  x0(1/3) = {}", format_q(&f.apply(&t)));
    }

    let a = evaluate_word(&GroupWord::parse(3, "x1^-1 x4 x1")?)?;
    let b = evaluate_word(&GroupWord::parse(3, "x6")?)?;
    println!("x1^-1 x4 x1 and x6 agree: {}", maps_equal(&a, &b));
    println!("slopes are powers of 3: {}", has_power_slopes(&a));
    Ok(())
}
