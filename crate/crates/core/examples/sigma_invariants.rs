//! Which character classes lie in Sigma^1 and Sigma^2.

use thompson_sigma::charspace::{chi1, chi2, in_sigma1, in_sigma_m, Character};

fn main() -> thompson_sigma::Result<()> {
    let n = 3;
    let samples = [
        chi1(n)?,
        chi2(n)?,
        Character::from_ints(&[0, 1, 1])?,
        Character::from_ints(&[1, -1, 0])?,
        Character::from_ints(&[2, 2, 2])?,
    ];
    println!("{:<12} {:>8} {:>8}", "chi", "Sigma^1", "Sigma^2");
    for chi in &samples {
        println!("{:<12} {:>8} {:>8}", chi.to_string(), in_sigma1(chi)?, in_sigma_m(chi, 2, false)?);
    }

    // Sigma^3 for n >= 3 rests on a conjecture and must be requested.
    let chi = Character::from_ints(&[1, 0, 2])?;
    match in_sigma_m(&chi, 3, false) {
        Ok(v) => println!("Sigma^3: {v}"),
        Err(e) => println!("Sigma^3 without the flag: {e}"),
    }
    println!("Sigma^3 assuming it: {}", in_sigma_m(&chi, 3, true)?);
    Ok(())
}
