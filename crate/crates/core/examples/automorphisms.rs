//! The automorphisms phi and mu acting on characters.

use thompson_sigma::autos::{apply, d_orbit, matrix_a, matrix_c, order_of, reduction_identity_check};
use thompson_sigma::charspace::{chi1, Character, SpherePoint};

fn main() -> thompson_sigma::Result<()> {
    for n in 2..=5 {
        let a = matrix_a(n)?;
        let c = matrix_c(n)?;
        println!(
            "n = {n}: order(A) = {:?}, order(C) = {:?}, C chi_1 = {}",
            order_of(&a, 100),
            order_of(&c, 100),
            apply(&c, &chi1(n)?)?
        );
    }

    let p = SpherePoint::new(&Character::from_ints(&[1, 2, 3, 5])?)?;
    let orbit = d_orbit(&p, 10_000)?;
    println!("orbit of {p} has {} points", orbit.len());
    for q in orbit.iter().take(6) {
        println!("  {q}");
    }

    let rho = Character::from_ints(&[2, 7, -1, 2])?;
    println!("A^(n-3) C {rho} = {}", reduction_identity_check(&rho)?);
    Ok(())
}
