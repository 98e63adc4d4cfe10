//! Finite-index subgroups as sublattices of Z^n.

use thompson_sigma::lattices::{alpha, enumerate_subgroups, intersect_with_m, theta_shift, SubgroupLattice};

fn main() -> thompson_sigma::Result<()> {
    for k in 1..=6 {
        let count = enumerate_subgroups(2, k, 1_000)?.iter().filter(|l| l.index() == k).count();
        println!("index {k}: {count} subgroups of F");
    }

    let l = SubgroupLattice::diagonal(&[2, 2])?;
    let t = theta_shift(&intersect_with_m(&l)?);
    println!("L = {l}, alpha = {}, theta(H ∩ M) = {t}", alpha(&l));

    for l in enumerate_subgroups(3, 2, 100)? {
        println!("n = 3, index {}: {l}", l.index());
    }
    Ok(())
}
