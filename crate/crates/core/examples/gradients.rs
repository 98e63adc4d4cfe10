//! Rank, deficiency and chi_2 gradients along the chain 2^s Z^2.

use thompson_sigma::gradients::{
    certify_convergence, chi_m_gradient_series, deficiency_gradient_series, rank_gradient_series,
};
use thompson_sigma::lattices::ChainSpec;
use thompson_sigma::rational::q_frac;

fn main() -> thompson_sigma::Result<()> {
    let spec = ChainSpec::parse("scaling:2", 8)?;
    let rg = rank_gradient_series(&spec, 2, None)?;
    let dg = deficiency_gradient_series(&spec, 2)?;
    let chi = chi_m_gradient_series(&spec, 2, 2)?;
    print!("{}", dg.to_csv());

    let eps = q_frac(1, 1000);
    for (name, s) in [("rank", &rg), ("deficiency", &dg), ("chi_2", &chi)] {
        println!("{name}: within 1/1000 from s = {:?}", certify_convergence(s, &eps)?);
    }

    // For n = 3 the bound involves the unknown d0 unless a value is supplied.
    let sym = rank_gradient_series(&ChainSpec::parse("scaling:2", 3)?, 3, None)?;
    println!("n = 3, s = 3: upper = {}", sym.rows[3].upper);
    Ok(())
}
