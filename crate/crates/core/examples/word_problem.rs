//! Normal forms and equality of words in F(n).

use thompson_sigma::words::{are_equal, multiply, normal_form, rewrite_to_seminormal, GroupWord};

fn main() -> thompson_sigma::Result<()> {
    let n = 2;
    let w = GroupWord::parse(n, "x3 x0^-1 x1^2 x0")?;
    println!("word          {w}");
    println!("seminormal    {}", rewrite_to_seminormal(&w)?);
    println!("normal form   {}", normal_form(&w)?);

    // The defining relation x_j^-1 x_i x_j = x_{i+n-1}.
    let lhs = GroupWord::parse(n, "x0^-1 x1 x0")?;
    let rhs = GroupWord::parse(n, "x2")?;
    println!("{lhs} == {rhs}: {}", are_equal(&lhs, &rhs)?);

    let u = normal_form(&GroupWord::parse(n, "x1 x4^-1")?)?;
    let v = normal_form(&GroupWord::parse(n, "x4 x0")?)?;
    println!("({u}) * ({v}) = {}", multiply(&u, &v)?.reduced());
    Ok(())
}
