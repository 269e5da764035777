//! Pontryagin products of the classes W_i.

use jacring::dsl::format_jac;
use jacring::jacobian::Jacobian;

fn main() -> jacring::Result<()> {
    let g = 3;
    let jac = Jacobian::new(g)?;
    for i in 0..g as i64 {
        for j in i..g as i64 {
            let p = jac.pontryagin(&jac.w_class(i)?, &jac.w_class(j)?)?;
            println!("W[{i}] * W[{j}] = {}", format_jac(&p));
        }
    }
    // The point class is the unit for the Pontryagin product.
    let x = jac.theta().pow(2);
    println!("pt * theta^2 = theta^2: {}", jac.pontryagin(&jac.point(), &x)? == x);
    Ok(())
}
