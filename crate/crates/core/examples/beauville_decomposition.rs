//! Splits classes into eigencomponents of the multiplication maps n^*.

use jacring::dsl::format_jac;
use jacring::jacobian::Jacobian;

fn main() -> jacring::Result<()> {
    let jac = Jacobian::new(2)?;
    let e1 = jac.e(1)?;
    let x = jac.theta().try_add(&e1)?.try_add(&jac.point())?;
    println!("x = {}", format_jac(&x));
    for c in jac.beauville_decompose(&x)? {
        println!(
            "  degree {} codim {:?} weight {:?}: n^* = n^{} on {}",
            c.degree,
            c.codim,
            c.weight(),
            c.exponent,
            format_jac(&c.component)
        );
    }
    let two = jac.mult_pullback(2, &x)?;
    println!("2^* x = {}", format_jac(&two));
    println!("2_* x = {}", format_jac(&jac.mult_pushforward(2, &x)?));
    Ok(())
}
