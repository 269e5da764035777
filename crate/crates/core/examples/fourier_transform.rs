//! The Poincare class, the Fourier transform and the identity F F = (-1)^g (-1)^*.

use jacring::dsl::{format_jac, format_product};
use jacring::jacobian::Jacobian;

fn main() -> jacring::Result<()> {
    for g in 1..=3 {
        let jac = Jacobian::new(g)?;
        println!("genus {g}");
        println!("  l = {}", format_product(jac.poincare_class()));
        println!("  F(1) = {}", format_jac(&jac.fourier(&jac.one())?));
        println!("  F(pt) = {}", format_jac(&jac.fourier(&jac.point())?));
        for i in 0..g as i64 {
            let w = jac.w_class(i)?;
            println!("  F(W[{i}]) = {}", format_jac(&jac.fourier(&w)?));
        }
        let sign = if g % 2 == 0 { 1 } else { -1 };
        let ok = jac.basis().iter().all(|x| {
            let ff = jac.fourier(&jac.fourier(x).unwrap()).unwrap();
            let inv = jac.involution(x).unwrap().scale(&sign.into());
            ff == inv
        });
        println!("  F F = (-1)^g (-1)^* on the full basis: {ok}");
    }
    Ok(())
}
