//! Koszul signs, exponentials and fibre integration in a bare exterior algebra.

use jacring::exterior::ExtClass;
use jacring::linalg::Rat;

fn main() -> jacring::Result<()> {
    let n = 4;
    let x: Vec<ExtClass> = (0..n).map(|i| ExtClass::generator(n, i)).collect();

    // x1 x0 = -x0 x1 and x0 x0 = 0.
    let a = x[1].wedge(&x[0])?;
    let b = x[0].wedge(&x[1])?;
    println!("x1^x0 + x0^x1 is zero: {}", a.try_add(&b)?.is_zero());
    println!("x0^x0 is zero: {}", x[0].wedge(&x[0])?.is_zero());

    // theta = x0 x1 + x2 x3 squares to 2 x0 x1 x2 x3.
    let theta = b.try_add(&x[2].wedge(&x[3])?)?;
    let sq = theta.pow(2);
    println!("theta^2 integrates to {}", sq.integrate_top());
    println!("exp(theta) has {} terms, degrees {:?}", theta.exp()?.len(), theta.exp()?.degrees());

    // Integrate out the first two generators of theta^2 / 2.
    let half = sq.scale(&Rat::new(1, 2));
    let rest = half.fiber_integrate_first(2)?;
    println!("fibre integral over x0 x1: {} term(s), degree {:?}", rest.len(), rest.homogeneous_degree());

    for d in 0..=n {
        println!("dim of degree {d}: {}", ExtClass::basis_of_degree(n, d).len());
    }
    Ok(())
}
