//! Closes the classes W_i under all operators, on J and on P, and compares
//! the result on P with the intersection subalgebra.

use jacring::closure::{compare_subalgebras, compute_closure, gpb_ops, jacobian_ops, GpbAmbient, JacAmbient, OpKind};
use jacring::gpb::{GpbContext, Preset};
use jacring::jacobian::Jacobian;

fn main() -> jacring::Result<()> {
    for g in 1..=3 {
        let jac = Jacobian::new(g)?;
        let gens = (1..g as i64).map(|i| jac.w_class(i)).collect::<jacring::Result<Vec<_>>>()?;
        let res = compute_closure(&JacAmbient(&jac), &gens, &jacobian_ops(&jac, &OpKind::ALL))?;
        let dims: Vec<_> = res.dims_by_degree().iter().map(|d| (d.degree, d.dim)).collect();
        println!("J(g={g}): dimension {}, by degree {dims:?}, saturated {}", res.dim(), res.certificate.saturated);

        let ctx = GpbContext::new(g)?;
        let amb = GpbAmbient(&ctx);
        let mut gens: Vec<_> = gens.iter().map(|w| ctx.pi_pullback(w)).collect();
        gens.push(ctx.sy_class());
        gens.push(ctx.h_class());
        for preset in Preset::ALL {
            let full = compute_closure(&amb, &gens, &gpb_ops(&ctx, &OpKind::ALL, preset))?;
            let wedge = compute_closure(&amb, &gens, &gpb_ops(&ctx, &[OpKind::Wedge], preset))?;
            let cmp = compare_subalgebras(&amb, &full, &wedge)?;
            println!(
                "P(g={g}) {preset}: closure {} vs intersection subalgebra {}: {}",
                full.dim(),
                wedge.dim(),
                cmp.relation
            );
        }
    }
    Ok(())
}
