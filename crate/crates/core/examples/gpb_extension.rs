//! The P1-bundle P: the relation for H, the sections S_y and S_z, and both presets.

use jacring::dsl::{format_gpb, format_jac};
use jacring::gpb::{GpbContext, Preset};
use jacring::jacobian::Jacobian;

fn main() -> jacring::Result<()> {
    let g = 2;
    let jac = Jacobian::new(g)?;
    let ctx = GpbContext::with_twist(g, jac.theta().clone(), jac.theta().scale(&(-1).into()))?;
    let h = ctx.h_class();
    println!("twist {}, shift {}", format_jac(ctx.twist()), format_jac(ctx.shift()));
    println!("H^2 = {}", format_gpb(&ctx.gpb_mul(&h, &h)?));
    println!("S_y = {}", format_gpb(&ctx.sy_class()));
    println!("S_z = {}", format_gpb(&ctx.sz_class()));
    println!("S_y S_z = {}", format_gpb(&ctx.gpb_mul(&ctx.sy_class(), &ctx.sz_class())?));
    println!("integral of H pi^*(pt) = {}", ctx.integrate(&ctx.h_times(&jac.point()))?);

    let ctx = GpbContext::new(g)?;
    for d in 0..=g as i64 {
        println!("Wt[{d}] = {}", format_gpb(&ctx.wtilde(d)?));
    }
    let x = ctx.gpb_mul(&ctx.h_class(), &ctx.pi_pullback(jac.theta()))?;
    for preset in Preset::ALL {
        let pulled = ctx.ext_mult_pullback(2, &x, preset)?;
        let back = ctx.ext_mult_pushforward(2, &pulled, preset)?;
        println!("{preset}: 2^*(H theta) = {}, 2_* 2^* = {}", format_gpb(&pulled), format_gpb(&back));
    }
    Ok(())
}
