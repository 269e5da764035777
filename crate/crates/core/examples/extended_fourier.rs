//! The Fourier transform and Pontryagin product on P.

use jacring::dsl::format_gpb;
use jacring::gpb::{GpbContext, Preset};

fn main() -> jacring::Result<()> {
    let g = 2;
    let ctx = GpbContext::new(g)?;
    let jac = ctx.jacobian();
    let samples = [
        ("pi^*(1)", ctx.one()),
        ("H", ctx.h_class()),
        ("H pi^*(theta)", ctx.h_times(jac.theta())),
        ("S_y", ctx.sy_class()),
    ];
    for (name, x) in &samples {
        let f = ctx.ext_fourier(x)?;
        println!("F({name}) = {}, F F = {}", format_gpb(&f), format_gpb(&ctx.ext_fourier(&f)?));
    }
    let h = ctx.h_class();
    for preset in Preset::ALL {
        let hh = ctx.ext_pontryagin(&h, &h, preset)?;
        let hx = ctx.ext_pontryagin(&h, &ctx.h_times(jac.theta()), preset)?;
        println!("{preset}: H * H = {}, H * H theta = {}", format_gpb(&hh), format_gpb(&hx));
    }
    Ok(())
}
