//! Parses, prints and evaluates expressions in the class language.

use jacring::dsl::{eval_expr, parse_expr, EvalContext};
use jacring::gpb::Preset;

fn main() -> jacring::Result<()> {
    let ctx = EvalContext::new(3, Preset::Geometric)?;
    let inputs = [
        "1/6*theta^3",
        "F(W[1])",
        "pont(W[1], W[2])",
        "nstar(2, theta + e1)",
        "Sy*Sz",
        "integrate(H*pi*(pt))",
        "Wt[1] - Sy*pi*(W[2])",
    ];
    for src in inputs {
        let e = parse_expr(src)?;
        println!("{src:<24} parsed as {e:<28} = {}", eval_expr(&e, &ctx)?);
    }
    match parse_expr("F(H") {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("error: {e}"),
    }
    Ok(())
}
