#![allow(dead_code)]

use jacring::gpb::{GpbClass, GpbContext};
use jacring::jacobian::{JacClass, Jacobian};
use jacring::linalg::Rat;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rat(rng: &mut ChaCha8Rng) -> Rat {
    let n = loop {
        let n = rng.random_range(-9i64..=9);
        if n != 0 {
            break n;
        }
    };
    Rat::new(n, rng.random_range(1i64..=7))
}

/// A random class mixing up to four monomials of arbitrary degree.
pub fn jac_class(jac: &Jacobian, rng: &mut ChaCha8Rng) -> JacClass {
    let full = (1u64 << jac.rank()) - 1;
    let mut x = jac.zero();
    for _ in 0..rng.random_range(1..=4) {
        let c = rat(rng);
        x = x + jac.monomial(rng.random::<u64>() & full).scale(&c);
    }
    x
}

/// A random homogeneous class of exterior degree `d`.
pub fn jac_homogeneous(jac: &Jacobian, d: usize, rng: &mut ChaCha8Rng) -> JacClass {
    let masks: Vec<u64> = (0..1u64 << jac.rank()).filter(|m| m.count_ones() as usize == d).collect();
    let mut x = jac.zero();
    for _ in 0..rng.random_range(1..=3) {
        let c = rat(rng);
        x = x + jac.monomial(masks[rng.random_range(0..masks.len())]).scale(&c);
    }
    x
}

pub fn gpb_class(ctx: &GpbContext, rng: &mut ChaCha8Rng) -> GpbClass {
    let jac = ctx.jacobian();
    GpbClass::new(jac_class(jac, rng), jac_class(jac, rng)).unwrap()
}

/// Random homogeneous class on `P` of exterior degree `d` (`0 <= d <= 2g + 2`).
pub fn gpb_homogeneous(ctx: &GpbContext, d: usize, rng: &mut ChaCha8Rng) -> GpbClass {
    let jac = ctx.jacobian();
    let top = jac.rank();
    let base = if d <= top { jac_homogeneous(jac, d, rng) } else { jac.zero() };
    let hpart = if d >= 2 && d - 2 <= top { jac_homogeneous(jac, d - 2, rng) } else { jac.zero() };
    GpbClass::new(base, hpart).unwrap()
}
