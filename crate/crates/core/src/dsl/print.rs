//! Rendering of classes as re-parseable expressions.
//!
//! Each homogeneous part proportional to a power of theta prints as `c*theta^k`
//! (the top power as a multiple of `pt`); any other part prints as a sum of
//! monomials in `e_i`, `f_i`. Terms go by increasing degree, then lexicographic
//! generator order.

use crate::exterior::{mask_indices, ExtClass};
use crate::gpb::{GpbClass, GpbProductClass};
use crate::jacobian::{JacClass, ProductClass};
use crate::linalg::Rat;

fn generator_name(i: usize) -> String {
    if i % 2 == 0 {
        format!("e{}", i / 2 + 1)
    } else {
        format!("f{}", i / 2 + 1)
    }
}

/// Returns `c` when `part = c · theta^k`.
fn theta_multiple(part: &JacClass, k: usize) -> Option<Rat> {
    let g = part.genus();
    let mut theta1 = ExtClass::zero(2 * g);
    for i in 0..g {
        theta1 = theta1 + ExtClass::wedge_of(2 * g, &[2 * i, 2 * i + 1]);
    }
    let theta = theta1.pow(k);
    let (mask, c) = theta.terms().next()?;
    let scale = part.value().coeff(mask) / c.clone();
    (theta.scale(&scale) == *part.value()).then_some(scale)
}

fn push_term(out: &mut String, c: &Rat, name: &str) {
    let neg = c.is_negative();
    let mag = c.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if name.is_empty() {
        out.push_str(&mag.to_string());
    } else if mag.is_one() {
        out.push_str(name);
    } else {
        out.push_str(&format!("{mag}*{name}"));
    }
}

/// Formats a class on `J`; the output parses back to the same class.
pub fn format_jac(x: &JacClass) -> String {
    let g = x.genus();
    let mut out = String::new();
    for d in 0..=2 * g {
        let part = x.degree_part(d);
        if part.is_zero() {
            continue;
        }
        if d % 2 == 0 {
            let k = d / 2;
            if let Some(c) = theta_multiple(&part, k) {
                match k {
                    0 => push_term(&mut out, &c, ""),
                    _ if k == g => push_term(&mut out, &(c * Rat::factorial(g)), "pt"),
                    1 => push_term(&mut out, &c, "theta"),
                    _ => push_term(&mut out, &c, &format!("theta^{k}")),
                }
                continue;
            }
        }
        let mut terms: Vec<(Vec<usize>, Rat)> = part
            .value()
            .terms()
            .map(|(m, c)| (mask_indices(m).collect(), c.clone()))
            .collect();
        terms.sort();
        for (idx, c) in terms {
            let name: Vec<String> = idx.into_iter().map(generator_name).collect();
            push_term(&mut out, &c, &name.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Formats a class on `J × J`; generators of the second factor carry a prime.
pub fn format_product(z: &ProductClass) -> String {
    let g = z.genus();
    let name = |i: usize| {
        if i < 2 * g {
            generator_name(i)
        } else {
            format!("{}'", generator_name(i - 2 * g))
        }
    };
    let mut terms: Vec<(usize, Vec<usize>, Rat)> = z
        .value()
        .terms()
        .map(|(m, c)| (m.count_ones() as usize, mask_indices(m).collect(), c.clone()))
        .collect();
    terms.sort();
    let mut out = String::new();
    for (_, idx, c) in terms {
        let names: Vec<String> = idx.into_iter().map(name).collect();
        push_term(&mut out, &c, &names.join("*"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Formats a class on `P × P` by its `1, H1, H2, H1*H2` components.
pub fn format_gpb_product(z: &GpbProductClass) -> String {
    let mut parts = Vec::new();
    for (label, c) in [("", &z.c00), ("H1", &z.c10), ("H2", &z.c01), ("H1*H2", &z.c11)] {
        if c.is_zero() {
            continue;
        }
        if label.is_empty() {
            parts.push(format!("({})", format_product(c)));
        } else {
            parts.push(format!("{label}*({})", format_product(c)));
        }
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ")
}

/// Formats a class on `P` as `H*pi*(…) + pi*(…)`.
pub fn format_gpb(x: &GpbClass) -> String {
    let mut parts = Vec::new();
    if !x.hpart.is_zero() {
        if x.hpart.degree_part(0) == x.hpart {
            let mut s = String::new();
            push_term(&mut s, &x.hpart.value().coeff(0), "H");
            parts.push(s);
        } else {
            parts.push(format!("H*pi*({})", format_jac(&x.hpart)));
        }
    }
    if !x.base.is_zero() {
        parts.push(format!("pi*({})", format_jac(&x.base)));
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpb::GpbContext;
    use crate::jacobian::Jacobian;

    #[test]
    fn jacobian_classes() {
        let j = Jacobian::new(2).unwrap();
        assert_eq!(format_jac(j.theta()), "theta");
        assert_eq!(format_jac(&j.point()), "pt");
        assert_eq!(format_jac(&j.one()), "1");
        assert_eq!(format_jac(&j.zero()), "0");
        let x = j.one().scale(&Rat::new(-1, 2)) + j.theta().pow(2);
        assert_eq!(format_jac(&x), "-1/2 + 2*pt");
        let y = j.e(1).unwrap() - j.f(2).unwrap().scale(&Rat::from_int(3));
        assert_eq!(format_jac(&y), "e1 - 3*f2");
        let z = j.e(1).unwrap() * j.f(1).unwrap();
        assert_eq!(format_jac(&z), "e1*f1");
        let j1 = Jacobian::new(1).unwrap();
        assert_eq!(format_jac(&j1.fourier(&j1.one()).unwrap()), "-pt");
    }

    #[test]
    fn gpb_classes() {
        let ctx = GpbContext::new(2).unwrap();
        assert_eq!(format_gpb(&ctx.wtilde(0).unwrap()), "H + pi*(theta)");
        assert_eq!(format_gpb(&ctx.one()), "pi*(1)");
        assert_eq!(format_gpb(&ctx.point()), "H*pi*(pt)");
        assert_eq!(format_gpb(&ctx.h_class().scale(&Rat::from_int(-2))), "-2*H");
        assert_eq!(format_gpb(&ctx.zero()), "0");
    }

    #[test]
    fn product_classes() {
        let j = Jacobian::new(1).unwrap();
        assert_eq!(format_product(j.poincare_class()), "-e1*f1' + f1*e1'");
        let ctx = GpbContext::new(1).unwrap();
        let z = ctx.p_pullback(&ctx.h_class()).unwrap();
        assert_eq!(format_gpb_product(&z), "H1*(1)");
    }
}
