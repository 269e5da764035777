//! A small expression language over classes on J and P.
//!
//! Names: `theta`, `pt`, `one`, `e1..eg`, `f1..fg`, `W[i]` on J and `H`, `Sy`, `Sz`,
//! `Wt[d]` on P. `*` is the intersection product; the Pontryagin product is `pont`
//! (or `pontx` on P).

mod eval;
mod parser;
mod print;

use std::fmt;

use crate::linalg::Rat;

pub use eval::{check_sort, eval_expr, EvalContext, Sort, Value};
pub use parser::parse_expr;
pub use print::{format_gpb, format_gpb_product, format_jac, format_product};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Theta,
    Pt,
    One,
    H,
    Sy,
    Sz,
    /// `e<i>`, 1-based.
    E(usize),
    /// `f<i>`, 1-based.
    F(usize),
}

impl Symbol {
    pub fn from_name(name: &str) -> Option<Symbol> {
        Some(match name {
            "theta" => Symbol::Theta,
            "pt" => Symbol::Pt,
            "one" => Symbol::One,
            "H" => Symbol::H,
            "Sy" => Symbol::Sy,
            "Sz" => Symbol::Sz,
            _ => {
                let (head, digits) = name.split_at(1);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
                    return None;
                }
                let i: usize = digits.parse().ok()?;
                match head {
                    "e" => Symbol::E(i),
                    "f" => Symbol::F(i),
                    _ => return None,
                }
            }
        })
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Theta => f.write_str("theta"),
            Symbol::Pt => f.write_str("pt"),
            Symbol::One => f.write_str("one"),
            Symbol::H => f.write_str("H"),
            Symbol::Sy => f.write_str("Sy"),
            Symbol::Sz => f.write_str("Sz"),
            Symbol::E(i) => write!(f, "e{i}"),
            Symbol::F(i) => write!(f, "f{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Fourier,
    ExtFourier,
    Inv,
    NStar,
    NLow,
    PiPull,
    PiPush,
    Pont,
    PontX,
    Integrate,
    Pair,
    Beauville,
}

impl Func {
    pub const ALL: [Func; 12] = [
        Func::Fourier,
        Func::ExtFourier,
        Func::Inv,
        Func::NStar,
        Func::NLow,
        Func::PiPull,
        Func::PiPush,
        Func::Pont,
        Func::PontX,
        Func::Integrate,
        Func::Pair,
        Func::Beauville,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Fourier => "F",
            Func::ExtFourier => "Fx",
            Func::Inv => "inv",
            Func::NStar => "nstar",
            Func::NLow => "nlow",
            Func::PiPull => "pi*",
            Func::PiPush => "pipush",
            Func::Pont => "pont",
            Func::PontX => "pontx",
            Func::Integrate => "integrate",
            Func::Pair => "pair",
            Func::Beauville => "beauville",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn arity(self) -> usize {
        match self {
            Func::NStar | Func::NLow | Func::Pont | Func::PontX | Func::Pair => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rat),
    Sym(Symbol),
    W(i64),
    Wt(i64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    /// Intersection product.
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Vec<Expr>),
}

const PREC_SUM: u8 = 1;
const PREC_PRODUCT: u8 = 2;
const PREC_UNARY: u8 = 3;
const PREC_POWER: u8 = 4;
const PREC_ATOM: u8 = 5;

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => PREC_SUM,
            Expr::Mul(..) => PREC_PRODUCT,
            Expr::Neg(_) => PREC_UNARY,
            Expr::Num(r) if r.is_negative() => PREC_UNARY,
            Expr::Pow(..) => PREC_POWER,
            _ => PREC_ATOM,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Num(r) => {
                if r.is_negative() {
                    f.write_str("-")?;
                    Expr::Num(-r.clone()).write_at(f, PREC_UNARY)
                } else if r.is_integer() {
                    write!(f, "{r}")
                } else {
                    // A fraction followed by `^` would take the whole fraction as base.
                    write!(f, "{}", r.to_fraction_string())
                }
            }
            Expr::Sym(s) => write!(f, "{s}"),
            Expr::W(i) => write!(f, "W[{i}]"),
            Expr::Wt(d) => write!(f, "Wt[{d}]"),
            Expr::Neg(x) => {
                f.write_str("-")?;
                x.write_at(f, PREC_UNARY)
            }
            Expr::Add(a, b) => {
                a.write_at(f, PREC_SUM)?;
                f.write_str(" + ")?;
                b.write_at(f, PREC_PRODUCT)
            }
            Expr::Sub(a, b) => {
                a.write_at(f, PREC_SUM)?;
                f.write_str(" - ")?;
                b.write_at(f, PREC_PRODUCT)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, PREC_PRODUCT)?;
                f.write_str("*")?;
                b.write_at(f, PREC_UNARY)
            }
            Expr::Pow(x, k) => {
                x.write_at(f, PREC_ATOM)?;
                write!(f, "^{k}")
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    a.write_at(f, 0)?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(Symbol::from_name("e12"), Some(Symbol::E(12)));
        assert_eq!(Symbol::from_name("e0"), None);
        assert_eq!(Symbol::from_name("g1"), None);
        assert_eq!(Func::from_name("pi*"), Some(Func::PiPull));
        for func in Func::ALL {
            assert_eq!(Func::from_name(func.name()), Some(func));
        }
    }

    #[test]
    fn printer_keeps_tree_shape() {
        for src in ["a", "(theta - pt) - pt", "theta - (pt - pt)", "theta*(pt*one)", "-(theta + pt)", "(-theta)^2", "-theta^2", "(1/2)^3", "1/2*theta"] {
            let Ok(e) = parse_expr(src) else { continue };
            let printed = e.to_string();
            assert_eq!(parse_expr(&printed).unwrap(), e, "{src} -> {printed}");
        }
        assert_eq!(parse_expr("theta - (pt - pt)").unwrap().to_string(), "theta - (pt - pt)");
        assert_eq!(parse_expr("(theta - pt) - pt").unwrap().to_string(), "theta - pt - pt");
        assert_eq!(Expr::Num(Rat::new(-1, 2)).to_string(), "-1/2");
    }
}
