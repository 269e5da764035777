use std::fmt;

use super::print::{format_gpb, format_jac};
use super::{Expr, Func, Symbol};
use crate::error::{Error, Result};
use crate::gpb::{GpbClass, GpbContext, Preset};
use crate::jacobian::{BeauvilleComponent, JacClass};
use crate::linalg::Rat;

/// The model an expression lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sort {
    Scalar,
    J,
    P,
    Decomposition,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Scalar => "scalar",
            Sort::J => "J-class",
            Sort::P => "P-class",
            Sort::Decomposition => "decomposition",
        })
    }
}

fn sort_err<T>(msg: String) -> Result<T> {
    Err(Error::Sort(msg))
}

/// Scalars promote to the other operand's sort.
fn join(op: &str, a: Sort, b: Sort) -> Result<Sort> {
    match (a, b) {
        (Sort::Decomposition, _) | (_, Sort::Decomposition) => {
            sort_err(format!("{op} does not apply to a decomposition"))
        }
        (Sort::Scalar, s) | (s, Sort::Scalar) => Ok(s),
        (x, y) if x == y => Ok(x),
        (x, y) => sort_err(format!("{op} mixes a {x} with a {y}")),
    }
}

fn want(func: Func, got: Sort, target: Sort) -> Result<()> {
    if got == target || got == Sort::Scalar {
        Ok(())
    } else {
        sort_err(format!("{} expects a {target}, got a {got}", func.name()))
    }
}

fn class_sort(func: Func, got: Sort) -> Result<Sort> {
    match got {
        Sort::Scalar => Ok(Sort::J),
        Sort::J | Sort::P => Ok(got),
        Sort::Decomposition => sort_err(format!("{} expects a class, got a decomposition", func.name())),
    }
}

/// Checks arities and sorts without evaluating anything.
pub fn check_sort(e: &Expr) -> Result<Sort> {
    Ok(match e {
        Expr::Num(_) => Sort::Scalar,
        Expr::Sym(Symbol::H | Symbol::Sy | Symbol::Sz) | Expr::Wt(_) => Sort::P,
        Expr::Sym(_) | Expr::W(_) => Sort::J,
        Expr::Neg(x) | Expr::Pow(x, _) => match check_sort(x)? {
            Sort::Decomposition => return sort_err("cannot negate or raise a decomposition".into()),
            s => s,
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => join("sum", check_sort(a)?, check_sort(b)?)?,
        Expr::Mul(a, b) => join("intersection product", check_sort(a)?, check_sort(b)?)?,
        Expr::Call(func, args) => {
            if args.len() != func.arity() {
                return sort_err(format!("{} takes {} argument(s)", func.name(), func.arity()));
            }
            let sorts = args.iter().map(check_sort).collect::<Result<Vec<_>>>()?;
            match func {
                Func::Fourier | Func::Beauville => {
                    want(*func, sorts[0], Sort::J)?;
                    if *func == Func::Fourier {
                        Sort::J
                    } else {
                        Sort::Decomposition
                    }
                }
                Func::PiPull => {
                    want(*func, sorts[0], Sort::J)?;
                    Sort::P
                }
                Func::ExtFourier => {
                    want(*func, sorts[0], Sort::P)?;
                    Sort::P
                }
                Func::PiPush => {
                    want(*func, sorts[0], Sort::P)?;
                    Sort::J
                }
                Func::Inv => class_sort(*func, sorts[0])?,
                Func::NStar | Func::NLow => {
                    if sorts[0] != Sort::Scalar {
                        return sort_err(format!("{} expects an integer first argument", func.name()));
                    }
                    class_sort(*func, sorts[1])?
                }
                Func::Pont => {
                    want(*func, sorts[0], Sort::J)?;
                    want(*func, sorts[1], Sort::J)?;
                    Sort::J
                }
                Func::PontX => {
                    want(*func, sorts[0], Sort::P)?;
                    want(*func, sorts[1], Sort::P)?;
                    Sort::P
                }
                Func::Integrate => {
                    class_sort(*func, sorts[0])?;
                    Sort::Scalar
                }
                Func::Pair => {
                    join("pair", sorts[0], sorts[1])?;
                    Sort::Scalar
                }
            }
        }
    })
}

/// The result of evaluating an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Rat),
    Jac(JacClass),
    Gpb(GpbClass),
    Decomposition(Vec<BeauvilleComponent>),
}

impl Value {
    pub fn sort(&self) -> Sort {
        match self {
            Value::Scalar(_) => Sort::Scalar,
            Value::Jac(_) => Sort::J,
            Value::Gpb(_) => Sort::P,
            Value::Decomposition(_) => Sort::Decomposition,
        }
    }

    /// Equality up to promotion of scalars to multiples of the unit.
    pub fn same_as(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Scalar(c), Value::Jac(x)) | (Value::Jac(x), Value::Scalar(c)) => {
                *x == JacClass::one(x.genus()).scale(c)
            }
            (Value::Scalar(c), Value::Gpb(x)) | (Value::Gpb(x), Value::Scalar(c)) => {
                x.hpart.is_zero() && x.base == JacClass::one(x.genus()).scale(c)
            }
            (a, b) => a == b,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{c}"),
            Value::Jac(x) => f.write_str(&format_jac(x)),
            Value::Gpb(x) => f.write_str(&format_gpb(x)),
            Value::Decomposition(parts) => {
                if parts.is_empty() {
                    return f.write_str("(no components)");
                }
                for (i, c) in parts.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "exponent {}, degree {}", c.exponent, c.degree)?;
                    if let Some(p) = c.codim {
                        write!(f, ", codim {p}")?;
                    }
                    if let Some(s) = c.weight() {
                        write!(f, ", weight {s}")?;
                    }
                    write!(f, ": {}", format_jac(&c.component))?;
                }
                Ok(())
            }
        }
    }
}

/// Model data an expression is evaluated against.
#[derive(Debug)]
pub struct EvalContext {
    pub gpb: GpbContext,
    pub preset: Preset,
}

impl EvalContext {
    pub fn new(genus: usize, preset: Preset) -> Result<Self> {
        Ok(EvalContext {
            gpb: GpbContext::new(genus)?,
            preset,
        })
    }

    /// Context whose twist and section shift are given by `J`-sort expressions.
    pub fn with_twist(genus: usize, preset: Preset, twist: Option<&Expr>, shift: Option<&Expr>) -> Result<Self> {
        let plain = Self::new(genus, preset)?;
        let class = |e: Option<&Expr>| -> Result<JacClass> {
            match e {
                None => Ok(plain.gpb.jacobian().zero()),
                Some(e) => plain.jac(eval_expr(e, &plain)?),
            }
        };
        let twist = class(twist).map_err(|e| e.in_op("twist"))?;
        let shift = class(shift).map_err(|e| e.in_op("shift"))?;
        Ok(EvalContext {
            gpb: GpbContext::with_twist(genus, twist, shift)?,
            preset,
        })
    }

    pub fn genus(&self) -> usize {
        self.gpb.genus()
    }

    fn jac(&self, v: Value) -> Result<JacClass> {
        match v {
            Value::Scalar(c) => Ok(self.gpb.jacobian().scalar(c)),
            Value::Jac(x) => Ok(x),
            other => sort_err(format!("expected a J-class, got a {}", other.sort())),
        }
    }

    fn p(&self, v: Value) -> Result<GpbClass> {
        match v {
            Value::Scalar(c) => Ok(self.gpb.pi_pullback(&self.gpb.jacobian().scalar(c))),
            Value::Gpb(x) => Ok(x),
            other => sort_err(format!("expected a P-class, got a {}", other.sort())),
        }
    }

    fn integer(&self, v: Value) -> Result<i64> {
        match v {
            Value::Scalar(c) => c
                .to_i64()
                .filter(|_| c.is_integer())
                .ok_or_else(|| Error::Range(format!("{c} is not a machine integer"))),
            other => sort_err(format!("expected an integer, got a {}", other.sort())),
        }
    }
}

/// Checks sorts, then evaluates exactly.
pub fn eval_expr(e: &Expr, ctx: &EvalContext) -> Result<Value> {
    check_sort(e)?;
    eval(e, ctx)
}

fn binary(op: &str, a: Value, b: Value, ctx: &EvalContext) -> Result<Value> {
    let scalar_op = |x: &Rat, y: &Rat| -> Rat {
        match op {
            "+" => x + y,
            "-" => x - y,
            _ => x * y,
        }
    };
    let (sa, sb) = (a.sort(), b.sort());
    let target = join(op, sa, sb)?;
    Ok(match target {
        Sort::Scalar => {
            let (Value::Scalar(x), Value::Scalar(y)) = (&a, &b) else { unreachable!() };
            Value::Scalar(scalar_op(x, y))
        }
        Sort::J => {
            let (x, y) = (ctx.jac(a)?, ctx.jac(b)?);
            Value::Jac(match op {
                "+" => x.try_add(&y)?,
                "-" => x.try_add(&-y)?,
                _ => x.wedge(&y)?,
            })
        }
        Sort::P => {
            let (x, y) = (ctx.p(a)?, ctx.p(b)?);
            Value::Gpb(match op {
                "+" => x.try_add(&y)?,
                "-" => x.sub(&y)?,
                _ => ctx.gpb.gpb_mul(&x, &y)?,
            })
        }
        Sort::Decomposition => unreachable!("rejected by join"),
    })
}

fn eval(e: &Expr, ctx: &EvalContext) -> Result<Value> {
    let g = ctx.gpb.jacobian();
    let gpb = &ctx.gpb;
    Ok(match e {
        Expr::Num(r) => Value::Scalar(r.clone()),
        Expr::Sym(s) => match s {
            Symbol::Theta => Value::Jac(g.theta().clone()),
            Symbol::Pt => Value::Jac(g.point()),
            Symbol::One => Value::Jac(g.one()),
            Symbol::E(i) => Value::Jac(g.e(*i)?),
            Symbol::F(i) => Value::Jac(g.f(*i)?),
            Symbol::H => Value::Gpb(gpb.h_class()),
            Symbol::Sy => Value::Gpb(gpb.sy_class()),
            Symbol::Sz => Value::Gpb(gpb.sz_class()),
        },
        Expr::W(i) => Value::Jac(g.w_class(*i).map_err(|e| e.in_op("W"))?),
        Expr::Wt(d) => Value::Gpb(gpb.wtilde(*d).map_err(|e| e.in_op("Wt"))?),
        Expr::Neg(x) => match eval(x, ctx)? {
            Value::Scalar(c) => Value::Scalar(-c),
            Value::Jac(x) => Value::Jac(-x),
            Value::Gpb(x) => Value::Gpb(x.scale(&Rat::from_int(-1))),
            Value::Decomposition(_) => return sort_err("cannot negate a decomposition".into()),
        },
        Expr::Add(a, b) => binary("+", eval(a, ctx)?, eval(b, ctx)?, ctx)?,
        Expr::Sub(a, b) => binary("-", eval(a, ctx)?, eval(b, ctx)?, ctx)?,
        Expr::Mul(a, b) => binary("*", eval(a, ctx)?, eval(b, ctx)?, ctx)?,
        Expr::Pow(x, k) => match eval(x, ctx)? {
            Value::Scalar(c) => Value::Scalar(c.pow(*k as i32)),
            Value::Jac(x) => Value::Jac(x.pow(*k as usize)),
            Value::Gpb(x) => Value::Gpb(gpb.gpb_pow(&x, *k as usize)?),
            Value::Decomposition(_) => return sort_err("cannot raise a decomposition".into()),
        },
        Expr::Call(func, args) => {
            let vals = args.iter().map(|a| eval(a, ctx)).collect::<Result<Vec<_>>>()?;
            call(*func, vals, ctx).map_err(|e| e.in_op(func.name()))?
        }
    })
}

fn call(func: Func, mut vals: Vec<Value>, ctx: &EvalContext) -> Result<Value> {
    let jac = ctx.gpb.jacobian();
    let gpb = &ctx.gpb;
    let preset = ctx.preset;
    let second = if vals.len() > 1 { vals.pop() } else { None };
    let first = vals.pop().expect("arity checked");
    let class_arg = |v: Value| -> Result<Value> {
        Ok(match v {
            Value::Scalar(c) => Value::Jac(jac.scalar(c)),
            v => v,
        })
    };
    Ok(match func {
        Func::Fourier => Value::Jac(jac.fourier(&ctx.jac(first)?)?),
        Func::ExtFourier => Value::Gpb(gpb.ext_fourier(&ctx.p(first)?)?),
        Func::PiPull => Value::Gpb(gpb.pi_pullback(&ctx.jac(first)?)),
        Func::PiPush => Value::Jac(gpb.pi_pushforward(&ctx.p(first)?)?),
        Func::Beauville => Value::Decomposition(jac.beauville_decompose(&ctx.jac(first)?)?),
        Func::Inv => match class_arg(first)? {
            Value::Jac(x) => Value::Jac(jac.involution(&x)?),
            Value::Gpb(x) => Value::Gpb(gpb.ext_involution(&x, preset)?),
            other => return sort_err(format!("inv expects a class, got a {}", other.sort())),
        },
        Func::NStar | Func::NLow => {
            let n = ctx.integer(first)?;
            let x = class_arg(second.expect("arity checked"))?;
            match (func, x) {
                (Func::NStar, Value::Jac(x)) => Value::Jac(jac.mult_pullback(n, &x)?),
                (Func::NLow, Value::Jac(x)) => Value::Jac(jac.mult_pushforward(n, &x)?),
                (Func::NStar, Value::Gpb(x)) => Value::Gpb(gpb.ext_mult_pullback(n, &x, preset)?),
                (_, Value::Gpb(x)) => Value::Gpb(gpb.ext_mult_pushforward(n, &x, preset)?),
                (_, other) => return sort_err(format!("expected a class, got a {}", other.sort())),
            }
        }
        Func::Pont => {
            let y = ctx.jac(second.expect("arity checked"))?;
            Value::Jac(jac.pontryagin(&ctx.jac(first)?, &y)?)
        }
        Func::PontX => {
            let y = ctx.p(second.expect("arity checked"))?;
            Value::Gpb(gpb.ext_pontryagin(&ctx.p(first)?, &y, preset)?)
        }
        Func::Integrate => match class_arg(first)? {
            Value::Jac(x) => Value::Scalar(x.integrate_top()),
            Value::Gpb(x) => Value::Scalar(gpb.integrate(&x)?),
            other => return sort_err(format!("integrate expects a class, got a {}", other.sort())),
        },
        Func::Pair => {
            let y = second.expect("arity checked");
            if first.sort() == Sort::P || y.sort() == Sort::P {
                Value::Scalar(gpb.pair(&ctx.p(first)?, &ctx.p(y)?)?)
            } else {
                Value::Scalar(jac.pair(&ctx.jac(first)?, &ctx.jac(y)?)?)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_expr;

    fn run(src: &str, g: usize) -> Value {
        let ctx = EvalContext::new(g, Preset::Geometric).unwrap();
        eval_expr(&parse_expr(src).unwrap(), &ctx).unwrap()
    }

    #[test]
    fn documented_examples() {
        assert_eq!(run("integrate(theta*theta)", 2), Value::Scalar(Rat::from_int(2)));
        assert_eq!(run("integrate(W[0])", 2), Value::Scalar(Rat::one()));
        assert_eq!(run("pont(pt, theta)", 2).to_string(), "theta");
        assert_eq!(run("Wt[0]", 2).to_string(), "H + pi*(theta)");
        assert_eq!(run("F(one)", 1).to_string(), "-pt");
        assert!(run("F(F(W[1]))", 2).same_as(&run("inv(W[1])", 2)));
        let Value::Decomposition(parts) = run("beauville(theta + W[0])", 2) else { panic!() };
        let exps: Vec<i32> = parts.iter().map(|c| c.exponent).collect();
        assert_eq!(exps, vec![2, 4]);
    }

    #[test]
    fn sorts_are_checked_first() {
        let ctx = EvalContext::new(2, Preset::Geometric).unwrap();
        for bad in ["theta + H", "F(H)", "Fx(theta)", "pont(H, H)", "nstar(theta, pt)", "beauville(pt) + 1", "pair(theta, H)"] {
            let e = parse_expr(bad).unwrap();
            assert!(matches!(check_sort(&e), Err(Error::Sort(_))), "{bad}");
            assert!(matches!(eval_expr(&e, &ctx), Err(Error::Sort(_))), "{bad}");
        }
        assert_eq!(check_sort(&parse_expr("2 + H").unwrap()).unwrap(), Sort::P);
        assert_eq!(check_sort(&parse_expr("pair(pi*(theta), H)").unwrap()).unwrap(), Sort::Scalar);
    }

    #[test]
    fn errors_name_the_operation() {
        let ctx = EvalContext::new(2, Preset::Paper).unwrap();
        match eval_expr(&parse_expr("nlow(0, H)").unwrap(), &ctx) {
            Err(Error::Eval { op, .. }) => assert_eq!(op, "nlow"),
            other => panic!("{other:?}"),
        }
        match eval_expr(&parse_expr("W[7]").unwrap(), &ctx) {
            Err(Error::Eval { op, .. }) => assert_eq!(op, "W"),
            other => panic!("{other:?}"),
        }
        assert!(eval_expr(&parse_expr("e3").unwrap(), &ctx).is_err());
        assert!(eval_expr(&parse_expr("nstar(1/2, theta)").unwrap(), &ctx).is_err());
    }

    #[test]
    fn twist_and_shift() {
        let t = parse_expr("theta").unwrap();
        let ctx = EvalContext::with_twist(2, Preset::Geometric, None, Some(&t)).unwrap();
        assert_eq!(eval_expr(&parse_expr("Sy").unwrap(), &ctx).unwrap().to_string(), "H + pi*(theta)");
        assert_eq!(eval_expr(&parse_expr("Sz").unwrap(), &ctx).unwrap().to_string(), "H + pi*(-theta)");
        let bad = parse_expr("pt").unwrap();
        assert!(EvalContext::with_twist(2, Preset::Geometric, Some(&bad), None).is_err());
    }

    #[test]
    fn printed_values_reparse() {
        for (src, g) in [("Wt[1]*Wt[1] - 3*H", 2), ("F(e1 + 2*f2*e2)", 2), ("pontx(Wt[0], Wt[0])", 2), ("1/3 - theta^2", 3)] {
            let ctx = EvalContext::new(g, Preset::Geometric).unwrap();
            let v = eval_expr(&parse_expr(src).unwrap(), &ctx).unwrap();
            let back = eval_expr(&parse_expr(&v.to_string()).unwrap(), &ctx).unwrap();
            assert!(v.same_as(&back), "{src}: {v}");
        }
    }
}
