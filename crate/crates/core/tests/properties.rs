//! Property tests for the algebraic invariants.

use jacring::closure::{compute_closure, Ambient, jacobian_ops, verify_saturation, JacAmbient, OpKind};
use jacring::dsl::{eval_expr, parse_expr, EvalContext, Expr, Func, Symbol};
use jacring::exterior::ExtClass;
use jacring::gpb::{GpbClass, GpbContext, Preset};
use jacring::jacobian::{JacClass, Jacobian};
use jacring::linalg::{rref, solve_vandermonde, Rat, RatMatrix, RatVector};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rat::new(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(Rat::zero()), 2 => rat()], c), r)
            .prop_map(|rows| RatMatrix::from_rows(rows).unwrap())
    })
}

/// A class on `n` generators with up to six terms.
fn ext(n: usize) -> impl Strategy<Value = ExtClass> {
    prop::collection::vec((0u64..1 << n, nonzero_rat()), 0..6).prop_map(move |terms| {
        terms
            .into_iter()
            .fold(ExtClass::zero(n), |acc, (m, c)| acc + ExtClass::monomial(n, m, c))
    })
}

fn homogeneous(n: usize) -> impl Strategy<Value = ExtClass> {
    (ext(n), 0..=n).prop_map(|(x, d)| x.degree_part(d))
}

/// Images of `n` generators as pure degree-1 combinations.
fn linear_map(n: usize) -> impl Strategy<Value = Vec<ExtClass>> {
    prop::collection::vec(prop::collection::vec(prop_oneof![Just(Rat::zero()), rat()], n), n).prop_map(move |rows| {
        rows.into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .fold(ExtClass::zero(n), |acc, (j, c)| acc + ExtClass::generator(n, j).scale(&c))
            })
            .collect()
    })
}

fn jac_class(g: usize) -> impl Strategy<Value = JacClass> {
    ext(2 * g).prop_map(move |x| Jacobian::new(g).unwrap().class(x).unwrap())
}

fn gpb_class(g: usize) -> impl Strategy<Value = GpbClass> {
    (jac_class(g), jac_class(g)).prop_map(|(b, h)| GpbClass::new(b, h).unwrap())
}

/// A genus in 1..=3 with two classes on J.
fn jac_pair() -> impl Strategy<Value = (usize, JacClass, JacClass)> {
    (1usize..=3).prop_flat_map(|g| (Just(g), jac_class(g), jac_class(g)))
}

fn gpb_pair() -> impl Strategy<Value = (usize, GpbClass, GpbClass)> {
    (1usize..=3).prop_flat_map(|g| (Just(g), gpb_class(g), gpb_class(g)))
}

fn multiplier() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![-1i64, 2, 3, -2])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let once = rref(&m);
        let twice = rref(&once.matrix);
        prop_assert_eq!(&twice.matrix, &once.matrix);
        prop_assert_eq!(twice.rank, once.rank);
        prop_assert_eq!(twice.pivots, once.pivots);
    }

    #[test]
    fn vandermonde_round_trip(
        exps in prop::sample::subsequence((0i32..10).collect::<Vec<_>>(), 1..=5),
        comps in prop::collection::vec(prop::collection::vec(rat(), 3), 5),
    ) {
        let k = exps.len();
        let samples: Vec<i64> = (2..2 + k as i64).collect();
        let comps: Vec<RatVector> = comps[..k].iter().map(|c| RatVector::from_dense(c)).collect();
        let values: Vec<RatVector> = samples
            .iter()
            .map(|&s| {
                let mut v = RatVector::zeros(3);
                for (e, c) in exps.iter().zip(&comps) {
                    v.axpy(&Rat::int_pow(s, *e), c);
                }
                v
            })
            .collect();
        prop_assert_eq!(solve_vandermonde(&samples, &exps, &values).unwrap(), comps);
    }

    #[test]
    fn rational_arithmetic_is_exact(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!((a.clone() - b.clone()) + b, a);
    }

    #[test]
    fn wedge_is_associative(x in ext(8), y in ext(8), z in ext(8)) {
        let lhs = x.wedge(&y).unwrap().wedge(&z).unwrap();
        let rhs = x.wedge(&y.wedge(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_graded_commutative(x in homogeneous(8), y in homogeneous(8)) {
        let (Some(a), Some(b)) = (x.homogeneous_degree(), y.homogeneous_degree()) else { return Ok(()) };
        prop_assert_eq!(x.wedge(&y).unwrap(), y.wedge(&x).unwrap().scale(&Rat::sign_pow(a * b)));
    }

    #[test]
    fn induced_maps_compose(x in ext(6), m1 in linear_map(6), m2 in linear_map(6)) {
        let composed: Vec<ExtClass> = m2.iter().map(|img| img.induced_map(&m1).unwrap()).collect();
        let lhs = x.induced_map(&m2).unwrap().induced_map(&m1).unwrap();
        prop_assert_eq!(lhs, x.induced_map(&composed).unwrap());
    }

    #[test]
    fn fibre_integral_of_external_product(a in ext(4), b in ext(4)) {
        let pushed = a.boxed(&b).fiber_integrate_first(4).unwrap();
        prop_assert_eq!(pushed, b.scale(&a.integrate_top()));
    }

    #[test]
    fn multiplication_pushforward_is_adjoint((g, x, y) in jac_pair(), n in multiplier()) {
        let jac = Jacobian::new(g).unwrap();
        let lhs = jac.pair(&jac.mult_pushforward(n, &x).unwrap(), &y).unwrap();
        let rhs = jac.pair(&x, &jac.mult_pullback(n, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fourier_is_an_involution_up_to_sign(x in jac_class(3)) {
        let jac = Jacobian::new(3).unwrap();
        let ffx = jac.fourier(&jac.fourier(&x).unwrap()).unwrap();
        prop_assert_eq!(ffx, jac.involution(&x).unwrap().scale(&Rat::sign_pow(3)));
    }

    #[test]
    fn pontryagin_is_associative(x in jac_class(2), y in jac_class(2), z in jac_class(2)) {
        let jac = Jacobian::new(2).unwrap();
        let lhs = jac.pontryagin(&jac.pontryagin(&x, &y).unwrap(), &z).unwrap();
        let rhs = jac.pontryagin(&x, &jac.pontryagin(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn geometric_extended_fourier_is_multiplicative((g, x, y) in gpb_pair()) {
        let ctx = GpbContext::new(g).unwrap();
        let lhs = ctx.ext_fourier(&ctx.ext_pontryagin(&x, &y, Preset::Geometric).unwrap()).unwrap();
        let rhs = ctx.gpb_mul(&ctx.ext_fourier(&x).unwrap(), &ctx.ext_fourier(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn extended_push_pull_is_the_degree((g, x, _) in gpb_pair(), n in multiplier()) {
        let ctx = GpbContext::new(g).unwrap();
        let p = Preset::Geometric;
        let round = ctx.ext_mult_pushforward(n, &ctx.ext_mult_pullback(n, &x, p).unwrap(), p).unwrap();
        let degree = Rat::int_pow(n, 2 * g as i32) * Rat::from_int(n.abs());
        prop_assert_eq!(round, x.scale(&degree));
        let paper = ctx.ext_mult_pushforward(n, &ctx.ext_mult_pullback(n, &x, Preset::Paper).unwrap(), Preset::Paper).unwrap();
        prop_assert_eq!(paper, x.scale(&Rat::int_pow(n, 2 * g as i32)));
    }

    #[test]
    fn extended_fourier_kills_pullbacks_twice(x in jac_class(2)) {
        let ctx = GpbContext::new(2).unwrap();
        let once = ctx.ext_fourier(&ctx.pi_pullback(&x)).unwrap();
        prop_assert!(once.is_zero());
        prop_assert!(ctx.ext_fourier(&once).unwrap().is_zero());
    }

    #[test]
    fn projection_formula_on_p(xi in gpb_class(2), x in jac_class(2)) {
        let ctx = GpbContext::new(2).unwrap();
        let lhs = ctx.pi_pushforward(&ctx.gpb_mul(&xi, &ctx.pi_pullback(&x)).unwrap()).unwrap();
        prop_assert_eq!(lhs, ctx.pi_pushforward(&xi).unwrap().wedge(&x).unwrap());
    }
}

fn closure_dims(jac: &Jacobian, gens: &[JacClass], kinds: &[OpKind]) -> Vec<usize> {
    let res = compute_closure(&JacAmbient(jac), gens, &jacobian_ops(jac, kinds)).unwrap();
    (0..=jac.rank()).map(|d| res.graded_basis.get(&d).map_or(0, Vec::len)).collect()
}

fn op_kinds() -> impl Strategy<Value = Vec<OpKind>> {
    prop::sample::subsequence(OpKind::ALL.to_vec(), 1..=5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closure_is_monotone(gens in prop::collection::vec(jac_class(2), 1..3), extra in jac_class(2), kinds in op_kinds()) {
        let jac = Jacobian::new(2).unwrap();
        let small = closure_dims(&jac, &gens, &kinds);
        let mut more = gens.clone();
        more.push(extra);
        let big = closure_dims(&jac, &more, &kinds);
        for (d, (a, b)) in small.iter().zip(&big).enumerate() {
            prop_assert!(a <= b, "degree {}: {} > {}", d, a, b);
        }
    }

    #[test]
    fn closure_is_idempotent_and_order_free(gens in prop::collection::vec(jac_class(2), 1..4), kinds in op_kinds()) {
        let jac = Jacobian::new(2).unwrap();
        let amb = JacAmbient(&jac);
        let ops = jacobian_ops(&jac, &kinds);
        let res = compute_closure(&amb, &gens, &ops).unwrap();
        prop_assert!(res.certificate.saturated);
        prop_assert!(verify_saturation(&amb, &ops, &res).unwrap());
        let basis: Vec<JacClass> = res.accepted.iter().map(|v| amb.from_vector(v).unwrap()).collect();
        let again = compute_closure(&amb, &basis, &ops).unwrap();
        prop_assert_eq!(&again.span, &res.span);
        let mut reversed = gens.clone();
        reversed.reverse();
        let rev = compute_closure(&amb, &reversed, &ops).unwrap();
        prop_assert_eq!(&rev.span, &res.span);
    }
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Expr::Num(Rat::new(n, d))),
        prop::sample::select(vec![Symbol::Theta, Symbol::Pt, Symbol::One, Symbol::E(1), Symbol::F(2)]).prop_map(Expr::Sym),
        (-1i64..=3).prop_map(Expr::W),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|x| Expr::Neg(Box::new(x))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), 0u32..=3).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
            inner.clone().prop_map(|a| Expr::Call(Func::Fourier, vec![a])),
            inner.clone().prop_map(|a| Expr::Call(Func::Inv, vec![a])),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Call(Func::Pont, vec![a, b])),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn printing_round_trips(e in expr()) {
        let parsed = parse_expr(&e.to_string()).unwrap();
        let printed = parsed.to_string();
        let again = parse_expr(&printed).unwrap();
        prop_assert_eq!(&again, &parsed, "printed as {}", printed);
        prop_assert_eq!(again.to_string(), printed);
    }

    #[test]
    fn printed_expressions_evaluate_alike(e in expr()) {
        let ctx = EvalContext::new(2, Preset::Geometric).unwrap();
        let direct = eval_expr(&e, &ctx);
        let reparsed = eval_expr(&parse_expr(&e.to_string()).unwrap(), &ctx);
        match (direct, reparsed) {
            (Ok(a), Ok(b)) => prop_assert!(a.same_as(&b)),
            (Err(a), Err(b)) => prop_assert_eq!(a.to_string(), b.to_string()),
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a.is_ok(), b.is_ok()),
        }
    }
}
