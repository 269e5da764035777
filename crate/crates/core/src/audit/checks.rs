use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::registry::Claim;
use super::{AuditOptions, Status};
use crate::closure::{compare_subalgebras, compute_closure, gpb_ops, jacobian_ops, GpbAmbient, JacAmbient, OpKind};
use crate::dsl::{format_gpb, format_gpb_product, format_jac};
use crate::error::Error;
use crate::exterior::ExtClass;
use crate::gpb::{GpbClass, GpbContext, GpbProductClass, Preset};
use crate::jacobian::{JacClass, Jacobian, ProductClass, Projection};
use crate::linalg::{rref, Rat, RatMatrix, Subspace};

pub(crate) struct Outcome {
    pub status: Status,
    pub witness: Option<Value>,
}

impl Outcome {
    fn verified() -> Self {
        Outcome { status: Status::Verified, witness: None }
    }

    fn verified_with(w: Value) -> Self {
        Outcome { status: Status::Verified, witness: Some(w) }
    }

    fn refuted(w: Value) -> Self {
        Outcome { status: Status::RefutedInModel, witness: Some(w) }
    }

    fn not_modeled(w: Value) -> Self {
        Outcome { status: Status::NotModeled, witness: Some(w) }
    }

    pub fn skipped(reason: String) -> Self {
        Outcome { status: Status::Skipped, witness: Some(json!({ "reason": reason })) }
    }

    fn error(e: &Error) -> Self {
        Outcome { status: Status::Error, witness: Some(json!({ "error": e.to_string() })) }
    }
}

pub(crate) enum Stop {
    Budget,
    Engine(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Engine(e)
    }
}

pub(crate) type Checked = std::result::Result<Outcome, Stop>;

pub(crate) fn run(claim: &Claim, check: &mut Check<'_>) -> Outcome {
    let mut out = match (claim.check)(check) {
        Ok(o) => o,
        Err(Stop::Budget) => Outcome::skipped("time budget exceeded".into()),
        Err(Stop::Engine(e)) => Outcome::error(&e),
    };
    if check.sampled && out.status == Status::RefutedInModel {
        if let Some(Value::Object(m)) = out.witness.as_mut() {
            m.insert("sample_seed".into(), json!(check.sample_seed));
        }
    }
    out
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ *b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Evaluation state of one claim at one genus and preset.
pub(crate) struct Check<'a> {
    pub ctx: &'a GpbContext,
    pub g: usize,
    preset: Option<Preset>,
    rng: ChaCha8Rng,
    samples: usize,
    deadline: Option<Instant>,
    sampled: bool,
    sample_seed: u64,
}

impl<'a> Check<'a> {
    pub fn new(ctx: &'a GpbContext, preset: Option<Preset>, opts: &AuditOptions, id: &str) -> Self {
        let preset_name = preset.map_or("none", Preset::name);
        let sample_seed = fnv1a(format!("{}:{id}:{}:{preset_name}", opts.seed, ctx.genus()).as_bytes());
        Check {
            ctx,
            g: ctx.genus(),
            preset,
            rng: ChaCha8Rng::seed_from_u64(sample_seed),
            samples: opts.samples.max(1),
            deadline: opts.time_budget.map(|d| Instant::now() + d),
            sampled: false,
            sample_seed,
        }
    }

    fn jac(&self) -> &'a Jacobian {
        self.ctx.jacobian()
    }

    fn preset(&self) -> Preset {
        self.preset.expect("per-preset claim")
    }

    fn tick(&self) -> Result<(), Stop> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Stop::Budget),
            _ => Ok(()),
        }
    }

    fn exhaustive(&self) -> bool {
        self.g <= 2
    }

    fn rand_rat(&mut self) -> Rat {
        let mut n = 0;
        while n == 0 {
            n = self.rng.random_range(-6i64..=6);
        }
        Rat::new(n, self.rng.random_range(1i64..=5))
    }

    fn rand_mask(&mut self, degree: usize) -> u64 {
        let mut idx: Vec<usize> = (0..2 * self.g).collect();
        idx.shuffle(&mut self.rng);
        idx[..degree].iter().fold(0, |m, i| m | 1 << i)
    }

    /// Random homogeneous class of exterior degree `degree` with up to three terms.
    fn rand_jac_of(&mut self, degree: usize) -> JacClass {
        let terms = self.rng.random_range(1..=3);
        let mut x = self.jac().zero();
        for _ in 0..terms {
            let m = self.rand_mask(degree);
            let c = self.rand_rat();
            x = x + self.jac().monomial(m).scale(&c);
        }
        x
    }

    fn rand_jac(&mut self, even: bool) -> JacClass {
        loop {
            let d = self.rng.random_range(0..=2 * self.g);
            if even && d % 2 == 1 {
                continue;
            }
            let x = self.rand_jac_of(d);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Random homogeneous class on `P` of exterior degree between 0 and `2g + 2`.
    fn rand_gpb(&mut self, even: bool) -> GpbClass {
        loop {
            let d = self.rng.random_range(0..=2 * self.g + 2);
            if even && d % 2 == 1 {
                continue;
            }
            let base = if d <= 2 * self.g { self.rand_jac_of(d) } else { self.jac().zero() };
            let hpart = if (2..=2 * self.g + 2).contains(&d) { self.rand_jac_of(d - 2) } else { self.jac().zero() };
            let x = GpbClass::new(base, hpart).expect("same genus");
            if !x.is_zero() {
                return x;
            }
        }
    }

    fn jac_pairs(&mut self, even: bool) -> Vec<(JacClass, JacClass)> {
        if self.exhaustive() {
            let b: Vec<JacClass> = if even { self.jac().even_basis() } else { self.jac().basis() };
            return b.iter().flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone()))).collect();
        }
        self.sampled = true;
        (0..self.samples).map(|_| (self.rand_jac(even), self.rand_jac(even))).collect()
    }

    fn gpb_pairs(&mut self, even: bool) -> Vec<(GpbClass, GpbClass)> {
        if self.exhaustive() {
            let b: Vec<GpbClass> = self
                .ctx
                .basis()
                .into_iter()
                .filter(|x| !even || x.homogeneous_degree().is_some_and(|d| d % 2 == 0))
                .collect();
            return b.iter().flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone()))).collect();
        }
        self.sampled = true;
        (0..self.samples).map(|_| (self.rand_gpb(even), self.rand_gpb(even))).collect()
    }

    /// Triples are exhaustive only at genus 1.
    fn jac_triples(&mut self) -> Vec<[JacClass; 3]> {
        if self.g == 1 {
            let b = self.jac().basis();
            let mut out = Vec::new();
            for x in &b {
                for y in &b {
                    for z in &b {
                        out.push([x.clone(), y.clone(), z.clone()]);
                    }
                }
            }
            return out;
        }
        self.sampled = true;
        (0..self.samples).map(|_| [self.rand_jac(false), self.rand_jac(false), self.rand_jac(false)]).collect()
    }

    fn gpb_triples(&mut self) -> Vec<[GpbClass; 3]> {
        if self.g == 1 {
            let b = self.ctx.basis();
            let mut out = Vec::new();
            for x in &b {
                for y in &b {
                    for z in &b {
                        out.push([x.clone(), y.clone(), z.clone()]);
                    }
                }
            }
            return out;
        }
        self.sampled = true;
        (0..self.samples).map(|_| [self.rand_gpb(false), self.rand_gpb(false), self.rand_gpb(false)]).collect()
    }

    /// The default context followed by twisted and shifted variants.
    fn variants(&self) -> Result<Vec<(&'static str, GpbContext)>, Stop> {
        let jac = self.jac();
        let theta = jac.theta().clone();
        let e1f1 = jac.e(1)? * jac.f(1)?;
        Ok(vec![
            ("default", GpbContext::new(self.g)?),
            ("twist=theta, shift=theta", GpbContext::with_twist(self.g, theta.clone(), theta)?),
            ("shift=e1*f1", GpbContext::with_twist(self.g, jac.zero(), e1f1)?),
        ])
    }
}

fn j(x: &JacClass) -> Value {
    Value::String(format_jac(x))
}

fn p(x: &GpbClass) -> Value {
    Value::String(format_gpb(x))
}

fn pp(x: &GpbProductClass) -> Value {
    Value::String(format_gpb_product(x))
}

fn r(x: &Rat) -> Value {
    Value::String(x.to_fraction_string())
}

fn mismatch(law: &str, input: Value, lhs: Value, rhs: Value) -> Outcome {
    Outcome::refuted(json!({ "law": law, "input": input, "lhs": lhs, "rhs": rhs }))
}

fn jdeg(x: &JacClass) -> Option<usize> {
    x.value().homogeneous_degree()
}

/// Whether a product of homogeneous inputs has the expected exterior degree
/// (a negative expectation forces zero).
fn degree_ok(degree: Option<usize>, is_zero: bool, expected: i64) -> bool {
    is_zero || (expected >= 0 && degree == Some(expected as usize))
}

fn theta_power_over_factorial(jac: &Jacobian, k: usize) -> JacClass {
    jac.theta().pow(k).scale(&Rat::factorial(k).recip())
}

pub(crate) fn poincare_formula(c: &mut Check<'_>) -> Checked {
    let jac = c.jac();
    let g = c.g;
    for i in 0..=g {
        let wi = jac.w_class(i as i64)?;
        let lhs = jac.pair(&wi, &jac.w_class((g - i) as i64)?)?;
        let rhs = Rat::binomial(g, i);
        if lhs != rhs {
            return Ok(mismatch("pair(W_i, W_{g-i}) = binomial(g, i)", json!({ "i": i }), r(&lhs), r(&rhs)));
        }
        let k = g - i;
        let power = (0..k).fold(jac.one(), |acc, _| acc * jac.theta().clone()).scale(&Rat::factorial(k).recip());
        if power != wi {
            return Ok(mismatch("W_i = theta^{g-i}/(g-i)!", json!({ "i": i }), j(&wi), j(&power)));
        }
    }
    for a in 0..=g {
        for b in 0..=g - a {
            let lhs = theta_power_over_factorial(jac, a) * theta_power_over_factorial(jac, b);
            let rhs = theta_power_over_factorial(jac, a + b).scale(&Rat::binomial(a + b, a));
            if lhs != rhs {
                return Ok(mismatch(
                    "theta^a/a! . theta^b/b! = binomial(a+b, a) theta^{a+b}/(a+b)!",
                    json!({ "a": a, "b": b }),
                    j(&lhs),
                    j(&rhs),
                ));
            }
        }
    }
    Ok(Outcome::verified())
}

pub(crate) fn pontryagin_j(c: &mut Check<'_>) -> Checked {
    let jac = c.jac();
    let g = c.g;
    let pt = jac.point();
    for x in jac.basis() {
        let u = jac.pontryagin(&pt, &x)?;
        if u != x {
            return Ok(mismatch("pt * x = x", j(&x), j(&u), j(&x)));
        }
    }
    for (x, y) in c.jac_pairs(false) {
        c.tick()?;
        let xy = jac.pontryagin(&x, &y)?;
        let literal = jac.pushforward(
            Projection::Sum,
            &(jac.pullback(Projection::First, &x)? * jac.pullback(Projection::Second, &y)?),
        )?;
        if xy != literal {
            return Ok(mismatch("x * y = m_*(p^*x . q^*y)", json!([j(&x), j(&y)]), j(&xy), j(&literal)));
        }
        if let (Some(dx), Some(dy)) = (jdeg(&x), jdeg(&y)) {
            let yx = jac.pontryagin(&y, &x)?.scale(&Rat::sign_pow(dx * dy));
            if xy != yx {
                return Ok(mismatch("x * y = (-1)^{|x||y|} y * x", json!([j(&x), j(&y)]), j(&xy), j(&yx)));
            }
            let expected = dx as i64 + dy as i64 - 2 * g as i64;
            if !degree_ok(jdeg(&xy), xy.is_zero(), expected) {
                return Ok(Outcome::refuted(json!({
                    "law": "deg(x * y) = deg x + deg y - 2g",
                    "input": [j(&x), j(&y)],
                    "product": j(&xy),
                    "expected_degree": expected,
                })));
            }
        }
    }
    for [x, y, z] in c.jac_triples() {
        c.tick()?;
        let lhs = jac.pontryagin(&jac.pontryagin(&x, &y)?, &z)?;
        let rhs = jac.pontryagin(&x, &jac.pontryagin(&y, &z)?)?;
        if lhs != rhs {
            return Ok(mismatch("(x * y) * z = x * (y * z)", json!([j(&x), j(&y), j(&z)]), j(&lhs), j(&rhs)));
        }
    }
    for a in 0..=g {
        for b in 0..=g - a {
            let lhs = jac.pontryagin(&jac.w_class(a as i64)?, &jac.w_class(b as i64)?)?;
            let rhs = jac.w_class((a + b) as i64)?.scale(&Rat::binomial(a + b, a));
            if lhs != rhs {
                return Ok(mismatch("W_a * W_b = binomial(a+b, a) W_{a+b}", json!({ "a": a, "b": b }), j(&lhs), j(&rhs)));
            }
        }
    }
    Ok(Outcome::verified())
}

const EIGEN_TEST_N: [i64; 4] = [-1, 2, 3, 5];

pub(crate) fn bigrading_j(c: &mut Check<'_>) -> Checked {
    let jac = c.jac();
    let g = c.g as i32;
    let mut classes = jac.even_basis();
    for _ in 0..c.samples {
        let x = c.rand_jac(true) + c.rand_jac(true);
        classes.push(x);
    }
    for x in &classes {
        c.tick()?;
        let comps = jac.beauville_decompose(x)?;
        let sum = comps.iter().fold(jac.zero(), |acc, k| acc + k.component.clone());
        if sum != *x {
            return Ok(mismatch("x = sum of its eigencomponents", j(x), j(&sum), j(x)));
        }
        for comp in &comps {
            let (Some(p), Some(s)) = (comp.codim, comp.weight()) else {
                return Ok(Outcome::refuted(json!({
                    "law": "eigencomponents of even classes have a codimension",
                    "input": j(x),
                    "component": j(&comp.component),
                })));
            };
            let p = p as i32;
            for n in EIGEN_TEST_N {
                let pull = jac.mult_pullback(n, &comp.component)?;
                let want = comp.component.scale(&Rat::int_pow(n, 2 * p - s));
                if pull != want {
                    return Ok(mismatch("n^* = n^{2p-s} on A^p_(s)", json!({ "class": j(&comp.component), "n": n }), j(&pull), j(&want)));
                }
                let push = jac.mult_pushforward(n, &comp.component)?;
                let want = comp.component.scale(&Rat::int_pow(n, 2 * g - 2 * p + s));
                if push != want {
                    return Ok(mismatch("n_* = n^{2g-2p+s} on A^p_(s)", json!({ "class": j(&comp.component), "n": n }), j(&push), j(&want)));
                }
            }
        }
    }
    for (x, y) in c.jac_pairs(true) {
        c.tick()?;
        let (Some(dx), Some(dy)) = (jdeg(&x), jdeg(&y)) else { continue };
        let (p, q) = ((dx / 2) as i32, (dy / 2) as i32);
        for (name, prod, exponent) in [
            ("n^*(x . y) = n^{2(p+q)} x . y", x.wedge(&y)?, 2 * (p + q)),
            ("n^*(x * y) = n^{2(p+q-g)} x * y", jac.pontryagin(&x, &y)?, 2 * (p + q - g)),
        ] {
            if prod.is_zero() {
                continue;
            }
            let lhs = jac.mult_pullback(2, &prod)?;
            let rhs = prod.scale(&Rat::int_pow(2, exponent));
            if lhs != rhs {
                return Ok(mismatch(name, json!([j(&x), j(&y)]), j(&lhs), j(&rhs)));
            }
        }
    }
    Ok(Outcome::verified())
}

/// Dimension of every nonzero `A^p_(s)` and one example class for each.
fn weight_table(c: &Check<'_>) -> Result<BTreeMap<(usize, i32), (usize, JacClass)>, Stop> {
    let jac = c.jac();
    let mut table: BTreeMap<(usize, i32), (usize, JacClass)> = BTreeMap::new();
    for x in jac.even_basis() {
        c.tick()?;
        for comp in jac.beauville_decompose(&x)? {
            if let (Some(p), Some(s)) = (comp.codim, comp.weight()) {
                table.entry((p, s)).or_insert((0, comp.component.clone())).0 += 1;
            }
        }
    }
    Ok(table)
}

pub(crate) fn bigrading_support(c: &mut Check<'_>) -> Checked {
    let g = c.g as i64;
    let table = weight_table(c)?;
    let rows: Vec<Value> = table.iter().map(|((p, s), (d, _))| json!({ "p": p, "s": s, "dim": d })).collect();
    for ((p, s), (_, example)) in &table {
        let (p, s) = (*p as i64, *s as i64);
        if !(s < p && p <= g + s) {
            return Ok(Outcome::refuted(json!({
                "law": "A^p_(s) != 0 only if s < p <= g + s",
                "p": p,
                "s": s,
                "example": j(example),
                "nonzero_pieces": rows,
            })));
        }
    }
    Ok(Outcome::verified())
}

pub(crate) fn beauville_positive_weights(c: &mut Check<'_>) -> Checked {
    let table = weight_table(c)?;
    let weights: BTreeSet<i32> = table.keys().map(|(_, s)| *s).collect();
    if weights.iter().all(|s| *s == 0) {
        return Ok(Outcome::not_modeled(json!({
            "reason": "pieces of weight s > 0 vanish identically in the cohomological realization",
            "observed_weights": weights,
        })));
    }
    Ok(Outcome::verified_with(json!({ "observed_weights": weights })))
}

pub(crate) fn poincare_class_j(c: &mut Check<'_>) -> Checked {
    let jac = c.jac();
    let g = c.g;
    let ell = jac.poincare_class().clone();
    let n = 4 * g;
    let mut explicit = ExtClass::zero(n);
    for i in 0..g {
        explicit = explicit
            - ExtClass::wedge_of(n, &[2 * i, 2 * g + 2 * i + 1])
            - ExtClass::wedge_of(n, &[2 * g + 2 * i, 2 * i + 1]);
    }
    let explicit = ProductClass::from_ext(g, explicit)?;
    let fmt = |z: &ProductClass| Value::String(crate::dsl::format_product(z));
    if ell != explicit {
        return Ok(mismatch("l = -sum_i (e_i f_i' + e_i' f_i)", Value::Null, fmt(&ell), fmt(&explicit)));
    }
    let theta = jac.theta();
    let literal = jac.pullback(Projection::First, theta)? + jac.pullback(Projection::Second, theta)?
        - jac.pullback(Projection::Sum, theta)?;
    if ell != literal {
        return Ok(mismatch("l = p^*theta + q^*theta - m^*theta", Value::Null, fmt(&ell), fmt(&literal)));
    }
    for killed in [Projection::First, Projection::Second] {
        let slice = jac.restrict_to_slice(killed, &ell)?;
        if !slice.is_zero() {
            return Ok(mismatch("l restricts to 0 on both slices", json!(format!("{killed:?}")), fmt(&slice), json!("0")));
        }
    }
    let swapped = jac.swap(&ell)?;
    if swapped != ell {
        return Ok(mismatch("l is symmetric", Value::Null, fmt(&swapped), fmt(&ell)));
    }
    Ok(Outcome::verified())
}

pub(crate) fn fourier_involution_j(c: &mut Check<'_>) -> Checked {
    let jac = c.jac();
    let sign = Rat::sign_pow(c.g);
    for x in jac.basis() {
        c.tick()?;
        let lhs = jac.fourier(&jac.fourier(&x)?)?;
        let rhs = jac.involution(&x)?.scale(&sign);
        if lhs != rhs {
            return Ok(mismatch("F(F(x)) = (-1)^g (-1)^* x", j(&x), j(&lhs), j(&rhs)));
        }
    }
    Ok(Outcome::verified())
}

pub(crate) fn fourier_exchange_j(c: &mut Check<'_>) -> Checked {
    let jac = c.jac();
    let sign = Rat::sign_pow(c.g);
    for (x, y) in c.jac_pairs(false) {
        c.tick()?;
        let (fx, fy) = (jac.fourier(&x)?, jac.fourier(&y)?);
        let lhs = jac.fourier(&jac.pontryagin(&x, &y)?)?;
        let rhs = fx.wedge(&fy)?;
        if lhs != rhs {
            return Ok(mismatch("F(x * y) = Fx . Fy", json!([j(&x), j(&y)]), j(&lhs), j(&rhs)));
        }
        let lhs = jac.fourier(&x.wedge(&y)?)?;
        let rhs = jac.pontryagin(&fx, &fy)?.scale(&sign);
        if lhs != rhs {
            return Ok(mismatch("F(x . y) = (-1)^g Fx * Fy", json!([j(&x), j(&y)]), j(&lhs), j(&rhs)));
        }
    }
    Ok(Outcome::verified())
}

pub(crate) fn fourier_grading_j(c: &mut Check<'_>) -> Checked {
    let jac = c.jac();
    let g = c.g;
    for x in jac.basis() {
        c.tick()?;
        let d = jdeg(&x).expect("monomial");
        let fx = jac.fourier(&x)?;
        let expected = 2 * g - d;
        if fx.is_zero() || jdeg(&fx) != Some(expected) {
            return Ok(Outcome::refuted(json!({
                "law": "F maps degree d to degree 2g - d",
                "input": j(&x),
                "image": j(&fx),
                "expected_degree": expected,
            })));
        }
        // Weight 0 is preserved: n^* acts on the image by n^{2g-d}.
        let lhs = jac.mult_pullback(2, &fx)?;
        let rhs = fx.scale(&Rat::int_pow(2, expected as i32));
        if lhs != rhs {
            return Ok(mismatch("F A^p_(0) = A^{g-p}_(0)", j(&x), j(&lhs), j(&rhs)));
        }
    }
    Ok(Outcome::verified())
}

pub(crate) fn thm_2_2_generation(c: &mut Check<'_>) -> Checked {
    let jac = c.jac();
    let g = c.g;
    let amb = JacAmbient(jac);
    let gens = (1..g).map(|i| jac.w_class(i as i64)).collect::<Result<Vec<_>, _>>()?;
    let res = compute_closure(&amb, &gens, &jacobian_ops(jac, &OpKind::ALL))?;
    let powers: Vec<_> = (0..=g).map(|k| jac.theta().pow(k).value().to_vector()).collect();
    let target = Subspace::spanned_by(1 << jac.rank(), &powers)?;
    let dims: Vec<Value> = res.dims_by_degree().iter().map(|d| json!({ "degree": d.degree, "dim": d.dim })).collect();
    let witness = json!({
        "closure_dim": res.dim(),
        "expected_dim": g + 1,
        "dims_by_degree": dims,
        "saturated": res.certificate.saturated,
    });
    if res.span == target && res.certificate.saturated {
        Ok(Outcome::verified_with(witness))
    } else {
        Ok(Outcome::refuted(witness))
    }
}

pub(crate) fn ext_mult_extension(c: &mut Check<'_>) -> Checked {
    let ctx = c.ctx;
    let jac = c.jac();
    let preset = c.preset();
    let g = c.g as i32;
    for n in [-1i64, 2, 3] {
        for x in jac.basis() {
            let lhs = ctx.ext_mult_pullback(n, &ctx.pi_pullback(&x), preset)?;
            let rhs = ctx.pi_pullback(&jac.mult_pullback(n, &x)?);
            if lhs != rhs {
                return Ok(mismatch("n^* pi^* = pi^* n^*", json!({ "n": n, "class": j(&x) }), p(&lhs), p(&rhs)));
            }
        }
        let degree = Rat::int_pow(n, 2 * g) * Rat::from_int(n.abs());
        for xi in ctx.basis() {
            c.tick()?;
            let lhs = ctx.ext_mult_pushforward(n, &ctx.ext_mult_pullback(n, &xi, preset)?, preset)?;
            let rhs = xi.scale(&degree);
            if lhs != rhs {
                return Ok(Outcome::refuted(json!({
                    "law": "n_* n^* = deg(n) with deg(n) = n^{2g}|n|",
                    "input": { "n": n, "class": p(&xi) },
                    "lhs": p(&lhs),
                    "rhs": p(&rhs),
                    "map_degree": r(&degree),
                })));
            }
        }
    }
    for xi in ctx.basis() {
        c.tick()?;
        for (m, n) in [(2i64, 3i64), (-1, 2)] {
            let lhs = ctx.ext_mult_pullback(m * n, &xi, preset)?;
            let rhs = ctx.ext_mult_pullback(m, &ctx.ext_mult_pullback(n, &xi, preset)?, preset)?;
            if lhs != rhs {
                return Ok(mismatch("(mn)^* = m^* n^*", json!({ "m": m, "n": n, "class": p(&xi) }), p(&lhs), p(&rhs)));
            }
        }
    }
    for (x, y) in c.gpb_pairs(false) {
        c.tick()?;
        let lhs = ctx.ext_mult_pullback(2, &ctx.gpb_mul(&x, &y)?, preset)?;
        let rhs = ctx.gpb_mul(&ctx.ext_mult_pullback(2, &x, preset)?, &ctx.ext_mult_pullback(2, &y, preset)?)?;
        if lhs != rhs {
            return Ok(mismatch("n^*(x . y) = n^*x . n^*y", json!([p(&x), p(&y)]), p(&lhs), p(&rhs)));
        }
    }
    Ok(Outcome::verified())
}

/// The exponent `e` with `f(2, x) = 2^e x`, if `x` is an eigenvector.
fn exponent_at_two(
    x: &GpbClass,
    bound: i32,
    f: impl Fn(i64, &GpbClass) -> crate::Result<GpbClass>,
) -> crate::Result<Option<i32>> {
    let y = f(2, x)?;
    Ok((-bound..=bound).find(|&e| y == x.scale(&Rat::int_pow(2, e))))
}

fn even_degree(x: &GpbClass) -> Option<usize> {
    x.homogeneous_degree().filter(|d| d % 2 == 0)
}

/// Labels each even basis class of `P` by `(codim, s)` when it satisfies both
/// eigenspace laws for every tested `n`; otherwise returns the first violation.
fn eigen_label(
    ctx: &GpbContext,
    preset: Preset,
    xi: &GpbClass,
) -> crate::Result<Result<(usize, i32), Value>> {
    let g = ctx.genus() as i32;
    let k = (even_degree(xi).expect("even class") / 2) as i32;
    let Some(e) = exponent_at_two(xi, 4 * g + 4, |n, x| ctx.ext_mult_pullback(n, x, preset))? else {
        return Ok(Err(json!({ "class": p(xi), "reason": "not an eigenvector of 2^*" })));
    };
    let s = 2 * k - e;
    for n in [-1i64, 2, 3] {
        let pull = ctx.ext_mult_pullback(n, xi, preset)?;
        let want = xi.scale(&Rat::int_pow(n, 2 * k - s));
        if pull != want {
            return Ok(Err(json!({
                "class": p(xi), "codim": k, "s": s, "n": n,
                "operator": "n^*", "lhs": p(&pull), "rhs": p(&want),
            })));
        }
        let push = ctx.ext_mult_pushforward(n, xi, preset)?;
        let want = xi.scale(&Rat::int_pow(n, 2 * g - 2 * k + s));
        if push != want {
            return Ok(Err(json!({
                "class": p(xi), "codim": k, "s": s, "n": n,
                "operator": "n_*", "lhs": p(&push), "rhs": p(&want),
            })));
        }
    }
    Ok(Ok((k as usize, s)))
}

pub(crate) fn ext_eigenspace_span(c: &mut Check<'_>) -> Checked {
    let ctx = c.ctx;
    let preset = c.preset();
    for xi in ctx.basis().into_iter().filter(|x| even_degree(x).is_some()) {
        c.tick()?;
        if let Err(mut w) = eigen_label(ctx, preset, &xi)? {
            w["law"] = json!("every class of A^k(P) is a sum of classes with n^* = n^{2k-s} and n_* = n^{2g-2k+s}");
            return Ok(Outcome::refuted(w));
        }
    }
    Ok(Outcome::verified())
}

fn h_eigenvalue_table(ctx: &GpbContext, preset: Preset) -> crate::Result<Value> {
    let g = ctx.genus() as i32;
    let h = ctx.h_class();
    let mut rows = Vec::new();
    for n in [2i64, 3] {
        rows.push(json!({
            "n": n,
            "pullback_of_H": p(&ctx.ext_mult_pullback(n, &h, preset)?),
            "required_pullback": p(&h.scale(&Rat::int_pow(n, 2))),
            "pushforward_of_H": p(&ctx.ext_mult_pushforward(n, &h, preset)?),
            "required_pushforward": p(&h.scale(&Rat::int_pow(n, 2 * g - 2))),
        }));
    }
    Ok(Value::Array(rows))
}

pub(crate) fn ext_eigendecomp(c: &mut Check<'_>) -> Checked {
    let ctx = c.ctx;
    let jac = c.jac();
    let preset = c.preset();
    let g = c.g as i32;
    for y in jac.even_basis() {
        c.tick()?;
        let q = (jdeg(&y).expect("monomial") / 2) as i32;
        for (cls, k) in [(ctx.pi_pullback(&y), q), (ctx.h_times(&y), q + 1)] {
            for n in [-1i64, 2, 3] {
                let pull = ctx.ext_mult_pullback(n, &cls, preset)?;
                let want_pull = cls.scale(&Rat::int_pow(n, 2 * k));
                let push = ctx.ext_mult_pushforward(n, &cls, preset)?;
                let want_push = cls.scale(&Rat::int_pow(n, 2 * g - 2 * k));
                let failure = if pull != want_pull {
                    Some(("n^*", pull, want_pull))
                } else if push != want_push {
                    Some(("n_*", push, want_push))
                } else {
                    None
                };
                if let Some((op, lhs, rhs)) = failure {
                    return Ok(Outcome::refuted(json!({
                        "law": "pi^* A^k(J)_(0) and H.pi^* A^{k-1}(J)_(0) lie in A^k(P)_(0)",
                        "class": p(&cls),
                        "codim": k,
                        "n": n,
                        "operator": op,
                        "lhs": p(&lhs),
                        "rhs": p(&rhs),
                        "eigenvalue_table": h_eigenvalue_table(ctx, preset)?,
                    })));
                }
            }
        }
    }
    Ok(Outcome::verified_with(json!({ "eigenvalue_table": h_eigenvalue_table(ctx, preset)? })))
}

pub(crate) fn pb_formula(c: &mut Check<'_>) -> Checked {
    let g = c.g;
    for (label, ctx) in c.variants()? {
        let jac = ctx.jacobian();
        let basis = ctx.basis();
        let mut blocks: BTreeMap<usize, Vec<GpbClass>> = BTreeMap::new();
        for x in basis.iter().filter(|x| even_degree(x).is_some()) {
            blocks.entry(even_degree(x).unwrap() / 2).or_default().push(x.clone());
        }
        for k in 0..=g + 1 {
            let dim = blocks.get(&k).map_or(0, Vec::len);
            let expected = Rat::binomial(2 * g, 2 * k) + if k > 0 { Rat::binomial(2 * g, 2 * k - 2) } else { Rat::zero() };
            if Rat::from_int(dim as i64) != expected {
                return Ok(Outcome::refuted(json!({
                    "law": "dim A^k(P) = dim A^k(J) + dim A^{k-1}(J)",
                    "context": label, "k": k, "dim": dim, "expected": r(&expected),
                })));
            }
        }
        // Poincaré duality on P: the pairing A^k x A^{g+1-k} is perfect.
        for k in 0..=g + 1 {
            c.tick()?;
            let empty = Vec::new();
            let rows = blocks.get(&k).unwrap_or(&empty);
            let cols = blocks.get(&(g + 1 - k)).unwrap_or(&empty);
            let mut m = RatMatrix::zeros(rows.len(), cols.len());
            for (i, x) in rows.iter().enumerate() {
                for (jj, y) in cols.iter().enumerate() {
                    m.set(i, jj, ctx.pair(x, y)?);
                }
            }
            let rank = rref(&m).rank;
            if rows.len() != cols.len() || rank != rows.len() {
                return Ok(Outcome::refuted(json!({
                    "law": "the pairing A^k(P) x A^{g+1-k}(P) -> Q is perfect",
                    "context": label, "k": k, "rows": rows.len(), "cols": cols.len(), "rank": rank,
                })));
            }
        }
        let h = ctx.h_class();
        let hh = ctx.gpb_mul(&h, &h)?;
        let want = ctx.h_times(ctx.twist());
        if hh != want {
            return Ok(mismatch("H^2 = pi^*(twist) H", json!(label), p(&hh), p(&want)));
        }
        let top = ctx.integrate(&ctx.h_times(&jac.point()))?;
        if !top.is_one() {
            return Ok(mismatch("integral of H.pi^*pt = 1", json!(label), r(&top), json!("1")));
        }
        for x in jac.basis() {
            let down = ctx.pi_pushforward(&ctx.pi_pullback(&x))?;
            if !down.is_zero() {
                return Ok(mismatch("pi_* pi^* x = 0", json!({ "context": label, "class": j(&x) }), j(&down), json!("0")));
            }
            let down = ctx.pi_pushforward(&ctx.h_times(&x))?;
            if down != x {
                return Ok(mismatch("pi_*(H pi^* x) = x", json!({ "context": label, "class": j(&x) }), j(&down), j(&x)));
            }
        }
        let pairs: Vec<(GpbClass, JacClass)> = if c.exhaustive() {
            basis.iter().flat_map(|xi| jac.basis().into_iter().map(move |x| (xi.clone(), x))).collect()
        } else {
            c.sampled = true;
            (0..c.samples).map(|_| (c.rand_gpb(false), c.rand_jac(false))).collect()
        };
        for (xi, x) in pairs {
            c.tick()?;
            let lhs = ctx.pi_pushforward(&ctx.gpb_mul(&xi, &ctx.pi_pullback(&x))?)?;
            let rhs = ctx.pi_pushforward(&xi)?.wedge(&x)?;
            if lhs != rhs {
                return Ok(mismatch(
                    "pi_*(xi . pi^*x) = pi_*(xi) . x",
                    json!({ "context": label, "xi": p(&xi), "x": j(&x) }),
                    j(&lhs),
                    j(&rhs),
                ));
            }
        }
    }
    Ok(Outcome::verified())
}

pub(crate) fn blowup_divisor_pullpush(c: &mut Check<'_>) -> Checked {
    let g = c.g;
    for (label, ctx) in c.variants()? {
        c.tick()?;
        let jac = ctx.jacobian();
        let sy = ctx.sy_class();
        let lhs = ctx.fm_pullpush(&sy)?;
        let rhs = ctx.p_pullback(&sy)?.try_add(&ctx.q_pullback(&sy)?)?;
        if lhs != rhs {
            return Ok(mismatch("f_* m~^* S_y = p^*S_y + q^*S_y", json!(label), pp(&lhs), pp(&rhs)));
        }
        for d in ExtClass::basis_of_degree(2 * g, 2) {
            let d = jac.class(d)?;
            let lhs = ctx.fm_pullpush(&ctx.pi_pullback(&d))?;
            let rhs = GpbProductClass::from_base(jac.pullback(Projection::Sum, &d)?);
            if lhs != rhs {
                return Ok(mismatch(
                    "f_* m~^* pi^*D = (pi x pi)^* m^*D",
                    json!({ "context": label, "D": j(&d) }),
                    pp(&lhs),
                    pp(&rhs),
                ));
            }
        }
        for _ in 0..c.samples.min(8) {
            let a = c.rand_rat();
            let d = c.rand_jac_of(2);
            let mixed = sy.scale(&a).try_add(&ctx.pi_pullback(&d))?;
            let lhs = ctx.fm_pullpush(&mixed)?;
            let rhs = ctx.fm_pullpush(&sy)?.scale(&a).try_add(&ctx.fm_pullpush(&ctx.pi_pullback(&d))?)?;
            if lhs != rhs {
                return Ok(mismatch("f_* m~^* is linear on divisors", json!({ "context": label, "input": p(&mixed) }), pp(&lhs), pp(&rhs)));
            }
        }
        let zero = ctx.fm_pullpush(&ctx.zero())?;
        if !zero.is_zero() {
            return Ok(mismatch("f_* m~^* 0 = 0", json!(label), pp(&zero), json!("0")));
        }
        let codim_two = ctx.h_times(jac.theta());
        match ctx.fm_pullpush(&codim_two) {
            Err(Error::UnsupportedClass(_)) => {}
            Err(e) => return Err(e.into()),
            Ok(z) => {
                return Ok(mismatch(
                    "classes above divisor level are rejected",
                    p(&codim_two),
                    pp(&z),
                    json!("unsupported-class error"),
                ))
            }
        }
    }
    Ok(Outcome::verified())
}

fn gdeg(x: &GpbClass) -> Option<usize> {
    x.homogeneous_degree()
}

pub(crate) fn pontryagin_compat_p(c: &mut Check<'_>) -> Checked {
    let ctx = c.ctx;
    let jac = c.jac();
    let preset = c.preset();
    for (x, y) in c.gpb_pairs(false) {
        c.tick()?;
        let xy = ctx.ext_pontryagin(&x, &y, preset)?;
        let lhs = ctx.pi_pushforward(&xy)?;
        let rhs = jac.pontryagin(&ctx.pi_pushforward(&x)?, &ctx.pi_pushforward(&y)?)?;
        if lhs != rhs {
            return Ok(mismatch("pi_*(x * y) = pi_* x * pi_* y", json!([p(&x), p(&y)]), j(&lhs), j(&rhs)));
        }
        if let (Some(dx), Some(dy)) = (gdeg(&x), gdeg(&y)) {
            let yx = ctx.ext_pontryagin(&y, &x, preset)?.scale(&Rat::sign_pow(dx * dy));
            if xy != yx {
                return Ok(mismatch("x * y = (-1)^{|x||y|} y * x", json!([p(&x), p(&y)]), p(&xy), p(&yx)));
            }
        }
    }
    for (x, y) in c.jac_pairs(false) {
        c.tick()?;
        let lhs = ctx.ext_pontryagin(&ctx.h_times(&x), &ctx.h_times(&y), preset)?;
        let rhs = ctx.h_times(&jac.pontryagin(&x, &y)?);
        if lhs != rhs {
            return Ok(mismatch("(H x) * (H y) = H (x * y)", json!([j(&x), j(&y)]), p(&lhs), p(&rhs)));
        }
    }
    for [x, y, z] in c.gpb_triples() {
        c.tick()?;
        let lhs = ctx.ext_pontryagin(&ctx.ext_pontryagin(&x, &y, preset)?, &z, preset)?;
        let rhs = ctx.ext_pontryagin(&x, &ctx.ext_pontryagin(&y, &z, preset)?, preset)?;
        if lhs != rhs {
            return Ok(mismatch("(x * y) * z = x * (y * z)", json!([p(&x), p(&y), p(&z)]), p(&lhs), p(&rhs)));
        }
    }
    Ok(Outcome::verified())
}

pub(crate) fn pontryagin_degree_p(c: &mut Check<'_>) -> Checked {
    let ctx = c.ctx;
    let preset = c.preset();
    let g = c.g as i64;
    let mut shifts = BTreeSet::new();
    let mut first: Option<Value> = None;
    for (x, y) in c.gpb_pairs(true) {
        c.tick()?;
        let (Some(dx), Some(dy)) = (even_degree(&x), even_degree(&y)) else { continue };
        let (k, l) = ((dx / 2) as i64, (dy / 2) as i64);
        let prod = ctx.ext_pontryagin(&x, &y, preset)?;
        if prod.is_zero() {
            continue;
        }
        let codim = gdeg(&prod).filter(|d| d % 2 == 0).map(|d| (d / 2) as i64);
        if let Some(m) = codim {
            shifts.insert(m - k - l);
        }
        if codim != Some(k + l - g) && first.is_none() {
            first = Some(json!({
                "lhs": p(&x),
                "rhs": p(&y),
                "codims": [k, l],
                "product": p(&prod),
                "product_codim": codim,
                "expected_codim": k + l - g,
            }));
        }
    }
    match first {
        None => Ok(Outcome::verified()),
        Some(mut w) => {
            w["law"] = json!("A^k(P) * A^l(P) lies in A^{k+l-g}(P)");
            w["observed_codim_shifts"] = json!(shifts);
            Ok(Outcome::refuted(w))
        }
    }
}

pub(crate) fn wtilde_decomposition(c: &mut Check<'_>) -> Checked {
    let g = c.g as i64;
    for (label, ctx) in c.variants()? {
        let jac = ctx.jacobian();
        if !jac.w_class(-1)?.is_zero() {
            return Ok(mismatch("W_{-1} = 0", json!(label), j(&jac.w_class(-1)?), json!("0")));
        }
        for d in 0..=g {
            let upper = jac.w_class(g - d)?;
            let lower = jac.w_class(g - d - 1)?;
            let direct = GpbClass::new(upper.wedge(ctx.shift())? + lower, upper.clone())?;
            let wt = ctx.wtilde(d)?;
            if wt != direct {
                return Ok(mismatch(
                    "W~_{g-d} = pi^*W_{g-d} S_y + pi^*W_{g-d-1}",
                    json!({ "context": label, "d": d }),
                    p(&wt),
                    p(&direct),
                ));
            }
            if gdeg(&wt) != Some(2 * (d as usize + 1)) {
                return Ok(Outcome::refuted(json!({
                    "law": "W~_{g-d} has codimension d + 1",
                    "context": label, "d": d, "class": p(&wt),
                })));
            }
            let down = ctx.pi_pushforward(&wt)?;
            if down != upper {
                return Ok(mismatch("pi_* W~_{g-d} = W_{g-d}", json!({ "context": label, "d": d }), j(&down), j(&upper)));
            }
        }
        let boundary = ctx.gpb_mul(&ctx.pi_pullback(&jac.point()), &ctx.sy_class())?;
        if ctx.wtilde(g)? != boundary {
            return Ok(mismatch("W~_0 = pi^*pt S_y", json!(label), p(&ctx.wtilde(g)?), p(&boundary)));
        }
        for d in [-1, g + 1] {
            if ctx.wtilde(d).is_ok() {
                return Ok(Outcome::refuted(json!({ "law": "W~ index out of range is rejected", "d": d })));
            }
        }
    }
    Ok(Outcome::verified())
}

pub(crate) fn ext_theta_class(c: &mut Check<'_>) -> Checked {
    let g = c.g as i64;
    for (label, ctx) in c.variants()? {
        let jac = ctx.jacobian();
        let wt = ctx.ext_theta()?;
        let rhs = ctx.sy_class().try_add(&ctx.pi_pullback(&jac.w_class(g - 1)?))?;
        if wt != rhs {
            return Ok(mismatch("W~_g = S_y + pi^*W_{g-1}", json!(label), p(&wt), p(&rhs)));
        }
        if wt != ctx.wtilde(0)? || gdeg(&wt) != Some(2) {
            return Ok(Outcome::refuted(json!({
                "law": "W~_g is the divisor W~_{g-0}",
                "context": label, "class": p(&wt),
            })));
        }
        let down = ctx.pi_pushforward(&wt)?;
        if down != jac.one() {
            return Ok(mismatch("pi_* W~_g = 1", json!(label), j(&down), json!("1")));
        }
    }
    Ok(Outcome::verified())
}

pub(crate) fn ext_poincare_class(c: &mut Check<'_>) -> Checked {
    for (label, ctx) in c.variants()? {
        c.tick()?;
        let jac = ctx.jacobian();
        let kernel = ctx.ext_poincare_kernel()?.clone();
        let wt = ctx.ext_theta()?;
        let literal = ctx
            .p_pullback(&wt)?
            .try_add(&ctx.q_pullback(&wt)?)?
            .sub(&ctx.fm_pullpush(&wt)?)?;
        if literal != kernel {
            return Ok(mismatch("l~ = p^*W~_g + q^*W~_g - f_* m~^* W~_g", json!(label), pp(&kernel), pp(&literal)));
        }
        let expected = GpbProductClass::from_base(jac.poincare_class().clone());
        if kernel != expected {
            return Ok(mismatch("l~ = (pi x pi)^* l", json!(label), pp(&kernel), pp(&expected)));
        }
        let exp = ctx.ext_poincare_exp()?;
        let expected = GpbProductClass::from_base(jac.poincare_exp().clone());
        if *exp != expected {
            return Ok(mismatch("e^l~ = (pi x pi)^* e^l", json!(label), pp(exp), pp(&expected)));
        }
    }
    Ok(Outcome::verified())
}

pub(crate) fn ext_fourier_definition(c: &mut Check<'_>) -> Checked {
    for (label, ctx) in c.variants()?.into_iter().take(2) {
        let jac = ctx.jacobian();
        let exp = ctx.ext_poincare_exp()?.clone();
        for xi in ctx.basis() {
            c.tick()?;
            let literal = ctx.q_pushforward(&ctx.product_mul(&ctx.p_pullback(&xi)?, &exp)?)?;
            let fx = ctx.ext_fourier(&xi)?;
            if literal != fx {
                return Ok(mismatch("F~x = q_*(p^*x . e^l~)", json!({ "context": label, "class": p(&xi) }), p(&fx), p(&literal)));
            }
        }
        for x in jac.basis() {
            let down = ctx.ext_fourier(&ctx.pi_pullback(&x))?;
            if !down.is_zero() {
                return Ok(mismatch("F~(pi^*x) = 0", json!({ "context": label, "class": j(&x) }), p(&down), json!("0")));
            }
            let lhs = ctx.ext_fourier(&ctx.h_times(&x))?;
            let rhs = ctx.pi_pullback(&jac.fourier(&x)?);
            if lhs != rhs {
                return Ok(mismatch("F~(H pi^*x) = pi^*(F x)", json!({ "context": label, "class": j(&x) }), p(&lhs), p(&rhs)));
            }
        }
    }
    Ok(Outcome::verified())
}

pub(crate) fn ext_fourier_involution(c: &mut Check<'_>) -> Checked {
    let ctx = c.ctx;
    let preset = c.preset();
    let sign = Rat::sign_pow(c.g);
    for xi in ctx.basis() {
        c.tick()?;
        let lhs = ctx.ext_fourier(&ctx.ext_fourier(&xi)?)?;
        let rhs = ctx.ext_involution(&xi, preset)?.scale(&sign);
        if lhs != rhs {
            return Ok(mismatch("F~(F~(x)) = (-1)^g (-1)^* x", p(&xi), p(&lhs), p(&rhs)));
        }
    }
    Ok(Outcome::verified())
}

pub(crate) fn ext_fourier_exchange(c: &mut Check<'_>) -> Checked {
    let ctx = c.ctx;
    let preset = c.preset();
    let sign = Rat::sign_pow(c.g);
    for (x, y) in c.gpb_pairs(false) {
        c.tick()?;
        let (fx, fy) = (ctx.ext_fourier(&x)?, ctx.ext_fourier(&y)?);
        let lhs = ctx.ext_fourier(&ctx.ext_pontryagin(&x, &y, preset)?)?;
        let rhs = ctx.gpb_mul(&fx, &fy)?;
        if lhs != rhs {
            return Ok(mismatch("F~(x * y) = F~x . F~y", json!([p(&x), p(&y)]), p(&lhs), p(&rhs)));
        }
        let lhs = ctx.ext_fourier(&ctx.gpb_mul(&x, &y)?)?;
        let rhs = ctx.ext_pontryagin(&fx, &fy, preset)?.scale(&sign);
        if lhs != rhs {
            return Ok(mismatch("F~(x . y) = (-1)^g F~x * F~y", json!([p(&x), p(&y)]), p(&lhs), p(&rhs)));
        }
    }
    Ok(Outcome::verified())
}

pub(crate) fn ext_fourier_grading(c: &mut Check<'_>) -> Checked {
    let ctx = c.ctx;
    let preset = c.preset();
    let g = c.g as i64;
    let dim = 2usize << (2 * c.g);
    let mut groups: BTreeMap<(usize, i32), Vec<GpbClass>> = BTreeMap::new();
    let mut outside = 0usize;
    for xi in ctx.basis().into_iter().filter(|x| even_degree(x).is_some()) {
        c.tick()?;
        match eigen_label(ctx, preset, &xi)? {
            Ok(label) => groups.entry(label).or_default().push(xi),
            Err(_) => outside += 1,
        }
    }
    let mut table = Vec::new();
    let mut failure = None;
    for ((k, s), classes) in &groups {
        c.tick()?;
        let images = classes.iter().map(|x| Ok(ctx.ext_fourier(x)?.to_vector())).collect::<crate::Result<Vec<_>>>()?;
        let image = Subspace::spanned_by(dim, &images)?;
        let target_codim = g - *k as i64 + *s as i64;
        let target_classes = usize::try_from(target_codim)
            .ok()
            .and_then(|t| groups.get(&(t, *s)))
            .map(|v| v.iter().map(GpbClass::to_vector).collect::<Vec<_>>())
            .unwrap_or_default();
        let target = Subspace::spanned_by(dim, &target_classes)?;
        let row = json!({
            "p": k, "s": s,
            "source_dim": classes.len(),
            "image_dim": image.dim(),
            "target_codim": target_codim,
            "target_dim": target.dim(),
        });
        if image != target && failure.is_none() {
            failure = Some(row.clone());
        }
        table.push(row);
    }
    match failure {
        None => Ok(Outcome::verified()),
        Some(f) => Ok(Outcome::refuted(json!({
            "law": "F~ A^p(P)_(s) = A^{g-p+s}(P)_(s)",
            "first_failure": f,
            "table": table,
            "classes_outside_eigenspaces": outside,
        }))),
    }
}

pub(crate) fn thm_4_1_generation(c: &mut Check<'_>) -> Checked {
    let ctx = c.ctx;
    let jac = c.jac();
    let preset = c.preset();
    let amb = GpbAmbient(ctx);
    let mut gens = (1..c.g)
        .map(|i| Ok(ctx.pi_pullback(&jac.w_class(i as i64)?)))
        .collect::<crate::Result<Vec<_>>>()?;
    gens.push(ctx.sy_class());
    gens.push(ctx.h_class());
    let full = compute_closure(&amb, &gens, &gpb_ops(ctx, &OpKind::ALL, preset))?;
    c.tick()?;
    let wedge = compute_closure(&amb, &gens, &gpb_ops(ctx, &[OpKind::Wedge], preset))?;
    let cmp = compare_subalgebras(&amb, &full, &wedge)?;
    let table: Vec<Value> = cmp
        .table
        .iter()
        .map(|row| json!({ "degree": row.degree, "closure_dim": row.dim_a, "wedge_dim": row.dim_b }))
        .collect();
    let witness = json!({
        "relation": cmp.relation.to_string(),
        "closure_dim": full.dim(),
        "wedge_dim": wedge.dim(),
        "table": table,
        "in_closure_only": cmp.a_not_in_b.as_ref().map(format_gpb),
        "in_wedge_only": cmp.b_not_in_a.as_ref().map(format_gpb),
    });
    if cmp.relation == crate::closure::Relation::Equal {
        Ok(Outcome::verified_with(witness))
    } else {
        Ok(Outcome::refuted(witness))
    }
}
