//! Smallest subspaces closed under linear and bilinear operators.
//!
//! A closure starts from the unit and the generators and repeatedly applies
//! every declared operator to every basis tuple that involves at least one
//! vector added in the previous round, until a round adds nothing. Classes
//! are flattened to exact coordinate vectors by an [`Ambient`]; the graded
//! report is derived afterwards from the coordinate degrees.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gpb::{GpbClass, GpbContext, Preset};
use crate::jacobian::{JacClass, Jacobian};
use crate::linalg::{RatVector, Subspace};

/// A finite-dimensional graded model whose classes can be vectorized.
pub trait Ambient {
    type Class: Clone;

    fn dimension(&self) -> usize;
    fn to_vector(&self, x: &Self::Class) -> RatVector;
    fn from_vector(&self, v: &RatVector) -> Result<Self::Class>;
    fn unit(&self) -> Self::Class;
    /// Real degree of coordinate `index`.
    fn degree_of(&self, index: usize) -> usize;
    /// Identifies the model; closures from different models do not compare.
    fn label(&self) -> String;
}

pub type UnaryFn<'a, C> = Box<dyn Fn(&C) -> Result<C> + Send + Sync + 'a>;
pub type BinaryFn<'a, C> = Box<dyn Fn(&C, &C) -> Result<C> + Send + Sync + 'a>;

pub enum Evaluator<'a, C> {
    Unary(UnaryFn<'a, C>),
    Binary(BinaryFn<'a, C>),
}

/// A named linear (arity 1) or bilinear (arity 2) operator.
pub struct OperatorSpec<'a, C> {
    pub name: String,
    pub evaluator: Evaluator<'a, C>,
    /// Whether the operator participates in the closure iteration.
    pub generating: bool,
}

impl<C> fmt::Debug for OperatorSpec<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorSpec")
            .field("name", &self.name)
            .field("arity", &self.arity())
            .field("generating", &self.generating)
            .finish()
    }
}

impl<'a, C> OperatorSpec<'a, C> {
    pub fn unary(name: impl Into<String>, f: impl Fn(&C) -> Result<C> + Send + Sync + 'a) -> Self {
        OperatorSpec {
            name: name.into(),
            evaluator: Evaluator::Unary(Box::new(f)),
            generating: true,
        }
    }

    pub fn binary(
        name: impl Into<String>,
        f: impl Fn(&C, &C) -> Result<C> + Send + Sync + 'a,
    ) -> Self {
        OperatorSpec {
            name: name.into(),
            evaluator: Evaluator::Binary(Box::new(f)),
            generating: true,
        }
    }

    pub fn arity(&self) -> usize {
        match self.evaluator {
            Evaluator::Unary(_) => 1,
            Evaluator::Binary(_) => 2,
        }
    }
}

/// One row of a graded dimension table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeDims {
    pub degree: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationCertificate {
    /// Operator applications re-checked against the final span.
    pub checks: usize,
    pub saturated: bool,
}

#[derive(Clone, Debug)]
pub struct ClosureResult<C> {
    pub ambient_label: String,
    pub span: Subspace,
    /// Spanning vectors in the order they were accepted.
    pub accepted: Vec<RatVector>,
    /// Basis of each degree-`d` projection, keyed by real degree.
    pub graded_basis: BTreeMap<usize, Vec<C>>,
    /// True when the span is the direct sum of its degree projections.
    pub graded: bool,
    pub iterations: usize,
    pub certificate: SaturationCertificate,
}

impl<C> ClosureResult<C> {
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Dimension of each degree projection (only degrees that occur).
    pub fn dims_by_degree(&self) -> Vec<DegreeDims> {
        self.graded_basis
            .iter()
            .map(|(d, b)| DegreeDims {
                degree: *d,
                dim: b.len(),
            })
            .collect()
    }

    /// Dimension in codimension `p` (real degree `2p`).
    pub fn dim_in_codim(&self, p: usize) -> usize {
        self.graded_basis.get(&(2 * p)).map_or(0, Vec::len)
    }
}

fn apply_all<A: Ambient>(
    ambient: &A,
    ops: &[OperatorSpec<'_, A::Class>],
    classes: &[A::Class],
    frontier: usize,
    mut sink: impl FnMut(RatVector) -> Result<()>,
) -> Result<()> {
    let current = classes.len();
    for op in ops.iter().filter(|o| o.generating) {
        match &op.evaluator {
            Evaluator::Unary(f) => {
                for x in &classes[frontier..current] {
                    let y = f(x).map_err(|e| e.in_op(&op.name))?;
                    sink(ambient.to_vector(&y))?;
                }
            }
            Evaluator::Binary(f) => {
                for i in 0..current {
                    for j in 0..current {
                        if i.max(j) < frontier {
                            continue;
                        }
                        let y = f(&classes[i], &classes[j]).map_err(|e| e.in_op(&op.name))?;
                        sink(ambient.to_vector(&y))?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Fixed-point closure of `generators` (and the unit) under `ops`.
pub fn compute_closure<A: Ambient>(
    ambient: &A,
    generators: &[A::Class],
    ops: &[OperatorSpec<'_, A::Class>],
) -> Result<ClosureResult<A::Class>> {
    let dim = ambient.dimension();
    let mut span = Subspace::new(dim);
    let mut accepted: Vec<RatVector> = Vec::new();
    let mut classes: Vec<A::Class> = Vec::new();

    let seed = std::iter::once(ambient.unit()).chain(generators.iter().cloned());
    for x in seed {
        let v = ambient.to_vector(&x);
        if span.insert(&v)? {
            accepted.push(v);
            classes.push(x);
        }
    }

    let mut frontier = 0;
    let mut iterations = 0;
    loop {
        iterations += 1;
        let before = classes.len();
        let mut fresh: Vec<RatVector> = Vec::new();
        apply_all(ambient, ops, &classes, frontier, |v| {
            if span.insert(&v)? {
                fresh.push(v);
            }
            Ok(())
        })?;
        frontier = before;
        if fresh.is_empty() {
            break;
        }
        for v in fresh {
            classes.push(ambient.from_vector(&v)?);
            accepted.push(v);
        }
    }

    let certificate = certify(ambient, ops, &span, &classes)?;
    let (graded_basis, graded) = graded_report(ambient, &span)?;
    Ok(ClosureResult {
        ambient_label: ambient.label(),
        span,
        accepted,
        graded_basis,
        graded,
        iterations,
        certificate,
    })
}

fn certify<A: Ambient>(
    ambient: &A,
    ops: &[OperatorSpec<'_, A::Class>],
    span: &Subspace,
    classes: &[A::Class],
) -> Result<SaturationCertificate> {
    let mut checks = 0;
    let mut saturated = true;
    apply_all(ambient, ops, classes, 0, |v| {
        checks += 1;
        if !span.contains(&v)? {
            saturated = false;
        }
        Ok(())
    })?;
    Ok(SaturationCertificate { checks, saturated })
}

/// Re-checks from scratch that every operator maps the span of `result` into itself.
pub fn verify_saturation<A: Ambient>(
    ambient: &A,
    ops: &[OperatorSpec<'_, A::Class>],
    result: &ClosureResult<A::Class>,
) -> Result<bool> {
    let classes = result
        .span
        .basis()
        .map(|v| ambient.from_vector(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(certify(ambient, ops, &result.span, &classes)?.saturated)
}

fn graded_report<A: Ambient>(
    ambient: &A,
    span: &Subspace,
) -> Result<(BTreeMap<usize, Vec<A::Class>>, bool)> {
    let mut pieces: BTreeMap<usize, Subspace> = BTreeMap::new();
    for v in span.basis() {
        let mut split: BTreeMap<usize, RatVector> = BTreeMap::new();
        for (i, c) in v.iter() {
            split
                .entry(ambient.degree_of(i))
                .or_insert_with(|| RatVector::zeros(v.len()))
                .add_at(i, c);
        }
        for (d, part) in split {
            pieces
                .entry(d)
                .or_insert_with(|| Subspace::new(v.len()))
                .insert(&part)?;
        }
    }
    let total: usize = pieces.values().map(Subspace::dim).sum();
    let graded = total == span.dim();
    let mut out = BTreeMap::new();
    for (d, s) in pieces {
        let basis = s
            .basis()
            .map(|v| ambient.from_vector(v))
            .collect::<Result<Vec<_>>>()?;
        out.insert(d, basis);
    }
    Ok((out, graded))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// A is a proper subspace of B.
    AInB,
    /// B is a proper subspace of A.
    BInA,
    Incomparable,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equal => "equal",
            Relation::AInB => "A⊂B",
            Relation::BInA => "B⊂A",
            Relation::Incomparable => "incomparable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: usize,
    pub dim_a: usize,
    pub dim_b: usize,
}

#[derive(Clone, Debug)]
pub struct Comparison<C> {
    pub relation: Relation,
    pub table: Vec<DegreeComparison>,
    /// A basis vector of A outside B, if any.
    pub a_not_in_b: Option<C>,
    /// A basis vector of B outside A, if any.
    pub b_not_in_a: Option<C>,
}

pub fn compare_subalgebras<A: Ambient>(
    ambient: &A,
    a: &ClosureResult<A::Class>,
    b: &ClosureResult<A::Class>,
) -> Result<Comparison<A::Class>> {
    if a.ambient_label != b.ambient_label || a.ambient_label != ambient.label() {
        return Err(Error::ContextMismatch(format!(
            "closures over {} and {}",
            a.ambient_label, b.ambient_label
        )));
    }
    let outside = |x: &ClosureResult<A::Class>, y: &ClosureResult<A::Class>| -> Result<Option<A::Class>> {
        for v in x.span.basis() {
            if !y.span.contains(v)? {
                return Ok(Some(ambient.from_vector(v)?));
            }
        }
        Ok(None)
    };
    let a_not_in_b = outside(a, b)?;
    let b_not_in_a = outside(b, a)?;
    let relation = match (a_not_in_b.is_some(), b_not_in_a.is_some()) {
        (false, false) => Relation::Equal,
        (false, true) => Relation::AInB,
        (true, false) => Relation::BInA,
        (true, true) => Relation::Incomparable,
    };
    let mut degrees: Vec<usize> = a
        .graded_basis
        .keys()
        .chain(b.graded_basis.keys())
        .copied()
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    let table = degrees
        .into_iter()
        .map(|d| DegreeComparison {
            degree: d,
            dim_a: a.graded_basis.get(&d).map_or(0, Vec::len),
            dim_b: b.graded_basis.get(&d).map_or(0, Vec::len),
        })
        .collect();
    Ok(Comparison {
        relation,
        table,
        a_not_in_b,
        b_not_in_a,
    })
}

/// `H^*(J)` as a closure ambient.
pub struct JacAmbient<'a>(pub &'a Jacobian);

impl Ambient for JacAmbient<'_> {
    type Class = JacClass;

    fn dimension(&self) -> usize {
        1 << self.0.rank()
    }

    fn to_vector(&self, x: &JacClass) -> RatVector {
        x.value().to_vector()
    }

    fn from_vector(&self, v: &RatVector) -> Result<JacClass> {
        self.0
            .class(crate::exterior::ExtClass::from_vector(self.0.rank(), v)?)
    }

    fn unit(&self) -> JacClass {
        self.0.one()
    }

    fn degree_of(&self, index: usize) -> usize {
        index.count_ones() as usize
    }

    fn label(&self) -> String {
        format!("J(g={})", self.0.genus())
    }
}

/// `H^*(P)` as a closure ambient.
pub struct GpbAmbient<'a>(pub &'a GpbContext);

impl Ambient for GpbAmbient<'_> {
    type Class = GpbClass;

    fn dimension(&self) -> usize {
        2 << (2 * self.0.genus())
    }

    fn to_vector(&self, x: &GpbClass) -> RatVector {
        x.to_vector()
    }

    fn from_vector(&self, v: &RatVector) -> Result<GpbClass> {
        GpbClass::from_vector(self.0.genus(), v)
    }

    fn unit(&self) -> GpbClass {
        self.0.one()
    }

    fn degree_of(&self, index: usize) -> usize {
        let half = 1usize << (2 * self.0.genus());
        if index < half {
            index.count_ones() as usize
        } else {
            (index - half).count_ones() as usize + 2
        }
    }

    fn label(&self) -> String {
        format!("P(g={})", self.0.genus())
    }
}

/// Operator families available to closures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    Wedge,
    Pontryagin,
    Fourier,
    MultPullback,
    MultPushforward,
}

impl OpKind {
    pub const ALL: [OpKind; 5] = [
        OpKind::Wedge,
        OpKind::Pontryagin,
        OpKind::Fourier,
        OpKind::MultPullback,
        OpKind::MultPushforward,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OpKind::Wedge => "wedge",
            OpKind::Pontryagin => "pont",
            OpKind::Fourier => "fourier",
            OpKind::MultPullback => "nstar",
            OpKind::MultPushforward => "nlow",
        }
    }

    /// Parses a comma-separated list; `all` selects every family.
    pub fn parse_list(s: &str) -> Result<Vec<OpKind>> {
        let mut out = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok.to_ascii_lowercase().as_str() {
                "all" => out.extend(OpKind::ALL),
                "wedge" | "cup" | "mul" => out.push(OpKind::Wedge),
                "pont" | "pontryagin" => out.push(OpKind::Pontryagin),
                "f" | "fourier" => out.push(OpKind::Fourier),
                "nstar" => out.push(OpKind::MultPullback),
                "nlow" => out.push(OpKind::MultPushforward),
                other => {
                    return Err(Error::Parse {
                        pos: 0,
                        message: format!("unknown operator {other:?}"),
                    })
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Multipliers used for the `n^*`/`n_*` families. `-1` separates parity and
/// `2`, `3` separate degrees, so every eigencomponent is reachable.
pub const CLOSURE_MULTIPLIERS: [i64; 3] = [-1, 2, 3];

pub fn jacobian_ops<'a>(jac: &'a Jacobian, kinds: &[OpKind]) -> Vec<OperatorSpec<'a, JacClass>> {
    let mut ops = Vec::new();
    for kind in kinds {
        match kind {
            OpKind::Wedge => ops.push(OperatorSpec::binary("wedge", |x: &JacClass, y: &JacClass| x.wedge(y))),
            OpKind::Pontryagin => ops.push(OperatorSpec::binary("pont", move |x, y| jac.pontryagin(x, y))),
            OpKind::Fourier => ops.push(OperatorSpec::unary("fourier", move |x| jac.fourier(x))),
            OpKind::MultPullback => {
                for n in CLOSURE_MULTIPLIERS {
                    ops.push(OperatorSpec::unary(format!("nstar({n})"), move |x| jac.mult_pullback(n, x)));
                }
            }
            OpKind::MultPushforward => {
                for n in CLOSURE_MULTIPLIERS {
                    ops.push(OperatorSpec::unary(format!("nlow({n})"), move |x| jac.mult_pushforward(n, x)));
                }
            }
        }
    }
    ops
}

pub fn gpb_ops<'a>(
    ctx: &'a GpbContext,
    kinds: &[OpKind],
    preset: Preset,
) -> Vec<OperatorSpec<'a, GpbClass>> {
    let mut ops = Vec::new();
    for kind in kinds {
        match kind {
            OpKind::Wedge => ops.push(OperatorSpec::binary("wedge", move |x, y| ctx.gpb_mul(x, y))),
            OpKind::Pontryagin => ops.push(OperatorSpec::binary(format!("pont[{preset}]"), move |x, y| {
                ctx.ext_pontryagin(x, y, preset)
            })),
            OpKind::Fourier => ops.push(OperatorSpec::unary("fourier", move |x| ctx.ext_fourier(x))),
            OpKind::MultPullback => {
                for n in CLOSURE_MULTIPLIERS {
                    ops.push(OperatorSpec::unary(format!("nstar[{preset}]({n})"), move |x| {
                        ctx.ext_mult_pullback(n, x, preset)
                    }));
                }
            }
            OpKind::MultPushforward => {
                for n in CLOSURE_MULTIPLIERS {
                    ops.push(OperatorSpec::unary(format!("nlow[{preset}]({n})"), move |x| {
                        ctx.ext_mult_pushforward(n, x, preset)
                    }));
                }
            }
        }
    }
    ops
}
