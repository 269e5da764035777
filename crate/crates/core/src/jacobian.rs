//! Cohomology of the Jacobian of a genus-`g` curve and of `J × J`.
//!
//! `H^*(J)` is the exterior algebra on `e1, f1, …, eg, fg` (generator `2i` is
//! `e_{i+1}`, generator `2i+1` is `f_{i+1}`), with `θ = Σ e_i ∧ f_i` and
//! orientation `∫ e1 f1 … eg fg = 1`. On `J × J` the first copy's
//! generators come first, then the second copy's (written with a prime).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exterior::{wedge_sign, ExtClass};
use crate::linalg::{solve_vandermonde, Rat, RatVector};

/// Largest genus whose `J × J` model fits the generator budget.
pub const MAX_GENUS: usize = 8;

macro_rules! class_newtype {
    ($name:ident, $factor:expr) => {
        #[derive(Clone, PartialEq, Eq, Hash)]
        pub struct $name {
            genus: usize,
            value: ExtClass,
        }

        impl $name {
            pub fn from_ext(genus: usize, value: ExtClass) -> Result<Self> {
                let expected = $factor * 2 * genus;
                if value.generator_count() != expected {
                    return Err(Error::Shape(format!(
                        "{} generators where genus {genus} needs {expected}",
                        value.generator_count()
                    )));
                }
                Ok($name { genus, value })
            }

            pub fn zero(genus: usize) -> Self {
                $name {
                    genus,
                    value: ExtClass::zero($factor * 2 * genus),
                }
            }

            pub fn one(genus: usize) -> Self {
                $name {
                    genus,
                    value: ExtClass::one($factor * 2 * genus),
                }
            }

            pub fn genus(&self) -> usize {
                self.genus
            }

            pub fn value(&self) -> &ExtClass {
                &self.value
            }

            pub fn into_ext(self) -> ExtClass {
                self.value
            }

            pub fn is_zero(&self) -> bool {
                self.value.is_zero()
            }

            pub fn scale(&self, c: &Rat) -> Self {
                $name {
                    genus: self.genus,
                    value: self.value.scale(c),
                }
            }

            fn same(&self, other: &Self) -> Result<()> {
                if self.genus != other.genus {
                    return Err(Error::ContextMismatch(format!(
                        "genus {} against genus {}",
                        self.genus, other.genus
                    )));
                }
                Ok(())
            }

            pub fn try_add(&self, other: &Self) -> Result<Self> {
                self.same(other)?;
                Ok($name {
                    genus: self.genus,
                    value: self.value.try_add(&other.value)?,
                })
            }

            pub fn wedge(&self, other: &Self) -> Result<Self> {
                self.same(other)?;
                Ok($name {
                    genus: self.genus,
                    value: self.value.wedge(&other.value)?,
                })
            }

            pub fn pow(&self, k: usize) -> Self {
                $name {
                    genus: self.genus,
                    value: self.value.pow(k),
                }
            }

            pub fn degree_part(&self, d: usize) -> Self {
                $name {
                    genus: self.genus,
                    value: self.value.degree_part(d),
                }
            }

            pub fn integrate_top(&self) -> Rat {
                self.value.integrate_top()
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}(g={}: {:?})", stringify!($name), self.genus, self.value)
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                self.try_add(rhs).expect("classes from different contexts")
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                &self + &rhs
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                self + &-rhs
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                &self - &rhs
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                self.scale(&-Rat::one())
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                -&self
            }
        }

        /// Intersection (wedge) product.
        impl Mul for &$name {
            type Output = $name;
            fn mul(self, rhs: &$name) -> $name {
                self.wedge(rhs).expect("classes from different contexts")
            }
        }

        impl Mul for $name {
            type Output = $name;
            fn mul(self, rhs: $name) -> $name {
                &self * &rhs
            }
        }
    };
}

class_newtype!(JacClass, 1);
class_newtype!(ProductClass, 2);

/// Which of the three structure maps `J × J → J` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Projection {
    First,
    Second,
    Sum,
}

/// One eigencomponent of the multiplication operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeauvilleComponent {
    /// Exterior degree of the component.
    pub degree: usize,
    /// Codimension `degree / 2` when the degree is even.
    pub codim: Option<usize>,
    /// `n^* c = n^exponent · c`.
    pub exponent: i32,
    pub component: JacClass,
}

impl BeauvilleComponent {
    /// The weight `s` in `n^* = n^{2p - s}`; zero throughout this realization.
    pub fn weight(&self) -> Option<i32> {
        self.codim.map(|p| 2 * p as i32 - self.exponent)
    }
}

/// The Jacobian model of a fixed genus.
pub struct Jacobian {
    genus: usize,
    theta: JacClass,
    poincare: OnceLock<ProductClass>,
    poincare_exp: OnceLock<ProductClass>,
}

impl fmt::Debug for Jacobian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jacobian").field("genus", &self.genus).finish()
    }
}

impl Jacobian {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 || genus > MAX_GENUS {
            return Err(Error::Range(format!(
                "genus must be in 1..={MAX_GENUS}, got {genus}"
            )));
        }
        let n = 2 * genus;
        let mut theta = ExtClass::zero(n);
        for i in 0..genus {
            theta.add_term((1 << (2 * i)) | (1 << (2 * i + 1)), &Rat::one());
        }
        Ok(Jacobian {
            genus,
            theta: JacClass {
                genus,
                value: theta,
            },
            poincare: OnceLock::new(),
            poincare_exp: OnceLock::new(),
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Number of degree-one generators of `H^*(J)`.
    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    /// Real dimension of `J`, the degree of the top class.
    pub fn top_degree(&self) -> usize {
        2 * self.genus
    }

    pub fn theta(&self) -> &JacClass {
        &self.theta
    }

    pub fn one(&self) -> JacClass {
        JacClass::one(self.genus)
    }

    pub fn zero(&self) -> JacClass {
        JacClass::zero(self.genus)
    }

    pub fn scalar(&self, c: Rat) -> JacClass {
        self.one().scale(&c)
    }

    /// The point class `e1 f1 … eg fg = θ^g / g!`.
    pub fn point(&self) -> JacClass {
        JacClass {
            genus: self.genus,
            value: ExtClass::top(self.rank()),
        }
    }

    /// Generator `e_i`, `1 <= i <= g`.
    pub fn e(&self, i: usize) -> Result<JacClass> {
        self.gen_checked(i, 0)
    }

    /// Generator `f_i`, `1 <= i <= g`.
    pub fn f(&self, i: usize) -> Result<JacClass> {
        self.gen_checked(i, 1)
    }

    fn gen_checked(&self, i: usize, offset: usize) -> Result<JacClass> {
        if i == 0 || i > self.genus {
            return Err(Error::Range(format!(
                "generator index {i} outside 1..={}",
                self.genus
            )));
        }
        Ok(JacClass {
            genus: self.genus,
            value: ExtClass::generator(self.rank(), 2 * (i - 1) + offset),
        })
    }

    pub fn class(&self, value: ExtClass) -> Result<JacClass> {
        JacClass::from_ext(self.genus, value)
    }

    pub fn monomial(&self, mask: u64) -> JacClass {
        JacClass {
            genus: self.genus,
            value: ExtClass::monomial(self.rank(), mask, Rat::one()),
        }
    }

    /// All `2^{2g}` monomials.
    pub fn basis(&self) -> Vec<JacClass> {
        (0..1u64 << self.rank()).map(|m| self.monomial(m)).collect()
    }

    /// Monomials of even degree: the classes carrying a codimension.
    pub fn even_basis(&self) -> Vec<JacClass> {
        (0..1u64 << self.rank())
            .filter(|m| m.count_ones() % 2 == 0)
            .map(|m| self.monomial(m))
            .collect()
    }

    fn check(&self, x: &JacClass) -> Result<()> {
        if x.genus != self.genus {
            return Err(Error::ContextMismatch(format!(
                "class of genus {} in a genus-{} context",
                x.genus, self.genus
            )));
        }
        Ok(())
    }

    fn check_product(&self, z: &ProductClass) -> Result<()> {
        if z.genus != self.genus {
            return Err(Error::ContextMismatch(format!(
                "product class of genus {} in a genus-{} context",
                z.genus, self.genus
            )));
        }
        Ok(())
    }

    /// Brill–Noether class `W_i = θ^{g-i} / (g-i)!`; `W_{-1} = 0`.
    pub fn w_class(&self, i: i64) -> Result<JacClass> {
        let g = self.genus as i64;
        if i == -1 {
            return Ok(self.zero());
        }
        if !(0..=g).contains(&i) {
            return Err(Error::Range(format!("W_{i} outside -1..={g}")));
        }
        let k = (g - i) as usize;
        Ok(self.theta.pow(k).scale(&Rat::factorial(k).recip()))
    }

    /// Pairing `∫ x ∧ y`.
    pub fn pair(&self, x: &JacClass, y: &JacClass) -> Result<Rat> {
        self.check(x)?;
        self.check(y)?;
        Ok(x.wedge(y)?.integrate_top())
    }

    fn images(&self, proj: Projection) -> Vec<ExtClass> {
        let n = self.rank();
        (0..n)
            .map(|i| match proj {
                Projection::First => ExtClass::generator(2 * n, i),
                Projection::Second => ExtClass::generator(2 * n, n + i),
                Projection::Sum => {
                    &ExtClass::generator(2 * n, i) + &ExtClass::generator(2 * n, n + i)
                }
            })
            .collect()
    }

    /// `p^*`, `q^*` or `m^*`.
    pub fn pullback(&self, proj: Projection, x: &JacClass) -> Result<ProductClass> {
        self.check(x)?;
        let value = x.value.induced_map(&self.images(proj))?;
        Ok(ProductClass {
            genus: self.genus,
            value,
        })
    }

    /// `p^*x ∧ q^*y`.
    pub fn external(&self, x: &JacClass, y: &JacClass) -> Result<ProductClass> {
        self.check(x)?;
        self.check(y)?;
        Ok(ProductClass {
            genus: self.genus,
            value: x.value.boxed(&y.value),
        })
    }

    /// `p_*`, `q_*` or `m_*`.
    ///
    /// `m = p ∘ σ` with `σ(u, v) = (u + v, v)`, so `m_* = p_* ∘ (σ^{-1})^*`
    /// where `σ^{-1}` acts on degree one by `x ↦ x - x'`, `x' ↦ x'`.
    pub fn pushforward(&self, proj: Projection, z: &ProductClass) -> Result<JacClass> {
        self.check_product(z)?;
        let n = self.rank();
        let value = match proj {
            Projection::First => z.value.fiber_integrate_last(n)?,
            Projection::Second => z.value.fiber_integrate_first(n)?,
            Projection::Sum => {
                let images: Vec<ExtClass> = (0..2 * n)
                    .map(|i| {
                        if i < n {
                            &ExtClass::generator(2 * n, i) - &ExtClass::generator(2 * n, n + i)
                        } else {
                            ExtClass::generator(2 * n, i)
                        }
                    })
                    .collect();
                z.value.induced_map(&images)?.fiber_integrate_last(n)?
            }
        };
        Ok(JacClass {
            genus: self.genus,
            value,
        })
    }

    /// `ℓ = p^*θ + q^*θ - m^*θ`.
    pub fn poincare_class(&self) -> &ProductClass {
        self.poincare.get_or_init(|| {
            let p = self.pullback(Projection::First, &self.theta).expect("own class");
            let q = self.pullback(Projection::Second, &self.theta).expect("own class");
            let m = self.pullback(Projection::Sum, &self.theta).expect("own class");
            &(&p + &q) - &m
        })
    }

    /// `e^ℓ`, a finite sum since `ℓ` is nilpotent.
    pub fn poincare_exp(&self) -> &ProductClass {
        self.poincare_exp.get_or_init(|| ProductClass {
            genus: self.genus,
            value: self
                .poincare_class()
                .value
                .exp()
                .expect("ℓ has no constant term"),
        })
    }

    /// Fourier transform `F x = q_*(p^*x · e^ℓ)`.
    pub fn fourier(&self, x: &JacClass) -> Result<JacClass> {
        let px = self.pullback(Projection::First, x)?;
        self.pushforward(Projection::Second, &px.wedge(self.poincare_exp())?)
    }

    /// Pontryagin product `x * y = m_*(p^*x · q^*y)`.
    pub fn pontryagin(&self, x: &JacClass, y: &JacClass) -> Result<JacClass> {
        self.pushforward(Projection::Sum, &self.external(x, y)?)
    }

    /// `n^*`: the algebra map induced by `v ↦ n v` on degree one.
    pub fn mult_pullback(&self, n: i64, x: &JacClass) -> Result<JacClass> {
        self.check(x)?;
        let mut out = ExtClass::zero(self.rank());
        for (mask, c) in x.value.terms() {
            out.add_term(mask, &(c * Rat::int_pow(n, mask.count_ones() as i32)));
        }
        Ok(JacClass {
            genus: self.genus,
            value: out,
        })
    }

    /// `(-1)^*`.
    pub fn involution(&self, x: &JacClass) -> Result<JacClass> {
        self.mult_pullback(-1, x)
    }

    /// `n_*`, the adjoint of `n^*` under the Poincaré pairing.
    pub fn mult_pushforward(&self, n: i64, x: &JacClass) -> Result<JacClass> {
        self.adjoint(x, |y| self.mult_pullback(n, y))
    }

    /// The class `a` with `pair(a, y) = pair(x, f(y))` for every `y`.
    ///
    /// The pairing matrix in the monomial basis is a signed permutation:
    /// monomial `T` pairs only with its complement `C`, with sign `∫ T ∧ C`.
    pub fn adjoint(
        &self,
        x: &JacClass,
        f: impl Fn(&JacClass) -> Result<JacClass>,
    ) -> Result<JacClass> {
        self.check(x)?;
        let full = (1u64 << self.rank()) - 1;
        let mut out = ExtClass::zero(self.rank());
        for t in 0..=full {
            let c = full ^ t;
            let neg = wedge_sign(t, c).expect("complements are disjoint");
            let value = self.pair(x, &f(&self.monomial(c))?)?;
            if value.is_zero() {
                continue;
            }
            out.add_term(t, &if neg { -value } else { value });
        }
        Ok(JacClass {
            genus: self.genus,
            value: out,
        })
    }

    /// Samples used to separate eigencomponents: `2, 3, …, 2g + 2`.
    pub fn vandermonde_samples(&self) -> Vec<i64> {
        (2..=(2 * self.genus as i64 + 2)).collect()
    }

    /// Splits `x` into `n^*`-eigencomponents by solving a Vandermonde system
    /// over the sampled `n`.
    pub fn beauville_decompose(&self, x: &JacClass) -> Result<Vec<BeauvilleComponent>> {
        self.check(x)?;
        let samples = self.vandermonde_samples();
        let exponents: Vec<i32> = (0..=self.top_degree() as i32).collect();
        let values = samples
            .iter()
            .map(|&n| Ok(self.mult_pullback(n, x)?.value.to_vector()))
            .collect::<Result<Vec<RatVector>>>()?;
        let comps = solve_vandermonde(&samples, &exponents, &values)?;
        let mut out = Vec::new();
        for (e, v) in exponents.iter().zip(comps) {
            if v.is_zero() {
                continue;
            }
            let component = self.class(ExtClass::from_vector(self.rank(), &v)?)?;
            let degree = component
                .value
                .homogeneous_degree()
                .ok_or_else(|| Error::DegenerateBasis(format!(
                    "eigencomponent for exponent {e} is not homogeneous"
                )))?;
            out.push(BeauvilleComponent {
                degree,
                codim: (degree % 2 == 0).then_some(degree / 2),
                exponent: *e,
                component,
            });
        }
        Ok(out)
    }

    /// Sets every generator of one copy of `J` to zero (restriction to `{0} × J`
    /// for `Projection::First`, to `J × {0}` for `Projection::Second`).
    pub fn restrict_to_slice(&self, killed: Projection, z: &ProductClass) -> Result<ProductClass> {
        self.check_product(z)?;
        let n = self.rank();
        let images: Vec<ExtClass> = (0..2 * n)
            .map(|i| {
                let dead = match killed {
                    Projection::First => i < n,
                    Projection::Second => i >= n,
                    Projection::Sum => false,
                };
                if dead {
                    ExtClass::zero(2 * n)
                } else {
                    ExtClass::generator(2 * n, i)
                }
            })
            .collect();
        Ok(ProductClass {
            genus: self.genus,
            value: z.value.induced_map(&images)?,
        })
    }

    /// Pullback along the swap `(u, v) ↦ (v, u)`.
    pub fn swap(&self, z: &ProductClass) -> Result<ProductClass> {
        self.check_product(z)?;
        let n = self.rank();
        let images: Vec<ExtClass> = (0..2 * n)
            .map(|i| ExtClass::generator(2 * n, (i + n) % (2 * n)))
            .collect();
        Ok(ProductClass {
            genus: self.genus,
            value: z.value.induced_map(&images)?,
        })
    }
}
