//! The `P¹`-bundle `π: P → J` of generalized parabolic line bundles.
//!
//! By the projective bundle formula every class on `P` is uniquely
//! `π^*b + H·π^*h` with `H = c1(O_P(1))`, subject to `H² = π^*a · H` for a
//! configurable codimension-one class `a` (zero by default). The sections
//! are `S_y = H + π^*s` and `S_z = H - π^*(a + s)` for a configurable
//! shift `s` (zero by default, so `S_y = S_z = H`).
//!
//! Classes on `P × P` are spanned over `H^*(J × J)` by `1, H₁, H₂, H₁H₂`.
//!
//! Two presets govern the operators whose extension to `P` is not forced by
//! the decomposition alone:
//!
//! * [`Preset::Geometric`] follows the fibrewise map `a ↦ a^n` on `P¹` and
//!   the resolution of `m: P × P ⇢ P` obtained by blowing up `S_y × S_z`
//!   and `S_z × S_y`.
//! * [`Preset::Paper`] reads the multiplication operators off the weight
//!   laws `A^k(P)_{(s)} = A^k(J)_{(s)} ⊕ H·A^{k-1}(J)_{(s)}` and takes the
//!   Pontryagin product componentwise through `m_*` on `J`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobian::{JacClass, Jacobian, ProductClass, Projection};
use crate::linalg::{Rat, RatVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Geometric,
    Paper,
}

impl Preset {
    pub const ALL: [Preset; 2] = [Preset::Geometric, Preset::Paper];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Geometric => "geometric",
            Preset::Paper => "paper",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "geometric" => Ok(Preset::Geometric),
            "paper" => Ok(Preset::Paper),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }
}

/// A class `π^*base + H·π^*hpart` on `P`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GpbClass {
    pub base: JacClass,
    pub hpart: JacClass,
}

impl fmt::Debug for GpbClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GpbClass({:?} + H·{:?})", self.base.value(), self.hpart.value())
    }
}

impl GpbClass {
    pub fn new(base: JacClass, hpart: JacClass) -> Result<Self> {
        if base.genus() != hpart.genus() {
            return Err(Error::ContextMismatch("base and H-part genus differ".into()));
        }
        Ok(GpbClass { base, hpart })
    }

    pub fn zero(genus: usize) -> Self {
        GpbClass {
            base: JacClass::zero(genus),
            hpart: JacClass::zero(genus),
        }
    }

    pub fn genus(&self) -> usize {
        self.base.genus()
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.hpart.is_zero()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        GpbClass {
            base: self.base.scale(c),
            hpart: self.hpart.scale(c),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(GpbClass {
            base: self.base.try_add(&other.base)?,
            hpart: self.hpart.try_add(&other.hpart)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-Rat::one()))
    }

    /// Part of real degree `d` on `P` (`H` has degree 2).
    pub fn degree_part(&self, d: usize) -> Self {
        GpbClass {
            base: self.base.degree_part(d),
            hpart: if d >= 2 {
                self.hpart.degree_part(d - 2)
            } else {
                JacClass::zero(self.genus())
            },
        }
    }

    /// Real degrees present on `P`, increasing.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ds = self.base.value().degrees();
        ds.extend(self.hpart.value().degrees().into_iter().map(|d| d + 2));
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Coordinates `[base | hpart]`, each indexed by monomial mask.
    pub fn to_vector(&self) -> RatVector {
        let half = 1usize << (2 * self.genus());
        let mut v = RatVector::zeros(2 * half);
        for (m, c) in self.base.value().terms() {
            v.add_at(m as usize, c);
        }
        for (m, c) in self.hpart.value().terms() {
            v.add_at(half + m as usize, c);
        }
        v
    }

    pub fn from_vector(genus: usize, v: &RatVector) -> Result<Self> {
        let half = 1usize << (2 * genus);
        if v.len() != 2 * half {
            return Err(Error::Shape(format!(
                "vector of length {} for a genus-{genus} bundle",
                v.len()
            )));
        }
        let mut base = crate::exterior::ExtClass::zero(2 * genus);
        let mut hpart = crate::exterior::ExtClass::zero(2 * genus);
        for (i, c) in v.iter() {
            if i < half {
                base.add_term(i as u64, c);
            } else {
                hpart.add_term((i - half) as u64, c);
            }
        }
        Ok(GpbClass {
            base: JacClass::from_ext(genus, base)?,
            hpart: JacClass::from_ext(genus, hpart)?,
        })
    }
}

/// A class `c00 + H₁c10 + H₂c01 + H₁H₂c11` on `P × P`.
#[derive(Clone, PartialEq, Eq)]
pub struct GpbProductClass {
    pub c00: ProductClass,
    pub c10: ProductClass,
    pub c01: ProductClass,
    pub c11: ProductClass,
}

impl fmt::Debug for GpbProductClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GpbProductClass")
            .field("c00", self.c00.value())
            .field("c10", self.c10.value())
            .field("c01", self.c01.value())
            .field("c11", self.c11.value())
            .finish()
    }
}

impl GpbProductClass {
    pub fn zero(genus: usize) -> Self {
        let z = ProductClass::zero(genus);
        GpbProductClass {
            c00: z.clone(),
            c10: z.clone(),
            c01: z.clone(),
            c11: z,
        }
    }

    /// `(π × π)^* z`.
    pub fn from_base(z: ProductClass) -> Self {
        let genus = z.genus();
        GpbProductClass {
            c00: z,
            ..GpbProductClass::zero(genus)
        }
    }

    fn parts(&self) -> [&ProductClass; 4] {
        [&self.c00, &self.c10, &self.c01, &self.c11]
    }

    fn from_parts(parts: [ProductClass; 4]) -> Self {
        let [c00, c10, c01, c11] = parts;
        GpbProductClass { c00, c10, c01, c11 }
    }

    pub fn is_zero(&self) -> bool {
        self.parts().iter().all(|c| c.is_zero())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(GpbProductClass {
            c00: self.c00.try_add(&other.c00)?,
            c10: self.c10.try_add(&other.c10)?,
            c01: self.c01.try_add(&other.c01)?,
            c11: self.c11.try_add(&other.c11)?,
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        GpbProductClass {
            c00: self.c00.scale(c),
            c10: self.c10.scale(c),
            c01: self.c01.scale(c),
            c11: self.c11.scale(c),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-Rat::one()))
    }

    /// True when only the `c00` component is present.
    pub fn is_base_pullback(&self) -> bool {
        self.c10.is_zero() && self.c01.is_zero() && self.c11.is_zero()
    }
}

/// The bundle model of a fixed genus with its relation and section data.
pub struct GpbContext {
    jac: Jacobian,
    twist: JacClass,
    shift: JacClass,
    kernel: OnceLock<GpbProductClass>,
    kernel_exp: OnceLock<GpbProductClass>,
}

impl fmt::Debug for GpbContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GpbContext")
            .field("genus", &self.jac.genus())
            .field("twist", self.twist.value())
            .field("shift", self.shift.value())
            .finish()
    }
}

fn check_divisor(name: &str, x: &JacClass) -> Result<()> {
    if x.value().degrees().iter().any(|&d| d != 2) {
        return Err(Error::UnsupportedClass(format!(
            "{name} must be of pure codimension one"
        )));
    }
    Ok(())
}

impl GpbContext {
    /// Default model: `H² = 0` and `S_y = S_z = H`.
    pub fn new(genus: usize) -> Result<Self> {
        let jac = Jacobian::new(genus)?;
        let zero = jac.zero();
        Self::build(jac, zero.clone(), zero)
    }

    /// Model with relation `H² = π^*twist · H` and `S_y = H + π^*shift`.
    pub fn with_twist(genus: usize, twist: JacClass, shift: JacClass) -> Result<Self> {
        Self::build(Jacobian::new(genus)?, twist, shift)
    }

    fn build(jac: Jacobian, twist: JacClass, shift: JacClass) -> Result<Self> {
        for x in [&twist, &shift] {
            if x.genus() != jac.genus() {
                return Err(Error::ContextMismatch("twist data of another genus".into()));
            }
        }
        check_divisor("twist", &twist)?;
        check_divisor("section shift", &shift)?;
        Ok(GpbContext {
            jac,
            twist,
            shift,
            kernel: OnceLock::new(),
            kernel_exp: OnceLock::new(),
        })
    }

    pub fn jacobian(&self) -> &Jacobian {
        &self.jac
    }

    pub fn genus(&self) -> usize {
        self.jac.genus()
    }

    pub fn twist(&self) -> &JacClass {
        &self.twist
    }

    pub fn shift(&self) -> &JacClass {
        &self.shift
    }

    /// Real dimension of `P`.
    pub fn top_degree(&self) -> usize {
        2 * self.genus() + 2
    }

    fn check(&self, x: &GpbClass) -> Result<()> {
        if x.genus() != self.genus() {
            return Err(Error::ContextMismatch(format!(
                "class of genus {} in a genus-{} bundle",
                x.genus(),
                self.genus()
            )));
        }
        Ok(())
    }

    pub fn one(&self) -> GpbClass {
        self.pi_pullback(&self.jac.one())
    }

    pub fn zero(&self) -> GpbClass {
        GpbClass::zero(self.genus())
    }

    /// `H = c1(O_P(1))`.
    pub fn h_class(&self) -> GpbClass {
        GpbClass {
            base: self.jac.zero(),
            hpart: self.jac.one(),
        }
    }

    pub fn sy_class(&self) -> GpbClass {
        GpbClass {
            base: self.shift.clone(),
            hpart: self.jac.one(),
        }
    }

    pub fn sz_class(&self) -> GpbClass {
        GpbClass {
            base: -(&self.twist + &self.shift),
            hpart: self.jac.one(),
        }
    }

    /// Point class `H·π^*[pt]`.
    pub fn point(&self) -> GpbClass {
        GpbClass {
            base: self.jac.zero(),
            hpart: self.jac.point(),
        }
    }

    pub fn pi_pullback(&self, x: &JacClass) -> GpbClass {
        GpbClass {
            base: x.clone(),
            hpart: self.jac.zero(),
        }
    }

    /// Fibre integration: `∫_{P¹} H = 1`, `∫_{P¹} 1 = 0`.
    pub fn pi_pushforward(&self, x: &GpbClass) -> Result<JacClass> {
        self.check(x)?;
        Ok(x.hpart.clone())
    }

    /// `H·π^*x`.
    pub fn h_times(&self, x: &JacClass) -> GpbClass {
        GpbClass {
            base: self.jac.zero(),
            hpart: x.clone(),
        }
    }

    /// Intersection product on `P`.
    pub fn gpb_mul(&self, x: &GpbClass, y: &GpbClass) -> Result<GpbClass> {
        self.check(x)?;
        self.check(y)?;
        let hh = x.hpart.wedge(&y.hpart)?;
        let mut hpart = x.base.wedge(&y.hpart)?.try_add(&x.hpart.wedge(&y.base)?)?;
        if !self.twist.is_zero() && !hh.is_zero() {
            hpart = hpart.try_add(&self.twist.wedge(&hh)?)?;
        }
        Ok(GpbClass {
            base: x.base.wedge(&y.base)?,
            hpart,
        })
    }

    pub fn gpb_pow(&self, x: &GpbClass, k: usize) -> Result<GpbClass> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.gpb_mul(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn integrate(&self, x: &GpbClass) -> Result<Rat> {
        Ok(self.pi_pushforward(x)?.integrate_top())
    }

    pub fn pair(&self, x: &GpbClass, y: &GpbClass) -> Result<Rat> {
        self.integrate(&self.gpb_mul(x, y)?)
    }

    /// Monomial basis: `π^*m` for every monomial `m`, then `H·π^*m`.
    pub fn basis(&self) -> Vec<GpbClass> {
        let mons = self.jac.basis();
        mons.iter()
            .map(|m| self.pi_pullback(m))
            .chain(mons.iter().map(|m| self.h_times(m)))
            .collect()
    }

    /// `W̃_{g-d} = S_y·π^*W_{g-d} + π^*W_{g-d-1}` for `0 <= d <= g`.
    pub fn wtilde(&self, d: i64) -> Result<GpbClass> {
        let g = self.genus() as i64;
        if !(0..=g).contains(&d) {
            return Err(Error::Range(format!("W̃ index d = {d} outside 0..={g}")));
        }
        let upper = self.pi_pullback(&self.jac.w_class(g - d)?);
        let lower = self.pi_pullback(&self.jac.w_class(g - d - 1)?);
        self.gpb_mul(&upper, &self.sy_class())?.try_add(&lower)
    }

    /// Extended theta divisor `W̃_g = S_y + π^*W_{g-1}`.
    pub fn ext_theta(&self) -> Result<GpbClass> {
        self.wtilde(0)
    }

    /// Extended `n^*`.
    pub fn ext_mult_pullback(&self, n: i64, x: &GpbClass, preset: Preset) -> Result<GpbClass> {
        self.check(x)?;
        let fibre = match preset {
            Preset::Geometric => Rat::from_int(n.abs()),
            Preset::Paper => Rat::int_pow(n, 2),
        };
        Ok(GpbClass {
            base: self.jac.mult_pullback(n, &x.base)?,
            hpart: self.jac.mult_pullback(n, &x.hpart)?.scale(&fibre),
        })
    }

    /// Extended `n_*`.
    pub fn ext_mult_pushforward(&self, n: i64, x: &GpbClass, preset: Preset) -> Result<GpbClass> {
        self.check(x)?;
        let base = self.jac.mult_pushforward(n, &x.base)?;
        let hpart = self.jac.mult_pushforward(n, &x.hpart)?;
        Ok(match preset {
            Preset::Geometric => GpbClass {
                base: base.scale(&Rat::from_int(n.abs())),
                hpart,
            },
            Preset::Paper => {
                if n == 0 {
                    return Err(Error::Range(
                        "preset `paper` has no pushforward for n = 0".into(),
                    ));
                }
                GpbClass {
                    base,
                    hpart: hpart.scale(&Rat::int_pow(n, -2)),
                }
            }
        })
    }

    /// Extended `(-1)^*`.
    pub fn ext_involution(&self, x: &GpbClass, preset: Preset) -> Result<GpbClass> {
        self.ext_mult_pullback(-1, x, preset)
    }

    fn check_product(&self, z: &GpbProductClass) -> Result<()> {
        if z.c00.genus() != self.genus() {
            return Err(Error::ContextMismatch("product class of another genus".into()));
        }
        Ok(())
    }

    /// Pullback along the first projection `P × P → P`.
    pub fn p_pullback(&self, x: &GpbClass) -> Result<GpbProductClass> {
        self.check(x)?;
        Ok(GpbProductClass {
            c00: self.jac.pullback(Projection::First, &x.base)?,
            c10: self.jac.pullback(Projection::First, &x.hpart)?,
            ..GpbProductClass::zero(self.genus())
        })
    }

    /// Pullback along the second projection `P × P → P`.
    pub fn q_pullback(&self, x: &GpbClass) -> Result<GpbProductClass> {
        self.check(x)?;
        Ok(GpbProductClass {
            c00: self.jac.pullback(Projection::Second, &x.base)?,
            c01: self.jac.pullback(Projection::Second, &x.hpart)?,
            ..GpbProductClass::zero(self.genus())
        })
    }

    /// Intersection product on `P × P`, reducing `H_i² = a_i H_i`.
    pub fn product_mul(&self, x: &GpbProductClass, y: &GpbProductClass) -> Result<GpbProductClass> {
        self.check_product(x)?;
        self.check_product(y)?;
        let t1 = self.jac.pullback(Projection::First, &self.twist)?;
        let t2 = self.jac.pullback(Projection::Second, &self.twist)?;
        let mut out: [ProductClass; 4] =
            std::array::from_fn(|_| ProductClass::zero(self.genus()));
        // Slot index: bit 0 = H₁, bit 1 = H₂.
        let xs = [&x.c00, &x.c10, &x.c01, &x.c11];
        let ys = [&y.c00, &y.c10, &y.c01, &y.c11];
        for (i, a) in xs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in ys.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut prod = a.wedge(b)?;
                if i & j & 1 != 0 {
                    prod = prod.wedge(&t1)?;
                }
                if i & j & 2 != 0 {
                    prod = prod.wedge(&t2)?;
                }
                if prod.is_zero() {
                    continue;
                }
                let slot = i | j;
                out[slot] = out[slot].try_add(&prod)?;
            }
        }
        Ok(GpbProductClass::from_parts(out))
    }

    /// `exp(z)` for a class with no constant term.
    pub fn product_exp(&self, z: &GpbProductClass) -> Result<GpbProductClass> {
        if !z.c00.value().coeff(0).is_zero() {
            return Err(Error::UnsupportedClass(
                "exponential of a class with nonzero constant term".into(),
            ));
        }
        let mut acc = GpbProductClass::from_base(ProductClass::one(self.genus()));
        let mut power = acc.clone();
        let mut k = 0i64;
        loop {
            k += 1;
            power = self.product_mul(&power, z)?.scale(&Rat::new(1, k));
            if power.is_zero() {
                break;
            }
            acc = acc.try_add(&power)?;
        }
        Ok(acc)
    }

    /// Pushforward along the second projection: integrates out the first `P`.
    pub fn q_pushforward(&self, z: &GpbProductClass) -> Result<GpbClass> {
        self.check_product(z)?;
        Ok(GpbClass {
            base: self.jac.pushforward(Projection::Second, &z.c10)?,
            hpart: self.jac.pushforward(Projection::Second, &z.c11)?,
        })
    }

    /// Pushforward along the first projection: integrates out the second `P`.
    pub fn p_pushforward(&self, z: &GpbProductClass) -> Result<GpbClass> {
        self.check_product(z)?;
        Ok(GpbClass {
            base: self.jac.pushforward(Projection::First, &z.c01)?,
            hpart: self.jac.pushforward(Projection::First, &z.c11)?,
        })
    }

    /// `f_* m̃^*` on divisor-level classes of `P`.
    ///
    /// Base divisors follow `m`: `f_* m̃^* π^*D = (π × π)^* m^* D`. The section
    /// `S_y` meets the exceptional loci only over `S_y × S_z` and `S_z × S_y`,
    /// which gives `f_* m̃^* S_y = p^*S_y + q^*S_y`. `H` is `S_y - π^*s`.
    pub fn fm_pullpush(&self, x: &GpbClass) -> Result<GpbProductClass> {
        self.check(x)?;
        if x.base.value().degrees().iter().any(|&d| d > 2)
            || x.hpart.value().degrees().iter().any(|&d| d > 0)
        {
            return Err(Error::UnsupportedClass(
                "f_* m̃^* is only available on classes of codimension at most one".into(),
            ));
        }
        let c = x.hpart.value().coeff(0);
        let base = GpbProductClass::from_base(self.jac.pullback(Projection::Sum, &x.base)?);
        if c.is_zero() {
            return Ok(base);
        }
        let sy = self.sy_class();
        let section = self.p_pullback(&sy)?.try_add(&self.q_pullback(&sy)?)?;
        let shift = GpbProductClass::from_base(self.jac.pullback(Projection::Sum, &self.shift)?);
        base.try_add(&section.sub(&shift)?.scale(&c))
    }

    /// `ℓ̃ = p^*W̃_g + q^*W̃_g - f_* m̃^* W̃_g`.
    pub fn ext_poincare_kernel(&self) -> Result<&GpbProductClass> {
        if let Some(k) = self.kernel.get() {
            return Ok(k);
        }
        let w = self.ext_theta()?;
        let k = self
            .p_pullback(&w)?
            .try_add(&self.q_pullback(&w)?)?
            .sub(&self.fm_pullpush(&w)?)?;
        Ok(self.kernel.get_or_init(|| k))
    }

    /// `e^{ℓ̃}`.
    pub fn ext_poincare_exp(&self) -> Result<&GpbProductClass> {
        if let Some(k) = self.kernel_exp.get() {
            return Ok(k);
        }
        let e = self.product_exp(self.ext_poincare_kernel()?)?;
        Ok(self.kernel_exp.get_or_init(|| e))
    }

    /// `F̃ x = q_*(p^*x · e^{ℓ̃})`, evaluated on the `P × P` model.
    pub fn ext_fourier(&self, x: &GpbClass) -> Result<GpbClass> {
        let px = self.p_pullback(x)?;
        self.q_pushforward(&self.product_mul(&px, self.ext_poincare_exp()?)?)
    }

    /// Extended Pontryagin product.
    ///
    /// Geometric: only `S_y × S_y`-type cycles keep zero-dimensional fibres
    /// under the resolved addition map, so `(Hx)*(Hy) = H·π^*(x*y)` and every
    /// other combination pushes forward to zero. Paper: every combination
    /// goes through `m_*` on `J`, with `(Hx)*(Hy)` keeping its `H`.
    pub fn ext_pontryagin(&self, x: &GpbClass, y: &GpbClass, preset: Preset) -> Result<GpbClass> {
        self.check(x)?;
        self.check(y)?;
        let j = &self.jac;
        let hh = j.pontryagin(&x.hpart, &y.hpart)?;
        match preset {
            Preset::Geometric => Ok(GpbClass {
                base: j.zero(),
                hpart: hh,
            }),
            Preset::Paper => {
                let base = j
                    .pontryagin(&x.base, &y.base)?
                    .try_add(&j.pontryagin(&x.base, &y.hpart)?)?
                    .try_add(&j.pontryagin(&x.hpart, &y.base)?)?;
                Ok(GpbClass { base, hpart: hh })
            }
        }
    }
}
