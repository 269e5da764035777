//! The exterior algebra on `N` degree-one generators over the rationals.
//!
//! A basis monomial is a subset of generators stored as a bit mask; bit `i`
//! stands for generator `i`, and the monomial is the wedge of its generators
//! in increasing index order. Every cohomology class in this crate is an
//! [`ExtClass`]; codimension `p` lives in exterior degree `2p`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{Rat, RatVector};

/// Largest supported generator count.
pub const MAX_GENERATORS: usize = 32;

/// Sign of `A ∧ B` relative to the canonical order of `A ∪ B`, or `None`
/// when the monomials share a generator.
#[inline]
pub fn wedge_sign(a: u64, b: u64) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    // Count pairs (i in a, j in b) with i > j.
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> j >> 1).count_ones();
        rest &= rest - 1;
    }
    Some(swaps % 2 == 1)
}

/// Generator indices of a monomial, increasing.
pub fn mask_indices(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(j)
        }
    })
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An element of `Λ(Q^N)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtClass {
    n: usize,
    terms: BTreeMap<u64, Rat>,
}

impl ExtClass {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_GENERATORS, "at most {MAX_GENERATORS} generators");
        ExtClass {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        ExtClass::monomial(n, 0, Rat::one())
    }

    pub fn scalar(n: usize, c: Rat) -> Self {
        ExtClass::monomial(n, 0, c)
    }

    pub fn generator(n: usize, i: usize) -> Self {
        assert!(i < n, "generator {i} out of range for {n} generators");
        ExtClass::monomial(n, 1 << i, Rat::one())
    }

    pub fn monomial(n: usize, mask: u64, c: Rat) -> Self {
        let mut x = ExtClass::zero(n);
        assert!(mask & !full_mask(n) == 0, "monomial outside generator range");
        x.add_term(mask, &c);
        x
    }

    /// The monomial on the given generators, wedged in the order listed.
    pub fn wedge_of(n: usize, gens: &[usize]) -> Self {
        gens.iter().fold(ExtClass::one(n), |acc, &i| {
            acc.wedge(&ExtClass::generator(n, i)).expect("same n")
        })
    }

    /// Top monomial `x_0 ∧ x_1 ∧ … ∧ x_{N-1}`.
    pub fn top(n: usize) -> Self {
        ExtClass::monomial(n, full_mask(n), Rat::one())
    }

    pub fn generator_count(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rat)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, mask: u64) -> Rat {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mask: u64, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    fn check_same(&self, other: &ExtClass) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Shape(format!(
                "{} generators against {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &ExtClass) -> Result<ExtClass> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> ExtClass {
        if c.is_zero() {
            return ExtClass::zero(self.n);
        }
        ExtClass {
            n: self.n,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn wedge(&self, other: &ExtClass) -> Result<ExtClass> {
        self.check_same(other)?;
        let mut acc: BTreeMap<u64, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let Some(neg) = wedge_sign(*ma, *mb) else {
                    continue;
                };
                let prod = ca * cb;
                let slot = acc.entry(ma | mb).or_insert_with(Rat::zero);
                if neg {
                    *slot -= &prod;
                } else {
                    *slot += &prod;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(ExtClass {
            n: self.n,
            terms: acc,
        })
    }

    pub fn pow(&self, k: usize) -> ExtClass {
        let mut acc = ExtClass::one(self.n);
        for _ in 0..k {
            acc = acc.wedge(self).expect("same n");
        }
        acc
    }

    /// `exp(x) = Σ x^k / k!` for a class with no constant term (hence nilpotent).
    pub fn exp(&self) -> Result<ExtClass> {
        if !self.coeff(0).is_zero() {
            return Err(Error::UnsupportedClass(
                "exponential of a class with nonzero constant term".into(),
            ));
        }
        let mut acc = ExtClass::one(self.n);
        let mut power = ExtClass::one(self.n);
        let mut k = 0usize;
        loop {
            k += 1;
            power = power.wedge(self)?.scale(&Rat::new(1, k as i64));
            if power.is_zero() {
                break;
            }
            acc = acc.try_add(&power)?;
        }
        Ok(acc)
    }

    /// Exterior degrees present, increasing.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self
            .terms
            .keys()
            .map(|m| m.count_ones() as usize)
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// `Some(d)` if every term has degree `d`; zero has no degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn degree_part(&self, d: usize) -> ExtClass {
        ExtClass {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() as usize == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Highest degree present (0 for the zero class).
    pub fn max_degree(&self) -> usize {
        self.degrees().last().copied().unwrap_or(0)
    }

    /// The algebra map sending generator `i` to `images[i]` (each of pure degree 1).
    pub fn induced_map(&self, images: &[ExtClass]) -> Result<ExtClass> {
        if images.len() != self.n {
            return Err(Error::InvalidMap(format!(
                "{} images for {} generators",
                images.len(),
                self.n
            )));
        }
        let target = images.first().map_or(0, |x| x.n);
        for (i, img) in images.iter().enumerate() {
            if img.n != target {
                return Err(Error::InvalidMap(format!(
                    "image {i} lives on {} generators, expected {target}",
                    img.n
                )));
            }
            if img.terms.keys().any(|m| m.count_ones() != 1) {
                return Err(Error::InvalidMap(format!(
                    "image of generator {i} is not of pure degree 1"
                )));
            }
        }
        let mut out = ExtClass::zero(target);
        for (mask, c) in &self.terms {
            let mut prod = ExtClass::scalar(target, c.clone());
            for j in mask_indices(*mask) {
                prod = prod.wedge(&images[j])?;
                if prod.is_zero() {
                    break;
                }
            }
            for (m, x) in &prod.terms {
                out.add_term(*m, x);
            }
        }
        Ok(out)
    }

    /// Coefficient of the full monomial in canonical order; lower degrees contribute 0.
    pub fn integrate_top(&self) -> Rat {
        self.coeff(full_mask(self.n))
    }

    /// External product on `V ⊕ W`: generators of `self` first, then those of `other`.
    pub fn boxed(&self, other: &ExtClass) -> ExtClass {
        let n = self.n + other.n;
        assert!(n <= MAX_GENERATORS, "at most {MAX_GENERATORS} generators");
        let mut out = ExtClass::zero(n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                // All first-factor generators precede: the concatenation is canonical.
                out.add_term(ma | (mb << self.n), &(ca * cb));
            }
        }
        out
    }

    /// Push forward along `V ⊕ W → W`, where the first `first` generators
    /// span `V`: keeps terms containing all of `V` and drops those generators.
    pub fn fiber_integrate_first(&self, first: usize) -> Result<ExtClass> {
        if first > self.n {
            return Err(Error::Shape(format!(
                "cannot integrate {first} generators out of {}",
                self.n
            )));
        }
        let fm = full_mask(first);
        let mut out = ExtClass::zero(self.n - first);
        for (m, c) in &self.terms {
            if m & fm == fm {
                // V-block sits in front already: no reordering sign.
                out.add_term(m >> first, c);
            }
        }
        Ok(out)
    }

    /// Push forward along `V ⊕ W → V`, where the last `last` generators span `W`.
    ///
    /// The `W` block sits at the end of every canonical monomial; its degree
    /// is even in every use here so no reordering sign arises.
    pub fn fiber_integrate_last(&self, last: usize) -> Result<ExtClass> {
        if last > self.n {
            return Err(Error::Shape(format!(
                "cannot integrate {last} generators out of {}",
                self.n
            )));
        }
        let keep = self.n - last;
        let wm = full_mask(last) << keep;
        let mut out = ExtClass::zero(keep);
        for (m, c) in &self.terms {
            if m & wm == wm {
                out.add_term(m & !wm, c);
            }
        }
        Ok(out)
    }

    /// Dense coordinate vector indexed by monomial mask (length `2^N`).
    pub fn to_vector(&self) -> RatVector {
        RatVector::from_entries(
            1usize << self.n,
            self.terms.iter().map(|(m, c)| (*m as usize, c.clone())),
        )
    }

    pub fn from_vector(n: usize, v: &RatVector) -> Result<ExtClass> {
        if v.len() != 1usize << n {
            return Err(Error::Shape(format!(
                "vector of length {} for {} generators",
                v.len(),
                n
            )));
        }
        let mut out = ExtClass::zero(n);
        for (i, c) in v.iter() {
            out.add_term(i as u64, c);
        }
        Ok(out)
    }

    /// All monomials of degree `d`, in increasing mask order.
    pub fn basis_of_degree(n: usize, d: usize) -> Vec<ExtClass> {
        (0..1u64 << n)
            .filter(|m| m.count_ones() as usize == d)
            .map(|m| ExtClass::monomial(n, m, Rat::one()))
            .collect()
    }

    /// Every monomial, in increasing mask order.
    pub fn basis(n: usize) -> Vec<ExtClass> {
        (0..1u64 << n)
            .map(|m| ExtClass::monomial(n, m, Rat::one()))
            .collect()
    }
}

impl fmt::Debug for ExtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if *m != 0 {
                write!(f, "·x{:?}", mask_indices(*m).collect::<Vec<_>>())?;
            }
        }
        Ok(())
    }
}

impl Add for &ExtClass {
    type Output = ExtClass;
    fn add(self, rhs: &ExtClass) -> ExtClass {
        self.try_add(rhs).expect("generator counts differ")
    }
}

impl Add for ExtClass {
    type Output = ExtClass;
    fn add(self, rhs: ExtClass) -> ExtClass {
        &self + &rhs
    }
}

impl Sub for &ExtClass {
    type Output = ExtClass;
    fn sub(self, rhs: &ExtClass) -> ExtClass {
        self.try_add(&-rhs).expect("generator counts differ")
    }
}

impl Sub for ExtClass {
    type Output = ExtClass;
    fn sub(self, rhs: ExtClass) -> ExtClass {
        &self - &rhs
    }
}

impl Neg for &ExtClass {
    type Output = ExtClass;
    fn neg(self) -> ExtClass {
        self.scale(&-Rat::one())
    }
}

impl Neg for ExtClass {
    type Output = ExtClass;
    fn neg(self) -> ExtClass {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, i: usize) -> ExtClass {
        ExtClass::generator(n, i)
    }

    #[test]
    fn basis_product() {
        // e1 = x0, f1 = x1
        let p = g(2, 0).wedge(&g(2, 1)).unwrap();
        assert_eq!(p, ExtClass::monomial(2, 0b11, Rat::one()));
    }

    #[test]
    fn odd_square_vanishes() {
        assert!(g(2, 0).wedge(&g(2, 0)).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        // (e + f)(e - f) = -e∧f + f∧e = -2 e∧f
        let a = &g(2, 0) + &g(2, 1);
        let b = &g(2, 0) - &g(2, 1);
        let p = a.wedge(&b).unwrap();
        assert_eq!(p, ExtClass::monomial(2, 0b11, Rat::from_int(-2)));
    }

    #[test]
    fn shape_mismatch() {
        assert!(matches!(g(2, 0).wedge(&g(3, 0)), Err(Error::Shape(_))));
    }

    #[test]
    fn induced_identity_and_zero() {
        let a = g(3, 0).wedge(&g(3, 2)).unwrap() + ExtClass::scalar(3, Rat::from_int(4));
        let id: Vec<_> = (0..3).map(|i| g(3, i)).collect();
        assert_eq!(a.induced_map(&id).unwrap(), a);
        let zero = vec![ExtClass::zero(3); 3];
        assert_eq!(
            a.induced_map(&zero).unwrap(),
            ExtClass::scalar(3, Rat::from_int(4))
        );
    }

    #[test]
    fn induced_negation_on_degree_two() {
        let a = g(2, 0).wedge(&g(2, 1)).unwrap();
        let neg: Vec<_> = (0..2).map(|i| -&g(2, i)).collect();
        assert_eq!(a.induced_map(&neg).unwrap(), a);
    }

    #[test]
    fn induced_rejects_non_linear_images() {
        let bad = vec![ExtClass::one(2), g(2, 1)];
        assert!(matches!(
            g(2, 0).induced_map(&bad),
            Err(Error::InvalidMap(_))
        ));
    }

    #[test]
    fn integrate_top_reads_full_coefficient() {
        assert_eq!(
            ExtClass::monomial(4, 0b1111, Rat::from_int(5)).integrate_top(),
            Rat::from_int(5)
        );
        assert_eq!(g(4, 1).integrate_top(), Rat::zero());
        // θ² at g = 2 with θ = e1f1 + e2f2.
        let theta = g(4, 0).wedge(&g(4, 1)).unwrap() + g(4, 2).wedge(&g(4, 3)).unwrap();
        assert_eq!(theta.pow(2).integrate_top(), Rat::from_int(2));
    }

    #[test]
    fn box_units_and_order() {
        assert_eq!(ExtClass::one(2).boxed(&ExtClass::one(2)), ExtClass::one(4));
        assert_eq!(g(2, 0).boxed(&g(2, 0)), ExtClass::monomial(4, 0b101, Rat::one()));
        // box(f1, e1') equals the wedge of the two inclusions.
        let lhs = g(2, 1).boxed(&g(2, 0));
        let rhs = g(4, 1).wedge(&g(4, 2)).unwrap();
        assert_eq!(lhs, rhs);
        // and the reversed wedge carries the Koszul sign
        assert_eq!(g(4, 2).wedge(&g(4, 1)).unwrap(), -&lhs);
    }

    #[test]
    fn fiber_integration_first_factor() {
        let top = ExtClass::top(2);
        let b = g(2, 1) + ExtClass::scalar(2, Rat::from_int(3));
        assert_eq!(top.boxed(&b).fiber_integrate_first(2).unwrap(), b);
        assert!(g(2, 0).boxed(&b).fiber_integrate_first(2).unwrap().is_zero());
        let z = top.boxed(&g(2, 0)) + g(2, 0).boxed(&g(2, 1));
        assert_eq!(z.fiber_integrate_first(2).unwrap(), g(2, 0));
    }

    #[test]
    fn exp_of_nilpotent() {
        let x = g(2, 0).wedge(&g(2, 1)).unwrap();
        assert_eq!(x.exp().unwrap(), &ExtClass::one(2) + &x);
        assert!(ExtClass::one(2).exp().is_err());
    }

    #[test]
    fn vector_round_trip() {
        let a = g(3, 0) + g(3, 1).wedge(&g(3, 2)).unwrap().scale(&Rat::new(-1, 3));
        let v = a.to_vector();
        assert_eq!(v.len(), 8);
        assert_eq!(ExtClass::from_vector(3, &v).unwrap(), a);
    }
}
