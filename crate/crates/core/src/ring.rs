//! Finite commutative rings written as ordered products of local rings
//! `Z/p^s`, with componentwise arithmetic, residue maps and CRT.
//!
//! An element is stored as its tuple of component residues. When the
//! component primes are pairwise distinct the ring is `Z/m` and elements
//! also have a single-integer form via [`RingSpec::int_encode`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The local ring `Z/p^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocalRingSpec {
    prime: u64,
    exponent: u32,
}

impl LocalRingSpec {
    pub fn new(prime: u64, exponent: u32) -> Result<Self> {
        if prime < 2 || !is_prime(prime) {
            return Err(Error::InvalidArgument(format!("{prime} is not prime")));
        }
        if exponent == 0 {
            return Err(Error::InvalidArgument("exponent must be at least 1".into()));
        }
        prime
            .checked_pow(exponent)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidArgument(format!("{prime}^{exponent} is too large")))?;
        Ok(LocalRingSpec { prime, exponent })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// `|R_i| = p^s`.
    pub fn order(&self) -> u64 {
        self.prime.pow(self.exponent)
    }

    /// `|R_i / M_i| = p`.
    pub fn residue_order(&self) -> u64 {
        self.prime
    }

    /// `|M_i| = p^(s-1)`.
    pub fn maximal_ideal_order(&self) -> u64 {
        self.prime.pow(self.exponent - 1)
    }

    pub fn unit_count(&self) -> u64 {
        self.order() - self.maximal_ideal_order()
    }

    pub fn is_field(&self) -> bool {
        self.exponent == 1
    }

    /// The residue field `Z/p` as a local ring in its own right.
    pub fn residue_field(&self) -> LocalRingSpec {
        LocalRingSpec {
            prime: self.prime,
            exponent: 1,
        }
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.order() as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.order()
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        let q = self.order();
        (a + q - b) % q
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        let q = self.order();
        (q - a) % q
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.order() as u128) as u64
    }

    #[inline]
    pub fn is_unit(&self, a: u64) -> bool {
        !a.is_multiple_of(self.prime)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        mod_inverse(a, self.order())
    }

    /// `p`-adic valuation of `a`, with `v(0) = s`.
    pub fn valuation(&self, a: u64) -> u32 {
        let mut a = a % self.order();
        if a == 0 {
            return self.exponent;
        }
        let mut v = 0;
        while a.is_multiple_of(self.prime) {
            a /= self.prime;
            v += 1;
        }
        v
    }

    pub fn pow_p(&self, e: u32) -> u64 {
        if e >= self.exponent {
            0
        } else {
            self.prime.pow(e)
        }
    }
}

impl fmt::Display for LocalRingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z{}", self.order())
    }
}

/// `R = R_1 x ... x R_l`, components sorted by `(prime, exponent)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    components: Vec<LocalRingSpec>,
}

/// A ring element as its residue tuple `(rho_1(r), ..., rho_l(r))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    residues: Vec<u64>,
}

impl Element {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

impl RingSpec {
    pub fn from_components(mut components: Vec<LocalRingSpec>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument(
                "a ring needs at least one component".into(),
            ));
        }
        components.sort();
        Ok(RingSpec { components })
    }

    /// `Z/m` split into its prime-power components.
    pub fn zm(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::RingSpec(
                format!("Z{m}"),
                "modulus must be at least 2",
            ));
        }
        Self::from_components(factor_components(m)?)
    }

    /// Parses `Z<m>` or a product `Z<m1>xZ<m2>x...`.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::RingSpec(text.into(), "empty"));
        }
        let mut components = Vec::new();
        for token in trimmed.split(['x', '*', '×']) {
            let token = token.trim();
            let digits = token
                .strip_prefix('Z')
                .ok_or_else(|| Error::RingSpec(text.into(), "each factor must look like Z<m>"))?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::RingSpec(
                    text.into(),
                    "factor modulus must be a decimal integer",
                ));
            }
            let m: u64 = digits
                .parse()
                .map_err(|_| Error::RingSpec(text.into(), "factor modulus too large"))?;
            if m < 2 {
                return Err(Error::RingSpec(
                    text.into(),
                    "factor modulus must be at least 2",
                ));
            }
            components.extend(factor_components(m)?);
        }
        Self::from_components(components)
    }

    pub fn components(&self) -> &[LocalRingSpec] {
        &self.components
    }

    pub fn component(&self, i: usize) -> Result<LocalRingSpec> {
        self.components
            .get(i)
            .copied()
            .ok_or(Error::ComponentIndex {
                index: i,
                len: self.components.len(),
            })
    }

    /// Number of local components `l`.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.components.iter().map(LocalRingSpec::order).product()
    }

    pub fn unit_count(&self) -> u64 {
        self.components
            .iter()
            .map(LocalRingSpec::unit_count)
            .product()
    }

    /// True when the component moduli are pairwise coprime, i.e. `R = Z/|R|`.
    pub fn is_coprime(&self) -> bool {
        self.components.windows(2).all(|w| w[0].prime != w[1].prime)
    }

    pub fn is_field(&self) -> bool {
        self.components.len() == 1 && self.components[0].is_field()
    }

    /// The single-component ring `Z/p_i` (the residue field of component `i`).
    pub fn residue_field(&self, i: usize) -> Result<RingSpec> {
        Ok(RingSpec {
            components: vec![self.component(i)?.residue_field()],
        })
    }

    pub fn local(local: LocalRingSpec) -> RingSpec {
        RingSpec {
            components: vec![local],
        }
    }

    pub fn zero(&self) -> Element {
        Element {
            residues: vec![0; self.len()],
        }
    }

    pub fn one(&self) -> Element {
        Element {
            residues: self.components.iter().map(|c| 1 % c.order()).collect(),
        }
    }

    /// Image of an integer under the canonical map `Z -> R`.
    pub fn from_int(&self, v: i64) -> Element {
        Element {
            residues: self.components.iter().map(|c| c.reduce(v)).collect(),
        }
    }

    pub fn check(&self, a: &Element) -> Result<()> {
        if a.residues.len() != self.len() {
            return Err(Error::RingMismatch);
        }
        for (&r, c) in a.residues.iter().zip(&self.components) {
            if r >= c.order() {
                return Err(Error::RingMismatch);
            }
        }
        Ok(())
    }

    fn zip_with(
        &self,
        a: &Element,
        b: &Element,
        f: impl Fn(&LocalRingSpec, u64, u64) -> u64,
    ) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        let residues = self
            .components
            .iter()
            .zip(a.residues.iter().zip(&b.residues))
            .map(|(c, (&x, &y))| f(c, x, y))
            .collect();
        Ok(Element { residues })
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.zip_with(a, b, LocalRingSpec::add)
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element> {
        self.zip_with(a, b, LocalRingSpec::sub)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.zip_with(a, b, LocalRingSpec::mul)
    }

    pub fn neg(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        let residues = self
            .components
            .iter()
            .zip(&a.residues)
            .map(|(c, &x)| c.neg(x))
            .collect();
        Ok(Element { residues })
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        a.residues.iter().all(|&r| r == 0)
    }

    /// Units are exactly the elements whose residue is nonzero in every
    /// component's residue field.
    pub fn is_unit(&self, a: &Element) -> bool {
        a.residues.len() == self.len()
            && self
                .components
                .iter()
                .zip(&a.residues)
                .all(|(c, &r)| c.is_unit(r))
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        let residues = self
            .components
            .iter()
            .zip(&a.residues)
            .map(|(c, &r)| c.inv(r).ok_or(Error::NotAUnit))
            .collect::<Result<_>>()?;
        Ok(Element { residues })
    }

    /// `rho_i(a)`.
    pub fn project(&self, a: &Element, i: usize) -> Result<u64> {
        self.component(i)?;
        a.residues.get(i).copied().ok_or(Error::RingMismatch)
    }

    /// `pi_i(rho_i(a))`, the image in the residue field `F_{p_i}`.
    pub fn residue(&self, a: &Element, i: usize) -> Result<u64> {
        let c = self.component(i)?;
        Ok(self.project(a, i)? % c.prime)
    }

    /// The unique element with the given component values.
    pub fn crt_combine(&self, parts: &[u64]) -> Result<Element> {
        if parts.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} component values, got {}",
                self.len(),
                parts.len()
            )));
        }
        for (&v, c) in parts.iter().zip(&self.components) {
            if v >= c.order() {
                return Err(Error::ResidueOutOfRange {
                    value: v,
                    order: c.order(),
                });
            }
        }
        Ok(Element {
            residues: parts.to_vec(),
        })
    }

    pub fn int_encode(&self, a: &Element) -> Result<u64> {
        if !self.is_coprime() {
            return Err(Error::NonCoprimeComponents);
        }
        self.check(a)?;
        Ok(self.crt_value(a))
    }

    pub fn int_decode(&self, v: u64) -> Result<Element> {
        if !self.is_coprime() {
            return Err(Error::NonCoprimeComponents);
        }
        let order = self.order();
        if v >= order {
            return Err(Error::ResidueOutOfRange { value: v, order });
        }
        Ok(self.from_int(v as i64))
    }

    fn crt_value(&self, a: &Element) -> u64 {
        let mut value: u64 = 0;
        let mut modulus: u64 = 1;
        for (c, &r) in self.components.iter().zip(&a.residues) {
            let q = c.order();
            // value + modulus * t == r (mod q)
            let inv = mod_inverse(modulus % q, q).expect("coprime moduli");
            let diff = (r as i128 - value as i128).rem_euclid(q as i128) as u64;
            let t = ((diff as u128 * inv as u128) % q as u128) as u64;
            value += modulus * t;
            modulus *= q;
        }
        value
    }

    /// Integer in `[0, |R|)` used for canonical ordering: the CRT value
    /// when it exists, otherwise the mixed-radix reading of the residues.
    pub fn ordinal(&self, a: &Element) -> u64 {
        if self.is_coprime() {
            return self.crt_value(a);
        }
        self.components
            .iter()
            .zip(&a.residues)
            .fold(0, |acc, (c, &r)| acc * c.order() + r)
    }

    /// Inverse of [`RingSpec::ordinal`].
    pub fn from_ordinal(&self, v: u64) -> Element {
        if self.is_coprime() {
            return self.from_int(v as i64);
        }
        let mut residues = vec![0; self.len()];
        let mut v = v;
        for (slot, c) in residues.iter_mut().zip(&self.components).rev() {
            *slot = v % c.order();
            v /= c.order();
        }
        Element { residues }
    }

    /// Every element of the ring, in ordinal order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(move |v| self.from_ordinal(v))
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RingSpec::parse(s)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for RingSpec {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        RingSpec::parse(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn factor_components(mut m: u64) -> Result<Vec<LocalRingSpec>> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        let mut s = 0;
        while m.is_multiple_of(p) {
            m /= p;
            s += 1;
        }
        if s > 0 {
            out.push(LocalRingSpec::new(p, s)?);
        }
        p += 1;
    }
    if m > 1 {
        out.push(LocalRingSpec::new(m, 1)?);
    }
    Ok(out)
}
