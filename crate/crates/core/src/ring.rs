//! Finite commutative rings with identity.
//!
//! A [`Ring`] is either a residue ring `Z/n` or a quotient extension
//! `S[x]/(f)` of an already constructed ring `S` by a monic polynomial `f`.
//! Towers such as `Z/9[x]/(x^2+x+2)[y]/(y^2+6)` are built by nesting.
//!
//! Elements are stored as canonical indices in `0..cardinality`. For a
//! residue ring the index is the least nonnegative residue. For an extension
//! of degree `d` over a base of cardinality `q`, the element
//! `c_0 + c_1 x + ... + c_{d-1} x^{d-1}` has index
//! `c_0 q^{d-1} + c_1 q^{d-2} + ... + c_{d-1}`, so numeric order on indices is
//! lexicographic order on the coordinate vector `(c_0, ..., c_{d-1})`.
//!
//! The index-level operations ([`Ring::add`], [`Ring::mul`], ...) are what the
//! matrix and code modules use in their inner loops. [`RingElement`] is the
//! owner-checked wrapper for everything else.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 16;

/// Extensions up to this cardinality get precomputed operation tables.
const TABLE_LIMIT: u32 = 1024;

const VAR_NAMES: [char; 7] = ['x', 'y', 'z', 'w', 'v', 't', 's'];

#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

struct RingInner {
    kind: RingKind,
    cardinality: u32,
    characteristic: u64,
    one: u32,
    tables: Option<Tables>,
}

#[derive(PartialEq)]
enum RingKind {
    Residue {
        modulus: u32,
    },
    Extension {
        base: Ring,
        /// Coefficients of the monic modulus, lowest degree first; length `degree + 1`.
        modulus: Vec<u32>,
        var: char,
        degree: usize,
        base_card: u32,
        /// `base_card^(degree-1)`, the weight of the constant coordinate.
        lead_weight: u32,
    },
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for Ring {}

impl Ring {
    /// The residue ring `Z/n`.
    pub fn integers_mod(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "residue ring modulus must be at least 2, got {n}"
            )));
        }
        let modulus = u32::try_from(n).map_err(|_| {
            Error::InvalidParameter(format!("residue ring modulus {n} is too large"))
        })?;
        Ok(Ring(Arc::new(RingInner {
            kind: RingKind::Residue { modulus },
            cardinality: modulus,
            characteristic: n,
            one: 1,
            tables: None,
        })))
    }

    /// The quotient `base[v]/(f)` where `f` is given by its coefficients,
    /// lowest degree first, and `v` is the next unused variable name.
    pub fn quotient(base: &Ring, coefficients: &[RingElement]) -> Result<Ring> {
        let var = VAR_NAMES
            .iter()
            .copied()
            .find(|v| !base.variables().contains(v))
            .ok_or_else(|| Error::InvalidParameter("extension tower too deep".into()))?;
        Ring::quotient_named(base, coefficients, var)
    }

    pub fn quotient_named(base: &Ring, coefficients: &[RingElement], var: char) -> Result<Ring> {
        let mut raw = Vec::with_capacity(coefficients.len());
        for c in coefficients {
            if c.ring() != base {
                return Err(Error::RingMismatch);
            }
            raw.push(c.value());
        }
        Ring::quotient_raw(base, raw, var)
    }

    pub(crate) fn quotient_raw(base: &Ring, mut modulus: Vec<u32>, var: char) -> Result<Ring> {
        if !var.is_ascii_lowercase() {
            return Err(Error::InvalidParameter(format!(
                "variable name `{var}` must be a lowercase letter"
            )));
        }
        if base.variables().contains(&var) {
            return Err(Error::InvalidParameter(format!(
                "variable `{var}` already used in the base ring"
            )));
        }
        while modulus.len() > 1 && *modulus.last().unwrap() == 0 {
            modulus.pop();
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidParameter(
                "modulus must have degree at least 1".into(),
            ));
        }
        if *modulus.last().unwrap() != base.one_value() {
            return Err(Error::InvalidParameter("modulus must be monic".into()));
        }
        let degree = modulus.len() - 1;
        if degree > MAX_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "extension degree {degree} exceeds the supported maximum {MAX_DEGREE}"
            )));
        }
        let base_card = base.cardinality();
        let cardinality = (base_card as u64)
            .checked_pow(degree as u32)
            .filter(|&c| c <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidParameter("ring cardinality too large".into()))?
            as u32;
        let lead_weight = base_card.pow(degree as u32 - 1);
        let one = base.one_value() * lead_weight;
        let mut inner = RingInner {
            kind: RingKind::Extension {
                base: base.clone(),
                modulus,
                var,
                degree,
                base_card,
                lead_weight,
            },
            cardinality,
            characteristic: base.characteristic(),
            one,
            tables: None,
        };
        if cardinality <= TABLE_LIMIT {
            let n = cardinality as usize;
            let mut add = Vec::with_capacity(n * n);
            let mut mul = Vec::with_capacity(n * n);
            for a in 0..cardinality {
                for b in 0..cardinality {
                    add.push(inner.ext_add(a, b));
                    mul.push(inner.ext_mul(a, b));
                }
            }
            inner.tables = Some(Tables { add, mul });
        }
        Ok(Ring(Arc::new(inner)))
    }

    /// Galois ring `GR(p^k, r)` realised with the default modulus table.
    ///
    /// | p | r | modulus |
    /// |---|---|---------|
    /// | 2 | 2 | x^2+x+1 |
    /// | 2 | 3 | x^3+x+1 |
    /// | 3 | 2 | x^2+x+2 |
    /// | 3 | 3 | x^3+2x+1 |
    /// | 5 | 2 | x^2+2 |
    /// | 7 | 2 | x^2+1 |
    /// | 11 | 2 | x^2+1 |
    /// | 13 | 2 | x^2+2 |
    ///
    /// Each modulus is irreducible modulo `p`, so it is basic irreducible
    /// over `Z/p^k` for every `k`. For `r = 1` the result is `Z/p^k`.
    pub fn galois(p: u64, k: u32, r: usize) -> Result<Ring> {
        let base = Ring::integers_mod(
            p.checked_pow(k)
                .ok_or_else(|| Error::InvalidParameter("characteristic too large".into()))?,
        )?;
        if r == 1 {
            return Ok(base);
        }
        let coeffs: &[i64] = match (p, r) {
            (2, 2) => &[1, 1, 1],
            (2, 3) => &[1, 1, 0, 1],
            (3, 2) => &[2, 1, 1],
            (3, 3) => &[1, 2, 0, 1],
            (5, 2) => &[2, 0, 1],
            (7, 2) => &[1, 0, 1],
            (11, 2) => &[1, 0, 1],
            (13, 2) => &[2, 0, 1],
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "no default modulus for GR({p}^{k}, {r})"
                )))
            }
        };
        let modulus = coeffs.iter().map(|&c| base.from_int(c)).collect();
        Ring::quotient_raw(&base, modulus, 'x')
    }

    /// Parses a ring description such as `Z/9[x]/(x^2+x+2)`.
    pub fn parse(text: &str) -> Result<Ring> {
        crate::text::parse_ring(text)
    }

    pub fn cardinality(&self) -> u32 {
        self.0.cardinality
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    /// `Some((base, modulus, var))` for an extension, `None` for `Z/n`.
    pub fn extension_parts(&self) -> Option<(&Ring, &[u32], char)> {
        match &self.0.kind {
            RingKind::Residue { .. } => None,
            RingKind::Extension {
                base, modulus, var, ..
            } => Some((base, modulus, *var)),
        }
    }

    /// `Some(n)` when this is `Z/n`.
    pub fn residue_modulus(&self) -> Option<u32> {
        match self.0.kind {
            RingKind::Residue { modulus } => Some(modulus),
            _ => None,
        }
    }

    /// Variable names of the tower, innermost first.
    pub fn variables(&self) -> Vec<char> {
        match &self.0.kind {
            RingKind::Residue { .. } => Vec::new(),
            RingKind::Extension { base, var, .. } => {
                let mut vars = base.variables();
                vars.push(*var);
                vars
            }
        }
    }

    // ---- index-level arithmetic ----

    #[inline]
    pub fn zero_value(&self) -> u32 {
        0
    }

    #[inline]
    pub fn one_value(&self) -> u32 {
        self.0.one
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            return t.add[a as usize * inner.cardinality as usize + b as usize];
        }
        match inner.kind {
            RingKind::Residue { modulus } => {
                let s = a as u64 + b as u64;
                if s >= modulus as u64 {
                    (s - modulus as u64) as u32
                } else {
                    s as u32
                }
            }
            _ => inner.ext_add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            return t.mul[a as usize * inner.cardinality as usize + b as usize];
        }
        match inner.kind {
            RingKind::Residue { modulus } => (a as u64 * b as u64 % modulus as u64) as u32,
            _ => inner.ext_mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg(a)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// The image of an integer under the canonical map `Z -> R`.
    pub fn from_int(&self, k: i64) -> u32 {
        match &self.0.kind {
            RingKind::Residue { modulus } => k.rem_euclid(*modulus as i64) as u32,
            RingKind::Extension {
                base, lead_weight, ..
            } => base.from_int(k) * lead_weight,
        }
    }

    /// Embeds a value of the immediate base ring as a constant.
    pub fn embed_base(&self, base_value: u32) -> u32 {
        match &self.0.kind {
            RingKind::Residue { .. } => base_value,
            RingKind::Extension { lead_weight, .. } => base_value * lead_weight,
        }
    }

    /// Coordinates over the immediate base ring, constant term first.
    pub fn coordinates(&self, a: u32) -> Vec<u32> {
        match &self.0.kind {
            RingKind::Residue { .. } => vec![a],
            RingKind::Extension {
                degree, base_card, ..
            } => {
                let mut out = vec![0; *degree];
                decode(a, *base_card, &mut out);
                out
            }
        }
    }

    /// Reduces an arbitrary polynomial over the base (constant term first)
    /// modulo the defining polynomial.
    pub fn from_base_poly(&self, poly: &[u32]) -> u32 {
        match &self.0.kind {
            RingKind::Residue { .. } => {
                assert!(poly.len() <= 1, "residue rings have no variable");
                poly.first().copied().unwrap_or(0)
            }
            RingKind::Extension {
                base,
                modulus,
                degree,
                base_card,
                ..
            } => {
                let mut p = poly.to_vec();
                reduce_poly(base, modulus, &mut p);
                p.resize(*degree, 0);
                encode(&p[..*degree], *base_card)
            }
        }
    }

    /// Value of the tower variable `var`, or `None` if it is not part of this tower.
    pub fn variable_value(&self, var: char) -> Option<u32> {
        match &self.0.kind {
            RingKind::Residue { .. } => None,
            RingKind::Extension { base, var: own, .. } => {
                if *own == var {
                    Some(self.from_base_poly(&[0, base.one_value()]))
                } else {
                    base.variable_value(var).map(|b| self.embed_base(b))
                }
            }
        }
    }

    pub fn is_unit_value(&self, a: u32) -> bool {
        match self.0.kind {
            RingKind::Residue { modulus } => gcd(a as u64, modulus as u64) == 1,
            _ => self.inverse_value(a).is_some(),
        }
    }

    pub fn inverse_value(&self, a: u32) -> Option<u32> {
        match self.0.kind {
            RingKind::Residue { modulus } => {
                mod_inverse(a as u64, modulus as u64).map(|v| v as u32)
            }
            _ => {
                let one = self.one_value();
                (0..self.cardinality()).find(|&b| self.mul(a, b) == one)
            }
        }
    }

    /// Zero counts as a zero divisor in every ring of cardinality at least two.
    pub fn is_zero_divisor_value(&self, a: u32) -> bool {
        if a == 0 {
            return true;
        }
        match self.0.kind {
            RingKind::Residue { modulus } => gcd(a as u64, modulus as u64) != 1,
            _ => (1..self.cardinality()).any(|b| self.mul(a, b) == 0),
        }
    }

    // ---- element-level API ----

    pub fn element(&self, value: u32) -> Result<RingElement> {
        if value >= self.cardinality() {
            return Err(Error::InvalidParameter(format!(
                "{value} is not a canonical index of {self}"
            )));
        }
        Ok(RingElement {
            ring: self.clone(),
            value,
        })
    }

    pub(crate) fn wrap(&self, value: u32) -> RingElement {
        debug_assert!(value < self.cardinality());
        RingElement {
            ring: self.clone(),
            value,
        }
    }

    pub fn zero(&self) -> RingElement {
        self.wrap(0)
    }

    pub fn one(&self) -> RingElement {
        self.wrap(self.one_value())
    }

    pub fn int(&self, k: i64) -> RingElement {
        self.wrap(self.from_int(k))
    }

    /// Parses an element written in this ring's element format.
    pub fn parse_element(&self, text: &str) -> Result<RingElement> {
        crate::text::parse_element(self, text).map(|v| self.wrap(v))
    }

    /// All elements in canonical (lexicographic) order.
    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.cardinality()).map(move |v| self.wrap(v))
    }

    /// The smallest `u` in enumeration order with `u^2 = -1`.
    pub fn find_square_root_of_minus_one(&self) -> Option<RingElement> {
        let minus_one = self.neg(self.one_value());
        (0..self.cardinality())
            .find(|&u| self.mul(u, u) == minus_one)
            .map(|u| self.wrap(u))
    }

    /// Canonical text of an index-level value.
    pub fn format_value(&self, a: u32) -> String {
        crate::text::format_value(self, a)
    }
}

impl RingInner {
    fn neg(&self, a: u32) -> u32 {
        match &self.kind {
            RingKind::Residue { modulus } => {
                if a == 0 {
                    0
                } else {
                    modulus - a
                }
            }
            RingKind::Extension {
                base,
                degree,
                base_card,
                ..
            } => {
                let mut c = [0u32; MAX_DEGREE];
                decode(a, *base_card, &mut c[..*degree]);
                for x in &mut c[..*degree] {
                    *x = base.neg(*x);
                }
                encode(&c[..*degree], *base_card)
            }
        }
    }

    fn ext_add(&self, a: u32, b: u32) -> u32 {
        let RingKind::Extension {
            base,
            degree,
            base_card,
            ..
        } = &self.kind
        else {
            unreachable!()
        };
        let d = *degree;
        let mut ca = [0u32; MAX_DEGREE];
        let mut cb = [0u32; MAX_DEGREE];
        decode(a, *base_card, &mut ca[..d]);
        decode(b, *base_card, &mut cb[..d]);
        for i in 0..d {
            ca[i] = base.add(ca[i], cb[i]);
        }
        encode(&ca[..d], *base_card)
    }

    fn ext_mul(&self, a: u32, b: u32) -> u32 {
        let RingKind::Extension {
            base,
            modulus,
            degree,
            base_card,
            ..
        } = &self.kind
        else {
            unreachable!()
        };
        let d = *degree;
        let mut ca = [0u32; MAX_DEGREE];
        let mut cb = [0u32; MAX_DEGREE];
        decode(a, *base_card, &mut ca[..d]);
        decode(b, *base_card, &mut cb[..d]);
        let mut prod = [0u32; 2 * MAX_DEGREE];
        for i in 0..d {
            if ca[i] == 0 {
                continue;
            }
            for j in 0..d {
                if cb[j] != 0 {
                    prod[i + j] = base.add(prod[i + j], base.mul(ca[i], cb[j]));
                }
            }
        }
        for k in (d..2 * d - 1).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..d {
                let s = base.mul(t, modulus[j]);
                prod[k - d + j] = base.sub(prod[k - d + j], s);
            }
        }
        encode(&prod[..d], *base_card)
    }
}

/// `poly` is reduced in place modulo the monic `modulus` (both constant term first).
fn reduce_poly(base: &Ring, modulus: &[u32], poly: &mut Vec<u32>) {
    let d = modulus.len() - 1;
    while poly.len() > d {
        let t = poly.pop().unwrap();
        if t == 0 {
            continue;
        }
        let shift = poly.len() - d;
        for j in 0..d {
            let s = base.mul(t, modulus[j]);
            poly[shift + j] = base.sub(poly[shift + j], s);
        }
    }
}

#[inline]
fn decode(mut v: u32, q: u32, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = v % q;
        v /= q;
    }
}

#[inline]
fn encode(coords: &[u32], q: u32) -> u32 {
    coords.iter().fold(0, |acc, &c| acc * q + c)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            RingKind::Residue { modulus } => write!(f, "Z/{modulus}"),
            RingKind::Extension {
                base, modulus, var, ..
            } => write!(
                f,
                "{base}[{var}]/({})",
                crate::text::format_poly(base, modulus, *var)
            ),
        }
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}

/// An element of a [`Ring`] in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: Ring,
    value: u32,
}

impl RingElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Canonical index of this element.
    pub fn value(&self) -> u32 {
        self.value
    }

    fn same_ring(&self, other: &RingElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.ring.wrap(self.ring.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.ring.wrap(self.ring.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.ring.wrap(self.ring.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> RingElement {
        self.ring.wrap(self.ring.neg(self.value))
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == self.ring.one_value()
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit_value(self.value)
    }

    pub fn is_zero_divisor(&self) -> bool {
        self.ring.is_zero_divisor_value(self.value)
    }

    pub fn invert(&self) -> Result<RingElement> {
        self.ring
            .inverse_value(self.value)
            .map(|v| self.ring.wrap(v))
            .ok_or_else(|| Error::NotInvertible(format!("{self} is not a unit in {}", self.ring)))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_value(self.value))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.ring)
    }
}
