//! Finite fields: prime fields and towers of extensions built on top of them.
//!
//! Every element is stored as a canonical integer encoding. For a prime field
//! the encoding is the residue itself. For an extension of degree `d` over a
//! base field `B`, an element with power-basis coordinates `c_0, ..., c_{d-1}`
//! (each a `B` encoding) is encoded as `c_0 + c_1 |B| + ... + c_{d-1} |B|^{d-1}`.
//! Since `|B|` is itself a power of the characteristic `p`, the encoding of any
//! tower element is a plain base-`p` number whose digits are the coordinates
//! over the prime field, so addition is digit-wise addition mod `p`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order built unless a caller asks for a different cap.
pub const DEFAULT_FIELD_ORDER_CAP: u64 = 1 << 16;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e` into `(p, e)`, or returns `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Digit-wise sum of two base-`p` packed numbers.
///
/// Field elements, vectors over a field and syndromes are all packed this way,
/// so this single routine is the addition of every one of them.
#[inline]
pub fn packed_add(p: u32, a: u64, b: u64) -> u64 {
    if p == 2 {
        return a ^ b;
    }
    let p = p as u64;
    let (mut a, mut b) = (a, b);
    let mut out = 0u64;
    let mut place = 1u64;
    while a != 0 || b != 0 {
        let d = (a % p + b % p) % p;
        out += d * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

#[inline]
pub fn packed_neg(p: u32, a: u64) -> u64 {
    if p == 2 {
        return a;
    }
    let p = p as u64;
    let mut a = a;
    let mut out = 0u64;
    let mut place = 1u64;
    while a != 0 {
        let d = (p - a % p) % p;
        out += d * place;
        a /= p;
        place *= p;
    }
    out
}

#[inline]
pub fn packed_sub(p: u32, a: u64, b: u64) -> u64 {
    packed_add(p, a, packed_neg(p, b))
}

/// A finite field, cheap to clone and safe to share across threads.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

struct FieldInner {
    p: u32,
    order: u32,
    base: Option<Field>,
    degree: u32,
    /// Monic modulus over `base`, low degree first. Empty for prime fields.
    modulus: Vec<u32>,
    primitive: u32,
    /// `exp[i] = primitive^i`, stored twice over so that log sums need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        Self::prime_with_cap(p, DEFAULT_FIELD_ORDER_CAP)
    }

    pub fn prime_with_cap(p: u64, cap: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > cap {
            return Err(Error::cap("field order", p, cap));
        }
        let p32 = p as u32;
        let mul = |a: u32, b: u32| ((a as u64 * b as u64) % p) as u32;
        Ok(Self::finish(p32, p32, None, 1, Vec::new(), mul))
    }

    /// Extends `self` by the lexicographically smallest monic irreducible
    /// polynomial of the given degree. Degree 1 returns `self` unchanged.
    pub fn extend(&self, degree: u32) -> Result<Field> {
        self.extend_with_cap(degree, DEFAULT_FIELD_ORDER_CAP)
    }

    pub fn extend_with_cap(&self, degree: u32, cap: u64) -> Result<Field> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if degree == 1 {
            return Ok(self.clone());
        }
        let base_order = self.order();
        let order = (base_order as u128)
            .checked_pow(degree)
            .unwrap_or(u128::MAX);
        if order > cap as u128 || order > u32::MAX as u128 {
            return Err(Error::cap(
                "field order",
                format!("{base_order}^{degree}"),
                cap,
            ));
        }
        let modulus = smallest_irreducible(self, degree as usize);
        Ok(self.with_modulus(modulus))
    }

    /// Extension by an explicit modulus, which must be monic and irreducible.
    pub fn extend_by(&self, modulus: &[u32]) -> Result<Field> {
        if modulus.len() < 3 {
            return Err(Error::OutOfRange(
                "modulus must have degree at least 2".into(),
            ));
        }
        if modulus.iter().any(|&c| c as u64 >= self.order()) {
            return Err(Error::Parse(
                "modulus coefficient outside base field".into(),
            ));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::Parse("modulus is not monic".into()));
        }
        if !is_irreducible(self, modulus) {
            return Err(Error::Parse("modulus is reducible".into()));
        }
        let order = (self.order() as u128).pow(modulus.len() as u32 - 1);
        if order > DEFAULT_FIELD_ORDER_CAP as u128 {
            return Err(Error::cap("field order", order, DEFAULT_FIELD_ORDER_CAP));
        }
        Ok(self.with_modulus(modulus.to_vec()))
    }

    fn with_modulus(&self, modulus: Vec<u32>) -> Field {
        let degree = (modulus.len() - 1) as u32;
        let order = self.order().pow(degree) as u32;
        let base = self.clone();
        let slow = {
            let base = base.clone();
            let modulus = modulus.clone();
            move |a: u32, b: u32| poly_mul_encoded(&base, &modulus, a, b)
        };
        Self::finish(self.p(), order, Some(base), degree, modulus, slow)
    }

    fn finish(
        p: u32,
        order: u32,
        base: Option<Field>,
        degree: u32,
        modulus: Vec<u32>,
        mul: impl Fn(u32, u32) -> u32,
    ) -> Field {
        let group = order - 1;
        // Least element whose powers run through the whole multiplicative group.
        let mut powers = Vec::with_capacity(group as usize);
        let mut primitive = 0;
        for g in 1..order {
            powers.clear();
            let mut x = 1u32;
            loop {
                powers.push(x);
                x = mul(x, g);
                if x == 1 || powers.len() > group as usize {
                    break;
                }
            }
            if powers.len() == group as usize {
                primitive = g;
                break;
            }
        }
        assert!(primitive != 0, "multiplicative group of a field is cyclic");
        let mut exp = powers.clone();
        exp.extend_from_slice(&powers);
        let mut log = vec![0u32; order as usize];
        for (i, &x) in powers.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        Field(Arc::new(FieldInner {
            p,
            order,
            base,
            degree,
            modulus,
            primitive,
            exp,
            log,
        }))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    fn p(&self) -> u32 {
        self.0.p
    }

    pub fn order(&self) -> u64 {
        self.0.order as u64
    }

    /// Degree over the immediate base field (1 for a prime field).
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn base(&self) -> Option<&Field> {
        self.0.base.as_ref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.base.is_none()
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Order of the base field over which [`Field::coords`] expands elements.
    pub fn base_order(&self) -> u64 {
        self.base().map_or(self.order(), Field::order)
    }

    /// Degree of `self` over `sub`, when `sub` appears in the tower below `self`.
    pub fn degree_over(&self, sub: &Field) -> Option<u32> {
        let mut cur = self.clone();
        let mut deg = 1;
        loop {
            if &cur == sub {
                return Some(deg);
            }
            deg *= cur.degree();
            cur = cur.base()?.clone();
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.order
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.order()
    }

    pub fn check(&self, a: u64) -> Result<u32> {
        if self.contains(a) {
            Ok(a as u32)
        } else {
            Err(Error::ElementOutOfRange {
                value: a,
                order: self.order(),
            })
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        packed_add(self.p(), a as u64, b as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        packed_neg(self.p(), a as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        packed_sub(self.p(), a as u64, b as u64) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.0;
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.0;
        let group = inner.order - 1;
        Ok(inner.exp[((group - inner.log[a as usize]) % group) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let group = (self.0.order - 1) as u64;
        let l = (self.0.log[a as usize] as u64 * (e % group)) % group;
        self.0.exp[l as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u32) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let group = (self.0.order - 1) as u64;
        Ok(group / gcd(group, self.0.log[a as usize] as u64))
    }

    pub fn primitive_element(&self) -> Elem {
        Elem {
            field: self.clone(),
            value: self.0.primitive,
        }
    }

    /// Coordinates over the immediate base field in the power basis.
    pub fn coords(&self, a: u32) -> Vec<u32> {
        let b = self.base_order() as u32;
        let mut a = a;
        (0..self.degree())
            .map(|_| {
                let c = a % b;
                a /= b;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<u32> {
        if coords.len() != self.degree() as usize {
            return Err(Error::LengthMismatch {
                expected: self.degree() as usize,
                got: coords.len(),
            });
        }
        let b = self.base_order();
        let mut out = 0u64;
        for &c in coords.iter().rev() {
            if c as u64 >= b {
                return Err(Error::ElementOutOfRange {
                    value: c as u64,
                    order: b,
                });
            }
            out = out * b + c as u64;
        }
        Ok(out as u32)
    }

    pub fn elem(&self, value: u64) -> Result<Elem> {
        Ok(Elem {
            field: self.clone(),
            value: self.check(value)?,
        })
    }

    pub fn zero(&self) -> Elem {
        Elem {
            field: self.clone(),
            value: 0,
        }
    }

    pub fn one(&self) -> Elem {
        Elem {
            field: self.clone(),
            value: 1,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.order == other.0.order
                && self.0.modulus == other.0.modulus
                && self.0.base == other.0.base)
    }
}

impl Eq for Field {}

/// Text descriptor, e.g. `p=2;deg=4;mod=[1,1,0,0,1]`. Each tower stage
/// appends its own `;deg=..;mod=[..]` pair; a prime field is just `p=..`.
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base() {
            None => write!(f, "p={}", self.p()),
            Some(base) => {
                let coeffs: Vec<String> = self.modulus().iter().map(u32::to_string).collect();
                write!(f, "{base};deg={};mod=[{}]", self.degree(), coeffs.join(","))
            }
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) <{}>", self.order(), self)
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let bad = || Error::Parse(format!("malformed field descriptor {s:?}"));
        let mut parts = s.split(';');
        let p = parts
            .next()
            .and_then(|t| t.strip_prefix("p="))
            .and_then(|t| t.parse::<u64>().ok())
            .ok_or_else(bad)?;
        let mut field = Field::prime(p)?;
        while let Some(deg) = parts.next() {
            let deg: usize = deg
                .strip_prefix("deg=")
                .and_then(|t| t.parse().ok())
                .ok_or_else(bad)?;
            let coeffs = parts
                .next()
                .and_then(|t| t.strip_prefix("mod=["))
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(bad)?;
            let modulus: Vec<u32> = coeffs
                .split(',')
                .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            if modulus.len() != deg + 1 {
                return Err(bad());
            }
            field = field.extend_by(&modulus)?;
        }
        Ok(field)
    }
}

/// `field_make(2, &[1, 4])` is GF(16) over GF(2); `field_make(2, &[2, 2])` is
/// GF(16) built as a degree-2 extension of GF(4). Degree-1 stages are no-ops.
pub fn field_make(p: u64, degrees: &[u32]) -> Result<Field> {
    field_make_with_cap(p, degrees, DEFAULT_FIELD_ORDER_CAP)
}

pub fn field_make_with_cap(p: u64, degrees: &[u32], cap: u64) -> Result<Field> {
    if degrees.is_empty() {
        return Err(Error::OutOfRange("degree list is empty".into()));
    }
    if degrees.contains(&0) {
        return Err(Error::ZeroDegree);
    }
    let mut field = Field::prime_with_cap(p, cap)?;
    for &d in degrees {
        field = field.extend_with_cap(d, cap)?;
    }
    Ok(field)
}

// ---- polynomial helpers over a base field (low degree first) ----

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(base: &Field, mut a: Vec<u32>, m: &[u32]) -> Vec<u32> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let t = base.mul(lead, mc);
                a[shift + i] = base.sub(a[shift + i], t);
            }
        }
        a.pop();
    }
    a
}

fn poly_mul(base: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = base.add(out[i + j], base.mul(x, y));
        }
    }
    out
}

fn poly_mul_encoded(base: &Field, modulus: &[u32], a: u32, b: u32) -> u32 {
    let bo = base.order() as u32;
    let d = modulus.len() - 1;
    let split = |mut x: u32| {
        (0..d)
            .map(|_| {
                let c = x % bo;
                x /= bo;
                c
            })
            .collect::<Vec<_>>()
    };
    let prod = poly_rem(base, poly_mul(base, &split(a), &split(b)), modulus);
    prod.iter().rev().fold(0u32, |acc, &c| acc * bo + c)
}

fn is_irreducible(base: &Field, f: &[u32]) -> bool {
    let d = f.len() - 1;
    let bo = base.order();
    // Trial division by every monic polynomial of degree 1..=d/2.
    for k in 1..=d / 2 {
        for t in 0..bo.pow(k as u32) {
            let mut g = Vec::with_capacity(k + 1);
            let mut x = t;
            for _ in 0..k {
                g.push((x % bo) as u32);
                x /= bo;
            }
            g.push(1);
            if poly_trim(poly_rem(base, f.to_vec(), &g)).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of the given degree, ordering candidates by the
/// integer `c_0 + c_1 |B| + ... + c_{d-1} |B|^{d-1}` of their lower coefficients.
fn smallest_irreducible(base: &Field, degree: usize) -> Vec<u32> {
    let bo = base.order();
    for t in 0..bo.pow(degree as u32) {
        let mut f = Vec::with_capacity(degree + 1);
        let mut x = t;
        for _ in 0..degree {
            f.push((x % bo) as u32);
            x /= bo;
        }
        f.push(1);
        if is_irreducible(base, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// A field element that remembers its field.
#[derive(Clone, PartialEq, Eq)]
pub struct Elem {
    field: Field,
    value: u32,
}

/// Binary operations accepted by [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(a: &Elem, b: &Elem, op: Op) -> Result<Elem> {
    a.same_field(b)?;
    let f = &a.field;
    let value = match op {
        Op::Add => f.add(a.value, b.value),
        Op::Sub => f.sub(a.value, b.value),
        Op::Mul => f.mul(a.value, b.value),
        Op::Div => f.div(a.value, b.value)?,
    };
    Ok(Elem {
        field: f.clone(),
        value,
    })
}

impl Elem {
    pub fn from_coords(field: &Field, coords: &[u32]) -> Result<Elem> {
        Ok(Elem {
            field: field.clone(),
            value: field.from_coords(coords)?,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn coords(&self) -> Vec<u32> {
        self.field.coords(self.value)
    }

    fn same_field(&self, other: &Elem) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Elem) -> Result<Elem> {
        arith(self, other, Op::Add)
    }

    pub fn checked_sub(&self, other: &Elem) -> Result<Elem> {
        arith(self, other, Op::Sub)
    }

    pub fn checked_mul(&self, other: &Elem) -> Result<Elem> {
        arith(self, other, Op::Mul)
    }

    pub fn checked_div(&self, other: &Elem) -> Result<Elem> {
        arith(self, other, Op::Div)
    }

    pub fn inv(&self) -> Result<Elem> {
        Ok(Elem {
            field: self.field.clone(),
            value: self.field.inv(self.value)?,
        })
    }

    pub fn pow(&self, e: u64) -> Elem {
        Elem {
            field: self.field.clone(),
            value: self.field.pow(self.value, e),
        }
    }

    pub fn multiplicative_order(&self) -> Result<u64> {
        self.field.multiplicative_order(self.value)
    }
}

impl std::ops::Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem {
            field: self.field.clone(),
            value: self.field.neg(self.value),
        }
    }
}

macro_rules! panicking_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics when the operands live in different fields.
        impl std::ops::$trait for &Elem {
            type Output = Elem;
            fn $method(self, rhs: &Elem) -> Elem {
                self.$checked(rhs).expect("field operation")
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.value, self.field.order())
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Injective field homomorphism `F_{q^r} -> big` fixing the ground field `F_q`.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: Field,
    big: Field,
    map: Vec<u32>,
}

impl Embedding {
    pub fn small(&self) -> &Field {
        &self.small
    }

    pub fn big(&self) -> &Field {
        &self.big
    }

    pub fn apply(&self, a: u32) -> u32 {
        self.map[a as usize]
    }

    pub fn apply_elem(&self, a: &Elem) -> Result<Elem> {
        if a.field != self.small {
            return Err(Error::FieldMismatch {
                left: a.field.to_string(),
                right: self.small.to_string(),
            });
        }
        Ok(Elem {
            field: self.big.clone(),
            value: self.apply(a.value),
        })
    }

    /// Image values, indexed by the small-field encoding.
    pub fn table(&self) -> &[u32] {
        &self.map
    }

    pub fn compose(&self, outer: &Embedding) -> Result<Embedding> {
        if self.big != outer.small {
            return Err(Error::FieldMismatch {
                left: self.big.to_string(),
                right: outer.small.to_string(),
            });
        }
        Ok(Embedding {
            small: self.small.clone(),
            big: outer.big.clone(),
            map: self.map.iter().map(|&x| outer.apply(x)).collect(),
        })
    }
}

/// Embeds `F_{q^r}` (the degree-`r` extension of `ground`, built the same
/// deterministic way as every other field) into `big`.
///
/// A primitive element of the small field is sent to the least element of
/// `big` of the same multiplicative order for which the multiplicative
/// extension is also additive and fixes `ground`.
pub fn subfield_embedding(big: &Field, ground: &Field, r: u32) -> Result<Embedding> {
    let big_degree = big.degree_over(ground).ok_or_else(|| {
        Error::OutOfRange(format!("{ground} is not a subfield of {big} in its tower"))
    })?;
    if r == 0 {
        return Err(Error::ZeroDegree);
    }
    if big_degree % r != 0 {
        return Err(Error::Divisibility {
            small: r,
            big: big_degree,
        });
    }
    let small = if r == big_degree {
        big.clone()
    } else {
        ground.extend(r)?
    };
    let group = small.order() - 1;
    let alpha = small.primitive_element().value;
    let q = ground.order() as u32;

    for beta in big.elements().skip(1) {
        if big.multiplicative_order(beta)? != group {
            continue;
        }
        let mut map = vec![0u32; small.order() as usize];
        let (mut s, mut b) = (1u32, 1u32);
        for _ in 0..group {
            map[s as usize] = b;
            s = small.mul(s, alpha);
            b = big.mul(b, beta);
        }
        // Multiplicative and phi(x + 1) = phi(x) + 1 for all x together give additivity.
        let additive = small
            .elements()
            .all(|x| map[small.add(x, 1) as usize] == big.add(map[x as usize], 1));
        let fixes_ground = (0..q).all(|c| map[c as usize] == c);
        if additive && fixes_ground {
            return Ok(Embedding {
                small,
                big: big.clone(),
                map,
            });
        }
    }
    Err(Error::EmbeddingNotFound {
        small: small.order(),
        big: big.order(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn make_fields() {
        let f2 = field_make(2, &[1]).unwrap();
        assert_eq!(f2.order(), 2);
        assert!(f2.is_prime_field());
        let f9 = field_make(3, &[1, 2]).unwrap();
        assert_eq!(f9.order(), 9);
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let f16 = field_make(2, &[1, 4]).unwrap();
        assert_eq!(f16.to_string(), "p=2;deg=4;mod=[1,1,0,0,1]");
    }

    #[test]
    fn construction_errors() {
        assert_eq!(field_make(4, &[1]).unwrap_err(), Error::NotPrime(4));
        assert_eq!(field_make(2, &[0]).unwrap_err(), Error::ZeroDegree);
        assert!(field_make(2, &[]).is_err());
        assert!(field_make_with_cap(2, &[5], 16).unwrap_err().is_cap());
    }

    #[test]
    fn gf16_modulus_is_irreducible_by_exhaustion() {
        let f16 = field_make(2, &[4]).unwrap();
        let m = f16.modulus();
        // evaluate m(x) mod every monic g of degree 1 and 2 over F_2, by bitmask arithmetic
        let m_bits: u32 = m.iter().enumerate().map(|(i, &c)| c << i).sum();
        let rem = |mut a: u32, g: u32| {
            let dg = 31 - g.leading_zeros();
            while a != 0 && 31 - a.leading_zeros() >= dg {
                a ^= g << (31 - a.leading_zeros() - dg);
            }
            a
        };
        for g in 2u32..8 {
            assert_ne!(rem(m_bits, g), 0, "divisible by {g:b}");
        }
    }

    #[test]
    fn small_arithmetic() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let f9 = field_make(3, &[2]).unwrap();
        for a in 1..9 {
            assert_eq!(f9.mul(a, f9.inv(a).unwrap()), 1);
        }
        assert_eq!(f9.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(Field::prime(2).unwrap().primitive_element().value(), 1);
        let f4 = field_make(2, &[2]).unwrap();
        assert_eq!(f4.primitive_element().multiplicative_order().unwrap(), 3);
        let f16 = field_make(2, &[4]).unwrap();
        let a = f16.primitive_element();
        // order by repeated multiplication
        let mut x = a.clone();
        let mut k = 1;
        while x.value() != 1 {
            x = &x * &a;
            k += 1;
        }
        assert_eq!(k, 15);
        assert_eq!((&a * &a.pow(14)).value(), 1);
    }

    #[test]
    fn coords_round_trip() {
        let f16 = field_make(2, &[4]).unwrap();
        assert_eq!(f16.coords(0), vec![0, 0, 0, 0]);
        assert_eq!(f16.coords(1), vec![1, 0, 0, 0]);
        for x in f16.elements() {
            assert_eq!(f16.from_coords(&f16.coords(x)).unwrap(), x);
        }
        assert!(matches!(
            f16.from_coords(&[1, 0]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn elem_errors() {
        let f4 = field_make(2, &[2]).unwrap();
        let f8 = field_make(2, &[3]).unwrap();
        let a = f4.one();
        let b = f8.one();
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::FieldMismatch { .. })
        ));
        assert_eq!(a.checked_div(&f4.zero()), Err(Error::DivisionByZero));
        assert!(f4.elem(4).is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        for f in [
            field_make(2, &[4]).unwrap(),
            field_make(2, &[2, 2]).unwrap(),
            field_make(3, &[2]).unwrap(),
            Field::prime(5).unwrap(),
        ] {
            let parsed: Field = f.to_string().parse().unwrap();
            assert_eq!(parsed, f);
        }
        assert!("p=2;deg=2;mod=[0,0,1]".parse::<Field>().is_err());
        assert!("q=2".parse::<Field>().is_err());
    }

    #[test]
    fn embedding_f4_into_f16() {
        let f2 = Field::prime(2).unwrap();
        let f16 = f2.extend(4).unwrap();
        let e = subfield_embedding(&f16, &f2, 2).unwrap();
        assert_eq!(e.apply(0), 0);
        assert_eq!(e.apply(1), 1);
        let mut image: Vec<u32> = e.table().to_vec();
        image.sort();
        image.dedup();
        assert_eq!(image.len(), 4);
        let fixed: Vec<u32> = f16.elements().filter(|&x| f16.pow(x, 4) == x).collect();
        assert_eq!(image, fixed);
        assert!(matches!(
            subfield_embedding(&f16, &f2, 3),
            Err(Error::Divisibility { .. })
        ));
    }
}
