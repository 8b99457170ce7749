//! Arithmetic in GF(2^m) over a polynomial basis.
//!
//! A [`FieldSpec`] fixes the extension degree and a primitive reduction
//! polynomial, so that the class of `x` is a generator `α` of the
//! multiplicative group. Elements are plain bit vectors ([`FieldElement`]);
//! every operation goes through the spec that owns the reduction.
//!
//! For `m <= 20` multiplication, inversion and exponentiation run through
//! log/antilog tables (at most 8 MiB). Larger fields fall back to carryless
//! shift-and-xor multiplication with on-the-fly reduction.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_integer::Integer;
use serde::Deserialize;

use crate::error::{Error, Result};

/// Default upper bound on the extension degree.
pub const DEFAULT_MAX_M: u32 = 24;

/// Absolute upper bound: elements are stored in a `u32`.
pub const HARD_MAX_M: u32 = 31;

/// Largest degree that gets log/antilog tables.
pub const TABLE_MAX_M: u32 = 20;

// Primitive trinomials/pentanomials, indexed by m. Bit i is the coefficient of x^i.
const PRIMITIVE_POLYNOMIALS: [u32; 25] = [
    0,         // unused
    0x3,       // x + 1
    0x7,       // x^2 + x + 1
    0xb,       // x^3 + x + 1
    0x13,      // x^4 + x + 1
    0x25,      // x^5 + x^2 + 1
    0x43,      // x^6 + x + 1
    0x83,      // x^7 + x + 1
    0x11d,     // x^8 + x^4 + x^3 + x^2 + 1
    0x211,     // x^9 + x^4 + 1
    0x409,     // x^10 + x^3 + 1
    0x805,     // x^11 + x^2 + 1
    0x1053,    // x^12 + x^6 + x^4 + x + 1
    0x201b,    // x^13 + x^4 + x^3 + x + 1
    0x4443,    // x^14 + x^10 + x^6 + x + 1
    0x8003,    // x^15 + x + 1
    0x1100b,   // x^16 + x^12 + x^3 + x + 1
    0x20009,   // x^17 + x^3 + 1
    0x40081,   // x^18 + x^7 + 1
    0x80027,   // x^19 + x^5 + x^2 + x + 1
    0x100009,  // x^20 + x^3 + 1
    0x200005,  // x^21 + x^2 + 1
    0x400003,  // x^22 + x + 1
    0x800021,  // x^23 + x^5 + 1
    0x1000087, // x^24 + x^7 + x^2 + x + 1
];

/// The built-in reduction polynomial for degree `m`, if one is shipped.
pub fn default_reduction(m: u32) -> Option<u32> {
    PRIMITIVE_POLYNOMIALS
        .get(m as usize)
        .copied()
        .filter(|&p| p != 0)
}

/// An element of GF(2^m): the coefficient bits of its polynomial-basis
/// representative. Only meaningful together with the [`FieldSpec`] that
/// produced it.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({:#b})", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// Field construction settings: a degree cap and per-degree overrides of
/// the shipped primitive polynomials.
///
/// The TOML form is
///
/// ```toml
/// max_m = 24
/// [reduction]
/// 7 = "0x89"
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldConfig {
    pub max_m: u32,
    pub overrides: BTreeMap<u32, u32>,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig {
            max_m: DEFAULT_MAX_M,
            overrides: BTreeMap::new(),
        }
    }
}

#[derive(Deserialize)]
struct RawConfig {
    max_m: Option<u32>,
    #[serde(default)]
    reduction: BTreeMap<String, String>,
}

impl FieldConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let max_m = raw.max_m.unwrap_or(DEFAULT_MAX_M);
        if max_m == 0 || max_m > HARD_MAX_M {
            return Err(Error::Config(format!(
                "max_m={max_m} outside 1..={HARD_MAX_M}"
            )));
        }
        let mut overrides = BTreeMap::new();
        for (key, value) in raw.reduction {
            let m: u32 = key
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad degree key `{key}`")))?;
            let hex = value.trim();
            let hex = hex
                .strip_prefix("0x")
                .or_else(|| hex.strip_prefix("0X"))
                .unwrap_or(hex);
            let poly = u32::from_str_radix(hex, 16)
                .map_err(|_| Error::Config(format!("bad hex polynomial `{value}` for m={m}")))?;
            overrides.insert(m, poly);
        }
        Ok(FieldConfig { max_m, overrides })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn reduction_for(&self, m: u32) -> Option<u32> {
        self.overrides
            .get(&m)
            .copied()
            .or_else(|| default_reduction(m))
    }
}

struct LogTables {
    // exp[i] = α^i for 0 <= i < order
    exp: Vec<u32>,
    // log[a] for a != 0; log[0] is unused
    log: Vec<u32>,
}

/// GF(2^m) with a validated primitive reduction polynomial.
///
/// Immutable after construction; share it freely between threads.
pub struct FieldSpec {
    m: u32,
    reduction: u32,
    order: u32,
    trace_mask: u32,
    tables: Option<LogTables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("m", &self.m)
            .field("reduction", &format_args!("{:#x}", self.reduction))
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

impl FieldSpec {
    /// GF(2^m) from the shipped table, capped at [`DEFAULT_MAX_M`].
    pub fn new(m: u32) -> Result<Self> {
        Self::from_config(m, &FieldConfig::default())
    }

    pub fn from_config(m: u32, config: &FieldConfig) -> Result<Self> {
        if m == 0 || m > config.max_m.min(HARD_MAX_M) {
            return Err(Error::DegreeOutOfRange {
                m,
                max: config.max_m.min(HARD_MAX_M),
            });
        }
        let reduction = config.reduction_for(m).ok_or_else(|| {
            Error::Config(format!("no reduction polynomial configured for m={m}"))
        })?;
        Self::with_reduction(m, reduction)
    }

    /// GF(2^m) for an explicit reduction polynomial (bit m must be set).
    /// Primitivity is checked, never assumed.
    pub fn with_reduction(m: u32, reduction: u32) -> Result<Self> {
        Self::build(m, reduction, m <= TABLE_MAX_M)
    }

    /// Same field without lookup tables; used to cross-check the two
    /// multiplication routes.
    #[doc(hidden)]
    pub fn carryless_only(m: u32) -> Result<Self> {
        let reduction = default_reduction(m).ok_or(Error::DegreeOutOfRange {
            m,
            max: DEFAULT_MAX_M,
        })?;
        Self::build(m, reduction, false)
    }

    fn build(m: u32, reduction: u32, with_tables: bool) -> Result<Self> {
        if m == 0 || m > HARD_MAX_M {
            return Err(Error::DegreeOutOfRange { m, max: HARD_MAX_M });
        }
        check_primitive(m, reduction as u64)?;
        let order = ((1u64 << m) - 1) as u32;
        let mut spec = FieldSpec {
            m,
            reduction,
            order,
            trace_mask: 0,
            tables: None,
        };
        if with_tables {
            let mut exp = Vec::with_capacity(order as usize);
            let mut log = vec![0u32; 1usize << m];
            let mut cur = 1u32;
            for i in 0..order {
                exp.push(cur);
                log[cur as usize] = i;
                cur = spec.clmul_reduce(cur, 0b10);
            }
            spec.tables = Some(LogTables { exp, log });
        }
        let mut mask = 0u32;
        for i in 0..m {
            let t = spec.trace_by_definition(FieldElement(1 << i));
            mask |= (t as u32) << i;
        }
        spec.trace_mask = mask;
        Ok(spec)
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Reduction polynomial bitmask, including the x^m bit.
    pub fn reduction(&self) -> u32 {
        self.reduction
    }

    /// Size of the multiplicative group, 2^m - 1.
    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Number of field elements, 2^m.
    #[inline]
    pub fn size(&self) -> u64 {
        1u64 << self.m
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// Builds an element, rejecting non-canonical bit patterns.
    pub fn element(&self, bits: u32) -> Result<FieldElement> {
        if (bits as u64) >> self.m != 0 {
            return Err(Error::Precondition(format!(
                "{bits:#x} is not a canonical element of GF(2^{})",
                self.m
            )));
        }
        Ok(FieldElement(bits))
    }

    /// All 2^m elements in bit order, starting with zero.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..(1u64 << self.m)).map(|b| FieldElement(b as u32))
    }

    /// The nonzero elements in bit order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..(1u64 << self.m)).map(|b| FieldElement(b as u32))
    }

    /// The primitive element α (class of x).
    pub fn generator(&self) -> FieldElement {
        if self.m == 1 {
            FieldElement::ONE
        } else {
            FieldElement(0b10)
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    return FieldElement::ZERO;
                }
                let mut s = t.log[a.0 as usize] + t.log[b.0 as usize];
                if s >= self.order {
                    s -= self.order;
                }
                FieldElement(t.exp[s as usize])
            }
            None => FieldElement(self.clmul_reduce(a.0, b.0)),
        }
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// `a^e`, with `0^0 = 1`. Exponents are reduced modulo `2^m - 1` for
    /// nonzero bases.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if a.0 == 0 {
            return if e == 0 {
                FieldElement::ONE
            } else {
                FieldElement::ZERO
            };
        }
        let e = e % self.order as u64;
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u64;
            return FieldElement(t.exp[((l * e) % self.order as u64) as usize]);
        }
        let mut result = FieldElement::ONE;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        result
    }

    /// Multiplicative inverse, computed as `a^(2^m - 2)`.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inv_nonzero(a))
    }

    #[inline]
    pub(crate) fn inv_nonzero(&self, a: FieldElement) -> FieldElement {
        debug_assert!(a.0 != 0);
        match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                FieldElement(t.exp[((self.order - l) % self.order) as usize])
            }
            None => self.pow(a, self.order as u64 - 1),
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^(2^k)`, the k-fold Frobenius.
    pub fn frobenius(&self, a: FieldElement, k: u32) -> FieldElement {
        let mut r = a;
        for _ in 0..(k % self.m) {
            r = self.square(r);
        }
        r
    }

    /// Absolute trace to GF(2), as 0 or 1.
    #[inline]
    pub fn trace(&self, a: FieldElement) -> u8 {
        ((a.0 & self.trace_mask).count_ones() & 1) as u8
    }

    /// Trace straight from `a + a^2 + ... + a^(2^(m-1))`.
    pub fn trace_by_definition(&self, a: FieldElement) -> u8 {
        let mut acc = a;
        let mut t = a;
        for _ in 1..self.m {
            t = self.square(t);
            acc = self.add(acc, t);
        }
        debug_assert!(acc.0 <= 1, "trace left GF(2)");
        acc.0 as u8
    }

    /// `(2^j mod (2^m - 1)) + 1`: an exponent that acts as `2^j + 1` on
    /// every element, zero included.
    pub fn two_pow_plus_one(&self, j: u32) -> u64 {
        pow_mod(2, j as u64, self.order as u64) + 1
    }

    /// `α^t`; `t` is taken modulo `2^m - 1`.
    pub fn generator_power(&self, t: u64) -> FieldElement {
        match &self.tables {
            Some(tab) => FieldElement(tab.exp[(t % self.order as u64) as usize]),
            None => self.pow(self.generator(), t),
        }
    }

    /// Discrete logarithm to base α, when tables are present.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        if a.0 == 0 {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[a.0 as usize])
    }

    fn clmul_reduce(&self, a: u32, b: u32) -> u32 {
        poly_mulmod(a as u64, b as u64, self.reduction as u64, self.m) as u32
    }
}

// ---- GF(2)[x] helpers on u64 bit vectors ----

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_mulmod(a: u64, b: u64, f: u64, m: u32) -> u64 {
    let mut prod: u64 = 0;
    let mut a = a;
    let mut b = b;
    // keep a reduced after each shift so nothing exceeds 2m bits
    while b != 0 {
        if b & 1 == 1 {
            prod ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> m) & 1 == 1 {
            a ^= f;
        }
    }
    prod
}

fn poly_powmod_x(e: u64, f: u64, m: u32) -> u64 {
    // x^e mod f
    let mut result = 1u64;
    let mut base = if m == 1 { 0b10 ^ f } else { 0b10 };
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(result, base, f, m);
        }
        base = poly_mulmod(base, base, f, m);
        e >>= 1;
    }
    result
}

fn x_pow_two_pow(j: u32, f: u64, m: u32) -> u64 {
    // x^(2^j) mod f by repeated squaring
    let mut r = if m == 1 { 0b10 ^ f } else { 0b10 };
    for _ in 0..j {
        r = poly_mulmod(r, r, f, m);
    }
    r
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        while a != 0 && poly_degree(a) >= poly_degree(b) {
            a ^= b << (poly_degree(a) - poly_degree(b));
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Checks that `reduction` has degree `m`, is irreducible (Rabin's test)
/// and that x has multiplicative order `2^m - 1` modulo it.
pub fn check_primitive(m: u32, reduction: u64) -> Result<()> {
    let fail = |reason: String| Error::NotPrimitive {
        m,
        reduction,
        reason,
    };
    if poly_degree(reduction) != m as i32 {
        return Err(fail(format!("degree is {}", poly_degree(reduction))));
    }
    let x = if m == 1 { 0b10 ^ reduction } else { 0b10 };
    if x_pow_two_pow(m, reduction, m) != x {
        return Err(fail("x^(2^m) != x".into()));
    }
    for p in prime_factors(m as u64) {
        let h = x_pow_two_pow(m / p as u32, reduction, m) ^ x;
        if poly_gcd(reduction, h) != 1 {
            return Err(fail(format!(
                "shares a factor with x^(2^{}) - x",
                m / p as u32
            )));
        }
    }
    let order = (1u64 << m) - 1;
    if poly_powmod_x(order, reduction, m) != 1 {
        return Err(fail("x^(2^m - 1) != 1".into()));
    }
    for q in prime_factors(order) {
        if poly_powmod_x(order / q, reduction, m) == 1 {
            return Err(fail(format!("order of x divides (2^m - 1)/{q}")));
        }
    }
    Ok(())
}

fn pow_mod(base: u64, mut e: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let n = n as u128;
    let mut b = base as u128 % n;
    let mut r = 1u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % n;
        }
        b = b * b % n;
        e >>= 1;
    }
    r as u64
}

/// Modular inverse of `a` modulo `n` via extended Euclid, if it exists.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let g = (a as i128).extended_gcd(&(n as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(n as i128) as u64)
}

/// The decimation `d = (2^(2k) + 1) / (2^k + 1)` read in `Z/(2^m - 1)`.
pub fn decimation_exponent(m: u32, k: u32) -> Result<u64> {
    if m == 0 || m > 63 {
        return Err(Error::DegreeOutOfRange { m, max: 63 });
    }
    let n = (1u64 << m) - 1;
    let num = (pow_mod(2, 2 * k as u64, n) + 1) % n.max(1);
    let den = (pow_mod(2, k as u64, n) + 1) % n.max(1);
    let g = den.gcd(&n);
    if g != 1 && n != 1 {
        return Err(Error::Precondition(format!(
            "2^{k}+1 is not invertible modulo 2^{m}-1 (gcd {g})"
        )));
    }
    let inv = mod_inverse(den, n).expect("gcd checked");
    let d = ((num as u128 * inv as u128) % n.max(1) as u128) as u64;
    if n != 1 && d.gcd(&n) != 1 {
        return Err(Error::Precondition(format!(
            "decimation {d} is not coprime to 2^{m}-1"
        )));
    }
    Ok(d)
}
