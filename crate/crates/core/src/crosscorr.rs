//! Cross-correlation of an m-sequence with its decimations, the solution
//! count `A_1`, the five-valued distribution formulas and the weight
//! distribution of the associated two-nonzero cyclic codes.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expsums;
use crate::gf2m::{self, FieldElement, FieldSpec};

/// Default cap on `m` for the `2^(3m)` quadruple loop.
pub const DEFAULT_A1_CAP: u32 = 9;
/// Default cap on `m` for direct weight enumeration (`2^(2m)` words).
pub const DEFAULT_DIRECT_WEIGHT_CAP: u32 = 8;
/// Default cap on `m` for full correlation sweeps (`~4^m` terms).
pub const DEFAULT_CORRELATION_CAP: u32 = 17;

/// Multiset of `C_d(τ)` over `0 <= τ < 2^m - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrelationDistribution {
    pub m: u32,
    pub d: u64,
    pub entries: BTreeMap<i64, u64>,
}

/// The three moment identities of a correlation distribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentCheck {
    pub count: u64,
    pub first: i128,
    pub second: i128,
    pub expected_count: u64,
    pub expected_first: i128,
    pub expected_second: i128,
}

impl MomentCheck {
    pub fn holds(&self) -> bool {
        self.count == self.expected_count
            && self.first == self.expected_first
            && self.second == self.expected_second
    }
}

impl CorrelationDistribution {
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// `Σ N = 2^m - 1`, `Σ v N = 1`, `Σ v^2 N = 2^(2m) - 2^m - 1`.
    pub fn moments(&self) -> MomentCheck {
        let q = 1i128 << self.m;
        MomentCheck {
            count: self.total(),
            first: self
                .entries
                .iter()
                .map(|(&v, &n)| v as i128 * n as i128)
                .sum(),
            second: self
                .entries
                .iter()
                .map(|(&v, &n)| (v as i128) * (v as i128) * n as i128)
                .sum(),
            expected_count: (q - 1) as u64,
            expected_first: 1,
            expected_second: q * q - q - 1,
        }
    }

    pub fn values(&self) -> Vec<i64> {
        self.entries.keys().copied().collect()
    }
}

fn require_coprime(m: u32, d: u64) -> Result<()> {
    let n = (1u64 << m) - 1;
    let g = d.gcd(&n);
    if g != 1 && n != 1 {
        return Err(Error::Precondition(format!(
            "gcd(d={d}, 2^{m}-1) = {g}; the decimated sequence is not an m-sequence"
        )));
    }
    Ok(())
}

/// `C_d(τ) = Σ_{x≠0} (-1)^{Tr(α^τ x + x^d)}`, straight from the field.
pub fn cross_correlation(field: &FieldSpec, d: u64, tau: u64) -> Result<i64> {
    require_coprime(field.m(), d)?;
    if tau >= field.order() as u64 {
        return Err(Error::Precondition(format!(
            "shift {tau} outside 0..{}",
            field.order()
        )));
    }
    let a = field.generator_power(tau);
    Ok(field
        .nonzero_elements()
        .map(|x| {
            let t = field.trace(field.add(field.mul(a, x), field.pow(x, d)));
            1 - 2 * t as i64
        })
        .sum())
}

/// The m-sequence `s_t = Tr(α^t)`, `0 <= t < 2^m - 1`, as ±1.
pub fn m_sequence(field: &FieldSpec) -> Vec<i8> {
    (0..field.order() as u64)
        .map(|t| 1 - 2 * field.trace(field.generator_power(t)) as i8)
        .collect()
}

/// Full distribution of `C_d(τ)`, computed as the periodic correlation of
/// `s_t` against `s_{dt}` (substituting `x = α^t`).
pub fn correlation_distribution(
    field: &FieldSpec,
    d: u64,
    cap: u32,
) -> Result<CorrelationDistribution> {
    require_coprime(field.m(), d)?;
    if field.m() > cap {
        return Err(Error::CostRefused {
            what: "correlation sweep".into(),
            cost: 1u128 << (2 * field.m()),
            cap,
        });
    }
    let n = field.order() as usize;
    let s = m_sequence(field);
    let mut doubled = s.clone();
    doubled.extend_from_slice(&s);
    let decimated: Vec<i8> = (0..n)
        .map(|j| s[(d as u128 * j as u128 % n as u128) as usize])
        .collect();
    let entries = (0..n)
        .into_par_iter()
        .map(|tau| {
            let window = &doubled[tau..tau + n];
            let c: i64 = window
                .iter()
                .zip(&decimated)
                .map(|(&a, &b)| (a * b) as i32)
                .sum::<i32>() as i64;
            let mut h = BTreeMap::new();
            h.insert(c, 1u64);
            h
        })
        .reduce(BTreeMap::new, merge_histograms);
    Ok(CorrelationDistribution {
        m: field.m(),
        d,
        entries,
    })
}

/// Distribution for `d = (2^(2k) + 1)/(2^k + 1)`.
pub fn correlation_distribution_for_k(
    field: &FieldSpec,
    k: u32,
    cap: u32,
) -> Result<CorrelationDistribution> {
    let d = gf2m::decimation_exponent(field.m(), k)?;
    correlation_distribution(field, d, cap)
}

fn merge_histograms<K: Ord + Copy>(
    mut a: BTreeMap<K, u64>,
    b: BTreeMap<K, u64>,
) -> BTreeMap<K, u64> {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

/// Number of ordered `(x, y, z, u)` in GF(2^m)^4 with `x+y+z+u = 1`,
/// `Σ x^(2^k+1) = 0` and `Σ x^(2^2k+1) = 0`.
pub fn a1_bruteforce(field: &FieldSpec, k: u32, cap: u32) -> Result<u64> {
    if field.m() > cap {
        return Err(Error::CostRefused {
            what: format!("A_1 enumeration for m={}", field.m()),
            cost: 1u128 << (3 * field.m()),
            cap,
        });
    }
    let e1 = field.two_pow_plus_one(k);
    let e2 = field.two_pow_plus_one(2 * k);
    let p1: Vec<u32> = field.elements().map(|x| field.pow(x, e1).bits()).collect();
    let p2: Vec<u32> = field.elements().map(|x| field.pow(x, e2).bits()).collect();
    let q = field.size() as u32;
    let count = (0..q)
        .into_par_iter()
        .map(|x| {
            let mut c = 0u64;
            for y in 0..q {
                let sxy = 1 ^ x ^ y;
                let a = p1[x as usize] ^ p1[y as usize];
                let b = p2[x as usize] ^ p2[y as usize];
                for z in 0..q {
                    let u = (sxy ^ z) as usize;
                    let z = z as usize;
                    c += ((a ^ p1[z] ^ p1[u]) == 0 && (b ^ p2[z] ^ p2[u]) == 0) as u64;
                }
            }
            c
        })
        .sum();
    Ok(count)
}

/// `A_1` from the exponential sums, optionally next to the brute count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct A1Report {
    pub m: u32,
    pub k: u32,
    pub formula_value: i64,
    pub brute_count: Option<u64>,
    pub g: i64,
    /// `K'_m`, or `K_m` when `k = 1`.
    pub k_term: i64,
    pub c: i64,
}

impl A1Report {
    pub fn agrees(&self) -> Option<bool> {
        self.brute_count.map(|b| b as i64 == self.formula_value)
    }
}

/// `A_1 = 2^m + 1 + 3 G_m^(k) - 2 K'_m - 2 C_m` for odd `m`, `gcd(k, m) = 1`
/// (with `K_m` in place of `K'_m` when `k = 1`). The brute count is filled
/// in when `m <= brute_cap`.
pub fn a1_formula(field: &FieldSpec, k: u32, brute_cap: Option<u32>) -> Result<A1Report> {
    let m = field.m();
    if m.is_multiple_of(2) || k.gcd(&m) != 1 {
        return Err(Error::Precondition(format!(
            "A_1 formula needs odd m and gcd(k, m) = 1 (m={m}, k={k})"
        )));
    }
    let g = expsums::g_sum(field, k).value;
    let k_term = if k == 1 {
        expsums::kloosterman(field).value
    } else {
        expsums::k_prime(field, k)?.value
    };
    let c = expsums::c_sum(field, k).value;
    let formula_value = (1i64 << m) + 1 + 3 * g - 2 * k_term - 2 * c;
    let brute_count = match brute_cap {
        Some(cap) if m <= cap => Some(a1_bruteforce(field, k, cap)?),
        _ => None,
    };
    Ok(A1Report {
        m,
        k,
        formula_value,
        brute_count,
        g,
        k_term,
        c,
    })
}

/// Multiplicities of the five correlation values `-1`,
/// `-1 ± 2^((m+1)/2)` and the two outer values.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiveValueMultiplicities {
    pub n0: u64,
    pub n1: u64,
    pub n_minus1: u64,
    pub n2: u64,
    pub n_minus2: u64,
}

impl FiveValueMultiplicities {
    pub fn as_tuple(&self) -> (u64, u64, u64, u64, u64) {
        (self.n0, self.n1, self.n_minus1, self.n2, self.n_minus2)
    }

    pub fn total(&self) -> u64 {
        self.n0 + self.n1 + self.n_minus1 + self.n2 + self.n_minus2
    }
}

/// Evaluates the five-valued distribution formulas for odd `m` from `A_1`
/// (separate cases for `3 ∤ m` and `3 | m`).
pub fn theorem1_multiplicities(m: u32, a1: i64) -> Result<FiveValueMultiplicities> {
    if m.is_multiple_of(2) || m < 3 {
        return Err(Error::Precondition(format!(
            "five-valued formulas need odd m >= 3, got {m}"
        )));
    }
    let a1 = a1 as i128;
    let p = |e: u32| 1i128 << e;
    let div = |num: i128, den: i128, what: &str| -> Result<u64> {
        if num % den != 0 || num < 0 {
            return Err(Error::Inconsistent(format!(
                "{what} = {num}/{den} is not a non-negative integer (m={m}, A_1={a1})"
            )));
        }
        Ok((num / den) as u64)
    };
    let n0 = div(16 * (p(m - 1) - 1) + a1, 16, "N_0")?;
    if !m.is_multiple_of(3) {
        let n2 = div(a1, 96, "N_2")?;
        let n_minus1 = div(3 * p(m + 1) - 3 * p((m + 3) / 2) - a1, 24, "N_-1")?;
        let n1 = div(3 * p(m + 1) + 3 * p((m + 3) / 2) - a1, 24, "N_1")?;
        Ok(FiveValueMultiplicities {
            n0,
            n1,
            n_minus1,
            n2,
            n_minus2: n2,
        })
    } else {
        let n_minus2 = div(-3 * p((m + 5) / 2) + a1, 96, "N_-2")?;
        let n2 = div(3 * p((m + 5) / 2) + a1, 96, "N_2")?;
        let n1 = div(3 * p(m + 1) - a1, 24, "N_1")?;
        Ok(FiveValueMultiplicities {
            n0,
            n1,
            n_minus1: n1,
            n2,
            n_minus2,
        })
    }
}

/// Observed distribution sorted into the five buckets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedDistribution {
    pub multiplicities: FiveValueMultiplicities,
    /// `|C + 1|` of the inner pair.
    pub inner_offset: Option<u64>,
    /// `|C + 1|` of the outer pair, when present.
    pub outer_offset: Option<u64>,
}

/// Buckets values by their distance `|C + 1|` from `-1`: distance 0 is
/// `N_0`, the smallest nonzero distance is the inner pair, the next the
/// outer pair; the sign of `C + 1` picks the `±` bucket. The outer
/// distance is read off the data, not assumed.
pub fn classify_distribution(dist: &CorrelationDistribution) -> Result<ClassifiedDistribution> {
    let mut offsets: Vec<u64> = dist
        .entries
        .keys()
        .map(|&v| (v + 1).unsigned_abs())
        .filter(|&o| o != 0)
        .collect();
    offsets.sort_unstable();
    offsets.dedup();
    if offsets.len() > 2 {
        return Err(Error::Inconsistent(format!(
            "more than five correlation values: {:?}",
            dist.values()
        )));
    }
    let inner = offsets.first().copied();
    let outer = offsets.get(1).copied();
    let mut mult = FiveValueMultiplicities {
        n0: 0,
        n1: 0,
        n_minus1: 0,
        n2: 0,
        n_minus2: 0,
    };
    for (&v, &n) in &dist.entries {
        let off = v + 1;
        let slot = match off.unsigned_abs() {
            0 => &mut mult.n0,
            o if Some(o) == inner => {
                if off > 0 {
                    &mut mult.n1
                } else {
                    &mut mult.n_minus1
                }
            }
            _ => {
                if off > 0 {
                    &mut mult.n2
                } else {
                    &mut mult.n_minus2
                }
            }
        };
        *slot += n;
    }
    Ok(ClassifiedDistribution {
        multiplicities: mult,
        inner_offset: inner,
        outer_offset: outer,
    })
}

/// Hamming weight → number of codewords.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    pub m: u32,
    pub k: u32,
    pub entries: BTreeMap<u64, u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn count(&self, weight: u64) -> u64 {
        self.entries.get(&weight).copied().unwrap_or(0)
    }

    /// `Σ A_w = 2^(2m)` and `A_0 = 1`; the latter needs the two exponents
    /// in distinct cyclotomic cosets (fails e.g. for m = 3, k = 1).
    pub fn invariants_hold(&self) -> bool {
        self.total() == 1u64 << (2 * self.m) && self.count(0) == 1
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMode {
    /// Every word `(a, b)` enumerated.
    Direct,
    /// `b ≠ 0` folded onto `b = 1`.
    ViaCorrelation,
}

impl std::str::FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(WeightMode::Direct),
            "via_correlation" | "via-correlation" => Ok(WeightMode::ViaCorrelation),
            other => Err(Error::Precondition(format!(
                "unknown weight mode `{other}`"
            ))),
        }
    }
}

/// Weight distribution of the code of words
/// `c_t = Tr(a α^((2^2k+1)t) + b α^((2^k+1)t))`, `0 <= t < 2^m - 1`.
pub fn weight_distribution(
    field: &FieldSpec,
    k: u32,
    mode: WeightMode,
    cap: u32,
) -> Result<WeightDistribution> {
    let m = field.m();
    if m > cap {
        return Err(Error::CostRefused {
            what: format!("{mode:?} weight enumeration for m={m}"),
            cost: match mode {
                WeightMode::Direct => 1u128 << (3 * m),
                WeightMode::ViaCorrelation => 1u128 << (2 * m + 1),
            },
            cap,
        });
    }
    let n = field.order() as u64;
    let e_outer = field.two_pow_plus_one(2 * k);
    let e_inner = field.two_pow_plus_one(k);
    let outer: Vec<FieldElement> = (0..n)
        .map(|t| field.generator_power(t * e_outer % n))
        .collect();
    let inner: Vec<FieldElement> = (0..n)
        .map(|t| field.generator_power(t * e_inner % n))
        .collect();
    let entries = match mode {
        WeightMode::Direct => direct_weights(field, &outer, &inner),
        WeightMode::ViaCorrelation => {
            let g = (n as u128).gcd(&((e_inner % n.max(1)) as u128));
            if g != 1 && n != 1 {
                return Err(Error::Precondition(format!(
                    "2^{k}+1 shares the factor {g} with 2^{m}-1; b cannot be normalized to 1"
                )));
            }
            folded_weights(field, &outer, &inner)
        }
    };
    Ok(WeightDistribution { m, k, entries })
}

// each word is a bit vector over t; the weight is a popcount
fn direct_weights(
    field: &FieldSpec,
    outer: &[FieldElement],
    inner: &[FieldElement],
) -> BTreeMap<u64, u64> {
    let words = outer.len().div_ceil(64);
    let bits_of = |c: FieldElement, basis: &[FieldElement]| -> Vec<u64> {
        let mut v = vec![0u64; words];
        for (t, &e) in basis.iter().enumerate() {
            if field.trace(field.mul(c, e)) == 1 {
                v[t / 64] |= 1 << (t % 64);
            }
        }
        v
    };
    let a_rows: Vec<Vec<u64>> = field.elements().map(|a| bits_of(a, outer)).collect();
    let b_rows: Vec<Vec<u64>> = field.elements().map(|b| bits_of(b, inner)).collect();
    a_rows
        .par_iter()
        .map(|ar| {
            let mut h = BTreeMap::new();
            for br in &b_rows {
                let w: u32 = ar.iter().zip(br).map(|(x, y)| (x ^ y).count_ones()).sum();
                *h.entry(w as u64).or_default() += 1;
            }
            h
        })
        .reduce(BTreeMap::new, merge_histograms)
}

fn folded_weights(
    field: &FieldSpec,
    outer: &[FieldElement],
    inner: &[FieldElement],
) -> BTreeMap<u64, u64> {
    let n = outer.len() as i64;
    let sum = |a: FieldElement, b: FieldElement| -> i64 {
        outer
            .iter()
            .zip(inner)
            .map(|(&x, &y)| {
                let t = field.trace(field.add(field.mul(a, x), field.mul(b, y)));
                1 - 2 * t as i64
            })
            .sum()
    };
    let weight = |s: i64| ((n - s) / 2) as u64;
    // b = 1 row, scaled by the 2^m - 1 nonzero b
    let mut h = field
        .elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&a| {
            let mut h = BTreeMap::new();
            h.insert(weight(sum(a, FieldElement::ONE)), n as u64);
            h
        })
        .reduce(BTreeMap::new, merge_histograms);
    // b = 0 row
    for a in field.elements() {
        *h.entry(weight(sum(a, FieldElement::ZERO))).or_default() += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(m: u32) -> FieldSpec {
        FieldSpec::new(m).unwrap()
    }

    #[test]
    fn autocorrelation_is_two_level() {
        let f = field(5);
        assert_eq!(cross_correlation(&f, 1, 0).unwrap(), 31);
        for tau in 1..31 {
            assert_eq!(cross_correlation(&f, 1, tau).unwrap(), -1);
        }
    }

    #[test]
    fn sequence_route_matches_field_route() {
        for (m, k) in [(5, 1), (7, 3), (7, 2)] {
            let f = field(m);
            let d = gf2m::decimation_exponent(m, k).unwrap();
            let dist = correlation_distribution(&f, d, 17).unwrap();
            let mut direct = BTreeMap::new();
            for tau in 0..f.order() as u64 {
                *direct
                    .entry(cross_correlation(&f, d, tau).unwrap())
                    .or_insert(0u64) += 1;
            }
            assert_eq!(dist.entries, direct, "m={m} k={k}");
        }
    }

    #[test]
    fn m7_values() {
        let f = field(7);
        for tau in 0..127 {
            let c = cross_correlation(&f, 106, tau).unwrap();
            assert!([-1, -17, 15].contains(&c), "tau={tau} c={c}");
        }
        let a = correlation_distribution(&f, 44, 17).unwrap();
        let b = correlation_distribution(&f, 106, 17).unwrap();
        assert_eq!(a.entries, b.entries);
    }

    #[test]
    fn m5_is_three_valued() {
        let dist = correlation_distribution(&field(5), 12, 17).unwrap();
        assert_eq!(dist.values(), vec![-9, -1, 7]);
        let c = classify_distribution(&dist).unwrap();
        assert_eq!(c.multiplicities.n2, 0);
        assert_eq!(c.multiplicities.n_minus2, 0);
        assert_eq!(c.inner_offset, Some(8));
    }

    #[test]
    fn gcd_precondition() {
        let f = field(4);
        // 3 divides 15
        assert!(matches!(
            cross_correlation(&f, 3, 0),
            Err(Error::Precondition(_))
        ));
        assert!(correlation_distribution(&f, 3, 17).is_err());
        assert!(cross_correlation(&f, 1, 15).is_err());
    }

    #[test]
    fn moments_hold() {
        for m in 2..=9 {
            let f = field(m);
            for d in [1u64, 7, 11, 13] {
                if let Ok(dist) = correlation_distribution(&f, d, 17) {
                    assert!(dist.moments().holds(), "m={m} d={d}: {:?}", dist.moments());
                }
            }
        }
    }

    #[test]
    fn a1_small() {
        assert_eq!(a1_bruteforce(&field(1), 1, 9).unwrap(), 0);
        assert_eq!(a1_bruteforce(&field(5), 1, 9).unwrap(), 0);
        assert_eq!(a1_bruteforce(&field(7), 3, 9).unwrap(), 0);
        assert!(matches!(
            a1_bruteforce(&field(10), 1, 9),
            Err(Error::CostRefused { .. })
        ));
    }

    #[test]
    fn a1_formula_examples() {
        let r = a1_formula(&field(7), 3, Some(9)).unwrap();
        assert_eq!((r.g, r.k_term, r.c), (-41, -13, 16));
        assert_eq!(r.formula_value, 0);
        assert_eq!(r.agrees(), Some(true));
        let r = a1_formula(&field(11), 1, Some(9)).unwrap();
        assert_eq!(r.formula_value, 2112);
        assert_eq!(r.brute_count, None);
        assert_eq!(
            a1_formula(&field(5), 2, Some(9)).unwrap().agrees(),
            Some(true)
        );
        assert!(a1_formula(&field(6), 1, None).is_err());
        assert!(a1_formula(&field(9), 3, None).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let t = theorem1_multiplicities(11, 2112).unwrap();
        assert_eq!(t.as_tuple(), (1155, 440, 408, 22, 22));
        let t = theorem1_multiplicities(7, 0).unwrap();
        assert_eq!(t.as_tuple(), (63, 36, 28, 0, 0));
        assert_eq!(t.total(), 127);
        assert!(matches!(
            theorem1_multiplicities(11, 100),
            Err(Error::Inconsistent(_))
        ));
        assert!(theorem1_multiplicities(8, 0).is_err());
    }

    #[test]
    fn m11_distribution() {
        let dist = correlation_distribution_for_k(&field(11), 1, 17).unwrap();
        let want: BTreeMap<i64, u64> =
            [(-129, 22), (-65, 408), (-1, 1155), (63, 440), (127, 22)].into();
        assert_eq!(dist.entries, want);
        let c = classify_distribution(&dist).unwrap();
        assert_eq!(c.multiplicities, theorem1_multiplicities(11, 2112).unwrap());
        assert_eq!(c.outer_offset, Some(128));
    }

    #[test]
    fn weights_direct_vs_folded() {
        for (m, k) in [(5, 1), (5, 2), (7, 1), (7, 3)] {
            let f = field(m);
            let a = weight_distribution(&f, k, WeightMode::Direct, 8).unwrap();
            let b = weight_distribution(&f, k, WeightMode::ViaCorrelation, 17).unwrap();
            assert!(a.invariants_hold());
            assert_eq!(a, b, "m={m} k={k}");
        }
    }

    #[test]
    fn m7_weights() {
        let w = weight_distribution(&field(7), 1, WeightMode::ViaCorrelation, 17).unwrap();
        let want: BTreeMap<u64, u64> = [(0, 1), (56, 4572), (64, 8255), (72, 3556)].into();
        assert_eq!(w.entries, want);
    }

    #[test]
    fn weight_mode_guards() {
        assert!(weight_distribution(&field(9), 1, WeightMode::Direct, 8).is_err());
        // 2^1 + 1 = 3 divides 2^4 - 1
        assert!(weight_distribution(&field(4), 1, WeightMode::ViaCorrelation, 17).is_err());
        assert_eq!("direct".parse::<WeightMode>().unwrap(), WeightMode::Direct);
        assert!("fast".parse::<WeightMode>().is_err());
    }
}
