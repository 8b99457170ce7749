//! L-polynomials of curves over F_q with exact integer coefficients.
//!
//! An [`LPolynomial`] is `L(t) = Σ σ_j t^j = Π (1 - ω_i t)` with `σ_0 = 1`.
//! Power sums `P_s = Σ ω_i^s` come from Newton's identities, so nothing
//! here ever extracts a root except the optional numeric modulus check.
//! All arithmetic is on `BigInt`: `P_200` of a degree-60 polynomial is far
//! past 64 bits.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Integer polynomial with constant term 1.
///
/// Equality compares coefficients and `q`; the genus hint is metadata.
#[derive(Clone, Debug)]
pub struct LPolynomial {
    coeffs: Vec<BigInt>,
    q: u64,
    genus_hint: Option<usize>,
}

impl PartialEq for LPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.coeffs == other.coeffs
    }
}

impl Eq for LPolynomial {}

impl LPolynomial {
    /// Builds `Σ coeffs[j] t^j`. Trailing zeros are dropped.
    pub fn new(mut coeffs: Vec<BigInt>, q: u64) -> Result<Self> {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.first() != Some(&BigInt::one()) {
            return Err(Error::Inconsistent(format!(
                "L-polynomial constant term must be 1, got {:?}",
                coeffs.first().map(|c| c.to_string())
            )));
        }
        Ok(LPolynomial {
            coeffs,
            q,
            genus_hint: None,
        })
    }

    pub fn from_i64(coeffs: &[i64], q: u64) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), q)
    }

    /// The constant polynomial 1.
    pub fn one(q: u64) -> Self {
        LPolynomial {
            coeffs: vec![BigInt::one()],
            q,
            genus_hint: Some(0),
        }
    }

    /// Attaches a genus; requires degree `2g` and the functional equation.
    pub fn with_genus(mut self, g: usize) -> Result<Self> {
        let verdict = self.functional_equation_check(g);
        if !verdict.holds {
            return Err(Error::Inconsistent(format!(
                "not the L-polynomial of a genus-{g} curve: {}",
                verdict.detail
            )));
        }
        self.genus_hint = Some(g);
        Ok(self)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus_hint(&self) -> Option<usize> {
        self.genus_hint
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `σ_j`, zero past the degree.
    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    /// `P_1 ..= P_{s_max}` by Newton's identities.
    pub fn power_sums(&self, s_max: usize) -> PowerSumSequence {
        let r = self.degree();
        let mut p: Vec<BigInt> = Vec::with_capacity(s_max);
        for j in 1..=s_max {
            let mut acc = BigInt::zero();
            for i in 1..j.min(r + 1) {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &p[j - i - 1];
                }
            }
            if j <= r {
                acc += &self.coeffs[j] * BigInt::from(j);
            }
            p.push(-acc);
        }
        PowerSumSequence(p)
    }

    /// Point count over F_{q^s} predicted by `q^s + 1 - P_s`.
    pub fn predicted_count(&self, s: usize) -> BigInt {
        assert!(s >= 1, "extension degree starts at 1");
        let ps = self.power_sums(s);
        BigInt::from(self.q).pow(s as u32) + 1 - ps.get(s)
    }

    pub fn mul(&self, other: &LPolynomial) -> LPolynomial {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        let genus_hint = match (self.genus_hint, other.genus_hint) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        LPolynomial {
            genus_hint,
            ..LPolynomial::new(out, self.q).expect("product of monic-at-zero polynomials")
        }
    }

    /// Exact quotient `self / divisor`; errors with the remainder when the
    /// division is not exact over the integers.
    pub fn divide_exact(&self, divisor: &LPolynomial) -> Result<LPolynomial> {
        // divisor has constant term 1, so long division from the low end
        // stays integral; the result is exact iff the remainder is zero.
        let n = self.degree();
        let d = divisor.degree();
        if d > n {
            return Err(Error::InexactDivision {
                remainder: self.coeffs.iter().map(|c| c.to_string()).collect(),
            });
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - d + 1];
        for i in 0..=(n - d) {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * b;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision {
                remainder: rem.iter().map(|c| c.to_string()).collect(),
            });
        }
        let genus_hint = match (self.genus_hint, divisor.genus_hint) {
            (Some(a), Some(b)) if a >= b => Some(a - b),
            _ => None,
        };
        Ok(LPolynomial {
            genus_hint,
            ..LPolynomial::new(quot, self.q)?
        })
    }

    /// Checks `σ_{2g-j} = q^{g-j} σ_j` for `0 <= j <= g` and `deg = 2g`.
    pub fn functional_equation_check(&self, g: usize) -> FunctionalEquationVerdict {
        if self.degree() != 2 * g {
            return FunctionalEquationVerdict {
                holds: false,
                detail: format!("degree {} is not 2g = {}", self.degree(), 2 * g),
            };
        }
        let q = BigInt::from(self.q);
        for j in 0..=g {
            let lhs = &self.coeffs[2 * g - j];
            let rhs = q.pow((g - j) as u32) * &self.coeffs[j];
            if *lhs != rhs {
                return FunctionalEquationVerdict {
                    holds: false,
                    detail: format!(
                        "sigma_{} = {lhs} but q^{}*sigma_{j} = {rhs}",
                        2 * g - j,
                        g - j
                    ),
                };
            }
        }
        FunctionalEquationVerdict {
            holds: true,
            detail: format!("sigma_(2g-j) = q^(g-j) sigma_j for all j <= {g}"),
        }
    }

    /// Moduli of the reciprocal roots `ω_i`, computed numerically.
    pub fn reciprocal_root_moduli(&self) -> Vec<f64> {
        // L(t) = M(t^e) when every exponent in the support is a multiple of e
        let e = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(0usize, |acc, (i, _)| acc.gcd(&i))
            .max(1);
        let reduced: Vec<f64> = self
            .coeffs
            .iter()
            .step_by(e)
            .map(|c| c.to_f64().expect("finite"))
            .collect();
        let mut out = Vec::with_capacity(self.degree());
        for root in polynomial_roots(&reduced) {
            let m = root.norm().powf(-1.0 / e as f64);
            out.extend(std::iter::repeat_n(m, e));
        }
        out
    }

    /// One line per factor, coefficients from `t^0` upward.
    pub fn to_line(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for LPolynomial {
    /// Highest degree first, like `8t^6 - 4t^3 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if j == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// `P_1, P_2, ...` of some L-polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumSequence(Vec<BigInt>);

impl PowerSumSequence {
    /// `P_s` for `1 <= s <= len`.
    pub fn get(&self, s: usize) -> &BigInt {
        &self.0[s - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.0
    }

    /// Elementwise sum; power sums of a product add.
    pub fn add(&self, other: &PowerSumSequence) -> PowerSumSequence {
        PowerSumSequence(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionalEquationVerdict {
    pub holds: bool,
    pub detail: String,
}

/// Rebuilds the L-polynomial of a genus-`g` curve from `N_1 ..= N_g`.
///
/// Newton's identities give `σ_1 ..= σ_g` from `P_s = q^s + 1 - N_s`; the
/// functional equation supplies the upper half.
pub fn reconstruct_from_counts(counts: &[i64], q: u64, g: usize) -> Result<LPolynomial> {
    if counts.len() < g {
        return Err(Error::Precondition(format!(
            "genus {g} needs {g} point counts, got {}",
            counts.len()
        )));
    }
    let qb = BigInt::from(q);
    let p: Vec<BigInt> = (1..=g)
        .map(|s| qb.pow(s as u32) + 1 - BigInt::from(counts[s - 1]))
        .collect();
    let mut sigma = vec![BigInt::zero(); 2 * g + 1];
    sigma[0] = BigInt::one();
    for j in 1..=g {
        // j σ_j = -(P_j + σ_1 P_{j-1} + ... + σ_{j-1} P_1)
        let mut acc = p[j - 1].clone();
        for i in 1..j {
            acc += &sigma[i] * &p[j - i - 1];
        }
        let (quo, rem) = (-acc).div_rem(&BigInt::from(j));
        if !rem.is_zero() {
            return Err(Error::Inconsistent(format!(
                "sigma_{j} is not an integer; the counts do not come from a genus-{g} curve"
            )));
        }
        sigma[j] = quo;
    }
    for j in 0..g {
        sigma[2 * g - j] = qb.pow((g - j) as u32) * &sigma[j];
    }
    let l = LPolynomial::new(sigma, q)?;
    if l.degree() != 2 * g {
        return Err(Error::Inconsistent(format!(
            "reconstructed degree {} != 2g",
            l.degree()
        )));
    }
    l.with_genus(g)
}

/// Outcome of [`vanishing_residue_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueVerdict {
    pub holds: bool,
    pub modulus: usize,
    pub bound: usize,
    /// First `j` with `j mod r != 0` and `σ_j != 0`.
    pub first_nonzero_coeff: Option<usize>,
    /// First `s <= bound` with `s mod r != 0` and `P_s != 0`.
    pub first_nonzero_power_sum: Option<usize>,
}

/// Verifies `P_s = 0` for every `s <= bound` not divisible by `modulus`,
/// together with the structural reason: `σ_j = 0` whenever `modulus ∤ j`.
pub fn vanishing_residue_check(l: &LPolynomial, modulus: usize, bound: usize) -> ResidueVerdict {
    assert!(modulus >= 1);
    let first_nonzero_coeff = (1..=l.degree()).find(|&j| j % modulus != 0 && !l.coeff(j).is_zero());
    let ps = l.power_sums(bound);
    let first_nonzero_power_sum = (1..=bound).find(|&s| s % modulus != 0 && !ps.get(s).is_zero());
    ResidueVerdict {
        holds: first_nonzero_coeff.is_none() && first_nonzero_power_sum.is_none(),
        modulus,
        bound,
        first_nonzero_coeff,
        first_nonzero_power_sum,
    }
}

/// `S_s^1 = 2^(1 + δ)`, `δ = 0` when `3 ∤ s` and `2` otherwise.
pub fn s1(s: usize) -> i64 {
    let delta = if s.is_multiple_of(3) { 2 } else { 0 };
    1 << (1 + delta)
}

/// `P_s` of `(t^2 + t + 1)^2 (1 - t)^4`, the factor separating the singular
/// degree-58 curve from its nonsingular model.
pub fn singular_correction_sums(s: usize) -> BigInt {
    catalog::singular_factor()
        .expand()
        .power_sums(s)
        .get(s)
        .clone()
}

/// Parses the L-polynomial file format: one factor per line, coefficients
/// from `t^0` upward separated by whitespace, `#` starts a comment line.
pub fn parse_lpoly_file(text: &str, q: u64) -> Result<Vec<LPolynomial>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coeffs = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<BigInt>().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("`{tok}` is not an integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let l = LPolynomial::new(coeffs, q).map_err(|e| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?;
        out.push(l);
    }
    if out.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no factors".into(),
        });
    }
    Ok(out)
}

/// An L-polynomial kept as the product of its printed factors.
#[derive(Clone, Debug)]
pub struct FactoredLPolynomial {
    pub name: String,
    pub factors: Vec<LPolynomial>,
    pub genus: Option<usize>,
}

impl FactoredLPolynomial {
    pub fn expand(&self) -> LPolynomial {
        let q = self.factors.first().map(|f| f.q()).unwrap_or(2);
        let mut acc = LPolynomial::one(q);
        for f in &self.factors {
            acc = acc.mul(f);
        }
        acc.genus_hint = self.genus;
        acc
    }

    pub fn to_file_string(&self) -> String {
        let mut s = format!("# {}\n", self.name);
        for f in &self.factors {
            s.push_str(&f.to_line());
            s.push('\n');
        }
        s
    }
}

pub mod catalog {
    //! L-polynomials of the curves behind the exponential sums, stored in
    //! factored form exactly as printed.

    use super::*;

    pub const Z1: &str = include_str!("../data/z1.lpoly");
    pub const Z2: &str = include_str!("../data/z2.lpoly");
    pub const Z3: &str = include_str!("../data/z3.lpoly");
    pub const Z4: &str = include_str!("../data/z4.lpoly");
    pub const L1_PRIME: &str = include_str!("../data/l1prime.lpoly");
    pub const L3_PRIME: &str = include_str!("../data/l3prime.lpoly");
    pub const SINGULAR_CORRECTION: &str = include_str!("../data/singular_correction.lpoly");

    /// Nonzero coefficients of the expanded `L_1' = L_1 / L_2`, as printed,
    /// highest degree first.
    pub const L1_PRIME_EXPANDED: [(usize, i64); 21] = [
        (60, 1073741824),
        (57, 268435456),
        (54, 83886080),
        (51, -100663296),
        (48, -27262976),
        (45, -9437184),
        (42, 4784128),
        (39, 1179648),
        (36, 573440),
        (33, -212992),
        (30, -41984),
        (27, -26624),
        (24, 8960),
        (21, 2304),
        (18, 1168),
        (15, -288),
        (12, -104),
        (9, -48),
        (6, 5),
        (3, 2),
        (0, 1),
    ];

    /// Catalog names accepted by [`by_name`].
    pub const NAMES: [&str; 7] = ["L1", "L2", "L3", "L4", "L1prime", "L3prime", "singular"];

    fn load(name: &str, text: &str, genus: Option<usize>) -> FactoredLPolynomial {
        FactoredLPolynomial {
            name: name.to_string(),
            factors: parse_lpoly_file(text, 2).expect("catalog data parses"),
            genus,
        }
    }

    /// `L_1`: genus 31, four factors.
    pub fn l1() -> FactoredLPolynomial {
        load("L1", Z1, Some(31))
    }

    /// `L_2 = 2t^2 + t + 1`, the Kloosterman cubic.
    pub fn l2() -> FactoredLPolynomial {
        load("L2", Z2, Some(1))
    }

    /// `L_3`: genus 5, three factors.
    pub fn l3() -> FactoredLPolynomial {
        load("L3", Z3, Some(5))
    }

    /// `L_4 = 4t^4 + 2t^3 + t + 1`.
    pub fn l4() -> FactoredLPolynomial {
        load("L4", Z4, Some(2))
    }

    pub fn l1_prime() -> FactoredLPolynomial {
        load("L1prime", L1_PRIME, Some(30))
    }

    pub fn l3_prime() -> FactoredLPolynomial {
        load("L3prime", L3_PRIME, Some(3))
    }

    pub fn singular_factor() -> FactoredLPolynomial {
        load("singular", SINGULAR_CORRECTION, None)
    }

    pub fn by_name(name: &str) -> Result<FactoredLPolynomial> {
        match name {
            "L1" => Ok(l1()),
            "L2" => Ok(l2()),
            "L3" => Ok(l3()),
            "L4" => Ok(l4()),
            "L1prime" => Ok(l1_prime()),
            "L3prime" => Ok(l3_prime()),
            "singular" => Ok(singular_factor()),
            other => Err(Error::UnknownCatalogEntry(other.to_string())),
        }
    }
}

/// All complex roots of `Σ c_j z^j` (Aberth–Ehrlich iteration followed by
/// Newton polishing). Roots are assumed simple.
fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    // geometric mean of root moduli is |c_0|^(1/n); start on that circle
    let radius = monic[0].abs().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius,
                0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64,
            )
        })
        .collect();
    for _ in 0..1000 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1e-300));
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*zi);
            if dp.norm() == 0.0 {
                break;
            }
            *zi -= p / dp;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(c: &[i64]) -> LPolynomial {
        LPolynomial::from_i64(c, 2).unwrap()
    }

    fn ints(ps: &PowerSumSequence) -> Vec<i64> {
        ps.values().iter().map(|v| v.to_i64().unwrap()).collect()
    }

    // Oracle: power sums from the numeric roots.
    fn numeric_power_sums(l: &LPolynomial, s_max: usize) -> Vec<f64> {
        let c: Vec<f64> = l.coeffs().iter().map(|c| c.to_f64().unwrap()).collect();
        let roots = polynomial_roots(&c);
        (1..=s_max)
            .map(|s| {
                roots
                    .iter()
                    .map(|r| r.inv().powi(s as i32))
                    .sum::<Complex64>()
                    .re
            })
            .collect()
    }

    #[test]
    fn rejects_bad_constant_term() {
        assert!(LPolynomial::from_i64(&[2, 1], 2).is_err());
        assert!(LPolynomial::from_i64(&[], 2).is_err());
    }

    #[test]
    fn newton_hand_values() {
        assert_eq!(ints(&lp(&[1, 1, 2]).power_sums(3)), vec![-1, -3, 5]);
        assert_eq!(lp(&[1, 1, 0, 2, 4]).power_sums(7).get(7), &BigInt::from(41));
        assert_eq!(ints(&LPolynomial::one(2).power_sums(5)), vec![0; 5]);
        assert_eq!(
            ints(&lp(&[1, 0, 0, -4, 0, 0, 8]).power_sums(5)),
            vec![0, 0, 12, 0, 0]
        );
    }

    #[test]
    fn newton_matches_numeric_roots() {
        for l in [
            catalog::l3().expand(),
            catalog::l4().expand(),
            catalog::l2().expand(),
        ] {
            let exact = l.power_sums(12);
            for (s, approx) in numeric_power_sums(&l, 12).into_iter().enumerate() {
                let e = exact.get(s + 1).to_f64().unwrap();
                assert!(
                    (e - approx).abs() < 1e-6,
                    "s={} exact={e} approx={approx}",
                    s + 1
                );
            }
        }
    }

    #[test]
    fn predicted_counts() {
        let l2 = catalog::l2().expand();
        assert_eq!(l2.predicted_count(1), BigInt::from(4));
        assert_eq!(l2.predicted_count(2), BigInt::from(8));
        assert_eq!(catalog::l4().expand().predicted_count(1), BigInt::from(4));
    }

    #[test]
    fn catalog_division() {
        let l1 = catalog::l1().expand();
        let l2 = catalog::l2().expand();
        let q = l1.divide_exact(&l2).unwrap();
        assert_eq!(q, catalog::l1_prime().expand());
        for (deg, c) in catalog::L1_PRIME_EXPANDED {
            assert_eq!(q.coeff(deg), BigInt::from(c), "t^{deg}");
        }
        let nonzero = q.coeffs().iter().filter(|c| !c.is_zero()).count();
        assert_eq!(nonzero, catalog::L1_PRIME_EXPANDED.len());
        let l3p = catalog::l3()
            .expand()
            .divide_exact(&catalog::l4().expand())
            .unwrap();
        assert_eq!(l3p, lp(&[1, 0, 0, -4, 0, 0, 8]));
        assert_eq!(l3p.to_string(), "8t^6 - 4t^3 + 1");
        assert_eq!(l2.divide_exact(&LPolynomial::one(2)).unwrap(), l2);
    }

    #[test]
    fn inexact_division_reports_remainder() {
        let err = catalog::l4()
            .expand()
            .divide_exact(&lp(&[1, 1, 2]))
            .unwrap_err();
        assert!(matches!(err, Error::InexactDivision { .. }));
    }

    #[test]
    fn functional_equations() {
        assert!(lp(&[1, 1, 2]).functional_equation_check(1).holds);
        assert!(lp(&[1, 1, 0, 2, 4]).functional_equation_check(2).holds);
        assert!(catalog::l1().expand().functional_equation_check(31).holds);
        assert!(catalog::l3().expand().functional_equation_check(5).holds);
        assert!(!lp(&[1, 1, 3]).functional_equation_check(1).holds);
        assert!(!lp(&[1, 1, 2]).functional_equation_check(2).holds);
        for f in catalog::l1().factors {
            assert!(f.functional_equation_check(f.degree() / 2).holds, "{f}");
        }
    }

    #[test]
    fn reconstruction() {
        assert_eq!(reconstruct_from_counts(&[4], 2, 1).unwrap(), lp(&[1, 1, 2]));
        for l in [catalog::l2(), catalog::l4(), catalog::l3()] {
            let exp = l.expand();
            let g = l.genus.unwrap();
            let counts: Vec<i64> = (1..=g)
                .map(|s| exp.predicted_count(s).to_i64().unwrap())
                .collect();
            assert_eq!(reconstruct_from_counts(&counts, 2, g).unwrap(), exp);
        }
        // N_1 = 4, N_2 = 3 gives σ_2 = 3/2
        assert!(matches!(
            reconstruct_from_counts(&[4, 3], 2, 2),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn residue_checks() {
        let v = vanishing_residue_check(&catalog::l1_prime().expand(), 3, 200);
        assert!(v.holds, "{v:?}");
        let l3p = catalog::l3_prime().expand();
        assert!(vanishing_residue_check(&l3p, 3, 60).holds);
        let v = vanishing_residue_check(&catalog::l4().expand(), 3, 20);
        assert!(!v.holds);
        assert_eq!(v.first_nonzero_coeff, Some(1));
        assert_eq!(v.first_nonzero_power_sum, Some(1));
    }

    #[test]
    fn singular_factor_sums() {
        assert_eq!(singular_correction_sums(1), BigInt::from(2));
        assert_eq!(singular_correction_sums(2), BigInt::from(2));
        assert_eq!(singular_correction_sums(3), BigInt::from(8));
        assert_eq!(s1(1), 2);
        assert_eq!(s1(3), 8);
        assert_eq!(s1(6), 8);
    }

    #[test]
    fn catalog_roots_on_the_critical_circle() {
        let sqrt2 = 2f64.sqrt();
        for name in ["L1", "L2", "L3", "L4"] {
            for f in catalog::by_name(name).unwrap().factors {
                for m in f.reciprocal_root_moduli() {
                    assert!(
                        (m - sqrt2).abs() < 1e-9,
                        "{name}: factor {f} has |omega| = {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn lpoly_file_format() {
        let parsed = parse_lpoly_file("# c\n1 1 2\n\n1 0 0 2 4\n", 2).unwrap();
        assert_eq!(parsed.len(), 2);
        assert!(matches!(
            parse_lpoly_file("1 x\n", 2),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_lpoly_file("3 1\n", 2),
            Err(Error::Parse { line: 1, .. })
        ));
        let l3 = catalog::l3();
        let again = parse_lpoly_file(&l3.to_file_string(), 2).unwrap();
        assert_eq!(again, l3.factors);
    }

    #[test]
    fn power_sums_of_products_add() {
        for fp in [catalog::l1(), catalog::l3()] {
            let whole = fp.expand().power_sums(40);
            let summed = fp
                .factors
                .iter()
                .map(|f| f.power_sums(40))
                .reduce(|a, b| a.add(&b))
                .unwrap();
            assert_eq!(whole, summed);
        }
    }

    fn small_l() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-20i64..=20, 0..8).prop_map(|mut v| {
            v.insert(0, 1);
            v
        })
    }

    proptest! {
        // σ(t) P(t) + t σ'(t) = 0 through degree s_max
        #[test]
        fn newton_series_identity(c in small_l()) {
            let l = lp(&c);
            let s_max = 16;
            let p = l.power_sums(s_max);
            for n in 1..=s_max {
                let mut coef = BigInt::from(n as i64) * l.coeff(n);
                for j in 1..=n {
                    coef += l.coeff(n - j) * p.get(j);
                }
                prop_assert!(coef.is_zero(), "degree {}", n);
            }
        }

        #[test]
        fn product_power_sums_add(a in small_l(), b in small_l()) {
            let (la, lb) = (lp(&a), lp(&b));
            let prod = la.mul(&lb);
            prop_assert_eq!(prod.power_sums(12), la.power_sums(12).add(&lb.power_sums(12)));
            prop_assert_eq!(prod.divide_exact(&lb).unwrap(), la);
        }
    }
}
