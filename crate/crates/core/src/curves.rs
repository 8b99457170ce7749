//! Plane curves over F_2: sparse trivariate polynomials, projective point
//! counts over F_{2^s}, formal partials and singular points.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2m::{FieldElement, FieldSpec};
use crate::zeta;

/// Default bound on `s` for the generic counters (cost ~ 4^s per monomial).
pub const DEFAULT_COUNT_CAP: u32 = 12;

/// Default bound on `s` for the quadratic-in-y counter (cost ~ 2^s).
pub const DEFAULT_FAST_COUNT_CAP: u32 = 24;

/// Exponents `(a, b, c)` of `x^a y^b z^c`.
pub type Monomial = [u32; 3];

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }
}

/// A polynomial over F_2 in `x, y, z`, stored as its set of monomials.
///
/// Inserting a monomial that is already present removes it.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TrivariatePoly {
    monomials: BTreeSet<Monomial>,
}

impl TrivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomials([[0, 0, 0]])
    }

    pub fn from_monomials(monomials: impl IntoIterator<Item = Monomial>) -> Self {
        let mut p = Self::zero();
        for m in monomials {
            p.toggle(m);
        }
        p
    }

    /// Adds one monomial with coefficient 1 (so a duplicate cancels).
    pub fn toggle(&mut self, m: Monomial) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    #[allow(clippy::len_without_is_empty)] // `is_zero` is the emptiness test
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.monomials.iter().map(|m| m[0] + m[1] + m[2]).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.monomials.iter().map(|m| m[v.index()]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.monomials.iter().map(|m| m[0] + m[1] + m[2]);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add(&self, other: &TrivariatePoly) -> TrivariatePoly {
        let monomials = self
            .monomials
            .symmetric_difference(&other.monomials)
            .copied()
            .collect();
        TrivariatePoly { monomials }
    }

    pub fn multiply(&self, other: &TrivariatePoly) -> TrivariatePoly {
        let mut out = TrivariatePoly::zero();
        for a in &self.monomials {
            for b in &other.monomials {
                out.toggle([a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> TrivariatePoly {
        let mut acc = TrivariatePoly::one();
        for _ in 0..e {
            acc = acc.multiply(self);
        }
        acc
    }

    /// `z^degree · f(x/z, y/z)` for a polynomial `f` in `x, y` only.
    pub fn homogenize(&self, degree: u32) -> Result<TrivariatePoly> {
        if self.monomials.iter().any(|m| m[2] != 0) {
            return Err(Error::Precondition(
                "homogenize expects a polynomial in x and y only".into(),
            ));
        }
        let top = self.degree().unwrap_or(0);
        if degree < top {
            return Err(Error::Precondition(format!(
                "target degree {degree} is below the total degree {top}"
            )));
        }
        Ok(TrivariatePoly::from_monomials(
            self.monomials
                .iter()
                .map(|m| [m[0], m[1], degree - m[0] - m[1]]),
        ))
    }

    /// Sets `z = 1`.
    pub fn dehomogenize(&self) -> TrivariatePoly {
        TrivariatePoly::from_monomials(self.monomials.iter().map(|m| [m[0], m[1], 0]))
    }

    /// Applies a coordinate permutation: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: [usize; 3]) -> TrivariatePoly {
        TrivariatePoly::from_monomials(self.monomials.iter().map(|m| {
            let mut out = [0; 3];
            for i in 0..3 {
                out[perm[i]] = m[i];
            }
            out
        }))
    }

    pub fn evaluate(&self, field: &FieldSpec, point: [FieldElement; 3]) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for m in &self.monomials {
            let t = field.mul(
                field.mul(
                    field.pow(point[0], m[0] as u64),
                    field.pow(point[1], m[1] as u64),
                ),
                field.pow(point[2], m[2] as u64),
            );
            acc = field.add(acc, t);
        }
        acc
    }

    /// Formal partial derivative; coefficients are reduced mod 2, so even
    /// exponents vanish.
    pub fn formal_derivative(&self, v: Var) -> TrivariatePoly {
        let i = v.index();
        TrivariatePoly::from_monomials(self.monomials.iter().filter(|m| m[i] % 2 == 1).map(|m| {
            let mut d = *m;
            d[i] -= 1;
            d
        }))
    }

    /// Splits `P = y^2 A + y B + C` with `A, B, C` free of `y`; `None` if
    /// `P` has degree above 2 in `y`.
    pub fn split_quadratic_in_y(&self) -> Option<[TrivariatePoly; 3]> {
        let mut parts = [
            TrivariatePoly::zero(),
            TrivariatePoly::zero(),
            TrivariatePoly::zero(),
        ];
        for m in &self.monomials {
            if m[1] > 2 {
                return None;
            }
            parts[2 - m[1] as usize].toggle([m[0], 0, m[2]]);
        }
        Some(parts)
    }

    /// Projective zeros over `field`, one normalized representative each.
    pub fn projective_points(&self, field: &FieldSpec, cap: u32) -> Result<Vec<ProjectivePoint>> {
        self.require_homogeneous()?;
        check_cost("projective point listing", field.m(), cap, self.len())?;
        let mut pts: Vec<ProjectivePoint> = ProjectivePoint::all(field)
            .filter(|p| self.evaluate(field, p.0).is_zero())
            .collect();
        pts.sort();
        Ok(pts)
    }

    /// Number of projective zeros over `field` by direct enumeration of
    /// the charts `(x:y:1)`, `(x:1:0)`, `(1:0:0)`.
    pub fn count_projective_points(&self, field: &FieldSpec, cap: u32) -> Result<u64> {
        self.require_homogeneous()?;
        check_cost("projective point count", field.m(), cap, self.len())?;
        let one = FieldElement::ONE;
        let zero = FieldElement::ZERO;
        let mons: Vec<Monomial> = self.monomials.iter().copied().collect();
        let affine: u64 = (0..field.size())
            .into_par_iter()
            .map(|xb| {
                let x = field.element(xb as u32).expect("in range");
                let xpows: Vec<FieldElement> =
                    mons.iter().map(|m| field.pow(x, m[0] as u64)).collect();
                field
                    .elements()
                    .filter(|&y| {
                        let mut acc = zero;
                        for (m, &xp) in mons.iter().zip(&xpows) {
                            acc = field.add(acc, field.mul(xp, field.pow(y, m[1] as u64)));
                        }
                        acc.is_zero()
                    })
                    .count() as u64
            })
            .sum();
        let at_infinity = field
            .elements()
            .filter(|&x| self.evaluate(field, [x, one, zero]).is_zero())
            .count() as u64;
        let corner = self.evaluate(field, [one, zero, zero]).is_zero() as u64;
        Ok(affine + at_infinity + corner)
    }

    /// Same count as [`count_projective_points`](Self::count_projective_points)
    /// for curves of degree at most 2 in `y`, solving the quadratic per `x`
    /// in the chart `z = 1`: `y^2 + y = β` has two roots iff `Tr(β) = 0`.
    pub fn count_projective_points_fast(&self, field: &FieldSpec, cap: u32) -> Result<u64> {
        self.require_homogeneous()?;
        if field.m() > cap {
            return Err(Error::CostRefused {
                what: "quadratic-in-y point count".into(),
                cost: (self.len() as u128) << field.m(),
                cap,
            });
        }
        let [a_part, b_part, c_part] = self
            .split_quadratic_in_y()
            .ok_or_else(|| Error::Precondition("curve has degree above 2 in y".into()))?;
        let one = FieldElement::ONE;
        let zero = FieldElement::ZERO;
        let q = field.size();
        let eval_x = |p: &TrivariatePoly, x: FieldElement| -> FieldElement {
            p.monomials
                .iter()
                .fold(zero, |acc, m| field.add(acc, field.pow(x, m[0] as u64)))
        };
        let affine: u64 = (0..q)
            .into_par_iter()
            .map(|xb| {
                let x = field.element(xb as u32).expect("in range");
                let a = eval_x(&a_part, x);
                let b = eval_x(&b_part, x);
                let c = eval_x(&c_part, x);
                match (a.is_zero(), b.is_zero()) {
                    (true, true) => {
                        if c.is_zero() {
                            q
                        } else {
                            0
                        }
                    }
                    (true, false) | (false, true) => 1,
                    (false, false) => {
                        // a y^2 + b y + c = 0, y = (b/a) w  =>  w^2 + w = ac/b^2
                        let beta = field.mul(field.mul(a, c), field.inv_nonzero(field.square(b)));
                        if field.trace(beta) == 0 {
                            2
                        } else {
                            0
                        }
                    }
                }
            })
            .sum();
        let at_infinity = field
            .elements()
            .filter(|&x| self.evaluate(field, [x, one, zero]).is_zero())
            .count() as u64;
        let corner = self.evaluate(field, [one, zero, zero]).is_zero() as u64;
        Ok(affine + at_infinity + corner)
    }

    /// Projective points over `field` where the curve and all three formal
    /// partials vanish.
    pub fn singular_points(&self, field: &FieldSpec, cap: u32) -> Result<Vec<ProjectivePoint>> {
        self.require_homogeneous()?;
        check_cost("singular point search", field.m(), cap, 4 * self.len())?;
        let partials = [
            self.formal_derivative(Var::X),
            self.formal_derivative(Var::Y),
            self.formal_derivative(Var::Z),
        ];
        let mut pts: Vec<ProjectivePoint> = ProjectivePoint::all(field)
            .filter(|p| {
                self.evaluate(field, p.0).is_zero()
                    && partials.iter().all(|d| d.evaluate(field, p.0).is_zero())
            })
            .collect();
        pts.sort();
        Ok(pts)
    }

    fn require_homogeneous(&self) -> Result<()> {
        if self.is_homogeneous() {
            Ok(())
        } else {
            Err(Error::Precondition(
                "projective counting needs a homogeneous polynomial".into(),
            ))
        }
    }

    /// Parses the curve file format: one monomial per line as `a b c`,
    /// `#` starts a comment line.
    pub fn parse_curve_file(text: &str) -> Result<TrivariatePoly> {
        let mut p = TrivariatePoly::zero();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>().map_err(|_| Error::Parse {
                        line: i + 1,
                        msg: format!("`{t}` is not a non-negative integer"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if nums.len() != 3 {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected 3 exponents, found {}", nums.len()),
                });
            }
            p.toggle([nums[0], nums[1], nums[2]]);
        }
        Ok(p)
    }

    pub fn to_curve_file(&self, comment: &str) -> String {
        let mut s = String::new();
        for line in comment.lines() {
            s.push_str("# ");
            s.push_str(line);
            s.push('\n');
        }
        for m in self.monomials.iter().rev() {
            s.push_str(&format!("{} {} {}\n", m[0], m[1], m[2]));
        }
        s
    }
}

impl fmt::Display for TrivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for m in self.monomials.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m == &[0, 0, 0] {
                write!(f, "1")?;
                continue;
            }
            for (v, &e) in ["x", "y", "z"].iter().zip(m) {
                match e {
                    0 => {}
                    1 => write!(f, "{v}")?,
                    _ => write!(f, "{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TrivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TrivariatePoly({self})")
    }
}

fn check_cost(what: &str, s: u32, cap: u32, per_point: usize) -> Result<()> {
    if s > cap {
        return Err(Error::CostRefused {
            what: what.into(),
            cost: (per_point.max(1) as u128) << (2 * s),
            cap,
        });
    }
    Ok(())
}

/// A projective point, normalized so its last nonzero coordinate is 1.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint(pub [FieldElement; 3]);

impl ProjectivePoint {
    /// From coordinate bit patterns, normalizing by the last nonzero one.
    pub fn new(field: &FieldSpec, coords: [u32; 3]) -> Result<Self> {
        let c = [
            field.element(coords[0])?,
            field.element(coords[1])?,
            field.element(coords[2])?,
        ];
        let pivot = c
            .iter()
            .rev()
            .find(|e| !e.is_zero())
            .copied()
            .ok_or_else(|| Error::Precondition("(0:0:0) is not a projective point".into()))?;
        let inv = field.inv_nonzero(pivot);
        Ok(ProjectivePoint([
            field.mul(c[0], inv),
            field.mul(c[1], inv),
            field.mul(c[2], inv),
        ]))
    }

    /// Every point of the projective plane over `field`, chart by chart.
    pub fn all(field: &FieldSpec) -> impl Iterator<Item = ProjectivePoint> + '_ {
        let one = FieldElement::ONE;
        let zero = FieldElement::ZERO;
        let affine = field
            .elements()
            .flat_map(move |x| field.elements().map(move |y| ProjectivePoint([x, y, one])));
        let line = field
            .elements()
            .map(move |x| ProjectivePoint([x, one, zero]));
        affine
            .chain(line)
            .chain(std::iter::once(ProjectivePoint([one, zero, zero])))
    }

    pub fn bits(&self) -> [u32; 3] {
        [self.0[0].bits(), self.0[1].bits(), self.0[2].bits()]
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}:{}:{})",
            self.0[0].bits(),
            self.0[1].bits(),
            self.0[2].bits()
        )
    }
}

/// How the point count of a (possibly singular) catalog curve relates to
/// the count `q^s + 1 - P_s(L)` of the nonsingular model.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CountCorrection {
    /// Nonsingular: counts agree.
    Exact,
    /// One singular point absorbs two places of the model.
    MinusOne,
    /// Subtract `S_s^1 = 2^(1+δ)`.
    MinusS1,
    /// Subtract `S_s^1`, then add the `2^s` points `(1:y:1)` of the line `x = z`.
    TrivialComponent,
}

impl CountCorrection {
    pub fn label(self) -> &'static str {
        match self {
            CountCorrection::Exact => "exact",
            CountCorrection::MinusOne => "minus_one",
            CountCorrection::MinusS1 => "minus_s1",
            CountCorrection::TrivialComponent => "trivial_component",
        }
    }

    pub fn apply(self, nonsingular: &BigInt, s: usize) -> BigInt {
        match self {
            CountCorrection::Exact => nonsingular.clone(),
            CountCorrection::MinusOne => nonsingular - 1,
            CountCorrection::MinusS1 => nonsingular - zeta::s1(s),
            CountCorrection::TrivialComponent => nonsingular - zeta::s1(s) + (BigInt::from(1) << s),
        }
    }

    /// Inverse of [`apply`](Self::apply).
    pub fn undo(self, singular: &BigInt, s: usize) -> BigInt {
        match self {
            CountCorrection::Exact => singular.clone(),
            CountCorrection::MinusOne => singular + 1,
            CountCorrection::MinusS1 => singular + zeta::s1(s),
            CountCorrection::TrivialComponent => singular + zeta::s1(s) - (BigInt::from(1) << s),
        }
    }
}

/// One curve of the catalog with what is known about it.
#[derive(Clone, Debug)]
pub struct CurveCatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub polynomial: TrivariatePoly,
    /// F_2-rational singular points as stated; `None` when not stated.
    pub expected_singular_points: Option<Vec<[u32; 3]>>,
    /// Name in [`zeta::catalog`].
    pub l_polynomial_name: &'static str,
    pub correction: CountCorrection,
}

impl CurveCatalogEntry {
    /// Count predicted from the catalog L-polynomial after the correction.
    pub fn predicted_count(&self, s: usize) -> BigInt {
        let l = zeta::catalog::by_name(self.l_polynomial_name)
            .expect("catalog names are consistent")
            .expand();
        self.correction.apply(&l.predicted_count(s), s)
    }
}

pub mod catalog {
    //! The curves behind `K_m`, `K'_m` (k = 3), `G_m` and `G_m^(3)`.

    use super::*;

    pub const FBAR3: &str = include_str!("../data/fbar3.curve");
    pub const P1TILDE: &str = include_str!("../data/p1tilde.curve");
    pub const KLOOSTERMAN: &str = include_str!("../data/kloosterman.curve");
    pub const P3: &str = include_str!("../data/p3.curve");
    pub const P4: &str = include_str!("../data/p4.curve");

    pub const NAMES: [&str; 5] = ["fbar3", "p1tilde", "kloosterman", "p3", "p4"];

    fn parse(text: &str) -> TrivariatePoly {
        TrivariatePoly::parse_curve_file(text).expect("catalog curve parses")
    }

    pub fn entry(name: &str) -> Result<CurveCatalogEntry> {
        let e = match name {
            "fbar3" => CurveCatalogEntry {
                name: "fbar3",
                description: "x^8z^58 + z^66 + (y^2+yz)(x^64 + x^57z^7 + x^8z^56 + xz^63)",
                polynomial: parse(FBAR3),
                expected_singular_points: None,
                l_polynomial_name: "L1",
                correction: CountCorrection::TrivialComponent,
            },
            "p1tilde" => CurveCatalogEntry {
                name: "p1tilde",
                description: "degree-58 component of fbar3, genus 31",
                polynomial: parse(P1TILDE),
                expected_singular_points: None,
                l_polynomial_name: "L1",
                correction: CountCorrection::MinusS1,
            },
            "kloosterman" => CurveCatalogEntry {
                name: "kloosterman",
                description: "x^2z + z^3 + (y^2+yz)x, genus 1",
                polynomial: parse(KLOOSTERMAN),
                expected_singular_points: Some(vec![]),
                l_polynomial_name: "L2",
                correction: CountCorrection::Exact,
            },
            "p3" => CurveCatalogEntry {
                name: "p3",
                description: "x^10 + (y^2+yz)xz^7 + z^10, genus 5",
                polynomial: parse(P3),
                expected_singular_points: Some(vec![[0, 1, 0]]),
                l_polynomial_name: "L3",
                correction: CountCorrection::MinusOne,
            },
            "p4" => CurveCatalogEntry {
                name: "p4",
                description: "x^4 + xy^2z + xyz^2 + z^4, genus 2",
                polynomial: parse(P4),
                expected_singular_points: Some(vec![[0, 1, 0]]),
                l_polynomial_name: "L4",
                correction: CountCorrection::MinusOne,
            },
            other => return Err(Error::UnknownCatalogEntry(other.to_string())),
        };
        Ok(e)
    }

    pub fn all() -> Vec<CurveCatalogEntry> {
        NAMES
            .iter()
            .map(|n| entry(n).expect("known name"))
            .collect()
    }

    /// `x^(2^k) + 1 + (y^2 + y)(x^(2^2k) + x^(2^2k - 2^k + 1) + x^(2^k) + x)`:
    /// `Tr(f(v)) = 0` with `f` the rational map of the `K'_m` sum, cleared
    /// of denominators.
    pub fn affine_kprime_curve(k: u32) -> TrivariatePoly {
        let a = 1u32 << k;
        let b = 1u32 << (2 * k);
        let mut p = TrivariatePoly::from_monomials([[a, 0, 0], [0, 0, 0]]);
        for e in [b, b - a + 1, a, 1] {
            p.toggle([e, 2, 0]);
            p.toggle([e, 1, 0]);
        }
        p
    }

    /// `x^(2^k + 2) + (y^2 + y) x + 1`, from `x^(2^k+1) + 1/x = y^2 + y`.
    pub fn affine_g_curve(k: u32) -> TrivariatePoly {
        TrivariatePoly::from_monomials([[(1 << k) + 2, 0, 0], [1, 2, 0], [1, 1, 0], [0, 0, 0]])
    }

    /// `x^2 + 1 + (y^2 + y) x`, from `x + 1/x = y^2 + y`.
    pub fn affine_kloosterman_curve() -> TrivariatePoly {
        TrivariatePoly::from_monomials([[2, 0, 0], [0, 0, 0], [1, 2, 0], [1, 1, 0]])
    }

    /// The line `x + z`.
    pub fn trivial_line() -> TrivariatePoly {
        TrivariatePoly::from_monomials([[1, 0, 0], [0, 0, 1]])
    }

    /// Smallest `e` in `1..=max_e` with `(x + z)^e · p1tilde = fbar3`.
    pub fn trivial_component_multiplicity(max_e: u32) -> Option<u32> {
        let target = parse(FBAR3);
        let base = parse(P1TILDE);
        let line = trivial_line();
        let mut acc = base;
        for e in 1..=max_e {
            acc = acc.multiply(&line);
            if acc == target {
                return Some(e);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(m: u32) -> FieldSpec {
        FieldSpec::new(m).unwrap()
    }

    fn poly(ms: &[Monomial]) -> TrivariatePoly {
        TrivariatePoly::from_monomials(ms.iter().copied())
    }

    #[test]
    fn set_semantics() {
        let p = poly(&[[1, 0, 0], [1, 0, 0], [0, 1, 0]]);
        assert_eq!(p, poly(&[[0, 1, 0]]));
        let xz = catalog::trivial_line();
        assert_eq!(xz.multiply(&xz), poly(&[[2, 0, 0], [0, 0, 2]]));
        assert_eq!(xz.multiply(&TrivariatePoly::one()), xz);
        assert!(xz.add(&xz).is_zero());
    }

    #[test]
    fn homogenize_examples() {
        let g = catalog::affine_kloosterman_curve();
        assert_eq!(
            g.homogenize(3).unwrap(),
            catalog::entry("kloosterman").unwrap().polynomial
        );
        assert_eq!(
            g.homogenize(3).unwrap().to_string(),
            "x^2z + xy^2 + xyz + z^3"
        );
        let q = catalog::affine_g_curve(1);
        assert_eq!(
            q.homogenize(4).unwrap(),
            catalog::entry("p4").unwrap().polynomial
        );
        assert_eq!(
            catalog::affine_g_curve(3).homogenize(10).unwrap(),
            catalog::entry("p3").unwrap().polynomial
        );
        assert_eq!(
            catalog::affine_kprime_curve(3).homogenize(66).unwrap(),
            catalog::entry("fbar3").unwrap().polynomial
        );
        assert!(g.homogenize(2).is_err());
        assert!(catalog::entry("p4")
            .unwrap()
            .polynomial
            .homogenize(5)
            .is_err());
        for k in 1..=3 {
            let h = catalog::affine_kprime_curve(k)
                .homogenize((1 << (2 * k)) + 2)
                .unwrap();
            assert!(h.is_homogeneous());
            assert_eq!(h.dehomogenize(), catalog::affine_kprime_curve(k));
            let (a, b) = (1u32 << k, 1u32 << (2 * k));
            // x^(2^k) z^(2^2k - 2^k + 2) and z^(2^2k + 2) lead the pattern
            assert!(h.monomials().any(|m| *m == [a, 0, b - a + 2]));
            assert!(h.monomials().any(|m| *m == [0, 0, b + 2]));
            assert!(h.monomials().any(|m| *m == [1, 1, b]));
        }
    }

    #[test]
    fn derivatives() {
        assert!(poly(&[[2, 0, 0]]).formal_derivative(Var::X).is_zero());
        assert_eq!(
            poly(&[[3, 0, 0]]).formal_derivative(Var::X),
            poly(&[[2, 0, 0]])
        );
        let g = catalog::entry("kloosterman").unwrap().polynomial;
        assert_eq!(g.formal_derivative(Var::Y), poly(&[[1, 0, 1]]));
    }

    #[test]
    fn evaluate_basics() {
        let f = field(4);
        let z = FieldElement::ZERO;
        let g = catalog::entry("kloosterman").unwrap().polynomial;
        assert!(g.evaluate(&f, [z, z, z]).is_zero());
        assert_eq!(
            TrivariatePoly::one().evaluate(&f, [z, z, z]),
            FieldElement::ONE
        );
        let f2 = field(1);
        let one = FieldElement::ONE;
        assert!(g.evaluate(&f2, [one, z, one]).is_zero());
        // homogeneity
        let p3 = catalog::entry("p3").unwrap().polynomial;
        for lam in f.nonzero_elements() {
            for pt in ProjectivePoint::all(&f).step_by(7) {
                let scaled = [
                    f.mul(lam, pt.0[0]),
                    f.mul(lam, pt.0[1]),
                    f.mul(lam, pt.0[2]),
                ];
                assert_eq!(
                    p3.evaluate(&f, scaled),
                    f.mul(f.pow(lam, 10), p3.evaluate(&f, pt.0))
                );
            }
        }
    }

    #[test]
    fn hand_counts_over_f2() {
        let f = field(1);
        let g = catalog::entry("kloosterman").unwrap().polynomial;
        assert_eq!(g.count_projective_points(&f, 12).unwrap(), 4);
        let pts: Vec<[u32; 3]> = g
            .projective_points(&f, 12)
            .unwrap()
            .iter()
            .map(|p| p.bits())
            .collect();
        assert_eq!(pts.len(), 4);
        for want in [[1, 0, 1], [1, 1, 1], [1, 0, 0], [0, 1, 0]] {
            assert!(pts.contains(&want), "{want:?}");
        }
        let p4 = catalog::entry("p4").unwrap().polynomial;
        assert_eq!(p4.count_projective_points(&f, 12).unwrap(), 3);
    }

    #[test]
    fn total_point_bound_and_plane_size() {
        for s in 1..=4 {
            let f = field(s);
            assert_eq!(
                ProjectivePoint::all(&f).count() as u64,
                f.size() * f.size() + f.size() + 1
            );
            for e in catalog::all() {
                let n = e.polynomial.count_projective_points(&f, 12).unwrap();
                assert!(n <= f.size() * f.size() + f.size() + 1);
            }
        }
    }

    #[test]
    fn fast_counter_agrees_with_generic() {
        for s in 1..=7 {
            let f = field(s);
            for e in catalog::all() {
                let slow = e.polynomial.count_projective_points(&f, 12).unwrap();
                let fast = e.polynomial.count_projective_points_fast(&f, 24).unwrap();
                assert_eq!(slow, fast, "{} s={s}", e.name);
            }
        }
        let cubic_in_y = poly(&[[0, 3, 0], [3, 0, 0]]);
        assert!(cubic_in_y
            .count_projective_points_fast(&field(3), 24)
            .is_err());
    }

    #[test]
    fn permutation_invariance() {
        let perms = [[1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        for s in 1..=5 {
            let f = field(s);
            for name in ["kloosterman", "p3", "p4"] {
                let p = catalog::entry(name).unwrap().polynomial;
                let n = p.count_projective_points(&f, 12).unwrap();
                for perm in perms {
                    assert_eq!(p.permute(perm).count_projective_points(&f, 12).unwrap(), n);
                }
            }
        }
    }

    #[test]
    fn singular_points_of_small_curves() {
        for s in 1..=6 {
            let f = field(s);
            for name in ["kloosterman", "p3", "p4"] {
                let e = catalog::entry(name).unwrap();
                let got: Vec<[u32; 3]> = e
                    .polynomial
                    .singular_points(&f, 12)
                    .unwrap()
                    .iter()
                    .map(|p| p.bits())
                    .collect();
                assert_eq!(
                    &got,
                    e.expected_singular_points.as_ref().unwrap(),
                    "{name} s={s}"
                );
            }
        }
    }

    #[test]
    fn cost_refusal_and_homogeneity_guard() {
        let f = field(13);
        let g = catalog::entry("kloosterman").unwrap().polynomial;
        assert!(matches!(
            g.count_projective_points(&f, 12),
            Err(Error::CostRefused { .. })
        ));
        assert!(matches!(
            g.singular_points(&f, 12),
            Err(Error::CostRefused { .. })
        ));
        let inhom = catalog::affine_kloosterman_curve();
        assert!(inhom.count_projective_points(&field(2), 12).is_err());
    }

    #[test]
    fn trivial_component() {
        assert_eq!(catalog::trivial_component_multiplicity(8), Some(8));
        let p1 = catalog::entry("p1tilde").unwrap().polynomial;
        assert_eq!(p1.len(), 29);
        assert!(p1.is_homogeneous());
        assert_eq!(p1.degree(), Some(58));
        // p1tilde misses every point (1:y:1) of the line x = z
        let f = field(4);
        for y in f.elements() {
            assert!(!p1
                .evaluate(&f, [FieldElement::ONE, y, FieldElement::ONE])
                .is_zero());
        }
    }

    #[test]
    fn curve_file_format() {
        let p = TrivariatePoly::parse_curve_file("# c\n2 0 1\n0 0 3\n\n1 2 0\n1 1 1\n").unwrap();
        assert_eq!(p, catalog::entry("kloosterman").unwrap().polynomial);
        assert_eq!(
            TrivariatePoly::parse_curve_file(&p.to_curve_file("again")).unwrap(),
            p
        );
        assert!(matches!(
            TrivariatePoly::parse_curve_file("1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            TrivariatePoly::parse_curve_file("1 -2 0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        // duplicate lines cancel
        assert!(TrivariatePoly::parse_curve_file("1 1 1\n1 1 1\n")
            .unwrap()
            .is_zero());
    }

    #[test]
    fn correction_round_trip() {
        for c in [
            CountCorrection::Exact,
            CountCorrection::MinusOne,
            CountCorrection::MinusS1,
            CountCorrection::TrivialComponent,
        ] {
            for s in 1..=6 {
                let n = BigInt::from(1000);
                assert_eq!(c.undo(&c.apply(&n, s), s), n);
            }
        }
    }
}
