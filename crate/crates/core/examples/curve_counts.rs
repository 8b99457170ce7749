//! Projective point counts of the catalog curves against the counts their
//! L-polynomials predict, plus singular points and the `(x+z)^e` factor.
//!
//! ```text
//! cargo run --release --example curve_counts
//! ```

use gf2verify::curves::{self, Var};
use gf2verify::FieldSpec;

fn main() -> gf2verify::Result<()> {
    for entry in curves::catalog::all() {
        let poly = &entry.polynomial;
        println!(
            "{} (degree {:?}, {} monomials, L = {}, correction {})",
            entry.name,
            poly.degree(),
            poly.len(),
            entry.l_polynomial_name,
            entry.correction.label()
        );
        let f2 = FieldSpec::new(1)?;
        let sing: Vec<String> = poly
            .singular_points(&f2, 12)?
            .iter()
            .map(|p| p.to_string())
            .collect();
        println!(
            "  singular over F_2: {sing:?}; d/dy = {}",
            poly.formal_derivative(Var::Y)
        );
        for s in 1..=6 {
            let f = FieldSpec::new(s)?;
            let n = poly.count_projective_points_fast(&f, 24)?;
            println!(
                "  s={s}: {n:>5} points, predicted {}",
                entry.predicted_count(s as usize)
            );
        }
    }
    println!(
        "(x+z)^e * p1tilde = fbar3 for e = {:?}",
        curves::catalog::trivial_component_multiplicity(8)
    );
    Ok(())
}
