//! L-polynomials: power sums via Newton's identities, predicted counts,
//! reconstruction from counts, and the vanishing of `P_s(L1')` for `3 ∤ s`.
//!
//! ```text
//! cargo run --release --example zeta_functions
//! ```

use gf2verify::zeta::{self, catalog};

fn main() -> gf2verify::Result<()> {
    for name in catalog::NAMES {
        let fl = catalog::by_name(name)?;
        let l = fl.expand();
        let ps = l.power_sums(6);
        let sums: Vec<String> = ps.values().iter().map(|p| p.to_string()).collect();
        println!(
            "{name}: degree {}, genus {:?}, P_1..6 = [{}]",
            l.degree(),
            fl.genus,
            sums.join(", ")
        );
        if let Some(g) = fl.genus {
            let moduli = l.reciprocal_root_moduli();
            let worst = moduli
                .iter()
                .map(|r| (r - 2f64.sqrt()).abs())
                .fold(0.0, f64::max);
            println!(
                "  functional equation: {}, max ||w| - sqrt 2| = {worst:.1e}",
                l.functional_equation_check(g).holds
            );
        }
    }

    let l4 = catalog::l4().expand();
    let counts: Vec<i64> = (1..=2)
        .map(|s| i64::try_from(l4.predicted_count(s)).expect("small"))
        .collect();
    println!(
        "N_1, N_2 of L4 = {counts:?}; reconstructed {}",
        zeta::reconstruct_from_counts(&counts, 2, 2)?
    );

    let l1p = catalog::l1_prime().expand();
    let v = zeta::vanishing_residue_check(&l1p, 3, 200);
    println!("L1' = {l1p}");
    println!("P_s(L1') = 0 for all 3 ∤ s <= 200: {}", v.holds);
    println!(
        "S_s^1 for s = 1..6: {:?}",
        (1..=6).map(zeta::s1).collect::<Vec<_>>()
    );
    Ok(())
}
