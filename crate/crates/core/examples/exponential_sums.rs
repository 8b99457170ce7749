//! Kloosterman, C, G and K' sums by enumeration, and the two equalities
//! `K'_m = K_m` and `G^(k)_m = G^(gcd(k,m))_m`.
//!
//! ```text
//! cargo run --release --example exponential_sums
//! ```

use gf2verify::expsums;
use gf2verify::FieldSpec;

fn main() -> gf2verify::Result<()> {
    println!(
        "{:>3} {:>6} {:>6} {:>6} {:>6} {:>6}",
        "m", "K", "C", "G", "G3", "K'(3)"
    );
    for m in 1..=16 {
        let f = FieldSpec::new(m)?;
        let kp = match expsums::k_prime(&f, 3) {
            Ok(r) => r.value.to_string(),
            Err(_) => "-".into(),
        };
        println!(
            "{m:>3} {:>6} {:>6} {:>6} {:>6} {kp:>6}",
            expsums::kloosterman(&f).value,
            expsums::c_sum(&f, 1).value,
            expsums::g_sum(&f, 1).value,
            expsums::g_sum(&f, 3).value,
        );
    }

    for m in [7, 10, 13] {
        let f = FieldSpec::new(m)?;
        let c2 = expsums::conjecture2_check(&f, 3)?;
        let c1 = expsums::conjecture1_check(&f, 3);
        println!(
            "m={m}: K'={} K={} {:?}; G3={} G={} {:?}",
            c2.lhs, c2.rhs, c2.verdict, c1.lhs, c1.rhs, c1.verdict
        );
    }

    for m in (1..=11).step_by(2) {
        let f = FieldSpec::new(m)?;
        println!(
            "C_{m}: enumerated {}, closed form {:?}",
            expsums::c_sum(&f, 1).value,
            expsums::c_sum_closed_form(m)
        );
    }
    Ok(())
}
