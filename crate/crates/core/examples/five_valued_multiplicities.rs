//! The solution count `A_1`: brute force next to the exponential-sum
//! formula, then the five multiplicities it predicts compared with an
//! observed correlation distribution.
//!
//! ```text
//! cargo run --release --example five_valued_multiplicities
//! ```

use gf2verify::crosscorr;
use gf2verify::FieldSpec;

fn main() -> gf2verify::Result<()> {
    for (m, k) in [(5, 1), (5, 2), (7, 1), (7, 3), (9, 2)] {
        let f = FieldSpec::new(m)?;
        let r = crosscorr::a1_formula(&f, k, Some(crosscorr::DEFAULT_A1_CAP))?;
        println!(
            "m={m} k={k}: G={} K/K'={} C={} -> A_1 = {} (brute {:?})",
            r.g, r.k_term, r.c, r.formula_value, r.brute_count
        );
    }

    for m in [7, 9, 11, 13] {
        let f = FieldSpec::new(m)?;
        let a1 = crosscorr::a1_formula(&f, 1, None)?.formula_value;
        let predicted = crosscorr::theorem1_multiplicities(m, a1)?;
        let dist =
            crosscorr::correlation_distribution_for_k(&f, 1, crosscorr::DEFAULT_CORRELATION_CAP)?;
        let observed = crosscorr::classify_distribution(&dist)?;
        println!(
            "m={m}: A_1={a1} predicted {:?} observed {:?} values {:?}",
            predicted.as_tuple(),
            observed.multiplicities.as_tuple(),
            dist.values()
        );
    }
    Ok(())
}
