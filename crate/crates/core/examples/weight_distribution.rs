//! Weight distribution of the binary cyclic code with two nonzeros, by
//! direct enumeration and by folding onto the correlation sweep.
//!
//! ```text
//! cargo run --release --example weight_distribution
//! ```

use gf2verify::crosscorr::{self, WeightMode};
use gf2verify::FieldSpec;

fn main() -> gf2verify::Result<()> {
    let f7 = FieldSpec::new(7)?;
    let direct = crosscorr::weight_distribution(&f7, 1, WeightMode::Direct, 8)?;
    let folded = crosscorr::weight_distribution(&f7, 1, WeightMode::ViaCorrelation, 17)?;
    println!("m=7 direct: {:?}", direct.entries);
    println!(
        "m=7 folded: {:?} (equal: {})",
        folded.entries,
        direct == folded
    );

    let f11 = FieldSpec::new(11)?;
    for k in [1, 3] {
        let w = crosscorr::weight_distribution(&f11, k, WeightMode::ViaCorrelation, 17)?;
        println!("m=11 k={k}: total {} words", w.total());
        for (weight, count) in &w.entries {
            println!("  A_{weight} = {count}");
        }
    }
    Ok(())
}
