//! Cross-correlation of an m-sequence with its decimation by
//! `d = (2^(2k)+1)/(2^k+1)`: single shifts, full distributions and moments.
//!
//! ```text
//! cargo run --release --example correlation_distribution [m]
//! ```

use gf2verify::crosscorr;
use gf2verify::gf2m;
use gf2verify::FieldSpec;

fn main() -> gf2verify::Result<()> {
    let m: u32 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(11);
    let f = FieldSpec::new(m)?;

    let d = gf2m::decimation_exponent(m, 1)?;
    println!("m={m}, d={d}");
    for tau in 0..4 {
        println!(
            "  C_d({tau}) = {}",
            crosscorr::cross_correlation(&f, d, tau)?
        );
    }

    for k in 1..=3 {
        let dist = match crosscorr::correlation_distribution_for_k(
            &f,
            k,
            crosscorr::DEFAULT_CORRELATION_CAP,
        ) {
            Ok(d) => d,
            Err(e) => {
                println!("k={k}: {e}");
                continue;
            }
        };
        let moments = dist.moments();
        println!("k={k} d={}: {:?}", dist.d, dist.entries);
        println!(
            "  sum N = {}, sum vN = {}, sum v^2 N = {} (identities hold: {})",
            moments.count,
            moments.first,
            moments.second,
            moments.holds()
        );
        if let Ok(c) = crosscorr::classify_distribution(&dist) {
            println!(
                "  buckets {:?}, outer |C+1| = {:?}",
                c.multiplicities.as_tuple(),
                c.outer_offset
            );
        }
    }
    Ok(())
}
