//! GF(2^m) arithmetic: elements, inverses, Frobenius, trace, and a custom
//! reduction polynomial loaded from TOML.
//!
//! ```text
//! cargo run --example field_arithmetic
//! ```

use gf2verify::gf2m::{self, FieldConfig, FieldSpec};

fn main() -> gf2verify::Result<()> {
    let f = FieldSpec::new(8)?;
    println!(
        "GF(2^8) reduced by {:#x}, tables: {}",
        f.reduction(),
        f.has_tables()
    );

    let a = f.element(0x57)?;
    let b = f.element(0x83)?;
    println!("0x57 * 0x83 = {:#04x}", f.mul(a, b).bits());
    println!("0x57^-1     = {:#04x}", f.inv(a)?.bits());
    println!("Frob^3(0x57) = {:#04x}", f.frobenius(a, 3).bits());
    println!(
        "Tr(0x57) = {}, by definition {}",
        f.trace(a),
        f.trace_by_definition(a)
    );

    let alpha = f.generator();
    println!("alpha = {:#x}, log(0x57) = {:?}", alpha.bits(), f.log(a));

    let balanced = f.elements().filter(|&x| f.trace(x) == 0).count();
    println!("{balanced} of {} elements have trace 0", f.size());

    for (m, k) in [(5, 1), (7, 1), (7, 3), (11, 1)] {
        println!("d(m={m}, k={k}) = {}", gf2m::decimation_exponent(m, k)?);
    }

    let config = FieldConfig::from_toml_str("[reduction]\n7 = \"0x89\"\n")?;
    let g = FieldSpec::from_config(7, &config)?;
    println!("GF(2^7) from config reduced by {:#x}", g.reduction());

    match FieldSpec::with_reduction(4, 0x1f) {
        Ok(_) => println!("unexpectedly accepted x^4+x^3+x^2+x+1"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
