//! Builds the cyclic and two-dimensional tent peg codes and reports their parameters.

use cws_graph::gf2m::make_field;
use cws_graph::tentpeg::{
    build_cr_default, build_cu_default, min_distance_bruteforce, min_distance_upto, pattern_scan_templates,
    DEFAULT_TABLE_BUDGET,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for r in 2..=4 {
        let field = make_field(2 * r)?;
        let choice = field.find_primitive_mod3()?;
        let code = build_cr_default(r)?;
        let d = if code.k() <= 20 {
            min_distance_bruteforce(&code, 24)?.map(|d| d.to_string())
        } else {
            min_distance_upto(&code, 4, DEFAULT_TABLE_BUDGET)?.map(|(w, _)| w.to_string())
        };
        let clean = pattern_scan_templates(&code).is_clean();
        println!(
            "C_{r}: [{}, {}, {}] over GF(2^{}), alpha = g^{}, log(1 + alpha) = {}, pattern-free: {clean}",
            code.n(),
            code.k(),
            d.unwrap_or_else(|| "?".into()),
            2 * r,
            choice.exponent,
            choice.log_one_plus,
        );
    }
    let cu = build_cu_default(1)?;
    let (d, word) = min_distance_upto(&cu, 6, DEFAULT_TABLE_BUDGET)?.expect("a weight-6 codeword exists");
    println!(
        "C_U: [{}, {}, {d}], lightest codeword support {:?}",
        cu.n(),
        cu.k(),
        word.support()
    );
    Ok(())
}
