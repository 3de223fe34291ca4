//! The two relations between the marked classes, the matrix they form, and the
//! resulting bound on both orders.
//!
//!     cargo run --example relation_matrix -- 12

use torsion_forge::algebra::int;
use torsion_forge::families::{build_family, expected_orders, FamilyParams};
use torsion_forge::torsion::verify_relation_matrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_g: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(6);
    println!("{:<6} {:>2} {:>22} {:>6} {:>6}", "family", "g", "matrix", "bound", "exact");
    for g in 2..=max_g {
        let mut all = vec![FamilyParams::thm_a(g)?, FamilyParams::thm_b(g)?, FamilyParams::cor43(g, int(2))?];
        if g % 2 == 1 {
            all.push(FamilyParams::thm41(g, int(2))?);
        }
        for params in all {
            let e = expected_orders(&params);
            let m = e.matrix;
            let shown = format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1]);
            println!("{:<6} {:>2} {:>22} {:>6} {:>6}", params.family().id(), g, shown, e.bound, e.exact.unwrap_or(0));
        }
    }
    // verify both rows as divisor-class identities on a small member
    let model = build_family(&FamilyParams::thm_b(4)?)?;
    println!("thmB g=4 rows hold: {:?}", verify_relation_matrix(&model)?);
    Ok(())
}
