//! Evaluate the function with divisor `l * D` at the conjugate marked points
//! and compare with its closed forms.
//!
//!     cargo run --example l_certificate -- 6

use torsion_forge::families::{build_family, Family, FamilyParams};
use torsion_forge::torsion::evaluate_l_certificate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_g: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(5);
    for family in [Family::ThmA, Family::ThmB] {
        for g in 2..=max_g {
            let model = build_family(&FamilyParams::from_parts(family, g, None, None)?)?;
            let cert = evaluate_l_certificate(&model)?;
            println!(
                "{family} g={g}: L(P1') = {}  L(P0') = {}  closed forms {}  identity {}  coprime {}",
                cert.l_p1, cert.l_p0, cert.closed_form_pass, cert.identity_pass, cert.coprime_pass
            );
        }
    }
    Ok(())
}
