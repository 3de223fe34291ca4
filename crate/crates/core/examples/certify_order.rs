//! Certify an exact order and print the certificate as JSON, then show what a
//! wrong claim looks like.
//!
//!     cargo run --example certify_order

use torsion_forge::families::{build_family, FamilyParams, MarkedPoint};
use torsion_forge::modp::{cross_check, select_good_primes};
use torsion_forge::torsion::certify_exact_order;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = build_family(&FamilyParams::thm_a(3)?)?;
    let curve = model.integral_curve();
    let point = model.to_integral(&model.marked_point(MarkedPoint::P0));

    let mut cert = certify_exact_order(curve, &point, 40)?;
    let primes = select_good_primes(curve.f(), 40, 3)?;
    cert.attach_modp(&cross_check(curve.f(), &point, 40, &primes)?);
    println!("{}", serde_json::to_string_pretty(&cert)?);

    let wrong = certify_exact_order(curve, &point, 80)?;
    println!("claim 80: valid = {}", wrong.valid);
    for check in wrong.checks.iter().filter(|c| !c.pass) {
        println!("  failed {}", check.name);
    }
    Ok(())
}
