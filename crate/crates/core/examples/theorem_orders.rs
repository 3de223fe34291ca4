//! Certify the exact order of the distinguished class for a range of family
//! members, on the integral model.
//!
//!     cargo run --release --example theorem_orders -- 6

use std::time::Instant;

use torsion_forge::algebra::int;
use torsion_forge::families::{build_family, distinguished_point, expected_orders, FamilyParams};
use torsion_forge::torsion::certify_exact_order;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_g: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(5);
    let mut instances = Vec::new();
    for g in 2..=max_g {
        instances.push(FamilyParams::thm_a(g)?);
        instances.push(FamilyParams::thm_b(g)?);
        for t in [2, 3] {
            instances.push(FamilyParams::cor43(g, int(t))?);
        }
        if g % 2 == 1 {
            for beta in [2, 3] {
                instances.push(FamilyParams::thm41(g, int(beta))?);
            }
        }
    }
    for params in instances {
        let start = Instant::now();
        let model = build_family(&params)?;
        let n = expected_orders(&params).exact.expect("theorem families claim an order");
        let point = model.to_integral(&model.marked_point(distinguished_point(params.family())));
        let cert = certify_exact_order(model.integral_curve(), &point, n)?;
        println!(
            "{:<6} g={} t={:<5} beta={:<7} N={:<4} valid={} ({:.2?})",
            params.family(),
            params.g(),
            params.t().map(|t| t.to_string()).unwrap_or_default(),
            params.beta().map(|b| b.to_string()).unwrap_or_default(),
            n,
            cert.valid,
            start.elapsed()
        );
    }
    Ok(())
}
