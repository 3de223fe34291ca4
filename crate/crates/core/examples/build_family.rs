//! Build a family member, print the rational and integral models and the
//! marked points.
//!
//!     cargo run --example build_family -- cor43 3 2

use torsion_forge::algebra::parse_rational;
use torsion_forge::algebra::Rational;
use torsion_forge::families::{build_family, Family, FamilyParams, MarkedPoint};
use torsion_forge::jacobian::CurvePoint;

fn show(p: &CurvePoint<Rational>) -> String {
    match p {
        CurvePoint::Affine { x, y } => format!("({x}, {y})"),
        CurvePoint::Infinity => "oo".into(),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family: Family = args.first().map(|s| s.parse()).transpose()?.unwrap_or(Family::ThmA);
    let g: u32 = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let extra = args.get(2).map(|s| parse_rational(s)).transpose()?;
    let (t, beta) = match family {
        Family::Thm41 => (None, extra),
        _ => (extra, None),
    };
    let params = FamilyParams::from_parts(family, g, t, beta)?;
    let model = build_family(&params)?;

    println!("{family} g={g}");
    println!("  A(x)   = {}", model.a_poly());
    println!("  lambda = {}", model.lambda());
    println!("  f(x)   = {}", model.f());
    println!("  c      = {}   (Y = c y)", model.scale_c());
    println!("  c^2 f  = {}", model.f_int());
    for m in MarkedPoint::ALL {
        let p = model.marked_point(m);
        println!("  {:<3} = {:<14} integral {}", m.name(), show(&p), show(&model.to_integral(&p)));
    }
    Ok(())
}
