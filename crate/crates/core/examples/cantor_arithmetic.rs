//! Divisor-class arithmetic in Mumford form on a genus 2 curve over Q.
//!
//!     cargo run --example cantor_arithmetic

use torsion_forge::algebra::{int, QPoly, Rationals};
use torsion_forge::jacobian::{CurvePoint, HyperellipticCurve};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let curve = HyperellipticCurve::new(QPoly::from_i64s(Rationals, &[4, -28, 53, -14, 17, -16]))?;
    println!("y^2 = {}", curve.f());
    let d0 = curve.divisor_from_point(&CurvePoint::affine(int(0), int(2)))?;
    let d1 = curve.divisor_from_point(&CurvePoint::affine(int(1), int(4)))?;

    let sum = curve.add(&d0, &d1)?;
    println!("D0 + D1 = (u, v) = ({}, {})", sum.u(), sum.v());
    let mut acc = curve.zero();
    for k in 1..=18 {
        acc = curve.add(&acc, &d0)?;
        println!("{k:>2} D0: u = {}", acc.u());
    }
    assert!(acc.is_zero());
    // subtraction and scalar multiplication agree with repeated addition
    assert_eq!(curve.sub(&curve.scalar_mul(5, &d0)?, &d0)?, curve.scalar_mul(4, &d0)?);
    assert_eq!(curve.scalar_mul(-7, &d0)?, curve.negate(&curve.scalar_mul(7, &d0)?)?);
    Ok(())
}
