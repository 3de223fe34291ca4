//! Reduce a torsion class modulo good primes and compare orders; bad primes
//! are refused with a reason.
//!
//!     cargo run --example modp_cross_check

use torsion_forge::algebra::{int, QPoly, Rationals};
use torsion_forge::jacobian::CurvePoint;
use torsion_forge::modp::{order_by_enumeration, order_mod_p, select_good_primes, ReductionContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = QPoly::from_i64s(Rationals, &[4, -28, 53, -14, 17, -16]);
    let point = CurvePoint::affine(int(0), int(2));
    println!("disc(f) = {}", f.discriminant()?);
    for p in select_good_primes(&f, 18, 6)? {
        let ctx = ReductionContext::new(&f, p, 18)?;
        let fast = order_mod_p(&ctx, &point, 18)?;
        let slow = order_by_enumeration(&ctx, &point, 1000)?;
        println!("p = {p:>3}: order {fast} (enumeration {slow})");
    }
    for p in [3, 7, 37] {
        if let Err(e) = ReductionContext::new(&f, p, 18) {
            println!("p = {p:>3}: {e}");
        }
    }
    Ok(())
}
