//! Exact arithmetic: rationals, odd prime fields and dense univariate
//! polynomials over either.

mod field;
pub mod numtheory;
mod poly;

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

pub use field::{Field, FieldTag, PrimeField, Rationals};
pub use poly::Polynomial;

/// Arbitrary-precision rational in canonical reduced form (positive
/// denominator, zero is `0/1`). Displays as `"num/den"`, or `"num"` when the
/// denominator is one.
pub type Rational = BigRational;

pub type QPoly = Polynomial<Rationals>;
pub type FpPoly = Polynomial<PrimeField>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live over different fields ({lhs} vs {rhs})")]
    FieldMismatch { lhs: FieldTag, rhs: FieldTag },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division left a nonzero remainder")]
    NonExactDivision,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("discriminant of a constant polynomial is undefined")]
    ConstantDiscriminant,
    #[error("{0} is not an odd prime below 2^62")]
    InvalidModulus(u64),
    #[error("cannot parse rational number from {0:?}")]
    ParseRational(String),
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den`, reduced. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let err = || AlgebraError::ParseRational(s.to_string());
    let t = s.trim();
    let r = match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(t.parse().map_err(|_| err())?),
    };
    Ok(r)
}

/// Clear denominators of `f` by rescaling `y`.
///
/// Returns `(g, c)` where `g = c^2 * f` has integer coefficients and `c` is the
/// smallest positive integer with that property. The map `(x, y) -> (x, c*y)`
/// sends points of `y^2 = f(x)` to points of `Y^2 = g(x)`.
pub fn integralize(f: &QPoly) -> (QPoly, Rational) {
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| num::integer::lcm(acc, c.denom().clone()));
    let mut c = BigInt::one();
    if !den.is_one() {
        for (p, e) in numtheory::factor_bigint(&den) {
            c *= num::pow(p, e.div_ceil(2) as usize);
        }
    }
    let c = Rational::from_integer(c);
    let g = f.scale(&(&c * &c));
    debug_assert!(g.coeffs().iter().all(|x| x.denom().is_one()));
    (g, c)
}

/// Integer coefficients of a polynomial known to be integral.
pub fn integer_coeffs(f: &QPoly) -> Option<Vec<BigInt>> {
    f.coeffs()
        .iter()
        .map(|c| c.denom().is_one().then(|| c.numer().clone()))
        .collect()
}
