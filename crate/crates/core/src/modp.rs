//! Reduction modulo odd primes of good reduction. Torsion of order prime to
//! `p` injects into `J(F_p)`, so orders computed over `F_p` must agree with
//! those over the rationals.

use num::Zero;
use thiserror::Error;

use crate::algebra::numtheory::odd_primes;
use crate::algebra::{integralize, AlgebraError, FpPoly, PrimeField, QPoly, Rational, Rationals};
use crate::jacobian::{CurvePoint, HyperellipticCurve, JacobianError, MumfordDivisor};
use crate::torsion::{order_of_class, TorsionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModpError {
    #[error("bad reduction at {p}: {reason}")]
    BadReduction { p: u64, reason: String },
    #[error("enumeration at {p} exceeded {limit} multiples")]
    EnumerationLimit { p: u64, limit: u64 },
    #[error(transparent)]
    Torsion(#[from] TorsionError),
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A curve reduced modulo a prime of good reduction that does not divide the
/// order under test.
#[derive(Clone, Debug)]
pub struct ReductionContext {
    p: u64,
    field: PrimeField,
    curve: HyperellipticCurve<PrimeField>,
}

impl ReductionContext {
    pub fn new(f: &QPoly, p: u64, n: u64) -> Result<Self, ModpError> {
        let bad = |reason: &str| ModpError::BadReduction { p, reason: reason.into() };
        let field = PrimeField::new(p).map_err(|_| bad("not an odd prime"))?;
        if n.is_multiple_of(p) {
            return Err(bad("p divides the order under test"));
        }
        let reduced = f.reduce_mod(field).ok_or_else(|| bad("p divides a denominator of f"))?;
        if reduced.degree() != f.degree() {
            return Err(bad("p divides the leading coefficient"));
        }
        if !reduced.is_squarefree()? {
            return Err(bad("p divides the discriminant"));
        }
        let curve = HyperellipticCurve::new(reduced)?;
        Ok(ReductionContext { p, field, curve })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn curve(&self) -> &HyperellipticCurve<PrimeField> {
        &self.curve
    }

    pub fn reduce_point(&self, point: &CurvePoint<Rational>) -> Result<CurvePoint<u64>, ModpError> {
        match point {
            CurvePoint::Infinity => Ok(CurvePoint::Infinity),
            CurvePoint::Affine { x, y } => {
                let r = |c: &Rational| {
                    self.field.reduce(c).ok_or_else(|| ModpError::BadReduction {
                        p: self.p,
                        reason: "point is not p-integral".into(),
                    })
                };
                Ok(CurvePoint::affine(r(x)?, r(y)?))
            }
        }
    }

    /// Reduce the class of `point - P_inf`.
    pub fn reduce_point_divisor(&self, point: &CurvePoint<Rational>) -> Result<MumfordDivisor<PrimeField>, ModpError> {
        match self.reduce_point(point)? {
            CurvePoint::Infinity => Ok(self.curve.zero()),
            p => Ok(self.curve.divisor_from_point(&p)?),
        }
    }

    /// Reduce a Mumford pair with `p`-integral coefficients.
    pub fn reduce_divisor(&self, d: &MumfordDivisor<Rationals>) -> Result<MumfordDivisor<PrimeField>, ModpError> {
        let r = |poly: &QPoly| -> Result<FpPoly, ModpError> {
            poly.reduce_mod(self.field).ok_or_else(|| ModpError::BadReduction {
                p: self.p,
                reason: "divisor is not p-integral".into(),
            })
        };
        Ok(self.curve.divisor_from_uv(r(d.u())?, r(d.v())?)?)
    }
}

/// The `count` smallest odd primes not dividing `2 * n * lc * disc` of the
/// integral model of `f`.
pub fn select_good_primes(f: &QPoly, n: u64, count: usize) -> Result<Vec<u64>, ModpError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let (f_int, _) = integralize(f);
    let disc = f_int.discriminant()?;
    let lc = f_int.leading().cloned().ok_or(AlgebraError::ZeroPolynomial)?;
    let bad = disc * lc;
    debug_assert!(!bad.is_zero());
    let primes = odd_primes()
        .filter(|&p| {
            let field = PrimeField::new(p).expect("odd prime");
            !n.is_multiple_of(p) && field.reduce(&bad).is_some_and(|r| r != 0)
        })
        .take(count)
        .collect();
    Ok(primes)
}

/// Exact order of the reduced class of `point - P_inf`, given a multiple.
pub fn order_mod_p(ctx: &ReductionContext, point: &CurvePoint<Rational>, multiple: u64) -> Result<u64, ModpError> {
    let d = ctx.reduce_point_divisor(point)?;
    Ok(order_of_class(&ctx.curve, &d, multiple)?)
}

/// Order by adding the class to itself until it vanishes. Independent of any
/// known multiple; gives up after `limit` steps.
pub fn order_by_enumeration(ctx: &ReductionContext, point: &CurvePoint<Rational>, limit: u64) -> Result<u64, ModpError> {
    let d = ctx.reduce_point_divisor(point)?;
    let mut acc = d.clone();
    for k in 1..=limit {
        if acc.is_zero() {
            return Ok(k);
        }
        acc = ctx.curve.add(&acc, &d)?;
    }
    Err(ModpError::EnumerationLimit { p: ctx.p, limit })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModpCheck {
    pub p: u64,
    /// `None` when `n` is not a multiple of the order mod `p`.
    pub order: Option<u64>,
    pub agree: bool,
}

/// Compare the order of the reduction at each prime against `n`.
pub fn cross_check(f: &QPoly, point: &CurvePoint<Rational>, n: u64, primes: &[u64]) -> Result<Vec<ModpCheck>, ModpError> {
    primes
        .iter()
        .map(|&p| {
            let ctx = ReductionContext::new(f, p, n)?;
            let order = match order_mod_p(&ctx, point, n) {
                Ok(o) => Some(o),
                Err(ModpError::Torsion(TorsionError::NotAMultiple { .. })) => None,
                Err(e) => return Err(e),
            };
            Ok(ModpCheck { p, order, agree: order == Some(n) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn c2() -> QPoly {
        QPoly::from_i64s(Rationals, &[4, -28, 53, -14, 17, -16])
    }

    #[test]
    fn good_primes() {
        assert_eq!(select_good_primes(&c2(), 18, 3).unwrap(), vec![5, 11, 13]);
        let cubic = QPoly::from_i64s(Rationals, &[0, -1, 0, 1]);
        assert_eq!(select_good_primes(&cubic, 1, 1).unwrap(), vec![3]);
        assert!(select_good_primes(&c2(), 18, 0).unwrap().is_empty());
    }

    #[test]
    fn reduction_contexts() {
        assert!(matches!(ReductionContext::new(&c2(), 7, 18), Err(ModpError::BadReduction { .. })));
        assert!(matches!(ReductionContext::new(&c2(), 3, 18), Err(ModpError::BadReduction { .. })));
        assert!(matches!(ReductionContext::new(&c2(), 9, 1), Err(ModpError::BadReduction { .. })));
        let ctx = ReductionContext::new(&c2(), 5, 18).unwrap();
        assert_eq!(order_mod_p(&ctx, &CurvePoint::Infinity, 18).unwrap(), 1);
    }

    #[test]
    fn orders_agree_with_enumeration() {
        let p0 = CurvePoint::affine(int(0), int(2));
        for p in [5, 11, 13] {
            let ctx = ReductionContext::new(&c2(), p, 18).unwrap();
            assert_eq!(order_mod_p(&ctx, &p0, 18).unwrap(), 18);
            assert_eq!(order_by_enumeration(&ctx, &p0, 1000).unwrap(), 18);
        }
    }

    #[test]
    fn cross_checks() {
        let p0 = CurvePoint::affine(int(0), int(2));
        let ok = cross_check(&c2(), &p0, 18, &[5, 11, 13]).unwrap();
        assert!(ok.iter().all(|c| c.agree && c.order == Some(18)));
        let primes = select_good_primes(&c2(), 17, 3).unwrap();
        let wrong = cross_check(&c2(), &p0, 17, &primes).unwrap();
        assert!(wrong.iter().all(|c| !c.agree && c.order.is_none()));
    }
}
