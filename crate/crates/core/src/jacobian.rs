//! Divisor-class arithmetic on Jacobians of odd-degree hyperelliptic curves
//! `y^2 = f(x)`, `deg f = 2g + 1`, using Mumford representatives and Cantor's
//! composition and reduction.
//!
//! A class is stored as its unique reduced representative `(u, v)`: `u` monic,
//! `deg v < deg u <= g`, `u | v^2 - f`. The identity is `(1, 0)`. `f` need not
//! be monic; only its degree matters for the single point at infinity.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::algebra::{AlgebraError, Field, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacobianError {
    #[error("divisors belong to different curves")]
    CurveMismatch,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("the point at infinity represents the zero class; use zero_element")]
    PointAtInfinity,
    #[error("invalid curve model: {0}")]
    InvalidModel(String),
    #[error("invalid Mumford pair: {0}")]
    InvalidDivisor(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Identifier of a curve: a hash of its field tag and coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurveId(u64);

/// A point of the curve, affine or the unique point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum CurvePoint<E> {
    Infinity,
    Affine { x: E, y: E },
}

impl<E> CurvePoint<E> {
    pub fn affine(x: E, y: E) -> Self {
        CurvePoint::Affine { x, y }
    }
}

#[derive(Clone, PartialEq)]
pub struct HyperellipticCurve<F: Field> {
    f: Polynomial<F>,
    genus: usize,
    id: CurveId,
}

#[derive(Clone, PartialEq)]
pub struct MumfordDivisor<F: Field> {
    curve: CurveId,
    u: Polynomial<F>,
    v: Polynomial<F>,
}

impl<F: Field> MumfordDivisor<F> {
    pub fn u(&self) -> &Polynomial<F> {
        &self.u
    }

    pub fn v(&self) -> &Polynomial<F> {
        &self.v
    }

    pub fn curve_id(&self) -> CurveId {
        self.curve
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_one()
    }

    /// Number of affine points (with multiplicity) in the reduced support.
    pub fn weight(&self) -> usize {
        self.u.degree().unwrap_or(0)
    }
}

impl<F: Field> fmt::Debug for MumfordDivisor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.u, self.v)
    }
}

impl<F: Field> fmt::Debug for HyperellipticCurve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {} (genus {}, over {})", self.f, self.genus, self.f.field().tag())
    }
}

impl<F: Field> HyperellipticCurve<F> {
    /// Requires `deg f = 2g + 1 >= 3` and `f` squarefree.
    pub fn new(f: Polynomial<F>) -> Result<Self, JacobianError> {
        let deg = f
            .degree()
            .ok_or_else(|| JacobianError::InvalidModel("f is zero".into()))?;
        if deg < 3 || deg % 2 == 0 {
            return Err(JacobianError::InvalidModel(format!(
                "deg f = {deg}, expected an odd degree of at least 3"
            )));
        }
        if !f.is_squarefree()? {
            return Err(JacobianError::InvalidModel("f has a repeated factor".into()));
        }
        let mut h = DefaultHasher::new();
        f.field().tag().hash(&mut h);
        for c in f.coeffs() {
            c.to_string().hash(&mut h);
        }
        Ok(HyperellipticCurve {
            genus: (deg - 1) / 2,
            id: CurveId(h.finish()),
            f,
        })
    }

    pub fn f(&self) -> &Polynomial<F> {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn field(&self) -> &F {
        self.f.field()
    }

    pub fn id(&self) -> CurveId {
        self.id
    }

    pub fn contains(&self, x: &F::Elem, y: &F::Elem) -> bool {
        let k = self.field();
        k.mul(y, y) == self.f.eval(x)
    }

    pub fn zero(&self) -> MumfordDivisor<F> {
        MumfordDivisor {
            curve: self.id,
            u: Polynomial::one(self.field().clone()),
            v: Polynomial::zero(self.field().clone()),
        }
    }

    /// The class of `P - P_inf` for an affine point `P = (x0, y0)`.
    pub fn divisor_from_point(&self, p: &CurvePoint<F::Elem>) -> Result<MumfordDivisor<F>, JacobianError> {
        let CurvePoint::Affine { x, y } = p else {
            return Err(JacobianError::PointAtInfinity);
        };
        if !self.contains(x, y) {
            return Err(JacobianError::PointNotOnCurve);
        }
        let k = self.field().clone();
        Ok(MumfordDivisor {
            curve: self.id,
            u: Polynomial::linear(k.clone(), x),
            v: Polynomial::constant(k, y.clone()),
        })
    }

    /// Build a divisor from an explicit Mumford pair, checking every invariant.
    pub fn divisor_from_uv(&self, u: Polynomial<F>, v: Polynomial<F>) -> Result<MumfordDivisor<F>, JacobianError> {
        let d = MumfordDivisor { curve: self.id, u, v };
        self.validate(&d)?;
        Ok(d)
    }

    /// Check `u` monic, `deg v < deg u <= g` and `u | v^2 - f`.
    pub fn validate(&self, d: &MumfordDivisor<F>) -> Result<(), JacobianError> {
        self.check_curve(d)?;
        let bad = |msg: &str| Err(JacobianError::InvalidDivisor(msg.into()));
        if !d.u.is_monic() {
            return bad("u is not monic");
        }
        let du = d.u.degree().unwrap();
        if du > self.genus {
            return bad("deg u exceeds the genus");
        }
        if d.v.degree_i64() >= du as i64 {
            return bad("deg v >= deg u");
        }
        let norm = &(&d.v * &d.v) - &self.f;
        if !norm.rem(&d.u)?.is_zero() {
            return bad("u does not divide v^2 - f");
        }
        Ok(())
    }

    fn check_curve(&self, d: &MumfordDivisor<F>) -> Result<(), JacobianError> {
        if d.curve == self.id {
            Ok(())
        } else {
            Err(JacobianError::CurveMismatch)
        }
    }

    /// Image under the hyperelliptic involution `y -> -y`.
    pub fn negate(&self, d: &MumfordDivisor<F>) -> Result<MumfordDivisor<F>, JacobianError> {
        self.check_curve(d)?;
        Ok(MumfordDivisor {
            curve: self.id,
            u: d.u.clone(),
            v: (-&d.v).rem(&d.u)?,
        })
    }

    pub fn equals(&self, a: &MumfordDivisor<F>, b: &MumfordDivisor<F>) -> Result<bool, JacobianError> {
        self.check_curve(a)?;
        self.check_curve(b)?;
        Ok(a.u == b.u && a.v == b.v)
    }

    /// Group law.
    pub fn add(&self, a: &MumfordDivisor<F>, b: &MumfordDivisor<F>) -> Result<MumfordDivisor<F>, JacobianError> {
        self.check_curve(a)?;
        self.check_curve(b)?;
        if a.is_zero() {
            return Ok(b.clone());
        }
        if b.is_zero() {
            return Ok(a.clone());
        }
        let (u, v) = if a.u == b.u && a.v == b.v {
            self.compose_double(a)?
        } else {
            self.compose(a, b)?
        };
        let out = self.reduce(u, v)?;
        debug_assert!(self.validate(&out).is_ok(), "reduction broke an invariant: {out:?}");
        Ok(out)
    }

    pub fn double(&self, a: &MumfordDivisor<F>) -> Result<MumfordDivisor<F>, JacobianError> {
        self.add(a, a)
    }

    pub fn sub(&self, a: &MumfordDivisor<F>, b: &MumfordDivisor<F>) -> Result<MumfordDivisor<F>, JacobianError> {
        self.add(a, &self.negate(b)?)
    }

    /// `n * d` by left-to-right double-and-add; negative `n` uses `-d`.
    pub fn scalar_mul(&self, n: i64, d: &MumfordDivisor<F>) -> Result<MumfordDivisor<F>, JacobianError> {
        self.check_curve(d)?;
        let base = if n < 0 { self.negate(d)? } else { d.clone() };
        let n = n.unsigned_abs();
        let mut acc = self.zero();
        for bit in (0..u64::BITS - n.leading_zeros()).rev() {
            acc = self.double(&acc)?;
            if (n >> bit) & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
        }
        Ok(acc)
    }

    /// Semi-reduced sum of two distinct classes.
    fn compose(&self, a: &MumfordDivisor<F>, b: &MumfordDivisor<F>) -> Result<(Polynomial<F>, Polynomial<F>), JacobianError> {
        let (d1, e1, e2) = a.u.xgcd(&b.u)?;
        if d1.is_one() {
            // coprime supports: plain CRT, v = v2 mod u1-part and v1 mod u2-part
            let u = &a.u * &b.u;
            let v = (&(&(&e1 * &a.u) * &b.v) + &(&(&e2 * &b.u) * &a.v)).rem(&u)?;
            return Ok((u, v));
        }
        let vsum = &a.v + &b.v;
        let (d, c1, c2) = d1.xgcd(&vsum)?;
        let s1 = &c1 * &e1;
        let s2 = &c1 * &e2;
        let s3 = c2;
        let dd = &d * &d;
        let u = (&a.u * &b.u).exact_div(&dd)?;
        let num = &(&(&(&s1 * &a.u) * &b.v) + &(&(&s2 * &b.u) * &a.v)) + &(&s3 * &(&(&a.v * &b.v) + &self.f));
        let v = num.exact_div(&d)?.rem(&u)?;
        Ok((u, v))
    }

    fn compose_double(&self, a: &MumfordDivisor<F>) -> Result<(Polynomial<F>, Polynomial<F>), JacobianError> {
        let two_v = &a.v + &a.v;
        let (d, s1, s3) = a.u.xgcd(&two_v)?;
        let u = (&a.u * &a.u).exact_div(&(&d * &d))?;
        let num = &(&(&s1 * &a.u) * &a.v) + &(&s3 * &(&(&a.v * &a.v) + &self.f));
        let v = num.exact_div(&d)?.rem(&u)?;
        Ok((u, v))
    }

    /// Cantor reduction down to `deg u <= g`.
    fn reduce(&self, mut u: Polynomial<F>, mut v: Polynomial<F>) -> Result<MumfordDivisor<F>, JacobianError> {
        while u.degree().unwrap_or(0) > self.genus {
            let u_next = (&self.f - &(&v * &v)).exact_div(&u)?.monic();
            v = (-&v).rem(&u_next)?;
            u = u_next;
        }
        let u = u.monic();
        let v = v.rem(&u)?;
        Ok(MumfordDivisor { curve: self.id, u, v })
    }
}
