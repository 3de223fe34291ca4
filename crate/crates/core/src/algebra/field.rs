use std::fmt;

use num::{BigInt, Integer, One, ToPrimitive, Zero};
use serde::Serialize;

use super::numtheory::{is_prime_u64, odd_primes};
use super::{AlgebraError, Polynomial, Rational};

/// Identifies which coefficient field a polynomial lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FieldTag {
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

/// A field given as a context value. Elements carry no reference to the
/// field they belong to; every operation goes through the context.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn tag(&self) -> FieldTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Resultant of two nonzero polynomials (ascending coefficients) when the
    /// field has something faster than the Euclidean remainder sequence.
    fn fast_resultant(&self, _a: &[Self::Elem], _b: &[Self::Elem]) -> Option<Self::Elem> {
        None
    }

    /// `Some(true)` when squarefreeness can be certified cheaply; `None`
    /// means undecided.
    fn fast_squarefree(&self, _a: &[Self::Elem]) -> Option<bool> {
        None
    }
}

/// The field of rational numbers, backed by arbitrary-precision integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rationals
    }
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    /// Clear denominators and take the Sylvester determinant over the
    /// integers by fraction-free elimination; remainder sequences over Q
    /// blow up on the large-height curves this crate handles.
    fn fast_resultant(&self, a: &[Rational], b: &[Rational]) -> Option<Rational> {
        let (ai, da) = clear_denominators(a);
        let (bi, db) = clear_denominators(b);
        let (m, n) = (a.len() - 1, b.len() - 1);
        let res = sylvester_resultant(&ai, &bi);
        let scale = num::pow(da, n) * num::pow(db, m);
        Some(Rational::new(res, scale))
    }

    /// Squarefree over Q if squarefree of the same degree modulo some prime.
    fn fast_squarefree(&self, a: &[Rational]) -> Option<bool> {
        let deg = a.len().checked_sub(1)?;
        for p in odd_primes().skip_while(|&p| p <= deg as u64).take(24) {
            let fp = PrimeField::new(p).expect("odd prime");
            let Some(reduced) = Polynomial::new(Rationals, a.to_vec()).reduce_mod(fp) else { continue };
            if reduced.degree() != Some(deg) {
                continue;
            }
            if reduced.gcd(&reduced.derivative()).ok()?.degree() == Some(0) {
                return Some(true);
            }
        }
        None
    }
}

/// Integer coefficients `c * a` for the least positive integer `c`.
fn clear_denominators(a: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = a.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    (ints, den)
}

/// Determinant of the Sylvester matrix of `a` (degree m) and `b` (degree n),
/// by Bareiss elimination.
fn sylvester_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // rows hold descending coefficients, shifted
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&r| !mat[r][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = t / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Integers modulo an odd prime `p`. Elements are canonical residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Moduli must be odd primes below 2^62.
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if p.is_multiple_of(2) || p >= 1 << 62 || !is_prime_u64(p) {
            return Err(AlgebraError::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn from_bigint(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }

    /// Image of a rational number, or `None` when `p` divides its denominator.
    pub fn reduce(&self, r: &Rational) -> Option<u64> {
        let den = self.from_bigint(r.denom());
        if den == 0 {
            return None;
        }
        let num = self.from_bigint(r.numer());
        self.inv(&den).map(|d| self.mul(&num, &d))
    }

    /// A square root of `a`, if one exists (Tonelli-Shanks).
    pub fn sqrt(&self, a: &u64) -> Option<u64> {
        let p = self.p;
        let a = *a % p;
        if a == 0 {
            return Some(0);
        }
        if self.pow(&a, (p - 1) / 2) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2u64;
        while self.pow(&z, (p - 1) / 2) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(&z, q);
        let mut t = self.pow(&a, q);
        let mut r = self.pow(&a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let b = self.pow(&c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn tag(&self) -> FieldTag {
        FieldTag::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        let r = (n as i128).rem_euclid(self.p as i128);
        r as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on signed values
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
}
