use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, PrimeField, Rationals};
use super::{AlgebraError, Rational};

/// Dense univariate polynomial over a field context `F`.
///
/// Coefficients are stored in ascending degree with no trailing zeros, so the
/// zero polynomial has an empty coefficient vector and no degree.
#[derive(Clone, PartialEq)]
pub struct Polynomial<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Polynomial<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        Polynomial { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Polynomial::new(field, vec![one])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Polynomial::new(field, vec![c])
    }

    /// `c * x^deg`
    pub fn monomial(field: F, c: F::Elem, deg: usize) -> Self {
        let mut coeffs = vec![field.zero(); deg];
        coeffs.push(c);
        Polynomial::new(field, coeffs)
    }

    /// The polynomial `x`.
    pub fn x(field: F) -> Self {
        let one = field.one();
        Polynomial::monomial(field, one, 1)
    }

    /// `x - root`
    pub fn linear(field: F, root: &F::Elem) -> Self {
        let coeffs = vec![field.neg(root), field.one()];
        Polynomial::new(field, coeffs)
    }

    pub fn from_i64s(field: F, coeffs: &[i64]) -> Self {
        let cs = coeffs.iter().map(|&c| field.from_i64(c)).collect();
        Polynomial::new(field, cs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    fn check_field(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch {
                lhs: self.field.tag(),
                rhs: other.field.tag(),
            })
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_field(rhs)?;
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Polynomial::new(f.clone(), coeffs))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_field(rhs)?;
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => f.sub(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => f.neg(b),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Polynomial::new(f.clone(), coeffs))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_field(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Polynomial::zero(self.field.clone()));
        }
        let f = &self.field;
        let mut coeffs = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Ok(Polynomial::new(f.clone(), coeffs))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Polynomial::new(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Polynomial::one(self.field.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { field: self.field.clone(), coeffs }
    }

    /// Euclidean division: `self = den * q + r` with `deg r < deg den`.
    pub fn div_rem(&self, den: &Self) -> Result<(Self, Self), AlgebraError> {
        self.check_field(den)?;
        let f = &self.field;
        let Some(dd) = den.degree() else {
            return Err(AlgebraError::DivisionByZero);
        };
        let lc_inv = f.inv(den.leading().unwrap()).expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(f.clone()), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &lc_inv);
            if !f.is_zero(&c) {
                for (j, b) in den.coeffs.iter().enumerate() {
                    rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, b));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(f.clone(), quot), Polynomial::new(f.clone(), rem)))
    }

    pub fn rem(&self, den: &Self) -> Result<Self, AlgebraError> {
        self.div_rem(den).map(|(_, r)| r)
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, den: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.div_rem(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::NonExactDivision)
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x0: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x0), c))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Polynomial::new(f.clone(), coeffs)
    }

    /// Divide through by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) if self.field.is_one(lc) => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(AlgebraError::ZeroGcd);
        }
        // always reduce the lower-degree polynomial into the higher one
        let (mut a, mut b) = if self.degree_i64() >= other.degree_i64() {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended Euclid: returns `(d, s, t)` with `s*self + t*other = d` and
    /// `d` monic. Both inputs zero gives `(0, 0, 0)`.
    pub fn xgcd(&self, other: &Self) -> Result<(Self, Self, Self), AlgebraError> {
        self.check_field(other)?;
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Polynomial::one(f.clone()), Polynomial::zero(f.clone()));
        let (mut t0, mut t1) = (Polynomial::zero(f.clone()), Polynomial::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        match r0.leading() {
            None => Ok((r0, Polynomial::zero(f.clone()), Polynomial::zero(f))),
            Some(lc) => {
                let inv = f.inv(lc).expect("nonzero");
                Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
            }
        }
    }

    /// `gcd(f, f') = 1`. Valid over Q and over any prime field.
    pub fn is_squarefree(&self) -> Result<bool, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        if self.field.fast_squarefree(&self.coeffs) == Some(true) {
            return Ok(true);
        }
        Ok(self.gcd(&self.derivative())?.degree() == Some(0))
    }

    /// Resultant, normalized so that it agrees with the Sylvester determinant
    /// `Res(f, g) = lc(f)^deg(g) * prod g(roots of f)`.
    pub fn resultant(&self, other: &Self) -> Result<F::Elem, AlgebraError> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        if let Some(r) = self.field.fast_resultant(&self.coeffs, &other.coeffs) {
            return Ok(r);
        }
        self.euclid_resultant(other)
    }

    /// Resultant through the Euclidean remainder sequence.
    pub(crate) fn euclid_resultant(&self, other: &Self) -> Result<F::Elem, AlgebraError> {
        let f = self.field.clone();
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = f.one();
        loop {
            let da = a.degree().unwrap() as u64;
            let db = b.degree().unwrap() as u64;
            if db == 0 {
                return Ok(f.mul(&acc, &f.pow(b.leading().unwrap(), da)));
            }
            let r = a.rem(&b)?;
            let Some(dr) = r.degree() else {
                return Ok(f.zero());
            };
            // Res(a, b) = (-1)^(da*db) * lc(b)^(da - dr) * Res(b, r)
            let mut factor = f.pow(b.leading().unwrap(), da - dr as u64);
            if (da * db) % 2 == 1 {
                factor = f.neg(&factor);
            }
            acc = f.mul(&acc, &factor);
            a = b;
            b = r;
        }
    }

    /// `disc(f) = (-1)^(d(d-1)/2) * Res(f, f') / lc(f)` for `d = deg f >= 1`.
    pub fn discriminant(&self) -> Result<F::Elem, AlgebraError> {
        let Some(d) = self.degree() else {
            return Err(AlgebraError::ZeroPolynomial);
        };
        if d == 0 {
            return Err(AlgebraError::ConstantDiscriminant);
        }
        let f = &self.field;
        let deriv = self.derivative();
        let res = if deriv.is_zero() {
            f.zero()
        } else {
            self.resultant(&deriv)?
        };
        let mut disc = f.div(&res, self.leading().unwrap()).expect("nonzero leading coefficient");
        if (d * (d - 1) / 2) % 2 == 1 {
            disc = f.neg(&disc);
        }
        Ok(disc)
    }

    /// Apply `op` to every coefficient, landing in another field.
    pub fn try_map<G: Field>(
        &self,
        target: G,
        mut op: impl FnMut(&F::Elem) -> Option<G::Elem>,
    ) -> Option<Polynomial<G>> {
        let coeffs = self.coeffs.iter().map(&mut op).collect::<Option<Vec<_>>>()?;
        Some(Polynomial::new(target, coeffs))
    }
}

impl Polynomial<Rationals> {
    pub fn from_rationals(coeffs: Vec<Rational>) -> Self {
        Polynomial::new(Rationals, coeffs)
    }

    /// Coefficient-wise reduction; `None` if `p` divides some denominator.
    pub fn reduce_mod(&self, fp: PrimeField) -> Option<Polynomial<PrimeField>> {
        self.try_map(fp, |c| fp.reduce(c))
    }

    /// Coefficients as canonical strings, ascending degree.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self, AlgebraError> {
        let coeffs = items
            .iter()
            .map(|s| super::parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial::from_rationals(coeffs))
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}](", self.field.tag())?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<F: Field> $trait<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            /// Panics if the operands live over different fields; use the
            /// `checked_*` form to get an error instead.
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).expect("polynomial operands over different fields")
            }
        }

        impl<F: Field> $trait for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let f = &self.field;
        Polynomial {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
        }
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}
