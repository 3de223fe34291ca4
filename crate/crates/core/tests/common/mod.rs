//! Shared helpers for the integration suites, including a second, naive
//! implementation of the group law used as an oracle.
#![allow(dead_code, clippy::needless_range_loop)]

use rand::rngs::StdRng;
use rand::Rng;

use torsion_forge::algebra::{int, Field, Polynomial, PrimeField, QPoly, Rationals};
use torsion_forge::corpus::{parse_corpus, LoadedEntry, SHIPPED_CORPUS};
use torsion_forge::jacobian::{CurvePoint, HyperellipticCurve, MumfordDivisor};

/// Sum of two classes by textbook composition followed by reduction through
/// the function of least pole order vanishing on the composed divisor.
pub fn naive_add<F: Field>(
    curve: &HyperellipticCurve<F>,
    d1: &MumfordDivisor<F>,
    d2: &MumfordDivisor<F>,
) -> MumfordDivisor<F> {
    let f = curve.f();
    let (u1, v1, u2, v2) = (d1.u(), d1.v(), d2.u(), d2.v());
    let (e, e1, e2) = u1.xgcd(u2).unwrap();
    let (d, c1, c2) = e.xgcd(&(v1 + v2)).unwrap();
    let (s1, s2, s3) = (&c1 * &e1, &c1 * &e2, c2);
    let u = (u1 * u2).exact_div(&(&d * &d)).unwrap();
    let num = &(&(&(&s1 * u1) * v2) + &(&(&s2 * u2) * v1)) + &(&s3 * &(&(v1 * v2) + f));
    let v = num.exact_div(&d).unwrap().rem(&u).unwrap();
    reduce_by_riemann_roch(curve, u, v)
}

/// Reduce a semi-reduced pair `(u, v)`.
///
/// Walk the monomials `1, x, x^2, ..., y, xy, ...` in order of pole order at
/// infinity and stop at the first linear dependence among their residues on
/// the divisor; that gives `phi = a + b y` vanishing on it. The residual
/// divisor of `phi` is the negative of the reduced class.
pub fn reduce_by_riemann_roch<F: Field>(
    curve: &HyperellipticCurve<F>,
    u: Polynomial<F>,
    v: Polynomial<F>,
) -> MumfordDivisor<F> {
    let k = curve.field().clone();
    let g = curve.genus();
    let n = u.degree().unwrap();
    let u = u.monic();
    let v = v.rem(&u).unwrap();
    if n <= g {
        return curve.divisor_from_uv(u, v).unwrap();
    }
    // (is_y, power) sorted by pole order 2i or 2j + 2g + 1
    let mut monomials: Vec<(bool, usize)> = (0..=2 * n).map(|i| (false, i)).collect();
    monomials.extend((0..=n).map(|j| (true, j)));
    monomials.sort_by_key(|&(is_y, p)| if is_y { 2 * p + 2 * g + 1 } else { 2 * p });

    let residue = |(is_y, p): (bool, usize)| -> Vec<F::Elem> {
        let m = Polynomial::monomial(k.clone(), k.one(), p);
        let m = if is_y { &m * &v } else { m };
        let r = m.rem(&u).unwrap();
        (0..n).map(|i| r.coeff(i)).collect()
    };
    let mut columns = Vec::new();
    for &mono in &monomials {
        columns.push(residue(mono));
        if let Some(kernel) = kernel_vector(&k, &columns, n) {
            let mut a = Polynomial::zero(k.clone());
            let mut b = Polynomial::zero(k.clone());
            for (c, &(is_y, p)) in kernel.iter().zip(&monomials) {
                let term = Polynomial::monomial(k.clone(), c.clone(), p);
                if is_y {
                    b = &b + &term;
                } else {
                    a = &a + &term;
                }
            }
            let norm = &(&a * &a) - &(&(&b * &b) * curve.f());
            let residual = norm.exact_div(&u).unwrap();
            if residual.degree() == Some(0) {
                return curve.zero();
            }
            let u_new = residual.monic();
            // phi = h * (a1 + b1 y). Over roots of the vertical factor h the
            // residual points are conjugates of points of D, so the reduced
            // class agrees with v there; elsewhere y = -a1/b1 on the residual.
            let h = a.gcd(&b).unwrap();
            let (a1, b1) = (a.exact_div(&h).unwrap(), b.exact_div(&h).unwrap());
            let mut w = Polynomial::one(k.clone());
            loop {
                let t = u_new.exact_div(&w).unwrap().gcd(&h).unwrap();
                if t.is_one() {
                    break;
                }
                w = &w * &t;
            }
            let rest = u_new.exact_div(&w).unwrap();
            let (one, b1_inv, _) = b1.xgcd(&rest).unwrap();
            assert!(one.is_one(), "b1 not invertible modulo the residual divisor");
            let v_rest = (&a1 * &b1_inv).rem(&rest).unwrap();
            // the residual can meet those points to higher order than D, so
            // lift v to the square root branch of f modulo w (Newton)
            let half = k.inv(&k.from_i64(2)).unwrap();
            let mut v_w = v.rem(&w).unwrap();
            loop {
                let (one, inv, _) = v_w.xgcd(&w).unwrap();
                assert!(one.is_one(), "ramified vertical factor");
                let next = (&v_w + &(curve.f() * &inv)).scale(&half).rem(&w).unwrap();
                if next == v_w {
                    break;
                }
                v_w = next;
            }
            let (one, w_inv, _) = w.xgcd(&rest).unwrap();
            assert!(one.is_one());
            let lift = (&(&(&v_rest - &v_w) * &w_inv).rem(&rest).unwrap() * &w) + v_w;
            let v_new = lift.rem(&u_new).unwrap();
            return curve.divisor_from_uv(u_new, v_new).unwrap();
        }
    }
    unreachable!("Riemann-Roch guarantees a dependence")
}

/// A nonzero vector `c` with `sum c_j columns[j] = 0` whose last entry is
/// nonzero, if the columns are dependent.
fn kernel_vector<F: Field>(k: &F, columns: &[Vec<F::Elem>], rows: usize) -> Option<Vec<F::Elem>> {
    let cols = columns.len();
    let mut m: Vec<Vec<F::Elem>> = (0..rows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !k.is_zero(&m[r][col])) else { continue };
        m.swap(row, p);
        let inv = k.inv(&m[row][col]).unwrap();
        for c in 0..cols {
            m[row][c] = k.mul(&m[row][c], &inv);
        }
        for r in 0..rows {
            if r != row && !k.is_zero(&m[r][col]) {
                let factor = m[r][col].clone();
                for c in 0..cols {
                    let t = k.mul(&factor, &m[row][c]);
                    m[r][c] = k.sub(&m[r][c], &t);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![k.zero(); cols];
    x[free] = k.one();
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = k.neg(&m[r][free]);
    }
    Some(x)
}

pub fn corpus() -> Vec<LoadedEntry> {
    parse_corpus(SHIPPED_CORPUS).unwrap().iter().map(|e| e.load().unwrap()).collect()
}

/// Random classes `a * D + b * E` on a corpus curve, with `D`, `E` the two
/// marked classes (or `D` twice when the entry has one point).
pub fn random_class(
    curve: &HyperellipticCurve<Rationals>,
    gens: &[MumfordDivisor<Rationals>],
    rng: &mut StdRng,
) -> MumfordDivisor<Rationals> {
    let mut acc = curve.zero();
    for d in gens {
        let k = rng.gen_range(-40..40);
        acc = curve.add(&acc, &curve.scalar_mul(k, d).unwrap()).unwrap();
    }
    acc
}

/// Random squarefree odd-degree model over `F_p` of genus `g`.
pub fn random_curve_fp(p: u64, g: usize, rng: &mut StdRng) -> HyperellipticCurve<PrimeField> {
    let k = PrimeField::new(p).unwrap();
    loop {
        let mut coeffs: Vec<u64> = (0..=2 * g).map(|_| rng.gen_range(0..p)).collect();
        coeffs.push(rng.gen_range(1..p));
        if let Ok(c) = HyperellipticCurve::new(Polynomial::new(k, coeffs)) {
            return c;
        }
    }
}

/// Random affine point on a curve over `F_p`.
pub fn random_point_fp(curve: &HyperellipticCurve<PrimeField>, rng: &mut StdRng) -> CurvePoint<u64> {
    let k = *curve.field();
    loop {
        let x = rng.gen_range(0..k.modulus());
        if let Some(y) = k.sqrt(&curve.f().eval(&x)) {
            return CurvePoint::affine(x, y);
        }
    }
}

/// Random class of weight up to `g` over `F_p`, as a sum of point classes.
pub fn random_class_fp(curve: &HyperellipticCurve<PrimeField>, rng: &mut StdRng) -> MumfordDivisor<PrimeField> {
    let mut acc = curve.zero();
    for _ in 0..curve.genus() {
        let p = random_point_fp(curve, rng);
        acc = curve.add(&acc, &curve.divisor_from_point(&p).unwrap()).unwrap();
    }
    acc
}

pub fn c2() -> HyperellipticCurve<Rationals> {
    HyperellipticCurve::new(QPoly::from_i64s(Rationals, &[4, -28, 53, -14, 17, -16])).unwrap()
}

pub fn c2_point() -> CurvePoint<torsion_forge::algebra::Rational> {
    CurvePoint::affine(int(0), int(2))
}
