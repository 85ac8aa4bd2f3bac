use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::{table, totient};
use crate::error::{Error, Result};

static CONDUCTOR_CAP: AtomicU32 = AtomicU32::new(64);

/// Largest conductor accepted by checked operations, parsers and the catalog.
pub fn conductor_cap() -> u32 {
    CONDUCTOR_CAP.load(AtomicOrdering::Relaxed)
}

pub fn set_conductor_cap(cap: u32) {
    CONDUCTOR_CAP.store(cap.max(1), AtomicOrdering::Relaxed);
}

pub(crate) fn check_conductor(n: u32) -> Result<()> {
    let cap = conductor_cap();
    if n > cap {
        Err(Error::ConductorOverflow(n, cap))
    } else {
        Ok(())
    }
}

/// An element of the cyclotomic field `Q(ζ_n)`.
///
/// Coefficients are stored in the power basis modulo Φ_n. Values that happen
/// to be rational are always stored with conductor 1, so two scalars compare
/// equal exactly when their embeddings into the common conductor agree.
#[derive(Clone, Debug)]
pub struct Scalar {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary operation honoring the conductor cap.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ScalarOp) -> Result<Scalar> {
    check_conductor(a.conductor.lcm(&b.conductor))?;
    match op {
        ScalarOp::Add => Ok(a + b),
        ScalarOp::Sub => Ok(a - b),
        ScalarOp::Mul => Ok(a * b),
        ScalarOp::Div => a.div(b),
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Scalar::rational(BigRational::from_integer(v))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::rational(BigRational::new(num.into(), den.into())))
    }

    pub fn rational(q: BigRational) -> Self {
        Scalar {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// The primitive root of unity `ζ_n = exp(2πi/n)`.
    pub fn zeta(n: u32) -> Result<Self> {
        Scalar::zeta_pow(n, 1)
    }

    /// `ζ_n^k`, reduced; `k` may be negative.
    pub fn zeta_pow(n: u32, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        check_conductor(n)?;
        let e = k.rem_euclid(n as i64) as usize;
        let t = table(n);
        let coeffs = t.pow[e].iter().map(|&c| BigRational::from_integer(c.into())).collect();
        Ok(Scalar::from_parts(n, coeffs))
    }

    /// Builds a scalar from power-basis coefficients (length φ(n)), reducing to
    /// conductor 1 when the value is rational.
    pub fn from_parts(n: u32, coeffs: Vec<BigRational>) -> Self {
        debug_assert_eq!(coeffs.len(), totient(n));
        let mut s = Scalar { conductor: n, coeffs };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.conductor != 1 && self.coeffs.iter().skip(1).all(Zero::is_zero) {
            self.coeffs.truncate(1);
            self.conductor = 1;
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coefficients in the stored conductor.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<&BigRational> {
        if self.conductor == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Coefficients of this value in the power basis of `Q(ζ_n)`.
    ///
    /// `n` must be a multiple of the stored conductor.
    pub fn embed(&self, n: u32) -> Vec<BigRational> {
        assert!(
            n.is_multiple_of(self.conductor),
            "cannot embed conductor {} into {}",
            self.conductor,
            n
        );
        let t = table(n);
        let mut out = vec![BigRational::zero(); t.phi];
        if self.conductor == 1 {
            out[0] = self.coeffs[0].clone();
            return out;
        }
        let step = (n / self.conductor) as usize;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(&t.pow[i * step]) {
                if r != 0 {
                    *o += c * BigRational::from_integer(r.into());
                }
            }
        }
        out
    }

    fn binary_embed(&self, other: &Scalar) -> (u32, Vec<BigRational>, Vec<BigRational>) {
        let n = self.conductor.lcm(&other.conductor);
        (n, self.embed(n), other.embed(n))
    }

    pub fn scale(&self, q: &BigRational) -> Scalar {
        if q.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against Φ_n.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Scalar::rational(self.coeffs[0].recip()));
        }
        let t = table(self.conductor);
        let modulus: Vec<BigRational> = t.minpoly.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        let inv = poly_inverse_mod(&self.coeffs, &modulus)
            .ok_or_else(|| Error::Invariant("cyclotomic element not invertible".into()))?;
        Ok(Scalar::from_parts(self.conductor, inv))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
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

    /// Rough size measure (bits of all numerators and denominators).
    pub fn bit_size(&self) -> u64 {
        self.coeffs.iter().map(|c| c.numer().bits() + c.denom().bits()).sum()
    }

    /// Least common multiple of all denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Compares by embedding into the common conductor; gives a total order
    /// used only for deterministic sorting.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        let (_, a, b) = self.binary_embed(other);
        a.cmp(&b)
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Remainder and quotient of polynomial division over Q.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    let da = match degree(&rem) {
        Some(d) if d >= db => d,
        _ => return (vec![BigRational::zero()], rem),
    };
    let mut quot = vec![BigRational::zero(); da - db + 1];
    let lead = b[db].clone();
    for i in (0..=da - db).rev() {
        let c = &rem[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            let t = &c * &b[j];
            rem[i + j] -= t;
        }
        quot[i] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` in Q[t], padded to length deg(m).
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len() - 1;
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while degree(&r1).is_some() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd; it must be a nonzero constant.
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = r0[0].clone();
    let (_, mut inv) = poly_divmod(&s0, m);
    for x in inv.iter_mut() {
        *x = &*x / &c;
    }
    inv.resize(n, BigRational::zero());
    Some(inv)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        if self.conductor == 1 || other.conductor == 1 {
            // rational values always carry conductor 1
            return false;
        }
        let (_, a, b) = self.binary_embed(other);
        a == b
    }
}

impl Eq for Scalar {}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.conductor == 1 && rhs.conductor == 1 {
            return Scalar::rational(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        if self.conductor == rhs.conductor {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
            return Scalar::from_parts(self.conductor, coeffs);
        }
        let (n, a, b) = self.binary_embed(rhs);
        Scalar::from_parts(n, a.into_iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.conductor == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.conductor == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let (n, a, b) = self.binary_embed(rhs);
        let t = table(n);
        let mut prod = vec![BigRational::zero(); 2 * t.phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigRational> = prod[..t.phi].to_vec();
        for (e, c) in prod.iter().enumerate().skip(t.phi) {
            if c.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(&t.pow[e]) {
                if r != 0 {
                    *o += c * BigRational::from_integer(r.into());
                }
            }
        }
        Scalar::from_parts(n, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::rational(v)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// Rationals print as `p/q`; cyclotomic values as polynomials in `z(n)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return f.write_str(&fmt_rational(&self.coeffs[0]));
        }
        let n = self.conductor;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let root = match i {
                0 => String::new(),
                1 => format!("z({n})"),
                _ => format!("z({n})^{i}"),
            };
            if i == 0 {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&root)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), root)?;
            }
        }
        Ok(())
    }
}
