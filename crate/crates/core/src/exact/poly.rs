use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Exponent triple `(i, j, k)` of the monomial `x^i y^j z^k`.
pub type Monomial = [u32; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }
}

/// All monomials of degree `d` in descending lexicographic order (`x^d` first).
pub fn monomials(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// Position of `m` in [`monomials`] for its degree.
pub fn monomial_index(m: Monomial) -> usize {
    let d = m[0] + m[1] + m[2];
    // monomials with x-exponent > m[0] come first
    let a = d - m[0];
    let before: u32 = (0..a).map(|t| t + 1).sum();
    (before + (a - m[1])) as usize
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Homogeneous polynomial in `x, y, z` with exact cyclotomic coefficients.
///
/// Only nonzero coefficients are stored; every key has total degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoly {
    degree: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    Scale,
}

impl HomPoly {
    pub fn zero(degree: u32) -> Self {
        HomPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = HomPoly::zero(0);
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut m = [0; 3];
        m[v.index()] = 1;
        HomPoly::monomial(m, Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = HomPoly::zero(m.iter().sum());
        p.add_term(m, c);
        p
    }

    /// The linear form `a x + b y + c z`.
    pub fn linear(coeffs: &[Scalar; 3]) -> Self {
        let mut p = HomPoly::zero(1);
        for (v, c) in coeffs.iter().enumerate() {
            let mut m = [0; 3];
            m[v] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    /// Builds a polynomial from terms; zero coefficients are dropped and
    /// repeated monomials accumulate.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Self> {
        let mut p = HomPoly::zero(degree);
        for (m, c) in terms {
            let md = m.iter().sum::<u32>();
            if md != degree {
                return Err(Error::DegreeMismatch(degree, md));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Builds a polynomial from a dense coefficient vector ordered as [`monomials`].
    pub fn from_dense(degree: u32, coeffs: &[Scalar]) -> Self {
        let mons = monomials(degree);
        assert_eq!(mons.len(), coeffs.len());
        let mut p = HomPoly::zero(degree);
        for (m, c) in mons.into_iter().zip(coeffs) {
            p.add_term(m, c.clone());
        }
        p
    }

    /// Dense coefficient vector ordered as [`monomials`].
    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); monomials(self.degree).len()];
        for (m, c) in &self.terms {
            out[monomial_index(*m)] = c.clone();
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms in descending lexicographic monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    /// Least common multiple of the coefficient conductors.
    pub fn conductor(&self) -> u32 {
        self.terms.values().fold(1, |acc, c| acc.lcm(&c.conductor()))
    }

    pub fn add(&self, other: &HomPoly) -> Result<HomPoly> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HomPoly) -> Result<HomPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomPoly {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> HomPoly {
        let mut out = HomPoly::zero(self.degree);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(*m, v * c);
        }
        out
    }

    pub fn mul(&self, other: &HomPoly) -> HomPoly {
        let mut out = HomPoly::zero(self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], x * y);
            }
        }
        out
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: Var) -> HomPoly {
        let i = v.index();
        let mut out = HomPoly::zero(self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut n = *m;
            n[i] -= 1;
            out.add_term(n, c.scale(&BigRational::from_integer(m[i].into())));
        }
        out
    }

    /// Exact quotient by a nonzero linear form.
    pub fn divide_exact(&self, ell: &HomPoly) -> Result<HomPoly> {
        if ell.degree != 1 || ell.is_zero() {
            return Err(Error::InvalidArgument("divisor must be a nonzero linear form".into()));
        }
        if self.is_zero() {
            return Ok(HomPoly::zero(self.degree.saturating_sub(1)));
        }
        if self.degree == 0 {
            return Err(Error::NotDivisible("nonzero constant by a linear form".into()));
        }
        // eliminate along the first variable present in ell
        let v = (0..3)
            .find(|&v| {
                let mut m = [0; 3];
                m[v] = 1;
                ell.terms.contains_key(&m)
            })
            .unwrap();
        let mut unit = [0u32; 3];
        unit[v] = 1;
        let lead_inv = ell.terms[&unit].inv()?;
        let mut rem = self.clone();
        let mut quot = HomPoly::zero(self.degree - 1);
        while let Some((m, c)) = rem
            .terms
            .iter()
            .max_by(|a, b| a.0[v].cmp(&b.0[v]).then(b.0.cmp(a.0)))
            .map(|(m, c)| (*m, c.clone()))
        {
            if m[v] == 0 {
                return Err(Error::NotDivisible(format!("nonzero remainder {}", rem)));
            }
            let mut qm = m;
            qm[v] -= 1;
            let t = HomPoly::monomial(qm, &c * &lead_inv);
            rem = rem.sub(&t.mul(ell))?;
            quot.add_term(qm, t.terms[&qm].clone());
        }
        Ok(quot)
    }

    /// Value at a point given by three coordinates.
    pub fn evaluate(&self, p: &[Scalar; 3]) -> Scalar {
        let mut powers: [Vec<Scalar>; 3] = Default::default();
        for (v, pw) in powers.iter_mut().enumerate() {
            pw.push(Scalar::one());
            for e in 1..=self.degree as usize {
                let next = &pw[e - 1] * &p[v];
                pw.push(next);
            }
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let t = &(&(c * &powers[0][m[0] as usize]) * &powers[1][m[1] as usize]) * &powers[2][m[2] as usize];
            acc = &acc + &t;
        }
        acc
    }

    /// The polynomial `p(M v)`: each variable `v_i` is replaced by row `i` of `m`
    /// read as a linear form.
    pub fn substitute_linear(&self, m: &[[Scalar; 3]; 3]) -> HomPoly {
        let forms: Vec<HomPoly> = m.iter().map(HomPoly::linear).collect();
        let mut pows: Vec<Vec<HomPoly>> = forms
            .iter()
            .map(|f| vec![HomPoly::constant(Scalar::one()), f.clone()])
            .collect();
        for (v, pw) in pows.iter_mut().enumerate() {
            for e in 2..=self.degree as usize {
                let next = pw[e - 1].mul(&forms[v]);
                pw.push(next);
            }
        }
        let mut out = HomPoly::zero(self.degree);
        for (mono, c) in &self.terms {
            let t = pows[0][mono[0] as usize]
                .mul(&pows[1][mono[1] as usize])
                .mul(&pows[2][mono[2] as usize])
                .scale(c);
            for (k, v) in t.terms {
                out.add_term(k, v);
            }
        }
        out
    }

    /// Leading coefficient in descending lexicographic order, if nonzero.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> HomPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// True when `other = c · self` for a nonzero scalar `c`.
    pub fn is_scalar_multiple_of(&self, other: &HomPoly) -> bool {
        if self.degree != other.degree || self.len() != other.len() {
            return false;
        }
        if self.is_zero() {
            return other.is_zero();
        }
        self.monic() == other.monic()
    }

    /// Order of vanishing at `p`: the least `k` with some nonzero order-`k` partial at `p`.
    pub fn multiplicity_at(&self, p: &[Scalar; 3]) -> u32 {
        if self.is_zero() {
            return u32::MAX;
        }
        let mut layer: BTreeMap<[u32; 3], HomPoly> = BTreeMap::new();
        layer.insert([0, 0, 0], self.clone());
        for k in 0..=self.degree {
            if layer.values().any(|g| !g.evaluate(p).is_zero()) {
                return k;
            }
            let mut next = BTreeMap::new();
            for (idx, g) in &layer {
                for v in Var::ALL {
                    let mut key = *idx;
                    key[v.index()] += 1;
                    next.entry(key).or_insert_with(|| g.partial(v));
                }
            }
            layer = next;
        }
        self.degree
    }
}

/// Checked binary operation on polynomials; `Scale` multiplies by the constant
/// polynomial `q`.
pub fn poly_arith(p: &HomPoly, q: &HomPoly, op: PolyOp) -> Result<HomPoly> {
    match op {
        PolyOp::Add => p.add(q),
        PolyOp::Mul => Ok(p.mul(q)),
        PolyOp::Scale => {
            if q.degree != 0 {
                return Err(Error::DegreeMismatch(0, q.degree));
            }
            Ok(p.scale(&q.coeff(&[0, 0, 0])))
        }
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let negative = c.to_rational().is_some_and(|q| q.is_negative());
            let c = if negative { -c } else { c.clone() };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let mono: Vec<String> = ["x", "y", "z"]
                .iter()
                .zip(m)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            let coeff = if c.is_rational() {
                c.to_string()
            } else {
                format!("({c})")
            };
            if mono.is_empty() {
                f.write_str(&coeff)?;
            } else if c.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, mono.join("*"))?;
            }
        }
        Ok(())
    }
}
