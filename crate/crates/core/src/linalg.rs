//! Exact dense linear algebra over cyclotomic fields.
//!
//! Elimination runs fraction-free on rows scaled into `Z[ζ_n]`, removing the
//! integer content of every updated row. Kernels are read off the echelon form
//! by back substitution over the field, which gives the canonical
//! reduced-echelon basis regardless of the pivot sequence.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::cyclotomic::{table, CycloTable};
use crate::exact::Scalar;

/// Row-major matrix of scalars sharing a common conductor.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
    conductor: u32,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let conductor = entries.iter().fold(1u32, |acc, e| acc.lcm(&e.conductor()));
        Ok(Matrix {
            rows,
            cols,
            entries,
            conductor,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
            conductor: 1,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Copy with rows and columns permuted: entry `(i, j)` of the result is
    /// entry `(row_perm[i], col_perm[j])` of `self`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for &r in row_perm {
            for &c in col_perm {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
            conductor: self.conductor,
        }
    }
}

/// Elements of `Z[ζ_n]` as coefficient vectors of length φ(n); the empty
/// vector is zero.
struct IntRing {
    table: Arc<CycloTable>,
}

type Elem = Vec<BigInt>;

impl IntRing {
    fn new(n: u32) -> Self {
        IntRing { table: table(n) }
    }

    fn phi(&self) -> usize {
        self.table.phi
    }

    fn clean(v: Elem) -> Elem {
        if v.iter().all(Zero::is_zero) {
            Vec::new()
        } else {
            v
        }
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let phi = self.phi();
        if phi == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
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
        let mut out: Elem = prod[..phi].to_vec();
        for (e, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(&self.table.pow[e]) {
                if r != 0 {
                    *o += c * r;
                }
            }
        }
        Self::clean(out)
    }

    /// `x·p − y·a`.
    fn mul_sub(&self, x: &Elem, p: &Elem, y: &Elem, a: &Elem) -> Elem {
        let u = self.mul(x, p);
        let v = self.mul(y, a);
        match (u.is_empty(), v.is_empty()) {
            (true, true) => Vec::new(),
            (false, true) => u,
            (true, false) => v.into_iter().map(|c| -c).collect(),
            (false, false) => Self::clean(u.into_iter().zip(v).map(|(s, t)| s - t).collect()),
        }
    }

    fn bits(e: &Elem) -> u64 {
        e.iter().map(|c| c.bits()).sum()
    }
}

fn to_int_rows(m: &Matrix, ring: &IntRing) -> Vec<Vec<Elem>> {
    let n = m.conductor;
    (0..m.rows)
        .map(|r| {
            let embedded: Vec<Vec<BigRational>> = m
                .row(r)
                .iter()
                .map(|s| if s.is_zero() { Vec::new() } else { s.embed(n) })
                .collect();
            let den = embedded
                .iter()
                .flatten()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let mut row: Vec<Elem> = embedded
                .into_iter()
                .map(|e| {
                    IntRing::clean(
                        e.into_iter()
                            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                            .collect(),
                    )
                })
                .collect();
            remove_content(&mut row);
            debug_assert!(row.iter().all(|e| e.is_empty() || e.len() == ring.phi()));
            row
        })
        .collect()
}

fn remove_content(row: &mut [Elem]) {
    let mut g = BigInt::zero();
    for c in row.iter().flatten() {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for e in row.iter_mut() {
        for c in e.iter_mut() {
            *c /= &g;
        }
    }
}

/// Forward fraction-free elimination. Returns the pivot columns; after the
/// call row `i` carries pivot `i`. Pivots are chosen column by column, taking
/// the smallest entry (in bits) and then the smallest row index.
fn echelon(rows: &mut [Vec<Elem>], cols: usize, ring: &IntRing) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter(|&i| !rows[i][col].is_empty())
            .min_by_key(|&i| (IntRing::bits(&rows[i][col]), i));
        let Some(best) = best else { continue };
        rows.swap(r, best);
        let (head, tail) = rows.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            if row[col].is_empty() {
                continue;
            }
            let (mut p, mut a) = (prow[col].clone(), row[col].clone());
            if ring.phi() == 1 {
                let g = p[0].gcd(&a[0]);
                p[0] /= &g;
                a[0] /= &g;
            }
            row[col] = Vec::new();
            for c in col + 1..cols {
                if row[c].is_empty() && prow[c].is_empty() {
                    continue;
                }
                row[c] = ring.mul_sub(&row[c], &p, &prow[c], &a);
            }
            remove_content(row);
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

fn elem_to_scalar(e: &Elem, n: u32, phi: usize) -> Scalar {
    if e.is_empty() {
        return Scalar::zero();
    }
    debug_assert_eq!(e.len(), phi);
    Scalar::from_parts(n, e.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

/// Echelon form kept for kernel extraction.
struct Echelon {
    cols: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<Scalar>>,
}

impl Echelon {
    fn compute(m: &Matrix) -> Echelon {
        let ring = IntRing::new(m.conductor);
        let mut rows = to_int_rows(m, &ring);
        let pivots = echelon(&mut rows, m.cols, &ring);
        let phi = ring.phi();
        let rows = rows
            .iter()
            .take(pivots.len())
            .map(|row| row.iter().map(|e| elem_to_scalar(e, m.conductor, phi)).collect())
            .collect();
        Echelon {
            cols: m.cols,
            pivots,
            rows,
        }
    }

    fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Kernel vector with a 1 in free column `f` and 0 in the other free
    /// columns, rescaled so that its first nonzero entry is 1.
    fn kernel_vector(&self, f: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.cols];
        v[f] = Scalar::one();
        for (i, &pc) in self.pivots.iter().enumerate().rev() {
            if pc > f {
                continue;
            }
            let row = &self.rows[i];
            let mut acc = Scalar::zero();
            for c in pc + 1..self.cols {
                if !row[c].is_zero() && !v[c].is_zero() {
                    acc = &acc + &(&row[c] * &v[c]);
                }
            }
            if !acc.is_zero() {
                v[pc] = -(acc.div(&row[pc]).expect("pivot is nonzero"));
            }
        }
        normalize_first(&mut v);
        v
    }
}

fn normalize_first(v: &mut [Scalar]) {
    if let Some(lead) = v.iter().find(|s| !s.is_zero()) {
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero");
            for s in v.iter_mut() {
                *s = &*s * &inv;
            }
        }
    }
}

/// Rank over the exact field.
pub fn rank(m: &Matrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let ring = IntRing::new(m.conductor);
    let mut rows = to_int_rows(m, &ring);
    echelon(&mut rows, m.cols, &ring).len()
}

/// Basis of the right kernel, one vector per non-pivot column, each scaled so
/// that its first nonzero entry is 1.
pub fn nullspace_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    if m.cols == 0 {
        return Vec::new();
    }
    if m.rows == 0 {
        return (0..m.cols)
            .map(|c| {
                let mut v = vec![Scalar::zero(); m.cols];
                v[c] = Scalar::one();
                v
            })
            .collect();
    }
    let e = Echelon::compute(m);
    e.free_columns().into_iter().map(|f| e.kernel_vector(f)).collect()
}

/// Nullity together with the first basis vector of [`nullspace_basis`], without
/// computing the rest of the basis.
pub fn nullity_with_first(m: &Matrix) -> (usize, Option<Vec<Scalar>>) {
    if m.rows == 0 {
        let basis = nullspace_basis(m);
        return (basis.len(), basis.into_iter().next());
    }
    let e = Echelon::compute(m);
    let free = e.free_columns();
    let first = free.first().map(|&f| e.kernel_vector(f));
    (free.len(), first)
}

// ---------------------------------------------------------------------------
// modular reduction

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime field `F_p` with `p ≡ 1 (mod n)` and a chosen primitive n-th root of
/// unity, giving a ring map `Z[ζ_n]_(p) → F_p`.
#[derive(Clone, Copy, Debug)]
pub struct ModularField {
    pub p: u64,
    pub root: u64,
    pub conductor: u32,
}

impl ModularField {
    /// The `index`-th such prime below 2^62, deterministic.
    pub fn nth(conductor: u32, index: usize) -> ModularField {
        let n = conductor as u64;
        let mut k = ((1u64 << 62) - 1) / n;
        let mut found = 0;
        loop {
            let p = k * n + 1;
            if is_prime(p) {
                if found == index {
                    return ModularField {
                        p,
                        root: primitive_root_of_unity(p, n),
                        conductor,
                    };
                }
                found += 1;
            }
            k -= 1;
        }
    }

    fn reduce_rational(&self, q: &BigRational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u64().unwrap();
        let den = q.denom().mod_floor(&p).to_u64().unwrap();
        if den == 0 {
            return None;
        }
        Some(mul_mod(num, pow_mod(den, self.p - 2, self.p), self.p))
    }

    /// Image of a scalar, or `None` when a denominator vanishes mod p.
    pub fn reduce(&self, s: &Scalar) -> Option<u64> {
        if s.is_zero() {
            return Some(0);
        }
        if s.is_rational() {
            return self.reduce_rational(&s.coeffs()[0]);
        }
        let n = self.conductor;
        let mut acc = 0u64;
        let mut w = 1u64;
        for c in s.embed(n) {
            let r = self.reduce_rational(&c)?;
            acc = (acc + mul_mod(r, w, self.p)) % self.p;
            w = mul_mod(w, self.root, self.p);
        }
        Some(acc)
    }
}

fn primitive_root_of_unity(p: u64, n: u64) -> u64 {
    let factors = prime_factors(n);
    for g in 2.. {
        let w = pow_mod(g, (p - 1) / n, p);
        if factors.iter().all(|&q| pow_mod(w, n / q, p) != 1) {
            return w;
        }
    }
    unreachable!()
}

fn rank_mod(rows: &mut [Vec<u64>], cols: usize, p: u64) -> usize {
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = pow_mod(rows[r][col], p - 2, p);
        for x in &mut rows[r][col..cols] {
            *x = mul_mod(*x, inv, p);
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            let a = row[col];
            if a == 0 {
                continue;
            }
            for c in col..cols {
                if prow[c] != 0 {
                    row[c] = (row[c] + p - mul_mod(a, prow[c], p)) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank of the reduction modulo a word-size prime.
///
/// Reduction can only lose rank, so this is a lower bound on [`rank`]; in
/// particular a full-column-rank answer certifies a trivial kernel.
pub fn rank_mod_p(m: &Matrix) -> usize {
    for index in 0.. {
        let field = ModularField::nth(m.conductor.max(1), index);
        let reduced: Option<Vec<Vec<u64>>> = (0..m.rows)
            .map(|r| m.row(r).iter().map(|s| field.reduce(s)).collect())
            .collect();
        if let Some(mut rows) = reduced {
            return rank_mod(&mut rows, m.cols, field.p);
        }
    }
    unreachable!()
}
