//! Cyclotomic polynomials and power-reduction tables for `Q(ζ_n)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// Precomputed data for the field `Q(ζ_n)` in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
#[derive(Debug)]
pub struct CycloTable {
    pub n: u32,
    /// Euler totient φ(n), the dimension of the field over Q.
    pub phi: usize,
    /// Coefficients of Φ_n, lowest degree first; monic of degree φ(n).
    pub minpoly: Vec<i64>,
    /// `pow[e]` holds `t^e mod Φ_n` for `e < 2n`.
    pub pow: Vec<Vec<i64>>,
}

impl CycloTable {
    fn build(n: u32) -> Self {
        let minpoly = cyclotomic_poly(n);
        let phi = minpoly.len() - 1;
        let len = (2 * n as usize).max(2 * phi);
        let mut pow = Vec::with_capacity(len);
        let mut cur = vec![0i64; phi];
        if phi > 0 {
            cur[0] = 1;
        }
        for _ in 0..len {
            pow.push(cur.clone());
            // multiply by t and reduce with t^phi = -sum minpoly[i] t^i
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1] - top * minpoly[i];
            }
            cur[0] = -top * minpoly[0];
        }
        CycloTable { n, phi, minpoly, pow }
    }
}

/// Returns the shared table for conductor `n` (n ≥ 1).
pub fn table(n: u32) -> Arc<CycloTable> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycloTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().unwrap().get(&n) {
        return Arc::clone(t);
    }
    let t = Arc::new(CycloTable::build(n));
    cache.write().unwrap().entry(n).or_insert(t).clone()
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // t^n - 1 divided by Φ_k for every proper divisor k of n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for k in 1..n {
        if n.is_multiple_of(k) {
            num = div_monic(&num, &cyclotomic_poly(k));
        }
    }
    num
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &dc) in den.iter().enumerate() {
            rem[i + j] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}
