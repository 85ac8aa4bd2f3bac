//! Jacobian relations `a f_x + b f_y + c f_z = 0`, the minimal degree `mdr(f)`
//! and the numeric invariants derived from it.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::arrangement::{frame_at, inverse, Arrangement, IntersectionLattice, ProjPoint};
use crate::error::{Error, Result};
use crate::exact::{binomial, monomial_index, monomials, HomPoly, Scalar, Var};
use crate::linalg::{nullity_with_first, rank, rank_mod_p, Matrix};

/// A nonzero relation of degree `r` among the partials of some `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyWitness {
    degree: u32,
    components: [HomPoly; 3],
}

impl SyzygyWitness {
    /// Normalizes so that the first nonzero coefficient, reading components
    /// `a, b, c` in turn and monomials in descending lex order, is 1.
    pub fn new(components: [HomPoly; 3]) -> Result<Self> {
        let degree = components[0].degree();
        if components.iter().any(|c| c.degree() != degree) {
            return Err(Error::InvalidArgument("witness components differ in degree".into()));
        }
        let lead = components
            .iter()
            .find_map(|c| c.terms().next().map(|(_, s)| s.clone()))
            .ok_or_else(|| Error::InvalidArgument("zero witness".into()))?;
        let inv = lead.inv()?;
        Ok(SyzygyWitness {
            degree,
            components: components.map(|c| c.scale(&inv)),
        })
    }

    fn from_vector(r: u32, v: &[Scalar]) -> Result<Self> {
        let n = monomials(r).len();
        let comps = std::array::from_fn(|i| HomPoly::from_dense(r, &v[i * n..(i + 1) * n]));
        SyzygyWitness::new(comps)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[HomPoly; 3] {
        &self.components
    }

    /// `a f_x + b f_y + c f_z` evaluated symbolically.
    pub fn apply(&self, f: &HomPoly) -> HomPoly {
        let mut acc = HomPoly::zero(self.degree + f.degree().saturating_sub(1));
        for (c, v) in self.components.iter().zip(Var::ALL) {
            let t = c.mul(&f.partial(v));
            if !t.is_zero() {
                acc = acc.add(&t).expect("degrees agree");
            }
        }
        acc
    }

    pub fn verify(&self, f: &HomPoly) -> bool {
        self.apply(f).is_zero()
    }

    /// SHA-256 of the printed components, hex encoded.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.to_string().as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for SyzygyWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.components;
        write!(f, "({a}; {b}; {c})")
    }
}

/// Coefficient matrix of `(a, b, c) ↦ a f_x + b f_y + c f_z` on triples of
/// degree-`r` forms.
///
/// Rows are indexed by monomials of degree `r + d - 1`; columns by component
/// (a, b, c) and then by monomial of degree `r`.
pub fn ar_matrix(f: &HomPoly, r: u32) -> Matrix {
    let d = f.degree();
    assert!(d >= 1, "relations need a form of positive degree");
    let src = monomials(r);
    let n = src.len();
    let rows = binomial((r + d + 1) as u64, 2) as usize;
    let cols = 3 * n;
    let mut entries = vec![Scalar::zero(); rows * cols];
    for (c, v) in Var::ALL.iter().enumerate() {
        let fv = f.partial(*v);
        for (k, alpha) in src.iter().enumerate() {
            for (beta, s) in fv.terms() {
                let mu = [alpha[0] + beta[0], alpha[1] + beta[1], alpha[2] + beta[2]];
                entries[monomial_index(mu) * cols + c * n + k] = s.clone();
            }
        }
    }
    Matrix::new(rows, cols, entries).expect("entries share the conductor of f")
}

/// `dim AR(f)_r`.
pub fn ar_dimension(f: &HomPoly, r: u32) -> usize {
    let m = ar_matrix(f, r);
    m.cols() - rank(&m)
}

/// Upper bound on `dim AR(f)_r` from a reduction modulo a prime.
pub fn ar_dimension_upper(f: &HomPoly, r: u32) -> usize {
    let m = ar_matrix(f, r);
    m.cols() - rank_mod_p(&m)
}

/// Smallest `r` in `[from, to)` with a nonzero relation, and the first
/// canonical kernel vector at that degree.
fn search(f: &HomPoly, from: u32, to: u32, prefilter: bool) -> Result<Option<SyzygyWitness>> {
    for r in from..to {
        let m = ar_matrix(f, r);
        if prefilter && rank_mod_p(&m) == m.cols() {
            continue;
        }
        let (nullity, first) = nullity_with_first(&m);
        if nullity > 0 {
            return SyzygyWitness::from_vector(r, &first.expect("nonzero nullity")).map(Some);
        }
    }
    Ok(None)
}

/// `mdr(f)` for any form of degree at least 1.
///
/// The Koszul relation `(f_y, -f_x, 0)` bounds the search by `d - 1`.
pub fn mdr(f: &HomPoly) -> Result<(u32, SyzygyWitness)> {
    if f.degree() == 0 {
        return Err(Error::InvalidArgument("mdr needs a form of positive degree".into()));
    }
    let d = f.degree();
    if let Some(w) = search(f, 0, d, true)? {
        return Ok((w.degree(), w));
    }
    Err(Error::Invariant("no relation of degree below d".into()))
}

#[derive(Clone, Copy, Debug)]
pub struct MdrOptions {
    /// Answer pencils and near-pencils from the lattice alone.
    pub shortcut: bool,
    /// Skip degrees whose modular rank certifies a trivial kernel.
    pub prefilter: bool,
}

impl Default for MdrOptions {
    fn default() -> Self {
        MdrOptions {
            shortcut: true,
            prefilter: true,
        }
    }
}

/// `mdr` of an arrangement polynomial with a normalized witness.
///
/// Degrees below `d - m` are searched upward; if none carries a relation the
/// answer is `d - m`, witnessed by the explicit relation at a point of maximal
/// multiplicity.
pub fn mdr_arrangement(a: &Arrangement, opts: MdrOptions) -> Result<(u32, SyzygyWitness)> {
    let lat = a.lattice()?;
    let d = a.len() as u32;
    if d == 1 {
        let w = SyzygyWitness::new(std::array::from_fn(|i| {
            let l = &a.lines()[0].coeffs();
            // a relation orthogonal to the single gradient
            let k = (0..3).find(|&k| !l[k].is_zero()).unwrap();
            let other = (k + 1) % 3;
            let mut c = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
            c[k] = l[other].clone();
            c[other] = -&l[k];
            HomPoly::constant(c[i].clone())
        }))?;
        return Ok((0, w));
    }
    let m = lat.max_multiplicity() as u32;
    let top = lat.max_point().expect("d >= 2 has a lattice point").point.clone();
    let shortcut = opts.shortcut && (lat.is_pencil() || lat.is_near_pencil());
    if !shortcut {
        let f = a.defining_polynomial();
        if let Some(w) = search(&f, 0, d - m, opts.prefilter)? {
            return Ok((w.degree(), w));
        }
    }
    let w = explicit_syzygy(a, &top)?;
    Ok((d - m, w))
}

pub fn mdr_of(a: &Arrangement) -> Result<u32> {
    Ok(mdr_arrangement(a, MdrOptions::default())?.0)
}

/// The relation `ρ_p` of degree `d - m_p` attached to a lattice point `p`.
///
/// In coordinates where `p = (1:0:0)` write `f = g h`, with `g` the lines
/// through `p`; then `(x h_x - d h, y h_x, z h_x)` is a relation. It is mapped
/// back to the original coordinates and checked.
pub fn explicit_syzygy(a: &Arrangement, p: &ProjPoint) -> Result<SyzygyWitness> {
    let lat = a.lattice()?;
    let k = lat
        .find(p)
        .ok_or_else(|| Error::InvalidArgument(format!("{p} is not a lattice point")))?;
    let through = &lat.points()[k].lines;
    let d = a.len() as i64;

    let m = frame_at(p);
    let m_inv = inverse(&m)?;

    // h(Mw): the lines avoiding p, with coefficients M^T c
    let mut h = HomPoly::constant(Scalar::one());
    for (i, l) in a.lines().iter().enumerate() {
        if through.binary_search(&i).is_ok() {
            continue;
        }
        let c = l.coeffs();
        let t: [Scalar; 3] = std::array::from_fn(|j| {
            let s = &(&m[0][j] * &c[0]) + &(&m[1][j] * &c[1]);
            &s + &(&m[2][j] * &c[2])
        });
        h = h.mul(&HomPoly::linear(&t));
    }
    let hx = h.partial(Var::X);
    let rho_w: [HomPoly; 3] = if h.degree() == 0 {
        [h.scale(&Scalar::from_int(-d)), HomPoly::zero(0), HomPoly::zero(0)]
    } else {
        [
            HomPoly::var(Var::X).mul(&hx).sub(&h.scale(&Scalar::from_int(d)))?,
            HomPoly::var(Var::Y).mul(&hx),
            HomPoly::var(Var::Z).mul(&hx),
        ]
    };
    // ρ(v) = M ρ'(M^{-1} v)
    let pulled: Vec<HomPoly> = rho_w.iter().map(|c| c.substitute_linear(&m_inv)).collect();
    let deg = h.degree();
    let mut out: [HomPoly; 3] = std::array::from_fn(|_| HomPoly::zero(deg));
    for (i, o) in out.iter_mut().enumerate() {
        for (j, c) in pulled.iter().enumerate() {
            if !m[i][j].is_zero() {
                *o = o.add(&c.scale(&m[i][j]))?;
            }
        }
    }
    let w = SyzygyWitness::new(out)?;
    if !w.verify(&a.defining_polynomial()) {
        return Err(Error::Invariant(format!("explicit relation at {p} fails")));
    }
    Ok(w)
}

/// Generic splitting type `(a, b)` with `a + b = d - 1`, or an upper bound on `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingType {
    pub determined: bool,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub a_upper_bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumericInvariants {
    pub d: u64,
    pub m: u64,
    pub mdr: u64,
    pub tau: u64,
    pub dpw_bound: i64,
    /// Present when `2 r >= d`.
    pub dpw_bound_strong: Option<i64>,
    pub is_free: bool,
    pub exponents: Option<(u64, u64)>,
    pub splitting: SplittingType,
    /// Coefficients of `(1 + d1 t)(1 + d2 t)` when free.
    pub betti: Option<[u64; 3]>,
}

/// Invariants from the lattice and a known `r = mdr(f)`.
pub fn numeric_invariants_from(lat: &IntersectionLattice, r: u32) -> NumericInvariants {
    let d = lat.d() as i64;
    let r = r as i64;
    let tau = lat.tjurina();
    let dpw = (d - 1) * (d - 1) - r * (d - r - 1);
    let strong = (2 * r >= d).then(|| (d - 1) * (d - r - 1) + r * r - binomial((2 * r - d + 2) as u64, 2) as i64);
    let is_free = tau as i64 == dpw;
    let exponents = is_free.then(|| (r as u64, (d - 1 - r) as u64));
    let betti = exponents.map(|(a, b)| [1, a + b, a * b]);
    let determined = 2 * (r + 1) < d;
    let a_upper = r.min((d - 1).max(0) / 2) as u64;
    let splitting = SplittingType {
        determined,
        a: determined.then_some(r as u64),
        b: determined.then(|| (d - 1 - r) as u64),
        a_upper_bound: if determined { r as u64 } else { a_upper },
    };
    NumericInvariants {
        d: d as u64,
        m: lat.max_multiplicity() as u64,
        mdr: r as u64,
        tau,
        dpw_bound: dpw,
        dpw_bound_strong: strong,
        is_free,
        exponents,
        splitting,
        betti,
    }
}

pub fn numeric_invariants(a: &Arrangement) -> Result<NumericInvariants> {
    let r = mdr_of(a)?;
    Ok(numeric_invariants_from(a.lattice()?, r))
}

/// The lower bound `2d/m - 2` on `mdr`.
pub fn van_lower_bound(a: &Arrangement) -> Result<BigRational> {
    let m = a.max_multiplicity()?;
    let d = a.len();
    Ok(BigRational::new(BigInt::from(2 * d), BigInt::from(m.max(1))) - BigRational::from_integer(2.into()))
}

/// For a free arrangement, whether `mdr = min(m - 1, d - m)`.
pub fn supersolvable_numeric_check(a: &Arrangement) -> Result<bool> {
    let inv = numeric_invariants(a)?;
    supersolvable_numeric_from(&inv)
}

pub fn supersolvable_numeric_from(inv: &NumericInvariants) -> Result<bool> {
    if !inv.is_free {
        return Err(Error::InvalidArgument(
            "numeric supersolvability needs a free arrangement".into(),
        ));
    }
    Ok(inv.mdr == (inv.m - 1).min(inv.d - inv.m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{catalog_build, CatalogParams, ProjLine};

    fn cat(name: &str, kv: &[(&str, &str)]) -> Arrangement {
        let p: CatalogParams = kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        catalog_build(name, &p).unwrap()
    }

    fn lines(v: &[[i64; 3]]) -> Arrangement {
        Arrangement::new(
            v.iter()
                .map(|c| ProjLine::from_ints(c[0], c[1], c[2]).unwrap())
                .collect(),
            "t",
        )
        .unwrap()
    }

    #[test]
    fn pencil_of_two_lines() {
        let f = lines(&[[1, 0, 0], [0, 1, 0]]).defining_polynomial();
        assert_eq!(ar_dimension(&f, 0), 1);
        let (r, w) = mdr(&f).unwrap();
        assert_eq!(r, 0);
        assert!(w.verify(&f));
    }

    #[test]
    fn fermat_three() {
        let a = cat("fermat", &[("m", "3")]);
        let f = a.defining_polynomial();
        assert_eq!(ar_dimension(&f, 3), 0);
        assert!(ar_dimension(&f, 4) >= 1);
        let (r, w) = mdr_arrangement(&a, MdrOptions::default()).unwrap();
        assert_eq!(r, 4);
        assert!(w.verify(&f));
    }

    #[test]
    fn explicit_relation_degrees() {
        let a = cat("fermat", &[("m", "3")]);
        let p = ProjPoint::from_ints(1, 0, 0).unwrap();
        let w = explicit_syzygy(&a, &p).unwrap();
        assert_eq!(w.degree(), 6);
        let b3 = cat("B3", &[]);
        let lat = b3.lattice().unwrap();
        for lp in lat.points() {
            let w = explicit_syzygy(&b3, &lp.point).unwrap();
            assert_eq!(w.degree() as usize, 9 - lp.multiplicity());
        }
        assert!(explicit_syzygy(&b3, &ProjPoint::from_ints(1, 2, 7).unwrap()).is_err());
    }

    #[test]
    fn near_pencil_shortcut_agrees() {
        let a = lines(&[[1, 0, 0], [1, 1, 0], [1, 2, 0], [0, 1, 0], [0, 0, 1]]);
        let fast = mdr_arrangement(&a, MdrOptions::default()).unwrap();
        let slow = mdr_arrangement(
            &a,
            MdrOptions {
                shortcut: false,
                prefilter: false,
            },
        )
        .unwrap();
        assert_eq!(fast.0, 1);
        assert_eq!(slow.0, 1);
        assert!(fast.1.verify(&a.defining_polynomial()));
    }

    #[test]
    fn b3_invariants() {
        let inv = numeric_invariants(&cat("B3", &[])).unwrap();
        assert_eq!((inv.mdr, inv.tau), (3, 49));
        // τ = 6·1 + 4·4 + 3·9 and (d-1)^2 - r(d-r-1) = 64 - 15
        assert_eq!(inv.tau, 6 + 4 * 4 + 3 * 9);
        assert_eq!(inv.dpw_bound, 64 - 15);
        assert!(inv.is_free);
        assert_eq!(inv.exponents, Some((3, 5)));
        assert_eq!(inv.betti, Some([1, 8, 15]));
        assert_eq!((inv.splitting.a, inv.splitting.b), (Some(3), Some(5)));
    }

    #[test]
    fn van_bound_values() {
        let b3 = cat("B3", &[]);
        assert_eq!(van_lower_bound(&b3).unwrap(), BigRational::new(5.into(), 2.into()));
    }

    #[test]
    fn supersolvable_numeric() {
        assert!(supersolvable_numeric_check(&cat("full_monomial", &[("m", "4")])).unwrap());
        assert!(!supersolvable_numeric_check(&cat("hessian", &[])).unwrap());
        // A⁰_3 ∪ generic line is not free
        let a = crate::arrangement::add_generic_line(&cat("fermat", &[("m", "3")]), 1).unwrap();
        assert!(supersolvable_numeric_check(&a).is_err());
    }

    #[test]
    fn witness_normalization() {
        let f = lines(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).defining_polynomial();
        let (r, w) = mdr(&f).unwrap();
        assert_eq!(r, 1);
        let first = w.components().iter().find_map(|c| c.terms().next()).unwrap();
        assert!(first.1.is_one());
    }
}
