//! Interpolation through `Z` with a fat point at a random `q`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{theorem_report, UnexpectedReport};
use crate::arrangement::{cross, dot, frame_at, inverse, mat_vec, PointSet, ProjPoint, GENERIC_COEFF_BOUND};
use crate::error::{Error, Result};
use crate::exact::{binomial, monomials, HomPoly, Monomial, Scalar};
use crate::linalg::{nullspace_basis, rank, Matrix};

/// Number of random base points per degree.
pub const DEFAULT_SAMPLES: usize = 3;
const DRAWS_PER_POINT: usize = 64;

/// Curves of degree `j` through `Z` with multiplicity at least `multiplicity` at `base`.
#[derive(Clone, Debug)]
pub struct FatPointSystem {
    pub points: PointSet,
    pub degree: u32,
    pub base: ProjPoint,
    pub multiplicity: u32,
    pub h0: usize,
    /// Kernel basis, coefficient vectors read in [`monomials`] order.
    pub basis: Vec<HomPoly>,
}

fn powers(v: &Scalar, n: u32) -> Vec<Scalar> {
    let mut out = vec![Scalar::one()];
    for e in 1..=n as usize {
        let next = &out[e - 1] * v;
        out.push(next);
    }
    out
}

fn evaluation_row(mons: &[Monomial], p: &[Scalar; 3], j: u32) -> Vec<Scalar> {
    let pw: Vec<Vec<Scalar>> = p.iter().map(|c| powers(c, j)).collect();
    mons.iter()
        .map(|e| &(&pw[0][e[0] as usize] * &pw[1][e[1] as usize]) * &pw[2][e[2] as usize])
        .collect()
}

fn check_base(z: &PointSet, q: &ProjPoint) -> Result<()> {
    if z.points().contains(q) {
        return Err(Error::InvalidArgument(format!("base point {q} lies in Z")));
    }
    Ok(())
}

/// Builds the conditions and solves for the curves.
///
/// Besides one evaluation row per point, the vanishing order at `q` is imposed
/// in the affine chart where the first nonzero coordinate of `q` is 1: the
/// Taylor coefficient of `u^α v^β` must vanish for `α + β < mult`.
pub fn h0_system(z: &PointSet, j: u32, q: &ProjPoint, mult: u32) -> Result<FatPointSystem> {
    if j == 0 || mult > j {
        return Err(Error::InvalidArgument(format!(
            "need j >= 1 and 0 <= mult <= j, got j={j}, mult={mult}"
        )));
    }
    check_base(z, q)?;
    let mons = monomials(j);
    let mut rows: Vec<Vec<Scalar>> = z
        .points()
        .iter()
        .map(|p| evaluation_row(&mons, p.coords(), j))
        .collect();
    let c = q.coords();
    let lead = (0..3).find(|&i| !c[i].is_zero()).expect("nonzero point");
    let (u, v) = match lead {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let (pu, pv) = (powers(&c[u], j), powers(&c[v], j));
    for order in 0..mult {
        for alpha in (0..=order).rev() {
            let beta = order - alpha;
            let row = mons
                .iter()
                .map(|e| {
                    let (eu, ev) = (e[u], e[v]);
                    if eu < alpha || ev < beta {
                        return Scalar::zero();
                    }
                    let b = binomial(eu as u64, alpha as u64) * binomial(ev as u64, beta as u64);
                    let t = &pu[(eu - alpha) as usize] * &pv[(ev - beta) as usize];
                    &t * &Scalar::from_int(b as i64)
                })
                .collect();
            rows.push(row);
        }
    }
    let m = Matrix::from_rows(rows)?;
    let basis: Vec<HomPoly> = nullspace_basis(&m).iter().map(|v| HomPoly::from_dense(j, v)).collect();
    Ok(FatPointSystem {
        points: z.clone(),
        degree: j,
        base: q.clone(),
        multiplicity: mult,
        h0: basis.len(),
        basis,
    })
}

/// `h0(I_Z(j))`.
pub fn h0_vanishing(z: &PointSet, j: u32) -> Result<usize> {
    let mons = monomials(j);
    let rows: Vec<Vec<Scalar>> = z
        .points()
        .iter()
        .map(|p| evaluation_row(&mons, p.coords(), j))
        .collect();
    Ok(mons.len() - rank(&Matrix::from_rows(rows)?))
}

/// The dimension of [`h0_system`] computed after moving `q` to `(1:0:0)`.
///
/// There a form has multiplicity `mult` exactly when it uses no monomial
/// `x^i y^k z^l` with `k + l < mult`, so only point conditions remain.
pub fn h0_translated(z: &PointSet, j: u32, q: &ProjPoint, mult: u32) -> Result<usize> {
    if mult > j {
        return Err(Error::InvalidArgument(format!("mult {mult} exceeds degree {j}")));
    }
    check_base(z, q)?;
    let m_inv = inverse(&frame_at(q))?;
    let mons: Vec<Monomial> = monomials(j).into_iter().filter(|e| e[1] + e[2] >= mult).collect();
    let rows: Vec<Vec<Scalar>> = z
        .points()
        .iter()
        .map(|p| evaluation_row(&mons, &mat_vec(&m_inv, p.coords()), j))
        .collect();
    Ok(mons.len() - rank(&Matrix::from_rows(rows)?))
}

/// `q` avoids `Z`, every line dual to a point of `Z` and every line joining two
/// points of `Z`.
pub fn is_certified_generic(z: &PointSet, q: &ProjPoint) -> bool {
    let pts = z.points();
    let qc = q.coords();
    if pts.contains(q) || pts.iter().any(|p| dot(p.coords(), qc).is_zero()) {
        return false;
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if dot(&cross(pts[i].coords(), pts[j].coords()), qc).is_zero() {
                return false;
            }
        }
    }
    true
}

/// `count` certified-generic rational points drawn from a seeded generator.
pub fn generic_points(z: &PointSet, count: usize, seed: u64) -> Result<Vec<ProjPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = GENERIC_COEFF_BOUND;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count * DRAWS_PER_POINT {
        if out.len() == count {
            break;
        }
        let mut c0 = rng.gen_range(-b..=b);
        if c0 == 0 {
            c0 = 1;
        }
        let q = ProjPoint::from_ints(c0, rng.gen_range(-b..=b), rng.gen_range(-b..=b))?;
        if is_certified_generic(z, &q) && !out.contains(&q) {
            out.push(q);
        }
    }
    if out.len() < count {
        return Err(Error::Computation("could not draw generic base points".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleOutcome {
    pub degree: u64,
    /// `h0` with a point of multiplicity `j - 1` at each sampled base point.
    pub sampled_h0: Vec<u64>,
    pub generic_h0: u64,
    /// `h0(I_Z(j))`.
    pub h0_points: u64,
    /// `max(0, h0(I_Z(j)) - C(j,2))`.
    pub expected: u64,
    pub unexpected: bool,
}

/// Decides unexpectedness in degree `j` by interpolation, with the generic
/// value taken as the minimum over `samples` random base points.
pub fn is_unexpected_direct_with(z: &PointSet, j: u32, seed: u64, samples: usize) -> Result<OracleOutcome> {
    if j < 2 {
        return Err(Error::InvalidArgument(format!("degree {j} below 2")));
    }
    let qs = generic_points(z, samples.max(1), seed)?;
    let sampled = qs
        .iter()
        .map(|q| h0_translated(z, j, q, j - 1).map(|h| h as u64))
        .collect::<Result<Vec<_>>>()?;
    let generic = *sampled.iter().min().expect("at least one sample");
    let h0_points = h0_vanishing(z, j)? as u64;
    let expected = h0_points.saturating_sub(binomial(j as u64, 2));
    Ok(OracleOutcome {
        degree: j as u64,
        sampled_h0: sampled,
        generic_h0: generic,
        h0_points,
        expected,
        unexpected: generic > expected,
    })
}

pub fn is_unexpected_direct(z: &PointSet, j: u32, seed: u64) -> Result<OracleOutcome> {
    is_unexpected_direct_with(z, j, seed, DEFAULT_SAMPLES)
}

/// Size limits for the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_points: usize,
    /// Largest allowed `C(j+2, 2)`.
    pub max_coeff_space: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_points: 15,
            max_coeff_space: 55,
        }
    }
}

impl OracleBudget {
    pub fn allows_degree(&self, j: u32) -> bool {
        binomial(j as u64 + 2, 2) <= self.max_coeff_space
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub agree: bool,
    pub first_disagreement: Option<u64>,
    pub outcomes: Vec<OracleOutcome>,
    pub skipped_degrees: Vec<u64>,
}

/// Runs the oracle for `2 <= j <= max_degree` and compares with `report`.
pub fn oracle_sweep(
    z: &PointSet,
    report: &UnexpectedReport,
    seed: u64,
    budget: &OracleBudget,
    max_degree: u32,
) -> Result<CrossValidation> {
    if z.len() > budget.max_points {
        return Err(Error::BudgetExceeded(format!(
            "{} points exceed the oracle budget of {}",
            z.len(),
            budget.max_points
        )));
    }
    let mut outcomes = Vec::new();
    let mut skipped = Vec::new();
    let mut first = None;
    for j in 2..=max_degree {
        if !budget.allows_degree(j) {
            skipped.push(j as u64);
            continue;
        }
        let o = is_unexpected_direct(z, j, seed)?;
        if first.is_none() && o.unexpected != report.in_range(j as u64) {
            first = Some(j as u64);
        }
        outcomes.push(o);
    }
    Ok(CrossValidation {
        agree: first.is_none(),
        first_disagreement: first,
        outcomes,
        skipped_degrees: skipped,
    })
}

/// Compares the oracle with the theorem for every `2 <= j <= d - 2`.
pub fn cross_validate(z: &PointSet, seed: u64, budget: &OracleBudget) -> Result<CrossValidation> {
    if z.len() > budget.max_points {
        return Err(Error::BudgetExceeded(format!(
            "{} points exceed the oracle budget of {}",
            z.len(),
            budget.max_points
        )));
    }
    let report = theorem_report(z)?;
    oracle_sweep(z, &report, seed, budget, z.len().saturating_sub(2) as u32)
}

/// The unique curve of degree `j` through `Z` with multiplicity `j - 1` at `q`,
/// scaled so its leading coefficient is 1.
pub fn extract_curve(z: &PointSet, j: u32, q: &ProjPoint) -> Result<HomPoly> {
    if j < 2 {
        return Err(Error::InvalidArgument(format!("degree {j} below 2")));
    }
    if !is_certified_generic(z, q) {
        return Err(Error::InvalidArgument(format!("{q} is not in general position")));
    }
    let sys = h0_system(z, j, q, j - 1)?;
    if sys.h0 != 1 {
        return Err(Error::Computation(format!(
            "kernel dimension {} at {q}; choose another seed",
            sys.h0
        )));
    }
    let c = sys.basis[0].monic();
    if z.points().iter().any(|p| !c.evaluate(p.coords()).is_zero()) {
        return Err(Error::Invariant("extracted curve misses a point of Z".into()));
    }
    let mult = c.multiplicity_at(q.coords());
    if mult != j - 1 {
        return Err(Error::Computation(format!(
            "curve has multiplicity {mult} at {q}, expected {}; choose another seed",
            j - 1
        )));
    }
    Ok(c)
}
