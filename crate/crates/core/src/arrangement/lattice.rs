use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{cross, Arrangement, ProjPoint};
use crate::error::{Error, Result};
use crate::exact::binomial;

/// An intersection point together with the indices of the lines through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub point: ProjPoint,
    /// Sorted line indices.
    pub lines: Vec<usize>,
}

impl LatticePoint {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }
}

/// The multiple points of an arrangement.
///
/// Points are listed in order of first appearance when scanning line pairs
/// `(i, j)`, `i < j`, lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    d: usize,
    points: Vec<LatticePoint>,
}

pub(super) fn compute(a: &Arrangement) -> Result<IntersectionLattice> {
    let d = a.len();
    let n = a.conductor();
    let mut index: HashMap<Vec<BigRational>, usize> = HashMap::new();
    let mut points: Vec<LatticePoint> = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let p = ProjPoint::new(cross(a.lines[i].coeffs(), a.lines[j].coeffs()))
                .map_err(|_| Error::Invariant(format!("lines {i} and {j} coincide")))?;
            let key = p.key(n);
            let idx = *index.entry(key).or_insert_with(|| {
                points.push(LatticePoint {
                    point: p,
                    lines: Vec::new(),
                });
                points.len() - 1
            });
            let lp = &mut points[idx];
            for k in [i, j] {
                if let Err(pos) = lp.lines.binary_search(&k) {
                    lp.lines.insert(pos, k);
                }
            }
        }
    }
    let lat = IntersectionLattice { d, points };
    let lhs: u64 = lat.points.iter().map(|p| binomial(p.multiplicity() as u64, 2)).sum();
    if lhs != binomial(d as u64, 2) {
        return Err(Error::Invariant(format!("pair count {lhs} differs from C({d},2)")));
    }
    Ok(lat)
}

/// Intersection lattice of `a` (a copy of the cached value).
pub fn lattice(a: &Arrangement) -> Result<IntersectionLattice> {
    a.lattice().cloned()
}

impl IntersectionLattice {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    /// `n_k` for every multiplicity `k` that occurs.
    pub fn multiplicity_profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for p in &self.points {
            *out.entry(p.multiplicity()).or_insert(0) += 1;
        }
        out
    }

    pub fn n_k(&self, k: usize) -> usize {
        self.points.iter().filter(|p| p.multiplicity() == k).count()
    }

    /// `m(A)`; 1 for a single line and 0 for the empty arrangement.
    pub fn max_multiplicity(&self) -> usize {
        self.points
            .iter()
            .map(LatticePoint::multiplicity)
            .max()
            .unwrap_or(self.d.min(1))
    }

    /// First point of maximal multiplicity.
    pub fn max_point(&self) -> Option<&LatticePoint> {
        let m = self.max_multiplicity();
        self.points.iter().find(|p| p.multiplicity() == m)
    }

    /// Arnold exponents `α_p = 2 / m_p`, one per lattice point.
    pub fn arnold_exponents(&self) -> Vec<BigRational> {
        self.points
            .iter()
            .map(|p| BigRational::new(BigInt::from(2), BigInt::from(p.multiplicity())))
            .collect()
    }

    pub fn min_arnold_exponent(&self) -> Option<BigRational> {
        self.arnold_exponents().into_iter().min()
    }

    /// Global Tjurina number `Σ n_k (k-1)^2`.
    pub fn tjurina(&self) -> u64 {
        self.points
            .iter()
            .map(|p| {
                let k = p.multiplicity() as u64 - 1;
                k * k
            })
            .sum()
    }

    pub fn find(&self, p: &ProjPoint) -> Option<usize> {
        self.points.iter().position(|lp| &lp.point == p)
    }

    /// Indices of lattice points on line `i`.
    pub fn points_on_line(&self, i: usize) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&k| self.points[k].lines.binary_search(&i).is_ok())
            .collect()
    }

    pub fn is_pencil(&self) -> bool {
        self.d >= 2 && self.n_k(self.d) == 1
    }

    pub fn is_near_pencil(&self) -> bool {
        self.d >= 3 && self.n_k(self.d) == 0 && self.n_k(self.d - 1) >= 1
    }

    fn is_modular(&self, k: usize) -> bool {
        let lines = &self.points[k].lines;
        self.points
            .iter()
            .enumerate()
            .all(|(j, q)| j == k || q.lines.iter().any(|l| lines.binary_search(l).is_ok()))
    }

    /// Indices of modular points: every other lattice point is joined to them
    /// by a line of the arrangement.
    pub fn modular_indices(&self) -> Vec<usize> {
        (0..self.points.len()).filter(|&k| self.is_modular(k)).collect()
    }
}

/// Modular points of `a`.
pub fn modular_points(a: &Arrangement) -> Result<Vec<ProjPoint>> {
    let lat = a.lattice()?;
    Ok(lat
        .modular_indices()
        .into_iter()
        .map(|k| lat.points[k].point.clone())
        .collect())
}

/// Combinatorial supersolvability.
///
/// A rank-3 lattice is supersolvable when it has a modular point: the chain
/// `line < modular point < plane` is then a maximal chain of modular elements,
/// because the localization at any point is a pencil. Pencils, near-pencils and
/// arrangements of at most two lines are the base cases.
pub fn is_supersolvable(a: &Arrangement) -> Result<bool> {
    let lat = a.lattice()?;
    if a.len() <= 2 || lat.is_pencil() || lat.is_near_pencil() {
        return Ok(true);
    }
    Ok(!lat.modular_indices().is_empty())
}
