//! Points and lines of the projective plane, line arrangements and their duals.

mod catalog;
mod construct;
mod lattice;

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{check_conductor, HomPoly, Scalar};

pub use catalog::{catalog_build, catalog_names, standard_entries, CatalogInfo, CatalogParams};
pub use construct::{add_generic_line, add_generic_line_through, add_line, delete_line, GENERIC_COEFF_BOUND};
pub use lattice::{is_supersolvable, lattice, modular_points, IntersectionLattice, LatticePoint};

/// 3×3 matrix acting on homogeneous coordinates.
pub type Mat3 = [[Scalar; 3]; 3];

fn normalize_triple(mut v: [Scalar; 3]) -> Result<[Scalar; 3]> {
    let lead = v
        .iter()
        .find(|s| !s.is_zero())
        .cloned()
        .ok_or_else(|| Error::InvalidArgument("all coordinates are zero".into()))?;
    if !lead.is_one() {
        let inv = lead.inv()?;
        for s in v.iter_mut() {
            *s = &*s * &inv;
        }
    }
    Ok(v)
}

fn triple_key(v: &[Scalar; 3], n: u32) -> Vec<BigRational> {
    v.iter().flat_map(|s| s.embed(n)).collect()
}

fn triple_conductor(v: &[Scalar; 3]) -> u32 {
    v.iter().fold(1, |acc, s| acc.lcm(&s.conductor()))
}

pub(crate) fn cross(a: &[Scalar; 3], b: &[Scalar; 3]) -> [Scalar; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub(crate) fn dot(a: &[Scalar; 3], b: &[Scalar; 3]) -> Scalar {
    let s = &(&a[0] * &b[0]) + &(&a[1] * &b[1]);
    &s + &(&a[2] * &b[2])
}

pub(crate) fn det3(a: &[Scalar; 3], b: &[Scalar; 3], c: &[Scalar; 3]) -> Scalar {
    dot(a, &cross(b, c))
}

pub fn mat_vec(m: &Mat3, v: &[Scalar; 3]) -> [Scalar; 3] {
    [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v)]
}

pub fn transpose(m: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

/// Inverse via the adjugate; errors on a singular matrix.
pub fn inverse(m: &Mat3) -> Result<Mat3> {
    let det = det3(&m[0], &m[1], &m[2]);
    if det.is_zero() {
        return Err(Error::InvalidArgument("singular matrix".into()));
    }
    let inv_det = det.inv()?;
    // columns of the inverse are cross products of rows
    let c0 = cross(&m[1], &m[2]);
    let c1 = cross(&m[2], &m[0]);
    let c2 = cross(&m[0], &m[1]);
    Ok(std::array::from_fn(|i| {
        [&c0[i] * &inv_det, &c1[i] * &inv_det, &c2[i] * &inv_det]
    }))
}

/// The matrix with columns `p, e_a, e_b`, where `a < b` are the coordinates
/// other than the first nonzero one of `p`. It sends `(1:0:0)` to `p` and has
/// determinant ±1.
pub fn frame_at(p: &ProjPoint) -> Mat3 {
    let c = p.coords();
    let lead = (0..3).find(|&i| !c[i].is_zero()).expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&i| i != lead).collect();
    std::array::from_fn(|i| {
        [
            c[i].clone(),
            if i == others[0] { Scalar::one() } else { Scalar::zero() },
            if i == others[1] { Scalar::one() } else { Scalar::zero() },
        ]
    })
}

/// A point of the projective plane; the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    coords: [Scalar; 3],
}

impl ProjPoint {
    pub fn new(coords: [Scalar; 3]) -> Result<Self> {
        Ok(ProjPoint {
            coords: normalize_triple(coords)?,
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        ProjPoint::new([a.into(), b.into(), c.into()])
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.coords
    }

    pub fn conductor(&self) -> u32 {
        triple_conductor(&self.coords)
    }

    pub(crate) fn key(&self, n: u32) -> Vec<BigRational> {
        triple_key(&self.coords, n)
    }

    /// Line joining two distinct points.
    pub fn join(&self, other: &ProjPoint) -> Result<ProjLine> {
        ProjLine::new(cross(&self.coords, &other.coords)).map_err(|_| Error::InvalidArgument("points coincide".into()))
    }

    pub fn transform(&self, m: &Mat3) -> Result<ProjPoint> {
        ProjPoint::new(mat_vec(m, &self.coords))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coords;
        write!(f, "[{}, {}, {}]", c[0], c[1], c[2])
    }
}

/// The line `a x + b y + c z = 0`, normalized like [`ProjPoint`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjLine {
    coeffs: [Scalar; 3],
}

impl ProjLine {
    pub fn new(coeffs: [Scalar; 3]) -> Result<Self> {
        Ok(ProjLine {
            coeffs: normalize_triple(coeffs)?,
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        ProjLine::new([a.into(), b.into(), c.into()])
    }

    pub fn coeffs(&self) -> &[Scalar; 3] {
        &self.coeffs
    }

    pub fn conductor(&self) -> u32 {
        triple_conductor(&self.coeffs)
    }

    pub(crate) fn key(&self, n: u32) -> Vec<BigRational> {
        triple_key(&self.coeffs, n)
    }

    pub fn linear_form(&self) -> HomPoly {
        HomPoly::linear(&self.coeffs)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        dot(&self.coeffs, p.coords()).is_zero()
    }

    /// Intersection point with another line.
    pub fn meet(&self, other: &ProjLine) -> Result<ProjPoint> {
        ProjPoint::new(cross(&self.coeffs, &other.coeffs)).map_err(|_| Error::InvalidArgument("lines coincide".into()))
    }

    /// Image under the point transformation `p ↦ M p`, i.e. coefficients
    /// multiplied by `M^{-T}`.
    pub fn transform(&self, m: &Mat3) -> Result<ProjLine> {
        let inv_t = transpose(&inverse(m)?);
        ProjLine::new(mat_vec(&inv_t, &self.coeffs))
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coeffs;
        write!(f, "[{}, {}, {}]", c[0], c[1], c[2])
    }
}

fn common_conductor<'a>(it: impl Iterator<Item = u32> + 'a) -> u32 {
    it.fold(1, |acc, n| acc.lcm(&n))
}

fn ensure_distinct(keys: impl Iterator<Item = Vec<BigRational>>, what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for (i, k) in keys.enumerate() {
        if !seen.insert(k) {
            return Err(Error::InvalidArgument(format!("duplicate {what} at index {i}")));
        }
    }
    Ok(())
}

/// An ordered set of distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<ProjPoint>,
    label: String,
}

impl PointSet {
    pub fn new(points: Vec<ProjPoint>, label: impl Into<String>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("empty point set".into()));
        }
        let n = common_conductor(points.iter().map(ProjPoint::conductor));
        check_conductor(n)?;
        ensure_distinct(points.iter().map(|p| p.key(n)), "point")?;
        Ok(PointSet {
            points,
            label: label.into(),
        })
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn conductor(&self) -> u32 {
        common_conductor(self.points.iter().map(ProjPoint::conductor))
    }

    /// `Z_i`: the set with point `i` forgotten.
    pub fn without(&self, i: usize) -> Result<PointSet> {
        if i >= self.points.len() || self.points.len() < 2 {
            return Err(Error::InvalidArgument(format!("cannot remove point {i}")));
        }
        let mut points = self.points.clone();
        points.remove(i);
        PointSet::new(points, format!("{}-p{}", self.label, i))
    }

    pub fn transform(&self, m: &Mat3) -> Result<PointSet> {
        let pts = self.points.iter().map(|p| p.transform(m)).collect::<Result<_>>()?;
        PointSet::new(pts, self.label.clone())
    }
}

/// An ordered set of distinct lines with a lazily computed intersection lattice.
#[derive(Clone, Debug)]
pub struct Arrangement {
    lines: Vec<ProjLine>,
    label: String,
    lattice: OnceLock<std::result::Result<IntersectionLattice, String>>,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.lines == other.lines
    }
}

impl Arrangement {
    pub fn new(lines: Vec<ProjLine>, label: impl Into<String>) -> Result<Self> {
        let n = common_conductor(lines.iter().map(ProjLine::conductor));
        check_conductor(n)?;
        ensure_distinct(lines.iter().map(|l| l.key(n)), "line")?;
        Ok(Arrangement {
            lines,
            label: label.into(),
            lattice: OnceLock::new(),
        })
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn conductor(&self) -> u32 {
        common_conductor(self.lines.iter().map(ProjLine::conductor))
    }

    pub fn contains_line(&self, l: &ProjLine) -> bool {
        self.lines.iter().any(|m| m == l)
    }

    /// Intersection lattice, computed once.
    pub fn lattice(&self) -> Result<&IntersectionLattice> {
        self.lattice
            .get_or_init(|| lattice::compute(self).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| Error::Invariant(e.clone()))
    }

    /// Maximal multiplicity `m(A)` of an intersection point (1 for a single line).
    pub fn max_multiplicity(&self) -> Result<usize> {
        Ok(self.lattice()?.max_multiplicity())
    }

    /// `f = ∏ ℓ_i`.
    pub fn defining_polynomial(&self) -> HomPoly {
        self.lines
            .iter()
            .fold(HomPoly::constant(Scalar::one()), |acc, l| acc.mul(&l.linear_form()))
    }

    pub fn transform(&self, m: &Mat3) -> Result<Arrangement> {
        let lines = self.lines.iter().map(|l| l.transform(m)).collect::<Result<_>>()?;
        Arrangement::new(lines, self.label.clone())
    }
}

/// `Z ↦ A_Z`: the point `(a:b:c)` becomes the line `a x + b y + c z = 0`.
pub fn dualize(z: &PointSet) -> Arrangement {
    let lines = z
        .points
        .iter()
        .map(|p| ProjLine {
            coeffs: p.coords.clone(),
        })
        .collect();
    Arrangement {
        lines,
        label: z.label.clone(),
        lattice: OnceLock::new(),
    }
}

/// Inverse of [`dualize`].
pub fn dualize_inv(a: &Arrangement) -> PointSet {
    PointSet {
        points: a
            .lines
            .iter()
            .map(|l| ProjPoint {
                coords: l.coeffs.clone(),
            })
            .collect(),
        label: a.label.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_normalization() {
        let p = ProjPoint::from_ints(0, 2, 4).unwrap();
        assert_eq!(p, ProjPoint::from_ints(0, 1, 2).unwrap());
        assert!(ProjPoint::from_ints(0, 0, 0).is_err());
    }

    #[test]
    fn dual_of_single_point() {
        let z = PointSet::new(vec![ProjPoint::from_ints(1, 0, 0).unwrap()], "p").unwrap();
        let a = dualize(&z);
        assert_eq!(a.lines()[0], ProjLine::from_ints(1, 0, 0).unwrap());
        assert_eq!(dualize_inv(&a), z);
    }

    #[test]
    fn duplicate_lines_rejected() {
        let l = ProjLine::from_ints(1, 2, 3).unwrap();
        let l2 = ProjLine::from_ints(2, 4, 6).unwrap();
        assert!(Arrangement::new(vec![l, l2], "dup").is_err());
    }

    #[test]
    fn triangle_polynomial() {
        let a = Arrangement::new(
            vec![
                ProjLine::from_ints(1, 0, 0).unwrap(),
                ProjLine::from_ints(0, 1, 0).unwrap(),
                ProjLine::from_ints(0, 0, 1).unwrap(),
            ],
            "triangle",
        )
        .unwrap();
        assert_eq!(a.defining_polynomial(), HomPoly::monomial([1, 1, 1], Scalar::one()));
    }

    #[test]
    fn inverse_matrix() {
        let m: Mat3 = [
            [2.into(), 1.into(), 0.into()],
            [0.into(), 1.into(), 3.into()],
            [1.into(), 0.into(), 1.into()],
        ];
        let inv = inverse(&m).unwrap();
        let v = [Scalar::from_int(1), Scalar::from_int(-2), Scalar::from_int(5)];
        assert_eq!(mat_vec(&inv, &mat_vec(&m, &v)), v);
    }
}
