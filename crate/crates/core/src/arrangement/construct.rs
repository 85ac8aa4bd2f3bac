use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{dot, Arrangement, ProjLine, ProjPoint};
use crate::error::{Error, Result};
use crate::exact::Scalar;

/// Coefficients of random lines are drawn from `[-B, B]`.
pub const GENERIC_COEFF_BOUND: i64 = 1_000_000;
const MAX_RETRIES: usize = 64;

/// Removes line `i`.
pub fn delete_line(a: &Arrangement, i: usize) -> Result<Arrangement> {
    if i >= a.len() {
        return Err(Error::InvalidArgument(format!(
            "line index {i} out of range for {} lines",
            a.len()
        )));
    }
    if a.len() < 2 {
        return Err(Error::InvalidArgument("cannot delete from a single line".into()));
    }
    let mut lines = a.lines().to_vec();
    lines.remove(i);
    Arrangement::new(lines, format!("{}-L{}", a.label(), i))
}

/// Appends a line not already present.
pub fn add_line(a: &Arrangement, l: ProjLine) -> Result<Arrangement> {
    let mut lines = a.lines().to_vec();
    lines.push(l);
    Arrangement::new(lines, a.label().to_string())
}

fn random_coeff(rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(-GENERIC_COEFF_BOUND..=GENERIC_COEFF_BOUND)
}

fn avoids_lattice(a: &Arrangement, l: &ProjLine, skip: Option<usize>) -> Result<bool> {
    let lat = a.lattice()?;
    Ok(lat
        .points()
        .iter()
        .enumerate()
        .all(|(k, p)| Some(k) == skip || !l.contains(&p.point)))
}

/// Adds a random line that meets every line of `a` in a new double point.
///
/// Genericity is certified: the line differs from all lines of `a` and misses
/// every lattice point. Draws are retried a bounded number of times.
pub fn add_generic_line(a: &Arrangement, seed: u64) -> Result<Arrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let (p, q, r) = (random_coeff(&mut rng), random_coeff(&mut rng), random_coeff(&mut rng));
        let Ok(l) = ProjLine::from_ints(p, q, r) else { continue };
        if a.contains_line(&l) || !avoids_lattice(a, &l, None)? {
            continue;
        }
        let out = add_line(a, l)?;
        return Ok(out.with_label(format!("{}+generic({seed})", a.label())));
    }
    Err(Error::Computation("no generic line found".into()))
}

/// Adds a random line through the lattice point `p`, which must have maximal
/// multiplicity; the new line avoids every other lattice point.
pub fn add_generic_line_through(a: &Arrangement, p: &ProjPoint, seed: u64) -> Result<Arrangement> {
    let lat = a.lattice()?;
    let k = lat
        .find(p)
        .ok_or_else(|| Error::InvalidArgument(format!("{p} is not a lattice point")))?;
    if lat.points()[k].multiplicity() != lat.max_multiplicity() {
        return Err(Error::InvalidArgument(format!(
            "{p} does not have maximal multiplicity {}",
            lat.max_multiplicity()
        )));
    }
    // two lines of the arrangement through p span the pencil
    let through = &lat.points()[k].lines;
    let (l1, l2) = (a.lines()[through[0]].coeffs(), a.lines()[through[1]].coeffs());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let s = Scalar::from_int(random_coeff(&mut rng));
        let t = Scalar::from_int(random_coeff(&mut rng));
        let coeffs = std::array::from_fn(|i| &(&s * &l1[i]) + &(&t * &l2[i]));
        let Ok(l) = ProjLine::new(coeffs) else { continue };
        debug_assert!(dot(l.coeffs(), p.coords()).is_zero());
        if a.contains_line(&l) || !avoids_lattice(a, &l, Some(k))? {
            continue;
        }
        let out = add_line(a, l)?;
        return Ok(out.with_label(format!("{}+pencil({seed})", a.label())));
    }
    Err(Error::Computation("no generic line through the point found".into()))
}
