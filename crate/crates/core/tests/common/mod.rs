#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unexpected_core::arrangement::{catalog_build, dualize, Arrangement, CatalogParams, PointSet, ProjLine, ProjPoint};

pub fn cat(name: &str, kv: &[(&str, &str)]) -> Arrangement {
    let p: CatalogParams = kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    catalog_build(name, &p).unwrap()
}

pub fn fermat(m: u32) -> Arrangement {
    cat("fermat", &[("m", &m.to_string())])
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_point(rng: &mut ChaCha8Rng, range: i64) -> Option<ProjPoint> {
    let c: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-range..=range));
    ProjPoint::from_ints(c[0], c[1], c[2]).ok()
}

/// `d` distinct points with integer coordinates in `[-range, range]`.
pub fn random_points(rng: &mut ChaCha8Rng, d: usize, range: i64) -> PointSet {
    let mut pts: Vec<ProjPoint> = Vec::new();
    while pts.len() < d {
        if let Some(p) = random_point(rng, range) {
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
    }
    PointSet::new(pts, "random").unwrap()
}

/// `d` points, no four on a line, built one point at a time with rejection.
pub fn random_points_no_four_collinear(rng: &mut ChaCha8Rng, d: usize, range: i64) -> PointSet {
    loop {
        let mut pts: Vec<ProjPoint> = Vec::new();
        let mut attempts = 0;
        while pts.len() < d && attempts < 10_000 {
            attempts += 1;
            let Some(p) = random_point(rng, range) else { continue };
            if pts.contains(&p) {
                continue;
            }
            let mut trial = pts.clone();
            trial.push(p);
            let z = PointSet::new(trial.clone(), "t").unwrap();
            if trial.len() < 2 || dualize(&z).max_multiplicity().unwrap() <= 3 {
                pts = trial;
            }
        }
        if pts.len() == d {
            return PointSet::new(pts, "random-m3").unwrap();
        }
    }
}

/// `d` distinct lines with integer coefficients in `[-range, range]`.
pub fn random_lines(rng: &mut ChaCha8Rng, d: usize, range: i64) -> Arrangement {
    let mut lines: Vec<ProjLine> = Vec::new();
    while lines.len() < d {
        let c: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-range..=range));
        if let Ok(l) = ProjLine::from_ints(c[0], c[1], c[2]) {
            if !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    Arrangement::new(lines, "random").unwrap()
}

/// Same line set, possibly in another order.
pub fn same_lines(a: &Arrangement, b: &Arrangement) -> bool {
    a.len() == b.len() && a.lines().iter().all(|l| b.contains_line(l))
}
