//! Named arrangements: Fermat, full monomial and their relatives, B3, Hessian.

use std::collections::BTreeMap;

use super::{delete_line, Arrangement, ProjLine};
use crate::error::{Error, Result};
use crate::exact::Scalar;

/// `key=value` parameters of a catalog entry.
pub type CatalogParams = BTreeMap<String, String>;

#[derive(Clone, Debug)]
pub struct CatalogInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub description: &'static str,
}

pub fn catalog_names() -> Vec<CatalogInfo> {
    vec![
        CatalogInfo {
            name: "fermat",
            params: "m>=3",
            description: "(x^m-y^m)(y^m-z^m)(z^m-x^m), 3m lines (alias A0)",
        },
        CatalogInfo {
            name: "A1",
            params: "m>=3",
            description: "x times the Fermat arrangement, 3m+1 lines",
        },
        CatalogInfo {
            name: "A2",
            params: "m>=3",
            description: "xy times the Fermat arrangement, 3m+2 lines",
        },
        CatalogInfo {
            name: "full_monomial",
            params: "m>=3",
            description: "xyz(x^n-y^n)(y^n-z^n)(z^n-x^n) with n=m-2, 3m-3 lines (alias M)",
        },
        CatalogInfo {
            name: "Mmk",
            params: "m>=3 k w=e1,...,ek",
            description: "xyz(x^n-y^n)(x^n-z^n) prod_j (z - z(n)^e_j y), n=m-2, 0<=k<n, 2m-1+k lines",
        },
        CatalogInfo {
            name: "B3",
            params: "",
            description: "the B3 arrangement, full_monomial with m=4, 9 lines",
        },
        CatalogInfo {
            name: "hessian",
            params: "",
            description: "xyz((x^3+y^3+z^3)^3-27x^3y^3z^3), 12 lines",
        },
        CatalogInfo {
            name: "hessian_minus",
            params: "line=0..11",
            description: "the Hessian arrangement with one line deleted, 11 lines",
        },
        CatalogInfo {
            name: "pencil",
            params: "d>=2",
            description: "d concurrent lines",
        },
        CatalogInfo {
            name: "near_pencil",
            params: "d>=3",
            description: "d-1 concurrent lines and one more line",
        },
    ]
}

struct Params<'a> {
    name: &'a str,
    map: &'a CatalogParams,
}

impl Params<'_> {
    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for k in self.map.keys() {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "unknown parameter `{k}` for {}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    fn int(&self, key: &str, default: Option<i64>) -> Result<i64> {
        match self.map.get(key) {
            Some(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("parameter {key}={v} is not an integer"))),
            None => default.ok_or_else(|| Error::InvalidArgument(format!("{} requires parameter `{key}`", self.name))),
        }
    }

    fn list(&self, key: &str) -> Result<Option<Vec<i64>>> {
        self.map
            .get(key)
            .map(|v| {
                v.split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| {
                        s.trim()
                            .parse()
                            .map_err(|_| Error::InvalidArgument(format!("bad entry `{s}` in {key}")))
                    })
                    .collect()
            })
            .transpose()
    }
}

fn at_least(name: &str, key: &str, v: i64, min: i64) -> Result<u32> {
    if v < min {
        return Err(Error::InvalidArgument(format!(
            "{name} requires {key} >= {min}, got {v}"
        )));
    }
    u32::try_from(v).map_err(|_| Error::InvalidArgument(format!("{key} too large")))
}

fn line(a: Scalar, b: Scalar, c: Scalar) -> Result<ProjLine> {
    ProjLine::new([a, b, c])
}

fn zero() -> Scalar {
    Scalar::zero()
}

fn one() -> Scalar {
    Scalar::one()
}

/// Lines `x - ζ^k y`, `y - ζ^k z`, `z - ζ^k x` for `k < n`.
fn fermat_lines(n: u32) -> Result<Vec<ProjLine>> {
    let roots = (0..n)
        .map(|k| Scalar::zeta_pow(n, k as i64))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(3 * n as usize);
    for w in &roots {
        out.push(line(one(), -w, zero())?);
    }
    for w in &roots {
        out.push(line(zero(), one(), -w)?);
    }
    for w in &roots {
        out.push(line(-w, zero(), one())?);
    }
    Ok(out)
}

fn coordinate_lines() -> Result<Vec<ProjLine>> {
    Ok(vec![
        ProjLine::from_ints(1, 0, 0)?,
        ProjLine::from_ints(0, 1, 0)?,
        ProjLine::from_ints(0, 0, 1)?,
    ])
}

fn full_monomial(m: u32) -> Result<Vec<ProjLine>> {
    let mut lines = coordinate_lines()?;
    lines.extend(fermat_lines(m - 2)?);
    Ok(lines)
}

fn mmk(m: u32, k: u32, exps: &[i64]) -> Result<Vec<ProjLine>> {
    let n = m - 2;
    let mut lines = coordinate_lines()?;
    for a in 0..n {
        lines.push(line(one(), -Scalar::zeta_pow(n, a as i64)?, zero())?);
    }
    for a in 0..n {
        lines.push(line(one(), zero(), -Scalar::zeta_pow(n, a as i64)?)?);
    }
    debug_assert_eq!(exps.len(), k as usize);
    for &e in exps {
        lines.push(line(zero(), -Scalar::zeta_pow(n, e)?, one())?);
    }
    Ok(lines)
}

fn hessian() -> Result<Vec<ProjLine>> {
    let mut lines = coordinate_lines()?;
    for a in 0..3 {
        for b in 0..3 {
            lines.push(line(Scalar::zeta_pow(3, a)?, Scalar::zeta_pow(3, b)?, one())?);
        }
    }
    Ok(lines)
}

fn pencil(d: u32) -> Result<Vec<ProjLine>> {
    let mut lines = vec![ProjLine::from_ints(0, 1, 0)?];
    for k in 0..d as i64 - 1 {
        lines.push(ProjLine::from_ints(1, -k, 0)?);
    }
    Ok(lines)
}

fn format_label(name: &str, params: &CatalogParams) -> String {
    if params.is_empty() {
        name.to_string()
    } else {
        let p: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{name}({})", p.join(" "))
    }
}

/// Builds a named arrangement with exact cyclotomic coefficients.
pub fn catalog_build(name: &str, params: &CatalogParams) -> Result<Arrangement> {
    let canonical = match name.to_ascii_lowercase().as_str() {
        "fermat" | "a0" => "fermat",
        "a1" => "A1",
        "a2" => "A2",
        "full_monomial" | "m" => "full_monomial",
        "mmk" => "Mmk",
        "b3" => "B3",
        "hessian" | "h" => "hessian",
        "hessian_minus" => "hessian_minus",
        "pencil" => "pencil",
        "near_pencil" => "near_pencil",
        _ => return Err(Error::UnknownCatalog(name.to_string())),
    };
    let p = Params {
        name: canonical,
        map: params,
    };
    let lines = match canonical {
        "fermat" | "A1" | "A2" => {
            p.check_keys(&["m"])?;
            let m = at_least(canonical, "m", p.int("m", None)?, 3)?;
            let mut lines = fermat_lines(m)?;
            if canonical != "fermat" {
                lines.push(ProjLine::from_ints(1, 0, 0)?);
            }
            if canonical == "A2" {
                lines.push(ProjLine::from_ints(0, 1, 0)?);
            }
            lines
        }
        "full_monomial" => {
            p.check_keys(&["m"])?;
            full_monomial(at_least(canonical, "m", p.int("m", None)?, 3)?)?
        }
        "B3" => {
            p.check_keys(&[])?;
            full_monomial(4)?
        }
        "Mmk" => {
            p.check_keys(&["m", "k", "w"])?;
            let m = at_least(canonical, "m", p.int("m", None)?, 3)?;
            let n = m - 2;
            let k = at_least(canonical, "k", p.int("k", Some(0))?, 0)?;
            if k >= n {
                return Err(Error::InvalidArgument(format!("Mmk requires k < m-2 = {n}")));
            }
            let exps = p.list("w")?.unwrap_or_else(|| (1..=k as i64).collect());
            if exps.len() != k as usize {
                return Err(Error::InvalidArgument(format!(
                    "w has {} entries, expected k = {k}",
                    exps.len()
                )));
            }
            let mut reduced: Vec<i64> = exps.iter().map(|e| e.rem_euclid(n as i64)).collect();
            reduced.sort_unstable();
            if reduced.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument("w has repeated roots of unity".into()));
            }
            mmk(m, k, &exps)?
        }
        "hessian" => {
            p.check_keys(&[])?;
            hessian()?
        }
        "hessian_minus" => {
            p.check_keys(&["line"])?;
            let i = p.int("line", Some(0))?;
            if !(0..12).contains(&i) {
                return Err(Error::InvalidArgument("line must be in 0..12".into()));
            }
            let h = Arrangement::new(hessian()?, "hessian")?;
            return Ok(delete_line(&h, i as usize)?.with_label(format_label(canonical, params)));
        }
        "pencil" => {
            p.check_keys(&["d"])?;
            pencil(at_least(canonical, "d", p.int("d", None)?, 2)?)?
        }
        "near_pencil" => {
            p.check_keys(&["d"])?;
            let d = at_least(canonical, "d", p.int("d", None)?, 3)?;
            let mut lines = pencil(d - 1)?;
            lines.push(ProjLine::from_ints(0, 0, 1)?);
            lines
        }
        _ => unreachable!(),
    };
    Arrangement::new(lines, format_label(canonical, params))
}

fn params(pairs: &[(&str, &str)]) -> CatalogParams {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

/// A fixed list of parameterized catalog instances, in increasing size.
pub fn standard_entries() -> Vec<Arrangement> {
    let specs: Vec<(&str, CatalogParams)> = vec![
        ("full_monomial", params(&[("m", "3")])),
        ("fermat", params(&[("m", "3")])),
        ("B3", params(&[])),
        ("Mmk", params(&[("m", "5"), ("k", "0")])),
        ("A1", params(&[("m", "3")])),
        ("Mmk", params(&[("m", "5"), ("k", "1")])),
        ("A2", params(&[("m", "3")])),
        ("Mmk", params(&[("m", "5"), ("k", "2"), ("w", "1,2")])),
        ("hessian_minus", params(&[])),
        ("fermat", params(&[("m", "4")])),
        ("full_monomial", params(&[("m", "5")])),
        ("hessian", params(&[])),
        ("A1", params(&[("m", "4")])),
        ("Mmk", params(&[("m", "6"), ("k", "2"), ("w", "1,3")])),
        ("A2", params(&[("m", "4")])),
        ("fermat", params(&[("m", "5")])),
        ("full_monomial", params(&[("m", "6")])),
        ("A1", params(&[("m", "5")])),
        ("fermat", params(&[("m", "6")])),
    ];
    specs
        .into_iter()
        .map(|(n, p)| catalog_build(n, &p).expect("standard catalog entry"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_counts() {
        for m in 3..7 {
            let mp = params(&[("m", &m.to_string())]);
            assert_eq!(catalog_build("fermat", &mp).unwrap().len(), 3 * m);
            assert_eq!(catalog_build("A1", &mp).unwrap().len(), 3 * m + 1);
            assert_eq!(catalog_build("A2", &mp).unwrap().len(), 3 * m + 2);
            assert_eq!(catalog_build("full_monomial", &mp).unwrap().len(), 3 * m - 3);
        }
        assert_eq!(catalog_build("B3", &params(&[])).unwrap().len(), 9);
        assert_eq!(catalog_build("hessian", &params(&[])).unwrap().len(), 12);
        assert_eq!(
            catalog_build("hessian_minus", &params(&[("line", "5")])).unwrap().len(),
            11
        );
        let mk = catalog_build("Mmk", &params(&[("m", "5"), ("k", "2"), ("w", "1,2")])).unwrap();
        assert_eq!(mk.len(), 2 * 5 - 1 + 2);
    }

    #[test]
    fn b3_is_full_monomial_four() {
        let b3 = catalog_build("B3", &params(&[])).unwrap();
        let m4 = catalog_build("full_monomial", &params(&[("m", "4")])).unwrap();
        assert_eq!(b3, m4);
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(
            catalog_build("nope", &params(&[])),
            Err(Error::UnknownCatalog(_))
        ));
        assert!(catalog_build("fermat", &params(&[("m", "2")])).is_err());
        assert!(catalog_build("fermat", &params(&[])).is_err());
        assert!(catalog_build("fermat", &params(&[("m", "3"), ("q", "1")])).is_err());
        assert!(catalog_build("Mmk", &params(&[("m", "5"), ("k", "3")])).is_err());
        // repeated w_j
        assert!(catalog_build("Mmk", &params(&[("m", "5"), ("k", "2"), ("w", "1,4")])).is_err());
        assert!(catalog_build("fermat", &params(&[("m", "65")])).is_err());
    }
}
