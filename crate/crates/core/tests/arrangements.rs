mod common;

use common::{cat, fermat, random_lines, random_points, same_lines};
use proptest::prelude::*;

use unexpected_core::arrangement::{
    add_generic_line, add_generic_line_through, add_line, delete_line, dualize, dualize_inv, is_supersolvable,
    modular_points, standard_entries, Arrangement, Mat3, ProjLine, ProjPoint,
};
use unexpected_core::exact::{binomial, HomPoly, Scalar, Var};

fn point_count_inequality_holds(a: &Arrangement) -> bool {
    let lat = a.lattice().unwrap();
    let d = a.len() as i64;
    // 4 n2 + 3 n3 - 4 d >= 4 Σ_{k>4} (k-4) n_k
    let lhs = 4 * lat.n_k(2) as i64 + 3 * lat.n_k(3) as i64 - 4 * d;
    let rhs: i64 = lat
        .multiplicity_profile()
        .iter()
        .filter(|(k, _)| **k > 4)
        .map(|(k, n)| 4 * (*k as i64 - 4) * *n as i64)
        .sum();
    lhs >= rhs
}

fn eq_sum_holds(a: &Arrangement) -> bool {
    let lat = a.lattice().unwrap();
    let s: u64 = lat
        .multiplicity_profile()
        .iter()
        .map(|(k, n)| *n as u64 * binomial(*k as u64, 2))
        .sum();
    s == binomial(a.len() as u64, 2)
}

#[test]
fn fermat_three_lattice() {
    let lat = fermat(3).lattice().unwrap().clone();
    assert_eq!(lat.n_k(3), 12);
    assert_eq!(lat.multiplicity_profile().len(), 1);
    assert_eq!(lat.max_multiplicity(), 3);
    assert_eq!(12 * 3, binomial(9, 2));
}

#[test]
fn b3_lattice() {
    let lat = cat("B3", &[]).lattice().unwrap().clone();
    assert_eq!((lat.n_k(2), lat.n_k(3), lat.n_k(4)), (6, 4, 3));
    assert_eq!(lat.max_multiplicity(), 4);
}

#[test]
fn hessian_lattice() {
    let h = cat("hessian", &[]);
    let lat = h.lattice().unwrap();
    assert_eq!((lat.n_k(2), lat.n_k(4)), (12, 9));
    for i in 0..12 {
        let on = lat.points_on_line(i);
        let doubles = on.iter().filter(|&&k| lat.points()[k].multiplicity() == 2).count();
        let quads = on.iter().filter(|&&k| lat.points()[k].multiplicity() == 4).count();
        assert_eq!((doubles, quads), (2, 3));
    }
}

#[test]
fn hessian_dual_points() {
    // (1:0:0), (0:1:0), (0:0:1) and (w1:w2:1) for w in μ3 × μ3
    let h = cat("hessian", &[]);
    let z = dualize_inv(&h);
    let mut expected = vec![
        ProjPoint::from_ints(1, 0, 0).unwrap(),
        ProjPoint::from_ints(0, 1, 0).unwrap(),
        ProjPoint::from_ints(0, 0, 1).unwrap(),
    ];
    for a in 0..3 {
        for b in 0..3 {
            expected.push(
                ProjPoint::new([
                    Scalar::zeta_pow(3, a).unwrap(),
                    Scalar::zeta_pow(3, b).unwrap(),
                    Scalar::one(),
                ])
                .unwrap(),
            );
        }
    }
    assert_eq!(z.len(), 12);
    assert!(expected.iter().all(|p| z.points().contains(p)));
}

#[test]
fn defining_polynomials() {
    let x = HomPoly::var(Var::X);
    let y = HomPoly::var(Var::Y);
    let z = HomPoly::var(Var::Z);
    let cube = |p: &HomPoly| p.mul(p).mul(p);
    let tri = Arrangement::new(
        vec![
            ProjLine::from_ints(1, 0, 0).unwrap(),
            ProjLine::from_ints(0, 1, 0).unwrap(),
            ProjLine::from_ints(0, 0, 1).unwrap(),
        ],
        "t",
    )
    .unwrap();
    assert_eq!(tri.defining_polynomial(), x.mul(&y).mul(&z));

    let s = cube(&x).add(&cube(&y)).unwrap().add(&cube(&z)).unwrap();
    let xyz = x.mul(&y).mul(&z);
    let fh = xyz.mul(&cube(&s).sub(&cube(&xyz).scale(&Scalar::from_int(27))).unwrap());
    assert!(cat("hessian", &[]).defining_polynomial().is_scalar_multiple_of(&fh));
}

#[test]
fn deletion_relations() {
    // f^1 = x f^0 and f^2 = y f^1
    let a1 = cat("A1", &[("m", "4")]);
    let x = HomPoly::var(Var::X);
    let q = a1.defining_polynomial().divide_exact(&x).unwrap();
    assert!(q.is_scalar_multiple_of(&fermat(4).defining_polynomial()));
    let a2 = cat("A2", &[("m", "4")]);
    assert!(a2
        .defining_polynomial()
        .divide_exact(&HomPoly::var(Var::Y))
        .unwrap()
        .is_scalar_multiple_of(&a1.defining_polynomial()));
}

#[test]
fn modular_points_and_supersolvability() {
    for m in [3, 4] {
        let a2 = cat("A2", &[("m", &m.to_string())]);
        assert_eq!(
            modular_points(&a2).unwrap(),
            vec![ProjPoint::from_ints(0, 0, 1).unwrap()]
        );
        assert!(is_supersolvable(&a2).unwrap());
    }
    for m in 4..=6 {
        let mm = cat("full_monomial", &[("m", &m.to_string())]);
        assert!(modular_points(&mm).unwrap().len() >= 3);
        assert!(is_supersolvable(&mm).unwrap());
    }
    for m in 3..=5 {
        assert!(!is_supersolvable(&cat("A1", &[("m", &m.to_string())])).unwrap());
        assert!(!is_supersolvable(&fermat(m)).unwrap());
    }
    let tri = random_lines(&mut common::rng(0), 3, 5);
    if tri.lattice().unwrap().n_k(3) == 0 {
        assert_eq!(modular_points(&tri).unwrap().len(), 3);
    }
}

#[test]
fn deleting_lines_from_m5_and_hessian() {
    let m5 = cat("full_monomial", &[("m", "5")]);
    // z = 0 joins the modular points (1:0:0) and (0:1:0)
    let z_line = ProjLine::from_ints(0, 0, 1).unwrap();
    let i = m5.lines().iter().position(|l| l == &z_line).unwrap();
    assert!(same_lines(&delete_line(&m5, i).unwrap(), &cat("A2", &[("m", "3")])));

    let h = cat("hessian", &[]);
    let profile = cat("hessian_minus", &[]).lattice().unwrap().multiplicity_profile();
    for i in 0..12 {
        let hi = delete_line(&h, i).unwrap();
        assert_eq!(hi.len(), 11);
        assert_eq!(hi.lattice().unwrap().multiplicity_profile(), profile);
        let back = add_line(&hi, h.lines()[i].clone()).unwrap();
        assert!(same_lines(&back, &h));
    }
}

#[test]
fn generic_line_addition() {
    for m in 3..=5 {
        let a = fermat(m);
        let before = a.lattice().unwrap().clone();
        let b = add_generic_line(&a, 17).unwrap();
        let after = b.lattice().unwrap();
        assert_eq!(after.n_k(2), before.n_k(2) + 3 * m as usize);
        assert_eq!(after.max_multiplicity(), before.max_multiplicity());
        let c = add_generic_line(&a, 18).unwrap();
        assert_ne!(b, c);
        assert_eq!(
            c.lattice().unwrap().multiplicity_profile(),
            after.multiplicity_profile()
        );
    }
}

#[test]
fn line_through_a_maximal_point() {
    for a in [fermat(4), cat("B3", &[]), cat("hessian", &[])] {
        let lat = a.lattice().unwrap();
        let p = lat.max_point().unwrap().point.clone();
        let b = add_generic_line_through(&a, &p, 5).unwrap();
        let lb = b.lattice().unwrap();
        assert_eq!(b.len(), a.len() + 1);
        assert_eq!(lb.max_multiplicity(), lat.max_multiplicity() + 1);
        // every old point keeps its multiplicity except p, new points are double
        for lp in lat.points() {
            let k = lb.find(&lp.point).unwrap();
            let expect = lp.multiplicity() + usize::from(lp.point == p);
            assert_eq!(lb.points()[k].multiplicity(), expect);
        }
        let new_points = lb.points().iter().filter(|q| lat.find(&q.point).is_none());
        assert!(new_points.clone().all(|q| q.multiplicity() == 2));
        assert_eq!(new_points.count(), a.len() - lat.max_multiplicity());
    }
    let a = fermat(3);
    let double_free = ProjPoint::from_ints(1, 2, 3).unwrap();
    assert!(add_generic_line_through(&a, &double_free, 0).is_err());
}

#[test]
fn catalog_invariants() {
    for a in standard_entries() {
        assert!(eq_sum_holds(&a), "{}", a.label());
        let lat = a.lattice().unwrap();
        if !lat.is_pencil() && !lat.is_near_pencil() {
            assert!(point_count_inequality_holds(&a), "{}", a.label());
        }
        if !lat.is_pencil() && is_supersolvable(&a).unwrap() {
            assert!(2 * lat.n_k(2) >= a.len(), "{}", a.label());
        }
        assert_eq!(dualize(&dualize_inv(&a)), a);
    }
}

fn random_transform(seed: u64) -> Mat3 {
    use rand::Rng;
    let mut rng = common::rng(seed);
    loop {
        let m: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| Scalar::from_int(rng.gen_range(-4..=4))));
        if unexpected_core::arrangement::inverse(&m).is_ok() {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn duality_is_an_involution(seed in any::<u64>(), d in 1usize..10) {
        let z = random_points(&mut common::rng(seed), d, 4);
        prop_assert_eq!(dualize_inv(&dualize(&z)), z);
    }

    #[test]
    fn lattice_is_projectively_invariant(seed in any::<u64>(), d in 2usize..9) {
        let z = random_points(&mut common::rng(seed), d, 3);
        let m = random_transform(seed ^ 0x5eed);
        let a = dualize(&z);
        let b = dualize(&z.transform(&m).unwrap());
        let (la, lb) = (a.lattice().unwrap(), b.lattice().unwrap());
        prop_assert_eq!(la.multiplicity_profile(), lb.multiplicity_profile());
        // same incidence sets, since the labelling of lines is preserved
        let mut sa: Vec<_> = la.points().iter().map(|p| p.lines.clone()).collect();
        let mut sb: Vec<_> = lb.points().iter().map(|p| p.lines.clone()).collect();
        sa.sort();
        sb.sort();
        prop_assert_eq!(sa, sb);
    }

    #[test]
    fn random_arrangement_identities(seed in any::<u64>(), d in 3usize..11) {
        let a = random_lines(&mut common::rng(seed), d, 2);
        prop_assert!(eq_sum_holds(&a));
        let lat = a.lattice().unwrap();
        if !lat.is_pencil() && !lat.is_near_pencil() {
            prop_assert!(point_count_inequality_holds(&a));
        }
        // a pencil has no double points
        if !lat.is_pencil() && is_supersolvable(&a).unwrap() {
            prop_assert!(2 * lat.n_k(2) >= d);
        }
    }
}
