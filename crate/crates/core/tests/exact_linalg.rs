mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use unexpected_core::arrangement::standard_entries;
use unexpected_core::exact::cyclotomic::totient;
use unexpected_core::exact::{monomials, HomPoly, Scalar, Var};
use unexpected_core::linalg::{nullspace_basis, rank, rank_mod_p, Matrix};

fn scalar_in(n: u32) -> impl Strategy<Value = Scalar> {
    let phi = totient(n);
    prop::collection::vec((-20i64..=20, 1i64..=6), phi).prop_map(move |v| {
        let coeffs = v
            .into_iter()
            .map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
            .collect();
        Scalar::from_parts(n, coeffs)
    })
}

fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 3, 4, 5, 12])
}

fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    (conductor(), conductor(), conductor()).prop_flat_map(|(a, b, c)| (scalar_in(a), scalar_in(b), scalar_in(c)))
}

fn poly(deg: u32) -> impl Strategy<Value = HomPoly> {
    let n = monomials(deg).len();
    prop::collection::vec(-4i64..=4, n)
        .prop_map(move |v| HomPoly::from_dense(deg, &v.into_iter().map(Scalar::from_int).collect::<Vec<_>>()))
}

fn int_matrix(max: usize) -> impl Strategy<Value = Matrix> {
    // products of random factors give matrices of every rank
    (1..=max, 1..=max, 1..=max).prop_flat_map(|(r, k, c)| {
        (
            prop::collection::vec(-3i64..=3, r * k),
            prop::collection::vec(-3i64..=3, k * c),
        )
            .prop_map(move |(a, b)| {
                let entries = (0..r * c)
                    .map(|idx| {
                        let (i, j) = (idx / c, idx % c);
                        Scalar::from_int((0..k).map(|t| a[i * k + t] * b[t * c + j]).sum())
                    })
                    .collect();
                Matrix::new(r, c, entries).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(b.div(&a).unwrap(), &b * &a.inv().unwrap());
        }
    }

    #[test]
    fn embedding_commutes_with_arithmetic(
        k in 1u32..=4,
        sample in conductor().prop_flat_map(|n| (Just(n), scalar_in(n), scalar_in(n))),
    ) {
        // scalars shrink to their own conductor, which divides n
        let (n, a, b) = sample;
        let big = n * k;
        if big <= 64 {
            let lift = |s: &Scalar| Scalar::from_parts(big, s.embed(big));
            prop_assert_eq!((&a * &b).embed(big), (&lift(&a) * &lift(&b)).embed(big));
            prop_assert_eq!((&a - &b).embed(big), (&lift(&a) - &lift(&b)).embed(big));
        }
    }

    #[test]
    fn exact_division_undoes_multiplication(p in poly(3), l in prop::collection::vec(-5i64..=5, 3)) {
        let ell = HomPoly::linear(&[Scalar::from_int(l[0]), Scalar::from_int(l[1]), Scalar::from_int(l[2])]);
        prop_assume!(!ell.is_zero());
        prop_assert_eq!(p.mul(&ell).divide_exact(&ell).unwrap(), p);
    }

    #[test]
    fn rank_nullity(m in int_matrix(6)) {
        let basis = nullspace_basis(&m);
        prop_assert_eq!(rank(&m) + basis.len(), m.cols());
        for v in &basis {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
            let first = v.iter().find(|s| !s.is_zero()).unwrap();
            prop_assert!(first.is_one());
        }
        prop_assert!(rank_mod_p(&m) <= rank(&m));
    }

    #[test]
    fn rank_ignores_permutations(m in int_matrix(6), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut rng = common::rng(seed);
        let mut rp: Vec<usize> = (0..m.rows()).collect();
        let mut cp: Vec<usize> = (0..m.cols()).collect();
        rp.shuffle(&mut rng);
        cp.shuffle(&mut rng);
        prop_assert_eq!(rank(&m.permuted(&rp, &cp)), rank(&m));
    }
}

#[test]
fn euler_relation_on_catalog() {
    for a in standard_entries() {
        let f = a.defining_polynomial();
        let d = f.degree() as i64;
        let mut lhs = HomPoly::zero(f.degree());
        for v in Var::ALL {
            lhs = lhs.add(&HomPoly::var(v).mul(&f.partial(v))).unwrap();
        }
        assert_eq!(lhs, f.scale(&Scalar::from_int(d)), "{}", a.label());
    }
}

#[test]
fn fermat_partial_euler() {
    // (x^3-y^3)(y^3-z^3)(z^3-x^3) and x f_x + y f_y + z f_z = 9 f
    let f = common::fermat(3).defining_polynomial();
    let x = HomPoly::var(Var::X);
    let y = HomPoly::var(Var::Y);
    let z = HomPoly::var(Var::Z);
    let cube = |p: &HomPoly| p.mul(p).mul(p);
    let g = cube(&x)
        .sub(&cube(&y))
        .unwrap()
        .mul(&cube(&y).sub(&cube(&z)).unwrap())
        .mul(&cube(&z).sub(&cube(&x)).unwrap());
    assert!(f.is_scalar_multiple_of(&g));
    let e = x
        .mul(&g.partial(Var::X))
        .add(&y.mul(&g.partial(Var::Y)))
        .unwrap()
        .add(&z.mul(&g.partial(Var::Z)))
        .unwrap();
    assert_eq!(e, g.scale(&Scalar::from_int(9)));
}

#[test]
fn vandermonde_rank() {
    // rows (1, t, t^2) at t = 1, 2, 3; determinant (2-1)(3-1)(3-2) = 2
    let m = Matrix::from_rows(
        [1i64, 2, 3]
            .iter()
            .map(|&t| vec![Scalar::from_int(1), Scalar::from_int(t), Scalar::from_int(t * t)])
            .collect(),
    )
    .unwrap();
    assert_eq!(rank(&m), 3);
    let ones = Matrix::from_rows(vec![vec![Scalar::one(); 3]]).unwrap();
    assert_eq!(nullspace_basis(&ones).len(), 2);
}
