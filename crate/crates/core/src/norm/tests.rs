use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::azumaya::AssocAlgebra;

fn q() -> ScalarDomain {
    ScalarDomain::Rationals
}

fn sqrt2() -> FiniteAlgebra {
    FiniteAlgebra::quadratic(&q(), q().from_int(2)).unwrap()
}

fn ints(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| q().from_int(x)).collect()
}

#[test]
fn norm_of_extension_is_base() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let k = sqrt2();
    let nm = norm_of_free(&k, 1).unwrap();
    assert_eq!(nm.dim(), 1);
    let triv = nm.trivialization().unwrap();
    assert!(crate::gamma::dot(&triv, &nm.nu(&k.one()).unwrap(), &q()).is_one());
    for _ in 0..20 {
        let r = k.random_element(&mut rng);
        assert_eq!(crate::gamma::dot(&triv, &nm.nu(&r).unwrap(), &q()), k.norm(&r));
    }
}

#[test]
fn rank_law_small_cases() {
    let k = sqrt2();
    assert_eq!(norm_of_free(&k, 2).unwrap().dim(), 4);
    let s = FiniteAlgebra::split(&q(), 2).unwrap();
    let m = ExtensionModule::split_product(&s, &[2, 3]).unwrap();
    assert_eq!(NormModule::build(&m).unwrap().dim(), 6);
    let dual = FiniteAlgebra::monogenic(&q(), ints(&[0, 0, 1]), "x").unwrap();
    let nm = norm_of_free(&dual, 1).unwrap();
    assert!(!nm.is_etale());
    assert!(nm.dim() >= 1);
}

#[test]
fn section_and_projection() {
    let nm = norm_of_free(&sqrt2(), 2).unwrap();
    assert!((nm.projection() * &nm.section()).is_identity());
    for r in nm.relation_basis() {
        assert!(nm.project(&r).iter().all(Scalar::is_zero));
    }
}

#[test]
fn normic_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let k = sqrt2();
    let nm = norm_of_free(&k, 2).unwrap();
    assert!(nm.nu(&nm.module().random_element(&mut rng).iter().map(|_| q().zero()).collect::<Vec<_>>()).unwrap().iter().all(Scalar::is_zero));
    for _ in 0..20 {
        let r = k.random_element(&mut rng);
        let m = nm.module().random_element(&mut rng);
        let lhs = nm.nu(&nm.module().act(&r, &m)).unwrap();
        let n = k.norm(&r);
        let rhs: Vec<Scalar> = nm.nu(&m).unwrap().iter().map(|x| &n * x).collect();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn split_oracle_sends_nu_to_pure_tensors() {
    let s = FiniteAlgebra::split(&q(), 2).unwrap();
    let m = ExtensionModule::split_product(&s, &[2, 3]).unwrap();
    let nm = NormModule::build(&m).unwrap();
    let oracle = split_oracle(&nm).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let y1: Vec<Scalar> = (0..2).map(|_| q().random(&mut rng)).collect();
        let y2: Vec<Scalar> = (0..3).map(|_| q().random(&mut rng)).collect();
        let m: Vec<Scalar> = y1.iter().chain(&y2).cloned().collect();
        assert_eq!(oracle.apply(&nm.nu(&m).unwrap()), pure_tensor(&[y1, y2], &q()));
    }
    let k = norm_of_free(&sqrt2(), 1).unwrap();
    assert!(split_oracle(&k).is_err());
}

#[test]
fn norm_morphisms_compose() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let k = sqrt2();
    let n1 = norm_of_free(&k, 1).unwrap();
    let n2 = norm_of_free(&k, 2).unwrap();
    let id = Matrix::identity(&q(), 4);
    assert!(norm_morphism(&n2, &n2, &id).unwrap().is_identity());
    let phi = random_free_linear_map(&k, 2, 1, &mut rng);
    let psi = random_free_linear_map(&k, 2, 2, &mut rng);
    let composed = norm_morphism(&n1, &n2, &(&psi * &phi)).unwrap();
    assert_eq!(composed, &norm_morphism(&n2, &n2, &psi).unwrap() * &norm_morphism(&n1, &n2, &phi).unwrap());
    let m = n1.module().random_element(&mut rng);
    assert_eq!(norm_morphism(&n1, &n2, &phi).unwrap().apply(&n1.nu(&m).unwrap()), n2.nu(&phi.apply(&m)).unwrap());
    // not linear over the extension
    let bad = Matrix::from_ints(&q(), &[&[1, 0], &[0, 2]]);
    assert!(norm_morphism(&n1, &n1, &bad).is_err());
}

#[test]
fn theta_matches_generator_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let nm = norm_of_free(&sqrt2(), 1).unwrap();
    let qi = ScalarDomain::quadratic(-1, "i").unwrap();
    let f = ScalarMap::canonical(&q(), &qi).unwrap();
    assert_eq!(check_base_change_square(&nm, &f, 20, &mut rng).unwrap(), 3);
    let z8 = ScalarDomain::extension(crate::scalars::int_coeffs(&[1, 0, 0, 0, 1]), "z").unwrap();
    let z = z8.generator().unwrap();
    let g = ScalarMap::from_generator(&qi, &z8, &z * &z).unwrap();
    let report = check_theta_coherence(&norm_of_free(&sqrt2(), 2).unwrap(), &f, &g).unwrap();
    assert!(report.triangle && report.pentagon);
    let n2 = norm_of_free(&sqrt2(), 2).unwrap();
    let phi = random_free_linear_map(&sqrt2(), 2, 1, &mut rng);
    check_theta_naturality(&nm, &n2, &phi, &f).unwrap();
}

#[test]
fn nu_spans() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    assert!(nu_image_spans(&norm_of_free(&sqrt2(), 1).unwrap(), &mut rng).unwrap().spans());
    let s = FiniteAlgebra::split(&q(), 2).unwrap();
    let nm = NormModule::build(&ExtensionModule::split_product(&s, &[2, 2]).unwrap()).unwrap();
    let report = nu_image_spans(&nm, &mut rng).unwrap();
    assert_eq!(report.random_rank, Some(4));
    let f2 = ScalarDomain::prime_field(2).unwrap();
    let f4 = FiniteAlgebra::monogenic(&f2, vec![f2.one(), f2.one(), f2.one()], "x").unwrap();
    let report = nu_image_spans(&norm_of_free(&f4, 2).unwrap(), &mut rng).unwrap();
    assert_eq!(report.random_rank, None);
    assert!(report.spans());
}

#[test]
fn quaternion_norm_algebra_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let k = sqrt2();
    let b = RelativeAlgebra::quaternion(&k, &k.scalar(&q().from_int(-1)), &k.scalar(&q().from_int(-1))).unwrap();
    let na = NormAlgebra::build(&b).unwrap();
    assert_eq!(na.dim(), 16);
    assert_eq!(na.nu(&b.one()).unwrap(), na.one());
    for _ in 0..10 {
        let x = b.random_element(&mut rng);
        let y = b.random_element(&mut rng);
        assert_eq!(na.nu(&b.mul(&x, &y)).unwrap(), na.mul(&na.nu(&x).unwrap(), &na.nu(&y).unwrap()));
    }
}

#[test]
fn split_norm_algebra_is_tensor_product() {
    let s = FiniteAlgebra::split(&q(), 2).unwrap();
    let (h, _) = AssocAlgebra::quaternion(&q(), q().from_int(-1), q().from_int(-1)).unwrap();
    let m2 = AssocAlgebra::matrix(&q(), 2).unwrap();
    let b = RelativeAlgebra::split_product(&s, &[h.clone(), m2.clone()], None).unwrap();
    let na = NormAlgebra::build(&b).unwrap();
    let oracle = split_oracle(na.norm_module()).unwrap();
    let t = h.tensor(&m2).unwrap();
    for i in 0..16 {
        for j in 0..16 {
            assert_eq!(oracle.apply(na.constants().basis_product(i, j)), t.mul(&oracle.column(i), &oracle.column(j)));
        }
    }
}

#[test]
fn psi_is_an_isomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let psi = psi_endo_iso(&sqrt2(), 2).unwrap();
    let report = psi.verify(5, &mut rng).unwrap();
    assert_eq!(report.source_dim, 16);
    assert_eq!(report.rank, 16);
    let dual = FiniteAlgebra::monogenic(&q(), ints(&[0, 0, 1]), "x").unwrap();
    assert!(matches!(psi_endo_iso(&dual, 1), Err(crate::Error::Precondition(_))));
}

#[test]
fn semilinear_swap_matches_segre() {
    let s = FiniteAlgebra::split(&q(), 2).unwrap();
    let m = ExtensionModule::split_product(&s, &[2, 2]).unwrap();
    let nm = NormModule::build(&m).unwrap();
    let a1 = Matrix::from_ints(&q(), &[&[1, 2], &[0, 1]]);
    let a2 = Matrix::from_ints(&q(), &[&[3, 0], &[1, 1]]);
    // (x_1, x_2) -> (A_1 x_2, A_2 x_1)
    let zero = Matrix::zeros(&q(), 2, 2);
    let phi = Matrix::from_fn(&q(), 4, 4, |r, c| match (r / 2, c / 2) {
        (0, 1) => a1.get(r % 2, c % 2).clone(),
        (1, 0) => a2.get(r % 2, c % 2).clone(),
        _ => zero.get(0, 0).clone(),
    });
    let tau = s.split_permutation(&[1, 0]).unwrap();
    let n_phi = norm_morphism_semilinear(&nm, &nm, &phi, &tau).unwrap();
    let oracle = split_oracle(&nm).unwrap();
    let g = crate::segre::SemidirectElement::new(vec![a1, a2], vec![1, 0]).unwrap();
    assert_eq!(&oracle * &n_phi, &g.seg_prime() * &oracle);
}
