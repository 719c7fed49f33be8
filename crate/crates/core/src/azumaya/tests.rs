use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::FiniteAlgebra;
use crate::norm::RelativeAlgebra;

fn q() -> ScalarDomain {
    ScalarDomain::Rationals
}

#[test]
fn enveloping_detects_azumaya() {
    assert!(AssocAlgebra::matrix(&q(), 2).unwrap().is_azumaya().unwrap());
    let (h, _) = AssocAlgebra::quaternion(&q(), q().from_int(-1), q().from_int(-1)).unwrap();
    assert!(h.is_azumaya().unwrap());
    let dual = FiniteAlgebra::monogenic(&q(), vec![q().zero(), q().zero(), q().one()], "x").unwrap();
    let as_assoc = AssocAlgebra::generic(dual.constants().clone()).unwrap();
    assert!(!as_assoc.is_azumaya().unwrap());
}

#[test]
fn involution_types() {
    let (m2, transpose) = adjoint_involution(&Matrix::identity(&q(), 2)).unwrap();
    assert_eq!(involution_type(&m2, &transpose).unwrap(), InvolutionType::Orthogonal);
    let (m2, sj) = adjoint_involution(&standard_symplectic(&q(), 1)).unwrap();
    assert_eq!(involution_type(&m2, &sj).unwrap(), InvolutionType::Symplectic);
    assert_eq!(sym_basis(&sj).unwrap().len(), 1);
    let (h, conj) = AssocAlgebra::quaternion(&q(), q().from_int(-1), q().from_int(-1)).unwrap();
    assert_eq!(involution_type(&h, &conj).unwrap(), InvolutionType::Symplectic);
    assert_eq!(sym_basis(&conj).unwrap(), vec![h.one()]);
    assert!(adjoint_involution(&Matrix::zeros(&q(), 2, 2)).is_err());
}

#[test]
fn quaternion_examples() {
    let (split, _) = AssocAlgebra::quaternion(&q(), q().from_int(1), q().from_int(1)).unwrap();
    assert!(split.is_azumaya().unwrap());
    assert_eq!(split.trd(&split.one()), q().from_int(2));
    let (h, conj) = AssocAlgebra::quaternion(&q(), q().from_int(-1), q().from_int(-1)).unwrap();
    assert!(h.trd(&h.basis_vector(1)).is_zero());
    let x: Vec<Scalar> = [1, 2, 3, 4].iter().map(|&v| q().from_int(v)).collect();
    let nrd = h.mul(&x, &conj.apply(&x));
    assert_eq!(nrd, vec![q().from_int(30), q().zero(), q().zero(), q().zero()]);

    let f2 = ScalarDomain::prime_field(2).unwrap();
    let (a, sigma) = AssocAlgebra::quaternion(&f2, f2.one(), f2.one()).unwrap();
    assert!(a.is_azumaya().unwrap());
    assert!(a.trd(&a.basis_vector(1)).is_one());
    assert_eq!(involution_type(&a, &sigma).unwrap(), InvolutionType::Symplectic);
    assert!(AssocAlgebra::quaternion(&q(), q().zero(), q().one()).is_err());
}

#[test]
fn split_triple_d2_m1() {
    let t = split_triple_z(&[1, 1]).unwrap();
    let z = ScalarDomain::Integers;
    let expected = Matrix::from_ints(&z, &[&[0, 0, 0, 1], &[0, 0, -1, 0], &[0, -1, 0, 0], &[1, 0, 0, 0]]);
    assert_eq!(t.gram(), &expected);
    let form = t.quadratic_form().unwrap();
    let x: Vec<Scalar> = [0, 1, 1, 0].iter().map(|&v| z.from_int(v)).collect();
    assert_eq!(form.q(&x), z.from_int(-1));
    let id: Vec<Scalar> = (0..16).map(|k| z.from_int((k / 4 == k % 4) as i64)).collect();
    assert_eq!(t.f_q(&id).unwrap(), z.from_int(2));
    t.check_integrality().unwrap();
    t.check_sigma_is_tensor(&q()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    t.check_even_form(50, &mut rng).unwrap();
    assert!(split_triple_z(&[1, 1, 1]).is_err());
}

#[test]
fn split_triple_reductions() {
    for ns in [vec![1, 1], vec![1, 2]] {
        let t = split_triple_z(&ns).unwrap();
        for p in [2, 3, 5] {
            t.reduce_mod(p).unwrap();
        }
    }
}

#[test]
fn tensor_pair_of_hamilton() {
    let (h, conj) = AssocAlgebra::quaternion(&q(), q().from_int(-1), q().from_int(-1)).unwrap();
    let triple = tensor_quadratic_pair(&h, &conj, &h, &conj).unwrap();
    let report = triple.report().unwrap();
    assert_eq!(report.dim_sym, 10);
    assert_eq!(report.f_one, q().from_int(2));
    assert_eq!(report.involution, InvolutionType::Orthogonal);
    let (m2, t) = adjoint_involution(&Matrix::identity(&q(), 2)).unwrap();
    assert!(tensor_quadratic_pair(&m2, &t, &h, &conj).is_err());
}

#[test]
fn a1d2_over_sqrt2() {
    let k = FiniteAlgebra::quadratic(&q(), q().from_int(2)).unwrap();
    let minus_one = k.scalar(&q().from_int(-1));
    let b = RelativeAlgebra::quaternion(&k, &minus_one, &minus_one).unwrap();
    let result = a1d2_norm(&b).unwrap();
    let report = result.triple.report().unwrap();
    assert_eq!(report.rank, 16);
    assert_eq!(report.dim_sym, 10);
    assert_eq!(report.f_one, q().from_int(2));
}

#[test]
fn a1d2_split_matches_tensor_pair() {
    let s = FiniteAlgebra::split(&q(), 2).unwrap();
    let (h, conj) = AssocAlgebra::quaternion(&q(), q().from_int(-1), q().from_int(-1)).unwrap();
    let (m2, sj) = adjoint_involution(&standard_symplectic(&q(), 1)).unwrap();
    let b = RelativeAlgebra::split_product(&s, &[h.clone(), m2.clone()], Some(&[conj.clone(), sj.clone()])).unwrap();
    let result = a1d2_norm(&b).unwrap();
    let tensor = tensor_quadratic_pair(&h, &conj, &m2, &sj).unwrap();
    compare_with_tensor_pair(&result, &tensor).unwrap();
}

#[test]
fn brauer_shadow_over_f5() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f5 = ScalarDomain::prime_field(5).unwrap();
    let minus_one = f5.from_int(-1);
    let (a, sigma) = AssocAlgebra::quaternion(&f5, minus_one.clone(), minus_one).unwrap();
    let shadow = brauer_shadow_split(&a, &sigma).unwrap();
    assert_eq!(shadow.verify(10, &mut rng).unwrap(), 16);
    let (m2, t) = adjoint_involution(&standard_symplectic(&f5, 1)).unwrap();
    assert_eq!(brauer_shadow_split(&m2, &t).unwrap().verify(5, &mut rng).unwrap(), 16);
    let (m3, t) = adjoint_involution(&Matrix::identity(&f5, 3)).unwrap();
    assert!(matches!(brauer_shadow_split(&m3, &t), Err(crate::Error::Precondition(_))));
}
