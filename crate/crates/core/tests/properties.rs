use norma::algebra::{ExtensionModule, FiniteAlgebra};
use norma::gamma::{pi_map, GammaAlgebra, GammaSpace};
use norma::norm::norm_of_free;
use norma::scalars::{linear_pencil, poly_det, Matrix, Scalar, ScalarDomain};
use norma::segre::{dickson, kron_all, random_symplectic, SemidirectElement};
use norma::azumaya::split_triple_z;
use norma::scalars::ScalarMap;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q() -> ScalarDomain {
    ScalarDomain::Rationals
}

fn random_matrix(dom: &ScalarDomain, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_fn(dom, rows, cols, |_, _| dom.random(rng))
}

fn dot(a: &[Scalar], b: &[Scalar], dom: &ScalarDomain) -> Scalar {
    a.iter().zip(b).fold(dom.zero(), |acc, (x, y)| &acc + &(x * y))
}

fn fixtures() -> Vec<FiniteAlgebra> {
    let f5 = ScalarDomain::prime_field(5).unwrap();
    let f2 = ScalarDomain::prime_field(2).unwrap();
    vec![
        FiniteAlgebra::split(&q(), 2).unwrap(),
        FiniteAlgebra::quadratic(&q(), q().from_int(2)).unwrap(),
        FiniteAlgebra::from_polynomial(&q(), "x^3-2").unwrap(),
        FiniteAlgebra::from_polynomial(&f5, "x^2-2").unwrap(),
        FiniteAlgebra::from_polynomial(&f2, "x^2+x+1").unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn det_is_multiplicative(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&q(), n, n, &mut rng);
        let b = random_matrix(&q(), n, n, &mut rng);
        prop_assert_eq!((&a * &b).det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
    }

    #[test]
    fn rank_plus_nullity(seed in any::<u64>(), rows in 1usize..=6, cols in 1usize..=6, p in prop::sample::select(vec![0u64, 2, 3, 7])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dom = if p == 0 { q() } else { ScalarDomain::prime_field(p).unwrap() };
        // low rank on purpose: product of thin factors
        let k = rng.gen_range(0..=rows.min(cols));
        let m = &random_matrix(&dom, rows, k.max(1), &mut rng) * &random_matrix(&dom, k.max(1), cols, &mut rng);
        let (rank, kernel) = m.rank_and_kernel().unwrap();
        prop_assert_eq!(rank + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
        prop_assert_eq!(Matrix::from_columns(&dom, cols, &kernel).map(|k| k.rank().unwrap()).unwrap_or(0), kernel.len());
    }

    #[test]
    fn poly_det_specializes(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mats: Vec<Matrix> = (0..k).map(|_| random_matrix(&q(), n, n, &mut rng)).collect();
        let det = poly_det(&linear_pencil(&mats)).unwrap();
        prop_assert!(det.total_degree().unwrap_or(0) as usize <= n);
        for _ in 0..50 {
            let t: Vec<Scalar> = (0..k).map(|_| q().random(&mut rng)).collect();
            let special = mats.iter().zip(&t).fold(Matrix::zeros(&q(), n, n), |acc, (m, c)| &acc + &m.scale(c));
            prop_assert_eq!(det.eval(&t).unwrap(), special.det().unwrap());
        }
    }

    #[test]
    fn regular_rep_and_norm_are_multiplicative(seed in any::<u64>(), which in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = &fixtures()[which];
        for _ in 0..100 {
            let a = alg.random_element(&mut rng);
            let b = alg.random_element(&mut rng);
            let sum: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            prop_assert_eq!(alg.regular_rep(&sum), &alg.regular_rep(&a) + &alg.regular_rep(&b));
            let ab = alg.mul(&a, &b);
            prop_assert_eq!(alg.regular_rep(&ab), &alg.regular_rep(&a) * &alg.regular_rep(&b));
            prop_assert_eq!(alg.norm(&ab), &alg.norm(&a) * &alg.norm(&b));
        }
    }

    #[test]
    fn pi_is_multiplicative(seed in any::<u64>(), which in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = &fixtures()[which];
        let dom = alg.domain();
        let gamma = GammaAlgebra::new(alg, alg.rank());
        let pi = pi_map(alg).unwrap();
        let random_gamma = |rng: &mut ChaCha8Rng| {
            (0..3).fold(gamma.space.zero(), |acc, _| {
                let c = dom.random(rng);
                let g = gamma.space.gamma_pure(&alg.random_element(rng)).unwrap();
                acc.iter().zip(&g).map(|(x, y)| x + &(&c * y)).collect()
            })
        };
        for _ in 0..10 {
            let u = random_gamma(&mut rng);
            let v = random_gamma(&mut rng);
            let uv = gamma.mul(&u, &v).unwrap();
            prop_assert_eq!(dot(&pi, &uv, dom), &dot(&pi, &u, dom) * &dot(&pi, &v, dom));
        }
        let a = alg.random_element(&mut rng);
        prop_assert_eq!(dot(&pi, &gamma.space.gamma_pure(&a).unwrap(), dom), alg.norm(&a));
    }

    #[test]
    fn gamma_pure_is_law_at_points(seed in any::<u64>(), n in 1usize..=3, d in 1usize..=3, k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = GammaSpace::new(&q(), n, d);
        let ms: Vec<Vec<Scalar>> = (0..k).map(|_| (0..n).map(|_| q().random(&mut rng)).collect()).collect();
        let law = space.law_eval(&ms).unwrap();
        for _ in 0..50 {
            let t: Vec<Scalar> = (0..k).map(|_| q().random(&mut rng)).collect();
            let m: Vec<Scalar> = (0..n).map(|c| ms.iter().zip(&t).fold(q().zero(), |acc, (m, ti)| &acc + &(ti * &m[c]))).collect();
            let at: Vec<Scalar> = law.iter().map(|p| p.eval(&t).unwrap()).collect();
            prop_assert_eq!(at, space.gamma_pure(&m).unwrap());
        }
    }

    #[test]
    fn gamma_is_functorial(seed in any::<u64>(), n1 in 1usize..=3, n2 in 1usize..=3, d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s1 = GammaSpace::new(&q(), n1, d);
        let s2 = GammaSpace::new(&q(), n2, d);
        let phi = random_matrix(&q(), n2, n1, &mut rng);
        let map = s1.functor_map(&s2, &phi).unwrap();
        for _ in 0..50 {
            let m: Vec<Scalar> = (0..n1).map(|_| q().random(&mut rng)).collect();
            prop_assert_eq!(map.apply(&s1.gamma_pure(&m).unwrap()), s2.gamma_pure(&phi.apply(&m)).unwrap());
        }
    }

    #[test]
    fn nu_is_homogeneous(seed in any::<u64>(), which in 0usize..5, n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = &fixtures()[which];
        let dom = alg.domain();
        let nm = norm_of_free(alg, n).unwrap();
        let module = ExtensionModule::free(alg, n);
        for _ in 0..10 {
            let c = dom.random(&mut rng);
            let m = module.random_element(&mut rng);
            let cm: Vec<Scalar> = m.iter().map(|x| &c * x).collect();
            let scale = c.pow(alg.rank() as u32);
            let expected: Vec<Scalar> = nm.nu(&m).unwrap().iter().map(|x| &scale * x).collect();
            prop_assert_eq!(nm.nu(&cm).unwrap(), expected);
        }
    }

    #[test]
    fn seg_prime_is_a_homomorphism(seed in any::<u64>(), r in 1usize..=2, d in 1usize..=3, prime in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dom = if prime { ScalarDomain::prime_field(5).unwrap() } else { q() };
        for _ in 0..5 {
            let g = SemidirectElement::random(&dom, r, d, &mut rng);
            let h = SemidirectElement::random(&dom, r, d, &mut rng);
            prop_assert_eq!(g.mul(&h).unwrap().seg_prime(), &g.seg_prime() * &h.seg_prime());
        }
    }

    #[test]
    fn seg_of_central_tuples(seed in any::<u64>(), r in 1usize..=2, d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cs: Vec<Scalar> = (0..d).map(|_| q().random(&mut rng)).collect();
        let mats: Vec<Matrix> = cs.iter().map(|c| Matrix::identity(&q(), r).scale(c)).collect();
        let product = cs.iter().fold(q().one(), |acc, c| &acc * c);
        prop_assert_eq!(kron_all(&mats), Matrix::identity(&q(), r.pow(d as u32)).scale(&product));
    }

    #[test]
    fn seg_prime_respects_scalar_cosets(seed in any::<u64>(), r in 1usize..=2, d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = SemidirectElement::random(&q(), r, d, &mut rng);
        let cs: Vec<Scalar> = (0..d).map(|_| loop {
            let c = q().random(&mut rng);
            if !c.is_zero() { break c; }
        }).collect();
        let scaled = SemidirectElement::new(g.mats().iter().zip(&cs).map(|(m, c)| m.scale(c)).collect(), g.perm().to_vec()).unwrap();
        let product = cs.iter().fold(q().one(), |acc, c| &acc * c);
        prop_assert_eq!(scaled.seg_prime(), g.seg_prime().scale(&product));
    }

    #[test]
    fn dickson_is_additive(seed in any::<u64>(), len in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f3 = ScalarDomain::prime_field(3).unwrap();
        let form = split_triple_z(&[1, 1]).unwrap().quadratic_form().unwrap()
            .map(&ScalarMap::canonical(&ScalarDomain::Integers, &f3).unwrap()).unwrap();
        let mut total = Matrix::identity(&f3, 4);
        let mut parity = 0u8;
        for _ in 0..len {
            let perm = if rng.gen_bool(0.5) { vec![1, 0] } else { vec![0, 1] };
            let mats = vec![random_symplectic(&f3, 1, &mut rng), random_symplectic(&f3, 1, &mut rng)];
            let g = SemidirectElement::new(mats, perm).unwrap().seg_prime();
            parity ^= dickson(&g, &form).unwrap();
            total = &total * &g;
        }
        prop_assert_eq!(dickson(&total, &form).unwrap(), parity);
    }
}
