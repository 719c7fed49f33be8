//! The verification suite: thirteen exact end-to-end checks over fixed
//! fixtures, shared by the command-line `verify-suite` and the acceptance
//! tests.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ExtensionModule, FiniteAlgebra};
use crate::azumaya::{
    a1d2_norm, adjoint_involution, brauer_shadow_split, compare_with_tensor_pair, split_triple_z, standard_symplectic,
    tensor_quadratic_pair, AssocAlgebra, InvolutionType,
};
use crate::error::{ensure, Result};
use crate::gamma::{check_gamma_relations, dot, GammaSpace};
use crate::norm::{
    check_base_change_square, check_split_oracle, check_theta_coherence, check_theta_naturality, norm_of_free,
    psi_endo_iso, random_free_linear_map, NormAlgebra, NormModule, RelativeAlgebra,
};
use crate::scalars::{int_coeffs, Scalar, ScalarDomain, ScalarMap};
use crate::segre::{check_segre_restriction, exceptional_iso_evidence, lie_dims, perm_matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, samples: 100 }
    }
}

/// Result of one criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type Check = fn(&SuiteConfig, &mut ChaCha8Rng) -> Result<String>;

const CRITERIA: [(&str, Check); 13] = [
    ("rank law", rank_law),
    ("norm of the extension", norm_of_extension),
    ("split oracle", split_oracle_check),
    ("normic identity and multiplicativity", normic_identity),
    ("base change", base_change_check),
    ("endomorphism algebra isomorphism", psi_check),
    ("Azumaya preservation", azumaya_preservation),
    ("integral split triple", integral_split_triple),
    ("Segre parity", segre_parity),
    ("Segre restriction", segre_restriction),
    ("A1 x A1 -> D2", a1_squared_to_d2),
    ("Brauer shadow", brauer_shadow),
    ("divided power relations", gamma_relations),
];

/// `(id, name)` for every criterion, ids starting at 1.
pub fn criteria() -> Vec<(usize, &'static str)> {
    CRITERIA.iter().enumerate().map(|(i, (name, _))| (i + 1, *name)).collect()
}

/// Runs criterion `id`; every criterion draws from its own generator seeded
/// by `config.seed` and `id`, so results do not depend on which others ran.
pub fn run(id: usize, config: &SuiteConfig) -> Option<Outcome> {
    let (name, check) = *CRITERIA.get(id.checked_sub(1)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(id as u64));
    let start = Instant::now();
    let result = check(config, &mut rng);
    let millis = start.elapsed().as_millis();
    Some(match result {
        Ok(detail) => Outcome { id, name, passed: true, detail, millis },
        Err(e) => Outcome { id, name, passed: false, detail: e.to_string(), millis },
    })
}

pub fn run_all(config: &SuiteConfig) -> Vec<Outcome> {
    (1..=CRITERIA.len()).filter_map(|id| run(id, config)).collect()
}

/// The étale quadratic fixtures.
pub fn etale_fixtures() -> Result<Vec<(&'static str, FiniteAlgebra)>> {
    let q = ScalarDomain::Rationals;
    let f5 = ScalarDomain::prime_field(5)?;
    let f2 = ScalarDomain::prime_field(2)?;
    Ok(vec![
        ("Q^2", FiniteAlgebra::split(&q, 2)?),
        ("Q(sqrt2)", FiniteAlgebra::quadratic(&q, q.from_int(2))?),
        ("Q(i)", FiniteAlgebra::quadratic(&q, q.from_int(-1))?),
        ("F5[x]/(x^2-2)", FiniteAlgebra::from_polynomial(&f5, "x^2-2")?),
        ("F4/F2", FiniteAlgebra::from_polynomial(&f2, "x^2+x+1")?),
    ])
}

fn sqrt2() -> Result<FiniteAlgebra> {
    let q = ScalarDomain::Rationals;
    FiniteAlgebra::quadratic(&q, q.from_int(2))
}

fn hamilton_over(ring: &FiniteAlgebra) -> Result<RelativeAlgebra> {
    let minus_one = ring.scalar(&ring.domain().from_int(-1));
    RelativeAlgebra::quaternion(ring, &minus_one, &minus_one)
}

fn rank_law(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<String> {
    let mut checked = 0;
    for (name, ring) in etale_fixtures()? {
        ensure!(ring.is_etale()?, Internal, "fixture {name} is not etale");
        for n in 1..=3 {
            let dim = norm_of_free(&ring, n)?.dim();
            ensure!(dim == n * n, Validation, "{name}, n = {n}: dimension {dim}, expected {}", n * n);
            checked += 1;
        }
    }
    let q3 = FiniteAlgebra::split(&ScalarDomain::Rationals, 3)?;
    let dim = norm_of_free(&q3, 2)?.dim();
    ensure!(dim == 8, Validation, "Q^3, n = 2: dimension {dim}, expected 8");
    Ok(format!("{} fixtures: dim N(R'^n) = n^d", checked + 1))
}

fn norm_of_extension(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<String> {
    let fixtures = etale_fixtures()?;
    for (name, ring) in &fixtures {
        let nm = norm_of_free(ring, 1)?;
        ensure!(nm.dim() == 1, Validation, "{name}: dimension {}", nm.dim());
        let triv = nm.trivialization()?;
        let dom = ring.domain();
        ensure!(dot(&triv, &nm.nu(&ring.one())?, dom).is_one(), Validation, "{name}: nu(1) is not 1");
        for _ in 0..config.samples {
            let r = ring.random_element(rng);
            let expected = ring.regular_rep(&r).det()?;
            ensure!(dot(&triv, &nm.nu(&r)?, dom) == expected, Validation, "{name}: nu differs from the norm");
        }
    }
    Ok(format!("{} fixtures, {} samples each", fixtures.len(), config.samples))
}

fn split_oracle_check(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<String> {
    let q = ScalarDomain::Rationals;
    let mut tuples = 0;
    for blocks in [vec![2, 3], vec![2, 2, 2]] {
        let ring = FiniteAlgebra::split(&q, blocks.len())?;
        let nm = NormModule::build(&ExtensionModule::split_product(&ring, &blocks)?)?;
        tuples += check_split_oracle(&nm, config.samples, rng)?;
    }
    Ok(format!("{tuples} basis tuples and {} random points", 2 * config.samples))
}

fn normic_identity(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<String> {
    let ring = sqrt2()?;
    let b = hamilton_over(&ring)?;
    let na = NormAlgebra::build(&b)?;
    let nm = na.norm_module();
    ensure!(na.nu(&b.one())? == na.one(), Validation, "nu(1) is not the unit");
    for _ in 0..config.samples {
        let r = ring.random_element(rng);
        let x = b.random_element(rng);
        let n = ring.regular_rep(&r).det()?;
        let lhs = nm.nu(&nm.module().act(&r, &x))?;
        let rhs: Vec<Scalar> = nm.nu(&x)?.iter().map(|v| &n * v).collect();
        ensure!(lhs == rhs, Validation, "nu(r x) != N(r) nu(x)");
    }
    for _ in 0..config.samples {
        let x = b.random_element(rng);
        let y = b.random_element(rng);
        ensure!(na.nu(&b.mul(&x, &y))? == na.mul(&na.nu(&x)?, &na.nu(&y)?), Validation, "nu is not multiplicative");
    }
    Ok(format!("dim N = {}, {} samples each", na.dim(), config.samples))
}

fn base_change_check(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<String> {
    let ring = sqrt2()?;
    let q = ScalarDomain::Rationals;
    let qi = ScalarDomain::quadratic(-1, "i")?;
    let f = ScalarMap::canonical(&q, &qi)?;
    let mut ambient = Vec::new();
    for n in 1..=2 {
        ambient.push(check_base_change_square(&norm_of_free(&ring, n)?, &f, config.samples, rng)?);
    }
    let z8 = ScalarDomain::extension(int_coeffs(&[1, 0, 0, 0, 1]), "z")?;
    let z = z8.generator().expect("extension field");
    let g = ScalarMap::from_generator(&qi, &z8, &z * &z)?;
    let n2 = norm_of_free(&ring, 2)?;
    let report = check_theta_coherence(&n2, &f, &g)?;
    ensure!(report.triangle && report.pentagon, Validation, "coherence diagrams fail");
    let n1 = norm_of_free(&ring, 1)?;
    for _ in 0..5 {
        let phi = random_free_linear_map(&ring, 2, 1, rng);
        check_theta_naturality(&n1, &n2, &phi, &f)?;
    }
    Ok(format!("square on ambient bases of dims {ambient:?} and {} points; triangle, pentagon, naturality", 2 * config.samples))
}

fn psi_check(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<String> {
    let psi = psi_endo_iso(&sqrt2()?, 2)?;
    let report = psi.verify(config.samples, rng)?;
    ensure!(report.source_dim == 16 && report.rank == 16, Validation, "Psi has rank {} on {}", report.rank, report.source_dim);
    Ok(format!("N(M2(Q(sqrt2))) -> M4(Q) bijective, unital, {} products", config.samples))
}

fn azumaya_preservation(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<String> {
    let na = NormAlgebra::build(&hamilton_over(&sqrt2()?)?)?;
    let algebra = na.to_assoc()?;
    let env = algebra.enveloping_map();
    ensure!(env.rows() == 256 && env.cols() == 256, Internal, "enveloping map is {}x{}", env.rows(), env.cols());
    let rank = env.rank()?;
    ensure!(rank == 256, Validation, "enveloping map has rank {rank}");
    Ok("enveloping map 256x256 of rank 256".into())
}

fn integral_split_triple(_: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<String> {
    let z = ScalarDomain::Integers;
    let two = z.from_int(2);
    for ns in [vec![1, 1], vec![1, 2]] {
        let t = split_triple_z(&ns)?;
        let gram = t.quadratic_form()?.gram();
        let det = gram.det()?;
        ensure!(det.is_one() || (-&det).is_one(), Validation, "{ns:?}: Gram determinant {det}");
        for i in 0..gram.rows() {
            ensure!(gram.get(i, i).checked_div(&two).is_some(), Validation, "{ns:?}: odd diagonal entry");
        }
        t.check_integrality()?;
        t.check_even_form(100, rng)?;
        for s in t.sym_basis_z()? {
            t.f_q(&s)?;
        }
        let reduced = t.reduce_mod(2)?;
        ensure!(reduced.report()?.rank == t.size() * t.size(), Internal, "{ns:?}: reduction has the wrong rank");
        t.check_sigma_is_tensor(&ScalarDomain::Rationals)?;
    }
    Ok("(1,1) and (1,2): unimodular, even, integral f_q, valid mod 2, sigma is a tensor".into())
}

fn segre_parity(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<String> {
    for dom in [ScalarDomain::Rationals, ScalarDomain::prime_field(3)?] {
        for (m, expected) in [(1, -1), (2, 1)] {
            let det = perm_matrix(&dom, &[1, 0], 2 * m)?.det()?;
            ensure!(det == dom.from_int(expected), Validation, "over {dom}, m = {m}: det j((1 2)) = {det}");
        }
    }
    Ok("det j((1 2)) = -1 for m = 1, +1 for m = 2 over Q and F3".into())
}

fn segre_restriction(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<String> {
    let f5 = ScalarDomain::prime_field(5)?;
    let report = check_segre_restriction(&[1, 1], &f5, config.samples, rng)?;
    Ok(format!("{} symplectic pairs in O_q with Dickson 0; {} sign tuples", report.samples, report.sign_tuples))
}

fn a1_squared_to_d2(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<String> {
    let q = ScalarDomain::Rationals;
    let split = FiniteAlgebra::split(&q, 2)?;
    let (h, conj) = AssocAlgebra::quaternion(&q, q.from_int(-1), q.from_int(-1))?;
    let (m2, sj) = adjoint_involution(&standard_symplectic(&q, 1))?;
    let b = RelativeAlgebra::split_product(&split, &[h.clone(), m2.clone()], Some(&[conj.clone(), sj.clone()]))?;
    compare_with_tensor_pair(&a1d2_norm(&b)?, &tensor_quadratic_pair(&h, &conj, &m2, &sj)?)?;

    let ring = sqrt2()?;
    let sqrt = ring.basis_vector(1);
    let one_plus: Vec<Scalar> = ring.one().iter().zip(&sqrt).map(|(a, b)| a + b).collect();
    let pairs = [
        (ring.scalar(&q.from_int(-1)), ring.scalar(&q.from_int(-1))),
        (sqrt.clone(), ring.scalar(&q.from_int(-1))),
        (one_plus, ring.scalar(&q.from_int(3))),
    ];
    for (a, b) in &pairs {
        let source = RelativeAlgebra::quaternion(&ring, a, b)?;
        let report = a1d2_norm(&source)?.triple.report()?;
        ensure!(report.dim_sym == 10, Validation, "dim Sym = {}", report.dim_sym);
        ensure!(report.involution == InvolutionType::Orthogonal, Validation, "involution is {}", report.involution);
        ensure!(report.f_one == q.from_int(2), Validation, "f(1) = {}", report.f_one);
    }
    let (sp, o) = lie_dims(&q)?;
    ensure!(sp + sp == o && o == 6, Validation, "Lie dimensions {sp} + {sp} vs {o}");
    let mut orders = Vec::new();
    for p in [3u64, 5] {
        let report = exceptional_iso_evidence(&ScalarDomain::prime_field(p)?)?;
        let sl2 = (p * (p * p - 1)) as usize;
        ensure!(report.sp2_order == sl2, Validation, "|SL_2(F_{p})| = {}", report.sp2_order);
        ensure!(report.image_size == sl2 * sl2, Validation, "image of size {} over F_{p}", report.image_size);
        ensure!(report.transposition_dickson == 1, Validation, "the swap has Dickson invariant 0 over F_{p}");
        orders.push(report.image_size);
    }
    Ok(format!("split transport exact; {} Q(sqrt2) fixtures with dim Sym 10; 3 + 3 = 6; images {orders:?}", pairs.len()))
}

fn brauer_shadow(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<String> {
    let q = ScalarDomain::Rationals;
    let (h, conj) = AssocAlgebra::quaternion(&q, q.from_int(-1), q.from_int(-1))?;
    let shadow = brauer_shadow_split(&h, &conj)?;
    let rank = shadow.verify(config.samples, rng)?;
    Ok(format!("N(H x H) -> M4(Q) of rank {rank}, {} products", config.samples))
}

/// Multisets of size `d` from `n` letters, by filtering all words.
fn count_multisets(n: usize, d: usize) -> usize {
    (0..n.pow(d as u32))
        .filter(|&w| {
            let digits: Vec<usize> = (0..d).map(|k| w / n.pow(k as u32) % n).collect();
            digits.windows(2).all(|p| p[0] >= p[1])
        })
        .count()
}

fn gamma_relations(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<String> {
    let samples = config.samples.min(20);
    let mut runs = 0;
    for dom in [ScalarDomain::Rationals, ScalarDomain::prime_field(2)?, ScalarDomain::prime_field(3)?] {
        for (n, d) in [(2, 2), (3, 2), (2, 3)] {
            let expected = count_multisets(n, d);
            ensure!(GammaSpace::new(&dom, n, d).dim() == expected, Validation, "dim Gamma^{d}(rank {n}) over {dom}");
            let report = check_gamma_relations(&dom, n, d, samples, rng)?;
            ensure!(report.dimension == expected, Validation, "relation report dimension {}", report.dimension);
            runs += 1;
        }
    }
    Ok(format!("{runs} (domain, n, d) combinations"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_counts() {
        assert_eq!(count_multisets(2, 3), 4);
        assert_eq!(count_multisets(3, 2), 6);
        assert_eq!(count_multisets(4, 4), 35);
    }

    #[test]
    fn unknown_criteria() {
        assert!(run(0, &SuiteConfig::default()).is_none());
        assert!(run(14, &SuiteConfig::default()).is_none());
        assert_eq!(criteria().len(), 13);
    }
}
