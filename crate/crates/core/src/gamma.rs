//! Divided powers `Γ^d(M)` of a finite free module.
//!
//! `Γ^d(M)` is realized as the symmetric tensors inside `M^{⊗d}`:
//! `γ^d(m) = m ⊗ .. ⊗ m`, and the basis element indexed by a multiset `a`
//! of basis indices is the sum of all distinct tensor words with content
//! `a`, i.e. `γ^{a_1}(e_1) .. γ^{a_n}(e_n)`. Basis elements are ordered
//! lexicographically by their sorted index word, so `γ^d(e_1)` comes first.
//! A symmetric tensor is determined by its coefficients on sorted words,
//! which is how every product and functorial map below reads off
//! coordinates.

use std::collections::HashMap;

use rand::Rng;

use crate::algebra::{ExtensionModule, FiniteAlgebra, StructureConstants};
use crate::error::{bail, ensure, Result};
use crate::scalars::{linear_pencil, poly_det, Matrix, MultiPoly, Scalar, ScalarDomain};

/// The degree-`d` divided power of a free module of rank `n`.
#[derive(Clone, Debug)]
pub struct GammaSpace {
    domain: ScalarDomain,
    n: usize,
    d: usize,
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl PartialEq for GammaSpace {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.n == other.n && self.d == other.d
    }
}

fn sorted_words(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, d: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in lo..n {
            cur.push(i);
            go(n, d, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, 0, &mut Vec::with_capacity(d), &mut out);
    out
}

/// All distinct rearrangements of a sorted word.
pub(crate) fn rearrangements(word: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = word.to_vec();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation until exhausted
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// A bilinear map `X × Y -> Z` on bases: `x_i * y_j = sum_k table[i][j][k] z_k`,
/// stored sparsely.
#[derive(Clone, Debug)]
pub struct Bilinear {
    x_dim: usize,
    y_dim: usize,
    z_dim: usize,
    table: Vec<Vec<(usize, Scalar)>>,
}

impl Bilinear {
    pub fn from_constants(c: &StructureConstants) -> Self {
        let n = c.rank();
        let table = (0..n * n).map(|ij| sparse(c.basis_product(ij / n, ij % n))).collect();
        Bilinear { x_dim: n, y_dim: n, z_dim: n, table }
    }

    /// The action `R' × M -> M` of a module.
    pub fn from_module(m: &ExtensionModule) -> Self {
        let d = m.ring().rank();
        let n = m.dim();
        let table = (0..d * n).map(|ij| sparse(&m.action()[ij / n].column(ij % n))).collect();
        Bilinear { x_dim: d, y_dim: n, z_dim: n, table }
    }

    /// `f(i, j)` gives the coordinates of `x_i * y_j`.
    pub fn from_fn(x_dim: usize, y_dim: usize, z_dim: usize, f: impl Fn(usize, usize) -> Vec<Scalar>) -> Self {
        let table = (0..x_dim * y_dim).map(|ij| sparse(&f(ij / y_dim, ij % y_dim))).collect();
        Bilinear { x_dim, y_dim, z_dim, table }
    }

    fn entry(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.y_dim + j]
    }
}

fn sparse(v: &[Scalar]) -> Vec<(usize, Scalar)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

impl GammaSpace {
    pub fn new(domain: &ScalarDomain, n: usize, d: usize) -> Self {
        let words = sorted_words(n, d);
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        GammaSpace { domain: domain.clone(), n, d, words, index }
    }

    pub fn domain(&self) -> &ScalarDomain {
        &self.domain
    }

    pub fn source_rank(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Sorted index word of basis element `i`.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    /// Exponent vector `(a_1, .., a_n)` of basis element `i`.
    pub fn exponents(&self, i: usize) -> Vec<u32> {
        let mut e = vec![0u32; self.n];
        for &k in &self.words[i] {
            e[k] += 1;
        }
        e
    }

    pub fn index_of_exponents(&self, exps: &[u32]) -> Option<usize> {
        if exps.len() != self.n {
            return None;
        }
        let word: Vec<usize> = exps.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect();
        self.index.get(&word).copied()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.domain.zero(); self.dim()];
        v[i] = self.domain.one();
        v
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.domain.zero(); self.dim()]
    }

    /// `γ^d(m)`: the coordinate at multiset `a` is `prod_i m_i^{a_i}`.
    pub fn gamma_pure(&self, m: &[Scalar]) -> Result<Vec<Scalar>> {
        ensure!(m.len() == self.n, Shape, "element of length {} in a rank {} module", m.len(), self.n);
        Ok(self
            .words
            .iter()
            .map(|w| w.iter().fold(self.domain.one(), |acc, &k| &acc * &m[k]))
            .collect())
    }

    /// `γ^d(sum_i t_i m_i)` with polynomial coordinates in `t_1, .., t_k`.
    pub fn law_eval(&self, ms: &[Vec<Scalar>]) -> Result<Vec<MultiPoly>> {
        ensure!(ms.iter().all(|m| m.len() == self.n), Shape, "module elements must have length {}", self.n);
        let k = ms.len();
        let linear: Vec<MultiPoly> = (0..self.n)
            .map(|coord| {
                ms.iter().enumerate().fold(MultiPoly::zero(&self.domain, k), |acc, (i, m)| {
                    acc.add(&MultiPoly::linear(&self.domain, k, i, m[coord].clone()))
                })
            })
            .collect();
        Ok(self
            .words
            .iter()
            .map(|w| {
                w.iter()
                    .fold(MultiPoly::constant(&self.domain, k, self.domain.one()), |acc, &c| acc.mul(&linear[c]))
            })
            .collect())
    }

    /// Adds `coeff * (f_1 ⊗ .. ⊗ f_d)` restricted to sorted words into `out`.
    fn accumulate(&self, factors: &[&[(usize, Scalar)]], coeff: &Scalar, out: &mut [Scalar]) {
        fn go(
            space: &GammaSpace,
            factors: &[&[(usize, Scalar)]],
            pos: usize,
            lo: usize,
            acc: &Scalar,
            word: &mut Vec<usize>,
            out: &mut [Scalar],
        ) {
            if pos == factors.len() {
                let idx = space.index[word.as_slice()];
                out[idx] = &out[idx] + acc;
                return;
            }
            for (i, v) in factors[pos] {
                if *i < lo {
                    continue;
                }
                word.push(*i);
                go(space, factors, pos + 1, *i, &(acc * v), word, out);
                word.pop();
            }
        }
        if factors.iter().any(|f| f.is_empty()) {
            return;
        }
        go(self, factors, 0, 0, coeff, &mut Vec::with_capacity(self.d), out);
    }

    /// `Γ^d(φ)` for a linear map `φ: M_1 -> M_2` from `self` into `target`.
    pub fn functor_map(&self, target: &GammaSpace, phi: &Matrix) -> Result<Matrix> {
        ensure!(self.d == target.d, Shape, "degrees {} and {} differ", self.d, target.d);
        ensure!(
            phi.rows() == target.n && phi.cols() == self.n,
            Shape,
            "map must be {}x{}",
            target.n,
            self.n
        );
        let columns: Vec<Vec<(usize, Scalar)>> = (0..self.n).map(|c| sparse(&phi.column(c))).collect();
        let one = self.domain.one();
        let mut cols = Vec::with_capacity(self.dim());
        for w in &self.words {
            let mut out = target.zero();
            for perm in rearrangements(w) {
                let factors: Vec<&[(usize, Scalar)]> = perm.iter().map(|&k| columns[k].as_slice()).collect();
                target.accumulate(&factors, &one, &mut out);
            }
            cols.push(out);
        }
        Matrix::from_columns(&self.domain, target.dim(), &cols)
    }

    /// Componentwise product of symmetric tensors through a bilinear map:
    /// `(x_1⊗..⊗x_d)(y_1⊗..⊗y_d) = x_1 y_1 ⊗ .. ⊗ x_d y_d`.
    /// `self` is `Γ^d(X)`, `rhs_space` is `Γ^d(Y)`, `target` is `Γ^d(Z)`.
    pub fn sym_product(
        &self,
        rhs_space: &GammaSpace,
        target: &GammaSpace,
        bilinear: &Bilinear,
        u: &[Scalar],
        v: &[Scalar],
    ) -> Result<Vec<Scalar>> {
        ensure!(
            bilinear.x_dim == self.n && bilinear.y_dim == rhs_space.n && bilinear.z_dim == target.n,
            Shape,
            "bilinear map does not fit the spaces"
        );
        ensure!(self.d == rhs_space.d && self.d == target.d, Shape, "degrees differ");
        ensure!(u.len() == self.dim() && v.len() == rhs_space.dim(), Shape, "coordinate length mismatch");
        let mut out = target.zero();
        for (a, ua) in u.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (b, vb) in v.iter().enumerate() {
                if vb.is_zero() {
                    continue;
                }
                let coeff = ua * vb;
                for wa in rearrangements(&self.words[a]) {
                    for wb in rearrangements(&rhs_space.words[b]) {
                        let factors: Vec<&[(usize, Scalar)]> =
                            wa.iter().zip(&wb).map(|(&i, &j)| bilinear.entry(i, j)).collect();
                        target.accumulate(&factors, &coeff, &mut out);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `y -> u * y` for fixed `u` under [`GammaSpace::sym_product`].
    pub fn left_action_matrix(&self, rhs_space: &GammaSpace, bilinear: &Bilinear, u: &[Scalar]) -> Result<Matrix> {
        let cols = (0..rhs_space.dim())
            .map(|b| self.sym_product(rhs_space, rhs_space, bilinear, u, &rhs_space.basis_vector(b)))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(&self.domain, rhs_space.dim(), &cols)
    }
}

/// The divided power product `Γ^{d1}(M) × Γ^{d2}(M) -> Γ^{d1+d2}(M)`:
/// `basis(a) basis(b) = prod_i C(a_i + b_i, a_i) basis(a + b)`.
pub fn divided_product(
    left: &GammaSpace,
    right: &GammaSpace,
    target: &GammaSpace,
    u: &[Scalar],
    v: &[Scalar],
) -> Result<Vec<Scalar>> {
    ensure!(left.n == right.n && left.n == target.n, Shape, "source modules differ");
    ensure!(left.d + right.d == target.d, Shape, "target degree must be {}", left.d + right.d);
    ensure!(u.len() == left.dim() && v.len() == right.dim(), Shape, "coordinate length mismatch");
    let dom = &target.domain;
    let mut out = target.zero();
    for (a, ua) in u.iter().enumerate() {
        if ua.is_zero() {
            continue;
        }
        let ea = left.exponents(a);
        for (b, vb) in v.iter().enumerate() {
            if vb.is_zero() {
                continue;
            }
            let eb = right.exponents(b);
            let sum: Vec<u32> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
            let mult = ea
                .iter()
                .zip(&sum)
                .fold(dom.one(), |acc, (&x, &s)| &acc * &dom.from_int(binomial(s as u64, x as u64) as i64));
            let idx = target.index_of_exponents(&sum).unwrap();
            out[idx] = &out[idx] + &(&mult * &(ua * vb));
        }
    }
    Ok(out)
}

/// `Γ^d(A)` for a commutative algebra `A` of rank `d`, with its product.
#[derive(Clone, Debug)]
pub struct GammaAlgebra {
    pub space: GammaSpace,
    bilinear: Bilinear,
}

impl GammaAlgebra {
    pub fn new(algebra: &FiniteAlgebra, d: usize) -> Self {
        GammaAlgebra {
            space: GammaSpace::new(algebra.domain(), algebra.rank(), d),
            bilinear: Bilinear::from_constants(algebra.constants()),
        }
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.space.sym_product(&self.space, &self.space, &self.bilinear, u, v)
    }
}

/// `μ`: the `Γ^d(R')`-module structure on `Γ^d(M')` induced by the
/// `R'`-action, `γ^d(r)·γ^d(m) = γ^d(rm)`.
pub fn mu_action(module: &ExtensionModule, ring_space: &GammaSpace, module_space: &GammaSpace, g: &[Scalar], x: &[Scalar]) -> Result<Vec<Scalar>> {
    let bilinear = Bilinear::from_module(module);
    ring_space.sym_product(module_space, module_space, &bilinear, g, x)
}

/// The algebra homomorphism `π: Γ^d(A) -> R` with `π(γ^d(a)) = norm(a)`,
/// `d = rank A`, as the coefficient list of `det(sum_i t_i L(e_i))`.
pub fn pi_map(algebra: &FiniteAlgebra) -> Result<Vec<Scalar>> {
    let d = algebra.rank();
    let space = GammaSpace::new(algebra.domain(), d, d);
    let mats: Vec<Matrix> = (0..d).map(|i| algebra.regular_rep(&algebra.basis_vector(i))).collect();
    let det = poly_det(&linear_pencil(&mats))?;
    let mut out = space.zero();
    for (exps, c) in det.terms() {
        let Some(idx) = space.index_of_exponents(exps) else {
            bail!(Internal, "norm form has a monomial {exps:?} outside degree {d}");
        };
        out[idx] = c.clone();
    }
    Ok(out)
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar], domain: &ScalarDomain) -> Scalar {
    a.iter().zip(b).fold(domain.zero(), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { &acc + &(x * y) })
}

/// Outcome of [`check_gamma_relations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub domain: String,
    pub n: usize,
    pub d: usize,
    pub dimension: usize,
    pub samples: usize,
    pub relations_checked: Vec<(&'static str, usize)>,
}

/// Verifies the four defining relations of divided powers in the
/// symmetric-tensor model for degrees up to `d`, on `samples` random module
/// elements.
pub fn check_gamma_relations<R: Rng + ?Sized>(domain: &ScalarDomain, n: usize, d: usize, samples: usize, rng: &mut R) -> Result<RelationReport> {
    let spaces: Vec<GammaSpace> = (0..=d).map(|k| GammaSpace::new(domain, n, k)).collect();
    let expected = binomial((n + d - 1) as u64, d as u64) as usize;
    ensure!(spaces[d].dim() == expected, Validation, "dimension {} != C(n+d-1, d) = {expected}", spaces[d].dim());
    let mut counts = [0usize; 4];
    for _ in 0..samples {
        let m: Vec<Scalar> = (0..n).map(|_| domain.random(rng)).collect();
        let other: Vec<Scalar> = (0..n).map(|_| domain.random(rng)).collect();
        let r = domain.random(rng);

        let g0 = spaces[0].gamma_pure(&m)?;
        ensure!(g0.len() == 1 && g0[0].is_one(), Validation, "relation gamma^0(m) = 1 fails");
        counts[0] += 1;

        for k in 1..=d {
            let rm: Vec<Scalar> = m.iter().map(|x| &r * x).collect();
            let lhs = spaces[k].gamma_pure(&rm)?;
            let rk = r.pow(k as u32);
            let rhs: Vec<Scalar> = spaces[k].gamma_pure(&m)?.iter().map(|x| &rk * x).collect();
            ensure!(lhs == rhs, Validation, "relation gamma^{k}(rm) = r^{k} gamma^{k}(m) fails");
            counts[1] += 1;

            let sum: Vec<Scalar> = m.iter().zip(&other).map(|(a, b)| a + b).collect();
            let lhs = spaces[k].gamma_pure(&sum)?;
            let mut rhs = spaces[k].zero();
            for j in 0..=k {
                let term = divided_product(&spaces[j], &spaces[k - j], &spaces[k], &spaces[j].gamma_pure(&m)?, &spaces[k - j].gamma_pure(&other)?)?;
                rhs = rhs.iter().zip(&term).map(|(a, b)| a + b).collect();
            }
            ensure!(lhs == rhs, Validation, "relation gamma^{k}(m+n) = sum gamma^r(m) gamma^(k-r)(n) fails");
            counts[2] += 1;

            for j in 0..=k {
                let prod = divided_product(&spaces[j], &spaces[k - j], &spaces[k], &spaces[j].gamma_pure(&m)?, &spaces[k - j].gamma_pure(&m)?)?;
                let c = domain.from_int(binomial(k as u64, j as u64) as i64);
                let rhs: Vec<Scalar> = spaces[k].gamma_pure(&m)?.iter().map(|x| &c * x).collect();
                ensure!(prod == rhs, Validation, "relation gamma^{j}(m) gamma^{}(m) = C({k},{j}) gamma^{k}(m) fails", k - j);
                counts[3] += 1;
            }
        }
    }
    Ok(RelationReport {
        domain: domain.to_string(),
        n,
        d,
        dimension: expected,
        samples,
        relations_checked: vec![
            ("unit", counts[0]),
            ("homogeneity", counts[1]),
            ("addition", counts[2]),
            ("binomial product", counts[3]),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> ScalarDomain {
        ScalarDomain::Rationals
    }

    fn ints(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| q().from_int(x)).collect()
    }

    #[test]
    fn basis_is_ordered_by_sorted_word() {
        let s = GammaSpace::new(&q(), 2, 2);
        assert_eq!(s.dim(), 3);
        assert_eq!(s.exponents(0), vec![2, 0]);
        assert_eq!(s.exponents(1), vec![1, 1]);
        assert_eq!(s.exponents(2), vec![0, 2]);
        assert_eq!(GammaSpace::new(&q(), 2, 3).dim(), 4);
    }

    #[test]
    fn dimension_matches_multiset_count() {
        for n in 1..=4 {
            for d in 0..=4 {
                let expected = binomial((n + d - 1) as u64, d as u64) as usize;
                assert_eq!(GammaSpace::new(&q(), n, d).dim(), expected, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn gamma_pure_examples() {
        let s = GammaSpace::new(&q(), 2, 2);
        assert_eq!(s.gamma_pure(&ints(&[1, 0])).unwrap(), ints(&[1, 0, 0]));
        assert_eq!(s.gamma_pure(&ints(&[1, 1])).unwrap(), ints(&[1, 1, 1]));
        assert_eq!(s.gamma_pure(&ints(&[2, 0])).unwrap(), ints(&[4, 0, 0]));
        assert!(s.gamma_pure(&ints(&[1])).is_err());
    }

    #[test]
    fn divided_product_examples() {
        let s1 = GammaSpace::new(&q(), 2, 1);
        let s2 = GammaSpace::new(&q(), 2, 2);
        let s3 = GammaSpace::new(&q(), 2, 3);
        let e1 = ints(&[1, 0]);
        let e2 = ints(&[0, 1]);
        assert_eq!(divided_product(&s1, &s1, &s2, &e1, &e1).unwrap(), ints(&[2, 0, 0]));
        assert_eq!(divided_product(&s1, &s1, &s2, &e1, &e2).unwrap(), ints(&[0, 1, 0]));
        let g2 = s2.gamma_pure(&e1).unwrap();
        assert_eq!(divided_product(&s2, &s1, &s3, &g2, &e1).unwrap(), ints(&[3, 0, 0, 0]));
        let other = GammaSpace::new(&q(), 3, 1);
        assert!(divided_product(&s1, &other, &s2, &e1, &ints(&[1, 0, 0])).is_err());
    }

    #[test]
    fn mu_action_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let k = FiniteAlgebra::quadratic(&q(), q().from_int(2)).unwrap();
        let m = ExtensionModule::free(&k, 1);
        let gr = GammaSpace::new(&q(), 2, 2);
        let gm = GammaSpace::new(&q(), 2, 2);
        for b in 0..gm.dim() {
            let x = gm.basis_vector(b);
            let one = gr.gamma_pure(&k.one()).unwrap();
            assert_eq!(mu_action(&m, &gr, &gm, &one, &x).unwrap(), x);
        }
        for _ in 0..20 {
            let r = k.random_element(&mut rng);
            let x = m.random_element(&mut rng);
            let lhs = mu_action(&m, &gr, &gm, &gr.gamma_pure(&r).unwrap(), &gm.gamma_pure(&x).unwrap()).unwrap();
            assert_eq!(lhs, gm.gamma_pure(&m.act(&r, &x)).unwrap());
        }
        // split Q x Q acting on itself: the mixed orbit sum is idempotent
        let s = FiniteAlgebra::split(&q(), 2).unwrap();
        let sm = ExtensionModule::split_product(&s, &[1, 1]).unwrap();
        let mixed = ints(&[0, 1, 0]);
        assert_eq!(mu_action(&sm, &gr, &gm, &mixed, &mixed).unwrap(), mixed);
    }

    #[test]
    fn pi_examples() {
        let k = FiniteAlgebra::quadratic(&q(), q().from_int(2)).unwrap();
        assert_eq!(pi_map(&k).unwrap(), ints(&[1, 0, -2]));
        let s = FiniteAlgebra::split(&q(), 2).unwrap();
        assert_eq!(pi_map(&s).unwrap(), ints(&[0, 1, 0]));
        let space = GammaSpace::new(&q(), 2, 2);
        let one = space.gamma_pure(&k.one()).unwrap();
        assert!(dot(&pi_map(&k).unwrap(), &one, &q()).is_one());
    }

    #[test]
    fn law_eval_examples() {
        let s = GammaSpace::new(&q(), 2, 2);
        let polys = s.law_eval(&[ints(&[1, 0]), ints(&[0, 1])]).unwrap();
        for (i, p) in polys.iter().enumerate() {
            assert_eq!(p.len(), 1);
            let (e, c) = p.terms().next().unwrap();
            assert_eq!(e, &s.exponents(i));
            assert!(c.is_one());
        }
        let at_one: Vec<Scalar> = polys.iter().map(|p| p.eval(&ints(&[1, 1])).unwrap()).collect();
        assert_eq!(at_one, s.gamma_pure(&ints(&[1, 1])).unwrap());

        let m = ints(&[2, -3]);
        let single = s.law_eval(std::slice::from_ref(&m)).unwrap();
        let g = s.gamma_pure(&m).unwrap();
        for (p, c) in single.iter().zip(&g) {
            assert_eq!(p, &MultiPoly::from_terms(&q(), 1, [(vec![2], c.clone())]).unwrap());
        }
    }

    #[test]
    fn relation_suite_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f2 = ScalarDomain::prime_field(2).unwrap();
        for (dom, n, d) in [(q(), 3, 2), (f2, 2, 2), (q(), 2, 3)] {
            let report = check_gamma_relations(&dom, n, d, 100, &mut rng).unwrap();
            assert_eq!(report.dimension, binomial((n + d - 1) as u64, d as u64) as usize);
        }
    }

    #[test]
    fn rearrangements_are_distinct() {
        assert_eq!(rearrangements(&[0, 0, 1]).len(), 3);
        assert_eq!(rearrangements(&[0, 1, 2]).len(), 6);
        assert_eq!(rearrangements(&[1, 1]).len(), 1);
    }
}
