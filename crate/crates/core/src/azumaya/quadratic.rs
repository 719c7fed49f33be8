use rand::Rng;

use super::{adjoint_matrix, involution_type, sym_basis, AssocAlgebra, Involution, InvolutionType};
use crate::error::{bail, ensure, Result};
use crate::scalars::{Matrix, Scalar, ScalarDomain, ScalarMap};
use crate::segre::{kron_all, QuadraticFormData};

/// A quadratic triple `(A, σ, f)`: `f` is given by its values on a basis of
/// `Sym(A, σ)`.
#[derive(Clone, Debug)]
pub struct QuadraticTriple {
    algebra: AssocAlgebra,
    sigma: Involution,
    sym: Vec<Vec<Scalar>>,
    f_values: Vec<Scalar>,
}

/// Summary of a validated triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleReport {
    pub rank: usize,
    pub degree: usize,
    pub dim_sym: usize,
    pub involution: InvolutionType,
    pub f_one: Scalar,
}

impl QuadraticTriple {
    /// Validates: the basis spans `Sym(A, σ)` and is independent,
    /// `f(x + σ(x)) = Trd(x)` on every basis element, and `σ` is orthogonal
    /// away from characteristic 2.
    pub fn new(algebra: AssocAlgebra, sigma: Involution, sym: Vec<Vec<Scalar>>, f_values: Vec<Scalar>) -> Result<Self> {
        ensure!(sym.len() == f_values.len(), Shape, "{} values for {} symmetric basis elements", f_values.len(), sym.len());
        ensure!(algebra.trd_functional().is_some(), Precondition, "quadratic triples need a reduced trace");
        let dom = algebra.domain().clone();
        let n = algebra.rank();
        for s in &sym {
            ensure!(s.len() == n && &sigma.apply(s) == s, Validation, "basis element is not symmetric");
        }
        let expected = sym_basis(&sigma)?.len();
        let span = if sym.is_empty() { 0 } else { Matrix::from_columns(&dom, n, &sym)?.rank()? };
        ensure!(
            span == sym.len() && span == expected,
            Validation,
            "symmetric basis has rank {span} with {} elements; Sym has dimension {expected}",
            sym.len()
        );
        let triple = QuadraticTriple { algebra, sigma, sym, f_values };
        for i in 0..n {
            let x = triple.algebra.basis_vector(i);
            let symmetrized: Vec<Scalar> = x.iter().zip(triple.sigma.apply(&x)).map(|(a, b)| a + &b).collect();
            ensure!(
                triple.f(&symmetrized)? == triple.algebra.trd(&x),
                Validation,
                "f(x + sigma(x)) != Trd(x) for basis element {i}"
            );
        }
        if dom.characteristic() != 2 {
            let t = involution_type(&triple.algebra, &triple.sigma)?;
            ensure!(t == InvolutionType::Orthogonal, Validation, "involution of a quadratic triple must be orthogonal, found {t}");
        }
        Ok(triple)
    }

    pub fn algebra(&self) -> &AssocAlgebra {
        &self.algebra
    }

    pub fn sigma(&self) -> &Involution {
        &self.sigma
    }

    pub fn sym_basis(&self) -> &[Vec<Scalar>] {
        &self.sym
    }

    pub fn f_values(&self) -> &[Scalar] {
        &self.f_values
    }

    /// `f(s)` for a symmetric `s`.
    pub fn f(&self, s: &[Scalar]) -> Result<Scalar> {
        let dom = self.algebra.domain();
        let basis = Matrix::from_columns(dom, self.algebra.rank(), &self.sym)?;
        let Some(coords) = basis.solve(s)? else {
            bail!(Validation, "element is not symmetric");
        };
        Ok(crate::gamma::dot(&coords, &self.f_values, dom))
    }

    pub fn report(&self) -> Result<TripleReport> {
        Ok(TripleReport {
            rank: self.algebra.rank(),
            degree: self.algebra.degree().unwrap_or(0),
            dim_sym: self.sym.len(),
            involution: involution_type(&self.algebra, &self.sigma)?,
            f_one: self.f(&self.algebra.one())?,
        })
    }
}

/// `(A, σ, ½ Trd|_Sym)`; needs 2 invertible.
pub fn half_trace_triple(algebra: &AssocAlgebra, sigma: &Involution) -> Result<QuadraticTriple> {
    let dom = algebra.domain();
    ensure!(dom.two_invertible(), UnsupportedDomain, "the half trace needs 2 invertible in {dom}");
    let half = dom.from_int(2).inv().unwrap();
    let sym = sym_basis(sigma)?;
    let f_values = sym.iter().map(|s| &algebra.trd(s) * &half).collect();
    QuadraticTriple::new(algebra.clone(), sigma.clone(), sym, f_values)
}

/// `(A_1 ⊗ A_2, σ_1 ⊗ σ_2, ½ Trd)` for two symplectic involutions.
pub fn tensor_quadratic_pair(a1: &AssocAlgebra, s1: &Involution, a2: &AssocAlgebra, s2: &Involution) -> Result<QuadraticTriple> {
    ensure!(
        a1.domain().two_invertible(),
        UnsupportedDomain,
        "the tensor quadratic pair is only implemented with 2 invertible"
    );
    for (a, s) in [(a1, s1), (a2, s2)] {
        ensure!(involution_type(a, s)? == InvolutionType::Symplectic, Precondition, "tensor factors must carry symplectic involutions");
    }
    half_trace_triple(&a1.tensor(a2)?, &s1.tensor(s2))
}

/// `J_n = [[0, -I], [I, 0]]`.
pub fn standard_symplectic(domain: &ScalarDomain, n: usize) -> Matrix {
    Matrix::from_fn(domain, 2 * n, 2 * n, |r, c| {
        if r < n && c == r + n {
            -domain.one()
        } else if r >= n && c + n == r {
            domain.one()
        } else {
            domain.zero()
        }
    })
}

/// The split quadratic triple over `Z` on `Z^{2n_1} ⊗ .. ⊗ Z^{2n_d}`,
/// `b = ψ_{n_1} ⊗ .. ⊗ ψ_{n_d}`, `q(x) = ½ b(x, x)`, `f_q = ½ Tr`.
#[derive(Clone, Debug)]
pub struct IntegralSplitTriple {
    ns: Vec<usize>,
    gram: Matrix,
    gram_inv: Matrix,
}

pub fn split_triple_z(ns: &[usize]) -> Result<IntegralSplitTriple> {
    ensure!(!ns.is_empty() && ns.len().is_multiple_of(2), Precondition, "the split triple needs an even number of factors");
    ensure!(ns.iter().all(|&n| n >= 1), Validation, "factor sizes must be positive");
    let z = ScalarDomain::Integers;
    let js: Vec<Matrix> = ns.iter().map(|&n| standard_symplectic(&z, n)).collect();
    let gram = kron_all(&js);
    // J^{-1} = J^T
    let gram_inv = kron_all(&js.iter().map(Matrix::transpose).collect::<Vec<_>>());
    ensure!((&gram * &gram_inv).is_identity(), Internal, "inverse of the split Gram matrix");
    Ok(IntegralSplitTriple { ns: ns.to_vec(), gram, gram_inv })
}

impl IntegralSplitTriple {
    pub fn factor_sizes(&self) -> &[usize] {
        &self.ns
    }

    /// `N = prod 2 n_i`.
    pub fn size(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// `q` as an upper triangular coefficient matrix: `q(x) = x^T Q x`.
    pub fn quadratic_form(&self) -> Result<QuadraticFormData> {
        let z = self.gram.domain();
        let n = self.size();
        let mut upper = Matrix::zeros(z, n, n);
        for i in 0..n {
            for j in i..n {
                let v = if i == j {
                    let Some(h) = self.gram.get(i, i).checked_div(&z.from_int(2)) else {
                        bail!(Validation, "diagonal of the Gram matrix is not even");
                    };
                    h
                } else {
                    self.gram.get(i, j).clone()
                };
                upper.set(i, j, v);
            }
        }
        QuadraticFormData::new(upper)
    }

    /// `σ_q(a) = B^{-1} a^T B` on the matrix units of `M_N` over `domain`.
    pub fn sigma_matrix(&self, domain: &ScalarDomain) -> Result<Matrix> {
        let f = ScalarMap::canonical(&ScalarDomain::Integers, domain)?;
        Ok(adjoint_matrix(&self.gram.map(&f)?, &self.gram_inv.map(&f)?))
    }

    /// A `Z`-basis of `Sym(M_N(Z), σ_q)`. `σ_q` permutes the matrix units up
    /// to sign, so the basis consists of the fixed units and the sums over
    /// orbits of size two.
    pub fn sym_basis_z(&self) -> Result<Vec<Vec<Scalar>>> {
        let z = ScalarDomain::Integers;
        let sigma = self.sigma_matrix(&z)?;
        let n2 = sigma.rows();
        let mut seen = vec![false; n2];
        let mut basis = Vec::new();
        for c in 0..n2 {
            if seen[c] {
                continue;
            }
            let image = sigma.column(c);
            let support: Vec<usize> = (0..n2).filter(|&r| !image[r].is_zero()).collect();
            ensure!(
                support.len() == 1 && (image[support[0]].is_one() || (-&image[support[0]]).is_one()),
                Internal,
                "sigma_q is not a signed permutation of matrix units"
            );
            let (t, sign) = (support[0], image[support[0]].clone());
            seen[c] = true;
            seen[t] = true;
            let mut v = vec![z.zero(); n2];
            if t == c {
                if !sign.is_one() {
                    continue;
                }
                v[c] = z.one();
            } else {
                v[c] = z.one();
                v[t] = sign;
            }
            basis.push(v);
        }
        Ok(basis)
    }

    /// `½ Tr(s)` for an integral symmetric `s`; errors when `Tr(s)` is odd.
    pub fn f_q(&self, s: &[Scalar]) -> Result<Scalar> {
        let z = ScalarDomain::Integers;
        let n = self.size();
        let tr = (0..n).fold(z.zero(), |acc, i| &acc + &s[i * n + i]);
        match tr.checked_div(&z.from_int(2)) {
            Some(h) => Ok(h),
            None => bail!(Validation, "trace {tr} of a symmetric element is odd"),
        }
    }

    /// Unimodular symmetric Gram matrix with even diagonal; symmetric
    /// integral basis with even traces spanning `Sym` over `Q`.
    pub fn check_integrality(&self) -> Result<()> {
        let det = self.gram.det()?;
        ensure!(det.is_one() || (-&det).is_one(), Validation, "Gram determinant {det} is not a unit");
        ensure!(self.gram == self.gram.transpose(), Validation, "Gram matrix is not symmetric");
        self.quadratic_form()?;
        let basis = self.sym_basis_z()?;
        for s in &basis {
            self.f_q(s)?;
        }
        let q = ScalarDomain::Rationals;
        let sigma_q = self.sigma_matrix(&q)?;
        let id = Matrix::identity(&q, sigma_q.rows());
        let dim = (&id - &sigma_q).rank_and_kernel()?.1.len();
        ensure!(dim == basis.len(), Validation, "integral symmetric basis has {} elements, Sym has dimension {dim}", basis.len());
        Ok(())
    }

    /// `b(v, v)` is even for `samples` random integral vectors.
    pub fn check_even_form<G: Rng + ?Sized>(&self, samples: usize, rng: &mut G) -> Result<()> {
        let z = ScalarDomain::Integers;
        let two = z.from_int(2);
        for _ in 0..samples {
            let v: Vec<Scalar> = (0..self.size()).map(|_| z.random(rng)).collect();
            let bv = self.gram.apply(&v);
            let value = crate::gamma::dot(&v, &bv, &z);
            ensure!(value.checked_div(&two).is_some(), Validation, "b(v, v) = {value} is odd");
        }
        Ok(())
    }

    /// The reduction modulo a prime as a quadratic triple over `F_p`, with
    /// `f` the reduction of `½ Tr` on the integral symmetric basis.
    pub fn reduce_mod(&self, p: u64) -> Result<QuadraticTriple> {
        let fp = ScalarDomain::prime_field(p)?;
        let red = ScalarMap::canonical(&ScalarDomain::Integers, &fp)?;
        let algebra = AssocAlgebra::matrix(&fp, self.size())?;
        let sigma = Involution::new(&algebra, self.sigma_matrix(&fp)?)?;
        let basis_z = self.sym_basis_z()?;
        let f_values = basis_z.iter().map(|s| red.apply(&self.f_q(s)?)).collect::<Result<Vec<_>>>()?;
        let sym = basis_z.iter().map(|s| s.iter().map(|x| red.apply(x)).collect()).collect::<Result<Vec<_>>>()?;
        QuadraticTriple::new(algebra, sigma, sym, f_values)
    }

    /// `σ_q = σ_{n_1} ⊗ .. ⊗ σ_{n_d}` under `a_1 ⊗ .. ⊗ a_d -> kron(a_i)`,
    /// checked on all tuples of matrix units.
    pub fn check_sigma_is_tensor(&self, domain: &ScalarDomain) -> Result<()> {
        let sigma_q = self.sigma_matrix(domain)?;
        let factors: Vec<(usize, Matrix)> = self
            .ns
            .iter()
            .map(|&n| {
                let j = standard_symplectic(domain, n);
                (2 * n, adjoint_matrix(&j, &j.transpose()))
            })
            .collect();
        let mut tuple = vec![0usize; factors.len()];
        loop {
            let units: Vec<Matrix> = factors.iter().zip(&tuple).map(|((m, _), &k)| unit_matrix(domain, *m, k)).collect();
            let images: Vec<Matrix> = factors
                .iter()
                .zip(&tuple)
                .map(|((m, s), &k)| super::from_coords(domain, *m, &s.column(k)))
                .collect();
            let lhs = sigma_q.apply(&super::to_coords(&kron_all(&units)));
            ensure!(lhs == super::to_coords(&kron_all(&images)), Validation, "sigma_q differs from the tensor involution at {tuple:?}");
            let mut pos = factors.len();
            loop {
                if pos == 0 {
                    return Ok(());
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < factors[pos].0 * factors[pos].0 {
                    break;
                }
                tuple[pos] = 0;
            }
        }
    }
}

fn unit_matrix(domain: &ScalarDomain, n: usize, k: usize) -> Matrix {
    Matrix::from_fn(domain, n, n, |r, c| if r * n + c == k { domain.one() } else { domain.zero() })
}
