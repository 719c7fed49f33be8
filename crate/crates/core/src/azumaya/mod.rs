//! Associative algebras with involution, reduced traces, and quadratic
//! triples `(A, σ, f)`.

mod norm_triple;
mod quadratic;

pub use norm_triple::{a1d2_norm, brauer_shadow_split, compare_with_tensor_pair, A1d2Triple, BrauerShadow};
pub use quadratic::{
    half_trace_triple, split_triple_z, standard_symplectic, tensor_quadratic_pair, IntegralSplitTriple, QuadraticTriple,
    TripleReport,
};

use rand::Rng;

use crate::algebra::StructureConstants;
use crate::error::{bail, ensure, Result};
use crate::scalars::{Matrix, Scalar, ScalarDomain, ScalarMap};

/// How the reduced trace of an algebra is obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `M_n` with matrix units `E_pq` at index `p * n + q`.
    Matrix(usize),
    /// Basis `1, i, j, ij` (or `1, u, v, uv` in characteristic 2).
    Quaternion { a: Scalar, b: Scalar },
    Tensor,
    Generic,
}

/// A finite associative unital algebra, not necessarily commutative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocAlgebra {
    constants: StructureConstants,
    family: Family,
    degree: Option<usize>,
    trd: Option<Vec<Scalar>>,
}

/// Product terms of the quaternion basis: `(k, c, i, j)` stands for
/// `c a^i b^j e_k`. Entry `p * 4 + q` describes `e_p e_q`.
pub(crate) fn quaternion_terms(char2: bool) -> Vec<Vec<(usize, i64, u32, u32)>> {
    let t = |k, c, i, j| (k, c, i, j);
    if !char2 {
        // i^2 = a, j^2 = b, k = ij = -ji
        vec![
            vec![t(0, 1, 0, 0)],
            vec![t(1, 1, 0, 0)],
            vec![t(2, 1, 0, 0)],
            vec![t(3, 1, 0, 0)],
            vec![t(1, 1, 0, 0)],
            vec![t(0, 1, 1, 0)],
            vec![t(3, 1, 0, 0)],
            vec![t(2, 1, 1, 0)],
            vec![t(2, 1, 0, 0)],
            vec![t(3, -1, 0, 0)],
            vec![t(0, 1, 0, 1)],
            vec![t(1, -1, 0, 1)],
            vec![t(3, 1, 0, 0)],
            vec![t(2, -1, 1, 0)],
            vec![t(1, 1, 0, 1)],
            vec![t(0, -1, 1, 1)],
        ]
    } else {
        // u^2 = u + a, v^2 = b, vu = uv + v
        vec![
            vec![t(0, 1, 0, 0)],
            vec![t(1, 1, 0, 0)],
            vec![t(2, 1, 0, 0)],
            vec![t(3, 1, 0, 0)],
            vec![t(1, 1, 0, 0)],
            vec![t(0, 1, 1, 0), t(1, 1, 0, 0)],
            vec![t(3, 1, 0, 0)],
            vec![t(3, 1, 0, 0), t(2, 1, 1, 0)],
            vec![t(2, 1, 0, 0)],
            vec![t(3, 1, 0, 0), t(2, 1, 0, 0)],
            vec![t(0, 1, 0, 1)],
            vec![t(0, 1, 0, 1), t(1, 1, 0, 1)],
            vec![t(3, 1, 0, 0)],
            vec![t(2, 1, 1, 0)],
            vec![t(1, 1, 0, 1)],
            vec![t(0, 1, 1, 1)],
        ]
    }
}

/// Canonical involution on the quaternion basis: entry `c` lists the
/// coordinates of `σ(e_c)`.
pub(crate) fn conjugation_terms(char2: bool) -> Vec<Vec<(usize, i64)>> {
    if !char2 {
        vec![vec![(0, 1)], vec![(1, -1)], vec![(2, -1)], vec![(3, -1)]]
    } else {
        vec![vec![(0, 1)], vec![(0, 1), (1, 1)], vec![(2, 1)], vec![(3, 1)]]
    }
}

impl AssocAlgebra {
    /// Validates associativity, the unit, and the trace laws when a reduced
    /// trace is supplied.
    pub fn new(constants: StructureConstants, family: Family, degree: Option<usize>, trd: Option<Vec<Scalar>>) -> Result<Self> {
        constants.check_associative()?;
        constants.check_unit()?;
        let alg = AssocAlgebra { constants, family, degree, trd };
        if let (Some(t), Some(m)) = (&alg.trd, alg.degree) {
            let dom = alg.domain();
            ensure!(t.len() == alg.rank(), Shape, "reduced trace has {} coordinates for rank {}", t.len(), alg.rank());
            ensure!(alg.trd(&alg.one()) == dom.from_int(m as i64), Validation, "Trd(1) != {m}");
            for i in 0..alg.rank() {
                for j in 0..i {
                    let (ei, ej) = (alg.basis_vector(i), alg.basis_vector(j));
                    ensure!(
                        alg.trd(&alg.mul(&ei, &ej)) == alg.trd(&alg.mul(&ej, &ei)),
                        Validation,
                        "Trd(e{i} e{j}) != Trd(e{j} e{i})"
                    );
                }
            }
        }
        Ok(alg)
    }

    /// An algebra known only by its structure constants. The degree is the
    /// square root of the rank when that is an integer, and the reduced
    /// trace is `(1/m) Tr_reg` when `m` is invertible.
    pub fn generic(constants: StructureConstants) -> Result<Self> {
        let rank = constants.rank();
        let m = rank.isqrt();
        let degree = (m * m == rank).then_some(m);
        let dom = constants.domain().clone();
        let trd = match degree {
            Some(m) if !dom.from_int(m as i64).is_zero() && dom.is_field() => {
                let inv = dom.from_int(m as i64).inv().unwrap();
                Some((0..rank).map(|i| &constants.left_mult(&constants.basis_vector(i)).trace() * &inv).collect())
            }
            _ => None,
        };
        Self::new(constants, Family::Generic, degree, trd)
    }

    /// `M_n` over `domain` with reduced trace the matrix trace.
    pub fn matrix(domain: &ScalarDomain, n: usize) -> Result<Self> {
        ensure!(n >= 1, Validation, "matrix algebra of size 0");
        let m = n * n;
        let unit = (0..m).map(|k| if k / n == k % n { domain.one() } else { domain.zero() }).collect();
        let constants = StructureConstants::from_fn(domain, m, unit, |x, y| {
            let (p, q) = (x / n, x % n);
            let (r, s) = (y / n, y % n);
            (0..m).map(|k| if q == r && k == p * n + s { domain.one() } else { domain.zero() }).collect()
        });
        let trd = (0..m).map(|k| if k / n == k % n { domain.one() } else { domain.zero() }).collect();
        Self::new(constants, Family::Matrix(n), Some(n), Some(trd))
    }

    /// The quaternion algebra `(a, b)` (or `[a, b)` in characteristic 2) with
    /// its canonical involution. `b` and, away from characteristic 2, `a`
    /// must be nonzero.
    pub fn quaternion(domain: &ScalarDomain, a: Scalar, b: Scalar) -> Result<(Self, Involution)> {
        ensure!(domain.contains(&a) && domain.contains(&b), Shape, "quaternion parameters outside {domain}");
        let char2 = domain.characteristic() == 2;
        if b.is_zero() || (!char2 && a.is_zero()) {
            bail!(Validation, "degenerate quaternion algebra ({a}, {b})");
        }
        let terms = quaternion_terms(char2);
        let mut unit = vec![domain.zero(); 4];
        unit[0] = domain.one();
        let constants = StructureConstants::from_fn(domain, 4, unit, |p, q| {
            let mut out = vec![domain.zero(); 4];
            for &(k, c, i, j) in &terms[p * 4 + q] {
                out[k] = &out[k] + &(&domain.from_int(c) * &(&a.pow(i) * &b.pow(j)));
            }
            out
        });
        let conj = conjugation_terms(char2);
        let sigma = Matrix::from_fn(domain, 4, 4, |r, c| {
            conj[c].iter().find(|(k, _)| *k == r).map_or(domain.zero(), |(_, v)| domain.from_int(*v))
        });
        // Trd(x) is the coefficient of 1 in x + σ(x)
        let trd: Vec<Scalar> = (0..4).map(|c| &sigma.get(0, c).clone() + &domain.from_int((c == 0) as i64)).collect();
        let alg = Self::new(constants, Family::Quaternion { a, b }, Some(2), Some(trd))?;
        let inv = Involution::new(&alg, sigma)?;
        Ok((alg, inv))
    }

    /// `A ⊗ B` on the basis `e_i ⊗ f_j` at index `i * rank(B) + j`, with
    /// `Trd_{A⊗B} = Trd_A ⊗ Trd_B`.
    pub fn tensor(&self, rhs: &AssocAlgebra) -> Result<Self> {
        let constants = self.constants.tensor(&rhs.constants)?;
        let degree = self.degree.zip(rhs.degree).map(|(a, b)| a * b);
        let trd = match (&self.trd, &rhs.trd) {
            (Some(s), Some(t)) => Some(s.iter().flat_map(|x| t.iter().map(move |y| x * y)).collect()),
            _ => None,
        };
        Self::new(constants, Family::Tensor, degree, trd)
    }

    pub fn opposite(&self) -> Self {
        AssocAlgebra { constants: self.constants.opposite(), ..self.clone() }
    }

    pub fn base_change(&self, f: &ScalarMap) -> Result<Self> {
        let family = match &self.family {
            Family::Quaternion { a, b } => Family::Quaternion { a: f.apply(a)?, b: f.apply(b)? },
            other => other.clone(),
        };
        let trd = self.trd.as_ref().map(|t| t.iter().map(|x| f.apply(x)).collect::<Result<Vec<_>>>()).transpose()?;
        Self::new(self.constants.map(f)?, family, self.degree, trd)
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn domain(&self) -> &ScalarDomain {
        self.constants.domain()
    }

    pub fn rank(&self) -> usize {
        self.constants.rank()
    }

    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn trd_functional(&self) -> Option<&[Scalar]> {
        self.trd.as_deref()
    }

    pub fn one(&self) -> Vec<Scalar> {
        self.constants.unit().to_vec()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        self.constants.basis_vector(i)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.constants.mul(a, b)
    }

    /// Reduced trace; zero when the algebra carries none.
    pub fn trd(&self, x: &[Scalar]) -> Scalar {
        let dom = self.domain();
        match &self.trd {
            Some(t) => crate::gamma::dot(t, x, dom),
            None => dom.zero(),
        }
    }

    pub fn random_element<G: Rng + ?Sized>(&self, rng: &mut G) -> Vec<Scalar> {
        (0..self.rank()).map(|_| self.domain().random(rng)).collect()
    }

    /// Matrix of `A ⊗ A^op -> End(A)`, `a ⊗ b -> (x -> a x b)`; the column
    /// of `e_i ⊗ e_j` sits at `i * n + j` and `End(A)` is flattened
    /// row-major.
    pub fn enveloping_map(&self) -> Matrix {
        let n = self.rank();
        let dom = self.domain();
        let mut m = Matrix::zeros(dom, n * n, n * n);
        for i in 0..n {
            for c in 0..n {
                let ic = self.constants.basis_product(i, c).to_vec();
                for j in 0..n {
                    let icj = self.mul(&ic, &self.basis_vector(j));
                    for (r, v) in icj.into_iter().enumerate() {
                        if !v.is_zero() {
                            m.set(r * n + c, i * n + j, v);
                        }
                    }
                }
            }
        }
        m
    }

    /// Azumaya over a field: the enveloping map is bijective.
    pub fn is_azumaya(&self) -> Result<bool> {
        let n = self.rank();
        Ok(self.enveloping_map().rank()? == n * n)
    }
}

/// A linear anti-automorphism of order 2, as a matrix on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    matrix: Matrix,
}

impl Involution {
    pub fn new(algebra: &AssocAlgebra, matrix: Matrix) -> Result<Self> {
        Self::check(algebra.constants(), &matrix)?;
        Ok(Involution { matrix })
    }

    /// `σ^2 = 1`, `σ(1) = 1`, and `σ(e_i e_j) = σ(e_j) σ(e_i)`.
    pub fn check(constants: &StructureConstants, sigma: &Matrix) -> Result<()> {
        let n = constants.rank();
        ensure!(sigma.rows() == n && sigma.cols() == n, Shape, "involution must be {n}x{n}");
        ensure!((sigma * sigma).is_identity(), Validation, "involution does not square to the identity");
        ensure!(sigma.apply(constants.unit()) == constants.unit(), Validation, "involution does not fix 1");
        let images: Vec<Vec<Scalar>> = (0..n).map(|i| sigma.column(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = sigma.apply(constants.basis_product(i, j));
                ensure!(lhs == constants.mul(&images[j], &images[i]), Validation, "involution is not anti-multiplicative on e{i} e{j}");
            }
        }
        Ok(())
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(x)
    }

    /// `σ_1 ⊗ σ_2` on the tensor basis.
    pub fn tensor(&self, rhs: &Involution) -> Involution {
        Involution { matrix: self.matrix.kron(&rhs.matrix) }
    }
}

/// Basis of `Sym(A, σ) = ker(1 - σ)`.
pub fn sym_basis(sigma: &Involution) -> Result<Vec<Vec<Scalar>>> {
    let m = sigma.matrix();
    let id = Matrix::identity(m.domain(), m.rows());
    Ok((&id - m).rank_and_kernel()?.1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvolutionType {
    Orthogonal,
    Symplectic,
    /// Characteristic 2 with `1` outside the symmetrized elements.
    OrthogonalOrWeaklySymplectic,
    Undetermined,
}

impl std::fmt::Display for InvolutionType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InvolutionType::Orthogonal => "orthogonal",
            InvolutionType::Symplectic => "symplectic",
            InvolutionType::OrthogonalOrWeaklySymplectic => "orthogonal/weakly-symplectic",
            InvolutionType::Undetermined => "undetermined",
        })
    }
}

/// Type of an involution of an Azumaya algebra of known degree over a field.
pub fn involution_type(algebra: &AssocAlgebra, sigma: &Involution) -> Result<InvolutionType> {
    let Some(m) = algebra.degree() else {
        bail!(Precondition, "involution type needs the degree of the algebra");
    };
    let dom = algebra.domain();
    dom.require_field("involution type")?;
    if dom.characteristic() == 2 {
        let id = Matrix::identity(dom, algebra.rank());
        let symmetrize = &id + sigma.matrix();
        return Ok(if symmetrize.solve(&algebra.one())?.is_some() {
            InvolutionType::Symplectic
        } else {
            InvolutionType::OrthogonalOrWeaklySymplectic
        });
    }
    let dim = sym_basis(sigma)?.len();
    Ok(if dim == m * (m + 1) / 2 {
        InvolutionType::Orthogonal
    } else if dim == m * (m - 1) / 2 {
        InvolutionType::Symplectic
    } else {
        InvolutionType::Undetermined
    })
}

/// The involution `a -> G^{-1} a^T G` of `M_n` adjoint to the form with
/// Gram matrix `G`, as a matrix on the matrix-unit basis.
pub fn adjoint_involution(gram: &Matrix) -> Result<(AssocAlgebra, Involution)> {
    ensure!(gram.is_square(), Shape, "Gram matrix must be square");
    let dom = gram.domain();
    let n = gram.rows();
    let Some(inv) = gram.inverse()? else {
        bail!(Validation, "Gram matrix is singular");
    };
    let algebra = AssocAlgebra::matrix(dom, n)?;
    let sigma = adjoint_matrix(gram, &inv);
    let involution = Involution::new(&algebra, sigma)?;
    Ok((algebra, involution))
}

/// `E_pq -> G^{-1} E_qp G` on the matrix-unit basis, over any domain.
pub(crate) fn adjoint_matrix(gram: &Matrix, gram_inv: &Matrix) -> Matrix {
    let n = gram.rows();
    Matrix::from_fn(gram.domain(), n * n, n * n, |row, col| {
        let (r, s) = (row / n, row % n);
        let (p, q) = (col / n, col % n);
        gram_inv.get(r, q) * gram.get(p, s)
    })
}

/// Flattens a square matrix into matrix-algebra coordinates.
pub fn to_coords(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

pub fn from_coords(domain: &ScalarDomain, n: usize, coords: &[Scalar]) -> Matrix {
    Matrix::from_fn(domain, n, n, |r, c| coords[r * n + c].clone())
}

#[cfg(test)]
mod tests;
