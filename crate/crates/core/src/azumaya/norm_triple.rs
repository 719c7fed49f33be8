use rand::Rng;

use super::{half_trace_triple, AssocAlgebra, Family, Involution, QuadraticTriple};
use crate::algebra::FiniteAlgebra;
use crate::error::{bail, ensure, Result};
use crate::norm::{split_oracle, NormAlgebra, RelativeAlgebra};
use crate::scalars::Matrix;

/// The degree-4 quadratic triple `(N(B), σ_N, f_N)` of a quaternion algebra
/// `B` over a quadratic étale extension.
#[derive(Clone, Debug)]
pub struct A1d2Triple {
    pub norm: NormAlgebra,
    pub triple: QuadraticTriple,
}

/// Builds `N_{R'/R}(B)` with the descended involution and `f_N = ½ Trd`,
/// where `Trd = ¼ Tr_reg`.
pub fn a1d2_norm(source: &RelativeAlgebra) -> Result<A1d2Triple> {
    let ring = source.ring();
    let dom = ring.domain();
    ensure!(dom.two_invertible(), Precondition, "f_N is only defined here when 2 is invertible");
    ensure!(ring.rank() == 2, Precondition, "the extension must be quadratic, found degree {}", ring.rank());
    ensure!(ring.is_etale()?, Precondition, "the extension must be etale");
    ensure!(source.dim() == 4 * ring.rank(), Precondition, "the algebra must have rank 4 over the extension");
    ensure!(source.involution().is_some(), Precondition, "the algebra needs its canonical involution");
    let norm = NormAlgebra::build(source)?;
    let algebra = norm.to_assoc()?;
    ensure!(algebra.degree() == Some(4), Internal, "norm algebra of rank {}", algebra.rank());
    let sigma = Involution::new(&algebra, norm.descended_involution()?.expect("checked above"))?;
    let triple = half_trace_triple(&algebra, &sigma)?;
    Ok(A1d2Triple { norm, triple })
}

/// Transports the norm triple of `B_1 x B_2` over the split quadratic
/// algebra through the split oracle and compares it with the tensor pair:
/// product, unit, involution, reduced trace, and `f` on `Sym`.
pub fn compare_with_tensor_pair(norm_triple: &A1d2Triple, tensor: &QuadraticTriple) -> Result<()> {
    let oracle = split_oracle(norm_triple.norm.norm_module())?;
    let t = tensor.algebra();
    let n = norm_triple.norm.dim();
    ensure!(t.rank() == n, Validation, "ranks {n} and {} differ", t.rank());
    let images: Vec<Vec<_>> = (0..n).map(|i| oracle.column(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = oracle.apply(norm_triple.norm.constants().basis_product(i, j));
            ensure!(lhs == t.mul(&images[i], &images[j]), Validation, "products differ on basis pair ({i}, {j})");
        }
    }
    ensure!(oracle.apply(&norm_triple.norm.one()) == t.one(), Validation, "units differ");
    let sigma_n = norm_triple.triple.sigma().matrix();
    ensure!(&oracle * sigma_n == tensor.sigma().matrix() * &oracle, Validation, "involutions differ");
    let na = norm_triple.triple.algebra();
    for (i, image) in images.iter().enumerate() {
        ensure!(na.trd(&na.basis_vector(i)) == t.trd(image), Validation, "reduced traces differ on basis element {i}");
    }
    for s in norm_triple.triple.sym_basis() {
        ensure!(norm_triple.triple.f(s)? == tensor.f(&oracle.apply(s))?, Validation, "semitraces differ");
    }
    Ok(())
}

/// The isomorphism `N_{F^2/F}(A x A) -> A ⊗ A -> End_F(A)`,
/// `a ⊗ b -> (x -> a x σ(b))`, for a quaternion algebra `A`.
#[derive(Clone, Debug)]
pub struct BrauerShadow {
    pub norm: NormAlgebra,
    /// Columns are the images of the norm basis, `End(A)` flattened
    /// row-major.
    pub map: Matrix,
    size: usize,
}

pub fn brauer_shadow_split(algebra: &AssocAlgebra, sigma: &Involution) -> Result<BrauerShadow> {
    if !matches!(algebra.family(), Family::Quaternion { .. } | Family::Matrix(2)) {
        bail!(Precondition, "the Brauer shadow is built for quaternion algebras");
    }
    let dom = algebra.domain();
    let ring = FiniteAlgebra::split(dom, 2)?;
    let source = RelativeAlgebra::split_product(&ring, &[algebra.clone(), algebra.clone()], None)?;
    let norm = NormAlgebra::build(&source)?;
    let oracle = split_oracle(norm.norm_module())?;
    let n = algebra.rank();
    let mut sandwich = Matrix::zeros(dom, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let right = sigma.apply(&algebra.basis_vector(j));
            for c in 0..n {
                let image = algebra.mul(&algebra.mul(&algebra.basis_vector(i), &algebra.basis_vector(c)), &right);
                for (r, v) in image.into_iter().enumerate() {
                    sandwich.set(r * n + c, i * n + j, v);
                }
            }
        }
    }
    Ok(BrauerShadow { map: &sandwich * &oracle, norm, size: n })
}

impl BrauerShadow {
    pub fn apply(&self, u: &[crate::scalars::Scalar]) -> Matrix {
        super::from_coords(self.norm.norm_module().domain(), self.size, &self.map.apply(u))
    }

    /// Bijective, unital, and multiplicative on `samples` random pairs.
    pub fn verify<G: Rng + ?Sized>(&self, samples: usize, rng: &mut G) -> Result<usize> {
        let rank = self.map.rank()?;
        ensure!(rank == self.size * self.size && self.map.is_square(), Validation, "map has rank {rank}");
        ensure!(self.apply(&self.norm.one()).is_identity(), Validation, "map does not preserve the unit");
        for _ in 0..samples {
            let u = self.norm.random_element(rng);
            let v = self.norm.random_element(rng);
            ensure!(
                self.apply(&self.norm.mul(&u, &v)) == &self.apply(&u) * &self.apply(&v),
                Validation,
                "map is not multiplicative"
            );
        }
        Ok(rank)
    }
}
