use rand::Rng;

use super::FiniteAlgebra;
use crate::error::{ensure, Result};
use crate::scalars::{Matrix, Scalar, ScalarMap};

/// A module over a finite free commutative algebra `R'`, stored as an
/// `R`-vector space together with the action matrices of the `R'`-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionModule {
    ring: FiniteAlgebra,
    dim: usize,
    action: Vec<Matrix>,
}

impl ExtensionModule {
    /// Validates that `e_i -> action[i]` is a unital algebra homomorphism.
    pub fn new(ring: FiniteAlgebra, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        ensure!(action.len() == ring.rank(), Shape, "{} action matrices for a rank {} ring", action.len(), ring.rank());
        ensure!(
            action.iter().all(|m| m.rows() == dim && m.cols() == dim && m.domain() == ring.domain()),
            Shape,
            "action matrices must be {dim}x{dim} over {}",
            ring.domain()
        );
        let module = ExtensionModule { ring, dim, action };
        ensure!(module.act_matrix(&module.ring.one()).is_identity(), Validation, "1 does not act as the identity");
        let n = module.ring.rank();
        for i in 0..n {
            for j in 0..n {
                let lhs = &module.action[i] * &module.action[j];
                let rhs = module.act_matrix(module.ring.constants().basis_product(i, j));
                ensure!(lhs == rhs, Validation, "action is not multiplicative on e{i} e{j}");
            }
        }
        Ok(module)
    }

    /// `R'^n`; the `R`-basis is `(copy k, e_j)` at index `k * d + j`.
    pub fn free(ring: &FiniteAlgebra, n: usize) -> Self {
        let d = ring.rank();
        let action = (0..d)
            .map(|i| Matrix::identity(ring.domain(), n).kron(&ring.regular_rep(&ring.basis_vector(i))))
            .collect();
        ExtensionModule { ring: ring.clone(), dim: n * d, action }
    }

    /// `E_1 x .. x E_d` over the split algebra `R^d`, where `E_i` has
    /// dimension `dims[i]`; the `R`-basis concatenates the factors.
    pub fn split_product(ring: &FiniteAlgebra, dims: &[usize]) -> Result<Self> {
        ensure!(ring.is_split(), Precondition, "product modules need the split algebra");
        ensure!(dims.len() == ring.rank(), Shape, "{} factors for degree {}", dims.len(), ring.rank());
        let offsets = block_offsets(dims);
        let total = *offsets.last().unwrap();
        let dom = ring.domain();
        let action = (0..dims.len())
            .map(|i| {
                Matrix::from_fn(dom, total, total, |r, c| {
                    if r == c && r >= offsets[i] && r < offsets[i + 1] {
                        dom.one()
                    } else {
                        dom.zero()
                    }
                })
            })
            .collect();
        Ok(ExtensionModule { ring: ring.clone(), dim: total, action })
    }

    pub fn ring(&self) -> &FiniteAlgebra {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of multiplication by the ring element with coordinates `r`.
    pub fn act_matrix(&self, r: &[Scalar]) -> Matrix {
        let dom = self.ring.domain();
        let mut acc = Matrix::zeros(dom, self.dim, self.dim);
        for (c, m) in r.iter().zip(&self.action) {
            if !c.is_zero() {
                acc = &acc + &m.scale(c);
            }
        }
        acc
    }

    pub fn act(&self, r: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        self.act_matrix(r).apply(m)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Scalar> {
        (0..self.dim).map(|_| self.ring.domain().random(rng)).collect()
    }

    /// Checks `phi(r m) = tau(r) phi(m)` on basis elements, for a ring
    /// automorphism `tau` of `R'` (`None` for the identity).
    pub fn check_semilinear(&self, target: &ExtensionModule, phi: &Matrix, tau: Option<&Matrix>) -> Result<()> {
        ensure!(self.ring.constants() == target.ring.constants(), Shape, "modules over different rings");
        ensure!(phi.rows() == target.dim && phi.cols() == self.dim, Shape, "map must be {}x{}", target.dim, self.dim);
        for i in 0..self.ring.rank() {
            let e = self.ring.basis_vector(i);
            let image = match tau {
                Some(t) => t.apply(&e),
                None => e,
            };
            let lhs = phi * &self.action[i];
            let rhs = &target.act_matrix(&image) * phi;
            ensure!(lhs == rhs, Validation, "map does not commute with the action of e{i}");
        }
        Ok(())
    }

    pub fn base_change(&self, f: &ScalarMap) -> Result<Self> {
        Ok(ExtensionModule {
            ring: self.ring.base_change(f)?,
            dim: self.dim,
            action: self.action.iter().map(|m| m.map(f)).collect::<Result<_>>()?,
        })
    }
}

pub(crate) fn block_offsets(dims: &[usize]) -> Vec<usize> {
    let mut offsets = vec![0];
    for d in dims {
        offsets.push(offsets.last().unwrap() + d);
    }
    offsets
}
