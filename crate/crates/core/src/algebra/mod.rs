//! Finite free commutative algebras `R'` over a base domain `R`.

mod constants;
mod module;

pub use constants::StructureConstants;
pub use module::ExtensionModule;
pub(crate) use module::block_offsets;

use num_rational::BigRational;
use rand::Rng;

use crate::error::{bail, ensure, Result};
use crate::scalars::{Matrix, Scalar, ScalarDomain, ScalarMap};

/// How an algebra was presented; kept for naming fixtures and for promoting
/// monogenic fields to scalar domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// `R^d` with the basis of orthogonal idempotents.
    Split,
    /// `R[x]/(f)` with basis `1, x, .., x^{d-1}`; `f` monic, coefficients
    /// from the constant term upwards.
    Monogenic { variable: String, modulus: Vec<Scalar> },
    Tensor,
    Custom,
}

/// A finite free commutative algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    constants: StructureConstants,
    presentation: Presentation,
}

impl FiniteAlgebra {
    /// Validates commutativity, associativity, and the unit.
    pub fn from_constants(constants: StructureConstants) -> Result<Self> {
        constants.check_commutative()?;
        constants.check_associative()?;
        constants.check_unit()?;
        Ok(FiniteAlgebra { constants, presentation: Presentation::Custom })
    }

    /// The split algebra `R^d`.
    pub fn split(domain: &ScalarDomain, d: usize) -> Result<Self> {
        ensure!(d >= 1, Validation, "split algebra needs degree >= 1");
        let unit = vec![domain.one(); d];
        let constants = StructureConstants::from_fn(domain, d, unit, |i, j| {
            (0..d).map(|k| if i == j && j == k { domain.one() } else { domain.zero() }).collect()
        });
        Ok(FiniteAlgebra { constants, presentation: Presentation::Split })
    }

    /// `R[x]/(f)` for a monic `f` given from the constant term upwards.
    pub fn monogenic(domain: &ScalarDomain, modulus: Vec<Scalar>, variable: &str) -> Result<Self> {
        let d = modulus.len().saturating_sub(1);
        ensure!(d >= 1, Validation, "modulus must have degree >= 1");
        ensure!(modulus[d].is_one(), Validation, "modulus must be monic");
        ensure!(modulus.iter().all(|c| domain.contains(c)), Shape, "modulus coefficients outside {domain}");
        // x^k for k < 2d - 1 reduced mod f
        let mut powers: Vec<Vec<Scalar>> = Vec::with_capacity(2 * d - 1);
        for k in 0..2 * d - 1 {
            let v = if k < d {
                let mut v = vec![domain.zero(); d];
                v[k] = domain.one();
                v
            } else {
                let prev: &Vec<Scalar> = &powers[k - 1];
                let top = prev[d - 1].clone();
                let mut v = vec![domain.zero(); d];
                v[1..d].clone_from_slice(&prev[..d - 1]);
                for i in 0..d {
                    v[i] = &v[i] - &(&top * &modulus[i]);
                }
                v
            };
            powers.push(v);
        }
        let mut unit = vec![domain.zero(); d];
        unit[0] = domain.one();
        let constants = StructureConstants::from_fn(domain, d, unit, |i, j| powers[i + j].clone());
        Ok(FiniteAlgebra {
            constants,
            presentation: Presentation::Monogenic { variable: variable.to_string(), modulus },
        })
    }

    /// `R[x]/(x^2 - c)`.
    pub fn quadratic(domain: &ScalarDomain, c: Scalar) -> Result<Self> {
        Self::monogenic(domain, vec![-c, domain.zero(), domain.one()], "x")
    }

    /// Parses a monic polynomial such as `"x^2-2"` over `domain`.
    pub fn from_polynomial(domain: &ScalarDomain, text: &str) -> Result<Self> {
        let (var, coeffs) = crate::scalars::parse_univariate(text)?;
        let modulus = coeffs.iter().map(|c| domain.from_rational(c)).collect::<Result<Vec<_>>>()?;
        Self::monogenic(domain, modulus, &var)
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn domain(&self) -> &ScalarDomain {
        self.constants.domain()
    }

    pub fn rank(&self) -> usize {
        self.constants.rank()
    }

    pub fn is_split(&self) -> bool {
        self.presentation == Presentation::Split
    }

    pub fn one(&self) -> Vec<Scalar> {
        self.constants.unit().to_vec()
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.domain().zero(); self.rank()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        self.constants.basis_vector(i)
    }

    /// Coordinates of `c * 1`.
    pub fn scalar(&self, c: &Scalar) -> Vec<Scalar> {
        self.constants.unit().iter().map(|u| u * c).collect()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.constants.mul(a, b)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Scalar> {
        (0..self.rank()).map(|_| self.domain().random(rng)).collect()
    }

    /// Left multiplication by `a`: column `j` holds `a e_j`.
    pub fn regular_rep(&self, a: &[Scalar]) -> Matrix {
        self.constants.left_mult(a)
    }

    /// `det` of the regular representation.
    pub fn norm(&self, a: &[Scalar]) -> Scalar {
        self.regular_rep(a).det().expect("regular representation is square")
    }

    pub fn trace(&self, a: &[Scalar]) -> Scalar {
        self.regular_rep(a).trace()
    }

    /// Gram matrix `Tr(e_i e_j)` of the trace form.
    pub fn trace_form(&self) -> Matrix {
        let n = self.rank();
        let traces: Vec<Scalar> = (0..n).map(|i| self.trace(&self.basis_vector(i))).collect();
        Matrix::from_fn(self.domain(), n, n, |i, j| {
            self.constants
                .basis_product(i, j)
                .iter()
                .zip(&traces)
                .fold(self.domain().zero(), |acc, (c, t)| &acc + &(c * t))
        })
    }

    /// Étale over a field iff the trace form is nondegenerate.
    pub fn is_etale(&self) -> Result<bool> {
        self.domain().require_field("the etale test")?;
        Ok(self.trace_form().rank()? == self.rank())
    }

    pub fn base_change(&self, f: &ScalarMap) -> Result<Self> {
        let constants = self.constants.map(f)?;
        let presentation = match &self.presentation {
            Presentation::Monogenic { variable, modulus } => Presentation::Monogenic {
                variable: variable.clone(),
                modulus: modulus.iter().map(|c| f.apply(c)).collect::<Result<_>>()?,
            },
            other => other.clone(),
        };
        Ok(FiniteAlgebra { constants, presentation })
    }

    pub fn tensor(&self, rhs: &FiniteAlgebra) -> Result<Self> {
        let constants = self.constants.tensor(&rhs.constants)?;
        Ok(FiniteAlgebra { constants, presentation: Presentation::Tensor })
    }

    /// Promotes a monogenic algebra over `Q` to a scalar domain. The
    /// modulus is taken to be irreducible; degree <= 3 is probed.
    pub fn to_domain(&self) -> Result<ScalarDomain> {
        let Presentation::Monogenic { variable, modulus } = &self.presentation else {
            bail!(UnsupportedDomain, "only monogenic algebras can serve as scalar domains");
        };
        ensure!(
            self.domain() == &ScalarDomain::Rationals,
            UnsupportedDomain,
            "scalar extensions must be built over Q, not {}",
            self.domain()
        );
        let rational: Vec<BigRational> = modulus.iter().map(|c| c.to_rational().unwrap()).collect();
        ScalarDomain::extension(rational, variable)
    }

    /// Ring automorphism of the split algebra permuting the idempotents:
    /// `e_i -> e_{perm[i]}`.
    pub fn split_permutation(&self, perm: &[usize]) -> Result<Matrix> {
        ensure!(self.is_split(), Precondition, "permutation automorphisms need a split algebra");
        ensure!(perm.len() == self.rank(), Shape, "permutation of {} points for degree {}", perm.len(), self.rank());
        let d = self.domain();
        Ok(Matrix::from_fn(d, self.rank(), self.rank(), |r, c| if perm[c] == r { d.one() } else { d.zero() }))
    }

    /// Checks that a matrix is a unital algebra endomorphism.
    pub fn check_ring_map(&self, tau: &Matrix) -> Result<()> {
        let n = self.rank();
        ensure!(tau.rows() == n && tau.cols() == n, Shape, "ring map must be {n}x{n}");
        ensure!(tau.apply(&self.one()) == self.one(), Validation, "ring map does not preserve 1");
        for i in 0..n {
            for j in 0..n {
                let lhs = tau.apply(self.constants.basis_product(i, j));
                let rhs = self.mul(&tau.column(i), &tau.column(j));
                ensure!(lhs == rhs, Validation, "ring map not multiplicative on e{i} e{j}");
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ScalarDomain {
        ScalarDomain::Rationals
    }

    fn sqrt2() -> FiniteAlgebra {
        FiniteAlgebra::quadratic(&q(), q().from_int(2)).unwrap()
    }

    fn v(d: &ScalarDomain, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| d.from_int(x)).collect()
    }

    #[test]
    fn regular_representation_examples() {
        let k = sqrt2();
        assert!(k.regular_rep(&k.one()).is_identity());
        assert_eq!(k.regular_rep(&v(&q(), &[0, 1])), Matrix::from_ints(&q(), &[&[0, 2], &[1, 0]]));
        let s = FiniteAlgebra::split(&q(), 2).unwrap();
        assert_eq!(s.regular_rep(&v(&q(), &[3, 5])), Matrix::from_ints(&q(), &[&[3, 0], &[0, 5]]));
    }

    #[test]
    fn norm_examples() {
        let k = sqrt2();
        assert!(k.norm(&k.one()).is_one());
        assert_eq!(k.norm(&v(&q(), &[3, 1])), q().from_int(7));
        let s = FiniteAlgebra::split(&q(), 2).unwrap();
        assert_eq!(s.norm(&v(&q(), &[3, 5])), q().from_int(15));
    }

    #[test]
    fn etale_examples() {
        assert!(FiniteAlgebra::split(&q(), 2).unwrap().is_etale().unwrap());
        let dual = FiniteAlgebra::from_polynomial(&q(), "x^2").unwrap();
        assert_eq!(dual.trace_form(), Matrix::from_ints(&q(), &[&[2, 0], &[0, 0]]));
        assert!(!dual.is_etale().unwrap());
        let f2 = ScalarDomain::prime_field(2).unwrap();
        let f4 = FiniteAlgebra::from_polynomial(&f2, "x^2+x+1").unwrap();
        assert_eq!(f4.trace_form(), Matrix::from_ints(&f2, &[&[0, 1], &[1, 1]]));
        assert!(f4.is_etale().unwrap());
        let z = FiniteAlgebra::split(&ScalarDomain::Integers, 2).unwrap();
        assert!(z.is_etale().is_err());
    }

    #[test]
    fn base_change_examples() {
        let k = sqrt2();
        let same = k.base_change(&ScalarMap::identity(&q())).unwrap();
        assert_eq!(same, k);

        let qi = ScalarDomain::quadratic(-1, "i").unwrap();
        let kq = k.base_change(&ScalarMap::canonical(&q(), &qi).unwrap()).unwrap();
        assert_eq!(kq.rank(), 2);
        let x = kq.basis_vector(1);
        assert_eq!(kq.mul(&x, &x), kq.scalar(&qi.from_int(2)));

        let f5 = ScalarDomain::prime_field(5).unwrap();
        assert!(ScalarMap::canonical(&q(), &f5).is_err());
    }

    #[test]
    fn tensor_examples() {
        let base = FiniteAlgebra::split(&q(), 1).unwrap();
        let k = sqrt2();
        assert_eq!(base.tensor(&k).unwrap().constants(), k.constants());

        let s = FiniteAlgebra::split(&q(), 2).unwrap();
        let ss = s.tensor(&s).unwrap();
        assert_eq!(ss.constants(), FiniteAlgebra::split(&q(), 4).unwrap().constants());

        // basis index of e_i ⊗ e_j is 2i + j; (1⊗x - x⊗1)(1⊗x + x⊗1) = 0
        let kk = k.tensor(&k).unwrap();
        let diff = v(&q(), &[0, 1, -1, 0]);
        let sum = v(&q(), &[0, 1, 1, 0]);
        assert!(kk.mul(&diff, &sum).iter().all(Scalar::is_zero));
        assert!(!diff.iter().all(Scalar::is_zero));
        assert!(kk.norm(&diff).is_zero());
        let four_minus = kk.mul(&diff, &diff);
        assert_eq!(four_minus, v(&q(), &[4, 0, 0, -2]));
    }

    #[test]
    fn constructor_rejects_bad_tables() {
        let d = q();
        let z = || d.zero();
        let o = || d.one();
        // e0 e1 = e1 but e1 e0 = 0
        let noncomm = StructureConstants::new(
            &d,
            vec![vec![vec![o(), z()], vec![z(), o()]], vec![vec![z(), z()], vec![z(), z()]]],
            vec![o(), z()],
        )
        .unwrap();
        assert!(FiniteAlgebra::from_constants(noncomm).is_err());
        // (e1 e1) e2 = e0 but e1 (e1 e2) = 0
        let nonassoc = StructureConstants::new(
            &d,
            vec![
                vec![vec![o(), z(), z()], vec![z(), o(), z()], vec![z(), z(), o()]],
                vec![vec![z(), o(), z()], vec![z(), z(), o()], vec![z(), z(), z()]],
                vec![vec![z(), z(), o()], vec![z(), z(), z()], vec![o(), z(), z()]],
            ],
            vec![o(), z(), z()],
        )
        .unwrap();
        assert!(FiniteAlgebra::from_constants(nonassoc).is_err());
        // bad unit
        let badunit = StructureConstants::new(
            &d,
            vec![vec![vec![o(), z()], vec![z(), o()]], vec![vec![z(), o()], vec![o(), z()]]],
            vec![z(), o()],
        )
        .unwrap();
        assert!(FiniteAlgebra::from_constants(badunit).is_err());
    }

    #[test]
    fn promotes_quadratic_fields() {
        let dom = sqrt2().to_domain().unwrap();
        assert_eq!(dom, ScalarDomain::quadratic(2, "x").unwrap());
        let dual = FiniteAlgebra::from_polynomial(&q(), "x^2").unwrap();
        assert!(dual.to_domain().is_err());
        assert!(FiniteAlgebra::split(&q(), 2).unwrap().to_domain().is_err());
    }
}
