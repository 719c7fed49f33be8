use rand::Rng;

use super::{free_linear_map, norm_morphism, NormModule};
use crate::algebra::{ExtensionModule, FiniteAlgebra, StructureConstants};
use crate::azumaya::{conjugation_terms, quaternion_terms, AssocAlgebra, Involution};
use crate::error::{ensure, Result};
use crate::gamma::{Bilinear, GammaSpace};
use crate::scalars::{Matrix, Scalar};

/// An associative `R`-algebra `B'` with a central copy of `R'`, given as an
/// `R'`-module (the action of `R'` by multiplication) together with its
/// product over `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeAlgebra {
    module: ExtensionModule,
    constants: StructureConstants,
    involution: Option<Matrix>,
}

impl RelativeAlgebra {
    /// Validates associativity, the unit, and that `R'` acts through
    /// central elements.
    pub fn new(module: ExtensionModule, constants: StructureConstants) -> Result<Self> {
        ensure!(constants.rank() == module.dim(), Shape, "algebra of rank {} on a module of dimension {}", constants.rank(), module.dim());
        ensure!(constants.domain() == module.ring().domain(), Shape, "algebra and module over different domains");
        constants.check_associative()?;
        constants.check_unit()?;
        for (i, a) in module.action().iter().enumerate() {
            let image = a.apply(constants.unit());
            ensure!(&constants.left_mult(&image) == a, Validation, "e{i} of the extension does not act by left multiplication");
            ensure!(&constants.right_mult(&image) == a, Validation, "e{i} of the extension is not central");
        }
        Ok(RelativeAlgebra { module, constants, involution: None })
    }

    /// `B'` free over `R'` with basis `f_0, .., f_{m-1}`; `table(p, q)` gives
    /// the `R'`-coordinates of `f_p f_q`, one element of `R'` per `f_k`. The
    /// `R`-basis element `e_j f_k` sits at index `k * d + j`.
    pub fn from_relative_table(
        ring: &FiniteAlgebra,
        m: usize,
        table: impl Fn(usize, usize) -> Vec<Vec<Scalar>>,
        unit: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let d = ring.rank();
        let dom = ring.domain();
        ensure!(unit.len() == m && unit.iter().all(|u| u.len() == d), Shape, "unit must have {m} coordinates in the extension");
        let products: Vec<Vec<Vec<Scalar>>> = (0..m * m).map(|pq| table(pq / m, pq % m)).collect();
        ensure!(
            products.iter().all(|p| p.len() == m && p.iter().all(|c| c.len() == d)),
            Shape,
            "relative structure constants must be {m}x{m}x{m} elements of the extension"
        );
        let flat_unit: Vec<Scalar> = unit.into_iter().flatten().collect();
        let constants = StructureConstants::from_fn(dom, m * d, flat_unit, |x, y| {
            let (p, a) = (x / d, x % d);
            let (q, b) = (y / d, y % d);
            let ab = ring.constants().basis_product(a, b);
            let mut out = vec![dom.zero(); m * d];
            for (k, c) in products[p * m + q].iter().enumerate() {
                for (j, v) in ring.mul(ab, c).into_iter().enumerate() {
                    out[k * d + j] = v;
                }
            }
            out
        });
        Self::new(ExtensionModule::free(ring, m), constants)
    }

    /// The quaternion algebra over `R'` with parameters `a, b` in `R'`
    /// (`(a, b)` away from characteristic 2, `[a, b)` in characteristic 2),
    /// carrying its canonical involution.
    pub fn quaternion(ring: &FiniteAlgebra, a: &[Scalar], b: &[Scalar]) -> Result<Self> {
        let dom = ring.domain();
        let char2 = dom.characteristic() == 2;
        ensure!(a.len() == ring.rank() && b.len() == ring.rank(), Shape, "quaternion parameters must lie in the extension");
        ensure!(!ring.norm(b).is_zero(), Validation, "degenerate quaternion algebra: b is not a unit");
        ensure!(char2 || !ring.norm(a).is_zero(), Validation, "degenerate quaternion algebra: a is not a unit");
        let terms = quaternion_terms(char2);
        let power = |x: &[Scalar], e: u32| (0..e).fold(ring.one(), |acc, _| ring.mul(&acc, x));
        let table = |p: usize, q: usize| {
            let mut out = vec![ring.zero(); 4];
            for &(k, c, ea, eb) in &terms[p * 4 + q] {
                let coeff = ring.mul(&power(a, ea), &power(b, eb));
                let scaled: Vec<Scalar> = coeff.iter().map(|x| x * &dom.from_int(c)).collect();
                out[k] = out[k].iter().zip(&scaled).map(|(x, y)| x + y).collect();
            }
            out
        };
        let mut unit = vec![ring.zero(); 4];
        unit[0] = ring.one();
        let alg = Self::from_relative_table(ring, 4, table, unit)?;
        let conj = Matrix::from_fn(dom, 4, 4, |r, c| {
            conjugation_terms(char2)[c].iter().find(|(k, _)| *k == r).map_or(dom.zero(), |(_, v)| dom.from_int(*v))
        });
        alg.with_relative_involution(&conj)
    }

    /// `M_n(R')` with matrix units `E_pq` at relative index `p * n + q`.
    pub fn matrix(ring: &FiniteAlgebra, n: usize) -> Result<Self> {
        ensure!(n >= 1, Validation, "matrix algebra of size 0");
        let m = n * n;
        let table = |x: usize, y: usize| {
            let mut out = vec![ring.zero(); m];
            let (p, q) = (x / n, x % n);
            let (r, s) = (y / n, y % n);
            if q == r {
                out[p * n + s] = ring.one();
            }
            out
        };
        let unit = (0..m).map(|k| if k / n == k % n { ring.one() } else { ring.zero() }).collect();
        Self::from_relative_table(ring, m, table, unit)
    }

    /// `B_1 x .. x B_d` over the split algebra `R^d`, each factor an algebra
    /// over `R`; involutions are taken factorwise when all are given.
    pub fn split_product(ring: &FiniteAlgebra, parts: &[AssocAlgebra], involutions: Option<&[Involution]>) -> Result<Self> {
        let dims: Vec<usize> = parts.iter().map(AssocAlgebra::rank).collect();
        let module = ExtensionModule::split_product(ring, &dims)?;
        let offsets = crate::algebra::block_offsets(&dims);
        let dom = ring.domain();
        ensure!(parts.iter().all(|p| p.domain() == dom), Shape, "factors must be defined over {dom}");
        let total = module.dim();
        let block_of = |x: usize| offsets.iter().rposition(|&o| o <= x).unwrap();
        let unit: Vec<Scalar> = parts.iter().flat_map(|p| p.one()).collect();
        let constants = StructureConstants::from_fn(dom, total, unit, |x, y| {
            let mut out = vec![dom.zero(); total];
            let (bx, by) = (block_of(x), block_of(y));
            if bx == by {
                let o = offsets[bx];
                for (k, v) in parts[bx].constants().basis_product(x - o, y - o).iter().enumerate() {
                    out[o + k] = v.clone();
                }
            }
            out
        });
        let mut alg = Self::new(module, constants)?;
        if let Some(invs) = involutions {
            ensure!(invs.len() == parts.len(), Shape, "{} involutions for {} factors", invs.len(), parts.len());
            let sigma = Matrix::from_fn(dom, total, total, |r, c| {
                let (br, bc) = (block_of(r), block_of(c));
                if br == bc {
                    invs[br].matrix().get(r - offsets[br], c - offsets[bc]).clone()
                } else {
                    dom.zero()
                }
            });
            alg = alg.with_involution(sigma)?;
        }
        Ok(alg)
    }

    /// Attaches an `R'`-linear involution given on `R`-coordinates.
    pub fn with_involution(mut self, sigma: Matrix) -> Result<Self> {
        Involution::check(&self.constants, &sigma)?;
        self.module.check_semilinear(&self.module, &sigma, None)?;
        self.involution = Some(sigma);
        Ok(self)
    }

    /// Attaches the `R'`-linear extension of an involution given on the
    /// relative basis with coefficients in `R`.
    pub fn with_relative_involution(self, sigma: &Matrix) -> Result<Self> {
        let d = self.ring().rank();
        let full = sigma.kron(&Matrix::identity(self.ring().domain(), d));
        self.with_involution(full)
    }

    pub fn module(&self) -> &ExtensionModule {
        &self.module
    }

    pub fn ring(&self) -> &FiniteAlgebra {
        self.module.ring()
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn involution(&self) -> Option<&Matrix> {
        self.involution.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn one(&self) -> Vec<Scalar> {
        self.constants.unit().to_vec()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.constants.mul(a, b)
    }

    pub fn random_element<G: Rng + ?Sized>(&self, rng: &mut G) -> Vec<Scalar> {
        self.module.random_element(rng)
    }
}

/// `N_{R'/R}(B')` with the product descended from the componentwise
/// product of symmetric tensors.
#[derive(Clone, Debug)]
pub struct NormAlgebra {
    norm: NormModule,
    source: RelativeAlgebra,
    constants: StructureConstants,
}

impl NormAlgebra {
    pub fn build(source: &RelativeAlgebra) -> Result<Self> {
        let norm = NormModule::build(source.module())?;
        let bilinear = Bilinear::from_constants(source.constants());
        let space = norm.ambient();
        let dom = norm.domain().clone();
        let product = |u: &[Scalar], v: &[Scalar]| space.sym_product(space, space, &bilinear, u, v);

        for r in norm.relation_basis() {
            for x in 0..space.dim() {
                let e = space.basis_vector(x);
                ensure!(
                    norm.project(&product(&r, &e)?).iter().all(Scalar::is_zero)
                        && norm.project(&product(&e, &r)?).iter().all(Scalar::is_zero),
                    Internal,
                    "norm relations do not form a two-sided ideal"
                );
            }
        }

        let reps = norm.representatives().to_vec();
        let mut table = Vec::with_capacity(reps.len() * reps.len());
        for &i in &reps {
            for &j in &reps {
                table.push(norm.project(&product(&space.basis_vector(i), &space.basis_vector(j))?));
            }
        }
        let n = reps.len();
        let unit = norm.nu(&source.one())?;
        let constants = StructureConstants::from_fn(&dom, n, unit, |i, j| table[i * n + j].clone());
        constants.check_unit().map_err(|e| crate::Error::Internal(e.to_string()))?;
        constants.check_associative().map_err(|e| crate::Error::Internal(e.to_string()))?;
        Ok(NormAlgebra { norm, source: source.clone(), constants })
    }

    pub fn norm_module(&self) -> &NormModule {
        &self.norm
    }

    pub fn source(&self) -> &RelativeAlgebra {
        &self.source
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn dim(&self) -> usize {
        self.norm.dim()
    }

    pub fn one(&self) -> Vec<Scalar> {
        self.constants.unit().to_vec()
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.constants.mul(u, v)
    }

    pub fn nu(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        self.norm.nu(b)
    }

    pub fn random_element<G: Rng + ?Sized>(&self, rng: &mut G) -> Vec<Scalar> {
        (0..self.dim()).map(|_| self.norm.domain().random(rng)).collect()
    }

    /// `N(σ)` for the involution of the source algebra.
    pub fn descended_involution(&self) -> Result<Option<Matrix>> {
        let Some(sigma) = self.source.involution() else {
            return Ok(None);
        };
        Ok(Some(norm_morphism(&self.norm, &self.norm, sigma)?))
    }

    /// The norm algebra as an associative algebra over `R`, with reduced
    /// trace `(1/m) Tr_reg` for its degree `m`.
    pub fn to_assoc(&self) -> Result<AssocAlgebra> {
        AssocAlgebra::generic(self.constants.clone())
    }
}

/// `Ψ: N(End_{R'}(Q')) -> End_R(N(Q'))` for a free `R'`-module `Q'`.
#[derive(Clone, Debug)]
pub struct PsiIso {
    endomorphisms: NormAlgebra,
    module: NormModule,
    images: Vec<Matrix>,
}

/// Checks carried out by [`PsiIso::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiReport {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub multiplicative_samples: usize,
    pub eta_samples: usize,
}

/// Builds `Ψ` for `Q' = R'^n`. `R'` must be étale.
pub fn psi_endo_iso(ring: &FiniteAlgebra, n: usize) -> Result<PsiIso> {
    ensure!(ring.is_etale()?, Precondition, "the endomorphism isomorphism needs an etale extension");
    let d = ring.rank();
    let dom = ring.domain();
    let q = ExtensionModule::free(ring, n);
    let module = NormModule::build(&q)?;
    let end = RelativeAlgebra::matrix(ring, n)?;
    let endomorphisms = NormAlgebra::build(&end)?;
    let bilinear = Bilinear::from_fn(end.dim(), q.dim(), q.dim(), |x, y| {
        let (pq, j) = (x / d, x % d);
        let (p, qq) = (pq / n, pq % n);
        let (k, l) = (y / d, y % d);
        let mut out = vec![dom.zero(); q.dim()];
        if qq == k {
            for (t, v) in ring.constants().basis_product(j, l).iter().enumerate() {
                out[p * d + t] = v.clone();
            }
        }
        out
    });
    let end_space: &GammaSpace = endomorphisms.norm.ambient();
    let q_space = module.ambient();
    let images = endomorphisms
        .norm
        .representatives()
        .iter()
        .map(|&u| {
            let cols = module
                .representatives()
                .iter()
                .map(|&x| {
                    let prod = end_space.sym_product(q_space, q_space, &bilinear, &end_space.basis_vector(u), &q_space.basis_vector(x))?;
                    Ok(module.project(&prod))
                })
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_columns(dom, module.dim(), &cols)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PsiIso { endomorphisms, module, images })
}

impl PsiIso {
    pub fn endomorphisms(&self) -> &NormAlgebra {
        &self.endomorphisms
    }

    pub fn module(&self) -> &NormModule {
        &self.module
    }

    pub fn apply(&self, u: &[Scalar]) -> Matrix {
        let dom = self.module.domain();
        let n = self.module.dim();
        u.iter().zip(&self.images).fold(Matrix::zeros(dom, n, n), |acc, (c, m)| if c.is_zero() { acc } else { &acc + &m.scale(c) })
    }

    /// The matrix of `Ψ` with `End(N(Q'))` flattened row-major.
    pub fn matrix(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.images.iter().map(|m| m.entries().to_vec()).collect();
        let n = self.module.dim();
        Matrix::from_columns(self.module.domain(), n * n, &cols).expect("square images")
    }

    /// Bijectivity, unit, multiplicativity on random pairs, and
    /// `Ψ(ν(φ)) = N(φ)` on random endomorphisms `φ`.
    pub fn verify<G: Rng + ?Sized>(&self, samples: usize, rng: &mut G) -> Result<PsiReport> {
        let n = self.module.dim();
        let rank = self.matrix().rank()?;
        ensure!(rank == self.endomorphisms.dim() && rank == n * n, Validation, "Psi is not bijective (rank {rank})");
        ensure!(self.apply(&self.endomorphisms.one()).is_identity(), Validation, "Psi does not preserve the unit");
        for _ in 0..samples {
            let u = self.endomorphisms.random_element(rng);
            let v = self.endomorphisms.random_element(rng);
            let lhs = self.apply(&self.endomorphisms.mul(&u, &v));
            ensure!(lhs == &self.apply(&u) * &self.apply(&v), Validation, "Psi is not multiplicative");
        }
        let ring = self.module.ring();
        let size = (self.endomorphisms.source().dim() / ring.rank()).isqrt();
        let eta_samples = samples.min(20);
        for _ in 0..eta_samples {
            let entries: Vec<Vec<Vec<Scalar>>> =
                (0..size).map(|_| (0..size).map(|_| ring.random_element(rng)).collect()).collect();
            let phi = free_linear_map(ring, &entries)?;
            let coords: Vec<Scalar> = entries.into_iter().flatten().flatten().collect();
            let lhs = self.apply(&self.endomorphisms.nu(&coords)?);
            ensure!(lhs == norm_morphism(&self.module, &self.module, &phi)?, Validation, "Psi(nu(phi)) != N(phi)");
        }
        Ok(PsiReport { source_dim: self.endomorphisms.dim(), target_dim: n * n, rank, multiplicative_samples: samples, eta_samples })
    }
}
