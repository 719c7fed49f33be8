//! Ferrand's norm functor `N_{R'/R}(M') = Γ^d_R(M') ⊗_{Γ^d_R(R')} R`.
//!
//! The tensor product is computed as the quotient of `Γ^d_R(M')` by the span
//! of `μ(g, x) - π(g) x` over all pairs of basis elements. Quotient
//! coordinates are the non-pivot columns of the reduced relation matrix.

mod algebra;

pub use algebra::{psi_endo_iso, NormAlgebra, PsiIso, RelativeAlgebra};

use rand::Rng;

use crate::algebra::{ExtensionModule, FiniteAlgebra};
use crate::error::{bail, ensure, Result};
use crate::gamma::{pi_map, rearrangements, Bilinear, GammaSpace};
use crate::scalars::{Matrix, RowEchelon, Scalar, ScalarDomain, ScalarMap};

/// `N_{R'/R}(M')` with its projection from and section into `Γ^d(M')`.
#[derive(Clone, Debug)]
pub struct NormModule {
    module: ExtensionModule,
    ring_space: GammaSpace,
    space: GammaSpace,
    pi: Vec<Scalar>,
    relations: RowEchelon,
    free: Vec<usize>,
    projection: Matrix,
    etale: bool,
}

impl NormModule {
    pub fn build(module: &ExtensionModule) -> Result<Self> {
        let ring = module.ring();
        let dom = ring.domain();
        dom.require_field("the norm module quotient")?;
        let d = ring.rank();
        let ring_space = GammaSpace::new(dom, d, d);
        let space = GammaSpace::new(dom, module.dim(), d);
        let pi = pi_map(ring)?;
        let bilinear = Bilinear::from_module(module);

        let mut rows = Vec::new();
        for (g, pg) in pi.iter().enumerate() {
            let action = ring_space.left_action_matrix(&space, &bilinear, &ring_space.basis_vector(g))?;
            for x in 0..space.dim() {
                let mut row = action.column(x);
                row[x] = &row[x] - pg;
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let relation_matrix = if rows.is_empty() {
            Matrix::zeros(dom, 0, space.dim())
        } else {
            Matrix::from_rows(dom, rows)?
        };
        let relations = relation_matrix.row_echelon()?;
        let free = relations.free_columns();
        let cols: Vec<Vec<Scalar>> = (0..space.dim())
            .map(|b| {
                let r = relations.reduce(&space.basis_vector(b));
                free.iter().map(|&f| r[f].clone()).collect()
            })
            .collect();
        let projection = Matrix::from_columns(dom, free.len(), &cols)?;
        let etale = ring.is_etale()?;
        Ok(NormModule { module: module.clone(), ring_space, space, pi, relations, free, projection, etale })
    }

    pub fn module(&self) -> &ExtensionModule {
        &self.module
    }

    pub fn ring(&self) -> &FiniteAlgebra {
        self.module.ring()
    }

    pub fn domain(&self) -> &ScalarDomain {
        self.module.ring().domain()
    }

    pub fn degree(&self) -> usize {
        self.ring().rank()
    }

    pub fn is_etale(&self) -> bool {
        self.etale
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// `Γ^d_R(M')`.
    pub fn ambient(&self) -> &GammaSpace {
        &self.space
    }

    /// `Γ^d_R(R')`.
    pub fn ring_space(&self) -> &GammaSpace {
        &self.ring_space
    }

    pub fn pi(&self) -> &[Scalar] {
        &self.pi
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    /// Ambient basis elements kept as quotient basis.
    pub fn representatives(&self) -> &[usize] {
        &self.free
    }

    /// Ambient -> quotient.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// Quotient -> ambient, choosing the representative basis elements.
    pub fn section(&self) -> Matrix {
        let dom = self.domain();
        Matrix::from_fn(dom, self.space.dim(), self.dim(), |r, c| if self.free[c] == r { dom.one() } else { dom.zero() })
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.apply(v)
    }

    pub fn lift(&self, q: &[Scalar]) -> Vec<Scalar> {
        let mut v = self.space.zero();
        for (&f, c) in self.free.iter().zip(q) {
            v[f] = c.clone();
        }
        v
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let dom = self.domain();
        (0..self.dim()).map(|k| if k == i { dom.one() } else { dom.zero() }).collect()
    }

    /// Rows of the reduced relation matrix; they span the relations.
    pub fn relation_basis(&self) -> Vec<Vec<Scalar>> {
        self.relations.reduced.to_rows()
    }

    /// The universal normic law `m' -> γ^d(m') ⊗ 1`.
    pub fn nu(&self, m: &[Scalar]) -> Result<Vec<Scalar>> {
        Ok(self.project(&self.space.gamma_pure(m)?))
    }

    /// For `M' = R'`, the isomorphism `N(R') -> R` induced by `π`, as a
    /// row of coordinates.
    pub fn trivialization(&self) -> Result<Vec<Scalar>> {
        ensure!(
            self.module == ExtensionModule::free(self.ring(), 1),
            Precondition,
            "the trivialization exists for the norm of the extension itself"
        );
        let row: Vec<Scalar> = self.free.iter().map(|&f| self.pi[f].clone()).collect();
        ensure!(row.len() == 1 && !row[0].is_zero(), Internal, "pi does not trivialize the norm of the extension");
        Ok(row)
    }

    /// Checks that a linear map of ambient spaces preserves the relations.
    fn check_descends(&self, target: &NormModule, ambient_map: &Matrix) -> Result<()> {
        for row in self.relations.reduced.to_rows() {
            ensure!(
                target.project(&ambient_map.apply(&row)).iter().all(Scalar::is_zero),
                Internal,
                "map does not preserve the norm relations"
            );
        }
        Ok(())
    }
}

/// `N(φ)` for an `R'`-linear map `φ: M'_1 -> M'_2` given on `R`-bases.
pub fn norm_morphism(source: &NormModule, target: &NormModule, phi: &Matrix) -> Result<Matrix> {
    source.module.check_semilinear(&target.module, phi, None)?;
    descend(source, target, phi)
}

/// `N(φ)` for a map that is semilinear over a ring automorphism `tau` of
/// `R'`: `φ(r m) = tau(r) φ(m)`. Such maps also descend because `tau`
/// preserves the norm.
pub fn norm_morphism_semilinear(source: &NormModule, target: &NormModule, phi: &Matrix, tau: &Matrix) -> Result<Matrix> {
    source.ring().check_ring_map(tau)?;
    source.module.check_semilinear(&target.module, phi, Some(tau))?;
    descend(source, target, phi)
}

fn descend(source: &NormModule, target: &NormModule, phi: &Matrix) -> Result<Matrix> {
    let ambient = source.space.functor_map(&target.space, phi)?;
    source.check_descends(target, &ambient)?;
    Ok(&(target.projection() * &ambient) * &source.section())
}

/// The `R`-linear map of the `R'`-linear map `M'_1 -> M'_2` between free
/// modules with `R'`-matrix `entries[p][q]` (each an element of `R'`).
pub fn free_linear_map(ring: &FiniteAlgebra, entries: &[Vec<Vec<Scalar>>]) -> Result<Matrix> {
    let d = ring.rank();
    let rows = entries.len();
    let cols = entries.first().map_or(0, Vec::len);
    ensure!(entries.iter().all(|r| r.len() == cols), Shape, "ragged matrix over the extension");
    let blocks: Vec<Vec<Matrix>> = entries.iter().map(|r| r.iter().map(|c| ring.regular_rep(c)).collect()).collect();
    Ok(Matrix::from_fn(ring.domain(), rows * d, cols * d, |r, c| blocks[r / d][c / d].get(r % d, c % d).clone()))
}

pub fn random_free_linear_map<G: Rng + ?Sized>(ring: &FiniteAlgebra, rows: usize, cols: usize, rng: &mut G) -> Matrix {
    let entries: Vec<Vec<Vec<Scalar>>> =
        (0..rows).map(|_| (0..cols).map(|_| ring.random_element(rng)).collect()).collect();
    free_linear_map(ring, &entries).expect("rectangular by construction")
}

/// Block sizes of a product module `E_1 x .. x E_d` over the split algebra.
pub fn split_blocks(module: &ExtensionModule) -> Result<Vec<usize>> {
    let ring = module.ring();
    ensure!(ring.is_split(), Precondition, "the split oracle needs the split algebra");
    let mut dims = Vec::new();
    let mut offset = 0;
    for a in module.action() {
        let inside: Vec<usize> = (0..module.dim()).filter(|&k| a.get(k, k).is_one()).collect();
        let expected = Matrix::from_fn(ring.domain(), module.dim(), module.dim(), |r, c| {
            if r == c && inside.contains(&r) {
                ring.domain().one()
            } else {
                ring.domain().zero()
            }
        });
        ensure!(
            a == &expected && inside.iter().enumerate().all(|(k, &i)| i == offset + k),
            Precondition,
            "module is not presented as a product of blocks"
        );
        offset += inside.len();
        dims.push(inside.len());
    }
    Ok(dims)
}

/// The isomorphism `N(E_1 x .. x E_d) -> E_1 ⊗ .. ⊗ E_d`, the target with
/// lexicographic tensor basis. On representatives, an orbit sum maps to the
/// sum of its words whose `k`-th letter lies in `E_k`.
pub fn split_oracle(nm: &NormModule) -> Result<Matrix> {
    let dims = split_blocks(&nm.module)?;
    let offsets = crate::algebra::block_offsets(&dims);
    let dom = nm.domain();
    let target_dim: usize = dims.iter().product();
    let space = &nm.space;
    let mut cols = Vec::with_capacity(nm.dim());
    for &b in &nm.free {
        let mut v = vec![dom.zero(); target_dim];
        for word in rearrangements(space.word(b)) {
            let mut idx = 0;
            let mut ok = true;
            for (k, &letter) in word.iter().enumerate() {
                if letter < offsets[k] || letter >= offsets[k + 1] {
                    ok = false;
                    break;
                }
                idx = idx * dims[k] + (letter - offsets[k]);
            }
            if ok {
                v[idx] = &v[idx] + &dom.one();
            }
        }
        cols.push(v);
    }
    let oracle = Matrix::from_columns(dom, target_dim, &cols)?;
    ensure!(
        oracle.is_square() && oracle.rank()? == target_dim,
        Internal,
        "split oracle is not invertible ({}x{})",
        oracle.rows(),
        oracle.cols()
    );
    Ok(oracle)
}

/// Checks `oracle(ν(y_1, .., y_d)) = y_1 ⊗ .. ⊗ y_d` on every tuple of
/// basis vectors and on `samples` random tuples. Returns the number of basis
/// tuples.
pub fn check_split_oracle<G: Rng + ?Sized>(nm: &NormModule, samples: usize, rng: &mut G) -> Result<usize> {
    let dims = split_blocks(&nm.module)?;
    let oracle = split_oracle(nm)?;
    let dom = nm.domain();
    let unit = |b: usize, k: usize| -> Vec<Scalar> { (0..b).map(|i| if i == k { dom.one() } else { dom.zero() }).collect() };
    let total: usize = dims.iter().product();
    let check = |factors: &[Vec<Scalar>]| -> Result<()> {
        ensure!(
            oracle.apply(&nm.nu(&factors.concat())?) == pure_tensor(factors, dom),
            Validation,
            "split oracle does not carry nu to the pure tensor"
        );
        Ok(())
    };
    for flat in 0..total {
        let mut rest = flat;
        let mut factors = Vec::with_capacity(dims.len());
        for &b in dims.iter().rev() {
            factors.push(unit(b, rest % b));
            rest /= b;
        }
        factors.reverse();
        check(&factors)?;
    }
    for _ in 0..samples {
        let factors: Vec<Vec<Scalar>> = dims.iter().map(|&b| (0..b).map(|_| dom.random(rng)).collect()).collect();
        check(&factors)?;
    }
    Ok(total)
}

/// Pure tensor `y_1 ⊗ .. ⊗ y_d` in the lexicographic basis.
pub fn pure_tensor(factors: &[Vec<Scalar>], domain: &ScalarDomain) -> Vec<Scalar> {
    factors.iter().fold(vec![domain.one()], |acc, f| {
        acc.iter().flat_map(|a| f.iter().map(move |x| a * x)).collect()
    })
}

/// `θ: N_{R'/R}(M') ⊗_R Q -> N_{Q'/Q}(M' ⊗ Q')` for a field extension
/// `f: R -> Q`, where `base_changed` is the norm module of `M' ⊗_R Q` over
/// `R' ⊗_R Q`. On representatives, `basis(a) ⊗ q -> q basis(a)`.
pub fn base_change_theta(nm: &NormModule, f: &ScalarMap, base_changed: &NormModule) -> Result<Matrix> {
    ensure!(f.source() == nm.domain(), Shape, "map from {} applied over {}", f.source(), nm.domain());
    ensure!(
        base_changed.module == nm.module.base_change(f)?,
        Shape,
        "target norm module is not the base change of the source"
    );
    let theta = (base_changed.projection() * &nm.section().map(f)?).clone();
    ensure!(theta.is_square() && theta.rank()? == theta.rows(), Internal, "base change map is not invertible");
    Ok(theta)
}

/// Builds the base-changed norm module and `θ` in one go.
pub fn base_change(nm: &NormModule, f: &ScalarMap) -> Result<(NormModule, Matrix)> {
    let q = NormModule::build(&nm.module.base_change(f)?)?;
    let theta = base_change_theta(nm, f, &q)?;
    Ok((q, theta))
}

/// Diagrams verified by [`check_theta_coherence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceReport {
    pub triangle: bool,
    pub pentagon: bool,
    pub dims: (usize, usize, usize),
}

/// Checks that `θ` along the identity is the identity, and that `θ` along
/// `g ∘ f` equals `θ_g ∘ (θ_f ⊗ W)` for a chain `R -> Q -> W`.
pub fn check_theta_coherence(nm: &NormModule, f: &ScalarMap, g: &ScalarMap) -> Result<CoherenceReport> {
    let id = ScalarMap::identity(nm.domain());
    let (_, theta_id) = base_change(nm, &id)?;
    ensure!(theta_id.is_identity(), Validation, "triangle: theta along the identity is not the identity");
    let (nq, theta_f) = base_change(nm, f)?;
    let (nw, theta_g) = base_change(&nq, g)?;
    let gf = f.then(g)?;
    let (nw_direct, theta_gf) = base_change(nm, &gf)?;
    ensure!(nw_direct.dim() == nw.dim(), Validation, "pentagon: base changes have different dimensions");
    ensure!(
        nw_direct.representatives() == nw.representatives() && nw_direct.projection() == nw.projection(),
        Validation,
        "pentagon: iterated and direct base changes differ"
    );
    let composite = &theta_g * &theta_f.map(g)?;
    ensure!(composite == theta_gf, Validation, "pentagon: theta_g o theta_f != theta_(g o f)");
    Ok(CoherenceReport { triangle: true, pentagon: true, dims: (nm.dim(), nq.dim(), nw.dim()) })
}

/// Verifies `θ ∘ (π ⊗ Q) = π_Q ∘ (canonical)` on every ambient basis element
/// and `θ(ν(m) ⊗ 1) = ν_Q(m ⊗ 1)` on `samples` random `m`.
pub fn check_base_change_square<G: Rng + ?Sized>(nm: &NormModule, f: &ScalarMap, samples: usize, rng: &mut G) -> Result<usize> {
    let (nq, theta) = base_change(nm, f)?;
    let projected = nm.projection().map(f)?;
    let lhs = &theta * &projected;
    ensure!(&lhs == nq.projection(), Validation, "base change square fails on the ambient basis");
    for _ in 0..samples {
        let m = nm.module.random_element(rng);
        let left = theta.apply(&nm.nu(&m)?.iter().map(|x| f.apply(x)).collect::<Result<Vec<_>>>()?);
        let right = nq.nu(&m.iter().map(|x| f.apply(x)).collect::<Result<Vec<_>>>()?)?;
        ensure!(left == right, Validation, "base change square fails at a random point");
    }
    Ok(nm.space.dim())
}

/// Naturality of `θ`: `θ_2 ∘ (N(φ) ⊗ Q) = N_Q(φ ⊗ Q) ∘ θ_1`.
pub fn check_theta_naturality(source: &NormModule, target: &NormModule, phi: &Matrix, f: &ScalarMap) -> Result<()> {
    let (sq, theta1) = base_change(source, f)?;
    let (tq, theta2) = base_change(target, f)?;
    let n_phi = norm_morphism(source, target, phi)?;
    let n_phi_q = norm_morphism(&sq, &tq, &phi.map(f)?)?;
    ensure!(&theta2 * &n_phi.map(f)? == &n_phi_q * &theta1, Validation, "theta is not natural for the given map");
    Ok(())
}

/// Spanning data for the image of `ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub dimension: usize,
    /// Rank of the `ν`-coefficients at the polarization points.
    pub polarization_rank: usize,
    /// Rank reached by random values of `ν`; `None` over finite fields.
    pub random_rank: Option<usize>,
}

impl SpanReport {
    pub fn spans(&self) -> bool {
        self.polarization_rank == self.dimension && self.random_rank.is_none_or(|r| r == self.dimension)
    }
}

/// Whether the image of `ν` spans the norm module. The coefficients of
/// `ν(sum_i t_i b_i)` over an `R`-basis `b_i` are the images of all ambient
/// basis elements; random sampling is used over infinite fields.
pub fn nu_image_spans<G: Rng + ?Sized>(nm: &NormModule, rng: &mut G) -> Result<SpanReport> {
    let dom = nm.domain();
    let basis: Vec<Vec<Scalar>> = (0..nm.module.dim())
        .map(|i| (0..nm.module.dim()).map(|j| if i == j { dom.one() } else { dom.zero() }).collect())
        .collect();
    let law = nm.space.law_eval(&basis)?;
    let mut coefficient_vectors = Vec::new();
    for b in 0..nm.space.dim() {
        // the monomial t^a picks out the ambient basis element indexed by a
        let exps = nm.space.exponents(b);
        let column: Vec<Scalar> = law.iter().map(|p| p.coefficient(&exps)).collect();
        coefficient_vectors.push(nm.project(&column));
    }
    let polarization_rank = rank_of(dom, nm.dim(), &coefficient_vectors)?;
    let random_rank = if dom.is_finite() {
        None
    } else {
        let mut values = Vec::new();
        let mut rank = 0;
        for _ in 0..2 * nm.dim() + 4 {
            values.push(nm.nu(&nm.module.random_element(rng))?);
            rank = rank_of(dom, nm.dim(), &values)?;
            if rank == nm.dim() {
                break;
            }
        }
        Some(rank)
    };
    Ok(SpanReport { dimension: nm.dim(), polarization_rank, random_rank })
}

fn rank_of(dom: &ScalarDomain, rows: usize, cols: &[Vec<Scalar>]) -> Result<usize> {
    if rows == 0 || cols.is_empty() {
        return Ok(0);
    }
    Matrix::from_columns(dom, rows, cols)?.rank()
}

/// Dimension of the norm of `R'^n`.
pub fn norm_of_free(ring: &FiniteAlgebra, n: usize) -> Result<NormModule> {
    if n == 0 {
        bail!(Validation, "free module of rank 0");
    }
    NormModule::build(&ExtensionModule::free(ring, n))
}

#[cfg(test)]
mod tests;
