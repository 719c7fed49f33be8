//! The Segre homomorphism `Seg'`: `(GL_r)^d ⋊ S_d -> GL_{r^d}`, and the
//! orthogonal-group checks around the split quadratic form.
//!
//! Tensor bases are lexicographic on index tuples, so `kron_all` agrees
//! with the pure tensors of the split oracle.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::azumaya::{split_triple_z, standard_symplectic};
use crate::error::{bail, ensure, Result};
use crate::scalars::{Matrix, Scalar, ScalarDomain, ScalarMap};

/// `A_1 ⊗ .. ⊗ A_d`.
pub fn kron_all(ms: &[Matrix]) -> Matrix {
    let (first, rest) = ms.split_first().expect("at least one factor");
    rest.iter().fold(first.clone(), |acc, m| acc.kron(m))
}

/// `j(σ)` on `(F^r)^{⊗d}`: `x_1 ⊗ .. ⊗ x_d -> x_{σ^{-1}(1)} ⊗ .. ⊗ x_{σ^{-1}(d)}`.
/// `sigma[k]` is the image of `k` (0-based).
pub fn perm_matrix(domain: &ScalarDomain, sigma: &[usize], r: usize) -> Result<Matrix> {
    let d = sigma.len();
    check_permutation(sigma)?;
    let size = r.pow(d as u32);
    let mut m = Matrix::zeros(domain, size, size);
    let mut digits = vec![0usize; d];
    for col in 0..size {
        let mut rest = col;
        for k in (0..d).rev() {
            digits[k] = rest % r;
            rest /= r;
        }
        // the letter at position k moves to position sigma[k]
        let mut out = vec![0usize; d];
        for k in 0..d {
            out[sigma[k]] = digits[k];
        }
        let row = out.iter().fold(0, |acc, &x| acc * r + x);
        m.set(row, col, domain.one());
    }
    Ok(m)
}

fn check_permutation(sigma: &[usize]) -> Result<()> {
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        ensure!(s < sigma.len() && !seen[s], Validation, "{sigma:?} is not a permutation");
        seen[s] = true;
    }
    Ok(())
}

fn invert_permutation(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (k, &s) in sigma.iter().enumerate() {
        inv[s] = k;
    }
    inv
}

/// `((A_1, .., A_d), σ)` in `(GL_r)^d ⋊ S_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemidirectElement {
    mats: Vec<Matrix>,
    perm: Vec<usize>,
}

impl SemidirectElement {
    pub fn new(mats: Vec<Matrix>, perm: Vec<usize>) -> Result<Self> {
        ensure!(!mats.is_empty() && mats.len() == perm.len(), Shape, "{} matrices for a permutation of {}", mats.len(), perm.len());
        check_permutation(&perm)?;
        let r = mats[0].rows();
        let dom = mats[0].domain().clone();
        for m in &mats {
            ensure!(m.rows() == r && m.cols() == r && m.domain() == &dom, Shape, "factors must be {r}x{r} over {dom}");
            ensure!(!m.det()?.is_zero(), Validation, "factor is not invertible");
        }
        Ok(SemidirectElement { mats, perm })
    }

    pub fn identity(domain: &ScalarDomain, r: usize, d: usize) -> Self {
        SemidirectElement { mats: vec![Matrix::identity(domain, r); d], perm: (0..d).collect() }
    }

    pub fn random<G: Rng + ?Sized>(domain: &ScalarDomain, r: usize, d: usize, rng: &mut G) -> Self {
        let mats = (0..d)
            .map(|_| loop {
                let m = Matrix::from_fn(domain, r, r, |_, _| domain.random(rng));
                if !m.det().expect("square").is_zero() {
                    break m;
                }
            })
            .collect();
        let mut perm: Vec<usize> = (0..d).collect();
        perm.shuffle(rng);
        SemidirectElement { mats, perm }
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    fn shape(&self) -> (usize, usize) {
        (self.mats[0].rows(), self.mats.len())
    }

    /// `(A, σ)(B, τ) = ((A_k B_{σ^{-1}(k)})_k, στ)`.
    pub fn mul(&self, rhs: &SemidirectElement) -> Result<Self> {
        ensure!(self.shape() == rhs.shape(), Shape, "elements of different groups");
        let inv = invert_permutation(&self.perm);
        let mats = (0..self.mats.len()).map(|k| &self.mats[k] * &rhs.mats[inv[k]]).collect();
        let perm = rhs.perm.iter().map(|&t| self.perm[t]).collect();
        Ok(SemidirectElement { mats, perm })
    }

    /// `(A, σ)^{-1} = ((A_{σ(k)}^{-1})_k, σ^{-1})`.
    pub fn inverse(&self) -> Result<Self> {
        let mut mats = Vec::with_capacity(self.mats.len());
        for k in 0..self.mats.len() {
            let Some(inv) = self.mats[self.perm[k]].inverse()? else {
                bail!(Validation, "factor is not invertible");
            };
            mats.push(inv);
        }
        Ok(SemidirectElement { mats, perm: invert_permutation(&self.perm) })
    }

    /// `Seg(A_1, .., A_d) = A_1 ⊗ .. ⊗ A_d`.
    pub fn seg(&self) -> Matrix {
        kron_all(&self.mats)
    }

    /// `Seg'(A, σ) = Seg(A) ∘ j(σ)`.
    pub fn seg_prime(&self) -> Matrix {
        let (r, _) = self.shape();
        let j = perm_matrix(self.mats[0].domain(), &self.perm, r).expect("validated permutation");
        &self.seg() * &j
    }
}

pub fn is_symplectic(g: &Matrix, j: &Matrix) -> Result<bool> {
    ensure!(g.is_square() && g.rows() == j.rows() && j.is_square(), Shape, "shapes of g and J differ");
    Ok(&(&g.transpose() * j) * g == *j)
}

/// A quadratic form `q(x) = x^T Q x` with `Q` upper triangular; its polar
/// form has Gram matrix `Q + Q^T`. This encodes `q` faithfully in every
/// characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFormData {
    upper: Matrix,
}

impl QuadraticFormData {
    pub fn new(upper: Matrix) -> Result<Self> {
        ensure!(upper.is_square(), Shape, "quadratic form data must be square");
        for r in 0..upper.rows() {
            for c in 0..r {
                ensure!(upper.get(r, c).is_zero(), Validation, "quadratic form data must be upper triangular");
            }
        }
        Ok(QuadraticFormData { upper })
    }

    pub fn dim(&self) -> usize {
        self.upper.rows()
    }

    pub fn domain(&self) -> &ScalarDomain {
        self.upper.domain()
    }

    pub fn upper(&self) -> &Matrix {
        &self.upper
    }

    pub fn gram(&self) -> Matrix {
        &self.upper + &self.upper.transpose()
    }

    pub fn map(&self, f: &ScalarMap) -> Result<Self> {
        Ok(QuadraticFormData { upper: self.upper.map(f)? })
    }

    pub fn q(&self, x: &[Scalar]) -> Scalar {
        crate::gamma::dot(x, &self.upper.apply(x), self.domain())
    }

    pub fn b(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        crate::gamma::dot(x, &self.gram().apply(y), self.domain())
    }

    /// `q(g e_i) = q(e_i)` and `b(g e_i, g e_j) = b(e_i, e_j)` on the basis.
    pub fn is_orthogonal(&self, g: &Matrix) -> Result<bool> {
        ensure!(g.is_square() && g.rows() == self.dim() && g.domain() == self.domain(), Shape, "matrix does not act on the form");
        let n = self.dim();
        for i in 0..n {
            if self.q(&g.column(i)) != *self.upper.get(i, i) {
                return Ok(false);
            }
        }
        let transformed = &(&g.transpose() * &self.gram()) * g;
        Ok(transformed == self.gram())
    }
}

/// The Dickson invariant of `g ∈ O_q(F)`: away from characteristic 2 it
/// detects `det g = -1`; in characteristic 2 it is `rank(g - 1) mod 2`.
pub fn dickson(g: &Matrix, form: &QuadraticFormData) -> Result<u8> {
    ensure!(form.is_orthogonal(g)?, Precondition, "Dickson invariant of a non-orthogonal matrix");
    let dom = form.domain();
    dom.require_field("the Dickson invariant")?;
    if dom.characteristic() == 2 {
        let diff = g - &Matrix::identity(dom, g.rows());
        return Ok((diff.rank()? % 2) as u8);
    }
    Ok(if g.det()?.is_one() { 0 } else { 1 })
}

/// A random element of `Sp_{2n}(F)` as a product of symplectic
/// transvections `x -> x + c (v^T J x) v`.
pub fn random_symplectic<G: Rng + ?Sized>(domain: &ScalarDomain, n: usize, rng: &mut G) -> Matrix {
    let j = standard_symplectic(domain, n);
    let size = 2 * n;
    let mut g = Matrix::identity(domain, size);
    for _ in 0..2 * size + 2 {
        let v: Vec<Scalar> = (0..size).map(|_| domain.random(rng)).collect();
        let c = domain.random(rng);
        let vvt = Matrix::from_fn(domain, size, size, |r, s| &c * &(&v[r] * &v[s]));
        let t = &Matrix::identity(domain, size) + &(&vvt * &j);
        g = &t * &g;
    }
    g
}

/// Outcome of [`check_segre_restriction`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionReport {
    pub samples: usize,
    /// Sign tuples `ε` checked against `Seg(ε_1 I, .., ε_d I) = I ⟺ prod ε = 1`.
    pub sign_tuples: usize,
}

/// Products of random symplectic tuples land in `O_q` with Dickson
/// invariant 0, and the scalar kernel is `{ε : prod ε_i = 1}`.
pub fn check_segre_restriction<G: Rng + ?Sized>(ns: &[usize], domain: &ScalarDomain, samples: usize, rng: &mut G) -> Result<RestrictionReport> {
    let triple = split_triple_z(ns)?;
    let form = triple.quadratic_form()?.map(&ScalarMap::canonical(&ScalarDomain::Integers, domain)?)?;
    for _ in 0..samples {
        let factors: Vec<Matrix> = ns.iter().map(|&n| random_symplectic(domain, n, rng)).collect();
        let g = kron_all(&factors);
        ensure!(form.is_orthogonal(&g)?, Validation, "Segre image of a symplectic tuple is not orthogonal");
        ensure!(dickson(&g, &form)? == 0, Validation, "Segre image of a symplectic tuple has Dickson invariant 1");
    }
    let d = ns.len();
    for mask in 0..(1u32 << d) {
        let signs: Vec<i64> = (0..d).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect();
        let factors: Vec<Matrix> =
            ns.iter().zip(&signs).map(|(&n, &s)| Matrix::identity(domain, 2 * n).scale(&domain.from_int(s))).collect();
        let image_trivial = kron_all(&factors).is_identity();
        let product_trivial = domain.from_int(signs.iter().product()).is_one();
        ensure!(image_trivial == product_trivial, Validation, "scalar tuple {signs:?} breaks the kernel description");
    }
    Ok(RestrictionReport { samples, sign_tuples: 1 << d })
}

/// `dim {X : X^T B + B X = 0}`.
pub fn lie_algebra_dim(form: &Matrix) -> Result<usize> {
    ensure!(form.is_square(), Shape, "form must be square");
    let dom = form.domain();
    dom.require_field("Lie algebra dimensions")?;
    let n = form.rows();
    let cols: Vec<Vec<Scalar>> = (0..n * n)
        .map(|k| {
            let x = Matrix::from_fn(dom, n, n, |r, c| if r * n + c == k { dom.one() } else { dom.zero() });
            (&(&x.transpose() * form) + &(form * &x)).entries().to_vec()
        })
        .collect();
    Ok(Matrix::from_columns(dom, n * n, &cols)?.rank_and_kernel()?.1.len())
}

/// `(dim sp_2, dim o_q)` for the split form of the `(1, 1)` triple.
pub fn lie_dims(domain: &ScalarDomain) -> Result<(usize, usize)> {
    ensure!(domain.characteristic() != 2, UnsupportedDomain, "Lie algebra of O_q in characteristic 2 is out of scope");
    let j = standard_symplectic(domain, 1);
    let gram = split_triple_z(&[1, 1])?.gram().map(&ScalarMap::canonical(&ScalarDomain::Integers, domain)?)?;
    Ok((lie_algebra_dim(&j)?, lie_algebra_dim(&gram)?))
}

/// All of `SL_2(F_p) = Sp_2(F_p)`.
pub fn sl2_elements(domain: &ScalarDomain) -> Result<Vec<Matrix>> {
    let Some(elems) = domain.elements() else {
        bail!(Precondition, "enumeration needs a finite prime field");
    };
    let mut out = Vec::new();
    for a in &elems {
        for b in &elems {
            for c in &elems {
                for d in &elems {
                    if (&(a * d) - &(b * c)).is_one() {
                        out.push(Matrix::from_rows(domain, vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]])?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of [`exceptional_iso_evidence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalReport {
    pub sp2_order: usize,
    pub quotient_order: usize,
    pub image_size: usize,
    pub transposition_dickson: u8,
}

/// `(Sp_2 x Sp_2) ⋊ S_2` modulo `±(I, I)` maps injectively into `O_q(F)`,
/// with Dickson invariant equal to the sign of the permutation.
pub fn exceptional_iso_evidence(domain: &ScalarDomain) -> Result<ExceptionalReport> {
    ensure!(domain.characteristic() != 2, Precondition, "evidence is collected away from characteristic 2");
    let group = sl2_elements(domain)?;
    let form = split_triple_z(&[1, 1])?.quadratic_form()?.map(&ScalarMap::canonical(&ScalarDomain::Integers, domain)?)?;
    let mut fibres: HashMap<Matrix, Vec<SemidirectElement>> = HashMap::new();
    for perm in [vec![0, 1], vec![1, 0]] {
        let sign = (perm[0] == 1) as u8;
        for a in &group {
            for b in &group {
                let g = SemidirectElement { mats: vec![a.clone(), b.clone()], perm: perm.clone() };
                let image = g.seg_prime();
                ensure!(form.is_orthogonal(&image)?, Validation, "image is not orthogonal");
                ensure!(dickson(&image, &form)? == sign, Validation, "Dickson invariant differs from the sign");
                fibres.entry(image).or_default().push(g);
            }
        }
    }
    let minus = |m: &Matrix| m.scale(&-domain.one());
    for elems in fibres.values() {
        ensure!(elems.len() == 2, Validation, "an image has {} preimages", elems.len());
        let (x, y) = (&elems[0], &elems[1]);
        ensure!(
            x.perm == y.perm && minus(&x.mats[0]) == y.mats[0] && minus(&x.mats[1]) == y.mats[1],
            Validation,
            "preimages differ by more than -(I, I)"
        );
    }
    let swap = perm_matrix(domain, &[1, 0], 2)?;
    let order = group.len();
    Ok(ExceptionalReport {
        sp2_order: order,
        quotient_order: order * order,
        image_size: fibres.len(),
        transposition_dickson: dickson(&swap, &form)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kron_example() {
        let q = ScalarDomain::Rationals;
        let a = Matrix::from_ints(&q, &[&[1, 2], &[3, 4]]);
        let expected = Matrix::from_ints(&q, &[&[1, 0, 2, 0], &[0, 1, 0, 2], &[3, 0, 4, 0], &[0, 3, 0, 4]]);
        assert_eq!(kron_all(&[a, Matrix::identity(&q, 2)]), expected);
    }

    #[test]
    fn transposition_parity() {
        let q = ScalarDomain::Rationals;
        assert_eq!(perm_matrix(&q, &[1, 0], 2).unwrap().det().unwrap(), q.from_int(-1));
        assert_eq!(perm_matrix(&q, &[1, 0], 4).unwrap().det().unwrap(), q.from_int(1));
        assert!(perm_matrix(&q, &[0, 1], 3).unwrap().is_identity());
    }

    #[test]
    fn perm_matrix_moves_factors() {
        let q = ScalarDomain::Rationals;
        let x: Vec<Scalar> = [1, 2].iter().map(|&v| q.from_int(v)).collect();
        let y: Vec<Scalar> = [3, 5].iter().map(|&v| q.from_int(v)).collect();
        let z: Vec<Scalar> = [7, 11].iter().map(|&v| q.from_int(v)).collect();
        let tensor = |vs: &[&Vec<Scalar>]| crate::norm::pure_tensor(&vs.iter().map(|v| v.to_vec()).collect::<Vec<_>>(), &q);
        // sigma = (1 2 3): position k goes to k + 1
        let j = perm_matrix(&q, &[1, 2, 0], 2).unwrap();
        assert_eq!(j.apply(&tensor(&[&x, &y, &z])), tensor(&[&z, &x, &y]));
    }

    #[test]
    fn semidirect_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f5 = ScalarDomain::prime_field(5).unwrap();
        for _ in 0..20 {
            let g = SemidirectElement::random(&f5, 2, 3, &mut rng);
            let h = SemidirectElement::random(&f5, 2, 3, &mut rng);
            assert_eq!(g.mul(&h).unwrap().seg_prime(), &g.seg_prime() * &h.seg_prime());
            assert_eq!(g.mul(&g.inverse().unwrap()).unwrap(), SemidirectElement::identity(&f5, 2, 3));
        }
    }

    #[test]
    fn symplectic_membership() {
        let q = ScalarDomain::Rationals;
        let j = standard_symplectic(&q, 1);
        assert!(is_symplectic(&j, &j).unwrap());
        assert!(is_symplectic(&Matrix::identity(&q, 2), &j).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = random_symplectic(&q, 2, &mut rng);
        assert!(is_symplectic(&g, &standard_symplectic(&q, 2)).unwrap());
    }

    #[test]
    fn orthogonal_membership_and_dickson() {
        let f3 = ScalarDomain::prime_field(3).unwrap();
        let to_f3 = ScalarMap::canonical(&ScalarDomain::Integers, &f3).unwrap();
        let form = split_triple_z(&[1, 1]).unwrap().quadratic_form().unwrap().map(&to_f3).unwrap();
        assert!(form.is_orthogonal(&Matrix::identity(&f3, 4)).unwrap());
        assert_eq!(dickson(&Matrix::identity(&f3, 4), &form).unwrap(), 0);
        assert_eq!(dickson(&perm_matrix(&f3, &[1, 0], 2).unwrap(), &form).unwrap(), 1);
        let generic = Matrix::from_ints(&f3, &[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(!form.is_orthogonal(&generic).unwrap());
        assert!(dickson(&generic, &form).is_err());

        let form2 = split_triple_z(&[2, 2]).unwrap().quadratic_form().unwrap().map(&to_f3).unwrap();
        assert_eq!(dickson(&perm_matrix(&f3, &[1, 0], 4).unwrap(), &form2).unwrap(), 0);
    }

    #[test]
    fn lie_dimensions() {
        assert_eq!(lie_dims(&ScalarDomain::Rationals).unwrap(), (3, 6));
        assert!(lie_dims(&ScalarDomain::prime_field(2).unwrap()).is_err());
    }

    #[test]
    fn restriction_over_f5() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f5 = ScalarDomain::prime_field(5).unwrap();
        let report = check_segre_restriction(&[1, 1], &f5, 20, &mut rng).unwrap();
        assert_eq!(report.sign_tuples, 4);
    }

    #[test]
    fn exceptional_evidence_f3() {
        let f3 = ScalarDomain::prime_field(3).unwrap();
        let report = exceptional_iso_evidence(&f3).unwrap();
        assert_eq!(report.sp2_order, 24);
        assert_eq!(report.image_size, 576);
        assert_eq!(report.transposition_dickson, 1);
    }
}
