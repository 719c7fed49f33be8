use crate::error::{ensure, Result};
use crate::scalars::{Matrix, Scalar, ScalarDomain, ScalarMap};

/// Multiplication table of a finite free algebra:
/// `e_i e_j = sum_k c[i][j][k] e_k`, together with the coordinates of `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    domain: ScalarDomain,
    rank: usize,
    table: Vec<Scalar>,
    unit: Vec<Scalar>,
}

impl StructureConstants {
    /// Builds the table without validating the algebra axioms; see
    /// [`StructureConstants::check_associative`] and friends.
    pub fn new(domain: &ScalarDomain, table: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Self> {
        let rank = table.len();
        ensure!(unit.len() == rank, Shape, "unit has {} coordinates for rank {rank}", unit.len());
        ensure!(
            table.iter().all(|row| row.len() == rank && row.iter().all(|v| v.len() == rank)),
            Shape,
            "structure constants must form a {rank}x{rank}x{rank} table"
        );
        let flat: Vec<Scalar> = table.into_iter().flatten().flatten().collect();
        ensure!(
            flat.iter().chain(&unit).all(|s| domain.contains(s)),
            Shape,
            "structure constants outside {domain}"
        );
        Ok(StructureConstants { domain: domain.clone(), rank, table: flat, unit })
    }

    pub(crate) fn from_fn(domain: &ScalarDomain, rank: usize, unit: Vec<Scalar>, f: impl Fn(usize, usize) -> Vec<Scalar>) -> Self {
        let mut table = Vec::with_capacity(rank * rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                let v = f(i, j);
                debug_assert_eq!(v.len(), rank);
                table.extend(v);
            }
        }
        StructureConstants { domain: domain.clone(), rank, table, unit }
    }

    pub fn domain(&self) -> &ScalarDomain {
        &self.domain
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.table[(i * self.rank + j) * self.rank + k]
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.rank + j) * self.rank;
        &self.table[start..start + self.rank]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.domain.zero(); self.rank];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&xy * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x -> a x`; column `j` holds the coordinates of `a e_j`.
    pub fn left_mult(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.rank).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Matrix::from_columns(&self.domain, self.rank, &cols).expect("square by construction")
    }

    /// Matrix of `x -> x a`.
    pub fn right_mult(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.rank).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        Matrix::from_columns(&self.domain, self.rank, &cols).expect("square by construction")
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.domain.zero(); self.rank];
        v[i] = self.domain.one();
        v
    }

    pub fn check_commutative(&self) -> Result<()> {
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                ensure!(
                    self.basis_product(i, j) == self.basis_product(j, i),
                    Validation,
                    "not commutative: e{i} e{j} != e{j} e{i}"
                );
            }
        }
        Ok(())
    }

    pub fn check_associative(&self) -> Result<()> {
        for i in 0..self.rank {
            for j in 0..self.rank {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..self.rank {
                    let left = self.mul(&ij, &self.basis_vector(k));
                    let jk = self.basis_product(j, k).to_vec();
                    let right = self.mul(&self.basis_vector(i), &jk);
                    ensure!(left == right, Validation, "not associative on (e{i} e{j}) e{k}");
                }
            }
        }
        Ok(())
    }

    pub fn check_unit(&self) -> Result<()> {
        for i in 0..self.rank {
            let e = self.basis_vector(i);
            ensure!(self.mul(&self.unit, &e) == e, Validation, "unit fails on the left of e{i}");
            ensure!(self.mul(&e, &self.unit) == e, Validation, "unit fails on the right of e{i}");
        }
        Ok(())
    }

    pub fn map(&self, f: &ScalarMap) -> Result<Self> {
        ensure!(f.source() == &self.domain, Shape, "map from {} applied to an algebra over {}", f.source(), self.domain);
        Ok(StructureConstants {
            domain: f.target().clone(),
            rank: self.rank,
            table: self.table.iter().map(|x| f.apply(x)).collect::<Result<_>>()?,
            unit: self.unit.iter().map(|x| f.apply(x)).collect::<Result<_>>()?,
        })
    }

    /// Tensor product on the basis `e_i ⊗ f_j`, indexed `i * rank(rhs) + j`.
    pub fn tensor(&self, rhs: &StructureConstants) -> Result<Self> {
        ensure!(self.domain == rhs.domain, Shape, "tensor of algebras over {} and {}", self.domain, rhs.domain);
        let (m, n) = (self.rank, rhs.rank);
        let unit: Vec<Scalar> = (0..m * n).map(|idx| &self.unit[idx / n] * &rhs.unit[idx % n]).collect();
        Ok(Self::from_fn(&self.domain, m * n, unit, |a, b| {
            let (i, j) = (a / n, a % n);
            let (k, l) = (b / n, b % n);
            let left = self.basis_product(i, k);
            let right = rhs.basis_product(j, l);
            (0..m * n).map(|c| &left[c / n] * &right[c % n]).collect()
        }))
    }

    /// Opposite multiplication.
    pub fn opposite(&self) -> Self {
        Self::from_fn(&self.domain, self.rank, self.unit.clone(), |i, j| self.basis_product(j, i).to_vec())
    }
}
