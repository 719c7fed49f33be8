use std::collections::BTreeMap;
use std::fmt;

use super::{Matrix, Scalar, ScalarDomain};
use crate::error::{ensure, Result};

/// Sparse multivariate polynomial in `t_1, .., t_k`.
///
/// Keys are full exponent vectors of length `k`; zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    domain: ScalarDomain,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MultiPoly {
    pub fn zero(domain: &ScalarDomain, nvars: usize) -> Self {
        MultiPoly { domain: domain.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(domain: &ScalarDomain, nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(domain, nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// `c * t_i` (0-based `i`).
    pub fn linear(domain: &ScalarDomain, nvars: usize, i: usize, c: Scalar) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = Self::zero(domain, nvars);
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(domain: &ScalarDomain, nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Result<Self> {
        let mut p = Self::zero(domain, nvars);
        for (e, c) in terms {
            ensure!(e.len() == nvars, Shape, "exponent vector of length {} for {nvars} variables", e.len());
            ensure!(domain.contains(&c), Shape, "coefficient {c} outside {domain}");
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                let sum = &*v + &c;
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn domain(&self) -> &ScalarDomain {
        &self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.domain.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add(&self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            domain: self.domain.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &MultiPoly) -> MultiPoly {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: &Scalar) -> MultiPoly {
        let mut out = Self::zero(&self.domain, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Self::zero(&self.domain, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        ensure!(point.len() == self.nvars, Shape, "point of length {} for {} variables", point.len(), self.nvars);
        let mut acc = self.domain.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term = &term * &x.pow(k);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("t{}", i + 1) } else { format!("t{}^{k}", i + 1) })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// rows, memoized over the set of columns still in use.
pub fn poly_det(entries: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = entries.len();
    ensure!(entries.iter().all(|r| r.len() == n), Shape, "polynomial matrix is not square");
    ensure!(n <= 20, Shape, "polynomial determinant of size {n} is out of range");
    let Some(first) = entries.first().and_then(|r| r.first()) else {
        return Err(crate::error::Error::Shape("empty polynomial matrix".into()));
    };
    let (domain, k) = (first.domain().clone(), first.nvars());
    ensure!(
        entries.iter().flatten().all(|p| p.nvars() == k && p.domain() == &domain),
        Shape,
        "inconsistent variable counts or domains"
    );
    // minors[mask] = det of rows 0..popcount(mask) on the columns in mask
    let mut minors: Vec<Option<MultiPoly>> = vec![None; 1 << n];
    minors[0] = Some(MultiPoly::constant(&domain, k, domain.one()));
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = MultiPoly::zero(&domain, k);
        let cols: Vec<usize> = (0..n).filter(|c| mask & (1 << c) != 0).collect();
        for (pos, &c) in cols.iter().enumerate() {
            let entry = &entries[row][c];
            if entry.is_zero() {
                continue;
            }
            let minor = minors[mask & !(1 << c)].as_ref().unwrap();
            if minor.is_zero() {
                continue;
            }
            let term = entry.mul(minor);
            // expanding along the last row of a (row+1)-square block
            acc = if (row + pos).is_multiple_of(2) { acc.add(&term) } else { acc.sub(&term) };
        }
        minors[mask] = Some(acc);
    }
    Ok(minors[(1 << n) - 1].take().unwrap())
}

/// Linear polynomial matrix `sum_i t_i * mats[i]`.
pub fn linear_pencil(mats: &[Matrix]) -> Vec<Vec<MultiPoly>> {
    let k = mats.len();
    let domain = mats[0].domain().clone();
    let n = mats[0].rows();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let mut p = MultiPoly::zero(&domain, k);
                    for (i, m) in mats.iter().enumerate() {
                        p = p.add(&MultiPoly::linear(&domain, k, i, m.get(r, c).clone()));
                    }
                    p
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ScalarDomain {
        ScalarDomain::Rationals
    }

    fn t(i: usize, c: i64) -> MultiPoly {
        MultiPoly::linear(&q(), 2, i, q().from_int(c))
    }

    fn zero() -> MultiPoly {
        MultiPoly::zero(&q(), 2)
    }

    #[test]
    fn scalar_matrix_determinant() {
        let m = vec![vec![t(0, 1), zero()], vec![zero(), t(0, 1)]];
        let d = poly_det(&m).unwrap();
        assert_eq!(d, MultiPoly::from_terms(&q(), 2, [(vec![2, 0], q().one())]).unwrap());
    }

    #[test]
    fn sqrt2_regular_representation_determinant() {
        let m = vec![vec![t(0, 1), t(1, 2)], vec![t(1, 1), t(0, 1)]];
        let d = poly_det(&m).unwrap();
        let expected = MultiPoly::from_terms(&q(), 2, [(vec![2, 0], q().one()), (vec![0, 2], q().from_int(-2))]).unwrap();
        assert_eq!(d, expected);
        assert_eq!(d.total_degree(), Some(2));
    }

    #[test]
    fn split_determinant() {
        let m = vec![vec![t(0, 1), zero()], vec![zero(), t(1, 1)]];
        let d = poly_det(&m).unwrap();
        assert_eq!(d, MultiPoly::from_terms(&q(), 2, [(vec![1, 1], q().one())]).unwrap());
    }

    #[test]
    fn inconsistent_variable_counts_are_rejected() {
        let m = vec![vec![t(0, 1), MultiPoly::zero(&q(), 3)], vec![zero(), t(1, 1)]];
        assert!(poly_det(&m).is_err());
    }
}
