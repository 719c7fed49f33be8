//! One line per criterion. The library suite runs each check; the
//! independent values below are computed here from closed formulas and
//! compared against what the library reports.

use std::io::Write;

use norma::algebra::FiniteAlgebra;
use norma::gamma::GammaSpace;
use norma::norm::norm_of_free;
use norma::scalars::{Scalar, ScalarDomain};
use norma::segre::perm_matrix;
use norma::suite::{criteria, run, SuiteConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn binomial(n: usize, k: usize) -> usize {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

/// Norm of `a + b x` in `F[x]/(x^2 - c)`: `a^2 - c b^2`.
fn quadratic_norm(r: &[Scalar], c: &Scalar) -> Scalar {
    &(&r[0] * &r[0]) - &(c * &(&r[1] * &r[1]))
}

/// Sign of the basis permutation of `F^r ⊗ F^r` swapping the factors.
fn swap_sign(r: usize) -> i64 {
    let image = |k: usize| (k % r) * r + k / r;
    let n = r * r;
    let inversions = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| image(a) > image(b)).count();
    if inversions % 2 == 0 { 1 } else { -1 }
}

fn independent(id: usize) -> Result<(), String> {
    match id {
        1 => {
            let q = ScalarDomain::Rationals;
            let ring = FiniteAlgebra::quadratic(&q, q.from_int(-1)).map_err(|e| e.to_string())?;
            for n in 1..=3 {
                // Γ^2 of rank 2n modulo relations of rank C(2n+1, 2) - n^2
                let nm = norm_of_free(&ring, n).map_err(|e| e.to_string())?;
                if nm.ambient().dim() != binomial(2 * n + 1, 2) || nm.dim() != n * n {
                    return Err(format!("n = {n}: ambient {} and quotient {}", nm.ambient().dim(), nm.dim()));
                }
            }
            Ok(())
        }
        2 => {
            let q = ScalarDomain::Rationals;
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            for c in [2, -1] {
                let ring = FiniteAlgebra::quadratic(&q, q.from_int(c)).map_err(|e| e.to_string())?;
                for _ in 0..100 {
                    let r = ring.random_element(&mut rng);
                    if ring.norm(&r) != quadratic_norm(&r, &q.from_int(c)) {
                        return Err(format!("norm in Q[x]/(x^2 - {c}) disagrees with a^2 - c b^2"));
                    }
                }
            }
            Ok(())
        }
        9 => {
            for dom in [ScalarDomain::Rationals, ScalarDomain::prime_field(3).unwrap()] {
                for r in [2, 4] {
                    let det = perm_matrix(&dom, &[1, 0], r).unwrap().det().unwrap();
                    if det != dom.from_int(swap_sign(r)) {
                        return Err(format!("r = {r} over {dom}: det {det}"));
                    }
                }
            }
            Ok(())
        }
        13 => {
            for dom in [ScalarDomain::Rationals, ScalarDomain::prime_field(2).unwrap(), ScalarDomain::prime_field(3).unwrap()] {
                for (n, d) in [(2, 2), (3, 2), (2, 3)] {
                    if GammaSpace::new(&dom, n, d).dim() != binomial(n + d - 1, d) {
                        return Err(format!("dim Gamma^{d} of rank {n} over {dom}"));
                    }
                }
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

#[test]
fn acceptance() {
    let config = SuiteConfig::default();
    let mut failed = Vec::new();
    for (id, _) in criteria() {
        let outcome = run(id, &config).expect("known criterion");
        let oracle = independent(id);
        let passed = outcome.passed && oracle.is_ok();
        let detail = match &oracle {
            Ok(()) => outcome.detail.clone(),
            Err(e) => format!("{}; independent check: {e}", outcome.detail),
        };
        let line = format!(
            "criterion {id:>2} [{}] {}: {detail} ({} ms)\n",
            if passed { "PASS" } else { "FAIL" },
            outcome.name,
            outcome.millis
        );
        std::io::stderr().write_all(line.as_bytes()).unwrap();
        if !passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
