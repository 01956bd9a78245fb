//! Moments of zero-mean multivariate Gaussians by Isserlis' theorem.

use nalgebra::DMatrix;

/// `E[β_{i_1} β_{i_2} ... β_{i_k}]` for `β ~ N(0, cov)`.
///
/// Sums over all perfect matchings of the index list; odd orders vanish.
/// Intended for short index lists (up to order 8 or so).
pub fn gaussian_moment(cov: &DMatrix<f64>, indices: &[usize]) -> f64 {
    if indices.len() % 2 == 1 {
        return 0.0;
    }
    let mut scratch = indices.to_vec();
    matchings(cov, &mut scratch)
}

fn matchings(cov: &DMatrix<f64>, idx: &mut [usize]) -> f64 {
    match idx.len() {
        0 => 1.0,
        2 => cov[(idx[0], idx[1])],
        n => {
            let first = idx[0];
            let mut total = 0.0;
            for partner in 1..n {
                let c = cov[(first, idx[partner])];
                if c == 0.0 {
                    continue;
                }
                // move the partner next to `first`, recurse on the remainder, restore
                idx.swap(1, partner);
                total += c * matchings(cov, &mut idx[2..]);
                idx.swap(1, partner);
            }
            total
        }
    }
}

/// `E[β_q^k · βᵗ M β]` for a single coordinate `q`.
pub fn power_times_quadratic(cov: &DMatrix<f64>, m: &DMatrix<f64>, q: usize, k: usize) -> f64 {
    let n = cov.nrows();
    let mut idx = vec![q; k + 2];
    let mut total = 0.0;
    for a in 0..n {
        for b in 0..n {
            let mab = m[(a, b)];
            if mab == 0.0 {
                continue;
            }
            idx[k] = a;
            idx[k + 1] = b;
            total += mab * gaussian_moment(cov, &idx);
        }
    }
    total
}

/// `E[(βᵗ M β)^2]`.
pub fn quadratic_squared(cov: &DMatrix<f64>, m: &DMatrix<f64>) -> f64 {
    let n = cov.nrows();
    let mut total = 0.0;
    for a in 0..n {
        for b in 0..n {
            let mab = m[(a, b)];
            if mab == 0.0 {
                continue;
            }
            for c in 0..n {
                for d in 0..n {
                    let mcd = m[(c, d)];
                    if mcd == 0.0 {
                        continue;
                    }
                    total += mab * mcd * gaussian_moment(cov, &[a, b, c, d]);
                }
            }
        }
    }
    total
}
