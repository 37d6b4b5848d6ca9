//! Lanczos with full reorthogonalization plus a QL solver for the
//! tridiagonal projection. Double precision throughout; square roots go
//! through `libm` so the crate stays `no_std`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Eigen-decomposition of a symmetric tridiagonal matrix by the implicit
/// QL method. `d` holds the diagonal, `e[i]` the entry between `i` and `i+1`
/// (`e.len() == d.len()`, last entry ignored). Returns eigenvalues in
/// ascending order and the matching eigenvectors as columns `z[row][col]`.
pub fn tql2(d: &[f64], e: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = d.len();
    let mut d = d.to_vec();
    let mut e: Vec<f64> = e
        .iter()
        .copied()
        .chain(core::iter::once(0.0))
        .take(n)
        .collect();
    let mut z: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect())
        .collect();
    if n == 0 {
        return Ok((d, z));
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m == n {
            m = n - 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 * n.max(1) {
                    return Err(Error::NoConvergence(iter));
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = libm::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = libm::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in z.iter_mut() {
                        h = row[i + 1];
                        row[i + 1] = s * row[i] + c * h;
                        row[i] = c * row[i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    // sort ascending with vectors
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let vals = idx.iter().map(|&i| d[i]).collect();
    let vecs = z
        .iter()
        .map(|row| idx.iter().map(|&i| row[i]).collect())
        .collect();
    Ok((vals, vecs))
}

/// Index-keyed SplitMix64 finalizer, used as a reproducible perturbation.
fn mix(seed: u64, i: u64) -> u64 {
    let mut z = seed.wrapping_add(i.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

/// Result of a smallest-eigenvalue computation.
#[derive(Clone, Debug, PartialEq)]
pub struct LanczosResult {
    pub value: f64,
    /// Explicit `‖Av − θv‖` for the unit Ritz vector `v`.
    pub residual: f64,
    pub iterations: usize,
}

impl LanczosResult {
    /// An eigenvalue of `A` is guaranteed to lie in this interval.
    pub fn bracket(&self) -> (f64, f64) {
        (self.value - self.residual, self.value + self.residual)
    }
}

/// Smallest eigenvalue of the 0/1 symmetric matrix given by adjacency lists.
/// `tol` bounds the explicit residual; `max_iter` caps the Krylov dimension.
pub fn smallest_eigenvalue(
    adj: &[Vec<usize>],
    seed: u64,
    tol: f64,
    max_iter: usize,
) -> Result<LanczosResult> {
    let n = adj.len();
    let matvec = |x: &[f64], y: &mut [f64]| {
        for (yi, row) in y.iter_mut().zip(adj) {
            *yi = row.iter().map(|&j| x[j]).sum();
        }
    };
    let mut q0: Vec<f64> = (0..n)
        .map(|i| 1.0 + ((mix(seed, i as u64) >> 11) as f64 / (1u64 << 53) as f64 - 0.5))
        .collect();
    let nq = norm(&q0);
    q0.iter_mut().for_each(|x| *x /= nq);

    let mut basis: Vec<Vec<f64>> = vec![q0];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![0.0; n];
    let limit = max_iter.min(n).max(1);
    let mut iterations = 0;
    loop {
        let j = alpha.len();
        matvec(&basis[j], &mut w);
        iterations += 1;
        let a = dot(&w, &basis[j]);
        alpha.push(a);
        // full reorthogonalization, twice for stability
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&w, q);
                w.iter_mut().zip(q).for_each(|(wi, qi)| *wi -= c * qi);
            }
        }
        let b = norm(&w);
        let exhausted = b <= 1e-10 * (1.0 + a.abs()) || alpha.len() >= limit;
        if exhausted || alpha.len().is_multiple_of(8) {
            let (vals, vecs) = tql2(&alpha, &beta)?;
            let theta = vals[0];
            let estimate = b * vecs[alpha.len() - 1][0].abs();
            if exhausted || estimate <= tol * 0.1 {
                // explicit Ritz vector and residual
                let mut v = vec![0.0; n];
                for (k, q) in basis.iter().enumerate() {
                    let c = vecs[k][0];
                    v.iter_mut().zip(q).for_each(|(vi, qi)| *vi += c * qi);
                }
                let nv = norm(&v);
                v.iter_mut().for_each(|x| *x /= nv);
                let mut av = vec![0.0; n];
                matvec(&v, &mut av);
                let residual = norm(
                    &av.iter()
                        .zip(&v)
                        .map(|(x, y)| x - theta * y)
                        .collect::<Vec<_>>(),
                );
                if residual <= tol || exhausted {
                    if residual > tol {
                        return Err(Error::NoConvergence(iterations));
                    }
                    return Ok(LanczosResult {
                        value: theta,
                        residual,
                        iterations,
                    });
                }
            }
        }
        beta.push(b);
        basis.push(w.iter().map(|x| x / b).collect());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tql2_diagonalizes_path() {
        // path on 4 vertices: eigenvalues 2cos(kπ/5)
        let (vals, vecs) = tql2(&[0.0; 4], &[1.0, 1.0, 1.0]).unwrap();
        for (k, v) in vals.iter().enumerate() {
            let expect = 2.0 * libm::cos((4 - k) as f64 * core::f64::consts::PI / 5.0);
            assert!((v - expect).abs() < 1e-12, "{v} vs {expect}");
        }
        // columns are orthonormal
        for a in 0..4 {
            for b in 0..4 {
                let d: f64 = (0..4).map(|r| vecs[r][a] * vecs[r][b]).sum();
                assert!((d - (a == b) as u8 as f64).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cycle_smallest() {
        let n = 10;
        let adj: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
        let r = smallest_eigenvalue(&adj, 7, 1e-9, 100).unwrap();
        assert!((r.value + 2.0).abs() < 1e-9);
    }
}
