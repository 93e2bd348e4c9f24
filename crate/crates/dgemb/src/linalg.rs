//! Small dense linear algebra: row-major matrices, vector helpers, and a
//! one-sided Jacobi SVD. Everything here targets matrices of a few hundred
//! rows, which is all the rest of the crate ever needs.

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        debug_assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    norm_sq(a).sqrt()
}

#[inline]
pub fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// Singular value decomposition `A = U diag(sigma) V^T`.
///
/// `u` is rows x k and `v` is cols x k with k = min(rows, cols); singular
/// values are sorted descending. Columns of `u`/`v` for zero singular values
/// are zero vectors.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: Matrix,
    pub sigma: Vec<f64>,
    pub v: Matrix,
}

/// One-sided Jacobi SVD.
///
/// Rotates column pairs of a working copy until all pairs are orthogonal to
/// relative residual 1e-13 (well under the 1e-12 target), then reads off
/// singular values as column norms. Cost is O(rows * cols^2) per sweep, which
/// is fine for the n <= ~500 matrices this crate sees.
pub fn svd(a: &Matrix) -> Svd {
    if a.rows < a.cols {
        // Work on the transpose so the rotated side is the short one.
        let t = svd(&a.transpose());
        return Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        };
    }
    let m = a.rows;
    let n = a.cols;
    // Column-major working copy of A and of V (accumulated rotations).
    let mut b: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..m).map(|i| a.get(i, j)).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let tol = 1e-13;
    let max_sweeps = 64;
    for _ in 0..max_sweeps {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = norm_sq(&b[p]);
                let beta = norm_sq(&b[q]);
                let gamma = dot(&b[p], &b[q]);
                if alpha * beta == 0.0 {
                    continue;
                }
                let rel = gamma.abs() / (alpha * beta).sqrt();
                off = off.max(rel);
                if rel <= tol {
                    continue;
                }
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let bp = b[p][i];
                    let bq = b[q][i];
                    b[p][i] = c * bp - s * bq;
                    b[q][i] = s * bp + c * bq;
                }
                for i in 0..n {
                    let vp = v[p][i];
                    let vq = v[q][i];
                    v[p][i] = c * vp - s * vq;
                    v[q][i] = s * vp + c * vq;
                }
            }
        }
        if off <= tol {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = b.iter().map(|col| norm(col)).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());

    let mut u = Matrix::zeros(m, n);
    let mut vm = Matrix::zeros(n, n);
    let mut sigma = vec![0.0; n];
    for (k, &j) in order.iter().enumerate() {
        sigma[k] = norms[j];
        if norms[j] > 0.0 {
            for i in 0..m {
                u.set(i, k, b[j][i] / norms[j]);
            }
        }
        for i in 0..n {
            vm.set(i, k, v[j][i]);
        }
    }
    Svd { u, sigma, v: vm }
}

/// Numerical rank: singular values below `1e-9 * max(1, sigma1)` count as zero.
pub fn numerical_rank(sigma: &[f64]) -> usize {
    let s1 = sigma.first().copied().unwrap_or(0.0);
    let cutoff = 1e-9 * s1.max(1.0);
    sigma.iter().filter(|&&s| s > cutoff).count()
}

/// Random rotation matrix (uniform via Gram-Schmidt of a Gaussian matrix).
/// Used by tests to check orthogonal invariance.
pub fn random_rotation(dim: usize, rng: &mut crate::rng::Rng) -> Matrix {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<f64> = (0..dim).map(|_| rng.next_gaussian()).collect();
        for c in &cols {
            let d = dot(&v, c);
            for i in 0..dim {
                v[i] -= d * c[i];
            }
        }
        let n = norm(&v);
        if n > 1e-9 {
            cols.push(v.into_iter().map(|x| x / n).collect());
        }
    }
    let mut q = Matrix::zeros(dim, dim);
    for (j, c) in cols.iter().enumerate() {
        for i in 0..dim {
            q.set(i, j, c[i]);
        }
    }
    q
}

/// Apply a rotation to a family of row vectors: returns `rows * Q^T`-style
/// rotated copies (each vector v maps to Q v).
pub fn rotate_vectors(q: &Matrix, vectors: &[Vec<f64>]) -> Vec<Vec<f64>> {
    vectors
        .iter()
        .map(|v| {
            (0..q.rows)
                .map(|i| (0..q.cols).map(|j| q.get(i, j) * v[j]).sum())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(s: &Svd, rows: usize, cols: usize) -> Matrix {
        let mut a = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let mut acc = 0.0;
                for k in 0..s.sigma.len() {
                    acc += s.u.get(i, k) * s.sigma[k] * s.v.get(j, k);
                }
                a.set(i, j, acc);
            }
        }
        a
    }

    #[test]
    fn svd_reconstructs_small_matrices() {
        let mut rng = crate::rng::Rng::new(99);
        for trial in 0..20 {
            let n = 2 + (trial % 7);
            let m = Matrix::from_rows(
                (0..n)
                    .map(|_| (0..n).map(|_| rng.next_gaussian()).collect())
                    .collect(),
            );
            let s = svd(&m);
            let r = reconstruct(&s, n, n);
            for i in 0..n {
                for j in 0..n {
                    assert!(
                        (m.get(i, j) - r.get(i, j)).abs() < 1e-10,
                        "entry ({i},{j}) off by {}",
                        (m.get(i, j) - r.get(i, j)).abs()
                    );
                }
            }
            // Sorted descending.
            for w in s.sigma.windows(2) {
                assert!(w[0] >= w[1] - 1e-12);
            }
        }
    }

    #[test]
    fn svd_of_all_ones() {
        let m = Matrix::from_rows(vec![vec![1.0; 3]; 3]);
        let s = svd(&m);
        assert!((s.sigma[0] - 3.0).abs() < 1e-10);
        assert!(s.sigma[1].abs() < 1e-10);
        assert_eq!(numerical_rank(&s.sigma), 1);
    }

    #[test]
    fn svd_of_permutation_is_orthonormal() {
        let m = Matrix::from_rows(vec![
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
        ]);
        let s = svd(&m);
        for sv in &s.sigma {
            assert!((sv - 1.0).abs() < 1e-12);
        }
        assert_eq!(numerical_rank(&s.sigma), 3);
    }

    #[test]
    fn svd_rectangular() {
        let m = Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 2.0], vec![1.0, 1.0]]);
        let s = svd(&m);
        let r = reconstruct(&s, 3, 2);
        for i in 0..3 {
            for j in 0..2 {
                assert!((m.get(i, j) - r.get(i, j)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rotation_preserves_norms_and_dots() {
        let mut rng = crate::rng::Rng::new(5);
        let q = random_rotation(4, &mut rng);
        let vs = vec![vec![1.0, 2.0, -1.0, 0.5], vec![0.0, 1.0, 3.0, -2.0]];
        let rs = rotate_vectors(&q, &vs);
        assert!((norm(&vs[0]) - norm(&rs[0])).abs() < 1e-10);
        assert!((dot(&vs[0], &vs[1]) - dot(&rs[0], &rs[1])).abs() < 1e-10);
    }
}
