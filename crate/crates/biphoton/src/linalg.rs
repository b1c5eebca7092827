//! Small dense complex linear algebra for 2x2/3x3/4x4 density-matrix work.
//!
//! Nothing here is tuned for large dimensions; the state space of the crate
//! is two polarization qubits, so a cyclic Jacobi eigensolver and a pivoted
//! LU are all that is needed.

use num_complex::Complex64;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    n: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Build from row slices; panics if the rows are not square.
    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "row {i} has wrong length");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    /// Build from real row slices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "row {i} has wrong length");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = Complex64::new(*v, 0.0);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(i, j)] = self[(j, i)];
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = v.conj();
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= s;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v += w;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v -= w;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let n = self.n * other.n;
        let mut out = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..other.n {
                    for l in 0..other.n {
                        out[(i * other.n + k, j * other.n + l)] = self[(i, j)] * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        for i in 0..self.n {
            for j in i..self.n {
                if (self[(i, j)] - self[(j, i)].conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Eigenvalues of a Hermitian matrix, ascending. Panics if not square.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        self.hermitian_eigen().0
    }

    /// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations. Returns (eigenvalues ascending, matrix of eigenvector
    /// columns in the same order). The input is assumed Hermitian; only the
    /// upper triangle drives the rotations.
    pub fn hermitian_eigen(&self) -> (Vec<f64>, CMat) {
        let n = self.n;
        let mut a = self.clone();
        let mut v = CMat::identity(n);
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        let tol = 1e-15 * scale;

        for _sweep in 0..60 {
            let mut off = 0.0_f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(a[(p, q)].norm());
                }
            }
            if off <= tol {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    let beta = apq.norm();
                    if beta <= tol * 1e-2 {
                        continue;
                    }
                    let phase = apq / beta; // e^{i phi}
                    let alpha = a[(p, p)].re;
                    let gamma = a[(q, q)].re;
                    let tau = (gamma - alpha) / (2.0 * beta);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    // G[p][p]=c, G[p][q]=s, G[q][p]=-s conj(phase), G[q][q]=c conj(phase);
                    // update A <- G^dagger A G and V <- V G.
                    let gpp = Complex64::new(c, 0.0);
                    let gpq = Complex64::new(s, 0.0);
                    let gqp = -s * phase.conj();
                    let gqq = c * phase.conj();

                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * gpp + akq * gqp;
                        a[(k, q)] = akp * gpq + akq * gqq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
                        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
                    }
                    // Clean the pivot and enforce real diagonal.
                    a[(p, q)] = Complex64::ZERO;
                    a[(q, p)] = Complex64::ZERO;
                    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * gpp + vkq * gqp;
                        v[(k, q)] = vkp * gpq + vkq * gqq;
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
        let vals: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
        let mut vecs = CMat::zeros(n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for k in 0..n {
                vecs[(k, new_col)] = v[(k, old_col)];
            }
        }
        (vals, vecs)
    }

    /// Principal square root of a positive-semidefinite Hermitian matrix.
    /// Eigenvalues below `clamp` are treated as zero.
    pub fn sqrt_psd(&self, clamp: f64) -> CMat {
        let (vals, vecs) = self.hermitian_eigen();
        let n = self.n;
        let mut out = CMat::zeros(n);
        for (k, &lam) in vals.iter().enumerate() {
            let root = if lam > clamp { lam.sqrt() } else { 0.0 };
            if root == 0.0 {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += vecs[(i, k)] * vecs[(j, k)].conj() * root;
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Pauli matrices in the (H, V) basis, sigma_z = |H><H| - |V><V|.
pub fn pauli(k: usize) -> CMat {
    let z = Complex64::ZERO;
    let one = Complex64::ONE;
    let i = Complex64::I;
    match k {
        0 => CMat::from_rows(&[&[one, z], &[z, one]]),
        1 => CMat::from_rows(&[&[z, one], &[one, z]]),
        2 => CMat::from_rows(&[&[z, -i], &[i, z]]),
        3 => CMat::from_rows(&[&[one, z], &[z, -one]]),
        _ => panic!("pauli index out of range"),
    }
}

/// Solve the real square system `a x = b` by LU with partial pivoting.
/// `a` is row-major n x n. Returns None if the matrix is singular to
/// working precision.
pub fn lu_solve(a: &[f64], b: &[f64], n: usize) -> Option<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();

    for col in 0..n {
        let mut pivot = col;
        let mut best = m[perm[col] * n + col].abs();
        for row in (col + 1)..n {
            let v = m[perm[row] * n + col].abs();
            if v > best {
                best = v;
                pivot = row;
            }
        }
        if best < 1e-12 {
            return None;
        }
        perm.swap(col, pivot);
        let prow = perm[col];
        let pval = m[prow * n + col];
        for row in (col + 1)..n {
            let r = perm[row];
            let factor = m[r * n + col] / pval;
            m[r * n + col] = 0.0;
            if factor != 0.0 {
                for k in (col + 1)..n {
                    m[r * n + k] -= factor * m[prow * n + k];
                }
                x[r] -= factor * x[prow];
            }
        }
    }

    let mut out = vec![0.0; n];
    for col in (0..n).rev() {
        let r = perm[col];
        let mut acc = x[r];
        for k in (col + 1)..n {
            acc -= m[r * n + k] * out[k];
        }
        out[col] = acc / m[r * n + col];
    }
    Some(out)
}

/// Numerical rank of a real m x n matrix by Gaussian elimination with
/// partial pivoting, relative tolerance `rel_tol` against the largest pivot.
pub fn matrix_rank(a: &[f64], m: usize, n: usize, rel_tol: f64) -> usize {
    assert_eq!(a.len(), m * n);
    let mut w = a.to_vec();
    let mut rank = 0;
    let mut row = 0;
    let scale = w.iter().fold(0.0_f64, |acc, &v| acc.max(v.abs()));
    if scale == 0.0 {
        return 0;
    }
    for col in 0..n {
        if row >= m {
            break;
        }
        let mut pivot = row;
        let mut best = w[row * n + col].abs();
        for r in (row + 1)..m {
            let v = w[r * n + col].abs();
            if v > best {
                best = v;
                pivot = r;
            }
        }
        if best <= rel_tol * scale {
            continue;
        }
        if pivot != row {
            for k in 0..n {
                w.swap(row * n + k, pivot * n + k);
            }
        }
        let pval = w[row * n + col];
        for r in (row + 1)..m {
            let factor = w[r * n + col] / pval;
            if factor != 0.0 {
                for k in col..n {
                    w[r * n + k] -= factor * w[row * n + k];
                }
            }
        }
        rank += 1;
        row += 1;
    }
    rank
}
