use num_complex::Complex64;
use std::ops::{Index, IndexMut};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Dense complex matrix, row-major storage.
///
/// Everything in this crate is at most 16x16 (two qubits dilated into four
/// modes), so the implementation favors clarity over blocking or sparsity:
/// plain loops everywhere. Rectangular shapes are supported because the mode
/// dilation is an isometry from C^2 into C^4.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Build a square matrix from real row slices (most states here are real).
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = CMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = C64::new(x, 0.0);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> CMat {
        let mut out = self.clone();
        for z in &mut out.data {
            *z = z.conj();
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (z, w) in out.data.iter_mut().zip(&other.data) {
            *z += w;
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (z, w) in out.data.iter_mut().zip(&other.data) {
            *z -= w;
        }
        out
    }

    pub fn scale(&self, f: f64) -> CMat {
        let mut out = self.clone();
        for z in &mut out.data {
            *z *= f;
        }
        out
    }

    /// Kronecker product: the (i,j) block of the result is `self[i][j] * other`.
    pub fn tensor(&self, other: &CMat) -> CMat {
        let mut out = CMat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let f = self[(i, j)];
                if f == C64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = f * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// `max |m[i][j] - conj(m[j][i])|` over all entries; zero iff Hermitian.
    pub fn hermiticity_defect(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Hermitian part (M + M^dagger)/2.
    pub fn hermitian_part(&self) -> CMat {
        self.add(&self.adjoint()).scale(0.5)
    }

    /// Largest entrywise absolute difference; the distance used by most tests.
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(z, w)| (z - w).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// sigma_1 (bit flip).
pub fn pauli_x() -> CMat {
    CMat::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

/// sigma_2. The only intrinsically complex matrix in the project.
pub fn pauli_y() -> CMat {
    let mut m = CMat::zeros(2, 2);
    m[(0, 1)] = C64::new(0.0, -1.0);
    m[(1, 0)] = C64::new(0.0, 1.0);
    m
}

/// sigma_3 (phase flip).
pub fn pauli_z() -> CMat {
    CMat::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
}
