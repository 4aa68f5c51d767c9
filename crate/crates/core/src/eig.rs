//! Eigendecomposition of small Hermitian complex matrices by cyclic Jacobi
//! rotations.
//!
//! One solver serves the whole crate: density-matrix validation (minimum
//! eigenvalue), the PSD matrix square root, and the spin-flip spectrum. All
//! inputs are 2x2, 4x4 or 16x16, where Jacobi is simple, accurate and easily
//! fast enough; no external linear-algebra backend is worth the dependency.

use crate::matrix::{C64, CMat};

/// Convergence target: Frobenius norm of the off-diagonal part. Matrices here
/// have unit trace (norm ~1), so an absolute threshold is appropriate.
const OFF_DIAGONAL_TOL: f64 = 1e-13;

/// Cyclic Jacobi converges quadratically once the off-diagonal mass is small;
/// 16x16 Hermitian inputs settle in < 10 sweeps. The cap only guards against
/// a caller sneaking NaN past validation.
const MAX_SWEEPS: usize = 60;

/// Eigenvalues and eigenvectors of a Hermitian matrix.
/// `values[j]` pairs with column `j` of `vectors`; no ordering is imposed.
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

/// Full eigendecomposition `A = V diag(values) V^dagger`.
///
/// # Panics
/// If `A` is not square, or the sweep fails to converge — which cannot happen
/// for finite Hermitian input (the off-diagonal norm strictly decreases).
pub fn eigh(a: &CMat) -> Eigh {
    jacobi(a, true)
}

/// Eigenvalues only; same contract as [`eigh`], skips accumulating vectors.
pub fn eigvalsh(a: &CMat) -> Vec<f64> {
    jacobi(a, false).values
}

fn jacobi(input: &CMat, want_vectors: bool) -> Eigh {
    assert!(input.is_square(), "eigh requires a square matrix");
    let n = input.rows();
    // Work on the Hermitian part so that callers' round-off asymmetry
    // (~1e-16 from products like sqrt(rho)*rho_tilde*sqrt(rho)) cannot leak
    // into the rotations.
    let mut a = input.hermitian_part();
    let mut v = if want_vectors {
        CMat::identity(n)
    } else {
        CMat::zeros(0, 0)
    };

    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= OFF_DIAGONAL_TOL {
            let values = (0..n).map(|i| a[(i, i)].re).collect();
            return Eigh { values, vectors: v };
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q, want_vectors);
            }
        }
    }
    panic!(
        "Jacobi sweep did not converge (off-diagonal norm {:.3e}); input was not a finite Hermitian matrix",
        off_diagonal_norm(&a)
    );
}

fn off_diagonal_norm(a: &CMat) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Annihilate `a[p][q]` with the unitary that (i) rotates the phase of
/// column q so the pivot becomes real, then (ii) applies the classic real
/// Jacobi rotation. Only rows/columns p and q change.
fn rotate(a: &mut CMat, v: &mut CMat, p: usize, q: usize, want_vectors: bool) {
    let apq = a[(p, q)];
    let m = apq.norm();
    // Skip pivots that are already negligible relative to the target; they
    // would only inject rounding noise.
    if m < OFF_DIAGONAL_TOL * 1e-3 {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = apq / m; // e^{i phi}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    // tan(2 theta) = 2m / (app - aqq), solved for t = tan(theta) via the
    // numerically stable small root of t^2 + 2 tau t - 1 = 0.
    let tau = (aqq - app) / (2.0 * m);
    let t = {
        let s = if tau >= 0.0 { 1.0 } else { -1.0 };
        s / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Column update: B = A * J with J[p][p]=c, J[q][p]=-s e^{-i phi},
    // J[p][q]=s, J[q][q]=c e^{-i phi}.
    let n = a.rows();
    let phase_conj = phase.conj();
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = c * aip - s * phase_conj * aiq;
        a[(i, q)] = s * aip + c * phase_conj * aiq;
    }
    // Row update: A' = J^dagger * B.
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = c * apj - s * phase * aqj;
        a[(q, j)] = s * apj + c * phase * aqj;
    }
    // The pivot is now zero up to rounding; write the exact zero and keep the
    // diagonal exactly real so later pivots see clean values.
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    if want_vectors {
        for i in 0..v.rows() {
            let vip = v[(i, p)];
            let viq = v[(i, q)];
            v[(i, p)] = c * vip - s * phase_conj * viq;
            v[(i, q)] = s * vip + c * phase_conj * viq;
        }
    }
}

/// Square root of a positive semidefinite Hermitian matrix via its
/// eigendecomposition. Eigenvalues in the validation band `(-1e-10, 0)` are
/// clamped to zero; anything more negative is the caller's bug (inputs are
/// validated density matrices).
pub fn sqrtm_psd(a: &CMat) -> CMat {
    let Eigh { values, vectors } = eigh(a);
    let n = a.rows();
    debug_assert!(
        values.iter().all(|&l| l > -1e-9),
        "sqrtm_psd input has a significantly negative eigenvalue"
    );
    // V diag(sqrt(lambda)) V^dagger
    let mut scaled = vectors.clone();
    for j in 0..n {
        let root = values[j].max(0.0).sqrt();
        for i in 0..n {
            scaled[(i, j)] *= root;
        }
    }
    scaled.mul(&vectors.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{pauli_x, pauli_y};

    fn reconstruct(e: &Eigh) -> CMat {
        let n = e.values.len();
        let mut scaled = e.vectors.clone();
        for j in 0..n {
            for i in 0..n {
                scaled[(i, j)] *= e.values[j];
            }
        }
        scaled.mul(&e.vectors.adjoint())
    }

    #[test]
    fn pauli_x_spectrum_is_plus_minus_one() {
        let mut vals = eigvalsh(&pauli_x());
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] + 1.0).abs() < 1e-13);
        assert!((vals[1] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn pauli_y_spectrum_is_plus_minus_one() {
        // Exercises the complex-phase path of the rotation.
        let mut vals = eigvalsh(&pauli_y());
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] + 1.0).abs() < 1e-13);
        assert!((vals[1] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn diagonal_input_is_returned_untouched() {
        let d = CMat::from_real_rows(&[&[0.5, 0.0], &[0.0, -2.5]]);
        let e = eigh(&d);
        assert!(reconstruct(&e).max_abs_diff(&d) < 1e-14);
    }

    #[test]
    fn degenerate_spectrum_converges() {
        let e = eigh(&CMat::identity(4));
        assert!(e.values.iter().all(|&l| (l - 1.0).abs() < 1e-13));
    }

    #[test]
    fn random_hermitian_16_reconstructs_and_is_unitary() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let n = 16;
        let mut h = CMat::zeros(n, n);
        for i in 0..n {
            h[(i, i)] = C64::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in (i + 1)..n {
                let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        let e = eigh(&h);
        assert!(reconstruct(&e).max_abs_diff(&h) < 1e-12, "A != V L V^dagger");
        let vv = e.vectors.adjoint().mul(&e.vectors);
        assert!(vv.max_abs_diff(&CMat::identity(n)) < 1e-13, "V not unitary");
    }

    #[test]
    fn sqrtm_squares_back() {
        // A PSD matrix with known structure: projector + small mixture.
        let a = CMat::from_real_rows(&[
            &[0.5, 0.4, 0.0, 0.0],
            &[0.4, 0.5, 0.0, 0.0],
            &[0.0, 0.0, 0.7, 0.1],
            &[0.0, 0.0, 0.1, 0.3],
        ]);
        let r = sqrtm_psd(&a);
        assert!(r.mul(&r).max_abs_diff(&a) < 1e-12);
        assert!(r.hermiticity_defect() < 1e-13);
    }
}
