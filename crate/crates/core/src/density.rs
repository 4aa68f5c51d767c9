//! Density matrices, the X-state Bloch parameterization, tensor products and
//! partial traces over the fixed four-mode ordering.

use crate::eig::eigvalsh;
use crate::error::{Error, Result};
use crate::matrix::{C64, CMat};

/// Entrywise Hermiticity tolerance for accepting a density matrix. Inputs are
/// built from exact formulas, so this only absorbs accumulated f64 rounding.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Tolerance on |trace - 1|.
pub const TRACE_TOL: f64 = 1e-12;

/// Positivity floor: the minimum eigenvalue may sit this far below zero.
/// Wider than the other tolerances because 16-dimensional constructions
/// route round-off through an eigensolver. Eigenvalues inside (-PSD_TOL, 0)
/// are clamped to zero wherever they are consumed downstream.
pub const PSD_TOL: f64 = 1e-10;

/// Absolute threshold for detecting the X pattern (and the reality of its
/// anti-diagonal). Every state in this project is exactly X-shaped, so the
/// tolerance only absorbs float noise.
pub const X_PATTERN_TOL: f64 = 1e-12;

/// The four field modes, in the fixed global tensor ordering
/// `A_I ⊗ A_II ⊗ B_I ⊗ B_II` (A = Alice, B = Bob; I = outside the horizon,
/// II = inside). Every index computation in the crate references this order;
/// it is never re-derived per call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QubitLabel {
    AI,
    AII,
    BI,
    BII,
}

impl QubitLabel {
    /// Position in the tensor ordering, 0 = most significant bit of the
    /// 16-dimensional index.
    pub fn position(self) -> usize {
        match self {
            QubitLabel::AI => 0,
            QubitLabel::AII => 1,
            QubitLabel::BI => 2,
            QubitLabel::BII => 3,
        }
    }

    pub fn is_alice(self) -> bool {
        matches!(self, QubitLabel::AI | QubitLabel::AII)
    }
}

/// Validation report produced by [`validate_density`]: how far a matrix is
/// from being a density matrix, without fixing anything.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityDiagnostics {
    /// `max |m[i][j] - conj(m[j][i])|`.
    pub hermiticity_defect: f64,
    /// `|trace - 1|`.
    pub trace_defect: f64,
    /// Minimum eigenvalue of the Hermitian part.
    pub min_eigenvalue: f64,
}

/// Measure the three density-matrix defects of an arbitrary square matrix.
/// The eigenvalue is computed on the Hermitian part, so the report is
/// meaningful even for non-Hermitian input (whose defect is then nonzero).
pub fn validate_density(m: &CMat) -> DensityDiagnostics {
    let hermiticity_defect = m.hermiticity_defect();
    let trace_defect = (m.trace() - C64::new(1.0, 0.0)).norm();
    let min_eigenvalue = eigvalsh(&m.hermitian_part())
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    DensityDiagnostics {
        hermiticity_defect,
        trace_defect,
        min_eigenvalue,
    }
}

/// A validated density matrix of dimension 2, 4 or 16: Hermitian, unit trace,
/// positive semidefinite within the documented tolerances.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: CMat,
}

impl DensityMatrix {
    /// Validate and wrap a raw matrix.
    pub fn new(mat: CMat) -> Result<Self> {
        if !mat.is_square() || ![2, 4, 16].contains(&mat.rows()) {
            return Err(Error::BadParam(format!(
                "density matrix must be square of dimension 2, 4 or 16, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        if !mat.is_finite() {
            return Err(Error::NotFinite);
        }
        let d = validate_density(&mat);
        if d.hermiticity_defect > HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                defect: d.hermiticity_defect,
            });
        }
        if d.trace_defect > TRACE_TOL {
            return Err(Error::NotUnitTrace {
                defect: d.trace_defect,
            });
        }
        if d.min_eigenvalue < -PSD_TOL {
            return Err(Error::NotPositive {
                min_eig: d.min_eigenvalue,
            });
        }
        Ok(DensityMatrix { mat })
    }

    /// Wrap a matrix that is a density matrix by construction (isometric
    /// dilation, Kraus map of a validated state, ...). Hermiticity and trace
    /// are still asserted in debug builds; the eigenvalue check is skipped
    /// because it is the only expensive one.
    pub(crate) fn new_unchecked(mat: CMat) -> Self {
        debug_assert!(mat.hermiticity_defect() <= 1e-11);
        debug_assert!((mat.trace() - C64::new(1.0, 0.0)).norm() <= 1e-11);
        DensityMatrix { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    /// Maximally mixed state I/d.
    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix {
            mat: CMat::identity(dim).scale(1.0 / dim as f64),
        }
    }

    /// Tensor product of two density matrices (again a density matrix).
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix::new_unchecked(self.mat.tensor(&other.mat))
    }
}

/// The five real coefficients of the X-state form used throughout:
///
/// `rho = 1/4 (I⊗I + r σ3⊗I + s I⊗σ3 + c1 σ1⊗σ1 + c2 σ2⊗σ2 + c3 σ3⊗σ3)`
///
/// Plain data; [`bloch_to_density`] validates ranges and positivity when a
/// matrix is actually built.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochXParams {
    pub r: f64,
    pub s: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BlochXParams {
    pub fn new(r: f64, s: f64, c1: f64, c2: f64, c3: f64) -> Self {
        BlochXParams { r, s, c1, c2, c3 }
    }

    /// Diagonal of the X matrix, top-left to bottom-right.
    pub fn diagonal(&self) -> [f64; 4] {
        let BlochXParams { r, s, c3, .. } = *self;
        [
            (1.0 + r + s + c3) / 4.0,
            (1.0 + r - s - c3) / 4.0,
            (1.0 - r + s - c3) / 4.0,
            (1.0 - r - s + c3) / 4.0,
        ]
    }

    /// Outer anti-diagonal entry (positions (0,3)/(3,0)).
    pub fn outer_coherence(&self) -> f64 {
        (self.c1 - self.c2) / 4.0
    }

    /// Inner anti-diagonal entry (positions (1,2)/(2,1)).
    pub fn inner_coherence(&self) -> f64 {
        (self.c1 + self.c2) / 4.0
    }

    /// All fields within [-1, 1] and finite?
    fn fields_in_range(&self) -> bool {
        [self.r, self.s, self.c1, self.c2, self.c3]
            .iter()
            .all(|x| x.is_finite() && x.abs() <= 1.0)
    }

    /// Minimum eigenvalue of the X matrix, from the two 2x2 blocks in closed
    /// form — no matrix needed.
    pub fn min_eigenvalue(&self) -> f64 {
        let [a, b, c, d] = self.diagonal();
        let w = self.outer_coherence();
        let z = self.inner_coherence();
        let outer = (a + d) / 2.0 - (((a - d) / 2.0).powi(2) + w * w).sqrt();
        let inner = (b + c) / 2.0 - (((b - c) / 2.0).powi(2) + z * z).sqrt();
        outer.min(inner)
    }
}

/// Build the 4x4 X-state matrix from its Bloch coefficients.
/// The result is real: diagonal from (r, s, c3), corners (c1-c2)/4, inner
/// anti-diagonal (c1+c2)/4.
pub fn bloch_to_density(q: &BlochXParams) -> Result<DensityMatrix> {
    if !q.fields_in_range() {
        return Err(Error::BadParam(
            "Bloch coefficients must be finite and within [-1, 1]".into(),
        ));
    }
    let min_eig = q.min_eigenvalue();
    if min_eig < -PSD_TOL {
        return Err(Error::NotPositive { min_eig });
    }
    let [a, b, c, d] = q.diagonal();
    let w = q.outer_coherence();
    let z = q.inner_coherence();
    let mat = CMat::from_real_rows(&[
        &[a, 0.0, 0.0, w],
        &[0.0, b, z, 0.0],
        &[0.0, z, c, 0.0],
        &[w, 0.0, 0.0, d],
    ]);
    // Trace is exactly 1 in exact arithmetic and within a few ulps here;
    // hand the matrix over without repeating the eigen check just done.
    Ok(DensityMatrix::new_unchecked(mat))
}

/// Invert [`bloch_to_density`]: recover (r, s, c1, c2, c3) from a 4x4
/// density matrix that has the real, z-aligned X form.
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochXParams> {
    if rho.dim() != 4 {
        return Err(Error::BadParam(format!(
            "expected a 4x4 density matrix, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    let m = rho.matrix();
    // Anything off the diagonal and anti-diagonal must vanish.
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            if i == j || i + j == 3 {
                continue;
            }
            worst = worst.max(m[(i, j)].norm());
        }
    }
    // The Bloch form also requires the anti-diagonal to be real (a complex
    // phase there is an X-state, but not one reachable from five real
    // coefficients).
    worst = worst.max(m[(0, 3)].im.abs());
    worst = worst.max(m[(1, 2)].im.abs());
    if worst > X_PATTERN_TOL {
        return Err(Error::NotXState { magnitude: worst });
    }

    let a = m[(0, 0)].re;
    let b = m[(1, 1)].re;
    let c = m[(2, 2)].re;
    let d = m[(3, 3)].re;
    let w = m[(0, 3)].re;
    let z = m[(1, 2)].re;
    Ok(BlochXParams {
        r: a + b - c - d,
        s: a - b + c - d,
        c1: 2.0 * (z + w),
        c2: 2.0 * (z - w),
        c3: a - b - c + d,
    })
}

/// Partial trace of the four-mode state down to one Alice mode and one Bob
/// mode. The output is ordered (A-mode, B-mode) regardless of the order the
/// pair is supplied in.
pub fn partial_trace(rho: &DensityMatrix, keep: (QubitLabel, QubitLabel)) -> Result<DensityMatrix> {
    if rho.dim() != 16 {
        return Err(Error::BadParam(format!(
            "partial trace expects the 16-dimensional four-mode state, got dim {}",
            rho.dim()
        )));
    }
    let (first, second) = keep;
    let (alice, bob) = match (first.is_alice(), second.is_alice()) {
        (true, false) => (first, second),
        (false, true) => (second, first),
        _ => return Err(Error::BadKeepSet(first, second)),
    };

    // Bit weights of the four positions in the 16-dim index (A_I is the most
    // significant bit).
    let weight = |pos: usize| 8usize >> pos;
    let wa = weight(alice.position());
    let wb = weight(bob.position());
    let traced: Vec<usize> = (0..4)
        .filter(|&p| p != alice.position() && p != bob.position())
        .map(weight)
        .collect();
    let (w1, w2) = (traced[0], traced[1]);

    let m = rho.matrix();
    let mut out = CMat::zeros(4, 4);
    for a_row in 0..2 {
        for b_row in 0..2 {
            for a_col in 0..2 {
                for b_col in 0..2 {
                    let mut sum = C64::new(0.0, 0.0);
                    for x in 0..2 {
                        for y in 0..2 {
                            let row = a_row * wa + b_row * wb + x * w1 + y * w2;
                            let col = a_col * wa + b_col * wb + x * w1 + y * w2;
                            sum += m[(row, col)];
                        }
                    }
                    out[(2 * a_row + b_row, 2 * a_col + b_col)] = sum;
                }
            }
        }
    }
    // Marginals of a valid state are valid, but this is a module boundary:
    // run the full (cheap, 4x4) validation rather than trusting the caller.
    DensityMatrix::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::pauli_z;

    #[test]
    fn zero_params_give_maximally_mixed() {
        let rho = bloch_to_density(&BlochXParams::new(0.0, 0.0, 0.0, 0.0, 0.0)).unwrap();
        let expected = CMat::identity(4).scale(0.25);
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn unit_c1_c2_gives_inner_bell_projector() {
        // (0,0,1,1,-1): the maximally entangled state with support on
        // |01>, |10>; inner block of 1/2 entries, outer block zero.
        let rho = bloch_to_density(&BlochXParams::new(0.0, 0.0, 1.0, 1.0, -1.0)).unwrap();
        let expected = CMat::from_real_rows(&[
            &[0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.5, 0.5, 0.0],
            &[0.0, 0.5, 0.5, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
        ]);
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn half_coefficients_example() {
        // (0,0,0.5,0.5,-0.5): diagonal (.125,.375,.375,.125), inner
        // anti-diagonal 0.25, corners 0.
        let rho = bloch_to_density(&BlochXParams::new(0.0, 0.0, 0.5, 0.5, -0.5)).unwrap();
        let expected = CMat::from_real_rows(&[
            &[0.125, 0.0, 0.0, 0.0],
            &[0.0, 0.375, 0.25, 0.0],
            &[0.0, 0.25, 0.375, 0.0],
            &[0.0, 0.0, 0.0, 0.125],
        ]);
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-15);
        let diag = validate_density(rho.matrix());
        assert!(diag.trace_defect < 1e-15);
        assert!(diag.min_eigenvalue > -1e-15);
    }

    #[test]
    fn non_positive_params_are_rejected() {
        // c3 = +1 with c1 = c2 = 1 drives an eigenvalue negative.
        let err = bloch_to_density(&BlochXParams::new(0.0, 0.0, 1.0, 1.0, 1.0)).unwrap_err();
        assert!(matches!(err, Error::NotPositive { .. }));
    }

    #[test]
    fn out_of_range_params_are_rejected() {
        let err = bloch_to_density(&BlochXParams::new(1.5, 0.0, 0.0, 0.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::BadParam(_)));
    }

    #[test]
    fn bloch_roundtrip_identity() {
        let q = BlochXParams::new(0.1, -0.2, 0.3, 0.15, -0.35);
        let back = density_to_bloch(&bloch_to_density(&q).unwrap()).unwrap();
        for (x, y) in [
            (q.r, back.r),
            (q.s, back.s),
            (q.c1, back.c1),
            (q.c2, back.c2),
            (q.c3, back.c3),
        ] {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn maximally_mixed_maps_to_zero_params() {
        let q = density_to_bloch(&DensityMatrix::maximally_mixed(4)).unwrap();
        assert_eq!(q, BlochXParams::new(0.0, 0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn off_pattern_entry_is_not_an_x_state() {
        // Entry at row 0, col 1 (off the X pattern) of magnitude 0.1.
        let mut m = CMat::identity(4).scale(0.25);
        m[(0, 1)] = C64::new(0.1, 0.0);
        m[(1, 0)] = C64::new(0.1, 0.0);
        let rho = DensityMatrix::new(m).unwrap();
        let err = density_to_bloch(&rho).unwrap_err();
        assert!(matches!(err, Error::NotXState { magnitude } if (magnitude - 0.1).abs() < 1e-15));
    }

    #[test]
    fn validate_reports_maximally_mixed() {
        let d = validate_density(&CMat::identity(4).scale(0.25));
        assert_eq!(d.hermiticity_defect, 0.0);
        assert!(d.trace_defect < 1e-15);
        assert!((d.min_eigenvalue - 0.25).abs() < 1e-13);
    }

    #[test]
    fn validate_reports_bell_projector() {
        let rho = bloch_to_density(&BlochXParams::new(0.0, 0.0, 1.0, 1.0, -1.0)).unwrap();
        let d = validate_density(rho.matrix());
        assert!(d.hermiticity_defect < 1e-15);
        assert!(d.trace_defect < 1e-15);
        assert!(d.min_eigenvalue.abs() < 1e-13);
    }

    #[test]
    fn validate_reports_nonhermitian_without_fixing() {
        let mut m = CMat::identity(2).scale(0.5);
        m[(0, 1)] = C64::new(0.2, 0.0); // no matching (1,0) entry
        let d = validate_density(&m);
        assert!((d.hermiticity_defect - 0.2).abs() < 1e-15);
        // and construction refuses it
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn partial_trace_of_product_state_returns_factors() {
        // rho = rho_AI ⊗ rho_AII ⊗ rho_BI ⊗ rho_BII with distinct factors;
        // keeping (A_I, B_I) must return rho_AI ⊗ rho_BI.
        let f = |p: f64| {
            DensityMatrix::new(CMat::from_real_rows(&[&[p, 0.1], &[0.1, 1.0 - p]])).unwrap()
        };
        let (ai, aii, bi, bii) = (f(0.9), f(0.7), f(0.6), f(0.2));
        let full = ai.tensor(&aii).tensor(&bi).tensor(&bii);
        let kept = partial_trace(&full, (QubitLabel::AI, QubitLabel::BI)).unwrap();
        let expected = ai.tensor(&bi);
        assert!(kept.matrix().max_abs_diff(expected.matrix()) < 1e-14);

        // order of the keep pair does not matter
        let swapped = partial_trace(&full, (QubitLabel::BI, QubitLabel::AI)).unwrap();
        assert!(swapped.matrix().max_abs_diff(expected.matrix()) < 1e-14);

        // and the other marginals select their factors
        let cross = partial_trace(&full, (QubitLabel::AII, QubitLabel::BII)).unwrap();
        assert!(cross.matrix().max_abs_diff(aii.tensor(&bii).matrix()) < 1e-14);
    }

    #[test]
    fn keep_set_must_span_alice_and_bob() {
        let full = DensityMatrix::maximally_mixed(16);
        for bad in [
            (QubitLabel::AI, QubitLabel::AII),
            (QubitLabel::BI, QubitLabel::BII),
            (QubitLabel::AI, QubitLabel::AI),
        ] {
            assert!(matches!(
                partial_trace(&full, bad),
                Err(Error::BadKeepSet(_, _))
            ));
        }
    }

    #[test]
    fn partial_trace_preserves_trace_and_positivity() {
        // A correlated (non-product) valid state: mixture of two products.
        let zz = pauli_z().tensor(&pauli_z()).tensor(&pauli_z()).tensor(&pauli_z());
        let m = CMat::identity(16).add(&zz.scale(0.5)).scale(1.0 / 16.0);
        let rho = DensityMatrix::new(m).unwrap();
        let red = partial_trace(&rho, (QubitLabel::AI, QubitLabel::BII)).unwrap();
        let d = validate_density(red.matrix());
        assert!(d.trace_defect < 1e-13);
        assert!(d.min_eigenvalue > -PSD_TOL);
    }
}
