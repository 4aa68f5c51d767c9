//! Single-qubit decoherence channels in Kraus form — phase damping, phase
//! flip, bit flip — applied to Bob's side of a two-qubit state, plus the
//! closed-form Bloch parameters of the noisy marginals.

use std::fmt;
use std::str::FromStr;

use crate::density::{BlochXParams, DensityMatrix};
use crate::error::{Error, Result};
use crate::hawking::{reduced_state, HawkingFrame, Sector};
use crate::matrix::{pauli_x, pauli_z, CMat};

/// The three decoherence models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelKind {
    PhaseDamping,
    PhaseFlip,
    BitFlip,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 3] = [
        ChannelKind::PhaseDamping,
        ChannelKind::PhaseFlip,
        ChannelKind::BitFlip,
    ];
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChannelKind::PhaseDamping => "pd",
            ChannelKind::PhaseFlip => "pf",
            ChannelKind::BitFlip => "bf",
        };
        f.write_str(s)
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pd" => Ok(ChannelKind::PhaseDamping),
            "pf" => Ok(ChannelKind::PhaseFlip),
            "bf" => Ok(ChannelKind::BitFlip),
            other => Err(Error::BadParam(format!(
                "unknown channel '{other}' (expected pd, pf or bf)"
            ))),
        }
    }
}

/// A concrete channel: its kind, noise strength, and 2x2 Kraus operators
/// satisfying the completeness relation Σ E†E = I.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    kind: ChannelKind,
    k: f64,
    operators: Vec<CMat>,
}

impl KrausChannel {
    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn operators(&self) -> &[CMat] {
        &self.operators
    }

    /// Largest entrywise deviation of Σ E†E from the identity.
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = CMat::zeros(2, 2);
        for e in &self.operators {
            sum = sum.add(&e.adjoint().mul(e));
        }
        sum.max_abs_diff(&CMat::identity(2))
    }
}

/// Build a channel of the given kind and strength `k ∈ [0, 1]`.
///
/// Kraus operators:
/// - phase damping: `E₁ = diag(1, √(1−k))`, `E₂ = diag(0, √k)`
/// - phase flip:    `E₁ = √(1−k) I`, `E₂ = √k σ₃`
/// - bit flip:      `E₁ = √(1−k) I`, `E₂ = √k σ₁`
pub fn make_channel(kind: ChannelKind, k: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::BadParam(format!(
            "noise strength k must lie in [0, 1], got {k}"
        )));
    }
    let keep = (1.0 - k).sqrt();
    let flip = k.sqrt();
    let operators = match kind {
        ChannelKind::PhaseDamping => vec![
            CMat::from_real_rows(&[&[1.0, 0.0], &[0.0, keep]]),
            CMat::from_real_rows(&[&[0.0, 0.0], &[0.0, flip]]),
        ],
        ChannelKind::PhaseFlip => vec![
            CMat::identity(2).scale(keep),
            pauli_z().scale(flip),
        ],
        ChannelKind::BitFlip => vec![
            CMat::identity(2).scale(keep),
            pauli_x().scale(flip),
        ],
    };
    let ch = KrausChannel { kind, k, operators };
    debug_assert!(ch.completeness_defect() <= 1e-12);
    Ok(ch)
}

/// Apply the channel to Bob's qubit only: `ρ → Σ (I⊗Eₖ) ρ (I⊗Eₖ)†`.
///
/// One-sided application is what all the closed-form noisy states in this
/// project describe: each carries a single factor of the channel's scaling
/// (√(1−k) or 1−2k), never its square.
pub fn apply_one_sided(rho: &DensityMatrix, ch: &KrausChannel) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::BadParam(format!(
            "channel application expects a two-qubit (4x4) state, got dim {}",
            rho.dim()
        )));
    }
    let id = CMat::identity(2);
    let mut out = CMat::zeros(4, 4);
    for e in ch.operators() {
        let lifted = id.tensor(e);
        out = out.add(&lifted.mul(rho.matrix()).mul(&lifted.adjoint()));
    }
    Ok(DensityMatrix::new_unchecked(out))
}

/// Exploration variant with the same channel acting on both qubits:
/// `ρ → Σ_{j,l} (E_j⊗E_l) ρ (E_j⊗E_l)†`. No closed form in this project
/// corresponds to it; provided to probe the two-sided scenario.
pub fn apply_both_sided(rho: &DensityMatrix, ch: &KrausChannel) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::BadParam(format!(
            "channel application expects a two-qubit (4x4) state, got dim {}",
            rho.dim()
        )));
    }
    let mut out = CMat::zeros(4, 4);
    for ea in ch.operators() {
        for eb in ch.operators() {
            let lifted = ea.tensor(eb);
            out = out.add(&lifted.mul(rho.matrix()).mul(&lifted.adjoint()));
        }
    }
    Ok(DensityMatrix::new_unchecked(out))
}

/// Closed-form Bloch parameters of a horizon marginal after one-sided noise
/// on Bob. Each channel acts on the Bloch vector componentwise:
///
/// - phase damping: `c1, c2 ↦ √(1−k)·`
/// - phase flip:    `c1, c2 ↦ (1−2k)·`
/// - bit flip:      `s, c2, c3 ↦ (1−2k)·`
///
/// Identical (to 1e-12) to pushing the marginal through the Kraus pipeline.
pub fn noisy_reduced_state(
    kind: ChannelKind,
    sector: Sector,
    p: f64,
    frame: &HawkingFrame,
    k: f64,
) -> Result<BlochXParams> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::BadParam(format!(
            "noise strength k must lie in [0, 1], got {k}"
        )));
    }
    let q = reduced_state(sector, p, frame)?;
    let damp = (1.0 - k).sqrt();
    let flip = 1.0 - 2.0 * k;
    Ok(match kind {
        ChannelKind::PhaseDamping => BlochXParams::new(q.r, q.s, damp * q.c1, damp * q.c2, q.c3),
        ChannelKind::PhaseFlip => BlochXParams::new(q.r, q.s, flip * q.c1, flip * q.c2, q.c3),
        ChannelKind::BitFlip => {
            BlochXParams::new(q.r, flip * q.s, q.c1, flip * q.c2, flip * q.c3)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concurrence::concurrence_wootters;
    use crate::density::{bloch_to_density, density_to_bloch, validate_density};
    use crate::matrix::pauli_y;
    use std::f64::consts::FRAC_PI_4;

    /// Σ E σ E† for a single-qubit operator σ.
    fn act_single(ch: &KrausChannel, sigma: &CMat) -> CMat {
        let mut out = CMat::zeros(2, 2);
        for e in ch.operators() {
            out = out.add(&e.mul(sigma).mul(&e.adjoint()));
        }
        out
    }

    #[test]
    fn completeness_holds_for_all_kinds() {
        for kind in ChannelKind::ALL {
            for i in 0..=20 {
                let ch = make_channel(kind, i as f64 / 20.0).unwrap();
                assert!(ch.completeness_defect() <= 1e-12, "{kind} k={}", ch.k());
            }
        }
    }

    #[test]
    fn out_of_range_strength_is_rejected() {
        for k in [-0.01, 1.01, f64::NAN] {
            assert!(make_channel(ChannelKind::PhaseFlip, k).is_err());
        }
    }

    #[test]
    fn zero_strength_is_the_identity_channel() {
        let q = BlochXParams::new(0.1, -0.2, 0.4, 0.3, -0.3);
        let rho = bloch_to_density(&q).unwrap();
        for kind in ChannelKind::ALL {
            let ch = make_channel(kind, 0.0).unwrap();
            let out = apply_one_sided(&rho, &ch).unwrap();
            assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15, "{kind}");
        }
    }

    #[test]
    fn phase_flip_scales_coherences_by_one_minus_two_k() {
        let ch = make_channel(ChannelKind::PhaseFlip, 0.3).unwrap();
        let expect = pauli_x().scale(1.0 - 2.0 * 0.3);
        assert!(act_single(&ch, &pauli_x()).max_abs_diff(&expect) < 1e-15);
        let expect_y = pauli_y().scale(1.0 - 2.0 * 0.3);
        assert!(act_single(&ch, &pauli_y()).max_abs_diff(&expect_y) < 1e-15);
        // σ₃ is untouched
        assert!(act_single(&ch, &pauli_z()).max_abs_diff(&pauli_z()) < 1e-15);
    }

    #[test]
    fn bit_flip_scales_sigma_z_and_leaves_sigma_x() {
        let ch = make_channel(ChannelKind::BitFlip, 0.2).unwrap();
        assert!(act_single(&ch, &pauli_x()).max_abs_diff(&pauli_x()) < 1e-15);
        let expect = pauli_z().scale(1.0 - 2.0 * 0.2);
        assert!(act_single(&ch, &pauli_z()).max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn phase_damping_scales_coherences_by_sqrt() {
        let ch = make_channel(ChannelKind::PhaseDamping, 0.36).unwrap();
        let expect = pauli_x().scale(0.8); // √(1−0.36)
        assert!(act_single(&ch, &pauli_x()).max_abs_diff(&expect) < 1e-15);
        assert!(act_single(&ch, &pauli_z()).max_abs_diff(&pauli_z()) < 1e-15);
    }

    #[test]
    fn half_strength_phase_flip_kills_bell_coherence() {
        let rho = bloch_to_density(&BlochXParams::new(0.0, 0.0, 1.0, 1.0, -1.0)).unwrap();
        let ch = make_channel(ChannelKind::PhaseFlip, 0.5).unwrap();
        let out = apply_one_sided(&rho, &ch).unwrap();
        assert!(out.matrix()[(1, 2)].norm() < 1e-15);
        assert!(out.matrix()[(0, 3)].norm() < 1e-15);
        let c = concurrence_wootters(&out).unwrap();
        assert_eq!(c.value, 0.0);
    }

    #[test]
    fn damping_puts_sqrt_factor_on_accessible_coherence() {
        let frame = HawkingFrame::new(0.4, 0.2).unwrap();
        let (p, k) = (0.9, 0.19);
        let vacuum = reduced_state(Sector::AiBi, p, &frame).unwrap();
        let noisy = noisy_reduced_state(ChannelKind::PhaseDamping, Sector::AiBi, p, &frame, k)
            .unwrap();
        assert!((noisy.c1 - (1.0 - k).sqrt() * vacuum.c1).abs() < 1e-15);
        assert!((noisy.c3 - vacuum.c3).abs() < 1e-15);
    }

    #[test]
    fn zero_noise_reproduces_the_vacuum_marginal() {
        let frame = HawkingFrame::new(0.7, 0.1).unwrap();
        for kind in ChannelKind::ALL {
            let noisy = noisy_reduced_state(kind, Sector::AiiBi, 0.6, &frame, 0.0).unwrap();
            let vacuum = reduced_state(Sector::AiiBi, 0.6, &frame).unwrap();
            assert_eq!(noisy, vacuum);
        }
    }

    #[test]
    fn closed_forms_match_the_kraus_pipeline() {
        let frame = HawkingFrame::new(0.52, 0.13).unwrap();
        for kind in ChannelKind::ALL {
            for sector in Sector::ALL {
                for k in [0.0, 0.17, 0.5, 0.83, 1.0] {
                    let analytic =
                        noisy_reduced_state(kind, sector, 0.8, &frame, k).unwrap();
                    let ch = make_channel(kind, k).unwrap();
                    let vacuum =
                        bloch_to_density(&reduced_state(sector, 0.8, &frame).unwrap()).unwrap();
                    let numeric = apply_one_sided(&vacuum, &ch).unwrap();
                    let diff = bloch_to_density(&analytic)
                        .unwrap()
                        .matrix()
                        .max_abs_diff(numeric.matrix());
                    assert!(diff < 1e-14, "{kind} {sector} k={k}: diff {diff}");
                }
            }
        }
    }

    #[test]
    fn channels_preserve_trace_positivity_and_x_shape() {
        let q = BlochXParams::new(-0.15, 0.25, 0.45, 0.35, -0.5);
        let rho = bloch_to_density(&q).unwrap();
        for kind in ChannelKind::ALL {
            let ch = make_channel(kind, 0.37).unwrap();
            let out = apply_one_sided(&rho, &ch).unwrap();
            let d = validate_density(out.matrix());
            assert!(d.trace_defect < 1e-14);
            assert!(d.min_eigenvalue > -1e-12);
            // still an X state: the Bloch read-back must succeed
            assert!(density_to_bloch(&out).is_ok(), "{kind}");
        }
    }

    #[test]
    fn both_sided_variant_squares_the_damping() {
        let frame = HawkingFrame::new(FRAC_PI_4, FRAC_PI_4).unwrap();
        let vacuum = reduced_state(Sector::AiBi, 1.0, &frame).unwrap();
        let rho = bloch_to_density(&vacuum).unwrap();
        let ch = make_channel(ChannelKind::PhaseDamping, 0.5).unwrap();
        let out = apply_both_sided(&rho, &ch).unwrap();
        let q = density_to_bloch(&out).unwrap();
        // each side contributes √(1−k): c1 = (1−k)·(vacuum c1)
        assert!((q.c1 - 0.5 * vacuum.c1).abs() < 1e-14);
        let d = validate_density(out.matrix());
        assert!(d.trace_defect < 1e-14);
    }
}
