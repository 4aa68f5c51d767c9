//! Horizon kinematics: the acceleration parameter set by Hawking
//! temperature, the single-mode dilation that splits each observer's qubit
//! into modes inside and outside the horizon, and the closed-form two-mode
//! marginals of the dilated isotropic state.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use crate::density::{partial_trace, BlochXParams, DensityMatrix, QubitLabel};
use crate::error::{Error, Result};
use crate::matrix::{C64, CMat};

/// Acceleration parameters (radians) for the two observers. `r = 0` is an
/// inertial observer; `r = π/4` is the infinite-temperature ceiling, where
/// `cos r = sin r = 1/√2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HawkingFrame {
    ra: f64,
    rb: f64,
}

impl HawkingFrame {
    /// Direct construction from the two angles; both must lie in [0, π/4].
    pub fn new(ra: f64, rb: f64) -> Result<Self> {
        for (name, r) in [("ra", ra), ("rb", rb)] {
            if !(0.0..=FRAC_PI_4).contains(&r) {
                return Err(Error::BadParam(format!(
                    "{name} = {r} outside the physical range [0, pi/4]"
                )));
            }
        }
        Ok(HawkingFrame { ra, rb })
    }

    /// Derive both angles from per-observer thermal data.
    pub fn from_thermal(a: &ThermalSpec, b: &ThermalSpec) -> Self {
        HawkingFrame {
            ra: acceleration_parameter(a),
            rb: acceleration_parameter(b),
        }
    }

    pub fn ra(&self) -> f64 {
        self.ra
    }

    pub fn rb(&self) -> f64 {
        self.rb
    }
}

/// How a temperature is being specified.
#[derive(Clone, Copy, Debug, PartialEq)]
enum TempSource {
    Temperature(f64),
    /// Black-hole mass; the temperature is 1/(8πM).
    Mass(f64),
}

/// A mode frequency together with exactly one way of fixing the Hawking
/// temperature — directly, or through the black-hole mass.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalSpec {
    omega: f64,
    source: TempSource,
}

impl ThermalSpec {
    fn check_omega(omega: f64) -> Result<()> {
        if !omega.is_finite() || omega <= 0.0 {
            return Err(Error::BadSpec(format!(
                "mode frequency must be finite and positive, got {omega}"
            )));
        }
        Ok(())
    }

    /// Frequency plus Hawking temperature. `T = 0` (no radiation) and
    /// `T = +inf` (the saturation limit) are both meaningful.
    pub fn with_temperature(omega: f64, temperature: f64) -> Result<Self> {
        Self::check_omega(omega)?;
        if temperature.is_nan() || temperature < 0.0 {
            return Err(Error::BadSpec(format!(
                "temperature must be >= 0 (or +inf), got {temperature}"
            )));
        }
        Ok(ThermalSpec {
            omega,
            source: TempSource::Temperature(temperature),
        })
    }

    /// Frequency plus black-hole mass.
    pub fn with_mass(omega: f64, mass: f64) -> Result<Self> {
        Self::check_omega(omega)?;
        // hawking_temperature repeats the mass check
        let _ = hawking_temperature(mass)?;
        Ok(ThermalSpec {
            omega,
            source: TempSource::Mass(mass),
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// The Hawking temperature, whichever way it was specified.
    pub fn temperature(&self) -> f64 {
        match self.source {
            TempSource::Temperature(t) => t,
            TempSource::Mass(m) => 1.0 / (8.0 * PI * m),
        }
    }
}

/// Hawking temperature of a Schwarzschild black hole of mass `M` in natural
/// units: `T = 1/(8πM)`.
pub fn hawking_temperature(mass: f64) -> Result<f64> {
    if mass.is_nan() || mass <= 0.0 {
        return Err(Error::BadSpec(format!(
            "black-hole mass must be positive, got {mass}"
        )));
    }
    Ok(1.0 / (8.0 * PI * mass))
}

/// Acceleration parameter of a mode of frequency ω seen at Hawking
/// temperature T, defined by `cos r = (e^{-ω/T} + 1)^{-1/2}`.
///
/// Evaluated through the sine, `sin r = (e^{x} + 1)^{-1/2}` with `x = ω/T`,
/// rewritten as `e^{-x/2} / √(1 + e^{-x})` so that large x (cold horizons)
/// neither overflows e^x nor loses the ~e^{-x/2} tail to cancellation — the
/// acos form would collapse every small r to 0 beyond ~1e-8. The limits are
/// returned exactly: T = 0 gives r = 0 and T = +inf gives r = π/4.
pub fn acceleration_parameter(spec: &ThermalSpec) -> f64 {
    let t = spec.temperature();
    if t == 0.0 {
        return 0.0;
    }
    if t.is_infinite() {
        return FRAC_PI_4;
    }
    let x = spec.omega / t;
    ((-0.5 * x).exp() / (1.0 + (-x).exp()).sqrt()).asin()
}

/// One choice of Alice mode and Bob mode out of the dilated four-mode state.
/// Mode I lives outside the horizon (accessible), mode II inside.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    AiBi,
    AiiBii,
    AiBii,
    AiiBi,
}

impl Sector {
    pub const ALL: [Sector; 4] = [Sector::AiBi, Sector::AiiBii, Sector::AiBii, Sector::AiiBi];

    /// The (Alice mode, Bob mode) pair this sector keeps.
    pub fn keep(self) -> (QubitLabel, QubitLabel) {
        match self {
            Sector::AiBi => (QubitLabel::AI, QubitLabel::BI),
            Sector::AiiBii => (QubitLabel::AII, QubitLabel::BII),
            Sector::AiBii => (QubitLabel::AI, QubitLabel::BII),
            Sector::AiiBi => (QubitLabel::AII, QubitLabel::BI),
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Sector::AiBi => "ai-bi",
            Sector::AiiBii => "aii-bii",
            Sector::AiBii => "ai-bii",
            Sector::AiiBi => "aii-bi",
        };
        f.write_str(s)
    }
}

impl FromStr for Sector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ai-bi" => Ok(Sector::AiBi),
            "aii-bii" => Ok(Sector::AiiBii),
            "ai-bii" => Ok(Sector::AiBii),
            "aii-bi" => Ok(Sector::AiiBi),
            other => Err(Error::BadParam(format!(
                "unknown sector '{other}' (expected ai-bi, aii-bii, ai-bii or aii-bi)"
            ))),
        }
    }
}

/// The isotropic two-qubit state `1/4 (I⊗I + p σ₁σ₁ + p σ₂σ₂ − p σ₃σ₃)`
/// shared by the observers before any dilation.
pub fn isotropic_state(p: f64) -> Result<BlochXParams> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParam(format!(
            "mixing parameter p must lie in [0, 1], got {p}"
        )));
    }
    Ok(BlochXParams::new(0.0, 0.0, p, p, -p))
}

/// Single-qubit dilation isometry (2-dim → 4-dim, mode ordering I ⊗ II):
/// `|0⟩ ↦ cos r |0⟩_I|0⟩_II + sin r |1⟩_I|1⟩_II`, `|1⟩ ↦ |1⟩_I|0⟩_II`.
fn dilation_isometry(r: f64) -> CMat {
    let mut v = CMat::zeros(4, 2);
    v[(0, 0)] = C64::new(r.cos(), 0.0);
    v[(3, 0)] = C64::new(r.sin(), 0.0);
    v[(2, 1)] = C64::new(1.0, 0.0);
    v
}

/// Dilate a two-qubit state into the four-mode picture by applying the
/// single-mode isometry to each side: `ρ ↦ (V(rₐ)⊗V(r_b)) ρ (V(rₐ)⊗V(r_b))†`.
/// Output index ordering is A_I ⊗ A_II ⊗ B_I ⊗ B_II.
pub fn dilate_two_qubit(rho: &DensityMatrix, frame: &HawkingFrame) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::BadParam(format!(
            "dilation expects a two-qubit (4x4) state, got dim {}",
            rho.dim()
        )));
    }
    let w = dilation_isometry(frame.ra).tensor(&dilation_isometry(frame.rb));
    let out = w.mul(rho.matrix()).mul(&w.adjoint());
    let trace_defect = (out.trace() - C64::new(1.0, 0.0)).norm();
    assert!(
        trace_defect <= 1e-12,
        "isometric dilation failed to preserve trace (defect {trace_defect})"
    );
    Ok(DensityMatrix::new_unchecked(out))
}

/// Closed-form Bloch parameters of the two-mode marginal of the dilated
/// isotropic state, for every sector. Equal to the
/// `isotropic → dilate → partial trace` pipeline entrywise (within 1e-12),
/// but in O(1).
pub fn reduced_state(sector: Sector, p: f64, frame: &HawkingFrame) -> Result<BlochXParams> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParam(format!(
            "mixing parameter p must lie in [0, 1], got {p}"
        )));
    }
    let (sa, ca) = frame.ra.sin_cos();
    let (sb, cb) = frame.rb.sin_cos();
    let (sa2, ca2) = (sa * sa, ca * ca);
    let (sb2, cb2) = (sb * sb, cb * cb);

    // Tracing out a mode acts on each side as a single-qubit affine map;
    // composing the two maps on the isotropic coefficients gives, per sector:
    let q = match sector {
        Sector::AiBi => BlochXParams::new(
            -sa2,
            -sb2,
            p * ca * cb,
            p * ca * cb,
            sa2 * sb2 - p * ca2 * cb2,
        ),
        Sector::AiiBii => BlochXParams::new(
            ca2,
            cb2,
            p * sa * sb,
            p * sa * sb,
            ca2 * cb2 - p * sa2 * sb2,
        ),
        Sector::AiBii => BlochXParams::new(
            -sa2,
            cb2,
            p * ca * sb,
            -p * ca * sb,
            p * ca2 * sb2 - sa2 * cb2,
        ),
        Sector::AiiBi => BlochXParams::new(
            ca2,
            -sb2,
            p * sa * cb,
            -p * sa * cb,
            p * sa2 * cb2 - ca2 * sb2,
        ),
    };
    Ok(q)
}

/// The full numeric route to the same marginal: build the isotropic state,
/// dilate, and trace down to the sector's two modes.
pub fn reduced_state_numeric(sector: Sector, p: f64, frame: &HawkingFrame) -> Result<DensityMatrix> {
    let rho = crate::density::bloch_to_density(&isotropic_state(p)?)?;
    let dilated = dilate_two_qubit(&rho, frame)?;
    partial_trace(&dilated, sector.keep())
}
