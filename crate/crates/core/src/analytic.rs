//! Closed-form concurrences of the horizon marginals — vacuum and under
//! each decoherence channel — together with the bit-flip revival thresholds
//! and the trade-off sums. Every function here has a numeric counterpart
//! (Kraus pipeline + spin-flip eigenvalues) that the test suites pair it
//! against.

use crate::channels::ChannelKind;
use crate::error::{Error, Result};
use crate::hawking::{HawkingFrame, Sector};

/// Which side of the dead zone a noise strength falls on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchKind {
    /// Entanglement surviving from k = 0.
    Low,
    /// The closed interval where the concurrence is exactly zero.
    Dead,
    /// Entanglement revived as k approaches 1.
    High,
}

/// The piecewise structure of the bit-flip concurrence in k: positive below
/// `lo_threshold`, exactly zero on `[lo_threshold, hi_threshold]`, positive
/// again above. A state that is never entangled reports `(0, 1)` — dead on
/// the whole interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiecewiseBranch {
    pub lo_threshold: f64,
    pub hi_threshold: f64,
}

impl PiecewiseBranch {
    /// Classify a noise strength. The dead region is closed on both ends.
    pub fn classify(&self, k: f64) -> BranchKind {
        if k < self.lo_threshold {
            BranchKind::Low
        } else if k <= self.hi_threshold {
            BranchKind::Dead
        } else {
            BranchKind::High
        }
    }
}

/// Quadratic coefficients `[k², k, 1]` whose roots are the bit-flip
/// thresholds: `low` vanishes at the death point in (0, ½], `high` at the
/// revival point in [½, 1). The two are related by k → 1−k.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientTable {
    pub low: [f64; 3],
    pub high: [f64; 3],
}

/// The four sector geometries collapse onto one template. With
/// `(sa, ca, sb, cb) = (sin rₐ, cos rₐ, sin r_b, cos r_b)`:
///
/// | sector   | trig    | partner (Ā, B̄) |
/// |----------|---------|------------------|
/// | AI_BI    | ca · cb | (sa, sb)         |
/// | AII_BII  | sa · sb | (ca, cb)         |
/// | AI_BII   | ca · sb | (sa, cb)         |
/// | AII_BI   | sa · cb | (ca, sb)         |
///
/// The coherence of the marginal is `p·τ/2` with `τ = A·B`, and every
/// closed form below is built from τ and the partner factors.
#[derive(Clone, Copy, Debug)]
struct SectorGeometry {
    /// Alice's trig factor A.
    a: f64,
    /// Alice's complementary factor Ā.
    abar: f64,
    /// Bob's trig factor B.
    b: f64,
    /// Bob's complementary factor B̄.
    bbar: f64,
}

impl SectorGeometry {
    fn new(sector: Sector, frame: &HawkingFrame) -> Self {
        let (sa, ca) = frame.ra().sin_cos();
        let (sb, cb) = frame.rb().sin_cos();
        let (a, abar, b, bbar) = match sector {
            Sector::AiBi => (ca, sa, cb, sb),
            Sector::AiiBii => (sa, ca, sb, cb),
            Sector::AiBii => (ca, sa, sb, cb),
            Sector::AiiBi => (sa, ca, cb, sb),
        };
        SectorGeometry { a, abar, b, bbar }
    }

    fn tau(&self) -> f64 {
        self.a * self.b
    }

    /// The vacuum radicand companion
    /// `B₀ = (1+Ā²)(1+B̄²) − p·τ²`.
    fn b0(&self, p: f64) -> f64 {
        (1.0 + self.abar * self.abar) * (1.0 + self.bbar * self.bbar) - p * self.tau() * self.tau()
    }
}

fn check_unit_interval(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::BadParam(format!(
            "{name} must lie in [0, 1], got {x}"
        )));
    }
    Ok(())
}

/// Concurrence with the marginal's coherence scaled by `scale` — the shared
/// shape of the vacuum, phase-damping and phase-flip closed forms:
///
/// `C = max(0, τ·(scale·p − ½√((1−p)·B₀)))`
fn scaled_coherence_concurrence(g: &SectorGeometry, p: f64, scale: f64) -> f64 {
    let raw = g.tau() * (scale * p - 0.5 * ((1.0 - p) * g.b0(p)).max(0.0).sqrt());
    raw.max(0.0)
}

/// Concurrence of a sector's marginal with no environmental noise.
pub fn concurrence_vacuum(sector: Sector, p: f64, frame: &HawkingFrame) -> Result<f64> {
    check_unit_interval("p", p)?;
    Ok(scaled_coherence_concurrence(
        &SectorGeometry::new(sector, frame),
        p,
        1.0,
    ))
}

/// Concurrence under one-sided phase damping: the coherence picks up
/// `√(1−k)`, the diagonal is untouched.
pub fn concurrence_pd(sector: Sector, p: f64, frame: &HawkingFrame, k: f64) -> Result<f64> {
    check_unit_interval("p", p)?;
    check_unit_interval("k", k)?;
    Ok(scaled_coherence_concurrence(
        &SectorGeometry::new(sector, frame),
        p,
        (1.0 - k).sqrt(),
    ))
}

/// Concurrence under one-sided phase flip. The coherence scales by 1−2k;
/// since conjugating the channel output by σ₃ on Bob's side maps strength
/// k to 1−k without changing entanglement, the value is symmetric about
/// k = ½ and carries |1−2k| on the full interval.
pub fn concurrence_pf(sector: Sector, p: f64, frame: &HawkingFrame, k: f64) -> Result<f64> {
    check_unit_interval("p", p)?;
    check_unit_interval("k", k)?;
    Ok(scaled_coherence_concurrence(
        &SectorGeometry::new(sector, frame),
        p,
        (1.0 - 2.0 * k).abs(),
    ))
}

/// One branch of the bit-flip concurrence:
///
/// `g(k) = p·τ·(1−k) − ½√(A²·U(k)·V(k))`
///
/// with `t = 1−2k`, `U = 2k + t(1−p)B²` and
/// `V = (1+Ā²)(1+tB̄²) − t·p·τ²`. U and V are (four times) two diagonal
/// cells of the noisy marginal, hence nonnegative; the radicand is floored
/// at zero against round-off.
fn bf_branch(g: &SectorGeometry, p: f64, k: f64) -> f64 {
    let t = 1.0 - 2.0 * k;
    let u = 2.0 * k + t * (1.0 - p) * g.b * g.b;
    let v = (1.0 + g.abar * g.abar) * (1.0 + t * g.bbar * g.bbar) - t * p * g.tau() * g.tau();
    p * g.tau() * (1.0 - k) - 0.5 * (g.a * g.a * u * v).max(0.0).sqrt()
}

/// Concurrence under one-sided bit flip. The two coherences of the noisy
/// marginal compete: one carries (1−k), the other k, and positivity of the
/// state lets at most one win. Flipping Bob with σ₁ swaps them, so the
/// second branch is exactly the first at 1−k:
///
/// `C = max(0, g(k), g(1−k))`
pub fn concurrence_bf(sector: Sector, p: f64, frame: &HawkingFrame, k: f64) -> Result<f64> {
    check_unit_interval("p", p)?;
    check_unit_interval("k", k)?;
    let g = SectorGeometry::new(sector, frame);
    let low = bf_branch(&g, p, k);
    let high = bf_branch(&g, p, 1.0 - k);
    Ok(low.max(high).max(0.0))
}

/// Quadratic threshold coefficients for the bit-flip dead zone.
///
/// Squaring `g(k) = 0` and dividing by A² leaves
/// `F(k) = 4p²B²(1−k)² − U(k)·V(k)`, expanded here termwise:
/// `U = u₀ + u₁k`, `V = v₀ + v₁k` give `low = [α, β, γ]` with
///
/// ```text
/// α = 4p²B² − u₁v₁
/// β = −8p²B² − (u₀v₁ + u₁v₀)
/// γ = 4p²B² − u₀v₀
/// ```
///
/// and the revival-side coefficients are its mirror, `F(1−k)`.
pub fn bf_coefficients(sector: Sector, p: f64, frame: &HawkingFrame) -> Result<CoefficientTable> {
    check_unit_interval("p", p)?;
    let g = SectorGeometry::new(sector, frame);
    let tau2 = g.tau() * g.tau();
    let b2 = g.b * g.b;
    let u0 = (1.0 - p) * b2;
    let u1 = 2.0 - 2.0 * u0;
    let v0 = g.b0(p);
    let v1 = -2.0 * ((1.0 + g.abar * g.abar) * g.bbar * g.bbar - p * tau2);
    let lead = 4.0 * p * p * b2;
    let alpha = lead - u1 * v1;
    let beta = -2.0 * lead - (u0 * v1 + u1 * v0);
    let gamma = lead - u0 * v0;
    Ok(CoefficientTable {
        low: [alpha, beta, gamma],
        high: [alpha, -2.0 * alpha - beta, alpha + beta + gamma],
    })
}

/// Root of `c[0]k² + c[1]k + c[2]` inside `[lo, hi]`, an interval known to
/// bracket exactly one sign change when the caller's state is entangled at
/// the matching end.
///
/// Uses the cancellation-free form `q = −½(b + sign(b)√(b²−4ac))` with
/// candidate roots q/a and c/q; a vanishing leading coefficient degrades
/// gracefully, because c/q then becomes the linear root −c/b while q/a
/// diverges and is rejected by the window test. `DegenerateQuadratic` and
/// `NoDeadZone` are guard rails for inputs outside what this crate
/// produces (both are unreachable from validated states — see the tests).
fn quadratic_root_in(c: &[f64; 3], lo: f64, hi: f64) -> Result<f64> {
    let [a, b, g] = *c;
    let scale = a.abs().max(b.abs()).max(g.abs());
    if scale == 0.0 || (a.abs() <= 1e-12 * scale && b.abs() <= 1e-12 * scale) {
        return Err(Error::DegenerateQuadratic);
    }
    let mut disc = b * b - 4.0 * a * g;
    if disc < 0.0 {
        if disc < -1e-10 * scale * scale {
            return Err(Error::NoDeadZone);
        }
        disc = 0.0; // tangency blurred by round-off
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return Err(Error::DegenerateQuadratic);
    }
    let window = 1e-9;
    [q / a, g / q]
        .into_iter()
        .filter(|r| r.is_finite() && (lo - window..=hi + window).contains(r))
        .reduce(f64::min)
        .map(|r| r.clamp(lo, hi))
        .ok_or(Error::NoDeadZone)
}

/// The bit-flip dead zone of a sector: the k-interval on which the
/// concurrence is exactly zero.
///
/// A marginal that is separable already at k = 0 stays separable under any
/// local channel, so it reports the full interval `(0, 1)`. Otherwise the
/// death point is the unique root of the low quadratic in (0, ½] and the
/// revival point the unique root of the mirrored quadratic in [½, 1); the
/// two always satisfy ω_lo + ω_hi = 1, since flipping k to 1−k is a local
/// unitary on the noisy state.
pub fn bf_thresholds(sector: Sector, p: f64, frame: &HawkingFrame) -> Result<PiecewiseBranch> {
    if concurrence_vacuum(sector, p, frame)? == 0.0 {
        return Ok(PiecewiseBranch {
            lo_threshold: 0.0,
            hi_threshold: 1.0,
        });
    }
    let table = bf_coefficients(sector, p, frame)?;
    let lo = quadratic_root_in(&table.low, 0.0, 0.5)?;
    let hi = quadratic_root_in(&table.high, 0.5, 1.0)?;
    debug_assert!(
        (lo + hi - 1.0).abs() <= 1e-9,
        "thresholds must mirror about 1/2: {lo} + {hi}"
    );
    Ok(PiecewiseBranch {
        lo_threshold: lo,
        hi_threshold: hi,
    })
}

/// Which family of concurrences a trade-off sum ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TradeoffMode {
    Vacuum,
    PhaseDamping,
    PhaseFlip,
}

/// Sum of squared concurrences over all four sectors at p = 1, where the
/// sum collapses to a frame-independent constant:
///
/// - vacuum: 1
/// - phase damping: 1 − k
/// - phase flip: (1−2k)²
///
/// The function computes the actual sum (it does not return the constant),
/// so the identity stays a testable statement. `p` must be exactly 1; the
/// identities are not claimed elsewhere.
pub fn tradeoff_sum(mode: TradeoffMode, p: f64, frame: &HawkingFrame, k: f64) -> Result<f64> {
    if p != 1.0 {
        return Err(Error::BadParam(format!(
            "trade-off identities hold at p = 1 only, got p = {p}"
        )));
    }
    let mut sum = 0.0;
    for sector in Sector::ALL {
        let c = match mode {
            TradeoffMode::Vacuum => concurrence_vacuum(sector, p, frame)?,
            TradeoffMode::PhaseDamping => concurrence_pd(sector, p, frame, k)?,
            TradeoffMode::PhaseFlip => concurrence_pf(sector, p, frame, k)?,
        };
        sum += c * c;
    }
    Ok(sum)
}

/// Closed-form concurrence for an optional channel: `None` is the vacuum
/// case, `Some((kind, k))` the corresponding noisy case.
pub fn concurrence_closed_form(
    channel: Option<(ChannelKind, f64)>,
    sector: Sector,
    p: f64,
    frame: &HawkingFrame,
) -> Result<f64> {
    match channel {
        None => concurrence_vacuum(sector, p, frame),
        Some((ChannelKind::PhaseDamping, k)) => concurrence_pd(sector, p, frame, k),
        Some((ChannelKind::PhaseFlip, k)) => concurrence_pf(sector, p, frame, k),
        Some((ChannelKind::BitFlip, k)) => concurrence_bf(sector, p, frame, k),
    }
}
