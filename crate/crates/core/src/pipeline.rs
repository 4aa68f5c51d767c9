//! The fully numeric end-to-end route: isotropic state → horizon dilation →
//! partial trace → (optional) Kraus noise → spin-flip concurrence. This is
//! the oracle every closed form in [`crate::analytic`] is measured against.

use crate::channels::{apply_one_sided, make_channel, ChannelKind};
use crate::concurrence::{concurrence_wootters, ConcurrenceResult};
use crate::density::DensityMatrix;
use crate::error::Result;
use crate::hawking::{reduced_state_numeric, HawkingFrame, Sector};

/// The sector marginal after dilation and optional one-sided noise,
/// computed entirely with matrices.
pub fn noisy_marginal_numeric(
    channel: Option<(ChannelKind, f64)>,
    sector: Sector,
    p: f64,
    frame: &HawkingFrame,
) -> Result<DensityMatrix> {
    let marginal = reduced_state_numeric(sector, p, frame)?;
    match channel {
        None => Ok(marginal),
        Some((kind, k)) => apply_one_sided(&marginal, &make_channel(kind, k)?),
    }
}

/// Concurrence along the numeric route, with the full spectral data.
pub fn numeric_concurrence_result(
    channel: Option<(ChannelKind, f64)>,
    sector: Sector,
    p: f64,
    frame: &HawkingFrame,
) -> Result<ConcurrenceResult> {
    concurrence_wootters(&noisy_marginal_numeric(channel, sector, p, frame)?)
}

/// Concurrence along the numeric route.
pub fn numeric_concurrence(
    channel: Option<(ChannelKind, f64)>,
    sector: Sector,
    p: f64,
    frame: &HawkingFrame,
) -> Result<f64> {
    Ok(numeric_concurrence_result(channel, sector, p, frame)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::concurrence_closed_form;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn vacuum_pipeline_matches_closed_form_at_saturation() {
        let frame = HawkingFrame::new(FRAC_PI_4, FRAC_PI_4).unwrap();
        let numeric = numeric_concurrence(None, Sector::AiBi, 1.0, &frame).unwrap();
        assert!((numeric - 0.5).abs() < 1e-12);
    }

    #[test]
    fn noisy_pipeline_matches_closed_forms_spot_checks() {
        let frame = HawkingFrame::new(0.42, 0.17).unwrap();
        let p = 0.85;
        for kind in ChannelKind::ALL {
            for k in [0.0, 0.23, 0.5, 0.77, 1.0] {
                for sector in Sector::ALL {
                    let ch = Some((kind, k));
                    let numeric = numeric_concurrence(ch, sector, p, &frame).unwrap();
                    let closed = concurrence_closed_form(ch, sector, p, &frame).unwrap();
                    assert!(
                        (numeric - closed).abs() < 1e-10,
                        "{kind} {sector} k={k}: {numeric} vs {closed}"
                    );
                }
            }
        }
    }
}
