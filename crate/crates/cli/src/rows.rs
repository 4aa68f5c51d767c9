//! Grid expansion and evaluation: walk the scan axes in deterministic
//! nesting order (p, frame, k, then sectors innermost) and compute both the
//! closed-form and the matrix-oracle concurrence at every point.

use horizon_core::{
    acceleration_parameter, concurrence_closed_form, numeric_concurrence, ChannelKind,
    HawkingFrame, Sector, ThermalSpec,
};

use crate::config::{FrameScan, Scan};
use crate::CliError;

/// One evaluated grid point for one sector.
pub struct Row {
    pub channel: Option<ChannelKind>,
    pub sector: Sector,
    pub p: f64,
    pub ra: f64,
    pub rb: f64,
    /// Set only on the thermal route.
    pub omega: Option<f64>,
    pub temp: Option<f64>,
    /// Set only when a channel is active.
    pub k: Option<f64>,
    pub analytic: f64,
    pub numeric: f64,
}

impl Row {
    pub fn channel_label(&self) -> &'static str {
        match self.channel {
            None => "none",
            Some(ChannelKind::PhaseDamping) => "pd",
            Some(ChannelKind::PhaseFlip) => "pf",
            Some(ChannelKind::BitFlip) => "bf",
        }
    }
}

/// The frame points of a scan, in axis order, with thermal metadata.
fn frame_points(frame: &FrameScan) -> Result<Vec<(f64, f64, Option<f64>, Option<f64>)>, CliError> {
    let mut points = Vec::new();
    match frame {
        FrameScan::Angles { ra, rb, locked } => {
            for &a in &ra.values {
                if *locked {
                    points.push((a, a, None, None));
                } else {
                    for &b in &rb.values {
                        points.push((a, b, None, None));
                    }
                }
            }
        }
        FrameScan::Thermal { omega, temp } => {
            for &w in &omega.values {
                for &t in &temp.values {
                    let spec = ThermalSpec::with_temperature(w, t)?;
                    let r = acceleration_parameter(&spec);
                    points.push((r, r, Some(w), Some(t)));
                }
            }
        }
    }
    Ok(points)
}

pub fn evaluate(scan: &Scan) -> Result<Vec<Row>, CliError> {
    let k_slots: Vec<Option<f64>> = match &scan.ks {
        None => vec![None],
        Some(axis) => axis.values.iter().map(|&k| Some(k)).collect(),
    };
    let frame_points = frame_points(&scan.frame)?;
    let mut rows = Vec::new();
    for &p in &scan.ps.values {
        for &(ra, rb, omega, temp) in &frame_points {
            let frame = HawkingFrame::new(ra, rb)?;
            for &k in &k_slots {
                let channel = match (scan.channel, k) {
                    (Some(kind), Some(k)) => Some((kind, k)),
                    _ => None,
                };
                for &sector in &scan.sectors {
                    rows.push(Row {
                        channel: scan.channel,
                        sector,
                        p,
                        ra,
                        rb,
                        omega,
                        temp,
                        k,
                        analytic: concurrence_closed_form(channel, sector, p, &frame)?,
                        numeric: numeric_concurrence(channel, sector, p, &frame)?,
                    });
                }
            }
        }
    }
    Ok(rows)
}
