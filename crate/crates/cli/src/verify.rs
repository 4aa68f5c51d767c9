//! `verify`: sweep the closed forms against the matrix oracle over a default
//! (or user-restricted) grid, re-check the bit-flip dead-zone boundaries and
//! the unit-fidelity trade-off sums, write the per-case CSV report, and exit
//! 2 on any miss.
//!
//! Setting `HORIZON_VERIFY_FAULT` (any non-empty value) corrupts the
//! analytic side of every bit-flip case by 1e-3 — a harness hook proving
//! that a broken coefficient actually trips the exit-code contract.

use std::f64::consts::FRAC_PI_4;

use horizon_core::{
    bf_thresholds, concurrence_closed_form, numeric_concurrence, tradeoff_sum, ChannelKind,
    HawkingFrame, Sector, TradeoffMode,
};

use crate::config::{parse_channel, parse_sectors, AxisValues, GridSpecs};
use crate::report::{csv_line, fmt_float, write_file, CSV_HEADER};
use crate::rows::Row;
use crate::{CliError, CommonArgs};

struct Miss {
    what: String,
    delta: f64,
}

pub fn run(args: &CommonArgs) -> Result<(), CliError> {
    if args.tol <= 0.0 || !args.tol.is_finite() {
        return Err(CliError::Usage(format!(
            "--tol must be a positive finite number, got {}",
            args.tol
        )));
    }
    let tol = args.tol;
    let fault = std::env::var_os("HORIZON_VERIFY_FAULT").is_some_and(|v| !v.is_empty());

    // grid: defaults that exercise every regime, individually overridable
    let mut grids = GridSpecs::parse(&args.grids)?;
    let ps = verify_axis("p", args.p, &mut grids, &[0.0, 0.5, 1.0])?;
    let ras = verify_axis("ra", args.ra, &mut grids, &[0.0, FRAC_PI_4 / 2.0, FRAC_PI_4])?;
    let rbs = verify_axis("rb", args.rb, &mut grids, &[0.0, FRAC_PI_4 / 2.0, FRAC_PI_4])?;
    let ks = verify_axis("k", args.k, &mut grids, &[0.0, 0.3, 0.5, 0.7, 1.0])?;
    grids.reject_leftovers()?;
    let sectors = parse_sectors(&args.sectors)?;
    let channels: Vec<Option<ChannelKind>> = match parse_channel(&args.channel)? {
        None => {
            let mut all = vec![None];
            all.extend(ChannelKind::ALL.map(Some));
            all
        }
        Some(kind) => vec![Some(kind)],
    };

    let mut rows = Vec::new();
    let mut misses = Vec::new();
    let mut max_delta: f64 = 0.0;

    for &p in &ps.values {
        for &ra in &ras.values {
            for &rb in &rbs.values {
                let frame = HawkingFrame::new(ra, rb)?;
                for &channel in &channels {
                    let k_slots: Vec<Option<f64>> = match channel {
                        None => vec![None],
                        Some(_) => ks.values.iter().map(|&k| Some(k)).collect(),
                    };
                    for k in k_slots {
                        let ch = channel.zip(k);
                        for &sector in &sectors {
                            let mut analytic = concurrence_closed_form(ch, sector, p, &frame)?;
                            if fault && channel == Some(ChannelKind::BitFlip) {
                                // harness hook: corrupt the closed form
                                analytic = (analytic + 1e-3).min(1.0);
                            }
                            let numeric = numeric_concurrence(ch, sector, p, &frame)?;
                            let delta = (analytic - numeric).abs();
                            max_delta = max_delta.max(delta);
                            let row = Row {
                                channel,
                                sector,
                                p,
                                ra,
                                rb,
                                omega: None,
                                temp: None,
                                k,
                                analytic,
                                numeric,
                            };
                            if delta > tol {
                                misses.push(Miss {
                                    what: csv_line(&row),
                                    delta,
                                });
                            }
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }

    // boundary and trade-off identities only hold at unit fidelity
    let at_unit_fidelity = ps.values.iter().any(|&p| p == 1.0);
    if at_unit_fidelity {
        if channels.contains(&Some(ChannelKind::BitFlip)) {
            check_dead_zone_boundaries(&ras.values, &rbs.values, &sectors, tol, &mut misses)?;
        }
        check_tradeoff_sums(&ras.values, &rbs.values, &ks.values, &channels, tol, &mut misses)?;
    }

    // report: same CSV schema as sweep, one row per equivalence case
    let mut report = String::with_capacity(64 * (rows.len() + 1));
    report.push_str(CSV_HEADER);
    report.push('\n');
    for row in &rows {
        report.push_str(&csv_line(row));
        report.push('\n');
    }
    match &args.out {
        Some(path) => write_file(path, &report)?,
        None => print!("{report}"),
    }

    let verdict = if misses.is_empty() { "PASS" } else { "FAIL" };
    let summary = format!(
        "verify: {} equivalence cases, max |closed − oracle| = {}, tolerance {}, \
         boundary/trade-off checks {} → {verdict}",
        rows.len(),
        fmt_float(max_delta),
        fmt_float(tol),
        if at_unit_fidelity { "ran" } else { "skipped (grid has no p = 1)" },
    );
    if args.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    if misses.is_empty() {
        return Ok(());
    }
    eprintln!("{} case(s) out of tolerance; worst offenders:", misses.len());
    misses.sort_by(|a, b| b.delta.partial_cmp(&a.delta).expect("finite deltas"));
    for miss in misses.iter().take(20) {
        eprintln!("  {}  (|Δ| = {:.3e})", miss.what, miss.delta);
    }
    Err(CliError::Verify)
}

/// Verify axes fall back to defaults instead of being required.
fn verify_axis(
    name: &str,
    scalar: Option<f64>,
    grids: &mut GridSpecs,
    default: &[f64],
) -> Result<AxisValues, CliError> {
    crate::config::resolve_axis_or(name, scalar, grids, default)
}

/// The dead zone of the bit-flip closed form must match the oracle: strictly
/// positive just outside the thresholds, zero at the midpoint between them.
fn check_dead_zone_boundaries(
    ras: &[f64],
    rbs: &[f64],
    sectors: &[Sector],
    tol: f64,
    misses: &mut Vec<Miss>,
) -> Result<(), CliError> {
    let probe = 1e-3;
    for &ra in ras {
        for &rb in rbs {
            let frame = HawkingFrame::new(ra, rb)?;
            for &sector in sectors {
                let branch = bf_thresholds(sector, 1.0, &frame)?;
                let (lo, hi) = (branch.lo_threshold, branch.hi_threshold);
                let oracle =
                    |k: f64| numeric_concurrence(Some((ChannelKind::BitFlip, k)), sector, 1.0, &frame);
                let mid = oracle(0.5 * (lo + hi))?;
                if mid > tol {
                    misses.push(Miss {
                        what: format!(
                            "dead zone ({}, {}) of {sector} at ra={ra} rb={rb} is not dead: \
                             oracle gives {mid} at its midpoint",
                            fmt_float(lo),
                            fmt_float(hi)
                        ),
                        delta: mid,
                    });
                }
                // entangled flanks exist only when the vacuum state is entangled
                if lo > probe {
                    let before = oracle(lo - probe)?;
                    if before <= tol {
                        misses.push(Miss {
                            what: format!(
                                "oracle already dead below the death threshold {} of {sector} \
                                 at ra={ra} rb={rb}",
                                fmt_float(lo)
                            ),
                            delta: before,
                        });
                    }
                }
                if hi < 1.0 - probe {
                    let after = oracle(hi + probe)?;
                    if after <= tol {
                        misses.push(Miss {
                            what: format!(
                                "oracle still dead above the revival threshold {} of {sector} \
                                 at ra={ra} rb={rb}",
                                fmt_float(hi)
                            ),
                            delta: after,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// At p = 1 the four sector concurrences obey exact sum rules: ΣC² is 1 in
/// vacuum, 1 − k under phase damping and (1 − 2k)² under phase flips.
fn check_tradeoff_sums(
    ras: &[f64],
    rbs: &[f64],
    ks: &[f64],
    channels: &[Option<ChannelKind>],
    tol: f64,
    misses: &mut Vec<Miss>,
) -> Result<(), CliError> {
    let modes: Vec<(TradeoffMode, &str)> = channels
        .iter()
        .filter_map(|c| match c {
            None => Some((TradeoffMode::Vacuum, "vacuum")),
            Some(ChannelKind::PhaseDamping) => Some((TradeoffMode::PhaseDamping, "pd")),
            Some(ChannelKind::PhaseFlip) => Some((TradeoffMode::PhaseFlip, "pf")),
            Some(ChannelKind::BitFlip) => None,
        })
        .collect();
    for &ra in ras {
        for &rb in rbs {
            let frame = HawkingFrame::new(ra, rb)?;
            for &(mode, label) in &modes {
                let k_slots: &[f64] = match mode {
                    TradeoffMode::Vacuum => &[0.0],
                    _ => ks,
                };
                for &k in k_slots {
                    let sum = tradeoff_sum(mode, 1.0, &frame, k)?;
                    let target = match mode {
                        TradeoffMode::Vacuum => 1.0,
                        TradeoffMode::PhaseDamping => 1.0 - k,
                        TradeoffMode::PhaseFlip => (1.0 - 2.0 * k) * (1.0 - 2.0 * k),
                    };
                    let delta = (sum - target).abs();
                    if delta > tol {
                        misses.push(Miss {
                            what: format!(
                                "{label} trade-off sum {sum} differs from {target} \
                                 at ra={ra} rb={rb} k={k}"
                            ),
                            delta,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}
