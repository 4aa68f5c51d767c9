//! Argument resolution: turn the raw flag soup into a validated scan
//! description with explicit axes.

use std::path::PathBuf;
use std::str::FromStr;

use horizon_core::{ChannelKind, Sector};

use crate::{CliError, CommonArgs};

/// One scan axis: the values to visit and whether they came from `--grid`
/// (several points) or a scalar flag (exactly one).
#[derive(Clone, Debug)]
pub struct AxisValues {
    pub values: Vec<f64>,
    pub swept: bool,
}

impl AxisValues {
    fn fixed(v: f64) -> Self {
        AxisValues {
            values: vec![v],
            swept: false,
        }
    }

    fn swept(values: Vec<f64>) -> Self {
        AxisValues {
            values,
            swept: true,
        }
    }
}

/// How the acceleration frame is scanned: direct angles, or (ω, T) pairs
/// pushed through the thermal map with both observers sharing the spec.
#[derive(Clone, Debug)]
pub enum FrameScan {
    Angles {
        ra: AxisValues,
        rb: AxisValues,
        locked: bool,
    },
    Thermal {
        omega: AxisValues,
        temp: AxisValues,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Csv,
    Svg,
    Both,
}

/// A fully validated scan: every axis materialized, every choice explicit.
#[derive(Clone, Debug)]
pub struct Scan {
    pub channel: Option<ChannelKind>,
    pub sectors: Vec<Sector>,
    pub ps: AxisValues,
    pub frame: FrameScan,
    /// `None` exactly when `channel` is `None`
    pub ks: Option<AxisValues>,
    pub out: Option<PathBuf>,
    pub emit: Emit,
}

impl Scan {
    /// Names of the swept axes, in nesting order (outermost first).
    pub fn swept_axes(&self) -> Vec<&'static str> {
        let mut axes = Vec::new();
        if self.ps.swept {
            axes.push("p");
        }
        match &self.frame {
            FrameScan::Angles { ra, rb, locked } => {
                if ra.swept {
                    axes.push("ra");
                }
                if !locked && rb.swept {
                    axes.push("rb");
                }
            }
            FrameScan::Thermal { omega, temp } => {
                if omega.swept {
                    axes.push("omega");
                }
                if temp.swept {
                    axes.push("T");
                }
            }
        }
        if let Some(ks) = &self.ks {
            if ks.swept {
                axes.push("k");
            }
        }
        axes
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_channel(raw: &str) -> Result<Option<ChannelKind>, CliError> {
    if raw == "none" {
        return Ok(None);
    }
    ChannelKind::from_str(raw)
        .map(Some)
        .map_err(|_| usage(format!("unknown channel `{raw}` (expected none, pd, pf or bf)")))
}

pub fn parse_sectors(raw: &[String]) -> Result<Vec<Sector>, CliError> {
    if raw.is_empty() {
        return Ok(Sector::ALL.to_vec());
    }
    let mut sectors = Vec::new();
    for s in raw {
        let sector = Sector::from_str(s).map_err(|_| {
            usage(format!(
                "unknown sector `{s}` (expected ai-bi, aii-bii, ai-bii or aii-bi)"
            ))
        })?;
        if !sectors.contains(&sector) {
            sectors.push(sector);
        }
    }
    Ok(sectors)
}

/// Parsed `--grid` axes, each at most once.
pub struct GridSpecs {
    entries: Vec<(String, Vec<f64>)>,
}

impl GridSpecs {
    pub fn parse(raw: &[String]) -> Result<Self, CliError> {
        let mut entries: Vec<(String, Vec<f64>)> = Vec::new();
        for spec in raw {
            let (axis, range) = spec
                .split_once('=')
                .ok_or_else(|| usage(format!("bad grid `{spec}` (want axis=start:stop:n)")))?;
            if !matches!(axis, "p" | "ra" | "rb" | "omega" | "temp" | "k") {
                return Err(usage(format!(
                    "unknown grid axis `{axis}` (expected p, ra, rb, omega, temp or k)"
                )));
            }
            if entries.iter().any(|(a, _)| a == axis) {
                return Err(usage(format!("axis `{axis}` given more than one grid")));
            }
            let parts: Vec<&str> = range.split(':').collect();
            let [start, stop, n] = parts.as_slice() else {
                return Err(usage(format!("bad grid `{spec}` (want axis=start:stop:n)")));
            };
            let start: f64 = start
                .parse()
                .map_err(|_| usage(format!("bad grid start in `{spec}`")))?;
            let stop: f64 = stop
                .parse()
                .map_err(|_| usage(format!("bad grid stop in `{spec}`")))?;
            let n: usize = n
                .parse()
                .map_err(|_| usage(format!("bad grid point count in `{spec}`")))?;
            if !start.is_finite() || !stop.is_finite() {
                return Err(usage(format!("grid `{spec}` must have finite endpoints")));
            }
            if n < 2 {
                return Err(usage(format!("grid `{spec}` needs at least 2 points")));
            }
            if start >= stop {
                return Err(usage(format!(
                    "grid `{spec}` must be strictly increasing (start < stop)"
                )));
            }
            let values = (0..n)
                .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
                .collect();
            entries.push((axis.to_string(), values));
        }
        Ok(GridSpecs { entries })
    }

    fn take(&mut self, axis: &str) -> Option<Vec<f64>> {
        let i = self.entries.iter().position(|(a, _)| a == axis)?;
        Some(self.entries.remove(i).1)
    }

    pub fn reject_leftovers(&self) -> Result<(), CliError> {
        if let Some((axis, _)) = self.entries.first() {
            return Err(usage(format!("grid axis `{axis}` not usable here")));
        }
        Ok(())
    }
}

/// An axis that may come from a scalar flag or a grid, but not both.
fn resolve_axis(
    name: &str,
    scalar: Option<f64>,
    grids: &mut GridSpecs,
) -> Result<Option<AxisValues>, CliError> {
    let grid = grids.take(name);
    match (scalar, grid) {
        (Some(_), Some(_)) => Err(usage(format!(
            "`--{name}` and `--grid {name}=…` are mutually exclusive"
        ))),
        (Some(v), None) => Ok(Some(AxisValues::fixed(v))),
        (None, Some(values)) => Ok(Some(AxisValues::swept(values))),
        (None, None) => Ok(None),
    }
}

/// Like [`resolve_axis`], but an axis nobody set falls back to `default`
/// (used by `verify`, whose whole grid has sensible defaults).
pub fn resolve_axis_or(
    name: &str,
    scalar: Option<f64>,
    grids: &mut GridSpecs,
    default: &[f64],
) -> Result<AxisValues, CliError> {
    Ok(resolve_axis(name, scalar, grids)?.unwrap_or_else(|| AxisValues {
        values: default.to_vec(),
        swept: false,
    }))
}

fn resolve_frame(args: &CommonArgs, grids: &mut GridSpecs) -> Result<FrameScan, CliError> {
    let ra = resolve_axis("ra", args.ra, grids)?;
    let rb = resolve_axis("rb", args.rb, grids)?;
    let omega = resolve_axis("omega", args.omega, grids)?;
    let temp = resolve_axis("temp", args.temp, grids)?;

    let angle_route = ra.is_some() || rb.is_some();
    let thermal_route = omega.is_some() || temp.is_some();
    if angle_route && thermal_route {
        return Err(usage(
            "give the frame either as angles (--ra/--rb) or thermally (--omega/--temp), not both",
        ));
    }
    if thermal_route {
        if args.lock_rab {
            return Err(usage(
                "--lock-rab only applies to the angle route; thermal frames already share one angle",
            ));
        }
        let (Some(omega), Some(temp)) = (omega, temp) else {
            return Err(usage("the thermal route needs both --omega and --temp"));
        };
        return Ok(FrameScan::Thermal { omega, temp });
    }
    let Some(ra) = ra else {
        return Err(usage(
            "no frame given: use --ra/--rb (angles) or --omega/--temp (thermal)",
        ));
    };
    if args.lock_rab {
        if rb.is_some() {
            return Err(usage("--lock-rab ties r_b to r_a; drop --rb / --grid rb=…"));
        }
        let rb = ra.clone();
        return Ok(FrameScan::Angles {
            ra,
            rb,
            locked: true,
        });
    }
    let Some(rb) = rb else {
        return Err(usage("missing --rb (or --lock-rab to tie it to --ra)"));
    };
    Ok(FrameScan::Angles {
        ra,
        rb,
        locked: false,
    })
}

fn resolve_channel_and_k(
    args: &CommonArgs,
    grids: &mut GridSpecs,
) -> Result<(Option<ChannelKind>, Option<AxisValues>), CliError> {
    let channel = parse_channel(&args.channel)?;
    let ks = resolve_axis("k", args.k, grids)?;
    match (channel, ks) {
        (None, Some(_)) => Err(usage("--k needs a channel (pd, pf or bf)")),
        (Some(_), None) => Err(usage("a channel needs a noise strength (--k or --grid k=…)")),
        (channel, ks) => Ok((channel, ks)),
    }
}

fn resolve_emit(raw: &str) -> Result<Emit, CliError> {
    match raw {
        "csv" => Ok(Emit::Csv),
        "svg" => Ok(Emit::Svg),
        "both" => Ok(Emit::Both),
        other => Err(usage(format!("unknown emit kind `{other}` (csv, svg or both)"))),
    }
}

/// `point` takes scalars only.
pub fn resolve_point(args: &CommonArgs) -> Result<Scan, CliError> {
    if !args.grids.is_empty() {
        return Err(usage("`point` takes scalar flags only; use `sweep` for grids"));
    }
    let mut grids = GridSpecs::parse(&[])?;
    let (channel, ks) = resolve_channel_and_k(args, &mut grids)?;
    let p = args.p.ok_or_else(|| usage("missing --p"))?;
    Ok(Scan {
        channel,
        sectors: parse_sectors(&args.sectors)?,
        ps: AxisValues::fixed(p),
        frame: resolve_frame(args, &mut grids)?,
        ks,
        out: None,
        emit: Emit::Csv,
    })
}

pub fn resolve_sweep(args: &CommonArgs) -> Result<Scan, CliError> {
    let mut grids = GridSpecs::parse(&args.grids)?;
    let (channel, ks) = resolve_channel_and_k(args, &mut grids)?;
    let ps = resolve_axis("p", args.p, &mut grids)?.ok_or_else(|| usage("missing --p"))?;
    let frame = resolve_frame(args, &mut grids)?;
    grids.reject_leftovers()?;
    let out = args
        .out
        .clone()
        .ok_or_else(|| usage("`sweep` needs --out <path>"))?;
    let emit = resolve_emit(&args.emit)?;

    let scan = Scan {
        channel,
        sectors: parse_sectors(&args.sectors)?,
        ps,
        frame,
        ks,
        out: Some(out),
        emit,
    };
    let swept = scan.swept_axes();
    if swept.is_empty() {
        return Err(usage("`sweep` needs at least one --grid axis; use `point` otherwise"));
    }
    if emit != Emit::Csv && swept.len() > 2 {
        return Err(usage(format!(
            "SVG output supports at most two swept axes, got {}: {}",
            swept.len(),
            swept.join(", ")
        )));
    }
    Ok(scan)
}
