//! Entanglement-control experiments built on the evolution pipeline: time
//! series, peak statistics, critical occupation search, parameter sweeps and
//! coupling optimisation.
//!
//! Independent evaluations (sweep points, optimiser grid points) run in
//! parallel; results are always collected in input order, so output does not
//! depend on the degree of parallelism.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gaussian::{covariance_from_wigner, wigner_coefficients, CovarianceState, InitialState};
use crate::metrics::{log_negativity, quadrature_variances, SqueezingReport};
use crate::model::{Evolver, ModelParams};
use crate::numerics::{find_peaks, try_bisect, Peak, RootBracket};

pub const DEFAULT_T_MAX: f64 = 50.0;
pub const DEFAULT_DT: f64 = 0.01;
/// A state counts as entangled when `sup_t E_raw` exceeds this.
pub const ENTANGLED_THRESHOLD: f64 = 1e-9;
/// Peaks at least this fraction of the highest one enter the spacing
/// statistics.
pub const MAJOR_PEAK_FRACTION: f64 = 0.5;

const OCCUPATION_SEARCH_START: f64 = 0.25;
const OCCUPATION_SEARCH_LIMIT: f64 = 1e4;

/// Uniform grid `0, dt, 2dt, …` up to and including `t_max` (to within
/// roundoff of the last step).
pub fn time_grid(t_max: f64, dt: f64) -> Result<Vec<f64>> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    if !(dt > 0.0) || dt > t_max {
        return Err(Error::InvalidArgument(format!(
            "dt must satisfy 0 < dt <= t_max, got dt = {dt}"
        )));
    }
    let steps = (t_max / dt + 1e-9).floor() as usize;
    Ok((0..=steps).map(|i| i as f64 * dt).collect())
}

/// Covariance at time `t` through the Wigner-coefficient route.
pub fn evolve_covariance(
    evolver: &Evolver,
    state: &InitialState,
    t: f64,
) -> Result<CovarianceState> {
    let coeffs = evolver.at(t)?;
    covariance_from_wigner(&wigner_coefficients(&coeffs, state))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub t: Vec<f64>,
    pub e_raw: Vec<f64>,
    pub e: Vec<f64>,
    pub squeeze: Vec<SqueezingReport>,
    pub det_v: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupEntanglement {
    pub e_raw: f64,
    /// Time of the maximum.
    pub t: f64,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn sup(&self) -> SupEntanglement {
        grid_sup(&self.t, &self.e_raw)
    }

    pub fn entanglement_peaks(&self) -> Result<PeakStats> {
        peak_stats(&self.t, &self.e)
    }
}

/// Grid maximum with a three-point parabolic polish at an interior argmax.
fn grid_sup(t: &[f64], y: &[f64]) -> SupEntanglement {
    let (i, &best) = y
        .iter()
        .enumerate()
        .fold((0, &f64::NEG_INFINITY), |acc, (i, v)| {
            if *v > *acc.1 {
                (i, v)
            } else {
                acc
            }
        });
    if i == 0 || i + 1 >= y.len() {
        return SupEntanglement {
            e_raw: best,
            t: t[i],
        };
    }
    let (y0, y1, y2) = (y[i - 1], y[i], y[i + 1]);
    let den = y0 - 2.0 * y1 + y2;
    if den >= 0.0 {
        return SupEntanglement {
            e_raw: best,
            t: t[i],
        };
    }
    let off = (0.5 * (y0 - y2) / den).clamp(-0.5, 0.5);
    SupEntanglement {
        e_raw: y1 - 0.25 * (y0 - y2) * off,
        t: t[i] + off * (t[1] - t[0]),
    }
}

pub fn entanglement_time_series(
    params: &ModelParams,
    state: &InitialState,
    t_max: f64,
    dt: f64,
) -> Result<TimeSeries> {
    entanglement_time_series_with(&Evolver::new(params)?, state, t_max, dt)
}

pub fn entanglement_time_series_with(
    evolver: &Evolver,
    state: &InitialState,
    t_max: f64,
    dt: f64,
) -> Result<TimeSeries> {
    let grid = time_grid(t_max, dt)?;
    let n = grid.len();
    let mut series = TimeSeries {
        t: Vec::with_capacity(n),
        e_raw: Vec::with_capacity(n),
        e: Vec::with_capacity(n),
        squeeze: Vec::with_capacity(n),
        det_v: Vec::with_capacity(n),
    };
    for t in grid {
        let (cov, ent) = evolve_covariance(evolver, state, t)
            .and_then(|cov| Ok((cov, log_negativity(&cov)?)))
            .map_err(|e| e.at_time(t))?;
        series.t.push(t);
        series.e_raw.push(ent.e_raw);
        series.e.push(ent.e);
        series.squeeze.push(quadrature_variances(&cov));
        series.det_v.push(ent.det_v);
    }
    Ok(series)
}

/// `sup_t E_raw` without keeping the series.
pub fn sup_entanglement(
    evolver: &Evolver,
    state: &InitialState,
    t_max: f64,
    dt: f64,
) -> Result<SupEntanglement> {
    let grid = time_grid(t_max, dt)?;
    let e = grid
        .iter()
        .map(|&t| {
            evolve_covariance(evolver, state, t)
                .and_then(|cov| log_negativity(&cov))
                .map(|r| r.e_raw)
                .map_err(|e| e.at_time(t))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(grid_sup(&grid, &e))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeakStats {
    /// Local maxima above [`ENTANGLED_THRESHOLD`].
    pub peaks: Vec<Peak>,
    pub max_height: f64,
    /// max − min over the detected peak heights.
    pub height_dispersion: f64,
    /// `height_dispersion / max_height`.
    pub relative_height_dispersion: f64,
    pub spacings: Vec<f64>,
    /// Spacings between consecutive peaks of height ≥ ½ max.
    pub major_spacings: Vec<f64>,
    /// (max − min)/mean of `major_spacings`.
    pub spacing_dispersion: f64,
}

pub fn peak_analysis(series: &TimeSeries) -> Result<PeakStats> {
    series.entanglement_peaks()
}

/// Peak statistics of an arbitrary uniformly sampled series.
pub fn peak_stats(t: &[f64], y: &[f64]) -> Result<PeakStats> {
    let peaks: Vec<Peak> = find_peaks(t, y)?
        .into_iter()
        .filter(|p| p.y > ENTANGLED_THRESHOLD)
        .collect();
    let heights = peaks.iter().map(|p| p.y);
    let max_height = heights.clone().fold(0.0, f64::max);
    let min_height = heights.fold(f64::INFINITY, f64::min);
    let height_dispersion = if peaks.is_empty() {
        0.0
    } else {
        max_height - min_height
    };
    let spacings: Vec<f64> = peaks.windows(2).map(|w| w[1].t - w[0].t).collect();
    let major: Vec<&Peak> = peaks
        .iter()
        .filter(|p| p.y >= MAJOR_PEAK_FRACTION * max_height)
        .collect();
    let major_spacings: Vec<f64> = major.windows(2).map(|w| w[1].t - w[0].t).collect();
    let spacing_dispersion = if major_spacings.is_empty() {
        0.0
    } else {
        let mean = major_spacings.iter().sum::<f64>() / major_spacings.len() as f64;
        let hi = major_spacings
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        let lo = major_spacings.iter().cloned().fold(f64::INFINITY, f64::min);
        (hi - lo) / mean
    };
    Ok(PeakStats {
        relative_height_dispersion: if max_height > 0.0 {
            height_dispersion / max_height
        } else {
            0.0
        },
        peaks,
        max_height,
        height_dispersion,
        spacings,
        major_spacings,
        spacing_dispersion,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalOccupation {
    pub n_crit: f64,
    /// Final bracket, entangled at `lo` and separable at `hi`.
    pub lo: f64,
    pub hi: f64,
    pub iterations: u32,
}

/// Occupation n (shared by both modes) above which the state stays separable
/// for all `t ≤ t_max`.
pub fn critical_occupation(
    params: &ModelParams,
    state: &InitialState,
    t_max: f64,
    dt: f64,
    tol: f64,
) -> Result<CriticalOccupation> {
    let evolver = Evolver::new(params)?;
    time_grid(t_max, dt)?;
    critical_occupation_by(
        |n| {
            let s = state.with_occupation(n, n)?;
            Ok(sup_entanglement(&evolver, &s, t_max, dt)?.e_raw)
        },
        tol,
    )
}

/// Bracket by doubling from n = 0, then bisect `sup_e_raw(n) − threshold`.
pub fn critical_occupation_by(
    mut sup_e_raw: impl FnMut(f64) -> Result<f64>,
    tol: f64,
) -> Result<CriticalOccupation> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut excess = |n: f64| -> Result<f64> { Ok(sup_e_raw(n)? - ENTANGLED_THRESHOLD) };
    let f0 = excess(0.0)?;
    if f0 <= 0.0 {
        return Err(Error::NoSignChange(
            "no entanglement is produced even at zero occupation".into(),
        ));
    }
    let (mut lo, mut f_lo) = (0.0, f0);
    let mut hi = OCCUPATION_SEARCH_START;
    let mut f_hi = excess(hi)?;
    while f_hi > 0.0 {
        if hi >= OCCUPATION_SEARCH_LIMIT {
            return Err(Error::NoSignChange(format!(
                "entanglement survives up to occupation {hi}"
            )));
        }
        lo = hi;
        f_lo = f_hi;
        hi *= 2.0;
        f_hi = excess(hi)?;
    }
    if f_hi == 0.0 {
        return Ok(CriticalOccupation {
            n_crit: hi,
            lo: hi,
            hi,
            iterations: 0,
        });
    }
    let bracket = RootBracket::new(lo, hi, f_lo, f_hi)?;
    let root = try_bisect(excess, bracket, tol)?;
    Ok(CriticalOccupation {
        n_crit: root.root,
        lo: root.lo,
        hi: root.hi,
        iterations: root.iterations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParam {
    G1,
    G2,
    N1,
    N2,
    /// Both occupations together.
    N,
    Omega2,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::G1 => "g1",
            SweepParam::G2 => "g2",
            SweepParam::N1 => "n1",
            SweepParam::N2 => "n2",
            SweepParam::N => "n",
            SweepParam::Omega2 => "omega2",
        }
    }

    fn touches(&self, other: &SweepParam) -> bool {
        use SweepParam::*;
        self == other || matches!((self, other), (N, N1) | (N, N2) | (N1, N) | (N2, N))
    }
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "g1" => SweepParam::G1,
            "g2" => SweepParam::G2,
            "n1" => SweepParam::N1,
            "n2" => SweepParam::N2,
            "n" => SweepParam::N,
            "omega2" => SweepParam::Omega2,
            other => {
                return Err(Error::InvalidSweep(format!(
                    "unknown sweep parameter `{other}`"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

impl SweepAxis {
    /// `start, start + step, …` through `stop` (inclusive within roundoff).
    pub fn range(param: SweepParam, start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(Error::InvalidSweep("non-finite axis bounds".into()));
        }
        if start == stop {
            return Ok(SweepAxis {
                param,
                values: vec![start],
            });
        }
        if !(step > 0.0) || stop < start {
            return Err(Error::InvalidSweep(format!(
                "axis {}: need start <= stop and step > 0",
                param.name()
            )));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        Ok(SweepAxis {
            param,
            values: (0..=n).map(|i| start + i as f64 * step).collect(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSummary {
    /// `max(sup_t E_raw, 0)`.
    pub sup_e: f64,
    pub sup_e_raw: f64,
    pub argmax_t: f64,
    pub separable_everywhere: bool,
}

impl PointSummary {
    fn from_sup(sup: SupEntanglement) -> Self {
        PointSummary {
            sup_e: sup.e_raw.max(0.0),
            sup_e_raw: sup.e_raw,
            argmax_t: sup.t,
            separable_everywhere: sup.e_raw <= ENTANGLED_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointError {
    pub kind: &'static str,
    pub message: String,
}

impl From<Error> for PointError {
    fn from(e: Error) -> Self {
        PointError {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    /// Grid index along each axis.
    pub index: Vec<usize>,
    pub coords: Vec<f64>,
    pub outcome: std::result::Result<PointSummary, PointError>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axes: Vec<SweepAxis>,
    /// Row-major over the axes (last axis fastest).
    pub points: Vec<SweepPoint>,
}

fn apply_coords(
    base: &ModelParams,
    state: &InitialState,
    axes: &[SweepAxis],
    coords: &[f64],
) -> Result<(ModelParams, InitialState)> {
    let mut params = *base;
    let mut s = *state;
    for (axis, &x) in axes.iter().zip(coords) {
        let [n1, n2] = s.occupation();
        match axis.param {
            SweepParam::G1 => params = params.with_couplings(x, params.g2())?,
            SweepParam::G2 => params = params.with_couplings(params.g1(), x)?,
            SweepParam::Omega2 => params = params.with_omega2(x)?,
            SweepParam::N1 => s = s.with_occupation(x, n2)?,
            SweepParam::N2 => s = s.with_occupation(n1, x)?,
            SweepParam::N => s = s.with_occupation(x, x)?,
        }
    }
    Ok((params, s))
}

fn validate_axes(axes: &[SweepAxis]) -> Result<()> {
    if axes.is_empty() || axes.len() > 2 {
        return Err(Error::InvalidSweep(format!(
            "expected one or two axes, got {}",
            axes.len()
        )));
    }
    for axis in axes {
        if axis.values.is_empty() {
            return Err(Error::InvalidSweep(format!(
                "axis {} has an empty grid",
                axis.param.name()
            )));
        }
        if axis.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSweep(format!(
                "axis {} has non-finite values",
                axis.param.name()
            )));
        }
    }
    if axes.len() == 2 && axes[0].param.touches(&axes[1].param) {
        return Err(Error::InvalidSweep(format!(
            "axes {} and {} overlap",
            axes[0].param.name(),
            axes[1].param.name()
        )));
    }
    Ok(())
}

pub fn sweep(
    base: &ModelParams,
    state: &InitialState,
    axes: Vec<SweepAxis>,
    t_max: f64,
    dt: f64,
) -> Result<SweepResult> {
    validate_axes(&axes)?;
    time_grid(t_max, dt)?;
    let mut indices: Vec<Vec<usize>> = vec![vec![]];
    for axis in &axes {
        indices = indices
            .into_iter()
            .flat_map(|prefix| {
                (0..axis.values.len()).map(move |i| {
                    let mut idx = prefix.clone();
                    idx.push(i);
                    idx
                })
            })
            .collect();
    }
    let points = indices
        .into_par_iter()
        .map(|index| {
            let coords: Vec<f64> = index
                .iter()
                .zip(&axes)
                .map(|(&i, axis)| axis.values[i])
                .collect();
            let outcome = apply_coords(base, state, &axes, &coords)
                .and_then(|(params, s)| {
                    let evolver = Evolver::new(&params)?;
                    sup_entanglement(&evolver, &s, t_max, dt)
                })
                .map(PointSummary::from_sup)
                .map_err(PointError::from);
            SweepPoint {
                index,
                coords,
                outcome,
            }
        })
        .collect();
    Ok(SweepResult { axes, points })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingBox {
    pub g1: (f64, f64),
    pub g2: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeOptions {
    /// Grid points per axis for the coarse scan.
    pub grid_points: usize,
    /// Coordinate descent stops once every step is below this.
    pub min_step: f64,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            grid_points: 21,
            min_step: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeResult {
    pub g1: f64,
    pub g2: f64,
    /// Time at which `e_star` is reached.
    pub t_star: f64,
    /// `sup_t E_raw` at the optimum.
    pub e_star: f64,
    /// Grid points skipped as unstable or degenerate.
    pub skipped: usize,
    pub evaluations: usize,
}

/// Maximise `sup_t E_raw` over a (g₁, g₂) box: coarse grid scan, then
/// coordinate ascent from the best grid point with step halving.
pub fn optimize_couplings(
    base: &ModelParams,
    bounds: CouplingBox,
    state: &InitialState,
    t_max: f64,
    dt: f64,
    options: OptimizeOptions,
) -> Result<OptimizeResult> {
    let boxes = [bounds.g1, bounds.g2];
    for (name, (lo, hi)) in ["g1", "g2"].iter().zip(boxes) {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi || lo < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "coupling bounds for {name} must satisfy 0 <= lo <= hi, got [{lo}, {hi}]"
            )));
        }
    }
    if options.grid_points < 2 || !(options.min_step > 0.0) {
        return Err(Error::InvalidArgument(
            "optimizer needs at least 2 grid points and a positive minimum step".into(),
        ));
    }
    time_grid(t_max, dt)?;

    let objective = |g: [f64; 2]| -> Result<SupEntanglement> {
        let params = base.with_couplings(g[0], g[1])?;
        sup_entanglement(&Evolver::new(&params)?, state, t_max, dt)
    };

    let axis = |(lo, hi): (f64, f64)| -> Vec<f64> {
        if lo == hi {
            vec![lo]
        } else {
            let n = options.grid_points - 1;
            (0..=n)
                .map(|i| lo + (hi - lo) * i as f64 / n as f64)
                .collect()
        }
    };
    let (ax1, ax2) = (axis(bounds.g1), axis(bounds.g2));
    let grid: Vec<[f64; 2]> = ax1
        .iter()
        .flat_map(|&a| ax2.iter().map(move |&b| [a, b]))
        .collect();
    let scores: Vec<Option<SupEntanglement>> =
        grid.par_iter().map(|&g| objective(g).ok()).collect();
    let skipped = scores.iter().filter(|s| s.is_none()).count();
    let mut evaluations = grid.len();

    let (mut best_g, mut best) = grid
        .iter()
        .zip(&scores)
        .filter_map(|(g, s)| s.map(|s| (*g, s)))
        .fold(
            None,
            |acc: Option<([f64; 2], SupEntanglement)>, (g, s)| match acc {
                Some((_, b)) if b.e_raw >= s.e_raw => acc,
                _ => Some((g, s)),
            },
        )
        .ok_or(Error::EmptyFeasibleSet)?;

    let spacing = |(lo, hi): (f64, f64)| {
        if lo == hi {
            0.0
        } else {
            0.5 * (hi - lo) / (options.grid_points - 1) as f64
        }
    };
    let mut step = [spacing(bounds.g1), spacing(bounds.g2)];
    while step.iter().any(|&s| s >= options.min_step) {
        let mut moved = false;
        'dims: for d in 0..2 {
            if step[d] == 0.0 {
                continue;
            }
            for dir in [1.0, -1.0] {
                let mut cand = best_g;
                cand[d] = (cand[d] + dir * step[d]).clamp(boxes[d].0, boxes[d].1);
                if cand[d] == best_g[d] {
                    continue;
                }
                evaluations += 1;
                if let Ok(s) = objective(cand) {
                    if s.e_raw > best.e_raw {
                        best_g = cand;
                        best = s;
                        moved = true;
                        break 'dims;
                    }
                }
            }
        }
        if !moved {
            step = step.map(|s| s * 0.5);
        }
    }

    Ok(OptimizeResult {
        g1: best_g[0],
        g2: best_g[1],
        t_star: best.t,
        e_star: best.e_raw,
        skipped,
        evaluations,
    })
}
