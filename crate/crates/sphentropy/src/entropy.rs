//! Level energies, the spherical-harmonics entropy (SHE), and automatic
//! selection of the reconstruction order.
//!
//! For a coefficient pyramid the detail energy is `E(l,m) = |S_{l,m}|^2`
//! (summed over channels), the level energy `E(l) = (1/N) sum_{|m|<=l}
//! E(l,m)`, and the level distribution `P(l) = E(l) / sum_l E(l)`. The
//! normalizer `N` cancels in `P(l)` and therefore in the entropy; it
//! defaults to 1, with a per-level `N = 2l+1` variant available for
//! experiments. The entropy of the truncation at order `J` is
//!
//! ```text
//! SHE(J) = - sum_{l=0}^{J} P_J(l) log P_J(l)
//! ```
//!
//! where `P_J` is by default normalized over levels `0..=J` only, so each
//! `SHE(J)` is the entropy of a genuine distribution; normalizing by the
//! full-band energy instead is available behind [`SheOptions`]. Terms with
//! `P = 0` contribute zero. The log base defaults to natural (nats).
//!
//! `SHE(J)` changes exactly when a newly occupied level enters the prefix
//! and is flat across unoccupied levels, so the curve of a band-limited
//! signal is a staircase that goes flat for good at the top occupied level.
//! [`select_order`] exploits this with two stopping rules:
//!
//! * **stabilization** (default): the smallest `J*` preceded by some entropy
//!   response whose next `window` steps all change by less than `epsilon`.
//! * **flowchart**: stop at the first entropy response and report `J + 2`.
//!   This reproduces the stepwise pipeline in which two further levels are
//!   assessed beyond the first response; on staircase curves whose last jump
//!   sits two levels above the first response the two rules agree.
//!
//! "Response" means `|SHE(J)| >= epsilon` in both rules: pyramids obtained
//! by quadrature analysis carry rounding-level energy (~1e-32) in their
//! nominally empty levels, so exact-zero tests would fire on noise. A curve
//! with no response at all carries a single resolvable occupied level and
//! selects order 0 as trivially stable (error for the flowchart rule, which
//! has nothing to respond to).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transform::{coefficient_count, CoefficientPyramid};

/// Logarithm base for entropy values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    #[serde(rename = "e")]
    Natural,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "10")]
    Ten,
}

impl LogBase {
    pub fn log(&self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Two => x.log2(),
            LogBase::Ten => x.log10(),
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" | "natural" => Ok(LogBase::Natural),
            "2" => Ok(LogBase::Two),
            "10" => Ok(LogBase::Ten),
            other => Err(Error::Validation(format!(
                "unknown log base '{other}' (expected 'e', '2' or '10')"
            ))),
        }
    }
}

impl std::fmt::Display for LogBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LogBase::Natural => write!(f, "e"),
            LogBase::Two => write!(f, "2"),
            LogBase::Ten => write!(f, "10"),
        }
    }
}

/// Divisor `N` applied per level when forming `E(l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelNormalization {
    /// `N = 1`; the default, since `N` cancels in the distribution.
    #[default]
    Unit,
    /// `N = 2l + 1`, the number of orders in the level.
    PerLevelCount,
}

impl LevelNormalization {
    pub fn divisor(&self, l: u32) -> f64 {
        match self {
            LevelNormalization::Unit => 1.0,
            LevelNormalization::PerLevelCount => 2.0 * f64::from(l) + 1.0,
        }
    }
}

/// Knobs for entropy computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheOptions {
    pub log_base: LogBase,
    pub normalization: LevelNormalization,
    /// Normalize `P` over levels `0..=J` (default). When false, `P` is
    /// normalized by the full-band total instead and `SHE(J)` is the partial
    /// entropy of a sub-distribution.
    pub prefix_normalized: bool,
}

impl Default for SheOptions {
    fn default() -> Self {
        SheOptions {
            log_base: LogBase::Natural,
            normalization: LevelNormalization::Unit,
            prefix_normalized: true,
        }
    }
}

/// Energy bookkeeping of one pyramid.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSpectrum {
    l_max: u32,
    detail: Vec<f64>,
    levels: Vec<f64>,
    total: f64,
    probabilities: Vec<f64>,
    normalization: LevelNormalization,
}

impl LevelSpectrum {
    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    /// `E(l,m)`, channel-summed, canonical `(l, m)` order.
    pub fn detail_energies(&self) -> &[f64] {
        &self.detail
    }

    pub fn detail_energy(&self, l: u32, m: i32) -> f64 {
        let lm = crate::legendre::DegreeOrder::new(l, m).expect("|m| <= l");
        self.detail[lm.canonical_index()]
    }

    /// `E(l) = (1/N_l) sum_m E(l,m)`.
    pub fn level_energy(&self, l: u32) -> f64 {
        self.levels[l as usize]
    }

    pub fn level_energies(&self) -> &[f64] {
        &self.levels
    }

    /// `sum_l E(l)`.
    pub fn total_energy(&self) -> f64 {
        self.total
    }

    /// `P(l) = E(l)/total`.
    pub fn probability(&self, l: u32) -> f64 {
        self.probabilities[l as usize]
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn normalization(&self) -> LevelNormalization {
        self.normalization
    }

    /// The divisor `N` applied at level `l`.
    pub fn normalizer(&self, l: u32) -> f64 {
        self.normalization.divisor(l)
    }
}

/// `E(l,m) = sum_channels |S_{l,m}|^2`.
pub fn detail_energy(pyramid: &CoefficientPyramid, l: u32, m: i32) -> Result<f64> {
    if l > pyramid.l_max() {
        return Err(Error::Domain(format!(
            "level {l} beyond band limit {}",
            pyramid.l_max()
        )));
    }
    if m.unsigned_abs() > l {
        return Err(Error::Domain(format!("|m| = {} exceeds l = {l}", m.unsigned_abs())));
    }
    Ok((0..pyramid.channels())
        .map(|c| pyramid.coeff(c, l, m).norm_sqr())
        .sum())
}

fn level_energies(pyramid: &CoefficientPyramid, normalization: LevelNormalization) -> (Vec<f64>, Vec<f64>) {
    let l_max = pyramid.l_max();
    let mut detail = vec![0.0; coefficient_count(l_max)];
    for c in 0..pyramid.channels() {
        for (d, s) in detail.iter_mut().zip(pyramid.channel(c)) {
            *d += s.norm_sqr();
        }
    }
    let mut levels = Vec::with_capacity(l_max as usize + 1);
    for l in 0..=l_max as usize {
        let sum: f64 = detail[l * l..(l + 1) * (l + 1)].iter().sum();
        levels.push(sum / normalization.divisor(l as u32));
    }
    (detail, levels)
}

/// Level energies, total energy, and the level distribution with the unit
/// normalizer. Fails on zero total energy, where the distribution is
/// undefined.
pub fn level_spectrum(pyramid: &CoefficientPyramid) -> Result<LevelSpectrum> {
    level_spectrum_with(pyramid, LevelNormalization::Unit)
}

/// As [`level_spectrum`] with an explicit per-level normalizer.
pub fn level_spectrum_with(
    pyramid: &CoefficientPyramid,
    normalization: LevelNormalization,
) -> Result<LevelSpectrum> {
    let (detail, levels) = level_energies(pyramid, normalization);
    let total: f64 = levels.iter().sum();
    if total == 0.0 {
        return Err(Error::DegenerateInput(
            "zero total energy: level distribution undefined".into(),
        ));
    }
    let probabilities = levels.iter().map(|e| e / total).collect();
    Ok(LevelSpectrum {
        l_max: pyramid.l_max(),
        detail,
        levels,
        total,
        probabilities,
        normalization,
    })
}

fn entropy_of_prefix(levels: &[f64], order: u32, opts: &SheOptions) -> Option<f64> {
    let prefix = &levels[..=order as usize];
    let denominator = if opts.prefix_normalized {
        prefix.iter().sum::<f64>()
    } else {
        levels.iter().sum::<f64>()
    };
    if denominator == 0.0 || prefix.iter().sum::<f64>() == 0.0 {
        return None;
    }
    let mut h = 0.0;
    for &e in prefix {
        if e > 0.0 {
            let p = e / denominator;
            h -= p * opts.log_base.log(p);
        }
    }
    // -0.0 from a single-class distribution reads better as 0
    Some(if h == 0.0 { 0.0 } else { h })
}

/// `SHE(J)` with default options (natural log, prefix-normalized).
/// Fails when levels `0..=order` carry no energy.
pub fn she(pyramid: &CoefficientPyramid, order: u32) -> Result<f64> {
    she_with(pyramid, order, &SheOptions::default())
}

/// As [`she`] with explicit options.
pub fn she_with(pyramid: &CoefficientPyramid, order: u32, opts: &SheOptions) -> Result<f64> {
    if order > pyramid.l_max() {
        return Err(Error::OrderExceedsBandLimit {
            order,
            band_limit: pyramid.l_max(),
        });
    }
    let (_, levels) = level_energies(pyramid, opts.normalization);
    entropy_of_prefix(&levels, order, opts).ok_or_else(|| {
        Error::DegenerateInput(format!("no energy in levels 0..={order}: SHE undefined"))
    })
}

/// The sequence `SHE(0), SHE(1), ..., SHE(l_max)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SheCurve {
    values: Vec<f64>,
    log_base: LogBase,
}

impl SheCurve {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, order: u32) -> f64 {
        self.values[order as usize]
    }

    pub fn l_max(&self) -> u32 {
        self.values.len() as u32 - 1
    }

    pub fn log_base(&self) -> LogBase {
        self.log_base
    }
}

/// `SHE(J)` for every `J <= l_max`; prefixes with no energy yield 0 by
/// convention (they are flagged in the selection trace).
pub fn she_curve(pyramid: &CoefficientPyramid) -> SheCurve {
    she_curve_with(pyramid, &SheOptions::default())
}

/// As [`she_curve`] with explicit options.
pub fn she_curve_with(pyramid: &CoefficientPyramid, opts: &SheOptions) -> SheCurve {
    let (_, levels) = level_energies(pyramid, opts.normalization);
    let values = (0..=pyramid.l_max())
        .map(|j| entropy_of_prefix(&levels, j, opts).unwrap_or(0.0))
        .collect();
    SheCurve {
        values,
        log_base: opts.log_base,
    }
}

/// Stopping rule for [`select_order`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionCriterion {
    #[default]
    Stabilization,
    Flowchart,
}

impl std::str::FromStr for SelectionCriterion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stabilization" => Ok(SelectionCriterion::Stabilization),
            "flowchart" => Ok(SelectionCriterion::Flowchart),
            other => Err(Error::Validation(format!(
                "unknown criterion '{other}' (expected 'stabilization' or 'flowchart')"
            ))),
        }
    }
}

impl std::fmt::Display for SelectionCriterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SelectionCriterion::Stabilization => write!(f, "stabilization"),
            SelectionCriterion::Flowchart => write!(f, "flowchart"),
        }
    }
}

/// Per-order record of the selection scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub order: u32,
    pub she: f64,
    /// `SHE(J) - SHE(J-1)`; absent at `J = 0`.
    pub delta: Option<f64>,
    /// Levels `0..=J` carried no energy (SHE reported as 0 by convention).
    pub degenerate_prefix: bool,
    /// `|delta| < epsilon`.
    pub stable: bool,
}

/// Outcome of the order-selection scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderSelectionReport {
    pub selected_order: u32,
    pub criterion: SelectionCriterion,
    pub epsilon: f64,
    pub window: u32,
    pub log_base: LogBase,
    pub trace: Vec<TraceEntry>,
}

/// Select the reconstruction order with the stabilization criterion and
/// default entropy options.
pub fn select_order(
    pyramid: &CoefficientPyramid,
    epsilon: f64,
    window: u32,
) -> Result<OrderSelectionReport> {
    select_order_with(
        pyramid,
        epsilon,
        window,
        SelectionCriterion::Stabilization,
        &SheOptions::default(),
    )
}

/// Select the reconstruction order with an explicit criterion and options.
pub fn select_order_with(
    pyramid: &CoefficientPyramid,
    epsilon: f64,
    window: u32,
    criterion: SelectionCriterion,
    opts: &SheOptions,
) -> Result<OrderSelectionReport> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::Validation(format!("epsilon must be > 0, got {epsilon}")));
    }
    if window < 1 {
        return Err(Error::Validation("window must be >= 1".into()));
    }
    if pyramid.total_energy() == 0.0 {
        return Err(Error::DegenerateInput(
            "zero total energy: nothing to select an order for".into(),
        ));
    }
    let (_, levels) = level_energies(pyramid, opts.normalization);
    let curve = she_curve_with(pyramid, opts);
    let values = curve.values();
    let l_max = pyramid.l_max();

    let mut cumulative = 0.0;
    let trace: Vec<TraceEntry> = (0..=l_max as usize)
        .map(|j| {
            cumulative += levels[j];
            let delta = (j > 0).then(|| values[j] - values[j - 1]);
            TraceEntry {
                order: j as u32,
                she: values[j],
                delta,
                degenerate_prefix: cumulative == 0.0,
                stable: delta.is_some_and(|d| d.abs() < epsilon),
            }
        })
        .collect();

    let responds = |v: f64| v.abs() >= epsilon;
    let selected_order = match criterion {
        SelectionCriterion::Stabilization => {
            if !values.iter().copied().any(responds) {
                // single resolvable occupied level: flat curve, trivially stable
                0
            } else {
                let mut found = None;
                'outer: for j_star in 0..=l_max {
                    if j_star + window > l_max {
                        break;
                    }
                    if !values[..=j_star as usize].iter().copied().any(responds) {
                        continue;
                    }
                    for j in (j_star + 1)..=(j_star + window) {
                        if !trace[j as usize].stable {
                            continue 'outer;
                        }
                    }
                    found = Some(j_star);
                    break;
                }
                found.ok_or_else(|| {
                    Error::NoConvergence(format!(
                        "no order up to {l_max} held |delta SHE| < {epsilon} for {window} steps"
                    ))
                })?
            }
        }
        SelectionCriterion::Flowchart => {
            let first = values
                .iter()
                .position(|&v| responds(v))
                .ok_or_else(|| {
                    Error::NoConvergence("SHE never responded: flowchart rule cannot fire".into())
                })? as u32;
            if first + 2 > l_max {
                return Err(Error::NoConvergence(format!(
                    "flowchart order {} exceeds band limit {l_max}",
                    first + 2
                )));
            }
            first + 2
        }
    };

    Ok(OrderSelectionReport {
        selected_order,
        criterion,
        epsilon,
        window,
        log_base: opts.log_base,
        trace,
    })
}
