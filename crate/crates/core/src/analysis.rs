//! Threshold search, white-noise robustness, channel classification, and
//! reference-table reproduction.
//!
//! Three value conventions coexist and are kept separate on purpose:
//! - "fixed": both parties at the canonical observables (the reference
//!   tables are stated for these);
//! - "reduced": Alice at the canonical axes, Bob re-optimized in closed
//!   form; for a channel on one side this equals the compatibility sum of
//!   the dual images, which is what ties the Bell side to the
//!   incompatibility side;
//! - "optimized": full see-saw over both parties. For anisotropic noise the
//!   optimized value can exceed both (dephasing keeps the zz correlation
//!   intact, so aligned strategies reach the local bound 6 at any noise
//!   level).

use crate::bell::{
    b_n, bob_optimal, canonical_ebi_assignment, chsh, chsh_horodecki_max, ebi, evaluate, seesaw,
    FunctionalSelector, SeesawOptions,
};
use crate::channels::{apply_to_subsystem, to_bloch_affine, ChannelFamily, Side};
use crate::error::{Error, Result};
use crate::measurements::n_ibc_classify;
use crate::states::{bell_state, TwoQubitState};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Which observables a value computation may move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Canonical observables on both sides.
    Fixed,
    /// See-saw over both sides.
    Optimized,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fixed" => Ok(Mode::Fixed),
            "optimized" => Ok(Mode::Optimized),
            other => Err(Error::Malformed(format!(
                "unknown mode `{other}` (expected fixed or optimized)"
            ))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Mode::Fixed => "fixed",
            Mode::Optimized => "optimized",
        }
    }
}

/// Side of the threshold at which the channel breaks the correlation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BreakingDirection {
    /// Breaking for parameters below the threshold.
    Below,
    /// Breaking for parameters above the threshold.
    Above,
}

impl BreakingDirection {
    pub fn label(&self) -> &'static str {
        match self {
            BreakingDirection::Below => "below",
            BreakingDirection::Above => "above",
        }
    }
}

fn probe_state(family: ChannelFamily, p: f64) -> Result<TwoQubitState> {
    apply_to_subsystem(&family.construct(p)?, &bell_state(), Side::A)
}

/// Elegant-functional value at the canonical observables after the channel
/// acts on the first qubit. First-principles counterpart of the closed
/// forms in [`crate::bell::table1_value`].
pub fn ebi_fixed_value(family: ChannelFamily, p: f64) -> Result<f64> {
    evaluate(&probe_state(family, p)?, &ebi(), &canonical_ebi_assignment())
}

/// CHSH maximum on the channel-degraded probe (closed-form optimum).
pub fn chsh_max_value(family: ChannelFamily, p: f64) -> Result<f64> {
    Ok(chsh_horodecki_max(&probe_state(family, p)?))
}

/// Elegant-functional value with Alice fixed to the canonical axes and Bob
/// re-optimized; identical to the dual-image compatibility sum.
pub fn ebi_reduced_value(family: ChannelFamily, p: f64) -> Result<f64> {
    let alice = canonical_ebi_assignment().alice;
    Ok(bob_optimal(&probe_state(family, p)?, &ebi(), &alice)?.0)
}

/// Fixed-mode value of the N-setting functional under channels that scale
/// the correlation matrix isotropically: the anticommuting-construction
/// optimum `2^{N-1} sqrt(N)` times the scale factor.
pub fn bn_fixed_value(family: ChannelFamily, p: f64, n: usize) -> Result<f64> {
    b_n(n)?;
    let map = to_bloch_affine(&family.construct(p)?);
    let scale = map.r.isotropic_scale(1e-10).ok_or_else(|| {
        Error::Unsupported(format!(
            "fixed-mode bn:{n} values need a channel acting isotropically on \
             the Bloch ball; {family} at p = {p} is anisotropic"
        ))
    })?;
    let cols = (1usize << (n - 1)) as f64;
    Ok(scale.abs() * cols * (n as f64).sqrt())
}

/// Search configuration for [`threshold`].
#[derive(Debug, Clone, Copy)]
pub struct ThresholdOptions {
    /// Grid size of the monotonicity pre-check.
    pub samples: usize,
    /// See-saw settings used in optimized mode.
    pub seesaw: SeesawOptions,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        ThresholdOptions {
            samples: 33,
            seesaw: SeesawOptions::default(),
        }
    }
}

/// Outcome of a threshold bisection.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub family: String,
    pub functional: String,
    pub mode: String,
    pub threshold: f64,
    pub breaking_direction: String,
    pub bracket_width: f64,
    pub value_at_threshold: f64,
    /// False when the value never crosses the bound inside [0, 1]; the
    /// threshold then reports the breaking endpoint.
    pub crossed: bool,
}

fn value_function(
    family: ChannelFamily,
    selector: FunctionalSelector,
    mode: Mode,
    opts: &ThresholdOptions,
) -> Box<dyn Fn(f64) -> Result<f64> + Sync + '_> {
    match (mode, selector) {
        (Mode::Fixed, FunctionalSelector::Ebi) => {
            Box::new(move |p| ebi_fixed_value(family, p))
        }
        (Mode::Fixed, FunctionalSelector::Chsh) => {
            Box::new(move |p| chsh_max_value(family, p))
        }
        (Mode::Fixed, FunctionalSelector::Bn(n)) => {
            Box::new(move |p| bn_fixed_value(family, p, n))
        }
        (Mode::Optimized, selector) => Box::new(move |p| {
            let state = probe_state(family, p)?;
            Ok(seesaw(&state, &selector.functional(), &opts.seesaw)?.value)
        }),
    }
}

/// Bisects the channel parameter until the Bell value crosses the
/// functional's noncontextual bound. The sampled profile must be monotone.
pub fn threshold(
    family: ChannelFamily,
    selector: FunctionalSelector,
    mode: Mode,
    tol: f64,
    opts: &ThresholdOptions,
) -> Result<ThresholdReport> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::ParamOutOfRange {
            name: "tol",
            value: tol,
            min: f64::MIN_POSITIVE,
            max: 1.0,
        });
    }
    let bound = selector.functional().nc_bound();
    let value = value_function(family, selector, mode, opts);

    let samples = opts.samples.max(3);
    let mut profile = Vec::with_capacity(samples);
    for i in 0..samples {
        let p = i as f64 / (samples - 1) as f64;
        profile.push(value(p)?);
    }
    let slack = 1e-7;
    let increasing = profile.windows(2).all(|w| w[1] >= w[0] - slack);
    let decreasing = profile.windows(2).all(|w| w[1] <= w[0] + slack);
    if !increasing && !decreasing {
        return Err(Error::NonMonotoneProfile(format!(
            "{} {} in {} mode",
            family,
            selector.label(),
            mode.label()
        )));
    }
    let direction = if increasing {
        BreakingDirection::Below
    } else {
        BreakingDirection::Above
    };

    let f = |p: f64| -> Result<f64> { Ok(value(p)? - bound) };
    let eps = 1e-9;
    let f0 = f(0.0)?;
    let f1 = f(1.0)?;

    let report = |threshold: f64, bracket: f64, crossed: bool, value_at: f64| ThresholdReport {
        family: family.code().into(),
        functional: selector.label(),
        mode: mode.label().into(),
        threshold,
        breaking_direction: direction.label().into(),
        bracket_width: bracket,
        value_at_threshold: value_at,
        crossed,
    };

    match direction {
        BreakingDirection::Below => {
            if f1 <= eps {
                return Ok(report(1.0, 0.0, false, f1 + bound));
            }
            if f0 > eps {
                return Ok(report(0.0, 0.0, false, f0 + bound));
            }
        }
        BreakingDirection::Above => {
            if f0 <= eps {
                return Ok(report(0.0, 0.0, false, f0 + bound));
            }
            if f1 > eps {
                return Ok(report(1.0, 0.0, false, f1 + bound));
            }
        }
    }

    // Invariant: f changes sign (within eps) across [lo, hi].
    let mut lo = 0.0;
    let mut hi = 1.0;
    let breaking_sign_at_lo = matches!(direction, BreakingDirection::Below);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        let breaking = fm <= eps;
        if breaking == breaking_sign_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p_star = 0.5 * (lo + hi);
    Ok(report(p_star, hi - lo, true, value(p_star)?))
}

/// `max(0, 1 - 4/B)`: the largest white-noise admixture before the value
/// drops to the noncontextual bound 4.
pub fn white_noise_robustness(b: f64) -> Result<f64> {
    if b < 0.0 || !b.is_finite() {
        return Err(Error::ParamOutOfRange {
            name: "B",
            value: b,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    if b <= 4.0 {
        Ok(0.0)
    } else {
        Ok(1.0 - 4.0 / b)
    }
}

/// One sampled point of a robustness sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RobustnessPoint {
    pub p: f64,
    pub value: f64,
    pub robustness: f64,
}

/// Robustness along a parameter grid; fixed mode evaluates the canonical
/// observables, optimized mode runs the see-saw per grid point.
pub fn robustness_curve(
    family: ChannelFamily,
    grid: &[f64],
    mode: Mode,
    opts: &ThresholdOptions,
) -> Result<Vec<RobustnessPoint>> {
    grid.par_iter()
        .map(|&p| {
            let value = match mode {
                Mode::Fixed => ebi_fixed_value(family, p)?,
                Mode::Optimized => {
                    let state = probe_state(family, p)?;
                    seesaw(&state, &ebi(), &opts.seesaw)?.value
                }
            };
            Ok(RobustnessPoint {
                p,
                value,
                robustness: white_noise_robustness(value)?,
            })
        })
        .collect()
}

/// Breaking flags for one channel at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyFlags {
    pub chsh_nbc: bool,
    pub ebi_cbc: bool,
    pub two_ibc: bool,
    pub three_ibc: bool,
}

/// Classification of a channel: Bell-side values plus dual-side flags.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Classification {
    pub family: String,
    pub p: f64,
    /// CHSH maximum on the degraded probe.
    pub chsh_value: f64,
    /// Canonical-Alice, Bob-optimized elegant value; equals the dual-image
    /// compatibility sum.
    pub ebi_reduced_value: f64,
    pub flags: ClassifyFlags,
}

const FLAG_EPS: f64 = 1e-9;

/// Computes all four breaking flags at the maximally entangled probe.
pub fn classify(family: ChannelFamily, p: f64) -> Result<Classification> {
    let chsh_value = chsh_max_value(family, p)?;
    let ebi_reduced = ebi_reduced_value(family, p)?;
    let channel = family.construct(p)?;
    let flags = ClassifyFlags {
        chsh_nbc: chsh_value <= chsh().nc_bound() + FLAG_EPS,
        ebi_cbc: ebi_reduced <= ebi().nc_bound() + FLAG_EPS,
        two_ibc: n_ibc_classify(&channel, 2)?,
        three_ibc: n_ibc_classify(&channel, 3)?,
    };
    Ok(Classification {
        family: family.code().into(),
        p,
        chsh_value,
        ebi_reduced_value: ebi_reduced,
        flags,
    })
}

/// Classification swept over a parameter grid, in grid order.
pub fn classification_profile(family: ChannelFamily, grid: &[f64]) -> Result<Vec<Classification>> {
    grid.par_iter().map(|&p| classify(family, p)).collect()
}

/// Identifier of a reproducible reference table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableId {
    I,
    II,
    III,
}

impl TableId {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(TableId::I),
            "II" | "2" => Ok(TableId::II),
            "III" | "3" => Ok(TableId::III),
            other => Err(Error::Malformed(format!(
                "unknown table `{other}` (expected I, II, or III)"
            ))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            TableId::I => "I",
            TableId::II => "II",
            TableId::III => "III",
        }
    }
}

/// One reproduced table cell: recomputed value next to the reference form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableCell {
    pub row: String,
    pub column: String,
    pub p: Option<f64>,
    pub computed: f64,
    pub reference: f64,
    pub deviation: f64,
    /// Whether the cell participates in the pass/fail gate.
    pub gated: bool,
    pub within_tolerance: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A fully reproduced reference table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableReport {
    pub table: String,
    pub tolerance: f64,
    pub cells: Vec<TableCell>,
    pub max_gated_deviation: f64,
    pub all_within_tolerance: bool,
}

fn finish_report(table: TableId, tolerance: f64, cells: Vec<TableCell>) -> TableReport {
    let max_gated_deviation = cells
        .iter()
        .filter(|c| c.gated)
        .map(|c| c.deviation)
        .fold(0.0, f64::max);
    let all_within_tolerance = cells.iter().all(|c| !c.gated || c.within_tolerance);
    TableReport {
        table: table.label().into(),
        tolerance,
        cells,
        max_gated_deviation,
        all_within_tolerance,
    }
}

const TABLE_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

fn reproduce_table_i() -> Result<TableReport> {
    let tolerance = 1e-9;
    let canonical = canonical_ebi_assignment();
    let mut cells = Vec::new();
    for family in ChannelFamily::ALL {
        for side in [Side::A, Side::B, Side::Both] {
            for &p in &TABLE_GRID {
                let state = apply_to_subsystem(&family.construct(p)?, &bell_state(), side)?;
                let computed = evaluate(&state, &ebi(), &canonical)?;
                let reference = crate::bell::table1_value(family, p, side)?;
                let deviation = (computed - reference).abs();
                let note = if family == ChannelFamily::Loss
                    && side == Side::Both
                    && deviation > tolerance
                {
                    Some(
                        "reference form assumes lost weight carries no correlations; \
                         the trace-preserving replacement model keeps a (1-p)^2 zz term"
                            .into(),
                    )
                } else {
                    None
                };
                cells.push(TableCell {
                    row: family.code().into(),
                    column: side.label().into(),
                    p: Some(p),
                    computed,
                    reference,
                    deviation,
                    gated: true,
                    within_tolerance: deviation <= tolerance,
                    note,
                });
            }
        }
    }
    Ok(finish_report(TableId::I, tolerance, cells))
}

fn reproduce_table_ii() -> Result<TableReport> {
    let tolerance = 5e-4;
    let opts = ThresholdOptions::default();
    let sqrt_half = std::f64::consts::FRAC_1_SQRT_2;
    let inv_sqrt3 = 1.0 / 3.0_f64.sqrt();
    // (family, chsh reference, chsh gated, ebi reference, ebi gated)
    let rows = [
        (ChannelFamily::Depolarizing, sqrt_half, true, inv_sqrt3, true),
        (ChannelFamily::AmplitudeDamping, 0.5, true, 0.4262, true),
        (
            ChannelFamily::Loss,
            (5.0_f64.sqrt() - 1.0) / 2.0,
            false,
            inv_sqrt3,
            true,
        ),
        (
            ChannelFamily::Dephasing,
            sqrt_half,
            false,
            0.6339,
            true,
        ),
    ];
    let mut cells = Vec::new();
    for (family, chsh_ref, chsh_gated, ebi_ref, ebi_gated) in rows {
        let chsh_report = threshold(family, FunctionalSelector::Chsh, Mode::Fixed, 1e-7, &opts)?;
        let chsh_note = if chsh_gated {
            None
        } else {
            Some(
                "literature value quoted with conventions this artifact cannot \
                 reproduce from its own state and channel definitions; the \
                 computed column shows the maximally-entangled-probe result"
                    .to_string(),
            )
        };
        cells.push(TableCell {
            row: family.code().into(),
            column: "chsh".into(),
            p: None,
            computed: chsh_report.threshold,
            reference: chsh_ref,
            deviation: (chsh_report.threshold - chsh_ref).abs(),
            gated: chsh_gated,
            within_tolerance: (chsh_report.threshold - chsh_ref).abs() <= tolerance,
            note: chsh_note,
        });

        let ebi_report = threshold(family, FunctionalSelector::Ebi, Mode::Fixed, 1e-7, &opts)?;
        let ebi_note = if family == ChannelFamily::Dephasing {
            Some(
                "breaking direction is above: the value meets the bound for \
                 parameters at or beyond the threshold"
                    .to_string(),
            )
        } else {
            None
        };
        cells.push(TableCell {
            row: family.code().into(),
            column: "ebi".into(),
            p: None,
            computed: ebi_report.threshold,
            reference: ebi_ref,
            deviation: (ebi_report.threshold - ebi_ref).abs(),
            gated: ebi_gated,
            within_tolerance: (ebi_report.threshold - ebi_ref).abs() <= tolerance,
            note: ebi_note,
        });
    }
    Ok(finish_report(TableId::II, tolerance, cells))
}

fn reproduce_table_iii() -> Result<TableReport> {
    let tolerance = 1e-3;
    let inv_sqrt3 = 1.0 / 3.0_f64.sqrt();
    let grid = [0.0, 0.40, inv_sqrt3, 0.70, 1.0];
    let labels = ["0.00", "0.40", "1/sqrt(3)", "0.70", "1.00"];
    let reference_rows = [
        (ChannelFamily::Depolarizing, [0.000, 0.000, 0.000, 0.175, 0.423]),
        (ChannelFamily::AmplitudeDamping, [0.000, 0.000, 0.174, 0.270, 0.423]),
        (ChannelFamily::Loss, [0.000, 0.000, 0.000, 0.175, 0.423]),
        (ChannelFamily::Dephasing, [0.423, 0.213, 0.061, 0.000, 0.000]),
    ];
    let mut cells = Vec::new();
    for (family, refs) in reference_rows {
        let points = robustness_curve(family, &grid, Mode::Fixed, &ThresholdOptions::default())?;
        for ((point, reference), label) in points.into_iter().zip(refs).zip(labels) {
            let deviation = (point.robustness - reference).abs();
            cells.push(TableCell {
                row: family.code().into(),
                column: label.into(),
                p: Some(point.p),
                computed: point.robustness,
                reference,
                deviation,
                gated: true,
                within_tolerance: deviation <= tolerance,
                note: None,
            });
        }
    }
    Ok(finish_report(TableId::III, tolerance, cells))
}

/// Recomputes every cell of the requested reference table from first
/// principles and reports the deviation from the closed forms.
pub fn reproduce_table(which: TableId) -> Result<TableReport> {
    match which {
        TableId::I => reproduce_table_i(),
        TableId::II => reproduce_table_ii(),
        TableId::III => reproduce_table_iii(),
    }
}

/// Rounds to `digits` significant decimal digits; used for printed output.
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(digits - 1 - magnitude);
    (x * factor).round() / factor
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn robustness_formula() {
        let sqrt3 = 3.0_f64.sqrt();
        assert_close(
            white_noise_robustness(4.0 * sqrt3).unwrap(),
            1.0 - 1.0 / sqrt3,
            1e-12,
        );
        assert_close(white_noise_robustness(4.0).unwrap(), 0.0, 0.0);
        assert_close(white_noise_robustness(0.0).unwrap(), 0.0, 0.0);
        assert_close(
            white_noise_robustness(4.0 * sqrt3 * 0.7).unwrap(),
            1.0 - 1.0 / (sqrt3 * 0.7),
            1e-12,
        );
        assert!(white_noise_robustness(-0.1).is_err());
    }

    #[test]
    fn fixed_thresholds_match_closed_forms() {
        let opts = ThresholdOptions::default();
        let report = threshold(
            ChannelFamily::Depolarizing,
            FunctionalSelector::Ebi,
            Mode::Fixed,
            1e-8,
            &opts,
        )
        .unwrap();
        assert_close(report.threshold, 1.0 / 3.0_f64.sqrt(), 1e-7);
        assert_eq!(report.breaking_direction, "below");
        assert!(report.crossed);
        assert!(report.bracket_width <= 1e-8);

        let report = threshold(
            ChannelFamily::Dephasing,
            FunctionalSelector::Ebi,
            Mode::Fixed,
            1e-8,
            &opts,
        )
        .unwrap();
        assert_close(report.threshold, (3.0 - 3.0_f64.sqrt()) / 2.0, 1e-7);
        assert_eq!(report.breaking_direction, "above");

        let report = threshold(
            ChannelFamily::AmplitudeDamping,
            FunctionalSelector::Chsh,
            Mode::Fixed,
            1e-8,
            &opts,
        )
        .unwrap();
        assert_close(report.threshold, 0.5, 1e-7);
    }

    #[test]
    fn bn_fixed_thresholds() {
        let opts = ThresholdOptions::default();
        for n in 2..=5 {
            let report = threshold(
                ChannelFamily::Depolarizing,
                FunctionalSelector::Bn(n),
                Mode::Fixed,
                1e-8,
                &opts,
            )
            .unwrap();
            assert_close(report.threshold, 1.0 / (n as f64).sqrt(), 1e-7);
        }
        assert!(bn_fixed_value(ChannelFamily::Dephasing, 0.3, 3).is_err());
    }

    #[test]
    fn classify_examples() {
        let c = classify(ChannelFamily::Depolarizing, 0.65).unwrap();
        assert!(c.flags.chsh_nbc);
        assert!(!c.flags.ebi_cbc);
        assert!(c.flags.two_ibc);
        assert!(!c.flags.three_ibc);

        let c = classify(ChannelFamily::Depolarizing, 0.5).unwrap();
        assert!(c.flags.chsh_nbc && c.flags.ebi_cbc && c.flags.two_ibc && c.flags.three_ibc);

        let c = classify(ChannelFamily::Depolarizing, 1.0).unwrap();
        assert!(!c.flags.chsh_nbc && !c.flags.ebi_cbc && !c.flags.two_ibc && !c.flags.three_ibc);
    }

    #[test]
    fn table_i_gates_loss_both_placement() {
        let report = reproduce_table(TableId::I).unwrap();
        assert_eq!(report.cells.len(), 60);
        let bad: Vec<&TableCell> = report
            .cells
            .iter()
            .filter(|c| !c.within_tolerance)
            .collect();
        // The trace-preserving loss model deviates from the reference closed
        // form exactly on the both-sides placement away from p = 1.
        assert!(bad.iter().all(|c| c.row == "lc" && c.column == "both"));
        assert_eq!(bad.len(), 4);
        for cell in bad {
            let p = cell.p.unwrap();
            let expected_gap = 4.0 * (1.0 - p) * (1.0 - p) / 3.0_f64.sqrt();
            assert_close(cell.deviation, expected_gap, 1e-9);
            assert!(cell.note.is_some());
        }
    }

    #[test]
    fn table_iii_reproduces() {
        let report = reproduce_table(TableId::III).unwrap();
        assert_eq!(report.cells.len(), 20);
        assert!(report.all_within_tolerance, "{report:#?}");
    }

    #[test]
    fn rounding_to_significant_digits() {
        assert_eq!(round_sig(6.928203230275509, 9), 6.92820323);
        assert_eq!(round_sig(0.5773502691896258, 9), 0.577350269);
        assert_eq!(round_sig(0.0, 9), 0.0);
        assert_eq!(round_sig(-0.4262, 9), -0.4262);
    }
}
