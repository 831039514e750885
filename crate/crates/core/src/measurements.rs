//! Dichotomic qubit POVMs, analytic joint-measurability conditions for
//! unbiased effects, and a numerical global-POVM feasibility oracle.
//!
//! The oracle runs Dykstra's alternating projections between the product of
//! PSD cones (one per global-POVM effect) and the affine subspace fixing the
//! marginals and completeness. Feasibility is declared when the affine
//! violation of the PSD-feasible iterate drops below tolerance; a stalled
//! residual above tolerance is read as infeasibility. Alternating
//! projections cannot certify the exact boundary, so unbiased sets sitting
//! within 1e-6 of the analytic compatibility boundary are reported as
//! marginal instead of being forced to a verdict.

use crate::channels::{dual_apply_effect, to_bloch_affine, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{
    eigenvalues_hermitian, kron, pauli_compose, psd_project, sigma_x, sigma_y, sigma_z, vec3,
    ComplexMatrix, ComplexMatrix2, ComplexMatrix4, RealVector3, TOL,
};
use serde::{Deserialize, Serialize};

/// Largest supported measurement-set size (the global POVM has `2^N` effects).
pub const MAX_MEASUREMENTS: usize = 6;

/// A qubit effect `c*I + m.sigma` with `0 <= c - |m|` and `c + |m| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DichotomicEffect {
    c: f64,
    m: RealVector3,
}

impl DichotomicEffect {
    pub fn new(c: f64, m: RealVector3) -> Result<Self> {
        let norm = vec3::norm(&m);
        if !(c - norm >= -1e-9 && c + norm <= 1.0 + 1e-9) || !c.is_finite() {
            return Err(Error::InvalidEffect(format!(
                "operator {c:.6} I + m.sigma with |m| = {norm:.6} is not between 0 and I"
            )));
        }
        Ok(DichotomicEffect { c, m })
    }

    /// Skips validation; for images of trusted operations.
    pub fn new_unchecked(c: f64, m: RealVector3) -> Self {
        DichotomicEffect { c, m }
    }

    /// Unbiased effect `(I + a.sigma)/2` for an observable vector `|a| <= 1`.
    pub fn unbiased(a: &RealVector3) -> Result<Self> {
        if vec3::norm(a) > 1.0 + 1e-12 {
            return Err(Error::InvalidEffect(format!(
                "observable vector norm {} exceeds 1",
                vec3::norm(a)
            )));
        }
        Ok(DichotomicEffect {
            c: 0.5,
            m: vec3::scale(a, 0.5),
        })
    }

    /// Sharp unbiased effect along a unit direction.
    pub fn sharp(direction: &RealVector3) -> Result<Self> {
        if (vec3::norm(direction) - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidEffect(
                "sharp effects need a unit direction".into(),
            ));
        }
        Self::unbiased(direction)
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn m(&self) -> &RealVector3 {
        &self.m
    }

    /// Observable Bloch vector `2 m`; for unbiased effects this is the `a`
    /// entering the analytic compatibility conditions.
    pub fn observable_vector(&self) -> RealVector3 {
        vec3::scale(&self.m, 2.0)
    }

    pub fn is_unbiased(&self, tol: f64) -> bool {
        (self.c - 0.5).abs() <= tol
    }

    pub fn operator(&self) -> ComplexMatrix2 {
        pauli_compose(self.c, self.m)
    }

    /// `I - E`.
    pub fn complement(&self) -> DichotomicEffect {
        DichotomicEffect {
            c: 1.0 - self.c,
            m: vec3::scale(&self.m, -1.0),
        }
    }

    pub fn is_valid(&self) -> bool {
        let norm = vec3::norm(&self.m);
        self.c - norm >= -1e-9 && self.c + norm <= 1.0 + 1e-9
    }
}

/// A list of dichotomic POVMs, each stored as (effect, complement).
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSet {
    povms: Vec<(DichotomicEffect, DichotomicEffect)>,
}

impl MeasurementSet {
    /// Builds the set from the `+1`-outcome effects; complements are derived.
    pub fn from_effects(effects: Vec<DichotomicEffect>) -> Result<Self> {
        for (i, e) in effects.iter().enumerate() {
            if !e.is_valid() {
                return Err(Error::InvalidEffect(format!("effect {i} is out of range")));
            }
        }
        Ok(MeasurementSet {
            povms: effects.into_iter().map(|e| (e, e.complement())).collect(),
        })
    }

    /// Builds the set from explicit pairs, checking each resolves identity.
    pub fn from_pairs(pairs: Vec<(DichotomicEffect, DichotomicEffect)>) -> Result<Self> {
        for (i, (plus, minus)) in pairs.iter().enumerate() {
            let sum_c = plus.c + minus.c;
            let sum_m = vec3::add(&plus.m, &minus.m);
            let deviation = ((sum_c - 1.0).powi(2) + vec3::dot(&sum_m, &sum_m)).sqrt();
            if deviation > 1e-12 {
                return Err(Error::PovmNotNormalized {
                    index: i,
                    deviation,
                });
            }
        }
        Ok(MeasurementSet { povms: pairs })
    }

    pub fn len(&self) -> usize {
        self.povms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.povms.is_empty()
    }

    pub fn povms(&self) -> &[(DichotomicEffect, DichotomicEffect)] {
        &self.povms
    }

    pub fn all_unbiased(&self, tol: f64) -> bool {
        self.povms.iter().all(|(plus, _)| plus.is_unbiased(tol))
    }
}

/// JSON record for one measurement's `+1` effect.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EffectJson {
    pub c: f64,
    pub m: [f64; 3],
}

impl MeasurementSet {
    pub fn from_json(records: &[EffectJson]) -> Result<Self> {
        let effects = records
            .iter()
            .map(|r| DichotomicEffect::new(r.c, r.m))
            .collect::<Result<Vec<_>>>()?;
        MeasurementSet::from_effects(effects)
    }

    pub fn to_json(&self) -> Vec<EffectJson> {
        self.povms
            .iter()
            .map(|(plus, _)| EffectJson {
                c: plus.c,
                m: plus.m,
            })
            .collect()
    }
}

/// LHS of the unbiased-pair compatibility condition `|a1+a2| + |a1-a2|`.
pub fn pairwise_sum(a1: &RealVector3, a2: &RealVector3) -> f64 {
    vec3::norm(&vec3::add(a1, a2)) + vec3::norm(&vec3::sub(a1, a2))
}

/// Unbiased pair `(I + a_i.sigma)/2` jointly measurable iff
/// `|a1+a2| + |a1-a2| <= 2`.
pub fn pairwise_compat_unbiased(a1: &RealVector3, a2: &RealVector3) -> bool {
    pairwise_sum(a1, a2) <= 2.0 + 1e-12
}

/// LHS of the unbiased-triple compatibility condition: the sum of
/// `|a1 +- a2 +- a3|` over the four sign patterns with leading `+`.
pub fn triple_sum(a1: &RealVector3, a2: &RealVector3, a3: &RealVector3) -> f64 {
    let mut total = 0.0;
    for (s2, s3) in [(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0)] {
        let v = vec3::add(a1, &vec3::add(&vec3::scale(a2, s2), &vec3::scale(a3, s3)));
        total += vec3::norm(&v);
    }
    total
}

/// Unbiased triple jointly measurable iff the four-pattern sum is `<= 4`.
pub fn triple_compat_unbiased(a1: &RealVector3, a2: &RealVector3, a3: &RealVector3) -> bool {
    triple_sum(a1, a2, a3) <= 4.0 + 1e-12
}

/// `1/sqrt(N)`: the N-wise compatibility threshold for equal-strength
/// unbiased effects along mutually anticommuting directions.
pub fn anticommuting_threshold(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::ParamOutOfRange {
            name: "N",
            value: n as f64,
            min: 2.0,
            max: f64::INFINITY,
        });
    }
    Ok(1.0 / (n as f64).sqrt())
}

/// Mutually anticommuting sharp qubit directions; only pairs and triples
/// exist on the Bloch sphere.
pub fn anticommuting_qubit_directions(n: usize) -> Result<Vec<RealVector3>> {
    match n {
        2 => Ok(vec![[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]),
        3 => Ok(vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]),
        _ => Err(Error::Unsupported(format!(
            "no {n} mutually anticommuting qubit directions exist (max 3)"
        ))),
    }
}

/// Mutually anticommuting Hermitian involutions on a four-dimensional
/// system; up to five exist, which hosts the N = 4, 5 worst-case sets.
pub fn anticommuting_generators_dim4(n: usize) -> Result<Vec<ComplexMatrix4>> {
    if !(2..=5).contains(&n) {
        return Err(Error::Unsupported(format!(
            "dimension-4 anticommuting generator sets exist for 2 <= N <= 5, got {n}"
        )));
    }
    let id = ComplexMatrix2::identity();
    let all = [
        kron(&sigma_x(), &id),
        kron(&sigma_y(), &id),
        kron(&sigma_z(), &sigma_x()),
        kron(&sigma_z(), &sigma_y()),
        kron(&sigma_z(), &sigma_z()),
    ];
    Ok(all[..n].to_vec())
}

/// Equal-strength unbiased effect pairs `(I +- p G_k)/2` along the
/// dimension-4 anticommuting generators.
pub fn anticommuting_effect_pairs_dim4(
    n: usize,
    strength: f64,
) -> Result<Vec<(ComplexMatrix4, ComplexMatrix4)>> {
    if !(0.0..=1.0).contains(&strength) {
        return Err(Error::ParamOutOfRange {
            name: "strength",
            value: strength,
            min: 0.0,
            max: 1.0,
        });
    }
    let generators = anticommuting_generators_dim4(n)?;
    let id = ComplexMatrix4::identity();
    Ok(generators
        .into_iter()
        .map(|g| {
            let plus = id.add(&g.scale(strength)).scale(0.5);
            let minus = id.sub(&g.scale(strength)).scale(0.5);
            (plus, minus)
        })
        .collect())
}

/// A global POVM over `{+1,-1}^n`. Outcome strings are indexed by bitmask:
/// bit `k` of the index is 0 for outcome `+1` of measurement `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalPovm<const D: usize> {
    pub n: usize,
    pub effects: Vec<ComplexMatrix<D>>,
}

impl<const D: usize> GlobalPovm<D> {
    /// k-th marginal: sums over all other outcome indices.
    pub fn marginal(&self, k: usize) -> Result<(ComplexMatrix<D>, ComplexMatrix<D>)> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange {
                what: "measurement",
                index: k,
                size: self.n,
            });
        }
        let mut plus = ComplexMatrix::<D>::zero();
        let mut minus = ComplexMatrix::<D>::zero();
        for (s, effect) in self.effects.iter().enumerate() {
            if s & (1 << k) == 0 {
                plus = plus.add(effect);
            } else {
                minus = minus.add(effect);
            }
        }
        Ok((plus, minus))
    }

    pub fn completeness_defect(&self) -> f64 {
        let mut sum = ComplexMatrix::<D>::zero();
        for e in &self.effects {
            sum = sum.add(e);
        }
        sum.sub(&ComplexMatrix::<D>::identity()).norm()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.effects
            .iter()
            .map(|e| {
                eigenvalues_hermitian(&e.hermitize(), &TOL)
                    .map(|v| v[D - 1])
                    .unwrap_or(f64::NEG_INFINITY)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Verdict of the feasibility search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum JmVerdict {
    Feasible,
    Infeasible,
    /// Too close to the compatibility boundary to decide numerically.
    Marginal,
}

/// Options for the alternating-projection search.
#[derive(Debug, Clone, Copy)]
pub struct JmOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for JmOptions {
    fn default() -> Self {
        JmOptions {
            tol: 1e-8,
            max_iter: 40_000,
        }
    }
}

/// Result of a joint-measurability query.
#[derive(Debug, Clone)]
pub struct JmReport<const D: usize> {
    pub verdict: JmVerdict,
    /// Affine (marginal + completeness) violation of the last PSD iterate.
    pub residual: f64,
    pub iterations: usize,
    pub witness: Option<GlobalPovm<D>>,
    /// Distance of the analytic compatibility sum from its bound, when the
    /// set is unbiased and small enough for a closed-form condition.
    pub analytic_margin: Option<f64>,
}

fn invert_small(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut aug: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            aug[i][col].abs().partial_cmp(&aug[j][col].abs()).unwrap()
        })?;
        if aug[pivot][col].abs() < 1e-14 {
            return None;
        }
        aug.swap(col, pivot);
        let p = aug[col][col];
        for e in aug[col].iter_mut() {
            *e /= p;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = aug[row][col];
            if factor == 0.0 {
                continue;
            }
            for j in 0..2 * n {
                aug[row][j] -= factor * aug[col][j];
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

struct AffineProjector<const D: usize> {
    n: usize,
    weights: Vec<Vec<f64>>,
    targets: Vec<ComplexMatrix<D>>,
}

impl<const D: usize> AffineProjector<D> {
    fn new(plus_effects: &[ComplexMatrix<D>]) -> Self {
        let n = plus_effects.len();
        let count = 1usize << n;
        // Gram matrix of the constraint rows: completeness plus one
        // marginal row per measurement.
        let mut gram = vec![vec![0.0; n + 1]; n + 1];
        gram[0][0] = count as f64;
        for k in 1..=n {
            gram[0][k] = (count / 2) as f64;
            gram[k][0] = (count / 2) as f64;
            for l in 1..=n {
                gram[k][l] = if k == l {
                    (count / 2) as f64
                } else {
                    (count / 4) as f64
                };
            }
        }
        let weights = invert_small(&gram).expect("constraint Gram matrix is invertible");
        let mut targets = vec![ComplexMatrix::<D>::identity()];
        targets.extend(plus_effects.iter().copied());
        AffineProjector { n, weights, targets }
    }

    fn violations(&self, x: &[ComplexMatrix<D>]) -> Vec<ComplexMatrix<D>> {
        let mut sums = vec![ComplexMatrix::<D>::zero(); self.n + 1];
        for (s, m) in x.iter().enumerate() {
            sums[0] = sums[0].add(m);
            for k in 0..self.n {
                if s & (1 << k) == 0 {
                    sums[k + 1] = sums[k + 1].add(m);
                }
            }
        }
        sums.iter()
            .zip(&self.targets)
            .map(|(s, t)| s.sub(t))
            .collect()
    }

    fn residual(&self, x: &[ComplexMatrix<D>]) -> f64 {
        self.violations(x)
            .iter()
            .map(|v| {
                let n = v.norm();
                n * n
            })
            .sum::<f64>()
            .sqrt()
    }

    fn project(&self, x: &mut [ComplexMatrix<D>]) {
        let violations = self.violations(x);
        let mut corrections = vec![ComplexMatrix::<D>::zero(); self.n + 1];
        for j in 0..=self.n {
            for (l, violation) in violations.iter().enumerate() {
                let w = self.weights[j][l];
                if w != 0.0 {
                    corrections[j] = corrections[j].add(&violation.scale(w));
                }
            }
        }
        for (s, m) in x.iter_mut().enumerate() {
            let mut delta = corrections[0];
            for k in 0..self.n {
                if s & (1 << k) == 0 {
                    delta = delta.add(&corrections[k + 1]);
                }
            }
            *m = m.sub(&delta);
        }
    }
}

/// Dykstra alternating-projection feasibility search for a global POVM with
/// the prescribed marginals. Dimension-generic core shared by the qubit and
/// dimension-4 entry points.
pub fn dykstra_feasibility<const D: usize>(
    pairs: &[(ComplexMatrix<D>, ComplexMatrix<D>)],
    opts: &JmOptions,
) -> Result<JmReport<D>> {
    let n = pairs.len();
    if n == 0 {
        return Err(Error::DimensionMismatch("empty measurement set".into()));
    }
    if n > MAX_MEASUREMENTS {
        return Err(Error::SetTooLarge {
            n,
            max: MAX_MEASUREMENTS,
        });
    }
    for (i, (plus, minus)) in pairs.iter().enumerate() {
        let deviation = plus
            .add(minus)
            .sub(&ComplexMatrix::<D>::identity())
            .norm();
        if deviation > 1e-9 {
            return Err(Error::PovmNotNormalized {
                index: i,
                deviation,
            });
        }
        for (side, effect) in [("plus", plus), ("minus", minus)] {
            let min = eigenvalues_hermitian(&effect.hermitize(), &TOL)
                .map(|v| v[D - 1])
                .unwrap_or(f64::NEG_INFINITY);
            if min < -1e-9 {
                return Err(Error::InvalidEffect(format!(
                    "measurement {i} {side} effect has eigenvalue {min:.3e}"
                )));
            }
        }
    }

    let plus_effects: Vec<ComplexMatrix<D>> = pairs.iter().map(|(p, _)| *p).collect();
    let projector = AffineProjector::new(&plus_effects);
    let count = 1usize << n;

    let mut x = vec![ComplexMatrix::<D>::identity().scale(1.0 / count as f64); count];
    let mut corrections = vec![ComplexMatrix::<D>::zero(); count];

    let mut history: Vec<f64> = Vec::new();
    const WINDOW: usize = 500;

    for iteration in 1..=opts.max_iter {
        projector.project(&mut x);
        for s in 0..count {
            let shifted = x[s].add(&corrections[s]).hermitize();
            let projected = psd_project(&shifted, &TOL).expect("hermitized iterate");
            corrections[s] = shifted.sub(&projected);
            x[s] = projected;
        }
        let residual = projector.residual(&x);
        if residual <= opts.tol {
            return Ok(JmReport {
                verdict: JmVerdict::Feasible,
                residual,
                iterations: iteration,
                witness: Some(GlobalPovm {
                    n,
                    effects: x.clone(),
                }),
                analytic_margin: None,
            });
        }
        history.push(residual);
        if history.len() > WINDOW {
            let old = history[history.len() - 1 - WINDOW];
            let rel_improvement = (old - residual) / old.max(1e-300);
            // A residual converging to zero keeps improving by at least
            // window/iteration relatively; a residual converging to a
            // positive gap improves geometrically slower and slower. Treat
            // a flat window as a gap when the residual is far above the
            // target, and require near-exact flatness close to the target.
            let stalled = rel_improvement <= 1e-12
                || (rel_improvement <= 1e-6 && residual > 100.0 * opts.tol);
            if stalled {
                return Ok(JmReport {
                    verdict: JmVerdict::Infeasible,
                    residual,
                    iterations: iteration,
                    witness: None,
                    analytic_margin: None,
                });
            }
        }
    }

    Ok(JmReport {
        verdict: JmVerdict::Marginal,
        residual: *history.last().unwrap_or(&f64::INFINITY),
        iterations: opts.max_iter,
        witness: None,
        analytic_margin: None,
    })
}

/// Joint-measurability query for a set of qubit dichotomic POVMs.
///
/// Unbiased pairs and triples sitting within 1e-6 of the analytic
/// compatibility boundary short-circuit to a marginal verdict; everything
/// else is decided by the alternating-projection search.
pub fn jm_feasible(set: &MeasurementSet, opts: &JmOptions) -> Result<JmReport<2>> {
    let n = set.len();
    if n > MAX_MEASUREMENTS {
        return Err(Error::SetTooLarge {
            n,
            max: MAX_MEASUREMENTS,
        });
    }

    let observable_vectors: Option<Vec<RealVector3>> = set.all_unbiased(1e-9).then(|| {
        set.povms()
            .iter()
            .map(|(plus, _)| plus.observable_vector())
            .collect()
    });
    let analytic_margin = observable_vectors.as_ref().and_then(|a| match n {
        2 => Some(pairwise_sum(&a[0], &a[1]) - 2.0),
        3 => Some(triple_sum(&a[0], &a[1], &a[2]) - 4.0),
        _ => None,
    });

    // A tight analytic condition marks a genuine compatibility threshold
    // only when every member is strictly unsharp: upscaling a sharp set is
    // not a valid move, so e.g. two copies of the same sharp observable are
    // plainly feasible despite sitting on the bound.
    if let (Some(margin), Some(a)) = (analytic_margin, observable_vectors.as_ref()) {
        let strictly_unsharp = a.iter().all(|v| vec3::norm(v) < 1.0 - 1e-9);
        if margin.abs() <= 1e-6 && strictly_unsharp {
            return Ok(JmReport {
                verdict: JmVerdict::Marginal,
                residual: margin.abs(),
                iterations: 0,
                witness: None,
                analytic_margin: Some(margin),
            });
        }
    }

    let pairs: Vec<(ComplexMatrix2, ComplexMatrix2)> = set
        .povms()
        .iter()
        .map(|(plus, minus)| (plus.operator(), minus.operator()))
        .collect();
    let mut report = dykstra_feasibility(&pairs, opts)?;
    report.analytic_margin = analytic_margin;
    Ok(report)
}

/// Joint-measurability query for dimension-4 dichotomic POVMs given as
/// explicit (effect, complement) pairs.
pub fn jm_feasible_dim4(
    pairs: &[(ComplexMatrix4, ComplexMatrix4)],
    opts: &JmOptions,
) -> Result<JmReport<4>> {
    dykstra_feasibility(pairs, opts)
}

/// Decides whether a channel breaks N-wise incompatibility: the Heisenberg
/// images of the hardest equal-strength sharp anticommuting set must be
/// N-wise compatible.
///
/// Pairs and triples are handled on the qubit Bloch sphere (analytically for
/// unbiased images, numerically otherwise). For N = 4, 5 no qubit
/// anticommuting set exists; the reduction to the image strength against
/// `1/sqrt(N)` applies to unital channels acting isotropically, and other
/// channels are rejected.
pub fn n_ibc_classify(channel: &KrausChannel, n: usize) -> Result<bool> {
    if !(2..=5).contains(&n) {
        return Err(Error::ParamOutOfRange {
            name: "N",
            value: n as f64,
            min: 2.0,
            max: 5.0,
        });
    }
    if n <= 3 {
        let directions = anticommuting_qubit_directions(n)?;
        let images: Vec<DichotomicEffect> = directions
            .iter()
            .map(|d| dual_apply_effect(channel, &DichotomicEffect::sharp(d).unwrap()))
            .collect();
        if images.iter().all(|e| e.is_unbiased(1e-9)) {
            let a: Vec<RealVector3> = images.iter().map(|e| e.observable_vector()).collect();
            return Ok(match n {
                2 => pairwise_compat_unbiased(&a[0], &a[1]),
                _ => triple_compat_unbiased(&a[0], &a[1], &a[2]),
            });
        }
        let set = MeasurementSet::from_effects(images)?;
        let report = jm_feasible(&set, &JmOptions::default())?;
        return Ok(matches!(
            report.verdict,
            JmVerdict::Feasible | JmVerdict::Marginal
        ));
    }

    let map = to_bloch_affine(channel);
    let scale = map.r.isotropic_scale(1e-10);
    match (channel.is_unital(), scale) {
        (true, Some(c)) => Ok(c.abs() <= anticommuting_threshold(n)? + 1e-12),
        _ => Err(Error::Unsupported(format!(
            "{n}-wise classification needs a unital channel acting isotropically \
             on the Bloch ball; only pairs and triples are decided for general channels"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{depolarizing, identity_channel};

    const INV_SQRT3: f64 = 0.5773502691896258;

    #[test]
    fn effect_validation() {
        assert!(DichotomicEffect::new(0.5, [0.25, 0.0, 0.0]).is_ok());
        assert!(DichotomicEffect::new(0.5, [0.6, 0.0, 0.0]).is_err());
        assert!(DichotomicEffect::new(0.9, [0.2, 0.0, 0.0]).is_err());
        assert!(DichotomicEffect::sharp(&[0.5, 0.0, 0.0]).is_err());
        let sharp = DichotomicEffect::sharp(&[0.0, 0.0, 1.0]).unwrap();
        assert!((sharp.c() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn povm_pair_normalization_is_checked() {
        let e = DichotomicEffect::new(0.5, [0.3, 0.0, 0.0]).unwrap();
        let bad = DichotomicEffect::new(0.4, [-0.3, 0.0, 0.0]).unwrap();
        assert!(MeasurementSet::from_pairs(vec![(e, bad)]).is_err());
        assert!(MeasurementSet::from_pairs(vec![(e, e.complement())]).is_ok());
    }

    #[test]
    fn marginals_of_hand_built_globals() {
        // Product of two trivial coins.
        let alpha = 0.3;
        let beta = 0.8;
        let id = ComplexMatrix2::identity();
        let effects = vec![
            id.scale(alpha * beta),
            id.scale((1.0 - alpha) * beta),
            id.scale(alpha * (1.0 - beta)),
            id.scale((1.0 - alpha) * (1.0 - beta)),
        ];
        let g = GlobalPovm { n: 2, effects };
        let (plus, _) = g.marginal(0).unwrap();
        assert!(plus.sub(&id.scale(alpha)).norm() < 1e-12);
        let (plus, _) = g.marginal(1).unwrap();
        assert!(plus.sub(&id.scale(beta)).norm() < 1e-12);

        // All weight on the all-plus outcome.
        let mut effects = vec![ComplexMatrix2::zero(); 8];
        effects[0] = id;
        let g = GlobalPovm { n: 3, effects };
        for k in 0..3 {
            let (plus, minus) = g.marginal(k).unwrap();
            assert!(plus.sub(&id).norm() < 1e-12);
            assert!(minus.norm() < 1e-12);
        }
        assert!(g.marginal(3).is_err());
    }

    #[test]
    fn optimal_pair_witness_marginals() {
        // G_ab = (I + (a n1 + b n2).sigma/sqrt2)/4 at the pair boundary.
        let inv = 1.0 / 2.0_f64.sqrt();
        let n1 = [1.0, 0.0, 0.0];
        let n2 = [0.0, 0.0, 1.0];
        let mut effects = Vec::new();
        for s in 0..4usize {
            let sa = if s & 1 == 0 { 1.0 } else { -1.0 };
            let sb = if s & 2 == 0 { 1.0 } else { -1.0 };
            let dir = vec3::scale(&vec3::add(&vec3::scale(&n1, sa), &vec3::scale(&n2, sb)), inv);
            effects.push(pauli_compose(0.25, vec3::scale(&dir, 0.25)));
        }
        let g = GlobalPovm { n: 2, effects };
        assert!(g.completeness_defect() < 1e-12);
        assert!(g.min_eigenvalue() > -1e-12);
        let (plus, _) = g.marginal(0).unwrap();
        let expected = pauli_compose(0.5, vec3::scale(&n1, 0.5 * inv));
        assert!(plus.sub(&expected).norm() < 1e-12);
    }

    #[test]
    fn analytic_conditions() {
        let x = [1.0, 0.0, 0.0];
        let y = [0.0, 1.0, 0.0];
        let z = [0.0, 0.0, 1.0];

        // Triad at 1/sqrt(3) sits exactly on the boundary.
        let p = INV_SQRT3;
        let sum = triple_sum(
            &vec3::scale(&x, p),
            &vec3::scale(&y, p),
            &vec3::scale(&z, p),
        );
        assert!((sum - 4.0).abs() < 1e-12);
        assert!(triple_compat_unbiased(
            &vec3::scale(&x, p),
            &vec3::scale(&y, p),
            &vec3::scale(&z, p)
        ));
        assert!(triple_compat_unbiased(
            &[0.0; 3], &[0.0; 3], &[0.0; 3]
        ));
        let q = 0.75;
        assert!(!triple_compat_unbiased(
            &vec3::scale(&x, q),
            &vec3::scale(&y, q),
            &vec3::scale(&z, q)
        ));

        let inv = 1.0 / 2.0_f64.sqrt();
        assert!(pairwise_compat_unbiased(
            &vec3::scale(&x, inv),
            &vec3::scale(&z, inv)
        ));
        assert!(pairwise_compat_unbiased(&z, &z));
        assert!(!pairwise_compat_unbiased(&x, &z));
    }

    #[test]
    fn anticommuting_thresholds() {
        assert!(anticommuting_threshold(1).is_err());
        assert!((anticommuting_threshold(2).unwrap() - 0.7071067811865476).abs() < 1e-15);
        assert!((anticommuting_threshold(3).unwrap() - INV_SQRT3).abs() < 1e-15);
        assert!((anticommuting_threshold(4).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn generators_anticommute() {
        let gens = anticommuting_generators_dim4(5).unwrap();
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                let anti = gens[i].mul(&gens[j]).add(&gens[j].mul(&gens[i]));
                let expected = if i == j {
                    ComplexMatrix4::identity().scale(2.0)
                } else {
                    ComplexMatrix4::zero()
                };
                assert!(anti.sub(&expected).norm() < 1e-12);
            }
        }
    }

    fn unbiased_set(dirs: &[RealVector3], strength: f64) -> MeasurementSet {
        let effects = dirs
            .iter()
            .map(|d| DichotomicEffect::unbiased(&vec3::scale(d, strength)).unwrap())
            .collect();
        MeasurementSet::from_effects(effects).unwrap()
    }

    #[test]
    fn oracle_on_commuting_and_sharp_pairs() {
        let z = [0.0, 0.0, 1.0];
        let same = unbiased_set(&[z, z], 1.0);
        let report = jm_feasible(&same, &JmOptions::default()).unwrap();
        assert_eq!(report.verdict, JmVerdict::Feasible);
        let witness = report.witness.unwrap();
        let (plus, _) = witness.marginal(0).unwrap();
        let sharp_z = DichotomicEffect::sharp(&z).unwrap().operator();
        assert!(plus.sub(&sharp_z).norm() < 1e-6);

        let x = [1.0, 0.0, 0.0];
        let sharp_pair = unbiased_set(&[x, z], 1.0);
        let report = jm_feasible(&sharp_pair, &JmOptions::default()).unwrap();
        assert_eq!(report.verdict, JmVerdict::Infeasible);
    }

    #[test]
    fn oracle_triad_on_both_sides_of_boundary() {
        let dirs = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let feasible = unbiased_set(&dirs, 0.55);
        let report = jm_feasible(&feasible, &JmOptions::default()).unwrap();
        assert_eq!(report.verdict, JmVerdict::Feasible, "{report:?}");

        let infeasible = unbiased_set(&dirs, 0.60);
        let report = jm_feasible(&infeasible, &JmOptions::default()).unwrap();
        assert_eq!(report.verdict, JmVerdict::Infeasible, "{report:?}");
    }

    #[test]
    fn oracle_reports_marginal_on_boundary() {
        let dirs = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let set = unbiased_set(&dirs, INV_SQRT3);
        let report = jm_feasible(&set, &JmOptions::default()).unwrap();
        assert_eq!(report.verdict, JmVerdict::Marginal);
        assert_eq!(report.iterations, 0);
    }

    #[test]
    fn oracle_rejects_oversized_sets() {
        let z = [0.0, 0.0, 1.0];
        let set = unbiased_set(&[z; 7], 0.1);
        assert!(matches!(
            jm_feasible(&set, &JmOptions::default()),
            Err(Error::SetTooLarge { .. })
        ));
    }

    #[test]
    fn dim4_pair_flips_at_inv_sqrt2() {
        let opts = JmOptions::default();
        let below = anticommuting_effect_pairs_dim4(2, 0.69).unwrap();
        let report = jm_feasible_dim4(&below, &opts).unwrap();
        assert_eq!(report.verdict, JmVerdict::Feasible, "{report:?}");

        let above = anticommuting_effect_pairs_dim4(2, 0.73).unwrap();
        let report = jm_feasible_dim4(&above, &opts).unwrap();
        assert_eq!(report.verdict, JmVerdict::Infeasible, "{report:?}");
    }

    #[test]
    fn n_ibc_examples() {
        let ch = depolarizing(0.5).unwrap();
        assert!(n_ibc_classify(&ch, 3).unwrap());

        let ch = depolarizing(0.65).unwrap();
        assert!(!n_ibc_classify(&ch, 3).unwrap());
        assert!(n_ibc_classify(&ch, 2).unwrap());

        let id = identity_channel();
        for n in 2..=5 {
            assert!(!n_ibc_classify(&id, n).unwrap(), "N = {n}");
        }

        assert!(n_ibc_classify(&ch, 6).is_err());
        assert!(n_ibc_classify(&depolarizing(0.4).unwrap(), 4).unwrap());
        assert!(!n_ibc_classify(&depolarizing(0.55).unwrap(), 4).unwrap());
    }
}
