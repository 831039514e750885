//! Qubit channels as Kraus sets: CPTP and unitality validation, Bloch
//! affine maps, Heisenberg duals, a zoo of standard noise families, and
//! application to one or both subsystems of a two-qubit state.
//!
//! Parameter convention: `p` is the survival probability throughout, so
//! every family except dephasing reduces to the identity at `p = 1`;
//! dephasing is the identity at `p = 0`.

use crate::error::{Error, Result};
use crate::linalg::{
    eigenvalues_hermitian, kron, pauli_compose, sigma, vec3, ComplexMatrix2, ComplexMatrix4,
    RealMatrix3, RealVector3, C64, TOL,
};
use crate::measurements::DichotomicEffect;
use crate::states::{bell_state, TwoQubitState};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The four noise families provided by the zoo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChannelFamily {
    /// `rho -> p rho + (1-p) I/2`.
    Depolarizing,
    /// Energy decay toward `|0>`; survival probability `p`.
    AmplitudeDamping,
    /// Transmit with probability `p`, otherwise replace with `|0><0|`.
    Loss,
    /// Off-diagonal suppression by `1-p`; identity at `p = 0`.
    Dephasing,
}

impl ChannelFamily {
    pub const ALL: [ChannelFamily; 4] = [
        ChannelFamily::Depolarizing,
        ChannelFamily::AmplitudeDamping,
        ChannelFamily::Loss,
        ChannelFamily::Dephasing,
    ];

    /// Compact selector used by the CLI: dpoc, adc, lc, dpc.
    pub fn code(&self) -> &'static str {
        match self {
            ChannelFamily::Depolarizing => "dpoc",
            ChannelFamily::AmplitudeDamping => "adc",
            ChannelFamily::Loss => "lc",
            ChannelFamily::Dephasing => "dpc",
        }
    }

    pub fn parse(code: &str) -> Result<Self> {
        match code.to_ascii_lowercase().as_str() {
            "dpoc" => Ok(ChannelFamily::Depolarizing),
            "adc" => Ok(ChannelFamily::AmplitudeDamping),
            "lc" => Ok(ChannelFamily::Loss),
            "dpc" => Ok(ChannelFamily::Dephasing),
            other => Err(Error::Malformed(format!(
                "unknown channel family `{other}` (expected dpoc, adc, lc, or dpc)"
            ))),
        }
    }

    pub fn construct(&self, p: f64) -> Result<KrausChannel> {
        match self {
            ChannelFamily::Depolarizing => depolarizing(p),
            ChannelFamily::AmplitudeDamping => amplitude_damping(p),
            ChannelFamily::Loss => loss(p),
            ChannelFamily::Dephasing => dephasing(p),
        }
    }
}

impl fmt::Display for ChannelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A qubit channel given by its Kraus operators. Instances built through
/// the public constructors are CPTP; raw sets can be screened with
/// [`validate_cptp`].
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    kraus: Vec<ComplexMatrix2>,
    label: Option<ChannelFamily>,
    param: Option<f64>,
}

/// Affine action on Bloch vectors: `n -> R n + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAffineMap {
    pub r: RealMatrix3,
    pub t: RealVector3,
}

impl BlochAffineMap {
    pub fn apply(&self, n: &RealVector3) -> RealVector3 {
        vec3::add(&self.r.mul_vec(n), &self.t)
    }

    /// Samples `samples >= 1000` points of the Bloch sphere (Fibonacci
    /// lattice) and checks the image stays inside the closed ball.
    pub fn contracts_bloch_ball(&self, samples: usize) -> bool {
        let n = samples.max(1000);
        let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
        for k in 0..n {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * k as f64;
            let point = [r * phi.cos(), r * phi.sin(), z];
            if vec3::norm(&self.apply(&point)) > 1.0 + 1e-9 {
                return false;
            }
        }
        true
    }
}

/// Trace-preservation and complete-positivity diagnostics for a Kraus set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CptpVerdict {
    /// Spectral norm of `sum K†K - I`.
    pub trace_residual: f64,
    /// Minimum eigenvalue of the Choi matrix.
    pub choi_min_eigenvalue: f64,
    pub is_cptp: bool,
}

fn kraus_sum_adjoint_first(kraus: &[ComplexMatrix2]) -> ComplexMatrix2 {
    let mut acc = ComplexMatrix2::zero();
    for k in kraus {
        acc = acc.add(&k.adjoint().mul(k));
    }
    acc
}

fn apply_kraus_2(kraus: &[ComplexMatrix2], m: &ComplexMatrix2) -> ComplexMatrix2 {
    let mut acc = ComplexMatrix2::zero();
    for k in kraus {
        acc = acc.add(&k.mul(m).mul(&k.adjoint()));
    }
    acc
}

/// Choi matrix of a Kraus set, built by acting on the first half of the
/// maximally entangled reference state.
pub fn choi_matrix(kraus: &[ComplexMatrix2]) -> ComplexMatrix4 {
    let rho = bell_state();
    let id = ComplexMatrix2::identity();
    let mut out = ComplexMatrix4::zero();
    for k in kraus {
        let big = kron(k, &id);
        out = out.add(&big.mul(rho.matrix()).mul(&big.adjoint()));
    }
    out
}

/// Reports the trace-preservation residual and the Choi minimum eigenvalue
/// for an arbitrary Kraus set.
pub fn validate_cptp(kraus: &[ComplexMatrix2]) -> CptpVerdict {
    let defect = kraus_sum_adjoint_first(kraus).sub(&ComplexMatrix2::identity());
    let trace_residual = eigenvalues_hermitian(&defect.hermitize(), &TOL)
        .map(|v| v[0].abs().max(v[1].abs()))
        .unwrap_or(f64::INFINITY);
    let choi = choi_matrix(kraus).hermitize();
    let choi_min_eigenvalue = eigenvalues_hermitian(&choi, &TOL)
        .map(|v| v[3])
        .unwrap_or(f64::NEG_INFINITY);
    CptpVerdict {
        trace_residual,
        choi_min_eigenvalue,
        is_cptp: trace_residual <= 1e-10 && choi_min_eigenvalue >= -1e-9,
    }
}

impl KrausChannel {
    /// Builds a channel from raw Kraus operators, rejecting non-CPTP sets.
    pub fn from_kraus(kraus: Vec<ComplexMatrix2>) -> Result<Self> {
        let verdict = validate_cptp(&kraus);
        if !verdict.is_cptp {
            return Err(Error::Malformed(format!(
                "Kraus set is not CPTP: trace residual {:.3e}, Choi min eigenvalue {:.3e}",
                verdict.trace_residual, verdict.choi_min_eigenvalue
            )));
        }
        Ok(KrausChannel {
            kraus,
            label: None,
            param: None,
        })
    }

    pub fn kraus(&self) -> &[ComplexMatrix2] {
        &self.kraus
    }

    pub fn label(&self) -> Option<ChannelFamily> {
        self.label
    }

    pub fn param(&self) -> Option<f64> {
        self.param
    }

    pub fn validate(&self) -> CptpVerdict {
        validate_cptp(&self.kraus)
    }

    /// Schroedinger action on a single-qubit operator.
    pub fn apply_single(&self, m: &ComplexMatrix2) -> ComplexMatrix2 {
        apply_kraus_2(&self.kraus, m)
    }

    /// `sum K K† = I` within 1e-10.
    pub fn is_unital(&self) -> bool {
        let mut acc = ComplexMatrix2::zero();
        for k in &self.kraus {
            acc = acc.add(&k.mul(&k.adjoint()));
        }
        acc.sub(&ComplexMatrix2::identity()).norm() <= 1e-10
    }

    /// Sequential composition: `self` after `inner`.
    pub fn compose(&self, inner: &KrausChannel) -> KrausChannel {
        let mut kraus = Vec::with_capacity(self.kraus.len() * inner.kraus.len());
        for a in &self.kraus {
            for b in &inner.kraus {
                kraus.push(a.mul(b));
            }
        }
        KrausChannel {
            kraus,
            label: None,
            param: None,
        }
    }
}

fn check_param(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(Error::ParamOutOfRange {
            name: "p",
            value: p,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(p)
}

/// Identity channel.
pub fn identity_channel() -> KrausChannel {
    KrausChannel {
        kraus: vec![ComplexMatrix2::identity()],
        label: None,
        param: Some(1.0),
    }
}

/// Depolarizing channel `rho -> p rho + (1-p) I/2` (unital).
pub fn depolarizing(p: f64) -> Result<KrausChannel> {
    let p = check_param(p)?;
    let mut kraus = vec![ComplexMatrix2::identity().scale(((1.0 + 3.0 * p) / 4.0).sqrt())];
    for i in 0..3 {
        kraus.push(sigma(i).scale(((1.0 - p) / 4.0).sqrt()));
    }
    Ok(KrausChannel {
        kraus,
        label: Some(ChannelFamily::Depolarizing),
        param: Some(p),
    })
}

/// Amplitude damping with survival probability `p`; Bloch map
/// `R = diag(sqrt p, sqrt p, p)`, `t = (0, 0, 1-p)`.
pub fn amplitude_damping(p: f64) -> Result<KrausChannel> {
    let p = check_param(p)?;
    let k0 = ComplexMatrix2::from_real([[1.0, 0.0], [0.0, p.sqrt()]]);
    let k1 = ComplexMatrix2::from_real([[0.0, (1.0 - p).sqrt()], [0.0, 0.0]]);
    Ok(KrausChannel {
        kraus: vec![k0, k1],
        label: Some(ChannelFamily::AmplitudeDamping),
        param: Some(p),
    })
}

/// Loss channel `rho -> p rho + (1-p)|0><0|`, realized by the
/// trace-preserving Kraus set `{sqrt(p) I, sqrt(1-p)|0><0|, sqrt(1-p)|0><1|}`.
pub fn loss(p: f64) -> Result<KrausChannel> {
    let p = check_param(p)?;
    let k0 = ComplexMatrix2::identity().scale(p.sqrt());
    let mut k1 = ComplexMatrix2::zero();
    k1.0[0][0] = C64::new((1.0 - p).sqrt(), 0.0); // |0><0|
    let mut k2 = ComplexMatrix2::zero();
    k2.0[0][1] = C64::new((1.0 - p).sqrt(), 0.0); // |0><1|
    Ok(KrausChannel {
        kraus: vec![k0, k1, k2],
        label: Some(ChannelFamily::Loss),
        param: Some(p),
    })
}

/// Dephasing channel `rho -> (1-p) rho + p diag(rho)` (unital); identity at
/// `p = 0`.
pub fn dephasing(p: f64) -> Result<KrausChannel> {
    let p = check_param(p)?;
    let k0 = ComplexMatrix2::identity().scale((1.0 - p).sqrt());
    let mut k1 = ComplexMatrix2::zero();
    k1.0[0][0] = C64::new(p.sqrt(), 0.0);
    let mut k2 = ComplexMatrix2::zero();
    k2.0[1][1] = C64::new(p.sqrt(), 0.0);
    Ok(KrausChannel {
        kraus: vec![k0, k1, k2],
        label: Some(ChannelFamily::Dephasing),
        param: Some(p),
    })
}

/// Extracts the Bloch affine map `(R, t)` of a channel by probing the
/// identity and the three Pauli axes.
pub fn to_bloch_affine(channel: &KrausChannel) -> BlochAffineMap {
    let half = ComplexMatrix2::identity().scale(0.5);
    let bloch_of = |m: &ComplexMatrix2| -> RealVector3 {
        let mut n = [0.0; 3];
        for i in 0..3 {
            n[i] = m.trace_with(&sigma(i)).re;
        }
        n
    };
    let t = bloch_of(&channel.apply_single(&half));
    let mut r = RealMatrix3::zero();
    for i in 0..3 {
        let probe = half.add(&sigma(i).scale(0.5));
        let image = bloch_of(&channel.apply_single(&probe));
        for j in 0..3 {
            r.0[j][i] = image[j] - t[j];
        }
    }
    BlochAffineMap { r, t }
}

/// Heisenberg image `E*(M) = sum K† M K` of a dichotomic effect.
pub fn dual_apply_effect(channel: &KrausChannel, effect: &DichotomicEffect) -> DichotomicEffect {
    let m = pauli_compose(effect.c(), *effect.m());
    let mut image = ComplexMatrix2::zero();
    for k in &channel.kraus {
        image = image.add(&k.adjoint().mul(&m).mul(k));
    }
    let image = image.hermitize();
    let c = 0.5 * image.trace().re;
    let mut bloch = [0.0; 3];
    for i in 0..3 {
        bloch[i] = 0.5 * image.trace_with(&sigma(i)).re;
    }
    DichotomicEffect::new_unchecked(c, bloch)
}

/// Which subsystem(s) a channel acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
    Both,
}

impl Side {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" | "first" => Ok(Side::A),
            "b" | "second" => Ok(Side::B),
            "both" => Ok(Side::Both),
            other => Err(Error::Malformed(format!(
                "unknown placement `{other}` (expected first, second, or both)"
            ))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Side::A => "first",
            Side::B => "second",
            Side::Both => "both",
        }
    }
}

fn apply_one_side(
    channel: &KrausChannel,
    state: &TwoQubitState,
    first: bool,
) -> Result<TwoQubitState> {
    let id = ComplexMatrix2::identity();
    let mut out = ComplexMatrix4::zero();
    for k in &channel.kraus {
        let big = if first { kron(k, &id) } else { kron(&id, k) };
        out = out.add(&big.mul(state.matrix()).mul(&big.adjoint()));
    }
    TwoQubitState::from_matrix(out)
}

/// `(E (x) I)`, `(I (x) E)`, or `(E (x) E)` acting on a two-qubit state by
/// 4x4 Kraus conjugation.
pub fn apply_to_subsystem(
    channel: &KrausChannel,
    state: &TwoQubitState,
    side: Side,
) -> Result<TwoQubitState> {
    match side {
        Side::A => apply_one_side(channel, state, true),
        Side::B => apply_one_side(channel, state, false),
        Side::Both => {
            let after_a = apply_one_side(channel, state, true)?;
            apply_one_side(channel, &after_a, false)
        }
    }
}

/// Parses a compact channel spec string `family:param`, e.g. `dpoc:0.5`.
pub fn parse_channel_spec(spec: &str) -> Result<KrausChannel> {
    let (family, param) = spec
        .split_once(':')
        .ok_or_else(|| Error::Malformed(format!("channel spec `{spec}` must be family:param")))?;
    let family = ChannelFamily::parse(family)?;
    let p: f64 = param
        .parse()
        .map_err(|_| Error::Malformed(format!("channel parameter `{param}` is not a number")))?;
    family.construct(p)
}

/// JSON wire form of a Kraus set, mirroring the density-matrix schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelJson {
    pub family: Option<String>,
    pub param: Option<f64>,
    pub kraus: Vec<Mat2Json>,
}

/// 2x2 complex matrix in split re/im row-major form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Mat2Json {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl KrausChannel {
    pub fn to_json(&self) -> ChannelJson {
        ChannelJson {
            family: self.label.map(|f| f.code().to_string()),
            param: self.param,
            kraus: self
                .kraus
                .iter()
                .map(|k| {
                    let mut re = vec![vec![0.0; 2]; 2];
                    let mut im = vec![vec![0.0; 2]; 2];
                    for i in 0..2 {
                        for j in 0..2 {
                            re[i][j] = k.0[i][j].re;
                            im[i][j] = k.0[i][j].im;
                        }
                    }
                    Mat2Json { re, im }
                })
                .collect(),
        }
    }

    pub fn from_json(json: &ChannelJson) -> Result<Self> {
        let mut kraus = Vec::with_capacity(json.kraus.len());
        for (idx, m) in json.kraus.iter().enumerate() {
            if m.re.len() != 2 || m.im.len() != 2 || m.re.iter().chain(&m.im).any(|r| r.len() != 2)
            {
                return Err(Error::Malformed(format!("Kraus operator {idx} is not 2x2")));
            }
            let mut k = ComplexMatrix2::zero();
            for i in 0..2 {
                for j in 0..2 {
                    k.0[i][j] = C64::new(m.re[i][j], m.im[i][j]);
                }
            }
            kraus.push(k);
        }
        KrausChannel::from_kraus(kraus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::sigma_x;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn assert_mat3(m: &RealMatrix3, expected: &RealMatrix3, tol: f64) {
        assert!(
            m.sub(expected).norm() < tol,
            "matrix mismatch:\n{m:?}\nvs\n{expected:?}"
        );
    }

    #[test]
    fn depolarizing_bloch_maps() {
        let map = to_bloch_affine(&depolarizing(1.0).unwrap());
        assert_mat3(&map.r, &RealMatrix3::identity(), 1e-12);
        assert!(vec3::norm(&map.t) < 1e-12);

        let map = to_bloch_affine(&depolarizing(0.0).unwrap());
        assert!(map.r.norm() < 1e-12);

        let map = to_bloch_affine(&depolarizing(0.5).unwrap());
        assert_mat3(&map.r, &RealMatrix3::identity().scale(0.5), 1e-12);
        assert!(vec3::norm(&map.t) < 1e-12);
    }

    #[test]
    fn amplitude_damping_bloch_maps() {
        let map = to_bloch_affine(&amplitude_damping(1.0).unwrap());
        assert_mat3(&map.r, &RealMatrix3::identity(), 1e-12);

        let map = to_bloch_affine(&amplitude_damping(0.0).unwrap());
        assert!(map.r.norm() < 1e-12);
        assert!(vec3::norm(&vec3::sub(&map.t, &[0.0, 0.0, 1.0])) < 1e-12);

        let map = to_bloch_affine(&amplitude_damping(0.25).unwrap());
        assert_mat3(&map.r, &RealMatrix3::diag([0.5, 0.5, 0.25]), 1e-12);
        assert!(vec3::norm(&vec3::sub(&map.t, &[0.0, 0.0, 0.75])) < 1e-12);
    }

    #[test]
    fn dephasing_bloch_maps() {
        let map = to_bloch_affine(&dephasing(0.0).unwrap());
        assert_mat3(&map.r, &RealMatrix3::identity(), 1e-12);

        let map = to_bloch_affine(&dephasing(1.0).unwrap());
        assert_mat3(&map.r, &RealMatrix3::diag([0.0, 0.0, 1.0]), 1e-12);

        // Off-diagonals of (I+sigma_x)/2 scale by 1-p.
        let ch = dephasing(0.5).unwrap();
        let probe = ComplexMatrix2::identity().add(&sigma_x()).scale(0.5);
        let image = ch.apply_single(&probe);
        assert_close(image.0[0][1].re, 0.25, 1e-12);
    }

    #[test]
    fn loss_channel_action() {
        let ch = loss(1.0).unwrap();
        let map = to_bloch_affine(&ch);
        assert_mat3(&map.r, &RealMatrix3::identity(), 1e-12);

        let ch = loss(0.0).unwrap();
        let probe = ComplexMatrix2::identity().add(&sigma_x()).scale(0.5);
        let image = ch.apply_single(&probe);
        let ket0 = ComplexMatrix2::from_real([[1.0, 0.0], [0.0, 0.0]]);
        assert!(image.sub(&ket0).norm() < 1e-12);

        let p = 0.37;
        let state = apply_to_subsystem(&loss(p).unwrap(), &bell_state(), Side::A).unwrap();
        assert_mat3(&state.fano().t, &RealMatrix3::diag([p, -p, p]), 1e-10);
    }

    #[test]
    fn zoo_is_cptp_and_ball_contracting() {
        for p in [0.0, 0.3, 0.7, 1.0] {
            for family in ChannelFamily::ALL {
                let ch = family.construct(p).unwrap();
                let verdict = ch.validate();
                assert!(verdict.is_cptp, "{family} at {p}: {verdict:?}");
                assert!(to_bloch_affine(&ch).contracts_bloch_ball(1000));
            }
        }
    }

    #[test]
    fn cptp_rejects_overcomplete_set() {
        let verdict = validate_cptp(&[ComplexMatrix2::identity(), sigma_x()]);
        assert!(!verdict.is_cptp);
        assert_close(verdict.trace_residual, 1.0, 1e-12);
    }

    #[test]
    fn unitality_of_zoo() {
        assert!(depolarizing(0.4).unwrap().is_unital());
        assert!(dephasing(0.7).unwrap().is_unital());
        assert!(!amplitude_damping(0.5).unwrap().is_unital());
        assert!(!loss(0.5).unwrap().is_unital());
        assert!(identity_channel().is_unital());
    }

    #[test]
    fn dual_of_depolarizing_scales_bloch_part() {
        let q = 0.3; // mixing weight; survival p = 1 - q
        let ch = depolarizing(1.0 - q).unwrap();
        let effect = DichotomicEffect::sharp(&[0.6, 0.0, 0.8]).unwrap();
        let image = dual_apply_effect(&ch, &effect);
        assert_close(image.c(), 0.5, 1e-12);
        let expected = vec3::scale(&[0.3, 0.0, 0.4], 1.0 - q);
        assert!(vec3::norm(&vec3::sub(image.m(), &expected)) < 1e-12);

        let unchanged = dual_apply_effect(&identity_channel(), &effect);
        assert_close(unchanged.c(), effect.c(), 1e-15);
    }

    #[test]
    fn dual_of_amplitude_damping_shifts_bias() {
        let p = 0.4;
        let ch = amplitude_damping(p).unwrap();
        let effect = DichotomicEffect::sharp(&[0.0, 0.0, 1.0]).unwrap();
        let image = dual_apply_effect(&ch, &effect);
        // sum K† |0><0| K = diag(1, 1-p)
        assert_close(image.c(), 1.0 - p / 2.0, 1e-12);
        assert!(vec3::norm(&vec3::sub(image.m(), &[0.0, 0.0, p / 2.0])) < 1e-12);
        assert!((2.0 * image.c() - 1.0).abs() > 1e-6, "trace should shift");
    }

    #[test]
    fn apply_to_subsystem_examples() {
        let bell = bell_state();
        let state = apply_to_subsystem(&depolarizing(0.5).unwrap(), &bell, Side::A).unwrap();
        assert_mat3(&state.fano().t, &RealMatrix3::diag([0.5, -0.5, 0.5]), 1e-10);

        let unchanged = apply_to_subsystem(&identity_channel(), &bell, Side::Both).unwrap();
        assert!(unchanged.matrix().sub(bell.matrix()).norm() < 1e-12);

        let p = 0.3;
        let both = apply_to_subsystem(&dephasing(p).unwrap(), &bell, Side::Both).unwrap();
        let q = 1.0 - p;
        assert_mat3(&both.fano().t, &RealMatrix3::diag([q * q, -q * q, 1.0]), 1e-10);
    }

    #[test]
    fn composition_matches_affine_algebra() {
        let e1 = amplitude_damping(0.6).unwrap();
        let e2 = dephasing(0.25).unwrap();
        let composed = e1.compose(&e2);
        let m1 = to_bloch_affine(&e1);
        let m2 = to_bloch_affine(&e2);
        let mc = to_bloch_affine(&composed);
        let expected_r = m1.r.mul_mat(&m2.r);
        let expected_t = vec3::add(&m1.r.mul_vec(&m2.t), &m1.t);
        assert_mat3(&mc.r, &expected_r, 1e-10);
        assert!(vec3::norm(&vec3::sub(&mc.t, &expected_t)) < 1e-10);
    }

    #[test]
    fn spec_string_parses() {
        let ch = parse_channel_spec("dpoc:0.5").unwrap();
        assert_eq!(ch.label(), Some(ChannelFamily::Depolarizing));
        assert_close(ch.param().unwrap(), 0.5, 1e-15);
        assert!(parse_channel_spec("dpoc").is_err());
        assert!(parse_channel_spec("xyz:0.5").is_err());
        assert!(parse_channel_spec("adc:1.5").is_err());
    }

    #[test]
    fn channel_json_round_trip() {
        let ch = amplitude_damping(0.3).unwrap();
        let json = ch.to_json();
        let back = KrausChannel::from_json(&json).unwrap();
        let d1 = to_bloch_affine(&ch);
        let d2 = to_bloch_affine(&back);
        assert!(d1.r.sub(&d2.r).norm() < 1e-12);
    }
}
