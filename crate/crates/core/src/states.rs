//! Two-qubit states: construction, Pauli-basis (Fano) form, white-noise
//! mixing, validity checks, and the JSON wire format.

use crate::error::{Error, Result};
use crate::linalg::{
    eigenvalues_hermitian, kron, sigma, vec3, ComplexMatrix2, ComplexMatrix4, RealMatrix3,
    RealVector3, C64, TOL,
};
use serde::{Deserialize, Serialize};

/// Local Bloch vectors and correlation matrix of a two-qubit state:
/// `rho = (I@I + a.sigma@I + I@b.sigma + sum_ij T_ij sigma_i@sigma_j) / 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanoForm {
    pub a: RealVector3,
    pub b: RealVector3,
    pub t: RealMatrix3,
}

/// A validated two-qubit density operator with its cached Fano form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    rho: ComplexMatrix4,
    fano: FanoForm,
}

/// Outcome of the validity checks on a candidate density operator.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVerdict {
    pub valid: bool,
    /// Names of the failed checks: "trace", "hermiticity", "positivity".
    pub failed: Vec<&'static str>,
    pub trace_deviation: f64,
    pub hermiticity_deviation: f64,
    pub min_eigenvalue: f64,
}

/// Checks trace-1, Hermiticity, and positivity of a raw 4x4 operator.
pub fn is_valid_state(rho: &ComplexMatrix4) -> StateVerdict {
    let trace_deviation = (rho.trace() - C64::new(1.0, 0.0)).norm();
    let hermiticity_deviation = rho.hermiticity_defect().2;
    let min_eigenvalue = if hermiticity_deviation <= 1e-9 {
        eigenvalues_hermitian(&rho.hermitize(), &TOL)
            .map(|v| v[3])
            .unwrap_or(f64::NEG_INFINITY)
    } else {
        f64::NEG_INFINITY
    };

    let mut failed = Vec::new();
    if trace_deviation > 1e-10 {
        failed.push("trace");
    }
    if hermiticity_deviation > 1e-12 {
        failed.push("hermiticity");
    }
    if min_eigenvalue < -1e-9 {
        failed.push("positivity");
    }
    StateVerdict {
        valid: failed.is_empty(),
        failed,
        trace_deviation,
        hermiticity_deviation,
        min_eigenvalue,
    }
}

/// Fano expansion of an arbitrary (not necessarily valid) 4x4 operator.
pub fn fano_of_matrix(rho: &ComplexMatrix4) -> FanoForm {
    let id = ComplexMatrix2::identity();
    let mut a = [0.0; 3];
    let mut b = [0.0; 3];
    let mut t = RealMatrix3::zero();
    for i in 0..3 {
        a[i] = rho.trace_with(&kron(&sigma(i), &id)).re;
        b[i] = rho.trace_with(&kron(&id, &sigma(i))).re;
        for j in 0..3 {
            t.0[i][j] = rho.trace_with(&kron(&sigma(i), &sigma(j))).re;
        }
    }
    FanoForm { a, b, t }
}

/// Rebuilds the 4x4 operator from a Fano form.
pub fn matrix_of_fano(f: &FanoForm) -> ComplexMatrix4 {
    let id = ComplexMatrix2::identity();
    let mut m = kron(&id, &id);
    for i in 0..3 {
        m = m.add(&kron(&sigma(i), &id).scale(f.a[i]));
        m = m.add(&kron(&id, &sigma(i)).scale(f.b[i]));
        for j in 0..3 {
            m = m.add(&kron(&sigma(i), &sigma(j)).scale(f.t.0[i][j]));
        }
    }
    m.scale(0.25)
}

impl TwoQubitState {
    /// Validates a density operator and caches its Fano form.
    pub fn from_matrix(rho: ComplexMatrix4) -> Result<Self> {
        if !rho.all_finite() {
            return Err(Error::InvalidState {
                check: "finiteness",
                detail: "non-finite entry".into(),
            });
        }
        let verdict = is_valid_state(&rho);
        if !verdict.valid {
            return Err(Error::InvalidState {
                check: verdict.failed[0],
                detail: format!(
                    "trace dev {:.3e}, hermiticity dev {:.3e}, min eigenvalue {:.3e}",
                    verdict.trace_deviation,
                    verdict.hermiticity_deviation,
                    verdict.min_eigenvalue
                ),
            });
        }
        let rho = rho.hermitize();
        let fano = fano_of_matrix(&rho);
        Ok(TwoQubitState { rho, fano })
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.rho
    }

    /// Cached `(a, b, T)` triple.
    pub fn fano(&self) -> &FanoForm {
        &self.fano
    }

    pub fn correlation(&self) -> &RealMatrix3 {
        &self.fano.t
    }

    pub fn purity(&self) -> f64 {
        self.rho.mul(&self.rho).trace().re
    }

    /// Reduced state of the first qubit.
    pub fn partial_trace_b(&self) -> ComplexMatrix2 {
        let mut m = ComplexMatrix2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.rho.0[2 * i][2 * j] + self.rho.0[2 * i + 1][2 * j + 1];
            }
        }
        m
    }

    /// Reduced state of the second qubit.
    pub fn partial_trace_a(&self) -> ComplexMatrix2 {
        let mut m = ComplexMatrix2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.rho.0[i][j] + self.rho.0[2 + i][2 + j];
            }
        }
        m
    }

    pub fn verdict(&self) -> StateVerdict {
        is_valid_state(&self.rho)
    }
}

/// The maximally entangled two-qubit state with correlation matrix
/// `diag(1, -1, 1)`; local Bloch vectors vanish.
pub fn bell_state() -> TwoQubitState {
    let fano = FanoForm {
        a: [0.0; 3],
        b: [0.0; 3],
        t: RealMatrix3::diag([1.0, -1.0, 1.0]),
    };
    TwoQubitState {
        rho: matrix_of_fano(&fano),
        fano,
    }
}

/// `v*rho + (1-v)*I/4`; the Fano form scales linearly with `v`.
pub fn mix_with_white_noise(state: &TwoQubitState, v: f64) -> Result<TwoQubitState> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::ParamOutOfRange {
            name: "v",
            value: v,
            min: 0.0,
            max: 1.0,
        });
    }
    let mixed = state
        .rho
        .scale(v)
        .add(&ComplexMatrix4::identity().scale(0.25 * (1.0 - v)));
    let fano = FanoForm {
        a: vec3::scale(&state.fano.a, v),
        b: vec3::scale(&state.fano.b, v),
        t: state.fano.t.scale(v),
    };
    Ok(TwoQubitState { rho: mixed, fano })
}

/// JSON wire form of a 4x4 complex matrix, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityMatrixJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl TwoQubitState {
    pub fn to_json(&self) -> DensityMatrixJson {
        let mut re = vec![vec![0.0; 4]; 4];
        let mut im = vec![vec![0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                re[i][j] = self.rho.0[i][j].re;
                im[i][j] = self.rho.0[i][j].im;
            }
        }
        DensityMatrixJson { re, im }
    }

    pub fn from_json(json: &DensityMatrixJson) -> Result<Self> {
        if json.re.len() != 4 || json.im.len() != 4 {
            return Err(Error::Malformed("expected 4 rows in `re` and `im`".into()));
        }
        let mut rho = ComplexMatrix4::zero();
        for i in 0..4 {
            if json.re[i].len() != 4 || json.im[i].len() != 4 {
                return Err(Error::Malformed(format!("row {i} is not length 4")));
            }
            for j in 0..4 {
                rho.0[i][j] = C64::new(json.re[i][j], json.im[i][j]);
            }
        }
        TwoQubitState::from_matrix(rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::sigma_z;

    #[test]
    fn bell_state_fano_and_purity() {
        let s = bell_state();
        assert_eq!(s.fano().a, [0.0; 3]);
        assert_eq!(s.fano().b, [0.0; 3]);
        let expected = RealMatrix3::diag([1.0, -1.0, 1.0]);
        assert!(s.fano().t.sub(&expected).norm() < 1e-12);
        assert!((s.purity() - 1.0).abs() < 1e-12);
        assert!(s.verdict().valid);
    }

    #[test]
    fn bell_state_marginals_are_maximally_mixed() {
        let s = bell_state();
        let half = ComplexMatrix2::identity().scale(0.5);
        assert!(s.partial_trace_a().sub(&half).norm() < 1e-12);
        assert!(s.partial_trace_b().sub(&half).norm() < 1e-12);
    }

    #[test]
    fn fano_of_product_state() {
        // |0><0| (x) I/2
        let ket0 = ComplexMatrix2::from_real([[1.0, 0.0], [0.0, 0.0]]);
        let rho = kron(&ket0, &ComplexMatrix2::identity().scale(0.5));
        let state = TwoQubitState::from_matrix(rho).unwrap();
        let f = state.fano();
        assert!((f.a[2] - 1.0).abs() < 1e-12);
        assert!(f.a[0].abs() < 1e-12 && f.a[1].abs() < 1e-12);
        assert!(vec3::norm(&f.b) < 1e-12);
        assert!(f.t.norm() < 1e-12);

        let mixed = TwoQubitState::from_matrix(ComplexMatrix4::identity().scale(0.25)).unwrap();
        assert!(vec3::norm(&mixed.fano().a) < 1e-12);
        assert!(vec3::norm(&mixed.fano().b) < 1e-12);
        assert!(mixed.fano().t.norm() < 1e-12);
    }

    #[test]
    fn fano_reconstruction_round_trip() {
        let s = bell_state();
        let rebuilt = matrix_of_fano(s.fano());
        assert!(rebuilt.sub(s.matrix()).norm() < 1e-10);
    }

    #[test]
    fn white_noise_mixing() {
        let s = bell_state();
        let same = mix_with_white_noise(&s, 1.0).unwrap();
        assert!(same.matrix().sub(s.matrix()).norm() < 1e-12);

        let white = mix_with_white_noise(&s, 0.0).unwrap();
        assert!(white
            .matrix()
            .sub(&ComplexMatrix4::identity().scale(0.25))
            .norm()
            < 1e-12);

        let half = mix_with_white_noise(&s, 0.5).unwrap();
        let expected = RealMatrix3::diag([0.5, -0.5, 0.5]);
        assert!(half.fano().t.sub(&expected).norm() < 1e-12);

        assert!(mix_with_white_noise(&s, 1.5).is_err());
        assert!(mix_with_white_noise(&s, -0.1).is_err());
    }

    #[test]
    fn mixing_composes_multiplicatively() {
        let s = bell_state();
        let a = mix_with_white_noise(&mix_with_white_noise(&s, 0.7).unwrap(), 0.4).unwrap();
        let b = mix_with_white_noise(&s, 0.28).unwrap();
        assert!(a.matrix().sub(b.matrix()).norm() < 1e-12);
    }

    #[test]
    fn invalid_states_are_diagnosed() {
        let zz = kron(&sigma_z(), &sigma_z());
        let verdict = is_valid_state(&zz);
        assert!(!verdict.valid);
        assert!(verdict.failed.contains(&"trace"));

        // Trace-one Hermitian matrix with a negative eigenvalue.
        let neg = ComplexMatrix4::diag_real([0.6, 0.5, -0.1, 0.0]);
        let verdict = is_valid_state(&neg);
        assert!(!verdict.valid);
        assert_eq!(verdict.failed, vec!["positivity"]);
        assert!((verdict.min_eigenvalue + 0.1).abs() < 1e-10);

        assert!(TwoQubitState::from_matrix(neg).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = bell_state();
        let json = s.to_json();
        let back = TwoQubitState::from_json(&json).unwrap();
        assert!(back.matrix().sub(s.matrix()).norm() < 1e-12);
    }
}
