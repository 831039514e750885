//! Dense linear-algebra substrate: complex 2x2/4x4 and real 3x3 matrices,
//! Pauli decomposition, Hermitian eigensolves (cyclic Jacobi), singular
//! values, and projection onto the positive-semidefinite cone.
//!
//! Everything here is fixed-size and allocation-free; there is no general
//! n-by-n path on purpose.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Real three-vector in Bloch coordinates.
pub type RealVector3 = [f64; 3];

/// Centralized numeric tolerances.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Maximum `|M - M†|` entry for a matrix to count as Hermitian.
    pub hermitian: f64,
    /// Most negative eigenvalue still accepted as positive semidefinite.
    pub psd: f64,
    /// Target off-diagonal mass for Jacobi convergence.
    pub convergence: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            hermitian: 1e-12,
            psd: -1e-10,
            convergence: 1e-12,
        }
    }
}

/// Default tolerance set shared by the validation helpers.
pub const TOL: Tolerances = Tolerances {
    hermitian: 1e-12,
    psd: -1e-10,
    convergence: 1e-12,
};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense row-major complex matrix of compile-time dimension `D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix<const D: usize>(pub [[C64; D]; D]);

/// Single-qubit operator.
pub type ComplexMatrix2 = ComplexMatrix<2>;
/// Two-qubit operator.
pub type ComplexMatrix4 = ComplexMatrix<4>;

impl<const D: usize> ComplexMatrix<D> {
    pub fn zero() -> Self {
        ComplexMatrix([[ZERO; D]; D])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..D {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_real(entries: [[f64; D]; D]) -> Self {
        let mut m = Self::zero();
        for i in 0..D {
            for j in 0..D {
                m.0[i][j] = C64::new(entries[i][j], 0.0);
            }
        }
        m
    }

    pub fn diag_real(d: [f64; D]) -> Self {
        let mut m = Self::zero();
        for i in 0..D {
            m.0[i][i] = C64::new(d[i], 0.0);
        }
        m
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..D {
            for j in 0..D {
                m.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        m
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..D {
            for j in 0..D {
                m.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        self.scale_c(C64::new(s, 0.0))
    }

    pub fn scale_c(&self, s: C64) -> Self {
        let mut m = Self::zero();
        for i in 0..D {
            for j in 0..D {
                m.0[i][j] = self.0[i][j] * s;
            }
        }
        m
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..D {
            for j in 0..D {
                let mut acc = ZERO;
                for k in 0..D {
                    acc += self.0[i][k] * rhs.0[k][j];
                }
                m.0[i][j] = acc;
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..D {
            for j in 0..D {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..D).map(|i| self.0[i][i]).sum()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..D {
            for j in 0..D {
                acc += self.0[i][j].norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Largest deviation `|M_ij - conj(M_ji)|` together with its position.
    pub fn hermiticity_defect(&self) -> (usize, usize, f64) {
        let mut worst = (0, 0, 0.0);
        for i in 0..D {
            for j in 0..D {
                let dev = (self.0[i][j] - self.0[j][i].conj()).norm();
                if dev > worst.2 {
                    worst = (i, j, dev);
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect().2 <= tol
    }

    fn require_hermitian(&self, tol: f64) -> Result<()> {
        let (row, col, deviation) = self.hermiticity_defect();
        if deviation > tol {
            return Err(Error::NonHermitian {
                row,
                col,
                deviation,
                tolerance: tol,
            });
        }
        Ok(())
    }

    /// `(M + M†)/2`; removes round-off anti-Hermitian noise.
    pub fn hermitize(&self) -> Self {
        self.add(&self.adjoint()).scale(0.5)
    }

    pub fn all_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl ComplexMatrix2 {
    /// `tr[self * rhs]`.
    pub fn trace_with(&self, rhs: &Self) -> C64 {
        self.mul(rhs).trace()
    }
}

impl ComplexMatrix4 {
    pub fn trace_with(&self, rhs: &Self) -> C64 {
        self.mul(rhs).trace()
    }
}

/// Kronecker product of two single-qubit operators, `a` on the first factor.
pub fn kron(a: &ComplexMatrix2, b: &ComplexMatrix2) -> ComplexMatrix4 {
    let mut m = ComplexMatrix4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    m
}

/// Pauli x.
pub fn sigma_x() -> ComplexMatrix2 {
    ComplexMatrix([[ZERO, ONE], [ONE, ZERO]])
}

/// Pauli y.
pub fn sigma_y() -> ComplexMatrix2 {
    ComplexMatrix([
        [ZERO, C64::new(0.0, -1.0)],
        [C64::new(0.0, 1.0), ZERO],
    ])
}

/// Pauli z.
pub fn sigma_z() -> ComplexMatrix2 {
    ComplexMatrix([[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]])
}

/// Pauli matrix by index 0..2 -> x, y, z.
pub fn sigma(i: usize) -> ComplexMatrix2 {
    match i {
        0 => sigma_x(),
        1 => sigma_y(),
        2 => sigma_z(),
        _ => panic!("Pauli index must be 0, 1, or 2"),
    }
}

/// `a0*I + a.sigma` as a 2x2 operator.
pub fn pauli_compose(a0: f64, a: RealVector3) -> ComplexMatrix2 {
    let mut m = ComplexMatrix2::identity().scale(a0);
    for i in 0..3 {
        m = m.add(&sigma(i).scale(a[i]));
    }
    m
}

/// Expands a Hermitian 2x2 operator in the Pauli basis: `H = a0*I + a.sigma`.
pub fn pauli_decompose(h: &ComplexMatrix2, tol: &Tolerances) -> Result<(f64, RealVector3)> {
    h.require_hermitian(tol.hermitian)?;
    let a0 = 0.5 * h.trace().re;
    let mut a = [0.0; 3];
    for i in 0..3 {
        a[i] = 0.5 * h.trace_with(&sigma(i)).re;
    }
    Ok((a0, a))
}

/// Eigendecomposition of a Hermitian matrix: values plus unitary column
/// eigenvectors, sorted by descending eigenvalue.
#[derive(Debug, Clone, Copy)]
pub struct Eigh<const D: usize> {
    pub values: [f64; D],
    /// Columns are the eigenvectors; `M = V diag(values) V†`.
    pub vectors: ComplexMatrix<D>,
}

/// Cyclic Jacobi for complex Hermitian matrices. Uniform code path for the
/// 2x2, 3x3 (real symmetric embedded) and 4x4 problems in this crate.
pub fn eigh<const D: usize>(m: &ComplexMatrix<D>, tol: &Tolerances) -> Result<Eigh<D>> {
    m.require_hermitian(tol.hermitian)?;
    let mut a = m.hermitize();
    let mut v = ComplexMatrix::<D>::identity();
    let scale = a.norm().max(1.0);

    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..D {
            for q in (p + 1)..D {
                off += a.0[p][q].norm_sqr();
            }
        }
        if off.sqrt() <= tol.convergence * 1e-2 * scale {
            break;
        }
        for p in 0..D {
            for q in (p + 1)..D {
                let beta = a.0[p][q];
                let b = beta.norm();
                if b <= f64::EPSILON * scale {
                    a.0[p][q] = ZERO;
                    a.0[q][p] = ZERO;
                    continue;
                }
                let w = beta / b;
                let alpha = a.0[p][p].re;
                let gamma = a.0[q][q].re;
                let tau = (gamma - alpha) / (2.0 * b);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Unitary: identity except in the (p,q) plane, where it is
                // diag(1, conj(w)) * [[c, s], [-s, c]].
                let upp = C64::new(c, 0.0);
                let upq = C64::new(s, 0.0);
                let uqp = w.conj() * (-s);
                let uqq = w.conj() * c;

                // a <- U† a U, applied as column then row updates.
                for r in 0..D {
                    let arp = a.0[r][p];
                    let arq = a.0[r][q];
                    a.0[r][p] = arp * upp + arq * uqp;
                    a.0[r][q] = arp * upq + arq * uqq;
                }
                for r in 0..D {
                    let apr = a.0[p][r];
                    let aqr = a.0[q][r];
                    a.0[p][r] = upp.conj() * apr + uqp.conj() * aqr;
                    a.0[q][r] = upq.conj() * apr + uqq.conj() * aqr;
                }
                for r in 0..D {
                    let vrp = v.0[r][p];
                    let vrq = v.0[r][q];
                    v.0[r][p] = vrp * upp + vrq * uqp;
                    v.0[r][q] = vrp * upq + vrq * uqq;
                }
            }
        }
    }

    let mut order: [usize; D] = [0; D];
    for (i, slot) in order.iter_mut().enumerate() {
        *slot = i;
    }
    order.sort_by(|&i, &j| a.0[j][j].re.partial_cmp(&a.0[i][i].re).unwrap());

    let mut values = [0.0; D];
    let mut vectors = ComplexMatrix::<D>::zero();
    for (col, &src) in order.iter().enumerate() {
        values[col] = a.0[src][src].re;
        for r in 0..D {
            vectors.0[r][col] = v.0[r][src];
        }
    }
    Ok(Eigh { values, vectors })
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn eigenvalues_hermitian<const D: usize>(
    m: &ComplexMatrix<D>,
    tol: &Tolerances,
) -> Result<[f64; D]> {
    Ok(eigh(m, tol)?.values)
}

/// Frobenius-nearest positive-semidefinite matrix: clips negative
/// eigenvalues to zero. Idempotent on PSD inputs.
pub fn psd_project<const D: usize>(m: &ComplexMatrix<D>, tol: &Tolerances) -> Result<ComplexMatrix<D>> {
    let eig = eigh(m, tol)?;
    if eig.values[D - 1] >= 0.0 {
        return Ok(m.hermitize());
    }
    let mut out = ComplexMatrix::<D>::zero();
    for k in 0..D {
        let lam = eig.values[k].max(0.0);
        if lam == 0.0 {
            continue;
        }
        for i in 0..D {
            for j in 0..D {
                out.0[i][j] += eig.vectors.0[i][k] * eig.vectors.0[j][k].conj() * lam;
            }
        }
    }
    Ok(out.hermitize())
}

/// Real 3x3 matrix acting on Bloch vectors, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealMatrix3(pub [[f64; 3]; 3]);

impl RealMatrix3 {
    pub fn zero() -> Self {
        RealMatrix3([[0.0; 3]; 3])
    }

    pub fn identity() -> Self {
        RealMatrix3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn diag(d: RealVector3) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for e in row.iter_mut() {
                *e *= s;
            }
        }
        m
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut m = *self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(-1.0))
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &RealVector3) -> RealVector3 {
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = self.0[i][0] * v[0] + self.0[i][1] * v[1] + self.0[i][2] * v[2];
        }
        out
    }

    pub fn mul_mat(&self, rhs: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        m
    }

    /// Outer product `u v^T`.
    pub fn outer(u: &RealVector3, v: &RealVector3) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = u[i] * v[j];
            }
        }
        m
    }

    pub fn norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|e| e * e)
            .sum::<f64>()
            .sqrt()
    }

    pub fn all_finite(&self) -> bool {
        self.0.iter().flatten().all(|e| e.is_finite())
    }

    /// True when the matrix is a multiple of the identity within `tol`,
    /// returning the scale factor.
    pub fn isotropic_scale(&self, tol: f64) -> Option<f64> {
        let c = (self.0[0][0] + self.0[1][1] + self.0[2][2]) / 3.0;
        let dev = self.sub(&RealMatrix3::identity().scale(c)).norm();
        (dev <= tol).then_some(c)
    }
}

/// Singular values of a real 3x3 matrix, descending; computed from the
/// symmetric eigenproblem of `T^T T` through the same Jacobi path.
pub fn singular_values_3x3(t: &RealMatrix3) -> RealVector3 {
    let tt = t.transpose().mul_mat(t);
    let embedded = ComplexMatrix::<3>::from_real(tt.0);
    let eig = eigh(&embedded, &TOL).expect("T^T T is symmetric by construction");
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = eig.values[i].max(0.0).sqrt();
    }
    out
}

/// Bloch-vector helpers.
pub mod vec3 {
    use super::RealVector3;

    pub fn dot(a: &RealVector3, b: &RealVector3) -> f64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    pub fn norm(a: &RealVector3) -> f64 {
        dot(a, a).sqrt()
    }

    pub fn add(a: &RealVector3, b: &RealVector3) -> RealVector3 {
        [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
    }

    pub fn sub(a: &RealVector3, b: &RealVector3) -> RealVector3 {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }

    pub fn scale(a: &RealVector3, s: f64) -> RealVector3 {
        [a[0] * s, a[1] * s, a[2] * s]
    }

    /// Unit vector along `a`, or `(0,0,1)` for a zero-norm input; the fixed
    /// fallback keeps tie-breaking deterministic.
    pub fn normalize_or_z(a: &RealVector3) -> RealVector3 {
        let n = norm(a);
        if n <= 1e-14 {
            [0.0, 0.0, 1.0]
        } else {
            scale(a, 1.0 / n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn pauli_decompose_basis_elements() {
        let (a0, a) = pauli_decompose(&sigma_z(), &TOL).unwrap();
        assert_close(a0, 0.0, 1e-15);
        assert_eq!(a, [0.0, 0.0, 1.0]);

        let (a0, a) = pauli_decompose(&ComplexMatrix2::identity(), &TOL).unwrap();
        assert_close(a0, 1.0, 1e-15);
        assert_eq!(a, [0.0, 0.0, 0.0]);

        let proj_x = ComplexMatrix2::identity().add(&sigma_x()).scale(0.5);
        let (a0, a) = pauli_decompose(&proj_x, &TOL).unwrap();
        assert_close(a0, 0.5, 1e-15);
        assert_close(a[0], 0.5, 1e-15);
        assert_close(a[1], 0.0, 1e-15);
        assert_close(a[2], 0.0, 1e-15);
    }

    #[test]
    fn pauli_decompose_rejects_non_hermitian() {
        let mut m = sigma_x();
        m.0[0][1] = C64::new(0.0, 0.5);
        let err = pauli_decompose(&m, &TOL).unwrap_err();
        match err {
            Error::NonHermitian { row, col, .. } => {
                assert!((row, col) == (0, 1) || (row, col) == (1, 0));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn eigenvalues_of_pauli_and_projectors() {
        let vals = eigenvalues_hermitian(&sigma_z(), &TOL).unwrap();
        assert_close(vals[0], 1.0, 1e-12);
        assert_close(vals[1], -1.0, 1e-12);

        let proj = ComplexMatrix2::identity().add(&sigma_x()).scale(0.5);
        let vals = eigenvalues_hermitian(&proj, &TOL).unwrap();
        assert_close(vals[0], 1.0, 1e-12);
        assert_close(vals[1], 0.0, 1e-12);

        let mixed = ComplexMatrix4::identity().scale(0.25);
        let vals = eigenvalues_hermitian(&mixed, &TOL).unwrap();
        for v in vals {
            assert_close(v, 0.25, 1e-12);
        }
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        // Fixed pseudo-random Hermitian matrices via a simple LCG.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for _ in 0..200 {
            let mut m = ComplexMatrix4::zero();
            for i in 0..4 {
                for j in 0..4 {
                    m.0[i][j] = C64::new(next(), next());
                }
            }
            let h = m.hermitize();
            let eig = eigh(&h, &TOL).unwrap();
            // V diag V† == H
            let mut rec = ComplexMatrix4::zero();
            for k in 0..4 {
                for i in 0..4 {
                    for j in 0..4 {
                        rec.0[i][j] +=
                            eig.vectors.0[i][k] * eig.vectors.0[j][k].conj() * eig.values[k];
                    }
                }
            }
            assert!(rec.sub(&h).norm() < 1e-10, "reconstruction failed");
            let trace_sum: f64 = eig.values.iter().sum();
            assert_close(trace_sum, h.trace().re, 1e-10);
            for k in 1..4 {
                assert!(eig.values[k - 1] >= eig.values[k] - 1e-12);
            }
        }
    }

    #[test]
    fn psd_project_clips_negative_eigenvalues() {
        let projected = psd_project(&sigma_z(), &TOL).unwrap();
        let expected = ComplexMatrix2::from_real([[1.0, 0.0], [0.0, 0.0]]);
        assert!(projected.sub(&expected).norm() < 1e-12);

        let id = ComplexMatrix2::identity();
        assert!(psd_project(&id, &TOL).unwrap().sub(&id).norm() < 1e-13);

        let m = ComplexMatrix2::from_real([[2.0, 0.0], [0.0, -3.0]]);
        let projected = psd_project(&m, &TOL).unwrap();
        let expected = ComplexMatrix2::from_real([[2.0, 0.0], [0.0, 0.0]]);
        assert!(projected.sub(&expected).norm() < 1e-12);
    }

    #[test]
    fn singular_values_match_closed_forms() {
        let svals = singular_values_3x3(&RealMatrix3::diag([1.0, -1.0, 1.0]));
        for s in svals {
            assert_close(s, 1.0, 1e-12);
        }
        let svals = singular_values_3x3(&RealMatrix3::zero());
        for s in svals {
            assert_close(s, 0.0, 1e-12);
        }
        let p: f64 = 0.25;
        let svals = singular_values_3x3(&RealMatrix3::diag([p.sqrt(), -p.sqrt(), p]));
        assert_close(svals[0], 0.5, 1e-12);
        assert_close(svals[1], 0.5, 1e-12);
        assert_close(svals[2], 0.25, 1e-12);
    }

    #[test]
    fn kron_of_paulis() {
        let zz = kron(&sigma_z(), &sigma_z());
        let expected = ComplexMatrix4::diag_real([1.0, -1.0, -1.0, 1.0]);
        assert!(zz.sub(&expected).norm() < 1e-15);
    }
}
