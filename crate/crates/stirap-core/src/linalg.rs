// Copyright 2026 stirap Contributors
// SPDX-License-Identifier: Apache-2.0

//! Small fixed-size complex linear algebra.
//!
//! The whole simulator lives in a three-dimensional Hilbert space, so every
//! matrix here is a stack-allocated 3×3 (states, Hamiltonians) or 9×9
//! (vectorized superoperators). No heap allocation happens in the integrator
//! hot path.

use num_complex::Complex64;

pub type C64 = Complex64;

/// 3×3 complex matrix, row-major.
pub type Mat3 = [[C64; 3]; 3];

/// 9×9 complex matrix acting on a vectorized density matrix.
pub type Mat9 = [[C64; 9]; 9];

/// Row-major vectorization of a 3×3 matrix: `v[3*i + j] = m[i][j]`.
pub type Vec9 = [C64; 9];

pub const C_ZERO: C64 = C64::new(0.0, 0.0);
pub const C_ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn zeros3() -> Mat3 {
    [[C_ZERO; 3]; 3]
}

#[inline]
pub fn mul3(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = zeros3();
    for i in 0..3 {
        for k in 0..3 {
            let aik = a[i][k];
            for j in 0..3 {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

#[inline]
pub fn add3(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] += b[i][j];
        }
    }
    out
}

#[inline]
pub fn sub3(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] -= b[i][j];
        }
    }
    out
}

#[inline]
pub fn scale3(a: &Mat3, s: C64) -> Mat3 {
    let mut out = *a;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            *x *= s;
        }
    }
    out
}

/// `a + s * b`, the axpy used by the Runge-Kutta stages.
#[inline]
pub fn add_scaled3(a: &Mat3, s: f64, b: &Mat3) -> Mat3 {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] += s * b[i][j];
        }
    }
    out
}

#[inline]
pub fn adjoint3(a: &Mat3) -> Mat3 {
    let mut out = zeros3();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

#[inline]
pub fn trace3(a: &Mat3) -> C64 {
    a[0][0] + a[1][1] + a[2][2]
}

/// Largest entry magnitude, used as a matrix scale in tolerance checks.
pub fn max_abs3(a: &Mat3) -> f64 {
    a.iter()
        .flatten()
        .map(|x| x.norm())
        .fold(0.0, f64::max)
}

/// Largest entrywise deviation from Hermiticity, `max |a_ij - conj(a_ji)|`.
pub fn hermiticity_defect(a: &Mat3) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max((a[i][j] - a[j][i].conj()).norm());
        }
    }
    worst
}

/// Determinant of a 3×3 complex matrix.
pub fn det3(a: &Mat3) -> C64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Eigenvalues of a Hermitian 3×3 matrix, ascending.
///
/// Closed-form trigonometric solution of the characteristic cubic; good to
/// about machine precision relative to the matrix scale, which is all the
/// positivity and trace-distance checks need.
pub fn eigvals_hermitian3(a: &Mat3) -> [f64; 3] {
    let d = [a[0][0].re, a[1][1].re, a[2][2].re];
    let p1 = a[0][1].norm_sqr() + a[0][2].norm_sqr() + a[1][2].norm_sqr();
    if p1 == 0.0 {
        let mut eig = d;
        eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
        return eig;
    }
    let q = (d[0] + d[1] + d[2]) / 3.0;
    let p2 = (d[0] - q).powi(2) + (d[1] - q).powi(2) + (d[2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let mut b = *a;
    for (i, row) in b.iter_mut().enumerate() {
        row[i] -= C64::new(q, 0.0);
        for x in row.iter_mut() {
            *x /= p;
        }
    }
    let r = (det3(&b).re / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * std::f64::consts::FRAC_PI_3).cos();
    let mid = 3.0 * q - hi - lo;
    [lo, mid, hi]
}

/// Trace distance `½ Σ |eig(a - b)|` between two Hermitian matrices.
pub fn trace_distance(a: &Mat3, b: &Mat3) -> f64 {
    let diff = sub3(a, b);
    let eig = eigvals_hermitian3(&diff);
    0.5 * eig.iter().map(|x| x.abs()).sum::<f64>()
}

#[inline]
pub fn zeros9() -> Mat9 {
    [[C_ZERO; 9]; 9]
}

pub fn identity9() -> Mat9 {
    let mut out = zeros9();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = C_ONE;
    }
    out
}

pub fn mul9(a: &Mat9, b: &Mat9) -> Mat9 {
    let mut out = zeros9();
    for i in 0..9 {
        for k in 0..9 {
            let aik = a[i][k];
            if aik == C_ZERO {
                continue;
            }
            for j in 0..9 {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn apply9(a: &Mat9, v: &Vec9) -> Vec9 {
    let mut out = [C_ZERO; 9];
    for i in 0..9 {
        let mut acc = C_ZERO;
        for (j, vj) in v.iter().enumerate() {
            acc += a[i][j] * vj;
        }
        out[i] = acc;
    }
    out
}

fn one_norm9(a: &Mat9) -> f64 {
    let mut worst = 0.0_f64;
    for j in 0..9 {
        let mut col = 0.0;
        for row in a.iter() {
            col += row[j].norm();
        }
        worst = worst.max(col);
    }
    worst
}

/// Padé(13,13) coefficients normalized to `b0 = 1`, exact rationals rounded
/// to f64.
const PADE13: [f64; 14] = [
    1.0,
    0.5,
    0.12,
    0.018333333333333333,
    0.0019927536231884058,
    1.6304347826086957e-4,
    1.0351966873706004e-5,
    5.175983436853002e-7,
    2.0431513566525063e-8,
    6.306022705717595e-10,
    1.4837700484041422e-11,
    2.529153491597966e-13,
    2.8101705462199623e-15,
    1.5440497506703088e-17,
];

// Scaling threshold for Padé(13) from the standard scaling-and-squaring
// analysis.
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential of a 9×9 complex matrix via scaling-and-squaring with
/// a Padé(13) approximant.
pub fn expm9(a: &Mat9) -> Mat9 {
    let norm = one_norm9(a);
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scale = C64::new(1.0 / (1u64 << s) as f64, 0.0);
    let mut scaled = *a;
    for row in scaled.iter_mut() {
        for x in row.iter_mut() {
            *x *= scale;
        }
    }
    let mut result = pade13(&scaled);
    for _ in 0..s {
        result = mul9(&result, &result);
    }
    result
}

fn pade13(a: &Mat9) -> Mat9 {
    let eye = identity9();
    let a2 = mul9(a, a);
    let a4 = mul9(&a2, &a2);
    let a6 = mul9(&a2, &a4);

    let mut w = zeros9();
    for i in 0..9 {
        for j in 0..9 {
            w[i][j] = a6[i][j] * PADE13[13] + a4[i][j] * PADE13[11] + a2[i][j] * PADE13[9];
        }
    }
    let mut w = mul9(&w, &a6);
    for i in 0..9 {
        for j in 0..9 {
            w[i][j] += a6[i][j] * PADE13[7]
                + a4[i][j] * PADE13[5]
                + a2[i][j] * PADE13[3]
                + eye[i][j] * PADE13[1];
        }
    }
    let u = mul9(a, &w);

    let mut v = zeros9();
    for i in 0..9 {
        for j in 0..9 {
            v[i][j] = a6[i][j] * PADE13[12] + a4[i][j] * PADE13[10] + a2[i][j] * PADE13[8];
        }
    }
    let mut v = mul9(&v, &a6);
    for i in 0..9 {
        for j in 0..9 {
            v[i][j] += a6[i][j] * PADE13[6]
                + a4[i][j] * PADE13[4]
                + a2[i][j] * PADE13[2]
                + eye[i][j] * PADE13[0];
        }
    }

    // exp(A) ≈ (V - U)^{-1} (V + U)
    let mut num = zeros9();
    let mut den = zeros9();
    for i in 0..9 {
        for j in 0..9 {
            num[i][j] = v[i][j] + u[i][j];
            den[i][j] = v[i][j] - u[i][j];
        }
    }
    solve9(&den, &num)
}

/// Solve `A X = B` by Gaussian elimination with partial pivoting.
fn solve9(a: &Mat9, b: &Mat9) -> Mat9 {
    let mut lhs = *a;
    let mut rhs = *b;
    for col in 0..9 {
        let mut pivot_row = col;
        let mut pivot_mag = lhs[col][col].norm();
        for row in (col + 1)..9 {
            let mag = lhs[row][col].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        if pivot_row != col {
            lhs.swap(col, pivot_row);
            rhs.swap(col, pivot_row);
        }
        let pivot = lhs[col][col];
        for row in (col + 1)..9 {
            let factor = lhs[row][col] / pivot;
            if factor == C_ZERO {
                continue;
            }
            for j in col..9 {
                let x = lhs[col][j];
                lhs[row][j] -= factor * x;
            }
            for j in 0..9 {
                let x = rhs[col][j];
                rhs[row][j] -= factor * x;
            }
        }
    }
    let mut out = zeros9();
    for col in (0..9).rev() {
        for j in 0..9 {
            let mut sum = rhs[col][j];
            for k in (col + 1)..9 {
                sum -= lhs[col][k] * out[k][j];
            }
            out[col][j] = sum / lhs[col][col];
        }
    }
    out
}

#[inline]
pub fn vectorize(m: &Mat3) -> Vec9 {
    let mut v = [C_ZERO; 9];
    for i in 0..3 {
        for j in 0..3 {
            v[3 * i + j] = m[i][j];
        }
    }
    v
}

#[inline]
pub fn unvectorize(v: &Vec9) -> Mat3 {
    let mut m = zeros3();
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = v[3 * i + j];
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eigvals_of_diagonal_matrix_are_sorted_diagonal() {
        let mut a = zeros3();
        a[0][0] = c(3.0, 0.0);
        a[1][1] = c(-1.0, 0.0);
        a[2][2] = c(2.0, 0.0);
        assert_eq!(eigvals_hermitian3(&a), [-1.0, 2.0, 3.0]);
    }

    #[test]
    fn eigvals_of_resonant_raman_form() {
        // Real symmetric [[0, x, 0], [x, 0, y], [0, y, 0]] has eigenvalues
        // {0, ±sqrt(x² + y²)}.
        let x = 1.5;
        let y = 2.0;
        let mut a = zeros3();
        a[0][1] = c(x, 0.0);
        a[1][0] = c(x, 0.0);
        a[1][2] = c(y, 0.0);
        a[2][1] = c(y, 0.0);
        let eig = eigvals_hermitian3(&a);
        let r = (x * x + y * y).sqrt();
        assert!((eig[0] + r).abs() < 1e-12);
        assert!(eig[1].abs() < 1e-12);
        assert!((eig[2] - r).abs() < 1e-12);
    }

    #[test]
    fn eigvals_complex_hermitian_match_characteristic_polynomial() {
        let mut a = zeros3();
        a[0][0] = c(1.0, 0.0);
        a[1][1] = c(-0.5, 0.0);
        a[2][2] = c(0.25, 0.0);
        a[0][1] = c(0.3, 0.7);
        a[1][0] = a[0][1].conj();
        a[0][2] = c(-0.2, 0.1);
        a[2][0] = a[0][2].conj();
        a[1][2] = c(0.0, -0.4);
        a[2][1] = a[1][2].conj();
        for lam in eigvals_hermitian3(&a) {
            let mut shifted = a;
            for i in 0..3 {
                shifted[i][i] -= c(lam, 0.0);
            }
            assert!(
                det3(&shifted).norm() < 1e-10,
                "eigenvalue {lam} does not satisfy det(A - λI) = 0"
            );
        }
    }

    #[test]
    fn trace_distance_of_orthogonal_pure_states_is_one() {
        let mut a = zeros3();
        a[0][0] = C_ONE;
        let mut b = zeros3();
        b[2][2] = C_ONE;
        assert!((trace_distance(&a, &b) - 1.0).abs() < 1e-14);
        assert!(trace_distance(&a, &a) < 1e-15);
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let e = expm9(&zeros9());
        for i in 0..9 {
            for j in 0..9 {
                let want = if i == j { C_ONE } else { C_ZERO };
                assert!((e[i][j] - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn expm_of_diagonal_exponentiates_entries() {
        let mut a = zeros9();
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = c(0.1 * i as f64, -0.3 * i as f64);
        }
        let e = expm9(&a);
        for i in 0..9 {
            let want = a[i][i].exp();
            assert!((e[i][i] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn expm_antihermitian_is_unitary() {
        // Fill a Hermitian H, then exponentiate -iH and check unitarity.
        let mut h = zeros9();
        for i in 0..9 {
            h[i][i] = c((i as f64 - 4.0) * 0.7, 0.0);
            for j in (i + 1)..9 {
                let v = c(0.13 * (i + j) as f64, 0.07 * (j - i) as f64);
                h[i][j] = v;
                h[j][i] = v.conj();
            }
        }
        let mut a = zeros9();
        for i in 0..9 {
            for j in 0..9 {
                a[i][j] = C64::new(0.0, -1.0) * h[i][j];
            }
        }
        let u = expm9(&a);
        let mut udag = zeros9();
        for i in 0..9 {
            for j in 0..9 {
                udag[i][j] = u[j][i].conj();
            }
        }
        let prod = mul9(&u, &udag);
        for i in 0..9 {
            for j in 0..9 {
                let want = if i == j { C_ONE } else { C_ZERO };
                assert!(
                    (prod[i][j] - want).norm() < 1e-11,
                    "U U† deviates from identity at ({i}, {j})"
                );
            }
        }
    }

    #[test]
    fn expm_large_norm_scaling_path() {
        let mut a = zeros9();
        a[0][0] = c(20.0, 0.0);
        a[1][1] = c(-20.0, 0.0);
        let e = expm9(&a);
        assert!((e[0][0].re - 20.0_f64.exp()).abs() / 20.0_f64.exp() < 1e-10);
        assert!((e[1][1].re - (-20.0_f64).exp()).abs() < 1e-12);
        assert!((e[2][2] - C_ONE).norm() < 1e-12);
    }

    #[test]
    fn expm_matches_taylor_series_on_generic_matrix() {
        let mut a = zeros9();
        for i in 0..9 {
            for j in 0..9 {
                a[i][j] = c(
                    0.02 * ((i * 9 + j) % 7) as f64 - 0.05,
                    0.03 * ((i * 3 + j) % 5) as f64 - 0.04,
                );
            }
        }
        let e = expm9(&a);
        // Brute-force Taylor sum, valid because the scaled norm is small.
        let mut taylor = identity9();
        let mut term = identity9();
        for k in 1..30 {
            term = mul9(&term, &a);
            let f = 1.0 / (k as f64);
            for row in term.iter_mut() {
                for x in row.iter_mut() {
                    *x *= f;
                }
            }
            for i in 0..9 {
                for j in 0..9 {
                    taylor[i][j] += term[i][j];
                }
            }
        }
        for i in 0..9 {
            for j in 0..9 {
                assert!((e[i][j] - taylor[i][j]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn vectorize_roundtrip() {
        let mut m = zeros3();
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = c(i as f64, j as f64);
            }
        }
        assert_eq!(unvectorize(&vectorize(&m)), m);
    }
}
