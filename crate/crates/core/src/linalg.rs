//! Fixed-size dense helpers: 3×3 and 4×4 real matrices, 4×4 complex matrices,
//! cyclic Jacobi for real symmetric matrices and a 3×3 SVD with proper
//! rotations.

use num_complex::Complex64;

pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];
pub type Mat4 = [[f64; 4]; 4];
pub type CMat4 = [[Complex64; 4]; 4];

pub const IDENTITY3: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
pub const IDENTITY4: Mat4 = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
];

/// Minkowski metric `diag(1, −1, −1, −1)`.
pub const MINKOWSKI: Mat4 = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0],
    [0.0, 0.0, -1.0, 0.0],
    [0.0, 0.0, 0.0, -1.0],
];

pub fn matmul<const N: usize>(a: &[[f64; N]; N], b: &[[f64; N]; N]) -> [[f64; N]; N] {
    let mut out = [[0.0; N]; N];
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            for j in 0..N {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn transpose<const N: usize>(a: &[[f64; N]; N]) -> [[f64; N]; N] {
    let mut out = [[0.0; N]; N];
    for i in 0..N {
        for j in 0..N {
            out[j][i] = a[i][j];
        }
    }
    out
}

pub fn matvec3(m: &Mat3, v: &Vec3) -> Vec3 {
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    }
    out
}

/// Largest absolute entry of `a − b`.
pub fn max_abs_diff<const N: usize>(a: &[[f64; N]; N], b: &[[f64; N]; N]) -> f64 {
    let mut m = 0.0f64;
    for i in 0..N {
        for j in 0..N {
            m = m.max((a[i][j] - b[i][j]).abs());
        }
    }
    m
}

pub fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det4(m: &Mat4) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    det
}

pub fn cross(u: &Vec3, v: &Vec3) -> Vec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

pub fn dot3(u: &Vec3, v: &Vec3) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub fn norm3(v: &Vec3) -> f64 {
    libm::sqrt(dot3(v, v))
}

/// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi sweeps.
///
/// Returns `(values, vectors)` with eigenvector `k` stored in column `k` of
/// `vectors`. Values are not sorted. Only the upper triangle is read.
pub fn symmetric_eigen<const N: usize>(m: &[[f64; N]; N]) -> ([f64; N], [[f64; N]; N]) {
    let mut a = *m;
    for i in 0..N {
        for j in 0..i {
            a[i][j] = a[j][i];
        }
    }
    let mut v = [[0.0; N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    let scale: f64 = a.iter().flatten().map(|x| x * x).sum();
    if scale == 0.0 {
        return ([0.0; N], v);
    }

    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..N {
            for q in p + 1..N {
                off += a[p][q] * a[p][q];
            }
        }
        if off <= 1e-34 * scale {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..N {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut values = [0.0; N];
    for i in 0..N {
        values[i] = a[i][i];
    }
    (values, v)
}

/// Ascending eigenvalues of a 4×4 Hermitian matrix.
///
/// Uses the real symmetric embedding `[[Re, −Im], [Im, Re]]`, whose spectrum
/// is that of the input with every eigenvalue doubled.
pub fn hermitian_eigenvalues4(h: &CMat4) -> [f64; 4] {
    let mut big = [[0.0; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            let z = h[i][j];
            big[i][j] = z.re;
            big[i + 4][j + 4] = z.re;
            big[i][j + 4] = -z.im;
            big[i + 4][j] = z.im;
        }
    }
    let (mut vals, _) = symmetric_eigen(&big);
    vals.sort_by(f64::total_cmp);
    [
        0.5 * (vals[0] + vals[1]),
        0.5 * (vals[2] + vals[3]),
        0.5 * (vals[4] + vals[5]),
        0.5 * (vals[6] + vals[7]),
    ]
}

/// Symmetric eigen-decomposition `m = O diag(values) Oᵀ` with `det O = +1`.
pub fn symmetric_eigen3_proper(m: &Mat3) -> (Vec3, Mat3) {
    let (values, mut o) = symmetric_eigen(m);
    if det3(&o) < 0.0 {
        for row in o.iter_mut() {
            row[2] = -row[2];
        }
    }
    (values, o)
}

/// Signed singular value decomposition `m = U diag(s) Vᵀ` of a 3×3 matrix
/// with `U`, `V` proper rotations.
///
/// `|s|` is sorted descending. When `det m < 0` the last (smallest) entry of
/// `s` carries the negative sign.
pub fn svd3_proper(m: &Mat3) -> (Mat3, Vec3, Mat3) {
    // One-sided Jacobi on the columns of m.
    let mut a = *m;
    let mut v = IDENTITY3;
    for _sweep in 0..64 {
        let mut rotated = false;
        for p in 0..3 {
            for q in p + 1..3 {
                let alpha = a[0][p] * a[0][p] + a[1][p] * a[1][p] + a[2][p] * a[2][p];
                let beta = a[0][q] * a[0][q] + a[1][q] * a[1][q] + a[2][q] * a[2][q];
                let gamma = a[0][p] * a[0][q] + a[1][p] * a[1][q] + a[2][p] * a[2][q];
                if gamma == 0.0 || gamma.abs() <= 1e-17 * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                for row in a.iter_mut() {
                    let x = row[p];
                    let y = row[q];
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
                for row in v.iter_mut() {
                    let x = row[p];
                    let y = row[q];
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let column = |mat: &Mat3, k: usize| -> Vec3 { [mat[0][k], mat[1][k], mat[2][k]] };
    let mut order = [0usize, 1, 2];
    let sigma = [
        norm3(&column(&a, 0)),
        norm3(&column(&a, 1)),
        norm3(&column(&a, 2)),
    ];
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));

    let mut vs = [[0.0; 3]; 3];
    let mut us: [Option<Vec3>; 3] = [None; 3];
    let mut s = [0.0; 3];
    let cutoff = 1e-14 * sigma[order[0]].max(1e-300);
    for (k, &src) in order.iter().enumerate() {
        for r in 0..3 {
            vs[r][k] = v[r][src];
        }
        s[k] = sigma[src];
        if sigma[src] > cutoff {
            let col = column(&a, src);
            us[k] = Some([col[0] / s[k], col[1] / s[k], col[2] / s[k]]);
        }
    }
    if det3(&vs) < 0.0 {
        for row in vs.iter_mut() {
            row[2] = -row[2];
        }
    }

    let u_cols = complete_orthonormal(us);
    let mut u = [[0.0; 3]; 3];
    for k in 0..3 {
        for r in 0..3 {
            u[r][k] = u_cols[k][r];
        }
    }
    if det3(&u) < 0.0 {
        for row in u.iter_mut() {
            row[2] = -row[2];
        }
    }
    // Signed diagonal of Uᵀ m V.
    for k in 0..3 {
        let uk = column(&u, k);
        let mv = matvec3(m, &column(&vs, k));
        s[k] = dot3(&uk, &mv);
    }
    (u, s, vs)
}

/// Fills missing columns so that the result is orthonormal and right-handed
/// whenever a column had to be invented.
fn complete_orthonormal(cols: [Option<Vec3>; 3]) -> [Vec3; 3] {
    match cols {
        [Some(u0), Some(u1), Some(u2)] => [u0, u1, u2],
        [Some(u0), Some(u1), None] => [u0, u1, cross(&u0, &u1)],
        [Some(u0), None, _] => {
            let u1 = perpendicular(&u0);
            [u0, u1, cross(&u0, &u1)]
        }
        _ => [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    }
}

fn perpendicular(u: &Vec3) -> Vec3 {
    // Cross with the basis vector least aligned with u.
    let k = (0..3)
        .min_by(|&i, &j| u[i].abs().total_cmp(&u[j].abs()))
        .unwrap_or(0);
    let mut e = [0.0; 3];
    e[k] = 1.0;
    let w = cross(u, &e);
    let n = norm3(&w);
    [w[0] / n, w[1] / n, w[2] / n]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rot_z(theta: f64) -> Mat3 {
        let (s, c) = (libm::sin(theta), libm::cos(theta));
        [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
    }

    #[test]
    fn jacobi_diagonal_input() {
        let m = [[0.1, 0.0, 0.0], [0.0, 0.3, 0.0], [0.0, 0.0, 0.2]];
        let (vals, vecs) = symmetric_eigen(&m);
        assert_eq!(vals, [0.1, 0.3, 0.2]);
        assert_eq!(vecs, IDENTITY3);
    }

    #[test]
    fn jacobi_reconstructs() {
        let m = [[2.0, -1.0, 0.5], [-1.0, 0.3, 0.7], [0.5, 0.7, -1.2]];
        let (vals, o) = symmetric_eigen(&m);
        let d = [[vals[0], 0.0, 0.0], [0.0, vals[1], 0.0], [0.0, 0.0, vals[2]]];
        let back = matmul(&matmul(&o, &d), &transpose(&o));
        assert!(max_abs_diff(&back, &m) < 1e-13);
    }

    #[test]
    fn hermitian_embedding_matches_known_spectrum() {
        // σ_y ⊗ I has eigenvalues ±1, each twice.
        let z = Complex64::new(0.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let mut h = [[z; 4]; 4];
        h[0][2] = -i;
        h[1][3] = -i;
        h[2][0] = i;
        h[3][1] = i;
        let vals = hermitian_eigenvalues4(&h);
        let want = [-1.0, -1.0, 1.0, 1.0];
        for k in 0..4 {
            assert!((vals[k] - want[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn svd_rotated_diagonal() {
        let d = [[0.5, 0.0, 0.0], [0.0, 0.2, 0.0], [0.0, 0.0, 0.1]];
        let m = matmul(&rot_z(core::f64::consts::FRAC_PI_2), &d);
        let (u, s, v) = svd3_proper(&m);
        assert!((det3(&u) - 1.0).abs() < 1e-12);
        assert!((det3(&v) - 1.0).abs() < 1e-12);
        for (got, want) in s.iter().zip([0.5, 0.2, 0.1]) {
            assert!((got - want).abs() < 1e-14);
        }
        let back = matmul(&transpose(&u), &matmul(&m, &v));
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s[i] } else { 0.0 };
                assert!((back[i][j] - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn svd_negative_determinant_keeps_one_sign() {
        let m = [[0.3, 0.0, 0.0], [0.0, 0.3, 0.0], [0.0, 0.0, -0.3]];
        let (_, s, _) = svd3_proper(&m);
        assert_eq!(s.iter().filter(|x| **x < 0.0).count(), 1);
        assert!(s[2] < 0.0);
        for x in s {
            assert!((x.abs() - 0.3).abs() < 1e-14);
        }
    }

    #[test]
    fn svd_rank_deficient() {
        let m = [[0.0, 0.4, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]];
        let (u, s, v) = svd3_proper(&m);
        assert!((s[0] - 0.4).abs() < 1e-15);
        assert_eq!(s[1], 0.0);
        assert!((det3(&u) - 1.0).abs() < 1e-12);
        assert!((det3(&v) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn det4_of_permutation() {
        let mut p = IDENTITY4;
        p.swap(0, 1);
        assert_eq!(det4(&p), -1.0);
        assert_eq!(det4(&IDENTITY4), 1.0);
    }
}
