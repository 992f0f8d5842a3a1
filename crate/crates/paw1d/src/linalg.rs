//! Small dense real helpers for the N x N Gram systems of the PAW
//! construction (N is the number of PAW functions per site, a handful).

/// Gauss-Jordan inverse with partial pivoting. Returns `None` when a pivot
/// degenerates.
pub(crate) fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| {
            m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap()
        })?;
        if !m[piv][col].is_finite() || m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        let p = m[col][col];
        for v in m[col].iter_mut() {
            *v /= p;
        }
        for row in 0..n {
            if row != col {
                let f = m[row][col];
                if f != 0.0 {
                    for k in 0..2 * n {
                        let sub = f * m[col][k];
                        m[row][k] -= sub;
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Eigenvalues of a small symmetric matrix by the cyclic Jacobi method.
pub(crate) fn symmetric_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.iter().map(|r| r.clone()).collect();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m[i][j] * m[i][j];
            }
        }
        if off.sqrt() < 1e-300 {
            break;
        }
        let scale: f64 = (0..n).map(|i| m[i][i].abs()).fold(0.0, f64::max).max(1.0);
        if off.sqrt() < 1e-16 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eigs
}

/// 2-norm condition number of a small symmetric matrix.
pub(crate) fn symmetric_cond(a: &[Vec<f64>]) -> f64 {
    let eigs = symmetric_eigenvalues(a);
    let amax = eigs.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
    let amin = eigs.iter().fold(f64::INFINITY, |m, &v| m.min(v.abs()));
    if amin == 0.0 {
        f64::INFINITY
    } else {
        amax / amin
    }
}
