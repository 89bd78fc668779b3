//! Scaled lower-triangular vectorization of symmetric matrices.
//!
//! Order is column-major over the lower triangle (j = 0..p, i = j..p) with
//! off-diagonal entries multiplied by √2, so the coordinate dot product of
//! two vectorized matrices equals their trace inner product.

use nalgebra::DMatrix;

pub const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Vector length of a vectorized p×p symmetric matrix: p(p+1)/2.
pub fn svec_len(p: usize) -> usize {
    p * (p + 1) / 2
}

/// Rebuild the symmetric matrix from its scaled-vector coordinates.
pub fn smat(p: usize, v: &[f64]) -> DMatrix<f64> {
    debug_assert_eq!(v.len(), svec_len(p));
    let mut m = DMatrix::zeros(p, p);
    let mut k = 0;
    for j in 0..p {
        for i in j..p {
            let val = if i == j { v[k] } else { v[k] / SQRT2 };
            m[(i, j)] = val;
            m[(j, i)] = val;
            k += 1;
        }
    }
    m
}

/// Append the scaled-vector coordinates of a symmetric matrix to `out`.
pub fn svec_push(m: &DMatrix<f64>, out: &mut Vec<f64>) {
    let p = m.nrows();
    debug_assert_eq!(p, m.ncols());
    for j in 0..p {
        for i in j..p {
            if i == j {
                out.push(m[(i, j)]);
            } else {
                // symmetrize before scaling to absorb eigensolver roundoff
                out.push(SQRT2 * 0.5 * (m[(i, j)] + m[(j, i)]));
            }
        }
    }
}

/// Write the scaled-vector coordinates of a symmetric matrix into a slice.
pub fn svec_into(m: &DMatrix<f64>, out: &mut [f64]) {
    let p = m.nrows();
    let mut k = 0;
    for j in 0..p {
        for i in j..p {
            out[k] = if i == j {
                m[(i, j)]
            } else {
                SQRT2 * 0.5 * (m[(i, j)] + m[(j, i)])
            };
            k += 1;
        }
    }
}

/// Jordan product (XY + YX)/2 of two vectorized symmetric matrices.
pub fn psd_product(p: usize, x: &[f64], y: &[f64], out: &mut [f64]) {
    let xm = smat(p, x);
    let ym = smat(p, y);
    let mut prod = &xm * &ym;
    let yx = &ym * &xm;
    prod += yx;
    prod *= 0.5;
    svec_into(&prod, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svec_smat_round_trip() {
        let v = vec![1.0, 0.3, -0.4, 2.0, 0.8, 3.0];
        let m = smat(3, &v);
        let mut back = vec![0.0; 6];
        svec_into(&m, &mut back);
        for (a, b) in v.iter().zip(&back) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn index_order_is_column_major_lower() {
        // entries (0,0),(1,0),(2,0),(1,1),(2,1),(2,2)
        let v = vec![1.0, 2.0 * SQRT2, 3.0 * SQRT2, 4.0, 5.0 * SQRT2, 6.0];
        let m = smat(3, &v);
        assert_eq!(m[(0, 0)], 1.0);
        assert!((m[(1, 0)] - 2.0).abs() < 1e-15);
        assert!((m[(2, 0)] - 3.0).abs() < 1e-15);
        assert_eq!(m[(1, 1)], 4.0);
        assert!((m[(2, 1)] - 5.0).abs() < 1e-15);
        assert_eq!(m[(2, 2)], 6.0);
    }
}
