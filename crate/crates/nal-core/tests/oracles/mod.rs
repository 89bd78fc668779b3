//! Independent reference solvers used only to check the main
//! implementation. Deliberately brute-force. Each test binary uses the
//! subset it needs.
#![allow(dead_code)]

use nal_core::probio::Problem;
use nalgebra::{DMatrix, DVector};

/// Exact minimum enclosing ball by enumerating boundary subsets of size
/// ≤ d+1: each candidate is the smallest ball with the subset on its
/// boundary (center in the subset's affine hull); the answer is the
/// smallest candidate that covers every point.
pub fn exact_meb(points: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let n = points.len();
    let d = points[0].len();
    let mut best_r = f64::INFINITY;
    let mut best_c = points[0].clone();

    let mut subset = Vec::new();
    let max_k = (d + 1).min(n);
    enumerate_subsets(n, max_k, &mut subset, &mut |idx: &[usize]| {
        if let Some((c, r)) = circumball(points, idx) {
            if r < best_r {
                let covers = points.iter().all(|p| {
                    let dist: f64 = p
                        .iter()
                        .zip(&c)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                        .sqrt();
                    dist <= r + 1e-10
                });
                if covers {
                    best_r = r;
                    best_c = c;
                }
            }
        }
    });
    (best_r, best_c)
}

fn enumerate_subsets(
    n: usize,
    max_k: usize,
    current: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    fn rec(
        start: usize,
        n: usize,
        max_k: usize,
        current: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if !current.is_empty() {
            visit(current);
        }
        if current.len() == max_k {
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, max_k, current, visit);
            current.pop();
        }
    }
    rec(0, n, max_k, current, visit);
}

/// Smallest ball with all subset points on the boundary, center in their
/// affine hull. Returns None for degenerate (affinely dependent) subsets;
/// those optima are found through smaller subsets.
fn circumball(points: &[Vec<f64>], idx: &[usize]) -> Option<(Vec<f64>, f64)> {
    let d = points[0].len();
    let p0 = &points[idx[0]];
    let k = idx.len() - 1;
    if k == 0 {
        return Some((p0.clone(), 0.0));
    }
    // center = p0 + V α where V columns are p_i − p0;
    // boundary conditions give (VᵀV)α = ½ diag(VᵀV)
    let mut vtv = DMatrix::zeros(k, k);
    let mut rhs = DVector::zeros(k);
    let col = |i: usize| -> Vec<f64> {
        points[idx[i + 1]]
            .iter()
            .zip(p0)
            .map(|(a, b)| a - b)
            .collect()
    };
    for i in 0..k {
        let vi = col(i);
        for j in 0..k {
            let vj = col(j);
            vtv[(i, j)] = vi.iter().zip(&vj).map(|(a, b)| a * b).sum();
        }
        rhs[i] = 0.5 * vtv[(i, i)];
    }
    let alpha: DVector<f64> = vtv.lu().solve(&rhs)?;
    if !alpha.iter().all(|a| a.is_finite()) {
        return None;
    }
    let mut center = p0.clone();
    for i in 0..k {
        let vi = col(i);
        for t in 0..d {
            center[t] += alpha[i] * vi[t];
        }
    }
    let r = center
        .iter()
        .zip(p0)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    if r.is_finite() {
        Some((center, r))
    } else {
        None
    }
}

/// Subgradient descent on F(x) = ‖Dx − d‖₂ + λ‖x‖₁ with diminishing
/// steps, tracking the best value seen.
pub fn sqrt_lasso_min(design: &[Vec<f64>], data: &[f64], lambda: f64) -> f64 {
    let m = design.len();
    let n = design[0].len();
    let f = |x: &[f64]| -> f64 {
        let mut resid = 0.0;
        for i in 0..m {
            let ri: f64 = design[i].iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - data[i];
            resid += ri * ri;
        }
        resid.sqrt() + lambda * x.iter().map(|v| v.abs()).sum::<f64>()
    };
    let mut x = vec![0.0; n];
    let mut best = f(&x);
    let mut grad = vec![0.0; n];
    let mut resid = vec![0.0; m];
    for t in 1..=200_000usize {
        for i in 0..m {
            resid[i] = design[i].iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() - data[i];
        }
        let rn = resid.iter().map(|r| r * r).sum::<f64>().sqrt().max(1e-12);
        for j in 0..n {
            let mut g = 0.0;
            for i in 0..m {
                g += design[i][j] * resid[i] / rn;
            }
            g += lambda * x[j].signum();
            grad[j] = g;
        }
        let gn = grad.iter().map(|g| g * g).sum::<f64>().sqrt().max(1e-12);
        let step = 0.5 / (gn * (t as f64).sqrt());
        for j in 0..n {
            x[j] -= step * grad[j];
        }
        let val = f(&x);
        if val < best {
            best = val;
        }
    }
    best
}

/// Maximum cut value over all 2^p vertex bipartitions.
pub fn max_cut_exhaustive(p: usize, edges: &[(usize, usize)]) -> f64 {
    let mut best = 0usize;
    for mask in 0u64..(1u64 << p) {
        let cut = edges
            .iter()
            .filter(|(i, j)| ((mask >> i) & 1) != ((mask >> j) & 1))
            .count();
        best = best.max(cut);
    }
    best as f64
}

/// LP optimum by enumerating basic feasible solutions of
/// min ⟨c,x⟩, Ax = b, x ≥ 0 (orthant-only problems).
pub fn lp_vertex_enumeration(problem: &Problem) -> f64 {
    let m = problem.rows();
    let n = problem.cone.vec_len();
    let mut dense = DMatrix::zeros(m, n);
    for (r, c, v) in problem.a.triplets() {
        dense[(r, c)] += v;
    }
    let b = DVector::from_column_slice(&problem.b);
    let costs = problem.c.as_slice();

    let mut best = f64::INFINITY;
    let mut subset: Vec<usize> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        start: usize,
        n: usize,
        m: usize,
        subset: &mut Vec<usize>,
        dense: &DMatrix<f64>,
        b: &DVector<f64>,
        costs: &[f64],
        best: &mut f64,
    ) {
        if subset.len() == m {
            let basis = DMatrix::from_fn(m, m, |r, c| dense[(r, subset[c])]);
            if let Some(xb) = basis.lu().solve(b) {
                if xb.iter().all(|&v| v >= -1e-9 && v.is_finite()) {
                    let val: f64 = subset.iter().zip(xb.iter()).map(|(&j, &v)| costs[j] * v).sum();
                    if val < *best {
                        *best = val;
                    }
                }
            }
            return;
        }
        if n - start < m - subset.len() {
            return;
        }
        for i in start..n {
            subset.push(i);
            rec(i + 1, n, m, subset, dense, b, costs, best);
            subset.pop();
        }
    }
    rec(0, n, m, &mut subset, &dense, &b, costs, &mut best);
    best
}
