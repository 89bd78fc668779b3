//! Reproducible instance generators for the benchmark families: minimum
//! enclosing balls, square-root Lasso, max-cut SDP relaxations, and
//! strictly feasible random LPs.
//!
//! Every generator is a pure function of (family, parameters, seed):
//! identical inputs produce a bit-identical problem.

use super::rng::Rng;
use super::{ProbError, Problem, ProblemMeta};
use crate::cones::{BlockKind, ConeDesc, Element};
use crate::linalg::LinearMap;

/// Generator family plus size parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    /// Minimum enclosing ball of `points` uniform points in [−1,1]^dim.
    Meb { points: usize, dim: usize },
    /// Square-root Lasso with a planted sparse signal.
    SqrtLasso { rows: usize, cols: usize, lambda: f64 },
    /// Max-cut SDP relaxation of an Erdős–Rényi G(p, 1/2) graph.
    MaxcutSdp { vertices: usize },
    /// Primal-dual strictly feasible random LP.
    RandomLp { rows: usize, cols: usize },
}

/// Build the problem for a spec and seed.
pub fn generate(spec: &GeneratorSpec, seed: u64) -> Result<Problem, ProbError> {
    match *spec {
        GeneratorSpec::Meb { points, dim } => gen_meb(points, dim, seed),
        GeneratorSpec::SqrtLasso { rows, cols, lambda } => {
            gen_sqrt_lasso(rows, cols, lambda, seed)
        }
        GeneratorSpec::MaxcutSdp { vertices } => gen_maxcut_sdp(vertices, seed),
        GeneratorSpec::RandomLp { rows, cols } => gen_random_lp(rows, cols, seed),
    }
}

/// Minimum enclosing ball of `n` random points in [−1,1]^d.
pub fn gen_meb(n: usize, d: usize, seed: u64) -> Result<Problem, ProbError> {
    if n < 1 || d < 1 {
        return Err(ProbError::Inconsistent(
            "meb needs n ≥ 1 points and dimension d ≥ 1".into(),
        ));
    }
    let mut rng = Rng::new(seed);
    let points: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..d).map(|_| rng.uniform(-1.0, 1.0)).collect())
        .collect();
    let mut p = gen_meb_from_points(&points)?;
    p.name = format!("meb_{n}_{d}");
    p.meta.generator = Some(format!("meb points={n} dim={d} seed={seed}"));
    Ok(p)
}

/// MEB encoding for explicit points (the PRNG-bypassing hook).
///
/// Variables: r, c⁺, c⁻ in one orthant block, then one second-order block
/// y_i per point. Constraints: y_{i,0} − r = 0 and ȳ_i − c⁺ + c⁻ = −p_i,
/// so that feasibility forces r ≥ ‖center − p_i‖; the objective is min r.
pub fn gen_meb_from_points(points: &[Vec<f64>]) -> Result<Problem, ProbError> {
    let n = points.len();
    if n == 0 {
        return Err(ProbError::Inconsistent("meb needs at least one point".into()));
    }
    let d = points[0].len();
    if d == 0 || points.iter().any(|p| p.len() != d) {
        return Err(ProbError::Inconsistent(
            "meb points must share a positive dimension".into(),
        ));
    }
    let mut blocks = vec![BlockKind::Orthant(2 * d + 1)];
    blocks.extend(std::iter::repeat_n(BlockKind::SecondOrder(d + 1), n));
    let cone = ConeDesc::new(blocks).map_err(|e| ProbError::Inconsistent(e.to_string()))?;

    let r_col = 0;
    let cplus = |k: usize| 1 + k;
    let cminus = |k: usize| 1 + d + k;
    let y_block = |i: usize| 2 * d + 1 + i * (d + 1);

    let m = n * (d + 1);
    let mut trips = Vec::new();
    let mut b = vec![0.0; m];
    let mut row = 0;
    for (i, point) in points.iter().enumerate() {
        // y_{i,0} = r
        trips.push((row, y_block(i), 1.0));
        trips.push((row, r_col, -1.0));
        b[row] = 0.0;
        row += 1;
        // ȳ_i − c⁺ + c⁻ = −p_i
        for (k, &pk) in point.iter().enumerate() {
            trips.push((row, y_block(i) + 1 + k, 1.0));
            trips.push((row, cplus(k), -1.0));
            trips.push((row, cminus(k), 1.0));
            b[row] = -pk;
            row += 1;
        }
    }
    let nvec = cone.vec_len();
    let mut c = vec![0.0; nvec];
    c[r_col] = 1.0;
    let a = LinearMap::from_triplets(m, nvec, &trips)
        .map_err(|e| ProbError::Inconsistent(e.to_string()))?;
    let mut p = Problem::new("meb", cone, a, b, Element::from_vec(c))?;
    p.meta = ProblemMeta {
        objective_constant: 0.0,
        generator: Some(format!("meb explicit points={n} dim={d}")),
    };
    Ok(p)
}

/// Square-root Lasso: min ‖Dx − d‖₂ + λ‖x‖₁ with planted 10%-dense signal.
pub fn gen_sqrt_lasso(m_rows: usize, n_cols: usize, lambda: f64, seed: u64) -> Result<Problem, ProbError> {
    if m_rows < 1 || n_cols < 1 {
        return Err(ProbError::Inconsistent(
            "sqrt-lasso needs at least one row and one column".into(),
        ));
    }
    let mut rng = Rng::new(seed);
    let design: Vec<Vec<f64>> = (0..m_rows)
        .map(|_| (0..n_cols).map(|_| rng.normal()).collect())
        .collect();
    let planted: Vec<f64> = (0..n_cols)
        .map(|_| if rng.bernoulli(0.1) { rng.normal() } else { 0.0 })
        .collect();
    let data: Vec<f64> = design
        .iter()
        .map(|drow| {
            let clean: f64 = drow.iter().zip(&planted).map(|(a, x)| a * x).sum();
            clean + 0.01 * rng.normal()
        })
        .collect();
    let mut p = gen_sqrt_lasso_from_data(&design, &data, lambda)?;
    p.name = format!("lasso_{m_rows}_{n_cols}");
    p.meta.generator = Some(format!(
        "sqrt_lasso rows={m_rows} cols={n_cols} lambda={lambda} seed={seed}"
    ));
    Ok(p)
}

/// Square-root Lasso encoding for explicit data (the PRNG-bypassing hook).
///
/// Variables: x⁺, x⁻ in one orthant block and (t; r) in a second-order
/// block. Constraints: r − Dx⁺ + Dx⁻ = −d; objective t + λ·1ᵀ(x⁺+x⁻).
pub fn gen_sqrt_lasso_from_data(
    design: &[Vec<f64>],
    data: &[f64],
    lambda: f64,
) -> Result<Problem, ProbError> {
    let m_rows = design.len();
    if m_rows == 0 || data.len() != m_rows {
        return Err(ProbError::Inconsistent(
            "sqrt-lasso design and data sizes disagree".into(),
        ));
    }
    let n_cols = design[0].len();
    if n_cols == 0 || design.iter().any(|r| r.len() != n_cols) {
        return Err(ProbError::Inconsistent(
            "sqrt-lasso design must be rectangular".into(),
        ));
    }
    let cone = ConeDesc::new(vec![
        BlockKind::Orthant(2 * n_cols),
        BlockKind::SecondOrder(m_rows + 1),
    ])
    .map_err(|e| ProbError::Inconsistent(e.to_string()))?;

    let xplus = |k: usize| k;
    let xminus = |k: usize| n_cols + k;
    let soc = 2 * n_cols; // (t; r) block start

    let mut trips = Vec::new();
    let mut b = vec![0.0; m_rows];
    for (i, drow) in design.iter().enumerate() {
        trips.push((i, soc + 1 + i, 1.0));
        for (k, &v) in drow.iter().enumerate() {
            if v != 0.0 {
                trips.push((i, xplus(k), -v));
                trips.push((i, xminus(k), v));
            }
        }
        b[i] = -data[i];
    }
    let nvec = cone.vec_len();
    let mut c = vec![0.0; nvec];
    for k in 0..n_cols {
        c[xplus(k)] = lambda;
        c[xminus(k)] = lambda;
    }
    // objective coefficient on t: the algebra pairing doubles
    // second-order coordinates, so store ½ to charge t once
    c[soc] = 0.5;
    let a = LinearMap::from_triplets(m_rows, nvec, &trips)
        .map_err(|e| ProbError::Inconsistent(e.to_string()))?;
    let mut p = Problem::new("lasso", cone, a, b, Element::from_vec(c))?;
    p.meta = ProblemMeta {
        objective_constant: 0.0,
        generator: Some(format!(
            "sqrt_lasso explicit rows={m_rows} cols={n_cols} lambda={lambda}"
        )),
    };
    Ok(p)
}

/// Max-cut SDP relaxation on G(p, 1/2): min ⟨−L/4, X⟩, diag(X) = 1, X ⪰ 0.
pub fn gen_maxcut_sdp(p: usize, seed: u64) -> Result<Problem, ProbError> {
    if p < 2 {
        return Err(ProbError::Inconsistent("maxcut needs p ≥ 2 vertices".into()));
    }
    let mut rng = Rng::new(seed);
    let mut edges = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            if rng.bernoulli(0.5) {
                edges.push((i, j));
            }
        }
    }
    let mut prob = gen_maxcut_from_edges(p, &edges)?;
    prob.name = format!("maxcut_{p}");
    prob.meta.generator = Some(format!("maxcut vertices={p} seed={seed}"));
    Ok(prob)
}

/// Max-cut relaxation for an explicit edge list (the PRNG-bypassing hook).
pub fn gen_maxcut_from_edges(p: usize, edges: &[(usize, usize)]) -> Result<Problem, ProbError> {
    if p < 2 {
        return Err(ProbError::Inconsistent("maxcut needs p ≥ 2 vertices".into()));
    }
    for &(i, j) in edges {
        if i >= p || j >= p || i == j {
            return Err(ProbError::Inconsistent(format!(
                "edge ({i},{j}) invalid for {p} vertices"
            )));
        }
    }
    let cone = ConeDesc::single(BlockKind::Psd(p));
    let nvec = cone.vec_len();
    // svec index of entry (i,j), i ≥ j, column-major lower triangle
    let svec_idx = |i: usize, j: usize| -> usize {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        lo * p - lo * (lo + 1) / 2 + lo + (hi - lo)
    };

    // Laplacian L = D − Adj; objective svec(−L/4) with off-diagonals
    // scaled by √2 per the storage convention
    let mut c = vec![0.0; nvec];
    let mut degree = vec![0usize; p];
    for &(i, j) in edges {
        degree[i] += 1;
        degree[j] += 1;
        // off-diagonal of −L/4 is +1/4
        c[svec_idx(i, j)] += std::f64::consts::SQRT_2 * 0.25;
    }
    for (i, &deg) in degree.iter().enumerate() {
        c[svec_idx(i, i)] = -(deg as f64) / 4.0;
    }

    let mut trips = Vec::new();
    for i in 0..p {
        trips.push((i, svec_idx(i, i), 1.0));
    }
    let a = LinearMap::from_triplets(p, nvec, &trips)
        .map_err(|e| ProbError::Inconsistent(e.to_string()))?;
    let mut prob = Problem::new("maxcut", cone, a, vec![1.0; p], Element::from_vec(c))?;
    prob.meta = ProblemMeta {
        objective_constant: 0.0,
        generator: Some(format!("maxcut explicit vertices={p} edges={}", edges.len())),
    };
    Ok(prob)
}

fn random_full_rank_map(m: usize, n: usize, rng: &mut Rng) -> Result<LinearMap, ProbError> {
    loop {
        let mut trips = Vec::new();
        for r in 0..m {
            let mut nonzero = 0;
            for ccol in 0..n {
                if rng.bernoulli(0.3) {
                    trips.push((r, ccol, rng.normal()));
                    nonzero += 1;
                }
            }
            if nonzero == 0 {
                trips.push((r, rng.below(n), rng.normal()));
            }
        }
        let candidate = LinearMap::from_triplets(m, n, &trips)
            .map_err(|e| ProbError::Inconsistent(e.to_string()))?;
        if candidate.validate_full_rank().is_ok() {
            return Ok(candidate);
        }
        // rank-deficient draw: resample
    }
}

/// Random LP with strictly feasible primal and dual points by
/// construction: b = Ax₀ and c = A*λ₀ + s₀ for interior x₀, s₀.
pub fn gen_random_lp(m: usize, n: usize, seed: u64) -> Result<Problem, ProbError> {
    if m < 1 || n <= m {
        return Err(ProbError::Inconsistent(
            "random lp needs 1 ≤ m < n".into(),
        ));
    }
    let mut rng = Rng::new(seed);
    let cone = ConeDesc::single(BlockKind::Orthant(n));
    let a = random_full_rank_map(m, n, &mut rng)?;
    let x0 = Element::from_vec((0..n).map(|_| rng.uniform(0.5, 1.5)).collect());
    let s0 = Element::from_vec((0..n).map(|_| rng.uniform(0.5, 1.5)).collect());
    let lambda0: Vec<f64> = (0..m).map(|_| rng.normal()).collect();
    let b = a.apply(&x0).map_err(|e| ProbError::Inconsistent(e.to_string()))?;
    let mut c = a
        .apply_adjoint(&cone, &lambda0)
        .map_err(|e| ProbError::Inconsistent(e.to_string()))?;
    c.axpy(1.0, &s0);
    let mut p = Problem::new(format!("randlp_{m}_{n}"), cone, a, b, c)?;
    p.meta = ProblemMeta {
        objective_constant: 0.0,
        generator: Some(format!("random_lp rows={m} cols={n} seed={seed}")),
    };
    Ok(p)
}

/// Random LP with a planted degenerate optimum: the optimal support has
/// m/2 coordinates, so the basic columns cannot span the row space and
/// the Schur complement's small eigenvalue genuinely decays with μ. The
/// strictly-feasible construction above yields nondegenerate vertices
/// whose condition numbers saturate; conditioning studies need this
/// variant to expose the asymptotic growth rates.
pub fn gen_degenerate_lp(m: usize, n: usize, seed: u64) -> Result<Problem, ProbError> {
    if m < 2 || n <= m {
        return Err(ProbError::Inconsistent(
            "degenerate lp needs 2 ≤ m < n".into(),
        ));
    }
    let mut rng = Rng::new(seed);
    let cone = ConeDesc::single(BlockKind::Orthant(n));
    let a = random_full_rank_map(m, n, &mut rng)?;
    // planted primal-dual pair: complementary, support strictly below m
    let support = m / 2;
    let mut xstar = vec![0.0; n];
    for slot in xstar.iter_mut().take(support) {
        *slot = rng.uniform(0.5, 1.5);
    }
    let mut sstar = vec![0.0; n];
    for (j, slot) in sstar.iter_mut().enumerate() {
        if j >= support {
            *slot = rng.uniform(0.5, 1.5);
        }
    }
    let lambda0: Vec<f64> = (0..m).map(|_| rng.normal()).collect();
    let b = a
        .apply(&Element::from_vec(xstar))
        .map_err(|e| ProbError::Inconsistent(e.to_string()))?;
    let mut c = a
        .apply_adjoint(&cone, &lambda0)
        .map_err(|e| ProbError::Inconsistent(e.to_string()))?;
    c.axpy(1.0, &Element::from_vec(sstar));
    let mut p = Problem::new(format!("deglp_{m}_{n}"), cone, a, b, c)?;
    p.meta = ProblemMeta {
        objective_constant: 0.0,
        generator: Some(format!("degenerate_lp rows={m} cols={n} seed={seed}")),
    };
    Ok(p)
}
