//! Spectral decompositions x = Σ λᵢ vᵢ and the scalar calculus built on
//! them: eigenvalue maps, trace/determinant queries, and the natural
//! barrier φ(x) = −ln det(x) with gradient −x⁻¹.

use std::sync::Arc;

use nalgebra::DMatrix;

use super::psd::{smat, svec_into};
use super::{BlockKind, ConeDesc, ConeError, Element};

/// Jordan frame shared by one or more [`Spectral`] values. Frames compare
/// by provenance: only spectral values derived from the same decomposition
/// may be combined in frame-aligned operators.
#[derive(Debug)]
pub(crate) struct Frame {
    pub(crate) cone: ConeDesc,
    pub(crate) blocks: Vec<FrameBlock>,
}

#[derive(Debug)]
pub(crate) enum FrameBlock {
    /// perm[k] = block-local coordinate of the k-th listed eigenvalue.
    Orthant { perm: Vec<usize> },
    /// Unit tail direction ū; idempotents are v± = ½(1; ±ū) listed as
    /// [v+, v−].
    SecondOrder { dir: Vec<f64> },
    /// Orthonormal eigenvectors, one column per listed eigenvalue.
    Psd { q: DMatrix<f64> },
}

/// Eigenvalues plus Jordan frame of an element, reusable across the
/// central-path triple (s, z, z+s).
#[derive(Clone, Debug)]
pub struct Spectral {
    frame: Arc<Frame>,
    eigs: Vec<f64>,
}

/// Scalar maps liftable through the spectral decomposition.
#[derive(Clone, Copy, Debug)]
pub enum ScalarMap {
    Square,
    Sqrt,
    Inverse,
    /// λ ↦ scale·λ + shift
    ShiftScale { scale: f64, shift: f64 },
}

/// Per-block and aggregated eigenvalue queries.
#[derive(Clone, Debug)]
pub struct EigSummary {
    /// (trace, det) per block.
    pub per_block: Vec<(f64, f64)>,
    /// Σλᵢ over all blocks.
    pub trace: f64,
    /// Πλᵢ over all blocks (det of the direct sum).
    pub det: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// λ_min > 0.
    pub in_interior: bool,
}

/// Natural barrier value and gradient at an interior point.
#[derive(Clone, Debug)]
pub struct Barrier {
    /// −ln det(x) summed over blocks.
    pub value: f64,
    /// −x⁻¹.
    pub grad: Element,
}

pub(crate) fn decompose(cone: &ConeDesc, x: &Element) -> Spectral {
    let mut blocks = Vec::with_capacity(cone.blocks().len());
    let mut eigs = Vec::with_capacity(cone.rank());
    for (i, b) in cone.blocks().iter().enumerate() {
        let xs = &x.as_slice()[cone.block_span(i)];
        match *b {
            BlockKind::Orthant(n) => {
                let mut idx: Vec<usize> = (0..n).collect();
                // descending, stable on ties
                idx.sort_by(|&a, &c| xs[c].total_cmp(&xs[a]));
                for &k in &idx {
                    eigs.push(xs[k]);
                }
                blocks.push(FrameBlock::Orthant { perm: idx });
            }
            BlockKind::SecondOrder(n) => {
                let head = xs[0];
                let tail = &xs[1..];
                let t = tail.iter().map(|v| v * v).sum::<f64>().sqrt();
                let dir = if t > 0.0 {
                    tail.iter().map(|v| v / t).collect()
                } else {
                    // frame choice is arbitrary here; results downstream do
                    // not depend on it
                    let mut d = vec![0.0; n - 1];
                    d[0] = 1.0;
                    d
                };
                eigs.push(head + t);
                eigs.push(head - t);
                blocks.push(FrameBlock::SecondOrder { dir });
            }
            BlockKind::Psd(p) => {
                let se = smat(p, xs).symmetric_eigen();
                let mut idx: Vec<usize> = (0..p).collect();
                idx.sort_by(|&a, &c| se.eigenvalues[c].total_cmp(&se.eigenvalues[a]));
                let mut q = DMatrix::zeros(p, p);
                for (col, &k) in idx.iter().enumerate() {
                    eigs.push(se.eigenvalues[k]);
                    q.set_column(col, &se.eigenvectors.column(k));
                }
                blocks.push(FrameBlock::Psd { q });
            }
        }
    }
    Spectral {
        frame: Arc::new(Frame {
            cone: cone.clone(),
            blocks,
        }),
        eigs,
    }
}

impl Spectral {
    /// All eigenvalues, segmented per block in frame order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigs
    }

    pub(crate) fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn cone(&self) -> &ConeDesc {
        &self.frame.cone
    }

    /// Eigenvalues of block `i`.
    pub fn block_eigs(&self, i: usize) -> &[f64] {
        &self.eigs[self.frame.cone.rank_span(i)]
    }

    /// A sibling spectral value on the same frame with new eigenvalues,
    /// aligned idempotent-by-idempotent.
    pub(crate) fn with_eigs(&self, eigs: Vec<f64>) -> Spectral {
        debug_assert_eq!(eigs.len(), self.eigs.len());
        Spectral {
            frame: Arc::clone(&self.frame),
            eigs,
        }
    }

    pub(crate) fn same_frame(&self, other: &Spectral) -> bool {
        Arc::ptr_eq(&self.frame, &other.frame)
    }

    /// Recompose Σ λᵢ vᵢ.
    pub fn recompose(&self) -> Element {
        let cone = &self.frame.cone;
        let mut data = vec![0.0; cone.vec_len()];
        for (i, fb) in self.frame.blocks.iter().enumerate() {
            let span = cone.block_span(i);
            let eigs = self.block_eigs(i);
            let out = &mut data[span];
            match fb {
                FrameBlock::Orthant { perm } => {
                    for (k, &c) in perm.iter().enumerate() {
                        out[c] = eigs[k];
                    }
                }
                FrameBlock::SecondOrder { dir } => {
                    let (lp, lm) = (eigs[0], eigs[1]);
                    out[0] = 0.5 * (lp + lm);
                    let half_diff = 0.5 * (lp - lm);
                    for (o, d) in out[1..].iter_mut().zip(dir) {
                        *o = half_diff * d;
                    }
                }
                FrameBlock::Psd { q } => {
                    let p = q.nrows();
                    let mut m = DMatrix::zeros(p, p);
                    for (k, &lam) in eigs.iter().enumerate() {
                        let qk = q.column(k);
                        m += qk * qk.transpose() * lam;
                    }
                    svec_into(&m, out);
                }
            }
        }
        Element::from_vec(data)
    }

    /// The frame idempotents v₁..v_ν as elements (zero outside their block).
    pub fn frame_vectors(&self) -> Vec<Element> {
        let cone = &self.frame.cone;
        let mut out = Vec::with_capacity(cone.rank());
        for (i, fb) in self.frame.blocks.iter().enumerate() {
            let span = cone.block_span(i);
            match fb {
                FrameBlock::Orthant { perm } => {
                    for &c in perm {
                        let mut v = vec![0.0; cone.vec_len()];
                        v[span.start + c] = 1.0;
                        out.push(Element::from_vec(v));
                    }
                }
                FrameBlock::SecondOrder { dir } => {
                    for sign in [1.0, -1.0] {
                        let mut v = vec![0.0; cone.vec_len()];
                        v[span.start] = 0.5;
                        for (k, d) in dir.iter().enumerate() {
                            v[span.start + 1 + k] = 0.5 * sign * d;
                        }
                        out.push(Element::from_vec(v));
                    }
                }
                FrameBlock::Psd { q } => {
                    let p = q.nrows();
                    for k in 0..p {
                        let qk = q.column(k);
                        let m: DMatrix<f64> = qk * qk.transpose();
                        let mut v = vec![0.0; cone.vec_len()];
                        svec_into(&m, &mut v[span.clone()]);
                        out.push(Element::from_vec(v));
                    }
                }
            }
        }
        out
    }

    /// Σ f(λᵢ) vᵢ for one of the supported scalar maps.
    pub fn map_eigs(&self, map: ScalarMap) -> Result<Element, ConeError> {
        let cone = &self.frame.cone;
        for (i, _) in cone.blocks().iter().enumerate() {
            for &l in self.block_eigs(i) {
                match map {
                    ScalarMap::Sqrt if l < 0.0 => {
                        return Err(ConeError::Domain {
                            map: "sqrt",
                            block: i,
                            eigenvalue: l,
                        })
                    }
                    ScalarMap::Inverse if l == 0.0 => {
                        return Err(ConeError::Domain {
                            map: "inverse",
                            block: i,
                            eigenvalue: l,
                        })
                    }
                    _ => {}
                }
            }
        }
        let f = |l: f64| match map {
            ScalarMap::Square => l * l,
            ScalarMap::Sqrt => l.sqrt(),
            ScalarMap::Inverse => 1.0 / l,
            ScalarMap::ShiftScale { scale, shift } => scale * l + shift,
        };
        let mapped: Vec<f64> = self.eigs.iter().map(|&l| f(l)).collect();
        Ok(self.with_eigs(mapped).recompose())
    }

    /// Trace, determinant, eigenvalue range, and interiority.
    pub fn eig_queries(&self) -> EigSummary {
        let cone = &self.frame.cone;
        let mut per_block = Vec::with_capacity(cone.blocks().len());
        let mut trace = 0.0;
        let mut det = 1.0;
        let mut lambda_min = f64::INFINITY;
        let mut lambda_max = f64::NEG_INFINITY;
        for i in 0..cone.blocks().len() {
            let eigs = self.block_eigs(i);
            let t: f64 = eigs.iter().sum();
            let d: f64 = eigs.iter().product();
            per_block.push((t, d));
            trace += t;
            det *= d;
            for &l in eigs {
                lambda_min = lambda_min.min(l);
                lambda_max = lambda_max.max(l);
            }
        }
        EigSummary {
            per_block,
            trace,
            det,
            lambda_min,
            lambda_max,
            in_interior: lambda_min > 0.0,
        }
    }

    fn require_interior(&self) -> Result<(), ConeError> {
        for i in 0..self.frame.cone.blocks().len() {
            for &l in self.block_eigs(i) {
                if l <= 0.0 {
                    return Err(ConeError::NotInterior {
                        block: i,
                        eigenvalue: l,
                    });
                }
            }
        }
        Ok(())
    }

    /// Natural barrier −ln det(x) with gradient −x⁻¹.
    pub fn barrier(&self) -> Result<Barrier, ConeError> {
        self.require_interior()?;
        let value = -self.eigs.iter().map(|l| l.ln()).sum::<f64>();
        let mut grad = self.map_eigs(ScalarMap::Inverse)?;
        grad.scale_mut(-1.0);
        Ok(Barrier { value, grad })
    }

    /// Solve x∘w = y for w (x interior). Orthant blocks divide
    /// componentwise, second-order blocks use the arrow-matrix pivot, and
    /// PSD blocks solve the Sylvester equation in the eigenbasis:
    /// W̃ᵢⱼ = 2Ỹᵢⱼ/(λᵢ+λⱼ).
    pub fn lyapunov_solve(&self, y: &Element) -> Result<Element, ConeError> {
        self.require_interior()?;
        let cone = &self.frame.cone;
        if y.len() != cone.vec_len() {
            return Err(ConeError::DimensionMismatch {
                expected: cone.vec_len(),
                got: y.len(),
            });
        }
        let mut out = vec![0.0; cone.vec_len()];
        for (i, fb) in self.frame.blocks.iter().enumerate() {
            let span = cone.block_span(i);
            let eigs = self.block_eigs(i);
            let ys = &y.as_slice()[span.clone()];
            let os = &mut out[span];
            match fb {
                FrameBlock::Orthant { perm } => {
                    for (k, &c) in perm.iter().enumerate() {
                        os[c] = ys[c] / eigs[k];
                    }
                }
                FrameBlock::SecondOrder { dir } => {
                    let (lp, lm) = (eigs[0], eigs[1]);
                    let x0 = 0.5 * (lp + lm);
                    let t = 0.5 * (lp - lm);
                    let det = lp * lm;
                    // x̄ = t·ū; w0 = (x0 y0 − x̄ᵀȳ)/det; w̄ = (ȳ − w0 x̄)/x0
                    let xbar_dot_y: f64 =
                        dir.iter().zip(&ys[1..]).map(|(d, v)| t * d * v).sum();
                    let w0 = (x0 * ys[0] - xbar_dot_y) / det;
                    os[0] = w0;
                    for (k, d) in dir.iter().enumerate() {
                        os[1 + k] = (ys[1 + k] - w0 * t * d) / x0;
                    }
                }
                FrameBlock::Psd { q } => {
                    let p = q.nrows();
                    let ym = smat(p, ys);
                    let mut yt = q.transpose() * ym * q;
                    for c in 0..p {
                        for r in 0..p {
                            let denom = eigs[r] + eigs[c];
                            if denom <= 1e-300 {
                                return Err(ConeError::NotInterior {
                                    block: i,
                                    eigenvalue: denom,
                                });
                            }
                            yt[(r, c)] = 2.0 * yt[(r, c)] / denom;
                        }
                    }
                    let back = q * yt * q.transpose();
                    svec_into(&back, os);
                }
            }
        }
        Ok(Element::from_vec(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probio::rng::Rng;

    fn mixed_cone() -> ConeDesc {
        ConeDesc::new(vec![
            BlockKind::Orthant(3),
            BlockKind::SecondOrder(4),
            BlockKind::Psd(3),
        ])
        .unwrap()
    }

    fn random_element(cone: &ConeDesc, rng: &mut Rng) -> Element {
        Element::from_vec((0..cone.vec_len()).map(|_| rng.uniform(-1.0, 1.0)).collect())
    }

    fn random_interior(cone: &ConeDesc, rng: &mut Rng) -> Element {
        // shift a random element until strictly interior
        let x = random_element(cone, rng);
        let spec = cone.spectral(&x).unwrap();
        let lam_min = spec.eig_queries().lambda_min;
        let mut e = cone.identity();
        e.scale_mut(1.0 - lam_min.min(0.0) + 0.5);
        x.add(&e)
    }

    #[test]
    fn soc_spectral_worked_example() {
        let cone = ConeDesc::single(BlockKind::SecondOrder(3));
        let spec = cone
            .spectral(&Element::from_vec(vec![2.0, 1.0, 0.0]))
            .unwrap();
        assert_eq!(spec.eigenvalues(), &[3.0, 1.0]);
        // x = 3·½(1,ū) + 1·½(1,−ū) with ū = (1,0)
        let frames = spec.frame_vectors();
        let mut rebuilt = frames[0].scaled(3.0);
        rebuilt.axpy(1.0, &frames[1]);
        assert_eq!(rebuilt.as_slice(), &[2.0, 1.0, 0.0]);
    }

    #[test]
    fn orthant_spectral_sorts_descending() {
        let cone = ConeDesc::single(BlockKind::Orthant(2));
        let spec = cone
            .spectral(&Element::from_vec(vec![3.0, 1.0]))
            .unwrap();
        assert_eq!(spec.eigenvalues(), &[3.0, 1.0]);
        let spec = cone
            .spectral(&Element::from_vec(vec![1.0, 3.0]))
            .unwrap();
        assert_eq!(spec.eigenvalues(), &[3.0, 1.0]);
    }

    #[test]
    fn psd_diagonal_spectral() {
        let cone = ConeDesc::single(BlockKind::Psd(2));
        let spec = cone
            .spectral(&Element::from_vec(vec![4.0, 0.0, 1.0]))
            .unwrap();
        assert_eq!(spec.eigenvalues(), &[4.0, 1.0]);
    }

    #[test]
    fn recomposition_and_frame_axioms_hold() {
        let cone = mixed_cone();
        let mut rng = Rng::new(7);
        for _ in 0..25 {
            let x = random_element(&cone, &mut rng);
            let spec = cone.spectral(&x).unwrap();

            let back = spec.recompose();
            let scale = 1.0f64.max(x.norm());
            assert!(back.sub(&x).norm() / scale < 1e-10);

            let frames = spec.frame_vectors();
            assert_eq!(frames.len(), cone.rank());
            // Σ vᵢ = e
            let mut sum = cone.zero();
            for v in &frames {
                sum.axpy(1.0, v);
            }
            assert!(sum.sub(&cone.identity()).inf_norm() < 1e-10);
            // vᵢ∘vⱼ = 0 (i≠j), vᵢ∘vᵢ = vᵢ
            for (a, va) in frames.iter().enumerate() {
                for (b, vb) in frames.iter().enumerate() {
                    let p = cone.jordan_product(va, vb).unwrap();
                    let expect = if a == b { va.clone() } else { cone.zero() };
                    assert!(p.sub(&expect).inf_norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn sqrt_and_inverse_examples() {
        let cone = ConeDesc::single(BlockKind::Orthant(2));
        let spec = cone
            .spectral(&Element::from_vec(vec![4.0, 9.0]))
            .unwrap();
        let root = spec.map_eigs(ScalarMap::Sqrt).unwrap();
        assert_eq!(root.as_slice(), &[2.0, 3.0]);

        // inverse of (2,1,0): eigs {3,1} → (2/3, −1/3, 0)
        let soc = ConeDesc::single(BlockKind::SecondOrder(3));
        let x = Element::from_vec(vec![2.0, 1.0, 0.0]);
        let spec = soc.spectral(&x).unwrap();
        let inv = spec.map_eigs(ScalarMap::Inverse).unwrap();
        assert!((inv.as_slice()[0] - 2.0 / 3.0).abs() < 1e-14);
        assert!((inv.as_slice()[1] + 1.0 / 3.0).abs() < 1e-14);
        assert!(inv.as_slice()[2].abs() < 1e-14);
        let prod = soc.jordan_product(&x, &inv).unwrap();
        assert!(prod.sub(&soc.identity()).inf_norm() < 1e-14);
    }

    #[test]
    fn square_matches_jordan_self_product() {
        let cone = mixed_cone();
        let mut rng = Rng::new(11);
        for _ in 0..10 {
            let x = random_element(&cone, &mut rng);
            let spec = cone.spectral(&x).unwrap();
            let sq = spec.map_eigs(ScalarMap::Square).unwrap();
            let prod = cone.jordan_product(&x, &x).unwrap();
            assert!(sq.sub(&prod).inf_norm() < 1e-10 * (1.0 + x.norm() * x.norm()));
        }
    }

    #[test]
    fn interior_inverse_and_sqrt_identities() {
        let cone = mixed_cone();
        let mut rng = Rng::new(13);
        for _ in 0..10 {
            let x = random_interior(&cone, &mut rng);
            let spec = cone.spectral(&x).unwrap();
            let inv = spec.map_eigs(ScalarMap::Inverse).unwrap();
            let prod = cone.jordan_product(&x, &inv).unwrap();
            assert!(prod.sub(&cone.identity()).inf_norm() < 1e-10);

            let root = spec.map_eigs(ScalarMap::Sqrt).unwrap();
            let sq = cone.jordan_product(&root, &root).unwrap();
            assert!(sq.sub(&x).norm() / (1.0 + x.norm()) < 1e-10);
        }
    }

    #[test]
    fn shift_scale_is_affine_in_the_algebra() {
        // Σ(aλᵢ + b)vᵢ = a·x + b·e
        let cone = mixed_cone();
        let mut rng = Rng::new(47);
        let x = random_element(&cone, &mut rng);
        let spec = cone.spectral(&x).unwrap();
        let mapped = spec
            .map_eigs(ScalarMap::ShiftScale {
                scale: 2.0,
                shift: -0.75,
            })
            .unwrap();
        let mut expect = x.scaled(2.0);
        expect.axpy(-0.75, &cone.identity());
        assert!(mapped.sub(&expect).inf_norm() < 1e-12);
    }

    #[test]
    fn spectral_is_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Spectral>();
    }

    #[test]
    fn domain_errors_name_block_and_eigenvalue() {
        let cone = ConeDesc::new(vec![BlockKind::Orthant(2), BlockKind::Orthant(1)]).unwrap();
        let spec = cone
            .spectral(&Element::from_vec(vec![1.0, 2.0, -3.0]))
            .unwrap();
        match spec.map_eigs(ScalarMap::Sqrt).unwrap_err() {
            ConeError::Domain {
                map,
                block,
                eigenvalue,
            } => {
                assert_eq!(map, "sqrt");
                assert_eq!(block, 1);
                assert_eq!(eigenvalue, -3.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn eig_queries_examples() {
        let soc = ConeDesc::single(BlockKind::SecondOrder(3));
        let q = soc
            .spectral(&Element::from_vec(vec![1.0, 0.0, 0.0]))
            .unwrap()
            .eig_queries();
        assert_eq!(q.det, 1.0);
        assert_eq!(q.trace, 2.0);
        assert!(q.in_interior);

        let orth = ConeDesc::single(BlockKind::Orthant(2));
        let q = orth
            .spectral(&Element::from_vec(vec![3.0, 0.0]))
            .unwrap()
            .eig_queries();
        assert_eq!(q.lambda_min, 0.0);
        assert!(!q.in_interior);

        // det (2,1,0) = 2² − 1² = 3
        let q = soc
            .spectral(&Element::from_vec(vec![2.0, 1.0, 0.0]))
            .unwrap()
            .eig_queries();
        assert!((q.per_block[0].1 - 3.0).abs() < 1e-14);
    }

    #[test]
    fn lhscb_pairing_identity() {
        // ⟨∇φ(x), x⟩ = −ν in the algebra inner product
        let cone = mixed_cone();
        let mut rng = Rng::new(19);
        for _ in 0..5 {
            let x = random_interior(&cone, &mut rng);
            let grad = cone.spectral(&x).unwrap().barrier().unwrap().grad;
            let pairing = cone.dot(&grad, &x);
            assert!((pairing + cone.rank() as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn barrier_examples_and_homogeneity() {
        let cone = mixed_cone();
        let e = cone.identity();
        let b = cone.spectral(&e).unwrap().barrier().unwrap();
        assert!(b.value.abs() < 1e-14);
        assert!(b.grad.add(&e).inf_norm() < 1e-14);

        let orth = ConeDesc::single(BlockKind::Orthant(1));
        let b = orth
            .spectral(&Element::from_vec(vec![2.0]))
            .unwrap()
            .barrier()
            .unwrap();
        assert!((b.value + 2.0f64.ln()).abs() < 1e-14);
        assert!((b.grad.as_slice()[0] + 0.5).abs() < 1e-14);

        // φ(τx) = φ(x) − ν ln τ
        let mut rng = Rng::new(3);
        let x = random_interior(&cone, &mut rng);
        let tau = 2.0;
        let v1 = cone.spectral(&x).unwrap().barrier().unwrap().value;
        let v2 = cone
            .spectral(&x.scaled(tau))
            .unwrap()
            .barrier()
            .unwrap()
            .value;
        assert!((v2 - (v1 - cone.rank() as f64 * tau.ln())).abs() < 1e-10);
    }

    #[test]
    fn barrier_rejects_boundary() {
        let cone = ConeDesc::single(BlockKind::Orthant(2));
        let spec = cone
            .spectral(&Element::from_vec(vec![1.0, 0.0]))
            .unwrap();
        assert!(matches!(
            spec.barrier().unwrap_err(),
            ConeError::NotInterior { .. }
        ));
    }

    #[test]
    fn barrier_gradient_matches_finite_differences() {
        let cone = mixed_cone();
        let mut rng = Rng::new(21);
        for _ in 0..5 {
            let x = random_interior(&cone, &mut rng);
            let grad = cone.spectral(&x).unwrap().barrier().unwrap().grad;
            let step = 1e-5;
            for _ in 0..4 {
                let d = random_element(&cone, &mut rng);
                let mut xp = x.clone();
                xp.axpy(step, &d);
                let mut xm = x.clone();
                xm.axpy(-step, &d);
                let vp = cone.spectral(&xp).unwrap().barrier().unwrap().value;
                let vm = cone.spectral(&xm).unwrap().barrier().unwrap().value;
                let fd = (vp - vm) / (2.0 * step);
                // pair against the algebra (trace-form) inner product
                let an = cone.dot(&grad, &d);
                assert!(
                    (fd - an).abs() / (1.0 + an.abs()) < 1e-6,
                    "fd {fd} vs analytic {an}"
                );
            }
        }
    }

    #[test]
    fn lyapunov_solve_examples() {
        let cone = mixed_cone();
        let e = cone.identity();
        let y = Element::from_vec((0..cone.vec_len()).map(|i| i as f64 * 0.1 - 0.4).collect());
        let w = cone.spectral(&e).unwrap().lyapunov_solve(&y).unwrap();
        assert!(w.sub(&y).inf_norm() < 1e-14);

        let orth = ConeDesc::single(BlockKind::Orthant(2));
        let x = Element::from_vec(vec![2.0, 4.0]);
        let w = orth
            .spectral(&x)
            .unwrap()
            .lyapunov_solve(&Element::from_vec(vec![2.0, 2.0]))
            .unwrap();
        assert_eq!(w.as_slice(), &[1.0, 0.5]);
    }

    #[test]
    fn lyapunov_solve_residual_oracle() {
        let cone = mixed_cone();
        let mut rng = Rng::new(31);
        for _ in 0..10 {
            let x = random_interior(&cone, &mut rng);
            let y = random_element(&cone, &mut rng);
            let w = cone.spectral(&x).unwrap().lyapunov_solve(&y).unwrap();
            let back = cone.jordan_product(&x, &w).unwrap();
            assert!(back.sub(&y).norm() / (1.0 + y.norm()) < 1e-10);
        }
    }

    #[test]
    fn lyapunov_solve_requires_interior() {
        let cone = ConeDesc::single(BlockKind::Orthant(2));
        let spec = cone
            .spectral(&Element::from_vec(vec![1.0, 0.0]))
            .unwrap();
        assert!(matches!(
            spec.lyapunov_solve(&Element::from_vec(vec![1.0, 1.0]))
                .unwrap_err(),
            ConeError::NotInterior { .. }
        ));
    }

    #[test]
    fn quadratic_representation_consistency() {
        // 𝒫(x)x⁻¹ = x, with 𝒫 evaluated as 2ℒ(x)² − ℒ(x²)
        let cone = mixed_cone();
        let mut rng = Rng::new(41);
        for _ in 0..10 {
            let x = random_interior(&cone, &mut rng);
            let inv = cone
                .spectral(&x)
                .unwrap()
                .map_eigs(ScalarMap::Inverse)
                .unwrap();
            let px = cone.quadratic_apply(&x, &inv).unwrap();
            assert!(px.sub(&x).norm() / (1.0 + x.norm()) < 1e-10);
        }
    }

    #[test]
    fn zero_tail_soc_frame_choice_does_not_matter() {
        // ‖x̄‖ = 0 leaves ū arbitrary; any unit vector must recompose and
        // map identically
        let cone = ConeDesc::single(BlockKind::SecondOrder(4));
        let x = Element::from_vec(vec![1.7, 0.0, 0.0, 0.0]);
        let spec = cone.spectral(&x).unwrap();
        assert!(spec.recompose().sub(&x).inf_norm() < 1e-15);

        let alt = Spectral {
            frame: Arc::new(Frame {
                cone: cone.clone(),
                blocks: vec![FrameBlock::SecondOrder {
                    dir: vec![0.6, 0.0, 0.8],
                }],
            }),
            eigs: spec.eigenvalues().to_vec(),
        };
        assert!(alt.recompose().sub(&x).inf_norm() < 1e-15);
        let a = spec.map_eigs(ScalarMap::Inverse).unwrap();
        let b = alt.map_eigs(ScalarMap::Inverse).unwrap();
        assert!(a.sub(&b).inf_norm() < 1e-15);
    }
}
