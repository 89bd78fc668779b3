//! Euclidean Jordan algebra kernels for products of nonnegative-orthant,
//! second-order, and PSD blocks.
//!
//! Elements live in a block-structured coordinate vector. PSD blocks are
//! stored in scaled lower-triangular form (column-major, off-diagonal
//! entries multiplied by √2) so that the plain coordinate dot product
//! equals the trace inner product on every block. All operations here are
//! pure functions of immutable inputs and safe to call concurrently.

mod operators;
mod psd;
mod spectral;

pub use operators::{weight_apply, weight_eig_bounds};
pub use psd::{smat, svec_len, svec_push};
pub use spectral::{Barrier, EigSummary, ScalarMap, Spectral};

use thiserror::Error;

/// Errors from cone kernels.
#[derive(Debug, Error)]
pub enum ConeError {
    #[error("dimension mismatch: expected vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid cone block {index}: {reason}")]
    BadBlock { index: usize, reason: String },
    #[error("{map} undefined at eigenvalue {eigenvalue:e} in block {block}")]
    Domain {
        map: &'static str,
        block: usize,
        eigenvalue: f64,
    },
    #[error("element not in the cone interior (block {block}, eigenvalue {eigenvalue:e})")]
    NotInterior { block: usize, eigenvalue: f64 },
    #[error("spectral values come from different frames")]
    FrameMismatch,
}

/// One cone block of a product cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// Nonnegative orthant of the given dimension.
    Orthant(usize),
    /// Second-order (Lorentz) cone; the dimension counts the head
    /// coordinate plus the tail, so it is at least 2.
    SecondOrder(usize),
    /// Cone of p×p symmetric PSD matrices, stored as a scaled
    /// lower-triangular vector of length p(p+1)/2.
    Psd(usize),
}

impl BlockKind {
    /// Coordinate length this block occupies in an [`Element`].
    pub fn vec_len(&self) -> usize {
        match *self {
            BlockKind::Orthant(n) | BlockKind::SecondOrder(n) => n,
            BlockKind::Psd(p) => svec_len(p),
        }
    }

    /// Jordan-algebra rank of this block (number of frame idempotents).
    pub fn rank(&self) -> usize {
        match *self {
            BlockKind::Orthant(n) => n,
            BlockKind::SecondOrder(_) => 2,
            BlockKind::Psd(p) => p,
        }
    }
}

/// Ordered list of cone blocks defining the algebra structure.
///
/// The algebra inner product is the trace form tr(x∘y). Orthant and
/// scaled-PSD coordinates are isometric to it, but on second-order blocks
/// the trace form is twice the coordinate dot; [`ConeDesc::dot`] carries
/// that weight so the barrier calculus identities (∇φ = −x⁻¹,
/// ⟨∇φ(x),x⟩ = −ν) hold verbatim.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeDesc {
    blocks: Vec<BlockKind>,
    offsets: Vec<usize>,
    rank_offsets: Vec<usize>,
    vec_len: usize,
    rank: usize,
    /// Per-coordinate trace-form weight: 2 on second-order blocks, else 1.
    weights: Vec<f64>,
}

impl Eq for ConeDesc {}

impl ConeDesc {
    pub fn new(blocks: Vec<BlockKind>) -> Result<Self, ConeError> {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut rank_offsets = Vec::with_capacity(blocks.len());
        let mut weights = Vec::new();
        let mut vec_len = 0;
        let mut rank = 0;
        for (index, b) in blocks.iter().enumerate() {
            match *b {
                BlockKind::Orthant(n) if n >= 1 => {}
                BlockKind::SecondOrder(n) if n >= 2 => {}
                BlockKind::Psd(p) if p >= 1 => {}
                BlockKind::SecondOrder(_) => {
                    return Err(ConeError::BadBlock {
                        index,
                        reason: "second-order block needs dimension >= 2".into(),
                    })
                }
                _ => {
                    return Err(ConeError::BadBlock {
                        index,
                        reason: "block dimension must be >= 1".into(),
                    })
                }
            }
            offsets.push(vec_len);
            rank_offsets.push(rank);
            let w = if matches!(b, BlockKind::SecondOrder(_)) {
                2.0
            } else {
                1.0
            };
            weights.extend(std::iter::repeat_n(w, b.vec_len()));
            vec_len += b.vec_len();
            rank += b.rank();
        }
        Ok(ConeDesc {
            blocks,
            offsets,
            rank_offsets,
            vec_len,
            rank,
            weights,
        })
    }

    /// Single-block convenience constructor.
    pub fn single(block: BlockKind) -> Self {
        ConeDesc::new(vec![block]).expect("valid block")
    }

    pub fn blocks(&self) -> &[BlockKind] {
        &self.blocks
    }

    /// Total coordinate length of elements of this algebra.
    pub fn vec_len(&self) -> usize {
        self.vec_len
    }

    /// Rank ν: the barrier parameter of the natural barrier.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Coordinate range of block `i`.
    pub fn block_span(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.blocks[i].vec_len()
    }

    /// Eigenvalue range of block `i` inside a rank-length vector.
    pub fn rank_span(&self, i: usize) -> std::ops::Range<usize> {
        self.rank_offsets[i]..self.rank_offsets[i] + self.blocks[i].rank()
    }

    /// Per-coordinate weights of the trace inner product.
    pub fn inner_weights(&self) -> &[f64] {
        &self.weights
    }

    /// Algebra inner product ⟨x, y⟩ = tr(x∘y).
    pub fn dot(&self, x: &Element, y: &Element) -> f64 {
        debug_assert_eq!(x.len(), self.vec_len);
        debug_assert_eq!(y.len(), self.vec_len);
        x.as_slice()
            .iter()
            .zip(y.as_slice())
            .zip(&self.weights)
            .map(|((a, b), w)| w * a * b)
            .sum()
    }

    /// Norm induced by the algebra inner product.
    pub fn norm(&self, x: &Element) -> f64 {
        self.dot(x, x).sqrt()
    }

    /// Scale each coordinate by the inverse trace-form weight; used to
    /// turn a plain transpose action into the true adjoint.
    pub fn apply_inv_weights(&self, x: &mut Element) {
        for (v, w) in x.as_mut_slice().iter_mut().zip(&self.weights) {
            *v /= w;
        }
    }

    pub fn zero(&self) -> Element {
        Element::zeros(self.vec_len)
    }

    /// The identity element e, with x∘e = x for every x.
    pub fn identity(&self) -> Element {
        let mut data = vec![0.0; self.vec_len];
        for (i, b) in self.blocks.iter().enumerate() {
            let off = self.offsets[i];
            match *b {
                BlockKind::Orthant(n) => data[off..off + n].fill(1.0),
                BlockKind::SecondOrder(_) => data[off] = 1.0,
                BlockKind::Psd(p) => {
                    let mut k = off;
                    for j in 0..p {
                        data[k] = 1.0;
                        k += p - j;
                    }
                }
            }
        }
        Element::from_vec(data)
    }

    fn check_len(&self, x: &Element) -> Result<(), ConeError> {
        if x.len() != self.vec_len {
            return Err(ConeError::DimensionMismatch {
                expected: self.vec_len,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Jordan product x∘y. Commutative and bilinear; blockwise it is the
    /// componentwise product (orthant), the arrow product
    /// (⟨x,y⟩; x₀ȳ + y₀x̄) (second-order), and (XY+YX)/2 (PSD).
    pub fn jordan_product(&self, x: &Element, y: &Element) -> Result<Element, ConeError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = vec![0.0; self.vec_len];
        for (i, b) in self.blocks.iter().enumerate() {
            let span = self.block_span(i);
            let xs = &x.as_slice()[span.clone()];
            let ys = &y.as_slice()[span.clone()];
            let os = &mut out[span];
            match *b {
                BlockKind::Orthant(_) => {
                    for ((o, a), b) in os.iter_mut().zip(xs).zip(ys) {
                        *o = a * b;
                    }
                }
                BlockKind::SecondOrder(_) => soc_product(xs, ys, os),
                BlockKind::Psd(p) => psd::psd_product(p, xs, ys, os),
            }
        }
        Ok(Element::from_vec(out))
    }

    /// Lyapunov operator view of the Jordan product: ℒ(x)y = x∘y.
    pub fn lyapunov_apply(&self, x: &Element, y: &Element) -> Result<Element, ConeError> {
        self.jordan_product(x, y)
    }

    /// Quadratic representation 𝒫(x)y = 2x∘(x∘y) − x²∘y.
    pub fn quadratic_apply(&self, x: &Element, y: &Element) -> Result<Element, ConeError> {
        let xy = self.jordan_product(x, y)?;
        let xxy = self.jordan_product(x, &xy)?;
        let xx = self.jordan_product(x, x)?;
        let xxy2 = self.jordan_product(&xx, y)?;
        let mut out = xxy;
        out.scale_mut(2.0);
        out.axpy(-1.0, &xxy2);
        Ok(out)
    }

    /// Spectral decomposition of `x` (works for any element, not only cone
    /// members). Eigenvalues are sorted descending per block.
    pub fn spectral(&self, x: &Element) -> Result<Spectral, ConeError> {
        self.check_len(x)?;
        Ok(spectral::decompose(self, x))
    }
}

fn soc_product(x: &[f64], y: &[f64], out: &mut [f64]) {
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let (x0, y0) = (x[0], y[0]);
    out[0] = dot;
    for k in 1..x.len() {
        out[k] = x0 * y[k] + y0 * x[k];
    }
}

/// A block-structured coordinate vector in the Jordan algebra. PSD blocks
/// use the scaled lower-triangular layout. The raw coordinate dot equals
/// the algebra inner product on orthant and PSD blocks; the full trace
/// form (with the second-order factor 2) is [`ConeDesc::dot`].
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    data: Vec<f64>,
}

impl Element {
    pub fn from_vec(data: Vec<f64>) -> Self {
        Element { data }
    }

    pub fn zeros(len: usize) -> Self {
        Element {
            data: vec![0.0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    /// Algebra inner product (trace inner product on PSD blocks).
    pub fn dot(&self, other: &Element) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn inf_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// self += alpha * other
    pub fn axpy(&mut self, alpha: f64, other: &Element) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += alpha * b;
        }
    }

    pub fn scale_mut(&mut self, alpha: f64) {
        for a in &mut self.data {
            *a *= alpha;
        }
    }

    pub fn scaled(&self, alpha: f64) -> Element {
        let mut out = self.clone();
        out.scale_mut(alpha);
        out
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.axpy(1.0, other);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.axpy(-1.0, other);
        out
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn mixed_cone() -> ConeDesc {
        ConeDesc::new(vec![
            BlockKind::Orthant(3),
            BlockKind::SecondOrder(3),
            BlockKind::Psd(3),
        ])
        .unwrap()
    }

    #[test]
    fn lengths_and_ranks_sum_per_block() {
        let cone = mixed_cone();
        assert_eq!(cone.vec_len(), 3 + 3 + 6);
        assert_eq!(cone.rank(), 3 + 2 + 3);
    }

    #[test]
    fn rejects_bad_blocks() {
        assert!(ConeDesc::new(vec![BlockKind::Orthant(0)]).is_err());
        assert!(ConeDesc::new(vec![BlockKind::SecondOrder(1)]).is_err());
        assert!(ConeDesc::new(vec![BlockKind::Psd(0)]).is_err());
    }

    #[test]
    fn identity_blocks() {
        let orth = ConeDesc::single(BlockKind::Orthant(3));
        assert_eq!(orth.identity().as_slice(), &[1.0, 1.0, 1.0]);

        let soc = ConeDesc::single(BlockKind::SecondOrder(3));
        assert_eq!(soc.identity().as_slice(), &[1.0, 0.0, 0.0]);

        let psd = ConeDesc::single(BlockKind::Psd(2));
        assert_eq!(psd.identity().as_slice(), &[1.0, 0.0, 1.0]);
    }

    #[test]
    fn identity_is_neutral() {
        let cone = mixed_cone();
        let e = cone.identity();
        let x = Element::from_vec((0..cone.vec_len()).map(|i| 0.3 * i as f64 - 1.0).collect());
        let xe = cone.jordan_product(&x, &e).unwrap();
        for (a, b) in xe.as_slice().iter().zip(x.as_slice()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn orthant_product_componentwise() {
        let cone = ConeDesc::single(BlockKind::Orthant(2));
        let p = cone
            .jordan_product(
                &Element::from_vec(vec![2.0, 3.0]),
                &Element::from_vec(vec![4.0, 5.0]),
            )
            .unwrap();
        assert_eq!(p.as_slice(), &[8.0, 15.0]);
    }

    #[test]
    fn soc_product_of_central_pair_is_identity() {
        // (1.118034, −0.5, 0)∘(1.118034, 0.5, 0) = (1, 0, 0)
        let cone = ConeDesc::single(BlockKind::SecondOrder(3));
        let h = (5.0f64).sqrt() / 2.0;
        let s = Element::from_vec(vec![h, -0.5, 0.0]);
        let z = Element::from_vec(vec![h, 0.5, 0.0]);
        let p = cone.jordan_product(&s, &z).unwrap();
        assert!((p.as_slice()[0] - 1.0).abs() < 1e-12);
        assert!(p.as_slice()[1].abs() < 1e-12);
        assert!(p.as_slice()[2].abs() < 1e-12);
    }

    #[test]
    fn psd_identity_product_is_identity_map() {
        let cone = ConeDesc::single(BlockKind::Psd(2));
        let e = cone.identity();
        let x = Element::from_vec(vec![1.5, -0.3, 0.7]);
        let p = cone.jordan_product(&e, &x).unwrap();
        for (a, b) in p.as_slice().iter().zip(x.as_slice()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn product_rejects_dimension_mismatch() {
        let cone = ConeDesc::single(BlockKind::Orthant(2));
        let err = cone
            .jordan_product(
                &Element::from_vec(vec![1.0, 2.0]),
                &Element::from_vec(vec![1.0]),
            )
            .unwrap_err();
        assert!(matches!(err, ConeError::DimensionMismatch { .. }));
    }

    #[test]
    fn psd_inner_product_matches_matrix_trace() {
        // coordinate dot on scaled svec coordinates == tr(XY)
        let cone = ConeDesc::single(BlockKind::Psd(3));
        let x = Element::from_vec(vec![1.0, 0.4, -0.2, 2.0, 0.9, 3.0]);
        let y = Element::from_vec(vec![0.5, -1.0, 0.3, 1.5, 0.2, -0.7]);
        let xm = smat(3, x.as_slice());
        let ym = smat(3, y.as_slice());
        let trace = (&xm * &ym).trace();
        assert!((x.dot(&y) - trace).abs() < 1e-12);
        let _ = cone;
    }
}
