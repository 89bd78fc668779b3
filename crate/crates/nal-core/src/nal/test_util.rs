//! Shared fixtures for solver unit tests.

use crate::cones::{BlockKind, ConeDesc, Element};
use crate::linalg::LinearMap;
use crate::probio::rng::Rng;
use crate::probio::Problem;

/// Random mixed-cone instance with a well-populated operator.
pub(crate) fn random_mixed_problem(m: usize, rng: &mut Rng) -> Problem {
    let cone = ConeDesc::new(vec![
        BlockKind::Orthant(3),
        BlockKind::SecondOrder(3),
        BlockKind::Psd(2),
    ])
    .unwrap();
    let n = cone.vec_len();
    let mut trips = Vec::new();
    for r in 0..m {
        for c in 0..n {
            if rng.bernoulli(0.4) {
                trips.push((r, c, rng.uniform(-1.0, 1.0)));
            }
        }
        trips.push((r, r % n, rng.uniform(0.7, 1.3)));
    }
    let a = LinearMap::from_triplets(m, n, &trips).unwrap();
    let c = Element::from_vec((0..n).map(|_| rng.uniform(-1.0, 1.0)).collect());
    let b: Vec<f64> = (0..m).map(|_| rng.uniform(-1.0, 1.0)).collect();
    Problem::new("rand", cone, a, b, c).unwrap()
}
