//! Seeded random bipartite graphs.

use rand::seq::{index, SliceRandom};
use rand::Rng;

use super::BipartiteGraph;
use crate::error::{Error, Result};

/// Each left vertex picks `d` distinct right neighbors uniformly.
pub fn left_regular_simple<R: Rng>(
    n_left: usize,
    n_right: usize,
    d: usize,
    rng: &mut R,
) -> Result<BipartiteGraph> {
    if d > n_right {
        return Err(Error::invalid(format!(
            "left degree {d} exceeds right side size {n_right}"
        )));
    }
    let mut edges = Vec::with_capacity(n_left * d);
    for u in 0..n_left {
        for v in index::sample(rng, n_right, d) {
            edges.push((u, v));
        }
    }
    BipartiteGraph::new(n_left, n_right, &edges)
}

/// Configuration model for a `(d1, d2)`-biregular graph with
/// `d2 = n_left * d1 / n_right`. Parallel edges may occur.
pub fn biregular<R: Rng>(
    n_left: usize,
    n_right: usize,
    d1: usize,
    rng: &mut R,
) -> Result<BipartiteGraph> {
    if n_right == 0 || (n_left * d1) % n_right != 0 {
        return Err(Error::invalid(format!(
            "{n_left} left vertices of degree {d1} cannot be spread evenly over {n_right} right vertices"
        )));
    }
    let d2 = n_left * d1 / n_right;
    let mut stubs: Vec<usize> = (0..n_right).flat_map(|v| std::iter::repeat(v).take(d2)).collect();
    stubs.shuffle(rng);
    let edges: Vec<(usize, usize)> = stubs
        .chunks(d1.max(1))
        .enumerate()
        .flat_map(|(u, chunk)| chunk.iter().map(move |&v| (u, v)))
        .collect();
    BipartiteGraph::new(n_left, n_right, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeedStream;

    #[test]
    fn left_regular_is_simple() {
        let mut rng = SeedStream::new(5).rng();
        let b = left_regular_simple(10, 6, 3, &mut rng).unwrap();
        assert_eq!(b.left_regular_degree(), Some(3));
        assert!(b.is_simple());
        assert!(left_regular_simple(2, 2, 3, &mut rng).is_err());
    }

    #[test]
    fn configuration_model_degrees() {
        let mut rng = SeedStream::new(9).rng();
        let b = biregular(12, 8, 2, &mut rng).unwrap();
        assert_eq!(b.biregular(), Some((2, 3)));
        assert!(biregular(5, 3, 1, &mut rng).is_err());
    }
}
