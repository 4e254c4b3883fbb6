//! The routed product and the end-to-end composition pipelines.

mod pipeline;

pub use pipeline::{
    pipeline_comb, pipeline_spectral, BaseConfig, BaseFamily, BaseSummary, Claim, Derived, GraphSummary,
    InnerConfig, OuterConfig, PipelineConfig, PipelineDossier, PipelineKind, PipelineOutput, VerifyConfig,
};

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

/// Routed product `outer ∘ inner`. Slot `i` of right vertex `v` (the `i`-th
/// entry of its right order) is routed through inner left vertex `i`; the
/// product has an edge `(u, v * nR' + w)` for every such slot landing on `u`
/// and every inner edge `(i, w)`.
///
/// The outer graph must be `(d1, d2)`-biregular with `d2` equal to the inner
/// left size.
pub fn routed_product(outer: &BipartiteGraph, inner: &BipartiteGraph) -> Result<BipartiteGraph> {
    let (_, d2) = outer
        .biregular()
        .ok_or_else(|| Error::precondition("outer graph is not biregular"))?;
    if inner.n_left() != d2 {
        return Err(Error::invalid(format!(
            "inner left size {} differs from outer right degree {d2}",
            inner.n_left()
        )));
    }
    compose(outer, inner)
}

/// Routed product for an outer graph whose right degrees are at most the
/// inner left size: a right vertex of degree `k` uses inner slots `0..k`.
/// This is the form used after stripping loops from a regular base graph.
pub fn routed_product_deficient(outer: &BipartiteGraph, inner: &BipartiteGraph) -> Result<BipartiteGraph> {
    if outer.max_right_degree() > inner.n_left() {
        return Err(Error::invalid(format!(
            "outer right degree {} exceeds inner left size {}",
            outer.max_right_degree(),
            inner.n_left()
        )));
    }
    compose(outer, inner)
}

fn compose(outer: &BipartiteGraph, inner: &BipartiteGraph) -> Result<BipartiteGraph> {
    let nr_inner = inner.n_right();
    let mut edges = Vec::with_capacity(outer.edge_count() * inner.max_left_degree());
    for v in 0..outer.n_right() {
        for (slot, &u) in outer.right_slots(v).iter().enumerate() {
            for &w in inner.left_neighbors(slot) {
                edges.push((u, v * nr_inner + w));
            }
        }
    }
    BipartiteGraph::new(outer.n_left(), outer.n_right() * nr_inner, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random;
    use crate::rng::SeedStream;
    use crate::spectral::complete;
    use proptest::prelude::*;

    /// Direct reading of the definition: enumerate `(u, v, v')` triples.
    fn oracle(outer: &BipartiteGraph, inner: &BipartiteGraph) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..outer.n_left() {
            for v in 0..outer.n_right() {
                for w in 0..inner.n_right() {
                    for (i, &slot_u) in outer.right_slots(v).iter().enumerate() {
                        if slot_u == u {
                            let m = inner.left_neighbors(i).iter().filter(|&&x| x == w).count();
                            out.extend(std::iter::repeat_n((u, v * inner.n_right() + w), m));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn sorted_edges(g: &BipartiteGraph) -> Vec<(usize, usize)> {
        let mut e = g.edges();
        e.sort_unstable();
        e
    }

    #[test]
    fn two_left_one_right() {
        let outer = BipartiteGraph::new(2, 1, &[(0, 0), (1, 0)]).unwrap();
        let inner = BipartiteGraph::new(2, 2, &[(0, 0), (1, 1)]).unwrap();
        let p = routed_product(&outer, &inner).unwrap();
        assert_eq!(sorted_edges(&p), vec![(0, 0), (1, 1)]);
        assert_eq!(p.left_regular_degree(), Some(1));
    }

    #[test]
    fn complete_inner_clones_right_vertices() {
        let outer = complete(4).unwrap().edge_vertex_incidence().unwrap();
        let inner_edges: Vec<_> = (0..3).flat_map(|i| (0..2).map(move |w| (i, w))).collect();
        let inner = BipartiteGraph::new(3, 2, &inner_edges).unwrap();
        let p = routed_product(&outer, &inner).unwrap();
        assert_eq!(p.left_regular_degree(), Some(4));
        for v in 0..4 {
            let base: Vec<usize> = outer.right_slots(v).to_vec();
            for w in 0..2 {
                let mut s = p.right_slots(v * 2 + w).to_vec();
                s.sort_unstable();
                let mut b = base.clone();
                b.sort_unstable();
                assert_eq!(s, b);
            }
        }
    }

    #[test]
    fn size_mismatch_and_irregular_outer() {
        let outer = complete(4).unwrap().edge_vertex_incidence().unwrap();
        let inner = BipartiteGraph::new(2, 2, &[(0, 0), (1, 1)]).unwrap();
        assert!(matches!(routed_product(&outer, &inner), Err(Error::InvalidParameter(_))));
        let chain = crate::graph::fixtures::chain();
        assert!(matches!(routed_product(&chain, &inner), Err(Error::Precondition(_))));
        // deficient mode accepts the chain's degree-2 checks on a 2-slot inner
        assert!(routed_product_deficient(&chain, &inner).is_ok());
        let tiny = BipartiteGraph::new(1, 1, &[(0, 0)]).unwrap();
        assert!(routed_product_deficient(&chain, &tiny).is_err());
    }

    #[test]
    fn multiplicities_multiply() {
        // double edge in the outer, double edge in the inner slot 0
        let outer = BipartiteGraph::new(1, 1, &[(0, 0), (0, 0)]).unwrap();
        let inner = BipartiteGraph::new(2, 1, &[(0, 0), (0, 0), (1, 0)]).unwrap();
        let p = routed_product(&outer, &inner).unwrap();
        assert_eq!(p.edge_multiplicities(), vec![(0, 0, 3)]);
        assert_eq!(sorted_edges(&p), oracle(&outer, &inner));
    }

    /// Relabels inner left vertex `i` as `perm[i]`.
    fn permute_inner_left(inner: &BipartiteGraph, perm: &[usize]) -> BipartiteGraph {
        let edges: Vec<_> = inner.edges().into_iter().map(|(i, w)| (perm[i], w)).collect();
        BipartiteGraph::new(inner.n_left(), inner.n_right(), &edges).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn matches_definition_and_identities(seed in 0u64..10_000, m in 1usize..5, d1 in 1usize..4, d2 in 1usize..5, dp in 1usize..3, nrp in 2usize..5) {
            let mut rng = SeedStream::new(seed).rng();
            let outer = random::biregular(m * d2, m * d1, d1, &mut rng).unwrap();
            let (d1o, d2o) = outer.biregular().unwrap();
            let dp = dp.min(nrp);
            let inner = random::left_regular_simple(d2o, nrp, dp, &mut rng).unwrap();
            let p = routed_product(&outer, &inner).unwrap();
            prop_assert_eq!(sorted_edges(&p), oracle(&outer, &inner));
            prop_assert_eq!(p.left_regular_degree(), Some(d1o * dp));
            prop_assert_eq!(p.n_right(), outer.n_right() * nrp);
            // nR''/nL'' = d1 * beta', compared exactly as integers
            prop_assert_eq!(p.n_right() * d2o, p.n_left() * d1o * nrp);
        }

        #[test]
        fn reordering_slots_equals_relabeling_inner(seed in 0u64..10_000) {
            let mut rng = SeedStream::new(seed).rng();
            let outer = complete(4).unwrap().edge_vertex_incidence().unwrap();
            let inner = random::left_regular_simple(3, 4, 2, &mut rng).unwrap();
            let perm = rand::seq::index::sample(&mut rng, 3, 3).into_vec();
            // slot perm[i] of the reordered outer holds what slot i held before
            let order: Vec<Vec<usize>> = (0..outer.n_right())
                .map(|v| {
                    let old = outer.right_slots(v);
                    let mut new = vec![0; old.len()];
                    for (i, &u) in old.iter().enumerate() {
                        new[perm[i]] = u;
                    }
                    new
                })
                .collect();
            let reordered = outer.clone().with_right_order(order).unwrap();
            let a = routed_product(&reordered, &permute_inner_left(&inner, &perm)).unwrap();
            let b = routed_product(&outer, &inner).unwrap();
            prop_assert_eq!(sorted_edges(&a), sorted_edges(&b));
        }
    }
}
