//! Randomized search for small inner graphs with exhaustively certified
//! unique-neighbor (or combinatorial) expansion.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{random, BipartiteGraph};
use crate::par;
use crate::rng::SeedStream;
use crate::subsets::binomial;
use crate::verify::{check, ExpansionParams, ExpansionVerdict, Property, Status, VerifyOptions, DEFAULT_BUDGET};

pub const DEFAULT_MAX_ATTEMPTS: usize = 10_000;
const BATCH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InnerProperty {
    #[default]
    UniqueNeighbor,
    Combinatorial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerTarget {
    pub delta: f64,
    pub alpha: Option<f64>,
    #[serde(default)]
    pub property: InnerProperty,
}

impl InnerTarget {
    pub fn un(delta: f64, alpha: Option<f64>) -> Self {
        InnerTarget {
            delta,
            alpha,
            property: InnerProperty::UniqueNeighbor,
        }
    }

    fn property(&self) -> Property {
        match (self.property, self.alpha) {
            (InnerProperty::Combinatorial, _) => Property::Combinatorial,
            (InnerProperty::UniqueNeighbor, Some(_)) => Property::UniqueNeighborFraction,
            (InnerProperty::UniqueNeighbor, None) => Property::UniqueNeighbor,
        }
    }

    fn validate(&self) -> Result<ExpansionParams> {
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::invalid(format!("inner delta must lie in (0, 1], got {}", self.delta)));
        }
        if self.property == InnerProperty::Combinatorial && self.alpha.is_none() {
            return Err(Error::invalid("combinatorial inner target needs alpha"));
        }
        ExpansionParams::new(self.delta, self.alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerSearchSpec {
    pub n_left: usize,
    pub degree: usize,
    pub n_right: usize,
    #[serde(flatten)]
    pub target: InnerTarget,
    pub seed: u64,
    #[serde(default = "default_attempts")]
    pub max_attempts: usize,
}

fn default_attempts() -> usize {
    DEFAULT_MAX_ATTEMPTS
}

impl InnerSearchSpec {
    pub fn new(n_left: usize, degree: usize, n_right: usize, target: InnerTarget, seed: u64) -> Self {
        InnerSearchSpec {
            n_left,
            degree,
            n_right,
            target,
            seed,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        }
    }

    pub fn imbalance(&self) -> f64 {
        self.n_right as f64 / self.n_left as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_left == 0 || self.n_right == 0 || self.degree == 0 {
            return Err(Error::invalid("inner sizes and degree must be positive"));
        }
        if self.degree > self.n_right {
            return Err(Error::invalid(format!(
                "inner degree {} exceeds right size {}",
                self.degree, self.n_right
            )));
        }
        if self.max_attempts == 0 {
            return Err(Error::invalid("max_attempts must be positive"));
        }
        self.target.validate().map(|_| ())
    }
}

/// Closest failed attempt: the one whose smallest violating subset was
/// largest, then with the smallest shortfall, then earliest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearMiss {
    pub attempts: usize,
    pub best_attempt: usize,
    pub violated_size: usize,
    pub deficit: usize,
}

impl fmt::Display for NearMiss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "closest attempt {} failed at |S| = {} with deficit {}",
            self.best_attempt, self.violated_size, self.deficit
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InnerResult {
    pub graph: BipartiteGraph,
    pub verdict: ExpansionVerdict,
    /// One-based index of the accepted attempt.
    pub attempts: usize,
}

fn exhaustive_options(n_left: usize, params: ExpansionParams) -> Result<VerifyOptions> {
    let kmax = params.max_eligible_size(n_left);
    let total: u128 = (1..=kmax).map(|k| binomial(n_left, k)).sum();
    if total > DEFAULT_BUDGET as u128 {
        return Err(Error::GuardExceeded {
            what: "inner certification subsets",
            limit: DEFAULT_BUDGET,
            actual: total.min(u64::MAX as u128) as u64,
        });
    }
    Ok(VerifyOptions::exhaustive())
}

/// Exhaustive certificate for a left-regular inner graph. Never `Tested`.
pub fn certify_inner(b: &BipartiteGraph, target: &InnerTarget, workers: usize) -> Result<ExpansionVerdict> {
    let params = target.validate()?;
    if b.left_regular_degree().is_none() {
        return Err(Error::precondition("inner graph must be left-regular"));
    }
    let opts = exhaustive_options(b.n_left(), params)?.with_workers(workers);
    let v = check(b, target.property(), params, &opts)?;
    debug_assert_ne!(v.status, Status::Tested);
    Ok(v)
}

/// Draws simple `degree`-left-regular candidates until one certifies. The
/// accepted graph is the lowest-index certified attempt for any worker count.
pub fn search_inner(spec: &InnerSearchSpec, workers: usize) -> Result<InnerResult> {
    spec.validate()?;
    let params = spec.target.validate()?;
    let opts = exhaustive_options(spec.n_left, params)?;
    let property = spec.target.property();
    let stream = SeedStream::new(spec.seed).split("inner-search");
    let attempt = |i: usize| -> Result<(BipartiteGraph, ExpansionVerdict)> {
        let mut rng = stream.index(i as u64).rng();
        let g = random::left_regular_simple(spec.n_left, spec.n_right, spec.degree, &mut rng)?;
        let v = check(&g, property, params, &opts)?;
        Ok((g, v))
    };
    let mut near: Option<NearMiss> = None;
    let mut start = 0;
    while start < spec.max_attempts {
        let end = (start + BATCH).min(spec.max_attempts);
        let batch: Vec<Result<(BipartiteGraph, ExpansionVerdict)>> =
            par::install(workers, || (start..end).into_par_iter().map(attempt).collect());
        for (offset, r) in batch.into_iter().enumerate() {
            let (g, v) = r?;
            let index = start + offset;
            if v.is_certified() {
                return Ok(InnerResult {
                    graph: g,
                    verdict: v,
                    attempts: index + 1,
                });
            }
            if let Some(w) = &v.witness {
                let cand = NearMiss {
                    attempts: 0,
                    best_attempt: index + 1,
                    violated_size: w.subset.len(),
                    deficit: w.required - w.count,
                };
                let better = near.as_ref().is_none_or(|n| {
                    (cand.violated_size, std::cmp::Reverse(cand.deficit)) > (n.violated_size, std::cmp::Reverse(n.deficit))
                });
                if better {
                    near = Some(cand);
                }
            }
        }
        start = end;
    }
    let mut near = near.unwrap_or(NearMiss {
        attempts: 0,
        best_attempt: 0,
        violated_size: 0,
        deficit: 0,
    });
    near.attempts = spec.max_attempts;
    Err(Error::SearchExhausted {
        attempts: spec.max_attempts,
        near_miss: Box::new(near),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::chain;
    use proptest::prelude::*;

    fn matching(n: usize) -> BipartiteGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, i)).collect();
        BipartiteGraph::new(n, n, &edges).unwrap()
    }

    #[test]
    fn singletons_succeed_immediately() {
        let spec = InnerSearchSpec::new(10, 3, 12, InnerTarget::un(0.1, Some(1.0)), 4);
        let r = search_inner(&spec, 2).unwrap();
        assert_eq!(r.attempts, 1);
        assert!(r.verdict.is_certified());
    }

    #[test]
    fn perfect_matching_is_the_only_candidate() {
        let spec = InnerSearchSpec::new(3, 1, 3, InnerTarget::un(1.0, Some(1.0)), 0);
        let r = search_inner(&spec, 1).unwrap();
        assert_eq!(r.graph.right_degree(0), 1);
        assert!(r.graph.is_simple());
        assert!(certify_inner(&matching(3), &InnerTarget::un(1.0, Some(1.0)), 1).unwrap().is_certified());
    }

    #[test]
    fn two_rights_cannot_separate_pairs() {
        let mut spec = InnerSearchSpec::new(3, 2, 2, InnerTarget::un(0.7, None), 9);
        spec.max_attempts = 20;
        match search_inner(&spec, 3) {
            Err(Error::SearchExhausted { attempts, near_miss }) => {
                assert_eq!(attempts, 20);
                assert_eq!(near_miss.attempts, 20);
                assert_eq!(near_miss.violated_size, 2);
                assert_eq!(near_miss.deficit, 1);
                assert!(near_miss.to_string().contains("|S| = 2"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn certify_requires_left_regular() {
        assert!(matches!(
            certify_inner(&chain(), &InnerTarget::un(1.0, None), 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn certify_guard() {
        let spec = InnerSearchSpec::new(40, 3, 40, InnerTarget::un(1.0, None), 0);
        assert!(matches!(search_inner(&spec, 1), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn combinatorial_target() {
        let target = InnerTarget {
            delta: 0.5,
            alpha: Some(0.75),
            property: InnerProperty::Combinatorial,
        };
        let spec = InnerSearchSpec::new(8, 4, 16, target, 2);
        let r = search_inner(&spec, 2).unwrap();
        assert_eq!(r.verdict.property, Property::Combinatorial);
        assert_eq!(certify_inner(&r.graph, &target, 1).unwrap(), r.verdict);
        let bad = InnerTarget { alpha: None, ..target };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(InnerSearchSpec::new(3, 4, 3, InnerTarget::un(1.0, None), 0).validate().is_err());
        assert!(InnerSearchSpec::new(3, 1, 3, InnerTarget::un(1.5, None), 0).validate().is_err());
        assert!(InnerSearchSpec::new(3, 1, 0, InnerTarget::un(1.0, None), 0).validate().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn results_recertify_and_replay(seed in 0u64..1000, n in 3usize..8, d in 1usize..4) {
            let target = InnerTarget::un(0.5, Some(0.5));
            let mut spec = InnerSearchSpec::new(n, d, 2 * n, target, seed);
            spec.max_attempts = 200;
            let a = search_inner(&spec, 1);
            let b = search_inner(&spec, 4);
            prop_assert_eq!(&a, &b);
            if let Ok(r) = a {
                prop_assert!(r.graph.is_simple());
                prop_assert_eq!(r.graph.left_regular_degree(), Some(d));
                prop_assert_eq!(certify_inner(&r.graph, &target, 2).unwrap(), r.verdict);
            }
        }
    }
}
