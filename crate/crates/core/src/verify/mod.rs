//! Certification and refutation of combinatorial and unique-neighbor expansion.
//!
//! A left subset `S` is *eligible* when `1 <= |S| < delta * |L|`. Every check
//! walks eligible size classes in increasing order, enumerating a class
//! exhaustively while the cumulative count stays within budget and sampling
//! it (seeded, without replacement) afterwards. A verdict is `Certified` only
//! when every eligible class was covered exhaustively.
//!
//! Real-valued thresholds are compared against integer counts with a
//! tolerance of [`EPS`]: values within `EPS` of an integer are treated as
//! that integer, so `delta = 2/3` on six vertices admits sizes up to 3.

mod lemmas;

pub use lemmas::{
    lemma_comb_size_check, lemma_fraction_size_check, lemma_spectral_size_check, LemmaMode, LemmaReport,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Tally, VertexSubset};
use crate::par;
use crate::rng::SeedStream;
use crate::subsets::{binomial, next_combination, sample_distinct, unrank};

pub const EPS: f64 = 1e-9;
pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_SAMPLES_PER_CLASS: u64 = 100_000;

/// Smallest integer `>= x`, treating `x` within [`EPS`] of an integer as that integer.
pub fn ceil_count(x: f64) -> usize {
    (x - EPS).ceil().max(0.0) as usize
}

/// Largest `k` with `k < x`, treating `x` within [`EPS`] of an integer as that integer.
pub fn max_below(x: f64) -> usize {
    ceil_count(x).saturating_sub(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionParams {
    pub delta: f64,
    pub alpha: Option<f64>,
}

impl ExpansionParams {
    pub fn new(delta: f64, alpha: Option<f64>) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::invalid(format!("delta must be positive, got {delta}")));
        }
        if let Some(a) = alpha {
            if !(a > 0.0 && a <= 1.0) {
                return Err(Error::invalid(format!("alpha must lie in (0, 1], got {a}")));
            }
        }
        Ok(ExpansionParams { delta, alpha })
    }

    pub fn max_eligible_size(&self, n_left: usize) -> usize {
        max_below(self.delta * n_left as f64).min(n_left)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// `|Γ(S)| >= alpha * d * |S|`
    Combinatorial,
    /// `Γ_uni(S)` nonempty
    UniqueNeighbor,
    /// `|Γ_uni(S)| >= alpha * d * |S|`
    UniqueNeighborFraction,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Combinatorial => "combinatorial",
            Property::UniqueNeighbor => "unique-neighbor",
            Property::UniqueNeighborFraction => "unique-neighbor-fraction",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Certified,
    Tested,
    Refuted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Cap on the cumulative number of subsets enumerated exhaustively.
    pub max_enumerated: u64,
    /// Subsets drawn from each class that is not enumerated.
    pub samples_per_class: u64,
    /// Classes above this size are sampled even if the budget allows more.
    pub exhaustive_max_size: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_enumerated: DEFAULT_BUDGET,
            samples_per_class: DEFAULT_SAMPLES_PER_CLASS,
            exhaustive_max_size: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub budget: Budget,
    pub seed: u64,
    /// Degree used in `alpha * d * |S|`; defaults to the common left degree,
    /// or the maximum left degree for irregular graphs.
    pub reference_degree: Option<usize>,
    #[serde(skip)]
    pub workers: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: Budget::default(),
            seed: 0,
            reference_degree: None,
            workers: 1,
        }
    }
}

impl VerifyOptions {
    pub fn exhaustive() -> Self {
        Self::default()
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTrace {
    pub size: usize,
    /// Class size `C(nL, k)`, saturated at `u64::MAX`.
    pub total: u64,
    pub checked: u64,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub subset: VertexSubset,
    /// The counted quantity (`|Γ(S)|` or `|Γ_uni(S)|`).
    pub count: usize,
    /// The smallest count that would have satisfied the bound.
    pub required: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionVerdict {
    pub property: Property,
    pub params: ExpansionParams,
    pub n_left: usize,
    pub reference_degree: usize,
    pub left_regular: bool,
    pub max_eligible_size: usize,
    pub status: Status,
    /// True when no nonempty subset is eligible.
    pub vacuous: bool,
    pub witness: Option<Witness>,
    pub enumerated: u64,
    pub sampled: u64,
    pub max_size_exhausted: usize,
    pub classes: Vec<ClassTrace>,
    pub seed: u64,
}

impl ExpansionVerdict {
    pub fn is_certified(&self) -> bool {
        self.status == Status::Certified
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }

    /// Recomputes the counted quantity on the witness and confirms the violation.
    pub fn recheck_witness(&self, b: &BipartiteGraph) -> Option<bool> {
        let w = self.witness.as_ref()?;
        let size = w.subset.len();
        if size == 0 || size > self.max_eligible_size {
            return Some(false);
        }
        let mut tally = Tally::new(b.n_right());
        tally.load(b, w.subset.members());
        let (count, required) = measure(self.property, &tally, self.params, self.reference_degree, size);
        Some(count == w.count && required == w.required && count < required)
    }
}

fn measure(property: Property, tally: &Tally, params: ExpansionParams, d: usize, size: usize) -> (usize, usize) {
    let alpha = params.alpha.unwrap_or(1.0);
    match property {
        Property::Combinatorial => (tally.touched().len(), ceil_count(alpha * d as f64 * size as f64)),
        Property::UniqueNeighbor => (tally.unique_count(), 1),
        Property::UniqueNeighborFraction => (tally.unique_count(), ceil_count(alpha * d as f64 * size as f64)),
    }
}

/// Subsets of one size class in a fixed order, so that the first violation is
/// well defined however the scan is split across workers.
enum ClassScan {
    Ranks { n: usize, k: usize, total: u128 },
    List(Vec<Vec<usize>>),
}

const BLOCK: u128 = 4096;

impl ClassScan {
    /// First violating subset in scan order, with its position.
    fn first_violation<F>(&self, n_right: usize, workers: usize, test: &F) -> Option<(u64, Vec<usize>, usize, usize)>
    where
        F: Fn(&mut Tally, &[usize]) -> Option<(usize, usize)> + Sync,
    {
        par::install(workers, || match self {
            ClassScan::Ranks { n, k, total } => {
                let blocks = total.div_ceil(BLOCK) as u64;
                (0..blocks).into_par_iter().find_map_first(|b| {
                    let start = b as u128 * BLOCK;
                    let end = (start + BLOCK).min(*total);
                    let mut tally = Tally::new(n_right);
                    let mut s = unrank(*n, *k, start);
                    let mut rank = start;
                    loop {
                        if let Some((count, required)) = test(&mut tally, &s) {
                            return Some((rank as u64, s, count, required));
                        }
                        rank += 1;
                        if rank == end || !next_combination(&mut s, *n) {
                            return None;
                        }
                    }
                })
            }
            ClassScan::List(list) => list.par_chunks(BLOCK as usize).enumerate().find_map_first(|(b, chunk)| {
                let mut tally = Tally::new(n_right);
                chunk.iter().enumerate().find_map(|(i, s)| {
                    test(&mut tally, s).map(|(c, r)| ((b * BLOCK as usize + i) as u64, s.clone(), c, r))
                })
            }),
        })
    }
}

pub(crate) fn resolve_degree(b: &BipartiteGraph, opts: &VerifyOptions) -> (usize, bool) {
    let regular = b.left_regular_degree();
    let d = opts
        .reference_degree
        .or(regular)
        .unwrap_or_else(|| b.max_left_degree());
    (d, regular.is_some())
}

fn run_check(b: &BipartiteGraph, property: Property, params: ExpansionParams, opts: &VerifyOptions) -> ExpansionVerdict {
    let n = b.n_left();
    let kmax = params.max_eligible_size(n);
    let (d, left_regular) = resolve_degree(b, opts);
    let test = |tally: &mut Tally, s: &[usize]| {
        tally.load(b, s);
        let (count, required) = measure(property, tally, params, d, s.len());
        (count < required).then_some((count, required))
    };

    let mut verdict = ExpansionVerdict {
        property,
        params,
        n_left: n,
        reference_degree: d,
        left_regular,
        max_eligible_size: kmax,
        status: Status::Certified,
        vacuous: kmax == 0,
        witness: None,
        enumerated: 0,
        sampled: 0,
        max_size_exhausted: 0,
        classes: Vec::new(),
        seed: opts.seed,
    };
    let sampler = SeedStream::new(opts.seed).split("expansion-sample");
    let budget = opts.budget;
    let mut sampling = false;
    let mut contiguous = true;

    for k in 1..=kmax {
        let total = binomial(n, k);
        sampling = sampling
            || (verdict.enumerated as u128).saturating_add(total) > budget.max_enumerated as u128
            || budget.exhaustive_max_size.is_some_and(|m| k > m);
        let (scan, exhaustive) = if !sampling {
            (ClassScan::Ranks { n, k, total }, true)
        } else {
            let mut rng = sampler.index(k as u64).rng();
            let list = sample_distinct(&mut rng, n, k, budget.samples_per_class);
            let exhaustive = list.len() as u128 == total;
            (ClassScan::List(list), exhaustive)
        };
        let planned = match &scan {
            ClassScan::Ranks { total, .. } => *total as u64,
            ClassScan::List(l) => l.len() as u64,
        };
        let hit = scan.first_violation(b.n_right(), opts.workers, &test);
        let checked = hit.as_ref().map_or(planned, |h| h.0 + 1);
        if exhaustive {
            verdict.enumerated += checked;
        } else {
            verdict.sampled += checked;
        }
        verdict.classes.push(ClassTrace {
            size: k,
            total: total.min(u64::MAX as u128) as u64,
            checked,
            exhaustive,
        });
        if let Some((_, s, count, required)) = hit {
            verdict.status = Status::Refuted;
            verdict.witness = Some(Witness {
                subset: VertexSubset::left(s),
                count,
                required,
            });
            return verdict;
        }
        contiguous &= exhaustive;
        if contiguous {
            verdict.max_size_exhausted = k;
        } else {
            verdict.status = Status::Tested;
        }
    }
    verdict
}

/// `|Γ(S)| >= ceil(alpha * d * |S|)` for every eligible `S`.
pub fn check_combinatorial(b: &BipartiteGraph, params: ExpansionParams, opts: &VerifyOptions) -> Result<ExpansionVerdict> {
    if params.alpha.is_none() {
        return Err(Error::invalid("combinatorial expansion needs alpha"));
    }
    Ok(run_check(b, Property::Combinatorial, params, opts))
}

/// Every eligible `S` has a unique neighbor.
pub fn check_un(b: &BipartiteGraph, delta: f64, opts: &VerifyOptions) -> Result<ExpansionVerdict> {
    let params = ExpansionParams::new(delta, None)?;
    Ok(run_check(b, Property::UniqueNeighbor, params, opts))
}

/// `|Γ_uni(S)| >= ceil(alpha * d * |S|)` for every eligible `S`.
pub fn check_un_fraction(b: &BipartiteGraph, params: ExpansionParams, opts: &VerifyOptions) -> Result<ExpansionVerdict> {
    if params.alpha.is_none() {
        return Err(Error::invalid("unique-neighbor fraction check needs alpha"));
    }
    Ok(run_check(b, Property::UniqueNeighborFraction, params, opts))
}

pub fn check(b: &BipartiteGraph, property: Property, params: ExpansionParams, opts: &VerifyOptions) -> Result<ExpansionVerdict> {
    match property {
        Property::Combinatorial => check_combinatorial(b, params, opts),
        Property::UniqueNeighbor => check_un(b, params.delta, opts),
        Property::UniqueNeighborFraction => check_un_fraction(b, params, opts),
    }
}

/// Largest `alpha` such that `(delta, alpha)` holds for `property`, by
/// exhaustive enumeration. `None` when no subset is eligible or some subset
/// has a zero count.
pub fn best_alpha(b: &BipartiteGraph, delta: f64, property: Property, opts: &VerifyOptions) -> Result<Option<f64>> {
    let params = ExpansionParams::new(delta, None)?;
    let n = b.n_left();
    let kmax = params.max_eligible_size(n);
    let total: u128 = (1..=kmax).map(|k| binomial(n, k)).sum();
    if total > opts.budget.max_enumerated as u128 {
        return Err(Error::GuardExceeded {
            what: "exhaustive enumeration budget",
            limit: opts.budget.max_enumerated,
            actual: total.min(u64::MAX as u128) as u64,
        });
    }
    let (d, _) = resolve_degree(b, opts);
    let mut best: Option<f64> = None;
    for k in 1..=kmax {
        let class_min = par::install(opts.workers, || {
            let blocks = binomial(n, k).div_ceil(BLOCK) as u64;
            (0..blocks)
                .into_par_iter()
                .map(|blk| {
                    let start = blk as u128 * BLOCK;
                    let end = (start + BLOCK).min(binomial(n, k));
                    let mut tally = Tally::new(b.n_right());
                    let mut s = unrank(n, k, start);
                    let mut m = f64::INFINITY;
                    for _ in start..end {
                        tally.load(b, &s);
                        let c = match property {
                            Property::Combinatorial => tally.touched().len(),
                            _ => tally.unique_count(),
                        };
                        m = m.min(c as f64 / (d * k) as f64);
                        next_combination(&mut s, n);
                    }
                    m
                })
                .reduce(|| f64::INFINITY, f64::min)
        });
        best = Some(best.map_or(class_min, |b: f64| b.min(class_min)));
    }
    Ok(best.filter(|&a| a > 0.0).map(|a| a.min(1.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImplicationOutcome {
    /// Premise certified and conclusion not refuted.
    Holds,
    /// Premise refuted; nothing to check.
    Vacuous,
    /// Premise only sampled; conclusion not attempted.
    PremiseNotCertified,
    /// Premise certified and conclusion refuted.
    Violated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombToUnReport {
    pub delta: f64,
    pub epsilon: f64,
    pub premise: ExpansionVerdict,
    pub conclusion: Option<ExpansionVerdict>,
    pub outcome: ImplicationOutcome,
}

/// A `(delta, 1 - eps)` combinatorial expander is a `(delta, 1 - 2 eps)`
/// unique-neighbor expander.
pub fn check_comb_to_un(b: &BipartiteGraph, delta: f64, epsilon: f64, opts: &VerifyOptions) -> Result<CombToUnReport> {
    if !(0.0..0.5).contains(&epsilon) {
        return Err(Error::invalid(format!("epsilon must lie in [0, 1/2), got {epsilon}")));
    }
    let premise = check_combinatorial(b, ExpansionParams::new(delta, Some(1.0 - epsilon))?, opts)?;
    let (conclusion, outcome) = match premise.status {
        Status::Refuted => (None, ImplicationOutcome::Vacuous),
        Status::Tested => (None, ImplicationOutcome::PremiseNotCertified),
        Status::Certified => {
            let c = check_un_fraction(b, ExpansionParams::new(delta, Some(1.0 - 2.0 * epsilon))?, opts)?;
            let outcome = if c.is_refuted() {
                ImplicationOutcome::Violated
            } else {
                ImplicationOutcome::Holds
            };
            (Some(c), outcome)
        }
    };
    Ok(CombToUnReport {
        delta,
        epsilon,
        premise,
        conclusion,
        outcome,
    })
}

/// Smallest right vertex `v` in `Γ(S)` with `|Γ(v) ∩ S| < threshold`
/// (multiplicity counted).
pub fn find_light_check(b: &BipartiteGraph, s: &VertexSubset, threshold: f64) -> Result<Option<usize>> {
    b.neighbors(s)?;
    let mut tally = Tally::new(b.n_right());
    tally.load(b, s.members());
    Ok(tally
        .touched()
        .iter()
        .copied()
        .find(|&v| (tally.count(v) as f64) < threshold - EPS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::chain;
    use crate::graph::random;
    use proptest::prelude::*;

    fn matching(n: usize) -> BipartiteGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, i)).collect();
        BipartiteGraph::new(n, n, &edges).unwrap()
    }

    fn opts() -> VerifyOptions {
        VerifyOptions::exhaustive()
    }

    #[test]
    fn thresholds() {
        assert_eq!(ceil_count(2.0000000000000004), 2);
        assert_eq!(ceil_count(2.1), 3);
        assert_eq!(ceil_count(0.0), 0);
        assert_eq!(max_below(2.0 / 3.0 * 6.0), 3);
        assert_eq!(max_below(3.0), 2);
        assert_eq!(max_below(3.03), 3);
    }

    #[test]
    fn chain_combinatorial_certified() {
        let opts = VerifyOptions {
            reference_degree: Some(2),
            ..opts()
        };
        let v = check_combinatorial(&chain(), ExpansionParams::new(1.0, Some(0.5)).unwrap(), &opts).unwrap();
        assert_eq!(v.status, Status::Certified);
        assert_eq!(v.enumerated, 6);
        assert_eq!(v.max_size_exhausted, 2);
        assert!(!v.left_regular);
        assert_eq!(v.reference_degree, 2);
    }

    #[test]
    fn irregular_defaults_to_max_degree() {
        let v = check_un(&chain(), 1.0, &opts()).unwrap();
        assert_eq!(v.reference_degree, 2);
    }

    #[test]
    fn matching_is_lossless() {
        let v = check_combinatorial(&matching(5), ExpansionParams::new(1.0, Some(1.0)).unwrap(), &opts()).unwrap();
        assert!(v.is_certified());
    }

    #[test]
    fn shared_right_vertex_refuted() {
        let k21 = BipartiteGraph::new(2, 1, &[(0, 0), (1, 0)]).unwrap();
        // delta = 1 only admits |S| = 1; widen to reach {0,1}
        let v = check_combinatorial(&k21, ExpansionParams::new(1.01, Some(1.0)).unwrap(), &opts()).unwrap();
        assert_eq!(v.status, Status::Refuted);
        let w = v.witness.as_ref().unwrap();
        assert_eq!(w.subset.members(), &[0, 1]);
        assert_eq!((w.count, w.required), (1, 2));
        assert_eq!(v.recheck_witness(&k21), Some(true));
        let v1 = check_combinatorial(&k21, ExpansionParams::new(1.0, Some(1.0)).unwrap(), &opts()).unwrap();
        assert!(v1.is_certified());
    }

    #[test]
    fn chain_unique_neighbor() {
        let v = check_un(&chain(), 1.0, &opts()).unwrap();
        assert!(v.is_certified());
        assert_eq!(v.enumerated, 6);
        let v = check_un(&chain(), 1.01, &opts()).unwrap();
        assert!(v.is_refuted());
        assert_eq!(v.witness.unwrap().subset.members(), &[0, 1, 2]);
    }

    #[test]
    fn chain_unique_neighbor_fraction() {
        let v = check_un_fraction(&chain(), ExpansionParams::new(1.0, Some(0.5)).unwrap(), &opts()).unwrap();
        assert!(v.is_refuted());
        let w = v.witness.as_ref().unwrap();
        assert_eq!(w.subset.members(), &[0, 1]);
        assert_eq!((w.count, w.required), (1, 2));
        assert_eq!(v.recheck_witness(&chain()), Some(true));
        let v = check_un_fraction(&chain(), ExpansionParams::new(1.0, Some(0.25)).unwrap(), &opts()).unwrap();
        assert!(v.is_certified());
    }

    #[test]
    fn singletons_only() {
        let mut rng = SeedStream::new(1).rng();
        let b = random::left_regular_simple(10, 7, 3, &mut rng).unwrap();
        // delta * 10 = 2 -> only |S| = 1
        let v = check_un_fraction(&b, ExpansionParams::new(0.2, Some(1.0)).unwrap(), &opts()).unwrap();
        assert!(v.is_certified());
        assert_eq!(v.max_eligible_size, 1);
        assert!(check_un(&b, 0.2, &opts()).unwrap().is_certified());
    }

    #[test]
    fn vacuous_when_nothing_eligible() {
        let v = check_un(&chain(), 0.3, &opts()).unwrap();
        assert!(v.is_certified());
        assert!(v.vacuous);
        assert!(v.classes.is_empty());
    }

    #[test]
    fn budget_switches_to_sampling() {
        let mut rng = SeedStream::new(2).rng();
        let b = random::left_regular_simple(20, 30, 3, &mut rng).unwrap();
        let budget = Budget {
            max_enumerated: 210,
            samples_per_class: 50,
            exhaustive_max_size: None,
        };
        let v = check_un(&b, 0.25, &opts().with_budget(budget)).unwrap();
        // classes 1 (20) and 2 (190) fit; class 3 does not
        if v.status != Status::Refuted {
            assert_eq!(v.status, Status::Tested);
            assert_eq!(v.max_size_exhausted, 2);
            assert_eq!(v.enumerated, 210);
            assert_eq!(v.sampled, 2 * 50);
        }
        let capped = Budget {
            exhaustive_max_size: Some(1),
            ..Budget::default()
        };
        let v = check_un(&b, 0.15, &opts().with_budget(capped)).unwrap();
        // class 2 has 190 < 1e5 members, so sampling covers it completely
        assert_eq!(v.classes[1].checked, 190);
        assert!(v.classes[1].exhaustive);
    }

    #[test]
    fn comb_to_un_on_matching_and_refuted_premise() {
        let r = check_comb_to_un(&matching(4), 1.0, 0.0, &opts()).unwrap();
        assert_eq!(r.outcome, ImplicationOutcome::Holds);
        assert!(r.conclusion.unwrap().is_certified());
        let k21 = BipartiteGraph::new(2, 1, &[(0, 0), (1, 0)]).unwrap();
        let r = check_comb_to_un(&k21, 1.01, 0.1, &opts()).unwrap();
        assert_eq!(r.outcome, ImplicationOutcome::Vacuous);
        assert!(check_comb_to_un(&k21, 1.0, 0.5, &opts()).is_err());
    }

    #[test]
    fn light_checks() {
        let c = chain();
        assert_eq!(find_light_check(&c, &VertexSubset::left(vec![0]), 2.0).unwrap(), Some(0));
        assert_eq!(find_light_check(&c, &VertexSubset::left(vec![0, 1, 2]), 2.0).unwrap(), None);
        assert_eq!(find_light_check(&c, &VertexSubset::left(vec![1]), 1.0).unwrap(), None);
    }

    #[test]
    fn best_alpha_on_chain() {
        let opts = VerifyOptions {
            reference_degree: Some(2),
            ..opts()
        };
        // UN fraction: {l0,l1} has one unique neighbor out of d|S| = 4
        let a = best_alpha(&chain(), 1.0, Property::UniqueNeighborFraction, &opts).unwrap().unwrap();
        assert!((a - 0.25).abs() < 1e-12);
        let v = check_un_fraction(&chain(), ExpansionParams::new(1.0, Some(a)).unwrap(), &opts).unwrap();
        assert!(v.is_certified());
    }

    #[test]
    fn workers_do_not_change_verdicts() {
        let mut rng = SeedStream::new(11).rng();
        let b = random::left_regular_simple(18, 9, 2, &mut rng).unwrap();
        let budget = Budget {
            max_enumerated: 1000,
            samples_per_class: 3000,
            exhaustive_max_size: None,
        };
        for delta in [0.3, 0.6, 1.0] {
            let a = check_un(&b, delta, &opts().with_budget(budget).with_workers(1)).unwrap();
            let c = check_un(&b, delta, &opts().with_budget(budget).with_workers(4)).unwrap();
            assert_eq!(a, c);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn fraction_is_monotone_in_alpha(seed in 0u64..500, delta in 0.1f64..1.0) {
            let mut rng = SeedStream::new(seed).rng();
            let b = random::left_regular_simple(8, 10, 3, &mut rng).unwrap();
            if let Some(a) = best_alpha(&b, delta, Property::UniqueNeighborFraction, &opts()).unwrap() {
                for factor in [1.0, 0.75, 0.5, 0.1] {
                    let v = check_un_fraction(&b, ExpansionParams::new(delta, Some(a * factor)).unwrap(), &opts()).unwrap();
                    prop_assert!(v.is_certified());
                }
                prop_assert!(check_un(&b, delta, &opts()).unwrap().is_certified());
            }
        }

        #[test]
        fn witnesses_recheck(seed in 0u64..500, delta in 0.2f64..1.0, alpha in 0.2f64..1.0) {
            let mut rng = SeedStream::new(seed).rng();
            let b = random::left_regular_simple(9, 6, 2, &mut rng).unwrap();
            let p = ExpansionParams::new(delta, Some(alpha)).unwrap();
            for prop in [Property::Combinatorial, Property::UniqueNeighbor, Property::UniqueNeighborFraction] {
                let v = check(&b, prop, p, &opts()).unwrap();
                if v.is_refuted() {
                    prop_assert_eq!(v.recheck_witness(&b), Some(true));
                    prop_assert!((v.witness.as_ref().unwrap().subset.len() as f64) < delta * 9.0);
                }
            }
        }

        #[test]
        fn comb_to_un_never_violated(seed in 0u64..300, delta in 0.1f64..1.0) {
            let mut rng = SeedStream::new(seed).rng();
            let b = random::left_regular_simple(8, 24, 3, &mut rng).unwrap();
            if let Some(a) = best_alpha(&b, delta, Property::Combinatorial, &opts()).unwrap() {
                let eps = 1.0 - a;
                if eps < 0.5 {
                    let r = check_comb_to_un(&b, delta, eps, &opts()).unwrap();
                    prop_assert_eq!(r.outcome, ImplicationOutcome::Holds);
                }
            }
        }
    }
}
