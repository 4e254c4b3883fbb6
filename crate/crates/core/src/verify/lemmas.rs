//! Exhaustive and sampled sweeps confirming the size bounds that drive the
//! composition theorems: edge subsets of a spectral expander whose touched
//! vertices are heavily covered must be large, and left subsets of a
//! combinatorial expander whose neighbors are heavily covered must be large.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_combinatorial, ExpansionParams, VerifyOptions, EPS};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, RegularGraph, Tally};
use crate::par;
use crate::rng::SeedStream;
use crate::spectral::{lambda_of, SpectrumMethod};

pub const EDGE_SWEEP_MAX: usize = 20;
pub const LEFT_SWEEP_MAX: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum LemmaMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub delta: f64,
    pub gamma: f64,
    pub alpha: Option<f64>,
    /// Exact second eigenvalue used in the bound (spectral sweeps only).
    pub lambda: Option<f64>,
    pub degree: usize,
    /// Every nonempty subset meeting the hypothesis must have at least this many elements.
    pub bound: f64,
    pub mode: LemmaMode,
    pub checked: u64,
    pub hypothesis_held: u64,
    pub violations: u64,
    /// Smallest violating subset in enumeration order (edge indices or left vertices).
    pub first_violation: Option<Vec<usize>>,
    /// Minimum of `|S| - bound` over nonempty subsets meeting the hypothesis.
    pub min_slack: Option<f64>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Copy)]
struct Outcome {
    hypothesis: bool,
    violated: bool,
    slack: f64,
}

#[derive(Clone)]
struct Acc {
    checked: u64,
    held: u64,
    violations: u64,
    first: Option<(u64, Vec<usize>)>,
    min_slack: Option<f64>,
}

impl Acc {
    fn empty() -> Self {
        Acc {
            checked: 0,
            held: 0,
            violations: 0,
            first: None,
            min_slack: None,
        }
    }

    fn add(&mut self, index: u64, members: &[usize], o: Outcome) {
        self.checked += 1;
        if o.hypothesis {
            self.held += 1;
            self.min_slack = Some(self.min_slack.map_or(o.slack, |m| m.min(o.slack)));
        }
        if o.violated {
            self.violations += 1;
            if self.first.as_ref().is_none_or(|(i, _)| index < *i) {
                self.first = Some((index, members.to_vec()));
            }
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        self.checked += other.checked;
        self.held += other.held;
        self.violations += other.violations;
        self.min_slack = match (self.min_slack, other.min_slack) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.first = match (self.first, other.first) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Runs `eval` over every nonempty subset of `0..items` (exhaustive) or over
/// seeded random nonempty subsets. Sampled subsets have a uniform size in
/// `1..=max_sample_size` and uniform members.
fn sweep<F>(items: usize, max_sample_size: usize, limit: usize, mode: LemmaMode, workers: usize, eval: F) -> Result<Acc>
where
    F: Fn(&[usize]) -> Outcome + Sync,
{
    match mode {
        LemmaMode::Exhaustive => {
            if items > limit {
                return Err(Error::GuardExceeded {
                    what: "exhaustive subset sweep size",
                    limit: limit as u64,
                    actual: items as u64,
                });
            }
            let total = 1u64 << items;
            Ok(par::install(workers, || {
                (1..total)
                    .into_par_iter()
                    .fold(Acc::empty, |mut acc, mask| {
                        let members: Vec<usize> = (0..items).filter(|i| mask >> i & 1 == 1).collect();
                        acc.add(mask, &members, eval(&members));
                        acc
                    })
                    .reduce(Acc::empty, Acc::merge)
            }))
        }
        LemmaMode::Sampled { count, seed } => {
            let top = max_sample_size.clamp(1, items.max(1));
            let mut rng = SeedStream::new(seed).split("lemma-sweep").rng();
            let draws: Vec<Vec<usize>> = (0..count)
                .map(|_| {
                    let k = rng.gen_range(1..=top);
                    let mut s = rand::seq::index::sample(&mut rng, items, k).into_vec();
                    s.sort_unstable();
                    s
                })
                .collect();
            Ok(par::install(workers, || {
                draws
                    .par_iter()
                    .enumerate()
                    .fold(Acc::empty, |mut acc, (i, s)| {
                        acc.add(i as u64, s, eval(s));
                        acc
                    })
                    .reduce(Acc::empty, Acc::merge)
            }))
        }
    }
}

fn edge_list(g: &RegularGraph) -> Vec<(usize, usize)> {
    g.edge_multiplicities()
        .into_iter()
        .flat_map(|(u, v, m)| std::iter::repeat_n((u, v), m as usize))
        .collect()
}

fn spectral_sweep(g: &RegularGraph, delta: f64, gamma: f64, mode: LemmaMode, workers: usize, name: &str) -> Result<LemmaReport> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::invalid(format!("delta must lie in (0, 1], got {delta}")));
    }
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::invalid(format!("gamma must lie in (0, 1], got {gamma}")));
    }
    if g.has_loops() {
        return Err(Error::LoopsPresent(g.loop_counts()));
    }
    let report = lambda_of(g, SpectrumMethod::default())?;
    let d = report.degree as usize;
    let lambda = report.lambda;
    let edges = edge_list(g);
    let m = edges.len();
    let bound = gamma * delta * (gamma * delta - lambda / d as f64) * m as f64;
    let heavy_at = delta * d as f64;
    let n = g.n();
    let eval = |s: &[usize]| {
        let mut inc = vec![0usize; n];
        for &e in s {
            let (u, v) = edges[e];
            inc[u] += 1;
            inc[v] += 1;
        }
        let touched = inc.iter().filter(|&&c| c > 0).count();
        let heavy = inc.iter().filter(|&&c| c > 0 && c as f64 >= heavy_at - EPS).count();
        let hypothesis = heavy as f64 >= gamma * touched as f64 - EPS;
        let size = s.len() as f64;
        Outcome {
            hypothesis,
            violated: hypothesis && size < bound - EPS,
            slack: size - bound,
        }
    };
    let acc = sweep(m, m, EDGE_SWEEP_MAX, mode, workers, eval)?;
    Ok(finish(name, delta, gamma, None, Some(lambda), d, bound, mode, acc))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    name: &str,
    delta: f64,
    gamma: f64,
    alpha: Option<f64>,
    lambda: Option<f64>,
    degree: usize,
    bound: f64,
    mode: LemmaMode,
    acc: Acc,
) -> LemmaReport {
    LemmaReport {
        lemma: name.to_string(),
        delta,
        gamma,
        alpha,
        lambda,
        degree,
        bound,
        mode,
        checked: acc.checked,
        hypothesis_held: acc.held,
        violations: acc.violations,
        first_violation: acc.first.map(|(_, s)| s),
        min_slack: acc.min_slack,
    }
}

/// Edge subsets `S` of a loop-free regular spectral expander in which every
/// touched vertex meets at least `delta * d` edges of `S` satisfy
/// `|S| >= delta (delta - lambda/d) |E|`.
pub fn lemma_spectral_size_check(g: &RegularGraph, delta: f64, mode: LemmaMode, workers: usize) -> Result<LemmaReport> {
    spectral_sweep(g, delta, 1.0, mode, workers, "spectral-size")
}

/// As [`lemma_spectral_size_check`] with the hypothesis weakened to a
/// `gamma` fraction of touched vertices and the bound to
/// `gamma delta (gamma delta - lambda/d) |E|`.
pub fn lemma_fraction_size_check(
    g: &RegularGraph,
    delta: f64,
    gamma: f64,
    mode: LemmaMode,
    workers: usize,
) -> Result<LemmaReport> {
    spectral_sweep(g, delta, gamma, mode, workers, "fraction-size")
}

/// Left subsets `S` of a certified `(delta, alpha)` biregular expander in
/// which at least a `gamma` fraction of `Γ(S)` meets `S` more than
/// `1/(gamma alpha)` times satisfy `|S| >= delta |L|`.
pub fn lemma_comb_size_check(
    b: &BipartiteGraph,
    delta: f64,
    alpha: f64,
    gamma: f64,
    mode: LemmaMode,
    opts: &VerifyOptions,
) -> Result<LemmaReport> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::invalid(format!("gamma must lie in (0, 1], got {gamma}")));
    }
    let (d1, _) = b
        .biregular()
        .ok_or_else(|| Error::precondition("graph is not biregular"))?;
    let premise = check_combinatorial(b, ExpansionParams::new(delta, Some(alpha))?, opts)?;
    if !premise.is_certified() {
        return Err(Error::precondition(format!(
            "premise ({delta}, {alpha}) is {:?}, not certified",
            premise.status
        )));
    }
    let n = b.n_left();
    let bound = delta * n as f64;
    let over = 1.0 / (gamma * alpha);
    let eval = |s: &[usize]| {
        let mut tally = Tally::new(b.n_right());
        tally.load(b, s);
        let touched = tally.touched();
        let heavy = touched.iter().filter(|&&v| tally.count(v) as f64 > over + EPS).count();
        let hypothesis = heavy as f64 >= gamma * touched.len() as f64 - EPS;
        let size = s.len() as f64;
        Outcome {
            hypothesis,
            violated: hypothesis && size < bound - EPS,
            slack: size - bound,
        }
    };
    let acc = sweep(n, n, LEFT_SWEEP_MAX, mode, opts.workers, eval)?;
    let name = if gamma == 1.0 { "comb-size" } else { "comb-fraction-size" };
    Ok(finish(name, delta, gamma, Some(alpha), None, d1, bound, mode, acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::cycle;
    use crate::spectral::{complete, petersen};

    #[test]
    fn k4_spectral_sweep() {
        let k4 = complete(4).unwrap();
        let r = lemma_spectral_size_check(&k4, 2.0 / 3.0, LemmaMode::Exhaustive, 1).unwrap();
        assert_eq!(r.checked, 63);
        assert!((r.bound - 4.0 / 3.0).abs() < 1e-9);
        assert!(r.passed());
        // all six edges meet the hypothesis
        assert!(r.hypothesis_held >= 1);
        assert!(r.min_slack.unwrap() >= 2.0 - 4.0 / 3.0 - 1e-9);
    }

    #[test]
    fn gamma_one_matches_plain_sweep() {
        for g in [complete(4).unwrap(), cycle(6), petersen()] {
            for delta in [1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0] {
                let mode = if g.edge_count() <= EDGE_SWEEP_MAX as u64 {
                    LemmaMode::Exhaustive
                } else {
                    LemmaMode::Sampled { count: 2000, seed: 5 }
                };
                let a = lemma_spectral_size_check(&g, delta, mode, 2).unwrap();
                let b = lemma_fraction_size_check(&g, delta, 1.0, mode, 2).unwrap();
                assert_eq!(
                    (a.checked, a.hypothesis_held, a.violations, a.bound),
                    (b.checked, b.hypothesis_held, b.violations, b.bound)
                );
                assert!(a.passed());
            }
        }
    }

    #[test]
    fn k4_fraction_bound_is_zero() {
        let k4 = complete(4).unwrap();
        let r = lemma_fraction_size_check(&k4, 2.0 / 3.0, 0.5, LemmaMode::Exhaustive, 1).unwrap();
        assert!(r.bound.abs() < 1e-12);
        assert!(r.passed());
    }

    #[test]
    fn c6_fraction_sweep() {
        let r = lemma_fraction_size_check(&cycle(6), 1.0, 0.5, LemmaMode::Exhaustive, 1).unwrap();
        assert_eq!(r.lambda.map(|l| (l - 1.0).abs() < 1e-9), Some(true));
        assert!(r.passed());
    }

    #[test]
    fn edge_guard_and_loops() {
        assert!(matches!(
            lemma_spectral_size_check(&complete(7).unwrap(), 0.5, LemmaMode::Exhaustive, 1),
            Err(Error::GuardExceeded { .. })
        ));
        let looped = crate::spectral::power(&complete(4).unwrap(), 2).unwrap();
        assert!(matches!(
            lemma_spectral_size_check(&looped, 0.5, LemmaMode::Sampled { count: 1, seed: 0 }, 1),
            Err(Error::LoopsPresent(_))
        ));
    }

    #[test]
    fn complete_bipartite_comb_sweep() {
        // K_{3,3} as a bipartite graph is (1, 1/2)-expanding
        let edges: Vec<(usize, usize)> = (0..3).flat_map(|u| (0..3).map(move |v| (u, v))).collect();
        let b = BipartiteGraph::new(3, 3, &edges).unwrap();
        let opts = VerifyOptions::default();
        // with alpha = 1/d no count can exceed 1/(gamma alpha) >= d
        let r = lemma_comb_size_check(&b, 1.0, 1.0 / 3.0, 0.5, LemmaMode::Exhaustive, &opts).unwrap();
        assert!(r.passed());
        assert_eq!(r.hypothesis_held, 0);
        // alpha = 1/2, gamma = 1: only S = L has every count above 2
        let r = lemma_comb_size_check(&b, 1.0, 0.5, 1.0, LemmaMode::Exhaustive, &opts).unwrap();
        assert!(r.passed());
        assert_eq!(r.hypothesis_held, 1);
        assert_eq!(r.min_slack, Some(0.0));
    }

    #[test]
    fn comb_requires_certified_premise() {
        let edges: Vec<(usize, usize)> = (0..3).flat_map(|u| (0..3).map(move |v| (u, v))).collect();
        let b = BipartiteGraph::new(3, 3, &edges).unwrap();
        assert!(matches!(
            lemma_comb_size_check(&b, 1.0, 1.0, 1.0, LemmaMode::Exhaustive, &VerifyOptions::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn workers_invariant() {
        let g = cycle(6);
        let a = lemma_fraction_size_check(&g, 0.5, 0.5, LemmaMode::Exhaustive, 1).unwrap();
        let b = lemma_fraction_size_check(&g, 0.5, 0.5, LemmaMode::Exhaustive, 4).unwrap();
        assert_eq!(a, b);
    }
}
