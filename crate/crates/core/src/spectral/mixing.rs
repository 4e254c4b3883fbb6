//! Audit of `|E(S,T) - (d/n)|S||T|| <= lambda * sqrt(|S||T|)` over subset pairs.
//!
//! `E(S,T)` is `1_S^T A 1_T`, so an edge with both ends in `S ∩ T` counts twice.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::RegularGraph;
use crate::par;
use crate::rng::SeedStream;

pub const EXHAUSTIVE_MAX_VERTICES: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "pairs", rename_all = "kebab-case")]
pub enum PairSelection {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingAudit {
    pub lambda: f64,
    pub pairs_checked: u64,
    /// Largest `|E(S,T) - (d/n)|S||T|| - lambda*sqrt(|S||T|)` seen; at least 0
    /// because the empty pair is always included.
    pub max_violation: f64,
    pub worst_s: Vec<usize>,
    pub worst_t: Vec<usize>,
}

#[derive(Clone, Copy)]
struct Best {
    value: f64,
    s: u64,
    t: u64,
}

impl Best {
    const EMPTY: Best = Best { value: 0.0, s: 0, t: 0 };

    fn pick(a: Best, b: Best) -> Best {
        match a.value.total_cmp(&b.value) {
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Equal => {
                if (a.s, a.t) <= (b.s, b.t) {
                    a
                } else {
                    b
                }
            }
        }
    }
}

fn slack(e: f64, s: usize, t: usize, ratio: f64, lambda: f64) -> f64 {
    let st = (s * t) as f64;
    (e - ratio * st).abs() - lambda * st.sqrt()
}

fn mask_members(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn mixing_audit(g: &RegularGraph, lambda: f64, pairs: PairSelection, workers: usize) -> Result<MixingAudit> {
    let d = g
        .degree()
        .ok_or_else(|| Error::precondition("mixing audit needs a regular graph"))?;
    let n = g.n();
    let ratio = d as f64 / n as f64;
    match pairs {
        PairSelection::Exhaustive => {
            if n > EXHAUSTIVE_MAX_VERTICES {
                return Err(Error::GuardExceeded {
                    what: "exhaustive mixing audit vertex count",
                    limit: EXHAUSTIVE_MAX_VERTICES as u64,
                    actual: n as u64,
                });
            }
            let subsets = 1u64 << n;
            let best = par::install(workers, || {
                (0..subsets)
                    .into_par_iter()
                    .map(|smask| {
                        let mut w = vec![0u64; n];
                        for u in (0..n).filter(|u| smask >> u & 1 == 1) {
                            for (wv, &a) in w.iter_mut().zip(g.row(u)) {
                                *wv += a;
                            }
                        }
                        let s_size = smask.count_ones() as usize;
                        let mut best = Best::EMPTY;
                        let mut e: u64 = 0;
                        let mut t_size = 0usize;
                        let mut tmask = 0u64;
                        // Gray-code walk over T
                        for i in 1..subsets {
                            let bit = i.trailing_zeros() as usize;
                            tmask ^= 1 << bit;
                            if tmask >> bit & 1 == 1 {
                                e += w[bit];
                                t_size += 1;
                            } else {
                                e -= w[bit];
                                t_size -= 1;
                            }
                            let v = slack(e as f64, s_size, t_size, ratio, lambda);
                            if v > best.value || (v == best.value && (smask, tmask) < (best.s, best.t)) {
                                best = Best { value: v, s: smask, t: tmask };
                            }
                        }
                        best
                    })
                    .reduce(|| Best::EMPTY, Best::pick)
            });
            Ok(MixingAudit {
                lambda,
                pairs_checked: subsets * subsets,
                max_violation: best.value,
                worst_s: mask_members(best.s),
                worst_t: mask_members(best.t),
            })
        }
        PairSelection::Sampled { count, seed } => {
            let mut rng = SeedStream::new(seed).split("mixing-audit").rng();
            let mut draws: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(count as usize);
            for _ in 0..count {
                let s: Vec<usize> = (0..n).filter(|_| rng.gen::<bool>()).collect();
                let t: Vec<usize> = (0..n).filter(|_| rng.gen::<bool>()).collect();
                draws.push((s, t));
            }
            let eval = |(s, t): &(Vec<usize>, Vec<usize>)| -> f64 {
                let e: u64 = s.iter().map(|&u| t.iter().map(|&v| g.entry(u, v)).sum::<u64>()).sum();
                slack(e as f64, s.len(), t.len(), ratio, lambda)
            };
            let values: Vec<f64> = par::install(workers, || draws.par_iter().map(eval).collect());
            let mut best: (f64, Option<usize>) = (0.0, None);
            for (i, &v) in values.iter().enumerate() {
                if v > best.0 {
                    best = (v, Some(i));
                }
            }
            let (worst_s, worst_t) = best.1.map(|i| draws[i].clone()).unwrap_or_default();
            Ok(MixingAudit {
                lambda,
                pairs_checked: count,
                max_violation: best.0,
                worst_s,
                worst_t,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::cycle;
    use crate::spectral::{complete, complete_bipartite, lambda_of, SpectrumMethod};

    /// Direct evaluation of one pair, independent of the Gray-code walk.
    fn direct(g: &RegularGraph, s: &[usize], t: &[usize], lambda: f64) -> f64 {
        let d = g.degree().unwrap() as f64;
        let e: u64 = s.iter().map(|&u| t.iter().map(|&v| g.entry(u, v)).sum::<u64>()).sum();
        let st = (s.len() * t.len()) as f64;
        (e as f64 - d / g.n() as f64 * st).abs() - lambda * st.sqrt()
    }

    #[test]
    fn k4_pair_counts_inner_edges_twice() {
        let k4 = complete(4).unwrap();
        // S = T = {0,1}: E = 2, (d/n)|S||T| = 3, slack 1 <= 2
        assert_eq!(direct(&k4, &[0, 1], &[0, 1], 1.0), 1.0 - 2.0);
        assert_eq!(direct(&k4, &[], &[0, 1, 2], 1.0), 0.0);
    }

    #[test]
    fn k4_exhaustive_has_no_violation() {
        let k4 = complete(4).unwrap();
        let lambda = lambda_of(&k4, SpectrumMethod::default()).unwrap().mixing_lambda();
        let a = mixing_audit(&k4, lambda, PairSelection::Exhaustive, 2).unwrap();
        assert_eq!(a.pairs_checked, 256);
        assert!(a.max_violation <= 1e-9);
    }

    #[test]
    fn bipartite_needs_the_full_lambda() {
        // with -d excluded, K_{3,3} has lambda = 0, which the mixing bound cannot use
        let k33 = complete_bipartite(3).unwrap();
        let r = lambda_of(&k33, SpectrumMethod::default()).unwrap();
        assert!(r.lambda.abs() < 1e-9);
        let bad = mixing_audit(&k33, r.lambda, PairSelection::Exhaustive, 1).unwrap();
        assert!(bad.max_violation > 0.4);
        let good = mixing_audit(&k33, r.mixing_lambda(), PairSelection::Exhaustive, 1).unwrap();
        assert!(good.max_violation <= 1e-9);
    }

    #[test]
    fn exhaustive_matches_direct_evaluation() {
        let g = cycle(5);
        let a = mixing_audit(&g, 0.5, PairSelection::Exhaustive, 3).unwrap();
        let mut best = 0.0f64;
        for s in 0..32u64 {
            for t in 0..32u64 {
                best = best.max(direct(&g, &mask_members(s), &mask_members(t), 0.5));
            }
        }
        assert!((a.max_violation - best).abs() < 1e-12);
        assert!((direct(&g, &a.worst_s, &a.worst_t, 0.5) - best).abs() < 1e-12);
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let g = cycle(7);
        let a = mixing_audit(&g, 0.3, PairSelection::Exhaustive, 1).unwrap();
        let b = mixing_audit(&g, 0.3, PairSelection::Exhaustive, 4).unwrap();
        assert_eq!(a, b);
        let s1 = mixing_audit(&g, 0.3, PairSelection::Sampled { count: 500, seed: 3 }, 1).unwrap();
        let s2 = mixing_audit(&g, 0.3, PairSelection::Sampled { count: 500, seed: 3 }, 4).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn guard() {
        let g = cycle(15);
        assert!(matches!(
            mixing_audit(&g, 1.0, PairSelection::Exhaustive, 1),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
