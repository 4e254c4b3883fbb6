//! Expander codes: parity-check matrices built from bipartite graphs, GF(2)
//! linear algebra, exact minimum distance, and the distance bound implied by
//! unique-neighbor expansion.

mod alist;
mod gf2;

pub use alist::{export_alist, import_alist};
pub use gf2::{gf2_rank, nullspace_basis, rref};

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compose::routed_product;
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::par;
use crate::verify::{ceil_count, ExpansionVerdict, Property};

pub const DEFAULT_DIM_GUARD: usize = 24;

/// Dense GF(2) matrix with rows packed into 64-bit words; column `c` of a row
/// is bit `c % 64` of word `c / 64`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParityCheckMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl ParityCheckMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        ParityCheckMatrix {
            rows,
            cols,
            words,
            bits: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        (0..n).for_each(|i| m.set(i, i, true));
        m
    }

    /// Rows given as 0/1 entries.
    pub fn from_rows(cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::invalid(format!("row {r} has {} entries, expected {cols}", row.len())));
            }
            for (c, &b) in row.iter().enumerate() {
                match b {
                    0 => {}
                    1 => m.set(r, c, true),
                    _ => return Err(Error::invalid(format!("entry ({r}, {c}) is {b}, not a bit"))),
                }
            }
        }
        Ok(m)
    }

    /// Rows given as strings of `0` and `1`.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| r.bytes().map(|b| b.wrapping_sub(b'0')).collect())
            .collect();
        Self::from_rows(cols, &dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.bits[r * self.words + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        self.bits[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words..(r + 1) * self.words]
    }

    pub(crate) fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.bits[r * self.words..(r + 1) * self.words]
    }

    pub(crate) fn words_per_row(&self) -> usize {
        self.words
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_support(&self, r: usize) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.get(r, c)).collect()
    }

    pub fn row_bits(&self, r: usize) -> Vec<u8> {
        (0..self.cols).map(|c| self.get(r, c) as u8).collect()
    }

    pub fn col_support(&self, c: usize) -> Vec<usize> {
        (0..self.rows).filter(|&r| self.get(r, c)).collect()
    }

    /// `H x` for a packed vector `x` of length `cols`.
    pub fn syndrome_is_zero(&self, x: &[u64]) -> bool {
        (0..self.rows).all(|r| {
            self.row_words(r)
                .iter()
                .zip(x)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                % 2
                == 0
        })
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &ParityCheckMatrix) -> Result<ParityCheckMatrix> {
        if self.cols != other.cols {
            return Err(Error::invalid(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Ok(ParityCheckMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            words: self.words,
            bits,
        })
    }

    /// Each row as hexadecimal, four columns per digit, column 0 in the high
    /// bit of the first digit.
    pub fn to_hex_rows(&self) -> Vec<String> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols.div_ceil(4))
                    .map(|i| {
                        let nibble = (0..4).fold(0u32, |acc, k| {
                            let c = 4 * i + k;
                            acc << 1 | (c < self.cols && self.get(r, c)) as u32
                        });
                        char::from_digit(nibble, 16).unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn from_hex_rows(cols: usize, rows: &[String]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, s) in rows.iter().enumerate() {
            if s.len() != cols.div_ceil(4) {
                return Err(Error::invalid(format!("hex row {r} has {} digits", s.len())));
            }
            for (i, ch) in s.chars().enumerate() {
                let nibble = ch
                    .to_digit(16)
                    .ok_or_else(|| Error::invalid(format!("bad hex digit {ch:?} in row {r}")))?;
                for k in 0..4 {
                    let c = 4 * i + k;
                    if nibble >> (3 - k) & 1 == 1 {
                        if c >= cols {
                            return Err(Error::invalid(format!("hex row {r} sets padding bit")));
                        }
                        m.set(r, c, true);
                    }
                }
            }
        }
        Ok(m)
    }
}

impl Serialize for ParityCheckMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Hex {
            rows: usize,
            cols: usize,
            hex: Vec<String>,
        }
        Hex {
            rows: self.rows,
            cols: self.cols,
            hex: self.to_hex_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParityCheckMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Hex {
            rows: usize,
            cols: usize,
            hex: Vec<String>,
        }
        let h = Hex::deserialize(d)?;
        if h.hex.len() != h.rows {
            return Err(serde::de::Error::custom("row count does not match hex rows"));
        }
        ParityCheckMatrix::from_hex_rows(h.cols, &h.hex).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for ParityCheckMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let s: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// One check per right vertex; entry `(v, u)` is the edge multiplicity mod 2.
pub fn ss1_matrix(b: &BipartiteGraph) -> ParityCheckMatrix {
    let mut h = ParityCheckMatrix::zeros(b.n_right(), b.n_left());
    for v in 0..b.n_right() {
        for &u in b.right_slots(v) {
            h.toggle(v, u);
        }
    }
    h
}

/// Row `v * rows(h0) + j` places row `j` of `h0` on the ordered slots of `v`.
pub fn ss2_matrix(b: &BipartiteGraph, h0: &ParityCheckMatrix) -> Result<ParityCheckMatrix> {
    let (_, d2) = b
        .biregular()
        .ok_or_else(|| Error::precondition("graph is not biregular"))?;
    if h0.cols() != d2 {
        return Err(Error::invalid(format!(
            "local code has {} columns, right degree is {d2}",
            h0.cols()
        )));
    }
    let r0 = h0.rows();
    let mut h = ParityCheckMatrix::zeros(b.n_right() * r0, b.n_left());
    for v in 0..b.n_right() {
        for (i, &u) in b.right_slots(v).iter().enumerate() {
            for j in 0..r0 {
                if h0.get(j, i) {
                    h.toggle(v * r0 + j, u);
                }
            }
        }
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distance {
    Finite(usize),
    /// The code is `{0}`.
    Infinite,
}

impl Distance {
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Distance::Finite(d) => d >= bound,
            Distance::Infinite => true,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "infinite"),
        }
    }
}

/// Minimum weight over all nonzero codewords, enumerating combinations of
/// the nullspace basis in Gray-code order.
pub fn min_distance_exhaustive(h: &ParityCheckMatrix, dim_guard: usize, workers: usize) -> Result<Distance> {
    let basis = nullspace_basis(h);
    let k = basis.rows();
    if k > dim_guard {
        return Err(Error::GuardExceeded {
            what: "code dimension for exhaustive distance",
            limit: dim_guard as u64,
            actual: k as u64,
        });
    }
    if k == 0 {
        return Ok(Distance::Infinite);
    }
    let words = basis.words_per_row();
    let high = k.min(8);
    let low = k - high;
    let best = par::install(workers, || {
        (0u64..1 << high)
            .into_par_iter()
            .map(|hi| {
                let mut x = vec![0u64; words];
                for b in 0..high {
                    if hi >> b & 1 == 1 {
                        x.iter_mut()
                            .zip(basis.row_words(low + b))
                            .for_each(|(a, w)| *a ^= w);
                    }
                }
                let weight = |x: &[u64]| x.iter().map(|w| w.count_ones() as usize).sum::<usize>();
                let mut best = if hi == 0 { usize::MAX } else { weight(&x) };
                for i in 1u64..1 << low {
                    let bit = i.trailing_zeros() as usize;
                    x.iter_mut().zip(basis.row_words(bit)).for_each(|(a, w)| *a ^= w);
                    best = best.min(weight(&x));
                }
                best
            })
            .min()
            .unwrap_or(usize::MAX)
    });
    Ok(Distance::Finite(best))
}

/// Distance lower bound `ceil(delta * nL)` for the parity code of `b`,
/// from a certified unique-neighbor verdict on `b`.
pub fn distance_lb_from_un(b: &BipartiteGraph, verdict: &ExpansionVerdict) -> Result<usize> {
    if !verdict.is_certified() {
        return Err(Error::precondition(format!("verdict is {:?}, not certified", verdict.status)));
    }
    if verdict.property == Property::Combinatorial {
        return Err(Error::precondition("verdict certifies combinatorial, not unique-neighbor, expansion"));
    }
    if verdict.n_left != b.n_left() {
        return Err(Error::precondition(format!(
            "verdict covers {} left vertices, graph has {}",
            verdict.n_left,
            b.n_left()
        )));
    }
    if !b.is_simple() {
        return Err(Error::precondition("parallel edges void the unique-neighbor distance argument"));
    }
    Ok(ceil_count(verdict.params.delta * b.n_left() as f64).min(b.n_left()).max(1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Separation {
    /// In the product's code but not the local-code construction's.
    ProductOnly,
    /// In the local-code construction's code but not the product's.
    Ss2Only,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub equal: bool,
    pub rank_product: usize,
    pub rank_ss2: usize,
    pub rank_stacked: usize,
    pub dimension: usize,
    pub separating_vector: Option<Vec<u8>>,
    pub separation: Option<Separation>,
}

/// Checks that the parity code of `outer ∘ inner` equals the code with
/// local code `ss1_matrix(inner)` on `outer`.
pub fn routed_ss2_equivalence(outer: &BipartiteGraph, inner: &BipartiteGraph) -> Result<EquivalenceReport> {
    let a = ss1_matrix(&routed_product(outer, inner)?);
    let b = ss2_matrix(outer, &ss1_matrix(inner))?;
    Ok(compare_codes(&a, &b))
}

/// Compares the nullspaces of two parity-check matrices over the same bits.
pub fn compare_codes(a: &ParityCheckMatrix, b: &ParityCheckMatrix) -> EquivalenceReport {
    let rank_product = gf2_rank(a);
    let rank_ss2 = gf2_rank(b);
    let rank_stacked = gf2_rank(&a.stack(b).expect("same column count"));
    let equal = rank_product == rank_ss2 && rank_ss2 == rank_stacked;
    let mut report = EquivalenceReport {
        equal,
        rank_product,
        rank_ss2,
        rank_stacked,
        dimension: a.cols() - rank_product,
        separating_vector: None,
        separation: None,
    };
    if !equal {
        let find = |from: &ParityCheckMatrix, against: &ParityCheckMatrix| {
            let basis = nullspace_basis(from);
            (0..basis.rows())
                .find(|&r| !against.syndrome_is_zero(basis.row_words(r)))
                .map(|r| basis.row_bits(r))
        };
        if let Some(x) = find(a, b) {
            report.separating_vector = Some(x);
            report.separation = Some(Separation::ProductOnly);
        } else if let Some(x) = find(b, a) {
            report.separating_vector = Some(x);
            report.separation = Some(Separation::Ss2Only);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::chain;
    use crate::graph::random;
    use crate::rng::SeedStream;
    use crate::verify::{check_un, VerifyOptions};
    use proptest::prelude::*;

    /// Brute-force minimum weight over all `2^cols` vectors.
    fn brute_distance(h: &ParityCheckMatrix) -> Distance {
        let n = h.cols();
        (1u64..1 << n)
            .filter(|&x| h.syndrome_is_zero(&[x]))
            .map(|x| x.count_ones() as usize)
            .min()
            .map_or(Distance::Infinite, Distance::Finite)
    }

    #[test]
    fn chain_code() {
        let h = ss1_matrix(&chain());
        assert_eq!(h, ParityCheckMatrix::from_strs(&["110", "011"]).unwrap());
        assert_eq!(gf2_rank(&h), 2);
        let n = nullspace_basis(&h);
        assert_eq!(n.rows(), 1);
        assert_eq!(n.row_bits(0), vec![1, 1, 1]);
        assert_eq!(min_distance_exhaustive(&h, 24, 1).unwrap(), Distance::Finite(3));
    }

    #[test]
    fn matching_and_double_edge() {
        let m = BipartiteGraph::new(3, 3, &[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(ss1_matrix(&m), ParityCheckMatrix::identity(3));
        assert_eq!(min_distance_exhaustive(&ss1_matrix(&m), 24, 1).unwrap(), Distance::Infinite);
        let dbl = BipartiteGraph::new(1, 1, &[(0, 0), (0, 0)]).unwrap();
        assert_eq!(ss1_matrix(&dbl).row_weight(0), 0);
    }

    #[test]
    fn zero_matrix_distance_one() {
        let z = ParityCheckMatrix::zeros(1, 3);
        assert_eq!(gf2_rank(&z), 0);
        assert_eq!(nullspace_basis(&z).rows(), 3);
        assert_eq!(min_distance_exhaustive(&z, 24, 2).unwrap(), Distance::Finite(1));
    }

    #[test]
    fn ss2_with_parity_row_is_ss1() {
        let b = crate::spectral::complete(4).unwrap().edge_vertex_incidence().unwrap();
        let parity = ParityCheckMatrix::from_strs(&["111"]).unwrap();
        assert_eq!(ss2_matrix(&b, &parity).unwrap(), ss1_matrix(&b));
        assert!(ss2_matrix(&b, &ParityCheckMatrix::identity(2)).is_err());
    }

    #[test]
    fn toy_equivalence() {
        let outer = BipartiteGraph::new(2, 1, &[(0, 0), (1, 0)]).unwrap();
        let h = ss2_matrix(&outer, &ParityCheckMatrix::identity(2)).unwrap();
        assert_eq!(h, ParityCheckMatrix::identity(2));
        let inner = BipartiteGraph::new(2, 2, &[(0, 0), (1, 1)]).unwrap();
        let r = routed_ss2_equivalence(&outer, &inner).unwrap();
        assert!(r.equal);
        assert_eq!(r.dimension, 0);
    }

    #[test]
    fn unequal_codes_yield_separating_vector() {
        let a = ParityCheckMatrix::from_strs(&["110"]).unwrap();
        let b = ParityCheckMatrix::from_strs(&["011"]).unwrap();
        let r = compare_codes(&a, &b);
        assert!(!r.equal);
        let x = r.separating_vector.unwrap();
        let packed = [x.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | (b as u64) << i)];
        assert!(a.syndrome_is_zero(&packed));
        assert!(!b.syndrome_is_zero(&packed));
        assert_eq!(r.separation, Some(Separation::ProductOnly));
    }

    #[test]
    fn chain_bound_is_tight() {
        let c = chain();
        let v = check_un(&c, 1.0, &VerifyOptions::default()).unwrap();
        assert_eq!(distance_lb_from_un(&c, &v).unwrap(), 3);
        let refuted = check_un(&c, 1.01, &VerifyOptions::default()).unwrap();
        assert!(distance_lb_from_un(&c, &refuted).is_err());
        let dbl = BipartiteGraph::new(2, 2, &[(0, 0), (0, 0), (1, 1), (0, 1)]).unwrap();
        let v = check_un(&dbl, 0.5, &VerifyOptions::default()).unwrap();
        assert!(distance_lb_from_un(&dbl, &v).is_err());
    }

    #[test]
    fn hex_rows() {
        let h = ParityCheckMatrix::from_strs(&["110000101", "000000001"]).unwrap();
        assert_eq!(h.to_hex_rows(), vec!["c28", "008"]);
        assert_eq!(ParityCheckMatrix::from_hex_rows(9, &h.to_hex_rows()).unwrap(), h);
        assert!(ParityCheckMatrix::from_hex_rows(9, &["c2f".to_string()]).is_err());
        let json = serde_json::to_string(&h).unwrap();
        assert_eq!(serde_json::from_str::<ParityCheckMatrix>(&json).unwrap(), h);
    }

    fn arb_matrix() -> impl Strategy<Value = ParityCheckMatrix> {
        (1usize..8, 1usize..14).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0u8..2, c), r)
                .prop_map(move |rows| ParityCheckMatrix::from_rows(c, &rows).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(h in arb_matrix()) {
            let basis = nullspace_basis(&h);
            prop_assert_eq!(gf2_rank(&h) + basis.rows(), h.cols());
            for r in 0..basis.rows() {
                prop_assert!(h.syndrome_is_zero(basis.row_words(r)));
            }
            prop_assert_eq!(gf2_rank(&basis), basis.rows());
        }

        #[test]
        fn distance_matches_brute_force(h in arb_matrix(), workers in 1usize..4) {
            prop_assert_eq!(min_distance_exhaustive(&h, 24, workers).unwrap(), brute_distance(&h));
        }

        #[test]
        fn equivalence_on_random_pairs(seed in 0u64..10_000, m in 1usize..5, d1 in 1usize..4, d2 in 2usize..5, dp in 1usize..3) {
            let mut rng = SeedStream::new(seed).rng();
            let outer = random::biregular(m * d2, m * d1, d1, &mut rng).unwrap();
            let (_, d2o) = outer.biregular().unwrap();
            let inner = random::left_regular_simple(d2o, 4, dp, &mut rng).unwrap();
            let r = routed_ss2_equivalence(&outer, &inner).unwrap();
            prop_assert!(r.equal, "{:?}", r);
        }

        #[test]
        fn un_bound_never_exceeds_distance(seed in 0u64..10_000, delta in 0.1f64..1.0) {
            let mut rng = SeedStream::new(seed).rng();
            let b = random::left_regular_simple(10, 8, 3, &mut rng).unwrap();
            let v = check_un(&b, delta, &VerifyOptions::default()).unwrap();
            if v.is_certified() {
                let lb = distance_lb_from_un(&b, &v).unwrap();
                prop_assert!(min_distance_exhaustive(&ss1_matrix(&b), 24, 2).unwrap().at_least(lb));
            }
        }
    }
}
