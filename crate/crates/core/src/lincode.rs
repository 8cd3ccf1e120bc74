//! Parameters of the linear code spanned by the rows of a generator matrix.
//!
//! The minimum distance is found one of two ways:
//!
//! * exhaustive enumeration of all `p^k` codewords, walking a p-ary Gray
//!   code over an RREF basis so that each step adds a single basis row;
//! * bounds. The lower bound comes from a search for low-weight vectors
//!   annihilated by a parity-check matrix; the upper bound is the lightest
//!   generator row or, given the graph, the codeword of a minimum edge cut.
//!   When the two meet the result is exact.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfmat::{GfMatrix, PrimeField};
use crate::zdgraph::ZdGraph;

/// Default cap on the number of codewords enumerated.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 24;
/// Default cap on the work of one weight level of the low-weight search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub enumeration: u64,
    pub search: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            enumeration: DEFAULT_ENUMERATION_BUDGET,
            search: DEFAULT_SEARCH_BUDGET,
        }
    }
}

pub fn hamming_weight(v: &[u8]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// Number of coordinates where `u` and `v` differ, i.e. the weight of `u - v`.
pub fn hamming_distance(u: &[u8], v: &[u8]) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    Ok(u.iter().zip(v).filter(|(a, b)| a != b).count())
}

pub fn dimension(gen: &GfMatrix) -> usize {
    gen.rank()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MinDistance {
    Exact { value: usize },
    Interval { lower: usize, upper: usize },
}

impl MinDistance {
    pub fn exact(&self) -> Option<usize> {
        match *self {
            MinDistance::Exact { value } => Some(value),
            MinDistance::Interval { .. } => None,
        }
    }

    pub fn contains(&self, d: usize) -> bool {
        match *self {
            MinDistance::Exact { value } => value == d,
            MinDistance::Interval { lower, upper } => lower <= d && d <= upper,
        }
    }

    pub fn upper(&self) -> usize {
        match *self {
            MinDistance::Exact { value } => value,
            MinDistance::Interval { upper, .. } => upper,
        }
    }
}

impl fmt::Display for MinDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinDistance::Exact { value } => write!(f, "{value}"),
            MinDistance::Interval { lower, upper } => write!(f, "{lower}..{upper}"),
        }
    }
}

/// How the reported distance was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    /// All codewords enumerated.
    Enumeration,
    /// The low-weight search found a codeword after excluding all lighter ones.
    LowWeightSearch,
    /// Lower bound from the search, upper bound from a minimum-cut codeword.
    CutCodeword,
    /// Lower bound from the search, upper bound from a generator row.
    GeneratorRow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub field: u8,
    pub length: usize,
    pub dimension: usize,
    pub min_distance: MinDistance,
    pub method: DistanceMethod,
}

impl CodeParams {
    /// Check the structural invariants against the generator that produced
    /// these parameters.
    pub fn check(&self, gen: &GfMatrix) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidInput(msg));
        if self.dimension > self.length {
            return fail(format!(
                "dimension {} exceeds length {}",
                self.dimension, self.length
            ));
        }
        // smallest distance still possible
        let d = match self.min_distance {
            MinDistance::Exact { value } => {
                if value == 0 || value > self.length {
                    return fail(format!("distance {value} outside 1..={}", self.length));
                }
                value
            }
            MinDistance::Interval { lower, upper } => {
                if lower > upper {
                    return fail(format!("empty interval {lower}..{upper}"));
                }
                lower
            }
        };
        if d + self.dimension > self.length + 1 {
            return fail(format!("{self} violates the Singleton bound"));
        }
        if let Some(row_min) = (0..gen.rows())
            .map(|r| gen.row_weight(r))
            .filter(|&w| w > 0)
            .min()
        {
            if d > row_min {
                return fail(format!(
                    "distance {d} above lightest generator row {row_min}"
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}]_{}",
            self.length, self.dimension, self.min_distance, self.field
        )
    }
}

/// A minimum-weight codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinWeight {
    pub distance: usize,
    pub witness: Vec<u8>,
}

/// `p^k`, saturating at `u128::MAX`.
pub fn codeword_count(field: PrimeField, k: usize) -> u128 {
    let mut total: u128 = 1;
    for _ in 0..k {
        total = total.saturating_mul(field.p() as u128);
    }
    total
}

enum Accumulator {
    Bits {
        basis: Vec<Vec<u64>>,
        word: Vec<u64>,
    },
    Bytes {
        basis: Vec<Vec<(usize, u8)>>,
        word: Vec<u8>,
        weight: usize,
    },
}

/// Visits every codeword of the span of an RREF basis exactly once.
///
/// The message counter runs through `0..p^k` in base `p`; the codeword for
/// counter `c` has digit `i` equal to `c_i - c_{i+1} mod p`. Moving from `c - 1`
/// to `c` then changes exactly one message digit, by `+1`, at the position of
/// the lowest nonzero base-p digit of `c`, so every step adds one basis row.
struct GrayWalker {
    field: PrimeField,
    length: usize,
    counter: Vec<u8>,
    acc: Accumulator,
}

impl GrayWalker {
    fn new(gen: &GfMatrix) -> (Self, usize) {
        let (reduced, pivots) = gen.rref();
        let k = pivots.len();
        let field = gen.field();
        let acc = if field.is_binary() {
            let basis: Vec<Vec<u64>> = (0..k).map(|r| reduced.row_words(r).to_vec()).collect();
            let words = basis.first().map_or(0, Vec::len);
            Accumulator::Bits {
                basis,
                word: vec![0; words],
            }
        } else {
            Accumulator::Bytes {
                basis: (0..k).map(|r| reduced.row_support(r)).collect(),
                word: vec![0; gen.cols()],
                weight: 0,
            }
        };
        (
            GrayWalker {
                field,
                length: gen.cols(),
                counter: vec![0; k],
                acc,
            },
            k,
        )
    }

    /// Step to the next codeword; `false` once the walk is complete.
    fn advance(&mut self) -> bool {
        let p = self.field.p();
        let mut i = 0;
        loop {
            if i == self.counter.len() {
                return false;
            }
            self.counter[i] += 1;
            if self.counter[i] < p {
                break;
            }
            self.counter[i] = 0;
            i += 1;
        }
        match &mut self.acc {
            Accumulator::Bits { basis, word } => {
                for (w, b) in word.iter_mut().zip(&basis[i]) {
                    *w ^= b;
                }
            }
            Accumulator::Bytes {
                basis,
                word,
                weight,
            } => {
                for &(j, v) in &basis[i] {
                    let old = word[j];
                    let new = self.field.add(old, v);
                    word[j] = new;
                    *weight = *weight + (new != 0) as usize - (old != 0) as usize;
                }
            }
        }
        true
    }

    fn weight(&self) -> usize {
        match &self.acc {
            Accumulator::Bits { word, .. } => word.iter().map(|w| w.count_ones() as usize).sum(),
            Accumulator::Bytes { weight, .. } => *weight,
        }
    }

    fn codeword(&self) -> Vec<u8> {
        match &self.acc {
            Accumulator::Bits { word, .. } => (0..self.length)
                .map(|j| ((word[j / 64] >> (j % 64)) & 1) as u8)
                .collect(),
            Accumulator::Bytes { word, .. } => word.clone(),
        }
    }
}

fn check_budget(field: PrimeField, k: usize, budget: u64) -> Result<()> {
    let required = codeword_count(field, k);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// Exact minimum distance by enumerating every codeword. The witness is the
/// first minimum-weight codeword met in Gray-code order.
pub fn min_distance_exact(gen: &GfMatrix, budget: u64) -> Result<MinWeight> {
    let (mut walker, k) = GrayWalker::new(gen);
    if k == 0 {
        return Err(Error::ZeroDimensional);
    }
    check_budget(gen.field(), k, budget)?;
    let mut best: Option<MinWeight> = None;
    while walker.advance() {
        let w = walker.weight();
        if best.as_ref().is_none_or(|b| w < b.distance) {
            best = Some(MinWeight {
                distance: w,
                witness: walker.codeword(),
            });
            if w == 1 {
                break;
            }
        }
    }
    Ok(best.expect("a nonzero code has a nonzero codeword"))
}

/// Full weight distribution as `(weight, count)` pairs, ascending by weight,
/// listing only weights that occur.
pub fn weight_distribution(gen: &GfMatrix, budget: u64) -> Result<Vec<(usize, u64)>> {
    let (mut walker, k) = GrayWalker::new(gen);
    check_budget(gen.field(), k, budget)?;
    let mut counts = vec![0u64; gen.cols() + 1];
    counts[0] = 1;
    while walker.advance() {
        counts[walker.weight()] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect())
}

/// Outcome of [`min_distance_bounds`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceBounds {
    pub distance: MinDistance,
    pub method: DistanceMethod,
    /// Codeword attaining the upper bound.
    pub witness: Vec<u8>,
    /// Every weight below this was shown to hold no codeword.
    pub lower_bound: usize,
}

/// Minimum distance bounds without enumerating the code.
///
/// `graph`, when given, must be the graph whose incidence matrix is `gen`; its
/// minimum edge cut supplies a codeword whose weight is the edge connectivity.
pub fn min_distance_bounds(
    gen: &GfMatrix,
    graph: Option<&ZdGraph>,
    search_budget: u64,
) -> Result<DistanceBounds> {
    let field = gen.field();
    let (mut upper, mut witness, mut method) = (0..gen.rows())
        .map(|r| (gen.row_weight(r), r))
        .filter(|&(w, _)| w > 0)
        .min()
        .map(|(w, r)| (w, gen.row(r), DistanceMethod::GeneratorRow))
        .ok_or(Error::ZeroDimensional)?;
    if let Some(g) = graph {
        if g.edge_count() != gen.cols() {
            return Err(Error::LengthMismatch {
                expected: gen.cols(),
                found: g.edge_count(),
            });
        }
        let cut = g.min_cut()?;
        match g.cut_codeword(&cut.side, field) {
            Ok(word) => {
                let w = hamming_weight(&word);
                if w > 0 && w <= upper {
                    upper = w;
                    witness = word;
                    method = DistanceMethod::CutCodeword;
                }
            }
            Err(Error::Unavailable(_)) => {}
            Err(e) => return Err(e),
        }
    }

    let search = low_weight_search(gen, upper - 1, search_budget);
    if let Some(hit) = search.hit {
        return Ok(DistanceBounds {
            distance: MinDistance::Exact {
                value: search.lower_bound,
            },
            method: DistanceMethod::LowWeightSearch,
            witness: hit,
            lower_bound: search.lower_bound,
        });
    }
    let distance = if search.lower_bound >= upper {
        MinDistance::Exact { value: upper }
    } else {
        MinDistance::Interval {
            lower: search.lower_bound,
            upper,
        }
    };
    Ok(DistanceBounds {
        distance,
        method,
        witness,
        lower_bound: search.lower_bound,
    })
}

/// Result of searching for codewords of weight `1..=max_weight`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// No codeword has weight below this. Equal to the hit weight on success.
    pub lower_bound: usize,
    pub hit: Option<Vec<u8>>,
}

/// Work units of the weight-`w` level: the number of `(w - 1)`-column partial
/// combinations with leading coefficient 1.
pub fn search_cost(length: usize, weight: usize, field: PrimeField) -> u128 {
    if weight <= 1 {
        return length as u128;
    }
    let mut cost = binomial(length as u128, weight as u128 - 1);
    for _ in 0..weight - 2 {
        cost = cost.saturating_mul(field.p() as u128 - 1);
    }
    cost
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Search for a codeword of weight at most `max_weight`, lightest first.
///
/// A vector lies in the code iff a parity-check matrix `H` annihilates it, so a
/// weight-`w` codeword is a set of `w` columns of `H` with a vanishing linear
/// combination. Each level enumerates combinations of `w - 1` columns and looks
/// up the column that would cancel them. Columns are compared through short
/// random linear fingerprints; every fingerprint match is confirmed on the full
/// columns. A level whose cost exceeds `budget` ends the search.
pub fn low_weight_search(gen: &GfMatrix, max_weight: usize, budget: u64) -> SearchOutcome {
    let parity = gen.nullspace();
    let columns: Vec<Vec<u8>> = (0..parity.cols()).map(|c| parity.column(c)).collect();
    if gen.field().is_binary() {
        ColumnSearch::<u64>::new(&parity, columns).run(max_weight, budget)
    } else {
        ColumnSearch::<OddPrint>::new(&parity, columns).run(max_weight, budget)
    }
}

trait Fingerprint: Copy + Eq + Hash {
    fn zero() -> Self;
    fn random(rng: &mut ChaCha8Rng, field: PrimeField) -> Self;
    fn is_zero(&self) -> bool;
    fn add_scaled(&mut self, other: &Self, c: u8, field: PrimeField);
    /// `(q, s)` with `self = s * q` and `q` having leading coordinate 1.
    fn normalized(&self, field: PrimeField) -> (Self, u8);
}

impl Fingerprint for u64 {
    fn zero() -> Self {
        0
    }
    fn random(rng: &mut ChaCha8Rng, _: PrimeField) -> Self {
        rng.gen()
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add_scaled(&mut self, other: &Self, c: u8, _: PrimeField) {
        if c & 1 == 1 {
            *self ^= other;
        }
    }
    fn normalized(&self, _: PrimeField) -> (Self, u8) {
        (*self, 1)
    }
}

const ODD_PRINT_LEN: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct OddPrint([u8; ODD_PRINT_LEN]);

impl Fingerprint for OddPrint {
    fn zero() -> Self {
        OddPrint([0; ODD_PRINT_LEN])
    }
    fn random(rng: &mut ChaCha8Rng, field: PrimeField) -> Self {
        let mut out = [0u8; ODD_PRINT_LEN];
        for x in &mut out {
            *x = rng.gen_range(0..field.p());
        }
        OddPrint(out)
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
    fn add_scaled(&mut self, other: &Self, c: u8, field: PrimeField) {
        for (x, &y) in self.0.iter_mut().zip(&other.0) {
            *x = field.add(*x, field.mul(c, y));
        }
    }
    fn normalized(&self, field: PrimeField) -> (Self, u8) {
        let Some(&lead) = self.0.iter().find(|&&x| x != 0) else {
            return (*self, 1);
        };
        let inv = field.inv(lead);
        let mut out = *self;
        for x in &mut out.0 {
            *x = field.mul(*x, inv);
        }
        (out, lead)
    }
}

struct ColumnSearch<F: Fingerprint> {
    field: PrimeField,
    columns: Vec<Vec<u8>>,
    prints: Vec<F>,
    // normalized print -> (column, scale), ascending by column
    by_print: HashMap<F, Vec<(usize, u8)>>,
    // nonzero columns whose print happens to vanish
    blind: Vec<usize>,
}

impl<F: Fingerprint> ColumnSearch<F> {
    fn new(parity: &GfMatrix, columns: Vec<Vec<u8>>) -> Self {
        let field = parity.field();
        // fixed seed: reruns visit candidates in the same order
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2d0c);
        let mut prints = vec![F::zero(); parity.cols()];
        for r in 0..parity.rows() {
            let mix = F::random(&mut rng, field);
            for (c, v) in parity.row_support(r) {
                prints[c].add_scaled(&mix, v, field);
            }
        }
        let mut by_print: HashMap<F, Vec<(usize, u8)>> = HashMap::new();
        let mut blind = Vec::new();
        for (j, fp) in prints.iter().enumerate() {
            if fp.is_zero() {
                if columns[j].iter().any(|&x| x != 0) {
                    blind.push(j);
                }
            } else {
                let (key, scale) = fp.normalized(field);
                by_print.entry(key).or_default().push((j, scale));
            }
        }
        ColumnSearch {
            field,
            columns,
            prints,
            by_print,
            blind,
        }
    }

    fn run(&self, max_weight: usize, budget: u64) -> SearchOutcome {
        let n = self.columns.len();
        for w in 1..=max_weight.min(n) {
            if search_cost(n, w, self.field) > budget as u128 {
                return SearchOutcome {
                    lower_bound: w,
                    hit: None,
                };
            }
            let found = if w == 1 {
                (0..n)
                    .find(|&j| self.prints[j].is_zero() && self.columns[j].iter().all(|&x| x == 0))
                    .map(|j| vec![(j, 1)])
            } else {
                let mut prefix = Vec::with_capacity(w);
                self.extend(0, w - 1, &mut prefix, F::zero())
            };
            if let Some(support) = found {
                let mut word = vec![0u8; n];
                for (j, c) in support {
                    word[j] = c;
                }
                return SearchOutcome {
                    lower_bound: w,
                    hit: Some(word),
                };
            }
        }
        SearchOutcome {
            lower_bound: max_weight.min(n) + 1,
            hit: None,
        }
    }

    fn extend(
        &self,
        start: usize,
        remaining: usize,
        prefix: &mut Vec<(usize, u8)>,
        acc: F,
    ) -> Option<Vec<(usize, u8)>> {
        if remaining == 0 {
            return self.complete(prefix, acc);
        }
        let n = self.columns.len();
        let top = if prefix.is_empty() {
            1
        } else {
            self.field.p() - 1
        };
        for j in start..n - remaining {
            for c in 1..=top {
                let mut next = acc;
                next.add_scaled(&self.prints[j], c, self.field);
                prefix.push((j, c));
                if let Some(found) = self.extend(j + 1, remaining - 1, prefix, next) {
                    return Some(found);
                }
                prefix.pop();
            }
        }
        None
    }

    // Find a last column after the prefix that cancels it.
    fn complete(&self, prefix: &[(usize, u8)], acc: F) -> Option<Vec<(usize, u8)>> {
        let last = prefix.last().map_or(0, |&(j, _)| j);
        let field = self.field;
        let try_column = |j: usize, c: u8| {
            let mut support = prefix.to_vec();
            support.push((j, c));
            self.annihilates(&support).then_some(support)
        };
        if acc.is_zero() {
            for &j in self.blind.iter().filter(|&&j| j > last) {
                for c in 1..field.p() {
                    if let Some(s) = try_column(j, c) {
                        return Some(s);
                    }
                }
            }
            return None;
        }
        let mut target = F::zero();
        target.add_scaled(&acc, field.neg(1), field);
        let (key, beta) = target.normalized(field);
        let candidates = self.by_print.get(&key)?;
        let from = candidates.partition_point(|&(j, _)| j <= last);
        for &(j, alpha) in &candidates[from..] {
            // c * alpha * key = beta * key
            let c = field.mul(beta, field.inv(alpha));
            if let Some(s) = try_column(j, c) {
                return Some(s);
            }
        }
        None
    }

    fn annihilates(&self, support: &[(usize, u8)]) -> bool {
        let rows = self.columns.first().map_or(0, Vec::len);
        (0..rows).all(|r| {
            support.iter().fold(0u8, |s, &(j, c)| {
                self.field.add(s, self.field.mul(c, self.columns[j][r]))
            }) == 0
        })
    }
}

/// Parameters of the code generated by `gen`, enumerating when `p^k` fits in
/// the enumeration budget and falling back to [`min_distance_bounds`].
pub fn code_params(
    gen: &GfMatrix,
    graph: Option<&ZdGraph>,
    budgets: Budgets,
) -> Result<(CodeParams, Vec<u8>)> {
    let k = dimension(gen);
    let field = gen.field();
    let (min_distance, method, witness) = if codeword_count(field, k) <= budgets.enumeration as u128
    {
        let best = min_distance_exact(gen, budgets.enumeration)?;
        (
            MinDistance::Exact {
                value: best.distance,
            },
            DistanceMethod::Enumeration,
            best.witness,
        )
    } else {
        let b = min_distance_bounds(gen, graph, budgets.search)?;
        (b.distance, b.method, b.witness)
    };
    let params = CodeParams {
        field: field.p(),
        length: gen.cols(),
        dimension: k,
        min_distance,
        method,
    };
    Ok((params, witness))
}
