//! Deliberately naive reference implementations for cross-checking the fast
//! paths in tests. Nothing here reuses the class structure, the bit-packed
//! matrices, the Gray-code walk or the flow network.

use crate::error::{Error, Result};
use crate::gfmat::GfMatrix;
use crate::lincode::MinDistance;
use crate::modring::Modulus;
use crate::zdgraph::ZdGraph;

/// Largest number of codewords [`min_distance_bruteforce`] will enumerate.
pub const MAX_CODEWORDS: u64 = 1 << 20;

/// Largest vertex count [`min_cut_bruteforce`] accepts.
pub const MAX_CUT_VERTICES: usize = 18;

/// The zero-divisor graph straight from the definition: pairwise products.
pub fn graph_by_definition(m: &Modulus) -> Result<ZdGraph> {
    let n = m.n();
    let mul = |a: u64, b: u64| (a as u128 * b as u128 % n as u128) as u64;
    let vertices: Vec<u64> = (1..n).filter(|&x| (1..n).any(|y| mul(x, y) == 0)).collect();
    if vertices.is_empty() {
        return Err(Error::NoZeroDivisors { n });
    }
    let mut edges = Vec::new();
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            if mul(u, v) == 0 {
                edges.push((u, v));
            }
        }
    }
    if edges.is_empty() {
        return Err(Error::NoEdges { n });
    }
    Ok(ZdGraph::from_edges(m.clone(), vertices, edges))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Indices of a maximal set of linearly independent rows, chosen greedily in
/// row order.
fn independent_rows(rows: &[Vec<u64>], p: u64) -> Vec<usize> {
    // reduced copies of the kept rows, each with its leading column
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut kept = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        for (lead, b) in &basis {
            let c = r[*lead];
            if c != 0 {
                for (x, y) in r.iter_mut().zip(b) {
                    *x = (*x + (p - c) * y) % p;
                }
            }
        }
        if let Some(lead) = r.iter().position(|&x| x != 0) {
            let inv = pow_mod(r[lead], p - 2, p);
            for x in &mut r {
                *x = *x * inv % p;
            }
            for (_, b) in &mut basis {
                let c = b[lead];
                if c != 0 {
                    for (x, y) in b.iter_mut().zip(&r) {
                        *x = (*x + (p - c) * y) % p;
                    }
                }
            }
            basis.push((lead, r));
            kept.push(i);
        }
    }
    kept
}

fn matrix_rows(gen: &GfMatrix) -> Vec<Vec<u64>> {
    (0..gen.rows())
        .map(|r| (0..gen.cols()).map(|c| gen.get(r, c) as u64).collect())
        .collect()
}

/// Rank by plain elimination over `u64` residues.
pub fn rank_by_elimination(gen: &GfMatrix) -> usize {
    independent_rows(&matrix_rows(gen), gen.field().p() as u64).len()
}

/// Minimum nonzero weight in the row space of `gen`, by forming every linear
/// combination of a basis explicitly.
pub fn min_distance_bruteforce(gen: &GfMatrix) -> Result<MinDistance> {
    let p = gen.field().p() as u64;
    let rows = matrix_rows(gen);
    let basis: Vec<&Vec<u64>> = independent_rows(&rows, p)
        .into_iter()
        .map(|i| &rows[i])
        .collect();
    let k = basis.len();
    if k == 0 {
        return Err(Error::ZeroDimensional);
    }
    let total = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > MAX_CODEWORDS as u128 {
        return Err(Error::BudgetExceeded {
            required: total,
            budget: MAX_CODEWORDS,
        });
    }
    let mut coeffs = vec![0u64; k];
    let mut best = usize::MAX;
    loop {
        // odometer increment, least significant digit first
        let mut i = 0;
        while i < k && coeffs[i] == p - 1 {
            coeffs[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
        coeffs[i] += 1;
        let weight = (0..gen.cols())
            .filter(|&c| {
                basis
                    .iter()
                    .zip(&coeffs)
                    .map(|(b, a)| a * b[c])
                    .sum::<u64>()
                    % p
                    != 0
            })
            .count();
        best = best.min(weight);
    }
    Ok(MinDistance::Exact { value: best })
}

/// Minimum edge cut by trying every bipartition. Returns the cut size and the
/// side not containing the largest vertex, smallest cut first in enumeration
/// order.
pub fn min_cut_bruteforce(g: &ZdGraph) -> Result<(usize, Vec<u64>)> {
    let vs = g.vertices();
    if vs.len() > MAX_CUT_VERTICES {
        return Err(Error::InvalidInput(format!(
            "{} vertices exceed the brute-force limit of {MAX_CUT_VERTICES}",
            vs.len()
        )));
    }
    if vs.len() < 2 {
        return Err(Error::InvalidInput(
            "a cut needs at least two vertices".into(),
        ));
    }
    let free = vs.len() - 1;
    let mut best: Option<(usize, u32)> = None;
    for mask in 1u32..(1 << free) {
        let inside = |v: u64| {
            let i = vs.iter().position(|&x| x == v).unwrap();
            i < free && mask >> i & 1 == 1
        };
        let size = g
            .edges()
            .iter()
            .filter(|&&(u, v)| inside(u) != inside(v))
            .count();
        if best.is_none_or(|(b, _)| size < b) {
            best = Some((size, mask));
        }
    }
    let (size, mask) = best.unwrap();
    let side = (0..free)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| vs[i])
        .collect();
    Ok((size, side))
}
