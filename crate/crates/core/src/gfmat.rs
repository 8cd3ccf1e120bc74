//! Dense matrices over prime fields GF(p).
//!
//! Binary matrices are stored bit-packed, one row per run of `u64` words, so
//! that row addition is a word-wise XOR. Odd characteristic uses one byte per
//! entry, which caps the supported primes at 251.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::modring::is_prime;

/// A prime `p <= 251`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField(u8);

impl PrimeField {
    pub const BINARY: PrimeField = PrimeField(2);

    pub fn new(p: u64) -> Result<Self> {
        if p <= 251 && is_prime(p) {
            Ok(PrimeField(p as u8))
        } else {
            Err(Error::InvalidField { p })
        }
    }

    pub fn p(self) -> u8 {
        self.0
    }

    pub fn is_binary(self) -> bool {
        self.0 == 2
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.0 as u16 - b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// Multiplicative inverses indexed by residue; entry 0 is unused.
    pub fn inverse_table(self) -> Vec<u8> {
        let p = self.0;
        let mut inv = vec![0u8; p as usize];
        for a in 1..p {
            for b in 1..p {
                if self.mul(a, b) == 1 {
                    inv[a as usize] = b;
                    break;
                }
            }
        }
        inv
    }

    pub fn inv(self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        // a^(p-2)
        let mut result = 1u8;
        let mut base = a;
        let mut e = self.0 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Storage {
    Bits { words: usize, data: Vec<u64> },
    Bytes(Vec<u8>),
}

/// A `rows x cols` matrix over GF(p), row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    storage: Storage,
}

fn words_for(cols: usize) -> usize {
    cols.div_ceil(64)
}

impl GfMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        let storage = if field.is_binary() {
            let words = words_for(cols);
            Storage::Bits {
                words,
                data: vec![0; words * rows],
            }
        } else {
            Storage::Bytes(vec![0; rows * cols])
        };
        GfMatrix {
            field,
            rows,
            cols,
            storage,
        }
    }

    pub fn identity(field: PrimeField, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from explicit rows. All rows must have length `cols` and every
    /// entry must be a reduced residue.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= field.p() {
                    return Err(Error::InvalidInput(format!(
                        "entry {v} at ({i}, {j}) is not reduced mod {}",
                        field.p()
                    )));
                }
                if v != 0 {
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        debug_assert!(r < self.rows && c < self.cols);
        match &self.storage {
            Storage::Bits { words, data } => ((data[r * words + c / 64] >> (c % 64)) & 1) as u8,
            Storage::Bytes(data) => data[r * self.cols + c],
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(r < self.rows && c < self.cols && v < self.field.p());
        let cols = self.cols;
        match &mut self.storage {
            Storage::Bits { words, data } => {
                let w = &mut data[r * *words + c / 64];
                let bit = 1u64 << (c % 64);
                if v == 0 {
                    *w &= !bit;
                } else {
                    *w |= bit;
                }
            }
            Storage::Bytes(data) => data[r * cols + c] = v,
        }
    }

    pub fn row(&self, r: usize) -> Vec<u8> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    /// Bit-packed words of row `r`. Only for binary matrices.
    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        match &self.storage {
            Storage::Bits { words, data } => &data[r * words..(r + 1) * words],
            Storage::Bytes(_) => panic!("row_words on a non-binary matrix"),
        }
    }

    /// Positions and values of the nonzero entries of row `r`.
    pub fn row_support(&self, r: usize) -> Vec<(usize, u8)> {
        (0..self.cols)
            .filter_map(|c| match self.get(r, c) {
                0 => None,
                v => Some((c, v)),
            })
            .collect()
    }

    pub fn row_weight(&self, r: usize) -> usize {
        match &self.storage {
            Storage::Bits { .. } => self
                .row_words(r)
                .iter()
                .map(|w| w.count_ones() as usize)
                .sum(),
            Storage::Bytes(data) => data[r * self.cols..(r + 1) * self.cols]
                .iter()
                .filter(|&&v| v != 0)
                .count(),
        }
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v != 0 {
                    t.set(c, r, v);
                }
            }
        }
        t
    }

    /// `self * other^T`, i.e. the matrix of row-by-row inner products.
    pub fn mul_transpose(&self, other: &GfMatrix) -> Result<GfMatrix> {
        if self.field != other.field {
            return Err(Error::InvalidInput("matrices over different fields".into()));
        }
        if self.cols != other.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut out = GfMatrix::zeros(self.field, self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                let v = match (&self.storage, &other.storage) {
                    (Storage::Bits { .. }, Storage::Bits { .. }) => {
                        let ones: u32 = self
                            .row_words(i)
                            .iter()
                            .zip(other.row_words(j))
                            .map(|(a, b)| (a & b).count_ones())
                            .sum();
                        (ones & 1) as u8
                    }
                    _ => dot(self.field, &self.row(i), &other.row(j)),
                };
                if v != 0 {
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        match &self.storage {
            Storage::Bits { data, .. } => data.iter().all(|&w| w == 0),
            Storage::Bytes(data) => data.iter().all(|&v| v == 0),
        }
    }

    /// Append a row, returning the enlarged matrix.
    pub fn with_row(&self, v: &[u8]) -> Result<GfMatrix> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut rows = self.to_rows();
        rows.push(v.to_vec());
        GfMatrix::from_rows(self.field, self.cols, &rows)
    }

    /// Reduced row-echelon form and the pivot columns.
    ///
    /// Pivots are chosen column by column, taking the topmost nonzero entry at
    /// or below the current row, so the result is fully determined by the input.
    pub fn rref(&self) -> (GfMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = match m.storage {
            Storage::Bits { .. } => m.rref_bits(),
            Storage::Bytes(_) => m.rref_bytes(),
        };
        (m, pivots)
    }

    fn rref_bits(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let Storage::Bits { words, data } = &mut self.storage else {
            unreachable!()
        };
        let words = *words;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let (wi, bit) = (c / 64, 1u64 << (c % 64));
            let Some(pr) = (rank..rows).find(|&r| data[r * words + wi] & bit != 0) else {
                continue;
            };
            if pr != rank {
                for k in 0..words {
                    data.swap(pr * words + k, rank * words + k);
                }
            }
            let (head, tail) = data.split_at_mut(rank * words);
            let (pivot_row, after) = tail.split_at_mut(words);
            for r in 0..rows {
                if r == rank {
                    continue;
                }
                let row = if r < rank {
                    &mut head[r * words..(r + 1) * words]
                } else {
                    let off = (r - rank - 1) * words;
                    &mut after[off..off + words]
                };
                if row[wi] & bit != 0 {
                    // columns before c are already zero in the pivot row
                    for k in wi..words {
                        row[k] ^= pivot_row[k];
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    fn rref_bytes(&mut self) -> Vec<usize> {
        let (rows, cols, field) = (self.rows, self.cols, self.field);
        let p = field.p() as u32;
        let inv = field.inverse_table();
        let Storage::Bytes(data) = &mut self.storage else {
            unreachable!()
        };
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pr) = (rank..rows).find(|&r| data[r * cols + c] != 0) else {
                continue;
            };
            if pr != rank {
                for k in 0..cols {
                    data.swap(pr * cols + k, rank * cols + k);
                }
            }
            let scale = inv[data[rank * cols + c] as usize] as u32;
            for k in c..cols {
                let v = &mut data[rank * cols + k];
                *v = ((*v as u32 * scale) % p) as u8;
            }
            let pivot_row: Vec<u8> = data[rank * cols + c..(rank + 1) * cols].to_vec();
            for r in 0..rows {
                if r == rank {
                    continue;
                }
                let f = data[r * cols + c] as u32;
                if f == 0 {
                    continue;
                }
                let neg = p - f;
                let row = &mut data[r * cols + c..(r + 1) * cols];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = ((*x as u32 + neg * y as u32) % p) as u8;
                }
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x^T = 0}`, one basis vector per row.
    ///
    /// There is one basis vector per non-pivot column `f`: it is 1 at `f`
    /// and carries the negated RREF entries at the pivot columns.
    pub fn nullspace(&self) -> GfMatrix {
        let (reduced, pivots) = self.rref();
        let free: Vec<usize> = {
            let mut is_pivot = vec![false; self.cols];
            for &c in &pivots {
                is_pivot[c] = true;
            }
            (0..self.cols).filter(|&c| !is_pivot[c]).collect()
        };
        let mut basis = GfMatrix::zeros(self.field, free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            basis.set(i, f, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                let v = reduced.get(r, f);
                if v != 0 {
                    basis.set(i, pc, self.field.neg(v));
                }
            }
        }
        basis
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[u8]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self.with_row(v)?.rank() == self.rank())
    }

    /// Text serialization: a `p rows cols` header, then one line per row of
    /// space-separated residues.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.field.p(), self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    out.push(' ');
                }
                write!(out, "{}", self.get(r, c)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<GfMatrix> {
        let mut lines = text.lines().enumerate();
        let parse_err = |line: usize, message: String| Error::Parse {
            line: line + 1,
            message,
        };
        let (hline, header) = lines
            .next()
            .ok_or_else(|| parse_err(0, "missing header".into()))?;
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|e| parse_err(hline, format!("{t:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        let [p, rows, cols] = nums[..] else {
            return Err(parse_err(hline, "header must be `p rows cols`".into()));
        };
        let field = PrimeField::new(p)?;
        let (rows, cols) = (rows as usize, cols as usize);
        let mut m = GfMatrix::zeros(field, rows, cols);
        for r in 0..rows {
            let (lno, line) = lines
                .next()
                .ok_or_else(|| parse_err(r + 1, format!("missing row {r}")))?;
            let mut count = 0;
            for (c, tok) in line.split_whitespace().enumerate() {
                if c >= cols {
                    return Err(parse_err(lno, format!("more than {cols} entries")));
                }
                let v: u8 = tok
                    .parse()
                    .map_err(|e| parse_err(lno, format!("{tok:?}: {e}")))?;
                if v >= field.p() {
                    return Err(parse_err(lno, format!("entry {v} not reduced mod {p}")));
                }
                if v != 0 {
                    m.set(r, c, v);
                }
                count += 1;
            }
            if count != cols {
                return Err(parse_err(
                    lno,
                    format!("expected {cols} entries, found {count}"),
                ));
            }
        }
        if let Some((lno, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(parse_err(lno, format!("trailing content {extra:?}")));
        }
        Ok(m)
    }
}

fn dot(field: PrimeField, a: &[u8], b: &[u8]) -> u8 {
    let p = field.p() as u32;
    (a.iter()
        .zip(b)
        .map(|(&x, &y)| x as u32 * y as u32 % p)
        .sum::<u32>()
        % p) as u8
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn field_validation() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(251).is_ok());
        assert_eq!(PrimeField::new(4), Err(Error::InvalidField { p: 4 }));
        assert_eq!(PrimeField::new(257), Err(Error::InvalidField { p: 257 }));
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn inverses() {
        for p in [2u64, 3, 5, 7, 11, 13, 251] {
            let f = gf(p);
            let table = f.inverse_table();
            for a in 1..f.p() {
                assert_eq!(f.mul(a, f.inv(a)), 1);
                assert_eq!(table[a as usize], f.inv(a));
            }
        }
    }

    #[test]
    fn rref_identity() {
        let id = GfMatrix::identity(gf(5), 3);
        let (r, pivots) = id.rref();
        assert_eq!(r, id);
        assert_eq!(pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_duplicate_rows() {
        let m = GfMatrix::from_rows(gf(2), 2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(r.to_rows(), vec![vec![1, 1], vec![0, 0]]);
        assert_eq!(pivots, vec![0]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rref_odd_prime_normalizes_pivots() {
        let m = GfMatrix::from_rows(gf(7), 3, &[vec![3, 1, 4], vec![6, 2, 2]]).unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(r.to_rows(), vec![vec![1, 5, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn zero_matrix_rank() {
        assert_eq!(GfMatrix::zeros(gf(3), 4, 5).rank(), 0);
        assert_eq!(GfMatrix::zeros(gf(2), 0, 0).rank(), 0);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(GfMatrix::identity(gf(3), 4).nullspace().rows(), 0);
        let m = GfMatrix::from_rows(gf(2), 2, &[vec![1, 1]]).unwrap();
        assert_eq!(m.nullspace().to_rows(), vec![vec![1, 1]]);
    }

    #[test]
    fn membership() {
        let m = GfMatrix::from_rows(gf(3), 3, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        assert!(m.contains(&[1, 2, 0]).unwrap());
        assert!(m.contains(&[0, 0, 0]).unwrap());
        assert!(m.contains(&[1, 0, 1]).unwrap()); // r0 + r1
        assert!(!m.contains(&[1, 0, 0]).unwrap());
        assert_eq!(
            m.contains(&[1, 0]),
            Err(Error::LengthMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn wide_binary_rows() {
        // crosses the 64-bit word boundary
        let cols = 130;
        let mut rows = vec![vec![0u8; cols]; 3];
        rows[0][0] = 1;
        rows[0][129] = 1;
        rows[1][64] = 1;
        rows[1][129] = 1;
        rows[2][0] = 1;
        rows[2][64] = 1;
        let m = GfMatrix::from_rows(gf(2), cols, &rows).unwrap();
        assert_eq!(m.rank(), 2);
        let h = m.nullspace();
        assert_eq!(h.rows(), cols - 2);
        assert!(m.mul_transpose(&h).unwrap().is_zero());
    }

    #[test]
    fn text_format() {
        let m = GfMatrix::from_rows(gf(3), 3, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let text = m.to_text();
        assert_eq!(text, "3 2 3\n1 2 0\n0 1 1\n");
        assert_eq!(GfMatrix::from_text(&text).unwrap(), m);
    }

    #[test]
    fn text_format_errors() {
        assert!(matches!(GfMatrix::from_text(""), Err(Error::Parse { .. })));
        assert!(matches!(
            GfMatrix::from_text("2 1"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            GfMatrix::from_text("4 1 1\n1\n"),
            Err(Error::InvalidField { p: 4 })
        ));
        assert!(matches!(
            GfMatrix::from_text("3 1 2\n1 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            GfMatrix::from_text("3 2 2\n1 0\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            GfMatrix::from_text("3 1 2\n1 0 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            GfMatrix::from_text("3 1 2\n1 0\n1 1\n"),
            Err(Error::Parse { .. })
        ));
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = GfMatrix> {
        (
            prop::sample::select(vec![2u64, 3, 5, 7]),
            0..=max_rows,
            0..=max_cols,
        )
            .prop_flat_map(|(p, r, c)| {
                prop::collection::vec(prop::collection::vec(0..p as u8, c), r)
                    .prop_map(move |rows| GfMatrix::from_rows(gf(p), c, &rows).unwrap())
            })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(m in arb_matrix(9, 70)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_nullity(m in arb_matrix(9, 70)) {
            let h = m.nullspace();
            prop_assert_eq!(m.rank() + h.rows(), m.cols());
            prop_assert!(m.mul_transpose(&h).unwrap().is_zero());
            prop_assert_eq!(h.rank(), h.rows());
        }

        #[test]
        fn rref_idempotent(m in arb_matrix(9, 70)) {
            let (r, pivots) = m.rref();
            let (rr, pivots2) = r.rref();
            prop_assert_eq!(&r, &rr);
            prop_assert_eq!(pivots, pivots2);
        }

        #[test]
        fn text_round_trip(m in arb_matrix(6, 12)) {
            prop_assert_eq!(GfMatrix::from_text(&m.to_text()).unwrap(), m);
        }

        #[test]
        fn combinations_are_members(m in arb_matrix(6, 10), seed in any::<u64>()) {
            prop_assume!(m.rows() > 0);
            let f = m.field();
            let mut v = vec![0u8; m.cols()];
            let mut s = seed;
            for r in 0..m.rows() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let c = ((s >> 33) % f.p() as u64) as u8;
                for (x, y) in v.iter_mut().zip(m.row(r)) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
            prop_assert!(m.contains(&v).unwrap());
        }
    }
}
