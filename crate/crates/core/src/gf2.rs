//! Bit-packed linear algebra over GF(2).
//!
//! Vectors are packed into `u64` words so that row operations run at word
//! speed; a full row reduction of an r×c matrix costs O(r²·c/64). This is
//! what keeps Monte Carlo sweeps on ~2500-qubit lattices (symplectic vectors
//! of ~5000 columns) inside their time budgets.
//!
//! Row reduction pivots on the leftmost nonzero column, first available row,
//! so reduced forms are deterministic. Only basis-independent quantities
//! (rank, kernel dimension, membership) are exposed as results.

use crate::{Error, Result};

const WORD_BITS: usize = 64;

/// A fixed-length vector over GF(2), packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    blocks: Vec<u64>,
    len: usize,
}

impl BitVec {
    /// The zero vector of length `len`.
    pub fn zeros(len: usize) -> Self {
        BitVec {
            blocks: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parse from a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Result<Self> {
        let mut v = BitVec::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(Error::InvalidInput(format!("bad bit character {ch:?}"))),
            }
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.blocks[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.blocks[i / WORD_BITS] |= mask;
        } else {
            self.blocks[i / WORD_BITS] &= !mask;
        }
    }

    /// In-place XOR with another vector of the same length.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2): parity of the AND of the two vectors.
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Index of the first set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (w, &b) in self.blocks.iter().enumerate() {
            if b != 0 {
                return Some(w * WORD_BITS + b.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Indices of all set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(w, &b)| {
            let mut bits = b;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let i = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * WORD_BITS + i)
                }
            })
        })
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut v = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            v.set(i, true);
        }
        for i in other.iter_ones() {
            v.set(self.len + i, true);
        }
        v
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A dense GF(2) matrix stored as a list of equal-length rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    ncols: usize,
}

impl BitMatrix {
    /// An empty matrix with `ncols` columns and no rows.
    pub fn new(ncols: usize) -> Self {
        BitMatrix { rows: Vec::new(), ncols }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        BitMatrix {
            rows: vec![BitVec::zeros(ncols); nrows],
            ncols,
        }
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Result<Self> {
        let ncols = rows.first().map_or(0, BitVec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(BitMatrix { rows, ncols })
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.ncols, "row length must equal ncols");
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut BitVec {
        &mut self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    /// Matrix-vector product `m · x` over GF(2).
    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.ncols {
            return Err(Error::DimensionMismatch(format!(
                "mul_vec: vector length {} vs {} columns",
                x.len(),
                self.ncols
            )));
        }
        let mut out = BitVec::zeros(self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(x) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        Echelon::from_rows(self.rows.iter()).rank()
    }

    /// Any solution `x` of `m · x = b`, or `None` if the system is
    /// inconsistent. `b` must have one entry per row.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>> {
        if b.len() != self.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "solve: rhs length {} vs {} rows",
                b.len(),
                self.nrows()
            )));
        }
        // Eliminate on the augmented matrix [m | b].
        let mut aug: Vec<BitVec> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.clone();
                let mut w = BitVec::zeros(self.ncols + 1);
                for k in v.iter_ones() {
                    w.set(k, true);
                }
                if b.get(i) {
                    w.set(self.ncols, true);
                }
                v = w;
                v
            })
            .collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            let Some(pr) = (r..aug.len()).find(|&i| aug[i].get(c)) else {
                continue;
            };
            aug.swap(r, pr);
            let pivot = aug[r].clone();
            for (i, row) in aug.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == aug.len() {
                break;
            }
        }
        // Inconsistent iff a zero row has rhs 1.
        if aug[r..].iter().any(|row| row.get(self.ncols)) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.ncols);
        for (i, &c) in pivot_cols.iter().enumerate() {
            if aug[i].get(self.ncols) {
                x.set(c, true);
            }
        }
        Ok(Some(x))
    }

    /// A basis of the right kernel `{v : m · v = 0}`. The returned vectors
    /// are independent and number `ncols - rank`.
    pub fn nullspace_basis(&self) -> Vec<BitVec> {
        let mut rows = self.rows.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut r = 0;
        for c in 0..self.ncols {
            let Some(pr) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, pr);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push((r, c));
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = BitVec::zeros(self.ncols);
            v.set(free, true);
            for &(pr, pc) in &pivots {
                if rows[pr].get(free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// True iff `v` is a GF(2) combination of the rows.
    pub fn in_rowspace(&self, v: &BitVec) -> Result<bool> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch(format!(
                "in_rowspace: vector length {} vs {} columns",
                v.len(),
                self.ncols
            )));
        }
        let mut ech = Echelon::from_rows(self.rows.iter());
        Ok(ech.reduce(v.clone()).is_zero())
    }
}

/// Incrementally maintained row echelon form.
///
/// Rows are inserted one at a time; each insertion either extends the basis
/// or reduces to zero. Used for greedy independence filtering and fast
/// repeated membership tests against a fixed span.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn from_rows<'a, I: IntoIterator<Item = &'a BitVec>>(rows: I) -> Self {
        let mut e = Echelon::new();
        for r in rows {
            e.insert(r.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current basis, returning the residual.
    pub fn reduce(&mut self, mut v: BitVec) -> BitVec {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Insert `v` into the span. Returns `true` if it was independent of the
    /// rows already present.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let residual = self.reduce(v);
        match residual.first_one() {
            None => false,
            Some(p) => {
                // Keep rows ordered by pivot so reduction stays canonical.
                let at = self.pivots.partition_point(|&q| q < p);
                self.rows.insert(at, residual);
                self.pivots.insert(at, p);
                true
            }
        }
    }

    /// Membership test without inserting.
    pub fn contains(&self, v: &BitVec) -> bool {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_rows(rows.iter().map(|r| BitVec::parse(r).unwrap()).collect()).unwrap()
    }

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(m(&["000", "000", "000"]).rank(), 0);
    }

    #[test]
    fn rank_identity() {
        assert_eq!(m(&["1000", "0100", "0010", "0001"]).rank(), 4);
    }

    #[test]
    fn rank_dependent_rows() {
        // 110 ^ 011 = 101, so the three rows span a 2-dimensional space.
        assert_eq!(m(&["110", "011", "101"]).rank(), 2);
    }

    #[test]
    fn rank_invariant_under_row_permutation() {
        assert_eq!(m(&["101", "011", "110"]).rank(), 2);
        assert_eq!(m(&["011", "110", "101"]).rank(), 2);
    }

    #[test]
    fn solve_identity_system() {
        let a = m(&["100", "010", "001"]);
        let b = BitVec::parse("101").unwrap();
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), b);
        assert_eq!(x, b);
    }

    #[test]
    fn solve_underdetermined() {
        let a = m(&["11"]);
        let b = BitVec::parse("1").unwrap();
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn solve_inconsistent() {
        let a = m(&["10", "10"]);
        let b = BitVec::parse("10").unwrap();
        assert!(a.solve(&b).unwrap().is_none());
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = m(&["10", "10"]);
        let b = BitVec::parse("101").unwrap();
        assert!(matches!(a.solve(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn nullspace_full_rank() {
        assert!(m(&["100", "010", "001"]).nullspace_basis().is_empty());
    }

    #[test]
    fn nullspace_zero_matrix() {
        let basis = m(&["0000", "0000"]).nullspace_basis();
        assert_eq!(basis.len(), 4);
        let rank = BitMatrix::from_rows(basis).unwrap().rank();
        assert_eq!(rank, 4);
    }

    #[test]
    fn nullspace_block_pairs() {
        let a = m(&["1100", "0011"]);
        let basis = a.nullspace_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(a.mul_vec(v).unwrap().is_zero());
        }
        assert_eq!(BitMatrix::from_rows(basis).unwrap().rank(), 2);
    }

    #[test]
    fn rowspace_membership() {
        let a = m(&["110", "011"]);
        assert!(a.in_rowspace(&BitVec::zeros(3)).unwrap());
        assert!(a.in_rowspace(&BitVec::parse("101").unwrap()).unwrap());
        let single = m(&["110"]);
        assert!(!single.in_rowspace(&BitVec::parse("001").unwrap()).unwrap());
        assert!(matches!(
            single.in_rowspace(&BitVec::parse("0011").unwrap()),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn echelon_insert_and_contains() {
        let mut e = Echelon::new();
        assert!(e.insert(BitVec::parse("110").unwrap()));
        assert!(e.insert(BitVec::parse("011").unwrap()));
        assert!(!e.insert(BitVec::parse("101").unwrap()));
        assert!(e.contains(&BitVec::parse("101").unwrap()));
        assert!(!e.contains(&BitVec::parse("100").unwrap()));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn empty_dimensions() {
        let a = BitMatrix::new(0);
        assert_eq!(a.rank(), 0);
        assert!(a.nullspace_basis().is_empty());
        let b = BitMatrix::zeros(0, 5);
        assert_eq!(b.rank(), 0);
        assert_eq!(b.nullspace_basis().len(), 5);
    }

    fn arb_matrix() -> impl Strategy<Value = BitMatrix> {
        (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r)
                .prop_map(|rows| {
                    BitMatrix::from_rows(rows.iter().map(|r| BitVec::from_bools(r)).collect())
                        .unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(a in arb_matrix()) {
            prop_assert_eq!(a.rank() + a.nullspace_basis().len(), a.ncols());
        }

        #[test]
        fn solve_substitutes(a in arb_matrix(), bits in proptest::collection::vec(any::<bool>(), 8)) {
            let b = BitVec::from_bools(&bits[..a.nrows()]);
            if let Some(x) = a.solve(&b).unwrap() {
                prop_assert_eq!(a.mul_vec(&x).unwrap(), b);
            }
        }

        #[test]
        fn membership_matches_rank_append(a in arb_matrix(), bits in proptest::collection::vec(any::<bool>(), 8)) {
            let v = BitVec::from_bools(&bits[..a.ncols()]);
            let member = a.in_rowspace(&v).unwrap();
            let mut rows = a.rows().to_vec();
            rows.push(v);
            let appended = BitMatrix::from_rows(rows).unwrap();
            prop_assert_eq!(member, appended.rank() == a.rank());
        }
    }
}
