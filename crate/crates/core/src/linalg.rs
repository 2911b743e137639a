//! Sparse exact linear algebra: incremental row echelon forms, ranks and
//! traces of induced maps on cokernels.
//!
//! Elimination is generic over [`Field`]. The fast path runs over `i64`
//! fractions with checked arithmetic and reports overflow, after which
//! callers redo the computation over arbitrary-precision rationals
//! (see [`with_fallback`]).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

use crate::Q;

/// Sparse matrix with integer entries, stored by rows; columns are sorted
/// within each row.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn from_rows(ncols: usize, rows: Vec<Vec<(usize, i64)>>) -> Self {
        let rows: Vec<_> = rows.into_iter().map(normalize_row).collect();
        SparseMatrix { nrows: rows.len(), ncols, rows }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.rows[r].binary_search_by_key(&c, |e| e.0).map(|i| self.rows[r][i].1).unwrap_or(0)
    }

    /// Row-vector convention: `(self * other)[r] = Σ_k self[r][k] other[k]`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows);
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: Vec<(usize, i64)> = Vec::new();
                for &(k, a) in row {
                    for &(c, b) in &other.rows[k] {
                        acc.push((c, a * b));
                    }
                }
                acc
            })
            .collect();
        SparseMatrix::from_rows(other.ncols, rows)
    }

    pub fn trace(&self) -> i64 {
        (0..self.nrows.min(self.ncols)).map(|i| self.get(i, i)).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut d = vec![vec![<Q as Zero>::zero(); self.ncols]; self.nrows];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, x) in row {
                d[r][c] = Q::from_integer(BigInt::from(x));
            }
        }
        d
    }

    pub fn rank(&self) -> usize {
        with_fallback(
            || {
                let mut e = Echelon::<Ratio<i64>>::new(self.ncols);
                for row in &self.rows {
                    e.insert_int(row)?;
                }
                Ok(e.rank())
            },
            || {
                let mut e = Echelon::<Q>::new(self.ncols);
                for row in &self.rows {
                    e.insert_int(row).expect("big rationals do not overflow");
                }
                e.rank()
            },
        )
    }
}

/// Sorts by column, merges duplicates and drops zeros.
pub fn normalize_row(mut row: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    row.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(row.len());
    for (c, x) in row {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += x,
            _ => out.push((c, x)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

/// Exact scalars with fallible arithmetic.
pub trait Field: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Result<Self, Overflow>;
    fn sub(&self, o: &Self) -> Result<Self, Overflow>;
    fn mul(&self, o: &Self) -> Result<Self, Overflow>;
    fn div(&self, o: &Self) -> Result<Self, Overflow>;
    fn to_q(&self) -> Q;
    /// Cost used to prefer simple pivots.
    fn weight(&self) -> u64;
}

impl Field for Ratio<i64> {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(x: i64) -> Self {
        Ratio::from_integer(x)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_add(o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_sub(o).ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_mul(o).ok_or(Overflow)
    }
    fn div(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_div(o).ok_or(Overflow)
    }
    fn to_q(&self) -> Q {
        Q::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn weight(&self) -> u64 {
        self.numer().unsigned_abs().saturating_add(self.denom().unsigned_abs())
    }
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(x: i64) -> Self {
        Q::from_integer(BigInt::from(x))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self * o)
    }
    fn div(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self / o)
    }
    fn to_q(&self) -> Q {
        self.clone()
    }
    fn weight(&self) -> u64 {
        (self.numer().abs().bits() + self.denom().bits()).max(1)
    }
}

/// Runs `fast`; on overflow runs `slow`.
pub fn with_fallback<T>(fast: impl FnOnce() -> Result<T, Overflow>, slow: impl FnOnce() -> T) -> T {
    match fast() {
        Ok(v) => v,
        Err(Overflow) => slow(),
    }
}

/// An incrementally built row echelon form. Pivot rows are normalized to a
/// leading 1 and reduced against every earlier pivot at insertion time, so a
/// vector is reduced by clearing pivot columns in creation order.
pub struct Echelon<F: Field> {
    ncols: usize,
    pivot_rows: Vec<(usize, Vec<(usize, F)>)>,
    pivot_of_col: Vec<u32>,
    buf: Vec<F>,
    touched: Vec<usize>,
    in_touched: Vec<bool>,
    priority: Vec<u32>,
}

const NO_PIVOT: u32 = u32::MAX;

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivot_rows: Vec::new(),
            pivot_of_col: vec![NO_PIVOT; ncols],
            buf: vec![F::zero(); ncols],
            touched: Vec::new(),
            in_touched: vec![false; ncols],
            priority: Vec::new(),
        }
    }

    /// Tie-breaking cost per column for pivot choice (lower is preferred).
    /// Without one, later columns are preferred, which keeps fill-in low on
    /// the complexes built here.
    pub fn set_priority(&mut self, priority: Vec<u32>) {
        self.priority = priority;
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col] != NO_PIVOT
    }

    /// Columns without a pivot; they index a basis of the cokernel.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| !self.is_pivot(c)).collect()
    }

    fn touch(&mut self, c: usize) {
        if !self.in_touched[c] {
            self.in_touched[c] = true;
            self.touched.push(c);
        }
    }

    fn load(&mut self, v: impl IntoIterator<Item = (usize, F)>) -> Result<BinaryHeap<Reverse<u32>>, Overflow> {
        let mut heap = BinaryHeap::new();
        for (c, x) in v {
            self.touch(c);
            self.buf[c] = self.buf[c].add(&x)?;
            let p = self.pivot_of_col[c];
            if p != NO_PIVOT {
                heap.push(Reverse(p));
            }
        }
        Ok(heap)
    }

    fn eliminate(&mut self, mut heap: BinaryHeap<Reverse<u32>>) -> Result<(), Overflow> {
        while let Some(Reverse(p)) = heap.pop() {
            let (pc, _) = self.pivot_rows[p as usize];
            if self.buf[pc].is_zero() {
                continue;
            }
            let f = self.buf[pc].clone();
            let row = std::mem::take(&mut self.pivot_rows[p as usize].1);
            let res = (|| {
                for (c, x) in &row {
                    let was_zero = self.buf[*c].is_zero();
                    self.touch(*c);
                    self.buf[*c] = self.buf[*c].sub(&f.mul(x)?)?;
                    if was_zero {
                        let q = self.pivot_of_col[*c];
                        if q != NO_PIVOT && q > p {
                            heap.push(Reverse(q));
                        }
                    }
                }
                Ok(())
            })();
            self.pivot_rows[p as usize].1 = row;
            res?;
        }
        Ok(())
    }

    fn drain(&mut self) -> Vec<(usize, F)> {
        let mut out = Vec::new();
        let mut touched = std::mem::take(&mut self.touched);
        touched.sort_unstable();
        for &c in &touched {
            self.in_touched[c] = false;
            let x = std::mem::replace(&mut self.buf[c], F::zero());
            if !x.is_zero() {
                out.push((c, x));
            }
        }
        touched.clear();
        self.touched = touched;
        out
    }

    fn clear(&mut self) {
        for &c in &self.touched {
            self.in_touched[c] = false;
            self.buf[c] = F::zero();
        }
        self.touched.clear();
    }

    /// Reduces `v` modulo the row space; the result is supported on free columns.
    pub fn reduce(&mut self, v: impl IntoIterator<Item = (usize, F)>) -> Result<Vec<(usize, F)>, Overflow> {
        let r = self.load(v).and_then(|h| self.eliminate(h));
        if let Err(e) = r {
            self.clear();
            return Err(e);
        }
        Ok(self.drain())
    }

    /// Coefficient at free column `j` of the reduction of `v`.
    pub fn reduced_coeff(&mut self, v: impl IntoIterator<Item = (usize, F)>, j: usize) -> Result<F, Overflow> {
        let r = self.load(v).and_then(|h| self.eliminate(h));
        let out = r.map(|_| self.buf[j].clone());
        self.clear();
        out
    }

    /// Adds a row; returns whether it raised the rank.
    pub fn insert(&mut self, v: impl IntoIterator<Item = (usize, F)>) -> Result<bool, Overflow> {
        let r = self.reduce(v)?;
        if r.is_empty() {
            return Ok(false);
        }
        let prio = &self.priority;
        let best = r
            .iter()
            .enumerate()
            .min_by_key(|(_, (c, x))| (x.weight(), prio.get(*c).copied().unwrap_or(u32::MAX - *c as u32)))
            .map(|(i, _)| i)
            .expect("nonempty");
        let (pc, pv) = r[best].clone();
        let mut row = Vec::with_capacity(r.len());
        for (c, x) in r {
            row.push((c, x.div(&pv)?));
        }
        self.pivot_of_col[pc] = self.pivot_rows.len() as u32;
        self.pivot_rows.push((pc, row));
        Ok(true)
    }

    /// Back-substitutes so pivot rows vanish on every other pivot column.
    pub fn into_reduced(mut self) -> Result<Reduced<F>, Overflow> {
        let k = self.pivot_rows.len();
        let mut done: Vec<Vec<(usize, F)>> = vec![Vec::new(); k];
        for i in (0..k).rev() {
            let (pc, row) = std::mem::take(&mut self.pivot_rows[i]);
            for (c, x) in &row {
                self.touch(*c);
                self.buf[*c] = x.clone();
            }
            for (c, x) in &row {
                let q = self.pivot_of_col[*c];
                if *c == pc || q == NO_PIVOT || x.is_zero() {
                    continue;
                }
                let f = self.buf[*c].clone();
                if f.is_zero() {
                    continue;
                }
                for (cc, y) in &done[q as usize] {
                    self.touch(*cc);
                    self.buf[*cc] = self.buf[*cc].sub(&f.mul(y)?)?;
                }
            }
            done[i] = self.drain();
            let _ = pc;
        }
        Ok(Reduced { pivot_of_col: self.pivot_of_col, rows: done })
    }

    pub fn insert_int(&mut self, row: &[(usize, i64)]) -> Result<bool, Overflow> {
        self.insert(row.iter().map(|&(c, x)| (c, F::from_i64(x))))
    }
}

/// Rank and, for each supplied operator, its trace on the cokernel of the
/// row space of `image_rows` inside a space of dimension `ncols`.
///
/// `apply(op, j)` returns the image of basis vector `j` under operator `op`.
pub struct CokernelTraces {
    pub rank: usize,
    pub traces: Vec<Q>,
}

pub fn cokernel_traces(
    ncols: usize,
    image_rows: &[Vec<(usize, i64)>],
    nops: usize,
    apply: &(dyn Fn(usize, usize) -> Vec<(usize, i64)> + Sync),
) -> CokernelTraces {
    with_fallback(
        || cokernel_traces_in::<Ratio<i64>>(ncols, image_rows, nops, apply),
        || cokernel_traces_in::<Q>(ncols, image_rows, nops, apply).expect("no overflow"),
    )
}

fn cokernel_traces_in<F: Field>(
    ncols: usize,
    image_rows: &[Vec<(usize, i64)>],
    nops: usize,
    apply: &(dyn Fn(usize, usize) -> Vec<(usize, i64)> + Sync),
) -> Result<CokernelTraces, Overflow> {
    let mut e = Echelon::<F>::new(ncols);
    for row in image_rows {
        e.insert_int(row)?;
    }
    let rank = e.rank();
    let free = e.free_columns();
    let r = e.into_reduced()?;
    let traces: Result<Vec<Q>, Overflow> = (0..nops)
        .into_par_iter()
        .map(|op| {
            let mut t = F::zero();
            for &j in &free {
                let img = apply(op, j);
                for (c, x) in img {
                    let x = F::from_i64(x);
                    if c == j {
                        t = t.add(&x)?;
                    } else if let Some(rc) = r.entry(c, j) {
                        t = t.sub(&x.mul(rc)?)?;
                    }
                }
            }
            Ok(t.to_q())
        })
        .collect();
    Ok(CokernelTraces { rank, traces: traces? })
}

/// Reduced row echelon form: every pivot row is supported on its pivot
/// column and the free columns.
pub struct Reduced<F: Field> {
    pivot_of_col: Vec<u32>,
    rows: Vec<Vec<(usize, F)>>,
}

impl<F: Field> Reduced<F> {
    /// Entry of the pivot row for column `c` at column `j`, if `c` is a pivot column.
    pub fn entry(&self, c: usize, j: usize) -> Option<&F> {
        let p = self.pivot_of_col[c];
        if p == NO_PIVOT {
            return None;
        }
        let row = &self.rows[p as usize];
        row.binary_search_by_key(&j, |e| e.0).ok().map(|k| &row[k].1)
    }
}

/// Dense rank over the rationals, used as a test oracle.
pub fn dense_rank(mut m: Vec<Vec<Q>>) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !Zero::is_zero(&m[r][c])) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..nrows {
            if r != rank && !Zero::is_zero(&m[r][c]) {
                let f = &m[r][c] / &pivot;
                for k in c..ncols {
                    let v = &m[rank][k] * &f;
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(x: i64) -> Q {
        Q::from_integer(BigInt::from(x))
    }

    #[test]
    fn rank_examples() {
        let m = SparseMatrix::from_rows(3, vec![vec![(0, 1), (1, 1)], vec![(1, 1), (2, 1)], vec![(0, 1), (2, -1)]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(SparseMatrix::new(4, 5).rank(), 0);
    }

    #[test]
    fn overflow_falls_back() {
        let big = i64::MAX / 3;
        let m = SparseMatrix::from_rows(
            3,
            vec![vec![(0, big), (1, 1)], vec![(0, 1), (1, big)], vec![(2, big - 1), (1, 7)]],
        );
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn cokernel_trace_of_swap() {
        // Image spanned by e0 + e1 in Q^2; in the quotient e1 = -e0, so the
        // swap acts by -1 and the negated swap by +1.
        let rows = vec![vec![(0, 1), (1, 1)]];
        let apply = |op: usize, j: usize| -> Vec<(usize, i64)> {
            let s = if op == 0 { 1 } else { -1 };
            vec![(1 - j, s)]
        };
        let t = cokernel_traces(2, &rows, 2, &apply);
        assert_eq!(t.rank, 1);
        assert_eq!(t.traces, vec![q(-1), q(1)]);
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_dense(entries in proptest::collection::vec((0usize..7, 0usize..8, -3i64..=3), 0..40)) {
            let mut rows = vec![Vec::new(); 7];
            for (r, c, x) in entries {
                rows[r].push((c, x));
            }
            let m = SparseMatrix::from_rows(8, rows);
            prop_assert_eq!(m.rank(), dense_rank(m.to_dense()));
        }

        #[test]
        fn cokernel_trace_matches_dense(entries in proptest::collection::vec((0usize..4, 0usize..6, -2i64..=2), 0..16), perm in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle()) {
            // A permutation preserving the image acts on the cokernel; compare
            // against tr(P) - tr(P | image) computed by symmetrizing the image.
            let mut base = vec![Vec::new(); 4];
            for (r, c, x) in entries {
                base[r].push((c, x));
            }
            // close the row space under the cyclic group generated by perm
            let mut rows: Vec<Vec<(usize, i64)>> = Vec::new();
            let order = {
                let mut k = 1;
                let mut cur: Vec<usize> = perm.clone();
                while cur.iter().enumerate().any(|(i, &x)| i != x) {
                    cur = cur.iter().map(|&x| perm[x]).collect();
                    k += 1;
                }
                k
            };
            for row in &base {
                let mut r = normalize_row(row.clone());
                for _ in 0..order {
                    rows.push(r.clone());
                    r = normalize_row(r.iter().map(|&(c, x)| (perm[c], x)).collect());
                }
            }
            let apply = |_: usize, j: usize| vec![(perm[j], 1i64)];
            let t = cokernel_traces(6, &rows, 1, &apply);
            let m = SparseMatrix::from_rows(6, rows.clone());
            prop_assert_eq!(t.rank, dense_rank(m.to_dense()));
            // trace on image: reduce P over a basis of the image in dense form
            let mut basis: Vec<Vec<Q>> = Vec::new();
            for row in m.to_dense() {
                let mut cand = basis.clone();
                cand.push(row.clone());
                if dense_rank(cand) > basis.len() {
                    basis.push(row);
                }
            }
            let k = basis.len();
            let mut tr_img = <Q as Zero>::zero();
            for i in 0..k {
                let moved: Vec<Q> = (0..6).map(|c| {
                    let src = (0..6).find(|&s| perm[s] == c).unwrap();
                    basis[i][src].clone()
                }).collect();
                // solve moved = Σ a_l basis[l] via least squares on the dense system
                let coeffs = solve(&basis, &moved);
                tr_img += coeffs[i].clone();
            }
            let tr_total = q((0..6).filter(|&j| perm[j] == j).count() as i64);
            prop_assert_eq!(t.traces[0].clone(), tr_total - tr_img);
        }
    }

    fn solve(basis: &[Vec<Q>], target: &[Q]) -> Vec<Q> {
        // Gaussian elimination on the transposed system.
        let k = basis.len();
        let n = target.len();
        let mut aug: Vec<Vec<Q>> = (0..n)
            .map(|c| {
                let mut r: Vec<Q> = (0..k).map(|l| basis[l][c].clone()).collect();
                r.push(target[c].clone());
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..k {
            let Some(p) = (row..n).find(|&r| !Zero::is_zero(&aug[r][col])) else { continue };
            aug.swap(row, p);
            let pv = aug[row][col].clone();
            for x in aug[row].iter_mut() {
                *x = &*x / &pv;
            }
            for r in 0..n {
                if r != row && !Zero::is_zero(&aug[r][col]) {
                    let f = aug[r][col].clone();
                    for c in 0..=k {
                        let v = &aug[row][c] * &f;
                        aug[r][c] -= v;
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
        }
        let mut out = vec![<Q as Zero>::zero(); k];
        for (r, c) in pivots {
            out[c] = aug[r][k].clone();
        }
        out
    }
}
