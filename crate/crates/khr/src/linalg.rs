//! Exact sparse linear algebra over the fields in [`crate::field`].
//!
//! Everything here is deterministic: pivots are chosen as the first nonzero
//! entry in row-major insertion order, and all arithmetic is exact. Over the
//! rationals, echelon rows are kept as primitive integer vectors
//! (fraction-free reductions) to control coefficient growth.

use std::collections::BTreeMap;

use crate::field::{Field, F2};

/// Sparse vector: entries sorted by index, values nonzero.
pub type SparseRow<F> = Vec<(u32, F)>;

pub fn row_is_sorted<F: Field>(row: &SparseRow<F>) -> bool {
    row.windows(2).all(|w| w[0].0 < w[1].0) && row.iter().all(|(_, v)| !v.is_zero())
}

/// c1 * a + c2 * b, entries merged by index.
pub fn row_combine<F: Field>(c1: &F, a: &SparseRow<F>, c2: &F, b: &SparseRow<F>) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some((ia, va)), Some((ib, vb))) => {
                if ia < ib {
                    i += 1;
                    (*ia, c1.mul(va))
                } else if ib < ia {
                    j += 1;
                    (*ib, c2.mul(vb))
                } else {
                    i += 1;
                    j += 1;
                    (*ia, c1.mul(va).add(&c2.mul(vb)))
                }
            }
            (Some((ia, va)), None) => {
                i += 1;
                (*ia, c1.mul(va))
            }
            (None, Some((ib, vb))) => {
                j += 1;
                (*ib, c2.mul(vb))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

pub fn row_scale<F: Field>(row: &mut SparseRow<F>, c: &F) {
    for (_, v) in row.iter_mut() {
        *v = v.mul(c);
    }
}

/// Incremental row echelon form with deterministic first-nonzero pivoting.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    rows: Vec<SparseRow<F>>,
    pivots: BTreeMap<u32, usize>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow<F>] {
        &self.rows
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = u32> + '_ {
        self.pivots.keys().copied()
    }

    pub fn has_pivot(&self, col: u32) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Reduce `row` against the stored pivot rows.
    pub fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        loop {
            let Some(&(lead, ref lv)) = row.first() else { return row };
            let Some(&k) = self.pivots.get(&lead) else { return row };
            let piv = &self.rows[k];
            let pv = &piv[0].1;
            if F::FRACTION_FREE {
                row = row_combine(pv, &row, &lv.clone().neg(), piv);
                F::normalize_row(&mut row);
            } else {
                let c = lv.mul(&pv.inv()).neg();
                row = row_combine(&F::one(), &row, &c, piv);
            }
        }
    }

    /// Insert a row; returns the new pivot column, or None if the row was
    /// dependent on those already present.
    pub fn insert(&mut self, row: SparseRow<F>) -> Option<u32> {
        debug_assert!(row_is_sorted(&row));
        let mut row = self.reduce(row);
        if row.is_empty() {
            return None;
        }
        F::normalize_row(&mut row);
        let lead = row[0].0;
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(row);
        Some(lead)
    }

    /// Solve `rows · x = 0` for x supported on the free column `free` (set
    /// to one) and the pivot columns. Requires `free` to not be a pivot.
    pub fn kernel_vector(&self, free: u32) -> SparseRow<F> {
        debug_assert!(!self.has_pivot(free));
        let mut x: BTreeMap<u32, F> = BTreeMap::new();
        x.insert(free, F::one());
        for (&piv, &k) in self.pivots.iter().rev() {
            let row = &self.rows[k];
            let mut acc = F::zero();
            for (c, v) in row.iter().skip(1) {
                if let Some(xc) = x.get(c) {
                    acc = acc.add(&v.mul(xc));
                }
            }
            if !acc.is_zero() {
                let xp = acc.mul(&row[0].1.inv()).neg();
                x.insert(piv, xp);
            }
        }
        let mut out: SparseRow<F> = x.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        F::normalize_row(&mut out);
        out
    }
}

/// Row echelon that additionally tracks, for every stored row, its
/// coordinates over a small set of designated basis rows. Used to express
/// cycles in a chosen homology basis.
#[derive(Clone, Debug)]
pub struct TrackedEchelon<F: Field> {
    rows: Vec<SparseRow<F>>,
    tracks: Vec<Vec<F>>,
    pivots: BTreeMap<u32, usize>,
    n_tracked: usize,
}

impl<F: Field> TrackedEchelon<F> {
    pub fn new(n_tracked: usize) -> Self {
        TrackedEchelon { rows: Vec::new(), tracks: Vec::new(), pivots: BTreeMap::new(), n_tracked }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_with_track(&self, mut row: SparseRow<F>, mut track: Vec<F>, lambda: &mut F) -> (SparseRow<F>, Vec<F>) {
        loop {
            let Some(&(lead, ref lv)) = row.first() else { return (row, track) };
            let Some(&k) = self.pivots.get(&lead) else { return (row, track) };
            let piv = &self.rows[k];
            let ptrack = &self.tracks[k];
            let pv = piv[0].1.clone();
            let (alpha, beta) = if F::FRACTION_FREE {
                (pv, lv.clone().neg())
            } else {
                (F::one(), lv.mul(&pv.inv()).neg())
            };
            row = row_combine(&alpha, &row, &beta, piv);
            for (t, pt) in track.iter_mut().zip(ptrack.iter()) {
                *t = alpha.mul(t).add(&beta.mul(pt));
            }
            *lambda = lambda.mul(&alpha);
            let g = F::normalize_row(&mut row);
            if !g.is_zero() && g != F::one() {
                for t in track.iter_mut() {
                    *t = t.mul(&g);
                }
                *lambda = lambda.mul(&g);
            }
        }
    }

    /// Insert a row carrying tracked coordinates; `track` must have length
    /// `n_tracked`. Returns true when the row added a new pivot.
    pub fn insert(&mut self, row: SparseRow<F>, track: Vec<F>) -> bool {
        debug_assert_eq!(track.len(), self.n_tracked);
        let mut lambda = F::one();
        let (row, track) = self.reduce_with_track(row, track, &mut lambda);
        if row.is_empty() {
            return false;
        }
        let lead = row[0].0;
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(row);
        self.tracks.push(track);
        true
    }

    /// Express `z` over the tracked basis modulo the untracked rows:
    /// returns coefficients t with z = sum t_i * basis_i (mod untracked span),
    /// or None when z is not in the span of the stored rows.
    pub fn coordinates(&self, z: SparseRow<F>) -> Option<Vec<F>> {
        let mut lambda = F::one();
        let track = vec![F::zero(); self.n_tracked];
        let (rem, track) = self.reduce_with_track(z, track, &mut lambda);
        if !rem.is_empty() {
            return None;
        }
        let inv = lambda.inv().neg();
        Some(track.into_iter().map(|t| t.mul(&inv)).collect())
    }
}

/// Sparse matrix in column-major form: `cols[j]` is the image of the j-th
/// source basis vector as a sparse vector over row indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat<F: Field> {
    pub nrows: usize,
    pub ncols: usize,
    pub cols: Vec<SparseRow<F>>,
}

impl<F: Field> SparseMat<F> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..n as u32).map(|i| vec![(i, F::one())]).collect();
        SparseMat { nrows: n, ncols: n, cols }
    }

    pub fn from_triplets(nrows: usize, ncols: usize, triplets: &[(usize, usize, F)]) -> Self {
        let mut cols: Vec<SparseRow<F>> = vec![Vec::new(); ncols];
        for (r, c, v) in triplets {
            assert!(*r < nrows && *c < ncols, "entry out of bounds");
            if !v.is_zero() {
                cols[*c].push((*r as u32, v.clone()));
            }
        }
        for col in cols.iter_mut() {
            col.sort_by_key(|e| e.0);
            let mut merged: SparseRow<F> = Vec::with_capacity(col.len());
            for (r, v) in col.drain(..) {
                if let Some(last) = merged.last_mut() {
                    if last.0 == r {
                        last.1 = last.1.add(&v);
                        if last.1.is_zero() {
                            merged.pop();
                        }
                        continue;
                    }
                }
                merged.push((r, v));
            }
            *col = merged;
        }
        SparseMat { nrows, ncols, cols }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn transposed(&self) -> SparseMat<F> {
        let mut cols: Vec<SparseRow<F>> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                cols[*i as usize].push((j as u32, v.clone()));
            }
        }
        SparseMat { nrows: self.ncols, ncols: self.nrows, cols }
    }

    /// Apply to a sparse coordinate vector.
    pub fn apply(&self, v: &SparseRow<F>) -> SparseRow<F> {
        let mut acc: BTreeMap<u32, F> = BTreeMap::new();
        for (j, c) in v {
            for (i, a) in &self.cols[*j as usize] {
                let e = acc.entry(*i).or_insert_with(F::zero);
                *e = e.add(&a.mul(c));
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Exact matrix product self * other.
    pub fn compose(&self, other: &SparseMat<F>) -> SparseMat<F> {
        assert_eq!(self.ncols, other.nrows, "inner dimensions disagree");
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        SparseMat { nrows: self.nrows, ncols: other.ncols, cols }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new();
        for col in &self.cols {
            ech.insert(col.clone());
        }
        ech.rank()
    }

    /// Rank together with exact kernel and image bases.
    pub fn rank_kernel_image(&self) -> RankKernelImage<F> {
        let mut col_ech = Echelon::new();
        for col in &self.cols {
            col_ech.insert(col.clone());
        }
        let rank = col_ech.rank();
        let image: Vec<SparseRow<F>> = col_ech.rows().to_vec();

        let mut row_ech = Echelon::new();
        let t = self.transposed();
        for row in &t.cols {
            row_ech.insert(row.clone());
        }
        debug_assert_eq!(row_ech.rank(), rank);
        let mut kernel = Vec::new();
        for j in 0..self.ncols as u32 {
            if !row_ech.has_pivot(j) {
                kernel.push(row_ech.kernel_vector(j));
            }
        }
        RankKernelImage { rank, kernel, image }
    }
}

#[derive(Clone, Debug)]
pub struct RankKernelImage<F: Field> {
    pub rank: usize,
    pub kernel: Vec<SparseRow<F>>,
    pub image: Vec<SparseRow<F>>,
}

/// Dense bit-packed GF(2) matrix, the alternate elimination path for the
/// two-element field.
#[derive(Clone, Debug)]
pub struct BitMat {
    pub nrows: usize,
    pub ncols: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        let words = ncols.div_ceil(64);
        BitMat { nrows, ncols, words, rows: vec![0; nrows * words] }
    }

    pub fn from_sparse(m: &SparseMat<F2>) -> Self {
        let mut b = BitMat::zero(m.nrows, m.ncols);
        for (j, col) in m.cols.iter().enumerate() {
            for (i, v) in col {
                if !v.is_zero() {
                    b.set(*i as usize, j, true);
                }
            }
        }
        b
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = r * self.words + c / 64;
        let mask = 1u64 << (c % 64);
        if v {
            self.rows[w] |= mask;
        } else {
            self.rows[w] &= !mask;
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    /// Rank by in-place bit-packed elimination; pivots taken first nonzero
    /// in row-major order.
    pub fn rank(mut self) -> usize {
        let mut rank = 0;
        for col in 0..self.ncols {
            let mut piv = None;
            for r in rank..self.nrows {
                if self.get(r, col) {
                    piv = Some(r);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            if p != rank {
                for w in 0..self.words {
                    self.rows.swap(rank * self.words + w, p * self.words + w);
                }
            }
            for r in 0..self.nrows {
                if r != rank && self.get(r, col) {
                    for w in 0..self.words {
                        let pv = self.rows[rank * self.words + w];
                        self.rows[r * self.words + w] ^= pv;
                    }
                }
            }
            rank += 1;
            if rank == self.nrows {
                break;
            }
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rat};
    use proptest::prelude::*;

    /// Independent dense Gaussian eliminator used as the test oracle.
    fn dense_rank<F: Field>(nrows: usize, ncols: usize, entries: &[(usize, usize, F)]) -> usize {
        let mut m = vec![vec![F::zero(); ncols]; nrows];
        for (r, c, v) in entries {
            m[*r][*c] = m[*r][*c].add(v);
        }
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..nrows).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            let inv = m[rank][c].inv();
            for j in 0..ncols {
                m[rank][j] = m[rank][j].mul(&inv);
            }
            for r in 0..nrows {
                if r != rank && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for j in 0..ncols {
                        m[r][j] = m[r][j].sub(&f.mul(&m[rank][j]));
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn identity_rank_gf2() {
        let m: SparseMat<F2> = SparseMat::identity(3);
        let rki = m.rank_kernel_image();
        assert_eq!(rki.rank, 3);
        assert!(rki.kernel.is_empty());
    }

    #[test]
    fn all_ones_2x2_gf2() {
        let one = F2::one();
        let m = SparseMat::from_triplets(2, 2, &[(0, 0, one), (0, 1, one), (1, 0, one), (1, 1, one)]);
        let rki = m.rank_kernel_image();
        assert_eq!(rki.rank, 1);
        assert_eq!(rki.kernel, vec![vec![(0, one), (1, one)]]);
    }

    #[test]
    fn kernel_annihilated_rational() {
        let m = SparseMat::from_triplets(
            3,
            4,
            &[
                (0, 0, Rat::from_int(2)),
                (0, 1, Rat::from_int(4)),
                (1, 0, Rat::from_int(1)),
                (1, 1, Rat::from_int(2)),
                (1, 2, Rat::from_int(1)),
                (2, 3, Rat::from_int(3)),
            ],
        );
        let rki = m.rank_kernel_image();
        assert_eq!(rki.rank + rki.kernel.len(), 4);
        for k in &rki.kernel {
            assert!(m.apply(k).is_empty(), "kernel vector not annihilated");
        }
    }

    #[test]
    fn compose_with_identity() {
        let m = SparseMat::from_triplets(2, 3, &[(0, 0, Rat::from_int(5)), (1, 2, Rat::from_int(-7))]);
        assert_eq!(m.compose(&SparseMat::identity(3)), m);
        assert_eq!(SparseMat::identity(2).compose(&m), m);
    }

    #[test]
    fn tracked_coordinates_roundtrip() {
        // Basis rows e0+e1 and e2; untracked span e0-e1.
        let mut te: TrackedEchelon<Rat> = TrackedEchelon::new(2);
        te.insert(vec![(0, Rat::from_int(1)), (1, Rat::from_int(-1))], vec![Rat::zero(), Rat::zero()]);
        te.insert(vec![(0, Rat::from_int(1)), (1, Rat::from_int(1))], vec![Rat::one(), Rat::zero()]);
        te.insert(vec![(2, Rat::from_int(1))], vec![Rat::zero(), Rat::one()]);
        // z = 3*e0 + e1 + 2*e2 = (e0-e1) + 2*(e0+e1)... check: (1,-1)+2(1,1)=(3,1) ok.
        let z = vec![(0, Rat::from_int(3)), (1, Rat::from_int(1)), (2, Rat::from_int(2))];
        let coords = te.coordinates(z).unwrap();
        assert_eq!(coords, vec![Rat::from_int(2), Rat::from_int(2)]);
        assert!(te.coordinates(vec![(3, Rat::one())]).is_none());
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_dense_oracle_gf2(
            entries in proptest::collection::vec((0usize..8, 0usize..8, prop::bool::ANY), 0..40)
        ) {
            let ts: Vec<(usize, usize, F2)> = entries.iter().map(|(r, c, b)| (*r, *c, F2(*b))).collect();
            let m = SparseMat::from_triplets(8, 8, &ts);
            let sparse = m.rank();
            let dense = dense_rank(8, 8, &ts);
            prop_assert_eq!(sparse, dense);
            let bit = BitMat::from_sparse(&m).rank();
            prop_assert_eq!(sparse, bit);
        }

        #[test]
        fn sparse_rank_matches_dense_oracle_rat(
            entries in proptest::collection::vec((0usize..6, 0usize..6, -4i64..5), 0..30)
        ) {
            let ts: Vec<(usize, usize, Rat)> = entries.iter().map(|(r, c, v)| (*r, *c, Rat::from_int(*v))).collect();
            let m = SparseMat::from_triplets(6, 6, &ts);
            prop_assert_eq!(m.rank(), dense_rank(6, 6, &ts));
        }

        #[test]
        fn product_rank_bounded(
            e1 in proptest::collection::vec((0usize..5, 0usize..5, -3i64..4), 0..20),
            e2 in proptest::collection::vec((0usize..5, 0usize..5, -3i64..4), 0..20)
        ) {
            let t1: Vec<(usize, usize, Fp<5>)> = e1.iter().map(|(r, c, v)| (*r, *c, Fp::<5>::from_int(*v))).collect();
            let t2: Vec<(usize, usize, Fp<5>)> = e2.iter().map(|(r, c, v)| (*r, *c, Fp::<5>::from_int(*v))).collect();
            let a = SparseMat::from_triplets(5, 5, &t1);
            let b = SparseMat::from_triplets(5, 5, &t2);
            let ab = a.compose(&b);
            prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        }

        #[test]
        fn kernel_always_annihilated(
            entries in proptest::collection::vec((0usize..7, 0usize..7, -3i64..4), 0..30)
        ) {
            let ts: Vec<(usize, usize, Rat)> = entries.iter().map(|(r, c, v)| (*r, *c, Rat::from_int(*v))).collect();
            let m = SparseMat::from_triplets(7, 7, &ts);
            let rki = m.rank_kernel_image();
            prop_assert_eq!(rki.rank + rki.kernel.len(), 7);
            for k in &rki.kernel {
                prop_assert!(m.apply(k).is_empty());
            }
        }
    }
}
