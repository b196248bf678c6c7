//! Sparse matrices over GF(2) with deterministic elimination.
//!
//! Matrices are stored column-major as sorted row-index lists. Elimination
//! runs over bit-packed columns and always picks the lowest available row as
//! the pivot of the column being processed, so every derived quantity (ranks,
//! kernel bases, certificates) is reproducible across runs.

use crate::bits::BitVec;

/// Column-major sparse matrix over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrixF2 {
    rows: usize,
    cols: Vec<Vec<u32>>,
}

impl SparseMatrixF2 {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrixF2 {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from per-column row lists. Lists may be unsorted but
    /// must not repeat an index.
    pub fn from_columns(rows: usize, columns: Vec<Vec<u32>>) -> Self {
        let mut cols = columns;
        for col in &mut cols {
            col.sort_unstable();
            debug_assert!(col.windows(2).all(|w| w[0] < w[1]), "repeated row index");
            debug_assert!(col.last().is_none_or(|&r| (r as usize) < rows));
        }
        SparseMatrixF2 { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &[u32] {
        &self.cols[c]
    }

    /// Flips the entry at (row, col).
    pub fn toggle(&mut self, row: u32, col: usize) {
        debug_assert!((row as usize) < self.rows && col < self.cols.len());
        let list = &mut self.cols[col];
        match list.binary_search(&row) {
            Ok(pos) => {
                list.remove(pos);
            }
            Err(pos) => list.insert(pos, row),
        }
    }

    pub fn get(&self, row: u32, col: usize) -> bool {
        self.cols[col].binary_search(&row).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn entry_count(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn transpose(&self) -> SparseMatrixF2 {
        let mut cols = vec![Vec::new(); self.rows];
        for (c, list) in self.cols.iter().enumerate() {
            for &r in list {
                cols[r as usize].push(c as u32);
            }
        }
        SparseMatrixF2 {
            rows: self.cols.len(),
            cols,
        }
    }

    /// Applies the matrix to a sparse vector of column indices.
    pub fn apply(&self, support: &[u32]) -> Vec<u32> {
        let mut acc = BitVec::zeros(self.rows);
        for &c in support {
            for &r in &self.cols[c as usize] {
                acc.toggle(r as usize);
            }
        }
        acc.ones()
    }

    pub fn rank(&self) -> usize {
        let mut elim = Eliminator::new(self.rows);
        for c in 0..self.ncols() {
            elim.reduce_sparse(self.column(c), None);
        }
        elim.rank()
    }

    /// Basis of the kernel, each vector given by its support in column indices.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let n = self.ncols();
        let mut elim = Eliminator::with_tracking(self.rows, n);
        let mut kernel = Vec::new();
        for c in 0..n {
            let mut combo = BitVec::zeros(n);
            combo.toggle(c);
            if let Reduced::Dependent(expr) = elim.push(
                BitVec::from_indices(self.rows, self.column(c)),
                Some(combo),
            ) {
                kernel.push(expr.ones());
            }
        }
        kernel
    }
}

/// Result of reducing one vector against the current echelon set.
pub enum Reduced {
    /// The vector was independent and has been absorbed as a new pivot.
    Independent,
    /// The vector lies in the span; the payload expresses it in terms of the
    /// tracked combinations, when tracking was requested.
    Dependent(BitVec),
}

/// Incremental column echelon form with optional combination tracking.
///
/// When built `with_tracking(rows, combo_len)`, every pushed vector carries a
/// combination vector of length `combo_len` (zeros unless the caller supplies
/// one) and dependencies are reported in those coordinates.
pub struct Eliminator {
    rows: usize,
    combo_len: usize,
    pivots: Vec<(usize, BitVec, BitVec)>,
}

impl Eliminator {
    pub fn new(rows: usize) -> Self {
        Self::with_tracking(rows, 0)
    }

    pub fn with_tracking(rows: usize, combo_len: usize) -> Self {
        Eliminator {
            rows,
            combo_len,
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_rows(&self) -> Vec<u32> {
        let mut rows: Vec<u32> = self.pivots.iter().map(|p| p.0 as u32).collect();
        rows.sort_unstable();
        rows
    }

    /// Reduces `vec` against the pivots accumulated so far. When the residual
    /// is nonzero it becomes a new pivot (keyed by its lowest set bit) and
    /// `Independent` is returned; otherwise the dependency combination is
    /// handed back.
    pub fn push(&mut self, vec: BitVec, track: Option<BitVec>) -> Reduced {
        debug_assert_eq!(vec.len(), self.rows);
        let mut acc = vec;
        let mut combo = track.unwrap_or_else(|| BitVec::zeros(self.combo_len));
        debug_assert_eq!(combo.len(), self.combo_len);
        for (row, col, expr) in &self.pivots {
            if acc.get(*row) {
                acc.xor_assign(col);
                combo.xor_assign(expr);
            }
        }
        match acc.lowest_set() {
            Some(row) => {
                self.pivots.push((row, acc, combo));
                Reduced::Independent
            }
            None => Reduced::Dependent(combo),
        }
    }

    pub fn reduce_sparse(&mut self, support: &[u32], track: Option<BitVec>) -> Reduced {
        let vec = BitVec::from_indices(self.rows, support);
        self.push(vec, track)
    }

    /// Reduces a vector against the accumulated pivots without inserting it;
    /// returns the tracked combination when the vector lies in the span.
    pub fn probe(&self, vec: &BitVec) -> Option<BitVec> {
        let mut acc = vec.clone();
        let mut combo = BitVec::zeros(self.combo_len);
        for (row, col, expr) in &self.pivots {
            if acc.get(*row) {
                acc.xor_assign(col);
                combo.xor_assign(expr);
            }
        }
        acc.is_zero().then_some(combo)
    }

    /// Membership test without insertion.
    pub fn contains(&self, support: &[u32]) -> bool {
        self.probe(&BitVec::from_indices(self.rows, support)).is_some()
    }
}

/// Outcome of a solve query against a column space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    /// Support of a coefficient vector x with M x = target.
    Preimage(Vec<u32>),
    /// Support of a row functional y with y^T M = 0 and y^T target = 1,
    /// witnessing that the target is outside the column space.
    NotInImage(Vec<u32>),
}

/// Summary of one elimination pass with solve queries.
pub struct RankSolve {
    pub rank: usize,
    pub pivot_rows: Vec<u32>,
    pub solves: Vec<Solve>,
}

/// Computes the rank of `m` and resolves each target: either a preimage under
/// `m` or a cokernel functional certifying non-membership.
pub fn rank_and_solve(m: &SparseMatrixF2, targets: &[Vec<u32>]) -> RankSolve {
    let n = m.ncols();
    let mut elim = Eliminator::with_tracking(m.rows(), n);
    for c in 0..n {
        let mut combo = BitVec::zeros(n);
        combo.toggle(c);
        elim.push(BitVec::from_indices(m.rows(), m.column(c)), Some(combo));
    }
    let rank = elim.rank();
    let pivot_rows = elim.pivot_rows();
    let mut cokernel: Option<Vec<BitVec>> = None;
    let solves = targets
        .iter()
        .map(|t| {
            let target = BitVec::from_indices(m.rows(), t);
            match elim.probe(&target) {
                Some(expr) => Solve::Preimage(expr.ones()),
                None => {
                    let basis = cokernel.get_or_insert_with(|| cokernel_basis(m));
                    let y = basis
                        .iter()
                        .find(|y| y.dot(&target))
                        .expect("target outside image must pair with a cokernel functional");
                    Solve::NotInImage(y.ones())
                }
            }
        })
        .collect();
    RankSolve {
        rank,
        pivot_rows,
        solves,
    }
}

/// Basis of the kernel of the transpose, i.e. functionals vanishing on the
/// column space of `m`.
fn cokernel_basis(m: &SparseMatrixF2) -> Vec<BitVec> {
    let mt = m.transpose();
    mt.kernel_basis()
        .into_iter()
        .map(|support| BitVec::from_indices(m.rows(), &support))
        .collect()
}
