//! Rank over GF(2) of sparse 0/1 matrices.
//!
//! Rows and columns with a single entry are peeled off first; they are
//! extremely common in cube complexes. What remains is packed 64 columns to
//! a word and eliminated densely.

use rayon::prelude::*;

/// Sparse GF(2) matrix; each row lists its nonzero columns in increasing order.
#[derive(Clone, Debug, Default)]
pub struct SparseGf2 {
    pub cols: usize,
    pub rows: Vec<Vec<u32>>,
}

impl SparseGf2 {
    pub fn new(cols: usize) -> SparseGf2 {
        SparseGf2 { cols, rows: Vec::new() }
    }

    /// Appends a row given by its (unsorted, possibly repeated) column indices;
    /// repeated indices cancel in pairs.
    pub fn push_row(&mut self, mut entries: Vec<u32>) {
        entries.sort_unstable();
        let mut out: Vec<u32> = Vec::with_capacity(entries.len());
        for c in entries {
            if out.last() == Some(&c) {
                out.pop();
            } else {
                out.push(c);
            }
        }
        self.rows.push(out);
    }
}

pub fn rank(m: &SparseGf2) -> usize {
    let (peeled, rest) = peel(m);
    peeled + dense_rank(rest)
}

/// Pivots on singleton rows and columns; returns the rank found and the
/// packed residual matrix.
fn peel(m: &SparseGf2) -> (usize, DenseGf2) {
    let nrows = m.rows.len();
    let mut rows: Vec<Vec<u32>> = m.rows.clone();
    let mut row_alive = vec![true; nrows];
    let mut col_alive = vec![true; m.cols];
    let mut col_count = vec![0u32; m.cols];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); m.cols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row {
            col_count[c as usize] += 1;
            col_rows[c as usize].push(r as u32);
        }
    }
    let mut rank = 0;
    let mut row_queue: Vec<u32> = (0..nrows as u32).filter(|&r| rows[r as usize].len() == 1).collect();
    let mut col_queue: Vec<u32> = (0..m.cols as u32).filter(|&c| col_count[c as usize] == 1).collect();
    for r in 0..nrows {
        if rows[r].is_empty() {
            row_alive[r] = false;
        }
    }
    loop {
        if let Some(r) = row_queue.pop() {
            let r = r as usize;
            if !row_alive[r] || rows[r].len() != 1 {
                continue;
            }
            let c = rows[r][0] as usize;
            rank += 1;
            row_alive[r] = false;
            col_alive[c] = false;
            for &s in &col_rows[c] {
                let s = s as usize;
                if s == r || !row_alive[s] {
                    continue;
                }
                if let Ok(pos) = rows[s].binary_search(&(c as u32)) {
                    rows[s].remove(pos);
                    match rows[s].len() {
                        0 => row_alive[s] = false,
                        1 => row_queue.push(s as u32),
                        _ => {}
                    }
                }
            }
            col_count[c] = 0;
            continue;
        }
        if let Some(c) = col_queue.pop() {
            let c = c as usize;
            if !col_alive[c] || col_count[c] != 1 {
                continue;
            }
            let Some(r) = col_rows[c]
                .iter()
                .map(|&r| r as usize)
                .find(|&r| row_alive[r] && rows[r].binary_search(&(c as u32)).is_ok())
            else {
                continue;
            };
            rank += 1;
            row_alive[r] = false;
            col_alive[c] = false;
            for &c2 in &rows[r] {
                let c2 = c2 as usize;
                if c2 != c && col_alive[c2] {
                    col_count[c2] -= 1;
                    if col_count[c2] == 1 {
                        col_queue.push(c2 as u32);
                    } else if col_count[c2] == 0 {
                        col_alive[c2] = false;
                    }
                }
            }
            continue;
        }
        break;
    }
    // repack the survivors
    let mut new_col = vec![u32::MAX; m.cols];
    let mut ncols = 0usize;
    for (c, slot) in new_col.iter_mut().enumerate() {
        if col_alive[c] && col_count[c] > 0 {
            *slot = ncols as u32;
            ncols += 1;
        }
    }
    let mut dense = DenseGf2::new(ncols);
    for (r, row) in rows.iter().enumerate() {
        if row_alive[r] {
            let mut bits = vec![0u64; dense.words];
            let mut any = false;
            for &c in row {
                let nc = new_col[c as usize];
                if nc != u32::MAX {
                    bits[nc as usize / 64] ^= 1 << (nc % 64);
                    any = true;
                }
            }
            if any {
                dense.rows.push(bits);
            }
        }
    }
    (rank, dense)
}

/// Rows packed into 64-bit words.
#[derive(Clone, Debug)]
pub struct DenseGf2 {
    pub cols: usize,
    pub words: usize,
    pub rows: Vec<Vec<u64>>,
}

impl DenseGf2 {
    pub fn new(cols: usize) -> DenseGf2 {
        DenseGf2 { cols, words: cols.div_ceil(64), rows: Vec::new() }
    }

    pub fn from_sparse(m: &SparseGf2) -> DenseGf2 {
        let mut d = DenseGf2::new(m.cols);
        for row in &m.rows {
            let mut bits = vec![0u64; d.words];
            for &c in row {
                bits[c as usize / 64] ^= 1 << (c % 64);
            }
            d.rows.push(bits);
        }
        d
    }
}

/// Row reduction on packed rows; rows below the pivot are updated in parallel
/// once the matrix is large enough to pay for it.
pub fn dense_rank(mut m: DenseGf2) -> usize {
    let nrows = m.rows.len();
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == nrows {
            break;
        }
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..nrows).find(|&r| m.rows[r][w] & bit != 0) else {
            continue;
        };
        m.rows.swap(rank, p);
        let (top, below) = m.rows.split_at_mut(rank + 1);
        let pivot = &top[rank][w..];
        let reduce = |row: &mut Vec<u64>| {
            if row[w] & bit != 0 {
                for (x, y) in row[w..].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        };
        if below.len() * (m.words - w) > 1 << 16 {
            below.par_iter_mut().for_each(reduce);
        } else {
            below.iter_mut().for_each(reduce);
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_rank(rows: &[Vec<bool>], cols: usize) -> usize {
        let mut m: Vec<Vec<bool>> = rows.to_vec();
        let mut rank = 0;
        for c in 0..cols {
            if let Some(p) = (rank..m.len()).find(|&r| m[r][c]) {
                m.swap(rank, p);
                for r in 0..m.len() {
                    if r != rank && m[r][c] {
                        let pivot = m[rank].clone();
                        for (x, y) in m[r].iter_mut().zip(pivot) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    proptest! {
        #[test]
        fn matches_naive_elimination(
            rows in 0usize..40, cols in 1usize..140, density in 0.0f64..0.3, seed in any::<u64>()
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let dense: Vec<Vec<bool>> =
                (0..rows).map(|_| (0..cols).map(|_| rng.gen_bool(density)).collect()).collect();
            let mut sparse = SparseGf2::new(cols);
            for row in &dense {
                sparse.push_row((0..cols as u32).filter(|&c| row[c as usize]).collect());
            }
            prop_assert_eq!(rank(&sparse), naive_rank(&dense, cols));
            prop_assert_eq!(dense_rank(DenseGf2::from_sparse(&sparse)), naive_rank(&dense, cols));
        }
    }

    #[test]
    fn repeated_entries_cancel() {
        let mut m = SparseGf2::new(3);
        m.push_row(vec![1, 1]);
        m.push_row(vec![2, 0, 2]);
        assert_eq!(m.rows, vec![vec![], vec![0]]);
        assert_eq!(rank(&m), 1);
    }
}
