//! Smith normal form over the integers.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Invariant factors `d_1 | d_2 | ...` of an integer matrix, one per
/// diagonal position (`min(rows, cols)` entries, zeros last).
pub fn snf(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let diag = dense_diagonal(m.to_vec());
    let mut factors = invariant_factors(diag);
    factors.resize(rows.min(cols), BigInt::zero());
    factors
}

/// Rank and the non-unit nonzero diagonal entries of a sparse integer matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Elimination {
    pub rank: usize,
    pub non_units: Vec<BigInt>,
}

/// Sparse rows of `(column, value)` with increasing columns.
pub(crate) fn eliminate(cols: usize, rows: Vec<Vec<(u32, i64)>>) -> Elimination {
    let mut rows = rows;
    let nrows = rows.len();
    let mut alive = vec![true; nrows];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); cols];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].push(r as u32);
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        (0..nrows).filter(|&r| !rows[r].is_empty()).map(|r| Reverse((rows[r].len(), r as u32))).collect();
    let mut rank = 0;
    'pivots: while let Some(Reverse((w, r))) = heap.pop() {
        let r = r as usize;
        if !alive[r] || rows[r].len() != w || w == 0 {
            continue;
        }
        let Some(&(c, pv)) = rows[r].iter().filter(|e| e.1.abs() == 1).min_by_key(|e| col_rows[e.0 as usize].len())
        else {
            continue;
        };
        let pivot = std::mem::take(&mut rows[r]);
        alive[r] = false;
        rank += 1;
        let users = std::mem::take(&mut col_rows[c as usize]);
        for &s in &users {
            let s = s as usize;
            if !alive[s] {
                continue;
            }
            let Ok(pos) = rows[s].binary_search_by_key(&c, |e| e.0) else { continue };
            // s <- s - (a / pv) * pivot, exact since pv = ±1
            let factor = rows[s][pos].1 * pv;
            match axpy(&rows[s], &pivot, factor) {
                Some(new_row) => {
                    for &(nc, _) in &new_row {
                        if rows[s].binary_search_by_key(&nc, |e| e.0).is_err() {
                            col_rows[nc as usize].push(s as u32);
                        }
                    }
                    rows[s] = new_row;
                    if rows[s].is_empty() {
                        alive[s] = false;
                    } else {
                        heap.push(Reverse((rows[s].len(), s as u32)));
                    }
                }
                None => {
                    rows[r] = pivot;
                    alive[r] = true;
                    rank -= 1;
                    col_rows[c as usize] = users;
                    break 'pivots;
                }
            }
        }
    }
    // whatever is left has no unit entries (or overflowed): finish densely
    let rest: Vec<usize> = (0..nrows).filter(|&r| alive[r] && !rows[r].is_empty()).collect();
    if rest.is_empty() {
        return Elimination { rank, non_units: vec![] };
    }
    let mut used: Vec<u32> = rest.iter().flat_map(|&r| rows[r].iter().map(|e| e.0)).collect();
    used.sort_unstable();
    used.dedup();
    let dense: Vec<Vec<BigInt>> = rest
        .iter()
        .map(|&r| {
            let mut v = vec![BigInt::zero(); used.len()];
            for &(c, x) in &rows[r] {
                v[used.binary_search(&c).unwrap()] = BigInt::from(x);
            }
            v
        })
        .collect();
    let diag = dense_diagonal(dense);
    rank += diag.len();
    let non_units = diag.into_iter().map(|d| d.abs()).filter(|d| !d.is_one()).collect();
    Elimination { rank, non_units }
}

/// `a - factor * b` on sparse rows; `None` on i64 overflow.
fn axpy(a: &[(u32, i64)], b: &[(u32, i64)], factor: i64) -> Option<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, b[j].1.checked_mul(factor)?.checked_neg()?));
            j += 1;
        } else {
            let v = a[i].1.checked_sub(b[j].1.checked_mul(factor)?)?;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Nonzero diagonal entries after diagonalization by unimodular row and
/// column operations (not yet in divisibility order).
#[allow(clippy::needless_range_loop)]
fn dense_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&p);
                for j in t..cols {
                    let v = &m[t][j] * &q;
                    m[i][j] -= v;
                }
                dirty |= !m[i][t].is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&p);
                for row in m.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                dirty |= !m[t][j].is_zero();
            }
            if !dirty {
                break;
            }
            // a smaller remainder appeared in the pivot row or column
            let mut best = (t, t);
            for i in t..rows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Puts positive diagonal entries into divisibility order.
pub(crate) fn invariant_factors(diag: Vec<BigInt>) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = diag.into_iter().map(|x| x.abs()).filter(|x| !x.is_zero()).collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Prime-power decomposition of the torsion summands `Z/d`.
pub(crate) fn elementary_divisors(diag: &[BigInt]) -> Vec<u64> {
    let mut out = Vec::new();
    for d in diag {
        let mut n: u64 = d.abs().try_into().expect("torsion order fits in 64 bits");
        let mut p = 2u64;
        while p * p <= n {
            if n.is_multiple_of(p) {
                let mut pk = 1;
                while n.is_multiple_of(p) {
                    n /= p;
                    pk *= p;
                }
                out.push(pk);
            }
            p += 1;
        }
        if n > 1 {
            out.push(n);
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn classical_examples() {
        assert_eq!(snf(&big(&[&[2, 0], &[0, 3]])), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(snf(&big(&[&[0]])), vec![BigInt::from(0)]);
        assert_eq!(
            snf(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
    }

    #[test]
    fn elementary_divisors_split_prime_powers() {
        assert_eq!(elementary_divisors(&[BigInt::from(12), BigInt::from(2)]), vec![2, 3, 4]);
    }

    /// Determinantal divisors: the gcd of all k x k minors equals d_1 ... d_k.
    fn minor_gcd(m: &[Vec<i64>], k: usize) -> BigInt {
        fn det(m: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> BigInt {
            if rows.len() == 1 {
                return BigInt::from(m[rows[0]][cols[0]]);
            }
            let mut acc = BigInt::zero();
            for (j, &c) in cols.iter().enumerate() {
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = BigInt::from(m[rows[0]][c]) * det(m, &rows[1..], &rest);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            (0u32..1 << n)
                .filter(|s| s.count_ones() as usize == k)
                .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
                .collect()
        }
        let mut g = BigInt::zero();
        for rs in subsets(m.len(), k) {
            for cs in subsets(m[0].len(), k) {
                g = g.gcd(&det(m, &rs, &cs));
            }
        }
        g
    }

    proptest! {
        #[test]
        fn matches_determinantal_divisors(m in prop::collection::vec(prop::collection::vec(-6i64..7, 3), 1..4)) {
            let d = snf(&m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>());
            let mut prod = BigInt::one();
            for k in 1..=d.len() {
                prod *= &d[k - 1];
                prop_assert_eq!(minor_gcd(&m, k), prod.clone());
            }
        }

        #[test]
        fn sparse_elimination_agrees_with_dense(m in prop::collection::vec(prop::collection::vec(-2i64..3, 5), 0..6)) {
            let rows: Vec<Vec<(u32, i64)>> = m.iter()
                .map(|r| r.iter().enumerate().filter(|e| *e.1 != 0).map(|(c, &x)| (c as u32, x)).collect())
                .collect();
            let e = eliminate(5, rows);
            let dense = snf(&m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>());
            let nonzero: Vec<BigInt> = dense.into_iter().filter(|x| !x.is_zero()).collect();
            prop_assert_eq!(e.rank, nonzero.len());
            let a = elementary_divisors(&e.non_units);
            let b = elementary_divisors(&nonzero);
            prop_assert_eq!(a, b);
        }
    }
}
