//! Reduced Burau representation and the two-variable Alexander polynomial
//! of a braid closure together with its axis.
//!
//! `rho(sigma_i)` is the identity except in row `i` (1-based), which reads
//! `t, -t, 1` in columns `i-1, i, i+1`; entries falling outside the
//! `(l-1) x (l-1)` matrix are dropped. For `l = 2` this is the 1x1 matrix
//! `(-t)`. The inverse replaces that row by `1, -1/t, 1/t`.

use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::diagrams::BraidWord;
use crate::polynomials::{BiLaurent, LaurentPoly, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurauMatrix {
    entries: Vec<Vec<LaurentPoly>>,
}

impl BurauMatrix {
    pub fn identity(size: usize) -> BurauMatrix {
        let entries = (0..size)
            .map(|i| {
                (0..size).map(|j| if i == j { LaurentPoly::one(Var::T) } else { LaurentPoly::zero(Var::T) }).collect()
            })
            .collect();
        BurauMatrix { entries }
    }

    /// Image of `sigma_|letter|` (inverse when negative) in `B_strands`.
    pub fn generator(strands: usize, letter: i32) -> BurauMatrix {
        let size = strands - 1;
        let mut m = BurauMatrix::identity(size);
        let i = letter.unsigned_abs() as usize - 1;
        let row: [(i64, i64); 3] = if letter > 0 { [(1, 1), (-1, 1), (1, 0)] } else { [(1, 0), (-1, -1), (1, -1)] };
        for (k, (c, e)) in row.into_iter().enumerate() {
            if let Some(j) = (i + k).checked_sub(1).filter(|&j| j < size) {
                m.entries[i][j] = LaurentPoly::monomial(Var::T, c, e);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<LaurentPoly>] {
        &self.entries
    }

    /// Coefficients `c_0..c_n` of `det(x I - M) = sum c_k x^k`
    /// (Faddeev-LeVerrier; every division by `k` is exact).
    pub fn characteristic_polynomial(&self) -> Vec<LaurentPoly> {
        let n = self.size();
        let zero = LaurentPoly::zero(Var::T);
        let mut coeffs = vec![zero.clone(); n + 1];
        coeffs[n] = LaurentPoly::one(Var::T);
        let mut m = BurauMatrix { entries: vec![vec![zero.clone(); n]; n] };
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                next.entries[i][i] = &next.entries[i][i] + &coeffs[n - k + 1];
            }
            let am = self * &next;
            let trace = (0..n).fold(zero.clone(), |acc, i| &acc + &am.entries[i][i]);
            coeffs[n - k] = divide_exact(&trace, -(k as i64));
            m = next;
        }
        coeffs
    }

    pub fn determinant(&self) -> LaurentPoly {
        let c0 = self.characteristic_polynomial().swap_remove(0);
        if self.size().is_multiple_of(2) {
            c0
        } else {
            c0.scale(-1)
        }
    }
}

fn divide_exact(p: &LaurentPoly, k: i64) -> LaurentPoly {
    let k = BigInt::from(k);
    LaurentPoly::from_half_terms(
        p.var(),
        p.half_terms().map(|(e, c)| {
            let (q, r) = c.div_rem(&k);
            assert!(r.is_zero(), "characteristic polynomial coefficient not divisible");
            (e, q)
        }),
    )
}

impl Mul for &BurauMatrix {
    type Output = BurauMatrix;
    fn mul(self, rhs: &BurauMatrix) -> BurauMatrix {
        let n = self.size();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .filter(|&k| !self.entries[i][k].is_zero() && !rhs.entries[k][j].is_zero())
                            .fold(LaurentPoly::zero(Var::T), |acc, k| {
                                &acc + &(&self.entries[i][k] * &rhs.entries[k][j])
                            })
                    })
                    .collect()
            })
            .collect();
        BurauMatrix { entries }
    }
}

/// `rho(b)`, the product of the generator images from left to right.
pub fn burau(b: &BraidWord) -> BurauMatrix {
    let l = b.strands();
    b.letters().iter().fold(BurauMatrix::identity(l - 1), |acc, &s| &acc * &BurauMatrix::generator(l, s))
}

/// `det(x I - rho(b)(y))`, unit-normalized: minimal degrees shifted to zero
/// and the lexicographically greatest term positive.
pub fn alexander_axis(b: &BraidWord) -> BiLaurent {
    let m = burau(b);
    let n = m.size();
    let det = if n <= 4 {
        let entries: Vec<Vec<BiLaurent>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let e = embed_y(m.get(i, j));
                        if i == j {
                            BiLaurent::x() - e
                        } else {
                            -e
                        }
                    })
                    .collect()
            })
            .collect();
        cofactor_det(&entries)
    } else {
        m.characteristic_polynomial()
            .iter()
            .enumerate()
            .fold(BiLaurent::zero(), |acc, (k, c)| acc + BiLaurent::monomial(1, k as i64, 0) * embed_y(c))
    };
    det.unit_normalized()
}

fn embed_y(p: &LaurentPoly) -> BiLaurent {
    BiLaurent::from_univariate_y(p).expect("Burau entries have integer exponents")
}

fn cofactor_det(m: &[Vec<BiLaurent>]) -> BiLaurent {
    let n = m.len();
    if n == 0 {
        return BiLaurent::one();
    }
    let mut acc = BiLaurent::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BiLaurent>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = entry * &cofactor_det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Number of terms of `(x - 1)(y - 1) p`, and whether it exceeds four.
pub fn delta_term_test(p: &BiLaurent) -> (usize, bool) {
    let factor = BiLaurent::from_terms([((1, 1), 1), ((1, 0), -1), ((0, 1), -1), ((0, 0), 1)]);
    let n = (&factor * p).term_count();
    (n, n > 4)
}
