//! The right-angled Artin group of a path,
//! `G = <g_1, ..., g_m | [g_i, g_{i+1}] = 1>`.
//!
//! A word is reduced when no letter `g_i^e` is followed later by
//! `g_i^-e` with only letters of `C_i` (indices `i-1, i, i+1`) in between.
//! Reduced words represent the same element exactly when they differ by
//! swapping adjacent commuting letters, so an element has a canonical form:
//! reduce, then list letters greedily, always taking the least letter that
//! can be commuted to the front.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `g_gen^exp` with `exp = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: usize, exp: i8) -> Letter {
        assert!(exp == 1 || exp == -1, "letter exponent must be ±1");
        Letter { gen, exp }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, exp: -self.exp }
    }

    /// Distinct letters commute iff their generators are adjacent.
    fn commutes(self, other: Letter) -> bool {
        self.gen.abs_diff(other.gen) == 1
    }

    /// Ordering used by the canonical form: generator first, then `-1` before `+1`.
    fn key(self) -> (usize, i8) {
        (self.gen, self.exp)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RaagWord {
    pub letters: Vec<Letter>,
}

impl RaagWord {
    pub fn empty() -> RaagWord {
        RaagWord::default()
    }

    /// From `(generator, exponent)` pairs; exponents of larger size expand to runs.
    pub fn from_pairs(pairs: &[(usize, i32)]) -> RaagWord {
        let letters = pairs
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n(Letter::new(g, e.signum() as i8), e.unsigned_abs() as usize))
            .collect();
        RaagWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &RaagWord) -> RaagWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        RaagWord { letters }
    }

    /// The formal inverse (reversed, each letter inverted).
    pub fn inverted(&self) -> RaagWord {
        RaagWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn pow(&self, k: i64) -> RaagWord {
        let base = if k < 0 { self.inverted() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        RaagWord { letters }
    }
}

impl fmt::Display for RaagWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if l.exp < 0 {
                write!(f, "g{}^-1", l.gen)?;
            } else {
                write!(f, "g{}", l.gen)?;
            }
        }
        Ok(())
    }
}

impl FromStr for RaagWord {
    type Err = Error;

    /// Comma-separated tokens `g3`, `g3^-1` (or `g3^k` for a run); `""` and
    /// `"1"` are the empty word.
    fn from_str(s: &str) -> Result<RaagWord> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(RaagWord::empty());
        }
        let mut pairs = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let bad = || Error::Parse(format!("bad word token {tok:?}"));
            let rest = tok.strip_prefix('g').ok_or_else(bad)?;
            let (gen, exp) = match rest.split_once('^') {
                Some((g, e)) => (g, e.parse::<i32>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let gen: usize = gen.parse().map_err(|_| bad())?;
            if gen == 0 || exp == 0 {
                return Err(bad());
            }
            pairs.push((gen, exp));
        }
        Ok(RaagWord::from_pairs(&pairs))
    }
}

/// Canonical reduced word of a group element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NormalForm(RaagWord);

impl NormalForm {
    pub fn word(&self) -> &RaagWord {
        &self.0
    }

    pub fn into_word(self) -> RaagWord {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `u g_1 u^-1 v g_m v^-1 = g_1 g_m`
    Plus,
    /// `u g_1 u^-1 v g_m^-1 v^-1 = g_1 g_m^-1`
    Minus,
}

/// Largest branching `(2m - 1)^len` accepted by [`PathRaag::enumerate_elements`]
/// (the size of the length-7 search for `m = 4`).
pub const ENUMERATION_BUDGET: u64 = 823_543;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRaag {
    m: usize,
}

impl PathRaag {
    pub fn new(m: usize) -> Result<PathRaag> {
        if m < 2 {
            return Err(Error::BadParameters(format!("path RAAG needs at least 2 generators, got {m}")));
        }
        Ok(PathRaag { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn generator(&self, i: usize) -> RaagWord {
        RaagWord { letters: vec![Letter::new(i, 1)] }
    }

    /// Generator indices whose letters make up `C_i`.
    pub fn c_set(&self, i: usize) -> BTreeSet<usize> {
        (i.saturating_sub(1).max(1)..=(i + 1).min(self.m)).collect()
    }

    fn in_c(&self, i: usize, l: Letter) -> bool {
        l.gen.abs_diff(i) <= 1
    }

    pub fn check(&self, w: &RaagWord) -> Result<()> {
        match w.letters.iter().find(|l| l.gen == 0 || l.gen > self.m) {
            Some(l) => Err(Error::BadParameters(format!("generator g{} out of range 1..={}", l.gen, self.m))),
            None => Ok(()),
        }
    }

    pub fn is_reduced(&self, w: &RaagWord) -> bool {
        self.cancelable_pair(&w.letters).is_none()
    }

    /// First pair `u < v` of mutually inverse letters with only `C_i` letters between.
    fn cancelable_pair(&self, letters: &[Letter]) -> Option<(usize, usize)> {
        for (u, &x) in letters.iter().enumerate() {
            for (v, &y) in letters.iter().enumerate().skip(u + 1) {
                if y == x.inverse() {
                    return Some((u, v));
                }
                if !self.in_c(x.gen, y) {
                    break;
                }
            }
        }
        None
    }

    fn reduce(&self, w: &RaagWord) -> Vec<Letter> {
        let mut letters = w.letters.clone();
        while let Some((u, v)) = self.cancelable_pair(&letters) {
            letters.remove(v);
            letters.remove(u);
        }
        letters
    }

    pub fn canonical(&self, w: &RaagWord) -> NormalForm {
        let mut rest = self.reduce(w);
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            // letters that commute with everything before them
            let mut best: Option<usize> = None;
            for p in 0..rest.len() {
                if rest[..p].iter().all(|&x| x.commutes(rest[p])) && best.is_none_or(|b| rest[p].key() < rest[b].key())
                {
                    best = Some(p);
                }
            }
            out.push(rest.remove(best.expect("the first letter is always movable")));
        }
        NormalForm(RaagWord { letters: out })
    }

    pub fn equal(&self, a: &RaagWord, b: &RaagWord) -> bool {
        self.canonical(a) == self.canonical(b)
    }

    pub fn multiply(&self, a: &RaagWord, b: &RaagWord) -> NormalForm {
        self.canonical(&a.concat(b))
    }

    pub fn inverse(&self, w: &RaagWord) -> NormalForm {
        self.canonical(&w.inverted())
    }

    /// Length of any reduced presentation.
    pub fn length(&self, w: &RaagWord) -> usize {
        self.reduce(w).len()
    }

    /// Whether `w` commutes with `g_i`, i.e. every letter of its reduced form lies in `C_i`.
    pub fn centralizes_generator(&self, w: &RaagWord, i: usize) -> bool {
        self.reduce(w).iter().all(|&l| self.in_c(i, l))
    }

    fn conj_target(&self, variant: Variant) -> Letter {
        Letter::new(self.m, if variant == Variant::Plus { 1 } else { -1 })
    }

    fn require_m4(&self) -> Result<()> {
        if self.m < 4 {
            return Err(Error::RequiresMAtLeast4(self.m));
        }
        Ok(())
    }

    /// Tests `u g_1 u^-1 . v g_m^±1 v^-1 = g_1 g_m^±1`.
    pub fn is_conj_solution(&self, u: &RaagWord, v: &RaagWord, variant: Variant) -> Result<bool> {
        self.require_m4()?;
        let gm = RaagWord { letters: vec![self.conj_target(variant)] };
        let g1 = self.generator(1);
        let lhs = u.concat(&g1).concat(&u.inverted()).concat(v).concat(&gm).concat(&v.inverted());
        Ok(self.equal(&lhs, &g1.concat(&gm)))
    }

    /// Writes a solution as `u = h^k u'`, `v = h^k v'` with `h = g_1 g_m^±1`,
    /// `u'` commuting with `g_1` and `v'` commuting with `g_m`.
    pub fn conj_solution_decompose(
        &self,
        u: &RaagWord,
        v: &RaagWord,
        variant: Variant,
    ) -> Result<(i64, NormalForm, NormalForm)> {
        if !self.is_conj_solution(u, v, variant)? {
            return Err(Error::NotASolution);
        }
        let h = RaagWord { letters: vec![Letter::new(1, 1), self.conj_target(variant)] };
        // |k| is bounded by the length of u: the g_m letters of h^k cannot cancel against C_1
        let bound = self.length(u) as i64 + 1;
        for k in (0..=bound).flat_map(|k| [k, -k]) {
            let strip = h.pow(-k);
            let u1 = self.multiply(&strip, u);
            let v1 = self.multiply(&strip, v);
            if self.centralizes_generator(u1.word(), 1) && self.centralizes_generator(v1.word(), self.m) {
                return Ok((k, u1, v1));
            }
        }
        Err(Error::NotASolution)
    }

    /// Every element of length at most `max_len`, in order of length and
    /// then canonical form.
    pub fn enumerate_elements(&self, max_len: usize) -> Result<Vec<NormalForm>> {
        let branching = (2 * self.m - 1) as u64;
        let cost = (0..max_len).try_fold(1u64, |acc, _| acc.checked_mul(branching));
        if cost.is_none_or(|c| c > ENUMERATION_BUDGET) {
            return Err(Error::BudgetExceeded(format!("{max_len} letters over {} generators", self.m)));
        }
        let letters: Vec<Letter> = (1..=self.m).flat_map(|g| [Letter::new(g, -1), Letter::new(g, 1)]).collect();
        let mut out = vec![NormalForm::default()];
        let mut seen: HashSet<NormalForm> = out.iter().cloned().collect();
        let mut layer = out.clone();
        for len in 1..=max_len {
            let mut next: Vec<NormalForm> = Vec::new();
            for w in &layer {
                for &l in &letters {
                    let c = self.canonical(&w.word().concat(&RaagWord { letters: vec![l] }));
                    if c.len() == len && seen.insert(c.clone()) {
                        next.push(c);
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            layer = next;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests;
