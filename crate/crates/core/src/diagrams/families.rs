use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::morse::{Morse, Over};
use super::Diagram;
use crate::error::{Error, Result};

/// A braid on `strands` strands; letter `i` is the generator between
/// strands `|i|` and `|i| + 1`, positive or inverted by its sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<BraidWord> {
        if strands == 0 {
            return Err(Error::BadParameters("a braid needs at least one strand".into()));
        }
        if let Some(bad) = letters.iter().find(|&&i| i == 0 || i.unsigned_abs() as usize >= strands) {
            return Err(Error::BadParameters(format!("letter {bad} out of range for {strands} strands")));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|i| -i).collect() }
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Handedness {
    Left,
    Right,
}

pub fn unknot() -> Diagram {
    unlink(1)
}

pub fn unlink(n: usize) -> Diagram {
    Diagram { crossings: vec![], components: vec![], free_loops: n, basepoints: BTreeMap::new() }
}

/// Closure of the two-strand braid with `2·sign` half twists; linking number `sign`.
pub fn hopf(sign: i8) -> Diagram {
    let s = if sign >= 0 { 1 } else { -1 };
    from_braid_closure(&BraidWord { strands: 2, letters: vec![s, s] })
}

pub fn trefoil(hand: Handedness) -> Diagram {
    let s = if hand == Handedness::Right { 1 } else { -1 };
    from_braid_closure(&BraidWord { strands: 2, letters: vec![s; 3] })
}

/// The (2,4) torus link with both strands oriented alike (linking number 2).
pub fn l4a1() -> Diagram {
    from_braid_closure(&BraidWord { strands: 2, letters: vec![1; 4] })
}

/// Trace closure with every strand oriented upward through the braid.
/// Components are numbered by the lowest strand they contain.
pub fn from_braid_closure(b: &BraidWord) -> Diagram {
    let l = b.strands;
    let mut m = Morse::new();
    for k in 0..l {
        m.cup(k);
    }
    for &i in &b.letters {
        let over = if i > 0 { Over::Left } else { Over::Right };
        m.cross(i.unsigned_abs() as usize - 1, over);
    }
    for k in (0..l).rev() {
        m.cap(k);
    }
    m.finish().to_diagram()
}

/// Free choices in the drawing of the cycle-of-unknots family; fixed by
/// [`LUV_LAYOUT`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct LuvLayout {
    pub first_clasp: Over,
    pub chain_clasp: Over,
    pub last_clasp: Over,
    /// Crossing kind of the twist region for positive `v`.
    pub twist: Over,
    pub reverse_outer: bool,
    pub alternate_rings: bool,
}

/// The layout matching the reference values V(L_{3,-1}) = 2 + t^2 + t^4 and
/// V(L_{3,0}) = t^7 - t^6 + 3t^5 - t^4 + 3t^3 - 2t^2 + t. It is the only one of
/// the 64 combinations below that does; with it every ring is oriented
/// upward on its left side and the outer band upward on its left side.
pub(crate) const LUV_LAYOUT: LuvLayout = LuvLayout {
    first_clasp: Over::Right,
    chain_clasp: Over::Right,
    last_clasp: Over::Right,
    twist: Over::Left,
    reverse_outer: false,
    alternate_rings: false,
};

/// The `u`-component cycle of unknots with a `v`-crossing twist region.
///
/// Components `0..u-1` are the rings of a chain; component `u - 1` is the
/// outer loop, a band clasping the first ring at one end and the last ring at
/// the other, twisted `|v|` times in between.
pub fn luv_diagram(u: usize, v: i64) -> Result<Diagram> {
    if u < 3 {
        return Err(Error::BadParameters(format!("u must be at least 3, got {u}")));
    }
    Ok(luv_with_layout(u, v, &LUV_LAYOUT))
}

fn flip(o: Over) -> Over {
    match o {
        Over::Left => Over::Right,
        Over::Right => Over::Left,
    }
}

pub(crate) fn luv_with_layout(u: usize, v: i64, lay: &LuvLayout) -> Diagram {
    let clasp = |m: &mut Morse, i: usize, o: Over| {
        m.cross(i, o).cross(i, o);
    };
    let mut m = Morse::new();
    // outer band: slice [outer_l, outer_r]
    m.cup(0);
    // first ring clasps the lower end of the band
    m.cup(0);
    clasp(&mut m, 1, lay.first_clasp);
    let twist = if v >= 0 { lay.twist } else { flip(lay.twist) };
    for _ in 0..v.unsigned_abs() {
        m.cross(2, twist);
    }
    // each further ring clasps the previous one, which is then closed
    for _ in 1..u - 1 {
        m.cup(0);
        clasp(&mut m, 1, lay.chain_clasp);
        m.cap(2);
    }
    // last ring clasps the upper end of the band
    clasp(&mut m, 1, lay.last_clasp);
    m.cap(0).cap(0);
    let mut g = m.finish();
    // traced order is outer, ring 1, ..., ring u-1 by cup creation
    // (each ring's cup precedes the next ring's)
    if lay.reverse_outer {
        g = g.reversed(0);
    }
    if lay.alternate_rings {
        for r in (2..u).step_by(2) {
            g = g.reversed(r);
        }
    }
    let perm: Vec<usize> = (1..u).chain(std::iter::once(0)).collect();
    g.permuted(&perm).to_diagram()
}
