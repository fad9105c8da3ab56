//! Diagrams drawn as a height function: cups, caps and crossings between
//! adjacent strands of a horizontal slice.

use std::collections::BTreeMap;

use super::{GaussCode, Passage};

/// Which strand of a crossing passes over, seen from below.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Over {
    /// The strand entering from the lower left.
    Left,
    Right,
}

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug)]
enum Point {
    Cup,
    /// Crossing index and port: 0 = SW, 1 = SE, 2 = NE, 3 = NW.
    Port(usize, usize),
}

/// Builder for a diagram read bottom to top.
///
/// Every point has one vertical edge and one partner: the opposite port of
/// its crossing, or the other end of its cup.
#[derive(Clone, Debug, Default)]
pub(crate) struct Morse {
    slice: Vec<usize>,
    kind: Vec<Point>,
    partner: Vec<usize>,
    edge: Vec<usize>,
    overs: Vec<Over>,
    cups: Vec<(usize, usize)>,
}

impl Morse {
    pub fn new() -> Morse {
        Morse::default()
    }

    fn point(&mut self, kind: Point) -> usize {
        self.kind.push(kind);
        self.partner.push(NONE);
        self.edge.push(NONE);
        self.kind.len() - 1
    }

    fn join(&mut self, a: usize, b: usize) {
        self.edge[a] = b;
        self.edge[b] = a;
    }

    /// New strands at slice positions `i` and `i + 1`. The component is
    /// oriented upward on the left end when this cup is the first it meets.
    pub fn cup(&mut self, i: usize) -> &mut Self {
        let a = self.point(Point::Cup);
        let b = self.point(Point::Cup);
        self.partner[a] = b;
        self.partner[b] = a;
        self.cups.push((a, b));
        self.slice.insert(i, b);
        self.slice.insert(i, a);
        self
    }

    /// Closes the strands at positions `i` and `i + 1`.
    pub fn cap(&mut self, i: usize) -> &mut Self {
        let (a, b) = (self.slice[i], self.slice[i + 1]);
        self.join(a, b);
        self.slice.drain(i..i + 2);
        self
    }

    /// Crosses the strands at positions `i` and `i + 1`.
    pub fn cross(&mut self, i: usize, over: Over) -> &mut Self {
        let k = self.overs.len();
        self.overs.push(over);
        let ports: Vec<usize> = (0..4).map(|p| self.point(Point::Port(k, p))).collect();
        self.partner[ports[0]] = ports[2];
        self.partner[ports[2]] = ports[0];
        self.partner[ports[1]] = ports[3];
        self.partner[ports[3]] = ports[1];
        let (l, r) = (self.slice[i], self.slice[i + 1]);
        self.join(l, ports[0]);
        self.join(r, ports[1]);
        self.slice[i] = ports[3];
        self.slice[i + 1] = ports[2];
        self
    }

    /// Traces components in order of their first cup.
    pub fn finish(&self) -> GaussCode {
        assert!(self.slice.is_empty(), "open strands remain in the Morse diagram");
        let n = self.overs.len();
        let mut visited = vec![false; self.kind.len()];
        let mut over_dir = vec![(0i64, 0i64); n];
        let mut under_dir = vec![(0i64, 0i64); n];
        let mut comps = Vec::new();
        for &(a, b) in &self.cups {
            if visited[a] {
                continue;
            }
            visited[a] = true;
            visited[b] = true;
            let mut passages = Vec::new();
            let mut cur = a;
            loop {
                let x = self.edge[cur];
                if x == b {
                    break;
                }
                let y = self.partner[x];
                visited[x] = true;
                visited[y] = true;
                if let Point::Port(k, p) = self.kind[x] {
                    let on_02 = p % 2 == 0;
                    let over = on_02 == (self.overs[k] == Over::Left);
                    let dir = match p {
                        0 => (1, 1),
                        1 => (-1, 1),
                        2 => (-1, -1),
                        _ => (1, -1),
                    };
                    if over {
                        over_dir[k] = dir;
                    } else {
                        under_dir[k] = dir;
                    }
                    passages.push(Passage { crossing: k, over });
                }
                cur = y;
            }
            comps.push(passages);
        }
        let signs = (0..n)
            .map(|k| {
                let (o, u) = (over_dir[k], under_dir[k]);
                if o.0 * u.1 - o.1 * u.0 > 0 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        GaussCode { signs, comps, basepoints: BTreeMap::new() }
    }
}
