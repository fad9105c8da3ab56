use clap::Subcommand;
use khof::diagrams::{
    forest_link, from_braid_closure, hopf, l4a1, luv_diagram, trefoil, unknot, unlink, BraidWord, Diagram, ForestGraph,
    Handedness,
};
use khof::{Error, Result};

/// A generated diagram.
#[derive(Debug, Clone, Subcommand)]
pub enum Source {
    /// The cycle family L_{u,v} (u >= 3).
    Luv {
        u: usize,
        #[arg(allow_negative_numbers = true)]
        v: i64,
    },
    /// Forest link of a graph given as 1-based edges "1-2,2-3"; append ":-"
    /// for a negative clasp ("1-2:-").
    Forest {
        edges: String,
        /// Vertex count; defaults to the largest vertex in the edge list.
        #[arg(long)]
        vertices: Option<usize>,
    },
    /// Closure of a braid on `strands` strands, letters like "1,-2,1".
    Braid {
        strands: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// unknot, unlink-N, hopf+, hopf-, trefoil-left, trefoil-right, l4a1.
    Named { name: String },
}

impl Source {
    pub fn build(&self) -> Result<Diagram> {
        match self {
            Source::Luv { u, v } => luv_diagram(*u, *v),
            Source::Forest { edges, vertices } => forest_link(&parse_forest(edges, *vertices)?),
            Source::Braid { strands, word } => Ok(from_braid_closure(&BraidWord::new(*strands, parse_braid(word)?)?)),
            Source::Named { name } => named(name),
        }
    }
}

pub fn parse_forest(edges: &str, vertices: Option<usize>) -> Result<ForestGraph> {
    let mut list = Vec::new();
    for tok in edges.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let bad = || Error::Parse(format!("bad edge {tok:?}; expected a-b or a-b:-"));
        let (pair, sign) = match tok.split_once(':') {
            Some((p, "-" | "-1")) => (p, -1),
            Some((p, "+" | "+1" | "1")) => (p, 1),
            Some(_) => return Err(bad()),
            None => (tok, 1),
        };
        let (a, b) = pair.split_once('-').ok_or_else(bad)?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a == 0 || b == 0 {
            return Err(Error::Parse(format!("vertices are numbered from 1 in {tok:?}")));
        }
        list.push((a - 1, b - 1, sign));
    }
    let n = vertices.unwrap_or_else(|| list.iter().map(|&(a, b, _)| a.max(b) + 1).max().unwrap_or(1));
    ForestGraph::new(n, list)
}

pub fn parse_braid(word: &str) -> Result<Vec<i32>> {
    word.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i32>().map_err(|_| Error::Parse(format!("bad braid letter {t:?}"))))
        .collect()
}

fn named(name: &str) -> Result<Diagram> {
    Ok(match name {
        "unknot" => unknot(),
        "hopf+" | "hopf" => hopf(1),
        "hopf-" => hopf(-1),
        "trefoil-left" | "trefoil" => trefoil(Handedness::Left),
        "trefoil-right" => trefoil(Handedness::Right),
        "l4a1" => l4a1(),
        _ => match name.strip_prefix("unlink-").and_then(|n| n.parse().ok()) {
            Some(n) if n > 0 => unlink(n),
            _ => return Err(Error::Parse(format!("unknown diagram name {name:?}"))),
        },
    })
}
