//! Graph families: the five analytic families, preferential attachment, and
//! the composite constructions used by the experiment scenarios.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Seed wrapper for every random construction in the crate.
///
/// Expanding the seed through ChaCha8 keeps generated graphs identical
/// across platforms and runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RandomSource {
    seed: u64,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Fresh deterministic generator; every call restarts the stream.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// The five graph families with known closed-form Q-spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFamily {
    /// K_n.
    Complete { n: usize },
    /// K_{n,m} with parts [0, n) and [n, n+m).
    CompleteBipartite { n: usize, m: usize },
    /// C_n.
    Cycle { n: usize },
    /// P_n.
    Path { n: usize },
    /// S_n: vertex 0 is the center with n − 1 leaves.
    Star { n: usize },
}

impl GraphFamily {
    /// Total vertex count.
    pub fn order(&self) -> usize {
        match *self {
            GraphFamily::Complete { n }
            | GraphFamily::Cycle { n }
            | GraphFamily::Path { n }
            | GraphFamily::Star { n } => n,
            GraphFamily::CompleteBipartite { n, m } => n + m,
        }
    }

    /// Short label such as `complete(4)` for summaries and messages.
    pub fn label(&self) -> String {
        match *self {
            GraphFamily::Complete { n } => format!("complete({n})"),
            GraphFamily::CompleteBipartite { n, m } => format!("complete_bipartite({n},{m})"),
            GraphFamily::Cycle { n } => format!("cycle({n})"),
            GraphFamily::Path { n } => format!("path({n})"),
            GraphFamily::Star { n } => format!("star({n})"),
        }
    }
}

/// Build the standard member of a family.
pub fn build_family(family: GraphFamily) -> Result<Graph> {
    match family {
        GraphFamily::Complete { n } => {
            require_min(n, 1, "complete")?;
            let mut edges = Vec::with_capacity(n * (n - 1) / 2);
            for u in 0..n {
                for v in (u + 1)..n {
                    edges.push((u, v));
                }
            }
            Graph::from_edges(n, &edges)
        }
        GraphFamily::CompleteBipartite { n, m } => {
            require_min(n, 1, "complete_bipartite")?;
            require_min(m, 1, "complete_bipartite")?;
            let mut edges = Vec::with_capacity(n * m);
            for u in 0..n {
                for v in n..(n + m) {
                    edges.push((u, v));
                }
            }
            Graph::from_edges(n + m, &edges)
        }
        GraphFamily::Cycle { n } => {
            require_min(n, 3, "cycle")?;
            let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
            Graph::from_edges(n, &edges)
        }
        GraphFamily::Path { n } => {
            require_min(n, 1, "path")?;
            let edges: Vec<_> = (0..n.saturating_sub(1)).map(|u| (u, u + 1)).collect();
            Graph::from_edges(n, &edges)
        }
        GraphFamily::Star { n } => {
            require_min(n, 1, "star")?;
            let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
            Graph::from_edges(n, &edges)
        }
    }
}

fn require_min(size: usize, min: usize, family: &str) -> Result<()> {
    if size < min {
        return Err(Error::InvalidParameter(format!(
            "{family} requires size at least {min}, got {size}"
        )));
    }
    Ok(())
}

/// Barabási–Albert preferential attachment.
///
/// Starts from a clique on `m_attach + 1` vertices; every later vertex
/// attaches to `m_attach` distinct existing vertices drawn with probability
/// proportional to their current degree (sampling without replacement), so
/// the minimum degree is exactly `m_attach`.
pub fn barabasi_albert(n: usize, m_attach: usize, source: RandomSource) -> Result<Graph> {
    if m_attach < 1 || m_attach >= n {
        return Err(Error::InvalidParameter(format!(
            "barabasi_albert requires 1 <= m_attach < n, got m_attach={m_attach}, n={n}"
        )));
    }
    let seed_n = m_attach + 1;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // Each endpoint of each edge appears once in `weighted`, so a uniform
    // draw from it is a degree-proportional draw over vertices.
    let mut weighted: Vec<usize> = Vec::new();
    for u in 0..seed_n {
        for v in (u + 1)..seed_n {
            edges.push((u, v));
            weighted.push(u);
            weighted.push(v);
        }
    }
    let mut rng = source.rng();
    let mut chosen: Vec<usize> = Vec::with_capacity(m_attach);
    for v in seed_n..n {
        chosen.clear();
        while chosen.len() < m_attach {
            let pick = weighted[rng.random_range(0..weighted.len())];
            if !chosen.contains(&pick) {
                chosen.push(pick);
            }
        }
        for &u in &chosen {
            edges.push((u, v));
            weighted.push(u);
            weighted.push(v);
        }
    }
    Graph::from_edges(n, &edges)
}

/// Copy `g` and attach one fresh vertex (id `g.n()`) to `target`.
pub fn add_pendant(g: &Graph, target: usize) -> Result<Graph> {
    if target >= g.n() {
        return Err(Error::InvalidParameter(format!(
            "pendant target {target} out of range for {} vertices",
            g.n()
        )));
    }
    let mut edges = g.edges();
    edges.push((target, g.n()));
    Graph::from_edges(g.n() + 1, &edges)
}

/// Join `g1` and `g2` with a fresh path of `path_len` vertices.
///
/// Blocks keep their internal structure: `g1` occupies ids [0, n1), the
/// path the next `path_len` ids, and `g2` is shifted after the path. One
/// edge joins `anchor1` to the path head, one joins the path tail to
/// `anchor2` (shifted).
pub fn bridge_compose(
    g1: &Graph,
    path_len: usize,
    g2: &Graph,
    anchor1: usize,
    anchor2: usize,
) -> Result<Graph> {
    if path_len < 1 {
        return Err(Error::InvalidParameter(
            "bridge path must have at least one vertex".into(),
        ));
    }
    if anchor1 >= g1.n() || anchor2 >= g2.n() {
        return Err(Error::InvalidParameter(format!(
            "bridge anchors ({anchor1}, {anchor2}) out of range for blocks of {} and {} vertices",
            g1.n(),
            g2.n()
        )));
    }
    let n1 = g1.n();
    let path_start = n1;
    let path_end = n1 + path_len - 1;
    let offset2 = n1 + path_len;
    let mut edges = g1.edges();
    for k in path_start..path_end {
        edges.push((k, k + 1));
    }
    for (u, v) in g2.edges() {
        edges.push((u + offset2, v + offset2));
    }
    edges.push((anchor1, path_start));
    edges.push((path_end, anchor2 + offset2));
    Graph::from_edges(offset2 + g2.n(), &edges)
}
