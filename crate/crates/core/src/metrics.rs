//! Classical node centralities (degree, clustering, closeness, betweenness)
//! and the rigidity measures r and r̃, plus the per-node comparison table
//! against the principal eigenvector.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::SpectralDecomposition;

/// Rigidity parameters: neighbourhood influence p ∈ [0, 1] and the
/// clustering weight p̃ ≥ 0.
#[derive(Debug, Clone, Copy)]
pub struct RigidityParams {
    p: f64,
    p_tilde: f64,
}

impl RigidityParams {
    pub fn new(p: f64, p_tilde: f64) -> Result<Self> {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "p must lie in [0, 1], got {p}"
            )));
        }
        if !p_tilde.is_finite() || p_tilde < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "p_tilde must be nonnegative, got {p_tilde}"
            )));
        }
        Ok(Self { p, p_tilde })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn p_tilde(&self) -> f64 {
        self.p_tilde
    }
}

/// One row of the per-node comparison table.
#[derive(Debug, Clone, Copy)]
pub struct NodeRow {
    pub node: usize,
    pub degree: usize,
    pub clustering: f64,
    pub closeness: f64,
    pub betweenness: f64,
    pub r: f64,
    pub r_tilde: f64,
    /// Component of the node in the sign-normalized eigenvector of q_n.
    pub ev_component: f64,
}

/// Full per-node table; `disconnected` flags that closeness was computed
/// per component.
#[derive(Debug, Clone)]
pub struct RigidityReport {
    pub rows: Vec<NodeRow>,
    pub disconnected: bool,
    pub p: f64,
    pub p_tilde: f64,
}

/// Clustering coefficient: fraction of realized edges among the neighbours
/// of `i`; zero by convention for degree ≤ 1.
pub fn clustering(g: &Graph, i: usize) -> f64 {
    assert!(i < g.n(), "node {i} out of range");
    let neighbors = g.neighbors(i);
    let deg = neighbors.len();
    if deg <= 1 {
        return 0.0;
    }
    let mut links = 0usize;
    for (idx, &u) in neighbors.iter().enumerate() {
        for &v in &neighbors[idx + 1..] {
            if g.has_edge(u, v) {
                links += 1;
            }
        }
    }
    2.0 * links as f64 / (deg * (deg - 1)) as f64
}

/// Closeness centrality (c − 1) / Σ_j d(i, j), where c and the distance sum
/// range over i's connected component; isolated nodes score 0.
pub fn closeness(g: &Graph, i: usize) -> f64 {
    assert!(i < g.n(), "node {i} out of range");
    let mut reached = 0usize;
    let mut total = 0usize;
    for d in g.bfs_distances(i).into_iter().flatten() {
        reached += 1;
        total += d;
    }
    if reached <= 1 {
        return 0.0;
    }
    (reached - 1) as f64 / total as f64
}

/// Unnormalized shortest-path betweenness Σ_{s<t, s≠i≠t} σ_st(i)/σ_st of a
/// single node.
pub fn betweenness(g: &Graph, i: usize) -> f64 {
    assert!(i < g.n(), "node {i} out of range");
    betweenness_all(g)[i]
}

/// Betweenness of every node via Brandes' accumulation; each BFS source
/// contributes its dependencies, and the undirected double count is halved.
pub fn betweenness_all(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let mut score = vec![0.0; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        sigma.fill(0.0);
        dist.fill(usize::MAX);
        delta.fill(0.0);
        for p in preds.iter_mut() {
            p.clear();
        }
        order.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        for &w in order.iter().rev() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                score[w] += delta[w];
            }
        }
    }
    // Each unordered pair was counted from both endpoints.
    for x in score.iter_mut() {
        *x *= 0.5;
    }
    score
}

/// Betweenness rescaled by the pair count (n−1)(n−2)/2; zero for n < 3.
pub fn betweenness_normalized(g: &Graph, i: usize) -> f64 {
    let n = g.n();
    if n < 3 {
        return 0.0;
    }
    betweenness(g, i) / ((n - 1) * (n - 2) / 2) as f64
}

/// Rigidity r(i) = deg(i) + Σ_{k=1..3} pᵏ · avgdeg(shell k of i); empty
/// shells contribute 0.
pub fn rigidity(g: &Graph, i: usize, params: &RigidityParams) -> f64 {
    assert!(i < g.n(), "node {i} out of range");
    let mut r = g.degree(i) as f64;
    let mut weight = 1.0;
    for k in 1..=3 {
        weight *= params.p();
        let shell = g.shell(i, k).expect("validated node and shell depth");
        if shell.is_empty() {
            continue;
        }
        let total: usize = shell.members.iter().map(|&j| g.degree(j)).sum();
        r += weight * total as f64 / shell.len() as f64;
    }
    r
}

/// r̃(i) = r(i) + Clust(i)·p̃·deg(i).
pub fn rigidity_tilde(g: &Graph, i: usize, params: &RigidityParams) -> f64 {
    rigidity(g, i, params) + clustering(g, i) * params.p_tilde() * g.degree(i) as f64
}

/// Per-node table of all centralities, rigidities, and the component of the
/// sign-normalized q_n-eigenvector.
pub fn compare_with_eigenvector(
    g: &Graph,
    dec: &SpectralDecomposition,
    params: &RigidityParams,
) -> Result<RigidityReport> {
    let n = g.n();
    if dec.n() != n {
        return Err(Error::InvalidParameter(format!(
            "decomposition has {} modes, graph has {n} vertices",
            dec.n()
        )));
    }
    if n == 0 {
        return Ok(RigidityReport {
            rows: Vec::new(),
            disconnected: false,
            p: params.p(),
            p_tilde: params.p_tilde(),
        });
    }
    let betweenness = betweenness_all(g);
    let (_, principal) = dec.smallest_eigenpair();
    let rows = (0..n)
        .map(|i| NodeRow {
            node: i,
            degree: g.degree(i),
            clustering: clustering(g, i),
            closeness: closeness(g, i),
            betweenness: betweenness[i],
            r: rigidity(g, i, params),
            r_tilde: rigidity_tilde(g, i, params),
            ev_component: principal[i],
        })
        .collect();
    Ok(RigidityReport {
        rows,
        disconnected: !g.is_connected(),
        p: params.p(),
        p_tilde: params.p_tilde(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, GraphFamily};
    use crate::spectral::{eigendecompose, signless_laplacian, DEFAULT_TOL};

    fn family(f: GraphFamily) -> Graph {
        build_family(f).unwrap()
    }

    #[test]
    fn clustering_values() {
        let k3 = family(GraphFamily::Complete { n: 3 });
        assert_eq!(clustering(&k3, 0), 1.0);
        let star = family(GraphFamily::Star { n: 5 });
        assert_eq!(clustering(&star, 0), 0.0);
        assert_eq!(clustering(&star, 1), 0.0);
        // Triangle with a tail: the tailed vertex keeps 1 of 3 possible links.
        let paw = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap();
        assert!((clustering(&paw, 0) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(clustering(&paw, 1), 1.0);
        assert_eq!(clustering(&paw, 3), 0.0);
    }

    #[test]
    fn closeness_values() {
        let p3 = family(GraphFamily::Path { n: 3 });
        assert_eq!(closeness(&p3, 1), 1.0);
        assert!((closeness(&p3, 0) - 2.0 / 3.0).abs() < 1e-15);
        let k4 = family(GraphFamily::Complete { n: 4 });
        assert_eq!(closeness(&k4, 0), 1.0);
    }

    #[test]
    fn closeness_disconnected() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(closeness(&g, 0), 1.0);
        assert_eq!(closeness(&g, 2), 1.0);
        assert_eq!(closeness(&g, 4), 0.0);
    }

    #[test]
    fn betweenness_values() {
        let p3 = family(GraphFamily::Path { n: 3 });
        assert_eq!(betweenness(&p3, 1), 1.0);
        assert_eq!(betweenness(&p3, 0), 0.0);
        let k4 = family(GraphFamily::Complete { n: 4 });
        assert_eq!(betweenness(&k4, 2), 0.0);
        let star = family(GraphFamily::Star { n: 5 });
        assert_eq!(betweenness(&star, 0), 6.0);
        let p5 = family(GraphFamily::Path { n: 5 });
        assert_eq!(betweenness(&p5, 1), 3.0);
        assert_eq!(betweenness(&p5, 2), 4.0);
        // Equal-length alternatives split the pair weight.
        let c4 = family(GraphFamily::Cycle { n: 4 });
        for i in 0..4 {
            assert!((betweenness(&c4, i) - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn betweenness_normalization() {
        let star = family(GraphFamily::Star { n: 5 });
        assert_eq!(betweenness_normalized(&star, 0), 1.0);
        let p2 = family(GraphFamily::Path { n: 2 });
        assert_eq!(betweenness_normalized(&p2, 0), 0.0);
    }

    #[test]
    fn rigidity_values() {
        let k4 = family(GraphFamily::Complete { n: 4 });
        let p0 = RigidityParams::new(0.0, 0.5).unwrap();
        assert_eq!(rigidity(&k4, 0, &p0), 3.0);
        let half = RigidityParams::new(0.5, 0.5).unwrap();
        assert!((rigidity(&k4, 0, &half) - 4.5).abs() < 1e-12);
        let c6 = family(GraphFamily::Cycle { n: 6 });
        assert!((rigidity(&c6, 2, &half) - 3.75).abs() < 1e-12);
        let star = family(GraphFamily::Star { n: 5 });
        assert!((rigidity(&star, 0, &half) - 4.5).abs() < 1e-12);
        assert!((rigidity(&star, 1, &half) - 3.25).abs() < 1e-12);
    }

    #[test]
    fn rigidity_tilde_values() {
        let k3 = family(GraphFamily::Complete { n: 3 });
        let params = RigidityParams::new(0.5, 0.1).unwrap();
        assert!((rigidity(&k3, 0, &params) - 3.0).abs() < 1e-12);
        assert!((rigidity_tilde(&k3, 0, &params) - 3.2).abs() < 1e-12);
        // Zero clustering leaves r untouched.
        let star = family(GraphFamily::Star { n: 5 });
        let params = RigidityParams::new(0.5, 2.0).unwrap();
        assert_eq!(rigidity_tilde(&star, 0, &params), rigidity(&star, 0, &params));
    }

    #[test]
    fn params_validation() {
        assert!(RigidityParams::new(0.0, 0.0).is_ok());
        assert!(RigidityParams::new(1.0, 3.0).is_ok());
        assert!(RigidityParams::new(-0.1, 0.5).is_err());
        assert!(RigidityParams::new(1.1, 0.5).is_err());
        assert!(RigidityParams::new(0.5, -0.5).is_err());
    }

    #[test]
    fn report_symmetric_graph() {
        let g = family(GraphFamily::Complete { n: 3 });
        let dec = eigendecompose(&signless_laplacian(&g), DEFAULT_TOL).unwrap();
        let params = RigidityParams::new(0.5, 0.5).unwrap();
        let report = compare_with_eigenvector(&g, &dec, &params).unwrap();
        assert_eq!(report.rows.len(), 3);
        assert!(!report.disconnected);
        // All centrality and rigidity columns agree by vertex-transitivity;
        // the eigenvector column cannot (q_n sits in a degenerate eigenspace
        // whose individual vectors are not vertex-symmetric).
        for row in &report.rows[1..] {
            assert_eq!(row.degree, report.rows[0].degree);
            assert_eq!(row.clustering, report.rows[0].clustering);
            assert_eq!(row.closeness, report.rows[0].closeness);
            assert_eq!(row.betweenness, report.rows[0].betweenness);
            assert_eq!(row.r, report.rows[0].r);
            assert_eq!(row.r_tilde, report.rows[0].r_tilde);
        }
    }

    #[test]
    fn report_star_sign_opposition() {
        let g = family(GraphFamily::Star { n: 50 });
        let dec = eigendecompose(&signless_laplacian(&g), DEFAULT_TOL).unwrap();
        let params = RigidityParams::new(0.5, 0.5).unwrap();
        let report = compare_with_eigenvector(&g, &dec, &params).unwrap();
        let center = report.rows[0].ev_component;
        for row in &report.rows[1..] {
            assert!(center * row.ev_component < 0.0);
        }
    }

    #[test]
    fn report_flags_disconnection() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let dec = eigendecompose(&signless_laplacian(&g), DEFAULT_TOL).unwrap();
        let params = RigidityParams::new(0.5, 0.5).unwrap();
        let report = compare_with_eigenvector(&g, &dec, &params).unwrap();
        assert!(report.disconnected);
    }

    #[test]
    fn report_rejects_mismatched_decomposition() {
        let g = family(GraphFamily::Path { n: 4 });
        let other = family(GraphFamily::Path { n: 3 });
        let dec = eigendecompose(&signless_laplacian(&other), DEFAULT_TOL).unwrap();
        let params = RigidityParams::new(0.5, 0.5).unwrap();
        assert!(compare_with_eigenvector(&g, &dec, &params).is_err());
    }
}
