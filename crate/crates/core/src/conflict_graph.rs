//! Conflict graphs: one node per bidder, an edge wherever two bundles share
//! an item. Winner sets are exactly the independent sets, so structural
//! facts about the graph translate into facts about every auction on it.

use std::fmt;

use crate::auction::{BidderSet, InterestProfile, ItemBundle, MAX_ITEMS};
use crate::error::{Error, Result};

/// Bound for the exhaustive graph searches (MIS enumeration, classification).
pub const MAX_GRAPH_NODES: usize = 20;
/// Bound for induced-subgraph search.
pub const MAX_INDUCED_SEARCH_NODES: usize = 12;
/// Bound for canonical forms, which try every relabelling.
pub const MAX_CANONICAL_NODES: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConflictGraph {
    adjacency: Vec<u64>,
}

impl ConflictGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 64, "at most 64 nodes");
        ConflictGraph { adjacency: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > 64 {
            return Err(Error::Capacity {
                what: "node count",
                size: n,
                limit: 64,
            });
        }
        let mut g = ConflictGraph::empty(n);
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::input(format!("edge ({a},{b}) leaves the {n}-node graph")));
            }
            if a == b {
                return Err(Error::input(format!("self-loop at node {a}")));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.adjacency[a] |= 1 << b;
        self.adjacency[b] |= 1 << a;
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a] >> b & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> BidderSet {
        BidderSet::from_mask(self.adjacency[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.node_count();
        (0..n)
            .flat_map(|a| (a + 1..n).filter(move |&b| self.has_edge(a, b)).map(move |b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Self {
        let full = BidderSet::full(self.node_count()).mask();
        ConflictGraph {
            adjacency: self
                .adjacency
                .iter()
                .enumerate()
                .map(|(v, m)| !m & full & !(1 << v))
                .collect(),
        }
    }

    pub fn is_independent(&self, set: BidderSet) -> bool {
        set.iter().all(|v| self.adjacency[v] & set.mask() == 0)
    }

    /// Relabel: node `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut g = ConflictGraph::empty(self.node_count());
        for (a, b) in self.edges() {
            g.add_edge(perm[a], perm[b]);
        }
        g
    }

    /// Subgraph induced by `nodes`, relabelled in increasing order.
    pub fn induced(&self, nodes: BidderSet) -> Self {
        let keep = nodes.to_vec();
        let mut g = ConflictGraph::empty(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

impl fmt::Display for ConflictGraph {
    /// One line per node: `1: 2 3`, one-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.node_count() {
            write!(f, "{}:", v + 1)?;
            for u in self.neighbors(v).iter() {
                write!(f, " {}", u + 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn build_conflict_graph(profile: &InterestProfile) -> ConflictGraph {
    ConflictGraph {
        adjacency: (0..profile.bidder_count())
            .map(|i| profile.conflicts_of(i).mask())
            .collect(),
    }
}

/// One item per edge, each node demanding the items of its edges; isolated
/// nodes get a private item of their own so no bundle is empty.
pub fn graph_to_interest_profile(graph: &ConflictGraph) -> Result<InterestProfile> {
    let n = graph.node_count();
    let mut bundles = vec![0u64; n];
    let mut next_item = 0usize;
    let mut fresh = || -> Result<usize> {
        if next_item >= MAX_ITEMS {
            return Err(Error::Capacity {
                what: "item count",
                size: next_item + 1,
                limit: MAX_ITEMS,
            });
        }
        next_item += 1;
        Ok(next_item - 1)
    };
    for (a, b) in graph.edges() {
        let item = fresh()?;
        bundles[a] |= 1 << item;
        bundles[b] |= 1 << item;
    }
    for bundle in bundles.iter_mut() {
        if *bundle == 0 {
            *bundle = 1 << fresh()?;
        }
    }
    InterestProfile::new(bundles.into_iter().map(ItemBundle::from_bits).collect(), next_item)
}

fn check_size(graph: &ConflictGraph, limit: usize) -> Result<()> {
    if graph.node_count() > limit {
        return Err(Error::Capacity {
            what: "node count",
            size: graph.node_count(),
            limit,
        });
    }
    Ok(())
}

/// All maximal independent sets in lexicographic order, found as the
/// maximal cliques of the complement (Bron–Kerbosch with pivoting).
pub fn maximal_independent_sets(graph: &ConflictGraph) -> Result<Vec<BidderSet>> {
    check_size(graph, MAX_GRAPH_NODES)?;
    let complement = graph.complement();
    let mut out = Vec::new();
    let all = BidderSet::full(graph.node_count()).mask();
    bron_kerbosch(&complement.adjacency, 0, all, 0, &mut out);
    out.sort_by(|a, b| a.lex_cmp(b));
    Ok(out)
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<BidderSet>) {
    if p == 0 {
        if x == 0 {
            out.push(BidderSet::from_mask(r));
        }
        return;
    }
    let pivot = BidderSet::from_mask(p | x)
        .iter()
        .max_by_key(|&u| ((p & adj[u]).count_ones(), std::cmp::Reverse(u)))
        .expect("p is non-empty");
    for v in BidderSet::from_mask(p & !adj[pivot]).iter() {
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// The groups of a complete multipartite graph with at least two groups:
/// non-adjacency must be an equivalence relation. Groups are ordered by
/// their smallest member.
pub fn is_complete_multipartite(graph: &ConflictGraph) -> Option<Vec<BidderSet>> {
    let complement = graph.complement();
    let n = graph.node_count();
    let mut seen = 0u64;
    let mut groups = Vec::new();
    for v in 0..n {
        if seen >> v & 1 == 1 {
            continue;
        }
        let group = complement.adjacency[v] | 1 << v;
        // Every member must be non-adjacent to exactly this group.
        for u in BidderSet::from_mask(group).iter() {
            if complement.adjacency[u] | 1 << u != group {
                return None;
            }
        }
        seen |= group;
        groups.push(BidderSet::from_mask(group));
    }
    (groups.len() >= 2).then_some(groups)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClassification {
    pub complete_multipartite: bool,
    pub partition: Option<Vec<BidderSet>>,
    pub max_mis_size: usize,
    pub secc_guaranteed: bool,
    pub vn_nondecreasing_guaranteed: bool,
}

pub fn classify(graph: &ConflictGraph) -> Result<GraphClassification> {
    let mis = maximal_independent_sets(graph)?;
    let max_mis_size = mis.iter().map(|s| s.len()).max().unwrap_or(0);
    let partition = is_complete_multipartite(graph);
    let complete_multipartite = partition.is_some();
    let secc_guaranteed = complete_multipartite || max_mis_size <= 2;
    Ok(GraphClassification {
        complete_multipartite,
        partition,
        max_mis_size,
        secc_guaranteed,
        vn_nondecreasing_guaranteed: secc_guaranteed || max_mis_size <= 3,
    })
}

/// Whether some node subset of `haystack` induces a copy of `needle`.
pub fn contains_induced_subgraph(haystack: &ConflictGraph, needle: &ConflictGraph) -> Result<bool> {
    check_size(haystack, MAX_INDUCED_SEARCH_NODES)?;
    if needle.node_count() > haystack.node_count() {
        return Ok(false);
    }
    // Place high-degree needle nodes first; they prune hardest.
    let mut order: Vec<usize> = (0..needle.node_count()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(needle.degree(v)));
    let mut image = vec![usize::MAX; needle.node_count()];
    Ok(extend_embedding(haystack, needle, &order, 0, 0, &mut image))
}

fn extend_embedding(
    haystack: &ConflictGraph,
    needle: &ConflictGraph,
    order: &[usize],
    depth: usize,
    used: u64,
    image: &mut [usize],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for h in 0..haystack.node_count() {
        if used >> h & 1 == 1 || haystack.degree(h) < needle.degree(v) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| needle.has_edge(u, v) == haystack.has_edge(image[u], h));
        if !consistent {
            continue;
        }
        image[v] = h;
        if extend_embedding(haystack, needle, order, depth + 1, used | 1 << h, image) {
            return true;
        }
    }
    image[v] = usize::MAX;
    false
}

pub fn is_isomorphic(a: &ConflictGraph, b: &ConflictGraph) -> Result<bool> {
    if a.node_count() != b.node_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let mut da: Vec<usize> = (0..a.node_count()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.node_count()).map(|v| b.degree(v)).collect();
    da.sort();
    db.sort();
    if da != db {
        return Ok(false);
    }
    contains_induced_subgraph(a, b)
}

/// Lexicographically smallest upper-triangle bit string over all relabellings.
pub fn canonical_form(graph: &ConflictGraph) -> Result<u64> {
    check_size(graph, MAX_CANONICAL_NODES)?;
    let n = graph.node_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let mut code = 0u64;
        let mut bit = 0;
        for a in 0..n {
            for b in a + 1..n {
                if graph.has_edge(perm[a], perm[b]) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        best = best.min(code);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Every graph on `n` nodes up to isomorphism, one representative each.
pub fn graphs_up_to_isomorphism(n: usize) -> Result<Vec<ConflictGraph>> {
    if n > 6 {
        return Err(Error::Capacity {
            what: "node count for exhaustive graph generation",
            size: n,
            limit: 6,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = ConflictGraph::from_edges(n, &edges)?;
        if seen.insert(canonical_form(&g)?) {
            out.push(g);
        }
    }
    Ok(out)
}
