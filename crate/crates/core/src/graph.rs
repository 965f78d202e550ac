//! Explicit signed and unsigned graphs over n-bit vertex ids, with
//! combinatorial decision procedures (connectivity, balance, bipartiteness)
//! that produce verifiable witnesses for both answers.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// Largest supported id width. Ids live in `[1, 2^n_bits - 1]`.
pub const MAX_N_BITS: u32 = 62;

fn id_limit(n_bits: u32) -> u64 {
    1u64 << n_bits
}

/// Simple undirected graph. Vertex ids are arbitrary members of
/// `[1, 2^n_bits - 1]`; id 0 is reserved as the list-end placeholder of the
/// sparse-access model and never appears.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnsignedGraph {
    n_bits: u32,
    vertices: BTreeSet<u64>,
    adj: BTreeMap<u64, BTreeSet<u64>>,
}

impl UnsignedGraph {
    pub fn new(n_bits: u32) -> Self {
        assert!((1..=MAX_N_BITS).contains(&n_bits), "unsupported id width");
        Self {
            n_bits,
            vertices: BTreeSet::new(),
            adj: BTreeMap::new(),
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (u64, u64)>>(n_bits: u32, edges: I) -> Result<Self> {
        let mut g = Self::new(n_bits);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn check_id(&self, v: u64) -> Result<()> {
        if v == 0 {
            return Err(Error::ZeroVertexId);
        }
        if v >= id_limit(self.n_bits) {
            return Err(Error::VertexOutOfRange {
                v,
                n_bits: self.n_bits,
            });
        }
        Ok(())
    }

    pub fn add_vertex(&mut self, v: u64) -> Result<()> {
        self.check_id(v)?;
        self.vertices.insert(v);
        self.adj.entry(v).or_default();
        Ok(())
    }

    pub fn add_edge(&mut self, u: u64, v: u64) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.add_vertex(u)?;
        self.add_vertex(v)?;
        self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
        Ok(())
    }

    pub fn n_bits(&self) -> u32 {
        self.n_bits
    }

    pub fn vertices(&self) -> impl Iterator<Item = u64> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains_vertex(&self, v: u64) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, u: u64, v: u64) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    pub fn neighbors(&self, v: u64) -> impl Iterator<Item = u64> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: u64) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for (&u, nbrs) in &self.adj {
            for &v in nbrs.range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    /// True when the vertex set is exactly `{1, ..., N}` for some `N`.
    pub fn is_contiguous(&self) -> bool {
        self.vertices
            .iter()
            .zip(1u64..)
            .all(|(&v, expect)| v == expect)
    }

    /// Subgraph induced by `vs`.
    pub fn induced(&self, vs: &[u64]) -> UnsignedGraph {
        let keep: BTreeSet<u64> = vs.iter().copied().collect();
        let mut g = UnsignedGraph::new(self.n_bits);
        for &v in &keep {
            if self.contains_vertex(v) {
                g.add_vertex(v).unwrap();
            }
        }
        for (u, v) in self.edges() {
            if keep.contains(&u) && keep.contains(&v) {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// Vertex count plus edges relabeled by ascending-id rank. Two graphs
    /// related by an order-preserving relabeling compare equal here.
    pub fn canonical_form(&self) -> (usize, Vec<(usize, usize)>) {
        let rank: BTreeMap<u64, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let edges = self
            .edges()
            .into_iter()
            .map(|(u, v)| (rank[&u], rank[&v]))
            .collect();
        (self.vertices.len(), edges)
    }

    /// Checks that `coloring` is a proper 2-coloring of the edges among
    /// `vertices`.
    pub fn check_coloring(&self, vertices: &[u64], coloring: &BTreeMap<u64, u8>) -> bool {
        vertices.iter().all(|&u| {
            self.neighbors(u).all(|v| {
                if !vertices.contains(&u) || !vertices.contains(&v) {
                    return true;
                }
                match (coloring.get(&u), coloring.get(&v)) {
                    (Some(&a), Some(&b)) => a != b,
                    _ => false,
                }
            })
        })
    }

    /// Length of a closed walk, or None if some step is not an edge.
    pub fn closed_walk_len(&self, walk: &[u64]) -> Option<usize> {
        if walk.len() < 2 || walk.first() != walk.last() {
            return None;
        }
        for w in walk.windows(2) {
            if !self.has_edge(w[0], w[1]) {
                return None;
            }
        }
        Some(walk.len() - 1)
    }
}

/// Graph with a `{-1, +1}` signature on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedGraph {
    base: UnsignedGraph,
    signs: BTreeMap<(u64, u64), i8>,
}

fn ordered(u: u64, v: u64) -> (u64, u64) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl SignedGraph {
    pub fn new(n_bits: u32) -> Self {
        Self {
            base: UnsignedGraph::new(n_bits),
            signs: BTreeMap::new(),
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (u64, u64, i8)>>(
        n_bits: u32,
        edges: I,
    ) -> Result<Self> {
        let mut g = Self::new(n_bits);
        for (u, v, s) in edges {
            g.add_edge(u, v, s)?;
        }
        Ok(g)
    }

    /// Forgets the signature.
    pub fn from_unsigned_all_positive(g: &UnsignedGraph) -> Self {
        Self::with_uniform_sign(g, 1)
    }

    pub fn with_uniform_sign(g: &UnsignedGraph, s: i8) -> Self {
        let signs = g.edges().into_iter().map(|e| (e, s)).collect();
        Self {
            base: g.clone(),
            signs,
        }
    }

    pub fn add_vertex(&mut self, v: u64) -> Result<()> {
        self.base.add_vertex(v)
    }

    pub fn add_edge(&mut self, u: u64, v: u64, s: i8) -> Result<()> {
        if s != 1 && s != -1 {
            return Err(Error::InvalidSign {
                u,
                v,
                s: i64::from(s),
            });
        }
        self.base.add_edge(u, v)?;
        self.signs.insert(ordered(u, v), s);
        Ok(())
    }

    pub fn base(&self) -> &UnsignedGraph {
        &self.base
    }

    pub fn n_bits(&self) -> u32 {
        self.base.n_bits()
    }

    pub fn sign(&self, u: u64, v: u64) -> Option<i8> {
        self.signs.get(&ordered(u, v)).copied()
    }

    /// Signed edges `(u, v, s)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(u64, u64, i8)> {
        self.signs.iter().map(|(&(u, v), &s)| (u, v, s)).collect()
    }

    pub fn positive_edges(&self) -> Vec<(u64, u64)> {
        self.signs
            .iter()
            .filter(|&(_, &s)| s == 1)
            .map(|(&e, _)| e)
            .collect()
    }

    /// Subgraph induced by `vs`, keeping signs.
    pub fn induced(&self, vs: &[u64]) -> SignedGraph {
        let base = self.base.induced(vs);
        let signs = self
            .signs
            .iter()
            .filter(|&(&(u, v), _)| base.has_edge(u, v))
            .map(|(&e, &s)| (e, s))
            .collect();
        SignedGraph { base, signs }
    }

    /// Checks `sigma(u) * sigma(v) = s(u, v)` on every edge among `vertices`.
    pub fn check_assignment(&self, vertices: &[u64], sigma: &BTreeMap<u64, i8>) -> bool {
        let set: BTreeSet<u64> = vertices.iter().copied().collect();
        self.edges().iter().all(|&(u, v, s)| {
            if !set.contains(&u) || !set.contains(&v) {
                return true;
            }
            match (sigma.get(&u), sigma.get(&v)) {
                (Some(&a), Some(&b)) => a * b == s,
                _ => false,
            }
        })
    }

    /// Number of negative edges along a closed walk, or None if the walk is
    /// invalid.
    pub fn closed_walk_negatives(&self, walk: &[u64]) -> Option<usize> {
        self.base.closed_walk_len(walk)?;
        let mut neg = 0;
        for w in walk.windows(2) {
            if self.sign(w[0], w[1])? == -1 {
                neg += 1;
            }
        }
        Some(neg)
    }
}

/// Assignment of vertices to connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub label: BTreeMap<u64, usize>,
    pub count: usize,
}

/// Labels components by breadth-first traversal; component indices follow
/// ascending order of the smallest vertex per component.
pub fn connected_components(g: &UnsignedGraph) -> ComponentLabeling {
    let mut label = BTreeMap::new();
    let mut count = 0;
    for root in g.vertices() {
        if label.contains_key(&root) {
            continue;
        }
        let mut queue = VecDeque::from([root]);
        label.insert(root, count);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if let std::collections::btree_map::Entry::Vacant(e) = label.entry(v) {
                    e.insert(count);
                    queue.push_back(v);
                }
            }
        }
        count += 1;
    }
    ComponentLabeling { label, count }
}

/// Per-component outcome of the switching search. Exactly one of
/// `assignment` / `odd_cycle` is present.
#[derive(Debug, Clone)]
pub struct ComponentBalance {
    /// Sorted vertices of the component.
    pub vertices: Vec<u64>,
    /// `sigma: V -> {-1, +1}` with `sigma(u) sigma(v) = s(u, v)`, if balanced.
    pub assignment: Option<BTreeMap<u64, i8>>,
    /// Closed walk with an odd number of negative edges, if unbalanced.
    pub odd_cycle: Option<Vec<u64>>,
}

impl ComponentBalance {
    pub fn balanced(&self) -> bool {
        self.assignment.is_some()
    }
}

/// Decision plus witnesses for every component.
#[derive(Debug, Clone)]
pub struct BalanceOutcome {
    pub components: Vec<ComponentBalance>,
}

impl BalanceOutcome {
    pub fn has_balanced(&self) -> bool {
        self.components.iter().any(|c| c.balanced())
    }

    pub fn balanced_component(&self) -> Option<&ComponentBalance> {
        self.components.iter().find(|c| c.balanced())
    }

    pub fn balanced_count(&self) -> usize {
        self.components.iter().filter(|c| c.balanced()).count()
    }
}

/// Reconstructs the cycle closed by a conflicting non-tree edge `{u, w}`
/// from the BFS parent links.
fn conflict_cycle(parent: &BTreeMap<u64, u64>, u: u64, w: u64) -> Vec<u64> {
    let chain = |mut x: u64| {
        let mut path = vec![x];
        while let Some(&p) = parent.get(&x) {
            x = p;
            path.push(x);
        }
        path
    };
    let cu = chain(u);
    let cw = chain(w);
    let (mut i, mut j) = (cu.len(), cw.len());
    while i > 0 && j > 0 && cu[i - 1] == cw[j - 1] {
        i -= 1;
        j -= 1;
    }
    // cu[i] == cw[j] is the lowest common ancestor.
    let mut cycle = cu[..=i].to_vec();
    cycle.extend(cw[..j].iter().rev());
    cycle.push(u);
    cycle
}

/// Switching search: propagates tentative vertex signs along a breadth-first
/// traversal of each component. The first edge closing an inconsistency
/// yields an odd-negative-cycle witness; otherwise the propagated signs are
/// the balance certificate. A single vertex is a (trivially) balanced
/// component.
pub fn balance_components(g: &SignedGraph) -> BalanceOutcome {
    let mut sigma: BTreeMap<u64, i8> = BTreeMap::new();
    let mut components = Vec::new();
    for root in g.base().vertices() {
        if sigma.contains_key(&root) {
            continue;
        }
        let mut vertices = vec![root];
        let mut parent: BTreeMap<u64, u64> = BTreeMap::new();
        let mut conflict: Option<(u64, u64)> = None;
        sigma.insert(root, 1);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let su = sigma[&u];
            for v in g.base().neighbors(u) {
                let s = g.sign(u, v).expect("signature total on edges");
                match sigma.get(&v) {
                    None => {
                        sigma.insert(v, su * s);
                        parent.insert(v, u);
                        vertices.push(v);
                        queue.push_back(v);
                    }
                    Some(&sv) => {
                        if sv != su * s && conflict.is_none() {
                            conflict = Some((u, v));
                        }
                    }
                }
            }
        }
        vertices.sort_unstable();
        components.push(match conflict {
            None => ComponentBalance {
                assignment: Some(vertices.iter().map(|&v| (v, sigma[&v])).collect()),
                odd_cycle: None,
                vertices,
            },
            Some((u, w)) => ComponentBalance {
                assignment: None,
                odd_cycle: Some(conflict_cycle(&parent, u, w)),
                vertices,
            },
        });
    }
    BalanceOutcome { components }
}

/// YES iff some component admits a sign-consistent assignment. The empty
/// graph has no components and answers NO.
pub fn has_balanced_component(g: &SignedGraph) -> bool {
    balance_components(g).has_balanced()
}

/// Per-component outcome of the 2-coloring search.
#[derive(Debug, Clone)]
pub struct ComponentColoring {
    pub vertices: Vec<u64>,
    /// Proper 2-coloring (sides 0/1), if bipartite.
    pub coloring: Option<BTreeMap<u64, u8>>,
    /// Odd closed walk, if not bipartite.
    pub odd_cycle: Option<Vec<u64>>,
}

impl ComponentColoring {
    pub fn bipartite(&self) -> bool {
        self.coloring.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct BipartiteOutcome {
    pub components: Vec<ComponentColoring>,
}

impl BipartiteOutcome {
    pub fn has_bipartite(&self) -> bool {
        self.components.iter().any(|c| c.bipartite())
    }

    pub fn bipartite_component(&self) -> Option<&ComponentColoring> {
        self.components.iter().find(|c| c.bipartite())
    }

    pub fn bipartite_count(&self) -> usize {
        self.components.iter().filter(|c| c.bipartite()).count()
    }
}

/// BFS 2-coloring per component. An edge between same-colored vertices
/// closes an odd cycle, which is returned as the witness. A single vertex
/// is a (trivially) bipartite component.
pub fn bipartite_components(g: &UnsignedGraph) -> BipartiteOutcome {
    let mut color: BTreeMap<u64, u8> = BTreeMap::new();
    let mut components = Vec::new();
    for root in g.vertices() {
        if color.contains_key(&root) {
            continue;
        }
        let mut vertices = vec![root];
        let mut parent: BTreeMap<u64, u64> = BTreeMap::new();
        let mut conflict: Option<(u64, u64)> = None;
        color.insert(root, 0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[&u];
            for v in g.neighbors(u) {
                match color.get(&v) {
                    None => {
                        color.insert(v, 1 - cu);
                        parent.insert(v, u);
                        vertices.push(v);
                        queue.push_back(v);
                    }
                    Some(&cv) => {
                        if cv == cu && conflict.is_none() {
                            conflict = Some((u, v));
                        }
                    }
                }
            }
        }
        vertices.sort_unstable();
        components.push(match conflict {
            None => ComponentColoring {
                coloring: Some(vertices.iter().map(|&v| (v, color[&v])).collect()),
                odd_cycle: None,
                vertices,
            },
            Some((u, w)) => ComponentColoring {
                coloring: None,
                odd_cycle: Some(conflict_cycle(&parent, u, w)),
                vertices,
            },
        });
    }
    BipartiteOutcome { components }
}

/// YES iff some component is 2-colorable; NO for the empty graph.
pub fn has_bipartite_component(g: &UnsignedGraph) -> bool {
    bipartite_components(g).has_bipartite()
}
