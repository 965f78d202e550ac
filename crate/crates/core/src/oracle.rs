//! Implicit-graph input model: marked and traditional sparse access.
//!
//! Oracles are pure total functions over the full index square
//! `[0, 2^n) x [0, S)`, wrapped with atomic call counters so reductions can
//! report their query cost. Constructors realize the access contract for
//! explicit graphs; `materialize` inverts them; `conformance_check` audits
//! an arbitrary oracle against the contract.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SignedGraph, UnsignedGraph};

/// Default cap on materialization / conformance sweeps, in index rows.
pub const DEFAULT_INDEX_BUDGET: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AccessMode {
    /// Vertices are any subset of `[1, 2^n - 1]`; non-vertex rows return the
    /// marked list `[0, 1, ..., S-1]`.
    Marked,
    /// Vertices are exactly `{1, ..., N}`; rows for 0 and indices past N
    /// return the marked list.
    Traditional,
}

type AdjFn = Arc<dyn Fn(u64, u64) -> u64 + Send + Sync>;
type SignFn = Arc<dyn Fn(u64, u64) -> i8 + Send + Sync>;

/// Handle to an implicit graph: `adj(i, l)` and (when signed) `sign(i, l)`,
/// plus `(n, S, mode)` metadata. Values are immutable and cheap to clone;
/// call counting is shared across clones.
#[derive(Clone)]
pub struct SparseAccess {
    n_bits: u32,
    s_bound: u64,
    mode: AccessMode,
    adj_fn: AdjFn,
    sign_fn: Option<SignFn>,
    adj_calls: Arc<AtomicU64>,
    sign_calls: Arc<AtomicU64>,
}

impl std::fmt::Debug for SparseAccess {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SparseAccess")
            .field("n_bits", &self.n_bits)
            .field("s_bound", &self.s_bound)
            .field("mode", &self.mode)
            .field("signed", &self.is_signed())
            .finish()
    }
}

impl SparseAccess {
    pub fn new_unsigned(
        n_bits: u32,
        s_bound: u64,
        mode: AccessMode,
        adj_fn: impl Fn(u64, u64) -> u64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if s_bound < 2 {
            return Err(Error::DegreeBoundTooSmall(s_bound));
        }
        Ok(Self {
            n_bits,
            s_bound,
            mode,
            adj_fn: Arc::new(adj_fn),
            sign_fn: None,
            adj_calls: Arc::new(AtomicU64::new(0)),
            sign_calls: Arc::new(AtomicU64::new(0)),
        })
    }

    pub fn new_signed(
        n_bits: u32,
        s_bound: u64,
        mode: AccessMode,
        adj_fn: impl Fn(u64, u64) -> u64 + Send + Sync + 'static,
        sign_fn: impl Fn(u64, u64) -> i8 + Send + Sync + 'static,
    ) -> Result<Self> {
        let mut o = Self::new_unsigned(n_bits, s_bound, mode, adj_fn)?;
        o.sign_fn = Some(Arc::new(sign_fn));
        Ok(o)
    }

    /// Signed oracle sharing this handle's adjacency function and call
    /// counters; lets a sign function route its adjacency lookups through
    /// the counted path.
    pub fn with_sign(&self, sign_fn: impl Fn(u64, u64) -> i8 + Send + Sync + 'static) -> Self {
        let mut o = self.clone();
        o.sign_fn = Some(Arc::new(sign_fn));
        o
    }

    pub fn n_bits(&self) -> u32 {
        self.n_bits
    }

    pub fn s_bound(&self) -> u64 {
        self.s_bound
    }

    pub fn mode(&self) -> AccessMode {
        self.mode
    }

    pub fn is_signed(&self) -> bool {
        self.sign_fn.is_some()
    }

    pub fn index_count(&self) -> u64 {
        1u64 << self.n_bits
    }

    pub fn adj(&self, i: u64, l: u64) -> u64 {
        self.adj_calls.fetch_add(1, Ordering::Relaxed);
        (self.adj_fn)(i, l)
    }

    /// Panics when the oracle is unsigned; check `is_signed` first.
    pub fn sign(&self, i: u64, l: u64) -> i8 {
        self.sign_calls.fetch_add(1, Ordering::Relaxed);
        (self.sign_fn.as_ref().expect("signed oracle"))(i, l)
    }

    /// Total `(adj, sign)` calls made through this handle and its clones.
    pub fn call_counts(&self) -> (u64, u64) {
        (
            self.adj_calls.load(Ordering::Relaxed),
            self.sign_calls.load(Ordering::Relaxed),
        )
    }

    pub fn reset_call_counts(&self) {
        self.adj_calls.store(0, Ordering::Relaxed);
        self.sign_calls.store(0, Ordering::Relaxed);
    }

    /// Invalid-row detector: true exactly for indices not backed by a
    /// vertex. Reads positions 0 and 1, which is why `S >= 2` is required.
    pub fn invalid_row(&self, i: u64) -> bool {
        i == 0 || (self.adj(i, 0) == 0 && self.adj(i, 1) != 0)
    }

    pub fn row(&self, i: u64) -> Vec<u64> {
        (0..self.s_bound).map(|l| self.adj(i, l)).collect()
    }

    /// Number of nonzero adjacency entries in row i (the degree the
    /// entry-generation pseudocode computes).
    pub fn adj_degree(&self, i: u64) -> u64 {
        (0..self.s_bound).filter(|&l| self.adj(i, l) != 0).count() as u64
    }

    /// Number of entries with nonzero sign (equals `adj_degree` for
    /// unsigned oracles).
    pub fn sign_degree(&self, i: u64) -> u64 {
        if !self.is_signed() {
            return self.adj_degree(i);
        }
        (0..self.s_bound)
            .filter(|&l| self.adj(i, l) != 0 && self.sign(i, l) != 0)
            .count() as u64
    }
}

fn neighbor_table(g: &UnsignedGraph) -> BTreeMap<u64, Vec<u64>> {
    g.vertices()
        .map(|v| {
            let mut nbrs: Vec<u64> = g.neighbors(v).collect();
            nbrs.sort_unstable();
            (v, nbrs)
        })
        .collect()
}

fn check_explicit(g: &UnsignedGraph, s_bound: u64, mode: AccessMode) -> Result<()> {
    if s_bound < 2 {
        return Err(Error::DegreeBoundTooSmall(s_bound));
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) as u64 > s_bound) {
        return Err(Error::DegreeOverflow {
            vertex: v,
            degree: g.degree(v) as u64,
            bound: s_bound,
        });
    }
    if mode == AccessMode::Traditional && !g.is_contiguous() {
        let missing = (1..).find(|v| !g.contains_vertex(*v)).unwrap();
        return Err(Error::NonContiguous(missing));
    }
    Ok(())
}

fn explicit_adj(table: &BTreeMap<u64, Vec<u64>>, limit: u64, i: u64, l: u64) -> u64 {
    if i == 0 || i >= limit {
        return l;
    }
    match table.get(&i) {
        Some(nbrs) => nbrs.get(l as usize).copied().unwrap_or(0),
        None => l,
    }
}

/// Sparse access realizing the contract for an explicit unsigned graph:
/// ascending zero-padded neighbor lists, marked rows elsewhere.
pub fn from_explicit_unsigned(
    g: &UnsignedGraph,
    s_bound: u64,
    mode: AccessMode,
) -> Result<SparseAccess> {
    check_explicit(g, s_bound, mode)?;
    let table = neighbor_table(g);
    let limit = 1u64 << g.n_bits();
    SparseAccess::new_unsigned(g.n_bits(), s_bound, mode, move |i, l| {
        explicit_adj(&table, limit, i, l)
    })
}

/// Signed variant; `sign(i, l)` is 0 wherever `adj(i, l)` is the placeholder
/// or the row is marked.
pub fn from_explicit_signed(
    g: &SignedGraph,
    s_bound: u64,
    mode: AccessMode,
) -> Result<SparseAccess> {
    check_explicit(g.base(), s_bound, mode)?;
    let table = neighbor_table(g.base());
    let signs: BTreeMap<(u64, u64), i8> = g
        .edges()
        .into_iter()
        .map(|(u, v, s)| ((u, v), s))
        .collect();
    let limit = 1u64 << g.n_bits();
    let adj_table = table.clone();
    SparseAccess::new_signed(
        g.n_bits(),
        s_bound,
        mode,
        move |i, l| explicit_adj(&adj_table, limit, i, l),
        move |i, l| {
            let j = explicit_adj(&table, limit, i, l);
            if j == 0 || !table.contains_key(&i) {
                return 0;
            }
            let key = if i < j { (i, j) } else { (j, i) };
            signs.get(&key).copied().unwrap_or(0)
        },
    )
}

/// Explicit graph recovered from an oracle.
#[derive(Debug, Clone)]
pub enum EitherGraph {
    Signed(SignedGraph),
    Unsigned(UnsignedGraph),
}

impl EitherGraph {
    pub fn unsigned(&self) -> &UnsignedGraph {
        match self {
            EitherGraph::Signed(g) => g.base(),
            EitherGraph::Unsigned(g) => g,
        }
    }

    pub fn signed(&self) -> Option<&SignedGraph> {
        match self {
            EitherGraph::Signed(g) => Some(g),
            EitherGraph::Unsigned(_) => None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.unsigned().vertex_count()
    }
}

/// Which indices to visit when materializing.
#[derive(Debug, Clone)]
pub enum MaterializeScope {
    /// Sweep the whole index space (bounded by the index budget).
    Full,
    /// Breadth-first reachability from explicit seed indices.
    Reachable(Vec<u64>),
}

/// Entries of a valid row that count as edges: nonzero adjacency, and (for
/// signed oracles) nonzero sign — zero-sign entries are non-edges.
fn row_edges(o: &SparseAccess, i: u64) -> Vec<(u64, i8)> {
    let mut out = Vec::new();
    for l in 0..o.s_bound() {
        let j = o.adj(i, l);
        if j == 0 {
            continue;
        }
        let s = if o.is_signed() { o.sign(i, l) } else { 1 };
        if s == 0 {
            continue;
        }
        out.push((j, s));
    }
    out
}

/// Inverse of the constructors: recovers the explicit graph whose vertex
/// set is exactly the valid-row indices. Inconsistent adjacency (an entry
/// seen from one side only, or with mismatched signs) is reported as an
/// error, never repaired.
pub fn materialize(
    o: &SparseAccess,
    scope: &MaterializeScope,
    index_budget: u64,
) -> Result<EitherGraph> {
    let mut vertices: BTreeSet<u64> = BTreeSet::new();
    match scope {
        MaterializeScope::Full => {
            if o.index_count() > index_budget {
                return Err(Error::IndexBudgetExceeded {
                    n_bits: o.n_bits(),
                    budget: index_budget,
                });
            }
            for i in 1..o.index_count() {
                if !o.invalid_row(i) {
                    vertices.insert(i);
                }
            }
        }
        MaterializeScope::Reachable(seeds) => {
            let mut queue: VecDeque<u64> = VecDeque::new();
            for &s in seeds {
                if s != 0 && s < o.index_count() && !o.invalid_row(s) && vertices.insert(s) {
                    queue.push_back(s);
                }
            }
            while let Some(i) = queue.pop_front() {
                if vertices.len() as u64 > index_budget {
                    return Err(Error::IndexBudgetExceeded {
                        n_bits: o.n_bits(),
                        budget: index_budget,
                    });
                }
                for (j, _) in row_edges(o, i) {
                    if j < o.index_count() && !o.invalid_row(j) && vertices.insert(j) {
                        queue.push_back(j);
                    }
                }
            }
        }
    }

    let mut directed: BTreeMap<(u64, u64), i8> = BTreeMap::new();
    for &i in &vertices {
        for (j, s) in row_edges(o, i) {
            if j == i {
                return Err(Error::SelfLoop(i));
            }
            directed.insert((i, j), s);
        }
    }
    for (&(i, j), &s) in &directed {
        if !vertices.contains(&j) || directed.get(&(j, i)) != Some(&s) {
            return Err(Error::Asymmetric { i, j });
        }
    }

    if o.is_signed() {
        let mut g = SignedGraph::new(o.n_bits());
        for &v in &vertices {
            g.add_vertex(v)?;
        }
        for (&(i, j), &s) in &directed {
            if i < j {
                g.add_edge(i, j, s)?;
            }
        }
        Ok(EitherGraph::Signed(g))
    } else {
        let mut g = UnsignedGraph::new(o.n_bits());
        for &v in &vertices {
            g.add_vertex(v)?;
        }
        for &(i, j) in directed.keys() {
            if i < j {
                g.add_edge(i, j)?;
            }
        }
        Ok(EitherGraph::Unsigned(g))
    }
}

/// How zero-sign adjacency entries are judged: the strict reading treats
/// them as contract violations, the lenient reading treats them as
/// non-edges (candidate listings awaiting verification).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strictness {
    Strict,
    Lenient,
}

#[derive(Debug, Clone)]
pub enum CheckScope {
    Exhaustive,
    Sampled { rows: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Marked row deviates from the `[0, 1, ..., S-1]` pattern.
    MarkedRow,
    /// Row 0 must always be the marked list.
    RowZero,
    /// Nonzero adjacency entry after the zero placeholder (strict only).
    Padding,
    /// Valid row lists its own index.
    SelfAdjacency,
    /// Adjacency entry outside the index space.
    OutOfRange,
    /// Edge seen from one endpoint only.
    AsymmetricAdjacency,
    /// Edge signs disagree between the two endpoints.
    AsymmetricSign,
    /// Adjacency entry with zero sign on a valid row (strict only).
    ZeroSignAdjacency,
    /// Nonzero sign where the adjacency is the placeholder or the row is
    /// marked.
    SignOnPlaceholder,
    /// Repeated query returned a different answer.
    NonDeterministic,
    /// Traditional mode: valid rows are not exactly `{1, ..., N}`.
    NonContiguous,
}

impl ViolationKind {
    pub fn describe(self) -> &'static str {
        match self {
            ViolationKind::MarkedRow => "marked row deviates from [0..S-1]",
            ViolationKind::RowZero => "row 0 is not the marked list",
            ViolationKind::Padding => "nonzero entry after zero padding",
            ViolationKind::SelfAdjacency => "self-adjacency",
            ViolationKind::OutOfRange => "adjacency entry out of range",
            ViolationKind::AsymmetricAdjacency => "asymmetric adjacency",
            ViolationKind::AsymmetricSign => "asymmetric sign",
            ViolationKind::ZeroSignAdjacency => "adjacency entry with zero sign",
            ViolationKind::SignOnPlaceholder => "nonzero sign on placeholder entry",
            ViolationKind::NonDeterministic => "non-deterministic answer",
            ViolationKind::NonContiguous => "valid rows not contiguous",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub i: u64,
    pub l: u64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConformanceReport {
    pub mode: AccessMode,
    pub strictness: Strictness,
    pub rows_checked: u64,
    pub violations: Vec<Violation>,
}

impl ConformanceReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_kind(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

fn check_row(o: &SparseAccess, i: u64, out: &mut Vec<Violation>, strictness: Strictness) {
    let s_bound = o.s_bound();
    let violate = |out: &mut Vec<Violation>, kind, l, detail: String| {
        out.push(Violation { kind, i, l, detail });
    };

    // Determinism probe on the first two positions.
    for l in 0..2.min(s_bound) {
        if o.adj(i, l) != o.adj(i, l) {
            violate(out, ViolationKind::NonDeterministic, l, "adj".into());
        }
        if o.is_signed() && o.sign(i, l) != o.sign(i, l) {
            violate(out, ViolationKind::NonDeterministic, l, "sign".into());
        }
    }

    if i == 0 || o.invalid_row(i) {
        let kind = if i == 0 {
            ViolationKind::RowZero
        } else {
            ViolationKind::MarkedRow
        };
        for l in 0..s_bound {
            let j = o.adj(i, l);
            if j != l {
                violate(out, kind, l, format!("adj({i},{l}) = {j}, expected {l}"));
            }
            if o.is_signed() && o.sign(i, l) != 0 {
                violate(out, ViolationKind::SignOnPlaceholder, l, String::new());
            }
        }
        return;
    }

    let mut seen_zero = false;
    for l in 0..s_bound {
        let j = o.adj(i, l);
        if j >= o.index_count() {
            violate(out, ViolationKind::OutOfRange, l, format!("entry {j}"));
            continue;
        }
        if j == 0 {
            seen_zero = true;
            if o.is_signed() && o.sign(i, l) != 0 {
                violate(out, ViolationKind::SignOnPlaceholder, l, String::new());
            }
            continue;
        }
        if strictness == Strictness::Strict && seen_zero {
            violate(out, ViolationKind::Padding, l, format!("entry {j}"));
        }
        if j == i {
            violate(out, ViolationKind::SelfAdjacency, l, String::new());
            continue;
        }
        let s_ij = if o.is_signed() { o.sign(i, l) } else { 1 };
        if s_ij == 0 {
            if strictness == Strictness::Strict {
                violate(
                    out,
                    ViolationKind::ZeroSignAdjacency,
                    l,
                    format!("adj({i},{l}) = {j}"),
                );
            }
            // Lenient: a zero-sign entry is a non-edge; nothing to mirror.
            continue;
        }
        // The mirrored entry must exist with the same sign.
        let mut mirrored = false;
        let mut sign_ok = false;
        for l2 in 0..s_bound {
            if o.adj(j, l2) == i {
                let s_ji = if o.is_signed() { o.sign(j, l2) } else { 1 };
                if o.is_signed() && s_ji == 0 {
                    continue;
                }
                mirrored = true;
                sign_ok = s_ji == s_ij;
                break;
            }
        }
        if !mirrored {
            violate(
                out,
                ViolationKind::AsymmetricAdjacency,
                l,
                format!("{j} lacks back-entry for {i}"),
            );
        } else if !sign_ok {
            violate(out, ViolationKind::AsymmetricSign, l, String::new());
        }
    }
}

/// Audits an oracle against the access contract. Violations are data, not
/// failures; the report lists them per row and position.
pub fn conformance_check(
    o: &SparseAccess,
    scope: &CheckScope,
    strictness: Strictness,
    index_budget: u64,
) -> Result<ConformanceReport> {
    let mut violations = Vec::new();
    let mut rows_checked = 0;
    match scope {
        CheckScope::Exhaustive => {
            if o.index_count() > index_budget {
                return Err(Error::IndexBudgetExceeded {
                    n_bits: o.n_bits(),
                    budget: index_budget,
                });
            }
            let mut valid = Vec::new();
            for i in 0..o.index_count() {
                check_row(o, i, &mut violations, strictness);
                rows_checked += 1;
                if i != 0 && !o.invalid_row(i) {
                    valid.push(i);
                }
            }
            if o.mode() == AccessMode::Traditional {
                for (idx, &v) in valid.iter().enumerate() {
                    if v != idx as u64 + 1 {
                        violations.push(Violation {
                            kind: ViolationKind::NonContiguous,
                            i: idx as u64 + 1,
                            l: 0,
                            detail: format!("expected valid row {}, found {v}", idx + 1),
                        });
                        break;
                    }
                }
            }
        }
        CheckScope::Sampled { rows, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..*rows {
                let i = rng.gen_range(0..o.index_count());
                check_row(o, i, &mut violations, strictness);
                rows_checked += 1;
            }
        }
    }
    Ok(ConformanceReport {
        mode: o.mode(),
        strictness,
        rows_checked,
        violations,
    })
}
