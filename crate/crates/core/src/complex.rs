//! Clique complexes over contiguous 0-based vertex sets: simplex
//! enumeration, boundary operators, combinatorial Hodge Laplacians, and
//! exact Betti numbers (the homology ground truth for every spectral check).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::UnsignedGraph;
use crate::linalg::{rank_i64, DenseSymMatrix};

/// Default cap on candidate subsets per enumeration.
pub const DEFAULT_SUBSET_BUDGET: u64 = 200_000;

/// Simplex as an n-bit set encoding: bit `k` set iff vertex `k` is present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(pub u64);

impl Simplex {
    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn card(self) -> u32 {
        self.0.count_ones()
    }

    /// Strictly increasing vertex list.
    pub fn vertices(self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.card() as usize);
        let mut bits = self.0;
        while bits != 0 {
            let k = bits.trailing_zeros();
            out.push(k);
            bits &= bits - 1;
        }
        out
    }

    pub fn from_vertices(vs: &[u32]) -> Self {
        Simplex(vs.iter().fold(0u64, |acc, &v| acc | (1u64 << v)))
    }

    pub fn contains(self, v: u32) -> bool {
        self.0 >> v & 1 == 1
    }
}

/// Sign of `face` with respect to `simplex`: `(-1)^j` when `face` is
/// `simplex` minus its j-th smallest vertex, 0 otherwise. Any pair of
/// bitmasks is accepted.
pub fn sng(face: Simplex, simplex: Simplex) -> i8 {
    let diff = simplex.0 & !face.0;
    if face.0 & !simplex.0 != 0 || diff.count_ones() != 1 {
        return 0;
    }
    let removed = diff.trailing_zeros();
    let j = (simplex.0 & ((1u64 << removed) - 1)).count_ones();
    if j.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Clique complex of a graph on vertices `{0, ..., n-1}`, viewed at a home
/// dimension `p`. Membership tests are closed under inclusion by
/// construction; enumeration is guarded by a candidate-subset budget.
#[derive(Debug, Clone)]
pub struct CliqueComplexView {
    n: usize,
    adj: Vec<u64>,
    p: usize,
    budget: u64,
}

impl CliqueComplexView {
    /// Builds from 0-based edges over `{0, ..., n-1}`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], p: usize) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(Error::InvalidParameter(format!(
                "vertex count {n} outside supported range 1..=63"
            )));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u as u64));
            }
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    v: u.max(v) as u64,
                    n_bits: 64 - (n as u64).leading_zeros(),
                });
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Self {
            n,
            adj,
            p,
            budget: DEFAULT_SUBSET_BUDGET,
        })
    }

    /// Reindexes a contiguous explicit graph (vertices `{1, ..., n}`) to the
    /// 0-based vertex set used for bitstring encodings.
    pub fn from_graph(g: &UnsignedGraph, p: usize) -> Result<Self> {
        if !g.is_contiguous() {
            let missing = (1..).find(|v| !g.contains_vertex(*v)).unwrap();
            return Err(Error::NonContiguous(missing));
        }
        let edges: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .map(|(u, v)| (u as usize - 1, v as usize - 1))
            .collect();
        Self::from_edges(g.vertex_count(), &edges, p)
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn home_dimension(&self) -> usize {
        self.p
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v && (self.adj[u as usize] >> v) & 1 == 1
    }

    /// True iff every pair in the encoded set is an edge (singletons always
    /// qualify; the empty set never does).
    pub fn is_simplex(&self, s: Simplex) -> bool {
        if s.0 == 0 || s.0 >> self.n != 0 {
            return false;
        }
        let mut bits = s.0;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            // Remaining higher members must all be neighbors of k.
            if bits & !self.adj[k] != 0 {
                return false;
            }
        }
        true
    }

    /// Number of (p+1)-cofaces of a p-simplex.
    pub fn upper_degree(&self, s: Simplex) -> usize {
        (0..self.n as u32)
            .filter(|&v| !s.contains(v) && self.is_simplex(Simplex(s.0 | (1 << v))))
            .count()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Ascending enumeration of k-subset bitmasks of `{0, ..., n-1}`.
fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut next = if k == 0 || k > n {
        None
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next.filter(|&x| x < limit)?;
        // Gosper's hack: next larger integer with the same popcount.
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        next = if r == 0 {
            None
        } else {
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur)
    })
}

/// All p-simplices of the complex in ascending bitstring-encoding order.
pub fn enumerate_p_simplices(c: &CliqueComplexView, p: usize) -> Result<Vec<Simplex>> {
    let candidates = binomial(c.n as u64, p as u64 + 1);
    if candidates > c.budget {
        return Err(Error::BudgetExceeded {
            needed: candidates,
            budget: c.budget,
        });
    }
    Ok(k_subsets(c.n, p + 1)
        .map(Simplex)
        .filter(|&s| c.is_simplex(s))
        .collect())
}

/// Largest p with a nonempty simplex set (maximum clique size minus one).
pub fn max_dimension(c: &CliqueComplexView) -> Result<usize> {
    let mut max_p = 0;
    for p in 1..c.n {
        if enumerate_p_simplices(c, p)?.is_empty() {
            break;
        }
        max_p = p;
    }
    Ok(max_p)
}

/// Signed incidence matrix of the boundary operator: rows over (p-1)-simplices,
/// columns over p-simplices, entries `sng(row, col)`, both axes in ascending
/// encoding order.
#[derive(Debug, Clone)]
pub struct BoundaryMatrix {
    pub p: usize,
    pub rows: Vec<Simplex>,
    pub cols: Vec<Simplex>,
    /// Per-column nonzero entries `(row_index, sign)`; exactly p+1 per column.
    pub col_entries: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    pub fn entry(&self, r: usize, c: usize) -> i8 {
        self.col_entries[c]
            .iter()
            .find(|&&(row, _)| row == r)
            .map_or(0, |&(_, s)| s)
    }

    pub fn to_rows_i64(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.cols.len()]; self.rows.len()];
        for (c, entries) in self.col_entries.iter().enumerate() {
            for &(r, s) in entries {
                m[r][c] = i64::from(s);
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        if self.rows.is_empty() || self.cols.is_empty() {
            return 0;
        }
        rank_i64(&self.to_rows_i64())
    }
}

/// Boundary matrix of dimension p (requires `1 <= p <= n-1`).
pub fn boundary_matrix(c: &CliqueComplexView, p: usize) -> Result<BoundaryMatrix> {
    if p < 1 || p >= c.n {
        return Err(Error::InvalidDimension {
            p,
            max: c.n.saturating_sub(1),
        });
    }
    let rows = enumerate_p_simplices(c, p - 1)?;
    let cols = enumerate_p_simplices(c, p)?;
    let col_entries = cols
        .iter()
        .map(|&s| {
            let vs = s.vertices();
            vs.iter()
                .enumerate()
                .map(|(j, &v)| {
                    let face = Simplex(s.0 & !(1u64 << v));
                    let r = rows
                        .binary_search(&face)
                        .expect("face of a clique is a clique");
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    (r, sign)
                })
                .collect()
        })
        .collect();
    Ok(BoundaryMatrix {
        p,
        rows,
        cols,
        col_entries,
    })
}

/// `B^T B` over the column index set.
fn gram_down(b: &BoundaryMatrix) -> DenseSymMatrix {
    let side = b.cols.len();
    // Scatter column entries into rows, then accumulate row-pair products.
    let mut row_entries: Vec<Vec<(usize, i8)>> = vec![Vec::new(); b.rows.len()];
    for (cidx, entries) in b.col_entries.iter().enumerate() {
        for &(r, s) in entries {
            row_entries[r].push((cidx, s));
        }
    }
    let mut acc = vec![vec![0i64; side]; side];
    for entries in &row_entries {
        for &(c1, s1) in entries {
            for &(c2, s2) in entries {
                acc[c1][c2] += i64::from(s1) * i64::from(s2);
            }
        }
    }
    DenseSymMatrix::from_rows_i64(&acc)
}

/// `B B^T` over the row index set.
fn gram_up(b: &BoundaryMatrix) -> DenseSymMatrix {
    let side = b.rows.len();
    let mut acc = vec![vec![0i64; side]; side];
    for entries in &b.col_entries {
        for &(r1, s1) in entries {
            for &(r2, s2) in entries {
                acc[r1][r2] += i64::from(s1) * i64::from(s2);
            }
        }
    }
    DenseSymMatrix::from_rows_i64(&acc)
}

/// Combinatorial Hodge Laplacian at dimension p over the p-simplex basis:
/// the up term `d_{p+1} d_{p+1}^T` (absent past the top dimension) plus the
/// down term `d_p^T d_p` (absent at p = 0).
pub fn hodge_laplacian(c: &CliqueComplexView, p: usize) -> Result<DenseSymMatrix> {
    let sp = enumerate_p_simplices(c, p)?;
    let side = sp.len();
    let mut l = DenseSymMatrix::zeros(side);
    if side == 0 {
        return Ok(l);
    }
    if p >= 1 {
        let b = boundary_matrix(c, p)?;
        debug_assert_eq!(b.cols, sp);
        l = gram_down(&b);
    }
    if p + 1 < c.n {
        let b1 = boundary_matrix(c, p + 1)?;
        if !b1.cols.is_empty() {
            debug_assert_eq!(b1.rows, sp);
            let up = gram_up(&b1);
            l = DenseSymMatrix::from_fn(side, |i, j| l.get(i, j) + up.get(i, j));
        }
    }
    Ok(l)
}

/// Exact Betti number `dim C_p - rank(d_p) - rank(d_{p+1})` over the
/// rationals, with `rank(d_0) = 0`. Dimensions with no p-simplices have
/// Betti number 0.
pub fn betti_exact(c: &CliqueComplexView, p: usize) -> Result<usize> {
    let dim_cp = enumerate_p_simplices(c, p)?.len();
    if dim_cp == 0 {
        return Ok(0);
    }
    let rank_down = if p >= 1 { boundary_matrix(c, p)?.rank() } else { 0 };
    let rank_up = if p + 1 < c.n {
        boundary_matrix(c, p + 1)?.rank()
    } else {
        0
    };
    Ok(dim_cp - rank_down - rank_up)
}

/// Machine-readable homology summary for one dimension.
#[derive(Debug, Clone, Serialize)]
pub struct HomologySummary {
    pub p: usize,
    pub num_p_simplices: usize,
    pub rank_boundary_p: usize,
    pub rank_boundary_p_plus_1: usize,
    pub betti: usize,
}

pub fn homology_summary(c: &CliqueComplexView, p: usize) -> Result<HomologySummary> {
    let num = enumerate_p_simplices(c, p)?.len();
    let rank_down = if p >= 1 && num > 0 {
        boundary_matrix(c, p)?.rank()
    } else {
        0
    };
    let rank_up = if p + 1 < c.n && num > 0 {
        boundary_matrix(c, p + 1)?.rank()
    } else {
        0
    };
    Ok(HomologySummary {
        p,
        num_p_simplices: num,
        rank_boundary_p: rank_down,
        rank_boundary_p_plus_1: rank_up,
        betti: num.saturating_sub(rank_down + rank_up),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4(p: usize) -> CliqueComplexView {
        CliqueComplexView::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], p).unwrap()
    }

    fn k3(p: usize) -> CliqueComplexView {
        CliqueComplexView::from_edges(3, &[(0, 1), (0, 2), (1, 2)], p).unwrap()
    }

    fn k4(p: usize) -> CliqueComplexView {
        CliqueComplexView::from_edges(
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            p,
        )
        .unwrap()
    }

    fn s(vs: &[u32]) -> Simplex {
        Simplex::from_vertices(vs)
    }

    #[test]
    fn sng_examples() {
        // Vertices here are 1-based labels mapped to bits directly; only the
        // relative order matters.
        assert_eq!(sng(s(&[2, 3]), s(&[1, 2, 3])), 1);
        assert_eq!(sng(s(&[1, 3]), s(&[1, 2, 3])), -1);
        assert_eq!(sng(s(&[1, 2]), s(&[3, 4, 5])), 0);
        assert_eq!(sng(s(&[1, 2]), s(&[1, 2])), 0);
        assert_eq!(sng(s(&[1, 2, 3]), s(&[1, 2])), 0);
    }

    #[test]
    fn enumerate_matches_brute_force_subset_filter() {
        // Independent oracle: test every subset against pairwise adjacency.
        for (c, n) in [(c4(1), 4), (k4(2), 4), (k3(1), 3)] {
            for p in 0..n {
                let fast = enumerate_p_simplices(&c, p).unwrap();
                let slow: Vec<Simplex> = (1..1u64 << n)
                    .filter(|b| b.count_ones() as usize == p + 1)
                    .map(Simplex)
                    .filter(|&sx| {
                        let vs = sx.vertices();
                        vs.iter()
                            .enumerate()
                            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| c.has_edge(u, v)))
                    })
                    .collect();
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn c4_simplices() {
        assert_eq!(enumerate_p_simplices(&c4(1), 1).unwrap().len(), 4);
        assert!(enumerate_p_simplices(&c4(2), 2).unwrap().is_empty());
    }

    #[test]
    fn k4_has_four_triangles() {
        assert_eq!(enumerate_p_simplices(&k4(2), 2).unwrap().len(), 4);
    }

    #[test]
    fn budget_is_enforced() {
        let c = c4(1).with_budget(3);
        assert!(matches!(
            enumerate_p_simplices(&c, 1),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn single_edge_boundary_column() {
        let c = CliqueComplexView::from_edges(2, &[(0, 1)], 1).unwrap();
        let b = boundary_matrix(&c, 1).unwrap();
        assert_eq!(b.rows, vec![s(&[0]), s(&[1])]);
        assert_eq!(b.cols, vec![s(&[0, 1])]);
        assert_eq!(b.entry(0, 0), -1);
        assert_eq!(b.entry(1, 0), 1);
    }

    #[test]
    fn k3_triangle_boundary_column() {
        let b = boundary_matrix(&k3(2), 2).unwrap();
        assert_eq!(b.rows, vec![s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]);
        let col: Vec<i8> = (0..3).map(|r| b.entry(r, 0)).collect();
        assert_eq!(col, vec![1, -1, 1]);
    }

    #[test]
    fn boundary_of_boundary_is_zero() {
        for c in [k4(0), c4(0), k3(0)] {
            let n = c.vertex_count();
            for p in 1..n - 1 {
                let bp = boundary_matrix(&c, p).unwrap();
                let bp1 = boundary_matrix(&c, p + 1).unwrap();
                if bp1.cols.is_empty() {
                    continue;
                }
                // (d_p * d_{p+1})[r][c] over integers.
                for (cidx, entries1) in bp1.col_entries.iter().enumerate() {
                    let mut acc = vec![0i64; bp.rows.len()];
                    for &(mid, s1) in entries1 {
                        for &(r, s0) in &bp.col_entries[mid] {
                            acc[r] += i64::from(s0) * i64::from(s1);
                        }
                    }
                    assert!(
                        acc.iter().all(|&x| x == 0),
                        "nonzero at column {cidx} of d_{}",
                        p + 1
                    );
                }
            }
        }
    }

    #[test]
    fn k3_hodge_at_p1_is_three_identity() {
        let l = hodge_laplacian(&k3(1), 1).unwrap();
        let expect = DenseSymMatrix::from_rows_i64(&[
            vec![3, 0, 0],
            vec![0, 3, 0],
            vec![0, 0, 3],
        ]);
        assert_eq!(l, expect);
    }

    #[test]
    fn single_edge_hodge_at_p0() {
        let c = CliqueComplexView::from_edges(2, &[(0, 1)], 0).unwrap();
        let l = hodge_laplacian(&c, 0).unwrap();
        assert_eq!(l, DenseSymMatrix::from_rows_i64(&[vec![1, -1], vec![-1, 1]]));
    }

    #[test]
    fn betti_values() {
        assert_eq!(betti_exact(&c4(1), 1).unwrap(), 1);
        assert_eq!(betti_exact(&k3(1), 1).unwrap(), 0);
        let two_edges =
            CliqueComplexView::from_edges(4, &[(0, 1), (2, 3)], 0).unwrap();
        assert_eq!(betti_exact(&two_edges, 0).unwrap(), 2);
    }

    #[test]
    fn c4_hodge_kernel_dim_is_betti() {
        let l = hodge_laplacian(&c4(1), 1).unwrap();
        assert_eq!(l.kernel_dim_exact(), 1);
        assert_eq!(l.kernel_dim_float(1e-8), 1);
    }

    #[test]
    fn max_dimension_examples() {
        assert_eq!(max_dimension(&k4(0)).unwrap(), 3);
        assert_eq!(max_dimension(&c4(0)).unwrap(), 1);
        let isolated = CliqueComplexView::from_edges(3, &[], 0).unwrap();
        assert_eq!(max_dimension(&isolated).unwrap(), 0);
    }
}
