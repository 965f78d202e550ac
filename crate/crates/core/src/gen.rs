//! Instance generators: exhaustive families over small labeled vertex sets
//! and seeded random samplers for the property harness.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{SignedGraph, UnsignedGraph};

fn bits_for_vertex(max_id: u64) -> u32 {
    (64 - max_id.leading_zeros()).max(2)
}

fn pairs(k: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for u in 1..=k {
        for v in u + 1..=k {
            out.push((u, v));
        }
    }
    out
}

/// Every unsigned graph on the labeled vertex set `{1, ..., k}` (all edge
/// subsets; vertices not touched by edges stay isolated).
pub fn all_unsigned_graphs(k: u64) -> Vec<UnsignedGraph> {
    let ps = pairs(k);
    let n_bits = bits_for_vertex(k);
    (0u64..1 << ps.len())
        .map(|mask| {
            let mut g = UnsignedGraph::new(n_bits);
            for v in 1..=k {
                g.add_vertex(v).unwrap();
            }
            for (idx, &(u, v)) in ps.iter().enumerate() {
                if mask >> idx & 1 == 1 {
                    g.add_edge(u, v).unwrap();
                }
            }
            g
        })
        .collect()
}

/// Every signed graph on `{1, ..., k}`: each vertex pair is absent,
/// positive, or negative (3^C(k,2) instances).
pub fn all_signed_graphs(k: u64) -> Vec<SignedGraph> {
    let ps = pairs(k);
    let n_bits = bits_for_vertex(k);
    let total = 3u64.pow(ps.len() as u32);
    (0..total)
        .map(|code| {
            let mut g = SignedGraph::new(n_bits);
            for v in 1..=k {
                g.add_vertex(v).unwrap();
            }
            let mut c = code;
            for &(u, v) in &ps {
                match c % 3 {
                    1 => g.add_edge(u, v, 1).unwrap(),
                    2 => g.add_edge(u, v, -1).unwrap(),
                    _ => {}
                }
                c /= 3;
            }
            g
        })
        .collect()
}

/// Random signed graph on `{1, ..., n_vertices}` with maximum degree at
/// most `s_bound`: candidate pairs are shuffled and admitted while degrees
/// allow, each with the given probability and a uniform sign.
pub fn random_signed_graph(
    rng: &mut impl Rng,
    n_vertices: u64,
    s_bound: u64,
    edge_prob: f64,
) -> SignedGraph {
    let mut g = SignedGraph::new(bits_for_vertex(n_vertices));
    for v in 1..=n_vertices {
        g.add_vertex(v).unwrap();
    }
    let mut ps = pairs(n_vertices);
    ps.shuffle(rng);
    for (u, v) in ps {
        if g.base().degree(u) as u64 >= s_bound || g.base().degree(v) as u64 >= s_bound {
            continue;
        }
        if rng.gen_bool(edge_prob) {
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            g.add_edge(u, v, s).unwrap();
        }
    }
    g
}

pub fn random_unsigned_graph(
    rng: &mut impl Rng,
    n_vertices: u64,
    s_bound: u64,
    edge_prob: f64,
) -> UnsignedGraph {
    random_signed_graph(rng, n_vertices, s_bound, edge_prob)
        .base()
        .clone()
}

/// Random signed graph over a sparse random subset of the `n_bits`-wide id
/// space (marked-access style: ids need not be contiguous).
pub fn random_marked_signed_graph(
    rng: &mut impl Rng,
    n_bits: u32,
    s_bound: u64,
    vertex_prob: f64,
    edge_prob: f64,
) -> SignedGraph {
    let mut g = SignedGraph::new(n_bits);
    let mut ids: Vec<u64> = (1..1u64 << n_bits)
        .filter(|_| rng.gen_bool(vertex_prob))
        .collect();
    if ids.is_empty() {
        ids.push(rng.gen_range(1..1u64 << n_bits));
    }
    for &v in &ids {
        g.add_vertex(v).unwrap();
    }
    let mut ps = Vec::new();
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            ps.push((u, v));
        }
    }
    ps.shuffle(rng);
    for (u, v) in ps {
        if g.base().degree(u) as u64 >= s_bound || g.base().degree(v) as u64 >= s_bound {
            continue;
        }
        if rng.gen_bool(edge_prob) {
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            g.add_edge(u, v, s).unwrap();
        }
    }
    g
}

/// Random 0-based edge set over `{0, ..., n-1}` for clique-complex work.
pub fn random_complex_edges(rng: &mut impl Rng, n: usize, edge_prob: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                out.push((u, v));
            }
        }
    }
    out
}
