//! Laplacian assembly (explicit and oracle-driven), the embedded
//! Hamiltonian that pads non-vertex indices with an identity block, classical
//! readback of the block-encoding entry oracles, and the classical stand-in
//! for the phase-estimation verifier.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{SignedGraph, UnsignedGraph};
use crate::linalg::DenseSymMatrix;
use crate::oracle::SparseAccess;

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Signed Laplacian over the ascending vertex order: degree on the
/// diagonal, minus the edge sign off the diagonal.
pub fn signed_laplacian(g: &SignedGraph) -> DenseSymMatrix {
    let vs: Vec<u64> = g.base().vertices().collect();
    let index: BTreeMap<u64, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut m = DenseSymMatrix::zeros(vs.len());
    for (i, &v) in vs.iter().enumerate() {
        m.set_symmetric(i, i, int(g.base().degree(v) as i64));
    }
    for (u, v, s) in g.edges() {
        m.set_symmetric(index[&u], index[&v], int(-i64::from(s)));
    }
    m
}

/// Signless Laplacian `Q = D + A` over the ascending vertex order; its
/// kernel dimension counts bipartite components.
pub fn signless_laplacian(g: &UnsignedGraph) -> DenseSymMatrix {
    let vs: Vec<u64> = g.vertices().collect();
    let index: BTreeMap<u64, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut m = DenseSymMatrix::zeros(vs.len());
    for (i, &v) in vs.iter().enumerate() {
        m.set_symmetric(i, i, int(g.degree(v) as i64));
    }
    for (u, v) in g.edges() {
        m.set_symmetric(index[&u], index[&v], int(1));
    }
    m
}

/// Oriented incidence rows (one per edge, smaller endpoint first): `+1` at
/// the smaller endpoint, `-s` at the larger. Satisfies `N^T N = L`.
#[derive(Debug, Clone)]
pub struct IncidenceMatrix {
    pub vertices: Vec<u64>,
    pub edges: Vec<(u64, u64)>,
    /// Row-major, edges x vertices.
    pub rows: Vec<Vec<i64>>,
}

impl IncidenceMatrix {
    /// Exact integer product `N^T N`.
    pub fn gram(&self) -> DenseSymMatrix {
        let side = self.vertices.len();
        DenseSymMatrix::from_int_fn(side, |i, j| {
            self.rows.iter().map(|r| r[i] * r[j]).sum()
        })
    }
}

pub fn incidence_matrix(g: &SignedGraph) -> IncidenceMatrix {
    let vertices: Vec<u64> = g.base().vertices().collect();
    let index: BTreeMap<u64, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::new();
    let mut rows = Vec::new();
    for (u, v, s) in g.edges() {
        let mut row = vec![0i64; vertices.len()];
        row[index[&u]] = 1;
        row[index[&v]] = -i64::from(s);
        edges.push((u, v));
        rows.push(row);
    }
    IncidenceMatrix {
        vertices,
        edges,
        rows,
    }
}

/// Diagonal convention when reading degrees back from an oracle: count
/// nonzero-sign entries (the materialized graph's degree) or nonzero
/// adjacency entries (what the entry-generation pseudocode computes). The
/// two differ exactly on lenient rows carrying zero-sign candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagMode {
    SignCount,
    AdjCount,
}

/// Row set of an assembled matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Restrict {
    /// Rows indexed by valid vertices only.
    Vertices,
    /// The whole `2^n` index square, with all-zero rows off the vertex set.
    FullIndex,
}

#[derive(Debug, Clone)]
pub struct AssembledMatrix {
    pub matrix: DenseSymMatrix,
    /// Row labels: vertex ids (or the full index range).
    pub labels: Vec<u64>,
}

fn valid_vertices(o: &SparseAccess, index_budget: u64) -> Result<Vec<u64>> {
    if o.index_count() > index_budget {
        return Err(Error::IndexBudgetExceeded {
            n_bits: o.n_bits(),
            budget: index_budget,
        });
    }
    Ok((1..o.index_count()).filter(|&i| !o.invalid_row(i)).collect())
}

/// Edge entries of a valid row: `(neighbor, sign)` with zero-sign entries
/// dropped; unsigned oracles yield the all-positive reading.
fn row_edge_entries(o: &SparseAccess, i: u64) -> Vec<(u64, i8)> {
    (0..o.s_bound())
        .filter_map(|l| {
            let j = o.adj(i, l);
            if j == 0 {
                return None;
            }
            let s = if o.is_signed() { o.sign(i, l) } else { 1 };
            (s != 0).then_some((j, s))
        })
        .collect()
}

/// Classical materialization of the matrix an oracle defines: off-diagonal
/// `-sign` (signed) or `+1` (unsigned, read as the all-negative signature,
/// i.e. the signless Laplacian), diagonal per `diag_mode`. Inconsistent
/// mirror entries raise an asymmetry error.
pub fn assemble_from_oracle(
    o: &SparseAccess,
    diag_mode: DiagMode,
    restrict: Restrict,
    index_budget: u64,
) -> Result<AssembledMatrix> {
    let vertices = valid_vertices(o, index_budget)?;
    let labels: Vec<u64> = match restrict {
        Restrict::Vertices => vertices.clone(),
        Restrict::FullIndex => (0..o.index_count()).collect(),
    };
    let pos: BTreeMap<u64, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let mut directed: BTreeMap<(u64, u64), i8> = BTreeMap::new();
    for &i in &vertices {
        for (j, s) in row_edge_entries(o, i) {
            directed.insert((i, j), s);
        }
    }
    for (&(i, j), &s) in &directed {
        if directed.get(&(j, i)) != Some(&s) {
            return Err(Error::Asymmetric { i, j });
        }
    }

    let mut m = DenseSymMatrix::zeros(labels.len());
    for &i in &vertices {
        let deg = match diag_mode {
            DiagMode::SignCount => o.sign_degree(i),
            DiagMode::AdjCount => o.adj_degree(i),
        };
        m.set_symmetric(pos[&i], pos[&i], int(deg as i64));
    }
    for (&(i, j), &s) in &directed {
        if i < j {
            if let (Some(&a), Some(&b)) = (pos.get(&i), pos.get(&j)) {
                let off = if o.is_signed() { -i64::from(s) } else { 1 };
                m.set_symmetric(a, b, int(off));
            }
        }
    }
    Ok(AssembledMatrix { matrix: m, labels })
}

/// The embedded Hamiltonian over the full index space, scaled by
/// `1/alpha`: the graph operator on vertex rows (signed Laplacian for
/// signed oracles, signless Laplacian for unsigned ones) and the identity
/// on every non-vertex row including 0, so padding indices cannot enter the
/// kernel.
pub fn embed_hamiltonian(o: &SparseAccess, alpha: u64, index_budget: u64) -> Result<DenseSymMatrix> {
    assert!(alpha > 0, "alpha must be positive");
    let vertices = valid_vertices(o, index_budget)?;
    let side = o.index_count() as usize;
    let in_v = {
        let mut mask = vec![false; side];
        for &v in &vertices {
            mask[v as usize] = true;
        }
        mask
    };

    let mut directed: BTreeMap<(u64, u64), i8> = BTreeMap::new();
    for &i in &vertices {
        for (j, s) in row_edge_entries(o, i) {
            directed.insert((i, j), s);
        }
    }
    for (&(i, j), &s) in &directed {
        if directed.get(&(j, i)) != Some(&s) {
            return Err(Error::Asymmetric { i, j });
        }
    }

    let mut m = DenseSymMatrix::zeros(side);
    for (i, &inside) in in_v.iter().enumerate() {
        if inside {
            m.set_symmetric(i, i, int(o.sign_degree(i as u64) as i64));
        } else {
            m.set_symmetric(i, i, int(1));
        }
    }
    for (&(i, j), &s) in &directed {
        if i < j {
            // Signless reading for unsigned oracles: +A off the diagonal.
            let off = if o.is_signed() { -i64::from(s) } else { 1 };
            m.set_symmetric(i as usize, j as usize, int(off));
        }
    }
    Ok(m.scaled(1, alpha as i64))
}

/// Matrix block read back from the row/entry oracles, with its
/// normalization `alpha = 2S` and ancilla width.
#[derive(Debug, Clone)]
pub struct BlockEncoding {
    pub matrix: DenseSymMatrix,
    pub alpha: u64,
    pub m_bits: u32,
}

/// Reconstructs the `(2S, m, 0)` block encoding of the embedded Hamiltonian
/// classically: the row oracle maps slot `l` to a column index (self for
/// the first padding slot, carrying the diagonal), the entry oracle yields
/// the normalized value. Entries must stay within magnitude 1.
pub fn block_encoding_assemble(
    o: &SparseAccess,
    diag_mode: DiagMode,
    index_budget: u64,
) -> Result<BlockEncoding> {
    if o.index_count() > index_budget {
        return Err(Error::IndexBudgetExceeded {
            n_bits: o.n_bits(),
            budget: index_budget,
        });
    }
    let s = o.s_bound();
    let alpha = 2 * s;
    // One slot past the neighbor list carries the diagonal, so the slot
    // register must cover S+1 positions.
    let m_bits = 64 - s.leading_zeros();
    let slots = 1u64 << m_bits;

    let o_row = |i: u64, l: u64| -> u64 {
        if o.invalid_row(i) {
            return if l == 0 { i } else { 0 };
        }
        let j = o.adj(i, l);
        if j != 0 {
            return j;
        }
        let first_padding = l == 0 || o.adj(i, l - 1) != 0;
        if first_padding {
            i
        } else {
            0
        }
    };
    let o_entry = |i: u64, l: u64| -> BigRational {
        let j = o_row(i, l);
        if o.invalid_row(i) {
            return if j == i && l == 0 {
                BigRational::new(BigInt::from(1), BigInt::from(alpha))
            } else {
                BigRational::zero()
            };
        }
        if j == i {
            let deg = match diag_mode {
                DiagMode::SignCount => o.sign_degree(i),
                DiagMode::AdjCount => o.adj_degree(i),
            };
            return BigRational::new(BigInt::from(deg), BigInt::from(alpha));
        }
        if j != 0 {
            let sgn = if o.is_signed() { o.sign(i, l) } else { -1 };
            return BigRational::new(BigInt::from(-i64::from(sgn)), BigInt::from(alpha));
        }
        BigRational::zero()
    };

    let side = o.index_count() as usize;
    let mut m = DenseSymMatrix::zeros(side);
    let one = BigRational::from_integer(BigInt::from(1));
    for i in 0..o.index_count() {
        for l in 0..slots {
            let j = o_row(i, l);
            let e = o_entry(i, l);
            if e.is_zero() {
                continue;
            }
            if e.abs() > one {
                return Err(Error::EntryMagnitude {
                    i,
                    j,
                    magnitude: to_f64(&e),
                });
            }
            // Repeated slots for the same cell (a lenient row can surface
            // the diagonal more than once) must agree.
            let cur = m.get(i as usize, j as usize);
            if !cur.is_zero() && cur != &e {
                return Err(Error::Asymmetric { i, j });
            }
            m.set_entry(i as usize, j as usize, e);
        }
    }
    if !m.is_symmetric() {
        return Err(Error::Asymmetric { i: 0, j: 0 });
    }
    Ok(BlockEncoding {
        matrix: m,
        alpha,
        m_bits,
    })
}

pub(crate) fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifierTask {
    Balance,
    Bipartite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Accept,
    Reject,
}

/// Outcome of the classical verifier simulation.
#[derive(Debug, Clone, Serialize)]
pub struct VerifierOutcome {
    pub task: VerifierTask,
    /// Smallest eigenvalue of the scaled embedded Hamiltonian.
    pub lambda_min: f64,
    pub delta: f64,
    /// Precision parameter `min(delta, 1) / alpha`.
    pub delta_prime: f64,
    pub alpha: u64,
    /// Phase-estimation precision `ceil(log2(1 / delta_prime))`.
    pub t_bits: u32,
    /// `lambda_min` rounded to `t_bits` fractional bits, when enabled.
    pub quantized_lambda: Option<f64>,
    pub decision: Decision,
    /// Set when the spectrum lands strictly between the promised branches.
    pub promise_warning: bool,
}

/// Classical stand-in for the phase-estimation protocol: builds
/// `H = (L + I_notV) / alpha` (balance) or `(Q + I_notV) / alpha`
/// (bipartite) with `alpha = 2S`, computes the smallest eigenvalue exactly,
/// and accepts below the midpoint `delta'/2` between the promised branches.
pub fn simulate_verifier(
    o: &SparseAccess,
    delta: f64,
    task: VerifierTask,
    quantize: bool,
    index_budget: u64,
) -> Result<VerifierOutcome> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    match task {
        VerifierTask::Balance if !o.is_signed() => return Err(Error::UnsignedOracle),
        VerifierTask::Bipartite if o.is_signed() => return Err(Error::SignedOracle),
        _ => {}
    }
    let alpha = 2 * o.s_bound();
    let h = embed_hamiltonian(o, alpha, index_budget)?;
    let lambda_min = h.lambda_min();
    let delta_prime = delta.min(1.0) / alpha as f64;
    let t_bits = (1.0 / delta_prime).log2().ceil().max(0.0) as u32;
    let quantized_lambda = quantize.then(|| {
        let scale = (1u64 << t_bits.min(52)) as f64;
        (lambda_min * scale).round() / scale
    });
    let effective = quantized_lambda.unwrap_or(lambda_min);
    let decision = if effective < delta_prime / 2.0 {
        Decision::Accept
    } else {
        Decision::Reject
    };
    let zero_tol = 1e-9 * h.gershgorin_scale();
    let promise_warning = lambda_min >= zero_tol && lambda_min < delta_prime - zero_tol;
    Ok(VerifierOutcome {
        task,
        lambda_min,
        delta,
        delta_prime,
        alpha,
        t_bits,
        quantized_lambda,
        decision,
        promise_warning,
    })
}
