//! The three graph constructions of the pipeline:
//!
//! 1. clique complex at dimension p -> signed marked oracle whose Laplacian
//!    matches the combinatorial Hodge Laplacian (plus the direct matrix form
//!    of that construction);
//! 2. negative subdivision, turning balance questions into bipartiteness
//!    questions, as an explicit rewrite and as an oracle transformation;
//! 3. the marked-to-traditional access gadget, appending a line plus an
//!    unbalanced (or odd) triangle so the vertex set becomes contiguous.

use crate::complex::{enumerate_p_simplices, sng, CliqueComplexView, Simplex};
use crate::error::{Error, Result};
use crate::graph::{SignedGraph, UnsignedGraph, MAX_N_BITS};
use crate::linalg::DenseSymMatrix;
use crate::oracle::{AccessMode, SparseAccess};

fn ceil_log2(x: u64) -> u32 {
    debug_assert!(x >= 1);
    64 - (x - 1).leading_zeros()
}

fn bits_for(x: u64) -> u32 {
    64 - x.leading_zeros()
}

/// Pairwise signature of the construction: minus the sum of the
/// lower-adjacency and upper-adjacency sign products. The lower term needs
/// the shared face to be a nonempty simplex (automatic for cliques), the
/// upper term needs the union to be a simplex of the complex. When both
/// adjacencies hold the products cancel to zero.
pub fn pairwise_sign(c: &CliqueComplexView, sigma: Simplex, tau: Simplex) -> i8 {
    let inter = Simplex(sigma.0 & tau.0);
    let lower = if inter.0 != 0 {
        sng(inter, sigma) * sng(inter, tau)
    } else {
        0
    };
    let union = Simplex(sigma.0 | tau.0);
    let upper = if c.is_simplex(union) {
        sng(sigma, union) * sng(tau, union)
    } else {
        0
    };
    -(lower + upper)
}

/// A clique-homology instance prepared for the signed-oracle reduction.
#[derive(Debug, Clone)]
pub struct CliqueReductionInstance {
    complex: CliqueComplexView,
}

impl CliqueReductionInstance {
    /// Requires `0 <= p <= n-2`: at `p = n-1` the candidate count
    /// `(n-p-1)(p+1)` is zero and the slot register would be empty.
    pub fn new(complex: CliqueComplexView) -> Result<Self> {
        let n = complex.vertex_count();
        let p = complex.home_dimension();
        if n < 2 || p > n - 2 {
            return Err(Error::InvalidDimension {
                p,
                max: n.saturating_sub(2),
            });
        }
        Ok(Self { complex })
    }

    pub fn complex(&self) -> &CliqueComplexView {
        &self.complex
    }

    pub fn p(&self) -> usize {
        self.complex.home_dimension()
    }

    pub fn n(&self) -> usize {
        self.complex.vertex_count()
    }

    /// Candidate neighbors per simplex: one per (removed vertex, added
    /// outside vertex) pair.
    pub fn candidate_count(&self) -> u64 {
        ((self.n() - self.p() - 1) * (self.p() + 1)) as u64
    }

    pub fn m_bits(&self) -> u32 {
        ceil_log2(self.candidate_count())
    }

    /// Degree bound of the produced oracle: candidate count rounded up to a
    /// power of two, floored at 2 so the invalid-row detector stays usable.
    pub fn s_bound(&self) -> u64 {
        (1u64 << self.m_bits()).max(2)
    }
}

fn nth_set_bit(bits: u64, idx: u32) -> Option<u32> {
    let mut rem = bits;
    for _ in 0..idx {
        if rem == 0 {
            return None;
        }
        rem &= rem - 1;
    }
    if rem == 0 {
        None
    } else {
        Some(rem.trailing_zeros())
    }
}

/// Signed marked sparse access for the graph whose vertices are the
/// p-simplices of the clique complex (encoded as bitstrings) and whose
/// signed Laplacian reproduces the Hodge Laplacian.
///
/// `adj` enumerates remove-one/add-one candidates at slot `l` via
/// `a = l rem (p+1)`, `b = floor(l / (p+1))`; candidates are verified only
/// by `sign`, so zero-sign entries may name non-simplices (lenient rows).
/// `sign` makes exactly one `adj` call plus local work.
pub fn clique_oracle(inst: &CliqueReductionInstance) -> SparseAccess {
    let n = inst.n();
    let p = inst.p();
    let s_bound = inst.s_bound();
    let n_bits = n as u32;

    let c_adj = inst.complex.clone();
    let adj = move |i: u64, l: u64| -> u64 {
        let sigma = Simplex(i);
        if sigma.card() as usize != p + 1 || !c_adj.is_simplex(sigma) {
            return l;
        }
        let a = (l % (p as u64 + 1)) as u32;
        let b = l / (p as u64 + 1);
        if b >= (n - p - 1) as u64 {
            return 0;
        }
        let removed = nth_set_bit(sigma.0, a).expect("a < p+1 set bits");
        let outside = !sigma.0 & ((1u64 << n) - 1);
        let added = nth_set_bit(outside, b as u32).expect("b < n-p-1 outside bits");
        (sigma.0 & !(1u64 << removed)) | (1u64 << added)
    };

    let base = SparseAccess::new_signed(n_bits, s_bound, AccessMode::Marked, adj, |_, _| 0)
        .expect("s_bound >= 2");

    let c_sign = inst.complex.clone();
    let counted = base.clone();
    let sign = move |i: u64, l: u64| -> i8 {
        let j = counted.adj(i, l);
        let sigma = Simplex(i);
        let tau = Simplex(j);
        if j == 0 || tau.card() as usize != p + 1 || !c_sign.is_simplex(tau) {
            return 0;
        }
        if sigma.card() as usize != p + 1 || !c_sign.is_simplex(sigma) {
            return 0;
        }
        pairwise_sign(&c_sign, sigma, tau)
    };

    base.with_sign(sign)
}

/// Direct form of the reduced graph's Laplacian: diagonal
/// `p + 1 + updeg(sigma)` (the `p + 1` lower term is absent at p = 0, where
/// simplices have no faces) and off-diagonal `-s(sigma, tau)` from the
/// cancellation formula. Built independently of the boundary-operator
/// products so the two routes can be compared entrywise.
pub fn construction_matrix(c: &CliqueComplexView, p: usize) -> Result<DenseSymMatrix> {
    let simplices = enumerate_p_simplices(c, p)?;
    let side = simplices.len();
    let mut m = DenseSymMatrix::zeros(side);
    for (i, &sigma) in simplices.iter().enumerate() {
        let lower = if p == 0 { 0 } else { p as i64 + 1 };
        m.set_symmetric(
            i,
            i,
            num_rational::BigRational::from_integer(num_bigint::BigInt::from(
                lower + c.upper_degree(sigma) as i64,
            )),
        );
        for (j, &tau) in simplices.iter().enumerate().skip(i + 1) {
            let s = pairwise_sign(c, sigma, tau);
            if s != 0 {
                m.set_symmetric(
                    i,
                    j,
                    num_rational::BigRational::from_integer(num_bigint::BigInt::from(-i64::from(
                        s,
                    ))),
                );
            }
        }
    }
    Ok(m)
}

/// Replaces every positive edge `{u, v}` by a path `u - w - v` through a
/// fresh vertex, keeps negative edges, and drops the signature. New ids are
/// allocated sequentially from `2^n` in ascending positive-edge order.
pub fn negative_subdivision_explicit(g: &SignedGraph) -> Result<UnsignedGraph> {
    let base = 1u64 << g.n_bits();
    let positive = g.positive_edges();
    let last = base + positive.len() as u64;
    let out_bits = bits_for(last.max(base));
    if out_bits > MAX_N_BITS {
        return Err(Error::IdSpaceExhausted {
            needed: positive.len() as u64,
            n_bits: g.n_bits(),
        });
    }
    let mut out = UnsignedGraph::new(out_bits);
    for v in g.base().vertices() {
        out.add_vertex(v)?;
    }
    for (u, v, s) in g.edges() {
        if s == -1 {
            out.add_edge(u, v)?;
        }
    }
    for (k, (u, v)) in positive.into_iter().enumerate() {
        let w = base + k as u64;
        out.add_edge(u, w)?;
        out.add_edge(w, v)?;
    }
    Ok(out)
}

/// Id scheme for subdivision vertices in the oracle construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubdivisionScheme {
    /// One subdivision vertex per positive edge, addressed from the smaller
    /// endpoint's slot; the mirror encoding is a marked non-vertex.
    Canonical,
    /// Raw per-endpoint encoding: both endpoints mint their own subdivision
    /// id, so each positive edge yields two (asymmetric) path vertices.
    DuplicatePerEndpoint,
}

/// Unsigned marked oracle for the negative-subdivision graph over the index
/// space of width `n + m + 1` bits, with the subdivision vertex for slot
/// `(i, l)` at id `2^n + i * 2^m + l` and original endpoints at its
/// positions 0 and 1.
pub fn negative_subdivision_oracle(
    o: &SparseAccess,
    scheme: SubdivisionScheme,
) -> Result<SparseAccess> {
    if !o.is_signed() {
        return Err(Error::UnsignedOracle);
    }
    let n = o.n_bits();
    let s = o.s_bound();
    let m = ceil_log2(s);
    let out_bits = n + m + 1;
    if out_bits > MAX_N_BITS {
        return Err(Error::IdSpaceExhausted {
            needed: 1 << m,
            n_bits: n,
        });
    }
    let two_n = 1u64 << n;
    let inner = o.clone();
    let adj = move |i: u64, l: u64| -> u64 {
        let enc = |v: u64, slot: u64| two_n + (v << m) + slot;
        if i < two_n {
            if i == 0 || inner.invalid_row(i) {
                return l;
            }
            // Walk the underlying row and keep only real edges (nonzero
            // adjacency and nonzero sign), so the output row is compact:
            // a lenient input can interleave zero-sign candidates, and a
            // leading placeholder would trip the invalid-row detector.
            let mut seen = 0;
            for l0 in 0..inner.s_bound() {
                let j = inner.adj(i, l0);
                if j == 0 {
                    continue;
                }
                let s = inner.sign(i, l0);
                if s == 0 {
                    continue;
                }
                if seen < l {
                    seen += 1;
                    continue;
                }
                return match s {
                    -1 => j,
                    _ => {
                        if scheme == SubdivisionScheme::DuplicatePerEndpoint || i < j {
                            enc(i, l0)
                        } else {
                            // Canonical id lives on the smaller endpoint's
                            // row; find the slot that points back here.
                            for l2 in 0..inner.s_bound() {
                                if inner.adj(j, l2) == i && inner.sign(j, l2) != 0 {
                                    return enc(j, l2);
                                }
                            }
                            0
                        }
                    }
                };
            }
            0
        } else {
            let r = i - two_n;
            let i2 = r >> m;
            let l2 = r & ((1 << m) - 1);
            if i2 == 0 || i2 >= two_n || inner.invalid_row(i2) {
                return l;
            }
            let j2 = inner.adj(i2, l2);
            // Slots not carrying a positive edge are non-vertices: an
            // all-zero row would read as a spurious isolated vertex.
            if j2 == 0 || inner.sign(i2, l2) != 1 {
                return l;
            }
            if scheme == SubdivisionScheme::Canonical && i2 > j2 {
                return l;
            }
            match l {
                0 => i2,
                1 => j2,
                _ => 0,
            }
        }
    };
    SparseAccess::new_unsigned(out_bits, s.max(2), AccessMode::Marked, adj)
}

/// Geometry of the marked-to-traditional gadget.
#[derive(Debug, Clone, Copy)]
pub struct GadgetLayout {
    pub n_bits: u32,
    pub s_bound: u64,
    /// Line length `A = ceil(2^n / S)`; line vertices are `2^n .. 2^n + A`.
    pub line_len: u64,
    /// Total vertex count `N' = 2^n + A + 3`.
    pub n_prime: u64,
    /// Output index width (smallest b with `2^b > N'`).
    pub out_bits: u32,
    /// The three appended triangle vertices.
    pub triangle: [u64; 3],
}

impl GadgetLayout {
    pub fn new(n_bits: u32, s_bound: u64) -> Self {
        let two_n = 1u64 << n_bits;
        let a = two_n.div_ceil(s_bound);
        let n_prime = two_n + a + 3;
        Self {
            n_bits,
            s_bound,
            line_len: a,
            n_prime,
            out_bits: bits_for(n_prime),
            triangle: [two_n + a + 1, two_n + a + 2, two_n + a + 3],
        }
    }

    /// The size claim `N' <= 2^(n+1)`; holds for `S >= 2` once `n >= 3`.
    pub fn within_double_bound(&self) -> bool {
        self.n_prime <= 1u64 << (self.n_bits + 1)
    }
}

/// Converts a marked oracle to traditional access over `{1, ..., N'}`:
/// non-vertex bitstrings attach to their nearest line vertex, the line ends
/// in a triangle whose component is kept unbalanced (signed: one negative
/// edge) or non-bipartite (unsigned: the odd cycle itself). Degree bound
/// grows to `S + 2`.
pub fn marked_to_traditional(o: &SparseAccess) -> Result<SparseAccess> {
    let layout = GadgetLayout::new(o.n_bits(), o.s_bound());
    let two_n = 1u64 << o.n_bits();
    let s = o.s_bound();
    let a = layout.line_len;
    let [t1, t2, t3] = layout.triangle;
    let n_prime = layout.n_prime;

    let inner = o.clone();
    let adj = move |i: u64, l: u64| -> u64 {
        if i == 0 || i > n_prime {
            return l;
        }
        if i < two_n {
            if inner.invalid_row(i) {
                // Former non-vertex: single edge to line vertex 2^n + ceil(i/S).
                return if l == 0 { two_n + i.div_ceil(s) } else { 0 };
            }
            return if l < s { inner.adj(i, l) } else { 0 };
        }
        if i <= two_n + a {
            // Line vertex 2^n + k.
            let k = i - two_n;
            if l == 0 {
                return i + 1;
            }
            let first_attached = if k == 0 {
                1 // the l-offset correction for the line start
            } else {
                if l == 1 {
                    return i - 1;
                }
                2
            };
            if k == 0 {
                // Bucket ceil(x/S) = 0 holds only x = 0, which is the
                // placeholder, so the line start has no attachments.
                return 0;
            }
            let lo = (k - 1) * s + 1;
            let hi = (k * s).min(two_n - 1);
            let mut slot = first_attached;
            for x in lo..=hi {
                if inner.invalid_row(x) {
                    if slot == l {
                        return x;
                    }
                    slot += 1;
                }
            }
            return 0;
        }
        // Triangle rows, verbatim.
        let row: [u64; 3] = if i == t1 {
            [i - 1, i + 1, i + 2]
        } else if i == t2 {
            [i - 1, i + 1, 0]
        } else {
            [i - 1, i - 2, 0]
        };
        row.get(l as usize).copied().unwrap_or(0)
    };

    let base = SparseAccess::new_unsigned(layout.out_bits, s + 2, AccessMode::Traditional, adj)?;
    if !o.is_signed() {
        return Ok(base);
    }

    let inner = o.clone();
    let counted = base.clone();
    let sign = move |i: u64, l: u64| -> i8 {
        if i == 0 || i > n_prime {
            return 0; // marked row: sign stays on the placeholder convention
        }
        let j = counted.adj(i, l);
        if j == 0 {
            return 0;
        }
        if i < two_n && j < two_n && !inner.invalid_row(i) {
            return inner.sign(i, l);
        }
        if (i == t2 && j == t3) || (i == t3 && j == t2) {
            return -1;
        }
        1
    };
    Ok(base.with_sign(sign))
}
