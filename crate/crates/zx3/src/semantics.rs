//! The standard interpretation ⟦·⟧: exact contraction of a diagram into a
//! matrix over ℤ[ω], and the brute-force semantic equality oracle.
//!
//! Generator coefficients are unnormalized (1/√3 factors dropped), so the
//! interpretation is faithful up to a nonzero scalar, which is the notion of
//! equality used throughout. Index convention: the leftmost boundary in the
//! inputs (outputs) list is the most significant ternary digit of the column
//! (row) index.
//!
//! Red spider bras are the *adjoints* of the kets, not transposes; this is
//! what makes the red 1→1 matrix come out right, and it is the reason edges
//! carry an orientation in [`crate::diagram`]. The choice is pinned down by a
//! test in the acceptance suite.

use crate::arith::{Eisenstein, ExactMatrix, PhasePair, ScalarVerdict};
use crate::diagram::{Diagram, DiagramError, NodeId, NodeKind};
use std::collections::BTreeMap;
use thiserror::Error;

/// Default cap on the number of open legs of any intermediate tensor.
pub const DEFAULT_SIZE_CAP: usize = 10;

/// Contraction cap: the `ZX3_SIZE_CAP` environment variable if set, else 10.
pub fn size_cap() -> usize {
    std::env::var("ZX3_SIZE_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

#[derive(Clone, Debug, Error)]
pub enum SemanticsError {
    #[error("invalid diagram: {0:?}")]
    Invalid(Vec<DiagramError>),
    #[error("intermediate tensor would need {needed} legs, cap is {cap} (set ZX3_SIZE_CAP to raise)")]
    SizeCap { needed: usize, cap: usize },
    #[error("impossible degree {degree} for {kind:?}")]
    BadDegree { kind: NodeKind, degree: usize },
}

/// Unnormalized kets of the Fourier basis: |+⟩, |ω⟩, |ω̄⟩.
fn xket(j: u8, i: usize) -> Eisenstein {
    // xket(j)[i] = ω^(j·i) with the sign convention |ω⟩ = (1, ω, ω̄)
    match j {
        0 => Eisenstein::ONE,
        1 => Eisenstein::omega_pow((i % 3) as u8),
        _ => Eisenstein::omega_pow(((2 * i) % 3) as u8),
    }
}

/// The matrix of a single generator at the given arity.
pub fn generator_matrix(
    kind: NodeKind,
    n_in: usize,
    n_out: usize,
) -> Result<ExactMatrix, SemanticsError> {
    let rows = 3usize.pow(n_out as u32);
    let cols = 3usize.pow(n_in as u32);
    match kind {
        NodeKind::ZSpider(p) => {
            let mut m = ExactMatrix::zero(rows, cols);
            for j in 0..3u8 {
                // |j…j⟩⟨j…j| lands at the "repunit" indices
                let r: usize = (0..n_out).fold(0, |acc, _| acc * 3 + j as usize);
                let c: usize = (0..n_in).fold(0, |acc, _| acc * 3 + j as usize);
                m[(r, c)] = m[(r, c)] + phase_coeff(p, j);
            }
            Ok(m)
        }
        NodeKind::XSpider(p) => {
            let mut m = ExactMatrix::zero(rows, cols);
            for j in 0..3u8 {
                let c_j = phase_coeff(p, j);
                for r in 0..rows {
                    let ket: Eisenstein = digits(r, n_out)
                        .into_iter()
                        .fold(Eisenstein::ONE, |acc, d| acc * xket(j, d));
                    for c in 0..cols {
                        let bra: Eisenstein = digits(c, n_in)
                            .into_iter()
                            .fold(Eisenstein::ONE, |acc, d| acc * xket(j, d).conj());
                        m[(r, c)] = m[(r, c)] + c_j * ket * bra;
                    }
                }
            }
            Ok(m)
        }
        NodeKind::H | NodeKind::HDag => {
            if n_in + n_out != 2 {
                return Err(SemanticsError::BadDegree {
                    kind,
                    degree: n_in + n_out,
                });
            }
            let mut m = ExactMatrix::zero(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    let mut ds = digits(r, n_out);
                    ds.extend(digits(c, n_in));
                    let e = Eisenstein::omega_pow(((ds[0] * ds[1]) % 3) as u8);
                    m[(r, c)] = if kind == NodeKind::H { e } else { e.conj() };
                }
            }
            Ok(m)
        }
        NodeKind::Boundary => Err(SemanticsError::BadDegree {
            kind,
            degree: n_in + n_out,
        }),
    }
}

fn phase_coeff(p: PhasePair, j: u8) -> Eisenstein {
    match j {
        0 => Eisenstein::ONE,
        1 => Eisenstein::omega_pow(p.a),
        _ => Eisenstein::omega_pow(p.b),
    }
}

/// Ternary digits of `idx`, most significant first, `len` digits.
fn digits(idx: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    let mut x = idx;
    for d in out.iter_mut().rev() {
        *d = x % 3;
        x /= 3;
    }
    out
}

// ---------------------------------------------------------------------------
// Tensor network contraction
// ---------------------------------------------------------------------------

/// A leg of a tensor: either an internal bond (keyed by edge index) or an open
/// leg attached to a boundary node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Leg {
    Bond(usize),
    Open(NodeId),
}

/// Dense tensor with all legs of dimension 3, entries row-major with the
/// first leg most significant.
#[derive(Clone, Debug)]
struct Tensor {
    legs: Vec<Leg>,
    data: Vec<Eisenstein>,
}

impl Tensor {
    fn scalar(v: Eisenstein) -> Tensor {
        Tensor {
            legs: Vec::new(),
            data: vec![v],
        }
    }

    fn rank(&self) -> usize {
        self.legs.len()
    }

    /// Contract out every repeated bond label inside this tensor (self-loops).
    fn self_trace(mut self) -> Tensor {
        loop {
            let mut pair = None;
            'outer: for i in 0..self.legs.len() {
                for j in i + 1..self.legs.len() {
                    if self.legs[i] == self.legs[j] {
                        pair = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let Some((i, j)) = pair else { return self };
            let n = self.legs.len();
            let mut legs = Vec::with_capacity(n - 2);
            for (k, &l) in self.legs.iter().enumerate() {
                if k != i && k != j {
                    legs.push(l);
                }
            }
            let mut data = vec![Eisenstein::ZERO; 3usize.pow((n - 2) as u32)];
            for (flat, slot) in data.iter_mut().enumerate() {
                let free = digits(flat, n - 2);
                for d in 0..3usize {
                    let mut full = Vec::with_capacity(n);
                    let mut it = free.iter();
                    for k in 0..n {
                        if k == i || k == j {
                            full.push(d);
                        } else {
                            full.push(*it.next().unwrap());
                        }
                    }
                    *slot = *slot + self.data[flat_index(&full)];
                }
            }
            self = Tensor { legs, data };
        }
    }
}

fn flat_index(ds: &[usize]) -> usize {
    ds.iter().fold(0, |acc, &d| acc * 3 + d)
}

/// Contract two tensors over all bonds they share.
fn contract(a: &Tensor, b: &Tensor) -> Tensor {
    let shared: Vec<Leg> = a
        .legs
        .iter()
        .copied()
        .filter(|l| matches!(l, Leg::Bond(_)) && b.legs.contains(l))
        .collect();
    let a_keep: Vec<usize> = (0..a.legs.len())
        .filter(|&k| !shared.contains(&a.legs[k]))
        .collect();
    let b_keep: Vec<usize> = (0..b.legs.len())
        .filter(|&k| !shared.contains(&b.legs[k]))
        .collect();
    let a_shared: Vec<usize> = shared
        .iter()
        .map(|l| a.legs.iter().position(|x| x == l).unwrap())
        .collect();
    let b_shared: Vec<usize> = shared
        .iter()
        .map(|l| b.legs.iter().position(|x| x == l).unwrap())
        .collect();

    let mut legs: Vec<Leg> = a_keep.iter().map(|&k| a.legs[k]).collect();
    legs.extend(b_keep.iter().map(|&k| b.legs[k]));
    let out_rank = legs.len();
    let mut data = vec![Eisenstein::ZERO; 3usize.pow(out_rank as u32)];

    let s = shared.len();
    for (flat, slot) in data.iter_mut().enumerate() {
        let ds = digits(flat, out_rank);
        let (da_free, db_free) = ds.split_at(a_keep.len());
        for sum_flat in 0..3usize.pow(s as u32) {
            let sd = digits(sum_flat, s);
            let mut ia = vec![0usize; a.legs.len()];
            for (pos, &k) in a_keep.iter().enumerate() {
                ia[k] = da_free[pos];
            }
            for (pos, &k) in a_shared.iter().enumerate() {
                ia[k] = sd[pos];
            }
            let mut ib = vec![0usize; b.legs.len()];
            for (pos, &k) in b_keep.iter().enumerate() {
                ib[k] = db_free[pos];
            }
            for (pos, &k) in b_shared.iter().enumerate() {
                ib[k] = sd[pos];
            }
            *slot = *slot + a.data[flat_index(&ia)] * b.data[flat_index(&ib)];
        }
    }
    Tensor { legs, data }
}

/// Build the tensor of one node. `ports` lists, for each incident edge slot in
/// edge order, the leg label and whether the node sits on the source (output)
/// side of that edge.
fn node_tensor(kind: NodeKind, ports: &[(Leg, bool)]) -> Result<Tensor, SemanticsError> {
    let rank = ports.len();
    let legs: Vec<Leg> = ports.iter().map(|&(l, _)| l).collect();
    let mut data = vec![Eisenstein::ZERO; 3usize.pow(rank as u32)];
    match kind {
        NodeKind::ZSpider(p) => {
            for j in 0..3u8 {
                let idx = vec![j as usize; rank];
                data[flat_index(&idx)] = data[flat_index(&idx)] + phase_coeff(p, j);
            }
        }
        NodeKind::XSpider(p) => {
            for (flat, slot) in data.iter_mut().enumerate() {
                let ds = digits(flat, rank);
                for j in 0..3u8 {
                    let mut term = phase_coeff(p, j);
                    for (k, &(_, is_out)) in ports.iter().enumerate() {
                        let f = xket(j, ds[k]);
                        term = term * if is_out { f } else { f.conj() };
                    }
                    *slot = *slot + term;
                }
            }
        }
        NodeKind::H | NodeKind::HDag => {
            if rank != 2 {
                return Err(SemanticsError::BadDegree { kind, degree: rank });
            }
            for (flat, slot) in data.iter_mut().enumerate() {
                let ds = digits(flat, 2);
                let e = Eisenstein::omega_pow(((ds[0] * ds[1]) % 3) as u8);
                *slot = if kind == NodeKind::H { e } else { e.conj() };
            }
        }
        NodeKind::Boundary => unreachable!("boundaries are not tensors"),
    }
    Ok(Tensor { legs, data })
}

/// Interpret a diagram k → l as an exact 3^l × 3^k matrix.
pub fn interpret(d: &Diagram) -> Result<ExactMatrix, SemanticsError> {
    interpret_with_cap(d, size_cap())
}

pub fn interpret_with_cap(d: &Diagram, cap: usize) -> Result<ExactMatrix, SemanticsError> {
    d.validate().map_err(SemanticsError::Invalid)?;

    // Ports per node, in edge order.
    let mut ports: BTreeMap<NodeId, Vec<(Leg, bool)>> = BTreeMap::new();
    let is_boundary = |id: NodeId| d.nodes[&id] == NodeKind::Boundary;
    let mut tensors: Vec<Tensor> = Vec::new();

    for (eidx, &(a, b)) in d.edges.iter().enumerate() {
        match (is_boundary(a), is_boundary(b)) {
            (false, false) => {
                ports.entry(a).or_default().push((Leg::Bond(eidx), true));
                ports.entry(b).or_default().push((Leg::Bond(eidx), false));
            }
            (true, false) => {
                // wire from boundary a into node b: open leg named after a
                ports.entry(b).or_default().push((Leg::Open(a), false));
            }
            (false, true) => {
                ports.entry(a).or_default().push((Leg::Open(b), true));
            }
            (true, true) => {
                // bare wire: identity tensor with two open legs
                let mut t = Tensor {
                    legs: vec![Leg::Open(a), Leg::Open(b)],
                    data: vec![Eisenstein::ZERO; 9],
                };
                for j in 0..3 {
                    t.data[j * 3 + j] = Eisenstein::ONE;
                }
                tensors.push(t);
            }
        }
    }

    for (&id, &kind) in &d.nodes {
        if kind == NodeKind::Boundary {
            continue;
        }
        let p = ports.remove(&id).unwrap_or_default();
        if p.len() > cap {
            return Err(SemanticsError::SizeCap {
                needed: p.len(),
                cap,
            });
        }
        tensors.push(node_tensor(kind, &p)?.self_trace());
    }

    // Greedy pairwise contraction: among tensor pairs sharing a bond, pick the
    // one whose merge has the fewest legs.
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..tensors.len() {
            for j in i + 1..tensors.len() {
                let shared = tensors[i]
                    .legs
                    .iter()
                    .filter(|l| matches!(l, Leg::Bond(_)) && tensors[j].legs.contains(l))
                    .count();
                if shared == 0 {
                    continue;
                }
                let merged = tensors[i].rank() + tensors[j].rank() - 2 * shared;
                if best.map_or(true, |(_, _, m)| merged < m) {
                    best = Some((i, j, merged));
                }
            }
        }
        let Some((i, j, merged)) = best else { break };
        if merged > cap {
            return Err(SemanticsError::SizeCap { needed: merged, cap });
        }
        let tj = tensors.remove(j);
        let ti = tensors.remove(i);
        tensors.push(contract(&ti, &tj).self_trace());
    }

    // Disconnected pieces: multiply scalars, outer-product the rest.
    let mut result = Tensor::scalar(Eisenstein::ONE);
    for t in tensors {
        if result.rank() + t.rank() > cap.max(d.inputs.len() + d.outputs.len()) {
            return Err(SemanticsError::SizeCap {
                needed: result.rank() + t.rank(),
                cap,
            });
        }
        result = contract(&result, &t);
    }

    // Lay out legs as [outputs..., inputs...] in boundary order.
    let want: Vec<Leg> = d
        .outputs
        .iter()
        .chain(d.inputs.iter())
        .map(|&b| Leg::Open(b))
        .collect();
    debug_assert_eq!(result.legs.len(), want.len());
    let perm: Vec<usize> = want
        .iter()
        .map(|l| result.legs.iter().position(|x| x == l).expect("missing leg"))
        .collect();

    let l = d.outputs.len();
    let k = d.inputs.len();
    let rows = 3usize.pow(l as u32);
    let cols = 3usize.pow(k as u32);
    let mut m = ExactMatrix::zero(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            let mut ds = digits(r, l);
            ds.extend(digits(c, k));
            let mut src = vec![0usize; ds.len()];
            for (pos, &from) in perm.iter().enumerate() {
                src[from] = ds[pos];
            }
            m[(r, c)] = result.data[flat_index(&src)];
        }
    }
    Ok(m)
}

/// Verdict of comparing two diagrams under ⟦·⟧ up to a nonzero scalar.
pub fn semantically_equal(d1: &Diagram, d2: &Diagram) -> Result<ScalarVerdict, SemanticsError> {
    let m1 = interpret(d1)?;
    let m2 = interpret(d2)?;
    Ok(m1.equal_up_to_scalar(&m2))
}
