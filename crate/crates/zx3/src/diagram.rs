//! Open multigraph diagrams over the qutrit spider generators.
//!
//! A diagram is a set of nodes (green and red spiders, Hadamard boxes and
//! their adjoints, boundaries) together with a multiset of edges and ordered
//! input/output boundary lists. Self-loops and parallel edges are allowed on
//! spiders; H and H† have degree exactly 2 and boundaries degree exactly 1.
//!
//! Edges are stored as *ordered* pairs. The first endpoint attaches to the
//! source node on its output side, the second to the target on its input
//! side. Green spiders, H and H† are symmetric tensors, so for them the
//! orientation is invisible; red spiders are genuinely orientation-sensitive
//! (their bras are adjoints of their kets, not transposes), so flipping an
//! edge at a red spider can change the denoted matrix. Wherever diagrams are
//! built by composition the orientation always runs from earlier to later
//! layers, matching the generator reading.

use crate::arith::{PhasePair, Z3};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

pub type NodeId = u32;

/// The node alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    /// Green spider with phase pair (α, β); diagonal in the computational
    /// basis, any arity.
    ZSpider(PhasePair),
    /// Red spider with phase pair (α, β); diagonal in the Fourier basis, any
    /// arity.
    XSpider(PhasePair),
    /// Hadamard box, arity 2.
    H,
    /// Adjoint Hadamard box, arity 2.
    HDag,
    /// Boundary node, arity 1; listed in exactly one of inputs/outputs.
    Boundary,
}

impl NodeKind {
    pub fn is_spider(self) -> bool {
        matches!(self, NodeKind::ZSpider(_) | NodeKind::XSpider(_))
    }

    pub fn is_boundary(self) -> bool {
        matches!(self, NodeKind::Boundary)
    }
}

/// An open diagram: nodes, ordered edges, and ordered boundary lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub nodes: BTreeMap<NodeId, NodeKind>,
    /// Ordered endpoint pairs (source output side, target input side);
    /// repetition encodes multiplicity.
    pub edges: Vec<(NodeId, NodeId)>,
    pub inputs: Vec<NodeId>,
    pub outputs: Vec<NodeId>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("node {0} appears in an edge but is not declared")]
    UnknownNode(NodeId),
    #[error("node {0}: H arity must be exactly 2, found {1}")]
    HArity(NodeId, usize),
    #[error("node {0}: boundary arity must be exactly 1, found {1}")]
    BoundaryArity(NodeId, usize),
    #[error("boundary {0} listed in both inputs and outputs")]
    BoundaryBothSides(NodeId),
    #[error("boundary {0} not listed in inputs or outputs")]
    BoundaryUnlisted(NodeId),
    #[error("node {0} listed as a boundary but is not a Boundary node")]
    NotABoundary(NodeId),
    #[error("boundary {0} listed twice")]
    BoundaryDuplicated(NodeId),
    #[error("boundary {0} must not have a self-loop")]
    BoundarySelfLoop(NodeId),
    #[error("arity mismatch in composition: {0} outputs vs {1} inputs")]
    ComposeArity(usize, usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Diagram {
    pub fn new() -> Diagram {
        Diagram {
            nodes: BTreeMap::new(),
            edges: Vec::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    /// The empty diagram (0 → 0, scalar 1).
    pub fn empty() -> Diagram {
        Diagram::new()
    }

    /// Identity on `n` wires.
    pub fn wires(n: usize) -> Diagram {
        let mut d = Diagram::new();
        for _ in 0..n {
            let i = d.add_node(NodeKind::Boundary);
            let o = d.add_node(NodeKind::Boundary);
            d.edges.push((i, o));
            d.inputs.push(i);
            d.outputs.push(o);
        }
        d
    }

    /// A single 1 → 1 generator as a diagram.
    pub fn gate(kind: NodeKind) -> Diagram {
        let mut d = Diagram::new();
        let i = d.add_node(NodeKind::Boundary);
        let v = d.add_node(kind);
        let o = d.add_node(NodeKind::Boundary);
        d.edges.push((i, v));
        d.edges.push((v, o));
        d.inputs.push(i);
        d.outputs.push(o);
        d
    }

    /// A 0 → 1 state made of one spider.
    pub fn state(kind: NodeKind) -> Diagram {
        let mut d = Diagram::new();
        let v = d.add_node(kind);
        let o = d.add_node(NodeKind::Boundary);
        d.edges.push((v, o));
        d.outputs.push(o);
        d
    }

    /// A 1 → 0 effect made of one spider.
    pub fn effect(kind: NodeKind) -> Diagram {
        let mut d = Diagram::new();
        let i = d.add_node(NodeKind::Boundary);
        let v = d.add_node(kind);
        d.edges.push((i, v));
        d.inputs.push(i);
        d
    }

    pub fn add_node(&mut self, kind: NodeKind) -> NodeId {
        let id = self.nodes.keys().next_back().map_or(0, |k| k + 1);
        self.nodes.insert(id, kind);
        id
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId) {
        self.edges.push((a, b));
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.inputs.len(), self.outputs.len())
    }

    pub fn degree(&self, id: NodeId) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == id) as usize + (b == id) as usize)
            .sum()
    }

    /// Check all structural invariants; on failure list every violation.
    pub fn validate(&self) -> Result<(), Vec<DiagramError>> {
        let mut errs = Vec::new();
        for &(a, b) in &self.edges {
            for id in [a, b] {
                if !self.nodes.contains_key(&id) {
                    errs.push(DiagramError::UnknownNode(id));
                }
            }
        }
        for (&id, &kind) in &self.nodes {
            let deg = self.degree(id);
            match kind {
                NodeKind::H | NodeKind::HDag if deg != 2 => {
                    errs.push(DiagramError::HArity(id, deg));
                }
                NodeKind::Boundary => {
                    if deg != 1 {
                        errs.push(DiagramError::BoundaryArity(id, deg));
                    }
                    if self.edges.iter().any(|&(a, b)| a == id && b == id) {
                        errs.push(DiagramError::BoundarySelfLoop(id));
                    }
                    let in_in = self.inputs.contains(&id);
                    let in_out = self.outputs.contains(&id);
                    match (in_in, in_out) {
                        (true, true) => errs.push(DiagramError::BoundaryBothSides(id)),
                        (false, false) => errs.push(DiagramError::BoundaryUnlisted(id)),
                        _ => {}
                    }
                }
                _ => {}
            }
        }
        for list in [&self.inputs, &self.outputs] {
            for &id in list {
                match self.nodes.get(&id) {
                    None => errs.push(DiagramError::UnknownNode(id)),
                    Some(NodeKind::Boundary) => {}
                    Some(_) => errs.push(DiagramError::NotABoundary(id)),
                }
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for &id in self.inputs.iter().chain(&self.outputs) {
            if !seen.insert(id) {
                errs.push(DiagramError::BoundaryDuplicated(id));
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(errs)
        }
    }

    /// Copy `other` into `self`, returning the id translation map.
    fn absorb(&mut self, other: &Diagram) -> BTreeMap<NodeId, NodeId> {
        let mut map = BTreeMap::new();
        for (&id, &kind) in &other.nodes {
            let new = self.add_node(kind);
            map.insert(id, new);
        }
        for &(a, b) in &other.edges {
            self.edges.push((map[&a], map[&b]));
        }
        map
    }

    /// Sequential composition: feed the outputs of `self` into the inputs of
    /// `other`. Boundary pairs at the seam are deleted and replaced by a wire.
    pub fn compose(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        if self.outputs.len() != other.inputs.len() {
            return Err(DiagramError::ComposeArity(
                self.outputs.len(),
                other.inputs.len(),
            ));
        }
        let mut d = self.clone();
        let map = d.absorb(other);
        // Fuse output boundary k of self with input boundary k of other:
        // drop both boundary nodes and connect their unique neighbours.
        for k in 0..self.outputs.len() {
            let out_b = self.outputs[k];
            let in_b = map[&other.inputs[k]];
            // The attachment of a boundary keeps the side the boundary was on.
            let (out_nb, _) = d.detach_boundary(out_b);
            let (in_nb, _) = d.detach_boundary(in_b);
            d.edges.push((out_nb, in_nb));
            d.nodes.remove(&out_b);
            d.nodes.remove(&in_b);
        }
        d.outputs = other.outputs.iter().map(|b| map[b]).collect();
        Ok(d)
    }

    /// Remove the unique edge at a boundary node, returning the neighbour and
    /// whether the boundary sat on the source side of that edge.
    fn detach_boundary(&mut self, b: NodeId) -> (NodeId, bool) {
        let pos = self
            .edges
            .iter()
            .position(|&(x, y)| x == b || y == b)
            .expect("boundary with no edge");
        let (x, y) = self.edges.remove(pos);
        if x == b {
            (y, true)
        } else {
            (x, false)
        }
    }

    /// Parallel composition (disjoint union), `self` first.
    pub fn tensor(&self, other: &Diagram) -> Diagram {
        let mut d = self.clone();
        let map = d.absorb(other);
        d.inputs.extend(other.inputs.iter().map(|b| map[b]));
        d.outputs.extend(other.outputs.iter().map(|b| map[b]));
        d
    }

    /// Adjoint: swap inputs and outputs, negate spider phases, swap H ↔ H†,
    /// and reverse every edge.
    pub fn adjoint(&self) -> Diagram {
        let nodes = self
            .nodes
            .iter()
            .map(|(&id, &kind)| {
                let k = match kind {
                    NodeKind::ZSpider(p) => NodeKind::ZSpider(p.neg()),
                    NodeKind::XSpider(p) => NodeKind::XSpider(p.neg()),
                    NodeKind::H => NodeKind::HDag,
                    NodeKind::HDag => NodeKind::H,
                    NodeKind::Boundary => NodeKind::Boundary,
                };
                (id, k)
            })
            .collect();
        Diagram {
            nodes,
            edges: self.edges.iter().map(|&(a, b)| (b, a)).collect(),
            inputs: self.outputs.clone(),
            outputs: self.inputs.clone(),
        }
    }

    /// Bend all inputs up into outputs using cup states Σ_j |jj⟩.
    ///
    /// The result is a 0 → (k + l) state whose outputs are [bent inputs in
    /// order, original outputs]. Each cup is the natural pairing: the bent
    /// wire keeps feeding the old input side of its node, so the denotation is
    /// the Choi state of the original map.
    pub fn bend(&self) -> Diagram {
        let mut d = self.clone();
        let old_inputs = std::mem::take(&mut d.inputs);
        let mut new_outputs = Vec::new();
        for b in old_inputs {
            // The boundary's edge currently runs (b, node): re-point the
            // boundary as an output; orientation at the node is unchanged.
            new_outputs.push(b);
        }
        new_outputs.extend(d.outputs.iter().copied());
        d.outputs = new_outputs;
        d
    }

    /// Undo [`Diagram::bend`]: make the first `k` outputs inputs again.
    pub fn unbend(&self, k: usize) -> Diagram {
        assert!(k <= self.outputs.len(), "unbend arity");
        let mut d = self.clone();
        let bent: Vec<NodeId> = d.outputs.drain(..k).collect();
        assert!(d.inputs.is_empty(), "unbend expects a state");
        d.inputs = bent;
        d
    }

    /// Relabel node ids to 0..n in current sorted order. Serialization uses
    /// this to produce byte-identical output for structurally equal diagrams.
    pub fn compact_ids(&self) -> Diagram {
        let map: BTreeMap<NodeId, NodeId> = self
            .nodes
            .keys()
            .enumerate()
            .map(|(i, &id)| (id, i as NodeId))
            .collect();
        let mut edges: Vec<(NodeId, NodeId)> =
            self.edges.iter().map(|&(a, b)| (map[&a], map[&b])).collect();
        edges.sort();
        Diagram {
            nodes: self.nodes.iter().map(|(&id, &k)| (map[&id], k)).collect(),
            edges,
            inputs: self.inputs.iter().map(|b| map[b]).collect(),
            outputs: self.outputs.iter().map(|b| map[b]).collect(),
        }
    }

    /// Canonical text form; see the module docs for the grammar.
    pub fn serialize(&self) -> String {
        let d = self.compact_ids();
        let mut s = String::new();
        for (&id, &kind) in &d.nodes {
            match kind {
                NodeKind::ZSpider(p) => {
                    let _ = writeln!(s, "node {id} Z {} {}", p.a, p.b);
                }
                NodeKind::XSpider(p) => {
                    let _ = writeln!(s, "node {id} X {} {}", p.a, p.b);
                }
                NodeKind::H => {
                    let _ = writeln!(s, "node {id} H");
                }
                NodeKind::HDag => {
                    let _ = writeln!(s, "node {id} HDAG");
                }
                NodeKind::Boundary => {
                    let _ = writeln!(s, "node {id} B");
                }
            }
        }
        for &(a, b) in &d.edges {
            let _ = writeln!(s, "edge {a} {b}");
        }
        let fmt_ids = |ids: &[NodeId]| {
            ids.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(s, "inputs {}", fmt_ids(&d.inputs));
        let _ = writeln!(s, "outputs {}", fmt_ids(&d.outputs));
        s
    }

    /// Parse the text form produced by [`Diagram::serialize`].
    pub fn parse(text: &str) -> Result<Diagram, DiagramError> {
        let mut d = Diagram::new();
        let err = |line: usize, msg: &str| DiagramError::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut saw_inputs = false;
        let mut saw_outputs = false;
        for (ln, raw) in text.lines().enumerate() {
            let line = ln + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tok = trimmed.split_whitespace();
            let head = tok.next().unwrap();
            let parse_id = |t: Option<&str>, line: usize| -> Result<NodeId, DiagramError> {
                t.ok_or_else(|| err(line, "missing node id"))?
                    .parse::<NodeId>()
                    .map_err(|_| err(line, "invalid node id"))
            };
            let parse_phase = |t: Option<&str>, line: usize| -> Result<Z3, DiagramError> {
                let raw = t.ok_or_else(|| err(line, "missing phase"))?;
                match raw {
                    "0" => Ok(Z3::ZERO),
                    "1" => Ok(Z3::ONE),
                    "2" => Ok(Z3::TWO),
                    _ => Err(err(line, "stabilizer phase required (0, 1 or 2)")),
                }
            };
            match head {
                "node" => {
                    let id = parse_id(tok.next(), line)?;
                    if d.nodes.contains_key(&id) {
                        return Err(err(line, "duplicate node id"));
                    }
                    let kind = match tok.next() {
                        Some("Z") => {
                            let a = parse_phase(tok.next(), line)?;
                            let b = parse_phase(tok.next(), line)?;
                            NodeKind::ZSpider(PhasePair { a, b })
                        }
                        Some("X") => {
                            let a = parse_phase(tok.next(), line)?;
                            let b = parse_phase(tok.next(), line)?;
                            NodeKind::XSpider(PhasePair { a, b })
                        }
                        Some("H") => NodeKind::H,
                        Some("HDAG") => NodeKind::HDag,
                        Some("B") => NodeKind::Boundary,
                        Some(other) => {
                            return Err(err(line, &format!("unknown node kind `{other}`")))
                        }
                        None => return Err(err(line, "missing node kind")),
                    };
                    d.nodes.insert(id, kind);
                }
                "edge" => {
                    let a = parse_id(tok.next(), line)?;
                    let b = parse_id(tok.next(), line)?;
                    d.edges.push((a, b));
                }
                "inputs" => {
                    saw_inputs = true;
                    for t in tok.by_ref() {
                        d.inputs.push(
                            t.parse::<NodeId>()
                                .map_err(|_| err(line, "invalid node id"))?,
                        );
                    }
                }
                "outputs" => {
                    saw_outputs = true;
                    for t in tok.by_ref() {
                        d.outputs.push(
                            t.parse::<NodeId>()
                                .map_err(|_| err(line, "invalid node id"))?,
                        );
                    }
                }
                other => return Err(err(line, &format!("unknown declaration `{other}`"))),
            }
            if tok.next().is_some() && head != "inputs" && head != "outputs" {
                return Err(err(line, "trailing tokens"));
            }
        }
        let _ = (saw_inputs, saw_outputs); // empty lists are legal
        Ok(d)
    }

    /// JSON mirror of the text format.
    pub fn to_json(&self) -> serde_json::Value {
        let d = self.compact_ids();
        let nodes: Vec<serde_json::Value> = d
            .nodes
            .iter()
            .map(|(&id, &kind)| {
                let (k, phase) = match kind {
                    NodeKind::ZSpider(p) => ("Z", Some(p)),
                    NodeKind::XSpider(p) => ("X", Some(p)),
                    NodeKind::H => ("H", None),
                    NodeKind::HDag => ("HDAG", None),
                    NodeKind::Boundary => ("B", None),
                };
                match phase {
                    Some(p) => serde_json::json!({
                        "id": id, "kind": k, "phase": [p.a.value(), p.b.value()]
                    }),
                    None => serde_json::json!({ "id": id, "kind": k }),
                }
            })
            .collect();
        serde_json::json!({
            "nodes": nodes,
            "edges": d.edges,
            "inputs": d.inputs,
            "outputs": d.outputs,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Diagram, DiagramError> {
        let err = |msg: &str| DiagramError::Parse {
            line: 0,
            msg: msg.to_string(),
        };
        let mut d = Diagram::new();
        let nodes = v["nodes"].as_array().ok_or_else(|| err("nodes missing"))?;
        for n in nodes {
            let id = n["id"].as_u64().ok_or_else(|| err("node id"))? as NodeId;
            let kind = n["kind"].as_str().ok_or_else(|| err("node kind"))?;
            let phase = || -> Result<PhasePair, DiagramError> {
                let arr = n["phase"].as_array().ok_or_else(|| err("phase missing"))?;
                if arr.len() != 2 {
                    return Err(err("phase must be [a,b]"));
                }
                let get = |i: usize| -> Result<Z3, DiagramError> {
                    let k = arr[i].as_u64().ok_or_else(|| err("phase component"))?;
                    if k > 2 {
                        return Err(err("stabilizer phase required (0, 1 or 2)"));
                    }
                    Ok(Z3::from(k as u8))
                };
                Ok(PhasePair {
                    a: get(0)?,
                    b: get(1)?,
                })
            };
            let k = match kind {
                "Z" => NodeKind::ZSpider(phase()?),
                "X" => NodeKind::XSpider(phase()?),
                "H" => NodeKind::H,
                "HDAG" => NodeKind::HDag,
                "B" => NodeKind::Boundary,
                other => return Err(err(&format!("unknown node kind `{other}`"))),
            };
            d.nodes.insert(id, k);
        }
        let edges = v["edges"].as_array().ok_or_else(|| err("edges missing"))?;
        for e in edges {
            let pair = e.as_array().ok_or_else(|| err("edge must be [a,b]"))?;
            if pair.len() != 2 {
                return Err(err("edge must be [a,b]"));
            }
            let a = pair[0].as_u64().ok_or_else(|| err("edge endpoint"))? as NodeId;
            let b = pair[1].as_u64().ok_or_else(|| err("edge endpoint"))? as NodeId;
            d.edges.push((a, b));
        }
        for (field, list) in [("inputs", &mut d.inputs), ("outputs", &mut d.outputs)] {
            let arr = v[field].as_array().ok_or_else(|| err("boundary list"))?;
            for x in arr {
                list.push(x.as_u64().ok_or_else(|| err("boundary id"))? as NodeId);
            }
        }
        Ok(d)
    }
}

impl Default for Diagram {
    fn default() -> Self {
        Diagram::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(a: u8, b: u8) -> NodeKind {
        NodeKind::ZSpider(PhasePair::new(a, b))
    }

    #[test]
    fn wire_is_valid() {
        let d = Diagram::wires(1);
        assert!(d.validate().is_ok());
        assert_eq!(d.arity(), (1, 1));
    }

    #[test]
    fn h_arity_violation_detected() {
        let mut d = Diagram::gate(NodeKind::H);
        // sprout an extra leg on the H node
        let extra = d.add_node(NodeKind::Boundary);
        let h = *d
            .nodes
            .iter()
            .find(|(_, k)| **k == NodeKind::H)
            .map(|(id, _)| id)
            .unwrap();
        d.add_edge(h, extra);
        d.outputs.push(extra);
        let errs = d.validate().unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, DiagramError::HArity(_, 3))));
    }

    #[test]
    fn boundary_on_both_sides_detected() {
        let mut d = Diagram::wires(1);
        let b = d.inputs[0];
        d.outputs.insert(0, b);
        let errs = d.validate().unwrap_err();
        assert!(errs
            .iter()
            .any(|e| matches!(e, DiagramError::BoundaryBothSides(_))));
    }

    #[test]
    fn compose_arity_checked() {
        let d1 = Diagram::wires(2);
        let d2 = Diagram::wires(1);
        assert!(matches!(
            d1.compose(&d2),
            Err(DiagramError::ComposeArity(2, 1))
        ));
    }

    #[test]
    fn compose_wires_gives_wire() {
        let w = Diagram::wires(1);
        let d = w.compose(&w).unwrap();
        assert!(d.validate().is_ok());
        assert_eq!(d.arity(), (1, 1));
        // exactly two boundaries remain
        assert_eq!(d.nodes.len(), 2);
    }

    #[test]
    fn adjoint_is_involution() {
        let mut d = Diagram::gate(z(0, 1));
        d = d.compose(&Diagram::gate(NodeKind::H)).unwrap();
        let dd = d.adjoint().adjoint();
        assert_eq!(d.compact_ids(), dd.compact_ids());
    }

    #[test]
    fn adjoint_of_h_is_hdag() {
        let d = Diagram::gate(NodeKind::H).adjoint();
        assert!(d.nodes.values().any(|k| *k == NodeKind::HDag));
        let d2 = Diagram::gate(z(0, 1)).adjoint();
        assert!(d2.nodes.values().any(|k| *k == z(0, 2)));
    }

    #[test]
    fn text_roundtrip() {
        let mut d = Diagram::state(z(1, 2));
        d = d.compose(&Diagram::gate(NodeKind::H)).unwrap();
        d = d.tensor(&Diagram::wires(1));
        let text = d.serialize();
        let back = Diagram::parse(&text).unwrap();
        assert_eq!(d.compact_ids(), back.compact_ids());
        assert_eq!(text, back.serialize());
    }

    #[test]
    fn json_roundtrip() {
        let d = Diagram::gate(NodeKind::XSpider(PhasePair::new(2, 1)));
        let back = Diagram::from_json(&d.to_json()).unwrap();
        assert_eq!(d.compact_ids(), back.compact_ids());
    }

    #[test]
    fn parse_rejects_unknown_kind() {
        let e = Diagram::parse("node 0 Q 1 1").unwrap_err();
        assert!(matches!(e, DiagramError::Parse { line: 1, .. }));
    }

    #[test]
    fn parse_rejects_nonstabilizer_phase() {
        let e = Diagram::parse("node 0 Z 3 0").unwrap_err();
        match e {
            DiagramError::Parse { msg, .. } => assert!(msg.contains("stabilizer phase")),
            _ => panic!("wrong error"),
        }
    }

    #[test]
    fn bend_unbend_roundtrip_structurally() {
        let d = Diagram::gate(NodeKind::H);
        let bent = d.bend();
        assert_eq!(bent.arity(), (0, 2));
        let back = bent.unbend(1);
        assert_eq!(back.compact_ids(), d.compact_ids());
    }

    #[test]
    fn parallel_edges_and_self_loops_representable() {
        let mut d = Diagram::new();
        let v = d.add_node(z(0, 0));
        let u = d.add_node(z(1, 0));
        d.add_edge(v, u);
        d.add_edge(v, u);
        d.add_edge(v, v);
        assert!(d.validate().is_ok());
        assert_eq!(d.degree(v), 4);
    }
}
