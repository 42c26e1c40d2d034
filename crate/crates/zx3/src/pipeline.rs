//! End-to-end normalization and equality decision.
//!
//! `normalize` carries any stabilizer diagram to a reduced GS-LC normal form:
//! maps are bent into states first (map-state duality through cups), the
//! state is simulated into a stabilizer tableau, brought to canonical form,
//! re-expressed as a graph state with local Cliffords and finally reduced.
//! Because the tableau canonical form depends only on the denoted state, two
//! diagrams with proportional interpretations always normalize to the same
//! reduced form, and `decide_equal` only has to compare the results
//! syntactically (after the pair simplification step, which matters for
//! diagrams that are *not* equal but could mask a red/green mismatch).
//!
//! Diagrams denoting the zero map get their own verdict: the tableau
//! simulation detects annihilating post-selections exactly. Two zero
//! diagrams of equal arity are treated as equal — a deliberate extension of
//! up-to-scalar equality, which is otherwise undefined at zero.

use crate::arith::{ScalarVerdict, Z3};
use crate::diagram::{Diagram, DiagramError, NodeKind};
use crate::gslc::{self, RGslc};
use crate::semantics::{self, SemanticsError};
use crate::tableau::{self, Simulated};
use crate::arith::PhasePair;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

/// The normal form of a stabilizer diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalForm {
    /// The diagram denotes the zero map at the recorded arity.
    Zero { inputs: usize, outputs: usize },
    /// A state (no inputs) in reduced GS-LC form.
    State(RGslc),
    /// A map, stored as the reduced form of its bent state together with the
    /// original arity so the duality can be undone.
    Map {
        inputs: usize,
        outputs: usize,
        state: RGslc,
    },
}

impl NormalForm {
    pub fn arity(&self) -> (usize, usize) {
        match self {
            NormalForm::Zero { inputs, outputs } => (*inputs, *outputs),
            NormalForm::State(r) => (0, r.n()),
            NormalForm::Map {
                inputs, outputs, ..
            } => (*inputs, *outputs),
        }
    }

    pub fn rgslc(&self) -> Option<&RGslc> {
        match self {
            NormalForm::Zero { .. } => None,
            NormalForm::State(r) => Some(r),
            NormalForm::Map { state, .. } => Some(state),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, NormalForm::Zero { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            NormalForm::Zero { inputs, outputs } => serde_json::json!({
                "kind": "zero", "inputs": inputs, "outputs": outputs
            }),
            NormalForm::State(r) => serde_json::json!({
                "kind": "state", "rgslc": r.to_json()
            }),
            NormalForm::Map {
                inputs,
                outputs,
                state,
            } => serde_json::json!({
                "kind": "map", "inputs": inputs, "outputs": outputs,
                "rgslc": state.to_json()
            }),
        }
    }
}

#[derive(Clone, Debug, Error)]
pub enum PipelineError {
    #[error("invalid diagram: {0:?}")]
    Invalid(Vec<DiagramError>),
    #[error("arity mismatch: {0:?} vs {1:?}")]
    ArityMismatch((usize, usize), (usize, usize)),
    #[error(transparent)]
    Tableau(#[from] tableau::TableauError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error("oracle cross-check failed: pipeline said {pipeline:?}, oracle said {oracle:?}")]
    CheckFailed {
        pipeline: EqVerdict,
        oracle: ScalarVerdict,
    },
}

/// Verdict of the equality decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqVerdict {
    Equal,
    Unequal,
    /// Both diagrams denote the zero map of the same arity.
    BothZero,
}

impl EqVerdict {
    pub fn is_equal(self) -> bool {
        matches!(self, EqVerdict::Equal | EqVerdict::BothZero)
    }
}

/// Normalize a diagram to its reduced GS-LC form (or detect the zero map).
pub fn normalize(d: &Diagram) -> Result<NormalForm, PipelineError> {
    d.validate().map_err(PipelineError::Invalid)?;
    let (k, l) = d.arity();
    let state_diagram = if k > 0 { d.bend() } else { d.clone() };
    match tableau::diagram_to_tableau(&state_diagram)? {
        Simulated::Zero => Ok(NormalForm::Zero {
            inputs: k,
            outputs: l,
        }),
        Simulated::State(t) => {
            let gs = tableau::extract_gslc(&t.canonicalize());
            let r = gslc::to_rgslc(&gs);
            if k > 0 {
                Ok(NormalForm::Map {
                    inputs: k,
                    outputs: l,
                    state: r,
                })
            } else {
                Ok(NormalForm::State(r))
            }
        }
    }
}

/// Normalize and assert semantic equality with the input (used by --check).
pub fn normalize_checked(d: &Diagram) -> Result<NormalForm, PipelineError> {
    let nf = normalize(d)?;
    let bent = if d.arity().0 > 0 { d.bend() } else { d.clone() };
    let reference = semantics::interpret(&bent)?;
    match &nf {
        NormalForm::Zero { .. } => {
            if !reference.is_zero() {
                return Err(PipelineError::CheckFailed {
                    pipeline: EqVerdict::Unequal,
                    oracle: ScalarVerdict::Unequal,
                });
            }
        }
        NormalForm::State(r) | NormalForm::Map { state: r, .. } => {
            let got = r.diagram().state_vector();
            if got.equal_up_to_scalar(&reference) != ScalarVerdict::EqualUpToScalar {
                return Err(PipelineError::CheckFailed {
                    pipeline: EqVerdict::Unequal,
                    oracle: ScalarVerdict::Unequal,
                });
            }
        }
    }
    Ok(nf)
}

/// Decide equality of two diagrams up to a nonzero scalar via normal forms.
pub fn decide_equal(d1: &Diagram, d2: &Diagram) -> Result<EqVerdict, PipelineError> {
    if d1.arity() != d2.arity() {
        return Err(PipelineError::ArityMismatch(d1.arity(), d2.arity()));
    }
    let n1 = normalize(d1)?;
    let n2 = normalize(d2)?;
    Ok(compare_normal_forms(&n1, &n2)?)
}

/// Compare two already-computed normal forms.
pub fn compare_normal_forms(
    n1: &NormalForm,
    n2: &NormalForm,
) -> Result<EqVerdict, PipelineError> {
    match (n1, n2) {
        (NormalForm::Zero { .. }, NormalForm::Zero { .. }) => {
            if n1.arity() == n2.arity() {
                Ok(EqVerdict::BothZero)
            } else {
                Err(PipelineError::ArityMismatch(n1.arity(), n2.arity()))
            }
        }
        (NormalForm::Zero { .. }, _) | (_, NormalForm::Zero { .. }) => Ok(EqVerdict::Unequal),
        _ => {
            let r1 = n1.rgslc().unwrap();
            let r2 = n2.rgslc().unwrap();
            if r1.n() != r2.n() {
                return Err(PipelineError::ArityMismatch(n1.arity(), n2.arity()));
            }
            let (s1, s2) = gslc::simplify_pair(r1, r2)
                .expect("sizes checked above");
            Ok(if gslc::equal_rgslc(&s1, &s2) {
                EqVerdict::Equal
            } else {
                EqVerdict::Unequal
            })
        }
    }
}

/// Decide equality and cross-check the verdict against the matrix oracle.
pub fn decide_equal_checked(d1: &Diagram, d2: &Diagram) -> Result<EqVerdict, PipelineError> {
    let verdict = decide_equal(d1, d2)?;
    let oracle = semantics::semantically_equal(d1, d2)?;
    let agree = match verdict {
        EqVerdict::Equal => oracle == ScalarVerdict::EqualUpToScalar,
        EqVerdict::BothZero => oracle == ScalarVerdict::BothZero,
        EqVerdict::Unequal => oracle == ScalarVerdict::Unequal,
    };
    if !agree {
        return Err(PipelineError::CheckFailed {
            pipeline: verdict,
            oracle,
        });
    }
    Ok(verdict)
}

// ---------------------------------------------------------------------------
// random stabilizer diagrams
// ---------------------------------------------------------------------------

/// Build an n-wire layer applying `gate` at `targets`.
fn gate_layer(n: usize, gate: LayerGate, targets: &[usize]) -> Diagram {
    let mut d = Diagram::new();
    let mut ins = Vec::new();
    let mut outs = Vec::new();
    for _ in 0..n {
        ins.push(d.add_node(NodeKind::Boundary));
        outs.push(d.add_node(NodeKind::Boundary));
    }
    let mut wired = vec![false; n];
    match gate {
        LayerGate::Single(kind) => {
            let t = targets[0];
            let v = d.add_node(kind);
            d.add_edge(ins[t], v);
            d.add_edge(v, outs[t]);
            wired[t] = true;
        }
        LayerGate::CzBox(weight) => {
            let (a, b) = (targets[0], targets[1]);
            let g1 = d.add_node(NodeKind::ZSpider(PhasePair::ZERO));
            let g2 = d.add_node(NodeKind::ZSpider(PhasePair::ZERO));
            let h = d.add_node(if weight == 1 {
                NodeKind::H
            } else {
                NodeKind::HDag
            });
            d.add_edge(g1, h);
            d.add_edge(h, g2);
            d.add_edge(ins[a], g1);
            d.add_edge(g1, outs[a]);
            d.add_edge(ins[b], g2);
            d.add_edge(g2, outs[b]);
            wired[a] = true;
            wired[b] = true;
        }
        LayerGate::Sum => {
            let (a, b) = (targets[0], targets[1]);
            let copy = d.add_node(NodeKind::ZSpider(PhasePair::ZERO));
            let add = d.add_node(NodeKind::XSpider(PhasePair::ZERO));
            d.add_edge(ins[a], copy);
            d.add_edge(copy, outs[a]);
            d.add_edge(copy, add);
            d.add_edge(ins[b], add);
            d.add_edge(add, outs[b]);
            wired[a] = true;
            wired[b] = true;
        }
    }
    for t in 0..n {
        if !wired[t] {
            d.add_edge(ins[t], outs[t]);
        }
    }
    d.inputs = ins;
    d.outputs = outs;
    d
}

enum LayerGate {
    Single(NodeKind),
    CzBox(u8),
    Sum,
}

/// Deterministic pseudo-random stabilizer diagram on `wires` wires with
/// `gates` gate layers. Some inputs may be capped with state preparations
/// and some outputs with post-selected effects, so the arity varies.
pub fn random_stabilizer_diagram(wires: usize, gates: usize, seed: u64) -> Diagram {
    assert!(wires >= 1, "need at least one wire");
    let mut rng = StdRng::seed_from_u64(seed);
    let mut d = Diagram::wires(wires);
    for _ in 0..gates {
        let choice = rng.gen_range(0..10u8);
        let l = match choice {
            0..=5 => {
                let t = rng.gen_range(0..wires);
                let phase = PhasePair::new(rng.gen_range(0..3u8), rng.gen_range(0..3u8));
                let kind = match choice % 3 {
                    0 => NodeKind::ZSpider(phase),
                    1 => NodeKind::XSpider(phase),
                    _ => {
                        if rng.gen_bool(0.5) {
                            NodeKind::H
                        } else {
                            NodeKind::HDag
                        }
                    }
                };
                gate_layer(wires, LayerGate::Single(kind), &[t])
            }
            6..=8 if wires >= 2 => {
                let a = rng.gen_range(0..wires);
                let mut b = rng.gen_range(0..wires);
                while b == a {
                    b = rng.gen_range(0..wires);
                }
                if choice == 8 {
                    gate_layer(wires, LayerGate::Sum, &[a, b])
                } else {
                    gate_layer(wires, LayerGate::CzBox(if choice == 6 { 1 } else { 2 }), &[a, b])
                }
            }
            _ => {
                let t = rng.gen_range(0..wires);
                let phase = PhasePair::new(rng.gen_range(0..3u8), rng.gen_range(0..3u8));
                gate_layer(wires, LayerGate::Single(NodeKind::ZSpider(phase)), &[t])
            }
        };
        d = d.compose(&l).unwrap();
    }
    // cap a random subset of inputs with preparations and outputs with
    // post-selected effects
    let prep_layer = |rng: &mut StdRng, input_side: bool, count: usize| -> Diagram {
        let mut l = Diagram::new();
        for _ in 0..count {
            let cap = rng.gen_bool(0.25);
            if cap {
                let phase = PhasePair::new(rng.gen_range(0..3u8), rng.gen_range(0..3u8));
                let kind = if rng.gen_bool(0.5) {
                    NodeKind::ZSpider(phase)
                } else {
                    NodeKind::XSpider(phase)
                };
                let v = l.add_node(kind);
                if input_side {
                    // a state feeding the circuit
                    let o = l.add_node(NodeKind::Boundary);
                    l.add_edge(v, o);
                    l.outputs.push(o);
                } else {
                    // an effect eating an output
                    let i = l.add_node(NodeKind::Boundary);
                    l.add_edge(i, v);
                    l.inputs.push(i);
                }
            } else {
                let i = l.add_node(NodeKind::Boundary);
                let o = l.add_node(NodeKind::Boundary);
                l.add_edge(i, o);
                l.inputs.push(i);
                l.outputs.push(o);
            }
        }
        l
    };
    let pre = prep_layer(&mut rng, true, wires);
    let post = prep_layer(&mut rng, false, wires);
    pre.compose(&d).unwrap().compose(&post).unwrap()
}

/// A pair of diagrams engineered to be equal: a base diagram extended with
/// the two sides of a random rule instance, or a GS-LC diagram before and
/// after random graph moves.
pub fn random_equal_pair(wires: usize, gates: usize, seed: u64) -> (Diagram, Diagram) {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    if rng.gen_bool(0.5) {
        // common diagram ⊗ the two sides of a rule instance
        let base = random_stabilizer_diagram(wires, gates, seed);
        let rules = crate::rules::builtin_rules();
        let rule = &rules[rng.gen_range(0..rules.len())];
        let binding: Vec<PhasePair> = rule
            .vars
            .iter()
            .map(|dom| {
                let m = dom.members();
                m[rng.gen_range(0..m.len())]
            })
            .collect();
        let (lhs, rhs) = crate::rules::instantiate(rule, &binding).unwrap();
        (base.tensor(&lhs), base.tensor(&rhs))
    } else {
        // graph state with random vertex operators, before and after a
        // random sequence of local complementation moves
        let n = wires.max(1).min(4);
        let mut g = gslc::WGraph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.set(i, j, Z3::from(rng.gen_range(0..3u8)));
            }
        }
        let mut s = gslc::GslcDiagram::plain(g);
        for v in 0..n {
            s.ops[v] = crate::clifford1::CliffordClass(rng.gen_range(0..216u16));
        }
        let mut moved = s.clone();
        for _ in 0..rng.gen_range(1..5usize) {
            let v = rng.gen_range(0..n);
            match rng.gen_range(0..3u8) {
                0 => moved = moved.apply_star(v, Z3::ONE).unwrap(),
                1 => moved = moved.apply_star(v, Z3::TWO).unwrap(),
                _ => moved = moved.apply_circ2(v).unwrap(),
            }
        }
        (s.to_diagram(), moved.to_diagram())
    }
}

/// Result of the self-test batch.
#[derive(Clone, Debug, Default)]
pub struct SelfTestReport {
    pub trials: usize,
    pub equal_seen: usize,
    pub unequal_seen: usize,
    pub zero_seen: usize,
    pub disagreements: Vec<u64>,
}

impl SelfTestReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Run `trials` random comparisons and check the normal-form verdict against
/// the matrix oracle every time.
pub fn selftest(trials: usize, seed: u64) -> SelfTestReport {
    let mut report = SelfTestReport::default();
    let mut rng = StdRng::seed_from_u64(seed);
    for i in 0..trials {
        let case_seed = rng.gen::<u64>();
        let wires = 1 + (case_seed as usize % 4);
        let gates = 2 + (case_seed as usize >> 8) % 6;
        // one third engineered-equal pairs, two thirds independent pairs
        let (d1, d2) = if i % 3 == 0 {
            random_equal_pair(wires, gates, case_seed)
        } else {
            let d1 = random_stabilizer_diagram(wires, gates, case_seed);
            let d2 = random_stabilizer_diagram(wires, gates, case_seed.wrapping_add(1));
            if d1.arity() != d2.arity() {
                (d1.clone(), d1.clone())
            } else {
                (d1, d2)
            }
        };
        report.trials += 1;
        match decide_equal_checked(&d1, &d2) {
            Ok(EqVerdict::Equal) => report.equal_seen += 1,
            Ok(EqVerdict::BothZero) => report.zero_seen += 1,
            Ok(EqVerdict::Unequal) => report.unequal_seen += 1,
            Err(_) => report.disagreements.push(case_seed),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford1;

    fn h_gate() -> Diagram {
        Diagram::gate(NodeKind::H)
    }

    #[test]
    fn normalize_s_on_plus() {
        // S applied to |+⟩: one vertex with operator Z(0,1)
        let d = Diagram::state(NodeKind::ZSpider(PhasePair::ZERO))
            .compose(&Diagram::gate(NodeKind::ZSpider(PhasePair::new(0, 1))))
            .unwrap();
        let nf = normalize_checked(&d).unwrap();
        let NormalForm::State(r) = nf else {
            panic!("expected a state")
        };
        assert_eq!(r.n(), 1);
        let t = clifford1::table();
        assert_eq!(
            r.diagram().ops[0],
            t.class_of(&clifford1::zphase_matrix(PhasePair::new(0, 1)))
        );
        assert!(r.diagram().graph.is_edgeless());
    }

    #[test]
    fn normalize_cz_on_plus_plus() {
        let plus2 = Diagram::state(NodeKind::ZSpider(PhasePair::ZERO))
            .tensor(&Diagram::state(NodeKind::ZSpider(PhasePair::ZERO)));
        let d = plus2.compose(&crate::rules::cz_box(1)).unwrap();
        let nf = normalize_checked(&d).unwrap();
        let NormalForm::State(r) = nf else {
            panic!("expected a state")
        };
        assert_eq!(r.diagram().graph.weight(0, 1), Z3::ONE);
        let t = clifford1::table();
        assert!(r.diagram().ops.iter().all(|&c| c == t.identity));
    }

    #[test]
    fn normalize_zero_scalar() {
        let st = Diagram::state(NodeKind::XSpider(PhasePair::new(2, 1)));
        let eff = Diagram::effect(NodeKind::XSpider(PhasePair::ZERO));
        let d = st.compose(&eff).unwrap();
        assert!(normalize(&d).unwrap().is_zero());
    }

    #[test]
    fn decide_equal_h4_vs_wire() {
        let h4 = h_gate()
            .compose(&h_gate())
            .unwrap()
            .compose(&h_gate())
            .unwrap()
            .compose(&h_gate())
            .unwrap();
        assert_eq!(
            decide_equal_checked(&h4, &Diagram::wires(1)).unwrap(),
            EqVerdict::Equal
        );
    }

    #[test]
    fn decide_equal_s_vs_sdag() {
        let s = Diagram::gate(NodeKind::ZSpider(PhasePair::new(0, 1)));
        let sdag = Diagram::gate(NodeKind::ZSpider(PhasePair::new(0, 2)));
        assert_eq!(decide_equal_checked(&s, &sdag).unwrap(), EqVerdict::Unequal);
    }

    #[test]
    fn decide_equal_theorem5_pair() {
        // graph state vs its 1-local complementation with the displayed
        // vertex operators
        let mut g = gslc::WGraph::empty(3);
        g.set(0, 1, Z3::ONE);
        g.set(1, 2, Z3::TWO);
        let s = gslc::GslcDiagram::plain(g);
        let moved = s.apply_star(1, Z3::ONE).unwrap();
        assert_eq!(
            decide_equal_checked(&s.to_diagram(), &moved.to_diagram()).unwrap(),
            EqVerdict::Equal
        );
    }

    #[test]
    fn decide_equal_arity_mismatch() {
        let e = decide_equal(&Diagram::wires(1), &Diagram::wires(2));
        assert!(matches!(e, Err(PipelineError::ArityMismatch(_, _))));
    }

    #[test]
    fn zero_equals_zero_same_arity() {
        let st = Diagram::state(NodeKind::XSpider(PhasePair::new(2, 1)));
        let z1 = st
            .compose(&Diagram::effect(NodeKind::XSpider(PhasePair::ZERO)))
            .unwrap();
        let st2 = Diagram::state(NodeKind::XSpider(PhasePair::new(1, 2)));
        let z2 = st2
            .compose(&Diagram::effect(NodeKind::XSpider(PhasePair::ZERO)))
            .unwrap();
        assert_eq!(decide_equal(&z1, &z2).unwrap(), EqVerdict::BothZero);
        // zero vs a nonzero scalar
        let one = Diagram::empty();
        assert_eq!(decide_equal(&z1, &one).unwrap(), EqVerdict::Unequal);
    }

    #[test]
    fn random_diagram_deterministic_and_valid() {
        let a = random_stabilizer_diagram(3, 5, 42);
        let b = random_stabilizer_diagram(3, 5, 42);
        assert_eq!(a.serialize(), b.serialize());
        assert!(a.validate().is_ok());
        let c = random_stabilizer_diagram(3, 5, 43);
        // overwhelmingly likely to differ
        assert_ne!(a.serialize(), c.serialize());
    }

    #[test]
    fn map_state_duality_coherence() {
        // 1→1 diagrams compare the same bent or unbent
        let d1 = h_gate();
        let d2 = Diagram::gate(NodeKind::ZSpider(PhasePair::new(0, 1)));
        let unbent = decide_equal(&d1, &d2).unwrap();
        let bent = decide_equal(&d1.bend(), &d2.bend()).unwrap();
        assert_eq!(unbent, bent);
        let same = decide_equal(&d1, &d1.clone()).unwrap();
        let same_bent = decide_equal(&d1.bend(), &d1.bend()).unwrap();
        assert_eq!(same, same_bent);
        assert!(same.is_equal());
    }

    #[test]
    fn normalize_idempotent_at_semantic_level() {
        let d = random_stabilizer_diagram(2, 4, 7);
        let nf = normalize(&d).unwrap();
        if let Some(r) = nf.rgslc() {
            let rendered = r.diagram().to_diagram();
            let nf2 = normalize(&rendered).unwrap();
            let r2 = nf2.rgslc().unwrap();
            let (s1, s2) = gslc::simplify_pair(r, r2).unwrap();
            assert!(gslc::equal_rgslc(&s1, &s2));
        }
    }

    #[test]
    fn decide_equal_is_an_equivalence_on_samples() {
        // reflexivity, symmetry, transitivity over a few same-arity triples
        let mk = |seed: u64| {
            let d = random_stabilizer_diagram(2, 4, seed);
            if d.arity() == (2, 2) {
                Some(d)
            } else {
                None
            }
        };
        let ds: Vec<Diagram> = (0..40u64).filter_map(mk).take(6).collect();
        for d in &ds {
            assert!(decide_equal(d, d).unwrap().is_equal());
        }
        for a in &ds {
            for b in &ds {
                let ab = decide_equal(a, b).unwrap().is_equal();
                let ba = decide_equal(b, a).unwrap().is_equal();
                assert_eq!(ab, ba);
                for c in &ds {
                    let bc = decide_equal(b, c).unwrap().is_equal();
                    let ac = decide_equal(a, c).unwrap().is_equal();
                    if ab && bc {
                        assert!(ac);
                    }
                }
            }
        }
    }

    #[test]
    fn selftest_small_batch() {
        let report = selftest(40, 2024);
        assert!(report.passed(), "disagreements: {:?}", report.disagreements);
        assert!(report.equal_seen > 0);
        assert!(report.unequal_seen > 0);
    }
}
