//! The rewrite rules and derived diagram equalities, with a soundness
//! harness.
//!
//! Rules are stored as template pairs whose spider phases may be
//! metavariables ranging over 𝒜 or one of its subsets. The figure the rules
//! come from is pictorial, so each transcription here is guarded by
//! [`verify_rule`], which enumerates every instantiation (and a family of
//! small arities for the variadic fusion rule) and checks the two sides
//! against the exact interpreter. A transcription mistake shows up as a
//! counterexample, never as silent unsoundness: nothing downstream depends on
//! the rule syntax.

use crate::arith::{PhaseClass, PhasePair, ScalarVerdict};
use crate::diagram::{Diagram, NodeKind};
use crate::semantics::semantically_equal;
use thiserror::Error;

/// Phase slot of a template node: a constant, a metavariable, or a function
/// of metavariables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseExpr {
    Const(PhasePair),
    Var(u8),
    /// Sum of two metavariables (spider fusion).
    Sum(u8, u8),
    /// (a, b) ↦ (b, a) of a metavariable (the second colour change).
    Swap(u8),
    /// The phase that commutes through an 𝓜-phased red gate: with m ∝ X^k,
    /// Z(a,b)·X^k = X^k·Z(twist^k(a,b)) up to a scalar, where
    /// twist(a,b) = (b−a, −a).
    TwistByM { m: u8, p: u8 },
}

impl PhaseExpr {
    pub fn eval(self, binding: &[PhasePair]) -> PhasePair {
        match self {
            PhaseExpr::Const(p) => p,
            PhaseExpr::Var(i) => binding[i as usize],
            PhaseExpr::Sum(i, j) => binding[i as usize].add(binding[j as usize]),
            PhaseExpr::Swap(i) => {
                let p = binding[i as usize];
                PhasePair { a: p.b, b: p.a }
            }
            PhaseExpr::TwistByM { m, p } => {
                let m = binding[m as usize];
                let mut cur = binding[p as usize];
                // m = (0,0) ∝ I, (2,1) ∝ X, (1,2) ∝ X²
                let k = match (m.a.value(), m.b.value()) {
                    (0, 0) => 0,
                    (2, 1) => 1,
                    (1, 2) => 2,
                    _ => unreachable!("twist needs an 𝓜 phase"),
                };
                for _ in 0..k {
                    cur = PhasePair {
                        a: cur.b - cur.a,
                        b: -cur.a,
                    };
                }
                cur
            }
        }
    }
}

/// Node of a diagram template.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TNode {
    Z(PhaseExpr),
    X(PhaseExpr),
    H,
    HDag,
    B,
}

/// A diagram with phase expressions in the spider slots.
#[derive(Clone, Debug)]
pub struct Template {
    pub nodes: Vec<TNode>,
    pub edges: Vec<(usize, usize)>,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

impl Template {
    pub fn instantiate(&self, binding: &[PhasePair]) -> Diagram {
        let mut d = Diagram::new();
        let ids: Vec<_> = self
            .nodes
            .iter()
            .map(|&n| {
                d.add_node(match n {
                    TNode::Z(e) => NodeKind::ZSpider(e.eval(binding)),
                    TNode::X(e) => NodeKind::XSpider(e.eval(binding)),
                    TNode::H => NodeKind::H,
                    TNode::HDag => NodeKind::HDag,
                    TNode::B => NodeKind::Boundary,
                })
            })
            .collect();
        for &(a, b) in &self.edges {
            d.add_edge(ids[a], ids[b]);
        }
        d.inputs = self.inputs.iter().map(|&i| ids[i]).collect();
        d.outputs = self.outputs.iter().map(|&i| ids[i]).collect();
        d
    }
}

/// Domain of a metavariable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarDomain {
    /// All of 𝒜.
    A,
    /// The Pauli phases 𝓜.
    M,
}

impl VarDomain {
    pub fn members(self) -> Vec<PhasePair> {
        match self {
            VarDomain::A => PhasePair::all(),
            VarDomain::M => PhasePair::class_members(PhaseClass::M),
        }
    }

    pub fn contains(self, p: PhasePair) -> bool {
        match self {
            VarDomain::A => true,
            VarDomain::M => p.class() == PhaseClass::M,
        }
    }
}

/// A rewrite rule: one name, metavariable domains, and one or more
/// concrete-arity template pairs (the fusion rule is variadic, so it carries
/// a family of shapes).
pub struct RewriteRule {
    pub name: &'static str,
    pub vars: Vec<VarDomain>,
    pub variants: Vec<(Template, Template)>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("binding has {0} phases, rule needs {1}")]
    BindingArity(usize, usize),
    #[error("binding value {1} outside the domain of metavariable {0}")]
    DomainViolation(usize, PhasePair),
}

/// Soundness report for one rule.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub name: &'static str,
    pub instances_checked: usize,
    pub all_sound: bool,
    pub counterexamples: Vec<String>,
}

/// Instantiate the primary (first) variant of a rule.
pub fn instantiate(
    rule: &RewriteRule,
    binding: &[PhasePair],
) -> Result<(Diagram, Diagram), RuleError> {
    if binding.len() != rule.vars.len() {
        return Err(RuleError::BindingArity(binding.len(), rule.vars.len()));
    }
    for (i, (&dom, &val)) in rule.vars.iter().zip(binding).enumerate() {
        if !dom.contains(val) {
            return Err(RuleError::DomainViolation(i, val));
        }
    }
    let (lhs, rhs) = &rule.variants[0];
    Ok((lhs.instantiate(binding), rhs.instantiate(binding)))
}

/// Check every variant at every binding against the interpreter.
pub fn verify_rule(rule: &RewriteRule) -> VerifyReport {
    let mut bindings: Vec<Vec<PhasePair>> = vec![vec![]];
    for dom in &rule.vars {
        let mut next = Vec::new();
        for b in &bindings {
            for m in dom.members() {
                let mut b2 = b.clone();
                b2.push(m);
                next.push(b2);
            }
        }
        bindings = next;
    }
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for (vi, (lhs, rhs)) in rule.variants.iter().enumerate() {
        for b in &bindings {
            checked += 1;
            let dl = lhs.instantiate(b);
            let dr = rhs.instantiate(b);
            let verdict =
                semantically_equal(&dl, &dr).unwrap_or(ScalarVerdict::Incomparable);
            if verdict != ScalarVerdict::EqualUpToScalar {
                counterexamples.push(format!(
                    "{} variant {vi} binding {b:?}: {verdict:?}",
                    rule.name
                ));
            }
        }
    }
    VerifyReport {
        name: rule.name,
        instances_checked: checked,
        all_sound: counterexamples.is_empty(),
        counterexamples,
    }
}

fn zero() -> PhaseExpr {
    PhaseExpr::Const(PhasePair::ZERO)
}

fn cphase(a: u8, b: u8) -> PhaseExpr {
    PhaseExpr::Const(PhasePair::new(a, b))
}

/// Spider fusion at the given outer arities: a Z(v0) spider with k1 input
/// legs wired to a Z(v1) spider with k2 output legs equals Z(v0+v1).
fn fusion_variant(k1: usize, k2: usize) -> (Template, Template) {
    let mut nodes = vec![TNode::Z(PhaseExpr::Var(0)), TNode::Z(PhaseExpr::Var(1))];
    let mut edges = vec![(0, 1)];
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    for _ in 0..k1 {
        nodes.push(TNode::B);
        edges.push((nodes.len() - 1, 0));
        inputs.push(nodes.len() - 1);
    }
    for _ in 0..k2 {
        nodes.push(TNode::B);
        edges.push((1, nodes.len() - 1));
        outputs.push(nodes.len() - 1);
    }
    let lhs = Template {
        nodes,
        edges,
        inputs: inputs.clone(),
        outputs: outputs.clone(),
    };
    let mut nodes = vec![TNode::Z(PhaseExpr::Sum(0, 1))];
    let mut edges = Vec::new();
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    for _ in 0..k1 {
        nodes.push(TNode::B);
        edges.push((nodes.len() - 1, 0));
        inputs.push(nodes.len() - 1);
    }
    for _ in 0..k2 {
        nodes.push(TNode::B);
        edges.push((0, nodes.len() - 1));
        outputs.push(nodes.len() - 1);
    }
    let rhs = Template {
        nodes,
        edges,
        inputs,
        outputs,
    };
    (lhs, rhs)
}

/// A 1 → 1 chain of template nodes.
fn chain(nodes: &[TNode]) -> Template {
    let mut t = Template {
        nodes: vec![TNode::B],
        edges: vec![],
        inputs: vec![0],
        outputs: vec![],
    };
    let mut last = 0;
    for &n in nodes {
        t.nodes.push(n);
        t.edges.push((last, t.nodes.len() - 1));
        last = t.nodes.len() - 1;
    }
    t.nodes.push(TNode::B);
    t.edges.push((last, t.nodes.len() - 1));
    t.outputs.push(t.nodes.len() - 1);
    t
}

/// Colour change at arity (n_in, n_out): a red spider with phase `x_phase`
/// equals a green spider with phase `z_phase` conjugated by `h_in` boxes on
/// the inputs and `h_out` boxes on the outputs.
fn colour_change_variant(
    n_in: usize,
    n_out: usize,
    x_phase: PhaseExpr,
    z_phase: PhaseExpr,
    h_in: TNode,
    h_out: TNode,
) -> (Template, Template) {
    let mut lhs = Template {
        nodes: vec![TNode::X(x_phase)],
        edges: vec![],
        inputs: vec![],
        outputs: vec![],
    };
    for _ in 0..n_in {
        lhs.nodes.push(TNode::B);
        lhs.edges.push((lhs.nodes.len() - 1, 0));
        lhs.inputs.push(lhs.nodes.len() - 1);
    }
    for _ in 0..n_out {
        lhs.nodes.push(TNode::B);
        lhs.edges.push((0, lhs.nodes.len() - 1));
        lhs.outputs.push(lhs.nodes.len() - 1);
    }
    let mut rhs = Template {
        nodes: vec![TNode::Z(z_phase)],
        edges: vec![],
        inputs: vec![],
        outputs: vec![],
    };
    for _ in 0..n_in {
        rhs.nodes.push(h_in);
        let h = rhs.nodes.len() - 1;
        rhs.nodes.push(TNode::B);
        let b = rhs.nodes.len() - 1;
        rhs.edges.push((b, h));
        rhs.edges.push((h, 0));
        rhs.inputs.push(b);
    }
    for _ in 0..n_out {
        rhs.nodes.push(h_out);
        let h = rhs.nodes.len() - 1;
        rhs.nodes.push(TNode::B);
        let b = rhs.nodes.len() - 1;
        rhs.edges.push((0, h));
        rhs.edges.push((h, b));
        rhs.outputs.push(b);
    }
    (lhs, rhs)
}

/// The twelve rules, transcribed from the pictorial rule set.
pub fn builtin_rules() -> Vec<RewriteRule> {
    use PhaseExpr::Var;
    let mut rules = Vec::new();

    // (S1) same-colour spider fusion, phases add
    rules.push(RewriteRule {
        name: "S1",
        vars: vec![VarDomain::A, VarDomain::A],
        variants: vec![
            fusion_variant(1, 1),
            fusion_variant(2, 1),
            fusion_variant(1, 2),
            fusion_variant(2, 2),
            fusion_variant(0, 2),
            fusion_variant(0, 1),
        ],
    });

    // (S2) the phase-free arity-2 green spider is a plain wire
    rules.push(RewriteRule {
        name: "S2",
        vars: vec![],
        variants: vec![(chain(&[TNode::Z(zero())]), chain(&[]))],
    });

    // (S3) the cup is symmetric under leg exchange
    let cup = Template {
        nodes: vec![TNode::Z(zero()), TNode::B, TNode::B],
        edges: vec![(0, 1), (0, 2)],
        inputs: vec![],
        outputs: vec![1, 2],
    };
    let cup_swapped = Template {
        outputs: vec![2, 1],
        ..cup.clone()
    };
    rules.push(RewriteRule {
        name: "S3",
        vars: vec![],
        variants: vec![(cup, cup_swapped)],
    });

    // (B1) the green spider copies the phase-free red state
    let b1_lhs = Template {
        nodes: vec![TNode::X(zero()), TNode::Z(zero()), TNode::B, TNode::B],
        edges: vec![(0, 1), (1, 2), (1, 3)],
        inputs: vec![],
        outputs: vec![2, 3],
    };
    let b1_rhs = Template {
        nodes: vec![TNode::X(zero()), TNode::X(zero()), TNode::B, TNode::B],
        edges: vec![(0, 2), (1, 3)],
        inputs: vec![],
        outputs: vec![2, 3],
    };
    rules.push(RewriteRule {
        name: "B1",
        vars: vec![],
        variants: vec![(b1_lhs, b1_rhs)],
    });

    // (B2) bialgebra between the red adder and the green copier
    let b2_lhs = Template {
        nodes: vec![
            TNode::X(zero()), // 2 → 1 adder
            TNode::Z(zero()), // 1 → 2 copier
            TNode::B,
            TNode::B,
            TNode::B,
            TNode::B,
        ],
        edges: vec![(2, 0), (3, 0), (0, 1), (1, 4), (1, 5)],
        inputs: vec![2, 3],
        outputs: vec![4, 5],
    };
    let b2_rhs = Template {
        nodes: vec![
            TNode::Z(zero()),
            TNode::Z(zero()),
            TNode::X(zero()),
            TNode::X(zero()),
            TNode::B,
            TNode::B,
            TNode::B,
            TNode::B,
        ],
        edges: vec![
            (4, 0),
            (5, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 6),
            (3, 7),
        ],
        inputs: vec![4, 5],
        outputs: vec![6, 7],
    };
    rules.push(RewriteRule {
        name: "B2",
        vars: vec![],
        variants: vec![(b2_lhs, b2_rhs)],
    });

    // (K1) an 𝓜-phased red state copies through a phased green spider
    let k1_lhs = Template {
        nodes: vec![TNode::X(Var(1)), TNode::Z(Var(0)), TNode::B, TNode::B],
        edges: vec![(0, 1), (1, 2), (1, 3)],
        inputs: vec![],
        outputs: vec![2, 3],
    };
    let k1_rhs = Template {
        nodes: vec![TNode::X(Var(1)), TNode::X(Var(1)), TNode::B, TNode::B],
        edges: vec![(0, 2), (1, 3)],
        inputs: vec![],
        outputs: vec![2, 3],
    };
    rules.push(RewriteRule {
        name: "K1",
        vars: vec![VarDomain::A, VarDomain::M],
        variants: vec![(k1_lhs, k1_rhs)],
    });

    // (K2) an 𝓜-phased red gate commutes through a green phase gate,
    // twisting the phase
    rules.push(RewriteRule {
        name: "K2",
        vars: vec![VarDomain::A, VarDomain::M],
        variants: vec![(
            chain(&[TNode::X(Var(1)), TNode::Z(Var(0))]),
            chain(&[
                TNode::Z(PhaseExpr::TwistByM { m: 1, p: 0 }),
                TNode::X(Var(1)),
            ]),
        )],
    });

    // (H1) the Hadamard box cancels its adjoint
    rules.push(RewriteRule {
        name: "H1",
        vars: vec![],
        variants: vec![
            (chain(&[TNode::H, TNode::HDag]), chain(&[])),
            (chain(&[TNode::HDag, TNode::H]), chain(&[])),
        ],
    });

    // (EU) Euler decomposition of the Hadamard box into 𝒫 phases
    rules.push(RewriteRule {
        name: "EU",
        vars: vec![],
        variants: vec![
            (
                chain(&[TNode::H]),
                chain(&[
                    TNode::Z(cphase(2, 2)),
                    TNode::X(cphase(2, 2)),
                    TNode::Z(cphase(2, 2)),
                ]),
            ),
            (
                chain(&[TNode::HDag]),
                chain(&[
                    TNode::Z(cphase(1, 1)),
                    TNode::X(cphase(1, 1)),
                    TNode::Z(cphase(1, 1)),
                ]),
            ),
        ],
    });

    // (H2) colour change: red(a,b) = H ∘ green(a,b) ∘ H† legwise
    rules.push(RewriteRule {
        name: "H2",
        vars: vec![VarDomain::A],
        variants: vec![
            colour_change_variant(1, 1, Var(0), Var(0), TNode::HDag, TNode::H),
            colour_change_variant(2, 1, Var(0), Var(0), TNode::HDag, TNode::H),
            colour_change_variant(1, 2, Var(0), Var(0), TNode::HDag, TNode::H),
            colour_change_variant(0, 2, Var(0), Var(0), TNode::HDag, TNode::H),
            colour_change_variant(0, 3, Var(0), Var(0), TNode::HDag, TNode::H),
        ],
    });

    // (H2′) the second colour change: conjugating with the boxes the other
    // way swaps the phase pair
    rules.push(RewriteRule {
        name: "H2'",
        vars: vec![VarDomain::A],
        variants: vec![
            colour_change_variant(1, 1, PhaseExpr::Swap(0), Var(0), TNode::H, TNode::HDag),
            colour_change_variant(2, 1, PhaseExpr::Swap(0), Var(0), TNode::H, TNode::HDag),
            colour_change_variant(1, 2, PhaseExpr::Swap(0), Var(0), TNode::H, TNode::HDag),
            colour_change_variant(0, 2, PhaseExpr::Swap(0), Var(0), TNode::H, TNode::HDag),
        ],
    });

    // (P1) parallel Hadamard edges between green spiders add weights:
    // two H edges equal one H† edge
    let p1_lhs = Template {
        nodes: vec![
            TNode::Z(zero()),
            TNode::Z(zero()),
            TNode::H,
            TNode::H,
            TNode::B,
            TNode::B,
        ],
        edges: vec![(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (1, 5)],
        inputs: vec![],
        outputs: vec![4, 5],
    };
    let p1_rhs = Template {
        nodes: vec![
            TNode::Z(zero()),
            TNode::Z(zero()),
            TNode::HDag,
            TNode::B,
            TNode::B,
        ],
        edges: vec![(0, 2), (2, 1), (0, 3), (1, 4)],
        inputs: vec![],
        outputs: vec![3, 4],
    };
    rules.push(RewriteRule {
        name: "P1",
        vars: vec![],
        variants: vec![(p1_lhs, p1_rhs)],
    });

    rules
}

// ---------------------------------------------------------------------------
// derived equalities
// ---------------------------------------------------------------------------

/// A concrete pair of diagrams provable in the calculus.
pub struct DerivedEquality {
    pub name: &'static str,
    pub lhs: Diagram,
    pub rhs: Diagram,
}

/// The controlled-Z box of the given weight as a diagram: one green spider
/// per wire joined through an H (weight 1) or H† (weight 2) box.
pub fn cz_box(weight: u8) -> Diagram {
    let mut d = Diagram::new();
    let g1 = d.add_node(NodeKind::ZSpider(PhasePair::ZERO));
    let g2 = d.add_node(NodeKind::ZSpider(PhasePair::ZERO));
    let h = d.add_node(if weight == 1 {
        NodeKind::H
    } else {
        NodeKind::HDag
    });
    d.add_edge(g1, h);
    d.add_edge(h, g2);
    let i1 = d.add_node(NodeKind::Boundary);
    let i2 = d.add_node(NodeKind::Boundary);
    let o1 = d.add_node(NodeKind::Boundary);
    let o2 = d.add_node(NodeKind::Boundary);
    d.add_edge(i1, g1);
    d.add_edge(i2, g2);
    d.add_edge(g1, o1);
    d.add_edge(g2, o2);
    d.inputs = vec![i1, i2];
    d.outputs = vec![o1, o2];
    d
}

/// The same box built mirror-image (the H box hanging off the other side).
fn cz_box_mirrored(weight: u8) -> Diagram {
    let mut d = Diagram::new();
    let g1 = d.add_node(NodeKind::ZSpider(PhasePair::ZERO));
    let g2 = d.add_node(NodeKind::ZSpider(PhasePair::ZERO));
    let h = d.add_node(if weight == 1 {
        NodeKind::H
    } else {
        NodeKind::HDag
    });
    d.add_edge(g2, h);
    d.add_edge(h, g1);
    let i1 = d.add_node(NodeKind::Boundary);
    let i2 = d.add_node(NodeKind::Boundary);
    let o1 = d.add_node(NodeKind::Boundary);
    let o2 = d.add_node(NodeKind::Boundary);
    d.add_edge(i1, g1);
    d.add_edge(i2, g2);
    d.add_edge(g1, o1);
    d.add_edge(g2, o2);
    d.inputs = vec![i1, i2];
    d.outputs = vec![o1, o2];
    d
}

/// The SUM gate as copy-then-add: control copied by a green spider, target
/// summed by a red spider.
pub fn sum_gate_diagram() -> Diagram {
    let mut d = Diagram::new();
    let copy = d.add_node(NodeKind::ZSpider(PhasePair::ZERO));
    let add = d.add_node(NodeKind::XSpider(PhasePair::ZERO));
    let i1 = d.add_node(NodeKind::Boundary);
    let i2 = d.add_node(NodeKind::Boundary);
    let o1 = d.add_node(NodeKind::Boundary);
    let o2 = d.add_node(NodeKind::Boundary);
    d.add_edge(i1, copy);
    d.add_edge(copy, o1);
    d.add_edge(copy, add);
    d.add_edge(i2, add);
    d.add_edge(add, o2);
    d.inputs = vec![i1, i2];
    d.outputs = vec![o1, o2];
    d
}

/// (I ⊗ H†) ∘ CZ ∘ (I ⊗ H) as a diagram.
fn sum_via_cz() -> Diagram {
    let pre = Diagram::wires(1).tensor(&Diagram::gate(NodeKind::H));
    let post = Diagram::wires(1).tensor(&Diagram::gate(NodeKind::HDag));
    pre.compose(&cz_box(1)).unwrap().compose(&post).unwrap()
}

/// The derived equalities: the two box presentations of the controlled-Z and
/// its square, and the SUM gate decomposition through the box.
pub fn derived_equalities() -> Vec<DerivedEquality> {
    vec![
        DerivedEquality {
            name: "cz-box",
            lhs: cz_box(1),
            rhs: cz_box_mirrored(1),
        },
        DerivedEquality {
            name: "cz-box-squared",
            lhs: cz_box(2),
            rhs: cz_box_mirrored(2),
        },
        DerivedEquality {
            name: "sum-decomposition",
            lhs: sum_via_cz(),
            rhs: sum_gate_diagram(),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Z3;
    use crate::arith::{Eisenstein, ExactMatrix};
    use crate::semantics::interpret;
    use crate::tableau::{gate_matrix, Gate};

    #[test]
    fn twelve_rules_with_unique_names() {
        let rules = builtin_rules();
        assert_eq!(rules.len(), 12);
        let mut names: Vec<&str> = rules.iter().map(|r| r.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 12);
    }

    #[test]
    fn all_rules_sound() {
        for rule in builtin_rules() {
            let report = verify_rule(&rule);
            assert!(
                report.all_sound,
                "{}: {:?}",
                rule.name, report.counterexamples
            );
            assert!(report.instances_checked > 0);
        }
    }

    #[test]
    fn instantiate_checks_binding() {
        let rules = builtin_rules();
        let s1 = rules.iter().find(|r| r.name == "S1").unwrap();
        assert!(matches!(
            instantiate(s1, &[PhasePair::ZERO]),
            Err(RuleError::BindingArity(1, 2))
        ));
        let k1 = rules.iter().find(|r| r.name == "K1").unwrap();
        assert!(matches!(
            instantiate(k1, &[PhasePair::ZERO, PhasePair::new(1, 0)]),
            Err(RuleError::DomainViolation(1, _))
        ));
        let (l, r) = instantiate(k1, &[PhasePair::new(1, 2), PhasePair::new(2, 1)]).unwrap();
        assert!(l.validate().is_ok() && r.validate().is_ok());
    }

    #[test]
    fn s1_zero_phase_instance_is_plain_fusion() {
        let rules = builtin_rules();
        let s1 = rules.iter().find(|r| r.name == "S1").unwrap();
        let (l, r) = instantiate(s1, &[PhasePair::ZERO, PhasePair::ZERO]).unwrap();
        assert_eq!(
            semantically_equal(&l, &r).unwrap(),
            ScalarVerdict::EqualUpToScalar
        );
    }

    #[test]
    fn corrupted_rule_reports_counterexample() {
        // S2 with the phase knocked off by (1,0) must fail loudly
        let bad = RewriteRule {
            name: "S2-corrupt",
            vars: vec![],
            variants: vec![(chain(&[TNode::Z(cphase(1, 0))]), chain(&[]))],
        };
        let report = verify_rule(&bad);
        assert!(!report.all_sound);
        assert_eq!(report.counterexamples.len(), 1);
    }

    #[test]
    fn rule_instances_validate() {
        for rule in builtin_rules() {
            let binding: Vec<PhasePair> = rule
                .vars
                .iter()
                .map(|d| *d.members().last().unwrap())
                .collect();
            for (lhs, rhs) in &rule.variants {
                let l = lhs.instantiate(&binding);
                let r = rhs.instantiate(&binding);
                assert!(l.validate().is_ok(), "{} lhs", rule.name);
                assert!(r.validate().is_ok(), "{} rhs", rule.name);
                assert_eq!(l.arity(), r.arity(), "{} arity", rule.name);
            }
        }
    }

    #[test]
    fn derived_equalities_hold() {
        for eq in derived_equalities() {
            assert_eq!(
                semantically_equal(&eq.lhs, &eq.rhs).unwrap(),
                ScalarVerdict::EqualUpToScalar,
                "{}",
                eq.name
            );
        }
    }

    #[test]
    fn cz_box_interprets_to_cz() {
        let m = interpret(&cz_box(1)).unwrap();
        let cz = gate_matrix(Gate::Cz(Z3::ONE));
        assert_eq!(m.equal_up_to_scalar(&cz), ScalarVerdict::EqualUpToScalar);
        let m2 = interpret(&cz_box(2)).unwrap();
        let cz2 = gate_matrix(Gate::Cz(Z3::TWO));
        assert_eq!(m2.equal_up_to_scalar(&cz2), ScalarVerdict::EqualUpToScalar);
    }

    #[test]
    fn cz_box_on_plus_plus_is_graph_state() {
        let plus2 = Diagram::state(NodeKind::ZSpider(PhasePair::ZERO))
            .tensor(&Diagram::state(NodeKind::ZSpider(PhasePair::ZERO)));
        let d = plus2.compose(&cz_box(1)).unwrap();
        let m = interpret(&d).unwrap();
        for j in 0..3usize {
            for k in 0..3usize {
                assert_eq!(m[(j * 3 + k, 0)], Eisenstein::omega_pow(((j * k) % 3) as u8));
            }
        }
    }

    #[test]
    fn sum_decomposition_exact_matrix() {
        // (I⊗H†) · CZ · (I⊗H) = 3Λ, exactly
        let id = ExactMatrix::identity(3);
        let lhs = id
            .kron(&gate_matrix(Gate::HDag))
            .matmul(&gate_matrix(Gate::Cz(Z3::ONE)))
            .matmul(&id.kron(&gate_matrix(Gate::H)));
        let want = gate_matrix(Gate::Sum).scale(Eisenstein::from_int(3));
        assert_eq!(lhs, want);
    }
}
