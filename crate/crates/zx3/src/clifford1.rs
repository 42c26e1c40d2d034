//! The single-qutrit Clifford group 𝒞₁: all 216 classes up to global phase.
//!
//! Elements are identified with equivalence classes of exact 3×3 matrices
//! under multiplication by a nonzero scalar. The whole group is enumerated
//! once by breadth-first closure of ⟨S, H⟩ and kept in a global table keyed
//! by a scalar-invariant fingerprint, which makes class lookup, composition
//! and inversion O(1) after startup.
//!
//! Every class carries a unique normal form, one of three shapes:
//!
//! - `Zx`   — Z(a₁,a₂) · X(a₃,a₄), both pairs free in 𝒜 (81 classes);
//! - `Zxz`  — Z(a₅,a₆) · X(q₁,q₂) · Z(p₁,p₂) with q ∈ 𝒬, p ∈ 𝒫 (108);
//! - `ZxHh` — Z(a₇,a₈) · X(m₁,m₂) · H · H with m ∈ 𝓜 (27).
//!
//! Products are written with the rightmost factor applied first. That these
//! 216 candidates are pairwise inequivalent and hit every class is not
//! assumed: it is re-verified every time the table is built, and the build
//! aborts on any mismatch.
//!
//! The table also records the set ℛ of allowed vertex operators for reduced
//! GS-LC diagrams: the nine pure Z-phases together with the three classes
//! X(1,1)·Z(a) with a₁+a₂ ≡ 2 (mod 3), which send |+⟩ to the three
//! computational basis states. These last three carry a red 𝒫-phased node in
//! diagram form and are the "red" vertex operators of the reduction.

use crate::arith::{Eisenstein, ExactMatrix, PhaseClass, PhasePair};
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

/// A class id in the 216-element table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliffordClass(pub u16);

/// Generator alphabet for Clifford words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CliffordGen {
    S,
    SDag,
    H,
    HDag,
    X,
    Z,
    ZPhase(PhasePair),
    XPhase(PhasePair),
}

pub type CliffordWord = Vec<CliffordGen>;

/// Unique normal form of a single-qutrit Clifford class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CliffordNF {
    /// Z(z) · X(x): z, x ∈ 𝒜.
    Zx { z: PhasePair, x: PhasePair },
    /// Z(z) · X(q) · Z(p): z ∈ 𝒜, q ∈ 𝒬, p ∈ 𝒫.
    Zxz {
        z: PhasePair,
        q: PhasePair,
        p: PhasePair,
    },
    /// Z(z) · X(m) · H · H: z ∈ 𝒜, m ∈ 𝓜.
    ZxHh { z: PhasePair, m: PhasePair },
}

impl CliffordNF {
    pub const IDENTITY: CliffordNF = CliffordNF::Zx {
        z: PhasePair::ZERO,
        x: PhasePair::ZERO,
    };

    /// Check the parameter class constraints of the shape.
    pub fn valid(&self) -> bool {
        match *self {
            CliffordNF::Zx { .. } => true,
            CliffordNF::Zxz { q, p, .. } => {
                q.class() != PhaseClass::M && p.class() == PhaseClass::P
            }
            CliffordNF::ZxHh { m, .. } => m.class() == PhaseClass::M,
        }
    }

    /// Exact (unnormalized) matrix of the normal form diagram.
    pub fn matrix(&self) -> ExactMatrix {
        match *self {
            CliffordNF::Zx { z, x } => zphase_matrix(z).matmul(&xphase_matrix(x)),
            CliffordNF::Zxz { z, q, p } => zphase_matrix(z)
                .matmul(&xphase_matrix(q))
                .matmul(&zphase_matrix(p)),
            CliffordNF::ZxHh { z, m } => zphase_matrix(z)
                .matmul(&xphase_matrix(m))
                .matmul(&h_matrix())
                .matmul(&h_matrix()),
        }
    }

    /// The gate sequence, first-applied first.
    pub fn word(&self) -> CliffordWord {
        match *self {
            CliffordNF::Zx { z, x } => vec![CliffordGen::XPhase(x), CliffordGen::ZPhase(z)],
            CliffordNF::Zxz { z, q, p } => vec![
                CliffordGen::ZPhase(p),
                CliffordGen::XPhase(q),
                CliffordGen::ZPhase(z),
            ],
            CliffordNF::ZxHh { z, m } => vec![
                CliffordGen::H,
                CliffordGen::H,
                CliffordGen::XPhase(m),
                CliffordGen::ZPhase(z),
            ],
        }
    }
}

impl fmt::Display for CliffordNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CliffordNF::Zx { z, x } => write!(f, "Z{z}·X{x}"),
            CliffordNF::Zxz { z, q, p } => write!(f, "Z{z}·X{q}·Z{p}"),
            CliffordNF::ZxHh { z, m } => write!(f, "Z{z}·X{m}·H·H"),
        }
    }
}

pub fn zphase_matrix(p: PhasePair) -> ExactMatrix {
    ExactMatrix::diagonal(&[
        Eisenstein::ONE,
        Eisenstein::omega_pow(p.a),
        Eisenstein::omega_pow(p.b),
    ])
}

pub fn h_matrix() -> ExactMatrix {
    let w = Eisenstein::OMEGA;
    ExactMatrix::from_rows(vec![
        vec![Eisenstein::ONE, Eisenstein::ONE, Eisenstein::ONE],
        vec![Eisenstein::ONE, w, w * w],
        vec![Eisenstein::ONE, w * w, w],
    ])
}

pub fn xphase_matrix(p: PhasePair) -> ExactMatrix {
    h_matrix()
        .matmul(&zphase_matrix(p))
        .matmul(&h_matrix().adjoint())
}

pub fn gen_matrix(g: CliffordGen) -> ExactMatrix {
    match g {
        CliffordGen::S => zphase_matrix(PhasePair::new(0, 1)),
        CliffordGen::SDag => zphase_matrix(PhasePair::new(0, 2)),
        CliffordGen::H => h_matrix(),
        CliffordGen::HDag => h_matrix().adjoint(),
        CliffordGen::X => xphase_matrix(PhasePair::new(2, 1)),
        CliffordGen::Z => zphase_matrix(PhasePair::new(1, 2)),
        CliffordGen::ZPhase(p) => zphase_matrix(p),
        CliffordGen::XPhase(p) => xphase_matrix(p),
    }
}

/// Scalar-invariant fingerprint: scale by the conjugate of the first nonzero
/// entry, then divide the integer component vector by its gcd. Two matrices
/// get the same fingerprint iff they are equal up to a nonzero scalar.
fn fingerprint(m: &ExactMatrix) -> Vec<i64> {
    let c = m
        .entries()
        .iter()
        .copied()
        .find(|e| !e.is_zero())
        .expect("zero matrix has no class");
    let mut comps: Vec<i64> = Vec::with_capacity(m.entries().len() * 2);
    for &e in m.entries() {
        let s = e * c.conj();
        comps.push(s.u);
        comps.push(s.v);
    }
    let g = comps.iter().fold(0i64, |acc, &x| gcd(acc, x.abs()));
    if g > 1 {
        for x in &mut comps {
            *x /= g;
        }
    }
    comps
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Vertex-local move counts that bring an operator into ℛ: `pushes` copies of
/// the Pauli X, then `stars` 1-local complementations, then `circs`
/// edge-doublings, all at the vertex carrying the operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Absorption {
    pub pushes: u8,
    pub stars: u8,
    pub circs: u8,
}

pub struct CliffordTable {
    reps: Vec<ExactMatrix>,
    lookup: HashMap<Vec<i64>, u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    nf: Vec<CliffordNF>,
    nf_class: HashMap<CliffordNF, u16>,
    r_set: Vec<CliffordClass>,
    in_r: Vec<bool>,
    red: Vec<bool>,
    plus_rep: Vec<u16>,
    absorb: Vec<Absorption>,
    conj_x: Vec<(u8, u8, u8)>,
    conj_z: Vec<(u8, u8, u8)>,
    pub identity: CliffordClass,
    pub s: CliffordClass,
    pub h: CliffordClass,
    pub hdag: CliffordClass,
    pub x_pauli: CliffordClass,
    pub z_pauli: CliffordClass,
    /// X(1,1): the vertex operator of a 1-local complementation.
    pub star_op: CliffordClass,
    /// H·H: the vertex operator of the edge-doubling transformation.
    pub neg: CliffordClass,
    /// Z(2,2): what each neighbour of a 1-local complementation receives.
    pub star_neighbour: CliffordClass,
    pub max_word_len: usize,
}

static TABLE: OnceLock<CliffordTable> = OnceLock::new();

/// The global 216-class table, built once on first use.
pub fn table() -> &'static CliffordTable {
    TABLE.get_or_init(CliffordTable::build)
}

impl CliffordTable {
    fn build() -> CliffordTable {
        // breadth-first closure of ⟨S, H⟩ up to scalars
        let gens = [gen_matrix(CliffordGen::S), gen_matrix(CliffordGen::H)];
        let mut reps: Vec<ExactMatrix> = vec![ExactMatrix::identity(3)];
        let mut lookup: HashMap<Vec<i64>, u16> = HashMap::new();
        lookup.insert(fingerprint(&reps[0]), 0);
        let mut frontier = vec![0usize];
        let mut max_word_len = 0;
        while !frontier.is_empty() {
            max_word_len += 1;
            let mut next = Vec::new();
            for &i in &frontier {
                for g in gens.iter() {
                    let m = g.matmul(&reps[i]);
                    let fp = fingerprint(&m);
                    if !lookup.contains_key(&fp) {
                        reps.push(m);
                        lookup.insert(fp, (reps.len() - 1) as u16);
                        next.push(reps.len() - 1);
                    }
                }
            }
            frontier = next;
        }
        let n = reps.len();
        assert_eq!(n, 216, "⟨S,H⟩ closure must have exactly 216 classes");

        let find = |m: &ExactMatrix| -> u16 {
            *lookup
                .get(&fingerprint(m))
                .expect("matrix is not a Clifford class representative")
        };

        let mut mul = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = find(&reps[i].matmul(&reps[j]));
            }
        }
        let mut inv = vec![0u16; n];
        for (i, slot) in inv.iter_mut().enumerate() {
            *slot = find(&reps[i].adjoint());
            debug_assert_eq!(mul[i * n + *slot as usize], 0);
        }

        // normal forms: enumerate the three shapes and check the bijection
        let mut nf_class: HashMap<CliffordNF, u16> = HashMap::new();
        let mut nf_of: Vec<Option<CliffordNF>> = vec![None; n];
        let mut push_nf = |f: CliffordNF, nf_of: &mut Vec<Option<CliffordNF>>| {
            assert!(f.valid(), "normal form parameter outside its class: {f}");
            let c = find(&f.matrix());
            assert!(
                nf_of[c as usize].is_none(),
                "normal forms {} and {f} are scalar-equivalent",
                nf_of[c as usize].unwrap()
            );
            nf_of[c as usize] = Some(f);
            nf_class.insert(f, c);
        };
        for z in PhasePair::all() {
            for x in PhasePair::all() {
                push_nf(CliffordNF::Zx { z, x }, &mut nf_of);
            }
            for q in PhasePair::q_members() {
                for p in PhasePair::class_members(PhaseClass::P) {
                    push_nf(CliffordNF::Zxz { z, q, p }, &mut nf_of);
                }
            }
            for m in PhasePair::class_members(PhaseClass::M) {
                push_nf(CliffordNF::ZxHh { z, m }, &mut nf_of);
            }
        }
        let nf: Vec<CliffordNF> = nf_of
            .into_iter()
            .map(|o| o.expect("some class has no normal form"))
            .collect();

        let identity = CliffordClass(0);
        let s = CliffordClass(find(&gen_matrix(CliffordGen::S)));
        let h = CliffordClass(find(&gen_matrix(CliffordGen::H)));
        let hdag = CliffordClass(find(&gen_matrix(CliffordGen::HDag)));
        let x_pauli = CliffordClass(find(&gen_matrix(CliffordGen::X)));
        let z_pauli = CliffordClass(find(&gen_matrix(CliffordGen::Z)));
        let star_op = CliffordClass(find(&xphase_matrix(PhasePair::new(1, 1))));
        let neg = CliffordClass(find(&h_matrix().matmul(&h_matrix())));
        let star_neighbour = CliffordClass(find(&zphase_matrix(PhasePair::new(2, 2))));

        // ℛ: nine Z-phases and the three basis-state preparations
        // X(1,1)·Z(a) with a₁+a₂ ≡ 2
        let mut r_set: Vec<CliffordClass> = Vec::new();
        let mut in_r = vec![false; n];
        let mut red = vec![false; n];
        for p in PhasePair::all() {
            let c = find(&zphase_matrix(p));
            r_set.push(CliffordClass(c));
            in_r[c as usize] = true;
        }
        for a in PhasePair::all() {
            if (a.a + a.b).value() != 2 {
                continue;
            }
            let c = find(&xphase_matrix(PhasePair::new(1, 1)).matmul(&zphase_matrix(a)));
            r_set.push(CliffordClass(c));
            in_r[c as usize] = true;
            red[c as usize] = true;
        }
        r_set.sort();
        assert_eq!(r_set.len(), 12);

        // group classes by the state they prepare from |+⟩; each state has a
        // unique ℛ representative
        let plus = ExactMatrix::column(vec![Eisenstein::ONE, Eisenstein::ONE, Eisenstein::ONE]);
        let state_fp: Vec<Vec<i64>> = reps.iter().map(|r| fingerprint(&r.matmul(&plus))).collect();
        let mut state_to_r: HashMap<Vec<i64>, u16> = HashMap::new();
        for rc in &r_set {
            let prev = state_to_r.insert(state_fp[rc.0 as usize].clone(), rc.0);
            assert!(prev.is_none(), "two ℛ classes prepare the same state");
        }
        let mut plus_rep = vec![0u16; n];
        for (i, slot) in plus_rep.iter_mut().enumerate() {
            *slot = *state_to_r
                .get(&state_fp[i])
                .expect("state not reachable by any ℛ class");
        }

        // absorption words: the class-level stabilizer of |+⟩ is generated by
        // the Pauli X, the star operator X(1,1) and the negation H·H
        let xp = x_pauli.0 as usize;
        let st = star_op.0 as usize;
        let ng = neg.0 as usize;
        let mut absorb = vec![
            Absorption {
                pushes: 0,
                stars: 0,
                circs: 0,
            };
            n
        ];
        for i in 0..n {
            let mut found = false;
            'search: for pushes in 0..3u8 {
                for stars in 0..3u8 {
                    for circs in 0..2u8 {
                        let mut c = i;
                        for _ in 0..pushes {
                            c = mul[c * n + xp] as usize;
                        }
                        for _ in 0..stars {
                            c = mul[c * n + st] as usize;
                        }
                        for _ in 0..circs {
                            c = mul[c * n + ng] as usize;
                        }
                        if c as u16 == plus_rep[i] {
                            absorb[i] = Absorption {
                                pushes,
                                stars,
                                circs,
                            };
                            found = true;
                            break 'search;
                        }
                    }
                }
            }
            assert!(found, "class {i} has no absorption word");
        }

        // conjugation images of the Pauli basis, derived exactly
        let xmat = pauli_matrix(0, 1, 0);
        let zmat = pauli_matrix(0, 0, 1);
        let mut conj_x = Vec::with_capacity(n);
        let mut conj_z = Vec::with_capacity(n);
        for r in &reps {
            conj_x.push(conjugate_to_pauli(r, &xmat));
            conj_z.push(conjugate_to_pauli(r, &zmat));
        }

        CliffordTable {
            reps,
            lookup,
            mul,
            inv,
            nf,
            nf_class,
            r_set,
            in_r,
            red,
            plus_rep,
            absorb,
            conj_x,
            conj_z,
            identity,
            s,
            h,
            hdag,
            x_pauli,
            z_pauli,
            star_op,
            neg,
            star_neighbour,
            max_word_len,
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Class of an invertible 3×3 matrix; panics if it is not Clifford.
    pub fn class_of(&self, m: &ExactMatrix) -> CliffordClass {
        self.try_class_of(m)
            .expect("matrix is not proportional to a Clifford operator")
    }

    pub fn try_class_of(&self, m: &ExactMatrix) -> Option<CliffordClass> {
        self.lookup.get(&fingerprint(m)).map(|&c| CliffordClass(c))
    }

    pub fn rep(&self, c: CliffordClass) -> &ExactMatrix {
        &self.reps[c.0 as usize]
    }

    /// Group product: first apply `second`, then `first`.
    pub fn compose(&self, first: CliffordClass, second: CliffordClass) -> CliffordClass {
        CliffordClass(self.mul[first.0 as usize * self.reps.len() + second.0 as usize])
    }

    pub fn inverse(&self, c: CliffordClass) -> CliffordClass {
        CliffordClass(self.inv[c.0 as usize])
    }

    pub fn nf_of(&self, c: CliffordClass) -> CliffordNF {
        self.nf[c.0 as usize]
    }

    pub fn class_of_nf(&self, f: CliffordNF) -> CliffordClass {
        CliffordClass(self.nf_class[&f])
    }

    pub fn in_r(&self, c: CliffordClass) -> bool {
        self.in_r[c.0 as usize]
    }

    /// Whether this class is one of the three red-node-bearing ℛ members.
    pub fn is_red(&self, c: CliffordClass) -> bool {
        self.red[c.0 as usize]
    }

    pub fn r_set(&self) -> &[CliffordClass] {
        &self.r_set
    }

    /// The unique ℛ class preparing the same state from |+⟩ as `c`.
    pub fn plus_rep(&self, c: CliffordClass) -> CliffordClass {
        CliffordClass(self.plus_rep[c.0 as usize])
    }

    /// Vertex-local moves that turn operator `c` into its ℛ representative.
    pub fn absorption(&self, c: CliffordClass) -> Absorption {
        self.absorb[c.0 as usize]
    }

    /// Image (δ, x, z) of the Pauli X under conjugation by `c`.
    pub fn image_of_x(&self, c: CliffordClass) -> (u8, u8, u8) {
        self.conj_x[c.0 as usize]
    }

    /// Image (δ, x, z) of the Pauli Z under conjugation by `c`.
    pub fn image_of_z(&self, c: CliffordClass) -> (u8, u8, u8) {
        self.conj_z[c.0 as usize]
    }

    /// Class of a generator word (first element applied first).
    pub fn class_of_word(&self, w: &[CliffordGen]) -> CliffordClass {
        let mut m = ExactMatrix::identity(3);
        for g in w {
            m = gen_matrix(*g).matmul(&m);
        }
        self.class_of(&m)
    }
}

/// ω^δ X^x Z^z as an exact matrix.
pub fn pauli_matrix(delta: u8, x: u8, z: u8) -> ExactMatrix {
    let mut m = ExactMatrix::zero(3, 3);
    for col in 0..3usize {
        let row = (col + x as usize) % 3;
        m[(row, col)] =
            Eisenstein::omega_pow(((z as usize * col + delta as usize) % 3) as u8);
    }
    m
}

/// Express rep·P·rep† (a positive multiple of a Pauli whenever rep is a
/// Clifford representative) as (δ, x, z).
fn conjugate_to_pauli(rep: &ExactMatrix, p: &ExactMatrix) -> (u8, u8, u8) {
    let m = rep.matmul(p).matmul(&rep.adjoint());
    // rep·rep† = s·I for a positive integer s
    let s = rep.matmul(&rep.adjoint())[(0, 0)];
    assert!(
        s.v == 0 && s.u > 0,
        "representative is not unitary-up-to-scalar"
    );
    for delta in 0..3u8 {
        for x in 0..3u8 {
            for z in 0..3u8 {
                if m == pauli_matrix(delta, x, z).scale(s) {
                    return (delta, x, z);
                }
            }
        }
    }
    panic!("conjugate of a Pauli is not a Pauli");
}

/// Bring a word to its unique normal form.
pub fn canonical(w: &[CliffordGen]) -> CliffordNF {
    let t = table();
    t.nf_of(t.class_of_word(w))
}

/// Group operation on normal forms (first apply `c2`, then `c1`).
pub fn compose_nf(c1: CliffordNF, c2: CliffordNF) -> CliffordNF {
    let t = table();
    t.nf_of(t.compose(t.class_of_nf(c1), t.class_of_nf(c2)))
}

pub fn inverse_nf(c: CliffordNF) -> CliffordNF {
    let t = table();
    t.nf_of(t.inverse(t.class_of_nf(c)))
}

pub fn nf_to_matrix(c: CliffordNF) -> ExactMatrix {
    c.matrix()
}

/// All 216 normal forms with their class representative matrices.
pub fn enumerate() -> Vec<(CliffordNF, ExactMatrix)> {
    let t = table();
    (0..t.len())
        .map(|i| {
            let c = CliffordClass(i as u16);
            (t.nf_of(c), t.rep(c).clone())
        })
        .collect()
}

pub fn in_r(c: CliffordNF) -> bool {
    let t = table();
    t.in_r(t.class_of_nf(c))
}

pub fn r_set() -> Vec<CliffordNF> {
    let t = table();
    t.r_set().iter().map(|&c| t.nf_of(c)).collect()
}
