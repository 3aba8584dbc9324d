//! Graph-state stabilizers and the local Clifford realising local
//! complementation.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::pauli::{Pauli, PauliOperator};

/// A graph together with its `n` stabilizer generators
/// `K_j = X_j ∏_{b ∈ N_j} Z_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphState {
    graph: SimpleGraph,
    generators: Vec<PauliOperator>,
}

impl GraphState {
    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn num_qubits(&self) -> usize {
        self.graph.num_vertices()
    }
}

pub fn generators(g: &SimpleGraph) -> GraphState {
    let n = g.num_vertices();
    let generators = (0..n)
        .map(|j| {
            let mut k = PauliOperator::z_string(g.adjacency().row(j));
            k.set_qubit(j, Pauli::X);
            k
        })
        .collect();
    GraphState {
        graph: g.clone(),
        generators,
    }
}

/// The two single-qubit gates appearing in `U_v(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LcGate {
    /// `√(−iX) = (I − iX)/√2`
    SqrtMinusIX,
    /// `√(iZ) = (I + iZ)/√2`
    SqrtPlusIZ,
}

impl LcGate {
    /// Images of `X` and `Z` under `P ↦ U P U†`, as `(x, z, phase)` in the
    /// X-before-Z convention. Derived from the 2×2 matrices; see the unit test.
    ///
    /// √(−iX): X ↦ X, Z ↦ −Y.  √(iZ): X ↦ −Y, Z ↦ Z.
    const fn images(self) -> [(bool, bool, u8); 2] {
        // −Y = −i·XZ = i³·XZ
        match self {
            LcGate::SqrtMinusIX => [(true, false, 0), (true, true, 3)],
            LcGate::SqrtPlusIZ => [(true, true, 3), (false, true, 0)],
        }
    }

    fn label(self) -> &'static str {
        match self {
            LcGate::SqrtMinusIX => "sqrt(-iX)",
            LcGate::SqrtPlusIZ => "sqrt(iZ)",
        }
    }
}

/// A product of single-qubit [`LcGate`]s. Factors act in list order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalCliffordOp {
    factors: Vec<(usize, LcGate)>,
}

impl LocalCliffordOp {
    pub fn new(factors: Vec<(usize, LcGate)>) -> Self {
        Self { factors }
    }

    pub fn factors(&self) -> &[(usize, LcGate)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Highest qubit index touched, if any.
    pub fn max_qubit(&self) -> Option<usize> {
        self.factors.iter().map(|&(q, _)| q).max()
    }

    /// Human-readable factor list with qubit labels shifted by `base`
    /// (1 for 1-based labels).
    pub fn describe(&self, base: usize) -> String {
        self.factors
            .iter()
            .map(|&(q, g)| format!("{}@{}", g.label(), q + base))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// `U P U†`.
    pub fn conjugate(&self, p: &PauliOperator) -> Result<PauliOperator> {
        let n = p.num_qubits();
        if let Some(q) = self.max_qubit().filter(|&q| q >= n) {
            return Err(Error::DimensionMismatch(format!(
                "local Clifford acts on qubit {q} but the operator has {n} qubits"
            )));
        }
        let mut out = p.clone();
        for &(q, gate) in &self.factors {
            out = conjugate_qubit(&out, q, gate);
        }
        Ok(out)
    }
}

impl fmt::Display for LocalCliffordOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe(0))
    }
}

fn conjugate_qubit(p: &PauliOperator, q: usize, gate: LcGate) -> PauliOperator {
    let [img_x, img_z] = gate.images();
    let mut x = p.x_bits().get(q) && img_x.0;
    let mut z = p.x_bits().get(q) && img_x.1;
    let mut phase = p.phase();
    if p.x_bits().get(q) {
        phase += img_x.2;
    }
    if p.z_bits().get(q) {
        // Multiply the running image on the right by the image of Z: moving its
        // X past the accumulated Z costs a sign.
        if z && img_z.0 {
            phase += 2;
        }
        x ^= img_z.0;
        z ^= img_z.1;
        phase += img_z.2;
    }
    let mut xs = p.x_bits().clone();
    let mut zs = p.z_bits().clone();
    xs.set(q, x);
    zs.set(q, z);
    PauliOperator::new(xs, zs, phase % 4).expect("same length")
}

/// `U_v(G) = √(−iX_v) ∏_{b ∈ N_v} √(iZ_b)`, factors in increasing qubit order.
pub fn lc_operator(g: &SimpleGraph, v: usize) -> Result<LocalCliffordOp> {
    let nbrs = g.neighborhood(v)?;
    let mut factors: Vec<(usize, LcGate)> = nbrs
        .into_iter()
        .map(|b| (b, LcGate::SqrtPlusIZ))
        .chain(std::iter::once((v, LcGate::SqrtMinusIX)))
        .collect();
    factors.sort_by_key(|&(q, _)| q);
    Ok(LocalCliffordOp { factors })
}

/// `{U K_j U†}` for every generator of `state`.
pub fn conjugate_generators(
    state: &GraphState,
    op: &LocalCliffordOp,
) -> Result<Vec<PauliOperator>> {
    state.generators.iter().map(|k| op.conjugate(k)).collect()
}

/// Graphs reachable by repeated local complementation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcOrbit {
    pub graphs: Vec<SimpleGraph>,
    /// Set when the search stopped at `max_size` with unexplored graphs left.
    pub truncated: bool,
}

impl LcOrbit {
    pub fn contains(&self, g: &SimpleGraph) -> bool {
        self.graphs.contains(g)
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }
}

/// Breadth-first closure of `g` under local complementation at every vertex.
/// Graphs are compared as labelled graphs. Order is BFS discovery order, so
/// the result is deterministic.
pub fn lc_orbit(g: &SimpleGraph, max_size: usize) -> LcOrbit {
    let mut seen: HashSet<SimpleGraph> = HashSet::new();
    let mut graphs = Vec::new();
    let mut queue = VecDeque::new();
    let mut truncated = false;
    if max_size == 0 {
        return LcOrbit {
            graphs,
            truncated: true,
        };
    }
    seen.insert(g.clone());
    graphs.push(g.clone());
    queue.push_back(g.clone());
    'search: while let Some(h) = queue.pop_front() {
        for v in 0..h.num_vertices() {
            let next = h.local_complement(v).expect("vertex in range");
            if seen.contains(&next) {
                continue;
            }
            if graphs.len() == max_size {
                truncated = true;
                break 'search;
            }
            seen.insert(next.clone());
            graphs.push(next.clone());
            queue.push_back(next);
        }
    }
    LcOrbit { graphs, truncated }
}

/// Smallest graph6 string over all vertex relabellings; equal for isomorphic
/// graphs. Brute force, so limited to small graphs.
pub fn canonical_graph6(g: &SimpleGraph) -> Result<String> {
    const MAX: usize = 9;
    let n = g.num_vertices();
    if n > MAX {
        return Err(Error::TooLarge {
            what: "isomorphism reduction",
            n,
            max: MAX,
        });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = g.to_graph6();
    // Heap's algorithm over all permutations.
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let s = g.permute(&perm).to_graph6();
            if s < best {
                best = s;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}
