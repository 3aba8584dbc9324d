//! Graph codes: the `B` matrix, logical operators, stabilizer extraction,
//! syndromes and brute-force distance.
//!
//! A code is built from a graph `G` and a `k × n` matrix `B` with
//! `B · Γ(G) = 0`. Row `i` of `B` is the Z-support of the logical operator
//! `Z̄_i`. The code's stabilizer group is the subgroup of the graph-state
//! stabilizer group commuting with every `Z̄_i`; it is found by repeatedly
//! splitting the current generators into a commuting part and an
//! anticommuting part and replacing the latter by pivot products.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2linalg::{BinaryMatrix, BinaryVector};
use crate::graph::{ExtendedGraph, SimpleGraph};
use crate::graphstate::generators;
use crate::pauli::{independent_set, product_of, symplectic_matrix, PauliOperator};

/// Largest `n` accepted by [`distance`].
pub const MAX_DISTANCE_QUBITS: usize = 14;

/// `k` independent rows spanning part of the kernel of `Γ(G)`, taken in
/// reduced echelon order. `Γ` is symmetric, so its left and right kernels
/// coincide.
pub fn derive_b(g: &SimpleGraph, k: usize) -> Result<BinaryMatrix> {
    let kernel = g.adjacency().transpose().nullspace();
    let max = kernel.num_rows();
    if k > max {
        return Err(Error::InsufficientKernel { requested: k, max });
    }
    BinaryMatrix::from_rows(
        g.num_vertices(),
        kernel.into_rows().into_iter().take(k).collect(),
    )
}

/// Dimension of the kernel of `Γ(G)`: the largest `k` a graph code on `G` can have.
pub fn max_k(g: &SimpleGraph) -> usize {
    g.num_vertices() - g.adjacency().rank()
}

/// Row `i` of `b` becomes the Z-string `Z̄_i`.
pub fn logical_z_ops(b: &BinaryMatrix) -> Vec<PauliOperator> {
    b.rows().iter().map(PauliOperator::z_string).collect()
}

/// Whether `p`, sign included, belongs to the stabilizer group of the graph
/// state `|G⟩`. An element of that group is fixed by its X-part: it must
/// equal the product of the `K_j` with `j` in the X-support of `p`.
pub fn in_graph_state_group(g: &SimpleGraph, p: &PauliOperator) -> bool {
    let k = generators(g);
    p.num_qubits() == g.num_vertices()
        && product_of(g.num_vertices(), k.generators(), p.x_bits()).as_ref() == Ok(p)
}

/// Runs the extraction and returns the generator list after each logical
/// operator has been processed (`stages[0]` is the graph-state generators).
pub fn extract_stabilizers_staged(
    g: &SimpleGraph,
    logical_z: &[PauliOperator],
) -> Result<Vec<Vec<PauliOperator>>> {
    let n = g.num_vertices();
    let mut current = generators(g).generators().to_vec();
    let mut stages = vec![current.clone()];
    for (i, z) in logical_z.iter().enumerate() {
        if z.num_qubits() != n {
            return Err(Error::DimensionMismatch(format!(
                "logical operator {i} acts on {} qubits, graph has {n}",
                z.num_qubits()
            )));
        }
        let mut commuting = Vec::new();
        let mut anticommuting = Vec::new();
        for k in current {
            if k.commutes(z)? {
                commuting.push(k);
            } else {
                anticommuting.push(k);
            }
        }
        let Some((pivot, rest)) = anticommuting.split_first() else {
            return Err(Error::DegenerateLogical(format!(
                "logical operator {i} ({z}) commutes with every current generator; \
                 it lies in the span of the earlier ones"
            )));
        };
        let products = rest
            .iter()
            .map(|a| pivot.multiply(a))
            .collect::<Result<Vec<_>>>()?;
        current = commuting;
        current.extend(products);
        stages.push(current.clone());
    }
    let expected = n - logical_z.len().min(n);
    let last = stages.last().expect("at least one stage");
    if last.len() != expected || !independent_set(last) {
        return Err(Error::DegenerateLogical(format!(
            "extraction produced {} generators, expected {expected}",
            last.len()
        )));
    }
    Ok(stages)
}

/// The `n − k` stabilizer generators of the code with logical Z operators
/// `logical_z`, pivoting on the lowest-index anticommuting generator.
pub fn extract_stabilizers(
    g: &SimpleGraph,
    logical_z: &[PauliOperator],
) -> Result<Vec<PauliOperator>> {
    Ok(extract_stabilizers_staged(g, logical_z)?
        .pop()
        .expect("at least one stage"))
}

/// Logical X operators chosen inside the graph-state stabilizer group: `X̄_i`
/// is the product of the `K_j` over a solution `v` of `B v = e_i`. Such a
/// product anticommutes with `Z̄_i` exactly, commutes with the other `Z̄_j`
/// and with every code stabilizer, and fixes `|G⟩`.
fn solve_logical_x(g: &SimpleGraph, b: &BinaryMatrix) -> Result<Vec<PauliOperator>> {
    let n = g.num_vertices();
    let k = b.num_rows();
    let gens = generators(g);
    (0..k)
        .map(|i| {
            let v = b
                .solve(&BinaryVector::unit(k, i))?
                .ok_or_else(|| Error::Internal(format!("no logical X for row {i} of B")))?;
            product_of(n, gens.generators(), &v)
        })
        .collect()
}

/// Recomputes the logical X operators of `code`.
pub fn logical_x_ops(code: &GraphCode) -> Result<Vec<PauliOperator>> {
    solve_logical_x(code.graph(), code.b())
}

/// ±1 outcome per stabilizer generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Syndrome(pub Vec<i8>);

impl Syndrome {
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&s| s == 1)
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|&s| if s < 0 { "-1" } else { "+1" })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCode {
    ext: ExtendedGraph,
    logical_z: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    stabilizers: Vec<PauliOperator>,
}

impl GraphCode {
    /// Builds the code for graph `g` and a validated `B`.
    pub fn new(g: &SimpleGraph, b: BinaryMatrix) -> Result<Self> {
        let ext = ExtendedGraph::new(g.clone(), b)?;
        let logical_z = logical_z_ops(ext.b());
        let stabilizers = extract_stabilizers(g, &logical_z)?;
        let logical_x = solve_logical_x(g, ext.b())?;
        Ok(Self {
            ext,
            logical_z,
            logical_x,
            stabilizers,
        })
    }

    /// Builds the code using [`derive_b`].
    pub fn derive(g: &SimpleGraph, k: usize) -> Result<Self> {
        Self::new(g, derive_b(g, k)?)
    }

    pub fn extended(&self) -> &ExtendedGraph {
        &self.ext
    }

    pub fn graph(&self) -> &SimpleGraph {
        self.ext.inner()
    }

    pub fn b(&self) -> &BinaryMatrix {
        self.ext.b()
    }

    pub fn n(&self) -> usize {
        self.ext.n()
    }

    pub fn k(&self) -> usize {
        self.ext.k()
    }

    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    pub fn stabilizers(&self) -> &[PauliOperator] {
        &self.stabilizers
    }

    /// `−1` at position `i` iff `error` anticommutes with stabilizer `i`.
    pub fn syndrome(&self, error: &PauliOperator) -> Result<Syndrome> {
        self.stabilizers
            .iter()
            .map(|s| Ok(if s.commutes(error)? { 1 } else { -1 }))
            .collect::<Result<Vec<_>>>()
            .map(Syndrome)
    }

    /// Whether `p` lies in the stabilizer group up to sign.
    pub fn in_stabilizer_span(&self, p: &PauliOperator) -> bool {
        let n = self.n();
        if p.num_qubits() != n {
            return false;
        }
        if self.stabilizers.is_empty() {
            return p.is_identity();
        }
        symplectic_matrix(&self.stabilizers).row_space_contains(&p.symplectic())
    }

    /// Checks every commutation and independence relation a valid code must
    /// satisfy. Returns a description of the first violation.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let (n, k) = (self.n(), self.k());
        if self.stabilizers.len() != n - k {
            return Err(format!(
                "{} stabilizers, expected {}",
                self.stabilizers.len(),
                n - k
            ));
        }
        if !independent_set(&self.stabilizers) {
            return Err("stabilizers are dependent".into());
        }
        let commutes =
            |a: &PauliOperator, b: &PauliOperator| a.commutes(b).map_err(|e| e.to_string());
        for (i, s) in self.stabilizers.iter().enumerate() {
            if !s.is_hermitian() {
                return Err(format!("stabilizer {i} ({s}) is not Hermitian"));
            }
            for t in &self.stabilizers {
                if !commutes(s, t)? {
                    return Err(format!("stabilizers {s} and {t} anticommute"));
                }
            }
            for l in self.logical_z.iter().chain(&self.logical_x) {
                if !commutes(s, l)? {
                    return Err(format!("stabilizer {s} anticommutes with logical {l}"));
                }
            }
        }
        for (i, z) in self.logical_z.iter().enumerate() {
            if z.x_bits().count_ones() != 0 || z.z_bits() != self.b().row(i) {
                return Err(format!("logical Z {i} ({z}) does not match row {i} of B"));
            }
            for (j, x) in self.logical_x.iter().enumerate() {
                if commutes(z, x)? != (i != j) {
                    return Err(format!(
                        "logical Z {i} and logical X {j} have the wrong commutation"
                    ));
                }
            }
        }
        let mut all = self.stabilizers.clone();
        all.extend(self.logical_x.iter().cloned());
        if !independent_set(&all) {
            return Err("stabilizers together with logical X are dependent".into());
        }
        Ok(())
    }

    pub fn to_bundle(&self, distance: Option<usize>) -> CodeBundle {
        CodeBundle {
            n: self.n(),
            k: self.k(),
            d: distance,
            graph: self.graph().to_graph6(),
            b: self
                .b()
                .rows()
                .iter()
                .map(BinaryVector::to_bit_string)
                .collect(),
            stabilizers: self.stabilizers.clone(),
            logical_z: self.logical_z.clone(),
            logical_x: self.logical_x.clone(),
        }
    }

    /// Rebuilds a code from a bundle. The bundle's stabilizers are kept in
    /// their stored order after checking that they generate the code's group
    /// with the right signs.
    pub fn from_bundle(bundle: &CodeBundle) -> Result<Self> {
        let g = SimpleGraph::from_graph6(&bundle.graph)?;
        let b = if bundle.b.is_empty() {
            BinaryMatrix::zeros(0, g.num_vertices())
        } else {
            BinaryMatrix::from_bit_strings(&bundle.b)?
        };
        let mut code = GraphCode::new(&g, b)?;
        if code.n() != bundle.n || code.k() != bundle.k {
            return Err(Error::InvalidB(format!(
                "bundle declares [[{}, {}]] but graph and B give [[{}, {}]]",
                bundle.n,
                bundle.k,
                code.n(),
                code.k()
            )));
        }
        let same_span = bundle.stabilizers.len() == code.stabilizers.len()
            && bundle
                .stabilizers
                .iter()
                .all(|s| s.num_qubits() == code.n())
            && (bundle.stabilizers.is_empty()
                || symplectic_matrix(&bundle.stabilizers)
                    .same_row_space(&symplectic_matrix(&code.stabilizers)));
        let signs_ok = bundle
            .stabilizers
            .iter()
            .all(|s| in_graph_state_group(&g, s));
        if !same_span || !signs_ok {
            return Err(Error::InvalidB(
                "bundle stabilizers do not generate the code's stabilizer group".into(),
            ));
        }
        code.stabilizers = bundle.stabilizers.clone();
        if !bundle.logical_x.is_empty() {
            code.logical_x = bundle.logical_x.clone();
        }
        code.check_invariants().map_err(Error::InvalidB)?;
        Ok(code)
    }
}

/// JSON form of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeBundle {
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    /// graph6 encoding of the output graph.
    pub graph: String,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    pub stabilizers: Vec<PauliOperator>,
    pub logical_z: Vec<PauliOperator>,
    #[serde(default)]
    pub logical_x: Vec<PauliOperator>,
}

/// Packs a Pauli as `(x, z)` bit masks for the distance search.
fn masks(p: &PauliOperator) -> (u32, u32) {
    (p.x_bits().to_mask() as u32, p.z_bits().to_mask() as u32)
}

/// Minimum weight of a Pauli that commutes with every stabilizer but is not
/// in the stabilizer group (up to sign). Exhaustive search by increasing
/// weight.
pub fn distance(code: &GraphCode) -> Result<usize> {
    let n = code.n();
    if n > MAX_DISTANCE_QUBITS {
        return Err(Error::TooLarge {
            what: "brute-force distance",
            n,
            max: MAX_DISTANCE_QUBITS,
        });
    }
    if code.k() == 0 {
        return Err(Error::InvalidB("distance is undefined for k = 0".into()));
    }
    let stabs: Vec<(u32, u32)> = code.stabilizers.iter().map(masks).collect();
    // Echelon basis of the stabilizer span over packed (x | z) words.
    let mut basis: Vec<u32> = Vec::new();
    for &(x, z) in &stabs {
        let mut v = x | (z << n);
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    let in_span = |mut v: u32| {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        v == 0
    };
    let is_logical = |x: u32, z: u32| {
        stabs
            .iter()
            .all(|&(sx, sz)| ((x & sz) ^ (z & sx)).count_ones() % 2 == 0)
            && !in_span(x | (z << n))
    };
    for w in 1..=n {
        let supports = combinations(n, w);
        let found = supports.par_iter().any(|support| {
            (0..3u32.pow(w as u32)).any(|mut code| {
                let (mut x, mut z) = (0u32, 0u32);
                for &q in support {
                    match code % 3 {
                        0 => x |= 1 << q,
                        1 => z |= 1 << q,
                        _ => {
                            x |= 1 << q;
                            z |= 1 << q;
                        }
                    }
                    code /= 3;
                }
                is_logical(x, z)
            })
        });
        if found {
            return Ok(w);
        }
    }
    Err(Error::Internal("no logical operator found".into()))
}

fn combinations(n: usize, w: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(w);
    fn rec(start: usize, n: usize, w: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == w {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < w - current.len() {
                break;
            }
            current.push(i);
            rec(i + 1, n, w, current, out);
            current.pop();
        }
    }
    rec(0, n, w, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, validate_b, GraphFormat};
    use proptest::prelude::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn ps(ss: &[&str]) -> Vec<PauliOperator> {
        ss.iter().map(|s| p(s)).collect()
    }

    fn strings(ops: &[PauliOperator]) -> Vec<String> {
        ops.iter().map(ToString::to_string).collect()
    }

    fn same_signed_group(a: &[PauliOperator], b: &[PauliOperator]) -> bool {
        let (ma, mb) = (symplectic_matrix(a), symplectic_matrix(b));
        ma.same_row_space(&mb)
            && b.iter().all(|t| {
                let c = ma.transpose().solve(&t.symplectic()).unwrap().unwrap();
                &product_of(t.num_qubits(), a, &c).unwrap() == t
            })
    }

    fn r5_b() -> BinaryMatrix {
        BinaryMatrix::from_bit_strings(&["11111"]).unwrap()
    }

    fn t4_b() -> BinaryMatrix {
        BinaryMatrix::from_bit_strings(&["0110", "0011"]).unwrap()
    }

    #[test]
    fn derive_b_examples() {
        let r5 = SimpleGraph::ring(5);
        assert_eq!(derive_b(&r5, 1).unwrap(), r5_b());
        assert!(validate_b(&r5_b(), &r5).is_ok());
        let t4 = SimpleGraph::star(4);
        let b = derive_b(&t4, 2).unwrap();
        assert_eq!(b.rank(), 2);
        assert!(validate_b(&t4_b(), &t4).is_ok());
        assert!(b.same_row_space(&t4_b()));
        assert_eq!(
            derive_b(&SimpleGraph::path(2), 1),
            Err(Error::InsufficientKernel {
                requested: 1,
                max: 0
            })
        );
        assert_eq!(
            derive_b(&r5, 2),
            Err(Error::InsufficientKernel {
                requested: 2,
                max: 1
            })
        );
    }

    #[test]
    fn logical_z_examples() {
        assert_eq!(strings(&logical_z_ops(&r5_b())), ["ZZZZZ"]);
        assert_eq!(strings(&logical_z_ops(&t4_b())), ["IZZI", "IIZZ"]);
        let zero = BinaryMatrix::zeros(1, 3);
        assert!(logical_z_ops(&zero)[0].is_identity());
    }

    #[test]
    fn ring_extraction_reproduces_table() {
        let stabs = extract_stabilizers(&SimpleGraph::ring(5), &ps(&["ZZZZZ"])).unwrap();
        assert_eq!(strings(&stabs), ["YYZIZ", "XIXZZ", "XZZXI", "YZIZY"]);
        let standard = ps(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]);
        assert!(same_signed_group(&stabs, &standard));
    }

    #[test]
    fn star_extraction_stages() {
        let stages =
            extract_stabilizers_staged(&SimpleGraph::star(4), &ps(&["IZZI", "IIZZ"])).unwrap();
        assert_eq!(stages.len(), 3);
        assert!(same_signed_group(
            &stages[1],
            &ps(&["XZZZ", "ZIIX", "IXXI"])
        ));
        assert_eq!(strings(&stages[2]), ["XZZZ", "ZXXX"]);
    }

    #[test]
    fn degenerate_logical_is_rejected() {
        let err = extract_stabilizers(&SimpleGraph::star(4), &ps(&["IZZI", "IZZI"])).unwrap_err();
        assert!(matches!(err, Error::DegenerateLogical(_)));
        let err = extract_stabilizers(&SimpleGraph::star(4), &ps(&["IIII"])).unwrap_err();
        assert!(matches!(err, Error::DegenerateLogical(_)));
    }

    #[test]
    fn logical_x_examples() {
        let trivial = GraphCode::new(
            &SimpleGraph::empty(1),
            BinaryMatrix::from_bit_strings(&["1"]).unwrap(),
        )
        .unwrap();
        assert_eq!(strings(trivial.logical_x()), ["X"]);
        assert!(trivial.stabilizers().is_empty());
        for code in [
            GraphCode::new(&SimpleGraph::ring(5), r5_b()).unwrap(),
            GraphCode::new(&SimpleGraph::star(4), t4_b()).unwrap(),
        ] {
            code.check_invariants().unwrap();
            assert_eq!(logical_x_ops(&code).unwrap(), code.logical_x());
            for x in code.logical_x() {
                assert!(in_graph_state_group(code.graph(), x));
            }
        }
    }

    #[test]
    fn syndrome_examples() {
        let r5 = GraphCode::new(&SimpleGraph::ring(5), r5_b()).unwrap();
        let s = r5.syndrome(&p("IIXII")).unwrap();
        assert_eq!(s, Syndrome(vec![-1, 1, -1, 1]));
        assert_eq!(s.to_string(), "(-1, +1, -1, +1)");
        assert!(r5.syndrome(&p("IIIII")).unwrap().is_trivial());
        assert!(r5.syndrome(&p("IIXI")).is_err());
        let t4 = GraphCode::new(&SimpleGraph::star(4), t4_b()).unwrap();
        // ZIII meets the X of XZZZ on qubit 0 and the Z of ZXXX.
        assert_eq!(t4.syndrome(&p("ZIII")).unwrap(), Syndrome(vec![-1, 1]));
    }

    #[test]
    fn distance_examples() {
        let r5 = GraphCode::new(&SimpleGraph::ring(5), r5_b()).unwrap();
        assert_eq!(distance(&r5).unwrap(), 3);
        let t4 = GraphCode::new(&SimpleGraph::star(4), t4_b()).unwrap();
        assert_eq!(distance(&t4).unwrap(), 2);
        let trivial = GraphCode::new(
            &SimpleGraph::empty(1),
            BinaryMatrix::from_bit_strings(&["1"]).unwrap(),
        )
        .unwrap();
        assert_eq!(distance(&trivial).unwrap(), 1);
        let big = GraphCode::derive(&SimpleGraph::empty(15), 1).unwrap();
        assert!(matches!(
            distance(&big),
            Err(Error::TooLarge { max: 14, .. })
        ));
    }

    #[test]
    fn bundle_round_trip() {
        let code = GraphCode::new(&SimpleGraph::ring(5), r5_b()).unwrap();
        let bundle = code.to_bundle(Some(3));
        let json = serde_json::to_string(&bundle).unwrap();
        assert!(json.contains(r#""B":["11111"]"#));
        let back: CodeBundle = serde_json::from_str(&json).unwrap();
        assert_eq!(GraphCode::from_bundle(&back).unwrap(), code);

        let mut tampered = bundle.clone();
        tampered.stabilizers[0] = tampered.stabilizers[0].negate();
        assert!(GraphCode::from_bundle(&tampered).is_err());
    }

    #[test]
    fn graph_state_group_membership_tracks_sign() {
        let g = SimpleGraph::ring(5);
        assert!(in_graph_state_group(&g, &p("YYZIZ")));
        assert!(!in_graph_state_group(&g, &p("-YYZIZ")));
        assert!(!in_graph_state_group(&g, &p("ZZZZZ")));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(4, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn parsed_ring_code_matches() {
        let g = parse_graph("5\n1 2\n2 3\n3 4\n4 5\n5 1\n", GraphFormat::EdgeList).unwrap();
        assert_eq!(GraphCode::derive(&g, 1).unwrap().b(), &r5_b());
    }

    proptest! {
        #[test]
        fn derived_codes_satisfy_invariants(g in crate::graph::tests::arb_graph(9)) {
            let k = max_k(&g);
            let code = GraphCode::derive(&g, k).unwrap();
            prop_assert!(code.check_invariants().is_ok(), "{:?}", code.check_invariants());
            let gens = generators(&g).generators().to_vec();
            for s in code.stabilizers() {
                prop_assert!(in_graph_state_group(&g, s));
            }
            // Stabilizers and logical X together span the graph-state group.
            let mut all = code.stabilizers().to_vec();
            all.extend(code.logical_x().iter().cloned());
            if !all.is_empty() {
                prop_assert!(symplectic_matrix(&all).same_row_space(&symplectic_matrix(&gens)));
            }
            let again = GraphCode::derive(&g, k).unwrap();
            prop_assert_eq!(strings(again.stabilizers()), strings(code.stabilizers()));
        }
    }
}
