#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use graphcodes::f2linalg::BinaryVector;
use graphcodes::graph::SimpleGraph;
use graphcodes::pauli::{product_of, PauliOperator};
use rand::Rng;

pub fn paulis(strings: &[&str]) -> Vec<PauliOperator> {
    strings.iter().map(|s| s.parse().unwrap()).collect()
}

/// Every element of the group generated by `gens`, printed with its sign.
pub fn signed_group(gens: &[PauliOperator]) -> BTreeSet<String> {
    let n = gens[0].num_qubits();
    (0u64..1 << gens.len())
        .map(|m| {
            product_of(n, gens, &BinaryVector::from_mask(gens.len(), m))
                .unwrap()
                .to_string()
        })
        .collect()
}

/// Connected graph with `n` vertices; each edge present with probability 1/2.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize) -> SimpleGraph {
    loop {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(0.5) {
                    edges.push((a, b));
                }
            }
        }
        let g = SimpleGraph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

/// Writes `contents` to a fresh file under the system temp directory.
pub fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("graphcodes-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

pub const R5_EDGES: &str = "5\n1 2\n2 3\n3 4\n4 5\n5 1\n";
pub const T4_EDGES: &str = "4\n1 2\n1 3\n1 4\n";
