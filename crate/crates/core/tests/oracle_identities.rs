mod common;

use graphcodes::graph::SimpleGraph;
use graphcodes::graphcode::{max_k, GraphCode};
use graphcodes::graphstate::lc_operator;
use graphcodes::oracle::*;
use graphcodes::pauli::{Pauli, PauliOperator};
use num_complex::Complex64;
use proptest::prelude::*;

fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            let edges: Vec<_> = pairs
                .zip(&bits)
                .filter(|(_, &b)| b)
                .map(|(e, _)| e)
                .collect();
            SimpleGraph::from_edges(n, &edges).unwrap()
        })
    })
}

fn arb_pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
    (proptest::collection::vec(0u8..4, n), 0u8..4).prop_map(move |(letters, phase)| {
        let mut p = PauliOperator::identity(n);
        for (q, l) in letters.into_iter().enumerate() {
            let letter = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][l as usize];
            p.set_qubit(q, letter);
        }
        p.times_i(phase)
    })
}

fn arb_state(n: usize) -> impl Strategy<Value = StateVector> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n).prop_filter_map(
        "zero vector",
        |v| {
            StateVector::from_amplitudes(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
                .ok()?
                .normalized()
                .ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The symbolic conjugation rule agrees with the dense matrices:
    /// `U P |ψ⟩ = (U P U†) U |ψ⟩`.
    #[test]
    fn symbolic_conjugation_matches_matrices(
        (g, p, psi, v) in arb_graph(1, 5).prop_flat_map(|g| {
            let n = g.num_vertices();
            (Just(g), arb_pauli(n), arb_state(n), 0..n)
        })
    ) {
        let op = lc_operator(&g, v).unwrap();
        let lhs = apply_local_clifford(&apply_pauli(&psi, &p).unwrap(), &op).unwrap();
        let image = op.conjugate(&p).unwrap();
        let rhs = apply_pauli(&apply_local_clifford(&psi, &op).unwrap(), &image).unwrap();
        prop_assert!(lhs.distance(&rhs).unwrap() < 1e-10);
    }

    /// Symbolic syndromes equal the eigenvalues the corrupted codeword shows
    /// for each stabilizer generator.
    #[test]
    fn syndrome_matches_oracle_eigenvalues(
        (g, e) in arb_graph(2, 7).prop_flat_map(|g| {
            let n = g.num_vertices();
            (Just(g), arb_pauli(n))
        })
    ) {
        let k = max_k(&g);
        prop_assume!(k > 0);
        let code = GraphCode::derive(&g, k).unwrap();
        let word = project_logical(&build_graph_state(&g).unwrap(), code.logical_z(), &vec![0; k]).unwrap();
        let corrupted = apply_pauli(&word, &e).unwrap();
        let syndrome = code.syndrome(&e).unwrap();
        for (s, &sign) in code.stabilizers().iter().zip(&syndrome.0) {
            prop_assert!(eigen_deviation(&corrupted, s, sign as f64).unwrap() < 1e-10);
        }
    }

    #[test]
    fn verification_suite_passes(g in arb_graph(2, 6)) {
        let k = max_k(&g);
        let report = verify_graph(&g, k, 1, 5).unwrap();
        prop_assert!(report.iter().all(|c| c.pass), "{:#?}", report);
    }
}

#[test]
fn direct_local_clifford_differs_from_transport_on_ring() {
    let code = GraphCode::derive(&SimpleGraph::ring(5), 1).unwrap();
    for v in 0..5 {
        for c in 0..2u8 {
            let t = lc_transport(&code, v, &[c], MeasurementPolicy::ForceZero).unwrap();
            let direct = direct_lc(&code, v, &[c]).unwrap();
            assert!(t.state.fidelity(&direct).unwrap() < 1.0 - 1e-6);
        }
    }
}
