#![no_main]
//! Differential fuzzing of the whole pipeline: for arbitrary n the graph
//! must satisfy its structural invariants, the exact and float Sombor paths
//! must agree, and for one or two prime factors the closed form must equal
//! the brute-force oracle exactly.

use clean_sombor::graph::{CleanGraph, Variant};
use clean_sombor::ring::ResidueRing;
use clean_sombor::{formula, sombor};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() < 8 {
        return;
    }
    let raw = u64::from_le_bytes(data[..8].try_into().unwrap());
    let n = 3 + raw % 998;

    let ring = ResidueRing::new(n).unwrap();
    let graph = CleanGraph::build(&ring, Variant::Cl2, 20_000).unwrap();

    let degree_sum: u64 = graph.degrees().iter().map(|&d| d as u64).sum();
    assert_eq!(degree_sum, 2 * graph.edge_count(), "handshake at n={n}");
    let k = ring.prime_count() as u32;
    assert_eq!(
        graph.vertex_count() as u64,
        ((1u64 << k) - 1) * ring.euler_phi(),
        "vertex census at n={n}"
    );

    let oracle = sombor::sombor_index(&graph);
    let evaluation = formula::evaluate(&ring).unwrap();
    if k <= 2 {
        assert_eq!(oracle, evaluation.value, "closed form diverges at n={n}");
    }

    let float = sombor::sombor_index_float(&graph);
    let exact = oracle.to_f64();
    if float == 0.0 {
        assert_eq!(exact, 0.0);
    } else {
        assert!(((exact - float) / float).abs() < 1e-6, "float drift at n={n}");
    }
});
