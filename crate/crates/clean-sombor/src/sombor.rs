//! The Sombor index `SO(G) = Σ_{uv ∈ E} √(deg(u)² + deg(v)²)`, summed
//! directly over explicit edges.
//!
//! This is the ground-truth side of every formula comparison, so it works on
//! any degree-annotated edge list, not just clean graphs; tiny hand-built
//! graphs get the same code path.

use std::collections::BTreeMap;

use crate::graph::CleanGraph;
use crate::radical::RadicalSum;

/// Exact Sombor index of a clean graph.
pub fn sombor_index(g: &CleanGraph) -> RadicalSum {
    sombor_index_of_edges(g.degrees(), g.edges())
}

/// Exact Sombor index of an arbitrary edge list over cached degrees. Each
/// edge must appear exactly once.
///
/// Edges are bucketed by radicand before the square roots are taken, so the
/// result is canonical regardless of iteration order.
pub fn sombor_index_of_edges(
    degrees: &[u32],
    edges: impl IntoIterator<Item = (u32, u32)>,
) -> RadicalSum {
    let mut multiplicity: BTreeMap<u64, u64> = BTreeMap::new();
    for (i, j) in edges {
        let du = degrees[i as usize] as u64;
        let dv = degrees[j as usize] as u64;
        *multiplicity.entry(du * du + dv * dv).or_insert(0) += 1;
    }
    multiplicity
        .into_iter()
        .map(|(radicand, count)| {
            RadicalSum::sqrt_int(radicand).scale_int(count as i64)
        })
        .sum()
}

/// Floating-point Sombor index, summed term by term in `f64`. Kept separate
/// from the exact path so the two can cross-check each other.
pub fn sombor_index_float(g: &CleanGraph) -> f64 {
    sombor_index_float_of_edges(g.degrees(), g.edges())
}

/// Floating-point Sombor index of an arbitrary edge list.
pub fn sombor_index_float_of_edges(
    degrees: &[u32],
    edges: impl IntoIterator<Item = (u32, u32)>,
) -> f64 {
    edges
        .into_iter()
        .map(|(i, j)| {
            let du = degrees[i as usize] as f64;
            let dv = degrees[j as usize] as f64;
            (du * du + dv * dv).sqrt()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Variant, DEFAULT_VERTEX_CAP};
    use crate::ring::ResidueRing;

    fn degrees_of(edges: &[(u32, u32)], vertices: usize) -> Vec<u32> {
        let mut deg = vec![0u32; vertices];
        for &(i, j) in edges {
            deg[i as usize] += 1;
            deg[j as usize] += 1;
        }
        deg
    }

    #[test]
    fn hand_built_fixtures() {
        // K2: one edge between degree-1 endpoints.
        let k2 = [(0u32, 1u32)];
        let deg = degrees_of(&k2, 2);
        assert_eq!(
            sombor_index_of_edges(&deg, k2),
            RadicalSum::sqrt_int(2)
        );

        // P3: two edges, each √(1²+2²).
        let p3 = [(0u32, 1u32), (1, 2)];
        let deg = degrees_of(&p3, 3);
        assert_eq!(
            sombor_index_of_edges(&deg, p3),
            RadicalSum::sqrt_int(5).scale_int(2)
        );

        // K4: six edges of degree 3 endpoints; 6√18 = 18√2.
        let k4 = [(0u32, 1u32), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let deg = degrees_of(&k4, 4);
        let so = sombor_index_of_edges(&deg, k4);
        assert_eq!(so, RadicalSum::sqrt_int(2).scale_int(18));
        assert_eq!(so, RadicalSum::sqrt_int(18).scale_int(6));
    }

    #[test]
    fn empty_graph_is_zero() {
        assert!(sombor_index_of_edges(&[0, 0, 0], std::iter::empty()).is_zero());
        assert_eq!(sombor_index_float_of_edges(&[0], std::iter::empty()), 0.0);
    }

    #[test]
    fn additive_over_disjoint_union() {
        let k2 = [(0u32, 1u32)];
        let p3 = [(0u32, 1u32), (1, 2)];
        let union = [(0u32, 1u32), (2, 3), (3, 4)];
        let a = sombor_index_of_edges(&degrees_of(&k2, 2), k2);
        let b = sombor_index_of_edges(&degrees_of(&p3, 3), p3);
        let ab = sombor_index_of_edges(&degrees_of(&union, 5), union);
        assert_eq!(ab, a.add(&b));
    }

    #[test]
    fn clean_graph_values() {
        let g9 = CleanGraph::build(&ResidueRing::new(9).unwrap(), Variant::Cl2, DEFAULT_VERTEX_CAP)
            .unwrap();
        assert_eq!(sombor_index(&g9), RadicalSum::sqrt_int(2).scale_int(2));

        let g24 =
            CleanGraph::build(&ResidueRing::new(24).unwrap(), Variant::Cl2, DEFAULT_VERTEX_CAP)
                .unwrap();
        let expected = RadicalSum::sqrt_int(85)
            .scale_int(16)
            .add(&RadicalSum::sqrt_int(2).scale_int(576));
        assert_eq!(sombor_index(&g24), expected);
    }

    #[test]
    fn float_and_exact_paths_agree() {
        for n in [9u64, 15, 16, 24, 30] {
            let g =
                CleanGraph::build(&ResidueRing::new(n).unwrap(), Variant::Cl2, DEFAULT_VERTEX_CAP)
                    .unwrap();
            let exact = sombor_index(&g).to_f64();
            let float = sombor_index_float(&g);
            if exact == 0.0 {
                assert_eq!(float, 0.0);
            } else {
                assert!(((exact - float) / exact).abs() < 1e-6, "n={n}");
            }
        }
    }

    #[test]
    fn matching_plus_isolated_vertices_gives_m_sqrt2() {
        // m·K2 ∪ t·K1 — the shape of every prime-power clean graph.
        for (m, t) in [(0u32, 3u32), (1, 0), (4, 2), (7, 5)] {
            let edges: Vec<(u32, u32)> = (0..m).map(|i| (2 * i, 2 * i + 1)).collect();
            let deg = degrees_of(&edges, (2 * m + t) as usize);
            assert_eq!(
                sombor_index_of_edges(&deg, edges),
                RadicalSum::sqrt_int(2).scale_int(m as i64)
            );
        }
    }

    #[test]
    fn order_independence() {
        let edges = [(0u32, 1u32), (1, 2), (2, 3), (0, 3), (0, 2)];
        let deg = degrees_of(&edges, 4);
        let forward = sombor_index_of_edges(&deg, edges);
        let mut reversed = edges;
        reversed.reverse();
        assert_eq!(forward, sombor_index_of_edges(&deg, reversed));
    }
}
