use anosov::canon::{canonical_code, canonical_form};
use anosov::census::string_to_matrix;
use anosov::equivalence::{decompose, similar, ClassKind};
use anosov::graph6;
use anosov::quotient::{check_brick_conditions, distinct_neighborhoods, deconstruct, quotient, weighted_canonical_code};
use anosov::{SimpleGraph, WeightedGraph};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = SimpleGraph::new(n).unwrap();
            let mut b = bits.into_iter();
            for j in 1..n {
                for i in 0..j {
                    if b.next().unwrap() {
                        g.add_edge(i, j).unwrap();
                    }
                }
            }
            g
        })
    })
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (SimpleGraph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let perm = Just((0..g.n()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}

fn weighted(max_k: usize) -> impl Strategy<Value = WeightedGraph> {
    (1..=max_k).prop_flat_map(|k| {
        let cells = k * (k + 1) / 2;
        (
            proptest::collection::vec(1u32..=5, k),
            proptest::collection::vec(any::<bool>(), cells),
        )
            .prop_map(move |(weights, bits)| {
                let mut edges = Vec::new();
                let mut b = bits.into_iter();
                for j in 0..k {
                    for i in 0..=j {
                        if b.next().unwrap() {
                            edges.push((i, j));
                        }
                    }
                }
                WeightedGraph::new(weights, &edges).unwrap()
            })
    })
}

/// Connected, weights at least 2, no loop on a weight-2 vertex.
fn criteria_graph(max_k: usize) -> impl Strategy<Value = WeightedGraph> {
    weighted(max_k).prop_map(|w| {
        let k = w.k();
        let weights: Vec<u32> = w.weights().iter().map(|&x| x + 1).collect();
        let mut edges: Vec<_> = w.edges().into_iter().filter(|&(i, j)| i != j || weights[i] > 2).collect();
        edges.extend((1..k).map(|v| (v - 1, v)));
        if k == 1 {
            edges.push((0, 0));
        }
        WeightedGraph::new(weights, &edges).unwrap()
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in graph(20)) {
        prop_assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_code_ignores_labels((g, perm) in graph_and_perm(12)) {
        let h = g.permuted(&perm).unwrap();
        prop_assert_eq!(canonical_code(&g).unwrap(), canonical_code(&h).unwrap());
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn classes_partition_the_vertices(g in graph(14)) {
        let d = decompose(&g).unwrap();
        let mut covered = 0u64;
        for class in &d.classes {
            prop_assert_eq!(covered & class.vertices.0, 0);
            covered |= class.vertices.0;
            let members = class.vertices.to_vec();
            for &x in &members {
                for &y in &members {
                    prop_assert!(similar(&g, x, y).unwrap());
                    if x != y {
                        prop_assert_eq!(g.has_edge(x, y), class.kind == ClassKind::Complete);
                    }
                }
            }
        }
        prop_assert_eq!(covered, (1u64 << g.n()) - 1);
        prop_assert_eq!(d.graph_type.n(), g.n());
    }

    #[test]
    fn quotient_deconstruct_round_trip(g in graph(12)) {
        let q = quotient(&g).unwrap();
        prop_assert!(distinct_neighborhoods(&q));
        prop_assert_eq!(q.total_weight(), g.n());
        let back = deconstruct(&q).unwrap();
        prop_assert_eq!(canonical_code(&back).unwrap(), canonical_code(&g).unwrap());
    }

    #[test]
    fn brick_graphs_survive_blow_up(w in criteria_graph(6)) {
        prop_assume!(check_brick_conditions(&w));
        let back = quotient(&deconstruct(&w).unwrap()).unwrap();
        prop_assert_eq!(weighted_canonical_code(&back).unwrap(), weighted_canonical_code(&w).unwrap());
    }

    #[test]
    fn weighted_code_ignores_labels(w in weighted(7), seed in any::<u64>()) {
        let k = w.k();
        let mut perm: Vec<usize> = (0..k).collect();
        let mut s = seed;
        for i in (1..k).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = w.permuted(&perm).unwrap();
        prop_assert_eq!(weighted_canonical_code(&w).unwrap(), weighted_canonical_code(&h).unwrap());
    }

    #[test]
    fn string_matrices_have_distinct_rows(bits in proptest::collection::vec(any::<bool>(), 1..=16)) {
        let m = string_to_matrix(&bits).unwrap();
        prop_assert!(m.has_distinct_rows());
        for i in 0..bits.len() {
            prop_assert_eq!(m.get(i, i), !bits[i]);
        }
    }
}
