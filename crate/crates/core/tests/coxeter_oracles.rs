//! Weyl group facts checked against a Cayley-graph search over real
//! reflection matrices, plus sampled algebraic properties.

use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;

use proptest::prelude::*;

use opposition::coxeter::{
    double_coset_contains_w0, longest_element, opposition_involution, positive_root_count, CoxeterGraph,
    IrreducibleType, NodeSet, RootSystem, WeylElement, WeylGroup,
};

type Mat = Vec<Vec<f64>>;

fn reflections(graph: &CoxeterGraph) -> Vec<Mat> {
    let n = graph.rank();
    let b = |i: usize, j: usize| -> f64 {
        if i == j {
            1.0
        } else {
            -(PI / graph.m(i, j) as f64).cos()
        }
    };
    (0..n)
        .map(|i| {
            let mut m = vec![vec![0.0; n]; n];
            for j in 0..n {
                // σ_i(α_j) = α_j − 2B(α_i, α_j)α_i, column j
                m[j][j] += 1.0;
                m[i][j] -= 2.0 * b(i, j);
            }
            m
        })
        .collect()
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn key(m: &Mat) -> Vec<i64> {
    m.iter().flatten().map(|x| (x * 1e6).round() as i64).collect()
}

/// Group order, maximal BFS depth and the deepest element.
fn cayley(graph: &CoxeterGraph) -> (usize, usize, Mat) {
    let gens = reflections(graph);
    let n = graph.rank();
    let id: Mat = (0..n).map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect()).collect();
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::from([(key(&id), 0)]);
    let mut queue = VecDeque::from([(id.clone(), 0usize)]);
    let mut deepest = (0, id);
    while let Some((m, d)) = queue.pop_front() {
        if d > deepest.0 {
            deepest = (d, m.clone());
        }
        for s in &gens {
            let next = mul(&m, s);
            let k = key(&next);
            if !seen.contains_key(&k) {
                seen.insert(k, d + 1);
                queue.push_back((next, d + 1));
            }
        }
    }
    (seen.len(), deepest.0, deepest.1)
}

fn small_types() -> Vec<IrreducibleType> {
    use IrreducibleType::*;
    vec![A(1), A(2), A(3), A(4), A(5), B(2), B(3), B(4), D(4), F4, H(3), H(4), I2(5), I2(6), I2(8)]
}

#[test]
fn longest_element_is_the_deepest_cayley_vertex() {
    for t in small_types() {
        let graph = t.graph();
        let rs = RootSystem::new(&graph).unwrap();
        let (order, depth, _) = cayley(&graph);
        let all = graph.all();
        assert_eq!(longest_element(&rs, all).length(), depth, "{}", t.name());
        assert_eq!(positive_root_count(&rs, all), depth, "{}", t.name());
        assert_eq!(WeylGroup::new(&rs, 1_000_000).unwrap().len(), order, "{}", t.name());
    }
}

#[test]
fn opposition_involution_from_matrices() {
    for t in small_types() {
        let graph = t.graph();
        let rs = RootSystem::new(&graph).unwrap();
        let (_, _, w0) = cayley(&graph);
        let gens = reflections(&graph);
        let keys: Vec<Vec<i64>> = gens.iter().map(key).collect();
        let opp = opposition_involution(&rs, graph.all());
        for (i, s) in gens.iter().enumerate() {
            let conj = key(&mul(&mul(&w0, s), &w0));
            let j = keys.iter().position(|k| *k == conj).expect("w₀ s w₀ is simple");
            assert_eq!(opp.apply(i), j, "{} node {}", t.name(), graph.label(i));
        }
    }
}

#[test]
fn opposition_involution_classical_table() {
    use IrreducibleType::*;
    let mut types: Vec<IrreducibleType> = (1..=8).map(A).collect();
    types.extend((2..=8).map(B));
    types.extend((4..=8).map(D));
    types.extend([E(6), E(7), E(8), F4, H(3), H(4)]);
    types.extend((3..=12).map(I2));
    for t in types {
        let graph = t.graph();
        let rs = RootSystem::new(&graph).unwrap();
        let nontrivial = matches!(t, A(n) if n >= 2)
            || matches!(t, D(n) if n % 2 == 1)
            || t == E(6)
            || matches!(t, I2(m) if m % 2 == 1);
        let opp = opposition_involution(&rs, graph.all());
        assert_eq!(!opp.is_identity(), nontrivial, "{}", t.name());
        for bits in 0..1u64 << graph.rank() {
            let j = NodeSet(bits);
            let o = opposition_involution(&rs, j);
            assert!(o.compose(&o).unwrap().is_identity(), "{} {bits:b}", t.name());
        }
    }
}

fn sample_types() -> Vec<IrreducibleType> {
    use IrreducibleType::*;
    vec![A(4), B(3), D(5), E(6), F4, H(3), I2(7), A(2)]
}

fn element(rs: &RootSystem, word: &[usize]) -> WeylElement {
    let r = rs.rank();
    WeylElement::from_word(rs, &word.iter().map(|s| s % r).collect::<Vec<_>>())
}

proptest! {
    #[test]
    fn length_changes_by_one(t in 0usize..8, word in prop::collection::vec(0usize..8, 0..30), s in 0usize..8) {
        let rs = RootSystem::new(&sample_types()[t].graph()).unwrap();
        let w = element(&rs, &word);
        let s = s % rs.rank();
        let ws = w.mul_simple(&rs, s);
        prop_assert_eq!(ws.length().abs_diff(w.length()), 1);
    }

    #[test]
    fn w0_double_coset_is_invariant(
        t in 0usize..8,
        word in prop::collection::vec(0usize..8, 0..30),
        left in 0u64..256,
        right in 0u64..256,
        xw in prop::collection::vec(0usize..8, 0..10),
        yw in prop::collection::vec(0usize..8, 0..10),
    ) {
        let rs = RootSystem::new(&sample_types()[t].graph()).unwrap();
        let all = rs.graph().all();
        let (l, r) = (NodeSet(left).intersection(all), NodeSet(right).intersection(all));
        let within = |set: NodeSet, w: &[usize]| {
            let gens: Vec<usize> = set.iter().collect();
            if gens.is_empty() {
                return Vec::new();
            }
            w.iter().map(|i| gens[i % gens.len()]).collect::<Vec<_>>()
        };
        let w = element(&rs, &word);
        let x = WeylElement::from_word(&rs, &within(l, &xw));
        let y = WeylElement::from_word(&rs, &within(r, &yw));
        let moved = x.mul(&w).unwrap().mul(&y).unwrap();
        prop_assert_eq!(double_coset_contains_w0(&rs, l, r, &w), double_coset_contains_w0(&rs, l, r, &moved));
    }
}
