//! Structural properties of admissible diagrams.

use proptest::prelude::*;

use opposition::coxeter::{
    graph_automorphisms, longest_element, opposition_involution, CoxeterGraph, GraphAutomorphism, IrreducibleType,
    NodeSet, RootSystem,
};
use opposition::diagrams::{displacement, enumerate_admissible, residue_automorphism, Admissibility, StablePartition};

fn irreducibles(max_rank: usize) -> Vec<IrreducibleType> {
    use IrreducibleType::*;
    let mut v: Vec<IrreducibleType> = (1..=max_rank).map(A).collect();
    v.extend((2..=max_rank).map(B));
    v.extend((4..=max_rank).map(D));
    v.extend([E(6), E(7), F4, H(3), H(4), I2(5), I2(6), I2(8)]);
    v.retain(|t| t.rank() <= max_rank);
    v
}

/// The graph on `keep` as a standalone graph, and the index translation.
fn induced(graph: &CoxeterGraph, keep: NodeSet) -> (CoxeterGraph, Vec<usize>) {
    let nodes: Vec<usize> = keep.iter().collect();
    let labels = nodes.iter().map(|&i| graph.label(i)).collect();
    let bonds: Vec<(u32, u32, u32)> = graph
        .bonds()
        .filter(|&(i, j, _)| keep.contains(i) && keep.contains(j))
        .map(|(i, j, m)| (graph.label(i), graph.label(j), m))
        .collect();
    (CoxeterGraph::new(labels, &bonds).unwrap(), nodes)
}

fn translate(sub: &CoxeterGraph, nodes: &[usize], auto: &GraphAutomorphism) -> GraphAutomorphism {
    let map = nodes.iter().map(|&i| nodes.iter().position(|&k| k == auto.apply(i)).unwrap()).collect();
    GraphAutomorphism::from_map(sub, sub.all(), map).unwrap()
}

fn translate_set(nodes: &[usize], set: NodeSet) -> NodeSet {
    NodeSet::from_indices(nodes.iter().enumerate().filter(|(_, &i)| set.contains(i)).map(|(k, _)| k))
}

#[test]
fn downward_closure() {
    for t in irreducibles(6) {
        let graph = t.graph();
        let rs = RootSystem::new(&graph).unwrap();
        for pi in graph_automorphisms(&graph) {
            let twist = opposition_involution(&rs, graph.all()).compose(&pi).unwrap();
            for j in enumerate_admissible(&rs, &pi) {
                for k in StablePartition::new(j, &twist).unwrap().nonempty_unions() {
                    let rest = graph.all().difference(k);
                    if rest.is_empty() {
                        continue;
                    }
                    let (sub, nodes) = induced(&graph, rest);
                    let sub_rs = RootSystem::new(&sub).unwrap();
                    let pi_k = translate(&sub, &nodes, &residue_automorphism(&rs, k, &pi).unwrap());
                    let j_k = translate_set(&nodes, j.difference(k));
                    assert!(
                        Admissibility::new(&sub_rs).check(j_k, &pi_k),
                        "{} J={:?} K={:?}",
                        t.name(),
                        graph.set_labels(j),
                        graph.set_labels(k)
                    );
                }
            }
        }
    }
}

#[test]
fn product_law() {
    let types = irreducibles(5);
    for (a, ta) in types.iter().enumerate() {
        for tb in &types[a..] {
            if ta.rank() + tb.rank() > 6 {
                continue;
            }
            let (ga, gb) = (ta.graph(), tb.graph());
            let product = ga.product(&gb);
            let (ra, rb, rp) =
                (RootSystem::new(&ga).unwrap(), RootSystem::new(&gb).unwrap(), RootSystem::new(&product).unwrap());
            let offset = ga.rank();
            for pa in graph_automorphisms(&ga) {
                for pb in graph_automorphisms(&gb) {
                    let map: Vec<usize> = pa.map().iter().copied().chain(pb.map().iter().map(|&i| i + offset)).collect();
                    let pp = GraphAutomorphism::from_map(&product, product.all(), map).unwrap();
                    for ja in 0..1u64 << ga.rank() {
                        for jb in 0..1u64 << gb.rank() {
                            let joint = Admissibility::new(&rp).check(NodeSet(ja | jb << offset), &pp);
                            let split = Admissibility::new(&ra).check(NodeSet(ja), &pa)
                                && Admissibility::new(&rb).check(NodeSet(jb), &pb);
                            assert_eq!(joint, split, "{}x{} {ja:b} {jb:b}", ta.name(), tb.name());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn enumerated_sets_are_stable() {
    for t in irreducibles(8) {
        let graph = t.graph();
        let rs = RootSystem::new(&graph).unwrap();
        let opp = opposition_involution(&rs, graph.all());
        for pi in graph_automorphisms(&graph) {
            let twist = opp.compose(&pi).unwrap();
            let blocks = StablePartition::new(graph.all(), &twist).unwrap().blocks;
            for j in enumerate_admissible(&rs, &pi) {
                assert!(blocks.iter().all(|&b| b.is_subset(j) || b.intersection(j).is_empty()));
                assert_eq!(opp.apply_set(j), j, "{} {:?}", t.name(), graph.set_labels(j));
                assert_eq!(pi.apply_set(j), j, "{} {:?}", t.name(), graph.set_labels(j));
            }
        }
    }
}

fn graph_pool() -> Vec<CoxeterGraph> {
    let mut v: Vec<CoxeterGraph> = irreducibles(7).into_iter().map(IrreducibleType::graph).collect();
    use IrreducibleType::*;
    v.push(A(2).graph().product(&A(2).graph()));
    v.push(A(3).graph().product(&B(2).graph()).product(&A(1).graph()));
    v.push(D(4).graph().product(&A(3).graph()));
    v.push(E(6).graph().product(&A(1).graph()));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn memo_agrees_with_plain_recursion(g in 0usize..64, auto in 0usize..1000, bits in any::<u64>()) {
        let pool = graph_pool();
        let graph = &pool[g % pool.len()];
        let rs = RootSystem::new(graph).unwrap();
        let autos = graph_automorphisms(graph);
        let pi = &autos[auto % autos.len()];
        let j = NodeSet(bits).intersection(graph.all());
        prop_assert_eq!(Admissibility::new(&rs).check(j, pi), Admissibility::without_memo(&rs).check(j, pi));
    }
}

proptest! {
    #[test]
    fn displacement_is_monotone(g in 0usize..64, a in any::<u64>(), b in any::<u64>()) {
        let pool = graph_pool();
        let graph = &pool[g % pool.len()];
        let rs = RootSystem::new(graph).unwrap();
        let small = NodeSet(a & b).intersection(graph.all());
        let large = NodeSet(a).intersection(graph.all());
        prop_assert!(displacement(&rs, small) <= displacement(&rs, large));
        let full = longest_element(&rs, graph.all()).length();
        prop_assert_eq!(displacement(&rs, graph.all()), full);
    }
}
