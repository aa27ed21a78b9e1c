//! Exact Coxeter-system computations: root systems, lengths, longest
//! elements of parabolic subgroups, opposition involutions and double cosets.
//!
//! Reducible graphs need no special handling: the root list of a product is
//! the disjoint union of the component root lists, so `w₀` of a product is
//! the product of the component longest elements.

pub mod graph;
pub mod roots;
pub mod weyl;

pub use graph::{
    canonical_automorphism, graph_automorphisms, parse_type_string, CoxeterGraph, GraphAutomorphism,
    IrreducibleType, NodeSet,
};
pub use roots::RootSystem;
pub use weyl::{
    double_coset_contains, double_coset_contains_enumerated, in_parabolic, longest_element,
    minimal_double_coset_rep, opposition_involution, parabolic_elements, WeylElement, WeylGroup,
};

use crate::error::Result;

/// Parses either a compact type string (`E7`, `I2(5)`, `A2xA1xA2`) or the
/// line-based graph format, and checks that the system is spherical.
pub fn parse_coxeter_graph(spec: &str) -> Result<CoxeterGraph> {
    let graph = if spec.contains("node") {
        CoxeterGraph::parse_graph_format(spec)?
    } else {
        parse_type_string(spec)?
    };
    RootSystem::new(&graph)?;
    Ok(graph)
}

/// `|Φ⁺(W_J)|`, the length of `w_J`.
pub fn positive_root_count(rs: &RootSystem, j: NodeSet) -> usize {
    rs.parabolic_positive_count(j)
}

pub fn weyl_product(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    a.mul(b)
}

pub fn weyl_inverse(a: &WeylElement) -> WeylElement {
    a.inverse()
}

/// `w₀ ∈ W_L · w · W_R`.
pub fn double_coset_contains_w0(rs: &RootSystem, left: NodeSet, right: NodeSet, w: &WeylElement) -> bool {
    weyl::double_coset_contains_w0(rs, left, right, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn sys(t: &str) -> RootSystem {
        RootSystem::new(&parse_type_string(t).unwrap()).unwrap()
    }

    #[test]
    fn longest_elements() {
        let a1 = sys("A1");
        let w = longest_element(&a1, NodeSet::full(1));
        assert_eq!(w, WeylElement::simple_reflection(&a1, 0));
        assert_eq!(w.length(), 1);

        for (t, len) in [("A3", 6), ("B3", 9), ("H3", 15), ("E7", 63)] {
            let rs = sys(t);
            let w0 = longest_element(&rs, NodeSet::full(rs.rank()));
            assert_eq!(w0.length(), len, "{t}");
            assert!(w0.mul(&w0).unwrap().is_identity(), "{t}");
        }
    }

    #[test]
    fn opposition_involutions() {
        let check = |t: &str, expect: &str| {
            let g = parse_type_string(t).unwrap();
            let rs = RootSystem::new(&g).unwrap();
            let inv = opposition_involution(&rs, g.all());
            assert_eq!(inv.cycle_notation(&g), expect, "{t}");
        };
        check("A3", "(1,3)");
        check("E7", "id");
        check("D5", "(4,5)");
        check("D4", "id");
        check("E6", "(1,6)(3,5)");
        check("I2(5)", "(1,2)");
        check("I2(6)", "id");
        check("H4", "id");
    }

    #[test]
    fn products_and_inverses() {
        let rs = sys("A2");
        let w0 = longest_element(&rs, NodeSet::full(2));
        assert!(weyl_product(&w0, &w0).unwrap().is_identity());
        let s = WeylElement::simple_reflection(&rs, 0);
        assert_eq!(weyl_inverse(&s), s);
        assert_eq!(WeylElement::from_word(&rs, &[0, 1, 0]).length(), 3);
        assert_eq!(WeylElement::from_word(&rs, &[0, 1, 0]), w0);

        let other = sys("A3");
        assert_eq!(
            weyl_product(&s, &WeylElement::identity(&other)).unwrap_err(),
            Error::MismatchedSystems
        );
    }

    #[test]
    fn double_cosets() {
        let g = parse_type_string("A2").unwrap();
        let rs = RootSystem::new(&g).unwrap();
        let w0 = longest_element(&rs, g.all());
        assert!(double_coset_contains_w0(&rs, NodeSet::EMPTY, NodeSet::EMPTY, &w0));
        let s1 = WeylElement::simple_reflection(&rs, 0);
        let s2 = WeylElement::simple_reflection(&rs, 1);
        assert!(!double_coset_contains_w0(&rs, NodeSet::EMPTY, NodeSet::EMPTY, &s1));
        let s2s1 = s2.mul(&s1).unwrap();
        let (l, r) = (g.node_set(&[1]).unwrap(), g.node_set(&[2]).unwrap());
        assert!(double_coset_contains_w0(&rs, l, r, &s2s1));
        // brute force over all six elements of W(A2)
        let all = parabolic_elements(&rs, g.all(), 100).unwrap();
        assert_eq!(all.len(), 6);
        let brute = all.iter().any(|x| {
            [WeylElement::identity(&rs), s1.clone()].iter().any(|a| {
                [WeylElement::identity(&rs), s2.clone()]
                    .iter()
                    .any(|b| a.mul(&s2s1).unwrap().mul(b).unwrap() == w0 && x.is_identity())
            })
        });
        assert!(brute);
    }

    #[test]
    fn parse_entry_point() {
        assert_eq!(parse_coxeter_graph("E7").unwrap().rank(), 7);
        let g = parse_coxeter_graph("node 1\nnode 2\nbond 1 2 5 # H2\n").unwrap();
        assert_eq!(g.m(0, 1), 5);
        let affine = "node 1\nnode 2\nnode 3\nbond 1 2 3\nbond 2 3 3\nbond 1 3 3\n";
        assert!(matches!(parse_coxeter_graph(affine), Err(Error::NonSpherical(_))));
    }
}
