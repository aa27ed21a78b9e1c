//! Closed-form families of admissible diagrams for the irreducible types,
//! and the check of those families against the axiom enumerator.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::admissible::{enumerate_admissible, expand_under_automorphisms, sort_sets};
use crate::coxeter::{canonical_automorphism, CoxeterGraph, GraphAutomorphism, IrreducibleType, NodeSet, RootSystem};
use crate::error::{Error, Result};

/// Conjugacy class of the companion automorphism `π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PiClass {
    Identity,
    Order2,
    Order3,
}

impl PiClass {
    pub fn order(self) -> usize {
        match self {
            PiClass::Identity => 1,
            PiClass::Order2 => 2,
            PiClass::Order3 => 3,
        }
    }
}

impl fmt::Display for PiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PiClass::Identity => "id",
            PiClass::Order2 => "op2",
            PiClass::Order3 => "tri3",
        })
    }
}

impl FromStr for PiClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "id" | "identity" => Ok(PiClass::Identity),
            "op2" | "order2" | "duality" | "swap" => Ok(PiClass::Order2),
            "tri3" | "order3" | "triality" => Ok(PiClass::Order3),
            _ => Err(Error::Parse(format!("unknown automorphism class {s:?}"))),
        }
    }
}

/// The automorphism representing a class: the one of that order with the
/// smallest image vector.
pub fn class_representative(graph: &CoxeterGraph, class: PiClass) -> Result<GraphAutomorphism> {
    canonical_automorphism(graph, class.order())
        .ok_or_else(|| Error::UnknownFamily(format!("{} has no graph automorphism of class {class}", graph.display_name())))
}

fn range(a: u32, b: u32) -> Vec<u32> {
    (a..=b).collect()
}

fn evens(upto: u32) -> Vec<u32> {
    (1..=upto / 2).map(|k| 2 * k).collect()
}

/// The families exactly as printed (one representative per `Aut(Γ)`-orbit
/// where the printed tables omit mirror images), as label lists.
pub fn table_families(t: IrreducibleType, class: PiClass) -> Result<Vec<Vec<u32>>> {
    let n = t.rank() as u32;
    let unknown = || Err(Error::UnknownFamily(format!("{} with {class}", t.name())));
    let mut out: Vec<Vec<u32>> = match (t, class) {
        (IrreducibleType::A(_), PiClass::Identity) => (0..=n.div_ceil(2))
            .map(|i| {
                let mut s: Vec<u32> = (1..=i).flat_map(|j| [j, n + 1 - j]).collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect(),
        (IrreducibleType::A(_), PiClass::Order2) if n >= 2 => {
            let mut v = vec![range(1, n)];
            if n % 2 == 1 {
                v.push(evens(n - 1));
            }
            v
        }
        (IrreducibleType::B(_), PiClass::Identity) => {
            let mut v: Vec<Vec<u32>> = (0..=n).map(|i| range(1, i)).collect();
            v.extend((1..=n / 2).map(|i| evens(2 * i)));
            v
        }
        (IrreducibleType::D(_), PiClass::Identity) => {
            let top = n / 2 - 1;
            let mut v: Vec<Vec<u32>> = (0..=top).map(|i| range(1, 2 * i)).collect();
            v.extend((1..=top).map(|i| evens(2 * i)));
            if n % 2 == 0 {
                let mut s = evens(n - 2);
                s.push(n);
                v.push(s);
            } else {
                let mut s = evens(n - 3);
                s.extend([n - 1, n]);
                v.push(s);
            }
            v.push(range(1, n));
            v
        }
        (IrreducibleType::D(_), PiClass::Order2) => {
            // odd blocks {1..2i+1} that stop short of the fork
            let mut v: Vec<Vec<u32>> = (0..)
                .map(|i| range(1, 2 * i + 1))
                .take_while(|s| s.len() as u32 <= n - 2)
                .collect();
            v.push(range(1, n));
            v
        }
        (IrreducibleType::D(4), PiClass::Order3) => vec![vec![1, 3, 4], range(1, 4)],
        (IrreducibleType::E(6), PiClass::Identity) => vec![vec![], vec![2], vec![1, 2, 6], range(1, 6)],
        (IrreducibleType::E(6), PiClass::Order2) => vec![vec![1, 6], range(1, 6)],
        (IrreducibleType::E(7), PiClass::Identity) => {
            vec![vec![], vec![1], vec![1, 6], vec![1, 6, 7], vec![1, 3, 4, 6], range(1, 7)]
        }
        (IrreducibleType::E(8), PiClass::Identity) => {
            vec![vec![], vec![8], vec![1, 8], vec![1, 6, 7, 8], range(1, 8)]
        }
        (IrreducibleType::F4, PiClass::Identity) => vec![vec![], vec![1], vec![1, 4], range(1, 4)],
        (IrreducibleType::F4, PiClass::Order2) => vec![range(1, 4)],
        (IrreducibleType::I2(m), PiClass::Identity) => {
            if m % 2 == 0 {
                vec![vec![], vec![1], vec![1, 2]]
            } else {
                vec![vec![], vec![1, 2]]
            }
        }
        (IrreducibleType::I2(_), PiClass::Order2) => vec![vec![1, 2]],
        (IrreducibleType::H(3), PiClass::Identity) => vec![vec![], vec![2], range(1, 3)],
        (IrreducibleType::H(4), PiClass::Identity) => vec![vec![], vec![1], range(1, 4)],
        _ => return unknown(),
    };
    out.sort_by_key(|s| (s.len(), s.clone()));
    out.dedup();
    Ok(out)
}

/// [`table_families`] as node sets, closed under the automorphisms of `Γ`
/// commuting with the class representative.
pub fn expanded_families(t: IrreducibleType, class: PiClass) -> Result<Vec<NodeSet>> {
    let graph = t.graph();
    let pi = class_representative(&graph, class)?;
    let sets = table_families(t, class)?
        .iter()
        .map(|l| graph.node_set(l))
        .collect::<Result<Vec<_>>>()?;
    let mut out = expand_under_automorphisms(&graph, &pi, &sets);
    sort_sets(&graph, &mut out);
    Ok(out)
}

/// One line of the table check.
#[derive(Debug, Clone, Serialize)]
pub struct TableCheck {
    pub type_name: String,
    pub class: PiClass,
    pub pi: String,
    pub expected: Vec<Vec<u32>>,
    pub enumerated: Vec<Vec<u32>>,
    pub pass: bool,
}

impl TableCheck {
    pub fn count(&self) -> usize {
        self.enumerated.len()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub max_rank: usize,
    pub checks: Vec<TableCheck>,
}

impl TableReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn find(&self, type_name: &str, class: PiClass) -> Option<&TableCheck> {
        self.checks.iter().find(|c| c.type_name == type_name && c.class == class)
    }
}

/// Every (type, class) pair checked by [`verify_tables`]: the classical
/// families up to `max_rank`, plus every exceptional type and `I₂(3..=8)`.
pub fn table_cases(max_rank: usize) -> Vec<(IrreducibleType, PiClass)> {
    use IrreducibleType::*;
    use PiClass::*;
    let mut v = Vec::new();
    for n in 1..=max_rank {
        v.push((A(n), Identity));
        if n >= 2 {
            v.push((A(n), Order2));
        }
    }
    v.extend((2..=max_rank).map(|n| (B(n), Identity)));
    for n in 4..=max_rank {
        v.push((D(n), Identity));
        v.push((D(n), Order2));
    }
    v.push((D(4), Order3));
    v.extend([(E(6), Identity), (E(6), Order2), (E(7), Identity), (E(8), Identity)]);
    v.extend([(F4, Identity), (F4, Order2), (H(3), Identity), (H(4), Identity)]);
    for m in 3..=8 {
        v.push((I2(m), Identity));
        v.push((I2(m), Order2));
    }
    v
}

pub fn check_case(t: IrreducibleType, class: PiClass) -> Result<TableCheck> {
    let graph = t.graph();
    let pi = class_representative(&graph, class)?;
    let rs = RootSystem::new(&graph)?;
    let enumerated = enumerate_admissible(&rs, &pi);
    let expected = expanded_families(t, class)?;
    let labels = |v: &[NodeSet]| v.iter().map(|s| graph.set_labels(*s)).collect::<Vec<_>>();
    Ok(TableCheck {
        type_name: t.name(),
        class,
        pi: pi.cycle_notation(&graph),
        pass: enumerated == expected,
        expected: labels(&expected),
        enumerated: labels(&enumerated),
    })
}

/// Set equality between the enumerator and the expanded closed forms.
pub fn verify_tables(max_rank: usize) -> Result<TableReport> {
    if max_rank > 8 {
        return Err(Error::Capacity(format!("max rank {max_rank} exceeds 8")));
    }
    let checks = table_cases(max_rank)
        .into_iter()
        .map(|(t, c)| check_case(t, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(TableReport { max_rank, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_families() {
        assert_eq!(
            table_families(IrreducibleType::B(5), PiClass::Identity).unwrap(),
            vec![
                vec![],
                vec![1],
                vec![2],
                vec![1, 2],
                vec![2, 4],
                vec![1, 2, 3],
                vec![1, 2, 3, 4],
                vec![1, 2, 3, 4, 5]
            ]
        );
        assert_eq!(
            table_families(IrreducibleType::A(5), PiClass::Order2).unwrap(),
            vec![vec![2, 4], vec![1, 2, 3, 4, 5]]
        );
        assert!(matches!(
            table_families(IrreducibleType::B(3), PiClass::Order2),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn f4_expansion_adds_mirror() {
        let graph = IrreducibleType::F4.graph();
        let got: Vec<Vec<u32>> = expanded_families(IrreducibleType::F4, PiClass::Identity)
            .unwrap()
            .iter()
            .map(|s| graph.set_labels(*s))
            .collect();
        assert_eq!(got, vec![vec![], vec![1], vec![4], vec![1, 4], vec![1, 2, 3, 4]]);
    }

    #[test]
    fn small_cases_agree() {
        for (t, c) in table_cases(4) {
            let check = check_case(t, c).unwrap();
            assert!(check.pass, "{} {}: {:?} vs {:?}", check.type_name, c, check.enumerated, check.expected);
        }
    }
}
