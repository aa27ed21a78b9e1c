//! Finite root systems realised in the simple-root basis.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::hash::{Hash, Hasher};

use super::graph::{CoxeterGraph, NodeSet};
use crate::error::{Error, Result};

/// Hard cap on the number of roots generated before a graph is declared
/// non-spherical.
pub const ROOT_CAP: usize = 10_000;

const KEY_SCALE: f64 = 1e6;
const EPS: f64 = 1e-9;

/// The root list of a spherical Coxeter system.
///
/// Positive roots occupy indices `0..N` (simple roots first, in node order);
/// index `N + i` holds `-root[i]`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    graph: CoxeterGraph,
    coords: Vec<Vec<f64>>,
    positive: usize,
    /// `action[s][i]` = index of `s·root_i`.
    action: Vec<Vec<u16>>,
    id: u64,
}

/// Cartan-type coefficients `a[s][t]` with `s(α_t) = α_t − a[s][t]·α_s`.
/// Integral for crystallographic bonds, `2cos(π/m)` otherwise.
fn cartan(graph: &CoxeterGraph) -> Vec<Vec<f64>> {
    let n = graph.rank();
    let mut a = vec![vec![0.0; n]; n];
    for (s, row) in a.iter_mut().enumerate() {
        row[s] = 2.0;
    }
    for (s, t, m) in graph.bonds() {
        let (x, y) = match m {
            3 => (-1.0, -1.0),
            4 => (-1.0, -2.0),
            6 => (-1.0, -3.0),
            _ => {
                let c = -2.0 * (PI / m as f64).cos();
                (c, c)
            }
        };
        a[s][t] = x;
        a[t][s] = y;
    }
    a
}

fn key(v: &[f64]) -> Vec<i64> {
    v.iter().map(|x| (x * KEY_SCALE).round() as i64).collect()
}

impl RootSystem {
    /// Closes the simple roots under all simple reflections.
    pub fn new(graph: &CoxeterGraph) -> Result<Self> {
        let n = graph.rank();
        let a = cartan(graph);
        let reflect = |s: usize, v: &[f64]| -> Vec<f64> {
            let c: f64 = (0..n).map(|t| v[t] * a[s][t]).sum();
            let mut w = v.to_vec();
            w[s] -= c;
            w
        };

        let mut pos: Vec<Vec<f64>> = (0..n)
            .map(|s| {
                let mut v = vec![0.0; n];
                v[s] = 1.0;
                v
            })
            .collect();
        let mut index: HashMap<Vec<i64>, usize> = pos.iter().enumerate().map(|(i, v)| (key(v), i)).collect();
        let mut head = 0;
        while head < pos.len() {
            for s in 0..n {
                let w = reflect(s, &pos[head]);
                if w.iter().all(|x| *x > -EPS) && !index.contains_key(&key(&w)) {
                    index.insert(key(&w), pos.len());
                    pos.push(w);
                    if 2 * pos.len() > ROOT_CAP {
                        return Err(Error::NonSpherical(ROOT_CAP));
                    }
                }
            }
            head += 1;
        }

        let np = pos.len();
        let mut coords = pos.clone();
        coords.extend(pos.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
        let all_index: HashMap<Vec<i64>, usize> =
            coords.iter().enumerate().map(|(i, v)| (key(v), i)).collect();
        let mut action = vec![vec![0u16; 2 * np]; n];
        for (s, row) in action.iter_mut().enumerate() {
            for (i, slot) in row.iter_mut().enumerate() {
                let w = reflect(s, &coords[i]);
                *slot = *all_index
                    .get(&key(&w))
                    .ok_or(Error::NonSpherical(ROOT_CAP))? as u16;
            }
        }

        let mut h = DefaultHasher::new();
        graph.rank().hash(&mut h);
        for b in graph.bonds() {
            b.hash(&mut h);
        }
        Ok(RootSystem { graph: graph.clone(), coords, positive: np, action, id: h.finish() })
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    /// Number of positive roots, which equals the length of the longest element.
    pub fn positive_count(&self) -> usize {
        self.positive
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self, i: usize) -> &[f64] {
        &self.coords[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.positive
    }

    pub fn negate(&self, i: usize) -> usize {
        if i < self.positive {
            i + self.positive
        } else {
            i - self.positive
        }
    }

    /// Index of `s·root_i` for the simple reflection at node index `s`.
    pub fn reflect(&self, s: usize, i: usize) -> usize {
        self.action[s][i] as usize
    }

    pub(crate) fn id(&self) -> u64 {
        self.id
    }

    /// `|Φ⁺(W_J)|` by reflection closure of the simple roots of `J` under `J`.
    pub fn parabolic_positive_count(&self, j: NodeSet) -> usize {
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = j.iter().collect();
        for &s in &stack {
            seen[s] = true;
        }
        let mut count = 0;
        while let Some(r) = stack.pop() {
            count += 1;
            for s in j.iter() {
                let t = self.reflect(s, r);
                if self.is_positive(t) && !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        count
    }
}
