//! Independent reference implementations used as test oracles. Nothing here
//! calls into the library's linear algebra, orbit or balance code.
#![allow(dead_code)]

pub mod tables;

use std::collections::HashMap;

use einet::{EiNetwork, NodeType};
use itertools::Itertools;
use petgraph::unionfind::UnionFind;

/// Plain description of a network: node types as `Some(is_excitatory)` or `None`
/// for a single node type, and row-major matrices where `m[i][j]` counts `j -> i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Raw {
    pub types: Option<Vec<bool>>,
    pub e: Vec<Vec<u32>>,
    pub i: Vec<Vec<u32>>,
}

impl Raw {
    pub fn of(g: &EiNetwork) -> Raw {
        let types = (!g.is_single_type()).then(|| {
            g.node_types()
                .iter()
                .map(|t| *t == NodeType::Excitatory)
                .collect()
        });
        Raw {
            types,
            e: g.exc().rows(),
            i: g.inh().rows(),
        }
    }

    pub fn to_network(&self) -> EiNetwork {
        let types: Option<String> = self
            .types
            .as_ref()
            .map(|ts| ts.iter().map(|&t| if t { 'E' } else { 'I' }).collect());
        EiNetwork::from_rows(types.as_deref(), self.e.clone(), self.i.clone()).unwrap()
    }

    pub fn n(&self) -> usize {
        self.e.len()
    }

    /// Node `k` moves to position `p[k]`.
    pub fn permuted(&self, p: &[usize]) -> Raw {
        let n = self.n();
        let mut e = vec![vec![0; n]; n];
        let mut i = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                e[p[a]][p[b]] = self.e[a][b];
                i[p[a]][p[b]] = self.i[a][b];
            }
        }
        let types = self.types.as_ref().map(|ts| {
            let mut out = vec![false; n];
            for a in 0..n {
                out[p[a]] = ts[a];
            }
            out
        });
        Raw { types, e, i }
    }

    pub fn dual(&self) -> Raw {
        Raw {
            types: self
                .types
                .as_ref()
                .map(|ts| ts.iter().map(|t| !t).collect()),
            e: self.i.clone(),
            i: self.e.clone(),
        }
    }

    pub fn relabelled(&self) -> Raw {
        Raw {
            types: self
                .types
                .as_ref()
                .map(|ts| ts.iter().map(|t| !t).collect()),
            ..self.clone()
        }
    }

    /// Adjacency family flattened to integer vectors.
    pub fn family(&self) -> Vec<Vec<i128>> {
        let n = self.n();
        let flat = |m: &Vec<Vec<u32>>| m.iter().flatten().map(|&x| x as i128).collect::<Vec<_>>();
        let diag = |pick: &dyn Fn(usize) -> bool| {
            let mut v = vec![0i128; n * n];
            for k in 0..n {
                if pick(k) {
                    v[k * n + k] = 1;
                }
            }
            v
        };
        let mut out = match &self.types {
            Some(ts) => vec![diag(&|k| ts[k]), diag(&|k| !ts[k])],
            None => vec![diag(&|_| true)],
        };
        out.push(flat(&self.e));
        out.push(flat(&self.i));
        out
    }

    pub fn connected(&self) -> bool {
        let n = self.n();
        let mut uf = UnionFind::<usize>::new(n);
        for a in 0..n {
            for b in 0..n {
                if self.e[a][b] + self.i[a][b] > 0 {
                    uf.union(a, b);
                }
            }
        }
        (0..n).all(|k| uf.equiv(0, k))
    }

    pub fn max_valence(&self) -> u32 {
        (0..self.n())
            .map(|a| self.e[a].iter().sum::<u32>() + self.i[a].iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn emits(&self, j: usize, exc: bool) -> bool {
        let m = if exc { &self.e } else { &self.i };
        (0..self.n()).any(|a| m[a][j] > 0)
    }

    /// Every node emits only arrows matching its type.
    pub fn restricted(&self) -> bool {
        let ts = self.types.as_ref().expect("two node types");
        (0..self.n()).all(|j| !self.emits(j, !ts[j]))
    }
}

/// Fraction-free Gaussian elimination over the integers.
pub fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&k| m[k][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for k in r + 1..m.len() {
            for j in c + 1..cols {
                m[k][j] = (m[r][c] * m[k][j] - m[k][c] * m[r][j]) / prev;
            }
            m[k][c] = 0;
        }
        prev = m[r][c];
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

pub fn same_span(a: &[Vec<i128>], b: &[Vec<i128>]) -> bool {
    let ra = rank(a);
    let all: Vec<Vec<i128>> = a.iter().chain(b).cloned().collect();
    ra == rank(b) && ra == rank(&all)
}

pub fn oracle_equivalent(g: &Raw, h: &Raw) -> bool {
    let fg = g.family();
    (0..h.n())
        .permutations(h.n())
        .any(|p| same_span(&fg, &h.permuted(&p).family()))
}

/// Balanced iff every integer adjacency matrix maps block indicators into the
/// span of block indicators, i.e. `M * 1_B` is constant on every block.
pub fn oracle_balanced(g: &Raw, blocks: &[Vec<usize>]) -> bool {
    let n = g.n();
    let mut colour = vec![0; n];
    for (b, blk) in blocks.iter().enumerate() {
        for &k in blk {
            colour[k] = b;
        }
    }
    if let Some(ts) = &g.types {
        if blocks.iter().any(|b| b.iter().any(|&k| ts[k] != ts[b[0]])) {
            return false;
        }
    }
    for m in [&g.e, &g.i] {
        for blk in blocks {
            let image: Vec<u32> = (0..n).map(|a| blk.iter().map(|&j| m[a][j]).sum()).collect();
            if (0..n).any(|a| image[a] != image[blocks[colour[a]][0]]) {
                return false;
            }
        }
    }
    true
}

/// Two-node candidates with entries bounded by the valence bound.
fn two_node_candidates(types: &[Option<Vec<bool>>], max_valence: u32) -> Vec<Raw> {
    let mut out = Vec::new();
    let vals = 0..=max_valence;
    for entries in std::iter::repeat(vals).take(8).multi_cartesian_product() {
        let e = vec![vec![entries[0], entries[1]], vec![entries[2], entries[3]]];
        let i = vec![vec![entries[4], entries[5]], vec![entries[6], entries[7]]];
        for t in types {
            let r = Raw {
                types: t.clone(),
                e: e.clone(),
                i: i.clone(),
            };
            if r.max_valence() <= max_valence && r.connected() {
                out.push(r);
            }
        }
    }
    out
}

/// Connected two-node networks of a class with the given valence bound, as a
/// list of orbits under renumbering, duality and (two types) label swapping.
pub fn two_node_orbits(class: &str, max_valence: u32) -> Vec<Vec<Raw>> {
    let mixed = vec![Some(vec![true, false]), Some(vec![false, true])];
    let cands: Vec<Raw> = match class {
        "REI" => two_node_candidates(&mixed, max_valence)
            .into_iter()
            .filter(|r| r.restricted())
            .collect(),
        "UEI" => two_node_candidates(&mixed, max_valence),
        "PEI" => two_node_candidates(&mixed, max_valence)
            .into_iter()
            .filter(|r| r.restricted())
            .map(|r| Raw { types: None, ..r })
            .sorted()
            .dedup()
            .collect(),
        "CEI" => two_node_candidates(&[None], max_valence),
        _ => unreachable!(),
    };
    let index: HashMap<Raw, usize> = cands
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, r)| (r, k))
        .collect();
    let mut uf = UnionFind::<usize>::new(cands.len());
    for (k, r) in cands.iter().enumerate() {
        for img in [r.permuted(&[1, 0]), r.dual(), r.relabelled()] {
            if let Some(&j) = index.get(&img) {
                uf.union(k, j);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<Raw>> = HashMap::new();
    for (k, r) in cands.iter().enumerate() {
        groups.entry(uf.find(k)).or_default().push(r.clone());
    }
    groups
        .into_values()
        .map(|mut v| {
            v.sort();
            v
        })
        .sorted()
        .collect()
}

/// Groups networks by oracle ODE-equivalence; returns sorted index classes.
pub fn oracle_partition(nets: &[Raw]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::<usize>::new(nets.len());
    for a in 0..nets.len() {
        for b in a + 1..nets.len() {
            if !uf.equiv(a, b) && oracle_equivalent(&nets[a], &nets[b]) {
                uf.union(a, b);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for k in 0..nets.len() {
        groups.entry(uf.find(k)).or_default().push(k);
    }
    groups.into_values().sorted().collect()
}

pub fn net(types: Option<&str>, e: [[u32; 2]; 2], i: [[u32; 2]; 2]) -> EiNetwork {
    EiNetwork::from_rows(
        types,
        e.iter().map(|r| r.to_vec()).collect(),
        i.iter().map(|r| r.to_vec()).collect(),
    )
    .unwrap()
}

pub fn smolen_rei() -> EiNetwork {
    net(Some("EI"), [[1, 0], [1, 0]], [[0, 1], [0, 1]])
}

pub fn smolen_pei() -> EiNetwork {
    net(None, [[1, 0], [1, 0]], [[0, 1], [0, 1]])
}
