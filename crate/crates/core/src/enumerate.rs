//! Exhaustive enumeration of small networks up to renumbering (and duality).

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::net::{classify_network, ArrowType, EiNetwork, IntMatrix, NetworkClass, NodeType};

/// Upper bound on raw candidates examined by [`enumerate_networks`].
pub const MAX_CANDIDATES: u128 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSpec {
    pub n_nodes: usize,
    pub class: NetworkClass,
    pub max_valence: u32,
    pub connected_only: bool,
    pub modulo_duality: bool,
}

impl EnumerationSpec {
    pub fn two_node(class: NetworkClass, max_valence: u32) -> Self {
        EnumerationSpec {
            n_nodes: 2,
            class,
            max_valence,
            connected_only: true,
            modulo_duality: true,
        }
    }
}

/// Group elements applied on top of renumbering when reducing modulo duality.
/// With two node types this includes flipping the type labels, alone and
/// together with the arrow swap.
fn symmetry_variants(g: &EiNetwork, modulo_duality: bool) -> Vec<EiNetwork> {
    let mut v = vec![g.clone()];
    if modulo_duality {
        v.push(g.dual());
        if !g.is_single_type() {
            v.push(g.relabel_node_types());
            v.push(g.dual().relabel_node_types());
        }
    }
    v
}

/// Sort key: restricted networks come first, then the flattened
/// `(types, exc, inh)` data.
pub fn canonical_key(g: &EiNetwork) -> (bool, EiNetwork) {
    let restricted = classify_network(g).contains(&NetworkClass::Rei);
    (!restricted, g.clone())
}

/// Every network obtained from `g` by renumbering and, optionally, duality.
pub fn orbit(g: &EiNetwork, modulo_duality: bool) -> Vec<EiNetwork> {
    let n = g.n();
    let mut out = Vec::new();
    for h in symmetry_variants(g, modulo_duality) {
        for perm in (0..n).permutations(n) {
            out.push(h.permute(&perm).expect("valid permutation"));
        }
    }
    out
}

pub fn canonical_form(g: &EiNetwork, modulo_duality: bool) -> EiNetwork {
    orbit(g, modulo_duality)
        .into_iter()
        .min_by(|a, b| canonical_key(a).cmp(&canonical_key(b)))
        .expect("orbit is non-empty")
}

/// Stable identifier: node-type letters (or `S`) followed by the exc and inh
/// entries in base 36.
pub fn network_id(g: &EiNetwork) -> String {
    let types: String = if g.is_single_type() {
        "S".into()
    } else {
        g.node_types().iter().map(|t| t.letter()).collect()
    };
    let digits = |m: &IntMatrix| -> String {
        m.as_slice()
            .iter()
            .map(|&v| std::char::from_digit(v.min(35), 36).unwrap())
            .collect()
    };
    format!("{types}-{}-{}", digits(g.exc()), digits(g.inh()))
}

/// Whether excitatory and inhibitory output roles can be given to distinct
/// nodes so that every node only emits arrows of its role's type.
pub fn admits_two_roles(g: &EiNetwork) -> bool {
    let n = g.n();
    let (mut forced_e, mut forced_i, mut free) = (0, 0, 0);
    for j in 0..n {
        match (
            g.outputs(j, ArrowType::Excitatory),
            g.outputs(j, ArrowType::Inhibitory),
        ) {
            (true, true) => return false,
            (true, false) => forced_e += 1,
            (false, true) => forced_i += 1,
            (false, false) => free += 1,
        }
    }
    n >= 2 && forced_e + free >= 1 && forced_i + free >= 1
}

fn in_catalog_class(g: &EiNetwork, class: NetworkClass) -> bool {
    if !classify_network(g).contains(&class) {
        return false;
    }
    match class {
        NetworkClass::Rei | NetworkClass::Uei => {
            g.node_types().contains(&NodeType::Excitatory)
                && g.node_types().contains(&NodeType::Inhibitory)
        }
        NetworkClass::Pei => admits_two_roles(g),
        NetworkClass::Cei => true,
    }
}

/// All input rows `(exc row, inh row)` with total at most `v`.
fn input_rows(n: usize, v: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in 0..=budget {
            cur.push(x);
            rec(len, budget - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(2 * n, v, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Canonical representatives of every network matching `spec`, sorted by
/// [`canonical_key`].
pub fn enumerate_networks(spec: &EnumerationSpec) -> Result<Vec<EiNetwork>> {
    let n = spec.n_nodes;
    if n == 0 {
        return Err(Error::InvalidArgument("n_nodes must be at least 1".into()));
    }
    let two_types = spec.class.two_node_types();
    let labelings: Vec<Vec<NodeType>> = if two_types {
        (0..n)
            .map(|_| [NodeType::Excitatory, NodeType::Inhibitory])
            .multi_cartesian_product()
            .filter(|t| t.contains(&NodeType::Excitatory) && t.contains(&NodeType::Inhibitory))
            .collect()
    } else {
        vec![vec![NodeType::Excitatory; n]]
    };
    let rows_per_node = binomial(2 * n as u128 + spec.max_valence as u128, 2 * n as u128);
    let candidates = rows_per_node
        .checked_pow(n as u32)
        .and_then(|c| c.checked_mul(labelings.len().max(1) as u128));
    match candidates {
        Some(c) if c <= MAX_CANDIDATES => {}
        _ => {
            return Err(Error::InvalidArgument(format!(
                "{} networks on {n} nodes with valence <= {} is too large to enumerate",
                spec.class, spec.max_valence
            )))
        }
    }

    let rows = input_rows(n, spec.max_valence);
    let mut found: BTreeSet<(bool, EiNetwork)> = BTreeSet::new();
    for choice in (0..n).map(|_| 0..rows.len()).multi_cartesian_product() {
        let mut exc = IntMatrix::zeros(n);
        let mut inh = IntMatrix::zeros(n);
        for (i, &r) in choice.iter().enumerate() {
            for j in 0..n {
                exc.set(i, j, rows[r][j]);
                inh.set(i, j, rows[r][n + j]);
            }
        }
        for types in &labelings {
            let g = if two_types {
                EiNetwork::new(types.clone(), exc.clone(), inh.clone())?
            } else {
                EiNetwork::single_type(exc.clone(), inh.clone())?
            };
            if spec.connected_only && !g.is_connected() {
                continue;
            }
            if !in_catalog_class(&g, spec.class) {
                continue;
            }
            found.insert(canonical_key(&canonical_form(&g, spec.modulo_duality)));
        }
    }
    Ok(found.into_iter().map(|(_, g)| g).collect())
}
