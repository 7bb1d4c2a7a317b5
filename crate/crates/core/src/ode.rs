//! ODE-equivalence: two networks are equivalent when, after renumbering, the
//! linear spans of their adjacency families coincide.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{canonical_form, canonical_key, orbit};
use crate::error::{Error, Result};
use crate::net::{EiNetwork, IntMatrix};
use crate::RationalSpace;

/// Canonical invariant of an ODE-class: the smallest RREF span over all renumberings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OdeSignature {
    pub n: usize,
    pub single_node_type: bool,
    pub span: RationalSpace,
}

impl OdeSignature {
    /// Basis rows as strings, e.g. `["1", "0", "-1/2", ...]`.
    pub fn basis_strings(&self) -> Vec<Vec<String>> {
        self.span
            .basis()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }
}

impl Serialize for OdeSignature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis_strings().serialize(s)
    }
}

fn span_of(g: &EiNetwork) -> RationalSpace {
    RationalSpace::span_of_matrices(&g.adjacency_family())
}

pub fn signature(g: &EiNetwork, modulo_duality: bool) -> OdeSignature {
    let span = orbit(g, modulo_duality)
        .iter()
        .map(span_of)
        .min()
        .expect("non-empty orbit");
    OdeSignature {
        n: g.n(),
        single_node_type: g.is_single_type(),
        span,
    }
}

fn comparable(g: &EiNetwork, h: &EiNetwork) -> Result<()> {
    if g.n() != h.n() {
        return Err(Error::Incomparable(format!(
            "{} nodes vs {} nodes",
            g.n(),
            h.n()
        )));
    }
    if g.is_single_type() != h.is_single_type() {
        return Err(Error::Incomparable("one and two node types".into()));
    }
    Ok(())
}

pub fn ode_equivalent(g: &EiNetwork, h: &EiNetwork, modulo_duality: bool) -> Result<bool> {
    comparable(g, h)?;
    Ok(signature(g, modulo_duality) == signature(h, modulo_duality))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OdeClass {
    pub signature: OdeSignature,
    pub members: Vec<EiNetwork>,
    pub minimal: Vec<EiNetwork>,
}

/// Partition into ODE-classes, ordered by first member in input order.
/// Each class carries its minimal representatives.
pub fn partition_classes(nets: &[EiNetwork], modulo_duality: bool) -> Result<Vec<OdeClass>> {
    if let Some(first) = nets.first() {
        for h in nets {
            comparable(first, h)?;
        }
    }
    let sigs: Vec<OdeSignature> = nets
        .par_iter()
        .map(|g| signature(g, modulo_duality))
        .collect();
    let mut order: Vec<OdeSignature> = Vec::new();
    let mut members: BTreeMap<OdeSignature, Vec<EiNetwork>> = BTreeMap::new();
    for (g, s) in nets.iter().zip(sigs) {
        if !members.contains_key(&s) {
            order.push(s.clone());
        }
        members.entry(s).or_default().push(g.clone());
    }
    order
        .into_par_iter()
        .map(|s| {
            let ms = members[&s].clone();
            let smallest = ms
                .iter()
                .min_by_key(|g| g.total_arrows())
                .expect("class is non-empty");
            let bound = smallest.total_arrows().max(1);
            let minimal = minimal_representatives(smallest, bound, modulo_duality)?;
            Ok(OdeClass {
                signature: s,
                members: ms,
                minimal,
            })
        })
        .collect()
}

/// Compositions of `total` into `len` parts, each at most `bound`.
fn bounded_compositions(len: usize, total: u32, bound: u32, f: &mut dyn FnMut(&[u32])) {
    fn rec(len: usize, left: u32, bound: u32, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        let slots = (len - cur.len()) as u32;
        if slots == 0 {
            if left == 0 {
                f(cur);
            }
            return;
        }
        if left > slots * bound {
            return;
        }
        for x in 0..=left.min(bound) {
            cur.push(x);
            rec(len, left - x, bound, cur, f);
            cur.pop();
        }
    }
    rec(len, total, bound, &mut Vec::new(), f);
}

/// Networks in the ODE-class of `g` with the fewest arrows among those whose
/// entries do not exceed `entry_bound`.
pub fn minimal_representatives(
    g: &EiNetwork,
    entry_bound: u32,
    modulo_duality: bool,
) -> Result<Vec<EiNetwork>> {
    let n = g.n();
    let targets: BTreeSet<RationalSpace> = orbit(g, false).iter().map(span_of).collect();
    let labelings = if g.is_single_type() {
        vec![g.node_types().to_vec()]
    } else {
        let flipped: Vec<_> = g.node_types().iter().map(|t| t.flip()).collect();
        vec![g.node_types().to_vec(), flipped]
            .into_iter()
            .unique()
            .collect()
    };
    let entries = 2 * n * n;
    let max_arrows = entry_bound * entries as u32;
    for l in 0..=max_arrows {
        let mut hits: BTreeSet<(bool, EiNetwork)> = BTreeSet::new();
        bounded_compositions(entries, l, entry_bound, &mut |v| {
            let exc = IntMatrix::from_flat(n, v[..n * n].to_vec());
            let inh = IntMatrix::from_flat(n, v[n * n..].to_vec());
            for types in &labelings {
                let cand = if g.is_single_type() {
                    EiNetwork::single_type(exc.clone(), inh.clone())
                } else {
                    EiNetwork::new(types.clone(), exc.clone(), inh.clone())
                }
                .expect("sizes match");
                if targets.contains(&span_of(&cand)) {
                    hits.insert(canonical_key(&canonical_form(&cand, modulo_duality)));
                }
            }
        });
        if !hits.is_empty() {
            return Ok(hits.into_iter().map(|(_, h)| h).collect());
        }
    }
    Err(Error::SearchExhausted {
        entry_bound,
        max_arrows,
    })
}
