//! Two-node catalogs with figure labels attached, and their JSON documents.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::admissible::signature as admissible_signature;
use crate::enumerate::{canonical_form, enumerate_networks, network_id, EnumerationSpec};
use crate::error::Result;
use crate::net::{classify_network, EiNetwork, IntMatrix, NetworkClass};
use crate::ode::{partition_classes, OdeClass, OdeSignature};
use crate::parametric::{parametric_class_id, ParametricClass};
use crate::synchrony::balanced_colourings;

/// Figure labels of the fifteen restricted networks as `(alpha, beta, gamma, delta)`,
/// with `A_E = [[alpha,0],[beta,0]]` and `A_I = [[0,gamma],[0,delta]]`.
pub const RESTRICTED_LABELS: [(&str, [u32; 4]); 15] = [
    ("a", [0, 1, 0, 0]),
    ("b", [0, 2, 0, 0]),
    ("c", [0, 1, 0, 1]),
    ("d", [1, 1, 0, 0]),
    ("e", [2, 1, 0, 0]),
    ("f", [1, 2, 0, 0]),
    ("g", [1, 1, 0, 1]),
    ("h", [2, 2, 0, 0]),
    ("i", [2, 1, 0, 1]),
    ("j", [0, 1, 1, 0]),
    ("k", [1, 1, 1, 0]),
    ("l", [0, 1, 2, 0]),
    ("m", [1, 2, 1, 0]),
    ("n", [1, 1, 1, 1]),
    ("o", [0, 2, 2, 0]),
];

type M2 = [[u32; 2]; 2];
const Z: M2 = [[0, 0], [0, 0]];

/// Figure labels of the 38 unrestricted networks: `(label, A_E, A_I)` with node 1 first.
pub const UNRESTRICTED_LABELS: [(&str, M2, M2); 38] = [
    ("b.1", [[0, 0], [1, 0]], [[0, 0], [1, 0]]),
    ("c", [[0, 0], [1, 1]], Z),
    ("d.1", [[0, 0], [1, 0]], [[1, 0], [0, 0]]),
    ("e.1", [[2, 0], [0, 0]], [[0, 0], [1, 0]]),
    ("e.2", [[1, 0], [1, 0]], [[1, 0], [0, 0]]),
    ("f.1", [[0, 0], [2, 0]], [[1, 0], [0, 0]]),
    ("f.2", [[1, 0], [1, 0]], [[0, 0], [1, 0]]),
    ("g", [[1, 0], [1, 1]], Z),
    ("g.1", [[0, 0], [1, 1]], [[1, 0], [0, 0]]),
    ("g.2", [[1, 0], [0, 1]], [[0, 0], [1, 0]]),
    ("h.1", [[1, 0], [2, 0]], [[1, 0], [0, 0]]),
    ("h.2", [[0, 0], [2, 0]], [[2, 0], [0, 0]]),
    ("h.3", [[2, 0], [1, 0]], [[0, 0], [1, 0]]),
    ("h.4", [[1, 0], [1, 0]], [[1, 0], [1, 0]]),
    ("i", [[2, 0], [1, 1]], Z),
    ("i.1", [[1, 0], [1, 1]], [[1, 0], [0, 0]]),
    ("i.2", [[0, 0], [1, 1]], [[2, 0], [0, 0]]),
    ("i.3", [[2, 0], [0, 1]], [[0, 0], [1, 0]]),
    ("i.4", [[1, 0], [0, 1]], [[1, 0], [1, 0]]),
    ("j", [[0, 1], [1, 0]], Z),
    ("k", [[1, 1], [1, 0]], Z),
    ("k.1", [[1, 1], [0, 0]], [[0, 0], [1, 0]]),
    ("k.2", [[0, 1], [1, 0]], [[1, 0], [0, 0]]),
    ("l", [[0, 2], [1, 0]], Z),
    ("l.1", [[0, 1], [1, 0]], [[0, 1], [0, 0]]),
    ("m", [[1, 1], [2, 0]], Z),
    ("m.1", [[0, 1], [2, 0]], [[1, 0], [0, 0]]),
    ("m.3", [[0, 0], [2, 0]], [[1, 1], [0, 0]]),
    ("m.4", [[1, 1], [1, 0]], [[0, 0], [1, 0]]),
    ("m.5", [[0, 1], [1, 0]], [[1, 0], [1, 0]]),
    ("n", [[1, 1], [1, 1]], Z),
    ("n.1", [[1, 1], [1, 0]], [[0, 0], [0, 1]]),
    ("n.2", [[1, 1], [0, 1]], [[0, 0], [1, 0]]),
    ("n.3", [[1, 1], [0, 0]], [[0, 0], [1, 1]]),
    ("n.4", [[1, 0], [0, 1]], [[0, 1], [1, 0]]),
    ("o", [[0, 2], [2, 0]], Z),
    ("o.1", [[0, 2], [1, 0]], [[0, 0], [1, 0]]),
    ("o.3", [[0, 1], [1, 0]], [[0, 1], [1, 0]]),
];

/// Table representatives for the single-node-type catalog with arbitrary outputs.
pub const COMPLETE_TABLE_REPS: [(&str, M2, M2); 15] = [
    ("NH1", [[0, 0], [1, 0]], Z),
    ("NH2", [[0, 0], [1, 1]], Z),
    ("NH3", [[0, 0], [1, 0]], [[1, 0], [0, 0]]),
    ("NH5", [[0, 0], [1, 1]], [[1, 0], [0, 0]]),
    ("NH8", [[1, 1], [1, 0]], Z),
    ("NH9", [[1, 1], [0, 0]], [[0, 0], [1, 0]]),
    ("NH10", [[0, 1], [1, 0]], [[1, 0], [0, 0]]),
    ("NH11", [[0, 2], [1, 0]], Z),
    ("NH12", [[0, 0], [1, 0]], [[0, 1], [0, 0]]),
    ("NH14", [[0, 1], [2, 0]], [[1, 0], [0, 0]]),
    ("NH17", [[1, 1], [0, 0]], [[0, 0], [1, 1]]),
    ("H1", [[1, 0], [1, 0]], Z),
    ("H2", [[0, 1], [1, 0]], Z),
    ("H3", [[1, 1], [2, 0]], Z),
    ("H4", [[0, 1], [1, 0]], [[1, 0], [1, 0]]),
];

fn m(rows: M2) -> IntMatrix {
    IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("2x2")
}

pub fn restricted_network(p: [u32; 4], two_types: bool) -> EiNetwork {
    let [a, b, c, d] = p;
    let (e, i) = (m([[a, 0], [b, 0]]), m([[0, c], [0, d]]));
    if two_types {
        EiNetwork::new(
            vec![
                crate::net::NodeType::Excitatory,
                crate::net::NodeType::Inhibitory,
            ],
            e,
            i,
        )
    } else {
        EiNetwork::single_type(e, i)
    }
    .expect("valid network")
}

pub fn unrestricted_network(e: M2, i: M2, two_types: bool) -> EiNetwork {
    if two_types {
        EiNetwork::new(
            vec![
                crate::net::NodeType::Excitatory,
                crate::net::NodeType::Inhibitory,
            ],
            m(e),
            m(i),
        )
    } else {
        EiNetwork::single_type(m(e), m(i))
    }
    .expect("valid network")
}

/// Figure-labelled networks belonging to a two-node catalog. Labels of the
/// unrestricted figure carry a `U` prefix, since both figures reuse letters.
pub fn labelled_networks(class: NetworkClass) -> Vec<(String, EiNetwork)> {
    let two = class.two_node_types();
    let mut out: Vec<(String, EiNetwork)> = RESTRICTED_LABELS
        .iter()
        .map(|(l, p)| (format!("({l})"), restricted_network(*p, two)))
        .collect();
    if matches!(class, NetworkClass::Uei | NetworkClass::Cei) {
        out.extend(
            UNRESTRICTED_LABELS
                .iter()
                .map(|(l, e, i)| (format!("U({l})"), unrestricted_network(*e, *i, two))),
        );
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub label: Option<String>,
    pub network: EiNetwork,
    pub classes: Vec<NetworkClass>,
    pub homogeneous: bool,
    pub transitive: bool,
    pub balanced_colourings: Vec<String>,
    pub signature: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalRep {
    pub id: String,
    pub network: EiNetwork,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogClass {
    pub index: usize,
    pub label: Option<String>,
    pub parametric: Option<String>,
    pub signature: OdeSignature,
    pub members: Vec<String>,
    pub minimal: Vec<MinimalRep>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Catalog {
    pub spec: EnumerationSpec,
    pub networks: Vec<CatalogEntry>,
    pub ode_classes: Vec<CatalogClass>,
}

impl Catalog {
    pub fn summary(&self) -> String {
        let sizes: Vec<String> = self
            .ode_classes
            .iter()
            .map(|c| c.members.len().to_string())
            .collect();
        format!(
            "{} networks, {} ODE-classes ({})",
            self.networks.len(),
            self.ode_classes.len(),
            sizes.join(" + ")
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serialises") + "\n"
    }

    pub fn label_of(&self, id: &str) -> Option<&str> {
        self.networks
            .iter()
            .find(|e| e.id == id)
            .and_then(|e| e.label.as_deref())
    }
}

fn class_label(
    class: NetworkClass,
    ode: &OdeClass,
    modulo_duality: bool,
) -> (Option<String>, Option<String>) {
    let param: Option<ParametricClass> =
        ode.members.iter().find_map(|g| parametric_class_id(g).ok());
    let param_str = param.map(|p| p.to_string());
    let label = match class {
        NetworkClass::Cei => {
            let names: Vec<&str> = COMPLETE_TABLE_REPS
                .iter()
                .filter(|(_, e, i)| {
                    let rep = unrestricted_network(*e, *i, false);
                    crate::ode::signature(&rep, modulo_duality) == ode.signature
                })
                .map(|(l, _, _)| *l)
                .collect();
            (!names.is_empty()).then(|| names.join("="))
        }
        _ => param.and_then(|p| match p {
            ParametricClass::Pei(c) => c.table_label().map(String::from),
            ParametricClass::Uei(c) => c.table_label().map(String::from),
        }),
    };
    (label, param_str)
}

/// Enumerates, partitions and annotates a catalog.
pub fn build_catalog(spec: &EnumerationSpec) -> Result<Catalog> {
    let nets = enumerate_networks(spec)?;
    let mut labels: BTreeMap<EiNetwork, String> = BTreeMap::new();
    if spec.n_nodes == 2 {
        for (l, g) in labelled_networks(spec.class) {
            labels.insert(canonical_form(&g, spec.modulo_duality), l);
        }
    }
    let networks: Vec<CatalogEntry> = nets
        .iter()
        .map(|g| CatalogEntry {
            id: network_id(g),
            label: labels.get(g).cloned(),
            network: g.clone(),
            classes: classify_network(g).into_iter().collect(),
            homogeneous: g.is_homogeneous(),
            transitive: g.is_transitive(),
            balanced_colourings: balanced_colourings(g)
                .iter()
                .map(|c| c.to_string())
                .collect(),
            signature: admissible_signature(g).latex_lines(),
        })
        .collect();
    let classes = partition_classes(&nets, spec.modulo_duality)?;
    let ode_classes = classes
        .iter()
        .enumerate()
        .map(|(index, c)| {
            let (label, parametric) = if spec.n_nodes == 2 {
                class_label(spec.class, c, spec.modulo_duality)
            } else {
                (None, None)
            };
            CatalogClass {
                index,
                label,
                parametric,
                signature: c.signature.clone(),
                members: c.members.iter().map(network_id).collect(),
                minimal: c
                    .minimal
                    .iter()
                    .map(|g| MinimalRep {
                        id: network_id(g),
                        network: g.clone(),
                    })
                    .collect(),
            }
        })
        .collect();
    Ok(Catalog {
        spec: spec.clone(),
        networks,
        ode_classes,
    })
}
