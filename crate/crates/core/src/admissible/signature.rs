use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::net::{ArrowType, EiNetwork, NodeType};

const LETTERS: [&str; 10] = ["f", "g", "h", "p", "q", "r", "s", "u", "v", "w"];

pub fn function_symbol(class: usize) -> String {
    LETTERS
        .get(class)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("f_{{{}}}", class + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArgGroup {
    pub arrow: ArrowType,
    /// Tail nodes, repeated by multiplicity, in increasing order.
    pub sources: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeEquation {
    pub node: usize,
    pub function: String,
    /// `None` for single-node-type networks.
    pub node_type: Option<NodeType>,
    pub groups: Vec<ArgGroup>,
}

/// Table-style admissible ODE of a network.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleSignature {
    pub equations: Vec<NodeEquation>,
}

pub fn signature(g: &EiNetwork) -> AdmissibleSignature {
    let homogeneous = g.is_homogeneous();
    let class_of = g.input_class_of();
    let equations = (0..g.n())
        .map(|i| {
            let groups = ArrowType::BOTH
                .iter()
                .filter_map(|&t| {
                    let m = g.matrix(t);
                    let sources: Vec<usize> = (0..g.n())
                        .flat_map(|j| std::iter::repeat(j).take(m.get(i, j) as usize))
                        .collect();
                    (!sources.is_empty()).then_some(ArgGroup { arrow: t, sources })
                })
                .collect();
            NodeEquation {
                node: i,
                function: function_symbol(if homogeneous { 0 } else { class_of[i] }),
                node_type: (!g.is_single_type()).then(|| g.node_type(i)),
                groups,
            }
        })
        .collect();
    AdmissibleSignature { equations }
}

fn type_sign(t: NodeType) -> char {
    match t {
        NodeType::Excitatory => '+',
        NodeType::Inhibitory => '-',
    }
}

fn unicode_sign(c: char) -> char {
    if c == '-' {
        '\u{2212}'
    } else {
        c
    }
}

impl NodeEquation {
    pub fn latex(&self) -> String {
        let i = self.node + 1;
        let internal = match self.node_type {
            Some(t) => format!("x^{}_{i}", type_sign(t)),
            None => format!("x_{i}"),
        };
        let mut parts = vec![internal];
        for grp in &self.groups {
            let items = grp
                .sources
                .iter()
                .map(|j| format!("x^{}_{}", grp.arrow.sign(), j + 1))
                .join(",");
            parts.push(if grp.sources.len() > 1 {
                format!("\\overline{{{items}}}")
            } else {
                items
            });
        }
        format!("\\dot{{x}}_{i} = {}({})", self.function, parts.join("; "))
    }

    pub fn unicode(&self) -> String {
        let i = self.node + 1;
        let internal = match self.node_type {
            Some(t) => format!("x{i}{}", unicode_sign(type_sign(t))),
            None => format!("x{i}"),
        };
        let mut parts = vec![internal];
        for grp in &self.groups {
            let bar = if grp.sources.len() > 1 {
                "x\u{304}"
            } else {
                "x"
            };
            parts.push(
                grp.sources
                    .iter()
                    .map(|j| format!("{bar}{}{}", j + 1, unicode_sign(grp.arrow.sign())))
                    .join(","),
            );
        }
        format!("\u{1e8b}{i} = {}({})", self.function, parts.join("; "))
    }
}

impl AdmissibleSignature {
    pub fn latex_lines(&self) -> Vec<String> {
        self.equations.iter().map(NodeEquation::latex).collect()
    }

    pub fn unicode_lines(&self) -> Vec<String> {
        self.equations.iter().map(NodeEquation::unicode).collect()
    }
}

impl fmt::Display for AdmissibleSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.unicode_lines().join(", "))
    }
}
