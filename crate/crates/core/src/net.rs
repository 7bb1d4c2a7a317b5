//! Excitatory-inhibitory networks and their structural predicates.

use std::collections::BTreeSet;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NodeType {
    #[serde(rename = "E")]
    Excitatory,
    #[serde(rename = "I")]
    Inhibitory,
}

impl NodeType {
    pub fn flip(self) -> Self {
        match self {
            NodeType::Excitatory => NodeType::Inhibitory,
            NodeType::Inhibitory => NodeType::Excitatory,
        }
    }

    pub fn letter(self) -> char {
        match self {
            NodeType::Excitatory => 'E',
            NodeType::Inhibitory => 'I',
        }
    }

    /// Parses a string of `E`/`I` letters.
    pub fn parse_list(s: &str) -> Result<Vec<NodeType>> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c.to_ascii_uppercase() {
                'E' => Ok(NodeType::Excitatory),
                'I' => Ok(NodeType::Inhibitory),
                other => Err(Error::Parse(format!("unknown node type {other:?}"))),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ArrowType {
    #[serde(rename = "exc")]
    Excitatory,
    #[serde(rename = "inh")]
    Inhibitory,
}

impl ArrowType {
    pub const BOTH: [ArrowType; 2] = [ArrowType::Excitatory, ArrowType::Inhibitory];

    pub fn flip(self) -> Self {
        match self {
            ArrowType::Excitatory => ArrowType::Inhibitory,
            ArrowType::Inhibitory => ArrowType::Excitatory,
        }
    }

    pub fn sign(self) -> char {
        match self {
            ArrowType::Excitatory => '+',
            ArrowType::Inhibitory => '-',
        }
    }
}

/// Square matrix of arrow multiplicities. Entry `(i, j)` counts arrows from `j` to `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<u32>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidNetwork(format!("matrix is not {n}x{n}")));
        }
        Ok(IntMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_flat(n: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), n * n);
        IntMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.n + j] = v;
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.data
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn row_sum(&self, i: usize) -> u32 {
        (0..self.n).map(|j| self.get(i, j)).sum()
    }

    pub fn column_sum(&self, j: usize) -> u32 {
        (0..self.n).map(|i| self.get(i, j)).sum()
    }

    pub fn total(&self) -> u32 {
        self.data.iter().sum()
    }

    pub fn max_entry(&self) -> u32 {
        self.data.iter().copied().max().unwrap_or(0)
    }

    /// `P M P^T` for the permutation sending node `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(perm[i], perm[j], self.get(i, j));
            }
        }
        out
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<u32>>::deserialize(d)?;
        IntMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum NetworkClass {
    Rei,
    Pei,
    Uei,
    Cei,
}

impl NetworkClass {
    pub fn two_node_types(self) -> bool {
        matches!(self, NetworkClass::Rei | NetworkClass::Uei)
    }

    pub fn name(self) -> &'static str {
        match self {
            NetworkClass::Rei => "REI",
            NetworkClass::Pei => "PEI",
            NetworkClass::Uei => "UEI",
            NetworkClass::Cei => "CEI",
        }
    }
}

impl fmt::Display for NetworkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for NetworkClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rei" => Ok(NetworkClass::Rei),
            "pei" => Ok(NetworkClass::Pei),
            "uei" => Ok(NetworkClass::Uei),
            "cei" => Ok(NetworkClass::Cei),
            _ => Err(Error::Parse(format!("unknown network class {s:?}"))),
        }
    }
}

/// A network with excitatory and inhibitory arrows.
///
/// For single-node-type networks the stored node types are normalised to
/// all-excitatory, so they never influence comparisons.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "NetworkRepr", into = "NetworkRepr")]
pub struct EiNetwork {
    single_node_type: bool,
    node_types: Vec<NodeType>,
    exc: IntMatrix,
    inh: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct NetworkRepr {
    n: usize,
    single_node_type: bool,
    #[serde(default)]
    node_types: Option<Vec<NodeType>>,
    exc: IntMatrix,
    inh: IntMatrix,
}

impl TryFrom<NetworkRepr> for EiNetwork {
    type Error = Error;
    fn try_from(r: NetworkRepr) -> Result<Self> {
        if r.exc.n() != r.n || r.inh.n() != r.n {
            return Err(Error::InvalidNetwork(format!(
                "matrices must be {0}x{0}",
                r.n
            )));
        }
        if r.single_node_type {
            EiNetwork::single_type(r.exc, r.inh)
        } else {
            let types = r
                .node_types
                .ok_or_else(|| Error::InvalidNetwork("node_types required".into()))?;
            EiNetwork::new(types, r.exc, r.inh)
        }
    }
}

impl From<EiNetwork> for NetworkRepr {
    fn from(g: EiNetwork) -> Self {
        NetworkRepr {
            n: g.n(),
            single_node_type: g.single_node_type,
            node_types: Some(g.node_types),
            exc: g.exc,
            inh: g.inh,
        }
    }
}

impl EiNetwork {
    /// Two-node-type network.
    pub fn new(node_types: Vec<NodeType>, exc: IntMatrix, inh: IntMatrix) -> Result<Self> {
        let n = node_types.len();
        if n == 0 {
            return Err(Error::InvalidNetwork("network has no nodes".into()));
        }
        if exc.n() != n || inh.n() != n {
            return Err(Error::InvalidNetwork(format!(
                "{n} node types but matrices are {}x{} and {}x{}",
                exc.n(),
                exc.n(),
                inh.n(),
                inh.n()
            )));
        }
        Ok(EiNetwork {
            single_node_type: false,
            node_types,
            exc,
            inh,
        })
    }

    pub fn single_type(exc: IntMatrix, inh: IntMatrix) -> Result<Self> {
        let n = exc.n();
        if n == 0 {
            return Err(Error::InvalidNetwork("network has no nodes".into()));
        }
        if inh.n() != n {
            return Err(Error::InvalidNetwork("matrix sizes differ".into()));
        }
        Ok(EiNetwork {
            single_node_type: true,
            node_types: vec![NodeType::Excitatory; n],
            exc,
            inh,
        })
    }

    /// Convenience constructor from row vectors; `types` is e.g. `"EI"`, or `None` for one node type.
    pub fn from_rows(types: Option<&str>, exc: Vec<Vec<u32>>, inh: Vec<Vec<u32>>) -> Result<Self> {
        let exc = IntMatrix::from_rows(exc)?;
        let inh = IntMatrix::from_rows(inh)?;
        match types {
            Some(t) => Self::new(NodeType::parse_list(t)?, exc, inh),
            None => Self::single_type(exc, inh),
        }
    }

    pub fn n(&self) -> usize {
        self.node_types.len()
    }

    pub fn is_single_type(&self) -> bool {
        self.single_node_type
    }

    pub fn node_types(&self) -> &[NodeType] {
        &self.node_types
    }

    pub fn node_type(&self, i: usize) -> NodeType {
        self.node_types[i]
    }

    pub fn exc(&self) -> &IntMatrix {
        &self.exc
    }

    pub fn inh(&self) -> &IntMatrix {
        &self.inh
    }

    pub fn matrix(&self, t: ArrowType) -> &IntMatrix {
        match t {
            ArrowType::Excitatory => &self.exc,
            ArrowType::Inhibitory => &self.inh,
        }
    }

    pub fn total_arrows(&self) -> u32 {
        self.exc.total() + self.inh.total()
    }

    pub fn max_entry(&self) -> u32 {
        self.exc.max_entry().max(self.inh.max_entry())
    }

    /// Input counts `(excitatory, inhibitory)` per node.
    pub fn valences(&self) -> Vec<(u32, u32)> {
        (0..self.n())
            .map(|i| (self.exc.row_sum(i), self.inh.row_sum(i)))
            .collect()
    }

    pub fn max_valence(&self) -> u32 {
        self.valences()
            .iter()
            .map(|(e, i)| e + i)
            .max()
            .unwrap_or(0)
    }

    /// Whether node `j` is the tail of any arrow of type `t`.
    pub fn outputs(&self, j: usize, t: ArrowType) -> bool {
        self.matrix(t).column_sum(j) > 0
    }

    fn input_key(&self, i: usize) -> (Option<NodeType>, u32, u32) {
        let ty = if self.single_node_type {
            None
        } else {
            Some(self.node_types[i])
        };
        (ty, self.exc.row_sum(i), self.inh.row_sum(i))
    }

    pub fn input_equivalent(&self, i: usize, j: usize) -> bool {
        self.input_key(i) == self.input_key(j)
    }

    /// Input classes ordered by their smallest node.
    pub fn input_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.n() {
            match classes.iter_mut().find(|c| self.input_equivalent(c[0], i)) {
                Some(c) => c.push(i),
                None => classes.push(vec![i]),
            }
        }
        classes
    }

    /// Index into [`Self::input_classes`] for every node.
    pub fn input_class_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n()];
        for (k, c) in self.input_classes().iter().enumerate() {
            for &i in c {
                out[i] = k;
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.input_classes().len() == 1
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut uf = UnionFind::<usize>::new(n);
        for i in 0..n {
            for j in 0..n {
                if self.exc.get(i, j) + self.inh.get(i, j) > 0 {
                    uf.union(i, j);
                }
            }
        }
        (1..n).all(|i| uf.equiv(0, i))
    }

    /// Every node reaches every other node along arrows; a single node needs a self-loop.
    pub fn is_transitive(&self) -> bool {
        let n = self.n();
        if n == 1 {
            return self.total_arrows() > 0;
        }
        let mut g = petgraph::Graph::<(), ()>::new();
        let idx: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.exc.get(i, j) + self.inh.get(i, j) > 0 {
                    g.add_edge(idx[j], idx[i], ());
                }
            }
        }
        petgraph::algo::kosaraju_scc(&g).len() == 1
    }

    /// Swap arrow types, and node types when there are two of them.
    pub fn dual(&self) -> Self {
        let node_types = if self.single_node_type {
            self.node_types.clone()
        } else {
            self.node_types.iter().map(|t| t.flip()).collect()
        };
        EiNetwork {
            single_node_type: self.single_node_type,
            node_types,
            exc: self.inh.clone(),
            inh: self.exc.clone(),
        }
    }

    /// Flip node-type labels only, keeping the arrows.
    pub fn relabel_node_types(&self) -> Self {
        let mut out = self.clone();
        if !self.single_node_type {
            out.node_types.iter_mut().for_each(|t| *t = t.flip());
        }
        out
    }

    /// Renumber nodes: node `i` becomes node `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidArgument(format!(
                "{perm:?} is not a permutation of {n} nodes"
            )));
        }
        let mut node_types = self.node_types.clone();
        for i in 0..n {
            node_types[perm[i]] = self.node_types[i];
        }
        Ok(EiNetwork {
            single_node_type: self.single_node_type,
            node_types,
            exc: self.exc.permuted(perm),
            inh: self.inh.permuted(perm),
        })
    }

    /// `[D_E, D_I, A_E, A_I]` for two node types, `[Id, A_E, A_I]` otherwise.
    pub fn adjacency_family(&self) -> Vec<IntMatrix> {
        let n = self.n();
        let mut fam = Vec::with_capacity(4);
        if self.single_node_type {
            fam.push(IntMatrix::identity(n));
        } else {
            for ty in [NodeType::Excitatory, NodeType::Inhibitory] {
                let mut d = IntMatrix::zeros(n);
                for i in 0..n {
                    if self.node_types[i] == ty {
                        d.set(i, i, 1);
                    }
                }
                fam.push(d);
            }
        }
        fam.push(self.exc.clone());
        fam.push(self.inh.clone());
        fam
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("network serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Graphviz rendering: solid excitatory arrows, dashed inhibitory arrows,
    /// white excitatory nodes and grey inhibitory nodes.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph \"{name}\" {{\n  node [shape=circle, style=filled];\n");
        for i in 0..self.n() {
            let fill = match (self.single_node_type, self.node_types[i]) {
                (true, _) | (false, NodeType::Excitatory) => "white",
                (false, NodeType::Inhibitory) => "gray",
            };
            s.push_str(&format!("  {} [fillcolor={fill}];\n", i + 1));
        }
        for t in ArrowType::BOTH {
            let m = self.matrix(t);
            for i in 0..self.n() {
                for j in 0..self.n() {
                    for _ in 0..m.get(i, j) {
                        match t {
                            ArrowType::Excitatory => {
                                s.push_str(&format!("  {} -> {};\n", j + 1, i + 1))
                            }
                            ArrowType::Inhibitory => {
                                s.push_str(&format!("  {} -> {} [style=dashed];\n", j + 1, i + 1))
                            }
                        }
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// All class predicates satisfied by `g`.
pub fn classify_network(g: &EiNetwork) -> BTreeSet<NetworkClass> {
    let mut out = BTreeSet::new();
    let n = g.n();
    if g.is_single_type() {
        out.insert(NetworkClass::Cei);
        let pure = (0..n)
            .all(|j| !(g.outputs(j, ArrowType::Excitatory) && g.outputs(j, ArrowType::Inhibitory)));
        if pure {
            out.insert(NetworkClass::Pei);
        }
    } else {
        out.insert(NetworkClass::Uei);
        let restricted = (0..n).all(|j| match g.node_type(j) {
            NodeType::Excitatory => !g.outputs(j, ArrowType::Inhibitory),
            NodeType::Inhibitory => !g.outputs(j, ArrowType::Excitatory),
        });
        if restricted {
            out.insert(NetworkClass::Rei);
        }
    }
    out
}

impl fmt::Display for EiNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let types: String = if self.single_node_type {
            "-".repeat(self.n())
        } else {
            self.node_types.iter().map(|t| t.letter()).collect()
        };
        write!(
            f,
            "{types} exc={:?} inh={:?}",
            self.exc.rows(),
            self.inh.rows()
        )
    }
}
