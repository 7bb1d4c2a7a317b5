use std::fmt;

use itertools::Itertools;
use nalgebra::DMatrix;
use serde::Serialize;

use crate::net::{ArrowType, EiNetwork};
use crate::scalar::Real;

/// One partial derivative of a node's coupling function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Partial {
    /// With respect to the node's own state.
    Internal { node: usize },
    /// With respect to an input slot of type `arrow` fed by `source`.
    Input {
        head: usize,
        arrow: ArrowType,
        source: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Term {
    pub coeff: u32,
    pub partial: Partial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Naming {
    /// Two nodes, each arrow type emitted by at most one node and not both by the same one:
    /// `a1 b1 c1` for node 1, `d1 e1 f1` for node 2.
    Restricted,
    /// Two nodes otherwise: `a, b_j, c_j` for node 1 and `d, e_j, f_j` for node 2.
    TwoNode,
    /// `a_{i}`, `b_{i,j}` (excitatory), `c_{i,j}` (inhibitory).
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicJacobian {
    pub n: usize,
    pub naming: Naming,
    pub entries: Vec<Vec<Vec<Term>>>,
}

fn naming_for(g: &EiNetwork) -> Naming {
    if g.n() != 2 {
        return Naming::Generic;
    }
    let tails = |t: ArrowType| (0..2).filter(|&j| g.outputs(j, t)).collect::<Vec<_>>();
    let (e, i) = (tails(ArrowType::Excitatory), tails(ArrowType::Inhibitory));
    let ok = e.len() <= 1 && i.len() <= 1 && (e.is_empty() || i.is_empty() || e != i);
    if ok {
        Naming::Restricted
    } else {
        Naming::TwoNode
    }
}

pub fn symbolic_jacobian(g: &EiNetwork) -> SymbolicJacobian {
    let n = g.n();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut terms = Vec::new();
                    if i == j {
                        terms.push(Term {
                            coeff: 1,
                            partial: Partial::Internal { node: i },
                        });
                    }
                    for t in ArrowType::BOTH {
                        let m = g.matrix(t).get(i, j);
                        if m > 0 {
                            terms.push(Term {
                                coeff: m,
                                partial: Partial::Input {
                                    head: i,
                                    arrow: t,
                                    source: j,
                                },
                            });
                        }
                    }
                    terms
                })
                .collect()
        })
        .collect();
    SymbolicJacobian {
        n,
        naming: naming_for(g),
        entries,
    }
}

impl SymbolicJacobian {
    pub fn name(&self, p: &Partial) -> String {
        let exc = |a: ArrowType| a == ArrowType::Excitatory;
        match (self.naming, p) {
            (Naming::Restricted, Partial::Internal { node }) => ["a1", "d1"][*node].into(),
            (Naming::Restricted, Partial::Input { head, arrow, .. }) => {
                let k = if exc(*arrow) { 0 } else { 1 };
                [["b1", "c1"], ["e1", "f1"]][*head][k].into()
            }
            (Naming::TwoNode, Partial::Internal { node }) => ["a", "d"][*node].into(),
            (
                Naming::TwoNode,
                Partial::Input {
                    head,
                    arrow,
                    source,
                },
            ) => {
                let k = if exc(*arrow) { 0 } else { 1 };
                format!("{}{}", [["b", "c"], ["e", "f"]][*head][k], source + 1)
            }
            (Naming::Generic, Partial::Internal { node }) => format!("a_{{{}}}", node + 1),
            (
                Naming::Generic,
                Partial::Input {
                    head,
                    arrow,
                    source,
                },
            ) => {
                format!(
                    "{}_{{{},{}}}",
                    if exc(*arrow) { "b" } else { "c" },
                    head + 1,
                    source + 1
                )
            }
        }
    }

    /// Every distinct partial appearing in the matrix.
    pub fn partials(&self) -> Vec<Partial> {
        self.entries
            .iter()
            .flatten()
            .flatten()
            .map(|t| t.partial)
            .sorted()
            .dedup()
            .collect()
    }

    pub fn entry_string(&self, i: usize, j: usize) -> String {
        let terms = &self.entries[i][j];
        if terms.is_empty() {
            return "0".into();
        }
        terms
            .iter()
            .map(|t| {
                let s = self.name(&t.partial);
                if t.coeff == 1 {
                    s
                } else {
                    format!("{}·{s}", t.coeff)
                }
            })
            .join("+")
    }

    /// `nk x nk` matrix with each symbol replaced by the `k x k` block `value(partial)`.
    pub fn instantiate<S: Real>(
        &self,
        k: usize,
        mut value: impl FnMut(&Partial) -> DMatrix<S>,
    ) -> DMatrix<S> {
        let mut out = DMatrix::<S>::zeros(self.n * k, self.n * k);
        for i in 0..self.n {
            for j in 0..self.n {
                for t in &self.entries[i][j] {
                    let block = value(&t.partial) * S::lit(t.coeff as f64);
                    let mut view = out.view_mut((i * k, j * k), (k, k));
                    view += block;
                }
            }
        }
        out
    }

    /// Entrywise sum of absolute term values, the natural scale for comparing instantiations.
    pub fn instantiate_magnitude<S: Real>(
        &self,
        k: usize,
        mut value: impl FnMut(&Partial) -> DMatrix<S>,
    ) -> DMatrix<S> {
        self.instantiate(k, |p| value(p).map(|x| num_traits::Float::abs(x)))
    }
}

impl fmt::Display for SymbolicJacobian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = (0..self.n).map(|i| {
            format!(
                "[{}]",
                (0..self.n).map(|j| self.entry_string(i, j)).join(", ")
            )
        });
        write!(f, "[{}]", rows.format(","))
    }
}
