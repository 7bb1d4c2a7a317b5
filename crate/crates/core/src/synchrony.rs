//! Balanced colourings, synchrony subspaces and quotient networks.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::net::{ArrowType, EiNetwork, IntMatrix};
use crate::RationalSpace;

/// A partition of the nodes into colour blocks. Blocks are sorted and ordered
/// by their smallest node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Colouring {
    blocks: Vec<Vec<usize>>,
}

impl Colouring {
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        blocks.retain(|b| !b.is_empty());
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort();
        let mut all: Vec<usize> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        if all != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument(format!(
                "blocks {blocks:?} do not partition {n} nodes"
            )));
        }
        Ok(Colouring { blocks })
    }

    pub fn trivial(n: usize) -> Self {
        Colouring {
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n()];
        for (k, b) in self.blocks.iter().enumerate() {
            for &i in b {
                out[i] = k;
            }
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn refines_input_classes(&self, g: &EiNetwork) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&i| g.input_equivalent(b[0], i)))
    }
}

/// `1,2|3` notation with 1-based node numbers.
impl FromStr for Colouring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let mut b = Vec::new();
            for tok in part.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let k: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad node {tok:?} in {s:?}")))?;
                if k == 0 {
                    return Err(Error::Parse("nodes are numbered from 1".into()));
                }
                b.push(k - 1);
            }
            blocks.push(b);
        }
        let n = blocks.iter().map(|b| b.len()).sum();
        Colouring::new(n, blocks)
    }
}

impl fmt::Display for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|i| (i + 1).to_string()).join(","))
            .join("|");
        f.write_str(&s)
    }
}

impl TryFrom<String> for Colouring {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Colouring> for String {
    fn from(c: Colouring) -> String {
        c.to_string()
    }
}

fn check(g: &EiNetwork, c: &Colouring) -> Result<()> {
    if c.n() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "colouring has {} nodes, network {}",
            c.n(),
            g.n()
        )));
    }
    if !c.refines_input_classes(g) {
        return Err(Error::NotRefining(c.to_string()));
    }
    Ok(())
}

/// Row sums into each block agree across every block, for both arrow types.
pub fn is_balanced_combinatorial(g: &EiNetwork, c: &Colouring) -> Result<bool> {
    check(g, c)?;
    for t in ArrowType::BOTH {
        let m = g.matrix(t);
        for b in c.blocks() {
            for target in c.blocks() {
                let count = |i: usize| target.iter().map(|&k| m.get(i, k)).sum::<u32>();
                if !b.iter().map(|&i| count(i)).all_equal() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Exact polydiagonal `{x : x_i = x_j when i, j share a colour}` as a subspace of `Q^n`.
pub fn polydiagonal(c: &Colouring) -> RationalSpace {
    let n = c.n();
    RationalSpace::span(
        n,
        c.blocks().iter().map(|b| {
            let mut v = vec![BigRational::zero(); n];
            for &i in b {
                v[i] = BigRational::one();
            }
            v
        }),
    )
}

/// Every matrix in the adjacency family leaves the polydiagonal invariant.
pub fn is_balanced_invariant(g: &EiNetwork, c: &Colouring) -> Result<bool> {
    check(g, c)?;
    let delta = polydiagonal(c);
    let apply = |m: &IntMatrix, v: &[BigRational]| -> Vec<BigRational> {
        (0..m.n())
            .map(|i| {
                (0..m.n())
                    .map(|j| BigRational::from_integer(m.get(i, j).into()) * v[j].clone())
                    .sum()
            })
            .collect()
    };
    for m in g.adjacency_family() {
        for v in delta.basis() {
            if !delta.contains(&apply(&m, v)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_balanced(g: &EiNetwork, c: &Colouring) -> Result<bool> {
    let a = is_balanced_combinatorial(g, c)?;
    debug_assert_eq!(
        a,
        is_balanced_invariant(g, c)?,
        "balance tests disagree for {c} on {g}"
    );
    Ok(a)
}

/// All set partitions of `items`, via restricted growth strings.
pub fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn rec(items: &[usize], k: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == items.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(items[k]);
            rec(items, k + 1, cur, out);
            cur[b].pop();
        }
        cur.push(vec![items[k]]);
        rec(items, k + 1, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(items, 0, &mut Vec::new(), &mut out);
    out
}

/// Every balanced colouring, including the trivial one, sorted.
pub fn balanced_colourings(g: &EiNetwork) -> Vec<Colouring> {
    let per_class: Vec<Vec<Vec<Vec<usize>>>> = g
        .input_classes()
        .iter()
        .map(|c| set_partitions(c))
        .collect();
    let mut out: Vec<Colouring> = per_class
        .into_iter()
        .multi_cartesian_product()
        .map(|parts| {
            Colouring::new(g.n(), parts.into_iter().flatten().collect()).expect("partition")
        })
        .filter(|c| is_balanced(g, c).expect("refines by construction"))
        .collect();
    out.sort();
    out
}

/// Quotient network on the colour blocks of a balanced colouring.
pub fn quotient(g: &EiNetwork, c: &Colouring) -> Result<EiNetwork> {
    if !is_balanced(g, c)? {
        return Err(Error::InvalidArgument(format!(
            "colouring {c} is not balanced"
        )));
    }
    let k = c.blocks().len();
    let build = |m: &IntMatrix| {
        let mut q = IntMatrix::zeros(k);
        for (bi, b) in c.blocks().iter().enumerate() {
            for (ci, target) in c.blocks().iter().enumerate() {
                q.set(bi, ci, target.iter().map(|&j| m.get(b[0], j)).sum());
            }
        }
        q
    };
    let (exc, inh) = (build(g.exc()), build(g.inh()));
    if g.is_single_type() {
        EiNetwork::single_type(exc, inh)
    } else {
        EiNetwork::new(
            c.blocks().iter().map(|b| g.node_type(b[0])).collect(),
            exc,
            inh,
        )
    }
}
