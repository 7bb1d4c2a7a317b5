//! Closed-form ODE-class labels for the two-node parametric families.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::net::{EiNetwork, NodeType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PeiClass {
    Nh1,
    Nh2,
    Nh3,
    H1,
    H2,
    /// `(a, b, 0, 0)` with `gcd(a, b) = 1` and `(a, b) != (1, 1)`.
    Ab00(u32, u32),
    /// `(a, b, 1, 0)` with `gcd(a, b) = 1`.
    Ab10(u32, u32),
    /// All four parameters positive, each pair reduced.
    Abcd(u32, u32, u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum UeiClass {
    Nh1,
    Nh2,
    /// `(b1, b2)` coprime with `b1 >= b2 >= 1`.
    B(u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ParametricClass {
    Pei(PeiClass),
    Uei(UeiClass),
}

impl PeiClass {
    /// Short table name where one exists.
    pub fn table_label(&self) -> Option<&'static str> {
        Some(match self {
            PeiClass::Nh1 => "NH1",
            PeiClass::Nh2 => "NH2",
            PeiClass::Nh3 => "NH3",
            PeiClass::Ab00(2, 1) => "NH4",
            PeiClass::Ab10(1, 1) => "NH5",
            PeiClass::Ab00(1, 2) => "NH6",
            PeiClass::Ab10(1, 2) => "NH7",
            PeiClass::H1 => "H1",
            PeiClass::H2 => "H2",
            _ => return None,
        })
    }
}

impl UeiClass {
    pub fn table_label(&self) -> Option<&'static str> {
        Some(match self {
            UeiClass::Nh1 => "NH1",
            UeiClass::Nh2 => "NH2",
            UeiClass::B(1, 1) => "NH3",
            UeiClass::B(2, 1) => "NH4",
            _ => return None,
        })
    }
}

impl fmt::Display for PeiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeiClass::Nh1 => write!(f, "NH1"),
            PeiClass::Nh2 => write!(f, "NH2"),
            PeiClass::Nh3 => write!(f, "NH3"),
            PeiClass::H1 => write!(f, "H1"),
            PeiClass::H2 => write!(f, "H2"),
            PeiClass::Ab00(a, b) => write!(f, "NH({a},{b},0,0)"),
            PeiClass::Ab10(a, b) => write!(f, "NH({a},{b},1,0)"),
            PeiClass::Abcd(a, b, c, d) => write!(f, "NH({a},{b},{c},{d})"),
        }
    }
}

impl fmt::Display for UeiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UeiClass::Nh1 => write!(f, "NH1"),
            UeiClass::Nh2 => write!(f, "NH2"),
            UeiClass::B(a, b) => write!(f, "NH({a},{b})"),
        }
    }
}

impl fmt::Display for ParametricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParametricClass::Pei(c) => write!(f, "PEI {c}"),
            ParametricClass::Uei(c) => write!(f, "UEI {c}"),
        }
    }
}

fn reduce(a: u32, b: u32) -> (u32, u32) {
    let g = a.gcd(&b);
    (a / g, b / g)
}

fn disconnected() -> Error {
    Error::NotParametric("connected two-node".into())
}

/// Label of the general PEI network with `A_E = [[a,0],[b,0]]`, `A_I = [[0,c],[0,d]]`.
pub fn pei_class(a: u32, b: u32, c: u32, d: u32) -> Result<PeiClass> {
    let zeros = [a, b, c, d].iter().filter(|&&x| x == 0).count();
    let class = match zeros {
        0 => {
            let (a, b) = reduce(a, b);
            let (c, d) = reduce(c, d);
            if (a, b, c, d) == (1, 1, 1, 1) {
                PeiClass::H2
            } else {
                let t = (a, b, c, d).min((d, c, b, a));
                PeiClass::Abcd(t.0, t.1, t.2, t.3)
            }
        }
        1 => {
            if b == 0 || c == 0 {
                PeiClass::Nh2
            } else if d == 0 {
                let (a, b) = reduce(a, b);
                PeiClass::Ab10(a, b)
            } else {
                let (a, b) = reduce(d, c);
                PeiClass::Ab10(a, b)
            }
        }
        2 => match (a == 0, b == 0, c == 0, d == 0) {
            (false, false, true, true) | (true, true, false, false) => {
                let (x, y) = if c == 0 { reduce(a, b) } else { reduce(d, c) };
                if (x, y) == (1, 1) {
                    PeiClass::H1
                } else {
                    PeiClass::Ab00(x, y)
                }
            }
            (true, false, true, false) | (false, true, false, true) => PeiClass::Nh2,
            (true, false, false, true) => PeiClass::Nh3,
            _ => return Err(disconnected()),
        },
        3 if b != 0 || c != 0 => PeiClass::Nh1,
        _ => return Err(disconnected()),
    };
    Ok(class)
}

/// Label of the general two-node UEI network from the off-diagonal
/// coefficients: `E12` gets `(b2, c2)` and `E21` gets `(b1, c1)` from
/// `A_E` and `A_I` respectively.
pub fn uei_class(b1: u32, b2: u32, c1: u32, c2: u32) -> Result<UeiClass> {
    let det = b2 as i64 * c1 as i64 - b1 as i64 * c2 as i64;
    if det != 0 {
        return Ok(UeiClass::Nh2);
    }
    let (p, q) = if (b1, b2) != (0, 0) {
        (b2, b1)
    } else {
        (c2, c1)
    };
    if (p, q) == (0, 0) {
        return Err(disconnected());
    }
    if p == 0 || q == 0 {
        return Ok(UeiClass::Nh1);
    }
    let (x, y) = reduce(p.max(q), p.min(q));
    Ok(UeiClass::B(x, y))
}

fn pei_orientations(g: &EiNetwork) -> Vec<(u32, u32, u32, u32)> {
    let mut out = Vec::new();
    for h in [g.clone(), g.dual()] {
        for perm in [[0, 1], [1, 0]] {
            let h = h.permute(&perm).expect("valid permutation");
            let (e, i) = (h.exc(), h.inh());
            if e.get(0, 1) == 0 && e.get(1, 1) == 0 && i.get(0, 0) == 0 && i.get(1, 0) == 0 {
                out.push((e.get(0, 0), e.get(1, 0), i.get(0, 1), i.get(1, 1)));
            }
        }
    }
    out
}

/// Parametric label for two-node networks: the PEI family for one node type,
/// the UEI family for two node types (one of each).
pub fn parametric_class_id(g: &EiNetwork) -> Result<ParametricClass> {
    if g.n() != 2 {
        return Err(Error::NotParametric("two-node".into()));
    }
    if g.is_single_type() {
        let ids: Vec<PeiClass> = pei_orientations(g)
            .into_iter()
            .map(|(a, b, c, d)| pei_class(a, b, c, d))
            .collect::<Result<_>>()?;
        let best = ids
            .into_iter()
            .min()
            .ok_or_else(|| Error::NotParametric("PEI".into()))?;
        Ok(ParametricClass::Pei(best))
    } else {
        if g.node_type(0) == g.node_type(1) {
            return Err(Error::NotParametric("UEI (one node of each type)".into()));
        }
        let h = if g.node_type(0) == NodeType::Excitatory {
            g.clone()
        } else {
            g.permute(&[1, 0])?
        };
        let (e, i) = (h.exc(), h.inh());
        Ok(ParametricClass::Uei(uei_class(
            e.get(1, 0),
            e.get(0, 1),
            i.get(1, 0),
            i.get(0, 1),
        )?))
    }
}
