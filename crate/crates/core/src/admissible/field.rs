use std::sync::Arc;

use nalgebra::DMatrix;
use serde::Serialize;

use super::coupling::{validate_symmetry, CouplingFunction, CouplingSpec};
use super::jacobian::Partial;
use crate::error::{Error, Result};
use crate::net::{ArrowType, EiNetwork};
use crate::scalar::Real;

/// Finite-difference settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiffConfig {
    pub step: f64,
    pub neutral_tol: f64,
}

impl Default for DiffConfig {
    fn default() -> Self {
        DiffConfig {
            step: 1e-5,
            neutral_tol: 1e-8,
        }
    }
}

const SYMMETRY_TRIALS: usize = 16;
const SYMMETRY_SEED: u64 = 0x5eed;

#[derive(Debug, Clone)]
struct Wiring {
    class: usize,
    exc: Vec<usize>,
    inh: Vec<usize>,
}

/// Admissible vector field on `R^(n k)`; node `i` owns components `i*k .. (i+1)*k`.
#[derive(Clone)]
pub struct VectorField<S> {
    n: usize,
    k: usize,
    wiring: Vec<Wiring>,
    functions: Vec<Arc<dyn CouplingFunction<S>>>,
}

pub fn assemble_vector_field<S: Real>(
    g: &EiNetwork,
    spec: &CouplingSpec<S>,
) -> Result<VectorField<S>> {
    let k = spec.state_dim;
    if k == 0 {
        return Err(Error::Spec("state dimension must be positive".into()));
    }
    let classes = g.input_classes();
    let valences = g.valences();
    let mut functions = Vec::with_capacity(classes.len());
    for (c, members) in classes.iter().enumerate() {
        let f = spec
            .function_for(c)
            .ok_or_else(|| Error::Spec(format!("no function for input class {c}")))?;
        let (e, i) = valences[members[0]];
        let want = (e as usize, i as usize);
        if let Some(got) = f.arity() {
            if got != want {
                return Err(Error::Arity {
                    class: c,
                    exp_exc: want.0,
                    exp_inh: want.1,
                    got_exc: got.0,
                    got_inh: got.1,
                });
            }
        }
        if !f.symmetric_by_construction()
            && !validate_symmetry(f.as_ref(), want, k, SYMMETRY_TRIALS, SYMMETRY_SEED)
        {
            return Err(Error::NotSymmetric(c));
        }
        functions.push(f.clone());
    }
    let class_of = g.input_class_of();
    let expand = |t: ArrowType, i: usize| -> Vec<usize> {
        (0..g.n())
            .flat_map(|j| std::iter::repeat(j).take(g.matrix(t).get(i, j) as usize))
            .collect()
    };
    let wiring = (0..g.n())
        .map(|i| Wiring {
            class: class_of[i],
            exc: expand(ArrowType::Excitatory, i),
            inh: expand(ArrowType::Inhibitory, i),
        })
        .collect();
    Ok(VectorField {
        n: g.n(),
        k,
        wiring,
        functions,
    })
}

impl<S: Real> VectorField<S> {
    pub fn dim(&self) -> usize {
        self.n * self.k
    }

    pub fn state_dim(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn node<'a>(&self, x: &'a [S], j: usize) -> &'a [S] {
        &x[j * self.k..(j + 1) * self.k]
    }

    pub fn eval(&self, x: &[S], out: &mut [S]) {
        assert_eq!(x.len(), self.dim(), "state has wrong dimension");
        for (i, w) in self.wiring.iter().enumerate() {
            let exc: Vec<&[S]> = w.exc.iter().map(|&j| self.node(x, j)).collect();
            let inh: Vec<&[S]> = w.inh.iter().map(|&j| self.node(x, j)).collect();
            self.functions[w.class].eval(
                self.node(x, i),
                &exc,
                &inh,
                &mut out[i * self.k..(i + 1) * self.k],
            );
        }
    }

    pub fn eval_vec(&self, x: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim()];
        self.eval(x, &mut out);
        out
    }

    /// Central-difference `k x k` derivative of node `head`'s function with
    /// respect to one argument slot, at state `x`.
    pub fn partial(&self, x: &[S], p: &Partial, h: S) -> Result<DMatrix<S>> {
        let k = self.k;
        let (head, slot) = match *p {
            Partial::Internal { node } => (node, None),
            Partial::Input {
                head,
                arrow,
                source,
            } => {
                let w = &self.wiring[head];
                let grp = match arrow {
                    ArrowType::Excitatory => &w.exc,
                    ArrowType::Inhibitory => &w.inh,
                };
                let pos = grp
                    .iter()
                    .position(|&j| j == source)
                    .ok_or_else(|| Error::InvalidArgument(format!("no such input slot {p:?}")))?;
                (head, Some((arrow, pos)))
            }
        };
        let w = &self.wiring[head];
        let f = &self.functions[w.class];
        let mut own = self.node(x, head).to_vec();
        let mut exc: Vec<Vec<S>> = w.exc.iter().map(|&j| self.node(x, j).to_vec()).collect();
        let mut inh: Vec<Vec<S>> = w.inh.iter().map(|&j| self.node(x, j).to_vec()).collect();
        let mut out = DMatrix::zeros(k, k);
        let two_h = h + h;
        for d in 0..k {
            let mut vals = [vec![S::zero(); k], vec![S::zero(); k]];
            for (s, sign) in [S::one(), -S::one()].into_iter().enumerate() {
                let target: &mut Vec<S> = match slot {
                    None => &mut own,
                    Some((ArrowType::Excitatory, pos)) => &mut exc[pos],
                    Some((ArrowType::Inhibitory, pos)) => &mut inh[pos],
                };
                let orig = target[d];
                target[d] = orig + sign * h;
                let e: Vec<&[S]> = exc.iter().map(|v| v.as_slice()).collect();
                let i: Vec<&[S]> = inh.iter().map(|v| v.as_slice()).collect();
                f.eval(&own, &e, &i, &mut vals[s]);
                let target: &mut Vec<S> = match slot {
                    None => &mut own,
                    Some((ArrowType::Excitatory, pos)) => &mut exc[pos],
                    Some((ArrowType::Inhibitory, pos)) => &mut inh[pos],
                };
                target[d] = orig;
            }
            for c in 0..k {
                let v = (vals[0][c] - vals[1][c]) / two_h;
                if !num_traits::Float::is_finite(v) {
                    return Err(Error::NonFinite(format!("derivative {p:?}")));
                }
                out[(c, d)] = v;
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowLabel {
    Excitatory,
    Inhibitory,
    Neutral,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArrowSign {
    pub head: usize,
    pub source: usize,
    pub arrow: ArrowType,
    pub multiplicity: u32,
    pub derivative: f64,
    pub label: ArrowLabel,
}

/// Sign of each input derivative at `x`; needs scalar node states.
pub fn classify_arrow_signs<S: Real>(
    g: &EiNetwork,
    field: &VectorField<S>,
    x: &[S],
    cfg: &DiffConfig,
) -> Result<Vec<ArrowSign>> {
    if field.state_dim() != 1 {
        return Err(Error::InvalidArgument(
            "arrow signs need scalar node states".into(),
        ));
    }
    if x.len() != field.dim() {
        return Err(Error::InvalidArgument("state has wrong dimension".into()));
    }
    if x.iter().any(|v| !num_traits::Float::is_finite(*v))
        || field
            .eval_vec(x)
            .iter()
            .any(|v| !num_traits::Float::is_finite(*v))
    {
        return Err(Error::NonFinite("field value".into()));
    }
    let mut out = Vec::new();
    for head in 0..g.n() {
        for arrow in ArrowType::BOTH {
            for source in 0..g.n() {
                let m = g.matrix(arrow).get(head, source);
                if m == 0 {
                    continue;
                }
                let d = field.partial(
                    x,
                    &Partial::Input {
                        head,
                        arrow,
                        source,
                    },
                    S::lit(cfg.step),
                )?[(0, 0)]
                    .to_f64_lossy();
                let label = if d.abs() < cfg.neutral_tol {
                    ArrowLabel::Neutral
                } else if d > 0.0 {
                    ArrowLabel::Excitatory
                } else {
                    ArrowLabel::Inhibitory
                };
                out.push(ArrowSign {
                    head,
                    source,
                    arrow,
                    multiplicity: m,
                    derivative: d,
                    label,
                });
            }
        }
    }
    Ok(out)
}
