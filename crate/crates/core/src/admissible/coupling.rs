use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Float;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use super::expr::Expr;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Coupling function shared by all nodes of one input class.
///
/// Implementations must be stateless: an assembled field may be evaluated from
/// several threads at once.
pub trait CouplingFunction<S>: Send + Sync {
    /// `own` is the node's state, `exc`/`inh` the states feeding the two
    /// overlined groups; every slice has the node state dimension.
    fn eval(&self, own: &[S], exc: &[&[S]], inh: &[&[S]], out: &mut [S]);

    /// Declared `(excitatory, inhibitory)` group sizes, if fixed.
    fn arity(&self) -> Option<(usize, usize)> {
        None
    }

    /// Builtins are symmetric by construction and skip randomized validation.
    fn symmetric_by_construction(&self) -> bool {
        false
    }
}

/// Wraps a caller-supplied closure.
pub struct FnCoupling<F> {
    pub f: F,
    pub arity: Option<(usize, usize)>,
}

impl<F> FnCoupling<F> {
    pub fn new(f: F) -> Self {
        FnCoupling { f, arity: None }
    }
}

impl<S, F> CouplingFunction<S> for FnCoupling<F>
where
    F: Fn(&[S], &[&[S]], &[&[S]], &mut [S]) + Send + Sync,
{
    fn eval(&self, own: &[S], exc: &[&[S]], inh: &[&[S]], out: &mut [S]) {
        (self.f)(own, exc, inh, out)
    }

    fn arity(&self) -> Option<(usize, usize)> {
        self.arity
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Inputs enter linearly.
    Linear,
    /// `u^n / (K^n + u^n)` for `u > 0`, zero otherwise.
    Hill { exponent: f64, half: f64 },
    /// `1 / (1 + exp(-gain (u - threshold)))`.
    Sigmoid { gain: f64, threshold: f64 },
}

/// `x' = internal(x) + w_exc * sum(phi(u)) + w_inh * sum(phi(v))`, componentwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Builtin {
    pub family: Family,
    pub internal: Expr,
    pub w_exc: f64,
    pub w_inh: f64,
}

impl Builtin {
    pub fn linear(internal: &str, w_exc: f64, w_inh: f64) -> Result<Self> {
        Ok(Builtin {
            family: Family::Linear,
            internal: Expr::parse(internal)?,
            w_exc,
            w_inh,
        })
    }

    fn response<S: Real>(&self, u: S) -> S {
        match self.family {
            Family::Linear => u,
            Family::Hill { exponent, half } => {
                if u <= S::zero() {
                    S::zero()
                } else {
                    let un = num_traits::Float::powf(u, S::lit(exponent));
                    un / (num_traits::Float::powf(S::lit(half), S::lit(exponent)) + un)
                }
            }
            Family::Sigmoid { gain, threshold } => {
                S::one()
                    / (S::one() + num_traits::Float::exp(-S::lit(gain) * (u - S::lit(threshold))))
            }
        }
    }
}

impl<S: Real> CouplingFunction<S> for Builtin {
    fn eval(&self, own: &[S], exc: &[&[S]], inh: &[&[S]], out: &mut [S]) {
        for c in 0..own.len() {
            let mut v = S::lit(self.internal.eval(own[c].to_f64_lossy()));
            for u in exc {
                v += S::lit(self.w_exc) * self.response(u[c]);
            }
            for u in inh {
                v += S::lit(self.w_inh) * self.response(u[c]);
            }
            out[c] = v;
        }
    }

    fn symmetric_by_construction(&self) -> bool {
        true
    }
}

/// Random smooth function built from power sums of each group, so it is
/// symmetric by construction. The cubic damping keeps trajectories bounded.
#[derive(Debug, Clone)]
pub struct SymmetricPolynomial<S> {
    k: usize,
    constant: Vec<S>,
    lin_own: Vec<S>,
    quad_own: Vec<S>,
    cubic: S,
    lin_group: [Vec<S>; 2],
    quad_group: [Vec<S>; 2],
    cross: Vec<S>,
}

impl<S: Real> SymmetricPolynomial<S> {
    pub fn random<R: Rng>(k: usize, rng: &mut R) -> Self {
        let mut draw = |len: usize, scale: f64| -> Vec<S> {
            (0..len)
                .map(|_| S::lit(rng.gen_range(-scale..scale)))
                .collect()
        };
        let constant = draw(k, 0.5);
        let lin_own = draw(k * k, 1.0);
        let quad_own = draw(k, 0.5);
        let lin_group = [draw(k * k, 1.0), draw(k * k, 1.0)];
        let quad_group = [draw(k, 0.3), draw(k, 0.3)];
        let cross = draw(k, 0.3);
        SymmetricPolynomial {
            k,
            constant,
            lin_own,
            quad_own,
            cubic: S::lit(rng.gen_range(0.5..1.5)),
            lin_group,
            quad_group,
            cross,
        }
    }
}

impl<S: Real> CouplingFunction<S> for SymmetricPolynomial<S> {
    fn eval(&self, own: &[S], exc: &[&[S]], inh: &[&[S]], out: &mut [S]) {
        let k = self.k;
        let sums = |grp: &[&[S]], c: usize| -> (S, S) {
            grp.iter().fold((S::zero(), S::zero()), |(a, b), u| {
                (a + u[c], b + u[c] * u[c])
            })
        };
        for c in 0..k {
            let x = own[c];
            let mut v = self.constant[c] + self.quad_own[c] * x * x - self.cubic * x * x * x;
            for d in 0..k {
                v += self.lin_own[c * k + d] * own[d];
            }
            for (gi, grp) in [exc, inh].into_iter().enumerate() {
                for d in 0..k {
                    v += self.lin_group[gi][c * k + d] * sums(grp, d).0;
                }
                v += self.quad_group[gi][c] * sums(grp, c).1;
            }
            v += self.cross[c] * x * sums(exc, c).0;
            out[c] = v;
        }
    }

    fn symmetric_by_construction(&self) -> bool {
        true
    }
}

/// One coupling function per input class (indexed like `EiNetwork::input_classes`).
#[derive(Clone)]
pub struct CouplingSpec<S> {
    pub state_dim: usize,
    pub classes: BTreeMap<usize, Arc<dyn CouplingFunction<S>>>,
    pub default: Option<Arc<dyn CouplingFunction<S>>>,
}

impl<S: Real> CouplingSpec<S> {
    pub fn uniform(state_dim: usize, f: Arc<dyn CouplingFunction<S>>) -> Self {
        CouplingSpec {
            state_dim,
            classes: BTreeMap::new(),
            default: Some(f),
        }
    }

    pub fn per_class(state_dim: usize, fs: Vec<Arc<dyn CouplingFunction<S>>>) -> Self {
        CouplingSpec {
            state_dim,
            classes: fs.into_iter().enumerate().collect(),
            default: None,
        }
    }

    pub fn function_for(&self, class: usize) -> Option<&Arc<dyn CouplingFunction<S>>> {
        self.classes.get(&class).or(self.default.as_ref())
    }

    /// Random symmetric polynomial per class, reproducible from `rng`.
    pub fn random<R: Rng>(n_classes: usize, state_dim: usize, rng: &mut R) -> Self {
        let fs = (0..n_classes)
            .map(|_| {
                Arc::new(SymmetricPolynomial::<S>::random(state_dim, rng))
                    as Arc<dyn CouplingFunction<S>>
            })
            .collect();
        Self::per_class(state_dim, fs)
    }

    /// Parses `{"state_dim": k, "class_0": {...}, "default": {...}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let map: BTreeMap<String, serde_json::Value> =
            serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))?;
        let mut spec = CouplingSpec {
            state_dim: 1,
            classes: BTreeMap::new(),
            default: None,
        };
        for (key, value) in map {
            if key == "state_dim" {
                spec.state_dim = value
                    .as_u64()
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Error::Spec("bad state_dim".into()))?
                    as usize;
                continue;
            }
            let f: Arc<dyn CouplingFunction<S>> = Arc::new(parse_class(value)?);
            if key == "default" {
                spec.default = Some(f);
            } else if let Some(idx) = key.strip_prefix("class_") {
                let idx: usize = idx
                    .parse()
                    .map_err(|_| Error::Spec(format!("bad key {key:?}")))?;
                spec.classes.insert(idx, f);
            } else {
                return Err(Error::Spec(format!("unknown key {key:?}")));
            }
        }
        Ok(spec)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Weights {
    #[serde(default = "one")]
    exc: f64,
    #[serde(default = "minus_one")]
    inh: f64,
}

fn one() -> f64 {
    1.0
}
fn minus_one() -> f64 {
    -1.0
}
fn two() -> f64 {
    2.0
}
fn zero() -> f64 {
    0.0
}
fn default_internal() -> String {
    "-x".into()
}
fn default_weights() -> Weights {
    Weights {
        exc: 1.0,
        inh: -1.0,
    }
}

#[derive(Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
enum ClassJson {
    Linear {
        #[serde(default = "default_internal")]
        internal: String,
        #[serde(default = "default_weights")]
        weights: Weights,
    },
    Hill {
        #[serde(default = "default_internal")]
        internal: String,
        #[serde(default = "default_weights")]
        weights: Weights,
        #[serde(default = "two")]
        exponent: f64,
        #[serde(default = "one")]
        half: f64,
    },
    Sigmoid {
        #[serde(default = "default_internal")]
        internal: String,
        #[serde(default = "default_weights")]
        weights: Weights,
        #[serde(default = "one")]
        gain: f64,
        #[serde(default = "zero")]
        threshold: f64,
    },
}

fn parse_class(v: serde_json::Value) -> Result<Builtin> {
    let c: ClassJson = serde_json::from_value(v).map_err(|e| Error::Spec(e.to_string()))?;
    let (family, internal, w) = match c {
        ClassJson::Linear { internal, weights } => (Family::Linear, internal, weights),
        ClassJson::Hill {
            internal,
            weights,
            exponent,
            half,
        } => (Family::Hill { exponent, half }, internal, weights),
        ClassJson::Sigmoid {
            internal,
            weights,
            gain,
            threshold,
        } => (Family::Sigmoid { gain, threshold }, internal, weights),
    };
    Ok(Builtin {
        family,
        internal: Expr::parse(&internal)?,
        w_exc: w.exc,
        w_inh: w.inh,
    })
}

/// Randomized check that permuting arguments inside each group leaves the
/// output unchanged to `1e-12` relative.
pub fn validate_symmetry<S: Real>(
    f: &dyn CouplingFunction<S>,
    arity: (usize, usize),
    k: usize,
    trials: usize,
    seed: u64,
) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = S::lit(1e-12);
    for _ in 0..trials {
        let mut vec_k = || {
            (0..k)
                .map(|_| S::lit(rng.gen_range(-1.0..1.0)))
                .collect::<Vec<S>>()
        };
        let own = vec_k();
        let mut exc: Vec<Vec<S>> = (0..arity.0).map(|_| vec_k()).collect();
        let mut inh: Vec<Vec<S>> = (0..arity.1).map(|_| vec_k()).collect();
        let run = |exc: &[Vec<S>], inh: &[Vec<S>]| {
            let e: Vec<&[S]> = exc.iter().map(|v| v.as_slice()).collect();
            let i: Vec<&[S]> = inh.iter().map(|v| v.as_slice()).collect();
            let mut out = vec![S::zero(); k];
            f.eval(&own, &e, &i, &mut out);
            out
        };
        let base = run(&exc, &inh);
        exc.shuffle(&mut rng);
        inh.shuffle(&mut rng);
        let other = run(&exc, &inh);
        for (a, b) in base.iter().zip(&other) {
            let scale = Float::max(Float::max(S::one(), Float::abs(*a)), Float::abs(*b));
            if !(Float::abs(*a - *b) <= tol * scale) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_builtin_values() {
        let f = Builtin::linear("-x", 2.0, -1.0).unwrap();
        let mut out = [0.0f64];
        CouplingFunction::<f64>::eval(&f, &[1.0], &[&[3.0], &[1.0]], &[&[0.5]], &mut out);
        assert_eq!(out[0], -1.0 + 8.0 - 0.5);
    }

    #[test]
    fn json_spec() {
        let spec = CouplingSpec::<f64>::from_json(
            r#"{"class_0": {"family": "linear", "internal": "-x", "weights": {"exc": 1, "inh": -1}},
                "class_1": {"family": "hill", "exponent": 3}}"#,
        )
        .unwrap();
        assert_eq!(spec.state_dim, 1);
        assert!(spec.function_for(1).is_some() && spec.function_for(2).is_none());
        assert!(CouplingSpec::<f64>::from_json(r#"{"class_0": {"family": "cubic"}}"#).is_err());
        assert!(CouplingSpec::<f64>::from_json(r#"{"klass": {}}"#).is_err());
    }

    #[test]
    fn symmetry_validation() {
        let sym = FnCoupling::new(|x: &[f64], e: &[&[f64]], _: &[&[f64]], out: &mut [f64]| {
            out[0] = -x[0] + e.iter().map(|u| u[0].sin()).sum::<f64>();
        });
        assert!(validate_symmetry(&sym, (3, 0), 1, 10, 1));
        let asym = FnCoupling::new(|x: &[f64], e: &[&[f64]], _: &[&[f64]], out: &mut [f64]| {
            out[0] = -x[0] + e[0][0] - 2.0 * e[1][0];
        });
        assert!(!validate_symmetry(&asym, (2, 0), 1, 10, 1));
    }
}
