//! Fixed-step integration, finite-difference Jacobians, Newton equilibria and
//! numerical synchrony checks.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::admissible::{assemble_vector_field, CouplingSpec};
use crate::error::{Error, Result};
use crate::net::EiNetwork;
use crate::scalar::Real;
use crate::synchrony::{is_balanced, Colouring};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory<S> {
    pub dt: S,
    pub times: Vec<S>,
    pub states: Vec<Vec<S>>,
}

impl<S: Real> Trajectory<S> {
    pub fn last(&self) -> &[S] {
        self.states
            .last()
            .expect("trajectory has the initial state")
    }
}

fn all_finite<S: Real>(v: &[S]) -> bool {
    v.iter().all(|x| num_traits::Float::is_finite(*x))
}

/// Classical fourth-order Runge-Kutta with a fixed step.
pub fn integrate<S: Real, F: Fn(&[S], &mut [S])>(
    f: F,
    x0: &[S],
    dt: S,
    steps: usize,
) -> Result<Trajectory<S>> {
    if !(dt > S::zero()) || steps == 0 {
        return Err(Error::InvalidArgument(
            "need dt > 0 and at least one step".into(),
        ));
    }
    let d = x0.len();
    let half = S::lit(0.5);
    let sixth = S::lit(1.0 / 6.0);
    let two = S::lit(2.0);
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (
        vec![S::zero(); d],
        vec![S::zero(); d],
        vec![S::zero(); d],
        vec![S::zero(); d],
        vec![S::zero(); d],
    );
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut x = x0.to_vec();
    times.push(S::zero());
    states.push(x.clone());
    for step in 1..=steps {
        f(&x, &mut k1);
        for i in 0..d {
            tmp[i] = x[i] + half * dt * k1[i];
        }
        f(&tmp, &mut k2);
        for i in 0..d {
            tmp[i] = x[i] + half * dt * k2[i];
        }
        f(&tmp, &mut k3);
        for i in 0..d {
            tmp[i] = x[i] + dt * k3[i];
        }
        f(&tmp, &mut k4);
        for i in 0..d {
            x[i] += dt * sixth * (k1[i] + two * k2[i] + two * k3[i] + k4[i]);
        }
        if !all_finite(&x) {
            return Err(Error::Divergence { step });
        }
        times.push(dt * S::lit(step as f64));
        states.push(x.clone());
    }
    Ok(Trajectory { dt, times, states })
}

/// Central-difference Jacobian.
pub fn finite_diff_jacobian<S: Real, F: Fn(&[S], &mut [S])>(
    f: F,
    x: &[S],
    h: S,
) -> Result<DMatrix<S>> {
    if !(h > S::zero()) {
        return Err(Error::InvalidArgument("step must be positive".into()));
    }
    let d = x.len();
    let mut probe = vec![S::zero(); d];
    f(x, &mut probe);
    let m = probe.len();
    let mut jac = DMatrix::zeros(m, d);
    let (mut plus, mut minus) = (vec![S::zero(); m], vec![S::zero(); m]);
    let mut xp = x.to_vec();
    for j in 0..d {
        xp[j] = x[j] + h;
        f(&xp, &mut plus);
        xp[j] = x[j] - h;
        f(&xp, &mut minus);
        xp[j] = x[j];
        for i in 0..m {
            jac[(i, j)] = (plus[i] - minus[i]) / (h + h);
        }
    }
    if jac.iter().any(|v| !num_traits::Float::is_finite(*v)) {
        return Err(Error::NonFinite("Jacobian entry".into()));
    }
    Ok(jac)
}

/// Damped Newton iteration with backtracking on the residual norm.
pub fn find_equilibrium<S: Real, F: Fn(&[S], &mut [S])>(
    f: F,
    guess: &[S],
    tol: S,
    max_iter: usize,
) -> Result<Vec<S>> {
    let d = guess.len();
    let h = S::lit(1e-6);
    let norm = |v: &[S]| num_traits::Float::sqrt(v.iter().fold(S::zero(), |a, &b| a + b * b));
    let mut x = guess.to_vec();
    let mut fx = vec![S::zero(); d];
    f(&x, &mut fx);
    for _ in 0..max_iter {
        let r = norm(&fx);
        if !num_traits::Float::is_finite(r) {
            return Err(Error::NonFinite("residual".into()));
        }
        if r < tol {
            return Ok(x);
        }
        let jac = finite_diff_jacobian(&f, &x, h)?;
        let rhs = DVector::from_iterator(d, fx.iter().map(|v| -*v));
        let step = jac
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::NoConvergence("singular Jacobian".into()))?;
        let mut t = S::one();
        let mut trial = vec![S::zero(); d];
        let mut ft = vec![S::zero(); d];
        loop {
            for i in 0..d {
                trial[i] = x[i] + t * step[i];
            }
            f(&trial, &mut ft);
            if norm(&ft) < r || t < S::lit(1e-10) {
                break;
            }
            t *= S::lit(0.5);
        }
        x.clone_from(&trial);
        fx.clone_from(&ft);
    }
    if norm(&fx) < tol {
        return Ok(x);
    }
    Err(Error::NoConvergence(format!(
        "residual {:e} after {max_iter} iterations",
        norm(&fx).to_f64_lossy()
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SyncCheck {
    pub trials: usize,
    pub horizon: f64,
    pub dt: f64,
    pub tol: f64,
    pub seed: u64,
    pub state_dim: usize,
}

impl Default for SyncCheck {
    fn default() -> Self {
        SyncCheck {
            trials: 20,
            horizon: 10.0,
            dt: 0.01,
            tol: 1e-8,
            seed: 7,
            state_dim: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub trial: usize,
    pub seed: u64,
    pub max_deviation: Option<f64>,
    pub diverged_at: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SyncVerdict {
    /// Balanced and every finite trial stayed within tolerance.
    Invariant,
    /// Balanced but some trial left the synchrony subspace.
    Violated,
    /// Not balanced and some trial left the subspace.
    CounterexampleFound,
    /// Not balanced, yet no trial left the subspace.
    NoCounterexample,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SyncReport {
    pub colouring: Colouring,
    pub balanced: bool,
    pub max_deviation: f64,
    pub verdict: SyncVerdict,
    /// Seed of the first trial that left the subspace.
    pub counterexample_seed: Option<u64>,
    pub trials: Vec<TrialReport>,
}

impl SyncReport {
    pub fn passed(&self) -> bool {
        self.verdict == SyncVerdict::Invariant
    }
}

/// Largest distance between same-coloured nodes along the trajectory.
pub fn colouring_deviation<S: Real>(traj: &Trajectory<S>, c: &Colouring, k: usize) -> f64 {
    let mut worst = 0.0f64;
    for x in &traj.states {
        for b in c.blocks() {
            for &i in &b[1..] {
                for d in 0..k {
                    worst = worst
                        .max(num_traits::Float::abs(x[i * k + d] - x[b[0] * k + d]).to_f64_lossy());
                }
            }
        }
    }
    worst
}

/// Integrates random admissible fields from random points of the polydiagonal
/// of `c`. Trial `t` uses seed `cfg.seed + t`.
pub fn check_synchrony_invariance(
    g: &EiNetwork,
    c: &Colouring,
    cfg: &SyncCheck,
) -> Result<SyncReport> {
    let balanced = is_balanced(g, c)?;
    if !(cfg.dt > 0.0) || !(cfg.horizon > 0.0) {
        return Err(Error::InvalidArgument("need dt > 0 and horizon > 0".into()));
    }
    let steps = (cfg.horizon / cfg.dt).round().max(1.0) as usize;
    let k = cfg.state_dim;
    let n_classes = g.input_classes().len();
    let trials: Vec<TrialReport> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let seed = cfg.seed.wrapping_add(t as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let spec = CouplingSpec::<f64>::random(n_classes, k, &mut rng);
            let field = assemble_vector_field(g, &spec)?;
            let mut x0 = vec![0.0; g.n() * k];
            for b in c.blocks() {
                let v: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
                for &i in b {
                    x0[i * k..(i + 1) * k].copy_from_slice(&v);
                }
            }
            Ok(
                match integrate(|x, dx| field.eval(x, dx), &x0, cfg.dt, steps) {
                    Ok(traj) => TrialReport {
                        trial: t,
                        seed,
                        max_deviation: Some(colouring_deviation(&traj, c, k)),
                        diverged_at: None,
                    },
                    Err(Error::Divergence { step }) => TrialReport {
                        trial: t,
                        seed,
                        max_deviation: None,
                        diverged_at: Some(step),
                    },
                    Err(e) => return Err(e),
                },
            )
        })
        .collect::<Result<_>>()?;
    let max_deviation = trials
        .iter()
        .filter_map(|t| t.max_deviation)
        .fold(0.0, f64::max);
    let counterexample_seed = trials
        .iter()
        .find(|t| t.max_deviation.is_some_and(|d| !(d < cfg.tol)))
        .map(|t| t.seed);
    let verdict = match (balanced, counterexample_seed.is_some()) {
        (true, false) => SyncVerdict::Invariant,
        (true, true) => SyncVerdict::Violated,
        (false, true) => SyncVerdict::CounterexampleFound,
        (false, false) => SyncVerdict::NoCounterexample,
    };
    Ok(SyncReport {
        colouring: c.clone(),
        balanced,
        max_deviation,
        verdict,
        counterexample_seed,
        trials,
    })
}
