mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{net, tables};
use einet::admissible::{
    assemble_vector_field, signature, symbolic_jacobian, Builtin, CouplingFunction, CouplingSpec,
    FnCoupling, SymmetricPolynomial,
};
use einet::sim::finite_diff_jacobian;
use einet::{enumerate_networks, EiNetwork, EnumerationSpec, NetworkClass};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn restricted(two_types: bool, p: [u32; 4]) -> EiNetwork {
    tables::restricted(two_types, p)
}

fn check(rows: Vec<(EiNetwork, Vec<String>)>) {
    for (g, want) in rows {
        assert_eq!(signature(&g).latex_lines(), want, "{g}");
    }
}

#[test]
fn rei_table() {
    check(tables::rei_table());
}

#[test]
fn pei_table() {
    check(tables::pei_table());
}

#[test]
fn uei_table() {
    check(tables::uei_table());
}

#[test]
fn cei_table() {
    check(tables::cei_table());
}

#[test]
fn unicode_rendering() {
    let o = restricted(true, [0, 2, 2, 0]);
    assert_eq!(
        signature(&o).unicode_lines(),
        ["ẋ1 = f(x1+; x̄2−,x̄2−)", "ẋ2 = g(x2−; x̄1+,x̄1+)"]
    );
    assert_eq!(
        signature(&common::smolen_rei()).to_string(),
        "ẋ1 = f(x1+; x1+; x2−), ẋ2 = g(x2−; x1+; x2−)"
    );
}

#[test]
fn function_symbols_follow_input_classes() {
    let ring = EiNetwork::from_rows(
        None,
        vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]],
        vec![vec![0; 3]; 3],
    )
    .unwrap();
    let s = signature(&ring);
    assert!(s.equations.iter().all(|e| e.function == "f"));
    let g = EiNetwork::from_rows(
        None,
        vec![vec![0, 0, 0], vec![1, 0, 0], vec![1, 0, 1]],
        vec![vec![0; 3]; 3],
    )
    .unwrap();
    let s = signature(&g);
    let fs: Vec<&str> = s.equations.iter().map(|e| e.function.as_str()).collect();
    assert_eq!(fs, ["f", "g", "h"]);
}

#[test]
fn jacobian_symbols() {
    assert_eq!(
        symbolic_jacobian(&common::smolen_rei()).to_string(),
        "[[a1+b1, c1],[e1, d1+f1]]"
    );
    assert_eq!(
        symbolic_jacobian(&restricted(true, [0, 1, 0, 0])).to_string(),
        "[[a1, 0],[e1, d1]]"
    );
    let uei = net(Some("EI"), [[0, 1], [1, 0]], [[0, 0], [1, 0]]);
    assert_eq!(symbolic_jacobian(&uei).to_string(), "[[a, b2],[e1+f1, d]]");
}

fn catalogued() -> Vec<EiNetwork> {
    let mut all = BTreeSet::new();
    for class in [
        NetworkClass::Rei,
        NetworkClass::Uei,
        NetworkClass::Pei,
        NetworkClass::Cei,
    ] {
        all.extend(enumerate_networks(&EnumerationSpec::two_node(class, 2)).unwrap());
    }
    all.into_iter().collect()
}

/// Largest entrywise relative gap between the full finite-difference Jacobian
/// and the symbolic matrix filled with per-slot derivatives.
fn jacobian_gap(g: &EiNetwork, k: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = CouplingSpec::<f64>::random(g.input_classes().len(), k, &mut rng);
    let field = assemble_vector_field(g, &spec).unwrap();
    let x: Vec<f64> = (0..field.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let numeric = finite_diff_jacobian(|y, d| field.eval(y, d), &x, 1e-5).unwrap();
    let sym = symbolic_jacobian(g);
    let part = |p: &_| field.partial(&x, p, 1e-5).unwrap();
    let value: DMatrix<f64> = sym.instantiate(k, part);
    let scale: DMatrix<f64> = sym.instantiate_magnitude(k, part);
    numeric
        .iter()
        .zip(value.iter())
        .zip(scale.iter())
        .map(|((a, b), s)| (a - b).abs() / s.max(1e-3))
        .fold(0.0, f64::max)
}

#[test]
fn jacobian_matches_finite_differences() {
    for g in catalogued() {
        for t in 0..20 {
            let gap = jacobian_gap(&g, 1, 100 + t);
            assert!(gap < 1e-6, "{g} trial {t}: {gap:e}");
        }
    }
}

#[test]
fn jacobian_matches_for_vector_states() {
    for g in catalogued().iter().step_by(5) {
        let gap = jacobian_gap(g, 2, 7);
        assert!(gap < 1e-6, "{g}: {gap:e}");
    }
}

#[test]
fn random_polynomials_are_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 1..=3 {
        let f = SymmetricPolynomial::<f64>::random(k, &mut rng);
        assert!(einet::admissible::validate_symmetry(&f, (3, 2), k, 32, 9));
    }
    let skew = FnCoupling::new(|x: &[f64], e: &[&[f64]], _: &[&[f64]], o: &mut [f64]| {
        o[0] = -x[0]
            + e.iter()
                .enumerate()
                .map(|(j, u)| (j + 1) as f64 * u[0])
                .sum::<f64>();
    });
    assert!(!einet::admissible::validate_symmetry(
        &skew,
        (2, 0),
        1,
        8,
        1
    ));
}

#[test]
fn input_equivalent_nodes_share_a_function() {
    let h1 = restricted(false, [1, 1, 0, 0]);
    let spec = CouplingSpec::<f64>::per_class(
        1,
        vec![Arc::new(Builtin::linear("-x", 2.0, -1.0).unwrap())],
    );
    let field = assemble_vector_field(&h1, &spec).unwrap();
    assert_eq!(field.eval_vec(&[1.0, 1.0]), vec![1.0, 1.0]);
    let rei = restricted(true, [1, 1, 0, 0]);
    assert!(assemble_vector_field(&rei, &spec).is_err());
}

#[test]
fn linear_field_is_a_span_element() {
    let g = common::smolen_pei();
    let f: Arc<dyn CouplingFunction<f64>> = Arc::new(Builtin::linear("-3*x", 2.0, -5.0).unwrap());
    let field = assemble_vector_field(&g, &CouplingSpec::uniform(1, f)).unwrap();
    let jac = finite_diff_jacobian(|y, d| field.eval(y, d), &[0.2, -0.4], 1e-5).unwrap();
    let fam = g.adjacency_family();
    let expected = |i: usize, j: usize| {
        -3.0 * fam[0].get(i, j) as f64 + 2.0 * fam[1].get(i, j) as f64
            - 5.0 * fam[2].get(i, j) as f64
    };
    for i in 0..2 {
        for j in 0..2 {
            assert!((jac[(i, j)] - expected(i, j)).abs() < 1e-8);
        }
    }
}

#[test]
fn coupling_spec_json() {
    let spec = CouplingSpec::<f64>::from_json(
        r#"{"state_dim": 1, "class_0": {"family": "hill", "exponent": 3}, "default": {"family": "linear", "internal": "-x^3 + x", "weights": {"exc": 0.5}}}"#,
    )
    .unwrap();
    let field = assemble_vector_field(&restricted(true, [0, 1, 0, 0]), &spec).unwrap();
    let v = field.eval_vec(&[1.0, 2.0]);
    assert!((v[0] + 1.0).abs() < 1e-12);
    assert!((v[1] + 5.5).abs() < 1e-12);
    assert!(CouplingSpec::<f64>::from_json(r#"{"class_0": {"family": "cubic"}}"#).is_err());
    assert!(CouplingSpec::<f64>::from_json(r#"{"bogus": {"family": "linear"}}"#).is_err());
}
