mod common;

use std::collections::BTreeSet;

use common::{oracle_balanced, smolen_pei, smolen_rei, Raw};
use einet::synchrony::{is_balanced_invariant, set_partitions};
use einet::{
    balanced_colourings, classify_network, enumerate_networks, is_balanced, quotient, ArrowType,
    Colouring, EiNetwork, EnumerationSpec, Error, IntMatrix, NetworkClass, NodeType,
};
use proptest::prelude::*;

fn arb_network(n: usize) -> impl Strategy<Value = EiNetwork> {
    let entries = proptest::collection::vec(0u32..3, 2 * n * n);
    let types = proptest::option::of(proptest::collection::vec(any::<bool>(), n));
    (entries, types).prop_map(move |(v, t)| {
        let e = IntMatrix::from_flat(n, v[..n * n].to_vec());
        let i = IntMatrix::from_flat(n, v[n * n..].to_vec());
        match t {
            Some(ts) => EiNetwork::new(
                ts.into_iter()
                    .map(|x| {
                        if x {
                            NodeType::Excitatory
                        } else {
                            NodeType::Inhibitory
                        }
                    })
                    .collect(),
                e,
                i,
            ),
            None => EiNetwork::single_type(e, i),
        }
        .unwrap()
    })
}

fn all_colourings(n: usize) -> Vec<Colouring> {
    set_partitions(&(0..n).collect::<Vec<_>>())
        .into_iter()
        .map(|p| Colouring::new(n, p).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn balance_tests_agree_with_oracle(g in (1usize..4).prop_flat_map(arb_network)) {
        let raw = Raw::of(&g);
        let mut found = BTreeSet::new();
        for c in all_colourings(g.n()) {
            let oracle = c.refines_input_classes(&g) && oracle_balanced(&raw, c.blocks());
            match is_balanced(&g, &c) {
                Ok(b) => {
                    prop_assert_eq!(b, oracle, "{}", c);
                    prop_assert_eq!(is_balanced_invariant(&g, &c).unwrap(), oracle);
                }
                Err(Error::NotRefining(_)) => prop_assert!(!c.refines_input_classes(&g)),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
            if oracle {
                found.insert(c);
            }
        }
        let listed: BTreeSet<Colouring> = balanced_colourings(&g).into_iter().collect();
        prop_assert_eq!(listed, found);
    }

    #[test]
    fn quotients_have_balanced_sizes(g in (1usize..4).prop_flat_map(arb_network)) {
        for c in balanced_colourings(&g) {
            let q = quotient(&g, &c).unwrap();
            prop_assert_eq!(q.n(), c.blocks().len());
            for (b, blk) in c.blocks().iter().enumerate() {
                for t in ArrowType::BOTH {
                    for &i in blk {
                        prop_assert_eq!(q.matrix(t).row_sum(b), g.matrix(t).row_sum(i));
                    }
                }
            }
        }
    }
}

#[test]
fn smolen_colourings() {
    assert_eq!(balanced_colourings(&smolen_rei()), [Colouring::trivial(2)]);
    let pei = smolen_pei();
    let cs: Vec<String> = balanced_colourings(&pei)
        .iter()
        .map(|c| c.to_string())
        .collect();
    assert_eq!(cs, ["1|2", "1,2"]);
    let q = quotient(&pei, &"1,2".parse().unwrap()).unwrap();
    assert_eq!(q.n(), 1);
    assert_eq!((q.exc().get(0, 0), q.inh().get(0, 0)), (1, 1));
}

#[test]
fn unbalanced_quotient_is_rejected() {
    let g = common::net(None, [[0, 0], [1, 0]], [[0, 1], [0, 0]]);
    assert!(quotient(&g, &"1,2".parse().unwrap()).is_err());
    assert!(matches!(
        is_balanced(&g, &"1|2|3".parse().unwrap()),
        Err(Error::InvalidArgument(_))
    ));
}

fn mixed_output_block(g: &EiNetwork, c: &Colouring) -> bool {
    c.blocks().iter().any(|b| {
        b.iter().any(|&i| g.outputs(i, ArrowType::Excitatory))
            && b.iter().any(|&i| g.outputs(i, ArrowType::Inhibitory))
    })
}

#[test]
fn quotients_preserve_class_membership() {
    let kept = [NetworkClass::Rei, NetworkClass::Uei, NetworkClass::Cei];
    for class in [
        NetworkClass::Rei,
        NetworkClass::Uei,
        NetworkClass::Pei,
        NetworkClass::Cei,
    ] {
        for g in enumerate_networks(&EnumerationSpec::two_node(class, 2)).unwrap() {
            let before = classify_network(&g);
            for c in balanced_colourings(&g) {
                let after = classify_network(&quotient(&g, &c).unwrap());
                for k in kept {
                    if before.contains(&k) {
                        assert!(after.contains(&k), "{g} / {c} lost {k}");
                    }
                }
                if before.contains(&NetworkClass::Pei) {
                    assert_eq!(
                        after.contains(&NetworkClass::Pei),
                        !mixed_output_block(&g, &c),
                        "{g} / {c}"
                    );
                }
            }
        }
    }
}

#[test]
fn three_node_ring() {
    let ring = EiNetwork::from_rows(
        None,
        vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]],
        vec![vec![0; 3]; 3],
    )
    .unwrap();
    assert_eq!(balanced_colourings(&ring).len(), 2);
    let q = quotient(&ring, &"1,2,3".parse().unwrap()).unwrap();
    assert_eq!(q.exc().get(0, 0), 1);
}
