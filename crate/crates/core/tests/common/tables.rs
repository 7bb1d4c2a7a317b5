//! Admissible ODEs of the table representatives, transcribed by hand.

use einet::EiNetwork;

use super::net;

type M2 = [[u32; 2]; 2];
const Z: M2 = [[0, 0], [0, 0]];

pub fn restricted(two_types: bool, [a, b, c, d]: [u32; 4]) -> EiNetwork {
    net(
        two_types.then_some("EI"),
        [[a, 0], [b, 0]],
        [[0, c], [0, d]],
    )
}

/// Full rendered lines for a pair of right-hand sides.
pub fn lines(want: [&str; 2]) -> Vec<String> {
    want.iter()
        .enumerate()
        .map(|(k, w)| format!("\\dot{{x}}_{} = {w}", k + 1))
        .collect()
}

pub fn rei_table() -> Vec<(EiNetwork, Vec<String>)> {
    let rows: [(&str, [u32; 4], [&str; 2]); 15] = [
        ("a", [0, 1, 0, 0], ["f(x^+_1)", "g(x^-_2; x^+_1)"]),
        (
            "b",
            [0, 2, 0, 0],
            ["f(x^+_1)", "g(x^-_2; \\overline{x^+_1,x^+_1})"],
        ),
        ("c", [0, 1, 0, 1], ["f(x^+_1)", "g(x^-_2; x^+_1; x^-_2)"]),
        ("d", [1, 1, 0, 0], ["f(x^+_1; x^+_1)", "g(x^-_2; x^+_1)"]),
        (
            "e",
            [2, 1, 0, 0],
            ["f(x^+_1; \\overline{x^+_1,x^+_1})", "g(x^-_2; x^+_1)"],
        ),
        (
            "f",
            [1, 2, 0, 0],
            ["f(x^+_1; x^+_1)", "g(x^-_2; \\overline{x^+_1,x^+_1})"],
        ),
        (
            "g",
            [1, 1, 0, 1],
            ["f(x^+_1; x^+_1)", "g(x^-_2; x^+_1; x^-_2)"],
        ),
        (
            "h",
            [2, 2, 0, 0],
            [
                "f(x^+_1; \\overline{x^+_1,x^+_1})",
                "g(x^-_2; \\overline{x^+_1,x^+_1})",
            ],
        ),
        (
            "i",
            [2, 1, 0, 1],
            [
                "f(x^+_1; \\overline{x^+_1,x^+_1})",
                "g(x^-_2; x^+_1; x^-_2)",
            ],
        ),
        ("j", [0, 1, 1, 0], ["f(x^+_1; x^-_2)", "g(x^-_2; x^+_1)"]),
        (
            "k",
            [1, 1, 1, 0],
            ["f(x^+_1; x^+_1; x^-_2)", "g(x^-_2; x^+_1)"],
        ),
        (
            "l",
            [0, 1, 2, 0],
            ["f(x^+_1; \\overline{x^-_2,x^-_2})", "g(x^-_2; x^+_1)"],
        ),
        (
            "m",
            [1, 2, 1, 0],
            [
                "f(x^+_1; x^+_1; x^-_2)",
                "g(x^-_2; \\overline{x^+_1,x^+_1})",
            ],
        ),
        (
            "n",
            [1, 1, 1, 1],
            ["f(x^+_1; x^+_1; x^-_2)", "g(x^-_2; x^+_1; x^-_2)"],
        ),
        (
            "o",
            [0, 2, 2, 0],
            [
                "f(x^+_1; \\overline{x^-_2,x^-_2})",
                "g(x^-_2; \\overline{x^+_1,x^+_1})",
            ],
        ),
    ];
    rows.into_iter()
        .map(|(_, p, want)| (restricted(true, p), lines(want)))
        .collect()
}

pub fn pei_table() -> Vec<(EiNetwork, Vec<String>)> {
    let rows: [([u32; 4], [&str; 2]); 9] = [
        ([0, 1, 0, 0], ["f(x_1)", "g(x_2; x^+_1)"]),
        ([0, 1, 0, 1], ["f(x_1)", "g(x_2; x^+_1; x^-_2)"]),
        ([0, 1, 1, 0], ["f(x_1; x^-_2)", "g(x_2; x^+_1)"]),
        (
            [2, 1, 0, 0],
            ["f(x_1; \\overline{x^+_1,x^+_1})", "g(x_2; x^+_1)"],
        ),
        ([1, 1, 1, 0], ["f(x_1; x^+_1; x^-_2)", "g(x_2; x^+_1)"]),
        (
            [1, 2, 0, 0],
            ["f(x_1; x^+_1)", "g(x_2; \\overline{x^+_1,x^+_1})"],
        ),
        (
            [1, 2, 1, 0],
            ["f(x_1; x^+_1; x^-_2)", "g(x_2; \\overline{x^+_1,x^+_1})"],
        ),
        ([1, 1, 0, 0], ["f(x_1; x^+_1)", "f(x_2; x^+_1)"]),
        (
            [1, 1, 1, 1],
            ["f(x_1; x^+_1; x^-_2)", "f(x_2; x^+_1; x^-_2)"],
        ),
    ];
    rows.into_iter()
        .map(|(p, want)| (restricted(false, p), lines(want)))
        .collect()
}

pub fn uei_table() -> Vec<(EiNetwork, Vec<String>)> {
    let rows: [(M2, M2, [&str; 2]); 4] = [
        ([[0, 0], [1, 0]], Z, ["f(x^+_1)", "g(x^-_2; x^+_1)"]),
        (
            [[0, 0], [1, 0]],
            [[0, 1], [0, 0]],
            ["f(x^+_1; x^-_2)", "g(x^-_2; x^+_1)"],
        ),
        ([[0, 1], [1, 0]], Z, ["f(x^+_1; x^+_2)", "g(x^-_2; x^+_1)"]),
        (
            [[0, 1], [2, 0]],
            Z,
            ["f(x^+_1; x^+_2)", "g(x^-_2; \\overline{x^+_1,x^+_1})"],
        ),
    ];
    rows.into_iter()
        .map(|(e, i, want)| (net(Some("EI"), e, i), lines(want)))
        .collect()
}

pub fn cei_table() -> Vec<(EiNetwork, Vec<String>)> {
    let rows: [(M2, M2, [&str; 2]); 15] = [
        ([[0, 0], [1, 0]], Z, ["f(x_1)", "g(x_2; x^+_1)"]),
        (
            [[0, 0], [1, 1]],
            Z,
            ["f(x_1)", "g(x_2; \\overline{x^+_1,x^+_2})"],
        ),
        (
            [[0, 0], [1, 0]],
            [[1, 0], [0, 0]],
            ["f(x_1; x^-_1)", "g(x_2; x^+_1)"],
        ),
        (
            [[0, 0], [1, 1]],
            [[1, 0], [0, 0]],
            ["f(x_1; x^-_1)", "g(x_2; \\overline{x^+_1,x^+_2})"],
        ),
        (
            [[1, 1], [1, 0]],
            Z,
            ["f(x_1; \\overline{x^+_1,x^+_2})", "g(x_2; x^+_1)"],
        ),
        (
            [[1, 1], [0, 0]],
            [[0, 0], [1, 0]],
            ["f(x_1; \\overline{x^+_1,x^+_2})", "g(x_2; x^-_1)"],
        ),
        (
            [[0, 1], [1, 0]],
            [[1, 0], [0, 0]],
            ["f(x_1; x^+_2; x^-_1)", "g(x_2; x^+_1)"],
        ),
        (
            [[0, 2], [1, 0]],
            Z,
            ["f(x_1; \\overline{x^+_2,x^+_2})", "g(x_2; x^+_1)"],
        ),
        (
            [[0, 0], [1, 0]],
            [[0, 1], [0, 0]],
            ["f(x_1; x^-_2)", "g(x_2; x^+_1)"],
        ),
        (
            [[0, 1], [2, 0]],
            [[1, 0], [0, 0]],
            ["f(x_1; x^+_2; x^-_1)", "g(x_2; \\overline{x^+_1,x^+_1})"],
        ),
        (
            [[1, 1], [0, 0]],
            [[0, 0], [1, 1]],
            [
                "f(x_1; \\overline{x^+_1,x^+_2})",
                "g(x_2; \\overline{x^-_1,x^-_2})",
            ],
        ),
        ([[1, 0], [1, 0]], Z, ["f(x_1; x^+_1)", "f(x_2; x^+_1)"]),
        ([[0, 1], [1, 0]], Z, ["f(x_1; x^+_2)", "f(x_2; x^+_1)"]),
        (
            [[1, 1], [2, 0]],
            Z,
            [
                "f(x_1; \\overline{x^+_1,x^+_2})",
                "f(x_2; \\overline{x^+_1,x^+_1})",
            ],
        ),
        (
            [[0, 1], [1, 0]],
            [[1, 0], [1, 0]],
            ["f(x_1; x^+_2; x^-_1)", "f(x_2; x^+_1; x^-_1)"],
        ),
    ];
    rows.into_iter()
        .map(|(e, i, want)| (net(None, e, i), lines(want)))
        .collect()
}
