//! Canonical small spaces shared by the unit-test suites. Each one pins a
//! distinct rung of the consistency hierarchy.

use crate::model::TypeSpace;
use crate::rational::Rational;

fn row(items: &[&str]) -> Vec<Rational> {
    items.iter().map(|s| s.parse().unwrap()).collect()
}

/// Crossed partitions, asymmetric rows: no common prior exists (the masses
/// would have to be all equal while one of them vanishes).
pub(crate) fn crossed_space() -> TypeSpace {
    TypeSpace::from_parts(
        vec!["w1".into(), "w2".into(), "w3".into(), "w4".into()],
        vec![
            (
                "P1".into(),
                vec![vec![0, 1], vec![2, 3]],
                vec![
                    row(&["1/2", "1/2", "0", "0"]),
                    row(&["1/2", "1/2", "0", "0"]),
                    row(&["0", "0", "1/2", "1/2"]),
                    row(&["0", "0", "1/2", "1/2"]),
                ],
            ),
            (
                "P2".into(),
                vec![vec![0, 3], vec![1, 2]],
                vec![
                    row(&["1/2", "0", "0", "1/2"]),
                    row(&["0", "1", "0", "0"]),
                    row(&["0", "1", "0", "0"]),
                    row(&["1/2", "0", "0", "1/2"]),
                ],
            ),
        ],
    )
    .unwrap()
}

/// Shared partition {w1,w2},{w3,w4}: consistent with the unique witness
/// (1/2, 1/2, 0, 0), but the component {w3,w4} induces an inconsistent
/// space, so universality fails there.
pub(crate) fn split_space() -> TypeSpace {
    TypeSpace::from_parts(
        vec!["w1".into(), "w2".into(), "w3".into(), "w4".into()],
        vec![
            (
                "P1".into(),
                vec![vec![0, 1], vec![2, 3]],
                vec![
                    row(&["1/2", "1/2", "0", "0"]),
                    row(&["1/2", "1/2", "0", "0"]),
                    row(&["0", "0", "1/2", "1/2"]),
                    row(&["0", "0", "1/2", "1/2"]),
                ],
            ),
            (
                "P2".into(),
                vec![vec![0, 1], vec![2, 3]],
                vec![
                    row(&["1/2", "1/2", "0", "0"]),
                    row(&["1/2", "1/2", "0", "0"]),
                    row(&["0", "0", "1", "0"]),
                    row(&["0", "0", "1", "0"]),
                ],
            ),
        ],
    )
    .unwrap()
}

/// Point masses anchor w1 and w4; the middle cell {w2,w3} can never carry
/// witness mass. Universally consistent, not strongly consistent.
pub(crate) fn two_anchor_space() -> TypeSpace {
    TypeSpace::from_parts(
        vec!["w1".into(), "w2".into(), "w3".into(), "w4".into()],
        vec![
            (
                "Anne".into(),
                vec![vec![0], vec![1, 2], vec![3]],
                vec![
                    row(&["1", "0", "0", "0"]),
                    row(&["0", "1/2", "1/2", "0"]),
                    row(&["0", "1/2", "1/2", "0"]),
                    row(&["0", "0", "0", "1"]),
                ],
            ),
            (
                "Ben".into(),
                vec![vec![0, 1], vec![2, 3]],
                vec![
                    row(&["1", "0", "0", "0"]),
                    row(&["1", "0", "0", "0"]),
                    row(&["0", "0", "0", "1"]),
                    row(&["0", "0", "0", "1"]),
                ],
            ),
        ],
    )
    .unwrap()
}

/// Crossed partitions with symmetric rows: the uniform vector is the unique
/// common prior and charges every cell, so the space is strongly consistent.
pub(crate) fn symmetric_crossed_space() -> TypeSpace {
    TypeSpace::from_parts(
        vec!["w1".into(), "w2".into(), "w3".into(), "w4".into()],
        vec![
            (
                "P1".into(),
                vec![vec![0, 1], vec![2, 3]],
                vec![
                    row(&["1/2", "1/2", "0", "0"]),
                    row(&["1/2", "1/2", "0", "0"]),
                    row(&["0", "0", "1/2", "1/2"]),
                    row(&["0", "0", "1/2", "1/2"]),
                ],
            ),
            (
                "P2".into(),
                vec![vec![0, 3], vec![1, 2]],
                vec![
                    row(&["1/2", "0", "0", "1/2"]),
                    row(&["0", "1/2", "1/2", "0"]),
                    row(&["0", "1/2", "1/2", "0"]),
                    row(&["1/2", "0", "0", "1/2"]),
                ],
            ),
        ],
    )
    .unwrap()
}
