//! Printed representatives used as fixtures, and the dense reference path.
#![allow(dead_code)]

pub mod oracle;

use hamcoh::rational::{int, q};
use hamcoh::{AlgebraSpec, Cochain, Q};

pub fn spec(s: &str) -> AlgebraSpec {
    s.parse().expect("valid spec")
}

fn build(s: &str, terms: &[(&[&str], Q)]) -> Cochain {
    Cochain::from_terms(spec(s), terms).expect("fixture parses")
}

/// `a` read as one cochain with equal coefficients on all four tuples.
pub fn a_sum() -> Cochain {
    build(
        "SH(0|4)",
        &[
            (&["U_1", "U_1"], int(1)),
            (&["U_2", "U_2"], int(1)),
            (&["U_3", "U_3"], int(1)),
            (&["U_4", "U_4"], int(1)),
        ],
    )
}

/// `a` read as four separate cochains.
pub fn a_single_terms() -> Vec<Cochain> {
    ["U_4", "U_1", "U_2", "U_3"]
        .iter()
        .map(|u| build("SH(0|4)", &[(&[u, u], int(1))]))
        .collect()
}

pub fn b() -> Cochain {
    build(
        "SH(0|4)",
        &[
            (&["U_4", "U_1 U_2 U_3"], int(1)),
            (&["U_1", "U_2 U_3 U_4"], int(1)),
            (&["U_2", "U_1 U_3 U_4"], int(1)),
            (&["U_3", "U_1 U_2 U_4"], int(1)),
        ],
    )
}

pub fn c() -> Cochain {
    build(
        "SH(0|4)",
        &[
            (&["U_2 U_3 U_4", "U_2 U_3 U_4"], int(1)),
            (&["U_1 U_2 U_3", "U_1 U_2 U_3"], int(1)),
            (&["U_1 U_2 U_4", "U_1 U_2 U_4"], int(1)),
            (&["U_1 U_3 U_4", "U_1 U_3 U_4"], int(1)),
        ],
    )
}

/// The seven printed terms of `f`.
pub fn f() -> Cochain {
    build(
        "SH(0|4)",
        &[
            (&["U_1 U_4", "U_2 U_4", "U_3 U_4"], int(1)),
            (&["U_1 U_4", "U_1", "U_1 U_2 U_3"], q(1, 2)),
            (&["U_1 U_4", "U_4", "U_2 U_3 U_4"], q(1, 2)),
            (&["U_2 U_4", "U_2", "U_1 U_2 U_3"], q(1, 2)),
            (&["U_2 U_4", "U_4", "U_1 U_3 U_4"], q(-1, 2)),
            (&["U_3 U_4", "U_3", "U_1 U_2 U_3"], q(1, 2)),
            (&["U_3 U_4", "U_4", "U_1 U_2 U_4"], q(1, 2)),
        ],
    )
}

pub fn sh3_a() -> Cochain {
    build(
        "SH(0|3)",
        &[
            (&["U_1", "U_1"], int(1)),
            (&["U_2", "U_2"], int(1)),
            (&["U_3", "U_3"], int(1)),
        ],
    )
}

pub fn sh3_f() -> Cochain {
    build("SH(0|3)", &[(&["U_1 U_2", "U_1 U_3", "U_2 U_3"], int(1))])
}

pub fn hhat_a7() -> Cochain {
    build(
        "HHat(2|0)",
        &[
            (&["q", "p", "q^2", "p q", "p^2", "q^3", "p^3"], int(1)),
            (&["q", "p", "q^2", "p q", "p^2", "p q^2", "p^2 q"], int(-3)),
        ],
    )
}

pub fn grading_cochain(s: &str) -> Cochain {
    build(s, &[(&["G"], int(1))])
}
