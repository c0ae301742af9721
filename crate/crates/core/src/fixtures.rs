//! Shipped algebras.

use crate::format::parse_algebra;
use crate::lie::{BasisBracket, LieAlgebra};
use crate::rational::int;

pub const M5_JSON: &str = include_str!("../fixtures/m5.json");
pub const SL2D_JSON: &str = include_str!("../fixtures/sl2d.json");
pub const FAMILY_JSON: &str = include_str!("../fixtures/family.json");

/// Basis `(G1, F1, F2, Pt, Dt)`.
pub fn m5() -> LieAlgebra {
    parse_algebra(M5_JSON).expect("shipped fixture")
}

/// `sl(2)` realized as `(D(1), D(x), D(x²))`.
pub fn sl2d() -> LieAlgebra {
    parse_algebra(SL2D_JSON).expect("shipped fixture")
}

fn build(name: &str, basis: &[&str], brackets: &[(usize, usize, &[(usize, i64)])]) -> LieAlgebra {
    let n = basis.len();
    let brackets: Vec<BasisBracket> = brackets
        .iter()
        .map(|(left, right, terms)| {
            let mut result = vec![int(0); n];
            for &(k, v) in *terms {
                result[k] = int(v);
            }
            BasisBracket {
                left: *left,
                right: *right,
                result,
            }
        })
        .collect();
    LieAlgebra::from_brackets(
        name.to_string(),
        basis.iter().map(|s| s.to_string()).collect(),
        &brackets,
    )
    .expect("built-in fixture")
}

/// `[e1, e2] = e3`.
pub fn heisenberg() -> LieAlgebra {
    build("heisenberg", &["e1", "e2", "e3"], &[(0, 1, &[(2, 1)])])
}

/// `sl(2)` in the basis `(e, h, f)`.
pub fn sl2_ehf() -> LieAlgebra {
    build(
        "sl2",
        &["e", "h", "f"],
        &[(1, 0, &[(0, 2)]), (1, 2, &[(2, -2)]), (0, 2, &[(1, 1)])],
    )
}

/// `sl(2) ⊕ ⟨z⟩` with `z` central.
pub fn sl2_plus_center() -> LieAlgebra {
    build(
        "sl2+z",
        &["e", "h", "f", "z"],
        &[(1, 0, &[(0, 2)]), (1, 2, &[(2, -2)]), (0, 2, &[(1, 1)])],
    )
}

/// Looks up a shipped or built-in algebra by name.
pub fn by_name(name: &str) -> Option<LieAlgebra> {
    match name.to_ascii_lowercase().as_str() {
        "m5" => Some(m5()),
        "sl2d" => Some(sl2d()),
        "heisenberg" => Some(heisenberg()),
        "sl2" => Some(sl2_ehf()),
        "sl2+z" => Some(sl2_plus_center()),
        _ => None,
    }
}
