#![allow(dead_code)]

use std::path::PathBuf;

use megaideal::format::parse_fields;
use megaideal::poly::Poly;
use megaideal::{AutParametrization, PolyVectorField, Rational, Subspace};
use rand::Rng;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn vec_i(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

/// Coordinate span from 1-based indices, e.g. `q(5, &[1, 2, 4])`.
pub fn q(n: usize, one_based: &[usize]) -> Subspace {
    let idx: Vec<usize> = one_based.iter().map(|i| i - 1).collect();
    Subspace::coordinate(n, &idx)
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

/// Named fields of the shipped family file, in the requested order.
pub fn family_fields(names: &[&str]) -> Vec<(String, PolyVectorField)> {
    let (_, fields) = parse_fields(&read_fixture("family.json")).unwrap();
    names
        .iter()
        .map(|n| fields.iter().find(|(f, _)| f == n).unwrap().clone())
        .collect()
}

pub fn random_rational<R: Rng>(rng: &mut R, span: i64) -> Rational {
    frac(rng.random_range(-span..=span), rng.random_range(1..=4))
}

/// M5 brackets written out by hand over basis `q1..q5`:
/// `[q4,q5]=q4, [q5,q2]=q2, [q5,q3]=2q3, [q4,q2]=q1, [q4,q3]=2q2`.
pub fn m5_bracket(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let table: [(usize, usize, usize, i64); 5] =
        [(3, 4, 3, 1), (4, 1, 1, 1), (4, 2, 2, 2), (3, 1, 0, 1), (3, 2, 1, 2)];
    let mut out = vec![int(0); 5];
    for (i, j, k, c) in table {
        let c = int(c);
        out[k] += &c * (&x[i] * &y[j] - &x[j] * &y[i]);
    }
    out
}

/// Hand elimination of `A[q_i, q_j] = [A q_i, A q_j]` for upper-triangular `A`
/// on M5, with `A q_j = Σ_i a_ij q_i`:
///
/// - `[q4,q5]=q4`, q4-part: `a44 a55 = a44`, so `a55 = 1`
/// - q3-part: `-2 a34 a55 = a34`, so `a34 = 0`
/// - q2-part: `-a24 a55 - 2 a34 a45 + 2 a44 a35 = a24`, so `a24 = a44 a35`
/// - q1-part: `a44 a25 - a45 a24 = a14`
/// - `[q5,q3]=2q3`, q2-part: `2 a45 a33 + a55 a23 = 2 a23`, so `a23 = 2 a45 a33`
/// - q1-part: `a45 a23 = 2 a13`, so `a13 = a45² a33`
/// - `[q4,q3]=2q2`: `2 a44 a33 = 2 a22` and `a44 a23 = 2 a12`
/// - `[q4,q2]=q1`: `a44 a22 = a11`
/// - `[q5,q2]=q2`: `a45 a22 = a12`, consistent with the above
///
/// Free: `a33, a44, a45, a25, a35, a15`.
pub const M5_HAND_ELIMINATION: [(&str, &str); 9] = [
    ("a55", "1"),
    ("a34", "0"),
    ("a24", "a44*a35"),
    ("a14", "a44*a25 - a45*a44*a35"),
    ("a23", "2*a45*a33"),
    ("a13", "a45^2*a33"),
    ("a22", "a44*a33"),
    ("a12", "a45*a44*a33"),
    ("a11", "a44^2*a33"),
];

pub const M5_FREE: [&str; 6] = ["a33", "a44", "a45", "a25", "a35", "a15"];

/// The oracle matrix for given free values `(a33, a44, a45, a25, a35, a15)`.
pub fn m5_oracle_matrix(v: &[Rational; 6]) -> [[Rational; 5]; 5] {
    let [a33, a44, a45, a25, a35, a15] = v.clone();
    let z = int(0);
    let a24 = &a44 * &a35;
    let a14 = &a44 * &a25 - &a45 * &a24;
    let a23 = int(2) * &a45 * &a33;
    let a13 = &a45 * &a45 * &a33;
    let a22 = &a44 * &a33;
    let a12 = &a45 * &a22;
    let a11 = &a44 * &a22;
    [
        [a11, a12, a13, a14, a15],
        [z.clone(), a22, a23, a24, a25],
        [z.clone(), z.clone(), a33, z.clone(), a35],
        [z.clone(), z.clone(), z.clone(), a44, a45],
        [z.clone(), z.clone(), z.clone(), z, int(1)],
    ]
}

/// Oracle formula for `name` as a polynomial in the parametrization's unknowns.
pub fn oracle_poly(p: &AutParametrization, expr: &str) -> Poly {
    Poly::parse(expr, p.unknowns()).unwrap()
}

/// Value of `name` under the parametrization, as a polynomial.
pub fn solved_poly(p: &AutParametrization, name: &str) -> Poly {
    let u = p.shape.unknown_index(name).unwrap();
    p.value(u)
}
