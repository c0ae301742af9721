mod common;

use common::*;
use megaideal::fixtures;
use megaideal::lie::{BasisBracket, NilradicalStatus};
use megaideal::{Error, LieAlgebra, Matrix, Subspace};

fn algebra(names: &[&str], brackets: &[(usize, usize, &[i64])]) -> LieAlgebra {
    let bs: Vec<BasisBracket> = brackets
        .iter()
        .map(|(l, r, v)| BasisBracket { left: *l, right: *r, result: vec_i(v) })
        .collect();
    LieAlgebra::from_brackets("t", names.iter().map(|s| s.to_string()).collect(), &bs).unwrap()
}

#[test]
fn validation_examples() {
    assert!(fixtures::heisenberg().validate().is_valid());
    assert!(fixtures::m5().validate().is_valid());
    let at = |i: usize, j: usize, k: usize| (i * 3 + j) * 3 + k;
    let mut c = vec![int(0); 27];
    c[at(0, 1, 2)] = int(1);
    c[at(1, 0, 2)] = int(1);
    let bad = LieAlgebra::from_tensor("bad", vec!["e1".into(), "e2".into(), "e3".into()], c);
    assert_eq!(bad.validate().antisymmetry_violations, vec![[0, 1, 2]]);
}

#[test]
fn adjoint_examples() {
    assert!(LieAlgebra::abelian(3).ad(&vec_i(&[1, 2, 3])).is_zero());
    let m5 = fixtures::m5();
    let ad = m5.ad_basis(3);
    let expected = Matrix::from_i64(&[
        &[0, 1, 0, 0, 0],
        &[0, 0, 2, 0, 0],
        &[0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 1],
        &[0, 0, 0, 0, 0],
    ]);
    assert_eq!(ad, expected);
    let sl2 = fixtures::sl2_ehf();
    let d = sl2.ad_basis(1);
    assert_eq!(d, Matrix::from_i64(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, -2]]));
}

#[test]
fn m5_structure() {
    let g = fixtures::m5();
    let full = g.full();
    let d1 = g.bracket_subspaces(&full, &full);
    assert_eq!(d1, q(5, &[1, 2, 3, 4]));
    assert_eq!(g.bracket_subspaces(&d1, &d1), q(5, &[1, 2]));
    assert!(g.bracket_subspaces(&full, &Subspace::zero(5)).is_zero());
    assert_eq!(g.center(), q(5, &[1]));
    assert_eq!(g.centralizer(&full, &q(5, &[1, 2])), q(5, &[1, 2, 3]));
    assert_eq!(g.normalizer(&full, &q(5, &[1])), full);

    let derived = g.derived_series();
    assert_eq!(
        derived.terms,
        vec![full.clone(), q(5, &[1, 2, 3, 4]), q(5, &[1, 2]), Subspace::zero(5)]
    );
    assert!(g.is_solvable() && !g.is_nilpotent());
    let upper = g.upper_central_series();
    assert_eq!(upper.terms, vec![q(5, &[1])]);
    assert!(upper.stabilized);
    assert_eq!(g.radical(), full);
}

#[test]
fn heisenberg_structure() {
    let h = fixtures::heisenberg();
    assert_eq!(h.derived_series().terms, vec![h.full(), q(3, &[3]), Subspace::zero(3)]);
    let (quot, proj) = h.quotient(&q(3, &[3])).unwrap();
    assert_eq!(quot.dim(), 2);
    assert!(quot.validate().is_valid());
    assert!(quot.basis_bracket(0, 1).iter().all(|x| *x == int(0)));
    assert_eq!(proj.rows(), 2);
    assert_eq!(h.nilradical_approx(), (h.full(), NilradicalStatus::Exact));
}

#[test]
fn quotients() {
    let g = fixtures::m5();
    let (quot, _) = g.quotient(&q(5, &[1])).unwrap();
    assert_eq!(quot.dim(), 4);
    assert!(quot.validate().is_valid());
    // q̄2..q̄5 become 0..3
    assert!(quot.basis_bracket(2, 0).iter().all(|x| *x == int(0)));
    assert_eq!(quot.basis_bracket(2, 1), &vec_i(&[2, 0, 0, 0])[..]);
    let (zero, _) = g.quotient(&g.full()).unwrap();
    assert_eq!(zero.dim(), 0);
    assert!(matches!(g.quotient(&q(5, &[2])), Err(Error::NotAnIdeal(_))));
}

#[test]
fn radicals() {
    assert!(fixtures::sl2_ehf().radical().is_zero());
    assert!(fixtures::sl2d().radical().is_zero());
    assert_eq!(fixtures::sl2_plus_center().radical(), q(4, &[4]));
}

#[test]
fn nilradical_cases() {
    let two = algebra(&["h", "e"], &[(0, 1, &[0, 1])]);
    assert_eq!(two.nilradical_approx(), (q(2, &[2]), NilradicalStatus::Exact));
    let rot = algebra(&["h", "e1", "e2"], &[(0, 1, &[0, 1, 1]), (0, 2, &[0, -1, 1])]);
    assert_eq!(rot.nilradical_approx(), (rot.full(), NilradicalStatus::Stalled));
}

#[test]
fn derivations_and_exponentials() {
    assert_eq!(LieAlgebra::abelian(3).derivations().len(), 9);
    let g = fixtures::m5();
    let e = g.exp_ad_nilpotent(&vec_i(&[0, 0, 0, 1, 0]), &int(1)).unwrap();
    let expected = Matrix::from_i64(&[
        &[1, 1, 1, 0, 0],
        &[0, 1, 2, 0, 0],
        &[0, 0, 1, 0, 0],
        &[0, 0, 0, 1, 1],
        &[0, 0, 0, 0, 1],
    ]);
    assert_eq!(e, expected);
    assert!(g.preserves_brackets(&e));
    assert!(matches!(
        fixtures::sl2_ehf().exp_ad_nilpotent(&vec_i(&[0, 1, 0]), &int(1)),
        Err(Error::NotNilpotent(_))
    ));
}

#[test]
fn invariants_on_fixtures() {
    for g in [
        fixtures::m5(),
        fixtures::sl2d(),
        fixtures::heisenberg(),
        fixtures::sl2_ehf(),
        fixtures::sl2_plus_center(),
    ] {
        let n = g.dim();
        let k = g.killing_form();
        assert_eq!(k, k.transpose(), "{}", g.name());
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let xy = g.basis_bracket(x, y);
                    let yz = g.basis_bracket(y, z);
                    let lhs: megaideal::Rational = (0..n).map(|i| &xy[i] * k.get(i, z)).sum();
                    let rhs: megaideal::Rational = (0..n).map(|i| k.get(x, i) * &yz[i]).sum();
                    assert_eq!(lhs, rhs);
                }
            }
        }
        for d in g.derivations() {
            assert!(g.satisfies_leibniz(&d));
        }
        let rad = g.radical();
        assert!(g.is_ideal(&rad));
        assert!(g.subalgebra(&rad).unwrap().is_solvable());
        let (nil, _) = g.nilradical_approx();
        assert!(rad.contains_subspace(&nil));
        let full = g.full();
        for s in g.derived_series().terms.windows(2) {
            assert!(s[1].dim() < s[0].dim() || s[1] == s[0]);
        }
        let d = g.bracket_subspaces(&full, &full);
        assert!(g.is_ideal(&d));
        for i in 0..n {
            let mut x = vec_i(&vec![0; n]);
            x[i] = int(1);
            if let Ok(e) = g.exp_ad_nilpotent(&x, &frac(-3, 2)) {
                assert!(g.preserves_brackets(&e));
            }
        }
    }
}
