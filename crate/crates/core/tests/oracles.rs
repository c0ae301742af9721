mod common;

use common::*;
use megaideal::fixtures;
use megaideal::lattice::LatticeMember;
use megaideal::{
    adapted_basis, analyze_automorphisms, check_invariant, closure, enumerate_coordinate_megaideals,
    essential_filter, inner_consistency, prop34, prop34_explained, shape_from_flag,
    structure_equations, triangular_solve, verify_megaideal, AutParametrization, ClosureOptions,
    LieAlgebra, Matrix, MegaidealLattice, Rational, Subspace,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lattice_of(g: &LieAlgebra) -> MegaidealLattice {
    closure(g, &[], ClosureOptions::default()).unwrap()
}

fn sample(p: &AutParametrization, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let values: Vec<Rational> = p
            .free_parameters
            .iter()
            .map(|_| random_rational(rng, 5))
            .collect();
        if p.admissible(&values).unwrap() {
            return p.instantiate(&values).unwrap();
        }
    }
}

/// Every vector with entries in `-2..=2`, zero excluded.
fn small_vectors(n: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    let total = 5usize.pow(n as u32);
    for code in 1..total {
        let mut c = code;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = (c % 5) as i64 - 2;
                c /= 5;
                d
            })
            .collect();
        if v.iter().any(|x| *x != 0) {
            out.push(vec_i(&v));
        }
    }
    out
}

fn ideal_by_hand(g: &LieAlgebra, s: &Subspace) -> bool {
    let n = g.dim();
    s.basis().row_vectors().all(|v| {
        (0..n).all(|i| {
            let mut e = vec_i(&vec![0; n]);
            e[i] = int(1);
            s.contains(&g.bracket(&e, v)).unwrap()
        })
    })
}

#[test]
fn sl2d_has_no_proper_ideals() {
    let g = fixtures::sl2d();
    let vs = small_vectors(3);
    let mut found = Vec::new();
    for (a, u) in vs.iter().enumerate() {
        for w in vs.iter().skip(a) {
            let s = Subspace::span(3, vec![u.clone(), w.clone()]);
            if !s.is_full() && ideal_by_hand(&g, &s) {
                found.push(s);
            }
        }
    }
    assert!(found.is_empty());
    let l = lattice_of(&g);
    assert!(l.proper_nontrivial().is_empty());
    assert_eq!(l.members.len(), 2);
}

#[test]
fn m5_hand_elimination_is_an_automorphism_family() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..25 {
        let v: [Rational; 6] = std::array::from_fn(|_| random_rational(&mut rng, 6));
        if v[0] == int(0) || v[1] == int(0) {
            continue;
        }
        let a = m5_oracle_matrix(&v);
        let apply = |x: &[Rational]| -> Vec<Rational> {
            (0..5).map(|i| (0..5).map(|j| &a[i][j] * &x[j]).sum()).collect()
        };
        for i in 0..5 {
            for j in 0..5 {
                let mut ei = vec_i(&[0; 5]);
                let mut ej = vec_i(&[0; 5]);
                ei[i] = int(1);
                ej[j] = int(1);
                assert_eq!(apply(&m5_bracket(&ei, &ej)), m5_bracket(&apply(&ei), &apply(&ej)));
            }
        }
    }
}

#[test]
fn m5_solver_matches_hand_elimination() {
    let g = fixtures::m5();
    let analysis = analyze_automorphisms(&g, &lattice_of(&g)).unwrap();
    let p = &analysis.parametrization;
    assert!(p.is_solved());
    for (name, formula) in M5_HAND_ELIMINATION {
        assert_eq!(solved_poly(p, name), oracle_poly(p, formula), "{name}");
    }
    let mut free = p.free_parameter_names();
    free.sort();
    let mut expected = M5_FREE.to_vec();
    expected.sort();
    assert_eq!(free, expected);

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let v: [Rational; 6] = std::array::from_fn(|_| random_rational(&mut rng, 6));
        let values: Vec<Rational> = p
            .free_parameter_names()
            .iter()
            .map(|n| v[M5_FREE.iter().position(|f| f == n).unwrap()].clone())
            .collect();
        let a = p.instantiate(&values).unwrap();
        let oracle = m5_oracle_matrix(&v);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(a.get(i, j), &oracle[i][j]);
            }
        }
    }
}

#[test]
fn m5_lattice_and_prop34() {
    let g = fixtures::m5();
    let l = lattice_of(&g);
    let proper: Vec<Subspace> = l.proper_nontrivial().into_iter().cloned().collect();
    assert_eq!(
        proper,
        vec![q(5, &[1]), q(5, &[1, 2]), q(5, &[1, 2, 3]), q(5, &[1, 2, 3, 4])]
    );
    let m1 = q(5, &[1, 2, 3, 4]);
    assert_eq!(prop34(&g, &m1, &m1, &q(5, &[1])), q(5, &[1, 2]));
    let explained = prop34_explained(&g, &m1, &m1, &q(5, &[1]));
    assert!(!explained.exclusions.is_empty());
    assert!(explained.notes.iter().any(|n| n.contains("excluded")));
    assert_eq!(prop34(&g, &g.full(), &g.full(), &g.full()), g.full());
    let i = q(5, &[1, 2]);
    assert_eq!(
        prop34(&g, &g.full(), &i, &Subspace::zero(5)),
        g.centralizer(&g.full(), &i)
    );

    assert!(verify_megaideal(&g, &q(5, &[1, 2, 4])).passes());
    let bad = verify_megaideal(&g, &q(5, &[2]));
    assert!(!bad.is_ideal);
    assert!(verify_megaideal(&g, &g.full()).passes());
}

#[test]
fn lattices_are_closed_and_stable() {
    for g in [
        fixtures::m5(),
        fixtures::sl2d(),
        fixtures::heisenberg(),
        fixtures::sl2_plus_center(),
        LieAlgebra::abelian(3),
    ] {
        let l = lattice_of(&g);
        let members: Vec<Subspace> = l.subspaces().cloned().collect();
        for a in &members {
            assert!(verify_megaideal(&g, a).passes(), "{} {:?}", g.name(), a);
            for b in &members {
                assert!(l.contains(&a.sum(b).unwrap()));
                assert!(l.contains(&a.intersect(b).unwrap()));
                assert!(l.contains(&g.bracket_subspaces(a, b)));
            }
        }
        let again = closure(&g, &members, ClosureOptions::default()).unwrap();
        let again: Vec<Subspace> = again.subspaces().cloned().collect();
        assert_eq!(again, members, "{}", g.name());
    }
    assert_eq!(lattice_of(&LieAlgebra::abelian(3)).members.len(), 2);
}

#[test]
fn essential_filter_examples() {
    let g = LieAlgebra::abelian(3);
    let spans = [
        Subspace::zero(3),
        q(3, &[1]),
        q(3, &[2]),
        q(3, &[1, 2]),
        Subspace::full(3),
    ];
    let l = MegaidealLattice {
        algebra: g.clone(),
        members: spans
            .iter()
            .map(|s| LatticeMember { subspace: s.clone(), aliases: vec![], essential: true })
            .collect(),
        passes: 0,
        fixpoint: true,
    };
    let f = essential_filter(&l);
    let flags: Vec<bool> = f.members.iter().map(|m| m.essential).collect();
    assert!(!flags[3]);
    assert!(flags[1] && flags[2]);
    assert_eq!(f.members.len(), 5);

    let trivial = essential_filter(&lattice_of(&g));
    assert!(trivial.members.iter().all(|m| m.essential));
    let m5 = essential_filter(&lattice_of(&fixtures::m5()));
    assert!(m5.members.iter().all(|m| m.essential));
}

#[test]
fn shape_examples() {
    let g = fixtures::m5();
    let basis = adapted_basis(&g, &lattice_of(&g));
    assert!(basis.is_identity());
    assert_eq!(basis.flag.len(), 5);
    let shape = shape_from_flag(&basis);
    assert_eq!(shape.unknown_count(), 15);
    assert_eq!(shape.pattern_rows()[4], "0 0 0 0 *");
    assert_eq!(shape.side_conditions.len(), 5);

    let ab = LieAlgebra::abelian(3);
    let trivial = adapted_basis(&ab, &lattice_of(&ab));
    assert_eq!(trivial.block_sizes, vec![3]);
    let full = shape_from_flag(&trivial);
    assert_eq!(full.unknown_count(), 9);
    let sys = structure_equations(&ab, &full);
    assert!(sys.equations.is_empty());
    let p = triangular_solve(&sys);
    assert_eq!(p.free_parameters.len(), 9);
    assert!(inner_consistency(&ab, &p).consistent());

    let lattice = MegaidealLattice {
        algebra: ab.clone(),
        members: [Subspace::zero(3), q(3, &[1, 2]), Subspace::full(3)]
            .into_iter()
            .map(|s| LatticeMember { subspace: s, aliases: vec![], essential: true })
            .collect(),
        passes: 0,
        fixpoint: true,
    };
    let flag = shape_from_flag(&adapted_basis(&ab, &lattice));
    assert_eq!(flag.pattern[2][0], None);
    assert_eq!(flag.pattern[2][1], None);
    assert_eq!(flag.unknown_count(), 7);

    let plane = LieAlgebra::abelian(2);
    let diag = Subspace::span(2, vec![vec_i(&[1, 1])]);
    let lattice = MegaidealLattice {
        algebra: plane.clone(),
        members: [Subspace::zero(2), diag.clone(), Subspace::full(2)]
            .into_iter()
            .map(|s| LatticeMember { subspace: s, aliases: vec![], essential: true })
            .collect(),
        passes: 0,
        fixpoint: true,
    };
    let b = adapted_basis(&plane, &lattice);
    assert_eq!(b.to_adapted(&diag), q(2, &[1]));
}

#[test]
fn heisenberg_equations_and_consistency() {
    let g = fixtures::heisenberg();
    let analysis = analyze_automorphisms(&g, &lattice_of(&g)).unwrap();
    let p = &analysis.parametrization;
    assert!(p.is_solved());
    let report = inner_consistency(&g, p);
    assert!(!report.checks.is_empty());
    assert!(report.consistent());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let a = sample(p, &mut rng);
        assert!(g.preserves_brackets(&a));
        assert!(a.column(2)[..2].iter().all(|x| *x == int(0)));
    }
}

#[test]
fn m5_invariant_coordinate_spans() {
    let g = fixtures::m5();
    let analysis = analyze_automorphisms(&g, &lattice_of(&g)).unwrap();
    let p = &analysis.parametrization;
    let spans = enumerate_coordinate_megaideals(&g, p, &analysis.basis, 16).unwrap();
    let proper: Vec<Subspace> = spans
        .into_iter()
        .filter(|s| !s.is_zero() && !s.is_full())
        .collect();
    assert_eq!(
        proper,
        vec![
            q(5, &[1]),
            q(5, &[1, 2]),
            q(5, &[1, 2, 4]),
            q(5, &[1, 2, 3]),
            q(5, &[1, 2, 3, 4])
        ]
    );
    assert!(!check_invariant(p, &q(5, &[2])).unwrap());
    assert!(check_invariant(p, &g.full()).unwrap());
    let report = inner_consistency(&g, p);
    assert!(report.consistent());
}

/// Invariant coordinate spans by sampling: a span is kept when random
/// admissible automorphisms all preserve it.
#[test]
fn coordinate_spans_agree_with_sampling() {
    let m5 = fixtures::m5();
    let (m5q, _) = m5.quotient(&q(5, &[1])).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for g in [fixtures::heisenberg(), m5q, LieAlgebra::abelian(2)] {
        let n = g.dim();
        let analysis = analyze_automorphisms(&g, &lattice_of(&g)).unwrap();
        let p = &analysis.parametrization;
        assert!(p.is_solved(), "{}", g.name());
        let samples: Vec<Matrix> = (0..12).map(|_| sample(p, &mut rng)).collect();
        for a in &samples {
            assert!(g.preserves_brackets(a));
        }
        let listed = enumerate_coordinate_megaideals(&g, p, &analysis.basis, 16).unwrap();
        let mut sampled = Vec::new();
        for mask in 0usize..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let s = analysis.basis.to_original(&Subspace::coordinate(n, &idx));
            if samples.iter().all(|a| a.rank() == n && s.image(a) == s) {
                sampled.push(s);
            }
        }
        sampled.sort();
        assert_eq!(listed, sampled, "{}", g.name());
        for s in &listed {
            assert!(verify_megaideal(&g, s).passes());
        }
    }
}

#[test]
fn sl2_systems_leave_residuals() {
    for g in [fixtures::sl2d(), fixtures::sl2_ehf()] {
        let analysis = analyze_automorphisms(&g, &lattice_of(&g)).unwrap();
        let p = &analysis.parametrization;
        assert!(!p.residual_equations.is_empty());
        assert!(enumerate_coordinate_megaideals(&g, p, &analysis.basis, 16).is_err());
    }
}
