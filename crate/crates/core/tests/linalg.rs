mod common;

use common::*;
use megaideal::{Matrix, Rational, Subspace};
use proptest::prelude::*;

fn m(rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64(rows)
}

#[test]
fn rref_examples() {
    assert_eq!(m(&[&[2, 4], &[1, 2]]).rref(), m(&[&[1, 2]]));
    assert_eq!(Matrix::identity(3).rref(), Matrix::identity(3));
    assert_eq!(
        m(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, -1]]).rref(),
        m(&[&[1, 0, -1], &[0, 1, 1]])
    );
}

#[test]
fn kernel_examples() {
    assert!(Matrix::zeros(2, 3).kernel().is_full());
    assert!(Matrix::identity(3).kernel().is_zero());
    let a = m(&[&[1, 2, 3]]);
    let k = a.kernel();
    assert_eq!(k.dim(), 2);
    for v in k.basis().row_vectors() {
        assert!(a.mul_vec(v).iter().all(|x| *x == int(0)));
    }
}

#[test]
fn sum_and_intersection_examples() {
    let e = |i| q(3, &[i]);
    assert_eq!(e(1).sum(&e(2)).unwrap(), q(3, &[1, 2]));
    assert_eq!(q(3, &[1, 2]).intersect(&q(3, &[2, 3])).unwrap(), e(2));
    let a = Subspace::span(3, vec![vec_i(&[1, 1, 0]), vec_i(&[0, 0, 1])]);
    let b = Subspace::span(3, vec![vec_i(&[1, 0, 0]), vec_i(&[0, 1, 1])]);
    assert_eq!(
        a.intersect(&b).unwrap(),
        Subspace::span(3, vec![vec_i(&[1, 1, 1])])
    );
    assert!(a.contains(&vec_i(&[2, 2, 5])).unwrap());
    assert!(!a.contains(&vec_i(&[1, 0, 0])).unwrap());
    assert!(a.contains(&vec_i(&[1, 0])).is_err());
    assert!(a.sum(&Subspace::zero(4)).is_err());
}

#[test]
fn inverse_and_solve() {
    let a = m(&[&[2, 1], &[1, 1]]);
    let inv = a.inverse().unwrap();
    assert_eq!(a.mul(&inv), Matrix::identity(2));
    assert_eq!(a.solve(&vec_i(&[3, 2])), Some(vec_i(&[1, 1])));
    assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    assert_eq!(m(&[&[1, 2], &[2, 4]]).solve(&vec_i(&[1, 0])), None);
}

fn small_matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |xs| {
            Matrix::new(r, c, xs.into_iter().map(int).collect())
        })
    })
}

fn generators(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=n + 1)
        .prop_map(|vs| vs.into_iter().map(|v| v.into_iter().map(int).collect()).collect())
}

proptest! {
    #[test]
    fn rref_is_idempotent(a in small_matrix(6)) {
        let r = a.rref();
        prop_assert_eq!(r.rref(), r.clone());
        prop_assert_eq!(r.rows(), a.rank());
    }

    #[test]
    fn kernel_is_sound(a in small_matrix(6)) {
        let k = a.kernel();
        prop_assert_eq!(k.dim() + a.rank(), a.cols());
        for v in k.basis().row_vectors() {
            prop_assert!(a.mul_vec(v).iter().all(|x| *x == int(0)));
        }
    }

    #[test]
    fn canonical_under_permutation(gens in generators(5), seed in any::<u64>()) {
        let mut shuffled = gens.clone();
        let len = shuffled.len();
        if len > 1 {
            shuffled.rotate_left((seed as usize) % len);
            shuffled.reverse();
        }
        let a = Subspace::span(5, gens);
        let b = Subspace::span(5, shuffled);
        prop_assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn sum_intersection_dimension(u in generators(6), w in generators(6)) {
        let u = Subspace::span(6, u);
        let w = Subspace::span(6, w);
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_subspace(&u) && s.contains_subspace(&w));
        prop_assert!(u.contains_subspace(&i) && w.contains_subspace(&i));
    }
}
