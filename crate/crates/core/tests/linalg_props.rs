mod common;

use common::naive_rank;
use exalg::linalg::{Fp, Mat, Subspace};
use proptest::prelude::*;

fn mat_strategy(p: u32) -> impl Strategy<Value = (usize, usize, Vec<u32>)> {
    (1usize..7, 1usize..7).prop_flat_map(move |(r, c)| {
        (Just(r), Just(c), proptest::collection::vec(prop_oneof![3 => Just(0u32), 2 => 1..p], r * c))
    })
}

fn to_rows(r: usize, c: usize, data: &[u32]) -> Vec<Vec<u64>> {
    (0..r).map(|i| data[i * c..(i + 1) * c].iter().map(|&x| x as u64).collect()).collect()
}

proptest! {
    #[test]
    fn rank_agrees_with_reference((r, c, data) in mat_strategy(7)) {
        let f = Fp::new(7).unwrap();
        let m = Mat::from_vec(f, r, c, data.clone()).unwrap();
        prop_assert_eq!(m.rank(), naive_rank(7, to_rows(r, c, &data)));
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_is_annihilated((r, c, data) in mat_strategy(32003)) {
        let f = Fp::default_field();
        let m = Mat::from_vec(f, r, c, data).unwrap();
        let k = m.kernel();
        prop_assert_eq!(k.dim() + m.rank(), c);
        for v in k.basis().row_vecs() {
            prop_assert!(m.apply_col(&v).iter().all(|&x| x == 0));
        }
        for v in m.left_kernel().basis().row_vecs() {
            prop_assert!(m.apply_row(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_returns_solutions((r, c, data) in mat_strategy(11), x in proptest::collection::vec(0u32..11, 6)) {
        let f = Fp::new(11).unwrap();
        let m = Mat::from_vec(f, r, c, data).unwrap();
        let b = m.apply_col(&x[..c]);
        let y = m.solve(&b).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.apply_col(&y), b);
    }

    #[test]
    fn inverse_when_full_rank((n, _, data) in (1usize..6).prop_flat_map(|n| (Just(n), Just(n), proptest::collection::vec(0u32..5, n * n)))) {
        let f = Fp::new(5).unwrap();
        let m = Mat::from_vec(f, n, n, data).unwrap();
        match m.inverse() {
            Some(inv) => prop_assert_eq!(m.mul(&inv), Mat::identity(f, n)),
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn subspace_dimension_formula(a in proptest::collection::vec(proptest::collection::vec(0u32..3, 5), 0..4),
                                  b in proptest::collection::vec(proptest::collection::vec(0u32..3, 5), 0..4)) {
        let f = Fp::new(5).unwrap();
        let (u, w) = (Subspace::span(f, 5, &a), Subspace::span(f, 5, &b));
        let (s, i) = (u.sum(&w).unwrap(), u.intersection(&w).unwrap());
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&w));
        prop_assert!(u.is_subspace_of(&s) && w.is_subspace_of(&s));
    }
}
