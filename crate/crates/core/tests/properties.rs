use ncstab_core::catalog::sklyanin;
use ncstab_core::field::{Field, PrimeField};
use ncstab_core::linalg::{kron_vec, Matrix, Subspace};
use proptest::prelude::*;

const P: u64 = 101;

fn f() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn rows(max_rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(prop::collection::vec(0..P, cols), 0..=max_rows)
}

fn vecs(len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..P, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(r in rows(6, 5)) {
        let f = f();
        let m = Matrix::new(&f, 5, r).unwrap();
        prop_assert_eq!(m.rank() + m.nullspace().dim(), 5);
        for v in m.nullspace().basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn sum_and_intersection_dimensions(a in rows(4, 5), b in rows(4, 5)) {
        let f = f();
        let s = Subspace::from_rows(&f, 5, a);
        let t = Subspace::from_rows(&f, 5, b);
        let sum = s.sum(&t).unwrap();
        let cap = s.intersect(&t).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), s.dim() + t.dim());
        prop_assert!(cap.is_subspace_of(&s).unwrap() && cap.is_subspace_of(&t).unwrap());
        prop_assert!(s.is_subspace_of(&sum).unwrap() && t.is_subspace_of(&sum).unwrap());
    }

    #[test]
    fn modular_law(a in rows(3, 4), b in rows(3, 4), c in rows(3, 4)) {
        // S ⊆ U implies S + (T ∩ U) = (S + T) ∩ U
        let f = f();
        let s = Subspace::from_rows(&f, 4, a);
        let t = Subspace::from_rows(&f, 4, b);
        let u = s.sum(&Subspace::from_rows(&f, 4, c)).unwrap();
        let lhs = s.sum(&t.intersect(&u).unwrap()).unwrap();
        let rhs = s.sum(&t).unwrap().intersect(&u).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn basis_is_canonical(a in rows(4, 5), mix in vecs(4)) {
        let f = f();
        let s = Subspace::from_rows(&f, 5, a.clone());
        let mut other: Vec<Vec<u64>> = a.iter().rev().cloned().collect();
        let combo: Vec<u64> = (0..5)
            .map(|j| a.iter().zip(&mix).fold(0, |acc, (r, c)| f.add(&acc, &f.mul(c, &r[j]))))
            .collect();
        other.push(combo);
        prop_assert_eq!(Subspace::from_rows(&f, 5, other), s);
    }

    #[test]
    fn kron_dimension(a in rows(3, 3), b in rows(3, 3)) {
        let f = f();
        let s = Subspace::from_rows(&f, 3, a);
        let t = Subspace::from_rows(&f, 3, b);
        prop_assert_eq!(s.kron(&t).dim(), s.dim() * t.dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_is_independent_of_lifts(x in vecs(3), y in vecs(9), rel in vecs(3)) {
        let f = f();
        let a = sklyanin(&f, &1, &2, &3).unwrap();
        // add a relation to y: a different lift of the same class
        let r = a.relation_space().basis();
        let mut y2 = y.clone();
        for (c, row) in rel.iter().zip(r) {
            for (slot, v) in y2.iter_mut().zip(row) {
                *slot = f.add(slot, &f.mul(c, v));
            }
        }
        prop_assert_eq!(a.project(2, &y).unwrap(), a.project(2, &y2).unwrap());
        let direct = a.project(3, &kron_vec(&f, &x, &y2)).unwrap();
        let via = a.multiply(&a.project(1, &x).unwrap(), 1, &a.project(2, &y).unwrap(), 2).unwrap();
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn multiplication_is_associative(x in vecs(3), y in vecs(3), z in vecs(3)) {
        let f = f();
        let a = sklyanin(&f, &1, &2, &3).unwrap();
        let (x, y, z) = (a.project(1, &x).unwrap(), a.project(1, &y).unwrap(), a.project(1, &z).unwrap());
        let left = a.multiply(&a.multiply(&x, 1, &y, 1).unwrap(), 2, &z, 1).unwrap();
        let right = a.multiply(&x, 1, &a.multiply(&y, 1, &z, 1).unwrap(), 2).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn lift_then_project_is_identity(c in vecs(10)) {
        let f = f();
        let a = sklyanin(&f, &1, &2, &3).unwrap();
        prop_assert_eq!(a.project(3, &a.lift(3, &c).unwrap()).unwrap(), c);
    }
}
