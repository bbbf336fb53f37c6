use ncstab_core::c3::{extract_c3, image_in_b, membership, twisted_weight_table};
use ncstab_core::catalog::load_fixture;
use ncstab_core::field::{Field, PrimeField};
use ncstab_core::pointscheme::{analyze, forms_vanishing_at};
use ncstab_core::testconfig::{random_flag, Filtration};
use ncstab_core::QuadraticAlgebra;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> QuadraticAlgebra<PrimeField> {
    load_fixture(name).unwrap().algebra
}

#[test]
fn certificates_on_every_fixture() {
    for name in ["sklyanin", "quantum-plane", "triangle-cyclic", "fixed-singular-point"] {
        let a = fixture(name);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = extract_c3(&a, 6, &mut rng).unwrap();
        assert!(c.certified(), "{name}: {c:?}");
        assert_eq!(c.b_dims, vec![3, 6, 9, 12, 15, 18]);
    }
}

#[test]
fn disjoint_samples_agree() {
    let a = fixture("sklyanin");
    let c1 = extract_c3(&a, 3, &mut ChaCha8Rng::seed_from_u64(10)).unwrap();
    let c2 = extract_c3(&a, 3, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
    assert_eq!(c1.coords, c2.coords);
}

#[test]
fn wwv_membership_for_random_w() {
    let a = fixture("sklyanin");
    let f = *a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let c = extract_c3(&a, 3, &mut rng).unwrap();
    for _ in 0..5 {
        let rows = (0..2).map(|_| (0..3).map(|_| f.random(&mut rng)).collect()).collect();
        let w = a.degree_one(rows).unwrap();
        assert!(membership(&a, &c, "WWV+WVW+VWW", Some(&w), None).unwrap());
    }
}

#[test]
fn invariant_line_gives_c3_in_uvv_and_vvu() {
    let a = fixture("quantum-plane");
    let c = extract_c3(&a, 3, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
    let u = a.degree_one(vec![vec![1, 0, 0]]).unwrap();
    assert!(membership(&a, &c, "UVV", None, Some(&u)).unwrap());
    assert!(membership(&a, &c, "VVU", None, Some(&u)).unwrap());
}

#[test]
fn image_in_b_examples() {
    let a = fixture("sklyanin");
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let c = extract_c3(&a, 4, &mut rng).unwrap();
    assert_eq!(image_in_b(&a, &c, &a.full(4).unwrap()).unwrap(), 12);
    let u = a.degree_one(vec![vec![1, 4, 9]]).unwrap();
    let s = a.word_subspace(3, 0, 1, &u, &u).unwrap();
    assert!(image_in_b(&a, &c, &s).unwrap() >= 10);
}

#[test]
fn twisted_futaki_is_constant_at_fixed_node() {
    let fx = load_fixture("fixed-singular-point").unwrap();
    let a = fx.algebra;
    let f = *a.field();
    let geo = analyze(&a).unwrap();
    let w = forms_vanishing_at(&f, &geo.singular[0].point);
    let filt = Filtration::flag(&f, Some(w), 1, None, 0).unwrap();
    let c = extract_c3(&a, 5, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
    let t = twisted_weight_table(&a, &c, &filt, 5).unwrap();
    for n in 1..=5 {
        assert_eq!(t.futaki(n), t.futaki(1), "n = {n}");
    }
}

#[test]
fn twisted_table_has_b_dimensions() {
    let a = fixture("sklyanin");
    let f = *a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let c = extract_c3(&a, 4, &mut rng).unwrap();
    let filt = random_flag(&f, &mut rng, 1, 1).unwrap();
    let t = twisted_weight_table(&a, &c, &filt, 4).unwrap();
    for n in 1..=4 {
        assert_eq!(t.row(n).unwrap().piece_dim, 3 * n);
    }
}
