use ncstab_core::algebra::GradedSubspace;
use ncstab_core::c3::{extract_c3, image_in_b, twisted_weight_table, NormalElement};
use ncstab_core::catalog::load_fixture;
use ncstab_core::estimates::{bootstrap_bound, claimed_inclusions, triangle_sections, EstimateCase, Vanishing, Q};
use ncstab_core::field::{Field, PrimeField};
use ncstab_core::linalg::{Matrix, Subspace};
use ncstab_core::pointscheme::{analyze, forms_vanishing_at, random_points, ProjPoint};
use ncstab_core::poly::Form;
use ncstab_core::testconfig::{chains, random_flag, weight_table, Filtration};
use ncstab_core::QuadraticAlgebra;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Alg = QuadraticAlgebra<PrimeField>;

const N_MAX: usize = 6;

fn setup(name: &str) -> (Alg, PrimeField, NormalElement<PrimeField>) {
    let a = load_fixture(name).unwrap().algebra;
    let f = *a.field();
    let c = extract_c3(&a, N_MAX, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
    (a, f, c)
}

fn deg1(f: &PrimeField, rows: Vec<Vec<u64>>) -> Subspace<PrimeField> {
    Subspace::from_rows(f, 3, rows)
}

fn random_vec(f: &PrimeField, rng: &mut ChaCha8Rng) -> Vec<u64> {
    (0..3).map(|_| f.random(rng)).collect()
}

/// A random vector of `w` (nonzero).
fn random_in(f: &PrimeField, w: &Subspace<PrimeField>, rng: &mut ChaCha8Rng) -> Vec<u64> {
    loop {
        let (s, t) = (f.random(rng), f.random(rng));
        let b = w.basis();
        let v: Vec<u64> = (0..3).map(|i| f.add(&f.mul(&s, &b[0][i]), &f.mul(&t, &b[1][i]))).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

fn assert_lower_bound(a: &Alg, c: &NormalElement<PrimeField>, filt: &Filtration<PrimeField>, case: EstimateCase, l: u32, m: u32) {
    let t = twisted_weight_table(a, c, filt, N_MAX).unwrap();
    for n in 1..=N_MAX {
        if matches!(case, EstimateCase::POnXLGeM | EstimateCase::PNode) && n < 2 {
            continue;
        }
        let (wl, wm) = case.weights(n as i128);
        let bound = wl * i128::from(l) + wm * i128::from(m);
        let w = Q::from_integer(i128::from(t.weight(n).unwrap_or(0)));
        assert!(w >= bound, "{case} l={l} m={m} n={n}: w = {w}, bound = {bound}");
    }
}

#[test]
fn p_off_x_bounds_on_sklyanin() {
    let (a, f, c) = setup("sklyanin");
    let cubic = analyze(&a).unwrap().cubic.unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (l, m) in [(1, 0), (1, 1), (2, 1), (1, 2)] {
        let filt = random_flag(&f, &mut rng, l, m).unwrap();
        let w = filt.shape().unwrap().w.clone().unwrap();
        let p = ncstab_core::pointscheme::point_of(&f, &w).unwrap();
        assert!(cubic.eval(p.coords()) != 0);
        assert_lower_bound(&a, &c, &filt, EstimateCase::POffX, l as u32, m as u32);
    }
}

#[test]
fn p_on_x_bounds_on_sklyanin() {
    let (a, f, c) = setup("sklyanin");
    let cubic = analyze(&a).unwrap().cubic.unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let points = random_points(&cubic, 6, &mut rng).unwrap();
    for (i, (l, m)) in [(1, 0), (1, 1), (2, 1), (0, 1), (1, 2), (1, 3)].into_iter().enumerate() {
        let w = forms_vanishing_at(&f, &points[i]);
        let u = deg1(&f, vec![random_in(&f, &w, &mut rng)]);
        let filt = Filtration::flag(&f, Some(w), l, Some(u), m).unwrap();
        let case = if l >= m { EstimateCase::POnXLGeM } else { EstimateCase::POnXMGtL };
        assert_lower_bound(&a, &c, &filt, case, l as u32, m as u32);
    }
}

fn triangle_lines(a: &Alg) -> Vec<Form<PrimeField>> {
    analyze(a).unwrap().lines.into_iter().map(|l| l.form).collect()
}

fn line_space(f: &PrimeField, line: &Form<PrimeField>) -> Subspace<PrimeField> {
    deg1(f, vec![line.coeffs().to_vec()])
}

#[test]
fn node_and_linear_component_bounds_on_triangle() {
    let (a, f, c) = setup("triangle-cyclic");
    let geo = analyze(&a).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let node = geo.singular[0].point.clone();
    for (l, m) in [(1, 0), (1, 1), (2, 1)] {
        let w = forms_vanishing_at(&f, &node);
        let u = deg1(&f, vec![random_in(&f, &w, &mut rng)]);
        let filt = Filtration::flag(&f, Some(w), l, Some(u), m).unwrap();
        assert_lower_bound(&a, &c, &filt, EstimateCase::PNode, l as u32, m as u32);
    }
    let lines = triangle_lines(&a);
    assert_eq!(lines.len(), 3);
    for (i, (l, m)) in [(0, 1), (0, 2), (1, 1), (2, 1), (1, 2)].into_iter().enumerate() {
        let u = line_space(&f, &lines[i % 3]);
        let w = u.sum(&deg1(&f, vec![random_vec(&f, &mut rng)])).unwrap();
        assert_eq!(w.dim(), 2);
        let filt = Filtration::flag(&f, Some(w), l, Some(u), m).unwrap();
        let case = if l == 0 { EstimateCase::YLinearL0 } else { EstimateCase::YLinearLPos };
        assert_lower_bound(&a, &c, &filt, case, l as u32, m as u32);
    }
}

fn graded(s: &Subspace<PrimeField>) -> GradedSubspace<PrimeField> {
    GradedSubspace { degree: 1, space: s.clone() }
}

#[test]
fn claimed_inclusions_hold_in_the_engine() {
    let a = load_fixture("sklyanin").unwrap().algebra;
    let f = *a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for (l, m) in [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)] {
        let filt = random_flag(&f, &mut rng, l, m).unwrap();
        let shape = filt.shape().unwrap();
        let zero = Subspace::zero(&f, 3);
        let u = graded(shape.u.as_ref().unwrap_or(&zero));
        let w = graded(shape.w.as_ref().or(shape.u.as_ref()).unwrap_or(&zero));
        let ch = chains(&a, &filt, 5).unwrap();
        for n in 1..=5u32 {
            for (k, g, al, be) in claimed_inclusions(l as u32, m as u32, n) {
                let s = a.word_subspace(g as usize, al as usize, be as usize, &w, &u).unwrap();
                let level = &ch[n as usize - 1];
                let target = match level.get(k as usize - 1) {
                    Some(t) => t.clone(),
                    None => a.zero_subspace(n as usize).unwrap(),
                };
                assert!(s.is_subspace_of(&target).unwrap(), "l={l} m={m} n={n} k={k} ({g},{al},{be})");
            }
        }
    }
}

fn power_words(a: &Alg, block: &[&GradedSubspace<PrimeField>], reps: usize, tail: usize) -> GradedSubspace<PrimeField> {
    let v = a.full(1).unwrap();
    let mut factors: Vec<&GradedSubspace<PrimeField>> = Vec::new();
    for _ in 0..reps {
        factors.extend_from_slice(block);
    }
    for _ in 0..tail {
        factors.push(&v);
    }
    a.word_product(&factors).unwrap()
}

#[test]
fn triangle_sections_match_b_images() {
    let (a, f, c) = setup("triangle-cyclic");
    let v = a.full(1).unwrap();
    for line in triangle_lines(&a) {
        let u = graded(&line_space(&f, &line));
        for n in 3..=N_MAX {
            for beta in 1..=n / 3 {
                // (UVV)^β V^{n-3β} gives sections vanishing to order β on Z(U)
                let s = power_words(&a, &[&u, &v, &v], beta, n - 3 * beta);
                let expected = triangle_sections((n as i64, n as i64, n as i64), Vanishing::Edge { beta: beta as i64 });
                assert_eq!(Some(image_in_b(&a, &c, &s).unwrap() as i64), expected, "n={n} beta={beta}");
                // {V^{n-β} U^β} fills B_n
                let full = a.word_subspace(n - beta, 0, beta, &u, &u).unwrap();
                assert_eq!(image_in_b(&a, &c, &full).unwrap(), 3 * n);
            }
        }
    }
}

#[test]
fn bootstrap_bound_on_sklyanin_and_triangle() {
    for (name, q) in [("sklyanin", 2i64), ("triangle-cyclic", 3)] {
        let (a, f, c) = setup(name);
        let geo = analyze(&a).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for (l, m) in [(1, 0), (1, 1), (2, 1)] {
            let filt = if name == "sklyanin" {
                random_flag(&f, &mut rng, l, m).unwrap()
            } else {
                // P on a side of the triangle, away from the nodes
                let line = &geo.lines[0].form;
                let p = loop {
                    let t = f.random(&mut rng);
                        let k = Matrix::new(&f, 3, vec![line.coeffs().to_vec()]).unwrap().nullspace();
                    let (b0, b1) = (&k.basis()[0], &k.basis()[1]);
                    let v: Vec<u64> = (0..3).map(|i| f.add(&b0[i], &f.mul(&t, &b1[i]))).collect();
                    if let Ok(p) = ProjPoint::from_slice(&f, &v) {
                        if geo.singular.iter().all(|s| s.point != p) {
                            break p;
                        }
                    }
                };
                let w = forms_vanishing_at(&f, &p);
                let u = deg1(&f, vec![random_in(&f, &w, &mut rng)]);
                Filtration::flag(&f, Some(w), l, Some(u), m).unwrap()
            };
            let tw = twisted_weight_table(&a, &c, &filt, N_MAX).unwrap();
            let at = weight_table(&a, &filt, N_MAX).unwrap();
            let mut w = vec![0i64];
            w.extend((1..=N_MAX).map(|n| tw.weight(n).unwrap_or(0)));
            for n in 1..=N_MAX {
                let bound = bootstrap_bound(&w, q * l as i64, n);
                assert!(at.weight(n).unwrap_or(0) >= bound, "{name} l={l} m={m} n={n}");
            }
        }
    }
}
