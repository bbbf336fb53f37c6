//! The point scheme: the cubic `det M`, the point map `σ`, singular points,
//! linear components and the geometric stability verdict.
//!
//! All discovery happens over the base field. Completeness is certified by
//! comparing against counts that do not depend on the field (lengths from
//! Hilbert functions); when points lie in an extension the result is
//! marked unresolved.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::QuadraticAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::poly::{self, monomials, Form};

/// A point of the projective plane, first nonzero coordinate equal to one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint<F: Field> {
    coords: [F::Elem; 3],
}

impl<F: Field> ProjPoint<F> {
    pub fn new(field: &F, coords: [F::Elem; 3]) -> Result<Self> {
        let Some(lead) = coords.iter().find(|c| !field.is_zero(c)) else {
            return Err(Error::NotOnCurve("the zero vector is not a point".into()));
        };
        let inv = field.inv(lead).unwrap();
        Ok(Self {
            coords: coords.map(|c| field.mul(&c, &inv)),
        })
    }

    pub fn from_slice(field: &F, v: &[F::Elem]) -> Result<Self> {
        if v.len() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: v.len(),
            });
        }
        Self::new(field, [v[0].clone(), v[1].clone(), v[2].clone()])
    }

    pub fn coords(&self) -> &[F::Elem; 3] {
        &self.coords
    }

    pub fn format(&self, field: &F) -> String {
        let c: Vec<String> = self.coords.iter().map(|x| field.format(x)).collect();
        format!("({})", c.join(":"))
    }
}

/// Linear forms `W ⊆ V` vanishing at `p`: the 2-dimensional subspace with
/// `Z(W) = p`.
pub fn forms_vanishing_at<F: Field>(field: &F, p: &ProjPoint<F>) -> Subspace<F> {
    Matrix::new(field, 3, vec![p.coords.to_vec()])
        .unwrap()
        .nullspace()
}

/// The point `Z(W)` of a 2-dimensional `W ⊆ V`.
pub fn point_of<F: Field>(field: &F, w: &Subspace<F>) -> Result<ProjPoint<F>> {
    let k = w.matrix().nullspace();
    if k.dim() != 1 {
        return Err(Error::NotOneDimensional(k.dim()));
    }
    ProjPoint::from_slice(field, &k.basis()[0])
}

/// `M(p)[i][b] = Σ_a c[i][a][b] p_a`, so that `f_i(p, q) = (M(p) q)_i`.
pub fn left_matrix<F: Field>(a: &QuadraticAlgebra<F>, p: &[F::Elem; 3]) -> Matrix<F> {
    let f = a.field();
    let rows = (0..3)
        .map(|i| {
            (0..3)
                .map(|b| {
                    (0..3).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(a.coeff(i, k, b), &p[k])))
                })
                .collect()
        })
        .collect();
    Matrix::new(f, 3, rows).unwrap()
}

/// `N(q)[i][a] = Σ_b c[i][a][b] q_b`, so that `f_i(p, q) = (N(q) p)_i`.
pub fn right_matrix<F: Field>(a: &QuadraticAlgebra<F>, q: &[F::Elem; 3]) -> Matrix<F> {
    let f = a.field();
    let rows = (0..3)
        .map(|i| {
            (0..3)
                .map(|k| {
                    (0..3).fold(f.zero(), |acc, b| f.add(&acc, &f.mul(a.coeff(i, k, b), &q[b])))
                })
                .collect()
        })
        .collect();
    Matrix::new(f, 3, rows).unwrap()
}

fn det3<F: Field>(m: &[[Form<F>; 3]; 3]) -> Form<F> {
    let term = |a: (usize, usize), b: (usize, usize), c: (usize, usize)| {
        m[a.0][a.1].mul(&m[b.0][b.1]).mul(&m[c.0][c.1])
    };
    term((0, 0), (1, 1), (2, 2))
        .add(&term((0, 1), (1, 2), (2, 0)))
        .add(&term((0, 2), (1, 0), (2, 1)))
        .sub(&term((0, 2), (1, 1), (2, 0)))
        .sub(&term((0, 0), (1, 2), (2, 1)))
        .sub(&term((0, 1), (1, 0), (2, 2)))
}

/// `det M(p)` as a cubic form in `p`.
pub fn cubic_left<F: Field>(a: &QuadraticAlgebra<F>) -> Form<F> {
    let f = a.field();
    let m: [[Form<F>; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|b| {
            Form::linear(f, &std::array::from_fn(|k| a.coeff(i, k, b).clone()))
        })
    });
    det3(&m)
}

/// `det N(q)` as a cubic form in `q`.
pub fn cubic_right<F: Field>(a: &QuadraticAlgebra<F>) -> Form<F> {
    let f = a.field();
    let m: [[Form<F>; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|k| {
            Form::linear(f, &std::array::from_fn(|b| a.coeff(i, k, b).clone()))
        })
    });
    det3(&m)
}

/// Checks that the left and right cubics are proportional and returns the
/// normalized cubic.
pub fn semistandard_check<F: Field>(a: &QuadraticAlgebra<F>) -> Result<Form<F>> {
    let left = cubic_left(a);
    if left.is_zero() {
        return Err(Error::IdenticallyZeroCubic);
    }
    let right = cubic_right(a);
    let (l, r) = (left.normalized(), right.normalized());
    if l != r {
        return Err(Error::NotSemistandard);
    }
    Ok(l)
}

fn kernel_point<F: Field>(m: &Matrix<F>, p: &[F::Elem; 3]) -> Result<ProjPoint<F>> {
    let f = m.field();
    let k = m.nullspace();
    if k.dim() != 1 {
        let shown = ProjPoint::new(f, p.clone())
            .map(|q| q.format(f))
            .unwrap_or_else(|_| "(0:0:0)".into());
        return Err(Error::DegeneratePoint {
            point: shown,
            nullity: k.dim(),
        });
    }
    ProjPoint::from_slice(f, &k.basis()[0])
}

/// `σ(p)`: the unique `q` with `M(p) q = 0`.
pub fn sigma<F: Field>(a: &QuadraticAlgebra<F>, p: &ProjPoint<F>) -> Result<ProjPoint<F>> {
    let f = a.field();
    let cubic = cubic_left(a);
    if !f.is_zero(&cubic.eval(&p.coords)) {
        return Err(Error::NotOnCurve(p.format(f)));
    }
    kernel_point(&left_matrix(a, &p.coords), &p.coords)
}

/// `σ^{-1}(q)`: the unique `p` with `N(q) p = 0`.
pub fn sigma_inverse<F: Field>(a: &QuadraticAlgebra<F>, q: &ProjPoint<F>) -> Result<ProjPoint<F>> {
    let f = a.field();
    let cubic = cubic_right(a);
    if !f.is_zero(&cubic.eval(&q.coords)) {
        return Err(Error::NotOnCurve(q.format(f)));
    }
    kernel_point(&right_matrix(a, &q.coords), &q.coords)
}

/// Points of the cubic over a finite base field, enumerated over the chart
/// `z = 1` fiber by fiber (`x = 0, 1, ...`) and then the line `z = 0`.
pub fn sample_points<F: Field>(cubic: &Form<F>, count: usize) -> Result<Vec<ProjPoint<F>>> {
    let f = cubic.field();
    if cubic.is_zero() {
        return Err(Error::IdenticallyZeroCubic);
    }
    let elems = f.elements().ok_or(Error::RequiresPrimeField)?;
    let mut out = Vec::new();
    let one = f.one();
    let zero = f.zero();
    for x in &elems {
        // t -> C(x, t, 1)
        let fiber = cubic.restrict_to_line(&[x.clone(), zero.clone(), one.clone()], &[zero.clone(), one.clone(), zero.clone()]);
        let ys = if poly::is_zero_poly(f, &fiber) {
            elems.clone()
        } else {
            f.roots(&fiber).unwrap_or_default()
        };
        for y in ys {
            out.push(ProjPoint::new(f, [x.clone(), y, one.clone()])?);
            if out.len() == count {
                return Ok(out);
            }
        }
    }
    let line = cubic.restrict_to_line(&[one.clone(), zero.clone(), zero.clone()], &[zero.clone(), one.clone(), zero.clone()]);
    let ts = if poly::is_zero_poly(f, &line) {
        elems.clone()
    } else {
        f.roots(&line).unwrap_or_default()
    };
    for t in ts {
        out.push(ProjPoint::new(f, [one.clone(), t, zero.clone()])?);
        if out.len() == count {
            return Ok(out);
        }
    }
    if f.is_zero(&cubic.eval(&[zero.clone(), one.clone(), zero.clone()])) {
        out.push(ProjPoint::new(f, [zero.clone(), one.clone(), zero])?);
        if out.len() == count {
            return Ok(out);
        }
    }
    if count == usize::MAX {
        return Ok(out);
    }
    Err(Error::InsufficientPoints {
        found: out.len(),
        requested: count,
    })
}

/// All points of the cubic over a finite base field.
pub fn all_points<F: Field>(cubic: &Form<F>) -> Result<Vec<ProjPoint<F>>> {
    sample_points(cubic, usize::MAX)
}

/// Distinct random points of the cubic, found by intersecting it with
/// random lines.
pub fn random_points<F: Field, R: Rng + ?Sized>(
    cubic: &Form<F>,
    count: usize,
    rng: &mut R,
) -> Result<Vec<ProjPoint<F>>> {
    let f = cubic.field();
    if cubic.is_zero() {
        return Err(Error::IdenticallyZeroCubic);
    }
    let mut out: Vec<ProjPoint<F>> = Vec::with_capacity(count);
    let budget = 50 * count + 1000;
    for _ in 0..budget {
        if out.len() >= count {
            break;
        }
        let a: [F::Elem; 3] = std::array::from_fn(|_| f.random(rng));
        let b: [F::Elem; 3] = std::array::from_fn(|_| f.random(rng));
        let r = cubic.restrict_to_line(&a, &b);
        if poly::is_zero_poly(f, &r) {
            continue;
        }
        let Some(ts) = f.roots(&r) else { continue };
        for t in ts {
            let v: [F::Elem; 3] = std::array::from_fn(|i| f.add(&a[i], &f.mul(&t, &b[i])));
            if let Ok(p) = ProjPoint::new(f, v) {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out.truncate(count);
    if out.len() < count {
        return Err(Error::InsufficientPoints {
            found: out.len(),
            requested: count,
        });
    }
    Ok(out)
}

/// Dimension of the degree-`d` part of the ideal generated by `forms`.
fn ideal_dim<F: Field>(field: &F, forms: &[Form<F>], d: usize) -> usize {
    ideal_space(field, forms, d).dim()
}

fn ideal_space<F: Field>(field: &F, forms: &[Form<F>], d: usize) -> Subspace<F> {
    let n = (d + 1) * (d + 2) / 2;
    let mut rows = Vec::new();
    for g in forms {
        if g.degree() > d || g.is_zero() {
            continue;
        }
        for e in monomials(d - g.degree()) {
            rows.push(Form::monomial(field, e, field.one()).mul(g).coeffs().to_vec());
        }
    }
    Subspace::from_rows(field, n, rows)
}

fn codim<F: Field>(field: &F, forms: &[Form<F>], d: usize) -> usize {
    (d + 1) * (d + 2) / 2 - ideal_dim(field, forms, d)
}

/// Length over the algebraic closure of the scheme cut out by `forms`, read
/// off the Hilbert function in degrees 9 and 10. Errors if it is not
/// zero-dimensional.
pub fn scheme_length<F: Field>(field: &F, forms: &[Form<F>]) -> Result<usize> {
    let h9 = codim(field, forms, 9);
    let h10 = codim(field, forms, 10);
    if h9 != h10 {
        return Err(Error::PositiveDimensionalSingularLocus);
    }
    Ok(h10)
}

/// Local length at `p` of the zero-dimensional scheme cut out by `forms`.
pub fn local_length<F: Field>(field: &F, forms: &[Form<F>], p: &ProjPoint<F>) -> usize {
    let w = forms_vanishing_at(field, p);
    let l1 = Form::linear(field, &std::array::from_fn(|i| w.basis()[0][i].clone()));
    let l2 = Form::linear(field, &std::array::from_fn(|i| w.basis()[1][i].clone()));
    let mut gens: Vec<Form<F>> = forms.to_vec();
    for k in 0..=6 {
        let mut g = Form::from_coeffs(field, 0, vec![field.one()]);
        for _ in 0..k {
            g = g.mul(&l1);
        }
        for _ in k..6 {
            g = g.mul(&l2);
        }
        gens.push(g);
    }
    codim(field, &gens, 10)
}

/// Coordinate changes tried in turn when elimination degenerates.
fn coordinate_changes<F: Field>(f: &F) -> Vec<[[F::Elem; 3]; 3]> {
    let e = |v: i64| f.from_i64(v);
    let mats: [[[i64; 3]; 3]; 5] = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[1, 0, 0], [1, 1, 0], [0, 0, 1]],
        [[1, 2, 0], [0, 1, 0], [1, 1, 1]],
        [[1, 0, 3], [2, 1, 0], [1, 5, 1]],
        [[2, 1, 1], [1, 3, 1], [1, 1, 4]],
    ];
    mats.iter()
        .filter_map(|m| {
            let t: [[F::Elem; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| e(m[i][j])));
            let rows = t.iter().map(|r| r.to_vec()).collect();
            (Matrix::new(f, 3, rows).unwrap().rank() == 3).then_some(t)
        })
        .collect()
}

/// Coefficients in `y` (each a polynomial in `x`) of a form on the chart
/// `z = 1`.
fn chart_coeffs<F: Field>(g: &Form<F>) -> Vec<Vec<F::Elem>> {
    let f = g.field();
    let d = g.degree();
    let mut out = vec![vec![f.zero(); d + 1]; d + 1];
    for (e, c) in monomials(d).iter().zip(g.coeffs()) {
        out[e[1]][e[0]] = c.clone();
    }
    out.into_iter().map(|p| poly::trim(f, p)).collect()
}

/// Resultant in `y` of two polynomials of formal degree 2.
fn quadratic_resultant<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    let get = |v: &[Vec<F::Elem>], k: usize| v.get(k).cloned().unwrap_or_default();
    let (a0, a1, a2) = (get(a, 0), get(a, 1), get(a, 2));
    let (b0, b1, b2) = (get(b, 0), get(b, 1), get(b, 2));
    let m = |x: &[F::Elem], y: &[F::Elem]| poly::mul(f, x, y);
    let s = |x: &[F::Elem], y: &[F::Elem]| poly::sub(f, x, y);
    let c20 = s(&m(&a2, &b0), &m(&a0, &b2));
    let c21 = s(&m(&a2, &b1), &m(&a1, &b2));
    let c10 = s(&m(&a1, &b0), &m(&a0, &b1));
    s(&m(&c20, &c20), &m(&c21, &c10))
}

fn poly_roots<F: Field>(f: &F, p: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let p = poly::trim(f, p.to_vec());
    if p.is_empty() {
        return None;
    }
    f.roots(&p)
}

/// Common zeros over the base field of nonzero conics, or
/// `None` when elimination fails (for example on a positive-dimensional
/// zero set, or inconclusive root finding).
pub fn common_zeros<F: Field>(field: &F, forms: &[Form<F>]) -> Option<Vec<ProjPoint<F>>> {
    let forms: Vec<Form<F>> = forms.iter().filter(|g| !g.is_zero()).cloned().collect();
    if forms.is_empty() {
        return None;
    }
    assert!(forms.iter().all(|g| g.degree() == 2));
    for t in coordinate_changes(field) {
        let changed: Vec<Form<F>> = forms.iter().map(|g| g.linear_change(&t)).collect();
        if let Some(pts) = common_zeros_in_chart(field, &changed) {
            let mut out: Vec<ProjPoint<F>> = Vec::new();
            for v in pts {
                let image: [F::Elem; 3] = std::array::from_fn(|i| {
                    (0..3).fold(field.zero(), |acc, j| field.add(&acc, &field.mul(&t[i][j], &v[j])))
                });
                let p = ProjPoint::new(field, image).ok()?;
                if forms.iter().all(|g| field.is_zero(&g.eval(p.coords()))) && !out.contains(&p) {
                    out.push(p);
                }
            }
            out.sort_by_key(|p| p.format(field));
            return Some(out);
        }
    }
    None
}

fn common_zeros_in_chart<F: Field>(f: &F, forms: &[Form<F>]) -> Option<Vec<[F::Elem; 3]>> {
    let one = f.one();
    let zero = f.zero();
    let mut out = Vec::new();
    // the line z = 0: points (1 : t : 0) and (0 : 1 : 0)
    let on_line: Vec<Vec<F::Elem>> = forms
        .iter()
        .map(|g| g.restrict_to_line(&[one.clone(), zero.clone(), zero.clone()], &[zero.clone(), one.clone(), zero.clone()]))
        .collect();
    let mut g = Vec::new();
    let mut all_vanish = true;
    for r in &on_line {
        if !poly::is_zero_poly(f, r) {
            all_vanish = false;
            g = if g.is_empty() { poly::monic(f, r) } else { poly::gcd(f, &g, r) };
        }
    }
    if all_vanish {
        return None;
    }
    for t in poly_roots(f, &g)? {
        out.push([one.clone(), t, zero.clone()]);
    }
    let infinity = [zero.clone(), one.clone(), zero.clone()];
    if forms.iter().all(|g| f.is_zero(&g.eval(&infinity))) {
        out.push(infinity);
    }
    // the chart z = 1: eliminate y between pencil members, which share no
    // component when the common zero set is finite
    let coeffs: Vec<Vec<Vec<F::Elem>>> = forms.iter().map(chart_coeffs).collect();
    let combos: [[i64; 3]; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 2, 3]];
    let mixes: Vec<Form<F>> = combos
        .iter()
        .map(|w| {
            forms
                .iter()
                .zip(w)
                .fold(Form::zero(f, 2), |acc, (g, &k)| acc.add(&g.scale(&f.from_i64(k))))
        })
        .collect();
    let extra: Vec<Vec<Vec<F::Elem>>> = [[3, 1, 5], [2, 7, 1]]
        .iter()
        .map(|w: &[i64; 3]| {
            let g = forms
                .iter()
                .zip(w)
                .fold(Form::zero(f, 2), |acc, (g, &k)| acc.add(&g.scale(&f.from_i64(k))));
            chart_coeffs(&g)
        })
        .collect();
    let mut pool: Vec<Vec<Vec<F::Elem>>> = mixes.iter().map(chart_coeffs).collect();
    pool.extend(extra);
    let mut elim: Vec<F::Elem> = Vec::new();
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            let r = quadratic_resultant(f, &pool[i], &pool[j]);
            if !r.is_empty() {
                elim = if elim.is_empty() { poly::monic(f, &r) } else { poly::gcd(f, &elim, &r) };
            }
        }
    }
    if elim.is_empty() {
        return None;
    }
    for x0 in poly_roots(f, &elim)? {
        let mut h: Vec<F::Elem> = Vec::new();
        let mut any = false;
        for c in &coeffs {
            let fiber: Vec<F::Elem> = c.iter().map(|p| poly::eval(f, p, &x0)).collect();
            let fiber = poly::trim(f, fiber);
            if !fiber.is_empty() {
                any = true;
                h = if h.is_empty() { poly::monic(f, &fiber) } else { poly::gcd(f, &h, &fiber) };
            }
        }
        if !any {
            return None;
        }
        for y0 in poly_roots(f, &h).unwrap_or_default() {
            out.push([x0.clone(), y0, one.clone()]);
        }
    }
    Some(out)
}

/// A singular point with its local length (Tjurina number).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint<F: Field> {
    pub point: ProjPoint<F>,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularLocus<F: Field> {
    /// Singular points over the base field.
    pub points: Vec<SingularPoint<F>>,
    /// Total length over the algebraic closure; zero iff the cubic is
    /// smooth.
    pub total_length: usize,
    /// Every singular point over the closure lies in the base field.
    pub resolved: bool,
}

impl<F: Field> SingularLocus<F> {
    pub fn is_smooth(&self) -> bool {
        self.total_length == 0
    }
}

pub fn partials<F: Field>(cubic: &Form<F>) -> Vec<Form<F>> {
    (0..3).map(|v| cubic.derivative(v)).collect()
}

/// Singular points of a plane cubic.
pub fn singular_points<F: Field>(cubic: &Form<F>) -> Result<SingularLocus<F>> {
    let f = cubic.field();
    if cubic.is_zero() {
        return Err(Error::IdenticallyZeroCubic);
    }
    let grads = partials(cubic);
    let total = scheme_length(f, &grads)?;
    if total == 0 {
        return Ok(SingularLocus {
            points: Vec::new(),
            total_length: 0,
            resolved: true,
        });
    }
    let Some(pts) = common_zeros(f, &grads) else {
        return Ok(SingularLocus {
            points: Vec::new(),
            total_length: total,
            resolved: false,
        });
    };
    let points: Vec<SingularPoint<F>> = pts
        .into_iter()
        .filter(|p| f.is_zero(&cubic.eval(p.coords())))
        .map(|p| SingularPoint {
            length: local_length(f, &grads, &p),
            point: p,
        })
        .collect();
    let found: usize = points.iter().map(|s| s.length).sum();
    Ok(SingularLocus {
        resolved: found == total,
        points,
        total_length: total,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearComponents<F: Field> {
    /// Normalized linear factors over the base field, with repetition.
    pub lines: Vec<Form<F>>,
    /// The cubic divided by all found lines.
    pub residual: Form<F>,
    /// Root finding was conclusive, so no rational factor was missed.
    pub resolved: bool,
}

/// Linear factors of a form over the base field.
pub fn linear_components<F: Field>(cubic: &Form<F>) -> Result<LinearComponents<F>> {
    if cubic.is_zero() {
        return Err(Error::IdenticallyZeroCubic);
    }
    let mut lines = Vec::new();
    let mut rest = cubic.clone();
    let mut resolved = true;
    'outer: while rest.degree() > 0 {
        let candidates = match line_candidates(&rest) {
            Some(c) => c,
            None => {
                resolved = false;
                break;
            }
        };
        for l in candidates {
            if let Some(q) = rest.divide_linear(&l) {
                lines.push(l.normalized());
                rest = q;
                continue 'outer;
            }
        }
        break;
    }
    Ok(LinearComponents {
        lines,
        residual: rest,
        resolved,
    })
}

/// Candidate linear factors `x`, `y`, `z`, `y - a x` and `z - a x - b y`.
fn line_candidates<F: Field>(g: &Form<F>) -> Option<Vec<Form<F>>> {
    let f = g.field();
    let (o, z) = (f.one(), f.zero());
    let mut out = vec![
        Form::linear(f, &[o.clone(), z.clone(), z.clone()]),
        Form::linear(f, &[z.clone(), o.clone(), z.clone()]),
        Form::linear(f, &[z.clone(), z.clone(), o.clone()]),
    ];
    let roots_on = |a: [F::Elem; 3], b: [F::Elem; 3]| -> Option<Vec<F::Elem>> {
        let r = g.restrict_to_line(&a, &b);
        if poly::is_zero_poly(f, &r) {
            Some(Vec::new())
        } else {
            f.roots(&r)
        }
    };
    // y = a x: G(1, t, 0) = 0
    for a in roots_on([o.clone(), z.clone(), z.clone()], [z.clone(), o.clone(), z.clone()])? {
        out.push(Form::linear(f, &[f.neg(&a), o.clone(), z.clone()]));
    }
    // z = a x + b y: G(1, 0, a) = 0 and G(0, 1, b) = 0
    let as_ = roots_on([o.clone(), z.clone(), z.clone()], [z.clone(), z.clone(), o.clone()])?;
    let bs = roots_on([z.clone(), o.clone(), z.clone()], [z.clone(), z.clone(), o.clone()])?;
    for a in &as_ {
        for b in &bs {
            out.push(Form::linear(f, &[f.neg(a), f.neg(b), o.clone()]));
        }
    }
    Some(out)
}

/// Points of the line `l = 0` over the base field, up to `count`.
fn points_on_line<F: Field>(l: &Form<F>, count: usize) -> Vec<ProjPoint<F>> {
    let f = l.field();
    let k = Matrix::new(f, 3, vec![l.coeffs().to_vec()]).unwrap().nullspace();
    let (p0, p1) = (&k.basis()[0], &k.basis()[1]);
    let mut out = Vec::new();
    if let Ok(p) = ProjPoint::from_slice(f, p1) {
        out.push(p);
    }
    let mut t = 0i64;
    while out.len() < count && t < 10_000 {
        let tv = f.from_i64(t);
        let v: Vec<F::Elem> = (0..3).map(|i| f.add(&p0[i], &f.mul(&tv, &p1[i]))).collect();
        if let Ok(p) = ProjPoint::from_slice(f, &v) {
            if !out.contains(&p) {
                out.push(p);
            }
        }
        t += 1;
    }
    out
}

/// Images under `σ` of up to `count` non-degenerate points of the line.
fn line_images<F: Field>(a: &QuadraticAlgebra<F>, l: &Form<F>, count: usize) -> Vec<(ProjPoint<F>, ProjPoint<F>)> {
    points_on_line(l, 4 * count + 8)
        .into_iter()
        .filter_map(|p| sigma(a, &p).ok().map(|q| (p, q)))
        .take(count)
        .collect()
}

/// Whether `σ` maps the line `l ⊆ X` into itself, tested on at least four
/// points.
pub fn line_sigma_invariant<F: Field>(a: &QuadraticAlgebra<F>, l: &Form<F>) -> Result<bool> {
    let f = a.field();
    let imgs = line_images(a, l, 6);
    if imgs.len() < 4 {
        return Err(Error::InsufficientPoints {
            found: imgs.len(),
            requested: 4,
        });
    }
    Ok(imgs.iter().all(|(_, q)| f.is_zero(&l.eval(q.coords()))))
}

/// Index of the line among `lines` containing `σ` of every sampled point
/// of `l`.
pub fn line_image<F: Field>(a: &QuadraticAlgebra<F>, l: &Form<F>, lines: &[Form<F>]) -> Option<usize> {
    let f = a.field();
    let imgs = line_images(a, l, 6);
    if imgs.len() < 4 {
        return None;
    }
    lines
        .iter()
        .position(|m| imgs.iter().all(|(_, q)| f.is_zero(&m.eval(q.coords()))))
}

/// The conics `f_i(p, p)` whose common zeros are the fixed points of `σ`.
pub fn fixed_point_conics<F: Field>(a: &QuadraticAlgebra<F>) -> Vec<Form<F>> {
    let f = a.field();
    (0..3)
        .map(|i| {
            let mut g = Form::zero(f, 2);
            for x in 0..3 {
                for y in 0..3 {
                    let mut e = [0usize; 3];
                    e[x] += 1;
                    e[y] += 1;
                    g = g.add(&Form::monomial(f, e, a.coeff(i, x, y).clone()));
                }
            }
            g
        })
        .collect()
}

/// Fixed points of `σ` over the base field; `None` if the elimination is
/// inconclusive.
pub fn fixed_points<F: Field>(a: &QuadraticAlgebra<F>) -> Option<Vec<ProjPoint<F>>> {
    let pts = common_zeros(a.field(), &fixed_point_conics(a))?;
    Some(
        pts.into_iter()
            .filter(|p| sigma(a, p).is_ok_and(|q| q == *p))
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness<F: Field> {
    InvariantLine(Form<F>),
    FixedSingularPoint(ProjPoint<F>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<F: Field> {
    StableSmooth,
    StableTriangleCyclic,
    Exceptional,
    Unstable(Witness<F>),
    Linear,
    Unresolved(String),
}

impl<F: Field> Verdict<F> {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::StableSmooth => "StableSmooth",
            Verdict::StableTriangleCyclic => "StableTriangleCyclic",
            Verdict::Exceptional => "Exceptional",
            Verdict::Unstable(_) => "Unstable",
            Verdict::Linear => "Linear",
            Verdict::Unresolved(_) => "Unresolved",
        }
    }

    pub fn is_stable(&self) -> bool {
        matches!(self, Verdict::StableSmooth | Verdict::StableTriangleCyclic)
    }
}

impl<F: Field> fmt::Display for Verdict<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Unresolved(why) => write!(f, "Unresolved ({why})"),
            other => f.write_str(other.name()),
        }
    }
}

/// A linear component with its behaviour under `σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineInfo<F: Field> {
    pub form: Form<F>,
    pub invariant: bool,
    /// Index of the component `σ` maps this line into, if found.
    pub image: Option<usize>,
}

/// A singular point with its behaviour under `σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularInfo<F: Field> {
    pub point: ProjPoint<F>,
    pub length: usize,
    /// `None` when `σ` is not defined at the point.
    pub fixed: Option<bool>,
}

/// Full geometric analysis of an algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geometry<F: Field> {
    pub cubic: Option<Form<F>>,
    pub singular_total: Option<usize>,
    pub singular_resolved: bool,
    pub singular: Vec<SingularInfo<F>>,
    pub lines: Vec<LineInfo<F>>,
    pub lines_resolved: bool,
    pub verdict: Verdict<F>,
}

fn is_three_cycle(map: &[Option<usize>]) -> bool {
    if map.len() != 3 {
        return false;
    }
    let Some(m) = map.iter().copied().collect::<Option<Vec<usize>>>() else {
        return false;
    };
    let mut sorted = m.clone();
    sorted.sort_unstable();
    sorted == [0, 1, 2] && (0..3).all(|i| m[i] != i)
}

/// Runs the geometric sub-analyses and classifies the algebra.
pub fn analyze<F: Field>(a: &QuadraticAlgebra<F>) -> Result<Geometry<F>> {
    let cubic = match semistandard_check(a) {
        Ok(c) => c,
        Err(Error::IdenticallyZeroCubic) => {
            return Ok(Geometry {
                cubic: None,
                singular_total: None,
                singular_resolved: true,
                singular: Vec::new(),
                lines: Vec::new(),
                lines_resolved: true,
                verdict: Verdict::Linear,
            })
        }
        Err(e) => return Err(e),
    };
    let comps = linear_components(&cubic)?;
    let mut lines: Vec<LineInfo<F>> = Vec::new();
    for l in &comps.lines {
        if lines.iter().any(|x| x.form == *l) {
            continue;
        }
        lines.push(LineInfo {
            form: l.clone(),
            invariant: line_sigma_invariant(a, l).unwrap_or(false),
            image: None,
        });
    }
    let forms: Vec<Form<F>> = lines.iter().map(|l| l.form.clone()).collect();
    for info in &mut lines {
        info.image = line_image(a, &info.form, &forms);
    }
    let mut geo = Geometry {
        cubic: Some(cubic.clone()),
        singular_total: None,
        singular_resolved: false,
        singular: Vec::new(),
        lines,
        lines_resolved: comps.resolved,
        verdict: Verdict::Unresolved(String::new()),
    };
    let locus = match singular_points(&cubic) {
        Ok(l) => Some(l),
        Err(Error::PositiveDimensionalSingularLocus) => None,
        Err(e) => return Err(e),
    };
    if let Some(locus) = &locus {
        geo.singular_total = Some(locus.total_length);
        geo.singular_resolved = locus.resolved;
        for s in &locus.points {
            let fixed = sigma(a, &s.point).ok().map(|q| q == s.point);
            geo.singular.push(SingularInfo {
                point: s.point.clone(),
                length: s.length,
                fixed,
            });
        }
    }
    geo.verdict = classify(&geo, locus.is_none());
    Ok(geo)
}

fn classify<F: Field>(geo: &Geometry<F>, positive_dimensional: bool) -> Verdict<F> {
    if let Some(l) = geo.lines.iter().find(|l| l.invariant) {
        return Verdict::Unstable(Witness::InvariantLine(l.form.clone()));
    }
    if let Some(s) = geo.singular.iter().find(|s| s.fixed == Some(true)) {
        return Verdict::Unstable(Witness::FixedSingularPoint(s.point.clone()));
    }
    if positive_dimensional {
        return Verdict::Unresolved("singular locus is positive-dimensional".into());
    }
    if !geo.lines_resolved {
        return Verdict::Unresolved("linear factor search inconclusive".into());
    }
    if !geo.singular_resolved {
        return Verdict::Unresolved("singular points outside the base field".into());
    }
    if geo.singular.iter().any(|s| s.fixed.is_none()) {
        return Verdict::Unresolved("sigma undefined at a singular point".into());
    }
    let total = geo.singular_total.unwrap_or(0);
    if total == 0 && geo.lines.is_empty() {
        return Verdict::StableSmooth;
    }
    let nodes = geo.singular.len() == total && geo.singular.iter().all(|s| s.length == 1);
    if geo.lines.len() == 3 && total == 3 && nodes {
        let map: Vec<Option<usize>> = geo.lines.iter().map(|l| l.image).collect();
        if is_three_cycle(&map) {
            return Verdict::StableTriangleCyclic;
        }
        return Verdict::Unresolved("triangle without cyclic sigma action".into());
    }
    if geo.lines.len() == 1 && total == 2 && nodes {
        return Verdict::Exceptional;
    }
    Verdict::Unresolved("configuration not covered by the classification".into())
}

/// Report-friendly rendering of a form: coefficients over
/// [`monomials`] order.
pub fn format_form<F: Field>(g: &Form<F>) -> String {
    let f = g.field();
    let names = ["x", "y", "z"];
    let mut terms = Vec::new();
    for (e, c) in monomials(g.degree()).iter().zip(g.coeffs()) {
        if f.is_zero(c) {
            continue;
        }
        let mut mono = String::new();
        for (v, &k) in e.iter().enumerate() {
            match k {
                0 => {}
                1 => mono.push_str(names[v]),
                _ => mono.push_str(&format!("{}^{k}", names[v])),
            }
        }
        let coef = f.format(c);
        terms.push(match (coef.as_str(), mono.is_empty()) {
            (_, true) => coef,
            ("1", false) => mono,
            _ => format!("{coef}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Serializable summary of a [`Geometry`].
#[derive(Debug, Clone, Serialize)]
pub struct GeometryReport {
    pub cubic: Option<Vec<String>>,
    pub cubic_text: Option<String>,
    pub verdict: String,
    pub witness: Option<String>,
    pub reason: Option<String>,
    pub singular_total_length: Option<usize>,
    pub singular_resolved: bool,
    pub singular_points: Vec<SingularReport>,
    pub components: Vec<ComponentReport>,
    pub sigma_samples: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularReport {
    pub point: String,
    pub length: usize,
    pub fixed: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub form: String,
    pub invariant: bool,
    pub image: Option<usize>,
}

impl GeometryReport {
    pub fn new<F: Field>(geo: &Geometry<F>, field: &F, sigma_samples: &[(ProjPoint<F>, ProjPoint<F>)]) -> Self {
        let (witness, reason) = match &geo.verdict {
            Verdict::Unstable(Witness::InvariantLine(l)) => (Some(format!("invariant line {}", format_form(l))), None),
            Verdict::Unstable(Witness::FixedSingularPoint(p)) => {
                (Some(format!("fixed singular point {}", p.format(field))), None)
            }
            Verdict::Unresolved(why) => (None, Some(why.clone())),
            _ => (None, None),
        };
        Self {
            cubic: geo
                .cubic
                .as_ref()
                .map(|c| c.coeffs().iter().map(|x| field.format(x)).collect()),
            cubic_text: geo.cubic.as_ref().map(format_form),
            verdict: geo.verdict.name().to_string(),
            witness,
            reason,
            singular_total_length: geo.singular_total,
            singular_resolved: geo.singular_resolved,
            singular_points: geo
                .singular
                .iter()
                .map(|s| SingularReport {
                    point: s.point.format(field),
                    length: s.length,
                    fixed: s.fixed,
                })
                .collect(),
            components: geo
                .lines
                .iter()
                .map(|l| ComponentReport {
                    form: format_form(&l.form),
                    invariant: l.invariant,
                    image: l.image,
                })
                .collect(),
            sigma_samples: sigma_samples
                .iter()
                .map(|(p, q)| [p.format(field), q.format(field)])
                .collect(),
        }
    }
}
