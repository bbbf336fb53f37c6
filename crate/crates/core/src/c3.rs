//! The normal element `c_3 ∈ A_3` cutting out the twisted coordinate ring
//! `B = A / c_3 A`, found by evaluating `V^{⊗3}` on triples
//! `(p, σp, σ²p)` of the point scheme.

use rand::Rng;

use crate::algebra::{GradedSubspace, QuadraticAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linalg::{Matrix, Subspace};
use crate::pointscheme::{all_points, random_points, semistandard_check, sigma, ProjPoint};
use crate::testconfig::{chains, table_from_chains, Filtration, Side, WeightTable};

/// Expected dimension of the evaluation kernel in `V^{⊗3}`.
pub const KERNEL_DIM: usize = 18;

/// Point counts tried by [`sampled_kernel`].
pub const SAMPLE_ROUNDS: [usize; 3] = [40, 80, 160];

/// Kernel of the evaluation map `x_a x_b x_c ↦ x_a(p) x_b(σp) x_c(σ²p)`
/// over the given points. Points where `σ` or `σ²` is undefined are
/// skipped.
pub fn evaluation_kernel<F: Field>(a: &QuadraticAlgebra<F>, points: &[ProjPoint<F>]) -> Result<Subspace<F>> {
    let f = a.field();
    let mut rows = Vec::with_capacity(points.len());
    for p in points {
        let Ok(q) = sigma(a, p) else { continue };
        let Ok(r) = sigma(a, &q) else { continue };
        let (p, q, r) = (p.coords(), q.coords(), r.coords());
        let mut row = Vec::with_capacity(27);
        for x in p {
            for y in q {
                let xy = f.mul(x, y);
                for z in r {
                    row.push(f.mul(&xy, z));
                }
            }
        }
        rows.push(row);
    }
    Ok(Matrix::new(f, 27, rows)?.nullspace())
}

/// Evaluation kernel over random points, growing the sample through
/// [`SAMPLE_ROUNDS`] until the kernel has dimension [`KERNEL_DIM`]. Over a
/// small field with too few points every point is used.
pub fn sampled_kernel<F: Field, R: Rng + ?Sized>(a: &QuadraticAlgebra<F>, rng: &mut R) -> Result<Subspace<F>> {
    if a.field().spec() == FieldSpec::Rationals {
        return Err(Error::RequiresPrimeField);
    }
    let cubic = semistandard_check(a)?;
    let mut last = 27;
    for count in SAMPLE_ROUNDS {
        let points = match random_points(&cubic, count, rng) {
            Ok(p) => p,
            Err(Error::InsufficientPoints { .. }) => all_points(&cubic)?,
            Err(e) => return Err(e),
        };
        let k = evaluation_kernel(a, &points)?;
        if k.dim() == KERNEL_DIM {
            return Ok(k);
        }
        last = k.dim();
    }
    Err(Error::RankDeficientSampling(last))
}

/// `c_3` with its certificates, coordinates taken in the normal-word basis
/// of `A_3` and scaled so the first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalElement<F: Field> {
    pub coords: Vec<F::Elem>,
    /// Degrees checked by the certificates below.
    pub n_max: usize,
    /// `c_3 A_1 = A_1 c_3` in `A_4`.
    pub normal: bool,
    /// `c_3 A_{n-3} = A_{n-3} c_3` for every checked degree.
    pub left_right_agree: bool,
    /// `dim c_3 A_{n-3} = dim A_{n-3}` for every checked degree.
    pub nonzerodivisor: bool,
    /// `dim B_n` for `n = 1..=n_max`.
    pub b_dims: Vec<usize>,
}

impl<F: Field> NormalElement<F> {
    /// `dim B_n = 3n` for every checked degree.
    pub fn b_regular(&self) -> bool {
        self.b_dims.iter().enumerate().all(|(i, &d)| d == 3 * (i + 1))
    }

    pub fn certified(&self) -> bool {
        self.normal && self.left_right_agree && self.nonzerodivisor && self.b_regular()
    }

    pub fn as_subspace(&self, a: &QuadraticAlgebra<F>) -> Result<GradedSubspace<F>> {
        Ok(GradedSubspace {
            degree: 3,
            space: Subspace::try_from_rows(a.field(), a.dim(3)?, vec![self.coords.clone()])?,
        })
    }
}

/// Image in `A_3` of the evaluation kernel, normalized.
pub fn c3_from_kernel<F: Field>(a: &QuadraticAlgebra<F>, kernel: &Subspace<F>) -> Result<Vec<F::Elem>> {
    let f = a.field();
    let rows = kernel
        .basis()
        .iter()
        .map(|v| a.project(3, v))
        .collect::<Result<Vec<_>>>()?;
    let image = Subspace::from_rows(f, a.dim(3)?, rows);
    if image.dim() != 1 {
        return Err(Error::NotOneDimensional(image.dim()));
    }
    // reduced echelon rows already have leading coefficient 1
    Ok(image.basis()[0].clone())
}

/// `c_3 A_{n-3}`, the degree-`n` part of the ideal generated by `c_3`.
pub fn ideal<F: Field>(a: &QuadraticAlgebra<F>, c3: &GradedSubspace<F>, n: usize) -> Result<GradedSubspace<F>> {
    if n < 3 {
        return a.zero_subspace(n);
    }
    a.product(c3, &a.full(n - 3)?)
}

/// Samples the evaluation kernel, extracts `c_3` and certifies it through
/// degree `n_max`.
pub fn extract_c3<F: Field, R: Rng + ?Sized>(
    a: &QuadraticAlgebra<F>,
    n_max: usize,
    rng: &mut R,
) -> Result<NormalElement<F>> {
    let kernel = sampled_kernel(a, rng)?;
    let coords = c3_from_kernel(a, &kernel)?;
    certify_c3(a, coords, n_max)
}

pub fn certify_c3<F: Field>(a: &QuadraticAlgebra<F>, coords: Vec<F::Elem>, n_max: usize) -> Result<NormalElement<F>> {
    let c = GradedSubspace {
        degree: 3,
        space: Subspace::try_from_rows(a.field(), a.dim(3)?, vec![coords.clone()])?,
    };
    let v = a.full(1)?;
    let normal = n_max < 4 || a.product(&c, &v)?.space == a.product(&v, &c)?.space;
    let mut left_right_agree = true;
    let mut nonzerodivisor = true;
    let mut b_dims = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let right = ideal(a, &c, n)?;
        if n >= 3 {
            let left = a.product(&a.full(n - 3)?, &c)?;
            left_right_agree &= left.space == right.space;
            nonzerodivisor &= right.dim() == a.dim(n - 3)?;
        }
        b_dims.push(a.dim(n)? - right.dim());
    }
    Ok(NormalElement {
        coords,
        n_max,
        normal,
        left_right_agree,
        nonzerodivisor,
        b_dims,
    })
}

/// Whether `c_3` lies in the word-pattern subspace, e.g. `"WWV+WVW+VWW"`.
pub fn membership<F: Field>(
    a: &QuadraticAlgebra<F>,
    c3: &NormalElement<F>,
    pattern: &str,
    w: Option<&GradedSubspace<F>>,
    u: Option<&GradedSubspace<F>>,
) -> Result<bool> {
    let s = a.pattern_subspace(pattern, w, u)?;
    if s.degree != 3 {
        return Err(Error::Pattern(format!("{pattern} is not a degree-3 pattern")));
    }
    s.space.contains(&c3.coords)
}

/// Dimension of the image of `S ⊆ A_n` in `B_n`.
pub fn image_in_b<F: Field>(a: &QuadraticAlgebra<F>, c3: &NormalElement<F>, s: &GradedSubspace<F>) -> Result<usize> {
    let i = ideal(a, &c3.as_subspace(a)?, s.degree)?;
    Ok(s.sum(&i)?.dim() - i.dim())
}

/// Weights and Futaki values `F(n) = w(n) / (n · 3n)` measured in `B`.
pub fn twisted_weight_table<F: Field>(
    a: &QuadraticAlgebra<F>,
    c3: &NormalElement<F>,
    filt: &Filtration<F>,
    n_max: usize,
) -> Result<WeightTable> {
    let ch = chains(a, filt, n_max)?;
    let c = c3.as_subspace(a)?;
    let ideals = (1..=n_max).map(|n| ideal(a, &c, n)).collect::<Result<Vec<_>>>()?;
    table_from_chains(
        Side::Twisted,
        &ch,
        |s| {
            let i = &ideals[s.degree - 1];
            Ok(s.sum(i)?.dim() - i.dim())
        },
        |n| Ok(3 * n),
    )
}
