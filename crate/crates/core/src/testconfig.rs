//! Test configurations generated by filtrations of `A_1`: the chains
//! `I_n^(k)`, weight and Futaki functions, and per-flag verdicts.

use num_rational::Rational64;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{GradedSubspace, QuadraticAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Subspace;

/// The flag `V ⊃ W (ℓ times) ⊃ U (m times) ⊃ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagShape<F: Field> {
    pub w: Option<Subspace<F>>,
    pub l: usize,
    pub u: Option<Subspace<F>>,
    pub m: usize,
}

/// A descending filtration `A_1 = W^(0) ⊇ W^(1) ⊇ ... ⊇ 0`. Only the
/// levels `W^(1), ..., W^(top)` are stored; all later levels vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration<F: Field> {
    field: F,
    levels: Vec<Subspace<F>>,
    shape: Option<FlagShape<F>>,
}

impl<F: Field> Filtration<F> {
    /// Builds a filtration from `W^(1), W^(2), ...`; trailing zero levels
    /// are dropped.
    pub fn new(field: &F, mut levels: Vec<Subspace<F>>) -> Result<Self> {
        while levels.last().is_some_and(Subspace::is_zero) {
            levels.pop();
        }
        for (j, lev) in levels.iter().enumerate() {
            if lev.ambient() != 3 {
                return Err(Error::DimensionMismatch {
                    expected: 3,
                    found: lev.ambient(),
                });
            }
            if j > 0 && !lev.is_subspace_of(&levels[j - 1])? {
                return Err(Error::InvalidFiltration(format!(
                    "level {} is not contained in level {j}",
                    j + 1
                )));
            }
        }
        if levels.first().is_some_and(Subspace::is_full) {
            return Err(Error::InvalidFiltration("W^(1) must be a proper subspace".into()));
        }
        Ok(Self {
            field: field.clone(),
            levels,
            shape: None,
        })
    }

    /// The flag filtration with `W` repeated `l` times and `U` repeated
    /// `m` times.
    pub fn flag(
        field: &F,
        w: Option<Subspace<F>>,
        l: usize,
        u: Option<Subspace<F>>,
        m: usize,
    ) -> Result<Self> {
        if l + m == 0 {
            return Err(Error::InvalidFiltration("one of l, m must be positive".into()));
        }
        let w = if l > 0 { w } else { None };
        let u = if m > 0 { u } else { None };
        if l > 0 {
            match &w {
                Some(w) if w.ambient() == 3 && w.dim() == 2 => {}
                Some(w) => {
                    return Err(Error::InvalidFiltration(format!(
                        "W must be 2-dimensional, got dimension {}",
                        w.dim()
                    )))
                }
                None => return Err(Error::InvalidFiltration("l > 0 requires W".into())),
            }
        }
        if m > 0 {
            match &u {
                Some(u) if u.ambient() == 3 && u.dim() == 1 => {}
                Some(u) => {
                    return Err(Error::InvalidFiltration(format!(
                        "U must be 1-dimensional, got dimension {}",
                        u.dim()
                    )))
                }
                None => return Err(Error::InvalidFiltration("m > 0 requires U".into())),
            }
        }
        if let (Some(w), Some(u)) = (&w, &u) {
            if !u.is_subspace_of(w)? {
                return Err(Error::InvalidFiltration("U must lie in W".into()));
            }
        }
        let mut levels = Vec::with_capacity(l + m);
        levels.extend(std::iter::repeat_n(w.clone(), l).flatten());
        levels.extend(std::iter::repeat_n(u.clone(), m).flatten());
        let mut filt = Self::new(field, levels)?;
        filt.shape = Some(FlagShape { w, l, u, m });
        Ok(filt)
    }

    /// The filtration with `W^(1) = 0`.
    pub fn trivial(field: &F) -> Self {
        Self {
            field: field.clone(),
            levels: Vec::new(),
            shape: None,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }
    /// Largest `j` with `W^(j) ≠ 0`.
    pub fn top(&self) -> usize {
        self.levels.len()
    }
    pub fn shape(&self) -> Option<&FlagShape<F>> {
        self.shape.as_ref()
    }
    pub fn levels(&self) -> &[Subspace<F>] {
        &self.levels
    }

    /// `W^(j)`, with `W^(0) = A_1`.
    pub fn level(&self, j: usize) -> Subspace<F> {
        match j {
            0 => Subspace::full(&self.field, 3),
            j if j <= self.levels.len() => self.levels[j - 1].clone(),
            _ => Subspace::zero(&self.field, 3),
        }
    }

    /// `w(1) = Σ_j dim W^(j)`.
    pub fn weight_one(&self) -> usize {
        self.levels.iter().map(Subspace::dim).sum()
    }

    /// Maximal runs `lo..=hi` of equal levels among `1..=top`.
    fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for j in 1..=self.levels.len() {
            match out.last_mut() {
                Some((_, hi)) if self.levels[*hi - 1] == self.levels[j - 1] => *hi = j,
                _ => out.push((j, j)),
            }
        }
        out
    }
}

/// A random flag with the given multiplicities: `W` spanned by two random
/// vectors, `U` a random vector of `W`, resampled until the dimensions are
/// right.
pub fn random_flag<F: Field, R: Rng + ?Sized>(field: &F, rng: &mut R, l: usize, m: usize) -> Result<Filtration<F>> {
    let random_vec = |rng: &mut R| -> Vec<F::Elem> { (0..3).map(|_| field.random(rng)).collect() };
    loop {
        let a = random_vec(rng);
        let b = random_vec(rng);
        let w = Subspace::from_rows(field, 3, vec![a.clone(), b.clone()]);
        if w.dim() != 2 {
            continue;
        }
        let (s, t) = (field.random(rng), field.random(rng));
        let uv: Vec<F::Elem> = a
            .iter()
            .zip(&b)
            .map(|(x, y)| field.add(&field.mul(&s, x), &field.mul(&t, y)))
            .collect();
        let u = Subspace::from_rows(field, 3, vec![uv]);
        if u.dim() != 1 {
            continue;
        }
        return Filtration::flag(field, Some(w), l, Some(u), m);
    }
}

/// The chains `[I_n^(1), I_n^(2), ...]` for `n = 1..=n_max`, truncated at
/// the last nonzero term. Uses `I_n^(k) = Σ_j I_{n-1}^(k-j) · W^(j)` with
/// `I^(k) = A` for `k ≤ 0`, one representative `j` per run of equal levels.
pub fn chains<F: Field>(
    a: &QuadraticAlgebra<F>,
    filt: &Filtration<F>,
    n_max: usize,
) -> Result<Vec<Vec<GradedSubspace<F>>>> {
    let mut out: Vec<Vec<GradedSubspace<F>>> = Vec::with_capacity(n_max);
    if n_max == 0 {
        return Ok(out);
    }
    let top = filt.top();
    let lift = |s: Subspace<F>| GradedSubspace { degree: 1, space: s };
    out.push((1..=top).map(|j| lift(filt.level(j))).collect());
    let blocks = filt.blocks();
    let v = a.full(1)?;
    for n in 2..=n_max {
        let prev = &out[n - 2];
        let full_prev = a.full(n - 1)?;
        let at = |k: i64| -> Option<&GradedSubspace<F>> {
            if k <= 0 {
                Some(&full_prev)
            } else {
                prev.get(k as usize - 1)
            }
        };
        let mut chain = Vec::new();
        for k in 1..=(n * top) as i64 {
            let mut total = match at(k) {
                Some(s) => a.product(s, &v)?,
                None => a.zero_subspace(n)?,
            };
            for &(lo, hi) in &blocks {
                let j = if k >= hi as i64 {
                    hi
                } else if k >= lo as i64 {
                    k as usize
                } else {
                    lo
                };
                if let Some(s) = at(k - j as i64) {
                    if !s.space.is_zero() {
                        let w = lift(filt.level(j));
                        total = total.sum(&a.product(s, &w)?)?;
                    }
                }
            }
            if total.space.is_zero() {
                break;
            }
            chain.push(total);
        }
        out.push(chain);
    }
    Ok(out)
}

/// The chain `I_n^(1) ⊇ I_n^(2) ⊇ ...` in degree `n`.
pub fn config_chain<F: Field>(
    a: &QuadraticAlgebra<F>,
    filt: &Filtration<F>,
    n: usize,
) -> Result<Vec<GradedSubspace<F>>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(chains(a, filt, n)?.pop().unwrap_or_default())
}

/// Which ring the weights are measured in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// The algebra `A` itself; normalizer `n · dim A_n`.
    Algebra,
    /// The twisted ring `B = A / c_3 A`; normalizer `n · dim B_n`.
    Twisted,
}

/// Weight data of one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeWeights {
    pub degree: usize,
    /// `dim I_n^(k)` for `k = 1, 2, ...`.
    pub chain_dims: Vec<usize>,
    pub weight: i64,
    pub piece_dim: usize,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub futaki: Rational64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightTable {
    pub side: Side,
    pub rows: Vec<DegreeWeights>,
}

impl WeightTable {
    pub fn row(&self, n: usize) -> Option<&DegreeWeights> {
        self.rows.iter().find(|r| r.degree == n)
    }
    pub fn weight(&self, n: usize) -> Option<i64> {
        self.row(n).map(|r| r.weight)
    }
    pub fn futaki(&self, n: usize) -> Option<Rational64> {
        self.row(n).map(|r| r.futaki)
    }
}

/// Builds a weight table from precomputed chains, measuring each subspace
/// with `measure` inside pieces of dimension `piece_dim(n)`.
pub fn table_from_chains<F: Field>(
    side: Side,
    chains: &[Vec<GradedSubspace<F>>],
    mut measure: impl FnMut(&GradedSubspace<F>) -> Result<usize>,
    mut piece_dim: impl FnMut(usize) -> Result<usize>,
) -> Result<WeightTable> {
    let mut rows = Vec::with_capacity(chains.len());
    for (idx, chain) in chains.iter().enumerate() {
        let n = idx + 1;
        let mut chain_dims = Vec::with_capacity(chain.len());
        for s in chain {
            chain_dims.push(measure(s)?);
        }
        while chain_dims.last() == Some(&0) {
            chain_dims.pop();
        }
        let weight: i64 = chain_dims.iter().map(|&d| d as i64).sum();
        let dim = piece_dim(n)?;
        let futaki = if dim == 0 {
            Rational64::from_integer(0)
        } else {
            Rational64::new(weight, (n * dim) as i64)
        };
        rows.push(DegreeWeights {
            degree: n,
            chain_dims,
            weight,
            piece_dim: dim,
            futaki,
        });
    }
    Ok(WeightTable { side, rows })
}

/// Weights and Futaki values `F(n) = w(n) / (n dim A_n)` in the algebra.
pub fn weight_table<F: Field>(
    a: &QuadraticAlgebra<F>,
    filt: &Filtration<F>,
    n_max: usize,
) -> Result<WeightTable> {
    let chains = chains(a, filt, n_max)?;
    table_from_chains(Side::Algebra, &chains, |s| Ok(s.dim()), |n| a.dim(n))
}

pub fn weight<F: Field>(a: &QuadraticAlgebra<F>, filt: &Filtration<F>, n: usize) -> Result<i64> {
    Ok(weight_table(a, filt, n)?.weight(n).unwrap_or(0))
}

pub fn futaki<F: Field>(a: &QuadraticAlgebra<F>, filt: &Filtration<F>, n: usize) -> Result<Rational64> {
    Ok(weight_table(a, filt, n)?
        .futaki(n)
        .unwrap_or_else(|| Rational64::from_integer(0)))
}

/// Dimensions of `I_n^(k) / I_n^(k+1)` for `k = 0, 1, ...`, where
/// `I_n^(0)` is the whole piece of dimension `piece_dim`.
pub fn central_fiber(chain_dims: &[usize], piece_dim: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(chain_dims.len() + 1);
    let mut prev = piece_dim;
    for &d in chain_dims {
        out.push(prev - d);
        prev = d;
    }
    out.push(prev);
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// `Σ_k k · dim gr^(k)`.
pub fn fiber_weight(graded: &[usize]) -> i64 {
    graded
        .iter()
        .enumerate()
        .map(|(k, &d)| (k * d) as i64)
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagVerdictKind {
    Passes,
    Marginal,
    Destabilizing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagVerdict {
    pub kind: FlagVerdictKind,
    pub q: usize,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub f1: Rational64,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub fq: Rational64,
}

pub fn compare(f1: Rational64, fq: Rational64) -> FlagVerdictKind {
    use std::cmp::Ordering::*;
    match fq.cmp(&f1) {
        Greater => FlagVerdictKind::Passes,
        Equal => FlagVerdictKind::Marginal,
        Less => FlagVerdictKind::Destabilizing,
    }
}

/// Compares `F(q)` with `F(1)` in the algebra.
pub fn flag_verdict<F: Field>(a: &QuadraticAlgebra<F>, filt: &Filtration<F>, q: usize) -> Result<FlagVerdict> {
    if filt.is_trivial() {
        return Err(Error::TrivialFiltration);
    }
    if q < 2 {
        return Err(Error::InvalidFiltration(format!("q must be at least 2, got {q}")));
    }
    let table = weight_table(a, filt, q)?;
    let f1 = table.futaki(1).unwrap();
    let fq = table.futaki(q).unwrap();
    Ok(FlagVerdict {
        kind: compare(f1, fq),
        q,
        f1,
        fq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::linalg::unit;

    #[test]
    fn central_fiber_telescopes() {
        let g = central_fiber(&[5, 3, 1], 6);
        assert_eq!(g, vec![1, 2, 2, 1]);
        assert_eq!(fiber_weight(&g), 9);
        assert_eq!(central_fiber(&[], 6), vec![6]);
    }

    #[test]
    fn flag_validation() {
        let f = PrimeField::new(7).unwrap();
        let w = Subspace::from_rows(&f, 3, vec![unit(&f, 3, 0), unit(&f, 3, 1)]);
        let u_in = Subspace::from_rows(&f, 3, vec![unit(&f, 3, 0)]);
        let u_out = Subspace::from_rows(&f, 3, vec![unit(&f, 3, 2)]);
        assert!(Filtration::flag(&f, Some(w.clone()), 1, Some(u_in), 1).is_ok());
        assert!(Filtration::flag(&f, Some(w.clone()), 1, Some(u_out.clone()), 1).is_err());
        assert!(Filtration::flag(&f, Some(w.clone()), 0, None, 0).is_err());
        assert!(Filtration::flag(&f, Some(u_out), 1, None, 0).is_err());
        let filt = Filtration::flag(&f, Some(w), 2, None, 0).unwrap();
        assert_eq!(filt.top(), 2);
        assert_eq!(filt.weight_one(), 4);
        assert_eq!(filt.blocks(), vec![(1, 2)]);
        assert!(Filtration::new(&f, vec![Subspace::full(&f, 3)]).is_err());
    }
}
