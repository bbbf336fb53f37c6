//! Dense exact linear algebra: row reduction, canonical subspaces and their
//! lattice operations.
//!
//! Tensor products use row-major index pairing: the basis vector
//! `e_i ⊗ e_j` of `S ⊗ T` sits at index `i * ambient(T) + j`.

use crate::error::{Error, Result};
use crate::field::Field;

/// Reduces `rows` (each of length `ncols`) to reduced row-echelon form in
/// place, dropping zero rows. Returns the pivot columns.
pub fn rref_in_place<F: Field>(f: &F, rows: &mut Vec<Vec<F::Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]).unwrap();
        if !f.is_one(&inv) {
            for x in rows[r][c..].iter_mut() {
                *x = f.mul(x, &inv);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().unwrap();
        for row in head.iter_mut().chain(rest.iter_mut()) {
            let factor = row[c].clone();
            if f.is_zero(&factor) {
                continue;
            }
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A dense matrix over `F`, stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<F::Elem>>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: &F, ncols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(Self {
            field: field.clone(),
            ncols,
            rows,
        })
    }

    pub fn from_i64(field: &F, rows: &[Vec<i64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::new(field, ncols, rows)
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let rows = (0..n).map(|i| unit(field, n, i)).collect();
        Self {
            field: field.clone(),
            ncols: n,
            rows,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }
    pub fn field(&self) -> &F {
        &self.field
    }

    /// The canonical reduced row-echelon form (zero rows removed) and rank.
    pub fn rref(&self) -> (Matrix<F>, usize) {
        let mut rows = self.rows.clone();
        let pivots = rref_in_place(&self.field, &mut rows, self.ncols);
        let rank = pivots.len();
        (
            Matrix {
                field: self.field.clone(),
                ncols: self.ncols,
                rows,
            },
            rank,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    pub fn row_space(&self) -> Subspace<F> {
        Subspace::from_rows(&self.field, self.ncols, self.rows.clone())
    }

    /// The right kernel `{ v : M v = 0 }`.
    pub fn nullspace(&self) -> Subspace<F> {
        let f = &self.field;
        let mut rows = self.rows.clone();
        let pivots = rref_in_place(f, &mut rows, self.ncols);
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.ncols];
            v[free] = f.one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = f.neg(&row[free]);
            }
            basis.push(v);
        }
        Subspace::from_rows(f, self.ncols, basis)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: v.len(),
            });
        }
        Ok(self.rows.iter().map(|r| dot(&self.field, r, v)).collect())
    }

    pub fn transpose(&self) -> Matrix<F> {
        let rows = (0..self.ncols)
            .map(|c| self.rows.iter().map(|r| r[c].clone()).collect())
            .collect();
        Matrix {
            field: self.field.clone(),
            ncols: self.rows.len(),
            rows,
        }
    }
}

pub fn unit<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
}

pub fn is_zero_vec<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

/// Row vector times a map given by the images of basis vectors:
/// `sum_i v[i] * images[i]`.
pub fn apply_rows<F: Field>(
    f: &F,
    v: &[F::Elem],
    images: &[Vec<F::Elem>],
    out_dim: usize,
) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); out_dim];
    for (c, img) in v.iter().zip(images) {
        if f.is_zero(c) {
            continue;
        }
        for (o, x) in out.iter_mut().zip(img) {
            if !f.is_zero(x) {
                *o = f.add(o, &f.mul(c, x));
            }
        }
    }
    out
}

/// Kronecker product of two coordinate vectors.
pub fn kron_vec<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(f.mul(x, y));
        }
    }
    out
}

/// A subspace of `F^ambient`, stored as its unique reduced row-echelon
/// basis. Two subspaces are equal exactly when their bases are identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Self {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Self {
            field: field.clone(),
            ambient,
            rows: (0..ambient).map(|i| unit(field, ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors. Panics if a vector has the wrong length;
    /// use [`Subspace::try_from_rows`] for unchecked input.
    pub fn from_rows(field: &F, ambient: usize, mut rows: Vec<Vec<F::Elem>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = rref_in_place(field, &mut rows, ambient);
        Self {
            field: field.clone(),
            ambient,
            rows,
            pivots,
        }
    }

    pub fn try_from_rows(field: &F, ambient: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: bad.len(),
            });
        }
        Ok(Self::from_rows(field, ambient, rows))
    }

    /// Wraps rows that are already in reduced row-echelon form.
    pub(crate) fn from_rref_unchecked(
        field: &F,
        ambient: usize,
        rows: Vec<Vec<F::Elem>>,
        pivots: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(rows.len(), pivots.len());
        Self {
            field: field.clone(),
            ambient,
            rows,
            pivots,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn matrix(&self) -> Matrix<F> {
        Matrix {
            field: self.field.clone(),
            ncols: self.ambient,
            rows: self.rows.clone(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    fn check_vec(&self, v: &[F::Elem]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Residue of `v` after eliminating against the basis; zero iff
    /// `v` lies in the subspace.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        self.check_vec(v)?;
        Ok(is_zero_vec(&self.field, &self.reduce(v)))
    }

    /// Coordinates of `v` in the canonical basis, if `v` is in the span.
    pub fn coordinates(&self, v: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        Ok(self
            .rows
            .iter()
            .all(|r| is_zero_vec(&self.field, &other.reduce(r))))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        let mut rows = self.rows.clone();
        for r in &other.rows {
            let red = self.reduce(r);
            if !is_zero_vec(&self.field, &red) {
                rows.push(red);
            }
        }
        Ok(Self::from_rows(&self.field, self.ambient, rows))
    }

    /// Intersection by the Zassenhaus algorithm.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let f = &self.field;
        let n = self.ambient;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(f, n));
        }
        let mut rows: Vec<Vec<F::Elem>> = Vec::with_capacity(self.dim() + other.dim());
        for r in &self.rows {
            let mut v = r.clone();
            v.extend(r.iter().cloned());
            rows.push(v);
        }
        for r in &other.rows {
            let mut v = r.clone();
            v.extend(std::iter::repeat_n(f.zero(), n));
            rows.push(v);
        }
        let pivots = rref_in_place(f, &mut rows, 2 * n);
        let meet = rows
            .into_iter()
            .zip(pivots)
            .filter(|(_, p)| *p >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        Ok(Self::from_rows(f, n, meet))
    }

    pub fn kron(&self, other: &Self) -> Self {
        let f = &self.field;
        let rows = self
            .rows
            .iter()
            .flat_map(|a| other.rows.iter().map(move |b| kron_vec(f, a, b)))
            .collect();
        Self::from_rows(f, self.ambient * other.ambient, rows)
    }

    /// Image under the linear map sending basis vector `i` to `images[i]`.
    pub fn map(&self, images: &[Vec<F::Elem>], out_dim: usize) -> Self {
        let f = &self.field;
        let rows = self
            .rows
            .iter()
            .map(|r| apply_rows(f, r, images, out_dim))
            .collect();
        Self::from_rows(f, out_dim, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn rref_examples() {
        let q = Rationals;
        let id = Matrix::identity(&q, 3);
        assert_eq!(id.rref(), (id.clone(), 3));
        let m = Matrix::from_i64(&q, &[vec![1, 2], vec![2, 4]]).unwrap();
        let (r, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r, Matrix::from_i64(&q, &[vec![1, 2]]).unwrap());
        let f5 = PrimeField::new(5).unwrap();
        let m = Matrix::from_i64(&f5, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rref().0, Matrix::from_i64(&f5, &[vec![1, 2]]).unwrap());
        let empty = Matrix::new(&q, 4, Vec::new()).unwrap();
        assert_eq!(empty.rank(), 0);
    }

    #[test]
    fn sum_and_intersection_of_coordinate_lines() {
        let q = Rationals;
        let s = Subspace::from_rows(&q, 3, vec![unit(&q, 3, 0)]);
        let t = Subspace::from_rows(&q, 3, vec![unit(&q, 3, 1)]);
        assert_eq!(s.sum(&t).unwrap().dim(), 2);
        assert_eq!(s.intersect(&t).unwrap().dim(), 0);
        assert_eq!(s.sum(&s).unwrap(), s);
        assert_eq!(s.intersect(&s).unwrap(), s);
        let wrong = Subspace::zero(&q, 4);
        assert!(matches!(
            s.sum(&wrong),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kron_examples() {
        let f = PrimeField::new(7).unwrap();
        let e1 = Subspace::from_rows(&f, 3, vec![unit(&f, 3, 0)]);
        let e2 = Subspace::from_rows(&f, 3, vec![unit(&f, 3, 1)]);
        assert_eq!(e1.kron(&e2), Subspace::from_rows(&f, 9, vec![unit(&f, 9, 1)]));
        let full = Subspace::full(&f, 3);
        assert_eq!(full.kron(&full), Subspace::full(&f, 9));
    }

    #[test]
    fn membership_and_nullspace() {
        let f = PrimeField::new(5).unwrap();
        let s = Subspace::from_rows(&f, 3, vec![unit(&f, 3, 0)]);
        assert!(s.contains(&unit(&f, 3, 0)).unwrap());
        assert!(!s.contains(&unit(&f, 3, 1)).unwrap());
        assert!(s.contains(&[1, 2]).is_err());
        let m = Matrix::from_i64(&f, &[vec![1, 1, 1]]).unwrap();
        let k = m.nullspace();
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert!(is_zero_vec(&f, &m.mul_vec(v).unwrap()));
        }
    }

    #[test]
    fn coordinates_recover_combination() {
        let f = PrimeField::new(11).unwrap();
        let s = Subspace::from_rows(&f, 4, vec![vec![1, 2, 3, 4], vec![0, 1, 5, 7]]);
        let v: Vec<u64> = (0..4)
            .map(|i| f.add(&f.mul(&3, &s.basis()[0][i]), &f.mul(&9, &s.basis()[1][i])))
            .collect();
        assert_eq!(s.coordinates(&v).unwrap(), Some(vec![3, 9]));
    }
}
