//! Quadratic algebras `A = T(V)/<R>` with `dim V = 3` and `dim R = 3`.
//!
//! Words of length `n` in the letters `x1 < x2 < x3` are indexed in base 3,
//! first letter most significant, so word order is lexicographic and the
//! index of `u·v` is `index(u) * 3^len(v) + index(v)`. The basis of `A_n`
//! consists of the normal words: the columns that are not pivots in the
//! reduced row-echelon form of the ideal `J_n ⊆ V^{⊗n}`. Pieces are built
//! degree by degree as `A_n = (A_{n-1} ⊗ V) / image(A_{n-2} ⊗ R)`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linalg::{apply_rows, rref_in_place, unit, Subspace};

/// Resource guards for graded computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest degree for which `A_n` may be built.
    pub max_degree: usize,
    /// Largest tensor dimension `3^n` that may be materialized.
    pub limit_dim: usize,
}

impl Limits {
    pub fn for_field(spec: FieldSpec) -> Self {
        let max_degree = match spec {
            FieldSpec::Rationals => 5,
            FieldSpec::Prime { .. } => 8,
        };
        Self {
            max_degree,
            limit_dim: 6561,
        }
    }
}

/// Number of words of length `n`.
pub fn word_count(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Letters of the word with the given index, most significant first.
pub fn word_letters(index: usize, n: usize) -> Vec<u8> {
    let mut out = vec![0u8; n];
    let mut k = index;
    for slot in out.iter_mut().rev() {
        *slot = (k % 3) as u8;
        k /= 3;
    }
    out
}

pub fn word_index(letters: &[u8]) -> usize {
    letters.iter().fold(0, |acc, &l| acc * 3 + l as usize)
}

/// Degree-`n` component of the algebra with its multiplication data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece<F: Field> {
    degree: usize,
    /// Indices of the normal words, ascending.
    words: Vec<usize>,
    /// Row `i * 3 + x`: coordinates of `w_i · x_x` in `A_n`, for each normal
    /// word `w_i` of degree `n - 1`.
    extend: Vec<Vec<F::Elem>>,
    /// Row `x * dim A_{n-1} + i`: coordinates of `x_x · w_i` in `A_n`.
    left: Vec<Vec<F::Elem>>,
}

impl<F: Field> GradedPiece<F> {
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn dim(&self) -> usize {
        self.words.len()
    }
    pub fn word_indices(&self) -> &[usize] {
        &self.words
    }
    pub fn words(&self) -> Vec<Vec<u8>> {
        self.words
            .iter()
            .map(|&w| word_letters(w, self.degree))
            .collect()
    }
    /// Position of a normal word in the basis.
    pub fn position(&self, word: usize) -> Option<usize> {
        self.words.binary_search(&word).ok()
    }
    pub fn extend_rows(&self) -> &[Vec<F::Elem>] {
        &self.extend
    }
    pub fn left_rows(&self) -> &[Vec<F::Elem>] {
        &self.left
    }
}

/// A subspace of a graded piece `A_n`, in the normal-word basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubspace<F: Field> {
    pub degree: usize,
    pub space: Subspace<F>,
}

impl<F: Field> GradedSubspace<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(Self {
            degree: self.degree,
            space: self.space.sum(&other.space)?,
        })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(Self {
            degree: self.degree,
            space: self.space.intersect(&other.space)?,
        })
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        if self.degree != other.degree {
            return Ok(false);
        }
        self.space.is_subspace_of(&other.space)
    }
}

/// Dimensions of the graded pieces up to some degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hilbert {
    pub dims: Vec<usize>,
    /// `dim A_n = (n+1)(n+2)/2` for every listed degree.
    pub regular: bool,
}

/// `(n+1)(n+2)/2`, the Hilbert function of a regular algebra; zero for
/// negative `n`.
pub fn regular_dim(n: i64) -> i64 {
    if n < 0 {
        0
    } else {
        (n + 1) * (n + 2) / 2
    }
}

#[derive(Serialize, Deserialize)]
struct StoredPiece {
    degree: usize,
    words: Vec<usize>,
    extend: Vec<Vec<String>>,
    left: Vec<Vec<String>>,
}

/// The algebra `T(V)/<f_1, f_2, f_3>` with `f_i = Σ c[i][a][b] x_a x_b`.
/// Clones share the memoized graded pieces.
#[derive(Clone)]
pub struct QuadraticAlgebra<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
    relations: Subspace<F>,
    hash: String,
    limits: Limits,
    cache_dir: Option<PathBuf>,
    pieces: Arc<Mutex<Vec<Arc<GradedPiece<F>>>>>,
}

impl<F: Field> fmt::Debug for QuadraticAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuadraticAlgebra")
            .field("field", &self.field.spec())
            .field("hash", &self.hash)
            .finish()
    }
}

impl<F: Field> QuadraticAlgebra<F> {
    /// Builds the algebra from the 27 coefficients `c[i][a][b]`, flattened
    /// as `i * 9 + a * 3 + b`. Rejects relations that do not span a
    /// 3-dimensional space.
    pub fn new(field: &F, coeffs: Vec<F::Elem>) -> Result<Self> {
        field.spec().validate()?;
        if coeffs.len() != 27 {
            return Err(Error::DimensionMismatch {
                expected: 27,
                found: coeffs.len(),
            });
        }
        let rows: Vec<Vec<F::Elem>> = coeffs.chunks(9).map(<[_]>::to_vec).collect();
        let relations = Subspace::from_rows(field, 9, rows);
        if relations.dim() != 3 {
            return Err(Error::RelationRank(relations.dim()));
        }
        let mut hasher = Sha256::new();
        hasher.update(field.spec().to_string().as_bytes());
        for c in &coeffs {
            hasher.update(b"|");
            hasher.update(field.format(c).as_bytes());
        }
        let hash = hex::encode(hasher.finalize());
        Ok(Self {
            field: field.clone(),
            coeffs,
            relations,
            hash,
            limits: Limits::for_field(field.spec()),
            cache_dir: None,
            pieces: Arc::new(Mutex::new(Vec::new())),
        })
    }

    pub fn from_i64(field: &F, c: &[[[i64; 3]; 3]; 3]) -> Result<Self> {
        let coeffs = c
            .iter()
            .flatten()
            .flatten()
            .map(|&v| field.from_i64(v))
            .collect();
        Self::new(field, coeffs)
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    /// Persists and reuses graded pieces under `dir/<hash>/deg-<n>.json`.
    pub fn with_cache_dir(mut self, dir: impl AsRef<Path>) -> Self {
        self.cache_dir = Some(dir.as_ref().to_path_buf());
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize, a: usize, b: usize) -> &F::Elem {
        &self.coeffs[i * 9 + a * 3 + b]
    }
    /// The relation space `R ⊆ V ⊗ V`.
    pub fn relation_space(&self) -> &Subspace<F> {
        &self.relations
    }
    /// Hex digest of the canonical serialization.
    pub fn hash(&self) -> &str {
        &self.hash
    }
    pub fn limits(&self) -> Limits {
        self.limits
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.limits.max_degree {
            return Err(Error::ResourceLimit(format!(
                "degree {n} exceeds the maximum degree {}",
                self.limits.max_degree
            )));
        }
        Ok(())
    }

    /// The graded piece `A_n`, built at most once per algebra.
    pub fn piece(&self, n: usize) -> Result<Arc<GradedPiece<F>>> {
        self.check_degree(n)?;
        let mut pieces = self.pieces.lock().unwrap();
        while pieces.len() <= n {
            let d = pieces.len();
            let piece = match self.load_cached(d) {
                Some(p) => p,
                None => {
                    let p = self.build_piece(d, &pieces);
                    self.store_cached(&p);
                    p
                }
            };
            pieces.push(Arc::new(piece));
        }
        Ok(pieces[n].clone())
    }

    fn build_piece(&self, n: usize, prev: &[Arc<GradedPiece<F>>]) -> GradedPiece<F> {
        let f = &self.field;
        match n {
            0 => GradedPiece {
                degree: 0,
                words: vec![0],
                extend: Vec::new(),
                left: Vec::new(),
            },
            1 => GradedPiece {
                degree: 1,
                words: vec![0, 1, 2],
                extend: (0..3).map(|x| unit(f, 3, x)).collect(),
                left: (0..3).map(|x| unit(f, 3, x)).collect(),
            },
            _ => {
                let p1 = &prev[n - 1];
                let p2 = &prev[n - 2];
                let ncols = p1.dim() * 3;
                // image of A_{n-2} ⊗ R in A_{n-1} ⊗ V
                let mut rows = Vec::with_capacity(p2.dim() * 3);
                for i in 0..p2.dim() {
                    for r in self.relations.basis() {
                        let mut row = vec![f.zero(); ncols];
                        for a in 0..3 {
                            let ext = &p1.extend[i * 3 + a];
                            for b in 0..3 {
                                let c = &r[a * 3 + b];
                                if f.is_zero(c) {
                                    continue;
                                }
                                for (j, e) in ext.iter().enumerate() {
                                    if !f.is_zero(e) {
                                        let k = j * 3 + b;
                                        row[k] = f.add(&row[k], &f.mul(c, e));
                                    }
                                }
                            }
                        }
                        rows.push(row);
                    }
                }
                let pivots = rref_in_place(f, &mut rows, ncols);
                let mut pivot_row = vec![None; ncols];
                for (r, &p) in pivots.iter().enumerate() {
                    pivot_row[p] = Some(r);
                }
                let free: Vec<usize> = (0..ncols).filter(|&c| pivot_row[c].is_none()).collect();
                let dim = free.len();
                let words = free
                    .iter()
                    .map(|&c| p1.words[c / 3] * 3 + c % 3)
                    .collect();
                let mut free_pos = vec![usize::MAX; ncols];
                for (k, &c) in free.iter().enumerate() {
                    free_pos[c] = k;
                }
                let extend: Vec<Vec<F::Elem>> = (0..ncols)
                    .map(|c| match pivot_row[c] {
                        None => unit(f, dim, free_pos[c]),
                        Some(r) => free.iter().map(|&fc| f.neg(&rows[r][fc])).collect(),
                    })
                    .collect();
                let mut piece = GradedPiece {
                    degree: n,
                    words,
                    extend,
                    left: Vec::new(),
                };
                let mut left = Vec::with_capacity(3 * p1.dim());
                for x in 0..3 {
                    for &w in &p1.words {
                        let prefix = w / 3;
                        let y = (w % 3) as u8;
                        let pos = p2.position(prefix).expect("normal words are prefix closed");
                        let u = &p1.left[x * p2.dim() + pos];
                        left.push(mul_letter(f, &piece, u, y));
                    }
                }
                piece.left = left;
                piece
            }
        }
    }

    fn cache_path(&self, n: usize) -> Option<PathBuf> {
        self.cache_dir
            .as_ref()
            .map(|d| d.join(&self.hash).join(format!("deg-{n}.json")))
    }

    fn load_cached(&self, n: usize) -> Option<GradedPiece<F>> {
        let path = self.cache_path(n)?;
        let text = std::fs::read_to_string(path).ok()?;
        let stored: StoredPiece = serde_json::from_str(&text).ok()?;
        if stored.degree != n {
            return None;
        }
        let parse = |rows: Vec<Vec<String>>| -> Option<Vec<Vec<F::Elem>>> {
            rows.into_iter()
                .map(|r| r.iter().map(|s| self.field.parse(s).ok()).collect())
                .collect()
        };
        Some(GradedPiece {
            degree: n,
            words: stored.words,
            extend: parse(stored.extend)?,
            left: parse(stored.left)?,
        })
    }

    fn store_cached(&self, piece: &GradedPiece<F>) {
        let Some(path) = self.cache_path(piece.degree) else {
            return;
        };
        let fmt_rows = |rows: &[Vec<F::Elem>]| -> Vec<Vec<String>> {
            rows.iter()
                .map(|r| r.iter().map(|c| self.field.format(c)).collect())
                .collect()
        };
        let stored = StoredPiece {
            degree: piece.degree,
            words: piece.words.clone(),
            extend: fmt_rows(&piece.extend),
            left: fmt_rows(&piece.left),
        };
        // cache failures only cost recomputation
        let _ = write_atomic(&path, &serde_json::to_vec(&stored).unwrap_or_default());
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        Ok(self.piece(n)?.dim())
    }

    pub fn hilbert(&self, n_max: usize) -> Result<Hilbert> {
        let dims = (0..=n_max)
            .map(|n| self.dim(n))
            .collect::<Result<Vec<_>>>()?;
        let regular = dims
            .iter()
            .enumerate()
            .all(|(n, &d)| d as i64 == regular_dim(n as i64));
        Ok(Hilbert { dims, regular })
    }

    /// Coordinates in `A_n` of every word of length `n`, indexed by word.
    pub fn word_images(&self, n: usize) -> Result<Vec<Vec<F::Elem>>> {
        self.check_tensor(n)?;
        let piece = self.piece(n)?;
        if n == 0 {
            return Ok(vec![vec![self.field.one()]]);
        }
        let prev = self.word_images(n - 1)?;
        let mut out = Vec::with_capacity(prev.len() * 3);
        for u in &prev {
            for x in 0..3u8 {
                out.push(mul_letter(&self.field, &piece, u, x));
            }
        }
        Ok(out)
    }

    fn check_tensor(&self, n: usize) -> Result<()> {
        self.check_degree(n)?;
        if word_count(n) > self.limits.limit_dim {
            return Err(Error::ResourceLimit(format!(
                "tensor dimension 3^{n} exceeds the limit {}",
                self.limits.limit_dim
            )));
        }
        Ok(())
    }

    /// The degree-`n` part `J_n` of the two-sided ideal generated by `R`,
    /// as a subspace of `V^{⊗n}`.
    pub fn ideal_degree(&self, n: usize) -> Result<Subspace<F>> {
        let f = &self.field;
        let images = self.word_images(n)?;
        let piece = self.piece(n)?;
        let total = word_count(n);
        let mut rows = Vec::with_capacity(total - piece.dim());
        let mut pivots = Vec::with_capacity(total - piece.dim());
        for (w, img) in images.iter().enumerate() {
            if piece.position(w).is_some() {
                continue;
            }
            let mut row = vec![f.zero(); total];
            row[w] = f.one();
            for (c, &nw) in img.iter().zip(&piece.words) {
                if !f.is_zero(c) {
                    row[nw] = f.neg(c);
                }
            }
            rows.push(row);
            pivots.push(w);
        }
        Ok(Subspace::from_rref_unchecked(f, total, rows, pivots))
    }

    /// Projects a tensor in `V^{⊗n}` to `A_n`.
    pub fn project(&self, n: usize, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != word_count(n) {
            return Err(Error::DimensionMismatch {
                expected: word_count(n),
                found: v.len(),
            });
        }
        let images = self.word_images(n)?;
        Ok(apply_rows(&self.field, v, &images, self.dim(n)?))
    }

    /// The tensor supported on normal words representing an element of `A_n`.
    pub fn lift(&self, n: usize, coords: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let piece = self.piece(n)?;
        let mut out = vec![self.field.zero(); word_count(n)];
        for (c, &w) in coords.iter().zip(&piece.words) {
            out[w] = c.clone();
        }
        Ok(out)
    }

    pub fn full(&self, n: usize) -> Result<GradedSubspace<F>> {
        Ok(GradedSubspace {
            degree: n,
            space: Subspace::full(&self.field, self.dim(n)?),
        })
    }

    pub fn zero_subspace(&self, n: usize) -> Result<GradedSubspace<F>> {
        Ok(GradedSubspace {
            degree: n,
            space: Subspace::zero(&self.field, self.dim(n)?),
        })
    }

    /// A subspace of `A_1 = V` from spanning vectors.
    pub fn degree_one(&self, rows: Vec<Vec<F::Elem>>) -> Result<GradedSubspace<F>> {
        Ok(GradedSubspace {
            degree: 1,
            space: Subspace::try_from_rows(&self.field, 3, rows)?,
        })
    }

    /// Right multiplication of an element of `A_m` by a normal word `v` of
    /// `A_n`, for every normal word, returned in basis order.
    fn right_word_products(&self, s: &[F::Elem], m: usize, n: usize) -> Result<Vec<Vec<F::Elem>>> {
        let target = self.piece(m + n)?;
        let mut layer: Vec<Vec<F::Elem>> = vec![s.to_vec()];
        let mut layer_words: Vec<usize> = vec![0];
        for k in 1..=n {
            let piece = self.piece(m + k)?;
            let words = self.piece(k)?;
            let mut next = Vec::with_capacity(words.dim());
            for &w in &words.words {
                let prefix = w / 3;
                let pos = layer_words.binary_search(&prefix).expect("prefix closed");
                next.push(mul_letter(&self.field, &piece, &layer[pos], (w % 3) as u8));
            }
            layer = next;
            layer_words = words.words.clone();
        }
        debug_assert!(layer.iter().all(|v| v.len() == target.dim()));
        Ok(layer)
    }

    /// Multiplies two elements of `A_m` and `A_n`.
    pub fn multiply(&self, s: &[F::Elem], m: usize, t: &[F::Elem], n: usize) -> Result<Vec<F::Elem>> {
        let prods = self.right_word_products(s, m, n)?;
        Ok(apply_rows(&self.field, t, &prods, self.dim(m + n)?))
    }

    /// The subspace `S·T ⊆ A_{m+n}`.
    pub fn product(&self, s: &GradedSubspace<F>, t: &GradedSubspace<F>) -> Result<GradedSubspace<F>> {
        let f = &self.field;
        let (m, n) = (s.degree, t.degree);
        let dim = self.dim(m + n)?;
        if t.degree == 1 {
            return self.product_degree_one(s, t);
        }
        let mut rows = Vec::with_capacity(s.dim() * t.dim());
        for sv in s.space.basis() {
            let prods = self.right_word_products(sv, m, n)?;
            for tv in t.space.basis() {
                rows.push(apply_rows(f, tv, &prods, dim));
            }
        }
        Ok(GradedSubspace {
            degree: m + n,
            space: Subspace::from_rows(f, dim, rows),
        })
    }

    fn product_degree_one(&self, s: &GradedSubspace<F>, t: &GradedSubspace<F>) -> Result<GradedSubspace<F>> {
        let f = &self.field;
        let piece = self.piece(s.degree + 1)?;
        let mut rows = Vec::with_capacity(s.dim() * t.dim());
        for sv in s.space.basis() {
            let by_letter: Vec<Vec<F::Elem>> =
                (0..3u8).map(|x| mul_letter(f, &piece, sv, x)).collect();
            for tv in t.space.basis() {
                rows.push(apply_rows(f, tv, &by_letter, piece.dim()));
            }
        }
        Ok(GradedSubspace {
            degree: s.degree + 1,
            space: Subspace::from_rows(f, piece.dim(), rows),
        })
    }

    /// Product of a sequence of subspaces of `A_1`.
    pub fn word_product(&self, factors: &[&GradedSubspace<F>]) -> Result<GradedSubspace<F>> {
        let mut acc = GradedSubspace {
            degree: 0,
            space: Subspace::full(&self.field, 1),
        };
        for fac in factors {
            acc = self.product(&acc, fac)?;
        }
        Ok(acc)
    }

    /// `{V^γ W^α U^β}`: the sum of the products over all arrangements of
    /// `γ` copies of `V`, `α` of `W` and `β` of `U`.
    pub fn word_subspace(
        &self,
        gamma: usize,
        alpha: usize,
        beta: usize,
        w: &GradedSubspace<F>,
        u: &GradedSubspace<F>,
    ) -> Result<GradedSubspace<F>> {
        let v = self.full(1)?;
        let n = gamma + alpha + beta;
        let mut total = self.zero_subspace(n)?;
        for arrangement in arrangements(gamma, alpha, beta) {
            let factors: Vec<&GradedSubspace<F>> = arrangement
                .iter()
                .map(|l| match l {
                    Letter::V => &v,
                    Letter::W => w,
                    Letter::U => u,
                })
                .collect();
            total = total.sum(&self.word_product(&factors)?)?;
        }
        Ok(total)
    }

    /// The sum of word subspaces in a pattern such as `"WWV+WVW+VWW"`.
    pub fn pattern_subspace(
        &self,
        pattern: &str,
        w: Option<&GradedSubspace<F>>,
        u: Option<&GradedSubspace<F>>,
    ) -> Result<GradedSubspace<F>> {
        let terms = parse_pattern(pattern)?;
        let degree = terms[0].len();
        let v = self.full(1)?;
        let mut total = self.zero_subspace(degree)?;
        for term in terms {
            let factors = term
                .iter()
                .map(|l| match l {
                    Letter::V => Ok(&v),
                    Letter::W => w.ok_or_else(|| Error::Pattern("pattern uses W but no W given".into())),
                    Letter::U => u.ok_or_else(|| Error::Pattern("pattern uses U but no U given".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            total = total.sum(&self.word_product(&factors)?)?;
        }
        Ok(total)
    }
}

/// Multiplies an element `u` of `A_{n-1}` on the right by the letter `x`,
/// using the extension table of `piece = A_n`.
pub(crate) fn mul_letter<F: Field>(f: &F, piece: &GradedPiece<F>, u: &[F::Elem], x: u8) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); piece.dim()];
    for (i, c) in u.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        for (o, e) in out.iter_mut().zip(&piece.extend[i * 3 + x as usize]) {
            if !f.is_zero(e) {
                *o = f.add(o, &f.mul(c, e));
            }
        }
    }
    out
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    use std::io::Write;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Letters of a word pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    V,
    W,
    U,
}

/// All distinct arrangements of the multiset `{V^γ, W^α, U^β}`, in
/// lexicographic order.
pub fn arrangements(gamma: usize, alpha: usize, beta: usize) -> Vec<Vec<Letter>> {
    fn go(counts: [usize; 3], cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if counts.iter().all(|&c| c == 0) {
            out.push(cur.clone());
            return;
        }
        for (k, letter) in [Letter::V, Letter::W, Letter::U].into_iter().enumerate() {
            if counts[k] > 0 {
                let mut next = counts;
                next[k] -= 1;
                cur.push(letter);
                go(next, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go([gamma, alpha, beta], &mut Vec::new(), &mut out);
    out
}

/// Parses `"WWV+WVW+VWW"` into words of equal length over `{V, W, U}`.
pub fn parse_pattern(pattern: &str) -> Result<Vec<Vec<Letter>>> {
    let mut terms = Vec::new();
    for term in pattern.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Pattern(format!("empty term in {pattern:?}")));
        }
        let word = term
            .chars()
            .map(|c| match c {
                'V' => Ok(Letter::V),
                'W' => Ok(Letter::W),
                'U' => Ok(Letter::U),
                other => Err(Error::Pattern(format!("unknown letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        terms.push(word);
    }
    if terms.windows(2).any(|p| p[0].len() != p[1].len()) {
        return Err(Error::Pattern(format!("terms of {pattern:?} differ in length")));
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn commutative(f: &PrimeField) -> QuadraticAlgebra<PrimeField> {
        // x_{i+1} x_{i+2} - x_{i+2} x_{i+1}
        let mut c = [[[0i64; 3]; 3]; 3];
        for (i, rel) in c.iter_mut().enumerate() {
            rel[(i + 1) % 3][(i + 2) % 3] = 1;
            rel[(i + 2) % 3][(i + 1) % 3] = -1;
        }
        QuadraticAlgebra::from_i64(f, &c).unwrap()
    }

    #[test]
    fn words_round_trip() {
        for n in 0..5 {
            for w in 0..word_count(n) {
                assert_eq!(word_index(&word_letters(w, n)), w);
            }
        }
    }

    #[test]
    fn commutative_ring_dimensions() {
        let f = PrimeField::new(101).unwrap();
        let a = commutative(&f);
        let h = a.hilbert(7).unwrap();
        assert_eq!(h.dims, vec![1, 3, 6, 10, 15, 21, 28, 36]);
        assert!(h.regular);
        assert_eq!(a.ideal_degree(3).unwrap().dim(), 17);
    }

    #[test]
    fn rejects_dependent_relations() {
        let f = PrimeField::new(101).unwrap();
        let mut c = [[[0i64; 3]; 3]; 3];
        c[0][0][1] = 1;
        c[1][0][1] = 2;
        c[2][1][1] = 1;
        assert!(matches!(
            QuadraticAlgebra::from_i64(&f, &c),
            Err(Error::RelationRank(2))
        ));
    }

    #[test]
    fn degree_limit_is_enforced() {
        let f = PrimeField::new(101).unwrap();
        let a = commutative(&f).with_limits(Limits {
            max_degree: 3,
            limit_dim: 6561,
        });
        assert!(matches!(a.piece(4), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn arrangements_of_three_letters() {
        assert_eq!(arrangements(1, 1, 1).len(), 6);
        assert_eq!(arrangements(2, 1, 0).len(), 3);
        assert_eq!(arrangements(3, 0, 0), vec![vec![Letter::V; 3]]);
    }

    #[test]
    fn pattern_parsing() {
        let t = parse_pattern("WWV + WVW+VWW").unwrap();
        assert_eq!(t.len(), 3);
        assert!(parse_pattern("WW+V").is_err());
        assert!(parse_pattern("WX").is_err());
    }

    #[test]
    fn commutative_line_squared() {
        let f = PrimeField::new(101).unwrap();
        let a = commutative(&f);
        let u = a.degree_one(vec![vec![1, 0, 0]]).unwrap();
        assert_eq!(a.product(&u, &u).unwrap().dim(), 1);
        let v = a.full(1).unwrap();
        assert_eq!(a.product(&v, &v).unwrap().dim(), 6);
    }
}
