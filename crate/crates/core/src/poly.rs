//! Univariate polynomials (coefficient vectors, low degree first), root
//! finding over the base field, and ternary forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{Field, PrimeField};

pub fn trim<F: Field>(f: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn is_zero_poly<F: Field>(f: &F, a: &[F::Elem]) -> bool {
    a.iter().all(|c| f.is_zero(c))
}

/// Degree of a trimmed or untrimmed polynomial; `None` for zero.
pub fn degree<F: Field>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().rposition(|c| !f.is_zero(c))
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// Quotient and remainder. Panics on a zero divisor.
pub fn divrem<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(f, b).expect("division by zero polynomial");
    let lead_inv = f.inv(&b[db]).unwrap();
    let mut rem = trim(f, a.to_vec());
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![f.zero(); rem.len() - db];
    while rem.len() > db {
        let shift = rem.len() - 1 - db;
        let c = f.mul(rem.last().unwrap(), &lead_inv);
        for (j, bj) in b[..=db].iter().enumerate() {
            rem[shift + j] = f.sub(&rem[shift + j], &f.mul(&c, bj));
        }
        quot[shift] = c;
        rem.pop();
        rem = trim(f, rem);
    }
    (trim(f, quot), rem)
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let a = trim(f, a.to_vec());
    match a.last() {
        None => a,
        Some(lead) => {
            let inv = f.inv(lead).unwrap();
            a.iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

/// Monic greatest common divisor; zero when both inputs vanish.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = trim(f, a.to_vec());
    let mut y = trim(f, b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

fn powmod<F: Field>(f: &F, base: &[F::Elem], mut exp: u64, modulus: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = vec![f.one()];
    let mut b = divrem(f, base, modulus).1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = divrem(f, &mul(f, &acc, &b), modulus).1;
        }
        b = divrem(f, &mul(f, &b, &b), modulus).1;
        exp >>= 1;
    }
    acc
}

/// Distinct roots in `F_p` of a nonzero polynomial, sorted.
pub(crate) fn fp_roots(f: &PrimeField, coeffs: &[u64]) -> Vec<u64> {
    let mut a = trim(f, coeffs.to_vec());
    assert!(!a.is_empty(), "roots of the zero polynomial");
    let mut roots = Vec::new();
    if f.is_zero(&a[0]) {
        roots.push(0);
        while a.len() > 1 && f.is_zero(&a[0]) {
            a.remove(0);
        }
    }
    if a.len() > 1 {
        let a = monic(f, &a);
        let p = f.modulus();
        // product of the distinct linear factors: gcd(a, x^p - x)
        let xp = powmod(f, &[0, 1], p, &a);
        let g = gcd(f, &a, &sub(f, &xp, &[0, 1]));
        split_linear(f, &g, &mut roots);
    }
    roots.sort_unstable();
    roots.dedup();
    roots
}

fn split_linear(f: &PrimeField, g: &[u64], out: &mut Vec<u64>) {
    match degree(f, g) {
        None | Some(0) => {}
        Some(1) => {
            let g = monic(f, g);
            out.push(f.neg(&g[0]));
        }
        Some(d) => {
            let p = f.modulus();
            for shift in 0..p {
                let h = powmod(f, &[shift, 1], (p - 1) / 2, g);
                let h = sub(f, &h, &[1]);
                let c = gcd(f, g, &h);
                let dc = degree(f, &c).unwrap_or(0);
                if dc > 0 && dc < d {
                    let (q, _) = divrem(f, g, &c);
                    split_linear(f, &c, out);
                    split_linear(f, &q, out);
                    return;
                }
            }
            unreachable!("no splitting shift for a squarefree split polynomial");
        }
    }
}

/// Integer bound above which divisor enumeration is abandoned.
const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Rational roots by the rational root theorem. `None` when the integer
/// coefficients are too large to enumerate divisors.
pub(crate) fn rational_roots(coeffs: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut a: Vec<BigRational> = coeffs.to_vec();
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    assert!(!a.is_empty(), "roots of the zero polynomial");
    let mut roots = Vec::new();
    if a[0].is_zero() {
        roots.push(BigRational::zero());
        while a.len() > 1 && a[0].is_zero() {
            a.remove(0);
        }
    }
    if a.len() > 1 {
        let lcm = a
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = a
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let lead = divisors(ints.last().unwrap())?;
        let constant = divisors(&ints[0])?;
        for &num in &constant {
            for &den in &lead {
                if num.gcd(&den) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let cand = BigRational::new(
                        BigInt::from(num) * BigInt::from(sign),
                        BigInt::from(den),
                    );
                    let v = a
                        .iter()
                        .rev()
                        .fold(BigRational::zero(), |acc, c| acc * &cand + c);
                    if v.is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Some(roots)
}

/// Exponent triples `(a, b, c)` with `a + b + c = d`, ordered by descending
/// `x`-exponent, then descending `y`-exponent.
pub fn monomials(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity((d + 1) * (d + 2) / 2);
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

pub fn monomial_index(d: usize, e: [usize; 3]) -> usize {
    // rows for x-exponents d, d-1, ..., a+1 precede
    let a = e[0];
    let before: usize = (a + 1..=d).map(|aa| d - aa + 1).sum();
    before + (d - a - e[1])
}

/// A homogeneous polynomial of degree `degree` in `x, y, z`, dense over
/// [`monomials`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form<F: Field> {
    field: F,
    degree: usize,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Form<F> {
    pub fn zero(field: &F, degree: usize) -> Self {
        let n = (degree + 1) * (degree + 2) / 2;
        Self {
            field: field.clone(),
            degree,
            coeffs: vec![field.zero(); n],
        }
    }

    pub fn from_coeffs(field: &F, degree: usize, coeffs: Vec<F::Elem>) -> Self {
        assert_eq!(coeffs.len(), (degree + 1) * (degree + 2) / 2);
        Self {
            field: field.clone(),
            degree,
            coeffs,
        }
    }

    pub fn linear(field: &F, c: &[F::Elem; 3]) -> Self {
        Self::from_coeffs(field, 1, c.to_vec())
    }

    pub fn monomial(field: &F, e: [usize; 3], c: F::Elem) -> Self {
        let d = e.iter().sum();
        let mut f = Self::zero(field, d);
        f.coeffs[monomial_index(d, e)] = c;
        f
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }
    pub fn coeff(&self, e: [usize; 3]) -> &F::Elem {
        &self.coeffs[monomial_index(self.degree, e)]
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Self::from_coeffs(f, self.degree, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|a| f.mul(a, c)).collect();
        Self::from_coeffs(f, self.degree, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let d = self.degree + other.degree;
        let mut out = Self::zero(f, d);
        let ma = monomials(self.degree);
        let mb = monomials(other.degree);
        for (ea, ca) in ma.iter().zip(&self.coeffs) {
            if f.is_zero(ca) {
                continue;
            }
            for (eb, cb) in mb.iter().zip(&other.coeffs) {
                if f.is_zero(cb) {
                    continue;
                }
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                let k = monomial_index(d, e);
                out.coeffs[k] = f.add(&out.coeffs[k], &f.mul(ca, cb));
            }
        }
        out
    }

    pub fn eval(&self, p: &[F::Elem; 3]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if f.is_zero(c) {
                continue;
            }
            let mut t = c.clone();
            for (v, &k) in p.iter().zip(e) {
                for _ in 0..k {
                    t = f.mul(&t, v);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Partial derivative with respect to variable `var` (0 = x).
    pub fn derivative(&self, var: usize) -> Self {
        let f = &self.field;
        if self.degree == 0 {
            return Self::zero(f, 0);
        }
        let mut out = Self::zero(f, self.degree - 1);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if e[var] == 0 || f.is_zero(c) {
                continue;
            }
            let mut e2 = *e;
            e2[var] -= 1;
            let k = monomial_index(self.degree - 1, e2);
            out.coeffs[k] = f.add(&out.coeffs[k], &f.mul(c, &f.from_i64(e[var] as i64)));
        }
        out
    }

    /// The univariate polynomial `t -> F(a + t b)`.
    pub fn restrict_to_line(&self, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> Vec<F::Elem> {
        let f = &self.field;
        let lin: Vec<Vec<F::Elem>> = (0..3).map(|i| vec![a[i].clone(), b[i].clone()]).collect();
        let mut acc: Vec<F::Elem> = Vec::new();
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if f.is_zero(c) {
                continue;
            }
            let mut t = vec![c.clone()];
            for (var, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = mul(f, &t, &lin[var]);
                }
            }
            acc = add(f, &acc, &t);
        }
        acc
    }

    /// Substitutes `v -> T v`, returning `G(v) = F(T v)`.
    pub fn linear_change(&self, t: &[[F::Elem; 3]; 3]) -> Self {
        let f = &self.field;
        let images: Vec<Form<F>> = (0..3)
            .map(|i| Form::linear(f, &t[i]))
            .collect();
        let mut out = Self::zero(f, self.degree);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if f.is_zero(c) {
                continue;
            }
            let mut term = Form::from_coeffs(f, 0, vec![c.clone()]);
            for (var, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(&images[var]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Exact division by a nonzero linear form; `None` if it does not divide.
    pub fn divide_linear(&self, lin: &Form<F>) -> Option<Form<F>> {
        assert_eq!(lin.degree, 1);
        let f = &self.field;
        if self.degree == 0 {
            return if self.is_zero() { Some(self.clone()) } else { None };
        }
        // leading variable of the divisor: first with nonzero coefficient
        let lv = (0..3).find(|&i| !f.is_zero(&lin.coeffs[i]))?;
        let lc_inv = f.inv(&lin.coeffs[lv]).unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(f, self.degree - 1);
        let mons = monomials(self.degree);
        loop {
            // take a remainder monomial that contains the leading variable,
            // scanning in an order where the exponent of lv is maximal first
            let pick = mons
                .iter()
                .enumerate()
                .filter(|(k, e)| e[lv] > 0 && !f.is_zero(&rem.coeffs[*k]))
                .max_by_key(|(_, e)| e[lv]);
            let Some((k, e)) = pick else { break };
            let c = f.mul(&rem.coeffs[k], &lc_inv);
            let mut eq = *e;
            eq[lv] -= 1;
            let qk = monomial_index(self.degree - 1, eq);
            quot.coeffs[qk] = f.add(&quot.coeffs[qk], &c);
            let term = Form::monomial(f, eq, c).mul(lin);
            rem = rem.sub(&term);
        }
        if rem.is_zero() {
            Some(quot)
        } else {
            None
        }
    }

    /// Scales so the first nonzero coefficient is one.
    pub fn normalized(&self) -> Self {
        let f = &self.field;
        match self.coeffs.iter().find(|c| !f.is_zero(c)) {
            None => self.clone(),
            Some(lead) => self.scale(&f.inv(lead).unwrap()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn fp_roots_of_split_and_irreducible() {
        let f = PrimeField::new(7).unwrap();
        // (x-1)(x-2)(x-4) = x^3 - 7x^2 + 14x - 8 = x^3 + 6 (mod 7)
        assert_eq!(fp_roots(&f, &[6, 0, 0, 1]), vec![1, 2, 4]);
        // x^2 + 1 has no root mod 7
        assert!(fp_roots(&f, &[1, 0, 1]).is_empty());
        // x^2 (x - 3)
        assert_eq!(fp_roots(&f, &[0, 0, 4, 1]), vec![0, 3]);
    }

    #[test]
    fn fp_roots_match_exhaustive_search() {
        let f = PrimeField::new(101).unwrap();
        let polys: Vec<Vec<u64>> = vec![
            vec![5, 3, 0, 1],
            vec![1, 100, 1, 7],
            vec![0, 1, 2, 3, 4],
            vec![100, 0, 0, 0, 0, 1],
        ];
        for a in polys {
            let brute: Vec<u64> = (0..101).filter(|x| eval(&f, &a, x) == 0).collect();
            assert_eq!(fp_roots(&f, &a), brute);
        }
    }

    #[test]
    fn rational_roots_found() {
        let q = Rationals;
        // 2x^2 - 3x + 1 = (2x-1)(x-1)
        let a = vec![q.from_i64(1), q.from_i64(-3), q.from_i64(2)];
        let r = rational_roots(&a).unwrap();
        assert_eq!(r, vec![q.parse("1/2").unwrap(), q.from_i64(1)]);
        // x^2 - 2 has none
        assert!(rational_roots(&[q.from_i64(-2), q.zero(), q.one()])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn monomial_indexing_is_consistent() {
        for d in 0..6 {
            for (k, e) in monomials(d).into_iter().enumerate() {
                assert_eq!(monomial_index(d, e), k);
            }
        }
    }

    #[test]
    fn linear_division_recovers_factor() {
        let f = PrimeField::new(10007).unwrap();
        let l1 = Form::linear(&f, &[1, 2, 3]);
        let l2 = Form::linear(&f, &[0, 1, 5]);
        let l3 = Form::linear(&f, &[0, 0, 1]);
        let c = l1.mul(&l2).mul(&l3);
        let q = c.divide_linear(&l2).unwrap();
        assert_eq!(q, l1.mul(&l3));
        assert!(c.divide_linear(&Form::linear(&f, &[1, 1, 1])).is_none());
    }

    #[test]
    fn restriction_and_evaluation_agree() {
        let f = PrimeField::new(101).unwrap();
        let c = Form::from_coeffs(&f, 3, (1..=10).collect());
        let a = [3, 4, 5];
        let b = [7, 0, 2];
        let r = c.restrict_to_line(&a, &b);
        for t in 0..10u64 {
            let p = [
                f.add(&a[0], &f.mul(&t, &b[0])),
                f.add(&a[1], &f.mul(&t, &b[1])),
                f.add(&a[2], &f.mul(&t, &b[2])),
            ];
            assert_eq!(eval(&f, &r, &t), c.eval(&p));
        }
    }
}
