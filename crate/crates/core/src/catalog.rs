//! Built-in algebra families, committed fixtures and the seeded fixture
//! search used to produce them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::QuadraticAlgebra;
use crate::error::{schema, Error, Result};
use crate::field::{Field, FieldSpec, PrimeField};
use crate::io;
use crate::linalg::Matrix;
use crate::pointscheme::{analyze, ComponentReport, Geometry, GeometryReport, SingularReport, Verdict};

/// Sklyanin relations `a x_{i+1} x_{i+2} + b x_{i+2} x_{i+1} + c x_i^2`,
/// indices mod 3.
pub fn sklyanin<F: Field>(field: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) -> Result<QuadraticAlgebra<F>> {
    let mut coeffs = vec![field.zero(); 27];
    for i in 0..3 {
        let j = (i + 1) % 3;
        let k = (i + 2) % 3;
        coeffs[i * 9 + j * 3 + k] = field.add(&coeffs[i * 9 + j * 3 + k], a);
        coeffs[i * 9 + k * 3 + j] = field.add(&coeffs[i * 9 + k * 3 + j], b);
        coeffs[i * 9 + i * 3 + i] = field.add(&coeffs[i * 9 + i * 3 + i], c);
    }
    QuadraticAlgebra::new(field, coeffs)
}

/// Relations `yz - q1 zy`, `zx - q2 xz`, `xy - q3 yx`.
pub fn quantum_plane<F: Field>(field: &F, q1: &F::Elem, q2: &F::Elem, q3: &F::Elem) -> Result<QuadraticAlgebra<F>> {
    let mut coeffs = vec![field.zero(); 27];
    for (i, q) in [q1, q2, q3].into_iter().enumerate() {
        let j = (i + 1) % 3;
        let k = (i + 2) % 3;
        coeffs[i * 9 + j * 3 + k] = field.one();
        coeffs[i * 9 + k * 3 + j] = field.neg(q);
    }
    QuadraticAlgebra::new(field, coeffs)
}

/// Point of the nodal cubic `y^2 z = x^3 + x^2 z` with group parameter `s`.
/// Collinear smooth points have parameters multiplying to 1, so `s ↦ λ s`
/// is a translation; the node sits at `s = 0, ∞`.
fn nodal_point<F: Field>(f: &F, s: &F::Elem) -> [F::Elem; 3] {
    let den = f.sub(&f.one(), s);
    if f.is_zero(&den) {
        return [f.zero(), f.one(), f.zero()];
    }
    let t = f.div(&f.add(&f.one(), s), &den);
    let u = f.sub(&f.mul(&t, &t), &f.one());
    [u.clone(), f.mul(&t, &u), f.one()]
}

/// The algebra whose relations are the bilinear forms vanishing on the
/// graph of the translation `s ↦ λ s` of the nodal cubic
/// `y^2 z = x^3 + x^2 z`. The node is fixed by `σ`.
pub fn nodal_translation<F: Field>(field: &F, lambda: &F::Elem) -> Result<QuadraticAlgebra<F>> {
    if field.is_zero(lambda) {
        return Err(Error::InvalidField("translation parameter must be nonzero".into()));
    }
    let params: Vec<F::Elem> = match field.elements() {
        Some(all) => all.into_iter().filter(|s| !field.is_zero(s)).collect(),
        None => (2..40).map(|i| field.from_i64(i)).collect(),
    };
    let rows: Vec<Vec<F::Elem>> = params
        .iter()
        .map(|s| {
            let p = nodal_point(field, s);
            let q = nodal_point(field, &field.mul(lambda, s));
            (0..9).map(|k| field.mul(&p[k / 3], &q[k % 3])).collect()
        })
        .collect();
    let kernel = Matrix::new(field, 9, rows)?.nullspace();
    if kernel.dim() != 3 {
        return Err(Error::RelationRank(kernel.dim()));
    }
    QuadraticAlgebra::new(field, kernel.basis().concat())
}

/// Geometric predicates understood by [`find_fixture`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    /// Hilbert-regular and stable with smooth point scheme.
    Smooth,
    /// Hilbert-regular, the point scheme is a triangle and `σ` permutes
    /// its sides cyclically.
    TriangleCyclic,
    /// Hilbert-regular with a singular point fixed by `σ` and no
    /// `σ`-invariant line.
    FixedSingularPoint,
    /// Hilbert-regular with a `σ`-invariant line.
    InvariantLine,
    /// Never satisfied.
    Never,
}

impl Predicate {
    pub fn all() -> [Predicate; 5] {
        [
            Predicate::Smooth,
            Predicate::TriangleCyclic,
            Predicate::FixedSingularPoint,
            Predicate::InvariantLine,
            Predicate::Never,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Smooth => "smooth",
            Predicate::TriangleCyclic => "triangle-cyclic",
            Predicate::FixedSingularPoint => "fixed-singular-point",
            Predicate::InvariantLine => "invariant-line",
            Predicate::Never => "false",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::all()
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidField(format!("unknown predicate {s:?}")))
    }

    fn holds<F: Field>(self, regular: bool, geo: &Geometry<F>) -> bool {
        if !regular {
            return false;
        }
        match self {
            Predicate::Smooth => geo.verdict == Verdict::StableSmooth,
            Predicate::TriangleCyclic => geo.verdict == Verdict::StableTriangleCyclic,
            Predicate::FixedSingularPoint => {
                geo.singular.iter().any(|s| s.fixed == Some(true)) && !geo.lines.iter().any(|l| l.invariant)
            }
            Predicate::InvariantLine => geo.lines.iter().any(|l| l.invariant),
            Predicate::Never => false,
        }
    }
}

/// Where [`find_fixture`] looks. Every space is sampled from a seeded
/// generator and capped at `budget` candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SearchSpace {
    /// Sklyanin parameters `(a, b, c)` drawn from `1..=range`.
    SklyaninGrid { p: u64, range: u64, budget: usize },
    /// Sklyanin parameters with `a, b` drawn from `1..=range` and `c` a
    /// root of `c^3 - 3abc + a^3 + b^3`, where the point scheme degenerates.
    SklyaninDegenerate { p: u64, range: u64, budget: usize },
    /// Translations `s ↦ λ s` of the nodal cubic for random `λ`.
    NodalTranslation { p: u64, budget: usize },
    /// Uniformly random relation triples.
    RandomRelations { p: u64, budget: usize },
}

impl SearchSpace {
    pub fn prime(&self) -> u64 {
        match *self {
            SearchSpace::SklyaninGrid { p, .. }
            | SearchSpace::SklyaninDegenerate { p, .. }
            | SearchSpace::NodalTranslation { p, .. }
            | SearchSpace::RandomRelations { p, .. } => p,
        }
    }

    fn budget(&self) -> usize {
        match *self {
            SearchSpace::SklyaninGrid { budget, .. }
            | SearchSpace::SklyaninDegenerate { budget, .. }
            | SearchSpace::NodalTranslation { budget, .. }
            | SearchSpace::RandomRelations { budget, .. } => budget,
        }
    }

    /// Candidates produced by one draw; an empty list means the draw was
    /// wasted.
    fn draw(&self, f: &PrimeField, rng: &mut ChaCha8Rng) -> Vec<QuadraticAlgebra<PrimeField>> {
        match *self {
            SearchSpace::SklyaninGrid { range, .. } => {
                let mut g = || rng.gen_range(1..=range) % f.modulus();
                let (a, b, c) = (g(), g(), g());
                sklyanin(f, &a, &b, &c).into_iter().collect()
            }
            SearchSpace::SklyaninDegenerate { range, .. } => {
                let a = rng.gen_range(1..=range) % f.modulus();
                let b = rng.gen_range(1..=range) % f.modulus();
                // c^3 - 3ab c + (a^3 + b^3), low to high
                let cube = |x: u64| f.mul(&x, &f.mul(&x, &x));
                let poly = [f.add(&cube(a), &cube(b)), f.neg(&f.mul(&3, &f.mul(&a, &b))), 0, 1];
                let roots = f.roots(&poly).unwrap_or_default();
                roots.iter().filter_map(|c| sklyanin(f, &a, &b, c).ok()).collect()
            }
            SearchSpace::NodalTranslation { .. } => {
                let lambda = rng.gen_range(2..f.modulus());
                nodal_translation(f, &lambda).into_iter().collect()
            }
            SearchSpace::RandomRelations { .. } => {
                let coeffs: Vec<u64> = (0..27).map(|_| f.random(rng)).collect();
                QuadraticAlgebra::new(f, coeffs).into_iter().collect()
            }
        }
    }
}

/// Degree through which certificates record the Hilbert function.
pub const CERTIFICATE_DEGREE: usize = 4;

/// Everything a fixture claims about its algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub hilbert: Vec<usize>,
    pub regular: bool,
    pub verdict: String,
    pub witness: Option<String>,
    pub singular_points: Vec<SingularReport>,
    pub components: Vec<ComponentReport>,
    /// The search that produced the fixture, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub predicate: Predicate,
    pub space: SearchSpace,
    pub seed: u64,
    /// Index of the successful candidate.
    pub candidate: usize,
}

fn certify_parts<F: Field>(a: &QuadraticAlgebra<F>) -> Result<(Certificate, Geometry<F>)> {
    let h = a.hilbert(CERTIFICATE_DEGREE)?;
    let geo = analyze(a)?;
    let rep = GeometryReport::new(&geo, a.field(), &[]);
    let cert = Certificate {
        hilbert: h.dims,
        regular: h.regular,
        verdict: rep.verdict,
        witness: rep.witness,
        singular_points: rep.singular_points,
        components: rep.components,
        search: None,
    };
    Ok((cert, geo))
}

/// Computes the certificate of an algebra.
pub fn certify<F: Field>(a: &QuadraticAlgebra<F>) -> Result<Certificate> {
    Ok(certify_parts(a)?.0)
}

/// An algebra together with its certificate.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub algebra: QuadraticAlgebra<PrimeField>,
    pub certificate: Certificate,
}

impl Fixture {
    pub fn to_json(&self) -> Value {
        let mut doc = io::algebra_to_json(&self.algebra);
        doc["name"] = Value::from(self.name.clone());
        doc["description"] = Value::from(self.description.clone());
        doc["certificate"] = serde_json::to_value(&self.certificate).expect("certificate serializes");
        doc
    }

    /// Parses a fixture document and re-derives its certificate.
    pub fn from_json(doc: &Value) -> Result<Self> {
        let name = doc
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| schema("$.name", "expected a string"))?
            .to_string();
        let description = doc
            .get("description")
            .and_then(Value::as_str)
            .unwrap_or_default()
            .to_string();
        let FieldSpec::Prime { p } = io::field_spec(doc)? else {
            return Err(schema("$.field", "fixtures live over prime fields"));
        };
        let field = PrimeField::new(p)?;
        let algebra = QuadraticAlgebra::new(&field, io::relations_from_json(&field, doc)?)?;
        let stored: Certificate = serde_json::from_value(
            doc.get("certificate")
                .cloned()
                .ok_or_else(|| schema("$.certificate", "missing"))?,
        )
        .map_err(|e| schema("$.certificate", e.to_string()))?;
        let mut fresh = certify(&algebra)?;
        fresh.search = stored.search.clone();
        if fresh != stored {
            return Err(schema(
                "$.certificate",
                format!("fixture {name} does not reproduce its certificate"),
            ));
        }
        Ok(Self {
            name,
            description,
            algebra,
            certificate: stored,
        })
    }
}

/// Seeded search for the first candidate satisfying `predicate`.
pub fn find_fixture(predicate: Predicate, space: SearchSpace, seed: u64) -> Result<Fixture> {
    let field = PrimeField::new(space.prime())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidate = 0;
    for _ in 0..space.budget() {
        for alg in space.draw(&field, &mut rng) {
            candidate += 1;
            let Ok(h) = alg.hilbert(CERTIFICATE_DEGREE) else {
                continue;
            };
            if !h.regular {
                continue;
            }
            let Ok((mut cert, geo)) = certify_parts(&alg) else {
                continue;
            };
            if predicate.holds(h.regular, &geo) {
                cert.search = Some(SearchRecord {
                    predicate,
                    space,
                    seed,
                    candidate,
                });
                return Ok(Fixture {
                    name: predicate.name().to_string(),
                    description: format!("found by seeded search over {}", field.spec()),
                    algebra: alg,
                    certificate: cert,
                });
            }
        }
    }
    Err(Error::NotFound(candidate))
}

/// A built-in family.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub description: &'static str,
    /// Geometric class of generic members.
    pub expected: &'static str,
}

pub const ENTRIES: [CatalogEntry; 3] = [
    CatalogEntry {
        name: "sklyanin",
        params: &["a", "b", "c"],
        description: "a x_{i+1}x_{i+2} + b x_{i+2}x_{i+1} + c x_i^2, indices mod 3",
        expected: "StableSmooth",
    },
    CatalogEntry {
        name: "quantum-plane",
        params: &["q1", "q2", "q3"],
        description: "yz - q1 zy, zx - q2 xz, xy - q3 yx",
        expected: "Unstable (invariant coordinate lines)",
    },
    CatalogEntry {
        name: "nodal-translation",
        params: &["lambda"],
        description: "bilinear forms vanishing on the graph of s -> lambda s on y^2 z = x^3 + x^2 z",
        expected: "Unstable (fixed node)",
    },
];

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidField(format!("unknown catalog family {name:?}")))
}

/// Builds a member of a catalog family from textual parameters.
pub fn build<F: Field>(field: &F, name: &str, params: &[String]) -> Result<QuadraticAlgebra<F>> {
    let e = entry(name)?;
    if params.len() != e.params.len() {
        return Err(Error::InvalidField(format!(
            "{name} takes {} parameters ({}), got {}",
            e.params.len(),
            e.params.join(", "),
            params.len()
        )));
    }
    let v = params.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>()?;
    match name {
        "sklyanin" => sklyanin(field, &v[0], &v[1], &v[2]),
        "quantum-plane" => quantum_plane(field, &v[0], &v[1], &v[2]),
        _ => nodal_translation(field, &v[0]),
    }
}

const FIXTURE_FILES: [(&str, &str); 4] = [
    ("sklyanin", include_str!("../fixtures/sklyanin.json")),
    ("quantum-plane", include_str!("../fixtures/quantum-plane.json")),
    ("triangle-cyclic", include_str!("../fixtures/triangle-cyclic.json")),
    ("fixed-singular-point", include_str!("../fixtures/fixed-singular-point.json")),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURE_FILES.iter().map(|(n, _)| *n).collect()
}

/// Loads a committed fixture, re-verifying its certificate.
pub fn load_fixture(name: &str) -> Result<Fixture> {
    let (_, text) = FIXTURE_FILES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::InvalidField(format!("unknown fixture {name:?}")))?;
    let doc: Value = serde_json::from_str(text)?;
    Fixture::from_json(&doc)
}
