use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use ncstab_core::c3::{extract_c3, membership, twisted_weight_table};
use ncstab_core::catalog::{self, Predicate, SearchSpace, ENTRIES};
use ncstab_core::estimates::{positivity_scan, zeta, zeta_direct, zeta_identity_check, EstimateCase};
use ncstab_core::io::{self, AnyAlgebra};
use ncstab_core::pointscheme::{analyze, random_points, sigma, GeometryReport, Verdict};
use ncstab_core::testconfig::weight_table;
use ncstab_core::{Field, GradedSubspace, PrimeField, QuadraticAlgebra, Rationals};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output::{document, weight_table_text, Output, Status};

/// Settings shared by every command that builds graded pieces.
pub struct Env {
    pub no_cache: bool,
    pub cache_dir: PathBuf,
    pub limit_dim: Option<usize>,
}

impl Env {
    /// Applies resource limits and the cache to `a`, allowing degrees up
    /// to `degree`.
    pub fn prepare<F: Field>(&self, a: QuadraticAlgebra<F>, degree: usize) -> QuadraticAlgebra<F> {
        let mut limits = a.limits();
        limits.max_degree = limits.max_degree.max(degree);
        if let Some(d) = self.limit_dim {
            limits.limit_dim = d;
        }
        let a = a.with_limits(limits);
        if self.no_cache {
            a
        } else {
            a.with_cache_dir(&self.cache_dir)
        }
    }
}

pub fn load(path: &Path) -> anyhow::Result<AnyAlgebra> {
    io::load_algebra(path).with_context(|| format!("loading {}", path.display()))
}

/// Runs a generic command body on whichever field the algebra lives over.
macro_rules! on_field {
    ($any:expr, $a:ident => $body:expr) => {
        match $any {
            AnyAlgebra::Rational($a) => $body,
            AnyAlgebra::Prime($a) => $body,
        }
    };
}
pub(crate) use on_field;

pub fn hilbert(env: &Env, path: &Path, n: usize) -> anyhow::Result<Output> {
    on_field!(load(path)?, a => hilbert_on(&env.prepare(a, n), n))
}

fn hilbert_on<F: Field>(a: &QuadraticAlgebra<F>, n: usize) -> anyhow::Result<Output> {
    let h = a.hilbert(n)?;
    let expected: Vec<usize> = (0..=n).map(|k| (k + 1) * (k + 2) / 2).collect();
    let mut text = format!("algebra {} over {}\n{:>3} {:>8} {:>8}\n", short(a.hash()), a.field().spec(), "n", "dim", "regular");
    for (k, (d, e)) in h.dims.iter().zip(&expected).enumerate() {
        let _ = writeln!(text, "{k:>3} {d:>8} {e:>8}");
    }
    let _ = writeln!(text, "Hilbert function {} (n+1)(n+2)/2", if h.regular { "matches" } else { "differs from" });
    let doc = json!({
        "algebra": a.hash(),
        "field": a.field().spec(),
        "dims": h.dims,
        "expected": expected,
        "regular": h.regular,
    });
    Ok(Output::ok(doc, text))
}

pub fn futaki(env: &Env, path: &Path, flag: &Path, n: usize, twisted: bool, seed: u64) -> anyhow::Result<Output> {
    on_field!(load(path)?, a => futaki_on(&env.prepare(a, n), flag, n, twisted, seed))
}

fn futaki_on<F: Field>(a: &QuadraticAlgebra<F>, flag: &Path, n: usize, twisted: bool, seed: u64) -> anyhow::Result<Output> {
    let filt = io::load_flag(a.field(), flag).with_context(|| format!("loading {}", flag.display()))?;
    let table = if twisted {
        let c = extract_c3(a, n, &mut ChaCha8Rng::seed_from_u64(seed))?;
        twisted_weight_table(a, &c, &filt, n)?
    } else {
        weight_table(a, &filt, n)?
    };
    let side = if twisted { "twisted ring A / c3 A" } else { "algebra A" };
    let text = format!("weights measured in the {side}\n{}", weight_table_text(&table));
    let doc = json!({
        "algebra": a.hash(),
        "flag": io::flag_to_json(&filt),
        "table": table,
    });
    Ok(Output::ok(doc, text))
}

pub fn geometry(env: &Env, path: &Path, samples: usize, seed: u64) -> anyhow::Result<Output> {
    on_field!(load(path)?, a => geometry_on(&env.prepare(a, 2), samples, seed))
}

fn geometry_on<F: Field>(a: &QuadraticAlgebra<F>, samples: usize, seed: u64) -> anyhow::Result<Output> {
    let geo = analyze(a)?;
    let mut pairs = Vec::new();
    if let Some(cubic) = &geo.cubic {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for p in random_points(cubic, samples, &mut rng).unwrap_or_default() {
            if let Ok(q) = sigma(a, &p) {
                pairs.push((p, q));
            }
        }
    }
    let rep = GeometryReport::new(&geo, a.field(), &pairs);
    let text = geometry_text(&rep);
    let status = if matches!(geo.verdict, Verdict::Unresolved(_)) {
        Status::Unresolved
    } else {
        Status::Ok
    };
    let mut doc = serde_json::to_value(&rep)?;
    doc["algebra"] = json!(a.hash());
    Ok(Output::ok(doc, text).with_status(status))
}

pub fn geometry_text(rep: &GeometryReport) -> String {
    let mut s = String::new();
    match &rep.cubic_text {
        Some(c) => {
            let _ = writeln!(s, "point scheme: {c} = 0");
        }
        None => {
            let _ = writeln!(s, "point scheme: all of P^2");
        }
    }
    if let Some(t) = rep.singular_total_length {
        let _ = writeln!(s, "singular length: {t}{}", if rep.singular_resolved { "" } else { " (not all rational)" });
    }
    for p in &rep.singular_points {
        let fixed = match p.fixed {
            Some(true) => "fixed",
            Some(false) => "moved",
            None => "sigma undefined",
        };
        let _ = writeln!(s, "  singular point {} length {} {fixed}", p.point, p.length);
    }
    for (i, c) in rep.components.iter().enumerate() {
        let image = c.image.map_or("?".to_string(), |j| j.to_string());
        let _ = writeln!(s, "  line {i}: {} -> line {image}{}", c.form, if c.invariant { " (invariant)" } else { "" });
    }
    for [p, q] in &rep.sigma_samples {
        let _ = writeln!(s, "  sigma {p} = {q}");
    }
    let _ = write!(s, "verdict: {}", rep.verdict);
    if let Some(w) = &rep.witness {
        let _ = write!(s, " ({w})");
    }
    if let Some(r) = &rep.reason {
        let _ = write!(s, " ({r})");
    }
    s.push('\n');
    s
}

pub fn c3(env: &Env, path: &Path, n: usize, seed: u64, flag: Option<&Path>, pattern: Option<&str>) -> anyhow::Result<Output> {
    on_field!(load(path)?, a => c3_on(&env.prepare(a, n.max(4)), n, seed, flag, pattern))
}

fn c3_on<F: Field>(a: &QuadraticAlgebra<F>, n: usize, seed: u64, flag: Option<&Path>, pattern: Option<&str>) -> anyhow::Result<Output> {
    let f = a.field();
    let c = extract_c3(a, n, &mut ChaCha8Rng::seed_from_u64(seed))?;
    let coords: Vec<String> = c.coords.iter().map(|x| f.format(x)).collect();
    let mut text = format!(
        "c3 = [{}] in the normal-word basis of A_3\nnormal: {}\nleft and right ideals agree: {}\nnonzerodivisor: {}\ndim B_n: {:?}\n",
        coords.join(", "),
        c.normal,
        c.left_right_agree,
        c.nonzerodivisor,
        c.b_dims
    );
    let mut doc = json!({
        "algebra": a.hash(),
        "coords": coords,
        "n_max": c.n_max,
        "normal": c.normal,
        "left_right_agree": c.left_right_agree,
        "nonzerodivisor": c.nonzerodivisor,
        "b_dims": c.b_dims,
        "certified": c.certified(),
    });
    if let (Some(flag), Some(pattern)) = (flag, pattern) {
        let filt = io::load_flag(f, flag).with_context(|| format!("loading {}", flag.display()))?;
        let Some(shape) = filt.shape() else {
            bail!("{} is not a flag V > W > U > 0", flag.display());
        };
        let lift = |s: &Option<ncstab_core::Subspace<F>>| {
            s.clone().map(|space| GradedSubspace { degree: 1, space })
        };
        let (w, u) = (lift(&shape.w), lift(&shape.u));
        let holds = membership(a, &c, pattern, w.as_ref(), u.as_ref())?;
        let _ = writeln!(text, "c3 in {pattern}: {holds}");
        doc["membership"] = json!({ "pattern": pattern, "holds": holds });
    }
    Ok(Output::ok(doc, text))
}

pub fn verify_estimates(case: &str, n_min: i128, n_max: i128, l_max: u32, m_max: u32) -> anyhow::Result<Output> {
    let cases: Vec<EstimateCase> = if case == "all" {
        EstimateCase::ALL.to_vec()
    } else {
        vec![EstimateCase::parse(case).with_context(|| {
            let names: Vec<&str> = EstimateCase::ALL.iter().map(|c| c.name()).collect();
            format!("unknown case {case:?}; expected all or one of {}", names.join(", "))
        })?]
    };
    if n_min < 1 || n_max < n_min {
        bail!("need 1 <= n-min <= n-max");
    }
    let zeta_fail = (1..=n_max).find(|&n| (0..=2).any(|j| zeta(j, n) != zeta_direct(j, n)) || !zeta_identity_check(n));
    let mut text = format!(
        "zeta closed forms and identity for n <= {n_max}: {}\n{:<16} {:>2} {:>2}  result\n",
        pass(zeta_fail.is_none()),
        "case",
        "l",
        "m"
    );
    let mut scans = Vec::new();
    let mut all_ok = zeta_fail.is_none();
    for c in cases {
        for l in 0..=l_max {
            for m in 0..=m_max {
                let Some(r) = positivity_scan(c, n_min, n_max, l, m) else { continue };
                let ok = r.passed();
                all_ok &= ok;
                let mut line = format!("{:<16} {l:>2} {m:>2}  {}", c.name(), pass(ok));
                for cl in r.claims.iter().chain([&r.combined]).filter(|cl| !cl.passed) {
                    let _ = write!(line, " {:?} fails at n={}", cl.claim, cl.first_failure.unwrap_or_default());
                }
                let _ = writeln!(text, "{line}");
                scans.push(r);
            }
        }
    }
    let doc = json!({
        "n_min": n_min,
        "n_max": n_max,
        "zeta": { "passed": zeta_fail.is_none(), "first_failure": zeta_fail },
        "scans": scans,
        "passed": all_ok,
    });
    let status = if all_ok { Status::Ok } else { Status::Failed };
    Ok(Output::ok(doc, text).with_status(status))
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn short(hash: &str) -> &str {
    &hash[..hash.len().min(12)]
}

pub fn catalog_list() -> Output {
    let mut text = String::from("families:\n");
    let families: Vec<Value> = ENTRIES
        .iter()
        .map(|e| {
            let _ = writeln!(text, "  {} ({}): {} [{}]", e.name, e.params.join(", "), e.description, e.expected);
            json!({ "name": e.name, "params": e.params, "description": e.description, "expected": e.expected })
        })
        .collect();
    text.push_str("fixtures:\n");
    let fixtures: Vec<&str> = catalog::fixture_names();
    for name in &fixtures {
        let _ = writeln!(text, "  {name}");
    }
    text.push_str("predicates:\n");
    let predicates: Vec<&str> = Predicate::all().iter().map(|p| p.name()).collect();
    for p in &predicates {
        let _ = writeln!(text, "  {p}");
    }
    Output::ok(
        json!({ "families": families, "fixtures": fixtures, "predicates": predicates }),
        text,
    )
}

pub fn catalog_emit(name: &str, params: &[String], prime: Option<u64>, output: Option<&Path>) -> anyhow::Result<Output> {
    let doc = match prime {
        Some(p) => io::algebra_to_json(&catalog::build(&PrimeField::new(p)?, name, params)?),
        None => io::algebra_to_json(&catalog::build(&Rationals, name, params)?),
    };
    document(doc, output)
}

pub fn catalog_fixture(name: &str, output: Option<&Path>) -> anyhow::Result<Output> {
    document(catalog::load_fixture(name)?.to_json(), output)
}

pub fn catalog_search(predicate: &str, space: &str, seed: u64, output: Option<&Path>) -> anyhow::Result<Output> {
    let predicate = Predicate::parse(predicate)?;
    let space: SearchSpace = serde_json::from_str(space).context("parsing --space")?;
    let fixture = catalog::find_fixture(predicate, space, seed)?;
    document(fixture.to_json(), output)
}
