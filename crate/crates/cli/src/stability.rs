//! The combined pipeline: Hilbert check, geometric verdict, seeded Futaki
//! sampling and the witness flag of an unstable verdict.

use std::fmt::Write as _;
use std::path::Path;

use ncstab_core::catalog::CERTIFICATE_DEGREE;
use ncstab_core::io::{self, AnyAlgebra};
use ncstab_core::pointscheme::{analyze, forms_vanishing_at, GeometryReport, Verdict, Witness};
use ncstab_core::report::ratio_string;
use ncstab_core::testconfig::{compare, random_flag, weight_table, Filtration, FlagVerdictKind};
use ncstab_core::{Field, QuadraticAlgebra, Subspace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::commands::{geometry_text, load, on_field, Env};
use crate::output::{Output, Status};

/// Flag multiplicities `(ℓ, m)` cycled through by the sampler.
pub const SHAPES: [(usize, usize); 5] = [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)];

#[derive(Debug, Serialize)]
pub struct StabilityReport {
    pub algebra: String,
    pub field: String,
    pub hilbert: HilbertCheck,
    pub geometry: Option<GeometryReport>,
    pub sampling: Option<Sampling>,
    pub flags: Vec<FlagRecord>,
    pub witness_flag: Option<FlagRecord>,
    pub consistency: Consistency,
    pub conclusion: String,
    pub claims: Vec<Claim>,
}

#[derive(Debug, Serialize)]
pub struct HilbertCheck {
    pub max_degree: usize,
    pub dims: Vec<usize>,
    pub regular: bool,
}

#[derive(Debug, Serialize)]
pub struct Sampling {
    pub seed: u64,
    pub count: usize,
    pub q: usize,
    pub shapes: Vec<[usize; 2]>,
    pub passes: usize,
    pub marginal: usize,
    pub destabilizing: usize,
}

#[derive(Debug, Serialize)]
pub struct FlagRecord {
    pub l: usize,
    pub m: usize,
    pub levels: Value,
    /// `F(1), ..., F(q)`.
    pub futaki: Vec<String>,
    pub verdict: FlagVerdictKind,
}

#[derive(Debug, Serialize)]
pub struct Consistency {
    pub ok: bool,
    pub notes: Vec<String>,
}

/// A statement in the conclusion and the stage that established it.
#[derive(Debug, Serialize)]
pub struct Claim {
    pub claim: String,
    pub source: &'static str,
}

pub fn command(env: &Env, path: &Path, q: usize, samples: usize, seed: u64) -> anyhow::Result<Output> {
    if q < 2 {
        anyhow::bail!("--q must be at least 2");
    }
    let any: AnyAlgebra = load(path)?;
    let (report, status) = on_field!(any, a => run(&env.prepare(a, q.max(CERTIFICATE_DEGREE)), q, samples, seed)?);
    let text = render(&report);
    Ok(Output::ok(serde_json::to_value(&report)?, text).with_status(status))
}

fn record<F: Field>(a: &QuadraticAlgebra<F>, filt: &Filtration<F>, l: usize, m: usize, q: usize) -> anyhow::Result<FlagRecord> {
    let t = weight_table(a, filt, q)?;
    let f1 = t.futaki(1).expect("degree 1 row");
    let fq = t.futaki(q).expect("degree q row");
    Ok(FlagRecord {
        l,
        m,
        levels: io::flag_to_json(filt)["levels"].clone(),
        futaki: t.rows.iter().map(|r| ratio_string(&r.futaki)).collect(),
        verdict: compare(f1, fq),
    })
}

/// The flag a geometric witness predicts to be marginal.
fn witness_flag<F: Field>(a: &QuadraticAlgebra<F>, w: &Witness<F>) -> anyhow::Result<(Filtration<F>, usize, usize)> {
    let f = a.field();
    Ok(match w {
        Witness::InvariantLine(line) => {
            let u = Subspace::from_rows(f, 3, vec![line.coeffs().to_vec()]);
            (Filtration::flag(f, None, 0, Some(u), 1)?, 0, 1)
        }
        Witness::FixedSingularPoint(p) => (Filtration::flag(f, Some(forms_vanishing_at(f, p)), 1, None, 0)?, 1, 0),
    })
}

pub fn run<F: Field>(a: &QuadraticAlgebra<F>, q: usize, samples: usize, seed: u64) -> anyhow::Result<(StabilityReport, Status)> {
    let f = a.field();
    let degree = q.max(CERTIFICATE_DEGREE);
    let h = a.hilbert(degree)?;
    let mut claims = vec![Claim {
        claim: format!(
            "Hilbert function {} (n+1)(n+2)/2 through degree {degree}",
            if h.regular { "equals" } else { "differs from" }
        ),
        source: "hilbert",
    }];
    let mut report = StabilityReport {
        algebra: a.hash().to_string(),
        field: f.spec().to_string(),
        hilbert: HilbertCheck {
            max_degree: degree,
            dims: h.dims,
            regular: h.regular,
        },
        geometry: None,
        sampling: None,
        flags: Vec::new(),
        witness_flag: None,
        consistency: Consistency {
            ok: true,
            notes: Vec::new(),
        },
        conclusion: String::new(),
        claims: Vec::new(),
    };
    if !h.regular {
        report.conclusion = "not regular: the Hilbert function is not that of a polynomial ring".into();
        report.claims = claims;
        return Ok((report, Status::Ok));
    }

    let geo = analyze(a)?;
    report.geometry = Some(GeometryReport::new(&geo, f, &[]));
    claims.push(Claim {
        claim: format!("geometric verdict {}", geo.verdict),
        source: "pointscheme",
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0usize; 3];
    for i in 0..samples {
        let (l, m) = SHAPES[i % SHAPES.len()];
        let filt = random_flag(f, &mut rng, l, m)?;
        let r = record(a, &filt, l, m, q)?;
        counts[r.verdict as usize] += 1;
        report.flags.push(r);
    }
    let [passes, marginal, destabilizing] = counts;
    report.sampling = Some(Sampling {
        seed,
        count: samples,
        q,
        shapes: SHAPES.iter().map(|&(l, m)| [l, m]).collect(),
        passes,
        marginal,
        destabilizing,
    });
    claims.push(Claim {
        claim: format!("{samples} seeded flags: {passes} pass, {marginal} marginal, {destabilizing} destabilizing at q = {q}"),
        source: "futaki-sampling",
    });

    if let Verdict::Unstable(w) = &geo.verdict {
        let (filt, l, m) = witness_flag(a, w)?;
        let r = record(a, &filt, l, m, q)?;
        if r.verdict != FlagVerdictKind::Marginal {
            report.consistency.ok = false;
            report
                .consistency
                .notes
                .push(format!("witness flag is {:?}, expected marginal", r.verdict));
        }
        claims.push(Claim {
            claim: format!("witness flag has F({q}) {} F(1)", relation(r.verdict)),
            source: "witness-flag",
        });
        report.witness_flag = Some(r);
    }
    if geo.verdict.is_stable() && destabilizing > 0 {
        report.consistency.ok = false;
        report
            .consistency
            .notes
            .push(format!("{destabilizing} destabilizing samples for a geometrically stable algebra"));
    }

    let mut status = Status::Ok;
    report.conclusion = match &geo.verdict {
        Verdict::Unresolved(why) => {
            status = Status::Unresolved;
            format!("unresolved: {why}")
        }
        _ if destabilizing > 0 => format!("not {q}-stable: a sampled flag has F({q}) < F(1)"),
        v if v.is_stable() && marginal == 0 => {
            format!("stable (certified geometrically, consistent with Futaki sampling at q={q})")
        }
        v if v.is_stable() => format!("stable geometrically, but {marginal} sampled flags are marginal at q={q}"),
        Verdict::Unstable(_) => match &report.witness_flag {
            Some(r) if r.verdict == FlagVerdictKind::Marginal => {
                format!("not stable: {} gives a marginal flag", report.geometry.as_ref().and_then(|g| g.witness.clone()).unwrap_or_default())
            }
            _ => "not stable geometrically; the witness flag is not marginal".into(),
        },
        Verdict::Exceptional => "exceptional: singular point scheme outside the classified stable and unstable cases".into(),
        Verdict::Linear => "linear: the point scheme is the whole plane".into(),
        Verdict::StableSmooth | Verdict::StableTriangleCyclic => unreachable!("handled above"),
    };
    if !report.consistency.ok {
        status = Status::Failed;
    }
    report.claims = claims;
    Ok((report, status))
}

fn relation(k: FlagVerdictKind) -> &'static str {
    match k {
        FlagVerdictKind::Passes => ">",
        FlagVerdictKind::Marginal => "=",
        FlagVerdictKind::Destabilizing => "<",
    }
}

fn render(r: &StabilityReport) -> String {
    let mut s = format!("algebra {} over {}\n", &r.algebra[..12.min(r.algebra.len())], r.field);
    let _ = writeln!(s, "Hilbert dims {:?} regular: {}", r.hilbert.dims, r.hilbert.regular);
    if let Some(g) = &r.geometry {
        s.push_str(&geometry_text(g));
    }
    if let Some(sm) = &r.sampling {
        let _ = writeln!(
            s,
            "sampling: {} flags (seed {}, q = {}): {} pass, {} marginal, {} destabilizing",
            sm.count, sm.seed, sm.q, sm.passes, sm.marginal, sm.destabilizing
        );
    }
    if let Some(w) = &r.witness_flag {
        let _ = writeln!(s, "witness flag (l={}, m={}): F = [{}], {:?}", w.l, w.m, w.futaki.join(", "), w.verdict);
    }
    for n in &r.consistency.notes {
        let _ = writeln!(s, "inconsistency: {n}");
    }
    let _ = writeln!(s, "conclusion: {}", r.conclusion);
    s
}
