//! The reproducibility suite: a fixed, ordered list of criteria run over a
//! corpus, reported as a pass/fail matrix.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::{json, Value};
use thiserror::Error;

use super::corpus::{Corpus, CorpusError};
use crate::arith::numfield::{NfContext, NumberFieldElement};
use crate::arith::{Coeff, LocalField, LocalRational, ResidueElement};
use crate::fgl::{self, CheckReport, FglError, FormalGroupLaw, Provenance};
use crate::groups::{self, FiniteGroup, DEFAULT_TUPLE_BUDGET};
use crate::hkr::{self, Budgets};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("unknown --only selector {0:?}")]
    UnknownSelector(String),
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub only: Vec<String>,
    pub corpus: Option<PathBuf>,
    pub time_limit: Duration,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            only: Vec::new(),
            corpus: None,
            time_limit: Duration::from_secs(600),
        }
    }
}

/// Result of one criterion.
#[derive(Clone, Debug)]
pub struct Entry {
    pub id: String,
    pub area: &'static str,
    pub title: &'static str,
    pub checks: Vec<CheckReport>,
    pub detail: Value,
    pub error: Option<String>,
    pub elapsed: Duration,
}

impl Entry {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.pass)
    }

    /// Everything except the timing, so repeated runs serialize identically.
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "area": self.area,
            "title": self.title,
            "pass": self.pass(),
            "error": self.error,
            "checks": self.checks.iter().map(CheckReport::json).collect::<Vec<_>>(),
            "detail": self.detail,
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub corpus: String,
    pub entries: Vec<Entry>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(Entry::pass)
    }

    pub fn entry(&self, id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "corpus": self.corpus,
            "pass": self.pass(),
            "entries": self.entries.iter().map(Entry::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn text_lines(&self) -> Vec<String> {
        let mut out = vec![format!("corpus: {}", self.corpus)];
        for e in &self.entries {
            let status = if e.pass() { "pass" } else { "FAIL" };
            out.push(format!(
                "[{status}] {:>6} {:<7} {} ({:.2} s)",
                e.id,
                e.area,
                e.title,
                e.elapsed.as_secs_f64()
            ));
            if let Some(err) = &e.error {
                out.push(format!("         error: {err}"));
            }
            for c in e.checks.iter().filter(|c| !c.pass) {
                out.push(format!("         failed: {} (first failure {:?})", c.check, c.first_failure));
            }
        }
        let passed = self.entries.iter().filter(|e| e.pass()).count();
        out.push(format!("{passed}/{} passed", self.entries.len()));
        out
    }

    /// One check per entry, for embedding in a command report.
    pub fn summary_checks(&self) -> Vec<CheckReport> {
        self.entries
            .iter()
            .map(|e| CheckReport::exact(format!("{} {}", e.id, e.title), (!e.pass()).then_some(0)))
            .collect()
    }
}

type Outcome = Result<(Vec<CheckReport>, Value), String>;

struct Criterion {
    id: &'static str,
    area: &'static str,
    title: &'static str,
    run: fn(&Corpus) -> Outcome,
}

const AREAS: &[&str] = &["corpus", "fgl", "groups", "hkr", "cli"];

fn registry() -> Vec<Criterion> {
    vec![
        Criterion { id: "corpus", area: "corpus", title: "corpus files validate", run: corpus_validation },
        Criterion { id: "1", area: "fgl", title: "functional equation of the logarithm", run: c1_functional_equation },
        Criterion { id: "2", area: "fgl", title: "integrality of log(pX)/p", run: c2_integral_g },
        Criterion { id: "3", area: "fgl", title: "law integrality and axioms", run: c3_law_axioms },
        Criterion { id: "4", area: "fgl", title: "[p] = pX +F X^q and torsion orders", run: c4_p_series },
        Criterion { id: "5", area: "fgl", title: "endomorphism ring", run: c5_endomorphisms },
        Criterion { id: "6", area: "fgl", title: "Araki coordinates", run: c6_araki },
        Criterion { id: "7", area: "fgl", title: "graded rescaling", run: c7_rescale },
        Criterion { id: "8", area: "fgl", title: "genus on projective spaces", run: c8_genus },
        Criterion { id: "9", area: "fgl", title: "Lubin-Tate laws", run: c9_lubin_tate },
        Criterion { id: "10", area: "groups", title: "commuting tuple class counts", run: c10_group_counts },
        Criterion { id: "11", area: "hkr", title: "etale decompositions", run: c11_etale },
        Criterion { id: "12", area: "hkr", title: "cyclic counts and products", run: c12_identities },
        Criterion { id: "13", area: "hkr", title: "rank at n = 1 counts p-classes", run: c13_artin },
        Criterion { id: "14", area: "hkr", title: "character sections are additive and equivariant", run: c14_characters },
        Criterion { id: "15", area: "cli", title: "reports are deterministic", run: c15_determinism },
    ]
}

/// Loads the corpus and runs every selected criterion in registration order.
pub fn run_suite(opts: &SuiteOptions) -> Result<SuiteReport, SuiteError> {
    let registry = registry();
    for sel in &opts.only {
        if !AREAS.contains(&sel.as_str()) && !registry.iter().any(|c| c.id == sel) {
            return Err(SuiteError::UnknownSelector(sel.clone()));
        }
    }
    let corpus = match &opts.corpus {
        Some(dir) => Corpus::load(dir)?,
        None => Corpus::builtin(),
    };
    let selected = |c: &Criterion| {
        c.id == "corpus" || opts.only.is_empty() || opts.only.iter().any(|s| s == c.area || s == c.id)
    };
    let start = Instant::now();
    let mut entries = Vec::new();
    for c in registry.iter().filter(|c| selected(c)) {
        let t0 = Instant::now();
        let (checks, detail, error) = if start.elapsed() > opts.time_limit {
            (Vec::new(), Value::Null, Some("time limit exceeded".to_string()))
        } else {
            match (c.run)(&corpus) {
                Ok((checks, detail)) => (checks, detail, None),
                Err(e) => (Vec::new(), Value::Null, Some(e)),
            }
        };
        entries.push(Entry {
            id: c.id.to_string(),
            area: c.area,
            title: c.title,
            checks,
            detail,
            error,
            elapsed: t0.elapsed(),
        });
    }
    Ok(SuiteReport {
        corpus: corpus.source.clone(),
        entries,
    })
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn check(name: impl Into<String>, ok: bool) -> CheckReport {
    CheckReport::exact(name, (!ok).then_some(0))
}

fn corpus_validation(c: &Corpus) -> Outcome {
    let checks = c
        .rejected
        .iter()
        .map(|(name, e)| CheckReport::exact(format!("{name}: {e}"), Some(0)))
        .collect();
    Ok((
        checks,
        json!({
            "fields": c.fields.iter().map(|(n, _)| n).collect::<Vec<_>>(),
            "groups": c.groups.iter().map(|g| g.name()).collect::<Vec<_>>(),
            "rejected": c.rejected.iter().map(|(n, _)| n).collect::<Vec<_>>(),
        }),
    ))
}

const FGL_CORPUS: [(u64, u32); 4] = [(2, 1), (2, 2), (3, 1), (5, 1)];

fn c1_functional_equation(_: &Corpus) -> Outcome {
    let mut checks = Vec::new();
    let mut controls = Vec::new();
    for (p, n) in FGL_CORPUS {
        let q = p.pow(n);
        let mut r = fgl::verify_functional_equation(&fgl::hazewinkel_log(p, n, 50), p, q, 50);
        r.check = format!("({p},{n}) {}", r.check);
        checks.push(r);
        for (name, log) in [("honda", fgl::honda_log(p, n, 50)), ("additive", fgl::additive_log(p, 50))] {
            let r = fgl::verify_functional_equation(&log, p, q, 50);
            controls.push(json!({"p": p, "n": n, "log": name, "first_failure": r.first_failure}));
            checks.push(check(
                format!("({p},{n}) {name} logarithm fails first at degree q = {q}"),
                r.first_failure == Some(q as usize),
            ));
        }
    }
    Ok((checks, json!({"degree": 50, "negative_controls": controls})))
}

fn c2_integral_g(_: &Corpus) -> Outcome {
    let mut checks = Vec::new();
    for (p, n) in FGL_CORPUS {
        let (_, mut r) = fgl::integral_g(&fgl::hazewinkel_log(p, n, 50), p);
        r.check = format!("({p},{n}) {}", r.check);
        checks.push(r);
    }
    let (g, _) = fgl::integral_g(&fgl::hazewinkel_log(2, 1, 50), 2);
    let (c2, c4) = (g.c(2).clone(), g.c(4).clone());
    checks.push(check("(2,1) coefficient of X^2 in g is -1", c2 == LocalRational::from_int(-1, 2)));
    checks.push(check("(2,1) coefficient of X^4 in g is 2/7", c4 == LocalRational::ratio(2, 7, 2)));
    Ok((checks, json!({"degree": 50, "g_2": c2.json(), "g_4": c4.json()})))
}

fn c3_law_axioms(_: &Corpus) -> Outcome {
    let mut checks = Vec::new();
    let mut detail = Vec::new();
    for (p, n) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let f = FormalGroupLaw::hazewinkel(p, n, 20);
        checks.push(check(format!("({p},{n}) law is p-integral through degree 20"), f.is_ok()));
        let f = f.map_err(err)?;
        for mut r in fgl::verify_axioms(&f) {
            r.check = format!("({p},{n}) {}", r.check);
            checks.push(r);
        }
        if (p, n) == (2, 1) {
            let low = f.law().truncated(3);
            let terms: Vec<(Vec<u32>, String)> = low.terms().map(|(e, c)| (e.to_vec(), c.to_string())).collect();
            let expected: Vec<(Vec<u32>, String)> = [[1, 0], [0, 1], [1, 1], [2, 1], [1, 2]]
                .iter()
                .map(|e| (e.to_vec(), "1".to_string()))
                .collect();
            let mut sorted = terms.clone();
            sorted.sort();
            let mut exp_sorted = expected;
            exp_sorted.sort();
            checks.push(check("(2,1) law is X + Y + XY + X^2Y + XY^2 through degree 3", sorted == exp_sorted));
            detail.push(json!({"p": p, "n": n, "degree_3": low.to_json()}));
        }
    }
    Ok((checks, json!(detail)))
}

fn c4_p_series(_: &Corpus) -> Outcome {
    let mut checks = Vec::new();
    let mut orders = Vec::new();
    for (p, n) in FGL_CORPUS {
        let f = FormalGroupLaw::hazewinkel(p, n, 20).map_err(err)?;
        for mut r in fgl::verify_p_corollary(&f).map_err(err)? {
            r.check = format!("({p},{n}) {}", r.check);
            checks.push(r);
        }
        let t = fgl::torsion_order(&f, 1).map_err(err)?;
        checks.push(check(format!("({p},{n}) torsion order of [p] is p^n"), t == (p as usize).pow(n)));
        orders.push(json!({"p": p, "n": n, "r": 1, "order": t}));
    }
    let f = FormalGroupLaw::hazewinkel(2, 1, 20).map_err(err)?;
    let t = fgl::torsion_order(&f, 2).map_err(err)?;
    checks.push(check("(2,1) r = 2 gives 4", t == 4));
    orders.push(json!({"p": 2, "n": 1, "r": 2, "order": t}));
    Ok((checks, json!({"degree": 20, "torsion": orders})))
}

fn c5_endomorphisms(_: &Corpus) -> Outcome {
    let mut checks = Vec::new();
    for (p, n) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let f = FormalGroupLaw::hazewinkel(p, n, 20).map_err(err)?;
        let p_i = p as i64;
        let params = [0, 1, -1, 2, 3, p_i, 1 + p_i];
        let mut fails = Vec::new();
        for (i, &a) in params.iter().enumerate() {
            for &b in &params[i..] {
                let r = fgl::verify_ring_hom(&f, &LocalRational::from_int(a, p), &LocalRational::from_int(b, p), 20)
                    .map_err(err)?;
                if !r.pass {
                    fails.push((a, b));
                }
            }
        }
        checks.push(check(format!("({p},{n}) ring identities for a, b in {params:?}"), fails.is_empty()));
    }
    let f4 = crate::arith::field::make_field(2, 2, &[1, 1, 1], 1, None, 8).map_err(err)?;
    let ctx = NfContext::from_field(&f4);
    let law = FormalGroupLaw::hazewinkel(2, 2, 20).map_err(err)?.to_number_field(&ctx);
    let x = NumberFieldElement::generator(&ctx);
    for b in [0, 1, -1, 2, 3] {
        let mut r = fgl::verify_ring_hom(&law, &x, &x.from_i64_like(b), 20).map_err(err)?;
        r.check = format!("(2,2) over Q[x]/(x^2+x+1): {}", r.check);
        checks.push(r);
    }
    let mut r = fgl::verify_ring_hom(&law, &x, &x, 20).map_err(err)?;
    r.check = format!("(2,2) over Q[x]/(x^2+x+1): {}", r.check);
    checks.push(r);
    Ok((checks, json!({"degree": 20})))
}

fn c6_araki(_: &Corpus) -> Outcome {
    let mut checks = Vec::new();
    let mut detail = Vec::new();
    for (p, n) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let d = (p as usize).pow(n + 1);
        let f = FormalGroupLaw::hazewinkel(p, n, d).map_err(err)?;
        let v = fgl::araki_coordinates(&f, n + 1).map_err(err)?;
        let ok = v.residual.is_none()
            && v.values.iter().enumerate().all(|(k, c)| {
                let expected = match k as u32 {
                    0 => p as i64,
                    k if k == n => 1,
                    _ => 0,
                };
                *c == LocalRational::from_int(expected, p)
            });
        checks.push(check(format!("({p},{n}) v_0 = p, v_n = 1, others 0 through degree {d}"), ok));
        detail.push(json!({"p": p, "n": n, "degree": d, "coordinates": v.json()}));
    }
    let mult = fgl::law_from_log(
        &fgl::multiplicative_log(2, 16),
        16,
        2,
        Provenance::Logarithm { name: "multiplicative".into() },
    )
    .map_err(err)?;
    let rejected = fgl::araki_coordinates(&mult, 2);
    checks.push(check(
        "multiplicative law is rejected as not p-typical",
        matches!(rejected, Err(FglError::NotPTypical { .. })),
    ));
    Ok((checks, json!(detail)))
}

fn c7_rescale(_: &Corpus) -> Outcome {
    let mut checks = Vec::new();
    let mut samples_used = Vec::new();
    for (p, n) in FGL_CORPUS {
        let f = FormalGroupLaw::hazewinkel(p, n, 20).map_err(err)?;
        // 3 is not a unit when p = 3 and is skipped there
        let us: Vec<i64> = [1, 3, 1 + p as i64].into_iter().filter(|u| u % p as i64 != 0).collect();
        let samples: Vec<LocalRational> = us.iter().map(|&u| LocalRational::from_int(u, p)).collect();
        for mut r in fgl::rescale_graded_check(&f, &samples, 20).map_err(err)? {
            r.check = format!("({p},{n}) {}", r.check);
            checks.push(r);
        }
        samples_used.push(json!({"p": p, "n": n, "u": us}));
    }
    Ok((checks, json!({"degree": 20, "samples": samples_used})))
}

fn c8_genus(_: &Corpus) -> Outcome {
    let mut checks = Vec::new();
    let spot = [(2u64, 1u32, 1usize, -1i64, 1i64), (2, 1, 2, 0, 1), (2, 1, 3, 1, 7), (3, 1, 2, -1, 8)];
    let mut values = Vec::new();
    for (p, n, m, num, den) in spot {
        let v = fgl::genus_value(p, n, m);
        checks.push(check(format!("({p},{n}) genus of CP^{m} is {num}/{den}"), v == LocalRational::ratio(num, den, p)));
        values.push(json!({"p": p, "n": n, "m": m, "value": v.json()}));
    }
    for (p, n) in FGL_CORPUS {
        let mut r = fgl::verify_genus(p, n, 40);
        r.check = format!("({p},{n}) {}", r.check);
        checks.push(r);
    }
    Ok((checks, json!({"spot_values": values, "m_max": 40})))
}

fn lt_checks(
    name: &str,
    field: &Arc<LocalField>,
    f: &crate::arith::Series<ResidueElement>,
    params: &[ResidueElement],
    checks: &mut Vec<CheckReport>,
) -> Result<fgl::LubinTateConstruction, String> {
    let lt = fgl::lubin_tate_law(field, f, 16, params).map_err(err)?;
    for r in &lt.checks {
        let mut r = r.clone();
        r.check = format!("{name}: {}", r.check);
        checks.push(r);
    }
    checks.push(check(
        format!("{name}: achieved precision {} >= 8 digits", lt.precision()),
        lt.precision() >= 8,
    ));
    Ok(lt)
}

fn c9_lubin_tate(c: &Corpus) -> Outcome {
    let mut checks = Vec::new();
    let mut detail = Vec::new();
    for p in [2u64, 3] {
        let k = LocalField::qp(p, 8).map_err(err)?;
        let name = format!("(1+X)^{p} - 1 over Q_{p}");
        let lt = lt_checks(&name, &k, &fgl::binomial_series(&k, 16), &[], &mut checks)?;
        let digits = lt.law.precision();
        let zero = lt.law.law().proto().clone();
        let one = zero.one_like();
        let ok = lt.law.law().slots().all(|(e, deg, c)| {
            let expected = if deg == 1 || e == [1, 1] { &one } else { &zero };
            c.agrees_with(expected, digits)
        });
        checks.push(check(format!("{name}: law is X + Y + XY"), ok));
        detail.push(json!({"series": name, "precision": lt.precision()}));
    }
    for (fname, k) in &c.fields {
        let k = k.with_precision(8);
        let f = fgl::standard_uniformizer_series(&k, 16);
        let params = if k.degree() > 1 { vec![ResidueElement::generator(&k)] } else { Vec::new() };
        let name = format!("pi X + X^q over {fname}");
        let lt = lt_checks(&name, &k, &f, &params, &mut checks)?;
        detail.push(json!({"series": name, "precision": lt.precision()}));
    }
    Ok((checks, json!({"degree": 16, "constructions": detail})))
}

fn c10_group_counts(c: &Corpus) -> Outcome {
    let mut checks = Vec::new();
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let q8 = Arc::new(FiniteGroup::quaternion());
    for (g, n, p, expected) in [(&s3, 1, 3, 2), (&s3, 2, 3, 5), (&s3, 1, 2, 2), (&q8, 1, 2, 5)] {
        let s = groups::tuple_classes(g, n, p, DEFAULT_TUPLE_BUDGET).map_err(err)?;
        checks.push(check(format!("|C_{{{n},{p}}}({})| = {expected}", g.name()), s.len() == expected));
    }
    let mut table = Vec::new();
    for g in &c.groups {
        for n in 1..=3 {
            for p in [2u64, 3] {
                let s = groups::tuple_classes(g, n, p, DEFAULT_TUPLE_BUDGET).map_err(err)?;
                let oracle = groups::centralizer_count_oracle(g, n, p, DEFAULT_TUPLE_BUDGET).map_err(err)?;
                let burnside = groups::burnside_count(g, s.tuples()).map_err(err)?;
                let count = s.len() as u64;
                checks.push(check(
                    format!("{} n={n} p={p}: orbits = centralizer recursion = Burnside", g.name()),
                    count == oracle && count == burnside,
                ));
                table.push(json!({"group": g.name(), "n": n, "p": p, "classes": count}));
            }
        }
    }
    Ok((checks, json!(table)))
}

fn c11_etale(c: &Corpus) -> Outcome {
    let mut checks = Vec::new();
    let b = Budgets::default();
    let f4 = crate::arith::field::make_field(2, 2, &[1, 1, 1], 1, None, 8).map_err(err)?;
    let cases = [
        (LocalField::qp(3, 8).map_err(err)?, 3usize, vec![1usize, 2]),
        (LocalField::qp(2, 8).map_err(err)?, 4, vec![1, 1, 2]),
        (f4, 2, vec![1, 3]),
    ];
    for (k, m, expected) in cases {
        let g = Arc::new(FiniteGroup::cyclic(m));
        let d = hkr::unit_orbits(&k, &g, None, b).map_err(err)?;
        checks.push(check(format!("({}, Z/{m}) has degrees {expected:?}", k.label()), d.degrees() == expected));
    }
    let mut table = Vec::new();
    for (fname, k) in &c.fields {
        for g in &c.groups {
            let d = hkr::unit_orbits(k, g, None, b).map_err(err)?;
            let bumped = hkr::unit_orbits(k, g, Some(d.level_r + 1), b).map_err(err)?;
            let sum: usize = d.degrees().iter().sum();
            checks.push(check(
                format!("{fname} {}: degrees sum to {} classes and are stable under r -> r+1", g.name(), d.total_classes),
                sum == d.total_classes && bumped.degrees() == d.degrees(),
            ));
            let mut row = json!({"field": fname, "group": g.name(), "degrees": d.degrees()});
            if k.is_unramified() {
                let fr = hkr::frobenius_orbits(k, g, None, b).map_err(err)?;
                let fsum: usize = fr.degrees().iter().sum();
                checks.push(check(format!("{fname} {}: Frobenius degrees sum to the class count", g.name()), fsum == d.total_classes));
                row["frobenius_degrees"] = json!(fr.degrees());
            }
            table.push(row);
        }
    }
    Ok((checks, json!(table)))
}

fn c12_identities(c: &Corpus) -> Outcome {
    let mut checks = Vec::new();
    let b = Budgets::default();
    let mut counts = Vec::new();
    for (fname, k) in &c.fields {
        let (p, n) = (k.p(), k.degree() as u32);
        for nu in (1..).take_while(|&nu| p.checked_pow(nu * n).is_some_and(|v| v <= 729)) {
            let (mut r, found, expected) = hkr::cyclic_hom_count(k, nu, b).map_err(err)?;
            r.check = format!("{fname} nu={nu}: {}", r.check);
            checks.push(r);
            counts.push(json!({"field": fname, "nu": nu, "found": found, "expected": expected}));
        }
    }
    let z3 = Arc::new(FiniteGroup::cyclic(3));
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let mut products = Vec::new();
    for (k, g0, g1) in [
        (LocalField::qp(3, 8).map_err(err)?, &z3, &z3),
        (LocalField::qp(2, 8).map_err(err)?, &s3, &z2),
    ] {
        let (mut r, detail) = hkr::product_check(&k, g0, g1, b).map_err(err)?;
        r.check = format!("{}: {}", k.label(), r.check);
        checks.push(r);
        products.push(detail);
    }
    Ok((checks, json!({"cyclic": counts, "products": products})))
}

fn c13_artin(c: &Corpus) -> Outcome {
    let mut checks = Vec::new();
    let mut table = Vec::new();
    for p in [2u64, 3] {
        let k = LocalField::qp(p, 8).map_err(err)?;
        for g in &c.groups {
            let rank = hkr::rank(&k, g, Budgets::default()).map_err(err)?;
            let p_classes = g
                .conjugacy_classes()
                .iter()
                .filter(|cl| {
                    let mut o = g.element_order(cl[0]) as u64;
                    while o % p == 0 {
                        o /= p;
                    }
                    o == 1
                })
                .count();
            checks.push(check(
                format!("rank(Q_{p}, {}) = {rank} equals {p_classes} p-power-order classes", g.name()),
                rank == p_classes,
            ));
            table.push(json!({"p": p, "group": g.name(), "rank": rank}));
        }
    }
    Ok((checks, json!(table)))
}

fn c14_characters(c: &Corpus) -> Outcome {
    let mut checks = Vec::new();
    let b = Budgets::default();
    for g in [FiniteGroup::quaternion(), FiniteGroup::symmetric(3)] {
        let g = Arc::new(g);
        let chars = hkr::enumerate_characters(&g).map_err(err)?;
        for (fname, k) in &c.fields {
            let s = hkr::hom_classes(k, &g, b).map_err(err)?;
            let tables = chars
                .iter()
                .map(|l| hkr::character_pullback(l, &s))
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            let mut ok = true;
            for (i, a) in chars.iter().enumerate() {
                for (j, bch) in chars.iter().enumerate() {
                    let sum = hkr::character_pullback(&a.add(bch), &s).map_err(err)?;
                    for cl in 0..s.len() {
                        let expected: Vec<_> = tables[i][cl]
                            .iter()
                            .zip(&tables[j][cl])
                            .map(|(x, y)| {
                                let z = x + y;
                                z - z.floor()
                            })
                            .collect();
                        ok &= sum[cl] == expected;
                    }
                }
            }
            checks.push(check(format!("{} over {fname}: section is additive in the character", g.name()), ok));
        }
    }
    let mut counted = BTreeMap::new();
    for (fname, k) in c.unramified_fields() {
        for g in &c.groups {
            let s = hkr::hom_classes(k, g, b).map_err(err)?;
            let chars = hkr::enumerate_characters(g).map_err(err)?;
            let mut fail = None;
            for (i, l) in chars.iter().enumerate() {
                if !hkr::equivariance_check(k, l, &s, b.enumeration_cap).map_err(err)?.pass {
                    fail = fail.or(Some(i));
                }
            }
            checks.push(CheckReport::exact(format!("{fname} {}: equivariance for every character", g.name()), fail));
            counted.insert(format!("{fname}/{}", g.name()), chars.len());
        }
    }
    Ok((checks, json!({"characters_checked": counted})))
}

fn c15_determinism(_: &Corpus) -> Outcome {
    let commands: [&[&str]; 5] = [
        &["fgl-law", "--p", "2", "--n", "2", "--degree", "12"],
        &["fgl-araki", "--p", "3", "--n", "1"],
        &["lt-construct", "--field", "Q3", "--degree", "10", "--endo", "2"],
        &["hkr-scheme", "--field", "Q2", "--group", "Q8"],
        &["group-info", "--group", "S4"],
    ];
    let mut checks = Vec::new();
    for args in commands {
        let render = || {
            let mut argv = vec!["lt-hkr"];
            argv.extend_from_slice(args);
            argv.extend_from_slice(&["--format", "json"]);
            super::run(argv)
        };
        let (c1, a, _, _) = render();
        let (c2, b, _, _) = render();
        checks.push(check(format!("{} twice gives identical bytes", args.join(" ")), c1 == 0 && c2 == 0 && a == b));
    }
    Ok((checks, Value::Null))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        let opts = SuiteOptions { only: vec!["nope".into()], ..Default::default() };
        assert!(matches!(run_suite(&opts), Err(SuiteError::UnknownSelector(_))));
        let opts = SuiteOptions { only: vec!["8".into()], ..Default::default() };
        let r = run_suite(&opts).unwrap();
        assert_eq!(r.entries.iter().map(|e| e.id.as_str()).collect::<Vec<_>>(), vec!["corpus", "8"]);
        assert!(r.pass());
    }

    #[test]
    fn corrupted_table_fails_validation() {
        let dir = std::env::temp_dir().join(format!("lt-hkr-corpus-{}", std::process::id()));
        std::fs::create_dir_all(dir.join("fields")).unwrap();
        std::fs::create_dir_all(dir.join("groups")).unwrap();
        std::fs::write(
            dir.join("fields/q2.json"),
            r#"{"p":2,"f":1,"u_poly":[0,1],"e":1,"e_poly":null,"precision":8}"#,
        )
        .unwrap();
        std::fs::write(dir.join("groups/bad.json"), r#"{"name":"bad","order":3,"table":[[0,1,2],[1,2,0],[2,1,0]]}"#)
            .unwrap();
        let opts = SuiteOptions { only: vec!["13".into()], corpus: Some(dir.clone()), ..Default::default() };
        let r = run_suite(&opts).unwrap();
        assert!(!r.entry("corpus").unwrap().pass());
        assert!(r.entry("13").unwrap().pass());
        std::fs::remove_dir_all(&dir).unwrap();
        let missing = SuiteOptions { corpus: Some(dir), ..Default::default() };
        assert!(matches!(run_suite(&missing), Err(SuiteError::Corpus(CorpusError::MissingCorpus(_)))));
    }
}
