//! Machine-readable reports: the invariant summary of one algebra and the
//! verification suites. Objects are `serde_json` maps with sorted keys and
//! every subspace is listed by its reduced echelon basis, so a report is
//! byte-stable for a fixed input and seed.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::algebra::{AnyAlgebra, LeibnizAlgebra};
use crate::ct::{
    factor_ct_check, is_a_algebra_exhaustive, is_ct_exhaustive, is_ct_sampled, is_ct_via_definition, sample_elements,
    witness_verifies, CtVerdict, DEFAULT_ELEMENT_BUDGET, DEFAULT_PAIR_BUDGET,
};
use crate::error::{Error, Result};
use crate::families::{cyclic_algebra, cyclic_ct_criterion, jac_centralizer_table, jac_example, sl2, CyclicSpec};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::invariants::{
    center, centralizer, is_completely_solvable, is_nilpotent_subspace, is_solvable, leibniz_kernel,
    nilradical_bruteforce, nilradical_report, series, solvable_radical, SeriesKind, SeriesReport,
    DEFAULT_SUBSPACE_BUDGET,
};
use crate::linalg::{all_vectors, for_each_subspace, power_count, subspace_count, Matrix, Subspace};
use crate::theorems::{
    codim_report, complement_transporter, kernel_action_sides, lemma_s_check, main_theorem_check, search_complement,
    solv_decomposition, theta_automorphism_test, theta_image, LemmaSOutcome, Side, SolvOutcome, CT_SAMPLES,
};

/// Samples for CT and table checks over fields too large to enumerate.
pub const REPORT_SAMPLES: usize = 1000;
/// Complement pairs tried by the transporter suite.
const TRANSPORT_COMPLEMENTS: usize = 5;

pub fn subspace_json<F: Field>(l: &LeibnizAlgebra<F>, u: &Subspace<F>) -> Value {
    json!({
        "dim": u.dim(),
        "basis": u.basis().iter().map(|v| l.format_element(v)).collect::<Vec<_>>(),
    })
}

pub fn verdict_json<F: Field>(l: &LeibnizAlgebra<F>, v: &CtVerdict<F::Elem>) -> Value {
    match v {
        CtVerdict::Ct => json!({ "status": "ct" }),
        CtVerdict::NotCt(w) => json!({
            "status": "not_ct",
            "witness": {
                "x": l.format_element(&w.x),
                "y": l.format_element(&w.y),
                "z": l.format_element(&w.z),
            },
        }),
        CtVerdict::Unfalsified { samples, seed } => json!({
            "status": "unfalsified",
            "samples": samples,
            "seed": seed,
        }),
    }
}

fn series_json<F: Field>(l: &LeibnizAlgebra<F>, s: &SeriesReport<F>) -> Value {
    json!({
        "dims": s.dims(),
        "terms": s.terms.iter().map(|t| subspace_json(l, t)).collect::<Vec<_>>(),
        "reaches_zero": s.reaches_zero(),
        "length": s.length(),
    })
}

fn algebra_json<F: Field>(l: &LeibnizAlgebra<F>) -> Value {
    json!({
        "field": l.field().spec().to_string(),
        "dim": l.dim(),
        "basis": l.names(),
    })
}

/// CT verdict: exhaustive over finite fields within budget, sampled
/// otherwise. `None` when a finite field is too large to enumerate.
pub fn ct_verdict<F: Field>(l: &LeibnizAlgebra<F>, seed: u64) -> Option<CtVerdict<F::Elem>> {
    match l.field().order() {
        Some(_) => is_ct_exhaustive(l, DEFAULT_ELEMENT_BUDGET).ok(),
        None => Some(is_ct_sampled(l, CT_SAMPLES, seed)),
    }
}

/// Invariant summary of one algebra.
pub fn analyze<F: Field>(l: &LeibnizAlgebra<F>, seed: u64) -> Value {
    let mut out = Map::new();
    out.insert("algebra".into(), algebra_json(l));
    let violation = l.check_leibniz().err();
    out.insert(
        "leibniz".into(),
        match &violation {
            None => json!({ "ok": true }),
            Some(v) => json!({
                "ok": false,
                "violation": {
                    "i": v.i, "j": v.j, "k": v.k,
                    "lhs": l.format_element(&v.lhs),
                    "rhs": l.format_element(&v.rhs),
                },
            }),
        },
    );
    out.insert("lie".into(), json!(l.is_lie()));
    out.insert("zero_algebra".into(), json!(l.is_zero_algebra()));
    if violation.is_some() {
        return Value::Object(out);
    }
    let lower = series(l, SeriesKind::LowerCentral);
    let derived = series(l, SeriesKind::Derived);
    out.insert(
        "series".into(),
        json!({
            "lower_central": series_json(l, &lower),
            "derived": series_json(l, &derived),
        }),
    );
    out.insert("nilpotent".into(), json!(lower.reaches_zero()));
    out.insert("solvable".into(), json!(derived.reaches_zero()));
    out.insert("completely_solvable".into(), json!(is_completely_solvable(l)));
    out.insert("leibniz_kernel".into(), subspace_json(l, &leibniz_kernel(l)));
    out.insert("center".into(), subspace_json(l, &center(l)));
    let nil = nilradical_report(l);
    let mut nil_json = subspace_json(l, &nil.subspace);
    nil_json["method"] = json!(nil.method);
    nil_json["certified"] = json!(nil.certified());
    out.insert("nilradical".into(), nil_json);
    let rad = solvable_radical(l);
    let mut rad_json = subspace_json(l, &rad.subspace);
    rad_json["certified"] = json!(rad.certified);
    out.insert("solvable_radical".into(), rad_json);
    out.insert(
        "ct".into(),
        match ct_verdict(l, seed) {
            Some(v) => verdict_json(l, &v),
            None => json!({ "status": "skipped", "reason": "element budget exceeded" }),
        },
    );
    Value::Object(out)
}

pub fn analyze_any(l: &AnyAlgebra, seed: u64) -> Value {
    match l {
        AnyAlgebra::Rational(a) => analyze(a, seed),
        AnyAlgebra::Prime(a) => analyze(a, seed),
    }
}

/// Human-readable rendering of an [`analyze`] report.
pub fn render_analysis(report: &Value) -> String {
    let mut s = String::new();
    let a = &report["algebra"];
    s.push_str(&format!("algebra: dim {} over {}, basis {}\n", a["dim"], str_of(&a["field"]), list_of(&a["basis"])));
    if report["leibniz"]["ok"] == json!(true) {
        s.push_str("leibniz identity: ok\n");
    } else {
        let v = &report["leibniz"]["violation"];
        s.push_str(&format!(
            "leibniz identity: fails at ({}, {}, {}): lhs = {}, rhs = {}\n",
            v["i"],
            v["j"],
            v["k"],
            str_of(&v["lhs"]),
            str_of(&v["rhs"])
        ));
        return s;
    }
    s.push_str(&format!("lie: {}\n", report["lie"]));
    for (name, key) in [("lower central series", "lower_central"), ("derived series", "derived")] {
        let ser = &report["series"][key];
        if ser["reaches_zero"] == json!(true) {
            s.push_str(&format!("{name}: dims {} (length {})\n", ser["dims"], ser["length"]));
        } else {
            s.push_str(&format!("{name}: dims {} (does not reach 0)\n", ser["dims"]));
        }
    }
    s.push_str(&format!(
        "nilpotent: {}, solvable: {}, completely solvable: {}\n",
        report["nilpotent"], report["solvable"], report["completely_solvable"]
    ));
    for (name, key) in [
        ("leibniz kernel", "leibniz_kernel"),
        ("center", "center"),
        ("nilradical", "nilradical"),
        ("solvable radical", "solvable_radical"),
    ] {
        s.push_str(&format!("{name}: {}\n", span_of(&report[key]["basis"])));
    }
    let ct = &report["ct"];
    s.push_str(&format!("ct: {}", str_of(&ct["status"])));
    if let Some(w) = ct.get("witness") {
        s.push_str(&format!(
            " (x = {}, y = {}, z = {})",
            str_of(&w["x"]),
            str_of(&w["y"]),
            str_of(&w["z"])
        ));
    }
    s.push('\n');
    s
}

fn str_of(v: &Value) -> String {
    v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())
}

fn list_of(v: &Value) -> String {
    v.as_array()
        .map(|a| a.iter().map(str_of).collect::<Vec<_>>().join(", "))
        .unwrap_or_default()
}

fn span_of(v: &Value) -> String {
    match v.as_array() {
        Some(a) if a.is_empty() => "0".into(),
        _ => format!("span{{{}}}", list_of(v)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Lemma1,
    Lemmas,
    Theorem1,
    Solv,
    Solv2,
    Fac,
    Main,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Lemma1,
        Suite::Lemmas,
        Suite::Theorem1,
        Suite::Solv,
        Suite::Solv2,
        Suite::Fac,
        Suite::Main,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Lemmas => "lemmas",
            Suite::Theorem1 => "theorem1",
            Suite::Solv => "solv",
            Suite::Solv2 => "solv2",
            Suite::Fac => "fac",
            Suite::Main => "main",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_list(text: &str) -> Result<Vec<Suite>> {
        if text == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        text.split(',').map(|s| s.trim().parse()).collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

/// Claims attached to a named family, checked in addition to the suites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyClaim {
    /// Cyclic algebra with the given `alpha_2, .., alpha_n`.
    Cyclic,
    /// The displayed centraliser table and the CT property.
    Jac,
    Sl2,
}

/// A named family instance as requested on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyRequest {
    /// `alphas` are scalar strings in the field's syntax.
    Cyclic { field: FieldSpec, alphas: Vec<String> },
    Jac { p: u64 },
    Sl2 { field: FieldSpec },
}

impl FamilyRequest {
    pub fn build(&self) -> Result<(AnyAlgebra, FamilyClaim)> {
        fn cyclic<F: Field>(f: &F, alphas: &[String]) -> Result<LeibnizAlgebra<F>> {
            let parsed = alphas.iter().map(|a| f.parse(a.trim())).collect::<Result<Vec<_>>>()?;
            Ok(cyclic_algebra(&CyclicSpec::new(f, parsed)?))
        }
        Ok(match self {
            FamilyRequest::Cyclic { field, alphas } => (
                match field {
                    FieldSpec::Rationals => cyclic(&Rationals, alphas)?.into(),
                    FieldSpec::PrimeField(p) => cyclic(&PrimeField::new(*p as u64)?, alphas)?.into(),
                },
                FamilyClaim::Cyclic,
            ),
            FamilyRequest::Jac { p } => (jac_example(*p)?.into(), FamilyClaim::Jac),
            FamilyRequest::Sl2 { field } => (
                match field {
                    FieldSpec::Rationals => sl2(&Rationals).into(),
                    FieldSpec::PrimeField(p) => sl2(&PrimeField::new(*p as u64)?).into(),
                },
                FamilyClaim::Sl2,
            ),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skipped,
}

struct Check {
    name: String,
    status: Status,
    detail: Value,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, ok: bool, detail: Value) {
        self.0.push(Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail,
        });
    }

    fn skip(&mut self, name: &str, reason: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            status: Status::Skipped,
            detail: json!({ "reason": reason.into() }),
        });
    }

    fn error(&mut self, name: &str, e: &Error) {
        match e {
            Error::BudgetExceeded { .. } | Error::InfiniteField(_) => self.skip(name, e.to_string()),
            _ => self.push(name, false, json!({ "error": e.to_string() })),
        }
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.0
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "status": match c.status {
                            Status::Pass => "pass",
                            Status::Fail => "fail",
                            Status::Skipped => "skipped",
                        },
                        "detail": c.detail,
                    })
                })
                .collect(),
        )
    }
}

/// Shared facts computed once per verification run.
struct Context<'a, F: Field> {
    l: &'a LeibnizAlgebra<F>,
    seed: u64,
    finite: bool,
    verdict: Option<CtVerdict<F::Elem>>,
}

impl<F: Field> Context<'_, F> {
    /// `Some(true)` only when CT is established exhaustively.
    fn ct_known(&self) -> Option<bool> {
        match &self.verdict {
            Some(CtVerdict::Ct) => Some(true),
            Some(CtVerdict::NotCt(_)) => Some(false),
            _ => None,
        }
    }

    fn ct_or_skip(&self, checks: &mut Checks, name: &str) -> bool {
        match self.ct_known() {
            Some(true) => true,
            Some(false) => {
                checks.skip(name, "hypothesis not met: the algebra is not CT");
                false
            }
            None => {
                checks.skip(name, "CT is not decidable here: infinite field or element budget exceeded");
                false
            }
        }
    }
}

fn suite_lemma1<F: Field>(cx: &Context<F>, checks: &mut Checks) {
    let l = cx.l;
    let Some(verdict) = &cx.verdict else {
        checks.skip("ct_decision", "element budget exceeded");
        return;
    };
    checks.push("ct_decision", true, verdict_json(l, verdict));
    if let CtVerdict::NotCt(w) = verdict {
        checks.push("witness_reverifies", witness_verifies(l, w), json!({}));
    }
    if cx.finite {
        match is_ct_via_definition(l, DEFAULT_PAIR_BUDGET) {
            Ok(oracle) => checks.push(
                "definition_oracle_agrees",
                oracle.is_ct() == verdict.is_ct(),
                json!({ "oracle": oracle.status(), "centraliser_form": verdict.status() }),
            ),
            Err(e) => checks.error("definition_oracle_agrees", &e),
        }
    } else {
        checks.skip("definition_oracle_agrees", "infinite field");
    }
}

fn suite_lemmas<F: Field>(cx: &Context<F>, checks: &mut Checks) {
    let l = cx.l;
    let kernel = leibniz_kernel(l);
    let whole = l.whole();
    let kernel_ok = l.is_ideal(&kernel).unwrap_or(false)
        && l.product_space(&whole, &kernel).map(|s| s.is_zero()).unwrap_or(false)
        && l.quotient(&kernel).map(|q| q.algebra.is_lie()).unwrap_or(false);
    checks.push("kernel_ideal_annihilated_lie_quotient", kernel_ok, subspace_json(l, &kernel));

    let terms_ok = [SeriesKind::LowerCentral, SeriesKind::Derived]
        .into_iter()
        .all(|k| series(l, k).terms.iter().all(|t| l.is_ideal(t).unwrap_or(false)));
    checks.push("series_terms_are_ideals", terms_ok, json!({}));

    let nil = nilradical_report(l);
    let nil_ok = l.is_ideal(&nil.subspace).unwrap_or(false) && is_nilpotent_subspace(l, &nil.subspace).unwrap_or(false);
    checks.push("nilradical_is_nilpotent_ideal", nil_ok, subspace_json(l, &nil.subspace));
    if cx.finite && l.dim() <= 5 {
        match nilradical_bruteforce(l, DEFAULT_SUBSPACE_BUDGET) {
            Ok(brute) => checks.push(
                "nilradical_matches_enumeration",
                brute == nil.subspace,
                json!({ "enumerated": subspace_json(l, &brute) }),
            ),
            Err(e) => checks.error("nilradical_matches_enumeration", &e),
        }
    }
    if !cx.finite {
        let ok = !is_solvable(l) || is_completely_solvable(l);
        checks.push("char0_solvable_is_completely_solvable", ok, json!({}));
    }

    match cx.ct_known() {
        Some(true) => {
            let z = center(l);
            checks.push(
                "lemma_z_center_forces_zero_algebra",
                z.is_zero() || l.is_zero_algebra(),
                json!({ "center_dim": z.dim() }),
            );
            match is_a_algebra_exhaustive(l, DEFAULT_SUBSPACE_BUDGET) {
                Ok(None) => checks.push("lemma_a_ct_is_a_algebra", true, json!({})),
                Ok(Some(u)) => checks.push(
                    "lemma_a_ct_is_a_algebra",
                    false,
                    json!({ "nilpotent_nonzero_subalgebra": subspace_json(l, &u) }),
                ),
                Err(e) => checks.error("lemma_a_ct_is_a_algebra", &e),
            }
            let mut bad: Option<Subspace<F>> = None;
            let mut visited = 0u64;
            let res = for_each_subspace(l.field(), l.dim(), DEFAULT_SUBSPACE_BUDGET, |u| {
                if !l.is_subalgebra(u).unwrap_or(false) {
                    return true;
                }
                visited += 1;
                let sub = l.restrict(u).expect("subalgebra");
                if !is_ct_exhaustive(&sub, DEFAULT_ELEMENT_BUDGET).map(|v| v.is_ct()).unwrap_or(true) {
                    bad = Some(u.clone());
                    return false;
                }
                true
            });
            match res {
                Ok(()) => checks.push(
                    "subalgebras_are_ct",
                    bad.is_none(),
                    json!({
                        "subalgebras": visited,
                        "counterexample": bad.map(|u| subspace_json(l, &u)),
                    }),
                ),
                Err(e) => checks.error("subalgebras_are_ct", &e),
            }
        }
        Some(false) => {
            checks.skip("lemma_z_center_forces_zero_algebra", "hypothesis not met: the algebra is not CT");
            checks.skip("lemma_a_ct_is_a_algebra", "hypothesis not met: the algebra is not CT");
            checks.skip("subalgebras_are_ct", "hypothesis not met: the algebra is not CT");
        }
        None => {
            // Lemma z still applies to an unfalsified verdict as a sanity check.
            let z = center(l);
            if z.is_zero() || l.is_zero_algebra() {
                checks.push("lemma_z_center_forces_zero_algebra", true, json!({ "center_dim": z.dim() }));
            } else {
                let v = centralizer(l, &z.basis()[0]).expect("element");
                checks.push(
                    "lemma_z_center_forces_zero_algebra",
                    false,
                    json!({ "center_dim": z.dim(), "centraliser_dim": v.dim() }),
                );
            }
            checks.skip("lemma_a_ct_is_a_algebra", "finite fields only");
            checks.skip("subalgebras_are_ct", "finite fields only");
        }
    }
}

/// A generator `a` whose right-normed powers `a, a^2, ..` form a basis, and
/// the resulting `alpha_2, .., alpha_n`.
#[allow(clippy::type_complexity)]
pub fn cyclic_structure<F: Field>(l: &LeibnizAlgebra<F>, seed: u64) -> Option<(Vec<F::Elem>, Vec<F::Elem>)> {
    let f = l.field();
    let n = l.dim();
    if n < 2 {
        return None;
    }
    let candidates: Vec<Vec<F::Elem>> = match f.order() {
        Some(_) => l.whole().projective_points(DEFAULT_ELEMENT_BUDGET).ok()?,
        None => sample_elements(n, REPORT_SAMPLES, seed)
            .into_iter()
            .map(|c| c.iter().map(|&v| f.from_i64(v)).collect())
            .collect(),
    };
    for a in candidates {
        let mut powers = vec![a.clone()];
        for _ in 1..n {
            let next = l.product(powers.last().expect("nonempty"), &a);
            powers.push(next);
        }
        let basis = Matrix::from_columns(f, n, &powers).expect("square");
        if basis.rank() != n {
            continue;
        }
        let top = l.product(&powers[n - 1], &a);
        let coords = basis.solve(&top).ok()??;
        if !f.is_zero(&coords[0]) {
            continue;
        }
        let alphas = coords[1..].to_vec();
        let spec = CyclicSpec::new(f, alphas.clone()).ok()?;
        let rebased = l.change_basis(&basis).ok()?;
        let model = cyclic_algebra(&spec);
        if rebased.with_names(model.names().to_vec()).ok()? == model {
            return Some((a, alphas));
        }
    }
    None
}

fn suite_theorem1<F: Field>(cx: &Context<F>, checks: &mut Checks) {
    let l = cx.l;
    let Some((a, alphas)) = cyclic_structure(l, cx.seed) else {
        checks.skip("cyclic_equivalence", "the algebra is not cyclic (no generator found)");
        return;
    };
    let f = l.field();
    let spec = CyclicSpec::new(f, alphas.clone()).expect("nonempty");
    let crit = cyclic_ct_criterion(&spec, REPORT_SAMPLES, cx.seed);
    let mut detail = json!({
        "generator": l.format_element(&a),
        "alphas": alphas.iter().map(|x| f.format(x)).collect::<Vec<_>>(),
        "criterion": crit.is_ct,
        "checks": crit.checks,
    });
    checks.push("cyclic_supporting_checks", crit.checks_pass(), detail.clone());
    match cx.ct_known() {
        Some(ct) => {
            let a_alg = is_a_algebra_exhaustive(l, DEFAULT_SUBSPACE_BUDGET).map(|r| r.is_none());
            detail["ct"] = json!(ct);
            match a_alg {
                Ok(aa) => {
                    detail["a_algebra"] = json!(aa);
                    checks.push("cyclic_equivalence", crit.is_ct == ct && ct == aa, detail);
                }
                Err(e) => {
                    detail["a_algebra"] = json!(e.to_string());
                    checks.push("cyclic_equivalence", crit.is_ct == ct, detail);
                }
            }
        }
        None => {
            let v = cx.verdict.as_ref();
            let consistent = !(crit.is_ct && v.is_some_and(|v| v.is_not_ct()));
            checks.push("cyclic_equivalence", consistent, detail);
        }
    }
    if crit.is_ct {
        let kernel = leibniz_kernel(l);
        let rebased_b = crit.b.as_ref().expect("b exists when CT");
        // b in the original basis: b = a^n - sum alpha_i a^i
        let mut powers = vec![a.clone()];
        for _ in 1..l.dim() {
            let next = l.product(powers.last().expect("nonempty"), &a);
            powers.push(next);
        }
        let basis = Matrix::from_columns(f, l.dim(), &powers).expect("square");
        let b = basis.apply(rebased_b).expect("length n");
        let (right, left) = kernel_action_sides(l, &kernel, &b).expect("element");
        checks.push(
            "kernel_right_action_full_left_zero",
            right && left,
            json!({ "b": l.format_element(&b), "I_b_is_I": right, "b_I_is_zero": left }),
        );
    }
}

fn suite_solv<F: Field>(cx: &Context<F>, checks: &mut Checks) {
    let l = cx.l;
    if !is_solvable(l) {
        checks.skip("solv_decomposition", "hypothesis not met: the algebra is not solvable");
        return;
    }
    match codim_report(l) {
        Ok(r) => checks.push("codimension_observation", true, serde_json::to_value(r).expect("plain data")),
        Err(e) => checks.error("codimension_observation", &e),
    }
    if !cx.ct_or_skip(checks, "solv_decomposition") {
        return;
    }
    match solv_decomposition(l, DEFAULT_ELEMENT_BUDGET) {
        Ok(SolvOutcome::Certified(c)) => {
            let verified = c.verify(l);
            checks.push(
                "solv_decomposition",
                verified,
                json!({
                    "derived_length": c.derived_length,
                    "nilradical": subspace_json(l, &c.nilradical),
                    "chain": c.chain.iter().map(|a| subspace_json(l, a)).collect::<Vec<_>>(),
                    "complement": subspace_json(l, &c.complement),
                    "searched_levels": c.searched_levels,
                    "action_elements": c.action_elements,
                }),
            );
            // Lemma s on N + Fx whenever N has codimension one.
            if c.nilradical.dim() + 1 == l.dim() && !l.is_zero_algebra() {
                let x = c.complement.basis()[0].clone();
                match lemma_s_check(l, &c.nilradical, &x, cx.seed) {
                    Ok(LemmaSOutcome::Holds(b)) => checks.push("lemma_s_dichotomy", true, json!({ "branch": b })),
                    Ok(LemmaSOutcome::Violation(r)) => checks.push("lemma_s_dichotomy", false, json!({ "violation": r })),
                    Err(Error::Precondition(r)) => checks.skip("lemma_s_dichotomy", r),
                    Err(e) => checks.error("lemma_s_dichotomy", &e),
                }
            }
        }
        Ok(SolvOutcome::Failed(fl)) => checks.push(
            "solv_decomposition",
            false,
            json!({
                "clause": fl.clause,
                "reason": fl.reason,
                "witness": fl.witness.map(|w| l.format_element(&w)),
            }),
        ),
        Err(e) => checks.error("solv_decomposition", &e),
    }
}

fn suite_solv2<F: Field>(cx: &Context<F>, checks: &mut Checks) {
    let l = cx.l;
    if !is_completely_solvable(l) {
        checks.skip("complement_transport", "hypothesis not met: the algebra is not completely solvable");
        return;
    }
    if !cx.ct_or_skip(checks, "complement_transport") {
        return;
    }
    if l.is_zero_algebra() {
        checks.skip("complement_transport", "zero algebra: the only complement of N = L is 0");
        return;
    }
    let nil = nilradical_report(l).subspace;
    let mut complements: Vec<Subspace<F>> = Vec::new();
    let search = search_complement(&nil, &l.whole(), DEFAULT_ELEMENT_BUDGET, |c| {
        if l.is_subalgebra(c).unwrap_or(false) && l.is_zero_subspace(c).unwrap_or(false) {
            complements.push(c.clone());
        }
        complements.len() >= TRANSPORT_COMPLEMENTS
    });
    if let Err(e) = search {
        checks.error("complement_transport", &e);
        return;
    }
    if complements.is_empty() {
        checks.push("complement_transport", false, json!({ "reason": "no zero-subalgebra complement of N" }));
        return;
    }
    let mut pairs = Vec::new();
    let mut all_ok = true;
    for a0 in &complements {
        for a0p in &complements {
            let entry = match complement_transporter(l, a0, a0p, cx.seed) {
                Ok(Some(t)) => {
                    all_ok &= t.verified;
                    json!({
                        "A0": subspace_json(l, a0),
                        "A0p": subspace_json(l, a0p),
                        "n": l.format_element(&t.n),
                        "verified": t.verified,
                    })
                }
                Ok(None) => {
                    all_ok = false;
                    json!({ "A0": subspace_json(l, a0), "A0p": subspace_json(l, a0p), "n": null })
                }
                Err(e) => {
                    all_ok = false;
                    json!({ "error": e.to_string() })
                }
            };
            pairs.push(entry);
        }
    }
    checks.push("complement_transport", all_ok, json!({ "pairs": pairs }));

    let kernel = leibniz_kernel(l);
    if nil == kernel && !kernel.is_zero() {
        let fixed = kernel.basis().iter().all(|n| {
            complements
                .iter()
                .all(|a0| theta_image(l, n, Side::Right, a0).map(|img| &img == a0).unwrap_or(false))
        });
        checks.push("kernel_theta_fixes_complements", fixed, json!({ "side": "right" }));
        let n = &kernel.basis()[0];
        match theta_automorphism_test(l, n) {
            Ok((hom, w)) => checks.push(
                "left_theta_homomorphism_observation",
                true,
                json!({
                    "n": l.format_element(n),
                    "is_homomorphism": hom,
                    "witness": w.map(|w| json!({
                        "i": w.i, "j": w.j,
                        "image_of_product": l.format_element(&w.image_of_product),
                        "product_of_images": l.format_element(&w.product_of_images),
                    })),
                }),
            ),
            Err(e) => checks.error("left_theta_homomorphism_observation", &e),
        }
    }
}

fn suite_fac<F: Field>(cx: &Context<F>, checks: &mut Checks) {
    let l = cx.l;
    if !cx.finite {
        checks.skip("quotients_are_ct", "finite fields only");
        return;
    }
    if !is_solvable(l) {
        checks.skip("quotients_are_ct", "hypothesis not met: the algebra is not solvable");
        return;
    }
    if !cx.ct_or_skip(checks, "quotients_are_ct") {
        return;
    }
    match factor_ct_check(l, DEFAULT_SUBSPACE_BUDGET) {
        Ok(r) => checks.push(
            "quotients_are_ct",
            r.counterexample.is_none(),
            json!({
                "ideals": r.ideals_checked,
                "counterexample": r.counterexample.map(|j| subspace_json(l, &j)),
            }),
        ),
        Err(e) => checks.error("quotients_are_ct", &e),
    }
}

fn suite_main<F: Field>(cx: &Context<F>, checks: &mut Checks) {
    let l = cx.l;
    if !cx.finite {
        checks.skip("classification_observation", "finite fields only");
        return;
    }
    if !cx.ct_or_skip(checks, "classification_observation") {
        return;
    }
    match main_theorem_check(l) {
        Ok(r) => checks.push(
            "classification_observation",
            true,
            serde_json::to_value(r).expect("plain data"),
        ),
        Err(e) => checks.error("classification_observation", &e),
    }
}

fn family_checks<F: Field>(cx: &Context<F>, claim: &FamilyClaim, checks: &mut Checks) {
    let l = cx.l;
    match claim {
        FamilyClaim::Cyclic => {
            if cyclic_structure(l, cx.seed).is_none() {
                checks.push("family_cyclic_structure", false, json!({}));
            }
        }
        FamilyClaim::Sl2 => match &cx.verdict {
            Some(v) => checks.push("family_claim_ct", !v.is_not_ct(), verdict_json(l, v)),
            None => checks.skip("family_claim_ct", "element budget exceeded"),
        },
        FamilyClaim::Jac => {
            match &cx.verdict {
                Some(v) => checks.push("family_claim_ct", v.is_ct(), verdict_json(l, v)),
                None => checks.skip("family_claim_ct", "element budget exceeded"),
            }
            // The table is stated over GF(p); only meaningful for the prime algebra.
            if let Some(pl) = as_prime(l) {
                checks.push_value(jac_table_check(pl, cx.seed));
            }
        }
    }
}

impl Checks {
    fn push_value(&mut self, (name, ok, detail): (&'static str, bool, Value)) {
        self.push(name, ok, detail);
    }
}

fn as_prime<F: Field>(l: &LeibnizAlgebra<F>) -> Option<&LeibnizAlgebra<PrimeField>> {
    (l as &dyn std::any::Any).downcast_ref::<LeibnizAlgebra<PrimeField>>()
}

/// Compares the displayed centraliser table of the jac family with the
/// computed centralisers: at every element when `p^(p+2)` is small,
/// otherwise at seeded samples.
pub fn jac_table_check(l: &LeibnizAlgebra<PrimeField>, seed: u64) -> (&'static str, bool, Value) {
    let f = l.field();
    let n = l.dim();
    let q = f.order().expect("finite");
    let points: Vec<Vec<u32>> = if power_count(q, n) <= DEFAULT_ELEMENT_BUDGET {
        all_vectors(f, n, DEFAULT_ELEMENT_BUDGET).expect("within budget")
    } else {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..REPORT_SAMPLES.min(100))
            .map(|_| (0..n).map(|_| rng.gen_range(0..q as u32)).collect())
            .collect()
    };
    let mut checked = [0u64; 4];
    let mut mismatched = [0u64; 4];
    let mut first: [Option<Value>; 4] = Default::default();
    for x in &points {
        let Some((case, expected)) = jac_centralizer_table(l, x) else {
            continue;
        };
        let actual = centralizer(l, x).expect("element");
        checked[case - 1] += 1;
        if actual != expected {
            mismatched[case - 1] += 1;
            if first[case - 1].is_none() {
                first[case - 1] = Some(json!({
                    "x": l.format_element(x),
                    "table": subspace_json(l, &expected),
                    "computed": subspace_json(l, &actual),
                }));
            }
        }
    }
    let ok = mismatched.iter().all(|&m| m == 0);
    (
        "family_centraliser_table",
        ok,
        json!({
            "points": points.len(),
            "checked_per_case": checked,
            "mismatched_per_case": mismatched,
            "first_mismatch_per_case": first,
        }),
    )
}

/// Runs the requested suites (and family claims, if any) and returns the
/// report with an overall `passed` flag.
pub fn verify<F: Field>(l: &LeibnizAlgebra<F>, suites: &[Suite], family: Option<&FamilyClaim>, seed: u64) -> Value {
    let mut out = Map::new();
    out.insert("algebra".into(), algebra_json(l));
    out.insert("seed".into(), json!(seed));
    if let Err(v) = l.check_leibniz() {
        out.insert(
            "leibniz".into(),
            json!({ "ok": false, "violation": { "i": v.i, "j": v.j, "k": v.k } }),
        );
        out.insert("passed".into(), json!(false));
        return Value::Object(out);
    }
    out.insert("leibniz".into(), json!({ "ok": true }));
    let cx = Context {
        l,
        seed,
        finite: l.field().order().is_some(),
        verdict: ct_verdict(l, seed),
    };
    let mut passed = true;
    let mut counts = [0u64; 3];
    let mut tally = |checks: &Checks| {
        for c in &checks.0 {
            match c.status {
                Status::Pass => counts[0] += 1,
                Status::Fail => {
                    counts[1] += 1;
                    passed = false;
                }
                Status::Skipped => counts[2] += 1,
            }
        }
    };
    let mut suites_json = Map::new();
    let mut sorted = suites.to_vec();
    sorted.sort();
    sorted.dedup();
    for s in sorted {
        let mut checks = Checks::default();
        match s {
            Suite::Lemma1 => suite_lemma1(&cx, &mut checks),
            Suite::Lemmas => suite_lemmas(&cx, &mut checks),
            Suite::Theorem1 => suite_theorem1(&cx, &mut checks),
            Suite::Solv => suite_solv(&cx, &mut checks),
            Suite::Solv2 => suite_solv2(&cx, &mut checks),
            Suite::Fac => suite_fac(&cx, &mut checks),
            Suite::Main => suite_main(&cx, &mut checks),
        }
        tally(&checks);
        suites_json.insert(s.name().into(), checks.to_json());
    }
    if let Some(claim) = family {
        let mut checks = Checks::default();
        family_checks(&cx, claim, &mut checks);
        tally(&checks);
        out.insert("family".into(), checks.to_json());
    }
    out.insert("suites".into(), Value::Object(suites_json));
    out.insert(
        "counts".into(),
        json!({ "pass": counts[0], "fail": counts[1], "skipped": counts[2] }),
    );
    out.insert("ct".into(), match &cx.verdict {
        Some(v) => verdict_json(l, v),
        None => json!({ "status": "skipped" }),
    });
    out.insert("passed".into(), json!(passed));
    out.insert(
        "caveats".into(),
        json!([
            "classification and codimension statements are observational: they are claimed only over algebraically closed fields",
        ]),
    );
    Value::Object(out)
}

pub fn verify_any(l: &AnyAlgebra, suites: &[Suite], family: Option<&FamilyClaim>, seed: u64) -> Value {
    match l {
        AnyAlgebra::Rational(a) => verify(a, suites, family, seed),
        AnyAlgebra::Prime(a) => verify(a, suites, family, seed),
    }
}

/// Human-readable rendering of a [`verify`] report.
pub fn render_verification(report: &Value) -> String {
    let mut s = String::new();
    let a = &report["algebra"];
    s.push_str(&format!("algebra: dim {} over {}\n", a["dim"], str_of(&a["field"])));
    if report["leibniz"]["ok"] != json!(true) {
        s.push_str("leibniz identity fails; nothing verified\n");
        return s;
    }
    s.push_str(&format!("ct: {}\n", str_of(&report["ct"]["status"])));
    let mut sections: Vec<(String, &Value)> = Vec::new();
    for suite in Suite::ALL {
        if let Some(v) = report["suites"].get(suite.name()) {
            sections.push((suite.name().to_string(), v));
        }
    }
    if let Some(f) = report.get("family") {
        sections.push(("family".into(), f));
    }
    for (name, checks) in sections {
        for c in checks.as_array().into_iter().flatten() {
            let status = str_of(&c["status"]);
            let mut line = format!("[{status}] {name}/{}", str_of(&c["name"]));
            if status == "skipped" {
                line.push_str(&format!(" ({})", str_of(&c["detail"]["reason"])));
            }
            s.push_str(&line);
            s.push('\n');
        }
    }
    let c = &report["counts"];
    s.push_str(&format!(
        "{} passed, {} failed, {} skipped\n",
        c["pass"], c["fail"], c["skipped"]
    ));
    s
}

/// Subspace count guard shared by callers that enumerate ideals.
pub fn enumerable<F: Field>(l: &LeibnizAlgebra<F>) -> bool {
    l.field()
        .order()
        .is_some_and(|q| subspace_count(q, l.dim()) <= DEFAULT_SUBSPACE_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example2<F: Field>(f: &F) -> LeibnizAlgebra<F> {
        cyclic_algebra(&CyclicSpec::new(f, vec![f.one()]).unwrap())
    }

    #[test]
    fn analyze_example2() {
        let r = analyze(&example2(&Rationals), 0);
        assert_eq!(r["leibniz"]["ok"], json!(true));
        assert_eq!(r["lie"], json!(false));
        assert_eq!(r["series"]["derived"]["length"], json!(2));
        assert_eq!(r["nilradical"]["basis"], json!(["a2"]));
        assert_eq!(r["ct"]["status"], json!("unfalsified"));
        let text = render_analysis(&r);
        assert!(text.contains("nilradical: span{a2}"));
    }

    #[test]
    fn verify_example2_passes() {
        let f = PrimeField::new(5).unwrap();
        let r = verify(&example2(&f), &Suite::ALL, Some(&FamilyClaim::Cyclic), 0);
        assert_eq!(r["passed"], json!(true), "{r:#}");
        let again = verify(&example2(&f), &Suite::ALL, Some(&FamilyClaim::Cyclic), 0);
        assert_eq!(serde_json::to_string(&r).unwrap(), serde_json::to_string(&again).unwrap());
    }

    #[test]
    fn verify_over_rationals() {
        let r = verify(&example2(&Rationals), &Suite::ALL, None, 0);
        assert_eq!(r["passed"], json!(true), "{r:#}");
        let r = verify(&sl2(&Rationals), &Suite::ALL, Some(&FamilyClaim::Sl2), 0);
        assert_eq!(r["passed"], json!(true), "{r:#}");
    }

    #[test]
    fn verify_sl2_gf5() {
        let r = verify(&sl2(&PrimeField::new(5).unwrap()), &Suite::ALL, Some(&FamilyClaim::Sl2), 0);
        assert_eq!(r["passed"], json!(true), "{r:#}");
        let main = &r["suites"]["main"][0]["detail"];
        assert_eq!(main["classification"], json!("sl2_like"));
    }

    #[test]
    fn jac_family_claims_fail_on_x1() {
        let jac = jac_example(3).unwrap();
        let r = verify(&jac, &Suite::ALL, Some(&FamilyClaim::Jac), 0);
        assert_eq!(r["passed"], json!(false));
        assert_eq!(r["ct"]["witness"]["x"], json!("x1"));
        let table = &r["family"][1]["detail"];
        assert_eq!(table["mismatched_per_case"], json!([2, 0, 0, 0]));
        // The theorem suites themselves are vacuous here, not failed.
        for s in ["lemma1", "lemmas", "solv", "solv2", "fac", "main"] {
            for c in r["suites"][s].as_array().unwrap() {
                assert_ne!(c["status"], json!("fail"), "{s}: {c}");
            }
        }
    }

    #[test]
    fn cyclic_detection() {
        let f = PrimeField::new(3).unwrap();
        let l = cyclic_algebra(&CyclicSpec::new(&f, vec![2, 1]).unwrap());
        let p = Matrix::from_rows(&f, 3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        let rebased = l.change_basis(&p).unwrap();
        let (_, alphas) = cyclic_structure(&rebased, 0).unwrap();
        assert_eq!(alphas, vec![2, 1]);
        assert!(cyclic_structure(&sl2(&f), 0).is_none());
    }
}
