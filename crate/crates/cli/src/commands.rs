//! Thin dispatchers from parsed input to the library, each producing a
//! [`ReportDoc`].

use lring::gallery::Gallery;
use lring::hom::{
    hom_verdict, negative_part, positive_part, riesz_decompose, sup_over_interval_oracle, HomDesc, ORACLE_CAP,
};
use lring::homspace::{
    br_converges, classify, cr_converges, lattice_continuity_audit, nr_converges, BoundedVerdict, ContVerdict,
    Convergence, CrConvergence, HomNet, Mode, ModeParams, Reading,
};
use lring::lattice::{sample, SpaceKind};
use lring::suites::laws;
use lring::topology::{NbhdDesc, SetDesc, Shape};
use lring::{Error, Rat};

use crate::report::{ReportDoc, TaskReport};
use crate::spec::{Op, Resolved, TaskSpec};
use crate::CliError;

pub const HORIZON: u64 = 1_000_000;
pub const ORACLE_POINTS: usize = 200;
const CONTINUITY_SAMPLES: usize = 10;

pub fn cmd_laws(instance: &str, seed: u64, cases: usize) -> Result<ReportDoc, CliError> {
    let mut doc = ReportDoc::new("laws");
    for c in laws(instance, seed, cases)? {
        let mut t = TaskReport::new("laws");
        t.value("instance", instance).value("checked", c.checked);
        t.check(&c.name, "exact identity on sampled elements", c.passed, "");
        if !c.detail.is_empty() {
            t.witness(c.detail);
        }
        doc.push(c.name, t);
    }
    Ok(doc)
}

pub fn cmd_gallery() -> Result<ReportDoc, CliError> {
    let mut doc = ReportDoc::new("gallery");
    for case in Gallery::shipped().run_cases()? {
        let mut t = TaskReport::new("gallery");
        t.value("narrative", case.narrative.replace('\n', " "));
        t.check("labels", "recorded labels re-derive exactly", case.passed, case.diff.join("; "));
        for w in case.witnesses {
            t.witness(w);
        }
        doc.push(case.id, t);
    }
    Ok(doc)
}

fn bounded_value(v: &BoundedVerdict) -> String {
    match v {
        BoundedVerdict::Bounded { vacuous: true, .. } => "true (vacuous)".into(),
        BoundedVerdict::Bounded { .. } => "true".into(),
        BoundedVerdict::NotBounded { .. } => "false".into(),
    }
}

fn classify_task(r: &Resolved, name: &str) -> Result<TaskReport, CliError> {
    let h = r.hom(name)?;
    let label = classify(&h, r.domain, r.codomain)?;
    let mut t = TaskReport::new("classify");
    t.value("hom", &h).value("domain", r.domain).value("codomain", r.codomain);
    t.value("order_bounded", label.order_bounded).value("modulus", &label.modulus);
    for reading in [Reading::Ring, Reading::Group] {
        let rn = if reading == Reading::Ring { "ring" } else { "group" };
        for (k, v) in [("nr", label.nr.get(reading)), ("br", label.br.get(reading))] {
            t.value(&format!("{rn}.{k}"), bounded_value(v));
            if let BoundedVerdict::NotBounded { set, witness } = v {
                t.witness(format!("{rn}.{k}: {witness} does not absorb {set}"));
            }
        }
    }
    t.value("continuous", label.continuous.holds());
    match &label.continuous {
        ContVerdict::Continuous(cert) => {
            let w = NbhdDesc::unit(r.codomain.topology(), r.codomain.kind());
            let u = cert.u_for(&w)?;
            t.value("continuity U for unit W", &u);
            t.check("continuity", "T(U) lies inside W", cert.verify(&w, &u)?, format!("W = {w}, U = {u}"));
        }
        ContVerdict::NotContinuous { witness } => {
            t.witness(format!("continuous: no U maps into {witness}"));
        }
    }
    Ok(t)
}

fn posp_task(r: &Resolved, name: &str, seed: u64) -> Result<TaskReport, CliError> {
    let h = r.hom(name)?;
    let (p, n) = (positive_part(&h), negative_part(&h));
    let mut t = TaskReport::new("posp");
    t.value("hom", &h).value("positive part", &p).value("negative part", &n);
    t.value("modulus", hom_verdict(&h).modulus);
    let kind = h.kind();
    let size = match kind {
        SpaceKind::Qn(k) => k,
        _ => h.frame_len() + 1,
    };
    if kind == SpaceKind::ZDiscrete || size > ORACLE_CAP {
        t.value("oracle agreement", "skipped");
        return Ok(t);
    }
    let mut rng = sample::rng(seed);
    let mut agree = 0;
    let mut first_miss = None;
    for _ in 0..ORACLE_POINTS {
        let x = sample::nonneg_element(&mut rng, kind);
        let (a, b) = (p.apply(&x)?, sup_over_interval_oracle(&h, &x)?);
        if a == b {
            agree += 1;
        } else if first_miss.is_none() {
            first_miss = Some(format!("x = {x}: T+(x) = {a}, supremum {b}"));
        }
    }
    t.value("oracle agreement", format!("{agree}/{ORACLE_POINTS}"));
    t.check("oracle", "T+(x) equals sup{Ty : 0 <= y <= x}", agree == ORACLE_POINTS, first_miss.unwrap_or_default());
    Ok(t)
}

fn decompose_task(r: &Resolved, x: &str, y1: &str, y2: &str) -> Result<TaskReport, CliError> {
    let (x, y1, y2) = (r.element(x)?, r.element(y1)?, r.element(y2)?);
    let (x1, x2) = riesz_decompose(&r.domain, &x, &y1, &y2)?;
    let mut t = TaskReport::new("decompose");
    t.value("x", &x).value("y1", &y1).value("y2", &y2).value("x1", &x1).value("x2", &x2);
    let ok = x1.add(&x2)? == x
        && x1.abs().leq(&y1.abs())?
        && x2.abs().leq(&y2.abs())?
        && (!x.is_nonneg() || (x1.is_nonneg() && x2.is_nonneg()));
    t.check("postconditions", "x = x1 + x2, |x1| <= |y1|, |x2| <= |y2|, positivity kept", ok, "");
    Ok(t)
}

fn scaled_units(n: &NbhdDesc) -> Vec<NbhdDesc> {
    [Rat::one(), Rat::new(1, 10), Rat::new(1, 100)].iter().map(|c| n.scaled(c)).collect()
}

fn alpha0_text(a: lring::homspace::Alpha0) -> String {
    if a.least {
        format!("{} (least)", a.alpha0)
    } else {
        format!("{} (bound {})", a.alpha0, a.upper)
    }
}

fn continuity_check(
    t: &mut TaskReport,
    net: &HomNet,
    limit: &HomDesc,
    params: &ModeParams,
    seed: u64,
) -> Result<(), CliError> {
    let s = HomNet::constant(net.domain(), net.codomain(), limit.clone())?;
    let mut rng = sample::rng(seed);
    let rep = lattice_continuity_audit(net, &s, params, HORIZON, &mut rng, CONTINUITY_SAMPLES)?;
    t.check(
        "lattice continuity",
        "T_a+(x) - S_a+(x) <= (T_a - S_a)+(x) and the difference lands in the target",
        true,
        format!("{} inequalities, {} memberships", rep.inequalities, rep.memberships),
    );
    Ok(())
}

fn converge_task(r: &Resolved, net: &str, mode: Mode, set: Option<&str>, seed: u64) -> Result<TaskReport, CliError> {
    let (n, limit) = r.net(net)?;
    let mut t = TaskReport::new("converge");
    t.value("net", &n).value("limit", &limit).value("mode", mode);
    let v_unit = NbhdDesc::unit(r.codomain.topology(), r.codomain.kind());
    let needs_set = || set.ok_or_else(|| CliError::Input(format!("{mode} convergence needs a set")));
    let (conv, params) = match mode {
        Mode::Nr => {
            let s = r.set(needs_set()?)?;
            let Shape::Nbhd(u) = s.shape() else {
                return Err(CliError::Input(format!("nr convergence needs a neighborhood, got {s}")));
            };
            (nr_converges(&n, &limit, u, HORIZON)?, ModeParams::Nr(u.clone()))
        }
        Mode::Br => {
            let b: SetDesc = r.set(needs_set()?)?;
            (br_converges(&n, &limit, &b, HORIZON)?, ModeParams::Br(b))
        }
        Mode::Cr => return cr_task(t, &n, &limit, &v_unit, seed),
    };
    match conv {
        Convergence::Convergent(cert) => {
            t.value("convergent", true).value("alpha0 rule", cert.formula());
            for v in scaled_units(&v_unit) {
                let a = cert.alpha0(&v)?;
                t.value(&format!("alpha0 at {v}"), alpha0_text(a));
                let ok = cert.verify_at(&v, a.alpha0)? && cert.verify_at(&v, a.alpha0 + 7)?;
                t.check(&format!("certificate at {v}"), "containment re-checked at alpha0 and alpha0 + 7", ok, "");
            }
            continuity_check(&mut t, &n, &limit, &params, seed)?;
        }
        Convergence::NotConvergent(f) => {
            t.value("convergent", false);
            let failing: Vec<String> = f.failing.iter().map(u64::to_string).collect();
            t.witness(format!(
                "{} is left at coordinate {} (limiting bound {}) for alpha in [{}]",
                f.witness,
                f.index,
                f.limit,
                failing.join(", ")
            ));
        }
    }
    Ok(t)
}

fn cr_task(mut t: TaskReport, n: &HomNet, limit: &HomDesc, unit: &NbhdDesc, seed: u64) -> Result<TaskReport, CliError> {
    match cr_converges(n, limit, HORIZON) {
        Err(Error::VacuousProduct) => {
            t.value("convergent", "vacuous (every product is zero)");
        }
        Err(e) => return Err(e.into()),
        Ok(CrConvergence::Convergent(cert)) => {
            t.value("convergent", true).value("alpha0 rule", cert.formula()?);
            for w in &scaled_units(unit)[..2] {
                t.value(&format!("U for W = {w}"), cert.u_for(w)?);
                for v in &scaled_units(unit)[..2] {
                    let a = cert.alpha0(w, v)?;
                    t.value(&format!("alpha0 at W = {w}, V = {v}"), alpha0_text(a));
                    let ok = cert.verify_at(w, v, a.alpha0)? && cert.verify_at(w, v, a.alpha0 + 7)?;
                    t.check(
                        &format!("certificate at W = {w}, V = {v}"),
                        "containment re-checked at alpha0 and alpha0 + 7",
                        ok,
                        "",
                    );
                }
            }
            continuity_check(&mut t, n, limit, &ModeParams::Cr, seed)?;
        }
        Ok(CrConvergence::NotConvergent(f)) => {
            t.value("convergent", false);
            let failing: Vec<String> = f.failing.iter().map(u64::to_string).collect();
            t.witness(format!(
                "W = {}: U = {} leaves V = {} at coordinate {} for alpha in [{}]",
                f.w,
                f.u,
                f.v,
                f.index,
                failing.join(", ")
            ));
        }
    }
    Ok(t)
}

pub fn cmd_classify(r: &Resolved, hom: &str) -> Result<ReportDoc, CliError> {
    let mut doc = ReportDoc::new("classify");
    doc.push(hom, classify_task(r, hom)?);
    Ok(doc)
}

pub fn cmd_posp(r: &Resolved, hom: &str, seed: u64) -> Result<ReportDoc, CliError> {
    let mut doc = ReportDoc::new("posp");
    doc.push(hom, posp_task(r, hom, seed)?);
    Ok(doc)
}

pub fn cmd_decompose(r: &Resolved, x: &str, y1: &str, y2: &str) -> Result<ReportDoc, CliError> {
    let mut doc = ReportDoc::new("decompose");
    doc.push(x, decompose_task(r, x, y1, y2)?);
    Ok(doc)
}

pub fn cmd_converge(r: &Resolved, net: &str, mode: Mode, set: Option<&str>, seed: u64) -> Result<ReportDoc, CliError> {
    let mut doc = ReportDoc::new("converge");
    doc.push(net, converge_task(r, net, mode, set, seed)?);
    Ok(doc)
}

fn run_task(r: &Resolved, task: &TaskSpec, seed: u64) -> Result<TaskReport, CliError> {
    let arg = |v: &Option<String>| v.clone().unwrap_or_default();
    match task.op {
        Op::Classify => classify_task(r, &arg(&task.hom)),
        Op::Posp => posp_task(r, &arg(&task.hom), seed),
        Op::Decompose => decompose_task(r, &arg(&task.x), &arg(&task.y1), &arg(&task.y2)),
        Op::Converge => {
            let mode = arg(&task.mode).parse()?;
            converge_task(r, &arg(&task.net), mode, task.set.as_deref(), seed)
        }
    }
}

/// Every task of the spec file, keyed by task name.
pub fn cmd_run(r: &Resolved, seed: u64) -> Result<ReportDoc, CliError> {
    let mut doc = ReportDoc::new("run");
    for task in &r.spec.tasks {
        if doc.tasks.contains_key(&task.name) {
            return Err(CliError::Input(format!("duplicate task name {:?}", task.name)));
        }
        doc.push(task.name.clone(), run_task(r, task, seed)?);
    }
    Ok(doc)
}
