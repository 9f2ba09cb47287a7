//! Self-checking counterexamples, with expectations kept as data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hom::HomDesc;
use crate::homspace::{classify, BoundedVerdict, ClassLabel, ContVerdict, Flags, Reading};
use crate::lattice::{check_f_ring, FRingSide, FRingVerdict, FinVec, MatrixRing2};
use crate::scalar::Rat;
use crate::suites::{instance_space, invariant_suites, CheckResult};

const SHIPPED: &str = include_str!("cases.toml");

#[derive(Clone, PartialEq, Eq, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Registry {
    #[serde(default)]
    case: Vec<CaseRecord>,
}

#[derive(Clone, PartialEq, Eq, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseRecord {
    pub id: String,
    pub narrative: String,
    pub domain: Option<String>,
    pub codomain: Option<String>,
    pub hom: Option<String>,
    pub ring: Option<Flags>,
    pub group: Option<Flags>,
    pub ring_vacuous: Option<bool>,
    pub ring_instance: Option<String>,
    pub f_ring: Option<FRingExpect>,
}

#[derive(Clone, PartialEq, Eq, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FRingExpect {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
    pub holds: bool,
    pub side: Option<String>,
    pub meet: Option<Vec<String>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub passed: bool,
    /// `field: expected X, got Y` for every mismatch.
    pub diff: Vec<String>,
    pub witnesses: Vec<String>,
    pub narrative: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub cases: Vec<CaseReport>,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gallery {
    cases: Vec<CaseRecord>,
}

fn field<'a, T>(id: &str, name: &str, v: &'a Option<T>) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::Parse(format!("case {id}: missing {name}")))
}

fn matrix(entries: &[String]) -> Result<FinVec> {
    if entries.len() != 4 {
        return Err(Error::Parse(format!("a 2x2 matrix needs 4 entries, got {}", entries.len())));
    }
    FinVec::new(entries.iter().map(|s| s.parse()).collect::<Result<Vec<Rat>>>()?)
}

fn parse_hom(name: &str, kind: crate::lattice::SpaceKind) -> Result<HomDesc> {
    match name {
        "identity" => Ok(HomDesc::Identity(kind)),
        _ => Err(Error::Parse(format!("unknown gallery hom {name:?}"))),
    }
}

fn verdict_witness(v: &BoundedVerdict) -> Option<String> {
    match v {
        BoundedVerdict::NotBounded { set, witness } => Some(format!("{witness} does not absorb {set}")),
        BoundedVerdict::Bounded { .. } => None,
    }
}

fn compare(diff: &mut Vec<String>, what: &str, expected: impl ToString, got: impl ToString) {
    let (e, g) = (expected.to_string(), got.to_string());
    if e != g {
        diff.push(format!("{what}: expected {e}, got {g}"));
    }
}

impl CaseRecord {
    fn run(&self) -> Result<CaseReport> {
        let mut diff = Vec::new();
        let mut witnesses = Vec::new();
        if let Some(exp) = &self.f_ring {
            let name = field(&self.id, "ring_instance", &self.ring_instance)?;
            if name != "matrix2_entrywise" {
                return Err(Error::UnknownInstance(name.clone()));
            }
            let (a, b, c) = (matrix(&exp.a)?, matrix(&exp.b)?, matrix(&exp.c)?);
            let verdict = check_f_ring(&MatrixRing2, &[(a, b, c)]);
            compare(&mut diff, "f_ring", exp.holds, verdict.holds());
            if let FRingVerdict::Witness { a, b, c, side, meet, .. } = verdict {
                let side = match side {
                    FRingSide::Left => "left",
                    FRingSide::Right => "right",
                };
                compare(&mut diff, "side", exp.side.as_deref().unwrap_or("-"), side);
                let want = exp.meet.as_deref().map(matrix).transpose()?;
                compare(&mut diff, "meet", want.map_or("-".into(), |m| m.to_string()), &meet);
                witnesses.push(format!("a = {a}, b = {b}, c = {c}: {side} product meets b in {meet}"));
            }
        } else {
            let domain = instance_space(field(&self.id, "domain", &self.domain)?)?;
            let codomain = instance_space(field(&self.id, "codomain", &self.codomain)?)?;
            let hom = parse_hom(field(&self.id, "hom", &self.hom)?, domain.kind())?;
            let label = classify(&hom, domain, codomain)?;
            for (r, exp) in [(Reading::Ring, &self.ring), (Reading::Group, &self.group)] {
                let name = if r == Reading::Ring { "ring" } else { "group" };
                compare(&mut diff, name, field(&self.id, name, exp)?, label.flags(r));
                let found = [("nr", label.nr.get(r)), ("br", label.br.get(r))];
                witnesses
                    .extend(found.iter().filter_map(|(k, v)| verdict_witness(v).map(|w| format!("{name}.{k}: {w}"))));
            }
            compare(&mut diff, "ring_vacuous", self.ring_vacuous.unwrap_or(false), ring_vacuous(&label));
            if let ContVerdict::NotContinuous { witness } = &label.continuous {
                witnesses.push(format!("continuous: no U maps into {witness}"));
            }
        }
        Ok(CaseReport {
            id: self.id.clone(),
            passed: diff.is_empty(),
            diff,
            witnesses,
            narrative: self.narrative.trim().to_string(),
        })
    }
}

fn ring_vacuous(label: &ClassLabel) -> bool {
    [&label.nr.ring, &label.br.ring].iter().all(|v| matches!(v, BoundedVerdict::Bounded { vacuous: true, .. }))
}

impl Gallery {
    pub fn shipped() -> Gallery {
        Gallery::from_toml(SHIPPED).expect("shipped gallery parses")
    }

    pub fn from_toml(text: &str) -> Result<Gallery> {
        let mut reg: Registry = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        reg.case.sort_by(|a, b| a.id.cmp(&b.id));
        Ok(Gallery { cases: reg.case })
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.cases.iter().map(|c| c.id.as_str())
    }

    pub fn run_case(&self, id: &str) -> Result<CaseReport> {
        self.cases.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCase(id.into()))?.run()
    }

    /// Every case, ordered by id.
    pub fn run_cases(&self) -> Result<Vec<CaseReport>> {
        if self.cases.is_empty() {
            return Err(Error::EmptyRegistry);
        }
        self.cases.iter().map(CaseRecord::run).collect()
    }

    /// Every case plus every invariant suite.
    pub fn run_all(&self, seed: u64, cases: usize) -> Result<SuiteReport> {
        let reports = self.run_cases()?;
        let checks = invariant_suites(seed, cases);
        let passed = reports.iter().all(|c| c.passed) && checks.iter().all(|c| c.passed);
        Ok(SuiteReport { passed, cases: reports, checks })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_cases_pass() {
        let g = Gallery::shipped();
        let reports = g.run_cases().unwrap();
        let ids: Vec<&str> = reports.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(
            ids,
            ["A_product_identity", "B_zero_mult_identity", "C_linfty_product_vs_norm", "D_fring_failure_matrix"]
        );
        for r in &reports {
            assert!(r.passed, "{}: {:?}", r.id, r.diff);
        }
        assert_eq!(
            reports[0].witnesses,
            ["ring.nr: U({1}, 1) does not absorb U({0}, 1)", "group.nr: U({1}, 1) does not absorb U({0}, 1)"]
        );
        assert_eq!(
            reports[3].witnesses,
            ["a = (1, 0, 0, 0), b = (0, 0, 1, 0), c = (0, 0, 1, 0): left product meets b in (0, 0, 1, 0)"]
        );
    }

    #[test]
    fn corrupted_expectation_is_a_named_diff() {
        let text = SHIPPED.replacen(
            "nr = false, br = true, continuous = true }",
            "nr = true, br = true, continuous = true }",
            1,
        );
        let r = Gallery::from_toml(&text).unwrap().run_case("A_product_identity").unwrap();
        assert!(!r.passed);
        assert_eq!(r.diff.len(), 1);
        assert!(r.diff[0].starts_with("ring: expected order_bounded=true nr=true"), "{}", r.diff[0]);
    }

    #[test]
    fn guards() {
        let g = Gallery::from_toml("").unwrap();
        assert_eq!(g.run_all(0, 10).unwrap_err(), Error::EmptyRegistry);
        assert_eq!(Gallery::shipped().run_case("E").unwrap_err(), Error::UnknownCase("E".into()));
        assert!(matches!(
            Gallery::from_toml("[[case]]\nid = \"x\"\nnarrative = \"\"\nextra = 1"),
            Err(Error::Parse(_))
        ));
    }
}
