//! The TOML spec file: spaces, named descriptors and tasks.
//!
//! Rationals are `"p/q"` strings. Every key is checked; unknown keys and
//! unresolved names are errors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use lring::hom::{HomDesc, RatMatrix};
use lring::homspace::{HomNet, Mode, NetTerms};
use lring::lattice::{Element, EvSeq, FinVec, Multiplication, Space, SpaceKind};
use lring::suites::instance_space;
use lring::topology::{NbhdDesc, SetDesc, Shape, TopologyId};
use lring::Rat;

use crate::CliError;

#[derive(Clone, PartialEq, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub space: SpaceSpec,
    /// Defaults to `space`.
    pub codomain: Option<SpaceSpec>,
    #[serde(default)]
    pub elements: BTreeMap<String, ElemSpec>,
    #[serde(default)]
    pub homs: BTreeMap<String, HomSpec>,
    #[serde(default)]
    pub sets: BTreeMap<String, SetSpec>,
    #[serde(default)]
    pub nets: BTreeMap<String, NetSpec>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
}

/// Either a shipped instance name or an explicit description.
#[derive(Clone, PartialEq, Eq, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub instance: Option<String>,
    /// `qn`, `evseq` or `z`.
    pub kind: Option<String>,
    pub dim: Option<usize>,
    /// `pointwise` (default) or `zero`.
    pub multiplication: Option<String>,
    pub topology: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ElemSpec {
    Int(String),
    Vec(Vec<String>),
    Seq(SeqSpec),
}

#[derive(Clone, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SeqSpec {
    pub prefix: Vec<String>,
    pub tail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum HomSpec {
    Matrix(Vec<Vec<String>>),
    Diagonal(SeqSpec),
    DiagPlusFinite { diag: SeqSpec, block: Vec<Vec<String>> },
    Identity(bool),
    Zmul(String),
}

/// A hom given by name or inline.
#[derive(Clone, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum HomRef {
    Name(String),
    Inline(HomSpec),
}

#[derive(Clone, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum NbhdSpec {
    Box(Vec<String>),
    Product { coords: Vec<usize>, radius: String },
    Supnorm(String),
    Zero(bool),
}

/// A set in the domain; an image lands in the codomain.
#[derive(Clone, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    Interval { lo: ElemSpec, hi: ElemSpec },
    Finite(Vec<ElemSpec>),
    SolidHull(Vec<ElemSpec>),
    Nbhd(NbhdSpec),
    Image { hom: HomRef, set: Box<SetSpec> },
}

#[derive(Clone, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct StepSpec {
    pub hom: HomRef,
    pub power: u32,
}

/// `base + Σ hom/α^power`, or a finite table of terms.
#[derive(Clone, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct NetSpec {
    pub base: Option<HomRef>,
    #[serde(default)]
    pub steps: Vec<StepSpec>,
    pub table: Option<Vec<HomRef>>,
    /// Defaults to `base`, or the last table term.
    pub limit: Option<HomRef>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    Classify,
    Posp,
    Decompose,
    Converge,
}

#[derive(Clone, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub name: String,
    pub op: Op,
    pub hom: Option<String>,
    pub x: Option<String>,
    pub y1: Option<String>,
    pub y2: Option<String>,
    pub net: Option<String>,
    pub mode: Option<String>,
    /// The neighborhood (nr) or bounded set (br) for `converge`.
    pub set: Option<String>,
}

pub fn rat(s: &str) -> Result<Rat, CliError> {
    s.trim().parse().map_err(|_| CliError::Input(format!("bad rational {s:?}")))
}

fn rats(xs: &[String]) -> Result<Vec<Rat>, CliError> {
    xs.iter().map(|s| rat(s)).collect()
}

fn strs(xs: &[Rat]) -> Vec<String> {
    xs.iter().map(Rat::to_string).collect()
}

use crate::lib_error as lib;

fn rows(m: &[Vec<String>]) -> Result<RatMatrix, CliError> {
    RatMatrix::from_rows(m.iter().map(|r| rats(r)).collect::<Result<_, _>>()?).map_err(lib)
}

fn seq(s: &SeqSpec) -> Result<EvSeq, CliError> {
    Ok(EvSeq::new(rats(&s.prefix)?, rat(&s.tail)?))
}

impl SpaceSpec {
    pub fn instance(name: &str) -> SpaceSpec {
        SpaceSpec { instance: Some(name.into()), ..SpaceSpec::default() }
    }

    pub fn resolve(&self) -> Result<Space, CliError> {
        if let Some(name) = &self.instance {
            if self.kind.is_some() || self.dim.is_some() || self.multiplication.is_some() || self.topology.is_some() {
                return Err(CliError::Input("space: give either instance or an explicit description".into()));
            }
            return instance_space(name).map_err(lib);
        }
        let kind = match (self.kind.as_deref(), self.dim) {
            (Some("qn"), Some(n)) => SpaceKind::Qn(n),
            (Some("qn"), None) => return Err(CliError::Input("space: qn needs dim".into())),
            (Some("evseq"), None) => SpaceKind::EvSeq,
            (Some("z"), None) => SpaceKind::ZDiscrete,
            (Some(k), _) => return Err(CliError::Input(format!("space: unknown kind {k:?} or stray dim"))),
            (None, _) => return Err(CliError::Input("space: missing kind".into())),
        };
        let mul = match self.multiplication.as_deref() {
            None | Some("pointwise") => Multiplication::Pointwise,
            Some("zero") => Multiplication::Zero,
            Some(m) => return Err(CliError::Input(format!("space: unknown multiplication {m:?}"))),
        };
        let topology = match (&self.topology, kind) {
            (Some(t), _) => t.parse().map_err(lib)?,
            (None, SpaceKind::Qn(_)) => TopologyId::QnBox,
            (None, SpaceKind::EvSeq) => TopologyId::EvSeqProduct,
            (None, SpaceKind::ZDiscrete) => TopologyId::ZDiscrete,
        };
        Space::new(kind, mul, topology).map_err(lib)
    }
}

impl ElemSpec {
    pub fn resolve(&self, space: Space) -> Result<Element, CliError> {
        let x = match self {
            ElemSpec::Int(s) => {
                Element::Int(s.trim().parse::<BigInt>().map_err(|_| CliError::Input(format!("bad integer {s:?}")))?)
            }
            ElemSpec::Vec(xs) => Element::Vec(FinVec::new(rats(xs)?).map_err(lib)?),
            ElemSpec::Seq(s) => Element::Seq(seq(s)?),
        };
        space.check(&x).map_err(lib)?;
        Ok(x)
    }

    pub fn of(x: &Element) -> ElemSpec {
        match x {
            Element::Int(n) => ElemSpec::Int(n.to_string()),
            Element::Vec(v) => ElemSpec::Vec(strs(v.entries())),
            Element::Seq(s) => ElemSpec::Seq(SeqSpec::of(s)),
        }
    }
}

impl SeqSpec {
    pub fn of(s: &EvSeq) -> SeqSpec {
        SeqSpec { prefix: strs(s.prefix()), tail: s.tail().to_string() }
    }
}

impl HomSpec {
    pub fn resolve(&self, kind: SpaceKind) -> Result<HomDesc, CliError> {
        let h = match self {
            HomSpec::Matrix(m) => HomDesc::matrix(rows(m)?).map_err(lib)?,
            HomSpec::Diagonal(d) => HomDesc::Diagonal(seq(d)?),
            HomSpec::DiagPlusFinite { diag, block } => {
                let block = if block.is_empty() { RatMatrix::zeros(0, 0) } else { rows(block)? };
                HomDesc::diag_plus_finite(seq(diag)?, block).map_err(lib)?
            }
            HomSpec::Identity(true) => HomDesc::Identity(kind),
            HomSpec::Identity(false) => return Err(CliError::Input("identity = false is not a hom".into())),
            HomSpec::Zmul(n) => {
                HomDesc::ZMul(n.trim().parse().map_err(|_| CliError::Input(format!("bad integer {n:?}")))?)
            }
        };
        if h.kind() != kind {
            return Err(CliError::Input(format!("{h} does not act on {kind}")));
        }
        Ok(h)
    }

    pub fn of(h: &HomDesc) -> HomSpec {
        let m = |m: &RatMatrix| m.to_rows().iter().map(|r| strs(r)).collect();
        match h {
            HomDesc::Matrix(a) => HomSpec::Matrix(m(a)),
            HomDesc::Diagonal(d) => HomSpec::Diagonal(SeqSpec::of(d)),
            HomDesc::DiagPlusFinite { diag, block } => {
                HomSpec::DiagPlusFinite { diag: SeqSpec::of(diag), block: m(block) }
            }
            HomDesc::Identity(_) => HomSpec::Identity(true),
            HomDesc::ZMul(n) => HomSpec::Zmul(n.to_string()),
        }
    }
}

impl NbhdSpec {
    pub fn resolve(&self) -> Result<NbhdDesc, CliError> {
        match self {
            NbhdSpec::Box(r) => NbhdDesc::qn_box(rats(r)?),
            NbhdSpec::Product { coords, radius } => NbhdDesc::product(coords.iter().copied(), rat(radius)?),
            NbhdSpec::Supnorm(r) => NbhdDesc::supnorm(rat(r)?),
            NbhdSpec::Zero(_) => Ok(NbhdDesc::ZeroSingleton),
        }
        .map_err(lib)
    }

    pub fn of(u: &NbhdDesc) -> NbhdSpec {
        match u {
            NbhdDesc::QnBox { radii } => NbhdSpec::Box(strs(radii)),
            NbhdDesc::Product { coords, radius } => {
                NbhdSpec::Product { coords: coords.iter().copied().collect(), radius: radius.to_string() }
            }
            NbhdDesc::SupNorm { radius } => NbhdSpec::Supnorm(radius.to_string()),
            NbhdDesc::ZeroSingleton => NbhdSpec::Zero(true),
        }
    }
}

impl SetSpec {
    pub fn of(s: &SetDesc) -> SetSpec {
        let elems = |xs: &[Element]| xs.iter().map(ElemSpec::of).collect();
        match s.shape() {
            Shape::Interval { lo, hi } => SetSpec::Interval { lo: ElemSpec::of(lo), hi: ElemSpec::of(hi) },
            Shape::Finite(xs) => SetSpec::Finite(elems(xs)),
            Shape::SolidHull(xs) => SetSpec::SolidHull(elems(xs)),
            Shape::Nbhd(u) => SetSpec::Nbhd(NbhdSpec::of(u)),
            Shape::Image { hom, set } => {
                SetSpec::Image { hom: HomRef::Inline(HomSpec::of(hom)), set: Box::new(SetSpec::of(set)) }
            }
        }
    }
}

/// A spec file with every name checked to resolve.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub spec: SpecFile,
    pub domain: Space,
    pub codomain: Space,
}

impl Resolved {
    pub fn parse(text: &str) -> Result<Resolved, CliError> {
        let spec: SpecFile = toml::from_str(text).map_err(|e| CliError::Input(format!("spec: {e}")))?;
        Resolved::new(spec)
    }

    pub fn new(spec: SpecFile) -> Result<Resolved, CliError> {
        let domain = spec.space.resolve()?;
        let codomain = match &spec.codomain {
            Some(c) => c.resolve()?,
            None => domain,
        };
        if domain.kind() != codomain.kind() {
            return Err(CliError::Input(format!("{domain} and {codomain} have different carriers")));
        }
        let r = Resolved { spec, domain, codomain };
        for name in r.spec.elements.keys() {
            r.element(name)?;
        }
        for name in r.spec.homs.keys() {
            r.hom(name)?;
        }
        for name in r.spec.sets.keys() {
            r.set(name)?;
        }
        for name in r.spec.nets.keys() {
            r.net(name)?;
        }
        for t in &r.spec.tasks {
            r.check_task(t)?;
        }
        Ok(r)
    }

    fn lookup<'a, T>(map: &'a BTreeMap<String, T>, what: &'static str, name: &str) -> Result<&'a T, CliError> {
        map.get(name).ok_or_else(|| CliError::UnknownName { what, name: name.into() })
    }

    pub fn element(&self, name: &str) -> Result<Element, CliError> {
        Self::lookup(&self.spec.elements, "element", name)?.resolve(self.domain)
    }

    pub fn hom(&self, name: &str) -> Result<HomDesc, CliError> {
        Self::lookup(&self.spec.homs, "hom", name)?.resolve(self.domain.kind())
    }

    pub fn hom_ref(&self, r: &HomRef) -> Result<HomDesc, CliError> {
        match r {
            HomRef::Name(n) => self.hom(n),
            HomRef::Inline(h) => h.resolve(self.domain.kind()),
        }
    }

    pub fn set(&self, name: &str) -> Result<SetDesc, CliError> {
        self.set_spec(Self::lookup(&self.spec.sets, "set", name)?, self.domain)
    }

    /// Resolves `s` in `space`; the inner set of an image is in the domain.
    pub fn set_spec(&self, s: &SetSpec, space: Space) -> Result<SetDesc, CliError> {
        let elems = |xs: &[ElemSpec]| xs.iter().map(|x| x.resolve(space)).collect::<Result<Vec<_>, _>>();
        match s {
            SetSpec::Interval { lo, hi } => SetDesc::interval(space, lo.resolve(space)?, hi.resolve(space)?),
            SetSpec::Finite(xs) => SetDesc::finite(space, elems(xs)?),
            SetSpec::SolidHull(xs) => lring::topology::solid_hull(space, elems(xs)?),
            SetSpec::Nbhd(u) => SetDesc::nbhd(space, u.resolve()?),
            SetSpec::Image { hom, set } => {
                SetDesc::image(self.codomain, self.hom_ref(hom)?, self.set_spec(set, self.domain)?)
            }
        }
        .map_err(lib)
    }

    pub fn net(&self, name: &str) -> Result<(HomNet, HomDesc), CliError> {
        let n = Self::lookup(&self.spec.nets, "net", name)?;
        let terms = match (&n.base, &n.table) {
            (Some(base), None) => NetTerms::Closed {
                base: self.hom_ref(base)?,
                steps: n.steps.iter().map(|s| Ok((self.hom_ref(&s.hom)?, s.power))).collect::<Result<_, CliError>>()?,
            },
            (None, Some(table)) if n.steps.is_empty() => {
                NetTerms::Table(table.iter().map(|h| self.hom_ref(h)).collect::<Result<_, _>>()?)
            }
            _ => return Err(CliError::Input(format!("net {name}: give base (with steps) or table"))),
        };
        let limit = match (&n.limit, &terms) {
            (Some(l), _) => self.hom_ref(l)?,
            (None, NetTerms::Closed { base, .. }) => base.clone(),
            (None, NetTerms::Table(ts)) => ts.last().cloned().expect("checked nonempty"),
        };
        Ok((HomNet::new(self.domain, self.codomain, terms).map_err(lib)?, limit))
    }

    fn check_task(&self, t: &TaskSpec) -> Result<(), CliError> {
        let need = |v: &Option<String>, field: &str| {
            v.clone().ok_or_else(|| CliError::Input(format!("task {}: missing {field}", t.name)))
        };
        match t.op {
            Op::Classify | Op::Posp => self.hom(&need(&t.hom, "hom")?).map(drop),
            Op::Decompose => {
                for f in [&t.x, &t.y1, &t.y2] {
                    self.element(&need(f, "x, y1 and y2")?)?;
                }
                Ok(())
            }
            Op::Converge => {
                self.net(&need(&t.net, "net")?)?;
                let mode: Mode = need(&t.mode, "mode")?.parse().map_err(lib)?;
                match (mode, &t.set) {
                    (Mode::Cr, _) => Ok(()),
                    (_, Some(s)) => self.set(s).map(drop),
                    (_, None) => Err(CliError::Input(format!("task {}: {mode} needs set", t.name))),
                }
            }
        }
    }
}
