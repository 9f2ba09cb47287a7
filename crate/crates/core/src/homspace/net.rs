use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hom::HomDesc;
use crate::lattice::Space;
use crate::scalar::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NetTerms {
    /// `T_α = base + Σ step_k / α^{p_k}` with every `p_k ≥ 1`.
    Closed { base: HomDesc, steps: Vec<(HomDesc, u32)> },
    /// `T_1, …, T_m`, then constant at `T_m`.
    Table(Vec<HomDesc>),
}

/// A net of homomorphisms indexed by `α = 1, 2, …`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomNet {
    domain: Space,
    codomain: Space,
    terms: NetTerms,
}

impl HomNet {
    pub fn new(domain: Space, codomain: Space, terms: NetTerms) -> Result<HomNet> {
        if domain.kind() != codomain.kind() {
            return Err(Error::InvalidArgument(format!("{domain} and {codomain} have different carriers")));
        }
        let homs: Vec<&HomDesc> = match &terms {
            NetTerms::Closed { base, steps } => {
                if let Some((_, p)) = steps.iter().find(|(_, p)| *p == 0) {
                    return Err(Error::InvalidArgument(format!("step power {p} must be at least 1")));
                }
                std::iter::once(base).chain(steps.iter().map(|(s, _)| s)).collect()
            }
            NetTerms::Table(ts) => {
                if ts.is_empty() {
                    return Err(Error::EmptyInput("a net table needs at least one term"));
                }
                ts.iter().collect()
            }
        };
        if let Some(h) = homs.iter().find(|h| h.kind() != domain.kind()) {
            return Err(Error::InvalidArgument(format!("{h} does not act on {domain}")));
        }
        Ok(HomNet { domain, codomain, terms })
    }

    pub fn closed(domain: Space, codomain: Space, base: HomDesc, steps: Vec<(HomDesc, u32)>) -> Result<HomNet> {
        HomNet::new(domain, codomain, NetTerms::Closed { base, steps })
    }

    pub fn table(domain: Space, codomain: Space, terms: Vec<HomDesc>) -> Result<HomNet> {
        HomNet::new(domain, codomain, NetTerms::Table(terms))
    }

    pub fn constant(domain: Space, codomain: Space, t: HomDesc) -> Result<HomNet> {
        HomNet::closed(domain, codomain, t, vec![])
    }

    pub fn domain(&self) -> Space {
        self.domain
    }

    pub fn codomain(&self) -> Space {
        self.codomain
    }

    pub fn terms(&self) -> &NetTerms {
        &self.terms
    }

    pub fn term(&self, alpha: u64) -> Result<HomDesc> {
        if alpha == 0 {
            return Err(Error::InvalidArgument("nets are indexed from 1".into()));
        }
        match &self.terms {
            NetTerms::Closed { base, steps } => {
                let a = Rat::from_bigint(alpha.into());
                steps.iter().try_fold(base.clone(), |acc, (s, p)| acc.add(&s.scale(&a.pow(*p).recip())?))
            }
            NetTerms::Table(ts) => Ok(ts[(alpha as usize).min(ts.len()) - 1].clone()),
        }
    }

    /// The homomorphisms the net is built from.
    pub fn homs(&self) -> Vec<&HomDesc> {
        match &self.terms {
            NetTerms::Closed { base, steps } => std::iter::once(base).chain(steps.iter().map(|(s, _)| s)).collect(),
            NetTerms::Table(ts) => ts.iter().collect(),
        }
    }

    pub fn frame_len(&self) -> usize {
        self.homs().iter().map(|h| h.frame_len()).max().unwrap_or(0)
    }

    /// Steps with equal powers merged and zero steps dropped, by increasing power.
    pub(crate) fn merged_steps(&self) -> Result<Vec<(HomDesc, u32)>> {
        let NetTerms::Closed { steps, .. } = &self.terms else {
            return Ok(vec![]);
        };
        let mut by_power: BTreeMap<u32, HomDesc> = BTreeMap::new();
        for (s, p) in steps {
            let merged = match by_power.remove(p) {
                Some(acc) => acc.add(s)?,
                None => s.clone(),
            };
            by_power.insert(*p, merged);
        }
        Ok(by_power.into_iter().filter(|(_, s)| !s.is_zero()).map(|(p, s)| (s.canonical(), p)).collect())
    }

    /// The termwise difference `T_α − S_α`.
    pub fn minus(&self, other: &HomNet) -> Result<HomNet> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::InvalidArgument("nets act between different spaces".into()));
        }
        let terms = match (&self.terms, &other.terms) {
            (NetTerms::Closed { base: a, steps: sa }, NetTerms::Closed { base: b, steps: sb }) => NetTerms::Closed {
                base: a.sub(b)?,
                steps: sa.iter().cloned().chain(sb.iter().map(|(s, p)| (s.neg(), *p))).collect(),
            },
            _ => {
                let m = self.table_len().max(other.table_len());
                NetTerms::Table((1..=m).map(|a| self.term(a)?.sub(&other.term(a)?)).collect::<Result<_>>()?)
            }
        };
        HomNet::new(self.domain, self.codomain, terms)
    }

    /// The index from which a table net is constant (1 for closed forms).
    pub fn table_len(&self) -> u64 {
        match &self.terms {
            NetTerms::Closed { .. } => 1,
            NetTerms::Table(ts) => ts.len() as u64,
        }
    }

    /// The same net with every term replaced by its positive part.
    pub fn map_terms(&self, f: impl Fn(&HomDesc) -> HomDesc) -> Result<HomNet> {
        let m = self.table_len().max(1);
        let ts = (1..=m).map(|a| Ok(f(&self.term(a)?))).collect::<Result<Vec<_>>>()?;
        HomNet::table(self.domain, self.codomain, ts)
    }
}

impl fmt::Display for HomNet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.terms {
            NetTerms::Closed { base, steps } => {
                write!(f, "{base}")?;
                for (s, p) in steps {
                    match p {
                        1 => write!(f, " + ({s})/a")?,
                        _ => write!(f, " + ({s})/a^{p}")?,
                    }
                }
                Ok(())
            }
            NetTerms::Table(ts) => {
                let parts: Vec<String> = ts.iter().map(ToString::to_string).collect();
                write!(f, "table[{}] then constant", parts.join(", "))
            }
        }
    }
}
