//! Zero-neighborhood bases, symbolic sets and the boundedness deciders.

mod bound;
mod decide;
mod nbhd;
pub(crate) mod set;

use std::fmt;
use std::str::FromStr;

pub use bound::{Bound, BoundFn};
pub use decide::{
    fatou_check, hull_bounded_preservation, is_order_closed, is_solid, set_group_bounded, set_ring_bounded,
    spot_check_order_closed, spot_check_solid, GroupCert, GroupVerdict, HullPreservation, RingCert, RingVerdict,
    Solidity,
};
pub use nbhd::NbhdDesc;
pub use set::{solid_hull, SetDesc, Shape};

use crate::error::Error;

/// A countable directed base of closed-box zero neighborhoods.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum TopologyId {
    /// Boxes `|x_i| ≤ ε_i` on ℚⁿ.
    QnBox,
    /// `U(F, ε)`: finitely many coordinates bounded by `ε`.
    EvSeqProduct,
    /// `B(ε)`: every coordinate bounded by `ε`.
    EvSeqSupNorm,
    /// The singleton `{0}`.
    ZDiscrete,
}

impl TopologyId {
    pub const ALL: [TopologyId; 4] =
        [TopologyId::QnBox, TopologyId::EvSeqProduct, TopologyId::EvSeqSupNorm, TopologyId::ZDiscrete];

    pub fn name(self) -> &'static str {
        match self {
            TopologyId::QnBox => "qn_box",
            TopologyId::EvSeqProduct => "evseq_product",
            TopologyId::EvSeqSupNorm => "evseq_supnorm",
            TopologyId::ZDiscrete => "z_discrete",
        }
    }
}

impl fmt::Display for TopologyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TopologyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        TopologyId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown topology {s:?}")))
    }
}
