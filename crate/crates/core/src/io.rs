//! JSON-lines system format.
//!
//! Set-pair systems: `{"n": 3, "pairs": [{"A": [1, 2], "B": [3]}, ...]}`.
//! d-partition systems: `{"n": 3, "d": 3, "members": [{"blocks": [[1], [2], [3]]}, ...]}`.
//! Element lists are 1-based. Unknown fields are ignored, so records may
//! carry extra metadata.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dpartition::{DPartition, DPartitionSystem};
use crate::error::Error;
use crate::sets::{GroundSize, SetPair, SetPairSystem, SubsetMask};

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PairRecord {
    #[serde(rename = "A")]
    a: Vec<usize>,
    #[serde(rename = "B")]
    b: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SetPairSystemRecord {
    n: usize,
    pairs: Vec<PairRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MemberRecord {
    blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DPartitionSystemRecord {
    n: usize,
    d: usize,
    members: Vec<MemberRecord>,
}

impl From<&SetPairSystem> for SetPairSystemRecord {
    fn from(sys: &SetPairSystem) -> Self {
        SetPairSystemRecord {
            n: sys.ground().get(),
            pairs: sys
                .pairs()
                .iter()
                .map(|p| PairRecord { a: p.a.elements(), b: p.b.elements() })
                .collect(),
        }
    }
}

impl TryFrom<SetPairSystemRecord> for SetPairSystem {
    type Error = Error;

    fn try_from(rec: SetPairSystemRecord) -> Result<Self, Error> {
        let ground = GroundSize::new(rec.n)?;
        let pairs = rec
            .pairs
            .into_iter()
            .map(|p| {
                Ok(SetPair::new(
                    SubsetMask::from_elements(p.a, ground)?,
                    SubsetMask::from_elements(p.b, ground)?,
                ))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        SetPairSystem::new(ground, pairs)
    }
}

impl From<&DPartitionSystem> for DPartitionSystemRecord {
    fn from(sys: &DPartitionSystem) -> Self {
        DPartitionSystemRecord {
            n: sys.ground().get(),
            d: sys.d(),
            members: sys
                .members()
                .iter()
                .map(|m| MemberRecord { blocks: m.blocks().iter().map(|b| b.elements()).collect() })
                .collect(),
        }
    }
}

impl TryFrom<DPartitionSystemRecord> for DPartitionSystem {
    type Error = Error;

    fn try_from(rec: DPartitionSystemRecord) -> Result<Self, Error> {
        let ground = GroundSize::new(rec.n)?;
        let members = rec
            .members
            .into_iter()
            .map(|m| {
                let blocks = m
                    .blocks
                    .into_iter()
                    .map(|b| SubsetMask::from_elements(b, ground))
                    .collect::<Result<Vec<_>, Error>>()?;
                DPartition::new(blocks)
            })
            .collect::<Result<Vec<_>, Error>>()?;
        DPartitionSystem::new(ground, rec.d, members)
    }
}

impl Serialize for SetPairSystem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SetPairSystemRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetPairSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = SetPairSystemRecord::deserialize(d)?;
        SetPairSystem::try_from(rec).map_err(serde::de::Error::custom)
    }
}

impl Serialize for DPartitionSystem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DPartitionSystemRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DPartitionSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = DPartitionSystemRecord::deserialize(d)?;
        DPartitionSystem::try_from(rec).map_err(serde::de::Error::custom)
    }
}

/// Either kind of system, as found on one line of an input file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnySystem {
    Pairs(SetPairSystem),
    DPartitions(DPartitionSystem),
}

/// Parses one JSON-lines record, dispatching on the presence of `pairs` or
/// `members`.
pub fn parse_system(line: &str) -> Result<AnySystem, String> {
    let value: serde_json::Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
    if value.get("pairs").is_some() {
        serde_json::from_value(value).map(AnySystem::Pairs).map_err(|e| e.to_string())
    } else if value.get("members").is_some() {
        serde_json::from_value(value).map(AnySystem::DPartitions).map_err(|e| e.to_string())
    } else {
        Err("record has neither \"pairs\" nor \"members\"".to_string())
    }
}

pub fn to_json_line(system: &AnySystem) -> String {
    serde_json::to_string(system).expect("systems always serialize")
}
