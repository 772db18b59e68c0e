//! Generic transitivity degrees of the three action families: the simple
//! group on a flag variety `G/P_i`, a Levi subgroup on the nilradical, and
//! the group itself (the maximum over maximal parabolics).
//!
//! Type A values are computed from the quiver formulas. Nodes fixed by the
//! diagram involution reduce to the Levi value through the conjugacy
//! relation `flag = 2 + levi`. The remaining finitely many values come
//! from verified reference data; every stored value is exposed to the
//! consistency checks in `verify`, so corruption is detectable.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::parabolic::levi_structure;
use crate::quiver::{gtd_g_type_a, gtd_levi_type_a};
use crate::rootsys::{epsilon, LieType, Series};

/// Which action a record describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum GtdAction {
    GroupOnFlag,
    LeviOnRadical,
    GroupGlobal,
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    ComputedTypeA,
    ConjugacyRelation,
    ReferenceData,
}

/// One generic-transitivity-degree value. A value of 0 means the action is
/// not locally transitive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GtdRecord {
    pub lie_type: LieType,
    pub node: Option<usize>,
    pub action: GtdAction,
    pub value: u64,
    pub provenance: Provenance,
}

/// The reference values for the cases the computation does not reach,
/// with an override map so the consistency verifier can be exercised
/// against corrupted entries.
#[derive(Debug, Clone, Default)]
pub struct ReferenceData {
    levi_overrides: BTreeMap<(LieType, usize), u64>,
    flag_overrides: BTreeMap<(LieType, usize), u64>,
}

impl ReferenceData {
    pub fn canonical() -> Self {
        ReferenceData::default()
    }

    pub fn with_levi_override(mut self, t: LieType, node: usize, value: u64) -> Self {
        self.levi_overrides.insert((t, node), value);
        self
    }

    pub fn with_flag_override(mut self, t: LieType, node: usize, value: u64) -> Self {
        self.flag_overrides.insert((t, node), value);
        self
    }

    /// Levi-on-nilradical value for the non-A types.
    fn levi_value(&self, t: LieType, i: usize) -> u64 {
        if let Some(&v) = self.levi_overrides.get(&(t, i)) {
            return v;
        }
        let l = t.rank();
        match t.series() {
            Series::A => unreachable!("type A is computed"),
            Series::B | Series::C => u64::from(i == 1 || i == l),
            Series::D => {
                if i == 1 {
                    1
                } else if i == l - 1 || i == l {
                    if l % 2 == 1 {
                        2
                    } else {
                        1
                    }
                } else {
                    0
                }
            }
            Series::E => match (l, i) {
                (6, 1) | (6, 6) => 2,
                (6, 3) | (6, 5) => 1,
                (7, 7) => 1,
                _ => 0,
            },
            Series::F | Series::G => 0,
        }
    }

    /// Flag value for nodes that are neither type A nor fixed by the
    /// diagram involution.
    fn flag_value(&self, t: LieType, i: usize) -> u64 {
        if let Some(&v) = self.flag_overrides.get(&(t, i)) {
            return v;
        }
        let l = t.rank();
        match t.series() {
            Series::D => {
                debug_assert!(l % 2 == 1 && (i == l - 1 || i == l));
                3
            }
            Series::E => match i {
                1 | 6 => 4,
                _ => 2,
            },
            _ => unreachable!("remaining series have no unfixed nodes"),
        }
    }
}

/// Table-range restrictions on the rank: the compiled tables cover
/// `B` from rank 3, `C` from rank 2 and `D` from rank 4 upward.
pub fn check_table_range(t: LieType) -> Result<()> {
    let ok = match t.series() {
        Series::B => t.rank() >= 3,
        Series::D => t.rank() >= 4,
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::OutsideTableRange {
            lie_type: t.to_string(),
            reason: format!(
                "{}{} is below the table's minimal rank",
                t.series().letter(),
                t.rank()
            ),
        })
    }
}

fn check_node(t: LieType, i: usize) -> Result<()> {
    if i < 1 || i > t.rank() {
        return Err(Error::InvalidNode {
            node: i,
            rank: t.rank(),
        });
    }
    Ok(())
}

/// All simple types admitted by the tables, up to the given rank.
pub fn table_types(max_rank: usize) -> Vec<LieType> {
    LieType::all_up_to_rank(max_rank)
        .into_iter()
        .filter(|t| check_table_range(*t).is_ok())
        .collect()
}

/// Generic transitivity degree of the Levi action on the nilradical of the
/// maximal parabolic at `i`.
pub fn gtd_levi(t: LieType, i: usize) -> Result<GtdRecord> {
    gtd_levi_with(&ReferenceData::canonical(), t, i)
}

pub fn gtd_levi_with(reference: &ReferenceData, t: LieType, i: usize) -> Result<GtdRecord> {
    check_table_range(t)?;
    check_node(t, i)?;
    let (value, provenance) = match t.series() {
        Series::A => (
            gtd_levi_type_a(t.rank() as u64, i as u64)?,
            Provenance::ComputedTypeA,
        ),
        _ => (reference.levi_value(t, i), Provenance::ReferenceData),
    };
    Ok(GtdRecord {
        lie_type: t,
        node: Some(i),
        action: GtdAction::LeviOnRadical,
        value,
        provenance,
    })
}

/// Generic transitivity degree of the group action on `G/P_i`.
pub fn gtd_flag(t: LieType, i: usize) -> Result<GtdRecord> {
    gtd_flag_with(&ReferenceData::canonical(), t, i)
}

pub fn gtd_flag_with(reference: &ReferenceData, t: LieType, i: usize) -> Result<GtdRecord> {
    check_table_range(t)?;
    check_node(t, i)?;
    let (value, provenance) = if t.series() == Series::A {
        (
            gtd_g_type_a(t.rank() as u64, i as u64)?,
            Provenance::ComputedTypeA,
        )
    } else if epsilon(t, i)? == i {
        let levi = gtd_levi_with(reference, t, i)?;
        (2 + levi.value, Provenance::ConjugacyRelation)
    } else {
        (reference.flag_value(t, i), Provenance::ReferenceData)
    };
    Ok(GtdRecord {
        lie_type: t,
        node: Some(i),
        action: GtdAction::GroupOnFlag,
        value,
        provenance,
    })
}

/// Generic transitivity degree of the group: the maximum of the flag
/// values over the maximal parabolics.
pub fn gtd_group(t: LieType) -> Result<GtdRecord> {
    gtd_group_with(&ReferenceData::canonical(), t)
}

pub fn gtd_group_with(reference: &ReferenceData, t: LieType) -> Result<GtdRecord> {
    check_table_range(t)?;
    let mut best: Option<GtdRecord> = None;
    for i in 1..=t.rank() {
        let record = gtd_flag_with(reference, t, i)?;
        let better = match &best {
            None => true,
            Some(b) => record.value > b.value,
        };
        if better {
            best = Some(record);
        }
    }
    let best = best.expect("rank is at least 1");
    Ok(GtdRecord {
        lie_type: t,
        node: None,
        action: GtdAction::GroupGlobal,
        value: best.value,
        provenance: best.provenance,
    })
}

/// True when the triple product `(G/P_i)^3` carries an open orbit,
/// i.e. the flag value is at least 3.
pub fn open_triple(t: LieType, i: usize) -> Result<bool> {
    open_triple_with(&ReferenceData::canonical(), t, i)
}

pub fn open_triple_with(reference: &ReferenceData, t: LieType, i: usize) -> Result<bool> {
    Ok(gtd_flag_with(reference, t, i)?.value >= 3)
}

/// True when the Levi acts with an open orbit on the nilradical,
/// i.e. the Levi value is at least 1.
pub fn levi_open_orbit(t: LieType, i: usize) -> Result<bool> {
    levi_open_orbit_with(&ReferenceData::canonical(), t, i)
}

pub fn levi_open_orbit_with(reference: &ReferenceData, t: LieType, i: usize) -> Result<bool> {
    Ok(gtd_levi_with(reference, t, i)?.value >= 1)
}

/// Generic transitivity degree on the full flag variety `G/B`: 3 for `A1`,
/// 2 for every other simple type.
pub fn borel_gtd(t: LieType) -> u64 {
    if t.series() == Series::A && t.rank() == 1 {
        3
    } else {
        2
    }
}

/// Upper bound from the dimension count: the flag action cannot be
/// `n`-transitive once `n * dim(G/P) > dim G`.
pub fn flag_dimension_bound(t: LieType, i: usize) -> Result<u64> {
    check_node(t, i)?;
    let ls = levi_structure(t, i)?;
    Ok(t.dim_group() / ls.dim_u)
}
