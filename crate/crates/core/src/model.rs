//! Block systems and the values shared by the rule engine, the solver and
//! the analyzer.
//!
//! A block system records, for a coalgebra with coradical filtration
//! `C_0 ⊆ C_1 ⊆ ...`, the dimension of every block `B(n, d1, d2)`: the part of
//! level `n` whose left and right coradical types are simple subcoalgebras of
//! dimension `d1²` and `d2²`. Zero blocks are never stored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Position of a block: filtration level plus left/right simple-comodule dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BlockIndex {
    pub level: u32,
    pub d1: u32,
    pub d2: u32,
}

impl BlockIndex {
    pub const fn new(level: u32, d1: u32, d2: u32) -> Self {
        Self { level, d1, d2 }
    }

    pub const fn transposed(self) -> Self {
        Self { level: self.level, d1: self.d2, d2: self.d1 }
    }

    pub const fn is_diagonal(self) -> bool {
        self.d1 == self.d2
    }
}

impl fmt::Display for BlockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({},{},{})", self.level, self.d1, self.d2)
    }
}

/// Sparse block table plus the group order `r = |G(H)|`.
///
/// `group_order` is kept apart from the `(0,1,1)` entry so that the rule
/// engine can report a mismatch between the two. A group order of zero is
/// allowed for coalgebras without grouplike elements (e.g. a matrix coalgebra);
/// such a system can never pass the rule check.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BlockSystem {
    group_order: u64,
    blocks: BTreeMap<BlockIndex, u64>,
}

impl BlockSystem {
    pub fn new(group_order: u64) -> Self {
        Self { group_order, blocks: BTreeMap::new() }
    }

    /// Builds a system from `(level, d1, d2, dim)` tuples, enforcing the structural invariants.
    pub fn from_entries<I>(group_order: u64, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32, u32, u64)>,
    {
        let mut s = Self::new(group_order);
        for (level, d1, d2, dim) in entries {
            let idx = BlockIndex::new(level, d1, d2);
            if s.blocks.contains_key(&idx) {
                return Err(Error::InvalidEntry {
                    entry: idx.to_string(),
                    reason: "duplicate index".into(),
                });
            }
            s.insert(idx, dim)?;
        }
        Ok(s)
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Sets `idx` to `dim`, replacing any previous value.
    pub fn insert(&mut self, idx: BlockIndex, dim: u64) -> Result<()> {
        check_entry(idx, dim)?;
        self.blocks.insert(idx, dim);
        Ok(())
    }

    /// Stored dimension, zero when absent.
    pub fn get(&self, idx: BlockIndex) -> u64 {
        self.blocks.get(&idx).copied().unwrap_or(0)
    }

    pub fn dim(&self, level: u32, d1: u32, d2: u32) -> u64 {
        self.get(BlockIndex::new(level, d1, d2))
    }

    pub fn contains(&self, level: u32, d1: u32, d2: u32) -> bool {
        self.blocks.contains_key(&BlockIndex::new(level, d1, d2))
    }

    /// Entries in canonical `(level, d1, d2)` order.
    pub fn entries(&self) -> impl Iterator<Item = (BlockIndex, u64)> + '_ {
        self.blocks.iter().map(|(k, v)| (*k, *v))
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn max_level(&self) -> u32 {
        self.blocks.keys().map(|k| k.level).max().unwrap_or(0)
    }

    /// Distinct `d` values appearing in any index.
    pub fn dims_used(&self) -> BTreeSet<u32> {
        self.blocks.keys().flat_map(|k| [k.d1, k.d2]).collect()
    }

    /// Sum of all blocks; an absent `(0,1,1)` counts as `group_order`.
    pub fn total_dim(&self) -> u64 {
        let stored: u64 = self.blocks.values().sum();
        if self.contains(0, 1, 1) {
            stored
        } else {
            stored + self.group_order
        }
    }

    /// `(l, m)`: least level `n ≥ 1` with a `(n,1,1)` block (if any), and the
    /// greatest level with a `(n,1,1)` block (`0` when only the coradical one exists).
    pub fn pointed_levels(&self) -> (Option<u32>, u32) {
        let mut lo = None;
        let mut hi = 0;
        for idx in self.blocks.keys().filter(|k| k.d1 == 1 && k.d2 == 1) {
            hi = hi.max(idx.level);
            if idx.level >= 1 && lo.is_none() {
                lo = Some(idx.level);
            }
        }
        (lo, hi)
    }

    /// Swaps `d1` and `d2` everywhere (the antipode image of the system).
    pub fn transpose(&self) -> Self {
        Self {
            group_order: self.group_order,
            blocks: self.blocks.iter().map(|(k, v)| (k.transposed(), *v)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&BlockSystemJson::from(self)).expect("block system serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&BlockSystemJson::from(self)).expect("block system serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BlockSystemJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }
}

fn check_entry(idx: BlockIndex, dim: u64) -> Result<()> {
    let bad = |reason: &str| Error::InvalidEntry { entry: idx.to_string(), reason: reason.into() };
    if idx.d1 == 0 || idx.d2 == 0 {
        return Err(bad("d1 and d2 must be positive"));
    }
    if idx.level == 0 && idx.d1 != idx.d2 {
        return Err(bad("level-0 block must be diagonal"));
    }
    if dim == 0 {
        return Err(bad("zero blocks must be omitted"));
    }
    Ok(())
}

impl fmt::Display for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={} {{", self.group_order)?;
        for (i, (k, v)) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({},{},{}):{}", k.level, k.d1, k.d2, v)?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockEntryJson {
    level: u32,
    d1: u32,
    d2: u32,
    // Signed so that negative dimensions get a targeted message instead of a serde type error.
    dim: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockSystemJson {
    group_order: u64,
    blocks: Vec<BlockEntryJson>,
}

impl From<&BlockSystem> for BlockSystemJson {
    fn from(s: &BlockSystem) -> Self {
        Self {
            group_order: s.group_order,
            blocks: s
                .entries()
                .map(|(k, v)| BlockEntryJson { level: k.level, d1: k.d1, d2: k.d2, dim: v as i64 })
                .collect(),
        }
    }
}

impl TryFrom<BlockSystemJson> for BlockSystem {
    type Error = Error;

    fn try_from(raw: BlockSystemJson) -> Result<Self> {
        let mut entries = Vec::with_capacity(raw.blocks.len());
        for e in raw.blocks {
            if e.dim < 0 {
                return Err(Error::InvalidEntry {
                    entry: BlockIndex::new(e.level, e.d1, e.d2).to_string(),
                    reason: format!("negative dimension {}", e.dim),
                });
            }
            entries.push((e.level, e.d1, e.d2, e.dim as u64));
        }
        BlockSystem::from_entries(raw.group_order, entries)
    }
}

impl Serialize for BlockSystem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BlockSystemJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BlockSystem {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = BlockSystemJson::deserialize(deserializer)?;
        raw.try_into().map_err(serde::de::Error::custom)
    }
}

/// Search and rule-activation flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ModeFlags {
    pub non_cosemisimple: bool,
    pub no_skew_primitives: bool,
    pub auto_nsp: bool,
}

impl ModeFlags {
    /// No restrictions: cosemisimple systems and skew-primitives allowed.
    pub const fn none() -> Self {
        Self { non_cosemisimple: false, no_skew_primitives: false, auto_nsp: false }
    }

    pub const fn non_cosemisimple() -> Self {
        Self { non_cosemisimple: true, no_skew_primitives: false, auto_nsp: false }
    }

    /// No nontrivial skew-primitives; implies non-cosemisimple.
    pub const fn nsp() -> Self {
        Self { non_cosemisimple: true, no_skew_primitives: true, auto_nsp: false }
    }

    pub const fn auto() -> Self {
        Self { non_cosemisimple: true, no_skew_primitives: false, auto_nsp: true }
    }

    /// Restores `no_skew_primitives ⇒ non_cosemisimple`.
    pub fn normalized(mut self) -> Self {
        if self.no_skew_primitives {
            self.non_cosemisimple = true;
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Feasible,
    Infeasible,
}

/// How the "no nontrivial skew-primitives" assumption entered a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NspRegime {
    /// Skew-primitives allowed; nsp-only rules inactive.
    Off,
    /// Requested explicitly; conclusions are conditional on it.
    Assumed,
    /// Derived from `gcd(r, N/r) = 1`.
    Derived,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    /// How many branches each rule (or `BUDGET` / `MAGNITUDE`) closed.
    pub prunes: BTreeMap<String, u64>,
}

impl SearchStats {
    pub(crate) fn bump(&mut self, rule: &str) {
        *self.prunes.entry(rule.to_string()).or_default() += 1;
    }

    pub(crate) fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        for (k, v) in &other.prunes {
            *self.prunes.entry(k.clone()).or_default() += v;
        }
    }

    /// `R4:12 R5:3` style summary, most frequent first.
    pub fn summary(&self) -> String {
        let mut v: Vec<_> = self.prunes.iter().collect();
        v.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
        v.iter().map(|(k, n)| format!("{k}:{n}")).collect::<Vec<_>>().join(" ")
    }
}

/// One top-level case of an exhausted search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationCase {
    /// Human-readable case label, e.g. `level-0 dims {1,2}`.
    pub case: String,
    /// Rule that closed the first branch of the case.
    pub closing_rule: String,
    pub nodes: u64,
    pub prunes: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BlockSystem>,
    pub stats: SearchStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refutation: Option<Vec<RefutationCase>>,
    /// Short reason when the refutation needed no search at all.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub nsp_regime: NspRegime,
}

impl Certificate {
    pub fn is_feasible(&self) -> bool {
        self.verdict == Verdict::Feasible
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sweedler_table() -> BlockSystem {
        BlockSystem::from_entries(2, [(0, 1, 1, 2), (1, 1, 1, 2)]).unwrap()
    }

    #[test]
    fn total_dim_counts_missing_coradical_block() {
        let s = BlockSystem::from_entries(3, [(0, 1, 1, 3)]).unwrap();
        assert_eq!(s.total_dim(), 3);
        assert_eq!(BlockSystem::new(3).total_dim(), 3);
        assert_eq!(sweedler_table().total_dim(), 4);
    }

    #[test]
    fn pointed_levels_examples() {
        assert_eq!(sweedler_table().pointed_levels(), (Some(1), 1));
        let group = BlockSystem::from_entries(3, [(0, 1, 1, 3)]).unwrap();
        assert_eq!(group.pointed_levels(), (None, 0));
    }

    #[test]
    fn transpose_swaps_indices() {
        let s = BlockSystem::from_entries(3, [(1, 2, 3, 6)]).unwrap();
        let t = s.transpose();
        assert_eq!(t.dim(1, 3, 2), 6);
        assert!(!t.contains(1, 2, 3));
        let pair = BlockSystem::from_entries(3, [(1, 2, 1, 6), (1, 1, 2, 6)]).unwrap();
        assert_eq!(pair.transpose(), pair);
    }

    #[test]
    fn parse_rejects_offdiagonal_level_zero() {
        let err = BlockSystem::from_json(r#"{"group_order":2,"blocks":[{"level":0,"d1":2,"d2":1,"dim":4}]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("level-0 block must be diagonal"), "{err}");
    }

    #[test]
    fn parse_rejects_zero_and_negative_and_duplicates() {
        let zero = BlockSystem::from_json(r#"{"group_order":2,"blocks":[{"level":1,"d1":1,"d2":1,"dim":0}]}"#)
            .unwrap_err();
        assert!(zero.to_string().contains("zero blocks must be omitted"));
        let neg = BlockSystem::from_json(r#"{"group_order":2,"blocks":[{"level":1,"d1":1,"d2":1,"dim":-2}]}"#)
            .unwrap_err();
        assert!(neg.to_string().contains("negative"));
        let dup = BlockSystem::from_json(
            r#"{"group_order":2,"blocks":[{"level":1,"d1":1,"d2":1,"dim":2},{"d2":1,"d1":1,"level":1,"dim":4}]}"#,
        )
        .unwrap_err();
        assert!(dup.to_string().contains("duplicate"));
    }

    #[test]
    fn parse_rejects_unknown_fields() {
        assert!(BlockSystem::from_json(r#"{"group_order":2,"blocks":[],"extra":1}"#).is_err());
        assert!(BlockSystem::from_json(
            r#"{"group_order":2,"blocks":[{"level":0,"d1":1,"d2":1,"dim":2,"note":"x"}]}"#
        )
        .is_err());
    }

    #[test]
    fn serialization_is_canonical() {
        let s = BlockSystem::from_json(
            r#"{"blocks":[{"level":1,"d1":1,"d2":1,"dim":2},{"level":0,"d1":1,"d2":1,"dim":2}],"group_order":2}"#,
        )
        .unwrap();
        assert_eq!(
            s.to_json(),
            r#"{"group_order":2,"blocks":[{"level":0,"d1":1,"d2":1,"dim":2},{"level":1,"d1":1,"d2":1,"dim":2}]}"#
        );
    }

    #[test]
    fn flags_normalize() {
        let f = ModeFlags { non_cosemisimple: false, no_skew_primitives: true, auto_nsp: false };
        assert!(f.normalized().non_cosemisimple);
    }
}
