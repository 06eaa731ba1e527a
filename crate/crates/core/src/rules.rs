//! Necessary conditions on block systems of finite-dimensional Hopf algebras.
//!
//! Every rule is a necessary condition only: a system that passes all of
//! them is merely not excluded. Violations are plain data; [`check`] never
//! fails.

use std::fmt;

use serde::{Deserialize, Serialize};

use num_integer::lcm;
use crate::model::{BlockIndex, BlockSystem, ModeFlags};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// Level-0 structure: diagonal, multiples of `d²`, `(0,1,1) = r`.
    R0,
    /// `r` divides every block.
    R1,
    /// `d·r` divides `(n,d,1)` and `(n,1,d)` for `n ≥ 1`.
    R2,
    /// Antipode symmetry `(n,d1,d2) = (n,d2,d1)` for `n ≥ 1`.
    R3,
    /// Chain condition through every intermediate level.
    R4,
    /// Off-diagonal blocks escalate to a strictly higher level on the left.
    R5,
    /// The top pointed block has dimension exactly `r`.
    R6,
    /// Six necessary blocks without skew-primitives.
    R7,
    /// Forcing condition when pointed blocks occur below the top one.
    R8,
    /// Every level up to the top one is inhabited.
    R9,
    /// Superscripts range over simple subcoalgebras actually present.
    R11,
    /// `d1·d2` divides `(n,d1,d2)` for `n ≥ 1`.
    R12,
    /// Some block above level 0 exists.
    #[serde(rename = "RNC")]
    Rnc,
}

impl Rule {
    pub const ALL: [Rule; 13] = [
        Rule::R0,
        Rule::R1,
        Rule::R2,
        Rule::R3,
        Rule::R4,
        Rule::R5,
        Rule::R6,
        Rule::R7,
        Rule::R8,
        Rule::R9,
        Rule::R11,
        Rule::R12,
        Rule::Rnc,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::R0 => "R0",
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R5 => "R5",
            Rule::R6 => "R6",
            Rule::R7 => "R7",
            Rule::R8 => "R8",
            Rule::R9 => "R9",
            Rule::R11 => "R11",
            Rule::R12 => "R12",
            Rule::Rnc => "RNC",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::R0 => "level-0 structure",
            Rule::R1 => "group divisibility",
            Rule::R2 => "edge divisibility",
            Rule::R3 => "antipode symmetry",
            Rule::R4 => "chain condition",
            Rule::R5 => "off-diagonal escalation",
            Rule::R6 => "top pointed block",
            Rule::R7 => "nsp necessary blocks",
            Rule::R8 => "nsp forcing",
            Rule::R9 => "level contiguity",
            Rule::R11 => "support at zero",
            Rule::R12 => "bicomodule divisibility",
            Rule::Rnc => "non-cosemisimplicity",
        }
    }

    /// The mathematical statement behind the rule.
    pub fn statement(self) -> &'static str {
        match self {
            Rule::R0 => "level-0 blocks are diagonal, dim B(0,d,d) is a positive multiple of d^2, and dim B(0,1,1) = |G(H)|",
            Rule::R1 => "|G(H)| divides the dimension of every block (Nichols-Zoeller freeness)",
            Rule::R2 => "for n >= 1, d|G(H)| divides dim B(n,d,1) and dim B(n,1,d)",
            Rule::R3 => "the antipode maps B(n,d1,d2) onto B(n,d2,d1)",
            Rule::R4 => "B(n,d1,d2) != 0 with n > 1 forces, for each 0 < i < n, some b with B(i,d1,b) != 0 and B(n-i,b,d2) != 0",
            Rule::R5 => "B(n,d1,d2) != 0 with d1 != d2 forces B(n2,d1,d3) != 0 for some d3 and n2 > n",
            Rule::R6 => "for m the top level of a pointed block, dim B(m,1,1) = |G(H)|",
            Rule::R7 => "without skew-primitives: B(1,1,1) = 0, and B(1,d,1), B(1,1,d), B(k,d,d), B(m,1,1) are nonzero for some d > 1 and k, m > 1",
            Rule::R8 => "without skew-primitives and l < m: B(l',d1,1), B(l',1,d2), B(l'-1,d1,d3), B(l'-1,d4,d2) nonzero for some d_i > 1 and l' > l > 1",
            Rule::R9 => "every level between 1 and the top level carries a block",
            Rule::R11 => "every d used above level 0 has B(0,d,d) != 0",
            Rule::R12 => "for n >= 1, d1*d2 divides dim B(n,d1,d2)",
            Rule::Rnc => "a non-cosemisimple coalgebra has a block above level 0",
        }
    }

    /// Whether the rule is active under `flags`.
    pub fn applies(self, flags: ModeFlags) -> bool {
        let flags = flags.normalized();
        match self {
            Rule::R7 | Rule::R8 => flags.no_skew_primitives,
            Rule::Rnc => flags.non_cosemisimple,
            _ => true,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleViolation {
    pub rule: Rule,
    pub indices: Vec<BlockIndex>,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub missing_witness: Option<String>,
}

impl RuleViolation {
    fn new(rule: Rule, indices: Vec<BlockIndex>, message: String) -> Self {
        Self { rule, indices, message, missing_witness: None }
    }

    fn with_witness(mut self, w: String) -> Self {
        self.missing_witness = Some(w);
        self
    }
}

/// One-line rendering: rule id, rule name, message.
pub fn explain(v: &RuleViolation) -> String {
    format!("{} {}: {}", v.rule.id(), v.rule.name(), v.message)
}

/// Entry lookup that treats an absent `(0,1,1)` as `r`, matching `total_dim`.
fn dim_of(s: &BlockSystem, level: u32, d1: u32, d2: u32) -> u64 {
    if level == 0 && d1 == 1 && d2 == 1 && !s.contains(0, 1, 1) {
        s.group_order()
    } else {
        s.dim(level, d1, d2)
    }
}

fn present(s: &BlockSystem, level: u32, d1: u32, d2: u32) -> bool {
    dim_of(s, level, d1, d2) > 0
}

/// Evaluates every rule active under `flags`; the result is empty iff all pass.
pub fn check(s: &BlockSystem, flags: ModeFlags) -> Vec<RuleViolation> {
    let flags = flags.normalized();
    let mut out = Vec::new();
    for rule in Rule::ALL {
        if rule.applies(flags) {
            check_rule(s, rule, &mut out);
        }
    }
    out
}

/// Evaluates a single rule regardless of flags.
pub fn check_rule(s: &BlockSystem, rule: Rule, out: &mut Vec<RuleViolation>) {
    let r = s.group_order();
    let top = s.max_level();
    let idx = BlockIndex::new;
    match rule {
        Rule::R0 => {
            if r == 0 {
                out.push(RuleViolation::new(
                    rule,
                    vec![idx(0, 1, 1)],
                    "group order is 0 but the unit of a Hopf algebra is grouplike".into(),
                ));
            }
            for (k, v) in s.entries().filter(|(k, _)| k.level == 0) {
                if k.d1 != k.d2 {
                    out.push(RuleViolation::new(rule, vec![k], format!("level-0 block {k} must be diagonal")));
                } else if v % (k.d1 as u64 * k.d1 as u64) != 0 {
                    out.push(RuleViolation::new(
                        rule,
                        vec![k],
                        format!("dim {k}={v} is not a multiple of d^2={}", k.d1 * k.d1),
                    ));
                }
            }
            let base = s.dim(0, 1, 1);
            if s.contains(0, 1, 1) && base != r {
                out.push(RuleViolation::new(
                    rule,
                    vec![idx(0, 1, 1)],
                    format!("dim B(0,1,1)={base} but the group order is {r}"),
                ));
            }
        }
        Rule::R1 => {
            if r == 0 {
                return;
            }
            for (k, v) in s.entries() {
                if v % r != 0 {
                    out.push(RuleViolation::new(rule, vec![k], format!("dim {k}={v} is not divisible by r={r}")));
                }
            }
        }
        Rule::R2 => {
            for (k, v) in s.entries().filter(|(k, _)| k.level >= 1) {
                let d = match (k.d1, k.d2) {
                    (1, d) | (d, 1) if d > 1 => d as u64,
                    _ => continue,
                };
                let m = d * r;
                if m == 0 || v % m != 0 {
                    out.push(RuleViolation::new(
                        rule,
                        vec![k],
                        format!("dim {k}={v} is not divisible by d*r={m}"),
                    ));
                }
            }
        }
        Rule::R3 => {
            for (k, v) in s.entries().filter(|(k, _)| k.level >= 1 && !k.is_diagonal()) {
                let t = k.transposed();
                let w = s.get(t);
                // Report each unequal pair once: at the present entry, or at the
                // smaller index when both are present.
                if v != w && (w == 0 || k < t) {
                    out.push(RuleViolation::new(rule, vec![k, t], format!("dim {k}={v} but dim {t}={w}")));
                }
            }
        }
        Rule::R4 => {
            for (k, _) in s.entries().filter(|(k, _)| k.level > 1) {
                let used = s.dims_used();
                for i in 1..k.level {
                    let ok = used
                        .iter()
                        .any(|&b| present(s, i, k.d1, b) && present(s, k.level - i, b, k.d2));
                    if !ok {
                        out.push(
                            RuleViolation::new(
                                rule,
                                vec![k],
                                format!(
                                    "{k} has no witness b at i={i}: no b with B({i},{},b) and B({},b,{}) both nonzero",
                                    k.d1,
                                    k.level - i,
                                    k.d2
                                ),
                            )
                            .with_witness(format!("b with B({i},{},b) != 0 and B({},b,{}) != 0", k.d1, k.level - i, k.d2)),
                        );
                    }
                }
            }
        }
        Rule::R5 => {
            for (k, _) in s.entries().filter(|(k, _)| k.level >= 1 && !k.is_diagonal()) {
                let ok = s.entries().any(|(j, _)| j.level > k.level && j.d1 == k.d1);
                if !ok {
                    out.push(
                        RuleViolation::new(
                            rule,
                            vec![k],
                            format!("{k} is off-diagonal but no B(n2,{},d3) with n2 > {} is nonzero", k.d1, k.level),
                        )
                        .with_witness(format!("B(n2,{},d3) != 0 with n2 >= {}", k.d1, k.level + 1)),
                    );
                }
            }
        }
        Rule::R6 => {
            let (_, m) = s.pointed_levels();
            let v = dim_of(s, m, 1, 1);
            if v != r {
                out.push(RuleViolation::new(
                    rule,
                    vec![idx(m, 1, 1)],
                    format!("dim B({m},1,1)={v} but the top pointed block must satisfy dim B(m,1,1) = |G(H)| = {r}"),
                ));
            }
        }
        Rule::R7 => {
            if s.contains(1, 1, 1) {
                out.push(RuleViolation::new(
                    rule,
                    vec![idx(1, 1, 1)],
                    format!("(1,1,1) must be absent without skew-primitives, found dim B(1,1,1)={}", s.dim(1, 1, 1)),
                ));
            }
            let has_edge = s
                .dims_used()
                .into_iter()
                .filter(|&d| d > 1)
                .any(|d| {
                    s.contains(1, d, 1)
                        && s.contains(1, 1, d)
                        && s.entries().any(|(k, _)| k.level > 1 && k.d1 == d && k.d2 == d)
                });
            if !has_edge {
                out.push(
                    RuleViolation::new(
                        rule,
                        vec![],
                        "no d > 1 with B(1,d,1), B(1,1,d) and some B(k,d,d), k > 1, all nonzero".into(),
                    )
                    .with_witness("d > 1 with B(1,d,1), B(1,1,d), B(k,d,d) != 0 for some k > 1".into()),
                );
            }
            if !s.entries().any(|(k, _)| k.level > 1 && k.d1 == 1 && k.d2 == 1) {
                out.push(
                    RuleViolation::new(rule, vec![], "no B(m,1,1) with m > 1 is nonzero".into())
                        .with_witness("B(m,1,1) != 0 for some m > 1".into()),
                );
            }
        }
        Rule::R8 => {
            let (l, m) = s.pointed_levels();
            let Some(l) = l else { return };
            if l >= m {
                return;
            }
            let big: Vec<u32> = s.dims_used().into_iter().filter(|&d| d > 1).collect();
            let ok = l > 1
                && (l + 1..=top).any(|lp| {
                    let left = big
                        .iter()
                        .any(|&a| s.contains(lp, a, 1) && big.iter().any(|&c| s.contains(lp - 1, a, c)));
                    let right = big
                        .iter()
                        .any(|&b| s.contains(lp, 1, b) && big.iter().any(|&c| s.contains(lp - 1, c, b)));
                    left && right
                });
            if !ok {
                out.push(
                    RuleViolation::new(
                        rule,
                        vec![idx(l, 1, 1), idx(m, 1, 1)],
                        format!(
                            "pointed blocks at l={l} < m={m} need l > 1 and some l' > l with B(l',d1,1), B(l',1,d2), B(l'-1,d1,d3), B(l'-1,d4,d2) nonzero, all d_i > 1"
                        ),
                    )
                    .with_witness(format!("l' > {l} and d1,d2,d3,d4 > 1")),
                );
            }
        }
        Rule::R9 => {
            for n in 1..top {
                if !s.entries().any(|(k, _)| k.level == n) {
                    out.push(RuleViolation::new(
                        rule,
                        vec![],
                        format!("level {n} is empty but level {top} carries a block"),
                    ));
                }
            }
        }
        Rule::R11 => {
            let mut missing: Vec<u32> = s
                .entries()
                .filter(|(k, _)| k.level >= 1)
                .flat_map(|(k, _)| [k.d1, k.d2])
                .filter(|&d| !present(s, 0, d, d))
                .collect();
            missing.sort_unstable();
            missing.dedup();
            for d in missing {
                out.push(RuleViolation::new(
                    rule,
                    vec![idx(0, d, d)],
                    format!("d={d} is used above level 0 but B(0,{d},{d}) is zero"),
                ));
            }
        }
        Rule::R12 => {
            for (k, v) in s.entries().filter(|(k, _)| k.level >= 1) {
                let m = k.d1 as u64 * k.d2 as u64;
                if v % m != 0 {
                    out.push(RuleViolation::new(
                        rule,
                        vec![k],
                        format!("dim {k}={v} is not a multiple of d1*d2={m} (with R1: lcm={})", lcm(m, r.max(1))),
                    ));
                }
            }
        }
        Rule::Rnc => {
            if top == 0 {
                out.push(RuleViolation::new(
                    rule,
                    vec![],
                    "no block above level 0: the system is cosemisimple".into(),
                ));
            }
        }
    }
}
