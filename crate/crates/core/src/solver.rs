//! Lower bounds, minimal forms and the exhaustive feasibility search.
//!
//! The search runs in two phases. Phase one walks support patterns (which
//! blocks are nonzero) level by level in a fixed canonical order, closing
//! branches as soon as an existential rule can no longer be met. Phase two
//! decides whether the block dimensions of a complete pattern can be chosen
//! as multiples of their forced divisors summing to the target; that part
//! is a small coin problem.
//!
//! Top-level cases are the possible sets of simple-comodule dimensions at
//! level 0. Cases are independent and may run concurrently; the reported
//! certificate only depends on the canonical case order.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_integer::{gcd, lcm};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    BlockIndex, BlockSystem, Certificate, ModeFlags, NspRegime, RefutationCase, SearchStats, Verdict,
};

/// Default node cap for a single solve.
pub const DEFAULT_NODE_CAP: u64 = 200_000_000;
/// Default cap on `N / r`.
pub const DEFAULT_LEVEL_CAP: u64 = 4096;
/// At most this many top-level cases are kept in a refutation trace.
pub const REFUTATION_TRACE_CAP: usize = 256;

/// Search grid: highest filtration level and largest simple-comodule dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridBounds {
    pub max_level: u32,
    pub max_d: u32,
}

impl GridBounds {
    /// Every level contributes at least `r`, so at most `N/r - 1` levels sit above
    /// the coradical; a level-0 block `(0,d,d)` needs `lcm(d², r) ≤ N - r`.
    pub fn for_problem(target_dim: u64, group_order: u64) -> Self {
        let r = group_order.max(1);
        let max_level = (target_dim / r).saturating_sub(1).min(u32::MAX as u64) as u32;
        let room = target_dim.saturating_sub(r);
        let mut max_d = 1u32;
        let mut d = 2u64;
        while d * d <= room {
            if lcm(d * d, r) <= room {
                max_d = d as u32;
            }
            d += 1;
        }
        Self { max_level: max_level.max(1), max_d }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityProblem {
    pub target_dim: u64,
    pub group_order: u64,
    pub flags: ModeFlags,
    pub bounds: GridBounds,
}

impl FeasibilityProblem {
    pub fn new(target_dim: u64, group_order: u64, flags: ModeFlags) -> Self {
        Self { target_dim, group_order, flags, bounds: GridBounds::for_problem(target_dim, group_order) }
    }

    pub fn with_bounds(mut self, bounds: GridBounds) -> Self {
        self.bounds = bounds;
        self
    }

    /// Flags actually used, after resolving `auto_nsp`.
    pub fn effective_flags(&self) -> (ModeFlags, NspRegime) {
        let mut f = self.flags.normalized();
        let r = self.group_order;
        let n = self.target_dim;
        let derived =
            f.auto_nsp && r > 0 && n % r == 0 && gcd(r, n / r) == 1;
        let regime = if derived {
            NspRegime::Derived
        } else if f.no_skew_primitives {
            NspRegime::Assumed
        } else {
            NspRegime::Off
        };
        if derived {
            f.no_skew_primitives = true;
            f.non_cosemisimple = true;
        }
        (f, regime)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub node_cap: u64,
    pub level_cap: u64,
    /// Explore top-level cases on the rayon pool.
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { node_cap: DEFAULT_NODE_CAP, level_cap: DEFAULT_LEVEL_CAP, parallel: true }
    }
}

/// A basic block size `f(r, d1, d2)`; edges count the forced pair `(n,d,1) ⊕ (n,1,d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicBlock {
    pub r: u64,
    pub d1: u32,
    pub d2: u32,
    pub dim: u64,
}

impl BasicBlock {
    pub fn new(r: u64, d1: u32, d2: u32) -> Self {
        Self { r, d1, d2, dim: basic_block_dim(r, d1, d2) }
    }
}

pub fn basic_block_dim(r: u64, d1: u32, d2: u32) -> u64 {
    let (a, b) = (d1 as u64, d2 as u64);
    match (a, b) {
        (1, 1) => r,
        (1, d) | (d, 1) => 2 * d * r,
        _ => lcm(a * b, r),
    }
}

/// `min_{d>1} (2d+2)r + 2·lcm(d², r)` and every `d` attaining it.
pub fn lower_bound(r: u64) -> (u64, Vec<u32>) {
    assert!(r >= 1, "group order must be positive");
    let value = |d: u64| (2 * d + 2) * r + 2 * lcm(d * d, r);
    let mut best = u64::MAX;
    let mut argmin = Vec::new();
    let mut d = 2u64;
    // lcm(d², r) ≥ d², so once (2d+2)r + 2d² passes the best value nothing later can win.
    while (2 * d + 2) * r + 2 * d * d <= best {
        let v = value(d);
        if v < best {
            best = v;
            argmin.clear();
        }
        if v == best {
            argmin.push(d as u32);
        }
        d += 1;
    }
    (best, argmin)
}

/// The six-block skeleton `L(r, d)`.
pub fn minimal_form(r: u64, d: u32) -> BlockSystem {
    assert!(r >= 1 && d >= 2, "minimal form needs r >= 1 and d >= 2");
    let dd = lcm(d as u64 * d as u64, r);
    let edge = d as u64 * r;
    BlockSystem::from_entries(
        r,
        [(0, 1, 1, r), (0, d, d, dd), (1, d, 1, edge), (1, 1, d, edge), (2, 1, 1, r), (2, d, d, dd)],
    )
    .expect("minimal form is structurally valid")
}

pub fn solve(p: &FeasibilityProblem) -> Result<Certificate> {
    solve_with(p, SolveOptions::default())
}

pub fn solve_with(p: &FeasibilityProblem, opts: SolveOptions) -> Result<Certificate> {
    let n = p.target_dim;
    let r = p.group_order;
    if n == 0 || r == 0 {
        return Err(Error::InvalidProblem("target dimension and group order must be positive".into()));
    }
    if p.bounds.max_level == 0 || p.bounds.max_d == 0 {
        return Err(Error::InvalidProblem("grid bounds must be positive".into()));
    }
    let (flags, regime) = p.effective_flags();
    if n % r != 0 {
        return Ok(Certificate {
            verdict: Verdict::Infeasible,
            witness: None,
            stats: SearchStats::default(),
            refutation: Some(Vec::new()),
            reason: Some("R1 forces r | N".into()),
            nsp_regime: regime,
        });
    }
    if n / r > opts.level_cap {
        return Err(Error::LevelCap { levels: n / r, cap: opts.level_cap });
    }

    let cases = level_zero_cases(n, r, p.bounds.max_d);
    if cases.iter().any(|c| c.len() > 64) {
        return Err(Error::InvalidProblem("more than 64 simple-comodule dimensions at level 0".into()));
    }
    let ctx = Ctx { n, r, flags, max_level: p.bounds.max_level, node_cap: opts.node_cap };

    let outcomes: Vec<CaseOutcome> = if opts.parallel {
        let winner = AtomicUsize::new(usize::MAX);
        cases
            .par_iter()
            .enumerate()
            .map(|(i, d0)| {
                if i > winner.load(Ordering::Relaxed) {
                    return CaseOutcome::skipped();
                }
                let out = run_case(&ctx, d0);
                if out.witness.is_some() {
                    winner.fetch_min(i, Ordering::Relaxed);
                }
                out
            })
            .collect()
    } else {
        let mut v = Vec::with_capacity(cases.len());
        for d0 in &cases {
            let out = run_case(&ctx, d0);
            let stop = out.witness.is_some() || out.capped;
            v.push(out);
            if stop {
                break;
            }
        }
        v
    };

    let mut stats = SearchStats::default();
    let mut trace = Vec::new();
    for (d0, out) in cases.iter().zip(outcomes) {
        stats.absorb(&out.stats);
        if out.capped || stats.nodes > opts.node_cap {
            return Err(Error::NodeCap { cap: opts.node_cap });
        }
        if let Some(w) = out.witness {
            debug_assert!(crate::rules::check(&w, flags).is_empty(), "witness {w} fails the rules");
            return Ok(Certificate {
                verdict: Verdict::Feasible,
                witness: Some(w),
                stats,
                refutation: None,
                reason: None,
                nsp_regime: regime,
            });
        }
        if trace.len() < REFUTATION_TRACE_CAP {
            trace.push(RefutationCase {
                case: format!(
                    "level-0 dims {{{}}}",
                    d0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
                ),
                closing_rule: out.first_prune.unwrap_or_else(|| "BUDGET".into()),
                nodes: out.stats.nodes,
                prunes: out.stats.prunes,
            });
        }
    }
    let reason = if cases.len() > REFUTATION_TRACE_CAP {
        Some(format!("search exhausted; trace shows {REFUTATION_TRACE_CAP} of {} cases", cases.len()))
    } else {
        Some("search exhausted".into())
    };
    Ok(Certificate {
        verdict: Verdict::Infeasible,
        witness: None,
        stats,
        refutation: Some(trace),
        reason,
        nsp_regime: regime,
    })
}

/// One scan row: `N = t·r` and its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub t: u64,
    pub n: u64,
    pub certificate: Certificate,
}

impl ScanRow {
    pub fn verdict(&self) -> Verdict {
        self.certificate.verdict
    }

    /// Witness for feasible rows, prune summary (or the short reason) otherwise.
    pub fn summary(&self) -> String {
        match (&self.certificate.witness, &self.certificate.reason) {
            (Some(w), _) => format!("witness {w}"),
            (None, Some(reason)) if self.certificate.stats.nodes == 0 => reason.clone(),
            _ => self.certificate.stats.summary(),
        }
    }
}

pub fn scan(r: u64, t_max: u64, flags: ModeFlags) -> Result<Vec<ScanRow>> {
    scan_with(r, t_max, flags, SolveOptions::default())
}

pub fn scan_with(r: u64, t_max: u64, flags: ModeFlags, opts: SolveOptions) -> Result<Vec<ScanRow>> {
    if t_max == 0 {
        return Err(Error::InvalidProblem("t_max must be at least 1".into()));
    }
    let run = |t: u64| -> Result<ScanRow> {
        let p = FeasibilityProblem::new(t * r, r, flags);
        Ok(ScanRow { t, n: t * r, certificate: solve_with(&p, opts)? })
    };
    if opts.parallel {
        (1..=t_max).into_par_iter().map(run).collect()
    } else {
        (1..=t_max).map(run).collect()
    }
}

/// All proper divisors `r` of `N` for which the search finds a witness.
pub fn admissible_group_orders(n: u64, flags: ModeFlags) -> Result<BTreeSet<u64>> {
    admissible_group_orders_with(n, flags, SolveOptions::default())
}

pub fn admissible_group_orders_with(n: u64, flags: ModeFlags, opts: SolveOptions) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for (r, cert) in group_order_survey(n, flags, opts)? {
        if cert.is_feasible() {
            out.insert(r);
        }
    }
    Ok(out)
}

/// Certificates for every proper divisor of `N`, in increasing order.
pub fn group_order_survey(n: u64, flags: ModeFlags, opts: SolveOptions) -> Result<Vec<(u64, Certificate)>> {
    if n == 0 {
        return Err(Error::InvalidProblem("target dimension must be positive".into()));
    }
    let divisors: Vec<u64> = (1..n).filter(|r| n % r == 0).collect();
    let run = |&r: &u64| solve_with(&FeasibilityProblem::new(n, r, flags), opts).map(|c| (r, c));
    if opts.parallel {
        divisors.par_iter().map(run).collect()
    } else {
        divisors.iter().map(run).collect()
    }
}

/// Level-0 supports `{1} ∪ S`, `S ⊆ {2..max_d}`, ordered by size then lexicographically.
fn level_zero_cases(n: u64, r: u64, max_d: u32) -> Vec<Vec<u32>> {
    let room = n - r;
    let cands: Vec<(u32, u64)> =
        (2..=max_d).map(|d| (d, lcm(d as u64 * d as u64, r))).filter(|&(_, c)| c <= room).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(cands: &[(u32, u64)], room: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        for (i, &(d, c)) in cands.iter().enumerate() {
            if c <= room {
                cur.push(d);
                rec(&cands[i + 1..], room - c, cur, out);
                cur.pop();
            }
        }
    }
    rec(&cands, room, &mut cur, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.into_iter()
        .map(|s| std::iter::once(1).chain(s).collect())
        .collect()
}

struct Ctx {
    n: u64,
    r: u64,
    flags: ModeFlags,
    max_level: u32,
    node_cap: u64,
}

#[derive(Default)]
struct CaseOutcome {
    witness: Option<BlockSystem>,
    stats: SearchStats,
    first_prune: Option<String>,
    capped: bool,
}

impl CaseOutcome {
    fn skipped() -> Self {
        Self::default()
    }
}

/// Unordered pair of level-0 positions `a ≤ b`.
#[derive(Debug, Clone, Copy)]
struct Slot {
    a: usize,
    b: usize,
    /// Forced divisor of each entry of the slot.
    unit: u64,
    /// Smallest contribution of the slot (`unit`, doubled for off-diagonal pairs).
    cost: u64,
}

enum Step {
    Continue,
    Found(BlockSystem),
    Capped,
}

/// Depth-first search inside one level-0 case.
struct CaseSearch<'a> {
    ctx: &'a Ctx,
    dims: &'a [u32],
    slots: Vec<Slot>,
    /// Slot ids per level; level 0 holds the diagonal slots of `dims`.
    levels: Vec<Vec<usize>>,
    /// `rows[n][a]`: bitmask of `b` with `(n, dims[a], dims[b])` present.
    rows: Vec<Vec<u64>>,
    cost: u64,
    stats: SearchStats,
    first_prune: Option<String>,
}

fn run_case(ctx: &Ctx, dims: &[u32]) -> CaseOutcome {
    let k = dims.len();
    let mut slots = Vec::new();
    for a in 0..k {
        for b in a..k {
            let (da, db) = (dims[a] as u64, dims[b] as u64);
            let unit = match (da, db) {
                (1, 1) => ctx.r,
                (1, d) => d * ctx.r,
                _ => lcm(da * db, ctx.r),
            };
            let cost = if a == b { unit } else { 2 * unit };
            slots.push(Slot { a, b, unit, cost });
        }
    }
    let diag: Vec<usize> = (0..slots.len()).filter(|&i| slots[i].a == slots[i].b).collect();
    // The diagonal slots serve level 0 too: (0,1,1) = r and (0,d,d) has unit lcm(d², r).
    let level0_cost: u64 = diag.iter().map(|&i| slots[i].cost).sum();
    let mut search = CaseSearch {
        ctx,
        dims,
        slots,
        levels: vec![diag],
        rows: vec![(0..k).map(|a| 1u64 << a).collect()],
        cost: level0_cost,
        stats: SearchStats::default(),
        first_prune: None,
    };
    let mut out = CaseOutcome::default();
    if level0_cost > ctx.n {
        search.prune("BUDGET");
    } else {
        match search.dfs() {
            Step::Found(w) => out.witness = Some(w),
            Step::Capped => out.capped = true,
            Step::Continue => {}
        }
    }
    out.stats = search.stats;
    out.first_prune = search.first_prune;
    out
}

impl CaseSearch<'_> {
    fn prune(&mut self, why: &str) {
        self.stats.bump(why);
        if self.first_prune.is_none() {
            self.first_prune = Some(why.to_string());
        }
    }

    fn top(&self) -> u32 {
        (self.levels.len() - 1) as u32
    }

    fn has(&self, level: usize, a: usize, b: usize) -> bool {
        self.rows[level][a] >> b & 1 == 1
    }

    fn dfs(&mut self) -> Step {
        self.stats.nodes += 1;
        if self.stats.nodes > self.ctx.node_cap {
            return Step::Capped;
        }
        if let Some(w) = self.try_close() {
            return Step::Found(w);
        }
        let n = self.top() as usize + 1;
        if n as u32 > self.ctx.max_level {
            return Step::Continue;
        }
        let budget = self.ctx.n - self.cost;
        if budget < self.ctx.r {
            self.prune("BUDGET");
            return Step::Continue;
        }
        // Slots admissible on their own at level n; R4 only looks at lower levels.
        let mut cands = Vec::new();
        for (id, s) in self.slots.iter().enumerate() {
            if s.cost > budget {
                continue;
            }
            if n == 1 && s.a == 0 && s.b == 0 && self.ctx.flags.no_skew_primitives {
                continue;
            }
            if !self.chain_ok(n, s.a, s.b) || (s.a != s.b && !self.chain_ok(n, s.b, s.a)) {
                continue;
            }
            cands.push(id);
        }
        if cands.is_empty() {
            self.prune("R4");
            return Step::Continue;
        }
        self.rows.push(vec![0; self.dims.len()]);
        self.levels.push(Vec::new());
        let step = self.subsets(&cands, 0, budget);
        self.rows.pop();
        self.levels.pop();
        step
    }

    /// Enumerates nonempty subsets of `cands` in increasing-bitmask order
    /// (first candidate = lowest bit) and descends into each.
    fn subsets(&mut self, cands: &[usize], start: usize, budget: u64) -> Step {
        let n = self.levels.len() - 1;
        for i in start..cands.len() {
            let s = self.slots[cands[i]];
            if s.cost > budget {
                self.prune("BUDGET");
                continue;
            }
            self.rows[n][s.a] |= 1 << s.b;
            self.rows[n][s.b] |= 1 << s.a;
            self.levels[n].push(cands[i]);
            self.cost += s.cost;
            let mut step = self.dfs();
            if matches!(step, Step::Continue) {
                step = self.subsets(cands, i + 1, budget - s.cost);
            }
            self.cost -= s.cost;
            self.levels[n].pop();
            self.rows[n][s.a] &= !(1 << s.b);
            self.rows[n][s.b] &= !(1 << s.a);
            if !matches!(step, Step::Continue) {
                return step;
            }
        }
        Step::Continue
    }

    /// R4 for a prospective entry `(n, a, b)`.
    fn chain_ok(&self, n: usize, a: usize, b: usize) -> bool {
        (1..n).all(|i| {
            let mut mid = self.rows[i][a];
            while mid != 0 {
                let c = mid.trailing_zeros() as usize;
                if self.has(n - i, c, b) {
                    return true;
                }
                mid &= mid - 1;
            }
            false
        })
    }

    /// Tries to stop at the current top level: end-of-system rules, then magnitudes.
    fn try_close(&mut self) -> Option<BlockSystem> {
        let top = self.top() as usize;
        let flags = self.ctx.flags;
        if flags.non_cosemisimple && top == 0 {
            return None;
        }
        // R5: every off-diagonal row a at level n needs a nonempty row a higher up.
        for n in 1..=top {
            for a in 0..self.dims.len() {
                if self.rows[n][a] & !(1u64 << a) != 0 && !(n + 1..=top).any(|m| self.rows[m][a] != 0) {
                    self.prune("R5");
                    return None;
                }
            }
        }
        let pointed: Vec<usize> = (1..=top).filter(|&n| self.has(n, 0, 0)).collect();
        let m = pointed.last().copied().unwrap_or(0);
        if flags.no_skew_primitives {
            if m <= 1 {
                self.prune("R7");
                return None;
            }
            let edge = (1..self.dims.len())
                .any(|a| self.has(1, 0, a) && (2..=top).any(|k| self.has(k, a, a)));
            if !edge {
                self.prune("R7");
                return None;
            }
            let l = pointed[0];
            if l < m && !self.forcing_ok(l, top) {
                self.prune("R8");
                return None;
            }
        }
        self.assign(m)
    }

    /// R8 witnesses above `l`.
    fn forcing_ok(&self, l: usize, top: usize) -> bool {
        if l <= 1 {
            return false;
        }
        let big = !1u64;
        (l + 1..=top).any(|lp| {
            // (lp, a, 1) present and (lp-1, a, c) present with a, c > 1; the
            // right-hand witnesses follow by symmetry of each level.
            (1..self.dims.len()).any(|a| self.has(lp, a, 0) && self.rows[lp - 1][a] & big != 0)
        })
    }

    /// Phase two: distribute `N - cost` over the free slots.
    fn assign(&mut self, m: usize) -> Option<BlockSystem> {
        let extra = (self.ctx.n - self.cost) as usize;
        let mut coins: Vec<(usize, usize)> = Vec::new(); // (level, slot)
        for (n, ids) in self.levels.iter().enumerate() {
            for &id in ids {
                let pinned = id == 0 && (n == 0 || n == m);
                if !pinned {
                    coins.push((n, id));
                }
            }
        }
        // Distinct coin values, each mapped to its first slot in canonical order.
        let mut values: Vec<(u64, usize)> = Vec::new();
        for (ci, &(_, id)) in coins.iter().enumerate() {
            let v = self.slots[id].cost;
            if !values.iter().any(|&(w, _)| w == v) {
                values.push((v, ci));
            }
        }
        let mut from = vec![usize::MAX; extra + 1];
        from[0] = 0;
        for x in 1..=extra {
            for (vi, &(v, _)) in values.iter().enumerate() {
                let v = v as usize;
                if v <= x && from[x - v] != usize::MAX {
                    from[x] = vi;
                    break;
                }
            }
        }
        if from[extra] == usize::MAX {
            self.prune("MAGNITUDE");
            return None;
        }
        let mut mult = vec![0u64; coins.len()];
        let mut x = extra;
        while x > 0 {
            let (v, ci) = values[from[x]];
            mult[ci] += 1;
            x -= v as usize;
        }
        let mut w = BlockSystem::new(self.ctx.r);
        let mut put = |idx: BlockIndex, dim: u64| w.insert(idx, dim).expect("valid entry");
        put(BlockIndex::new(0, 1, 1), self.ctx.r);
        if m > 0 {
            put(BlockIndex::new(m as u32, 1, 1), self.ctx.r);
        }
        for (ci, &(n, id)) in coins.iter().enumerate() {
            let s = self.slots[id];
            let dim = s.unit * (1 + mult[ci]);
            let (da, db) = (self.dims[s.a], self.dims[s.b]);
            put(BlockIndex::new(n as u32, da, db), dim);
            if s.a != s.b {
                put(BlockIndex::new(n as u32, db, da), dim);
            }
        }
        Some(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::check;

    #[test]
    fn basic_block_table() {
        assert_eq!(basic_block_dim(3, 1, 1), 3);
        assert_eq!(basic_block_dim(3, 2, 1), 12);
        assert_eq!(basic_block_dim(3, 1, 2), 12);
        assert_eq!(basic_block_dim(3, 2, 2), 12);
        assert_eq!(basic_block_dim(5, 2, 3), 30);
        assert_eq!(BasicBlock::new(2, 3, 3).dim, 18);
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound(3), (42, vec![2, 3]));
        assert_eq!(lower_bound(2), (20, vec![2]));
        assert_eq!(lower_bound(1), (14, vec![2]));
        assert_eq!(lower_bound(5), (70, vec![2]));
    }

    #[test]
    fn minimal_forms() {
        let l = minimal_form(3, 2);
        assert_eq!(l.total_dim(), 42);
        assert_eq!(l.pointed_levels(), (Some(2), 2));
        assert!(check(&l, ModeFlags::nsp()).is_empty());
        assert_eq!(minimal_form(2, 2).total_dim(), 20);
        assert_eq!(minimal_form(3, 4).total_dim(), 126);
    }

    #[test]
    fn default_bounds() {
        let b = GridBounds::for_problem(42, 3);
        assert_eq!(b.max_level, 13);
        // lcm(36, 3) = 36 ≤ 39, lcm(49, 3) = 147 > 39
        assert_eq!(b.max_d, 6);
        assert_eq!(GridBounds::for_problem(1, 1).max_d, 1);
    }

    #[test]
    fn small_solves() {
        let c = solve(&FeasibilityProblem::new(42, 3, ModeFlags::nsp())).unwrap();
        assert!(c.is_feasible());
        let w = c.witness.unwrap();
        assert_eq!(w.total_dim(), 42);
        assert!(check(&w, ModeFlags::nsp()).is_empty());

        let c = solve(&FeasibilityProblem::new(45, 3, ModeFlags::nsp())).unwrap();
        assert_eq!(c.verdict, Verdict::Infeasible);

        let c = solve(&FeasibilityProblem::new(4, 2, ModeFlags::non_cosemisimple())).unwrap();
        assert_eq!(c.witness.unwrap(), BlockSystem::from_entries(2, [(0, 1, 1, 2), (1, 1, 1, 2)]).unwrap());

        let c = solve(&FeasibilityProblem::new(30, 6, ModeFlags::nsp())).unwrap();
        assert_eq!(c.verdict, Verdict::Infeasible);
    }

    #[test]
    fn non_divisible_dimension_is_refuted_without_search() {
        let c = solve(&FeasibilityProblem::new(10, 3, ModeFlags::nsp())).unwrap();
        assert_eq!(c.verdict, Verdict::Infeasible);
        assert_eq!(c.reason.as_deref(), Some("R1 forces r | N"));
        assert_eq!(c.stats.nodes, 0);
    }

    #[test]
    fn caps_are_explicit_errors() {
        let p = FeasibilityProblem::new(60, 3, ModeFlags::nsp());
        let opts = SolveOptions { node_cap: 10, ..SolveOptions::default() };
        assert_eq!(solve_with(&p, opts), Err(Error::NodeCap { cap: 10 }));
        let opts = SolveOptions { level_cap: 5, ..SolveOptions::default() };
        assert!(matches!(solve_with(&p, opts), Err(Error::LevelCap { levels: 20, cap: 5 })));
    }

    #[test]
    fn auto_nsp_regimes() {
        let p = FeasibilityProblem::new(30, 3, ModeFlags::auto());
        assert_eq!(p.effective_flags().1, NspRegime::Derived);
        let p = FeasibilityProblem::new(36, 3, ModeFlags::auto());
        assert_eq!(p.effective_flags().1, NspRegime::Off);
        let c = solve(&p).unwrap();
        assert_eq!(c.nsp_regime, NspRegime::Off);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        for (n, r) in [(42, 3), (45, 3), (40, 2), (26, 2)] {
            let p = FeasibilityProblem::new(n, r, ModeFlags::nsp());
            let a = solve_with(&p, SolveOptions { parallel: true, ..Default::default() }).unwrap();
            let b = solve_with(&p, SolveOptions { parallel: false, ..Default::default() }).unwrap();
            assert_eq!(a, b, "N={n} r={r}");
        }
    }
}
