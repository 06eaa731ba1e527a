//! Brute-force reference enumerator.
//!
//! Walks every block table on the default grid in lexicographic order of the
//! dense dimension vector (levels first, then `d1`, then `d2`, smaller values
//! first) and keeps those that pass a rule check written separately from
//! [`crate::rules`]. Only rules that can never be repaired by adding higher
//! levels are used to cut the walk early. Single-threaded and meant for
//! small targets only.

use crate::error::{Error, Result};
use crate::model::{BlockSystem, Certificate, ModeFlags, NspRegime, SearchStats, Verdict};

pub const DEFAULT_ORACLE_CAP: u64 = 60;
pub const MAX_ORACLE_GROUP_ORDER: u64 = 8;

/// Dense table: `t[level][d1][d2]`, with `d` running from 1 (index 0 unused).
type Table = Vec<Vec<Vec<u64>>>;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

struct Grid {
    n: u64,
    r: u64,
    max_level: usize,
    max_d: usize,
    nsp: bool,
    noncos: bool,
}

impl Grid {
    fn new(n: u64, r: u64, flags: ModeFlags) -> Self {
        let max_level = (n / r).saturating_sub(1) as usize;
        let mut max_d = 1;
        for d in 2..=n {
            if lcm(d * d, r) + r <= n {
                max_d = d as usize;
            }
            if d * d > n {
                break;
            }
        }
        let nsp = flags.no_skew_primitives;
        Grid { n, r, max_level, max_d, nsp, noncos: flags.non_cosemisimple || nsp }
    }

    /// Every entry must be a multiple of this.
    fn step(&self, level: usize, d1: usize, d2: usize) -> u64 {
        let (a, b) = (d1 as u64, d2 as u64);
        if level == 0 {
            return lcm(a * a, self.r);
        }
        let mut s = lcm(self.r, a * b);
        if a == 1 || b == 1 {
            s = lcm(s, a * b * self.r);
        }
        s
    }
}

fn resolve_flags(n: u64, r: u64, flags: ModeFlags) -> (ModeFlags, NspRegime) {
    let mut f = flags;
    if f.no_skew_primitives {
        f.non_cosemisimple = true;
    }
    if f.auto_nsp && n % r == 0 && gcd(r, n / r) == 1 {
        f.no_skew_primitives = true;
        f.non_cosemisimple = true;
        return (f, NspRegime::Derived);
    }
    let regime = if f.no_skew_primitives { NspRegime::Assumed } else { NspRegime::Off };
    (f, regime)
}

fn guard(n: u64, r: u64, cap: u64) -> Result<()> {
    if n == 0 || r == 0 {
        return Err(Error::OracleCap("N and r must be positive".into()));
    }
    if n > cap {
        return Err(Error::OracleCap(format!("N = {n} exceeds the oracle cap {cap}")));
    }
    if r > MAX_ORACLE_GROUP_ORDER {
        return Err(Error::OracleCap(format!("r = {r} exceeds {MAX_ORACLE_GROUP_ORDER}")));
    }
    Ok(())
}

pub fn oracle_solve(n: u64, r: u64, flags: ModeFlags) -> Result<Certificate> {
    oracle_solve_capped(n, r, flags, DEFAULT_ORACLE_CAP)
}

pub fn oracle_solve_capped(n: u64, r: u64, flags: ModeFlags, cap: u64) -> Result<Certificate> {
    guard(n, r, cap)?;
    let (flags, regime) = resolve_flags(n, r, flags);
    let mut walk = Walk::new(Grid::new(n, r, flags), true);
    if n % r == 0 {
        walk.run();
    }
    let witness = walk.found.pop();
    let verdict = if witness.is_some() { Verdict::Feasible } else { Verdict::Infeasible };
    Ok(Certificate {
        verdict,
        witness,
        stats: SearchStats { nodes: walk.nodes, prunes: Default::default() },
        refutation: None,
        reason: None,
        nsp_regime: regime,
    })
}

/// Every rule-satisfying system of total `N`, in lexicographic order.
pub fn oracle_enumerate(n: u64, r: u64, flags: ModeFlags) -> Result<Vec<BlockSystem>> {
    guard(n, r, DEFAULT_ORACLE_CAP)?;
    let (flags, _) = resolve_flags(n, r, flags);
    let mut walk = Walk::new(Grid::new(n, r, flags), false);
    if n % r == 0 {
        walk.run();
    }
    Ok(walk.found)
}

struct Walk {
    g: Grid,
    t: Table,
    sum: u64,
    stop_at_first: bool,
    found: Vec<BlockSystem>,
    nodes: u64,
}

impl Walk {
    fn new(g: Grid, stop_at_first: bool) -> Self {
        let width = g.max_d + 1;
        let t = vec![vec![vec![0; width]; width]; g.max_level + 1];
        Walk { g, t, sum: 0, stop_at_first, found: Vec::new(), nodes: 0 }
    }

    fn done(&self) -> bool {
        self.stop_at_first && !self.found.is_empty()
    }

    fn run(&mut self) {
        // B(0,1,1) is |G|; the other level-0 entries are free multiples.
        self.t[0][1][1] = self.g.r;
        self.sum = self.g.r;
        self.level_zero(2);
    }

    fn level_zero(&mut self, d: usize) {
        if self.done() {
            return;
        }
        if d > self.g.max_d {
            self.next_level(1);
            return;
        }
        self.level_zero(d + 1);
        let step = self.g.step(0, d, d);
        let mut v = step;
        while self.sum + v <= self.g.n && !self.done() {
            self.t[0][d][d] = v;
            self.sum += v;
            self.level_zero(d + 1);
            self.sum -= v;
            self.t[0][d][d] = 0;
            v += step;
        }
    }

    /// Levels `0..level` are complete.
    fn next_level(&mut self, level: usize) {
        self.nodes += 1;
        if self.sum == self.g.n {
            let s = self.snapshot(level - 1);
            if passes(&self.t[..level], self.g.r, self.g.nsp, self.g.noncos) {
                self.found.push(s);
            }
            return;
        }
        if level > self.g.max_level || self.sum + self.g.r > self.g.n {
            return;
        }
        self.cell(level, 1, 1, false);
    }

    /// Assigns `t[level][d1][d2]` and continues in canonical order.
    fn cell(&mut self, level: usize, d1: usize, d2: usize, nonempty: bool) {
        if self.done() {
            return;
        }
        if d1 > self.g.max_d {
            // A gap could never be filled later.
            if nonempty {
                self.next_level(level + 1);
            }
            return;
        }
        let (n1, n2) = if d2 == self.g.max_d { (d1 + 1, 1) } else { (d1, d2 + 1) };
        // Transposed partner already fixed: antipode symmetry forces the value.
        if d1 > d2 {
            let v = self.t[level][d2][d1];
            if v == 0 {
                self.cell(level, n1, n2, nonempty);
            } else if self.fits(level, d1, d2) {
                self.t[level][d1][d2] = v;
                self.sum += v;
                self.cell(level, n1, n2, true);
                self.sum -= v;
                self.t[level][d1][d2] = 0;
            }
            return;
        }
        self.cell(level, n1, n2, nonempty);
        if level == 1 && d1 == 1 && d2 == 1 && self.g.nsp {
            return;
        }
        if !self.fits(level, d1, d2) {
            return;
        }
        let step = self.g.step(level, d1, d2);
        let mut v = step;
        // The partner will take the same value.
        let weight = if d1 == d2 { 1 } else { 2 };
        while self.sum + weight * v <= self.g.n && !self.done() {
            self.t[level][d1][d2] = v;
            self.sum += v;
            self.cell(level, n1, n2, true);
            self.sum -= v;
            self.t[level][d1][d2] = 0;
            v += step;
        }
    }

    /// Conditions on a new nonzero entry that only look at lower levels.
    fn fits(&self, level: usize, d1: usize, d2: usize) -> bool {
        let t = &self.t;
        if t[0][d1][d1] == 0 || t[0][d2][d2] == 0 {
            return false;
        }
        for i in 1..level {
            if !(1..=self.g.max_d).any(|b| t[i][d1][b] > 0 && t[level - i][b][d2] > 0) {
                return false;
            }
        }
        true
    }

    fn snapshot(&self, top: usize) -> BlockSystem {
        let mut entries = Vec::new();
        for (n, lv) in self.t.iter().enumerate().take(top + 1) {
            for (a, row) in lv.iter().enumerate() {
                for (b, &v) in row.iter().enumerate() {
                    if v > 0 {
                        entries.push((n as u32, a as u32, b as u32, v));
                    }
                }
            }
        }
        BlockSystem::from_entries(self.g.r, entries).expect("oracle table is well formed")
    }
}

/// Full rule check on a dense table, independent of the rule engine.
fn passes(t: &[Vec<Vec<u64>>], r: u64, nsp: bool, noncos: bool) -> bool {
    let top = t.len() - 1;
    let width = t[0].len();
    let at = |n: usize, a: usize, b: usize| -> u64 {
        if n < t.len() && a < width && b < width {
            t[n][a][b]
        } else {
            0
        }
    };
    let ds = 1..width;

    // level 0
    if at(0, 1, 1) != r {
        return false;
    }
    for a in ds.clone() {
        for b in ds.clone() {
            let v = at(0, a, b);
            if a != b && v != 0 {
                return false;
            }
            if a == b && v % (a as u64 * a as u64) != 0 {
                return false;
            }
        }
    }
    for n in 0..=top {
        let mut level_used = false;
        for a in ds.clone() {
            for b in ds.clone() {
                let v = at(n, a, b);
                if v == 0 {
                    continue;
                }
                level_used = true;
                if v % r != 0 {
                    return false;
                }
                if n == 0 {
                    continue;
                }
                if (a == 1 || b == 1) && v % (a as u64 * b as u64 * r) != 0 {
                    return false;
                }
                if v % (a as u64 * b as u64) != 0 {
                    return false;
                }
                if at(n, b, a) != v {
                    return false;
                }
                if at(0, a, a) == 0 || at(0, b, b) == 0 {
                    return false;
                }
                for i in 1..n {
                    if !ds.clone().any(|c| at(i, a, c) > 0 && at(n - i, c, b) > 0) {
                        return false;
                    }
                }
                if a != b {
                    let lifted = (n + 1..=top).any(|m| ds.clone().any(|c| at(m, a, c) > 0));
                    if !lifted {
                        return false;
                    }
                }
            }
        }
        if !level_used {
            return false;
        }
    }
    if noncos && top == 0 {
        return false;
    }
    let pointed: Vec<usize> = (0..=top).filter(|&n| at(n, 1, 1) > 0).collect();
    let m = *pointed.last().unwrap_or(&0);
    if at(m, 1, 1) != r {
        return false;
    }
    if nsp {
        if at(1, 1, 1) != 0 || m <= 1 {
            return false;
        }
        let six = (2..width).any(|d| {
            at(1, d, 1) > 0 && at(1, 1, d) > 0 && (2..=top).any(|k| at(k, d, d) > 0)
        });
        if !six {
            return false;
        }
        let l = pointed.iter().copied().find(|&n| n >= 1).unwrap_or(0);
        if l < m {
            if l <= 1 {
                return false;
            }
            let forced = (l + 1..=top).any(|lp| {
                let left = (2..width).any(|x| at(lp, x, 1) > 0 && (2..width).any(|y| at(lp - 1, x, y) > 0));
                let right = (2..width).any(|x| at(lp, 1, x) > 0 && (2..width).any(|y| at(lp - 1, y, x) > 0));
                left && right
            });
            if !forced {
                return false;
            }
        }
    }
    true
}
