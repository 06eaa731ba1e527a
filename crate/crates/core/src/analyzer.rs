//! Coradical filtration and block system of an explicit coalgebra.
//!
//! Everything is computed in the dual algebra `A = C*`: the coradical is the
//! annihilator of the Jacobson radical `J`, the filtration terms are the
//! annihilators of the powers of `J`, and the simple subcoalgebras correspond
//! to the primitive central idempotents of `A/J`. Block dimensions are read
//! off the graded quotients `C_n / C_{n-1}` through the two hit actions of
//! those idempotents.

use std::collections::BTreeMap;

use num_integer::Roots;
use num_traits::Zero;
use serde::Serialize;

use crate::coalgebra::Coalgebra;
use crate::error::{Error, Result};
use crate::linalg::{fmt_q, mat_vec, nullspace, q, rational_roots, unit_vector, zeros, Echelon, Q};
use crate::model::{BlockIndex, BlockSystem, ModeFlags, NspRegime};
use crate::rules::{check, RuleViolation};
use crate::solver::FeasibilityProblem;

/// Finite-dimensional algebra given by structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    /// Coefficient of `b_i` in `b_j · b_k` at `(i * n + j) * n + k`.
    consts: Vec<Q>,
    unit: Vec<Q>,
}

impl Algebra {
    /// `consts(i, j, k)` is the coefficient of `b_i` in `b_j · b_k`.
    pub fn new(dim: usize, consts: impl Fn(usize, usize, usize) -> Q, unit: Vec<Q>) -> Self {
        let mut c = zeros(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    c[(i * dim + j) * dim + k] = consts(i, j, k);
                }
            }
        }
        Algebra { dim, consts: c, unit }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.consts[(i * self.dim + j) * self.dim + k]
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let n = self.dim;
        let mut out = zeros(n);
        for (j, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (k, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (i, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        out
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim;
        let basis: Vec<Vec<Q>> = (0..n).map(|i| unit_vector(n, i)).collect();
        basis.iter().all(|a| {
            basis.iter().all(|b| {
                let ab = self.mul(a, b);
                basis.iter().all(|c| self.mul(&ab, c) == self.mul(a, &self.mul(b, c)))
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|j| (0..n).all(|k| (0..n).all(|i| self.constant(i, j, k) == self.constant(i, k, j))))
    }

    /// Jacobson radical as the kernel of `(a, b) ↦ tr(L_a L_b)`; exact in characteristic 0.
    pub fn radical(&self) -> Echelon {
        let n = self.dim;
        // tr(L_{b_i}) = Σ_k coefficient of b_k in b_i b_k
        let traces: Vec<Q> = (0..n).map(|i| (0..n).fold(Q::zero(), |s, k| s + self.constant(k, i, k))).collect();
        let gram: Vec<Vec<Q>> = (0..n)
            .map(|a| (0..n).map(|b| (0..n).fold(Q::zero(), |s, i| s + self.constant(i, a, b) * &traces[i])).collect())
            .collect();
        Echelon::span(n, &nullspace(&gram, n))
    }

    /// Span of all products `x · y` with `x ∈ left`, `y ∈ right`.
    fn product_span(&self, left: &Echelon, right: &Echelon) -> Echelon {
        let mut out = Echelon::new(self.dim);
        for x in left.rows() {
            for y in right.rows() {
                out.insert(&self.mul(x, y));
            }
        }
        out
    }

    /// `A / I` on the non-pivot coordinates of `I`, with the lift of each quotient basis vector.
    fn quotient(&self, ideal: &Echelon) -> (Algebra, Vec<Vec<Q>>) {
        let n = self.dim;
        let keep: Vec<usize> = (0..n).filter(|c| !ideal.pivots().contains(c)).collect();
        let m = keep.len();
        let lifts: Vec<Vec<Q>> = keep.iter().map(|&c| unit_vector(n, c)).collect();
        let project = |v: &[Q]| -> Vec<Q> {
            let r = ideal.reduce(v);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let mut consts = zeros(m * m * m);
        for j in 0..m {
            for k in 0..m {
                let p = project(&self.mul(&lifts[j], &lifts[k]));
                for (i, x) in p.into_iter().enumerate() {
                    consts[(i * m + j) * m + k] = x;
                }
            }
        }
        let unit = project(&self.unit);
        (Algebra { dim: m, consts, unit }, lifts)
    }

    fn center(&self) -> Vec<Vec<Q>> {
        let n = self.dim;
        // z with z b_k - b_k z = 0 for all k: coefficient rows indexed by (k, i)
        let mut rows = Vec::with_capacity(n * n);
        for k in 0..n {
            for i in 0..n {
                rows.push((0..n).map(|j| self.constant(i, j, k) - self.constant(i, k, j)).collect());
            }
        }
        nullspace(&rows, n)
    }

    /// Primitive idempotents of a split commutative semisimple subalgebra spanned by `basis`.
    fn split_idempotents(&self, basis: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
        let s = basis.len();
        if s <= 1 {
            return Ok(vec![self.unit.clone()]);
        }
        for attempt in 0..64u64 {
            // Deterministic coefficient choices; a bad one only costs a retry.
            let z = basis.iter().enumerate().fold(zeros(self.dim), |acc, (i, b)| {
                let w = q(1 + ((attempt as i64 + 1) * (i as i64 + 1).pow(2)) % 97);
                acc.into_iter().zip(b).map(|(x, y)| x + &w * y).collect()
            });
            let poly = self.min_poly(&z);
            let roots = rational_roots(&poly).ok_or_else(|| {
                Error::NonSplit("a central element has an irrational or repeated eigenvalue".into())
            })?;
            if roots.len() < s {
                continue;
            }
            let mut ids = Vec::with_capacity(s);
            for (i, li) in roots.iter().enumerate() {
                let mut e = self.unit.clone();
                for lj in roots.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, l)| l) {
                    let shifted: Vec<Q> = z.iter().zip(&self.unit).map(|(a, u)| a - lj * u).collect();
                    let inv = (li - lj).recip();
                    e = self.mul(&e, &shifted).into_iter().map(|x| x * &inv).collect();
                }
                ids.push(e);
            }
            return Ok(ids);
        }
        Err(Error::NonSplit("no central element separates the simple components".into()))
    }

    /// Minimal polynomial of `z`, lowest degree first, monic.
    fn min_poly(&self, z: &[Q]) -> Vec<Q> {
        let mut powers = vec![self.unit.clone()];
        loop {
            let next = self.mul(powers.last().unwrap(), z);
            powers.push(next);
            let k = powers.len();
            // Columns are the powers; look for a dependency.
            let rows: Vec<Vec<Q>> = (0..self.dim).map(|i| powers.iter().map(|p| p[i].clone()).collect()).collect();
            if let Some(c) = nullspace(&rows, k).into_iter().next() {
                let lead = c[k - 1].clone();
                return c.into_iter().map(|x| x / &lead).collect();
            }
        }
    }
}

/// Dual algebra `C*` in the dual basis: `(f·h)(e) = (f ⊗ h)(Δe)`, unit `ε`.
pub fn dual_algebra(c: &Coalgebra) -> Algebra {
    Algebra::new(c.dim(), |i, j, k| c.coef(i, j, k).clone(), c.counit().to_vec())
}

pub fn radical(a: &Algebra) -> Echelon {
    a.radical()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleComponent {
    pub index: usize,
    pub label: String,
    pub d: u32,
    #[serde(serialize_with = "ser_vec")]
    pub central_idempotent: Vec<Q>,
    pub grouplike: bool,
}

/// `C_0 ⊆ C_1 ⊆ … ⊆ C_t = C`, each term in reduced echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationChain {
    pub terms: Vec<Echelon>,
}

impl FiltrationChain {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Echelon::rank).collect()
    }

    /// Checks `Δ(C_n) ⊆ Σ_i C_i ⊗ C_{n-i}` for every term.
    pub fn is_coalgebra_filtration(&self, c: &Coalgebra) -> bool {
        let n = c.dim();
        // Basis adapted to the chain, each vector tagged with its first level.
        let mut adapted = Echelon::new(n);
        let mut basis = Vec::new();
        let mut level = Vec::new();
        for (l, term) in self.terms.iter().enumerate() {
            for v in term.rows() {
                if adapted.insert(v) {
                    basis.push(v.clone());
                    level.push(l);
                }
            }
        }
        if basis.len() != n {
            return false;
        }
        let cols: Vec<Vec<Q>> = (0..n).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
        let Some(inv) = crate::linalg::inverse(&cols) else { return false };
        for (l, term) in self.terms.iter().enumerate() {
            for v in term.rows() {
                let d = c.delta_of(v);
                // coordinates in the adapted basis on both legs
                let left: Vec<Vec<Q>> = (0..n).map(|a| (0..n).map(|k| inv[a][k].clone()).collect()).collect();
                let dl = crate::linalg::mat_mul(&left, &d);
                let inv_t: Vec<Vec<Q>> = (0..n).map(|k| (0..n).map(|b| inv[b][k].clone()).collect()).collect();
                let coords = crate::linalg::mat_mul(&dl, &inv_t);
                for a in 0..n {
                    for b in 0..n {
                        if level[a] + level[b] > l && !coords[a][b].is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone)]
pub struct AnalysisResult {
    pub dim: usize,
    pub components: Vec<SimpleComponent>,
    pub filtration: FiltrationChain,
    /// `(n, τ, μ) ↦ dim (C_n / C_{n-1})^{τ,μ}` for `n ≥ 1`, nonzero entries only.
    pub q_table: BTreeMap<(u32, usize, usize), u64>,
    pub block_system: BlockSystem,
    pub violations: Vec<RuleViolation>,
    pub flags: ModeFlags,
    pub nsp_regime: NspRegime,
}

impl AnalysisResult {
    pub fn group_order(&self) -> u64 {
        self.block_system.group_order()
    }

    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn verdict_line(&self) -> String {
        let under = flags_phrase(self.flags);
        if self.passes() {
            "passes all necessary conditions (no admissibility claim)".to_string()
        } else {
            format!("fails necessity \u{2014} not admissible (under {under})")
        }
    }

    /// `q_table` keyed by component labels.
    pub fn labelled_q_table(&self) -> Vec<(u32, &str, &str, u64)> {
        self.q_table
            .iter()
            .map(|(&(n, t, m), &v)| (n, self.components[t].label.as_str(), self.components[m].label.as_str(), v))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let q_table: Vec<_> = self
            .q_table
            .iter()
            .map(|(&(n, t, m), &v)| serde_json::json!({"level": n, "tau": t, "mu": m, "dim": v}))
            .collect();
        let bases: Vec<Vec<Vec<String>>> =
            self.filtration.terms.iter().map(|t| t.rows().iter().map(|r| r.iter().map(fmt_q).collect()).collect()).collect();
        serde_json::json!({
            "dim": self.dim,
            "group_order": self.group_order(),
            "components": self.components,
            "filtration": {"dims": self.filtration.dims(), "bases": bases},
            "q_table": q_table,
            "block_system": serde_json::from_str::<serde_json::Value>(&self.block_system.to_json()).expect("valid json"),
            "violations": self.violations,
            "nsp_regime": self.nsp_regime,
            "verdict": self.verdict_line(),
        })
    }
}

fn flags_phrase(f: ModeFlags) -> String {
    let mut parts = Vec::new();
    if f.no_skew_primitives {
        parts.push("no skew-primitives");
    }
    if f.non_cosemisimple {
        parts.push("non-cosemisimple");
    }
    if parts.is_empty() {
        "no flags".to_string()
    } else {
        parts.join(", ")
    }
}

fn ser_vec<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_q))
}

pub fn coradical_filtration(c: &Coalgebra) -> Result<FiltrationChain> {
    ensure_valid(c)?;
    let a = dual_algebra(c);
    let j = a.radical();
    Ok(filtration_from(&a, &j))
}

fn filtration_from(a: &Algebra, j: &Echelon) -> FiltrationChain {
    let n = a.dim();
    let mut terms = Vec::new();
    let mut power = j.clone();
    loop {
        let term = Echelon::span(n, &nullspace(power.rows(), n));
        let full = term.rank() == n;
        terms.push(term);
        if full {
            break;
        }
        power = a.product_span(&power, j);
    }
    FiltrationChain { terms }
}

fn ensure_valid(c: &Coalgebra) -> Result<()> {
    let failures = c.validate();
    if failures.is_empty() {
        Ok(())
    } else {
        let list: Vec<String> = failures.iter().map(ToString::to_string).collect();
        Err(Error::Coalgebra(list.join("; ")))
    }
}

/// Hit actions of a functional `f` on `C`, as matrices acting on coordinate columns.
struct Hits {
    /// `c ↼ f = Σ f(c1) c2`
    right: Vec<Vec<Q>>,
    /// `f ⇀ c = Σ c1 f(c2)`
    left: Vec<Vec<Q>>,
}

fn hits(c: &Coalgebra, f: &[Q]) -> Hits {
    let n = c.dim();
    let mut right = vec![zeros(n); n];
    let mut left = vec![zeros(n); n];
    for i in 0..n {
        for (j, k, x) in c.terms(i) {
            if !f[j].is_zero() {
                right[k][i] += x * &f[j];
            }
            if !f[k].is_zero() {
                left[j][i] += x * &f[k];
            }
        }
    }
    Hits { right, left }
}

pub fn simple_components(c: &Coalgebra) -> Result<Vec<SimpleComponent>> {
    ensure_valid(c)?;
    let a = dual_algebra(c);
    let j = a.radical();
    let c0 = filtration_from(&a, &j).terms.swap_remove(0);
    components(c, &a, &j, &c0)
}

fn components(c: &Coalgebra, a: &Algebra, j: &Echelon, c0: &Echelon) -> Result<Vec<SimpleComponent>> {
    let n = c.dim();
    let (b, lifts) = a.quotient(j);
    let lift = |v: &[Q]| -> Vec<Q> {
        v.iter().zip(&lifts).fold(zeros(n), |acc, (x, l)| {
            if x.is_zero() {
                acc
            } else {
                acc.into_iter().zip(l).map(|(s, y)| s + x * y).collect()
            }
        })
    };
    let center = b.center();
    let idempotents = b.split_idempotents(&center)?;

    let mut found = Vec::new();
    for e in &idempotents {
        let block = Echelon::span(b.dim(), &(0..b.dim()).map(|k| b.mul(e, &unit_vector(b.dim(), k))).collect::<Vec<_>>());
        let size = block.rank() as u64;
        let d = size.sqrt();
        if d * d != size {
            return Err(Error::NonSplit(format!("a simple component has dimension {size}, not a square")));
        }
        let ze = Echelon::span(b.dim(), &center.iter().map(|z| b.mul(e, z)).collect::<Vec<_>>());
        if ze.rank() != 1 {
            return Err(Error::NonSplit(format!("a simple component has a center of dimension {}", ze.rank())));
        }
        let lifted = lift(e);
        let h = hits(c, &lifted);
        let image: Vec<Vec<Q>> = c0.rows().iter().map(|v| mat_vec(&h.left, &mat_vec(&h.right, v))).collect();
        let sub = Echelon::span(n, &image);
        if sub.rank() as u64 != size {
            return Err(Error::NonSplit(format!(
                "component of dimension {size} projects onto a {}-dimensional part of the coradical",
                sub.rank()
            )));
        }
        found.push((d as u32, sub, lifted));
    }
    found.sort_by(|x, y| (x.0, x.1.pivots(), x.1.rows()).cmp(&(y.0, y.1.pivots(), y.1.rows())));

    let mut out = Vec::with_capacity(found.len());
    let (mut groups, mut others) = (0, 0);
    for (index, (d, sub, idem)) in found.into_iter().enumerate() {
        let grouplike = d == 1;
        let label = if grouplike {
            let v = &sub.rows()[0];
            let eps = v.iter().zip(c.counit()).fold(Q::zero(), |s, (x, e)| s + x * e);
            let g: Vec<Q> = v.iter().map(|x| x / &eps).collect();
            let exact = (0..n).find(|&i| g == unit_vector(n, i));
            groups += 1;
            exact.map_or_else(|| format!("g{groups}"), |i| c.labels()[i].clone())
        } else {
            others += 1;
            format!("D{others}")
        };
        out.push(SimpleComponent { index, label, d, central_idempotent: idem, grouplike });
    }
    Ok(out)
}

pub fn q_table(c: &Coalgebra) -> Result<BTreeMap<(u32, usize, usize), u64>> {
    Ok(analyze(c, ModeFlags::none())?.q_table)
}

fn compute_q_table(
    c: &Coalgebra,
    comps: &[SimpleComponent],
    chain: &FiltrationChain,
) -> BTreeMap<(u32, usize, usize), u64> {
    let actions: Vec<Hits> = comps.iter().map(|s| hits(c, &s.central_idempotent)).collect();
    let mut table = BTreeMap::new();
    for level in 1..chain.terms.len() {
        let below = &chain.terms[level - 1];
        let here = &chain.terms[level];
        // Work with a complement of C_{n-1} inside C_n.
        let fresh: Vec<&Vec<Q>> = here.rows().iter().filter(|v| !below.contains(v)).collect();
        for (t, ht) in actions.iter().enumerate() {
            let moved: Vec<Vec<Q>> = fresh.iter().map(|v| mat_vec(&ht.right, v)).collect();
            for (m, hm) in actions.iter().enumerate() {
                let mut span = below.clone();
                for v in &moved {
                    span.insert(&mat_vec(&hm.left, v));
                }
                let q = (span.rank() - below.rank()) as u64;
                if q > 0 {
                    table.insert((level as u32, t, m), q);
                }
            }
        }
    }
    table
}

/// Full analysis: components, filtration, isotypic table, block system and rule report.
pub fn analyze(c: &Coalgebra, flags: ModeFlags) -> Result<AnalysisResult> {
    ensure_valid(c)?;
    let a = dual_algebra(c);
    let j = a.radical();
    let filtration = filtration_from(&a, &j);
    let comps = components(c, &a, &j, &filtration.terms[0])?;
    let table = compute_q_table(c, &comps, &filtration);

    let r = comps.iter().filter(|s| s.grouplike).count() as u64;
    let mut sums: BTreeMap<BlockIndex, u64> = BTreeMap::new();
    for s in &comps {
        *sums.entry(BlockIndex::new(0, s.d, s.d)).or_default() += u64::from(s.d) * u64::from(s.d);
    }
    for (&(n, t, m), &v) in &table {
        *sums.entry(BlockIndex::new(n, comps[t].d, comps[m].d)).or_default() += v;
    }
    let mut block_system = BlockSystem::new(r);
    for (k, v) in sums {
        block_system.insert(k, v)?;
    }
    let (flags, nsp_regime) = FeasibilityProblem::new(c.dim() as u64, r, flags).effective_flags();
    let violations = check(&block_system, flags);
    Ok(AnalysisResult {
        dim: c.dim(),
        components: comps,
        filtration,
        q_table: table,
        block_system,
        violations,
        flags,
        nsp_regime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::Rule;

    #[test]
    fn radicals() {
        assert_eq!(radical(&dual_algebra(&Coalgebra::grouplike_cyclic(3))).rank(), 0);
        assert_eq!(radical(&dual_algebra(&Coalgebra::sweedler())).rank(), 2);
        // k[t]/(t^2) in the basis 1, t
        let a = Algebra::new(2, |i, j, k| if i == j + k { q(1) } else { q(0) }, vec![q(1), q(0)]);
        let j = radical(&a);
        assert_eq!(j.rows(), &[vec![q(0), q(1)]]);
    }

    #[test]
    fn dual_algebras() {
        let g = dual_algebra(&Coalgebra::grouplike_cyclic(3));
        assert!(g.is_commutative() && g.is_associative());
        let m = dual_algebra(&Coalgebra::matrix(2));
        assert!(m.is_associative() && !m.is_commutative());
        assert_eq!(radical(&m).rank(), 0);
        assert!(dual_algebra(&Coalgebra::sweedler()).is_associative());
    }

    #[test]
    fn sweedler() {
        let r = analyze(&Coalgebra::sweedler(), ModeFlags::none()).unwrap();
        assert_eq!(r.filtration.dims(), vec![2, 4]);
        assert_eq!(r.labelled_q_table(), vec![(1, "1", "g", 1), (1, "g", "1", 1)]);
        assert_eq!(r.block_system, BlockSystem::from_entries(2, [(0, 1, 1, 2), (1, 1, 1, 2)]).unwrap());
        assert!(r.passes());
        let nsp = analyze(&Coalgebra::sweedler(), ModeFlags::nsp()).unwrap();
        assert!(nsp.violations.iter().any(|v| v.rule == Rule::R7));
        assert!(nsp.verdict_line().starts_with("fails necessity"));
    }

    #[test]
    fn cosemisimple_inputs() {
        let g = analyze(&Coalgebra::grouplike_cyclic(3), ModeFlags::none()).unwrap();
        assert!(g.q_table.is_empty());
        assert_eq!(g.filtration.dims(), vec![3]);
        assert_eq!(g.group_order(), 3);
        let s3 = analyze(&Coalgebra::dual_symmetric_group(3), ModeFlags::none()).unwrap();
        let ds: Vec<u32> = s3.components.iter().map(|c| c.d).collect();
        assert_eq!(ds, vec![1, 1, 2]);
        assert_eq!(s3.block_system, BlockSystem::from_entries(2, [(0, 1, 1, 2), (0, 2, 2, 4)]).unwrap());
        assert!(s3.passes());
        let strict = analyze(&Coalgebra::dual_symmetric_group(3), ModeFlags::non_cosemisimple()).unwrap();
        let rules: Vec<Rule> = strict.violations.iter().map(|v| v.rule).collect();
        assert_eq!(rules, vec![Rule::Rnc]);
    }

    #[test]
    fn tensor_square() {
        let sw = Coalgebra::sweedler();
        let r = analyze(&Coalgebra::tensor(&sw, &sw), ModeFlags::none()).unwrap();
        assert_eq!(r.filtration.dims(), vec![4, 12, 16]);
        assert_eq!(r.block_system.total_dim(), 16);
        assert!(r.filtration.is_coalgebra_filtration(&Coalgebra::tensor(&sw, &sw)));
    }

    #[test]
    fn matrix_coalgebra_has_no_grouplikes() {
        let r = analyze(&Coalgebra::matrix(2), ModeFlags::none()).unwrap();
        assert_eq!(r.group_order(), 0);
        assert_eq!(r.block_system.dim(0, 2, 2), 4);
        assert!(r.violations.iter().any(|v| v.rule == Rule::R0));
    }

    #[test]
    fn non_split_inputs_are_rejected() {
        // Q(i) as a coalgebra: dual algebra Q[t]/(t^2 + 1).
        // Basis 1, t of the algebra; the coalgebra structure is its transpose.
        let consts = |i: usize, j: usize, k: usize| -> Q {
            match (j, k) {
                (0, x) | (x, 0) => q((i == x) as i64),
                _ => q(-((i == 0) as i64)),
            }
        };
        let terms = (0..2).flat_map(|i| (0..2).flat_map(move |j| (0..2).map(move |k| (i, j, k, consts(i, j, k)))));
        let c = Coalgebra::new(vec!["a".into(), "b".into()], terms, vec![q(1), q(0)]).unwrap();
        assert!(c.validate().is_empty(), "{:?}", c.validate());
        assert!(matches!(analyze(&c, ModeFlags::none()), Err(Error::NonSplit(_))));
    }
}
