#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use blocksieve::analyzer::AnalysisResult;
use blocksieve::linalg::{inverse, mat_mul, Q};
use blocksieve::Coalgebra;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn load(name: &str) -> Coalgebra {
    let path = corpus_dir().join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    Coalgebra::from_json(&text).unwrap()
}

/// Corpus file names with the builders they must match.
pub fn corpus() -> Vec<(&'static str, Coalgebra)> {
    let sw = Coalgebra::sweedler();
    vec![
        ("sweedler4", sw.clone()),
        ("sweedler4_tensor_square", Coalgebra::tensor(&sw, &sw)),
        ("grouplike_c2", Coalgebra::grouplike_cyclic(2)),
        ("grouplike_c3", Coalgebra::grouplike_cyclic(3)),
        ("grouplike_c4", Coalgebra::grouplike_cyclic(4)),
        ("grouplike_c5", Coalgebra::grouplike_cyclic(5)),
        ("dual_group_algebra_s3", Coalgebra::dual_symmetric_group(3)),
        ("matrix_2x2", Coalgebra::matrix(2)),
    ]
}

/// Random invertible rational matrix `Π · L · U · D`: a permutation, sparse
/// unit lower and upper triangular integer factors and a rational diagonal.
pub fn random_basis_change<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<Q>> {
    let density = (2.0 / n as f64).min(0.5);
    let tri = |rng: &mut R, lower: bool| -> Vec<Vec<Q>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let off = if lower { j < i } else { j > i };
                        let v = if i == j {
                            1
                        } else if off && rng.gen_bool(density) {
                            *[-2, -1, 1, 2].choose(rng).unwrap()
                        } else {
                            0
                        };
                        Q::from_integer(BigInt::from(v))
                    })
                    .collect()
            })
            .collect()
    };
    let l = tri(rng, true);
    let u = tri(rng, false);
    let scales = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 1), (1, 3), (-3, 2)];
    let diag: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let (a, b) = *scales.choose(rng).unwrap();
            (0..n).map(|j| if i == j { Q::new(BigInt::from(a), BigInt::from(b)) } else { Q::from_integer(BigInt::from(0)) }).collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let lud = mat_mul(&mat_mul(&l, &u), &diag);
    let m: Vec<Vec<Q>> = order.iter().map(|&i| lud[i].clone()).collect();
    debug_assert!(inverse(&m).is_some());
    m
}

/// Whether two isotypic tables agree after some relabelling of components that preserves `d`.
pub fn same_up_to_relabelling(a: &AnalysisResult, b: &AnalysisResult) -> bool {
    let da: Vec<u32> = a.components.iter().map(|c| c.d).collect();
    let db: Vec<u32> = b.components.iter().map(|c| c.d).collect();
    if da.len() != db.len() {
        return false;
    }
    let mut perm: Vec<usize> = (0..da.len()).collect();
    loop {
        if perm.iter().enumerate().all(|(i, &p)| da[i] == db[p]) {
            let mapped: BTreeMap<(u32, usize, usize), u64> =
                a.q_table.iter().map(|(&(n, t, m), &v)| ((n, perm[t], perm[m]), v)).collect();
            if mapped == b.q_table {
                return true;
            }
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

// Shared property checks, used by the proptest suite and the acceptance run.

use blocksieve::{analyze, check, BlockIndex, BlockSystem, ModeFlags, Rule};
use proptest::prelude::*;
use std::collections::BTreeSet;

/// Small random block systems; `symmetric` copies each off-diagonal entry to its transpose.
pub fn arb_system() -> impl Strategy<Value = BlockSystem> {
    (1u64..=6, prop::collection::vec((0u32..4, 1u32..4, 1u32..4, 1u64..40), 0..12), any::<bool>()).prop_map(
        |(r, entries, symmetric)| {
            let mut s = BlockSystem::new(r);
            for (level, a, b, v) in entries {
                let b = if level == 0 { a } else { b };
                let _ = s.insert(BlockIndex::new(level, a, b), v);
                if symmetric && level > 0 {
                    let _ = s.insert(BlockIndex::new(level, b, a), v);
                }
            }
            s
        },
    )
}

/// Mutations of minimal forms, which land near the passing region.
pub fn arb_near_minimal() -> impl Strategy<Value = BlockSystem> {
    (1u64..=6, 2u32..=4, prop::collection::vec((0u32..4, 1u32..5, 1u32..5, 0u64..3), 0..4)).prop_map(
        |(r, d, edits)| {
            let mut s = blocksieve::minimal_form(r, d);
            for (level, a, b, k) in edits {
                let b = if level == 0 { a } else { b };
                let _ = s.insert(BlockIndex::new(level, a, b), k * r * u64::from(a * b) + r);
            }
            s
        },
    )
}

fn violated(s: &BlockSystem, flags: ModeFlags) -> BTreeSet<Rule> {
    check(s, flags).into_iter().map(|v| v.rule).collect()
}

pub fn prop_transpose_involution(s: &BlockSystem) -> Result<(), TestCaseError> {
    prop_assert_eq!(&s.transpose().transpose(), s);
    prop_assert_eq!(s.transpose().total_dim(), s.total_dim());
    Ok(())
}

/// Passing is transpose invariant; so is every rule except the one-sided escalation rule.
pub fn prop_transpose_invariance(s: &BlockSystem) -> Result<(), TestCaseError> {
    for flags in [ModeFlags::none(), ModeFlags::non_cosemisimple(), ModeFlags::nsp()] {
        let a = violated(s, flags);
        let b = violated(&s.transpose(), flags);
        prop_assert_eq!(a.is_empty(), b.is_empty());
        let strip = |x: BTreeSet<Rule>| x.into_iter().filter(|r| *r != Rule::R5).collect::<BTreeSet<_>>();
        prop_assert_eq!(strip(a), strip(b));
    }
    Ok(())
}

pub fn prop_round_trip(s: &BlockSystem) -> Result<(), TestCaseError> {
    prop_assert_eq!(&BlockSystem::from_json(&s.to_json()).unwrap(), s);
    prop_assert_eq!(&BlockSystem::from_json(&s.to_json_pretty()).unwrap(), s);
    let via_serde: BlockSystem = serde_json::from_value(serde_json::to_value(s).unwrap()).unwrap();
    prop_assert_eq!(&via_serde, s);
    Ok(())
}

pub fn prop_certificate_round_trip(t: u64, r: u64, nsp: bool) -> Result<(), TestCaseError> {
    let flags = if nsp { ModeFlags::nsp() } else { ModeFlags::non_cosemisimple() };
    let cert = blocksieve::solve(&blocksieve::FeasibilityProblem::new(t * r, r, flags)).unwrap();
    let back: blocksieve::Certificate = serde_json::from_str(&cert.to_json()).unwrap();
    prop_assert_eq!(back, cert);
    Ok(())
}

/// `count` random basis changes of `c` leave the block system and the isotypic table unchanged.
pub fn basis_change_invariance<R: Rng>(c: &Coalgebra, rng: &mut R, count: usize) -> Result<(), String> {
    let base = analyze(c, ModeFlags::none()).map_err(|e| e.to_string())?;
    for i in 0..count {
        let p = random_basis_change(rng, c.dim());
        let changed = c.change_basis(&p).map_err(|e| e.to_string())?;
        let back = Coalgebra::from_json(&changed.to_json()).map_err(|e| e.to_string())?;
        if back != changed {
            return Err(format!("change {i}: coalgebra json round trip differs"));
        }
        let r = analyze(&changed, ModeFlags::none()).map_err(|e| e.to_string())?;
        if r.block_system != base.block_system {
            return Err(format!("change {i}: block system {} != {}", r.block_system, base.block_system));
        }
        if r.filtration.dims() != base.filtration.dims() {
            return Err(format!("change {i}: filtration {:?} != {:?}", r.filtration.dims(), base.filtration.dims()));
        }
        if !same_up_to_relabelling(&base, &r) {
            return Err(format!("change {i}: isotypic tables differ"));
        }
    }
    Ok(())
}

/// Every `N < N_min(r)` with `r | N` is refuted under nsp, for `r ≤ r_max`.
pub fn below_bound_infeasible(r_max: u64) -> Result<usize, String> {
    let mut checked = 0;
    for r in 1..=r_max {
        let (n_min, _) = blocksieve::lower_bound(r);
        for n in (r..n_min).step_by(r as usize) {
            let cert = blocksieve::solve(&blocksieve::FeasibilityProblem::new(n, r, ModeFlags::nsp()))
                .map_err(|e| e.to_string())?;
            if cert.is_feasible() {
                return Err(format!("N={n} r={r} has witness {}", cert.witness.unwrap()));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
