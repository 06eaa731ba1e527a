mod common;

use blocksieve::analyzer::{coradical_filtration, dual_algebra, q_table, radical, simple_components};
use blocksieve::coalgebra::Axiom;
use blocksieve::{analyze, BlockIndex, BlockSystem, Coalgebra, ModeFlags, Rule};

#[test]
fn corpus_files_match_the_builders() {
    for (name, built) in common::corpus() {
        assert_eq!(common::load(name), built, "{name}");
    }
}

#[test]
fn corpus_items_are_coalgebras() {
    for (name, c) in common::corpus() {
        assert!(c.validate().is_empty(), "{name}: {:?}", c.validate());
        assert!(dual_algebra(&c).is_associative(), "{name}");
    }
}

#[test]
fn counit_failure_is_reported_at_the_broken_element() {
    let text = r#"{"dim":2,"basis":["1","x"],"delta":[[0,0,0,"1"],[1,1,0,"1"]],"counit":["1","0"],"field":"Q"}"#;
    let c = Coalgebra::from_json(text).unwrap();
    let failures = c.validate();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0].axiom, Axiom::LeftCounit);
    assert_eq!(failures[0].label, "x");
    assert!(analyze(&c, ModeFlags::none()).is_err());
}

#[test]
fn filtration_and_aggregation_invariants() {
    for (name, c) in common::corpus() {
        let r = analyze(&c, ModeFlags::none()).unwrap();
        let dims = r.filtration.dims();
        assert!(dims.windows(2).all(|w| w[0] < w[1]), "{name}: {dims:?}");
        assert_eq!(*dims.last().unwrap(), c.dim(), "{name}");
        assert!(r.filtration.is_coalgebra_filtration(&c), "{name}");
        assert_eq!(r.block_system.total_dim(), c.dim() as u64, "{name}");

        let coradical: u64 = r.components.iter().map(|s| u64::from(s.d * s.d)).sum();
        assert_eq!(coradical, dims[0] as u64, "{name}");
        for n in 1..dims.len() {
            let level: u64 = r.q_table.iter().filter(|(k, _)| k.0 == n as u32).map(|(_, v)| v).sum();
            assert_eq!(level, (dims[n] - dims[n - 1]) as u64, "{name} level {n}");
            let blocks: u64 = r.block_system.entries().filter(|(k, _)| k.level == n as u32).map(|(_, v)| v).sum();
            assert_eq!(blocks, level, "{name} level {n}");
        }
        for (&(_, t, m), &v) in &r.q_table {
            let unit = u64::from(r.components[t].d * r.components[m].d);
            assert_eq!(v % unit, 0, "{name}: isotypic piece not a multiple of d_tau d_mu");
        }
    }
}

#[test]
fn radical_examples() {
    assert_eq!(radical(&dual_algebra(&Coalgebra::grouplike_cyclic(3))).rank(), 0);
    assert_eq!(radical(&dual_algebra(&Coalgebra::sweedler())).rank(), 2);
    assert_eq!(radical(&dual_algebra(&Coalgebra::matrix(2))).rank(), 0);
}

#[test]
fn filtration_examples() {
    assert_eq!(coradical_filtration(&Coalgebra::grouplike_cyclic(3)).unwrap().dims(), vec![3]);
    assert_eq!(coradical_filtration(&Coalgebra::sweedler()).unwrap().dims(), vec![2, 4]);
    let sw = Coalgebra::sweedler();
    assert_eq!(coradical_filtration(&Coalgebra::tensor(&sw, &sw)).unwrap().dims(), vec![4, 12, 16]);
}

#[test]
fn component_examples() {
    let g = simple_components(&Coalgebra::grouplike_cyclic(3)).unwrap();
    assert_eq!(g.len(), 3);
    assert!(g.iter().all(|c| c.d == 1 && c.grouplike));
    let s3 = simple_components(&Coalgebra::dual_symmetric_group(3)).unwrap();
    assert_eq!(s3.iter().map(|c| c.d).collect::<Vec<_>>(), vec![1, 1, 2]);
    assert_eq!(s3.iter().filter(|c| c.grouplike).count(), 2);
    let m = simple_components(&Coalgebra::matrix(2)).unwrap();
    assert_eq!(m.len(), 1);
    assert_eq!(m[0].d, 2);
}

#[test]
fn sweedler_isotypic_table() {
    let c = Coalgebra::sweedler();
    let r = analyze(&c, ModeFlags::none()).unwrap();
    // x spans the (g,1) piece, gx the (1,g) piece.
    let labelled = r.labelled_q_table();
    assert!(labelled.contains(&(1, "g", "1", 1)));
    assert!(labelled.contains(&(1, "1", "g", 1)));
    assert_eq!(labelled.len(), 2);
    assert_eq!(q_table(&c).unwrap(), r.q_table);
    assert!(q_table(&Coalgebra::grouplike_cyclic(4)).unwrap().is_empty());
}

#[test]
fn analysis_verdicts() {
    let sw = analyze(&Coalgebra::sweedler(), ModeFlags::none()).unwrap();
    assert_eq!(sw.block_system, BlockSystem::from_entries(2, [(0, 1, 1, 2), (1, 1, 1, 2)]).unwrap());
    assert!(sw.violations.is_empty());
    assert_eq!(sw.verdict_line(), "passes all necessary conditions (no admissibility claim)");

    let nsp = analyze(&Coalgebra::sweedler(), ModeFlags::nsp()).unwrap();
    assert!(nsp.violations.iter().any(|v| v.rule == Rule::R7 && v.indices == [BlockIndex::new(1, 1, 1)]));
    assert!(nsp.verdict_line().starts_with("fails necessity \u{2014} not admissible (under "));

    let s3 = common::load("dual_group_algebra_s3");
    assert!(analyze(&s3, ModeFlags::none()).unwrap().passes());
    let strict = analyze(&s3, ModeFlags::non_cosemisimple()).unwrap();
    assert_eq!(strict.violations.iter().map(|v| v.rule).collect::<Vec<_>>(), vec![Rule::Rnc]);
}

#[test]
fn auto_nsp_is_derived_from_the_coalgebra() {
    // dim 4, r = 2: gcd(2, 2) = 2, so no assumption is made.
    let sw = analyze(&Coalgebra::sweedler(), ModeFlags::auto()).unwrap();
    assert_eq!(sw.nsp_regime, blocksieve::NspRegime::Off);
    assert!(sw.passes());
}

#[test]
fn analysis_json_mirrors_the_result() {
    let r = analyze(&Coalgebra::sweedler(), ModeFlags::none()).unwrap();
    let v = r.to_json();
    assert_eq!(v["filtration"]["dims"], serde_json::json!([2, 4]));
    assert_eq!(v["group_order"], 2);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    assert_eq!(v["q_table"].as_array().unwrap().len(), 2);
    let bs: BlockSystem = serde_json::from_value(v["block_system"].clone()).unwrap();
    assert_eq!(bs, r.block_system);
}
