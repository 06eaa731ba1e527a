use blocksieve::solver::group_order_survey;
use blocksieve::{
    admissible_group_orders, basic_block_dim, check, lower_bound, minimal_form, oracle_solve, solve, solve_with,
    BlockSystem, Error, FeasibilityProblem, GridBounds, ModeFlags, SolveOptions,
};

#[test]
fn basic_blocks() {
    assert_eq!(basic_block_dim(3, 1, 1), 3);
    assert_eq!(basic_block_dim(3, 2, 1), 12);
    assert_eq!(basic_block_dim(3, 1, 2), 12);
    assert_eq!(basic_block_dim(3, 2, 2), 12);
    assert_eq!(basic_block_dim(2, 2, 3), 6);
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
    let l32 = BlockSystem::from_entries(
        3,
        [(0, 1, 1, 3), (0, 2, 2, 12), (1, 2, 1, 6), (1, 1, 2, 6), (2, 1, 1, 3), (2, 2, 2, 12)],
    )
    .unwrap();
    assert_eq!(minimal_form(3, 2), l32);
    assert_eq!(minimal_form(2, 2).total_dim(), 20);
    assert_eq!(minimal_form(3, 4).total_dim(), 126);
}

#[test]
fn solve_examples() {
    let c = solve(&FeasibilityProblem::new(42, 3, ModeFlags::nsp())).unwrap();
    let w = c.witness.unwrap();
    assert!(check(&w, ModeFlags::nsp()).is_empty());
    assert_eq!(w.total_dim(), 42);

    assert!(!solve(&FeasibilityProblem::new(45, 3, ModeFlags::nsp())).unwrap().is_feasible());

    let sweedler = solve(&FeasibilityProblem::new(4, 2, ModeFlags::non_cosemisimple())).unwrap();
    assert_eq!(sweedler.witness.unwrap(), BlockSystem::from_entries(2, [(0, 1, 1, 2), (1, 1, 1, 2)]).unwrap());

    assert!(!solve(&FeasibilityProblem::new(30, 6, ModeFlags::nsp())).unwrap().is_feasible());

    let indivisible = solve(&FeasibilityProblem::new(20, 3, ModeFlags::nsp())).unwrap();
    assert_eq!(indivisible.reason.as_deref(), Some("R1 forces r | N"));
    assert_eq!(indivisible.stats.nodes, 0);
}

#[test]
fn refutations_name_cases_and_rules() {
    let c = solve(&FeasibilityProblem::new(45, 3, ModeFlags::nsp())).unwrap();
    let cases = c.refutation.unwrap();
    assert!(!cases.is_empty());
    assert!(cases.iter().all(|k| k.case.starts_with("level-0 dims {1")));
    assert!(cases.iter().all(|k| !k.closing_rule.is_empty()));
}

#[test]
fn group_order_surveys() {
    assert!(admissible_group_orders(42, ModeFlags::nsp()).unwrap().contains(&3));
    assert!(admissible_group_orders(4, ModeFlags::non_cosemisimple()).unwrap().contains(&2));
    let survey = group_order_survey(12, ModeFlags::nsp(), SolveOptions::default()).unwrap();
    assert_eq!(survey.iter().map(|(r, _)| *r).collect::<Vec<_>>(), vec![1, 2, 3, 4, 6]);
}

#[test]
fn caps_are_errors_not_verdicts() {
    let p = FeasibilityProblem::new(60, 2, ModeFlags::nsp());
    let tiny = SolveOptions { node_cap: 3, ..SolveOptions::default() };
    assert!(matches!(solve_with(&p, tiny), Err(Error::NodeCap { cap: 3 })));
    let levels = SolveOptions { level_cap: 10, ..SolveOptions::default() };
    assert!(matches!(solve_with(&p, levels), Err(Error::LevelCap { .. })));
    assert!(matches!(oracle_solve(64, 2, ModeFlags::nsp()), Err(Error::OracleCap(_))));
}

#[test]
fn default_grid_bounds() {
    let b = GridBounds::for_problem(42, 3);
    assert_eq!(b.max_level, 13);
    // lcm(d^2, 3) <= 39 fails for d = 4 (48) and 5 (75) but holds again for d = 6 (36)
    assert_eq!(b.max_d, 6);
    assert_eq!(GridBounds::for_problem(20, 2).max_d, 4);
}
