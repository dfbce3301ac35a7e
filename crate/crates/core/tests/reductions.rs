use tfes_core::branch::{BranchSolver, ProblemVariant};
use tfes_core::reach::{has_cycle, PathModel};
use tfes_core::reduce::{
    multicut_dag_bruteforce, multicut_dag_to_tfes, random_cnf, sat_bruteforce, sat_to_nonstrict, sat_to_strict,
    CnfFormula, Dag, TerminalPairs,
};

fn cnf(n: u32, c: &[&[i32]]) -> CnfFormula {
    CnfFormula::new(n, c.iter().map(|c| c.to_vec()).collect()).unwrap()
}

#[test]
fn strict_reduction_on_random_formulas() {
    for seed in 0..12 {
        let phi = random_cnf(4, 1 + seed as usize % 4, seed).unwrap();
        let out = sat_to_strict(&phi).unwrap();
        let sat = sat_bruteforce(&phi).unwrap();
        for v in [ProblemVariant::STFES, ProblemVariant::STFCS] {
            let found = BranchSolver::new(v).decide(&out.graph, out.k).solution;
            assert_eq!(found.is_some(), sat, "{phi:?} {}", v.name());
            if let Some(s) = found {
                assert!(s.is_feasible(&out.graph, v.model));
            }
        }
    }
}

#[test]
fn strict_reduction_rejects_contradiction() {
    let phi = cnf(1, &[&[1], &[-1]]).padded();
    assert!(!sat_bruteforce(&phi).unwrap());
    let out = sat_to_strict(&phi).unwrap();
    assert!(BranchSolver::new(ProblemVariant::STFES).decide(&out.graph, out.k).solution.is_none());
    assert!(BranchSolver::new(ProblemVariant::STFES).decide(&out.graph, out.k + 1).solution.is_some());
}

/// Two clauses that can only be satisfied through the same literal vertex
/// leave a non-strict cycle through both connectors and `s`, so the
/// non-strict instance needs one deletion more than the budget.
#[test]
fn nonstrict_reduction_breaks_on_shared_literal() {
    let phi = cnf(1, &[&[1], &[1]]).padded();
    assert!(sat_bruteforce(&phi).unwrap());
    let out = sat_to_nonstrict(&phi).unwrap();
    for v in [ProblemVariant::TFES, ProblemVariant::TFCS] {
        let solver = BranchSolver::new(v);
        assert!(solver.decide(&out.graph, out.k).solution.is_none());
        assert_eq!(solver.solve(&out.graph, out.k + 1).solution.map(|s| s.size()), Some(out.k + 1));
    }
    // the strict construction handles the same formula
    let strict = sat_to_strict(&phi).unwrap();
    assert!(BranchSolver::new(ProblemVariant::STFES).decide(&strict.graph, strict.k).solution.is_some());
}

#[test]
fn nonstrict_reduction_with_distinct_literals() {
    let phi = cnf(3, &[&[1, -2, 3], &[-2, -3, 1]]);
    let out = sat_to_nonstrict(&phi).unwrap();
    assert!(out.graph.is_simple());
    for v in [ProblemVariant::TFES, ProblemVariant::TFCS] {
        let found = BranchSolver::new(v).decide(&out.graph, out.k).solution.unwrap();
        assert!(found.is_feasible(&out.graph, PathModel::NonStrict));
    }
}

#[test]
fn multicut_reduction_on_a_diamond() {
    // 1 -> {2, 3} -> 4: both middle vertices must go
    let dag = Dag::new(4, &[(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
    let pairs = TerminalPairs::new(vec![(1, 4)]);
    for k in 0..=2 {
        let expect = multicut_dag_bruteforce(&dag, &pairs, k).unwrap();
        assert_eq!(expect, k == 2);
        let out = multicut_dag_to_tfes(&dag, &pairs, k).unwrap();
        assert!(out.graph.is_simple());
        assert!(has_cycle(&out.graph, PathModel::Strict));
        for v in ProblemVariant::ALL {
            let got = BranchSolver::new(v).decide(&out.graph, k).solution;
            assert_eq!(got.is_some(), expect, "k={k} {}", v.name());
        }
    }
}
