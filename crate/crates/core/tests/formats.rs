//! Text formats round-trip every kind of generated instance.

mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sbe_core::io::{
    parse_election, parse_graph, parse_pw, parse_solution, write_election, write_graph, write_pw, write_solution,
    GraphFile, SolutionFile,
};
use sbe_core::oracle::{brute_topk, OracleConfig};
use sbe_core::reductions::{
    multicolored_clique_instance, random_instance, single_vote_clique_instance, CostModel, PossibleWinnerInstance,
    RandomSpec,
};
use sbe_core::{CandidateId, Rational, VotingRule, WinnerMode};

fn cost_model(choice: u8) -> CostModel {
    match choice % 3 {
        0 => CostModel::Unit,
        1 => CostModel::TwoValued {
            low: q(1),
            high: Rational::new(5, 2),
            density: 0.4,
        },
        _ => CostModel::UniformRange { lo: 0, hi: 4 },
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_instances_round_trip(seed: u64, m in 2usize..=8, n in 1usize..=6, choice: u8) {
        let k = 1 + (seed as usize) % (m - 1);
        let inst = random_instance(&RandomSpec::new(m, n, k, cost_model(choice), seed)).unwrap();
        let text = write_election(&inst).unwrap();
        let back = parse_election(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(write_election(&back).unwrap(), text);
    }

    #[test]
    fn other_rules_round_trip(seed: u64, m in 2usize..=5, n in 1usize..=4, bucklin: bool, unique: bool) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let rule = if bucklin {
            VotingRule::Bucklin
        } else {
            VotingRule::Scoring((0..m as u64).rev().map(|s| s * 2).collect())
        };
        let mut inst = priced_instance(&mut r, m, n, rule, &[q(1), Rational::new(3, 4)], Rational::new(7, 2));
        if unique {
            inst.mode = WinnerMode::Unique;
        }
        prop_assert_eq!(parse_election(&write_election(&inst).unwrap()).unwrap(), inst);
    }

    #[test]
    fn solutions_round_trip(seed: u64, m in 2usize..=5, n in 1usize..=3) {
        let k = 1 + (seed as usize) % (m - 1);
        let inst = random_instance(&RandomSpec::new(m, n, k, CostModel::Unit, seed)).unwrap();
        let out = brute_topk(&inst, &OracleConfig::default()).unwrap();
        let mut sol = SolutionFile::from_outcome("brute", &out);
        sol.seed = Some(seed);
        sol.config = Some("cutoff=off".into());
        let roster = inst.election.roster();
        let back = parse_solution(&write_solution(&sol, roster).unwrap(), roster).unwrap();
        prop_assert_eq!(back, sol);
    }

    #[test]
    fn partial_vote_instances_round_trip(seed: u64, m in 2usize..=6, n in 1usize..=4, density in 0.0f64..1.0) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let pw = PossibleWinnerInstance {
            roster: roster(m),
            votes: (0..n).map(|_| random_partial_vote(&mut r, m, density)).collect(),
            rule: VotingRule::Approval { k: 1 },
            preferred: CandidateId(0),
            mode: WinnerMode::Unique,
        };
        prop_assert_eq!(parse_pw(&write_pw(&pw).unwrap()).unwrap(), pw);
    }

    #[test]
    fn graphs_round_trip(seed: u64, n in 1usize..=9, density in 0.0f64..1.0) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g = GraphFile { graph: random_graph(&mut r, n, density), k: Some(2), colors: None };
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }
}

#[test]
fn generated_reductions_round_trip() {
    let mut r = ChaCha8Rng::seed_from_u64(11);
    let (g, _) = planted_clique(&mut r, 2, 2, 0.5);
    let gadget = multicolored_clique_instance(&g, Rational::new(1, 3)).unwrap();
    let text = write_election(&gadget.instance).unwrap();
    assert_eq!(parse_election(&text).unwrap(), gadget.instance);

    let file = GraphFile {
        graph: g.graph.clone(),
        k: Some(g.k()),
        colors: Some(g.colors().to_vec()),
    };
    let back = parse_graph(&write_graph(&file)).unwrap();
    assert_eq!(back.colored().unwrap(), g);

    let single = single_vote_clique_instance(&random_graph(&mut r, 6, 0.5), 3).unwrap();
    assert_eq!(parse_election(&write_election(&single).unwrap()).unwrap(), single);
}

#[test]
fn parse_errors_name_the_line() {
    let bad = "sbe 1\ncandidates 2\ncandidate 0 p\ncandidate 1 a\nrule k-approval 1\nbudget x\n";
    let msg = parse_election(bad).unwrap_err().to_string();
    assert!(msg.contains("line 6"), "{msg}");
    assert!(parse_election("sbe 2\n").is_err());
    assert!(parse_graph("graph 2 1\n0 5\n").is_err());
}
