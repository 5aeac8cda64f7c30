use rsl::chain::Basis;
use rsl::flag::full_table;
use rsl::vanish::{chain_condition_search, classify, delta_beta_nonvanishing, sufficient_witness, vanishing_predicates, Kind, Rule};
use rsl::{RankSet, Shape};

#[test]
fn halfset_and_initial_rules_hold() {
    for n in 3..=9 {
        let t = full_table(&Shape::full(n).unwrap()).unwrap();
        for s in RankSet::all(n, Basis::Primal) {
            let rules = vanishing_predicates(&s, n);
            if rules.contains(&Rule::Initial) || rules.contains(&Rule::Halfset) || rules.contains(&Rule::SingleA) {
                assert_eq!(t.h(&s).unwrap(), 0, "n={n} S={s} {rules:?}");
            }
        }
    }
}

#[test]
fn gap_rule_examples() {
    let s = RankSet::primal(8, &[1, 2, 4, 5]).unwrap();
    assert!(vanishing_predicates(&s, 8).contains(&Rule::Gap));
    let s = RankSet::primal(8, &[1, 2, 3, 5]).unwrap();
    assert!(vanishing_predicates(&s, 8).contains(&Rule::Gap));
    assert_eq!(full_table(&Shape::full(8).unwrap()).unwrap().h(&s).unwrap(), 0);
}

#[test]
fn witnesses_are_consistent() {
    for n in 4..=8 {
        let t = full_table(&Shape::full(n).unwrap()).unwrap();
        for s in RankSet::all(n, Basis::Primal) {
            if classify(&s).kind != Kind::InitialPlusTail {
                continue;
            }
            let h = t.h(&s).unwrap();
            let chain = chain_condition_search(&s, n).unwrap();
            let suff = sufficient_witness(&s, n).unwrap();
            if h > 0 {
                assert!(chain.is_some(), "n={n} S={s}");
            }
            if let Some(c) = suff {
                assert!(h > 0 && chain.is_some());
                assert_eq!(c.support(), s);
            }
            if let Some(w) = chain {
                assert_eq!(w.chain.support(), s);
                assert!(delta_beta_nonvanishing(&w.beta, classify(&s).i));
            }
        }
    }
}

#[test]
fn chain_search_examples() {
    for n in 5..=8 {
        let s = RankSet::primal(n, &[1, 2]).unwrap();
        assert!(chain_condition_search(&s, n).unwrap().is_none());
    }
    for n in 6..=8 {
        let s = RankSet::primal(n, &[1, 3]).unwrap();
        assert!(chain_condition_search(&s, n).unwrap().is_some());
    }
    let s = RankSet::primal(10, &[1, 2, 7]).unwrap();
    let w = sufficient_witness(&s, 10).unwrap().unwrap();
    assert_eq!(w.support(), s);
    assert!(chain_condition_search(&s, 10).unwrap().is_some());
}
