use std::collections::BTreeMap;
use std::sync::OnceLock;

use wedgeconf::combinat::partitions_of;
use wedgeconf::decomp::{
    coefficient_decomposition, full_decomposition, full_decomposition_with, isotypic, parity_transpose,
    weightspace_character, weightspace_character_at, Convention, EquivDecomposition, Strategy, CIRCLE_EVALUATED,
};
use wedgeconf::refdata::{ReferenceTable, TableDocument};
use wedgeconf::Partition;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn dec(n: usize) -> &'static EquivDecomposition {
    static CACHE: OnceLock<Vec<EquivDecomposition>> = OnceLock::new();
    &CACHE.get_or_init(|| (1..=7).map(|n| full_decomposition(n).unwrap()).collect())[n - 1]
}

fn row(n: usize, i: usize, lambda: &str) -> BTreeMap<Partition, u64> {
    isotypic(dec(n), &p(lambda)).into_iter().filter(|((d, _), _)| *d == i).map(|((_, m), c)| (m, c)).collect()
}

fn expect(terms: &[&str]) -> BTreeMap<Partition, u64> {
    let mut m = BTreeMap::new();
    for t in terms {
        *m.entry(p(t)).or_insert(0) += 1;
    }
    m
}

#[test]
fn tables_match_reference_through_n7() {
    for n in 2..=7 {
        let got = ReferenceTable::from_decomposition(dec(n), n - 1).unwrap();
        let diff = ReferenceTable::bundled(n).unwrap().diff(&got);
        assert!(diff.is_empty(), "n={n}: {diff:?}");
    }
}

#[test]
fn sample_rows() {
    assert_eq!(row(6, 5, "(3,2,1)"), expect(&["(3)", "(2)", "(1,1)"]));
    assert_eq!(row(7, 6, "(5,2)"), expect(&["(3)", "(2,1)", "(1^4)", "(1)"]));
    assert_eq!(row(4, 3, "(3,1)"), expect(&["(2)"]));
    assert!(row(4, 3, "(2,1,1)").is_empty());
    assert!(row(7, 6, "(6,1)").is_empty());
    assert_eq!(row(5, 4, "(3,1,1)"), expect(&["(3)", "(1)"]));
    assert!(row(5, 4, "(4,1)").is_empty());
    assert_eq!(row(6, 5, "(3,3)"), expect(&["(3)", "(2,1)", "(1)"]));
    assert_eq!(row(5, 4, "(1^5)"), expect(&["(4)"]));
}

#[test]
fn invariants_hold() {
    for n in 1..=7 {
        dec(n).check_invariants().unwrap();
        let coef = parity_transpose(dec(n), 1);
        coef.check_invariants().unwrap();
        assert_eq!(coef.convention, Convention::Coefficient);
    }
}

#[test]
fn strategies_agree() {
    for n in 1..=5 {
        assert_eq!(full_decomposition_with(n, Strategy::Circles).unwrap(), *dec(n), "n={n}");
    }
    let c = coefficient_decomposition(4, Strategy::DualParity).unwrap();
    assert_eq!(parity_transpose(&c, 1), *dec(4));
}

#[test]
fn phi0_diagonal_and_sign() {
    for n in 1..=6 {
        let coef = parity_transpose(dec(n), 1);
        for lambda in partitions_of(n) {
            for mu in partitions_of(n) {
                assert_eq!(coef.get(0, n, &lambda, &mu), (lambda == mu) as u64, "n={n} {lambda} {mu}");
            }
        }
        let sub: Vec<_> = coef.entries.iter().filter(|(e, _)| e.p == 0 && e.mu.size() + 1 == n).collect();
        assert_eq!(sub.len(), 1);
        assert_eq!(sub[0].0.lambda, Partition::column(n));
        assert_eq!(sub[0].0.mu, Partition::column(n - 1));
        assert_eq!(*sub[0].1, 1);
    }
}

#[test]
fn genus_bound() {
    for n in 1..=5 {
        for k in 0..=n {
            for mu in partitions_of(k) {
                let g = mu.len();
                for pp in [n - k, (n - k).saturating_sub(1)] {
                    let a = weightspace_character(n, &mu, pp, pp + k).unwrap();
                    for extra in 1..=2 {
                        if g + extra > 3 && n > 4 {
                            continue;
                        }
                        let b = weightspace_character_at(n, &mu, g + extra, pp, pp + k).unwrap();
                        assert_eq!(a, b, "n={n} mu={mu} g'={}", g + extra);
                    }
                }
            }
        }
    }
}

#[test]
fn hook_rows_vanish_and_sign_rows() {
    for n in 3..=7 {
        let hook = Partition::new([vec![2], vec![1; n - 2]].concat());
        assert!(row(n, n - 1, &hook.to_string()).is_empty(), "n={n}");
    }
    for n in 2..=7 {
        let mut want = BTreeMap::new();
        want.insert(Partition::row(n - 1), 1);
        assert_eq!(row(n, n - 1, &Partition::column(n).to_string()), want);
    }
}

#[test]
fn json_round_trip() {
    for n in 1..=6 {
        let doc = TableDocument::from_decomposition(dec(n)).unwrap();
        let json = doc.to_json();
        let back = TableDocument::from_json(&json).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), json);
    }
    let doc = TableDocument::from_decomposition(dec(5)).unwrap();
    let t = doc.degree(4).unwrap();
    let r = t.rows.iter().find(|r| r.lambda == p("(2^2,1)")).unwrap();
    assert_eq!(r.schur, vec![p("(2)")]);
    let json = doc.to_json();
    assert!(json.contains("\"(2,2,1)\""));
}

#[test]
fn convention_tags() {
    assert_eq!(dec(3).convention, CIRCLE_EVALUATED);
    let even = parity_transpose(&parity_transpose(dec(3), 1), 2);
    assert_eq!(even.convention, Convention::Evaluated(2));
    assert_eq!(parity_transpose(&even, 1), *dec(3));
}
