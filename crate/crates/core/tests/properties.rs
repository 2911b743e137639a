use proptest::prelude::*;

use wedgeconf::cecomplex::{
    act, enumerate_basis, multidegrees, permutation_action, CellComplex, Filter, WedgeSignature,
};
use wedgeconf::closedform::{e1_dimension, r_lambda, s2s3_pairing, schur_polynomial};
use wedgeconf::combinat::{kostka, partitions_of, verify_stirling_identity};
use wedgeconf::decomp::{parity_transpose, Convention, Entry, EquivDecomposition};
use wedgeconf::schar::{inner_product, irreducible_character};
use wedgeconf::symfunc::{Basis, SymFunc};
use wedgeconf::{qint, Partition, Q};

fn partition(max: usize) -> impl Strategy<Value = Partition> {
    (1..=max).prop_flat_map(|n| {
        let all = partitions_of(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn signature() -> impl Strategy<Value = WedgeSignature> {
    prop::collection::vec(1u32..=3, 1..=2).prop_map(|d| WedgeSignature::new(d).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<u8>> {
    Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stirling_identity(n in 0usize..=40, k in 0usize..=40) {
        prop_assume!(k <= n);
        let (a, b) = verify_stirling_identity(n, k);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn conjugation_is_an_involution(l in partition(12)) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().size(), l.size());
    }

    #[test]
    fn kostka_is_unitriangular(l in partition(7)) {
        for mu in partitions_of(l.size()) {
            let k = kostka(&l, &mu).unwrap();
            if mu == l {
                prop_assert_eq!(k, 1);
            } else if k > 0 {
                prop_assert!(l.dominates(&mu));
            }
        }
    }

    #[test]
    fn irreducibles_are_orthonormal(a in partition(6), b in partition(6)) {
        prop_assume!(a.size() == b.size());
        let ip = inner_product(&irreducible_character(&a), &irreducible_character(&b)).unwrap();
        prop_assert_eq!(ip, qint((a == b) as i64));
    }

    #[test]
    fn schur_power_sum_round_trip(l in partition(6)) {
        let s = SymFunc::basis_element(Basis::S, l.clone(), 6);
        let back = s.convert(Basis::P).convert(Basis::S);
        prop_assert_eq!(back.terms().len(), 1);
        prop_assert!(back.coeff(&l).is_one());
    }

    #[test]
    fn schur_polynomial_is_homogeneous_and_symmetric(
        l in partition(5), x in -3i64..=3, y in -3i64..=3, c in -2i64..=2
    ) {
        let v = schur_polynomial(&l, &[qint(x), qint(y)]);
        prop_assert_eq!(schur_polynomial(&l, &[qint(y), qint(x)]), v.clone());
        let scaled = schur_polynomial(&l, &[qint(c * x), qint(c * y)]);
        let mut f = Q::from_integer(1.into());
        for _ in 0..l.size() { f *= qint(c); }
        prop_assert_eq!(scaled, v * f);
    }

    #[test]
    fn r_coefficients_from_eigenvalues(a in 0usize..14, b in 0usize..14) {
        prop_assume!(a >= b);
        let mu = Partition::new(vec![a, b]);
        prop_assert_eq!(s2s3_pairing(&mu), qint(r_lambda(a, b).unwrap() as i64));
    }

    #[test]
    fn parity_transpose_is_an_involution(
        raw in prop::collection::vec((0usize..3, 0usize..=4, 1u64..4), 0..8), d in 1u32..=3
    ) {
        let n = 4;
        let mut dec = EquivDecomposition::new(n, Convention::Coefficient);
        for (pi, k, m) in raw {
            let p = pi.min(n - 1);
            let ks = partitions_of(k);
            let mu = ks[(m as usize) % ks.len()].clone();
            let lambda = partitions_of(n)[(m as usize) % 5].clone();
            dec.add(Entry { p, i: p + mu.size(), lambda, mu }, m);
        }
        let there = parity_transpose(&dec, d);
        prop_assert_eq!(there.convention, Convention::Evaluated(d));
        prop_assert_eq!(parity_transpose(&there, d), dec);
    }

    #[test]
    fn differential_squares_to_zero(sig in signature(), n in 1usize..=4, pick in 0usize..64) {
        let mds = multidegrees(n, sig.genus());
        let md = &mds[pick % mds.len()];
        let c = CellComplex::build(n, &sig, md).unwrap();
        for w in c.differentials.windows(2) {
            prop_assert!(w[0].mul(&w[1]).is_zero());
        }
    }

    #[test]
    fn action_commutes_with_differential(sig in signature(), (n, sigma) in (1usize..=4).prop_flat_map(|n| (Just(n), permutation(n))), pick in 0usize..64) {
        let mds = multidegrees(n, sig.genus());
        let md = &mds[pick % mds.len()];
        let c = CellComplex::build(n, &sig, md).unwrap();
        for (p, d) in c.differentials.iter().enumerate() {
            let a0 = permutation_action(&sigma, &c.columns[p], &sig).unwrap();
            let a1 = permutation_action(&sigma, &c.columns[p + 1], &sig).unwrap();
            prop_assert_eq!(a0.mul(d), d.mul(&a1));
        }
    }

    #[test]
    fn action_preserves_cells(sig in signature(), (n, sigma) in (1usize..=4).prop_flat_map(|n| (Just(n), permutation(n)))) {
        for e in enumerate_basis(n, &sig, &Filter::default()) {
            for (x, c) in act(&sigma, &e, &sig) {
                prop_assert!(c != 0);
                prop_assert_eq!(x.column(), e.column());
                prop_assert_eq!(x.multidegree(sig.genus()), e.multidegree(sig.genus()));
            }
        }
    }

    #[test]
    fn e1_counts_match_enumeration(n in 1usize..=5, d in 1u32..=2, g in 1usize..=2) {
        let sig = WedgeSignature::equidimensional(d, g);
        let all = enumerate_basis(n, &sig, &Filter::default());
        for p in 0..n {
            for q in 0..=d as usize * n {
                let got = all.iter().filter(|e| e.column() == p && e.internal_degree(&sig) as usize == q).count();
                prop_assert_eq!(e1_dimension(n, p, q, d as usize, g).dimension, got.into());
            }
        }
    }
}
