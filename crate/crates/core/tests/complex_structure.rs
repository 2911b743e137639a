use wedgeconf::cecomplex::{
    act, class_representative, enumerate_basis, multidegrees, CellComplex, Filter, ReducedModel, WedgeSignature,
};
use wedgeconf::combinat::{binomial_u64, partitions_of, stirling1_u64};
use wedgeconf::linalg::{normalize_row, SparseMatrix};

fn signatures() -> Vec<WedgeSignature> {
    ["1", "1,1", "2", "3", "1,2"].iter().map(|s| s.parse().unwrap()).collect()
}

#[test]
fn differential_squares_to_zero() {
    for sig in signatures() {
        let nmax = if sig.genus() == 1 { 6 } else { 5 };
        for n in 1..=nmax {
            for md in multidegrees(n, sig.genus()) {
                let c = CellComplex::build(n, &sig, &md).unwrap();
                for w in c.differentials.windows(2) {
                    assert!(w[0].mul(&w[1]).is_zero(), "d^2 != 0 at n={n} sig={sig:?} md={md:?}");
                }
            }
        }
    }
}

#[test]
fn differential_squares_to_zero_n6_two_summands() {
    let sig: WedgeSignature = "1,2".parse().unwrap();
    for md in [vec![1, 1], vec![2, 1], vec![1, 2]] {
        let c = CellComplex::build(6, &sig, &md).unwrap();
        for w in c.differentials.windows(2) {
            assert!(w[0].mul(&w[1]).is_zero(), "md={md:?}");
        }
    }
}

fn action_matrix(sigma: &[u8], basis: &[wedgeconf::cecomplex::CeElement], sig: &WedgeSignature) -> SparseMatrix {
    wedgeconf::cecomplex::permutation_action(sigma, basis, sig).unwrap()
}

#[test]
fn action_commutes_with_differential() {
    for sig in signatures() {
        for n in 2..=5 {
            let sigmas: Vec<Vec<u8>> = partitions_of(n).iter().map(class_representative).collect();
            // add a non-class-representative permutation too
            let mut extra: Vec<u8> = (1..=n as u8).collect();
            extra.rotate_left(1);
            extra.swap(0, n - 1);
            for md in multidegrees(n, sig.genus()) {
                let c = CellComplex::build(n, &sig, &md).unwrap();
                for s in sigmas.iter().chain(std::iter::once(&extra)) {
                    for (p, d) in c.differentials.iter().enumerate() {
                        let a0 = action_matrix(s, &c.columns[p], &sig);
                        let a1 = action_matrix(s, &c.columns[p + 1], &sig);
                        assert_eq!(a0.mul(d), d.mul(&a1), "n={n} sig={sig:?} md={md:?} p={p} sigma={s:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn action_is_a_group_action() {
    let sig: WedgeSignature = "1,2".parse().unwrap();
    let n = 4;
    let basis = enumerate_basis(n, &sig, &Filter::default());
    let s: Vec<u8> = vec![2, 3, 1, 4];
    let t: Vec<u8> = vec![1, 4, 3, 2];
    // (t ∘ s)(b) = t(s(b))
    let ts: Vec<u8> = s.iter().map(|&b| t[b as usize - 1]).collect();
    let idx: std::collections::HashMap<_, _> = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let mat = |sigma: &[u8]| {
        SparseMatrix::from_rows(
            basis.len(),
            basis
                .iter()
                .map(|e| normalize_row(act(sigma, e, &sig).into_iter().map(|(x, c)| (idx[&x], c)).collect()))
                .collect(),
        )
    };
    assert_eq!(mat(&s).mul(&mat(&t)), mat(&ts));
}

#[test]
fn circle_homology_concentrated_in_two_degrees() {
    for g in 1..=3 {
        let sig = WedgeSignature::circles(g);
        let nmax = [0, 6, 5, 4][g];
        for n in 1..=nmax {
            for md in multidegrees(n, g) {
                let h = CellComplex::build(n, &sig, &md).unwrap().homology();
                for ((_, i, _), d) in &h.dims {
                    assert!(*d == 0 || *i as usize == n || *i as usize + 1 == n, "n={n} g={g} md={md:?} i={i}");
                }
            }
        }
    }
}

#[test]
fn equidimensional_degree_pattern() {
    for d in [2u32, 3] {
        for g in 1..=2 {
            let sig = WedgeSignature::equidimensional(d, g);
            for n in 1..=5 {
                if g == 2 && n == 5 {
                    continue;
                }
                for md in multidegrees(n, g) {
                    let h = CellComplex::build(n, &sig, &md).unwrap().homology();
                    for (p, i, _) in h.dims.keys() {
                        let (n, p, d, i) = (n as i64, *p as i64, d as i64, *i as i64);
                        assert!(i == d * n - (d - 1) * p || i == d * (n - 1) - (d - 1) * p, "n={n} d={d} p={p} i={i}");
                    }
                }
            }
        }
    }
}

#[test]
fn rows_exact_below_top_two_columns() {
    for sig in signatures() {
        let nmax = if sig.genus() == 1 { 6 } else { 5 };
        for n in 1..=nmax {
            for md in multidegrees(n, sig.genus()) {
                let k: usize = md.iter().sum();
                let h = CellComplex::build(n, &sig, &md).unwrap().homology();
                for (p, _, _) in h.dims.keys() {
                    assert!(*p + 1 >= n - k, "n={n} sig={sig:?} md={md:?} p={p}");
                }
                let (eh, ec) = h.euler_characteristics();
                assert_eq!(eh, ec);
            }
        }
    }
}

#[test]
fn reduced_model_matches_full_complex() {
    for sig in signatures() {
        let nmax = if sig.genus() == 1 { 6 } else { 4 };
        for n in 1..=nmax {
            for md in multidegrees(n, sig.genus()) {
                let k: usize = md.iter().sum();
                let full = CellComplex::build(n, &sig, &md).unwrap();
                let chars = full.homology_characters().unwrap();
                let red = ReducedModel::build(n, &sig, &md).unwrap();
                let rc = red.characters();
                assert_eq!(chars[n - k], rc.top, "top n={n} sig={sig:?} md={md:?}");
                if k < n {
                    assert_eq!(chars[n - k - 1], rc.below, "below n={n} sig={sig:?} md={md:?}");
                }
                let dims = red.dims();
                assert_eq!(rc.top.degree(), wedgeconf::qint(dims.top as i64));
                assert_eq!(rc.below.degree(), wedgeconf::qint(dims.below as i64));
            }
        }
    }
}

#[test]
fn e1_counts_through_n7() {
    let sig = WedgeSignature::circles(1);
    for n in 1..=7 {
        for p in 0..n {
            for k in 0..=n - p {
                let count = enumerate_basis(n, &sig, &Filter::cell(p, &[k])).len() as u64;
                assert_eq!(count, stirling1_u64(n, n - p) * binomial_u64(n - p, k), "n={n} p={p} k={k}");
            }
        }
    }
}
