//! Acceptance checks, shared by `selftest` and the acceptance test binary.
//! Each criterion returns a pass/fail verdict with a one-line detail.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use wedgeconf::cecomplex::{
    class_representative, enumerate_basis, multidegrees, permutation_action, CellComplex, Filter, WedgeSignature,
};
use wedgeconf::closedform::{
    e1_dimension, euler_equivariant, euler_nonequivariant, exterior_multiplicity_char, m2n_weight0, scalar_trace,
    schur_polynomial, sym_multiplicity_char, sym_multiplicity_stirling, SignedDecomposition,
};
use wedgeconf::combinat::{hook_dim, partitions_of, verify_stirling_identity};
use wedgeconf::decomp::{
    full_decomposition, isotypic, parity_transpose, weightspace_character, weightspace_character_at, Convention, Entry,
    EquivDecomposition,
};
use wedgeconf::refdata::{ReferenceTable, M2N_DIMENSIONS};
use wedgeconf::schar::{irreducible_character, ClassFunction};
use wedgeconf::symfunc::{dimension, getzler_m0n, m0n_poincare, whitehouse_characters, whitehouse_poincare};
use wedgeconf::{qint, Partition, Q};

#[derive(Clone, Debug)]
pub struct Verdict {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type Outcome = Result<String, String>;

/// Caches decompositions so that every criterion sees the same data.
#[derive(Default)]
pub struct Session {
    decs: Mutex<BTreeMap<usize, Arc<EquivDecomposition>>>,
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn decomposition(&self, n: usize) -> Result<Arc<EquivDecomposition>, String> {
        if let Some(d) = self.decs.lock().unwrap().get(&n) {
            return Ok(d.clone());
        }
        let d = Arc::new(full_decomposition(n).map_err(|e| format!("n={n}: {e}"))?);
        self.decs.lock().unwrap().insert(n, d.clone());
        Ok(d)
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Sum of `m · χ^λ` over the entries of degree `i` with Schur functor `μ`.
pub fn column_character(dec: &EquivDecomposition, i: usize, mu: &Partition) -> ClassFunction {
    let mut f = ClassFunction::zero(dec.n);
    for ((l, m), c) in dec.in_degree(i) {
        if &m == mu {
            f = &f + &irreducible_character(&l).scale(&qint(c as i64));
        }
    }
    f
}

pub fn table_reproduction(s: &Session) -> Outcome {
    let mut total = 0;
    for n in 2..=7 {
        let dec = s.decomposition(n)?;
        let got = ReferenceTable::from_decomposition(&dec, n - 1).map_err(err)?;
        let reference = ReferenceTable::bundled(n).map_err(err)?;
        let diff = reference.diff(&got);
        ensure(diff.is_empty(), || format!("n={n}: {} mismatches, first {:?}", diff.len(), diff[0]))?;
        total += reference.rows.len();
    }
    Ok(format!("n=2..7 equal to the reference tables ({total} rows)"))
}

pub fn stirling(_: &Session) -> Outcome {
    let sig = WedgeSignature::circles(1);
    for n in 1..=9 {
        for k in 0..=n {
            let model = wedgeconf::cecomplex::ReducedModel::build(n, &sig, &[k]).map_err(err)?;
            let d = model.dims();
            let below = sym_multiplicity_stirling(n, k, 1);
            let top = sym_multiplicity_stirling(n, k, 0);
            ensure(below == d.below.into() && top == d.top.into(), || {
                format!("n={n} k={k}: homology ({}, {}) vs Stirling ({below}, {top})", d.below, d.top)
            })?;
        }
    }
    Ok("weight-k dimensions equal |s(n-1,k)| and |s(n-1,k-1)| for n <= 9".into())
}

pub fn getzler_whitehouse(s: &Session) -> Outcome {
    let mut checked = 0;
    for n in 3..=7 {
        let dec = s.decomposition(n)?;
        for codim in [0u8, 1] {
            let i = n - codim as usize;
            for m in 0..=n {
                let ext = exterior_multiplicity_char(n, m, codim).map_err(err)?;
                ensure(ext == column_character(&dec, i, &Partition::column(m)), || {
                    format!("exterior n={n} m={m} codim={codim}")
                })?;
                let sym = sym_multiplicity_char(n, m, codim).map_err(err)?;
                ensure(sym == column_character(&dec, i, &Partition::row(m)), || {
                    format!("symmetric n={n} m={m} codim={codim}")
                })?;
                checked += 2;
            }
        }
        let g = getzler_m0n(n).map_err(err)?;
        let poly = m0n_poincare(n);
        for i in 0..=n {
            let dim = g.get(&i).map(|f| dimension(f, n)).unwrap_or_default();
            let sign = if i % 2 == 1 { qint(-1) } else { qint(1) };
            ensure(dim == poly.coeff(i as i32) * sign, || format!("M_(0,{n}) dimension in degree {i}"))?;
        }
        let w = whitehouse_characters(n).map_err(err)?;
        let poly = whitehouse_poincare(n);
        for deg in 0..=2 * n {
            let dim = w.get(&deg).map(|f| dimension(f, n)).unwrap_or_default();
            ensure(dim == poly.coeff(deg as i32), || format!("Whitehouse n={n} degree {deg}"))?;
        }
    }
    Ok(format!("{checked} multiplicity characters equal for n=3..7; Poincare polynomials match"))
}

fn point_decomposition() -> EquivDecomposition {
    let mut d = EquivDecomposition::new(0, Convention::Evaluated(1));
    d.add(Entry { p: 0, i: 0, lambda: Partition::empty(), mu: Partition::empty() }, 1);
    d
}

pub fn m2n(s: &Session) -> Outcome {
    let mut dims = Vec::new();
    for n in 0..=7 {
        let dec = if n == 0 { Arc::new(point_decomposition()) } else { s.decomposition(n)? };
        let w = m2n_weight0(n, &dec).map_err(err)?;
        dims.push(w.dimensions[&(n + 2)].clone());
    }
    let expect: Vec<BigInt> = M2N_DIMENSIONS[..8].iter().map(|&d| BigInt::from(d)).collect();
    ensure(dims == expect, || format!("dimensions {dims:?}, expected {expect:?}"))?;
    Ok(format!("dimensions {dims:?} for n=0..7; both routes agree"))
}

fn structural_complexes() -> Outcome {
    let sigs: Vec<WedgeSignature> = ["1", "1,1", "2", "3", "1,2"].iter().map(|s| s.parse().unwrap()).collect();
    let mut count = 0;
    for sig in &sigs {
        for n in 1..=6 {
            for md in multidegrees(n, sig.genus()) {
                let k: usize = md.iter().sum();
                let c = CellComplex::build(n, sig, &md).map_err(err)?;
                for w in c.differentials.windows(2) {
                    ensure(w[0].mul(&w[1]).is_zero(), || format!("d^2 != 0: n={n} sig={sig:?} md={md:?}"))?;
                }
                let h = c.homology();
                for (p, _, _) in h.dims.keys() {
                    ensure(*p + 1 >= n - k, || format!("homology off the top two columns: n={n} md={md:?}"))?;
                }
                let (eh, ec) = h.euler_characteristics();
                ensure(eh == ec, || format!("Euler mismatch n={n} md={md:?}"))?;
                if n <= 5 {
                    for rho in partitions_of(n) {
                        let sigma = class_representative(&rho);
                        for (p, d) in c.differentials.iter().enumerate() {
                            let a0 = permutation_action(&sigma, &c.columns[p], sig).map_err(err)?;
                            let a1 = permutation_action(&sigma, &c.columns[p + 1], sig).map_err(err)?;
                            ensure(a0.mul(d) == d.mul(&a1), || format!("not equivariant: n={n} md={md:?}"))?;
                        }
                    }
                }
                count += 1;
            }
        }
    }
    for g in 1..=3 {
        let sig = WedgeSignature::circles(g);
        for n in 1..=6 {
            for md in multidegrees(n, g) {
                let h = CellComplex::build(n, &sig, &md).map_err(err)?.homology();
                for ((_, i, _), d) in &h.dims {
                    let i = *i as usize;
                    ensure(*d == 0 || i == n || i + 1 == n, || format!("circles n={n} g={g} md={md:?} i={i}"))?;
                }
            }
        }
    }
    for d in [2u32, 3] {
        for g in 1..=2 {
            let sig = WedgeSignature::equidimensional(d, g);
            for n in 1..=5 {
                for md in multidegrees(n, g) {
                    let h = CellComplex::build(n, &sig, &md).map_err(err)?.homology();
                    for (p, i, _) in h.dims.keys() {
                        let (n, p, d, i) = (n as i64, *p as i64, d as i64, *i as i64);
                        ensure(i == d * n - (d - 1) * p || i == d * (n - 1) - (d - 1) * p, || {
                            format!("spheres d={d} n={n} p={p} i={i}")
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!("{count} complexes"))
}

fn structural_coefficients(s: &Session) -> Outcome {
    for n in 1..=6 {
        let coef = parity_transpose(&*s.decomposition(n)?, 1);
        let mut diag = BTreeMap::new();
        let mut sub = BTreeMap::new();
        for (e, &m) in &coef.entries {
            if e.p == 0 && e.mu.size() == n {
                diag.insert((e.lambda.clone(), e.mu.clone()), m);
            }
            if e.p == 0 && e.mu.size() + 1 == n {
                sub.insert((e.lambda.clone(), e.mu.clone()), m);
            }
        }
        let expect: BTreeMap<_, _> = partitions_of(n).into_iter().map(|l| ((l.clone(), l), 1)).collect();
        ensure(diag == expect, || format!("Phi^0[{n},{n}] is not diagonal: {diag:?}"))?;
        let mut expect = BTreeMap::new();
        expect.insert((Partition::column(n), Partition::column(n - 1)), 1);
        ensure(sub == expect, || format!("Phi^0[{n},{}] = {sub:?}", n - 1))?;
    }
    for n in 1..=5 {
        for k in 0..=n {
            for mu in partitions_of(k) {
                let g = mu.len();
                for p in [n - k, (n - k).saturating_sub(1)] {
                    let i = p + k;
                    let base = weightspace_character(n, &mu, p, i).map_err(err)?;
                    let more = weightspace_character_at(n, &mu, g + 1, p, i).map_err(err)?;
                    ensure(base == more, || format!("genus bound fails at n={n} mu={mu}"))?;
                }
            }
        }
    }
    Ok("Phi^0 diagonal and sign formula for n <= 6; genus bound for n <= 5".into())
}

fn structural_counts() -> Outcome {
    for n in 0..=40 {
        for k in 0..=n {
            let (a, b) = verify_stirling_identity(n, k);
            ensure(a == b, || format!("Stirling identity fails at ({n},{k})"))?;
        }
    }
    for (g, d, nmax) in [(1usize, 1u32, 7usize), (2, 1, 5), (1, 2, 6), (2, 2, 5)] {
        let sig = WedgeSignature::equidimensional(d, g);
        for n in 1..=nmax {
            let all = enumerate_basis(n, &sig, &Filter::default());
            let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
            for e in &all {
                *counts.entry((e.column(), e.internal_degree(&sig) as usize)).or_insert(0) += 1;
            }
            for p in 0..=n {
                for q in 0..=d as usize * n {
                    let got = counts.get(&(p, q)).copied().unwrap_or(0);
                    let want = e1_dimension(n, p, q, d as usize, g).dimension;
                    ensure(want == got.into(), || format!("E1 count n={n} p={p} q={q} d={d} g={g}"))?;
                }
            }
        }
    }
    Ok("Stirling identity n <= 40; E1 counts n <= 7".into())
}

pub fn structural(s: &Session) -> Outcome {
    let a = structural_complexes()?;
    let b = structural_coefficients(s)?;
    let c = structural_counts()?;
    Ok(format!("{a}; {b}; {c}"))
}

pub fn euler(s: &Session) -> Outcome {
    for n in 1..=7 {
        let dec = s.decomposition(n)?;
        let chain = euler_equivariant(n).map_err(err)?;
        let hom = SignedDecomposition::top_minus_codim_one(&dec).map_err(err)?;
        ensure(chain == hom, || format!("n={n}: chain-level Euler characteristic differs from homology"))?;
        let dims = hom.dimensions();
        let sign = if n % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        for q in 0..=n {
            for mu in partitions_of(q) {
                let got = dims.get(&mu).cloned().unwrap_or_default() * &sign;
                let want = euler_nonequivariant(n, &mu);
                ensure(got == want, || format!("n={n} mu={mu}: {got} vs closed form {want}"))?;
            }
        }
    }
    Ok("equivariant and nonequivariant Euler characteristics agree for n <= 7".into())
}

pub fn traces(s: &Session) -> Outcome {
    let at = |mu: &str, x: i64, y: i64| schur_polynomial(&mu.parse().unwrap(), &[qint(x), qint(y)]);
    let table = [("(2,1)", [(1, 1, 2), (2, 1, 6), (2, 2, 16)]), ("(4,2)", [(1, 1, 3), (2, 1, 28), (2, 2, 192)])];
    for (mu, vals) in table {
        for (x, y, v) in vals {
            ensure(at(mu, x, y) == qint(v), || format!("s_{mu}({x},{y}) != {v}"))?;
        }
    }
    for n in 1..=6 {
        let dec = s.decomposition(n)?;
        for g in 1..=if n <= 5 { 3 } else { 2 } {
            let sig = WedgeSignature::circles(g);
            for c in [2i64, 3] {
                let scale = vec![qint(c); g];
                for i in [n - 1, n] {
                    let mut direct = Q::default();
                    for p in 0..n {
                        direct += wedgeconf::cecomplex::diagonal_trace(n, &sig, &scale, p, i as u32).map_err(err)?;
                    }
                    let from_dec = scalar_trace(&dec, i, g, &qint(c)).map_err(err)?;
                    ensure(direct == from_dec, || format!("n={n} g={g} c={c} i={i}: {direct} vs {from_dec}"))?;
                }
            }
        }
    }
    Ok("Schur polynomial values exact; scalar traces agree for n <= 6".into())
}

pub fn beads(s: &Session) -> Outcome {
    for n in 2..=7 {
        let dec = s.decomposition(n)?;
        if n >= 3 {
            let hook = Partition::new([vec![2], vec![1; n - 2]].concat());
            let row = isotypic(&dec, &hook);
            ensure(row.keys().all(|(i, _)| *i != n - 1), || format!("({hook}) row nonzero in degree {}", n - 1))?;
        }
        let row: Vec<_> = isotypic(&dec, &Partition::column(n)).into_iter().filter(|((i, _), _)| *i == n - 1).collect();
        ensure(row == vec![((n - 1, Partition::row(n - 1)), 1)], || format!("sign row at n={n}: {row:?}"))?;
    }
    Ok("(2,1^(n-2)) rows vanish and (1^n) rows equal S_(n-1) for n <= 7".into())
}

pub const CRITERIA: [(usize, &str, fn(&Session) -> Outcome); 8] = [
    (1, "table reproduction", table_reproduction),
    (2, "Stirling cross-check", stirling),
    (3, "Getzler/Whitehouse oracles", getzler_whitehouse),
    (4, "M_(2,n) dimensions", m2n),
    (5, "structural properties", structural),
    (6, "Euler consistency", euler),
    (7, "Schur polynomial traces", traces),
    (8, "bead closed forms", beads),
];

pub fn run(id: usize, s: &Session) -> Verdict {
    let (_, title, f) = CRITERIA[id - 1];
    let start = Instant::now();
    let r = f(s);
    let elapsed = start.elapsed();
    let (passed, detail) = match r {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Verdict { id, title, passed, detail, elapsed }
}

/// Total dimension `Σ m · f^λ` of a degree of a decomposition.
pub fn total_dimension(dec: &EquivDecomposition, i: usize) -> u64 {
    dec.in_degree(i).iter().map(|((l, _), m)| m * hook_dim(l)).sum()
}
