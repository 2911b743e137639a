//! From homology characters to Schur-functor multiplicities.
//!
//! The S_n-character of the multidegree-`μ` part of the homology, for `X` a
//! wedge of `ℓ(μ)` spheres, equals `Σ_ν K_{ν,μ} χ(Φ[ν])`; solving this
//! unitriangular system down the dominance order recovers every `Φ[ν]`.
//!
//! Two conventions are in use. In the coefficient convention `Φ^p[n,λ,μ]` is
//! recorded in degree `i = p + |μ|`; evaluating on a wedge of `d`-spheres
//! places it in degree `p + d|μ|` and, for odd `d`, transposes `μ`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cecomplex::{ReducedModel, WedgeSignature};
use crate::combinat::{kostka, partitions_of};
use crate::schar::{decompose, ClassFunction};
use crate::{qint, Error, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    Coefficient,
    /// Evaluated on a wedge of spheres of the given dimension.
    Evaluated(u32),
}

pub const CIRCLE_EVALUATED: Convention = Convention::Evaluated(1);

/// Key of one multiplicity: collision column, cohomological degree, Specht
/// module, Schur functor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Entry {
    pub p: usize,
    pub i: usize,
    pub lambda: Partition,
    pub mu: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivDecomposition {
    pub n: usize,
    pub convention: Convention,
    pub entries: BTreeMap<Entry, u64>,
}

impl EquivDecomposition {
    pub fn new(n: usize, convention: Convention) -> Self {
        EquivDecomposition { n, convention, entries: BTreeMap::new() }
    }

    pub fn add(&mut self, e: Entry, m: u64) {
        if m > 0 {
            *self.entries.entry(e).or_insert(0) += m;
        }
    }

    pub fn get(&self, p: usize, i: usize, lambda: &Partition, mu: &Partition) -> u64 {
        let e = Entry { p, i, lambda: lambda.clone(), mu: mu.clone() };
        self.entries.get(&e).copied().unwrap_or(0)
    }

    /// Multiplicities in degree `i`, keyed by `(λ, μ)` and summed over `p`.
    pub fn in_degree(&self, i: usize) -> BTreeMap<(Partition, Partition), u64> {
        let mut out = BTreeMap::new();
        for (e, &m) in &self.entries {
            if e.i == i {
                *out.entry((e.lambda.clone(), e.mu.clone())).or_insert(0) += m;
            }
        }
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.entries.keys().map(|e| e.i).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Checks the structural constraints on the support.
    pub fn check_invariants(&self) -> Result<(), Error> {
        let n = self.n;
        for e in self.entries.keys() {
            let k = e.mu.size();
            if e.lambda.size() != n || e.p > n.saturating_sub(1).max(if n == 0 { 0 } else { n - 1 }) {
                return Err(Error::Inconsistent(format!("entry {e:?} out of range")));
            }
            if k + e.p != n && k + e.p + 1 != n {
                return Err(Error::Inconsistent(format!("entry {e:?}: |mu| not in {{n-p-1, n-p}}")));
            }
            let expect_i = match self.convention {
                Convention::Coefficient => e.p + k,
                Convention::Evaluated(d) => e.p + d as usize * k,
            };
            if e.i != expect_i {
                return Err(Error::Inconsistent(format!("entry {e:?}: wrong degree")));
            }
            if self.convention == CIRCLE_EVALUATED && e.i + 1 != n && e.i != n {
                return Err(Error::Inconsistent(format!("entry {e:?}: degree not in {{n-1, n}}")));
            }
        }
        Ok(())
    }
}

/// Converts between the coefficient convention and evaluation on a wedge of
/// `d`-spheres; applying it twice with the same `d` is the identity.
pub fn parity_transpose(dec: &EquivDecomposition, d: u32) -> EquivDecomposition {
    match dec.convention {
        Convention::Coefficient => {
            let mut out = EquivDecomposition::new(dec.n, Convention::Evaluated(d));
            for (e, &m) in &dec.entries {
                let mu = if d % 2 == 1 { e.mu.conjugate() } else { e.mu.clone() };
                let i = e.p + d as usize * e.mu.size();
                out.add(Entry { p: e.p, i, lambda: e.lambda.clone(), mu }, m);
            }
            out
        }
        Convention::Evaluated(e0) => {
            let mut coef = EquivDecomposition::new(dec.n, Convention::Coefficient);
            for (e, &m) in &dec.entries {
                let mu = if e0 % 2 == 1 { e.mu.conjugate() } else { e.mu.clone() };
                let i = e.p + mu.size();
                coef.add(Entry { p: e.p, i, lambda: e.lambda.clone(), mu }, m);
            }
            if e0 == d {
                coef
            } else {
                parity_transpose(&coef, d)
            }
        }
    }
}

/// The S_n-character of the homology of the multidegree-`μ` subcomplex for
/// a wedge of `ℓ(μ)` circles, in column `p` and degree `i`.
pub fn weightspace_character(n: usize, mu: &Partition, p: usize, i: usize) -> Result<ClassFunction, Error> {
    weightspace_character_at(n, mu, mu.len(), p, i)
}

/// As [`weightspace_character`], on a wedge of `g ≥ ℓ(μ)` circles.
pub fn weightspace_character_at(
    n: usize,
    mu: &Partition,
    g: usize,
    p: usize,
    i: usize,
) -> Result<ClassFunction, Error> {
    let k = mu.size();
    if k > n || g < mu.len() {
        return Err(Error::InvalidQuery(format!("weight {mu} does not fit n={n}, g={g}")));
    }
    let mut md = mu.parts().to_vec();
    md.resize(g, 0);
    if i != p + k || p + k > n || p + k + 1 < n {
        return Ok(ClassFunction::zero(n));
    }
    let model = ReducedModel::build(n, &WedgeSignature::circles(g), &md)?;
    let c = model.characters();
    Ok(if p + k == n { c.top } else { c.below })
}

/// Solves `W(μ) = Σ_{ν ⊵ μ} K_{ν,μ} Φ(ν)` for `Φ`, given `W` on all partitions
/// of one size; returns the irreducible decomposition of every `Φ(ν)`.
pub fn kostka_invert(
    n: usize,
    weights: &BTreeMap<Partition, ClassFunction>,
) -> Result<BTreeMap<(Partition, Partition), u64>, Error> {
    let mut by_size: BTreeMap<usize, Vec<&Partition>> = BTreeMap::new();
    for (mu, w) in weights {
        if w.n() != n {
            return Err(Error::InvalidQuery(format!("character for {mu} is not a class function on S_{n}")));
        }
        by_size.entry(mu.size()).or_default().push(mu);
    }
    let mut out = BTreeMap::new();
    for (k, _) in by_size {
        let mut phi: BTreeMap<Partition, ClassFunction> = BTreeMap::new();
        for nu in partitions_of(k) {
            let w =
                weights.get(&nu).ok_or_else(|| Error::InvalidQuery(format!("missing weight character for {nu}")))?;
            let mut f = w.clone();
            for (kappa, c) in &phi {
                let kk = kostka(kappa, &nu)?;
                if kk > 0 {
                    f = &f - &c.scale(&qint(kk as i64));
                }
            }
            phi.insert(nu, f);
        }
        for (nu, f) in phi {
            for (lambda, m) in genuine(&f, &nu)? {
                out.insert((lambda, nu.clone()), m);
            }
        }
    }
    Ok(out)
}

fn genuine(f: &ClassFunction, nu: &Partition) -> Result<Vec<(Partition, u64)>, Error> {
    let mut out = Vec::new();
    for (lambda, m) in decompose(f)? {
        let m: i64 = m.try_into().map_err(|_| Error::Inconsistent(format!("multiplicity overflow at {nu}")))?;
        if m < 0 {
            return Err(Error::Inconsistent(format!("negative multiplicity {m} of {lambda} at weight {nu}")));
        }
        out.push((lambda, m as u64));
    }
    Ok(out)
}

/// How weight-space characters are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Every weight from a wedge of circles.
    Circles,
    /// Weights `ν` with `ℓ(ν) ≤ ν_1` from circles, the others from
    /// 2-spheres at the transposed weight; keeps every model small.
    DualParity,
}

struct ColumnChars {
    top: ClassFunction,
    below: ClassFunction,
}

fn model_chars(n: usize, sig: &WedgeSignature, md: &[usize]) -> Result<ColumnChars, Error> {
    let c = ReducedModel::build(n, sig, md)?.characters();
    Ok(ColumnChars { top: c.top, below: c.below })
}

/// The complete decomposition in the circle-evaluated convention.
pub fn full_decomposition(n: usize) -> Result<EquivDecomposition, Error> {
    full_decomposition_with(n, Strategy::DualParity)
}

pub fn full_decomposition_with(n: usize, strategy: Strategy) -> Result<EquivDecomposition, Error> {
    Ok(parity_transpose(&coefficient_decomposition(n, strategy)?, 1))
}

/// The complete decomposition in the coefficient convention.
pub fn coefficient_decomposition(n: usize, strategy: Strategy) -> Result<EquivDecomposition, Error> {
    if n == 0 {
        return Err(Error::InvalidQuery("n must be at least 1".into()));
    }
    let mut jobs: Vec<(Partition, bool)> = Vec::new();
    for k in 0..=n {
        for nu in partitions_of(k) {
            let circle = strategy == Strategy::Circles || nu.len() <= nu.width();
            jobs.push((nu, circle));
        }
    }
    let results: Vec<Result<ColumnChars, Error>> = jobs
        .par_iter()
        .map(|(nu, circle)| {
            if *circle {
                model_chars(n, &WedgeSignature::circles(nu.len()), nu.parts())
            } else {
                let tau = nu.conjugate();
                model_chars(n, &WedgeSignature::equidimensional(2, tau.len()), tau.parts())
            }
        })
        .collect();
    let mut chars: BTreeMap<Partition, (bool, ColumnChars)> = BTreeMap::new();
    for ((nu, circle), r) in jobs.into_iter().zip(results) {
        chars.insert(nu, (circle, r?));
    }
    let mut coef = EquivDecomposition::new(n, Convention::Coefficient);
    for k in 0..=n {
        let parts = partitions_of(k);
        for top in [true, false] {
            if !top && k == n {
                continue;
            }
            let p = if top { n - k } else { n - k - 1 };
            let pick = |c: &ColumnChars| if top { c.top.clone() } else { c.below.clone() };
            // circle-evaluated Φ, keyed by ν
            let mut phi: BTreeMap<Partition, ClassFunction> = BTreeMap::new();
            for nu in parts.iter().filter(|nu| chars[*nu].0) {
                let mut f = pick(&chars[nu].1);
                for (kappa, c) in &phi {
                    let kk = kostka(kappa, nu)?;
                    if kk > 0 {
                        f = &f - &c.scale(&qint(kk as i64));
                    }
                }
                phi.insert(nu.clone(), f);
            }
            for nu in parts.iter().rev().filter(|nu| !chars[*nu].0) {
                let tau = nu.conjugate();
                let mut f = pick(&chars[nu].1);
                for (kappa_t, c) in &phi {
                    if chars[kappa_t].0 {
                        continue;
                    }
                    let kappa = kappa_t.conjugate();
                    let kk = kostka(&kappa, &tau)?;
                    if kk > 0 {
                        f = &f - &c.scale(&qint(kk as i64));
                    }
                }
                phi.insert(nu.clone(), f);
            }
            for (nu, f) in phi {
                for (lambda, m) in genuine(&f, &nu)? {
                    let mu = nu.conjugate();
                    let i = p + mu.size();
                    coef.add(Entry { p, i, lambda, mu }, m);
                }
            }
        }
    }
    coef.check_invariants()?;
    Ok(coef)
}

/// The `λ`-isotypic row: `(i, μ) → multiplicity`.
pub fn isotypic(dec: &EquivDecomposition, lambda: &Partition) -> BTreeMap<(usize, Partition), u64> {
    let mut out = BTreeMap::new();
    for (e, &m) in &dec.entries {
        if &e.lambda == lambda {
            *out.entry((e.i, e.mu.clone())).or_insert(0) += m;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schar::irreducible_character;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn weightspace_examples() {
        assert_eq!(weightspace_character(3, &p("(1,1)"), 0, 2).unwrap(), irreducible_character(&p("(1,1,1)")));
        // summed over p at i = 2 there is only p = 0
        assert!(weightspace_character(3, &p("(1,1)"), 1, 2).unwrap().is_zero());
        assert_eq!(weightspace_character(2, &p("(1)"), 0, 1).unwrap(), irreducible_character(&p("(1,1)")));
        assert!(weightspace_character(3, &p("(3)"), 0, 2).unwrap().is_zero());
    }

    #[test]
    fn kostka_invert_trivial_cases() {
        let mut w = BTreeMap::new();
        w.insert(p("(2)"), irreducible_character(&p("(3)")));
        w.insert(p("(1,1)"), irreducible_character(&p("(3)")));
        let out = kostka_invert(3, &w).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[&(p("(3)"), p("(2)"))], 1);
        let zero: BTreeMap<Partition, ClassFunction> =
            partitions_of(2).into_iter().map(|m| (m, ClassFunction::zero(3))).collect();
        assert!(kostka_invert(3, &zero).unwrap().is_empty());
        let mut bad = BTreeMap::new();
        bad.insert(p("(2)"), ClassFunction::zero(3));
        bad.insert(p("(1,1)"), irreducible_character(&p("(3)")).scale(&qint(-1)));
        assert!(kostka_invert(3, &bad).is_err());
    }

    #[test]
    fn parity_transpose_involution() {
        let dec = full_decomposition(3).unwrap();
        let coef = parity_transpose(&dec, 1);
        assert_eq!(coef.convention, Convention::Coefficient);
        assert_eq!(parity_transpose(&coef, 1), dec);
        let even = parity_transpose(&coef, 2);
        for e in even.entries.keys() {
            assert_eq!(e.i, e.p + 2 * e.mu.size());
        }
        assert_eq!(parity_transpose(&even, 2), coef);
    }

    #[test]
    fn n2_and_n1() {
        let dec = full_decomposition(2).unwrap();
        assert_eq!(dec.get(0, 1, &p("(1,1)"), &p("(1)")), 1);
        let d1 = full_decomposition(1).unwrap();
        assert_eq!(d1.entries.len(), 2);
        assert_eq!(d1.get(0, 0, &p("(1)"), &Partition::empty()), 1);
        assert_eq!(d1.get(0, 1, &p("(1)"), &p("(1)")), 1);
    }
}
