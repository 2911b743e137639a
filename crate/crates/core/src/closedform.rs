//! Closed formulas for parts of the cohomology, kept independent of the
//! homology computation so they can serve as checks on it.
//!
//! Everything here is read in the circle-evaluated convention unless noted:
//! a Schur functor `S_μ` means `S_μ` applied to `H̃¹` of a wedge of circles.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cecomplex::{chain_trace, class_representative, enumerate_basis, Filter, WedgeSignature};
use crate::combinat::{binomial, factorial, hook_dim, kostka, partitions_of, stirling1_unsigned};
use crate::decomp::{Convention, EquivDecomposition, CIRCLE_EVALUATED};
use crate::schar::{character_value, class_function_of, decompose, ClassFunction};
use crate::symfunc::{getzler_m0n, whitehouse_characters};
use crate::{qint, Error, Partition, Q};

/// Multiplicity of `Sym^k(H̃¹)` in `H^{n-codim}_c`, nonequivariantly: the
/// total dimension of its multiplicity space.
pub fn sym_multiplicity_stirling(n: usize, k: usize, codim: u8) -> BigUint {
    if n == 0 {
        return BigUint::from((k == 0 && codim == 0) as u32);
    }
    match codim {
        1 => stirling1_unsigned(n - 1, k),
        0 if k == 0 => BigUint::zero(),
        0 => stirling1_unsigned(n - 1, k - 1),
        _ => BigUint::zero(),
    }
}

/// Summands `T^k` in the `E_1` term at `(p, q)` for a wedge of `g`
/// spheres of dimension `d`, and their total dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Count {
    pub copies: BigUint,
    pub dimension: BigUint,
}

pub fn e1_dimension(n: usize, p: usize, q: usize, d: usize, g: usize) -> E1Count {
    let zero = E1Count { copies: BigUint::zero(), dimension: BigUint::zero() };
    if d == 0 || !q.is_multiple_of(d) || p > n {
        return zero;
    }
    let k = q / d;
    if p + k > n {
        return zero;
    }
    let copies = stirling1_unsigned(n, n - p) * binomial(n - p, k);
    let dimension = &copies * BigUint::from(g).pow(k as u32);
    E1Count { copies, dimension }
}

/// Euler characteristic `Σ_i (-1)^i` of the multiplicity space of `S_λ`,
/// `|λ| = q`: `(-1)^{n-1} (|s(n-1,q)| - |s(n-1,q-1)|) f^λ` with `f^λ` the
/// number of standard tableaux. Equals `(-1)^n` times (count in `H^n`
/// minus count in `H^{n-1}`).
pub fn euler_nonequivariant(n: usize, lambda: &Partition) -> BigInt {
    let q = lambda.size();
    if n == 0 || q > n {
        return BigInt::from((n == 0 && q == 0) as i32);
    }
    let a = BigInt::from(stirling1_unsigned(n - 1, q));
    let b = if q == 0 { BigInt::zero() } else { BigInt::from(stirling1_unsigned(n - 1, q - 1)) };
    let sign = if (n - 1).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    sign * (a - b) * BigInt::from(hook_dim(lambda))
}

/// Integer combination of `S^λ ⊠ S_μ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignedDecomposition {
    pub n: usize,
    pub entries: BTreeMap<(Partition, Partition), BigInt>,
}

impl SignedDecomposition {
    pub fn new(n: usize) -> Self {
        SignedDecomposition { n, entries: BTreeMap::new() }
    }

    pub fn add(&mut self, lambda: Partition, mu: Partition, m: BigInt) {
        let e = self.entries.entry((lambda, mu)).or_insert_with(BigInt::zero);
        *e += m;
        self.entries.retain(|_, v| !v.is_zero());
    }

    pub fn get(&self, lambda: &Partition, mu: &Partition) -> BigInt {
        self.entries.get(&(lambda.clone(), mu.clone())).cloned().unwrap_or_default()
    }

    /// `dec(i=n) - dec(i=n-1)` of a circle-evaluated decomposition.
    pub fn top_minus_codim_one(dec: &EquivDecomposition) -> Result<Self, Error> {
        if dec.convention != CIRCLE_EVALUATED {
            return Err(Error::InvalidQuery("expected the circle-evaluated convention".into()));
        }
        let n = dec.n;
        let mut out = SignedDecomposition::new(n);
        for ((l, m), c) in dec.in_degree(n) {
            out.add(l, m, BigInt::from(c));
        }
        if n > 0 {
            for ((l, m), c) in dec.in_degree(n - 1) {
                out.add(l, m, -BigInt::from(c));
            }
        }
        Ok(out)
    }

    /// `Σ_λ m · f^λ` per Schur functor.
    pub fn dimensions(&self) -> BTreeMap<Partition, BigInt> {
        let mut out: BTreeMap<Partition, BigInt> = BTreeMap::new();
        for ((l, m), c) in &self.entries {
            *out.entry(m.clone()).or_default() += c * BigInt::from(hook_dim(l));
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// Character of the weight-`ν` part of the alternating sum of chain groups,
/// for a wedge of `ℓ(ν)` circles, with the sign making it `H^n - H^{n-1}`.
fn chain_euler_character(n: usize, nu: &Partition) -> ClassFunction {
    let k = nu.size();
    let sig = WedgeSignature::circles(nu.len().max(1));
    let mut md = nu.parts().to_vec();
    md.resize(sig.genus(), 0);
    let classes = partitions_of(n);
    let sigmas: Vec<Vec<u8>> = classes.iter().map(class_representative).collect();
    let mut totals = vec![0i64; classes.len()];
    for p in 0..=n - k {
        let basis = enumerate_basis(n, &sig, &Filter::cell(p, &md));
        let sign = if (p + n - k).is_multiple_of(2) { 1 } else { -1 };
        for (t, s) in totals.iter_mut().zip(&sigmas) {
            *t += sign * chain_trace(s, &basis, &sig);
        }
    }
    let mut f = ClassFunction::zero(n);
    for (c, t) in classes.iter().zip(totals) {
        f.set(c, qint(t));
    }
    f
}

/// `H^n - H^{n-1}` as an integer combination of `S^λ ⊠ S_μ`, from traces on
/// the chain groups alone.
pub fn euler_equivariant(n: usize) -> Result<SignedDecomposition, Error> {
    if n == 0 {
        return Err(Error::InvalidQuery("n must be at least 1".into()));
    }
    let mut out = SignedDecomposition::new(n);
    for k in 0..=n {
        let parts = partitions_of(k);
        let chars: Vec<ClassFunction> = parts.par_iter().map(|nu| chain_euler_character(n, nu)).collect();
        // partitions_of lists a linear extension of dominance, largest first
        let mut phi: Vec<ClassFunction> = Vec::with_capacity(parts.len());
        for (j, nu) in parts.iter().enumerate() {
            let mut f = chars[j].clone();
            for (kappa, c) in parts.iter().zip(&phi) {
                let kk = kostka(kappa, nu)?;
                if kk > 0 {
                    f = &f - &c.scale(&qint(kk as i64));
                }
            }
            phi.push(f);
        }
        for (nu, f) in parts.iter().zip(&phi) {
            for (lambda, m) in decompose(f)? {
                out.add(lambda, nu.clone(), m);
            }
        }
    }
    Ok(out)
}

/// Multiplicity character of `Λ^m(H̃¹)` (the Schur functor `S_(1^m)`) in
/// `H^{n-codim}_c`: the homology of `M_{0,n}` in degree `n-m` (`codim 0`) or
/// `n-m-2` (`codim 1`). Needs `n ≥ 3`.
pub fn exterior_multiplicity_char(n: usize, m: usize, codim: u8) -> Result<ClassFunction, Error> {
    let h = getzler_m0n(n)?;
    let shift = 2 * codim as usize;
    if m + shift > n {
        return Ok(ClassFunction::zero(n));
    }
    match h.get(&(n - m - shift)) {
        Some(f) => class_function_of(f, n),
        None => Ok(ClassFunction::zero(n)),
    }
}

/// Multiplicity character of `Sym^m(H̃¹)` in `H^{n-codim}_c`: the sign twist
/// of the Whitehouse module in degree `2(n-m)` (`codim 0`) or `2(n-m)-2`
/// (`codim 1`).
pub fn sym_multiplicity_char(n: usize, m: usize, codim: u8) -> Result<ClassFunction, Error> {
    let w = whitehouse_characters(n)?;
    let shift = 2 * codim as usize;
    if m > n || 2 * (n - m) < shift {
        return Ok(ClassFunction::zero(n));
    }
    match w.get(&(2 * (n - m) - shift)) {
        Some(f) => Ok(class_function_of(f, n)?.twist_sign()),
        None => Ok(ClassFunction::zero(n)),
    }
}

/// `s_μ` evaluated at a point given by its power sums `p_k`.
pub fn schur_from_power_sums(mu: &Partition, p: impl Fn(usize) -> Q) -> Q {
    let mut total = Q::zero();
    for rho in partitions_of(mu.size()) {
        let chi = character_value(mu, &rho);
        if chi == 0 {
            continue;
        }
        let mut term = qint(chi) / Q::from_integer(BigInt::from(rho.z()));
        for &r in rho.parts() {
            term *= p(r);
        }
        total += term;
    }
    total
}

/// The Schur polynomial `s_μ(x_1, …, x_g)`.
pub fn schur_polynomial(mu: &Partition, xs: &[Q]) -> Q {
    schur_from_power_sums(mu, |k| xs.iter().map(|x| num_traits::pow(x.clone(), k)).sum())
}

/// The genus-2 coefficient `r_(a,b)`.
pub fn r_lambda(a: usize, b: usize) -> Result<u64, Error> {
    if a < b {
        return Err(Error::InvalidQuery(format!("r_(a,b) needs a >= b, got ({a},{b})")));
    }
    let f = ((a - b) / 6) as u64;
    Ok(match (a % 2, b % 2) {
        (1, 1) => f + 1,
        (0, 0) => f,
        _ => 0,
    })
}

/// `⟨Res S_μ(Q²), triv ⊠ sgn⟩` over `S_2 × S_3 ⊂ GL_2(Z)`, where the
/// generator of `S_2` acts by `-1` and `S_3` by its standard representation.
pub fn s2s3_pairing(mu: &Partition) -> Q {
    // S_3 classes as (power sum of eigenvalues, class size, sign): identity,
    // transpositions with eigenvalues 1 and -1, 3-cycles with eigenvalues the
    // primitive cube roots of unity
    let classes: [(fn(usize) -> i64, i64, i64); 3] =
        [(|_| 2, 1, 1), (|k| if k % 2 == 0 { 2 } else { 0 }, 3, -1), (|k| if k % 3 == 0 { 2 } else { -1 }, 2, 1)];
    let mut total = Q::zero();
    for (pk, size, sign) in classes {
        // the S_2 generator acts by -1, negating odd power sums
        let plain = schur_from_power_sums(mu, |k| qint(pk(k)));
        let twisted = schur_from_power_sums(mu, |k| qint(if k % 2 == 0 { pk(k) } else { -pk(k) }));
        total += (plain + twisted) * qint(size * sign);
    }
    total / qint(12)
}

/// Weight-zero compactly supported cohomology of `M_{2,n}` in degrees `n+2`
/// and `n+3`, as `S_n`-characters.
#[derive(Clone, Debug, PartialEq)]
pub struct M2nWeightZero {
    pub characters: BTreeMap<usize, ClassFunction>,
    pub dimensions: BTreeMap<usize, BigInt>,
}

/// Computes the weight-zero part two ways, from the coefficients `r_λ` and
/// from `S_2 × S_3`-invariants of the genus-2 cohomology, and requires them
/// to agree.
pub fn m2n_weight0(n: usize, dec: &EquivDecomposition) -> Result<M2nWeightZero, Error> {
    if dec.n != n {
        return Err(Error::InvalidQuery("decomposition is for a different n".into()));
    }
    let circle = match dec.convention {
        Convention::Coefficient => crate::decomp::parity_transpose(dec, 1),
        c if c == CIRCLE_EVALUATED => dec.clone(),
        _ => return Err(Error::InvalidQuery("need coefficient or circle-evaluated data".into())),
    };
    let mut by_r: BTreeMap<usize, BTreeMap<Partition, BigInt>> = BTreeMap::new();
    let mut by_pairing: BTreeMap<usize, BTreeMap<Partition, Q>> = BTreeMap::new();
    for (e, &m) in &circle.entries {
        if e.mu.len() > 2 {
            continue;
        }
        let deg = e.i + 3;
        let (a, b) = (e.mu.parts().first().copied().unwrap_or(0), e.mu.parts().get(1).copied().unwrap_or(0));
        let r = r_lambda(a, b)?;
        if r > 0 {
            *by_r.entry(deg).or_default().entry(e.lambda.clone()).or_default() += BigInt::from(r * m);
        }
        let w = s2s3_pairing(&e.mu) * qint(m as i64);
        if !w.is_zero() {
            *by_pairing.entry(deg).or_default().entry(e.lambda.clone()).or_default() += w;
        }
    }
    let as_q: BTreeMap<usize, BTreeMap<Partition, Q>> = by_r
        .iter()
        .map(|(d, m)| (*d, m.iter().map(|(l, c)| (l.clone(), Q::from_integer(c.clone()))).collect()))
        .collect();
    let pairing: BTreeMap<usize, BTreeMap<Partition, Q>> = by_pairing
        .into_iter()
        .map(|(d, mut m)| {
            m.retain(|_, v| !v.is_zero());
            (d, m)
        })
        .filter(|(_, m)| !m.is_empty())
        .collect();
    if as_q != pairing {
        return Err(Error::Inconsistent(format!(
            "M_(2,{n}): r-coefficient route {as_q:?} differs from the S2 x S3 route {pairing:?}"
        )));
    }
    let mut characters = BTreeMap::new();
    let mut dimensions = BTreeMap::new();
    for deg in [n + 2, n + 3] {
        let mult = by_r.get(&deg).cloned().unwrap_or_default();
        let f = ClassFunction::from_multiplicities(n, mult.iter());
        let dim = mult.iter().map(|(l, c)| c * BigInt::from(hook_dim(l))).sum();
        characters.insert(deg, f);
        dimensions.insert(deg, dim);
    }
    Ok(M2nWeightZero { characters, dimensions })
}

/// The two-step cellular cochain complex for a wedge of `g` circles: free
/// `S_n`-modules in degrees `n-1` and `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoStep {
    /// Number of free generators, `(C(n+g-2, g-1), C(n+g-1, g-1))`.
    pub free_ranks: (BigUint, BigUint),
    /// `n!` times the ranks.
    pub chain_dimensions: (BigUint, BigUint),
    /// `dim H^n - dim H^{n-1}`, equal to `(n+g-2)!/(g-2)!` for `g ≥ 2` and 0
    /// for `g = 1`.
    pub euler: BigInt,
}

/// The lower rank is `C(n+g-2, g-1)`, the number of multisets of size `n-1`
/// from `g` letters; with `C(n+g-2, g-2)` the Euler characteristic would
/// not be `∏_{i<n} (1-g-i)` up to sign.
pub fn two_step_ranks(n: usize, g: usize) -> Result<TwoStep, Error> {
    if n == 0 || g == 0 {
        return Err(Error::InvalidQuery("two-step complex needs n, g >= 1".into()));
    }
    let lo = binomial(n + g - 2, g - 1);
    let hi = binomial(n + g - 1, g - 1);
    let f = factorial(n);
    let euler = BigInt::from(&f * &hi) - BigInt::from(&f * &lo);
    Ok(TwoStep { chain_dimensions: (&f * &lo, &f * &hi), free_ranks: (lo, hi), euler })
}

/// For one circle both nonzero degrees have dimension `(n-1)!`.
pub fn circle_cohomology_dimension(n: usize) -> BigUint {
    if n == 0 {
        BigUint::one()
    } else {
        factorial(n - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub name: String,
    /// Predicted multiplicities of `S^λ ⊠ S_μ` under the literal reading.
    pub predicted: BTreeMap<(Partition, Partition), u64>,
    pub observed: BTreeMap<(Partition, Partition), u64>,
    pub literal: bool,
    pub transposed: bool,
}

impl ConjectureReport {
    pub fn verdict(&self) -> &'static str {
        match (self.literal, self.transposed) {
            (true, true) => "matches under both readings",
            (true, false) => "matches as written",
            (false, true) => "matches with the transpose dropped",
            (false, false) => "matches under neither reading",
        }
    }
}

fn conj(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).conjugate()
}

/// `Σ_{2a+b=m, a ≥ 1} S_{(a,1^b)'}` as a literal multiset.
fn mult_triv(m: isize, into: &mut BTreeMap<Partition, u64>) {
    if m < 2 {
        return;
    }
    let m = m as usize;
    for a in 1..=m / 2 {
        let b = m - 2 * a;
        let mut parts = vec![a];
        parts.extend(std::iter::repeat_n(1, b));
        *into.entry(conj(&parts)).or_insert(0) += 1;
    }
}

fn add_t(into: &mut BTreeMap<Partition, u64>, parts: &[usize], c: u64) {
    if c > 0 && parts.iter().all(|&x| x > 0) && !parts.is_empty() {
        *into.entry(conj(parts)).or_insert(0) += c;
    }
}

fn floor_div(a: isize, b: isize) -> isize {
    a.div_euclid(b)
}

fn periodic(n: usize, v: [isize; 6]) -> isize {
    (n / 6) as isize + v[n % 6]
}

/// Predicted codimension-one rows, literal reading, for every family that
/// applies to `n`; keyed by family name and `λ`.
pub fn conjectured_rows(n: usize) -> Vec<(String, Partition, BTreeMap<Partition, u64>)> {
    let ni = n as isize;
    let mut out = Vec::new();
    let mut push = |name: &str, lambda: Partition, m: BTreeMap<Partition, u64>| {
        out.push((name.to_string(), lambda, m));
    };
    let rng = |hi: isize| 0..=hi.max(-1);
    if n >= 2 {
        let mut m = BTreeMap::new();
        mult_triv(ni - 1, &mut m);
        push("trivial row", Partition::row(n), m);
        let mut m = BTreeMap::new();
        add_t(&mut m, &vec![1; n - 1], 1);
        push("sign row", Partition::column(n), m);
    }
    if n >= 3 {
        push("(2,1^(n-2)) row", Partition::new([vec![2], vec![1; n - 2]].concat()), BTreeMap::new());
        let mut m = BTreeMap::new();
        if n.is_multiple_of(2) {
            add_t(&mut m, &[n / 2], 1);
        }
        push("(n-1,1)", Partition::new(vec![n - 1, 1]), m);
    }
    if n >= 4 {
        let mut m = BTreeMap::new();
        for k in rng(ni / 4 - 1) {
            mult_triv(ni - 2 - 4 * k, &mut m);
        }
        for k in rng(floor_div(ni - 7, 4)) {
            mult_triv(ni - 5 - 4 * k, &mut m);
        }
        if n.is_multiple_of(2) {
            for k in rng(ni / 4 - 2) {
                add_t(&mut m, &[((ni - 4) / 2 - 2 * k) as usize], 1);
            }
        } else {
            for k in rng(floor_div(ni - 5, 4)) {
                add_t(&mut m, &[((ni - 1) / 2 - 2 * k) as usize], 1);
            }
        }
        push("(n-2,2)", Partition::new(vec![n - 2, 2]), m);

        let mut m = BTreeMap::new();
        for k in rng(floor_div(ni - 5, 4)) {
            mult_triv(ni - 3 - 4 * k, &mut m);
        }
        for k in rng(floor_div(ni - 6, 4)) {
            mult_triv(ni - 4 - 4 * k, &mut m);
        }
        if n.is_multiple_of(2) {
            for k in rng(floor_div(ni - 6, 4)) {
                add_t(&mut m, &[((ni - 2) / 2 - 2 * k) as usize], 1);
            }
        } else {
            for k in rng(floor_div(ni - 3, 4)) {
                add_t(&mut m, &[((ni + 1) / 2 - 2 * k) as usize], 1);
            }
        }
        push("(n-2,1,1)", Partition::new(vec![n - 2, 1, 1]), m);

        let mut m = BTreeMap::new();
        for k in rng(ni / 2 - 2) {
            add_t(&mut m, &[(ni - 3 - 2 * k) as usize], 1);
        }
        push("(n-2,2)'", conj(&[n - 2, 2]), m);
        let mut m = BTreeMap::new();
        for k in rng(floor_div(ni - 3, 2)) {
            add_t(&mut m, &[(ni - 2 - 2 * k) as usize], 1);
        }
        push("(n-2,1,1)'", conj(&[n - 2, 1, 1]), m);
    }
    if n >= 6 {
        let tail = |m: &mut BTreeMap<Partition, u64>, a: isize, b: isize| {
            add_t(m, &[1, 1], a.max(0) as u64);
            add_t(m, &[1], b.max(0) as u64);
        };
        let mut m = BTreeMap::new();
        for k in 0..=ni - 6 {
            add_t(&mut m, &[(ni - 4 - k) as usize], ((k + 3) / 3) as u64);
        }
        tail(&mut m, periodic(n, [-1, 0, -1, 0, 0, 0]), periodic(n, [-1, -1, -1, 0, -1, 0]));
        push("(n-3,3)'", conj(&[n - 3, 3]), m);
        let mut m = BTreeMap::new();
        for k in 0..=ni - 5 {
            add_t(&mut m, &[(ni - 3 - k) as usize], ((2 * k + 3) / 3) as u64);
        }
        tail(&mut m, (ni - 2) / 3, (ni - 4) / 3);
        push("(n-3,2,1)'", conj(&[n - 3, 2, 1]), m);
        let mut m = BTreeMap::new();
        for k in 0..=ni - 6 {
            add_t(&mut m, &[(ni - 4 - k) as usize], ((k + 3) / 3) as u64);
        }
        tail(&mut m, periodic(n, [0, 0, 0, 0, 1, 0]), periodic(n, [0, -1, 0, 0, 0, 0]));
        push("(n-3,1,1,1)'", conj(&[n - 3, 1, 1, 1]), m);
    }
    out
}

fn transpose_mu(m: &BTreeMap<(Partition, Partition), u64>) -> BTreeMap<(Partition, Partition), u64> {
    m.iter().map(|((l, mu), c)| ((l.clone(), mu.conjugate()), *c)).collect()
}

fn report(
    name: String,
    predicted: BTreeMap<(Partition, Partition), u64>,
    observed: BTreeMap<(Partition, Partition), u64>,
) -> ConjectureReport {
    let literal = predicted == observed;
    let transposed = transpose_mu(&predicted) == observed;
    ConjectureReport { name, predicted, observed, literal, transposed }
}

/// Checks every conjectured row against degree `n-1` of a circle-evaluated
/// decomposition, and `Φ^1[n,n-2]` against the coefficient convention,
/// under both readings of the transposes.
pub fn conjecture_check(dec: &EquivDecomposition) -> Result<Vec<ConjectureReport>, Error> {
    if dec.convention != CIRCLE_EVALUATED {
        return Err(Error::InvalidQuery("expected the circle-evaluated convention".into()));
    }
    let n = dec.n;
    let deg = if n == 0 { BTreeMap::new() } else { dec.in_degree(n - 1) };
    let mut out = Vec::new();
    for (name, lambda, row) in conjectured_rows(n) {
        let observed = deg.iter().filter(|((l, _), _)| *l == lambda).map(|(k, c)| (k.clone(), *c)).collect();
        let predicted = row.into_iter().map(|(mu, c)| ((lambda.clone(), mu), c)).collect();
        out.push(report(name, predicted, observed));
    }
    if n >= 4 {
        let coef = crate::decomp::parity_transpose(dec, 1);
        let mut observed = BTreeMap::new();
        for (e, &m) in &coef.entries {
            if e.p == 1 && e.mu.size() == n - 2 {
                *observed.entry((e.lambda.clone(), e.mu.clone())).or_insert(0) += m;
            }
        }
        let mut predicted = BTreeMap::new();
        predicted.insert((Partition::new([vec![3], vec![1; n - 3]].concat()), Partition::column(n - 2)), 1);
        predicted.insert((Partition::row(n), Partition::row(n - 2)), 1);
        out.push(report("Phi^1[n,n-2]".into(), predicted, observed));
    }
    Ok(out)
}

/// `Σ multiplicity · f^λ · s_μ(c, …, c)` over the entries of degree `i`, with
/// `g` copies of `c`: the trace of the scalar self-map on `H^i`.
pub fn scalar_trace(dec: &EquivDecomposition, i: usize, g: usize, c: &Q) -> Result<Q, Error> {
    if dec.convention != CIRCLE_EVALUATED {
        return Err(Error::InvalidQuery("expected the circle-evaluated convention".into()));
    }
    let xs = vec![c.clone(); g];
    let mut total = Q::zero();
    for ((l, mu), m) in dec.in_degree(i) {
        total += schur_polynomial(&mu, &xs) * qint((m * hook_dim(&l)) as i64);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schar::irreducible_character;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(sym_multiplicity_stirling(3, 1, 1), BigUint::from(1u32));
        assert_eq!(sym_multiplicity_stirling(5, 2, 1), BigUint::from(11u32));
        for n in 1..8 {
            assert_eq!(sym_multiplicity_stirling(n, n, 0), BigUint::one());
        }
    }

    #[test]
    fn e1_examples() {
        assert_eq!(e1_dimension(4, 1, 3, 2, 1).copies, BigUint::zero());
        let c = e1_dimension(4, 1, 2, 1, 2);
        assert_eq!((c.copies, c.dimension), (BigUint::from(18u32), BigUint::from(72u32)));
        assert_eq!(e1_dimension(3, 0, 3, 1, 1).dimension, BigUint::one());
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_nonequivariant(4, &p("(2,1)")), BigInt::from(4));
        assert_eq!(euler_nonequivariant(4, &p("(4)")), BigInt::from(1));
        for n in 1..8 {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(euler_nonequivariant(n, &Partition::column(n)), BigInt::from(sign));
        }
    }

    #[test]
    fn multiplicity_char_examples() {
        assert_eq!(exterior_multiplicity_char(5, 2, 1).unwrap(), irreducible_character(&p("(3,2)")));
        assert_eq!(sym_multiplicity_char(5, 3, 1).unwrap(), irreducible_character(&p("(3,1,1)")));
        assert!(exterior_multiplicity_char(5, 5, 1).unwrap().is_zero());
        assert!(sym_multiplicity_char(5, 5, 1).unwrap().is_zero());
        assert_eq!(exterior_multiplicity_char(5, 5, 0).unwrap(), irreducible_character(&p("(5)")));
    }

    #[test]
    fn r_examples() {
        assert_eq!(r_lambda(2, 1).unwrap(), 0);
        assert_eq!(r_lambda(1, 1).unwrap(), 1);
        assert_eq!(r_lambda(7, 1).unwrap(), 2);
        assert_eq!(r_lambda(6, 0).unwrap(), 1);
        assert!(r_lambda(1, 2).is_err());
    }

    #[test]
    fn pairing_agrees_with_r() {
        for a in 0..14 {
            for b in 0..=a {
                let mu = Partition::new(vec![a, b]);
                assert_eq!(s2s3_pairing(&mu), qint(r_lambda(a, b).unwrap() as i64), "({a},{b})");
            }
        }
    }

    #[test]
    fn schur_polynomial_values() {
        let at = |mu: &str, x: i64, y: i64| schur_polynomial(&p(mu), &[qint(x), qint(y)]);
        assert_eq!(at("(2,1)", 1, 1), qint(2));
        assert_eq!(at("(2,1)", 2, 1), qint(6));
        assert_eq!(at("(2,1)", 2, 2), qint(16));
        assert_eq!(at("(4,2)", 1, 1), qint(3));
        assert_eq!(at("(4,2)", 2, 1), qint(28));
        assert_eq!(at("(4,2)", 2, 2), qint(192));
        assert_eq!(at("(1,1,1)", 5, 7), qint(0));
    }

    #[test]
    fn two_step_examples() {
        let t = two_step_ranks(2, 2).unwrap();
        assert_eq!(t.free_ranks, (BigUint::from(2u32), BigUint::from(3u32)));
        assert_eq!(t.euler, BigInt::from(2));
        let t = two_step_ranks(5, 1).unwrap();
        assert_eq!(t.free_ranks, (BigUint::one(), BigUint::one()));
        assert_eq!(t.euler, BigInt::zero());
        assert_eq!(circle_cohomology_dimension(5), BigUint::from(24u32));
        // (n+g-2)!/(g-2)! at n = 4, g = 3
        assert_eq!(two_step_ranks(4, 3).unwrap().euler, BigInt::from(120));
    }

    #[test]
    fn mult_triv_small() {
        let mut m = BTreeMap::new();
        mult_triv(4, &mut m);
        // (2)' and (1,1,1)' i.e. (1,1) and (3)
        assert_eq!(m.len(), 2);
        assert!(m.contains_key(&p("(1,1)")) && m.contains_key(&p("(3)")));
    }
}
