//! Symmetric functions with coefficients in Laurent polynomials `Q[t, t^-1]`.
//!
//! The power-sum basis is the working basis; every other basis converts
//! through it. All series are truncated at a fixed symmetric-function degree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinat::{divisors, kostka, mobius, partitions_of, Partition};
use crate::schar::character_value;
use crate::{Error, Q};

fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// A Laurent polynomial in `t` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: Q, e: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    /// `t^e`.
    pub fn t_pow(e: i32) -> Self {
        LaurentPoly::monomial(Q::one(), e)
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (i32, Q)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in pairs {
            p.add_monomial(e, c);
        }
        p
    }

    pub fn coeffs(&self) -> &BTreeMap<i32, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, e: i32) -> Q {
        self.coeffs.get(&e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.coeffs.len() {
            0 => Some(Q::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_monomial(&mut self, e: i32, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&e, c) in &o.coeffs {
            r.add_monomial(e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&e, c) in &o.coeffs {
            r.add_monomial(e, -c.clone());
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = LaurentPoly::zero();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &o.coeffs {
                r.add_monomial(a + b, x * y);
            }
        }
        r
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, x)| (e, x * c)).collect() }
    }

    /// Substitutes `t ↦ t^d`.
    pub fn subs_power(&self, d: i32) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, x)| (e * d, x.clone())).collect() }
    }

    /// Substitutes `t ↦ -t`.
    pub fn negate_t(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, x)| (e, if e % 2 == 0 { x.clone() } else { -x.clone() })).collect(),
        }
    }

    /// Exact quotient by `d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (dlo, dhi) = (d.min_exp()?, d.max_exp()?);
        let lead = d.coeff(dlo);
        let qmax = self.max_exp()? - dhi;
        let mut r = self.clone();
        let mut q = LaurentPoly::zero();
        while let Some(e) = r.min_exp() {
            let qe = e - dlo;
            if qe > qmax {
                return None;
            }
            let c = r.coeff(e) / &lead;
            r = r.sub(&d.mul(&LaurentPoly::monomial(c.clone(), qe)));
            q.add_monomial(qe, c);
        }
        Some(q)
    }

    /// `binom(self, k) = self (self - 1) ... (self - k + 1) / k!`.
    pub fn binomial(&self, k: usize) -> Self {
        let mut r = LaurentPoly::one();
        for i in 0..k {
            r = r.mul(&self.sub(&LaurentPoly::constant(qi(i as i64))));
            r = r.scale(&(Q::one() / qi(i as i64 + 1)));
        }
        r
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, t: &Q) -> Q {
        let mut s = Q::zero();
        for (&e, c) in &self.coeffs {
            let tp = if e >= 0 { pow(t, e as u32) } else { Q::one() / pow(t, (-e) as u32) };
            s += c * tp;
        }
        s
    }
}

fn pow(x: &Q, e: u32) -> Q {
    (0..e).fold(Q::one(), |acc, _| acc * x)
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Basis {
    P,
    S,
    H,
    E,
    M,
}

/// A finitely supported combination of basis elements indexed by partitions.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    terms: BTreeMap<Partition, LaurentPoly>,
    degree_cap: usize,
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.basis {
            Basis::P => "p",
            Basis::S => "s",
            Basis::H => "h",
            Basis::E => "e",
            Basis::M => "m",
        };
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}){name}{k}")?;
        }
        Ok(())
    }
}

impl SymFunc {
    pub fn zero(basis: Basis, degree_cap: usize) -> Self {
        SymFunc { basis, terms: BTreeMap::new(), degree_cap }
    }

    pub fn one(degree_cap: usize) -> Self {
        let mut f = SymFunc::zero(Basis::P, degree_cap);
        f.add_term(Partition::empty(), LaurentPoly::one());
        f
    }

    /// A single basis element with coefficient 1.
    pub fn basis_element(basis: Basis, lambda: Partition, degree_cap: usize) -> Self {
        let mut f = SymFunc::zero(basis, degree_cap);
        f.add_term(lambda, LaurentPoly::one());
        f
    }

    pub fn p(parts: &[usize], degree_cap: usize) -> Self {
        SymFunc::basis_element(Basis::P, Partition::new(parts.to_vec()), degree_cap)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn terms(&self) -> &BTreeMap<Partition, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> LaurentPoly {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, lambda: Partition, c: LaurentPoly) {
        if lambda.size() > self.degree_cap || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(lambda.clone()).or_default();
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn with_cap(&self, degree_cap: usize) -> Self {
        let mut f = SymFunc::zero(self.basis, degree_cap);
        for (k, c) in &self.terms {
            f.add_term(k.clone(), c.clone());
        }
        f
    }

    /// Homogeneous component of degree `n`.
    pub fn degree_part(&self, n: usize) -> Self {
        let mut f = SymFunc::zero(self.basis, self.degree_cap);
        for (k, c) in &self.terms {
            if k.size() == n {
                f.add_term(k.clone(), c.clone());
            }
        }
        f
    }

    /// Coefficient of `t^e` in every term.
    pub fn t_coefficient(&self, e: i32) -> Self {
        let mut f = SymFunc::zero(self.basis, self.degree_cap);
        for (k, c) in &self.terms {
            f.add_term(k.clone(), LaurentPoly::constant(c.coeff(e)));
        }
        f
    }

    pub fn constant_term(&self) -> LaurentPoly {
        self.convert(Basis::P).coeff(&Partition::empty())
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut f = SymFunc::zero(self.basis, self.degree_cap);
        for (k, x) in &self.terms {
            f.add_term(k.clone(), x.mul(c));
        }
        f
    }

    pub fn add(&self, o: &Self) -> Self {
        let cap = self.degree_cap.min(o.degree_cap);
        let o = o.convert(self.basis);
        let mut f = self.with_cap(cap);
        for (k, c) in &o.terms {
            f.add_term(k.clone(), c.clone());
        }
        f
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&LaurentPoly::constant(-Q::one())))
    }

    /// Ordinary product.
    pub fn mul(&self, o: &Self) -> Self {
        let cap = self.degree_cap.min(o.degree_cap);
        let a = self.convert(Basis::P);
        let b = o.convert(Basis::P);
        let mut f = SymFunc::zero(Basis::P, cap);
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                if ka.size() + kb.size() <= cap {
                    f.add_term(ka.union(kb), ca.mul(cb));
                }
            }
        }
        f
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(SymFunc::one(self.degree_cap), |acc, _| acc.mul(self))
    }

    /// Plethysm `p_d[self]`: `p_i ↦ p_{id}` and `t ↦ t^d`.
    pub fn plethysm_p(&self, d: usize) -> Self {
        let a = self.convert(Basis::P);
        let mut f = SymFunc::zero(Basis::P, self.degree_cap);
        for (k, c) in &a.terms {
            if k.size() * d <= self.degree_cap {
                f.add_term(k.scaled(d), c.subs_power(d as i32));
            }
        }
        f
    }

    /// Kronecker (internal) product.
    pub fn kronecker(&self, o: &Self) -> Self {
        let a = self.convert(Basis::P);
        let b = o.convert(Basis::P);
        let mut f = SymFunc::zero(Basis::P, self.degree_cap.min(o.degree_cap));
        for (k, ca) in &a.terms {
            if let Some(cb) = b.terms.get(k) {
                let z = Q::from_integer(BigInt::from(k.z()));
                f.add_term(k.clone(), ca.mul(cb).scale(&z));
            }
        }
        f
    }

    /// Hall inner product, for functions with constant coefficients.
    pub fn hall(&self, o: &Self) -> Q {
        let a = self.convert(Basis::P);
        let b = o.convert(Basis::P);
        let mut s = Q::zero();
        for (k, ca) in &a.terms {
            if let Some(cb) = b.terms.get(k) {
                let x = ca.mul(cb).as_constant().expect("hall product needs constant coefficients");
                s += x * Q::from_integer(BigInt::from(k.z()));
            }
        }
        s
    }

    /// Ordinary exponential of a series with zero constant term.
    fn exp_series(&self) -> Self {
        let cap = self.degree_cap;
        let mut result = SymFunc::one(cap);
        let mut term = SymFunc::one(cap);
        for j in 1..=cap {
            term = term.mul(self).scale(&LaurentPoly::constant(Q::one() / qi(j as i64)));
            if term.is_zero() {
                break;
            }
            result = result.add(&term);
        }
        result
    }

    /// Plethystic exponential `Exp[X] = Σ h_n[X] = exp(Σ p_k[X]/k)`.
    pub fn plethystic_exp(&self) -> Result<Self, Error> {
        if !self.constant_term().is_zero() {
            return Err(Error::InvalidQuery("Exp needs zero constant term".into()));
        }
        let cap = self.degree_cap;
        let mut y = SymFunc::zero(Basis::P, cap);
        for k in 1..=cap.max(1) {
            y = y.add(&self.plethysm_p(k).scale(&LaurentPoly::constant(Q::one() / qi(k as i64))));
        }
        Ok(y.exp_series())
    }

    /// Plethystic logarithm of a series with constant term 1:
    /// `Log[1+X] = Σ_{n≥1} -(1/n) Σ_{d|n} μ(d) (-p_d[X])^{n/d}`.
    pub fn plethystic_log(&self) -> Result<Self, Error> {
        if !self.constant_term().is_one() {
            return Err(Error::InvalidQuery("Log needs constant term 1".into()));
        }
        let cap = self.degree_cap;
        let x = self.convert(Basis::P).sub(&SymFunc::one(cap));
        let mut out = SymFunc::zero(Basis::P, cap);
        let mut pd_cache: BTreeMap<usize, SymFunc> = BTreeMap::new();
        for n in 1..=cap.max(1) {
            for d in divisors(n) {
                let mu = mobius(d);
                if mu == 0 {
                    continue;
                }
                let neg_pd = pd_cache
                    .entry(d)
                    .or_insert_with(|| x.plethysm_p(d).scale(&LaurentPoly::constant(-Q::one())))
                    .clone();
                let term = neg_pd.pow(n / d);
                let c = qi(-mu) / qi(n as i64);
                out = out.add(&term.scale(&LaurentPoly::constant(c)));
            }
        }
        Ok(out)
    }

    /// `self^b = Exp[b · Log[self]]` for a scalar Laurent polynomial `b`.
    pub fn plethystic_power(&self, b: &LaurentPoly) -> Result<Self, Error> {
        self.plethystic_log()?.scale(b).plethystic_exp()
    }

    /// Expresses the function in another basis.
    pub fn convert(&self, target: Basis) -> Self {
        if self.basis == target {
            return self.clone();
        }
        let p = self.to_p();
        match target {
            Basis::P => p,
            Basis::S => p_to_s(&p),
            Basis::H => s_to_h(&p_to_s(&p)),
            Basis::E => {
                // e_μ = ω(h_μ): expand ω(f) in h, read off as e.
                let s = p_to_s(&p);
                let mut w = SymFunc::zero(Basis::S, self.degree_cap);
                for (k, c) in &s.terms {
                    w.add_term(k.conjugate(), c.clone());
                }
                let mut h = s_to_h(&w);
                h.basis = Basis::E;
                h
            }
            Basis::M => {
                let s = p_to_s(&p);
                let mut m = SymFunc::zero(Basis::M, self.degree_cap);
                for (lam, c) in &s.terms {
                    for mu in partitions_of(lam.size()) {
                        let k = kostka(lam, &mu).expect("same size");
                        if k != 0 {
                            m.add_term(mu, c.scale(&qi(k as i64)));
                        }
                    }
                }
                m
            }
        }
    }

    fn to_p(&self) -> Self {
        let cap = self.degree_cap;
        let mut out = SymFunc::zero(Basis::P, cap);
        for (lam, c) in &self.terms {
            let expansion = match self.basis {
                Basis::P => SymFunc::basis_element(Basis::P, lam.clone(), cap),
                Basis::S => schur_in_p(lam, cap),
                Basis::H => {
                    lam.parts().iter().fold(SymFunc::one(cap), |acc, &m| acc.mul(&complete_in_p(m, cap, false)))
                }
                Basis::E => lam.parts().iter().fold(SymFunc::one(cap), |acc, &m| acc.mul(&complete_in_p(m, cap, true))),
                Basis::M => {
                    let mut s = SymFunc::zero(Basis::S, cap);
                    for (nu, x) in monomial_in_s(lam) {
                        s.add_term(nu, LaurentPoly::constant(x));
                    }
                    s.to_p()
                }
            };
            for (k, x) in &expansion.terms {
                out.add_term(k.clone(), x.mul(c));
            }
        }
        out
    }
}

fn schur_in_p(lam: &Partition, cap: usize) -> SymFunc {
    let mut f = SymFunc::zero(Basis::P, cap);
    for mu in partitions_of(lam.size()) {
        let chi = character_value(lam, &mu);
        if chi != 0 {
            let z = Q::from_integer(BigInt::from(mu.z()));
            f.add_term(mu, LaurentPoly::constant(qi(chi) / z));
        }
    }
    f
}

/// `h_m` (or `e_m` when `signed`) in the power-sum basis.
fn complete_in_p(m: usize, cap: usize, signed: bool) -> SymFunc {
    let mut f = SymFunc::zero(Basis::P, cap);
    for mu in partitions_of(m) {
        let z = Q::from_integer(BigInt::from(mu.z()));
        let s = if signed { mu.sign() } else { 1 };
        f.add_term(mu, LaurentPoly::constant(qi(s) / z));
    }
    f
}

/// `m_λ = Σ_ν (K^{-1})_{λν} s_ν`.
fn monomial_in_s(lam: &Partition) -> BTreeMap<Partition, Q> {
    // s_μ = m_μ + Σ_{ν ◁ μ} K_{μν} m_ν, solved upward from (1^n).
    let n = lam.size();
    let parts = partitions_of(n);
    let mut m_in_s: BTreeMap<Partition, BTreeMap<Partition, Q>> = BTreeMap::new();
    for mu in parts.iter().rev() {
        let mut expr: BTreeMap<Partition, Q> = BTreeMap::new();
        expr.insert(mu.clone(), Q::one());
        for nu in parts.iter() {
            if nu != mu && mu.dominates(nu) {
                let k = kostka(mu, nu).expect("same size");
                if k != 0 {
                    for (x, c) in &m_in_s[nu] {
                        *expr.entry(x.clone()).or_insert_with(Q::zero) -= c * qi(k as i64);
                    }
                }
            }
        }
        expr.retain(|_, c| !c.is_zero());
        m_in_s.insert(mu.clone(), expr);
        if mu == lam {
            break;
        }
    }
    m_in_s.remove(lam).expect("computed")
}

fn p_to_s(p: &SymFunc) -> SymFunc {
    let mut out = SymFunc::zero(Basis::S, p.degree_cap);
    for (mu, c) in &p.terms {
        for lam in partitions_of(mu.size()) {
            let chi = character_value(&lam, mu);
            if chi != 0 {
                out.add_term(lam, c.scale(&qi(chi)));
            }
        }
    }
    out
}

/// Solves `c_λ = Σ_μ K_{λμ} d_μ` for the h-coefficients `d`.
fn s_to_h(s: &SymFunc) -> SymFunc {
    let mut out = SymFunc::zero(Basis::H, s.degree_cap);
    let mut degrees: Vec<usize> = s.terms.keys().map(|k| k.size()).collect();
    degrees.dedup();
    degrees.sort_unstable();
    degrees.dedup();
    for n in degrees {
        let parts = partitions_of(n);
        let mut d: BTreeMap<Partition, LaurentPoly> = BTreeMap::new();
        for lam in parts.iter().rev() {
            let mut v = s.coeff(lam);
            for (mu, dm) in &d {
                if mu != lam && lam.dominates(mu) {
                    let k = kostka(lam, mu).expect("same size");
                    if k != 0 {
                        v = v.sub(&dm.scale(&qi(k as i64)));
                    }
                }
            }
            d.insert(lam.clone(), v);
        }
        for (mu, c) in d {
            out.add_term(mu, c);
        }
    }
    out
}

/// Möbius sum `R_n(t) = (1/n) Σ_{d|n} μ(n/d) t^{-d}`.
pub fn getzler_r(n: usize) -> LaurentPoly {
    let mut r = LaurentPoly::zero();
    for d in divisors(n) {
        r.add_monomial(-(d as i32), qi(mobius(n / d)) / qi(n as i64));
    }
    r
}

/// The series `(1 + t p_1) ∏_{k≥1} (1 + t^k p_k)^{R_k(t)}` up to degree `cap`,
/// with ordinary (binomial-series) powers; `with_prefactor_p1` controls the
/// `(1 + t p_1)` factor.
fn getzler_product(cap: usize, truncate_low_first: bool) -> SymFunc {
    let mut g = SymFunc::one(cap);
    for k in 1..=cap {
        let r = getzler_r(k);
        let mut factor = SymFunc::zero(Basis::P, cap);
        for j in 0..=cap / k {
            let coeff = r.binomial(j).mul(&LaurentPoly::t_pow((k * j) as i32));
            factor.add_term(Partition::new(vec![k; j]), coeff);
        }
        g = g.mul(&factor);
    }
    if truncate_low_first {
        g = kappa(&g);
    }
    let mut pre = SymFunc::one(cap);
    pre.add_term(Partition::row(1), LaurentPoly::t_pow(1));
    pre.mul(&g)
}

/// Kills every term of degree at most 2 (the monomials 1, p_1, p_1^2, p_2).
fn kappa(f: &SymFunc) -> SymFunc {
    let p = f.convert(Basis::P);
    let mut out = SymFunc::zero(Basis::P, p.degree_cap);
    for (k, c) in &p.terms {
        if k.size() > 2 {
            out.add_term(k.clone(), c.clone());
        }
    }
    out
}

/// Order of the truncation relative to the `(1 + t p_1)/(1 - t^2)` prefactor.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KappaOrder {
    /// Truncate the whole expression (the default).
    Outside,
    /// Truncate the product before multiplying by the prefactor.
    Inside,
}

/// Characters of `H_i(M_{0,n})` for all `i`, as Schur expansions, from
/// Getzler's product formula with the truncation applied outside.
pub fn getzler_m0n(n: usize) -> Result<BTreeMap<usize, SymFunc>, Error> {
    getzler_m0n_with(n, KappaOrder::Outside)
}

pub fn getzler_m0n_with(n: usize, order: KappaOrder) -> Result<BTreeMap<usize, SymFunc>, Error> {
    if n < 3 {
        return Err(Error::InvalidQuery(format!("M_(0,{n}) needs n >= 3")));
    }
    let mut prod = getzler_product(n, order == KappaOrder::Inside);
    if order == KappaOrder::Outside {
        prod = kappa(&prod);
    }
    let part = prod.degree_part(n);
    let one_minus_t2 = LaurentPoly::from_coeffs([(0, Q::one()), (2, -Q::one())]);
    let mut divided = SymFunc::zero(Basis::P, n);
    for (k, c) in part.terms() {
        let q = c
            .div_exact(&one_minus_t2)
            .ok_or_else(|| Error::Inconsistent(format!("coefficient of p{k} not divisible by 1 - t^2")))?;
        divided.add_term(k.clone(), q);
    }
    // Coefficient of (-t)^i is the character of H_i.
    let s = divided.convert(Basis::S);
    let mut out = BTreeMap::new();
    let lo = s.terms.values().filter_map(|c| c.min_exp()).min();
    let hi = s.terms.values().filter_map(|c| c.max_exp()).max();
    if let (Some(lo), Some(hi)) = (lo, hi) {
        if lo < 0 {
            return Err(Error::Inconsistent(format!("negative power t^{lo} in degree {n}")));
        }
        for i in lo..=hi {
            let mut f = s.t_coefficient(i);
            if i % 2 == 1 {
                f = f.scale(&LaurentPoly::constant(-Q::one()));
            }
            if !f.is_zero() {
                out.insert(i as usize, f);
            }
        }
    }
    Ok(out)
}

/// `∏_{i=2}^{n-2} (1 - i t)`.
pub fn m0n_poincare(n: usize) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for i in 2..n.saturating_sub(1) {
        p = p.mul(&LaurentPoly::from_coeffs([(0, Q::one()), (1, -qi(i as i64))]));
    }
    p
}

/// `∏_{i=1}^{n-2} (1 + i t^2)`, the Poincaré polynomial of `F(R^3, n-1)`.
pub fn whitehouse_poincare(n: usize) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for i in 1..n.saturating_sub(1) {
        p = p.mul(&LaurentPoly::from_coeffs([(0, Q::one()), (2, qi(i as i64))]));
    }
    p
}

/// `C(t) = (1/(1 - t^2 p_1))^{1/t^2}` up to degree `cap`.
pub fn whitehouse_c(cap: usize) -> Result<SymFunc, Error> {
    let mut a = SymFunc::zero(Basis::P, cap);
    for j in 0..=cap {
        a.add_term(Partition::new(vec![1; j]), LaurentPoly::t_pow(2 * j as i32));
    }
    a.plethystic_power(&LaurentPoly::t_pow(-2))
}

/// Characters `D_n` of `H^{2k}(F(R^3, n-1))` with the `S_n` action, keyed by
/// cohomological degree `2k`, obtained by inverting
/// `C_n(t) = (s_(n) + t^2 s_(n-1,1)) ⊗ D_n(t)` degree by degree in `t`.
pub fn whitehouse_characters(n: usize) -> Result<BTreeMap<usize, SymFunc>, Error> {
    if n < 2 {
        return Err(Error::InvalidQuery(format!("Whitehouse module needs n >= 2, got {n}")));
    }
    let c = whitehouse_c(n)?.degree_part(n);
    let std = SymFunc::basis_element(Basis::S, Partition::new(vec![n - 1, 1]), n);
    let mut out: BTreeMap<usize, SymFunc> = BTreeMap::new();
    let top = 2 * (n - 2);
    let mut prev: Option<SymFunc> = None;
    for deg in (0..=top + 2).step_by(2) {
        let mut d = c.t_coefficient(deg as i32);
        if let Some(pv) = &prev {
            d = d.sub(&std.kronecker(pv));
        }
        let ds = d.convert(Basis::S);
        for (k, x) in ds.terms() {
            let v = x.as_constant().expect("constant");
            if !v.is_integer() || v < Q::zero() {
                return Err(Error::Inconsistent(format!(
                    "Whitehouse inversion gives multiplicity {v} for {k} in degree {deg}"
                )));
            }
        }
        if deg > top {
            if !ds.is_zero() {
                return Err(Error::Inconsistent(format!("Whitehouse inversion leaves a remainder in degree {deg}")));
            }
            break;
        }
        if !ds.is_zero() {
            out.insert(deg, ds.clone());
        }
        prev = Some(ds);
    }
    Ok(out)
}

/// Dimension (value at the identity) of a homogeneous degree-`n` function with constant coefficients.
pub fn dimension(f: &SymFunc, n: usize) -> Q {
    let s = f.convert(Basis::S);
    let mut d = Q::zero();
    for (k, c) in s.terms() {
        if k.size() == n {
            d += c.as_constant().expect("constant") * qi(crate::combinat::hook_dim(k) as i64);
        }
    }
    d
}
