//! Class functions on the symmetric group.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinat::{partitions_of, Partition};
use crate::symfunc::{Basis, LaurentPoly, SymFunc};
use crate::{Error, Q};

/// A rational-valued function on the conjugacy classes of `S_n`, indexed by cycle type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassFunction {
    n: usize,
    values: BTreeMap<Partition, Q>,
}

impl ClassFunction {
    pub fn zero(n: usize) -> Self {
        let values = partitions_of(n).into_iter().map(|p| (p, Q::zero())).collect();
        ClassFunction { n, values }
    }

    /// Builds a class function from a value for every cycle type.
    pub fn from_fn(n: usize, mut f: impl FnMut(&Partition) -> Q) -> Self {
        let values = partitions_of(n).into_iter().map(|p| {
            let v = f(&p);
            (p, v)
        });
        ClassFunction { n, values: values.collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, class: &Partition) -> &Q {
        &self.values[class]
    }

    pub fn set(&mut self, class: &Partition, v: Q) {
        assert_eq!(class.size(), self.n);
        self.values.insert(class.clone(), v);
    }

    pub fn values(&self) -> &BTreeMap<Partition, Q> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Zero::is_zero)
    }

    /// Value at the identity.
    pub fn degree(&self) -> Q {
        self.values[&Partition::column(self.n)].clone()
    }

    pub fn scale(&self, c: &Q) -> Self {
        let values = self.values.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        ClassFunction { n: self.n, values }
    }

    /// Pointwise product; on characters this is the tensor product of representations.
    pub fn pointwise(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let values = self.values.iter().map(|(k, v)| (k.clone(), v * &other.values[k])).collect();
        ClassFunction { n: self.n, values }
    }

    /// Tensor with the sign character.
    pub fn twist_sign(&self) -> Self {
        let values = self.values.iter().map(|(k, v)| (k.clone(), if k.sign() < 0 { -v } else { v.clone() })).collect();
        ClassFunction { n: self.n, values }
    }

    /// Linear combination of irreducible characters.
    pub fn from_multiplicities<'a>(n: usize, mult: impl IntoIterator<Item = (&'a Partition, &'a BigInt)>) -> Self {
        let mut f = ClassFunction::zero(n);
        for (lam, m) in mult {
            f = &f + &irreducible_character(lam).scale(&Q::from_integer(m.clone()));
        }
        f
    }

    /// Character of the regular representation.
    pub fn regular(n: usize) -> Self {
        let fact = crate::combinat::factorial(n);
        ClassFunction::from_fn(n, |c| {
            if c.size() == c.len() {
                Q::from_integer(BigInt::from(fact.clone()))
            } else {
                Q::zero()
            }
        })
    }
}

impl Add for &ClassFunction {
    type Output = ClassFunction;
    fn add(self, o: &ClassFunction) -> ClassFunction {
        assert_eq!(self.n, o.n);
        let values = self.values.iter().map(|(k, v)| (k.clone(), v + &o.values[k])).collect();
        ClassFunction { n: self.n, values }
    }
}

impl Sub for &ClassFunction {
    type Output = ClassFunction;
    fn sub(self, o: &ClassFunction) -> ClassFunction {
        assert_eq!(self.n, o.n);
        let values = self.values.iter().map(|(k, v)| (k.clone(), v - &o.values[k])).collect();
        ClassFunction { n: self.n, values }
    }
}

impl Neg for &ClassFunction {
    type Output = ClassFunction;
    fn neg(self) -> ClassFunction {
        self.scale(&-Q::one())
    }
}

impl Mul<&ClassFunction> for &ClassFunction {
    type Output = ClassFunction;
    fn mul(self, o: &ClassFunction) -> ClassFunction {
        self.pointwise(o)
    }
}

fn char_cache() -> &'static Mutex<HashMap<(Vec<usize>, Vec<usize>), i64>> {
    static CACHE: OnceLock<Mutex<HashMap<(Vec<usize>, Vec<usize>), i64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `χ^λ(μ)` by the Murnaghan–Nakayama rule on beta-sets.
pub fn character_value(lambda: &Partition, mu: &Partition) -> i64 {
    assert_eq!(lambda.size(), mu.size(), "character_value: size mismatch");
    let key = (lambda.parts().to_vec(), mu.parts().to_vec());
    if let Some(&v) = char_cache().lock().unwrap().get(&key) {
        return v;
    }
    let l = lambda.len();
    let beta: Vec<usize> = lambda.parts().iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect();
    let mut memo = HashMap::new();
    let v = mn(beta, mu.parts(), &mut memo);
    char_cache().lock().unwrap().insert(key, v);
    v
}

fn mn(beta: Vec<usize>, mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (beta.clone(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = mu[0];
    let mut total = 0;
    for idx in 0..beta.len() {
        let b = beta[idx];
        if b < r {
            continue;
        }
        let nb = b - r;
        if beta.contains(&nb) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > nb && x < b).count();
        let mut next = beta.clone();
        next[idx] = nb;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let s = if between % 2 == 0 { 1 } else { -1 };
        total += s * mn(next, &mu[1..], memo);
    }
    memo.insert(key, total);
    total
}

/// The character of the Specht module `S^λ`.
pub fn irreducible_character(lambda: &Partition) -> ClassFunction {
    let n = lambda.size();
    ClassFunction::from_fn(n, |mu| Q::from_integer(BigInt::from(character_value(lambda, mu))))
}

/// `⟨f, g⟩ = Σ_λ f(λ) g(λ) / z_λ`.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Q, Error> {
    if f.n != g.n {
        return Err(Error::InvalidQuery(format!("inner product of class functions on S_{} and S_{}", f.n, g.n)));
    }
    let mut s = Q::zero();
    for (k, v) in &f.values {
        let z = Q::from_integer(BigInt::from(k.z()));
        s += v * &g.values[k] / z;
    }
    Ok(s)
}

/// Frobenius characteristic `Σ χ(λ)/z_λ p_λ`, in the power-sum basis.
pub fn frobenius_ch(f: &ClassFunction) -> SymFunc {
    let mut out = SymFunc::zero(Basis::P, f.n);
    for (k, v) in &f.values {
        if v.is_zero() {
            continue;
        }
        let z = Q::from_integer(BigInt::from(k.z()));
        out.add_term(k.clone(), LaurentPoly::constant(v / z));
    }
    out
}

/// Inverse of [`frobenius_ch`] on a homogeneous degree-`n` function with constant coefficients.
pub fn class_function_of(f: &SymFunc, n: usize) -> Result<ClassFunction, Error> {
    let p = f.convert(Basis::P);
    let mut out = ClassFunction::zero(n);
    for (k, c) in p.terms() {
        if k.size() != n {
            if c.is_zero() {
                continue;
            }
            return Err(Error::InvalidQuery(format!("term {k} is not of degree {n}")));
        }
        let c = c.as_constant().ok_or_else(|| Error::InvalidQuery("coefficient depends on t".to_string()))?;
        out.set(k, c * Q::from_integer(BigInt::from(k.z())));
    }
    Ok(out)
}

/// Multiplicities of the irreducible characters in `f`, zeros omitted.
pub fn decompose(f: &ClassFunction) -> Result<BTreeMap<Partition, BigInt>, Error> {
    let mut out = BTreeMap::new();
    for lam in partitions_of(f.n) {
        let m = inner_product(f, &irreducible_character(&lam))?;
        if !m.is_integer() {
            return Err(Error::NotVirtualCharacter(format!("multiplicity of {lam} is {m}")));
        }
        if !m.is_zero() {
            out.insert(lam, m.to_integer());
        }
    }
    Ok(out)
}

/// Like [`decompose`] but also rejects negative multiplicities.
pub fn decompose_genuine(f: &ClassFunction) -> Result<BTreeMap<Partition, BigInt>, Error> {
    let d = decompose(f)?;
    if let Some((lam, m)) = d.iter().find(|(_, m)| m.is_negative()) {
        return Err(Error::NotVirtualCharacter(format!("negative multiplicity {m} of {lam}")));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::hook_dim;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn q(v: i64) -> Q {
        Q::from_integer(BigInt::from(v))
    }

    /// All permutations of 0..n as images.
    fn perms(n: usize) -> Vec<Vec<usize>> {
        fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    fn cycle_type(perm: &[usize]) -> Partition {
        let mut seen = vec![false; perm.len()];
        let mut parts = Vec::new();
        for i in 0..perm.len() {
            if !seen[i] {
                let mut len = 0;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = perm[j];
                    len += 1;
                }
                parts.push(len);
            }
        }
        Partition::new(parts)
    }

    #[test]
    fn character_examples() {
        let chi = irreducible_character(&p("(2,1)"));
        assert_eq!(chi.value(&p("(1,1,1)")), &q(2));
        assert_eq!(chi.value(&p("(2,1)")), &q(0));
        assert_eq!(chi.value(&p("(3)")), &q(-1));
        for mu in partitions_of(5) {
            assert_eq!(character_value(&p("(5)"), &mu), 1);
            assert_eq!(character_value(&Partition::column(5), &mu), mu.sign());
        }
    }

    #[test]
    fn characters_against_brute_force() {
        // χ^{(n-1,1)} = fixed points - 1, χ^{(n-2,2)} = #fixed 2-subsets - #fixed points;
        // both by brute force over all permutations for n ≤ 6.
        for n in 4..=6 {
            for perm in perms(n) {
                let fixed = (0..n).filter(|&i| perm[i] == i).count() as i64;
                let mut fixed_pairs = 0i64;
                for a in 0..n {
                    for b in a + 1..n {
                        let (x, y) = (perm[a], perm[b]);
                        if (x == a && y == b) || (x == b && y == a) {
                            fixed_pairs += 1;
                        }
                    }
                }
                let ct = cycle_type(&perm);
                let std = Partition::new(vec![n - 1, 1]);
                let two = Partition::new(vec![n - 2, 2]);
                assert_eq!(character_value(&std, &ct), fixed - 1);
                assert_eq!(character_value(&two, &ct), fixed_pairs - fixed);
            }
        }
    }

    #[test]
    fn degree_is_hook_dim() {
        for n in 1..=8 {
            for lam in partitions_of(n) {
                assert_eq!(irreducible_character(&lam).degree(), q(hook_dim(&lam) as i64));
            }
        }
    }

    #[test]
    fn orthonormality() {
        for n in 1..=9 {
            let chars: Vec<_> = partitions_of(n).iter().map(irreducible_character).collect();
            for (i, a) in chars.iter().enumerate() {
                for (j, b) in chars.iter().enumerate() {
                    let ip = inner_product(a, b).unwrap();
                    assert_eq!(ip, if i == j { q(1) } else { q(0) }, "n={n}");
                }
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let reg = ClassFunction::regular(3);
        assert_eq!(inner_product(&reg, &irreducible_character(&p("(2,1)"))).unwrap(), q(2));
        assert!(inner_product(&reg, &ClassFunction::zero(2)).is_err());
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&irreducible_character(&p("(3,2)"))).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[&p("(3,2)")], BigInt::from(1));
        let perm3 = ClassFunction::from_fn(3, |c| q(c.parts().iter().filter(|&&x| x == 1).count() as i64));
        let d = decompose(&perm3).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[&p("(3)")], BigInt::from(1));
        assert_eq!(d[&p("(2,1)")], BigInt::from(1));
        assert!(decompose(&ClassFunction::zero(4)).unwrap().is_empty());
        let half = irreducible_character(&p("(2,1)")).scale(&(q(1) / q(2)));
        assert!(decompose(&half).is_err());
    }

    #[test]
    fn frobenius_examples() {
        use crate::symfunc::Basis;
        let triv = frobenius_ch(&irreducible_character(&p("(3)")));
        assert_eq!(triv.convert(Basis::H).terms().len(), 1);
        assert!(triv.convert(Basis::H).coeff(&p("(3)")).is_one());
        let sgn = frobenius_ch(&irreducible_character(&p("(1,1,1)")));
        assert!(sgn.convert(Basis::E).coeff(&p("(3)")).is_one());
        let std = frobenius_ch(&irreducible_character(&p("(2,1)")));
        assert_eq!(std.coeff(&p("(1,1,1)")).as_constant().unwrap(), q(1) / q(3));
        assert_eq!(std.coeff(&p("(3)")).as_constant().unwrap(), q(-1) / q(3));
        assert!(std.coeff(&p("(2,1)")).is_zero());
        for n in 1..=6 {
            for lam in partitions_of(n) {
                let s = frobenius_ch(&irreducible_character(&lam)).convert(Basis::S);
                assert_eq!(s.terms().len(), 1);
                assert!(s.coeff(&lam).is_one());
            }
        }
    }
}
