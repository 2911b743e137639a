//! Integer partitions, Stirling numbers of the first kind, hook lengths and
//! Kostka numbers.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::Error;

/// A weakly decreasing sequence of positive integers.
///
/// The ordering is reverse lexicographic on the parts, so `(3) < (2,1,1) < (2) < (1,1)`.
/// Sorting a list of partitions therefore puts them in table order.
#[derive(Clone, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, sorting the parts and dropping zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn row(m: usize) -> Self {
        Partition::new(vec![m])
    }

    pub fn column(m: usize) -> Self {
        Partition::new(vec![1; m])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, 0 for the empty partition.
    pub fn width(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.width();
        let parts = (1..=w).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect();
        Partition { parts }
    }

    /// Multiplicities `m_i` of each part size `i` (index 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.width() + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// `z_λ = ∏ i^{m_i} m_i!`, the order of the centralizer of a permutation of cycle type λ.
    pub fn z(&self) -> BigUint {
        let mut z = BigUint::one();
        for (i, &m) in self.multiplicities().iter().enumerate().skip(1) {
            for j in 1..=m {
                z *= BigUint::from(i) * BigUint::from(j);
            }
        }
        z
    }

    /// `(-1)^{|λ| - ℓ(λ)}`, the sign of a permutation of this cycle type.
    pub fn sign(&self) -> i64 {
        if (self.size() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Dominance order: `self ⊵ other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Scales every part by `d` (cycle type of the `d`-th power of a long cycle family).
    pub fn scaled(&self, d: usize) -> Partition {
        Partition { parts: self.parts.iter().map(|p| p * d).collect() }
    }

    /// Union of the multisets of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }

    /// Renders with exponent shorthand, e.g. `(2^2,1^3)`.
    pub fn to_compact_string(&self) -> String {
        let mut out = String::from("(");
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == p {
                j += 1;
            }
            if i > 0 {
                out.push(',');
            }
            if j - i > 1 {
                out.push_str(&format!("{}^{}", p, j - i));
            } else {
                out.push_str(&p.to_string());
            }
            i = j;
        }
        out.push(')');
        out
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(3,1,1)`, `(3,1^2)`, `3,1,1`, `()` and `0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("bad partition {s:?}"));
        let t = s.trim();
        let t = t.strip_prefix('(').unwrap_or(t);
        let t = t.strip_suffix(')').unwrap_or(t).trim();
        if t.is_empty() || t == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in t.split(',') {
            let tok = tok.trim();
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => {
                    let e = e.trim().trim_start_matches('{').trim_end_matches('}');
                    (b.trim(), e.parse::<usize>().map_err(|_| bad())?)
                }
                None => (tok, 1),
            };
            let b = base.parse::<usize>().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat_n(b, exp));
        }
        let p = Partition::new(parts.clone());
        if p.parts != parts {
            return Err(bad());
        }
        Ok(p)
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Partition {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` with at most `k` parts.
pub fn partitions_with_at_most(n: usize, k: usize) -> Vec<Partition> {
    partitions_of(n).into_iter().filter(|p| p.len() <= k).collect()
}

fn stirling_table() -> &'static Mutex<Vec<Vec<BigUint>>> {
    static TABLE: OnceLock<Mutex<Vec<Vec<BigUint>>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![vec![BigUint::one()]]))
}

/// Unsigned Stirling number of the first kind `|s(n,k)|`.
pub fn stirling1_unsigned(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut table = stirling_table().lock().expect("stirling table poisoned");
    while table.len() <= n {
        let m = table.len();
        let prev = &table[m - 1];
        let mut row = vec![BigUint::zero(); m + 1];
        for (j, slot) in row.iter_mut().enumerate().skip(1) {
            let mut v = prev[j - 1].clone();
            if j < m {
                v += &prev[j] * BigUint::from(m - 1);
            }
            *slot = v;
        }
        table.push(row);
    }
    table[n][k].clone()
}

/// Signed Stirling number `s(n,k) = (-1)^{n-k} |s(n,k)|`.
pub fn stirling1_signed(n: usize, k: usize) -> BigInt {
    let v = BigInt::from(stirling1_unsigned(n, k));
    if (n + k).is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// Stirling number as a plain integer, for callers that know it fits.
pub fn stirling1_u64(n: usize, k: usize) -> u64 {
    u64::try_from(stirling1_unsigned(n, k)).expect("Stirling number overflows u64")
}

/// Returns `(Σ_{h=k}^{n} s(n,h) C(h,k), s(n-1,k) + s(n-1,k-1))`; the two agree.
pub fn verify_stirling_identity(n: usize, k: usize) -> (BigInt, BigInt) {
    let mut lhs = BigInt::zero();
    for h in k..=n {
        lhs += stirling1_signed(n, h) * BigInt::from(binomial(h, k));
    }
    let rhs = if n == 0 {
        // s(-1, .) does not occur in the identity's range of use; the falling
        // factorial convention gives the empty product.
        if k == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    } else {
        let a = stirling1_signed(n - 1, k);
        let b = if k == 0 { BigInt::zero() } else { stirling1_signed(n - 1, k - 1) };
        a + b
    };
    (lhs, rhs)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    r
}

pub fn binomial_u64(n: usize, k: usize) -> u64 {
    u64::try_from(binomial(n, k)).expect("binomial overflows u64")
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Möbius function.
pub fn mobius(mut n: usize) -> i64 {
    assert!(n > 0);
    let mut res = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            res = -res;
        }
        p += 1;
    }
    if n > 1 {
        res = -res;
    }
    res
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Dimension of the Specht module `S^λ` by the hook length formula.
pub fn hook_dim(lambda: &Partition) -> u64 {
    let n = lambda.size();
    let conj = lambda.conjugate();
    let mut hooks = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = conj.parts()[j] - i - 1;
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    u64::try_from(factorial(n) / hooks).expect("dimension overflows u64")
}

/// Number of semistandard tableaux of shape λ and content μ.
pub fn kostka(lambda: &Partition, mu: &Partition) -> Result<u64, Error> {
    if lambda.size() != mu.size() {
        return Err(Error::InvalidQuery(format!("kostka({lambda},{mu}): sizes differ")));
    }
    if !lambda.dominates(mu) {
        return Ok(0);
    }
    Ok(kostka_content(lambda, mu.parts()))
}

/// Kostka number for an arbitrary composition as content (the count is
/// symmetric in the order of the content).
pub fn kostka_content(lambda: &Partition, content: &[usize]) -> u64 {
    // Fill values one at a time, each as a horizontal strip.
    fn rec(shape: &[usize], target: &[usize], content: &[usize], memo: &mut HashMap<(Vec<usize>, usize), u64>) -> u64 {
        if content.is_empty() {
            return u64::from(shape == target);
        }
        let key = (shape.to_vec(), content.len());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let c = content[0];
        let mut total = 0;
        let mut next = shape.to_vec();
        strips(shape, target, 0, c, &mut next, &mut |s| {
            total += rec(s, target, &content[1..], memo);
        });
        memo.insert(key, total);
        total
    }
    // Enumerate horizontal strips of size `left` added to `shape` inside `target`.
    fn strips(
        shape: &[usize],
        target: &[usize],
        row: usize,
        left: usize,
        next: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if left == 0 {
            f(next);
            return;
        }
        if row >= target.len() {
            return;
        }
        // A horizontal strip in row r may extend up to the old length of row r-1.
        let cap = if row == 0 { target[0] } else { shape[row - 1].min(target[row]) };
        let max_add = cap.saturating_sub(shape[row]).min(left);
        for add in (0..=max_add).rev() {
            next[row] = shape[row] + add;
            strips(shape, target, row + 1, left - add, next, f);
        }
        next[row] = shape[row];
    }
    let target = lambda.parts().to_vec();
    if content.iter().sum::<usize>() != lambda.size() {
        return 0;
    }
    let start = vec![0; target.len()];
    let mut memo = HashMap::new();
    rec(&start, &target, content, &mut memo)
}
