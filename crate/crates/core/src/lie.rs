//! Multilinear free Lie algebra in the left-normed basis.
//!
//! A basis word `(b1, ..., bk)` stands for `[[...[x_b1, x_b2], ...], x_bk]`
//! with `b1 = min`. Coefficients that arise from bracketing basis words are
//! integers, so combinations carry `i64` coefficients.

use std::collections::BTreeMap;

use crate::Error;

pub type LieWord = Vec<u8>;

/// A linear combination of basis words sharing one label set.
pub type LieCombination = BTreeMap<LieWord, i64>;

/// The left-normed basis of `Lie(B)`, in lexicographic order of words.
pub fn lie_basis(labels: &[u8]) -> Result<Vec<LieWord>, Error> {
    let mut b = labels.to_vec();
    b.sort_unstable();
    b.dedup();
    if b.is_empty() {
        return Err(Error::InvalidQuery("Lie basis of the empty set".into()));
    }
    let first = b[0];
    let rest = &b[1..];
    let mut out = Vec::new();
    let mut word = vec![first];
    let mut used = vec![false; rest.len()];
    permute(rest, &mut used, &mut word, &mut out);
    Ok(out)
}

fn permute(rest: &[u8], used: &mut [bool], word: &mut Vec<u8>, out: &mut Vec<LieWord>) {
    if word.len() == rest.len() + 1 {
        out.push(word.clone());
        return;
    }
    for i in 0..rest.len() {
        if !used[i] {
            used[i] = true;
            word.push(rest[i]);
            permute(rest, used, word, out);
            word.pop();
            used[i] = false;
        }
    }
}

pub fn single(word: LieWord) -> LieCombination {
    let mut c = LieCombination::new();
    c.insert(word, 1);
    c
}

fn add_into(acc: &mut LieCombination, w: LieWord, c: i64) {
    if c == 0 {
        return;
    }
    let e = acc.entry(w.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        acc.remove(&w);
    }
}

/// `[u, [[y1, y2], ..., yk]]` for a basis word `u` whose first letter is
/// smaller than every `y`; the result is already in normal form.
fn expand(u: &[u8], ys: &[u8], coeff: i64, out: &mut LieCombination) {
    match ys.len() {
        0 => {}
        1 => {
            let mut w = u.to_vec();
            w.push(ys[0]);
            add_into(out, w, coeff);
        }
        k => {
            let last = ys[k - 1];
            let head = &ys[..k - 1];
            // [u, [Y, y]] = [[u, Y], y] - [[u, y], Y]
            let mut first = LieCombination::new();
            expand(u, head, 1, &mut first);
            for (mut w, c) in first {
                w.push(last);
                add_into(out, w, c * coeff);
            }
            let mut uy = u.to_vec();
            uy.push(last);
            expand(&uy, head, -coeff, out);
        }
    }
}

/// Bracket of two basis words on disjoint label sets.
pub fn bracket_words(u: &[u8], v: &[u8]) -> LieCombination {
    let mut out = LieCombination::new();
    if u[0] < v[0] {
        expand(u, v, 1, &mut out);
    } else {
        expand(v, u, -1, &mut out);
    }
    out
}

fn letters(c: &LieCombination) -> Option<Vec<u8>> {
    c.keys().next().map(|w| {
        let mut l = w.clone();
        l.sort_unstable();
        l
    })
}

/// `[u, v]` for combinations on disjoint label sets.
pub fn lie_bracket(u: &LieCombination, v: &LieCombination) -> Result<LieCombination, Error> {
    if let (Some(a), Some(b)) = (letters(u), letters(v)) {
        if a.iter().any(|x| b.binary_search(x).is_ok()) {
            return Err(Error::InvalidQuery("bracket of overlapping label sets".into()));
        }
    }
    let mut out = LieCombination::new();
    for (wu, cu) in u {
        for (wv, cv) in v {
            for (w, c) in bracket_words(wu, wv) {
                add_into(&mut out, w, c * cu * cv);
            }
        }
    }
    Ok(out)
}

/// Renames the letters of a basis word through `f` and renormalizes.
pub fn relabel_word(w: &[u8], f: impl Fn(u8) -> u8) -> LieCombination {
    let mut acc = single(vec![f(w[0])]);
    for &b in &w[1..] {
        let y = [f(b)];
        let mut next = LieCombination::new();
        for (wu, cu) in &acc {
            for (x, c) in bracket_words(wu, &y) {
                add_into(&mut next, x, c * cu);
            }
        }
        acc = next;
    }
    acc
}

/// Renames the letters of `u` by the bijection `map` (pairs `old -> new`).
pub fn lie_relabel(u: &LieCombination, map: &BTreeMap<u8, u8>) -> Result<LieCombination, Error> {
    let mut out = LieCombination::new();
    for (w, c) in u {
        for &b in w {
            if !map.contains_key(&b) {
                return Err(Error::InvalidQuery(format!("relabeling is undefined on {b}")));
            }
        }
        for (x, d) in relabel_word(w, |b| map[&b]) {
            add_into(&mut out, x, d * c);
        }
    }
    Ok(out)
}

/// A bracketing tree, used to feed arbitrary brackets through normalization.
#[derive(Clone, Debug)]
pub enum LieTree {
    Leaf(u8),
    Node(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
    pub fn normalize(&self) -> LieCombination {
        match self {
            LieTree::Leaf(b) => single(vec![*b]),
            LieTree::Node(l, r) => lie_bracket(&l.normalize(), &r.normalize()).expect("tree leaves are distinct"),
        }
    }
}

/// Image in the free associative algebra under `[x, y] = xy - yx`.
pub fn associative_image(c: &LieCombination) -> BTreeMap<Vec<u8>, i64> {
    let mut out = BTreeMap::new();
    for (w, k) in c {
        for (m, x) in assoc_word(w) {
            let e = out.entry(m.clone()).or_insert(0);
            *e += x * k;
            if *e == 0 {
                out.remove(&m);
            }
        }
    }
    out
}

fn assoc_word(w: &[u8]) -> BTreeMap<Vec<u8>, i64> {
    let mut acc: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    acc.insert(vec![w[0]], 1);
    for &y in &w[1..] {
        let mut next = BTreeMap::new();
        for (m, c) in acc {
            let mut right = m.clone();
            right.push(y);
            *next.entry(right).or_insert(0) += c;
            let mut left = vec![y];
            left.extend_from_slice(&m);
            *next.entry(left).or_insert(0) -= c;
        }
        acc = next;
    }
    acc.retain(|_, c| *c != 0);
    acc
}
