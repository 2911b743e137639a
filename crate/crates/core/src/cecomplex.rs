//! The Chevalley–Eilenberg complex of `H*(X) ⊗ ΣLie` in arity `n`, for `X` a
//! wedge of spheres.
//!
//! A basis element is a set partition of `{1..n}` whose blocks each carry a
//! left-normed Lie word and a label: `0` for the unit of `H*(X)`, `j ≥ 1` for
//! the generator of the `j`-th sphere. Writing `e_B` for the product of the
//! odd degree-one classes `e_b`, `b ∈ B` (in increasing order), a block stands
//! for the factor `s (e_B x_a ⊗ w)` of `Sym(g[1])`, of parity
//! `|B| - 1 + d_a`. Factors are kept sorted by block minimum.
//!
//! Gradings: column `p = n - #blocks`, internal degree `q = Σ d_label`,
//! cohomological degree `i = p + q`. The differential raises `p` by one.
//!
//! Sign of the merge of factors `i < j` (at least one labeled by the unit):
//! the Koszul sign for bringing `F_i` and then `F_j` to the front, times
//! `(-1)^{|e_Bi x_ai|}` from `δ(sx·sy) = (-1)^{|x|} s[x, y]`, times
//! `(-1)^{d_ai |Bj|}` for moving `x_ai` past `e_Bj`, times the sign sorting
//! `e_Bi e_Bj`, times the Koszul sign for moving the merged factor back to
//! position `i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::PathBuf;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::lie::{bracket_words, lie_basis, relabel_word};
use crate::linalg::{cokernel_traces, normalize_row, SparseMatrix};
use crate::schar::ClassFunction;
use crate::{Error, Partition, Q};

/// Dimensions `(d_1, ..., d_g)` of the wedge summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WedgeSignature {
    dims: Vec<u32>,
}

impl WedgeSignature {
    pub fn new(dims: Vec<u32>) -> Result<Self, Error> {
        if dims.contains(&0) {
            return Err(Error::InvalidQuery("sphere dimensions must be at least 1".into()));
        }
        if dims.len() > 200 {
            return Err(Error::InvalidQuery("too many wedge summands".into()));
        }
        Ok(WedgeSignature { dims })
    }

    pub fn equidimensional(d: u32, g: usize) -> Self {
        WedgeSignature::new(vec![d; g]).expect("valid")
    }

    pub fn circles(g: usize) -> Self {
        WedgeSignature::equidimensional(1, g)
    }

    pub fn genus(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    /// Dimension carried by a label; the unit has dimension 0.
    pub fn dim(&self, label: u8) -> u32 {
        if label == 0 {
            0
        } else {
            self.dims[label as usize - 1]
        }
    }
}

impl std::str::FromStr for WedgeSignature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let dims = s
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{x}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        WedgeSignature::new(dims)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    /// Left-normed Lie word; the first letter is the block minimum.
    pub word: Vec<u8>,
    /// `0` for the unit, otherwise a generator index.
    pub label: u8,
}

impl Block {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn min(&self) -> u8 {
        self.word[0]
    }

    /// Parity of the suspended factor `s(e_B x_a ⊗ w)`.
    fn parity(&self, sig: &WedgeSignature) -> u32 {
        (self.len() as u32 - 1 + sig.dim(self.label)) % 2
    }

    fn sorted_letters(&self) -> Vec<u8> {
        let mut l = self.word.clone();
        l.sort_unstable();
        l
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CeElement {
    pub blocks: Vec<Block>,
}

impl CeElement {
    pub fn n(&self) -> usize {
        self.blocks.iter().map(Block::len).sum()
    }

    pub fn column(&self) -> usize {
        self.n() - self.blocks.len()
    }

    pub fn internal_degree(&self, sig: &WedgeSignature) -> u32 {
        self.blocks.iter().map(|b| sig.dim(b.label)).sum()
    }

    pub fn degree(&self, sig: &WedgeSignature) -> u32 {
        self.column() as u32 + self.internal_degree(sig)
    }

    pub fn multidegree(&self, g: usize) -> Vec<usize> {
        let mut m = vec![0; g];
        for b in &self.blocks {
            if b.label > 0 {
                m[b.label as usize - 1] += 1;
            }
        }
        m
    }
}

impl fmt::Display for CeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            let w: Vec<String> = b.word.iter().map(|x| x.to_string()).collect();
            let l = if b.label == 0 { "1".to_string() } else { format!("x{}", b.label) };
            write!(f, "{{{}|{}}}", w.join(","), l)?;
        }
        Ok(())
    }
}

/// Restrictions applied during enumeration.
#[derive(Clone, Debug, Default)]
pub struct Filter {
    pub column: Option<usize>,
    pub multidegree: Option<Vec<usize>>,
    /// Only allow unit labels on singleton blocks.
    pub unit_singletons_only: bool,
}

impl Filter {
    pub fn cell(column: usize, multidegree: &[usize]) -> Self {
        Filter { column: Some(column), multidegree: Some(multidegree.to_vec()), unit_singletons_only: false }
    }
}

/// Set partitions of `{1..n}` with blocks sorted by minimum.
pub fn set_partitions(n: usize, nblocks: Option<usize>) -> Vec<Vec<Vec<u8>>> {
    fn rec(i: usize, n: usize, cur: &mut Vec<Vec<u8>>, target: Option<usize>, out: &mut Vec<Vec<Vec<u8>>>) {
        if let Some(t) = target {
            if cur.len() > t || cur.len() + (n - i) < t {
                return;
            }
        }
        if i == n {
            out.push(cur.clone());
            return;
        }
        let x = (i + 1) as u8;
        for k in 0..cur.len() {
            cur[k].push(x);
            rec(i + 1, n, cur, target, out);
            cur[k].pop();
        }
        cur.push(vec![x]);
        rec(i + 1, n, cur, target, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), nblocks, &mut out);
    out
}

/// All basis elements matching `filter`, sorted.
pub fn enumerate_basis(n: usize, sig: &WedgeSignature, filter: &Filter) -> Vec<CeElement> {
    let g = sig.genus();
    if let Some(md) = &filter.multidegree {
        if md.len() != g {
            return Vec::new();
        }
    }
    let nblocks = filter.column.map(|p| n.checked_sub(p)).unwrap_or(None);
    if filter.column.is_some() && (nblocks.is_none() || nblocks == Some(0) && n > 0) {
        return Vec::new();
    }
    let parts = set_partitions(n, nblocks);
    let mut out: Vec<CeElement> = parts
        .par_iter()
        .flat_map_iter(|part| {
            let words: Vec<Vec<Vec<u8>>> = part.iter().map(|b| lie_basis(b).expect("nonempty block")).collect();
            let mut labelings = Vec::new();
            let mut cur = Vec::with_capacity(part.len());
            let remaining = filter.multidegree.clone();
            label_rec(part, 0, g, remaining, filter.unit_singletons_only, &mut cur, &mut labelings);
            let mut local = Vec::new();
            for labels in labelings {
                let mut idx = vec![0usize; part.len()];
                loop {
                    let blocks =
                        (0..part.len()).map(|k| Block { word: words[k][idx[k]].clone(), label: labels[k] }).collect();
                    local.push(CeElement { blocks });
                    let mut k = 0;
                    while k < part.len() {
                        idx[k] += 1;
                        if idx[k] < words[k].len() {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == part.len() {
                        break;
                    }
                }
            }
            local
        })
        .collect();
    out.par_sort_unstable();
    out
}

fn label_rec(
    part: &[Vec<u8>],
    k: usize,
    g: usize,
    remaining: Option<Vec<usize>>,
    singletons_only: bool,
    cur: &mut Vec<u8>,
    out: &mut Vec<Vec<u8>>,
) {
    if k == part.len() {
        if remaining.as_ref().is_none_or(|r| r.iter().all(|&x| x == 0)) {
            out.push(cur.clone());
        }
        return;
    }
    if let Some(r) = &remaining {
        let need: usize = r.iter().sum();
        if need > part.len() - k {
            return;
        }
    }
    for l in 0..=g {
        let mut rem = remaining.clone();
        if l == 0 {
            if singletons_only && part[k].len() > 1 {
                continue;
            }
        } else if let Some(r) = &mut rem {
            if r[l - 1] == 0 {
                continue;
            }
            r[l - 1] -= 1;
        }
        cur.push(l as u8);
        label_rec(part, k + 1, g, rem, singletons_only, cur, out);
        cur.pop();
    }
}

fn sgn(e: u32) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Image of a basis element under the differential.
pub fn differential_of(e: &CeElement, sig: &WedgeSignature) -> Vec<(CeElement, i64)> {
    let m = e.blocks.len();
    let pars: Vec<u32> = e.blocks.iter().map(|b| b.parity(sig)).collect();
    let mut prefix = vec![0u32; m + 1];
    for k in 0..m {
        prefix[k + 1] = prefix[k] + pars[k];
    }
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let (bi, bj) = (&e.blocks[i], &e.blocks[j]);
            if bi.label != 0 && bj.label != 0 {
                continue;
            }
            let (di, dj) = (sig.dim(bi.label), sig.dim(bj.label));
            let eps = pars[i] * prefix[i] + pars[j] * (prefix[j] - pars[i]);
            let x_i = bi.len() as u32 + di;
            let cross = di * bj.len() as u32;
            let (li, lj) = (bi.sorted_letters(), bj.sorted_letters());
            let mut shuffle = 0u32;
            for &x in &li {
                shuffle += lj.iter().filter(|&&y| y < x).count() as u32;
            }
            let label = bi.label.max(bj.label);
            let par_new = (bi.len() as u32 + bj.len() as u32 - 1 + di + dj) % 2;
            let placement = par_new * prefix[i];
            let s = sgn(eps + x_i + cross + shuffle + placement);
            for (w, c) in bracket_words(&bi.word, &bj.word) {
                let mut blocks = Vec::with_capacity(m - 1);
                for (k, b) in e.blocks.iter().enumerate() {
                    if k == i {
                        blocks.push(Block { word: w.clone(), label });
                    } else if k != j {
                        blocks.push(b.clone());
                    }
                }
                out.push((CeElement { blocks }, s * c));
            }
        }
    }
    out
}

/// Image of a basis element under the permutation `sigma` (`sigma[b-1]` is
/// the image of `b`).
pub fn act(sigma: &[u8], e: &CeElement, sig: &WedgeSignature) -> Vec<(CeElement, i64)> {
    let f = |b: u8| sigma[b as usize - 1];
    let mut sign = 1i64;
    let mut moved: Vec<(u8, u32, u8, Vec<(Vec<u8>, i64)>)> = Vec::with_capacity(e.blocks.len());
    for b in &e.blocks {
        let images: Vec<u8> = b.sorted_letters().into_iter().map(f).collect();
        let mut inv = 0u32;
        for x in 0..images.len() {
            for y in x + 1..images.len() {
                if images[x] > images[y] {
                    inv += 1;
                }
            }
        }
        sign *= sgn(inv);
        let lie: Vec<(Vec<u8>, i64)> = relabel_word(&b.word, f).into_iter().collect();
        let min = *images.iter().min().expect("nonempty");
        moved.push((min, b.parity(sig), b.label, lie));
    }
    let m = moved.len();
    let mut koszul = 0u32;
    for x in 0..m {
        for y in x + 1..m {
            if moved[x].0 > moved[y].0 {
                koszul += moved[x].1 * moved[y].1;
            }
        }
    }
    sign *= sgn(koszul);
    moved.sort_by_key(|t| t.0);
    let mut out = Vec::new();
    let mut idx = vec![0usize; m];
    loop {
        let mut c = sign;
        let mut blocks = Vec::with_capacity(m);
        for k in 0..m {
            let (w, x) = &moved[k].3[idx[k]];
            c *= x;
            blocks.push(Block { word: w.clone(), label: moved[k].2 });
        }
        out.push((CeElement { blocks }, c));
        let mut k = 0;
        while k < m {
            idx[k] += 1;
            if idx[k] < moved[k].3.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == m {
            break;
        }
    }
    out
}

/// A permutation of cycle type `rho` on `1..n`: consecutive cycles.
pub fn class_representative(rho: &Partition) -> Vec<u8> {
    let n = rho.size();
    let mut sigma = vec![0u8; n];
    let mut start = 0usize;
    for &len in rho.parts() {
        for k in 0..len {
            sigma[start + k] = (start + (k + 1) % len + 1) as u8;
        }
        start += len;
    }
    sigma
}

fn index_of(basis: &[CeElement]) -> HashMap<&CeElement, usize> {
    basis.iter().enumerate().map(|(i, e)| (e, i)).collect()
}

fn matrix_in(
    source: &[CeElement],
    target: &[CeElement],
    f: impl Fn(&CeElement) -> Vec<(CeElement, i64)> + Sync,
) -> Result<SparseMatrix, Error> {
    let idx = index_of(target);
    let rows: Result<Vec<_>, Error> = source
        .par_iter()
        .map(|e| {
            let mut row = Vec::new();
            for (x, c) in f(e) {
                let k = *idx.get(&x).ok_or_else(|| Error::Inconsistent(format!("{x} is not in the target basis")))?;
                row.push((k, c));
            }
            Ok(normalize_row(row))
        })
        .collect();
    Ok(SparseMatrix { nrows: source.len(), ncols: target.len(), rows: rows? })
}

/// Matrix of the action of `sigma` on a basis closed under the action.
pub fn permutation_action(sigma: &[u8], basis: &[CeElement], sig: &WedgeSignature) -> Result<SparseMatrix, Error> {
    matrix_in(basis, basis, |e| act(sigma, e, sig))
}

/// Trace of `sigma` on the span of `basis`.
pub fn chain_trace(sigma: &[u8], basis: &[CeElement], sig: &WedgeSignature) -> i64 {
    basis.par_iter().map(|e| act(sigma, e, sig).into_iter().filter(|(x, _)| x == e).map(|(_, c)| c).sum::<i64>()).sum()
}

/// The differential out of one (column, multidegree) cell.
pub struct Differential {
    pub source: Vec<CeElement>,
    pub target: Vec<CeElement>,
    pub matrix: SparseMatrix,
}

pub const CACHE_ENV: &str = "WEDGECONF_CACHE_DIR";
const CACHE_HEADER: &str = "wedgeconf-differential v1";

fn cache_path(n: usize, sig: &WedgeSignature, p: usize, md: &[usize]) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let join = |v: Vec<String>| v.join("-");
    let name = format!(
        "d_n{}_s{}_m{}_p{}.txt",
        n,
        join(sig.dims().iter().map(|d| d.to_string()).collect()),
        join(md.iter().map(|d| d.to_string()).collect()),
        p
    );
    Some(PathBuf::from(dir).join(name))
}

/// Text format: a header line, a `nrows ncols` line, then one line per row
/// of space-separated `col:value` pairs.
fn write_matrix(path: &PathBuf, m: &SparseMatrix) -> std::io::Result<()> {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = writeln!(s, "{CACHE_HEADER}");
    let _ = writeln!(s, "{} {}", m.nrows, m.ncols);
    for row in &m.rows {
        let parts: Vec<String> = row.iter().map(|(c, x)| format!("{c}:{x}")).collect();
        let _ = writeln!(s, "{}", parts.join(" "));
    }
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, s)?;
    std::fs::rename(tmp, path)
}

fn read_matrix(path: &PathBuf) -> Option<SparseMatrix> {
    let text = std::fs::read_to_string(path).ok()?;
    let mut lines = text.lines();
    if lines.next()? != CACHE_HEADER {
        return None;
    }
    let mut dims = lines.next()?.split_whitespace().map(|x| x.parse::<usize>());
    let (nrows, ncols) = (dims.next()?.ok()?, dims.next()?.ok()?);
    let mut rows = Vec::with_capacity(nrows);
    for _ in 0..nrows {
        let line = lines.next()?;
        let mut row = Vec::new();
        for tok in line.split_whitespace() {
            let (c, x) = tok.split_once(':')?;
            row.push((c.parse().ok()?, x.parse().ok()?));
        }
        rows.push(row);
    }
    Some(SparseMatrix { nrows, ncols, rows })
}

/// The differential from column `p` to column `p + 1` in multidegree `md`.
pub fn differential(n: usize, sig: &WedgeSignature, p: usize, md: &[usize]) -> Result<Differential, Error> {
    let source = enumerate_basis(n, sig, &Filter::cell(p, md));
    let target = enumerate_basis(n, sig, &Filter::cell(p + 1, md));
    let cache = cache_path(n, sig, p, md);
    if let Some(path) = &cache {
        if let Some(m) = read_matrix(path) {
            if m.nrows == source.len() && m.ncols == target.len() {
                return Ok(Differential { source, target, matrix: m });
            }
        }
    }
    let matrix = matrix_in(&source, &target, |e| differential_of(e, sig))?;
    if let Some(path) = &cache {
        write_matrix(path, &matrix)?;
    }
    Ok(Differential { source, target, matrix })
}

/// All multidegrees `a` with `Σ a_j ≤ n`.
pub fn multidegrees(n: usize, g: usize) -> Vec<Vec<usize>> {
    fn rec(g: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == g {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(g, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(g, n, &mut Vec::new(), &mut out);
    out
}

/// Homology dimensions keyed by `(column p, degree i, multidegree)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedHomology {
    pub dims: BTreeMap<(usize, u32, Vec<usize>), usize>,
    /// Chain dimensions keyed the same way.
    pub chain_dims: BTreeMap<(usize, u32, Vec<usize>), usize>,
}

impl GradedHomology {
    pub fn total_in_degree(&self, i: u32) -> usize {
        self.dims.iter().filter(|(k, _)| k.1 == i).map(|(_, d)| d).sum()
    }

    pub fn merge(&mut self, other: GradedHomology) {
        self.dims.extend(other.dims);
        self.chain_dims.extend(other.chain_dims);
    }

    /// `Σ (-1)^i dim` over homology and over chains.
    pub fn euler_characteristics(&self) -> (i64, i64) {
        let e = |m: &BTreeMap<(usize, u32, Vec<usize>), usize>| {
            m.iter().map(|(k, d)| if k.1 % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum()
        };
        (e(&self.dims), e(&self.chain_dims))
    }
}

/// The full complex of one multidegree: bases of every column and the
/// differentials between them.
pub struct CellComplex {
    pub n: usize,
    pub sig: WedgeSignature,
    pub multidegree: Vec<usize>,
    pub columns: Vec<Vec<CeElement>>,
    pub differentials: Vec<SparseMatrix>,
}

impl CellComplex {
    pub fn build(n: usize, sig: &WedgeSignature, md: &[usize]) -> Result<Self, Error> {
        let k: usize = md.iter().sum();
        if md.len() != sig.genus() || k > n {
            return Err(Error::InvalidQuery(format!("multidegree {md:?} does not fit n={n}, g={}", sig.genus())));
        }
        let top = n - k;
        let mut columns = Vec::with_capacity(top + 1);
        let mut differentials = Vec::with_capacity(top);
        for p in 0..=top {
            columns.push(enumerate_basis(n, sig, &Filter::cell(p, md)));
        }
        for p in 0..top {
            let d = match cache_path(n, sig, p, md).as_ref().and_then(read_matrix) {
                Some(m) if m.nrows == columns[p].len() && m.ncols == columns[p + 1].len() => m,
                _ => {
                    let m = matrix_in(&columns[p], &columns[p + 1], |e| differential_of(e, sig))?;
                    if let Some(path) = cache_path(n, sig, p, md) {
                        write_matrix(&path, &m)?;
                    }
                    m
                }
            };
            differentials.push(d);
        }
        Ok(CellComplex { n, sig: sig.clone(), multidegree: md.to_vec(), columns, differentials })
    }

    pub fn internal_degree(&self) -> u32 {
        self.multidegree.iter().zip(self.sig.dims()).map(|(&a, &d)| a as u32 * d).sum()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.differentials.par_iter().map(SparseMatrix::rank).collect()
    }

    pub fn homology(&self) -> GradedHomology {
        let ranks = self.ranks();
        let q = self.internal_degree();
        let mut h = GradedHomology::default();
        for (p, col) in self.columns.iter().enumerate() {
            let out_rank = ranks.get(p).copied().unwrap_or(0);
            let in_rank = if p > 0 { ranks[p - 1] } else { 0 };
            let key = (p, p as u32 + q, self.multidegree.clone());
            h.chain_dims.insert(key.clone(), col.len());
            let d = col.len() - out_rank - in_rank;
            if d > 0 {
                h.dims.insert(key, d);
            }
        }
        h
    }

    /// Traces of `sigmas` on the homology of every column.
    pub fn homology_traces(&self, sigmas: &[Vec<u8>]) -> Result<Vec<Vec<Q>>, Error> {
        let sig = &self.sig;
        let ncol = self.columns.len();
        let chain: Vec<Vec<i64>> =
            self.columns.iter().map(|c| sigmas.iter().map(|s| chain_trace(s, c, sig)).collect()).collect();
        // coker[p] = traces on column p modulo the image of δ_{p-1}
        let mut coker: Vec<Vec<Q>> = Vec::with_capacity(ncol);
        for p in 0..ncol {
            if p == 0 {
                coker.push(chain[0].iter().map(|&x| Q::from_integer(BigInt::from(x))).collect());
                continue;
            }
            let target = &self.columns[p];
            let idx = index_of(target);
            let apply = |op: usize, j: usize| -> Vec<(usize, i64)> {
                act(&sigmas[op], &target[j], sig).into_iter().map(|(x, c)| (idx[&x], c)).collect()
            };
            let t = cokernel_traces(target.len(), &self.differentials[p - 1].rows, sigmas.len(), &apply);
            coker.push(t.traces);
        }
        let mut out = Vec::with_capacity(ncol);
        for p in 0..ncol {
            let mut row = Vec::with_capacity(sigmas.len());
            for s in 0..sigmas.len() {
                // tr H_p = tr coker δ_p + tr coker δ_{p-1} - tr C_{p+1}
                let out_coker = if p + 1 < ncol { coker[p + 1][s].clone() } else { Q::from_integer(0.into()) };
                let next = if p + 1 < ncol { chain[p + 1][s] } else { 0 };
                row.push(out_coker + coker[p][s].clone() - Q::from_integer(BigInt::from(next)));
            }
            out.push(row);
        }
        Ok(out)
    }

    /// S_n-characters of the homology of every column.
    pub fn homology_characters(&self) -> Result<Vec<ClassFunction>, Error> {
        let classes = crate::combinat::partitions_of(self.n);
        let sigmas: Vec<Vec<u8>> = classes.iter().map(class_representative).collect();
        let traces = self.homology_traces(&sigmas)?;
        Ok(traces
            .into_iter()
            .map(|t| {
                let mut f = ClassFunction::zero(self.n);
                for (c, v) in classes.iter().zip(t) {
                    f.set(c, v);
                }
                f
            })
            .collect())
    }
}

/// Homology of the multidegree-`md` subcomplex.
pub fn homology(n: usize, sig: &WedgeSignature, md: &[usize]) -> Result<GradedHomology, Error> {
    Ok(CellComplex::build(n, sig, md)?.homology())
}

/// Homology of every multidegree subcomplex.
pub fn homology_all(n: usize, sig: &WedgeSignature) -> Result<GradedHomology, Error> {
    let mut h = GradedHomology::default();
    for md in multidegrees(n, sig.genus()) {
        h.merge(homology(n, sig, &md)?);
    }
    Ok(h)
}

/// The two columns carrying the homology of one multidegree: the top column
/// (every block labeled) and the elements of the next column whose single
/// unit block is a singleton, with the differential between them. Its
/// cokernel is the top homology and its kernel the homology one column down.
pub struct ReducedModel {
    pub n: usize,
    pub sig: WedgeSignature,
    pub multidegree: Vec<usize>,
    pub top: Vec<CeElement>,
    pub sub: Vec<CeElement>,
    pub matrix: SparseMatrix,
}

/// Dimensions or traces on the two homology columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoColumns<T> {
    /// Column `n - k`, degree `n - k + q`.
    pub top: T,
    /// Column `n - k - 1`, degree `n - k - 1 + q`.
    pub below: T,
}

impl ReducedModel {
    pub fn build(n: usize, sig: &WedgeSignature, md: &[usize]) -> Result<Self, Error> {
        let k: usize = md.iter().sum();
        if md.len() != sig.genus() || k > n {
            return Err(Error::InvalidQuery(format!("multidegree {md:?} does not fit n={n}, g={}", sig.genus())));
        }
        let top = enumerate_basis(n, sig, &Filter::cell(n - k, md));
        let sub = if k < n {
            let f = Filter { column: Some(n - k - 1), multidegree: Some(md.to_vec()), unit_singletons_only: true };
            enumerate_basis(n, sig, &f)
        } else {
            Vec::new()
        };
        let matrix = matrix_in(&sub, &top, |e| differential_of(e, sig))?;
        Ok(ReducedModel { n, sig: sig.clone(), multidegree: md.to_vec(), top, sub, matrix })
    }

    pub fn top_column(&self) -> usize {
        self.n - self.multidegree.iter().sum::<usize>()
    }

    pub fn internal_degree(&self) -> u32 {
        self.multidegree.iter().zip(self.sig.dims()).map(|(&a, &d)| a as u32 * d).sum()
    }

    pub fn dims(&self) -> TwoColumns<usize> {
        let r = self.matrix.rank();
        TwoColumns { top: self.top.len() - r, below: self.sub.len() - r }
    }

    /// Traces of the given permutations on both homology columns.
    pub fn traces(&self, sigmas: &[Vec<u8>]) -> TwoColumns<Vec<Q>> {
        let sig = &self.sig;
        let idx = index_of(&self.top);
        let apply = |op: usize, j: usize| -> Vec<(usize, i64)> {
            act(&sigmas[op], &self.top[j], sig).into_iter().map(|(x, c)| (idx[&x], c)).collect()
        };
        let t = cokernel_traces(self.top.len(), &self.matrix.rows, sigmas.len(), &apply);
        let mut below = Vec::with_capacity(sigmas.len());
        for (s, coker) in sigmas.iter().zip(&t.traces) {
            let c0 = chain_trace(s, &self.top, sig);
            let c1 = chain_trace(s, &self.sub, sig);
            below.push(Q::from_integer(BigInt::from(c1 - c0)) + coker);
        }
        TwoColumns { top: t.traces, below }
    }

    /// S_n-characters of both homology columns.
    pub fn characters(&self) -> TwoColumns<ClassFunction> {
        let classes = crate::combinat::partitions_of(self.n);
        let sigmas: Vec<Vec<u8>> = classes.iter().map(class_representative).collect();
        let t = self.traces(&sigmas);
        let mk = |v: Vec<Q>| {
            let mut f = ClassFunction::zero(self.n);
            for (c, x) in classes.iter().zip(v) {
                f.set(c, x);
            }
            f
        };
        TwoColumns { top: mk(t.top), below: mk(t.below) }
    }
}

/// `Σ_a dim H^{i}(column p, multidegree a) ∏ c_j^{a_j}`, from the two-column
/// model of each multidegree.
pub fn diagonal_trace(n: usize, sig: &WedgeSignature, scale: &[Q], p: usize, i: u32) -> Result<Q, Error> {
    if scale.len() != sig.genus() {
        return Err(Error::InvalidQuery("one scale factor per wedge summand".into()));
    }
    let mut total = Q::from_integer(0.into());
    for md in multidegrees(n, sig.genus()) {
        let k: usize = md.iter().sum();
        let model = ReducedModel::build(n, sig, &md)?;
        let q = model.internal_degree();
        let dims = model.dims();
        let mut dim = 0;
        if p == n - k && i == p as u32 + q {
            dim += dims.top;
        }
        if k < n && p == n - k - 1 && i == p as u32 + q {
            dim += dims.below;
        }
        if dim > 0 {
            let mut w = Q::from_integer(BigInt::from(dim));
            for (c, &a) in scale.iter().zip(&md) {
                for _ in 0..a {
                    w *= c;
                }
            }
            total += w;
        }
    }
    Ok(total)
}
