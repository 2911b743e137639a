//! Plain-text and markdown rendering.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use wedgeconf::decomp::EquivDecomposition;
use wedgeconf::schar::{decompose, ClassFunction};
use wedgeconf::symfunc::{Basis, SymFunc};
use wedgeconf::{Error, Partition};

/// `2*(3,1) + (2,2)`, or `0`.
pub fn sum<'a, C: std::fmt::Display + PartialEq + 'a>(
    terms: impl IntoIterator<Item = (&'a Partition, C)>,
    one: C,
) -> String {
    let parts: Vec<String> =
        terms.into_iter().map(|(p, c)| if c == one { p.to_string() } else { format!("{c}*{p}") }).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

pub fn character(f: &ClassFunction) -> Result<String, Error> {
    let d = decompose(f)?;
    Ok(sum(d.iter(), &BigInt::from(1)))
}

pub fn schur_expansion(f: &SymFunc) -> String {
    let s = f.convert(Basis::S);
    let terms: Vec<(Partition, String)> =
        s.terms().iter().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (p.clone(), c.to_string())).collect();
    sum(terms.iter().map(|(p, c)| (p, c.as_str())), "1")
}

fn row_text(row: &BTreeMap<Partition, u64>) -> String {
    sum(row.iter().map(|(p, c)| (p, *c)), 1)
}

/// One markdown table per degree `n-1`, `n`: rows `λ`, entries the Schur
/// functors with multiplicity.
pub fn markdown(dec: &EquivDecomposition) -> String {
    let n = dec.n;
    let degrees = if n == 0 { vec![0] } else { vec![n - 1, n] };
    let mut out = String::new();
    for i in degrees {
        out.push_str(&format!("### H^{i}_c, n = {n}\n\n| λ | multiplicity |\n|---|---|\n"));
        let deg = dec.in_degree(i);
        for lambda in wedgeconf::combinat::partitions_of(n) {
            let row: BTreeMap<Partition, u64> =
                deg.iter().filter(|((l, _), _)| *l == lambda).map(|((_, m), c)| (m.clone(), *c)).collect();
            out.push_str(&format!("| {lambda} | {} |\n", row_text(&row)));
        }
        out.push('\n');
    }
    out
}
