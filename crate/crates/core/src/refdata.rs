//! Bundled reference tables of the isotypic multiplicities in
//! `gr H^{n-1}_c(F(X, n))` for wedges of circles, `n = 2..9`, and the JSON
//! rendering shared with the command-line tool.
//!
//! File format: `#` comments, then `n <n>`, `degree <i>`, and one line per
//! row `row <λ> | <multiplicities> | <verbatim source row>`, where the
//! multiplicities read like `2*(4) + (1^2)` or `0`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinat::partitions_of;
use crate::decomp::{EquivDecomposition, CIRCLE_EVALUATED};
use crate::{Error, Partition};

const FILES: [(usize, &str); 8] = [
    (2, include_str!("../data/table_n2.txt")),
    (3, include_str!("../data/table_n3.txt")),
    (4, include_str!("../data/table_n4.txt")),
    (5, include_str!("../data/table_n5.txt")),
    (6, include_str!("../data/table_n6.txt")),
    (7, include_str!("../data/table_n7.txt")),
    (8, include_str!("../data/table_n8.txt")),
    (9, include_str!("../data/table_n9.txt")),
];

/// Dimensions of the weight-zero part of `H^{n+2}_c(M_{2,n})` for `n = 0..=10`.
pub const M2N_DIMENSIONS: [u64; 11] = [0, 0, 0, 0, 1, 5, 26, 155, 1066, 8666, 81012];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub lambda: Partition,
    /// Schur functors, repeated according to multiplicity.
    pub schur: Vec<Partition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verbatim: Option<String>,
}

impl ReferenceRow {
    pub fn multiplicities(&self) -> BTreeMap<Partition, u64> {
        let mut m = BTreeMap::new();
        for mu in &self.schur {
            *m.entry(mu.clone()).or_insert(0) += 1;
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceTable {
    pub n: usize,
    #[serde(rename = "i")]
    pub degree: usize,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub source: String,
    pub rows: Vec<ReferenceRow>,
}

/// One line of a diff between a reference table and a computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub lambda: Partition,
    pub mu: Partition,
    pub expected: u64,
    pub got: u64,
}

fn parse_multiplicities(s: &str) -> Result<Vec<Partition>, Error> {
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for term in s.split(" + ") {
        let term = term.trim();
        let (c, p) = match term.split_once('*') {
            Some((c, p)) => (c.parse::<usize>().map_err(|e| Error::Parse(format!("{term}: {e}")))?, p),
            None => (1, term),
        };
        let mu: Partition = p.parse()?;
        out.extend(std::iter::repeat_n(mu, c));
    }
    out.sort();
    Ok(out)
}

fn render_multiplicities(schur: &[Partition]) -> String {
    if schur.is_empty() {
        return "0".into();
    }
    let mut counts: BTreeMap<&Partition, usize> = BTreeMap::new();
    for mu in schur {
        *counts.entry(mu).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|(mu, c)| if c == 1 { mu.to_compact_string() } else { format!("{c}*{}", mu.to_compact_string()) })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl ReferenceTable {
    pub fn parse(text: &str, source: &str) -> Result<Self, Error> {
        let mut n = None;
        let mut degree = None;
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(v) = line.strip_prefix("n ") {
                n = Some(v.trim().parse().map_err(|e| Error::Parse(format!("n: {e}")))?);
            } else if let Some(v) = line.strip_prefix("degree ") {
                degree = Some(v.trim().parse().map_err(|e| Error::Parse(format!("degree: {e}")))?);
            } else if let Some(v) = line.strip_prefix("row ") {
                let mut f = v.splitn(3, " | ");
                let lambda: Partition = f.next().unwrap_or("").parse()?;
                let schur = parse_multiplicities(f.next().ok_or_else(|| Error::Parse(line.into()))?)?;
                let verbatim = f.next().map(str::to_string);
                rows.push(ReferenceRow { lambda, schur, verbatim });
            } else {
                return Err(Error::Parse(format!("unrecognized line {line:?}")));
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing n".into()))?;
        let degree = degree.ok_or_else(|| Error::Parse("missing degree".into()))?;
        let table = ReferenceTable { n, degree, source: source.to_string(), rows };
        table.validate()?;
        Ok(table)
    }

    fn validate(&self) -> Result<(), Error> {
        let lambdas: Vec<Partition> = self.rows.iter().map(|r| r.lambda.clone()).collect();
        if lambdas != partitions_of(self.n) {
            return Err(Error::Parse(format!("rows of the n={} table are not the partitions of n in order", self.n)));
        }
        Ok(())
    }

    /// The bundled table for `n ∈ 2..=9`.
    pub fn bundled(n: usize) -> Result<Self, Error> {
        let (_, text) = FILES
            .iter()
            .find(|(m, _)| *m == n)
            .ok_or_else(|| Error::InvalidQuery(format!("no reference table for n={n}")))?;
        ReferenceTable::parse(text, &format!("bundled reference data table_n{n}.txt"))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\ndegree {}\n", self.n, self.degree);
        for r in &self.rows {
            s.push_str(&format!("row {} | {}", r.lambda.to_compact_string(), render_multiplicities(&r.schur)));
            if let Some(v) = &r.verbatim {
                s.push_str(" | ");
                s.push_str(v);
            }
            s.push('\n');
        }
        s
    }

    /// The table a decomposition (circle-evaluated) gives in degree `i`.
    pub fn from_decomposition(dec: &EquivDecomposition, i: usize) -> Result<Self, Error> {
        if dec.convention != CIRCLE_EVALUATED {
            return Err(Error::InvalidQuery("tables are read in the circle-evaluated convention".into()));
        }
        let deg = dec.in_degree(i);
        let rows = partitions_of(dec.n)
            .into_iter()
            .map(|lambda| {
                let mut schur = Vec::new();
                for ((l, mu), &m) in &deg {
                    if *l == lambda {
                        schur.extend(std::iter::repeat_n(mu.clone(), m as usize));
                    }
                }
                schur.sort();
                ReferenceRow { lambda, schur, verbatim: None }
            })
            .collect();
        Ok(ReferenceTable { n: dec.n, degree: i, source: String::new(), rows })
    }

    /// Entrywise differences against a computed table.
    pub fn diff(&self, got: &ReferenceTable) -> Vec<Mismatch> {
        let mut out = Vec::new();
        let empty = BTreeMap::new();
        let index = |t: &ReferenceTable| -> BTreeMap<Partition, BTreeMap<Partition, u64>> {
            t.rows.iter().map(|r| (r.lambda.clone(), r.multiplicities())).collect()
        };
        let (a, b) = (index(self), index(got));
        let mut lambdas: Vec<&Partition> = a.keys().chain(b.keys()).collect();
        lambdas.sort();
        lambdas.dedup();
        for lambda in lambdas {
            let (ea, eb) = (a.get(lambda).unwrap_or(&empty), b.get(lambda).unwrap_or(&empty));
            let mut mus: Vec<&Partition> = ea.keys().chain(eb.keys()).collect();
            mus.sort();
            mus.dedup();
            for mu in mus {
                let (x, y) = (ea.get(mu).copied().unwrap_or(0), eb.get(mu).copied().unwrap_or(0));
                if x != y {
                    out.push(Mismatch { lambda: lambda.clone(), mu: mu.clone(), expected: x, got: y });
                }
            }
        }
        out
    }
}

/// JSON document emitted by the table command: one table per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub n: usize,
    pub convention: String,
    pub degrees: Vec<ReferenceTable>,
}

impl TableDocument {
    pub fn from_decomposition(dec: &EquivDecomposition) -> Result<Self, Error> {
        let n = dec.n;
        let degrees = [n.saturating_sub(1), n]
            .into_iter()
            .map(|i| ReferenceTable::from_decomposition(dec, i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TableDocument { n, convention: "circle-evaluated".into(), degrees })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn degree(&self, i: usize) -> Option<&ReferenceTable> {
        self.degrees.iter().find(|t| t.degree == i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables_load() {
        for n in 2..=9 {
            let t = ReferenceTable::bundled(n).unwrap();
            assert_eq!(t.n, n);
            assert_eq!(t.degree, n - 1);
            assert_eq!(t.rows.len(), partitions_of(n).len());
        }
        assert!(ReferenceTable::bundled(10).is_err());
    }

    #[test]
    fn text_round_trip() {
        for n in 2..=9 {
            let t = ReferenceTable::bundled(n).unwrap();
            let again = ReferenceTable::parse(&t.to_text(), &t.source).unwrap();
            assert_eq!(again, t);
        }
    }

    #[test]
    fn sample_rows() {
        let t5 = ReferenceTable::bundled(5).unwrap();
        let row = t5.rows.iter().find(|r| r.lambda == "(3,1,1)".parse().unwrap()).unwrap();
        assert_eq!(render_multiplicities(&row.schur), "(3) + (1)");
        let t9 = ReferenceTable::bundled(9).unwrap();
        let row = t9.rows.iter().find(|r| r.lambda == "(2^4,1)".parse().unwrap()).unwrap();
        assert_eq!(row.multiplicities()[&"(4)".parse::<Partition>().unwrap()], 2);
    }

    #[test]
    fn diff_reports_changes() {
        let t = ReferenceTable::bundled(4).unwrap();
        let mut u = t.clone();
        u.rows[0].schur.push("(1)".parse().unwrap());
        let d = t.diff(&u);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].expected + 1, d[0].got);
        assert!(t.diff(&t).is_empty());
    }
}
