//! The exceptional-singularity and cusp tables, shipped as JSON data.

use std::collections::HashMap;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use super::alpha::is_hyperbolic;
use super::cycles::{adjust_cycle, dual_cycle, AdjustDirection, CycleSeq};
use super::ypqr::core_nodes;
use crate::error::{domain, Error, Result};

pub const TABLE1_JSON: &str = include_str!("../../data/table1.json");
pub const TABLE2_JSON: &str = include_str!("../../data/table2.json");

/// One row of the exceptional-singularity table. Exponents are over (x, y, z).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DolgachevEntry {
    #[serde(rename = "type")]
    pub label: String,
    pub f: String,
    pub monomials: Vec<[u32; 3]>,
    pub lambda: [u32; 3],
    pub weights: [u32; 3],
    pub degree: u32,
    pub dolgachev: [usize; 3],
}

#[derive(Debug, Deserialize)]
struct Table1File {
    version: u32,
    rows: Vec<DolgachevEntry>,
}

/// Parses a Table 1 document.
pub fn parse_table1(json: &str) -> Result<Vec<DolgachevEntry>> {
    let file: Table1File =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("table 1: {e}")))?;
    if file.version != 1 {
        return Err(Error::Parse(format!(
            "table 1: unsupported version {}",
            file.version
        )));
    }
    Ok(file.rows)
}

static TABLE1: LazyLock<Vec<DolgachevEntry>> =
    LazyLock::new(|| parse_table1(TABLE1_JSON).expect("bundled table 1 parses"));

/// The 14 bundled rows.
pub fn table1() -> &'static [DolgachevEntry] {
    &TABLE1
}

pub fn table1_entry(label: &str) -> Option<&'static DolgachevEntry> {
    TABLE1.iter().find(|e| e.label.eq_ignore_ascii_case(label))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightCheck {
    pub label: String,
    pub ok: bool,
    pub monomial_degrees: Vec<u32>,
    pub lambda_degree: u32,
    /// Monomials of f whose weighted degree differs from the stated degree,
    /// and the λ-monomial if its degree does not exceed it.
    pub offending: Vec<[u32; 3]>,
}

fn weighted_degree(m: &[u32; 3], w: &[u32; 3]) -> u32 {
    m.iter().zip(w).map(|(a, b)| a * b).sum()
}

/// Every monomial of f has the stated weighted degree and the λ-monomial
/// has a strictly larger one.
pub fn check_weights(entry: &DolgachevEntry) -> Result<WeightCheck> {
    if entry.monomials.is_empty() {
        return domain(format!("{}: no monomials", entry.label));
    }
    if entry.weights.contains(&0) {
        return domain(format!("{}: weights must be positive", entry.label));
    }
    let monomial_degrees: Vec<u32> = entry
        .monomials
        .iter()
        .map(|m| weighted_degree(m, &entry.weights))
        .collect();
    let lambda_degree = weighted_degree(&entry.lambda, &entry.weights);
    let mut offending: Vec<[u32; 3]> = entry
        .monomials
        .iter()
        .zip(&monomial_degrees)
        .filter(|(_, &d)| d != entry.degree)
        .map(|(m, _)| *m)
        .collect();
    if lambda_degree <= entry.degree {
        offending.push(entry.lambda);
    }
    Ok(WeightCheck {
        label: entry.label.clone(),
        ok: offending.is_empty(),
        monomial_degrees,
        lambda_degree,
        offending,
    })
}

/// Dolgachev triples of Table 1 whose three arm ends all lie outside the core,
/// the only situation in which two different E-set types share an end.
pub fn triples_with_three_free_ends() -> Result<Vec<[usize; 3]>> {
    let mut out = Vec::new();
    for e in table1() {
        let [p, q, r] = e.dolgachev;
        if core_nodes(p, q, r)?.free_ends.len() == 3 && !out.contains(&e.dolgachev) {
            out.push(e.dolgachev);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Column {
    Terms(Vec<String>),
    Same(String),
}

#[derive(Debug, Clone, Deserialize)]
struct Table2Row {
    triple: [String; 3],
    c: Column,
    c_prime: Column,
    d_prime: Column,
    d: Column,
}

#[derive(Debug, Deserialize)]
struct Table2File {
    version: u32,
    rows: Vec<Table2Row>,
}

/// A Table 2 family: a triple pattern and four cycle columns with "<-"
/// resolved.
#[derive(Debug, Clone)]
pub struct CuspFamily {
    pub triple: [String; 3],
    columns: [Vec<String>; 4],
}

impl CuspFamily {
    pub fn pattern(&self) -> String {
        self.triple.join(",")
    }

    /// Variable bindings if (p, q, r) fits the pattern.
    fn bind(&self, pqr: [usize; 3]) -> Option<HashMap<String, i64>> {
        let mut vars = HashMap::new();
        for (tok, &val) in self.triple.iter().zip(&pqr) {
            match tok.parse::<usize>() {
                Ok(lit) if lit != val => return None,
                Ok(_) => {}
                Err(_) => {
                    if let Some(&old) = vars.get(tok) {
                        if old != val as i64 {
                            return None;
                        }
                    }
                    vars.insert(tok.clone(), val as i64);
                }
            }
        }
        Some(vars)
    }
}

fn parse_table2(json: &str) -> Result<Vec<CuspFamily>> {
    let file: Table2File =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("table 2: {e}")))?;
    if file.version != 1 {
        return Err(Error::Parse(format!(
            "table 2: unsupported version {}",
            file.version
        )));
    }
    let mut out = Vec::new();
    for row in file.rows {
        let mut cols: Vec<Vec<String>> = Vec::new();
        for col in [row.c, row.c_prime, row.d_prime, row.d] {
            match col {
                Column::Terms(t) => cols.push(t),
                Column::Same(s) if s == "<-" => {
                    let prev = cols.last().cloned().ok_or_else(|| {
                        Error::Parse("table 2: \"<-\" in the first column".into())
                    })?;
                    cols.push(prev);
                }
                Column::Same(s) => {
                    return Err(Error::Parse(format!(
                        "table 2: unexpected column value {s:?}"
                    )))
                }
            }
        }
        let columns: [Vec<String>; 4] = cols.try_into().expect("four columns");
        out.push(CuspFamily {
            triple: row.triple,
            columns,
        });
    }
    Ok(out)
}

static TABLE2: LazyLock<Vec<CuspFamily>> =
    LazyLock::new(|| parse_table2(TABLE2_JSON).expect("bundled table 2 parses"));

pub fn table2() -> &'static [CuspFamily] {
    &TABLE2
}

/// Evaluates "7", "r", "r-7", "q+1".
fn eval_expr(expr: &str, vars: &HashMap<String, i64>) -> Result<i64> {
    let expr = expr.trim();
    let split = expr[1..].find(['+', '-']).map(|i| i + 1);
    let (head, tail) = match split {
        Some(i) => (&expr[..i], Some(&expr[i..])),
        None => (expr, None),
    };
    let atom = |s: &str| -> Result<i64> {
        s.parse::<i64>()
            .ok()
            .or_else(|| vars.get(s).copied())
            .ok_or_else(|| Error::Parse(format!("table 2: cannot evaluate {s:?}")))
    };
    let mut v = atom(head)?;
    if let Some(t) = tail {
        let n = atom(&t[1..])?;
        v = if t.starts_with('+') { v + n } else { v - n };
    }
    Ok(v)
}

/// Expands terms such as "3", "r-4" and "2^{q-5}" into cycle entries.
fn instantiate(terms: &[String], vars: &HashMap<String, i64>) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for term in terms {
        if let Some(rest) = term.strip_prefix("2^{") {
            let inner = rest
                .strip_suffix('}')
                .ok_or_else(|| Error::Parse(format!("table 2: bad run {term:?}")))?;
            let n = eval_expr(inner, vars)?;
            if n < 0 {
                return Err(Error::Invariant(format!(
                    "table 2: negative run length in {term:?}"
                )));
            }
            out.extend(std::iter::repeat(2).take(n as usize));
        } else {
            let v = eval_expr(term, vars)?;
            if v < 1 {
                return Err(Error::Invariant(format!(
                    "table 2: entry {term:?} evaluates to {v}"
                )));
            }
            out.push(v as u32);
        }
    }
    Ok(out)
}

/// One assembled row of the cusp table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CuspRow {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    /// The table family that supplied c.
    pub family: String,
    pub c: CycleSeq,
    pub c_prime: CycleSeq,
    pub d_prime: CycleSeq,
    pub d: CycleSeq,
    /// Whether c or d′ has a single entry, so that the ±2 adjustment applies.
    pub single_entry: bool,
}

/// Builds (c, c′, d′, d) for p ≤ q ≤ r: c from the first matching table
/// family, c′ by adjusting c, d′ as the dual of c′, d by adjusting d′. Each
/// computed column must equal the table's own entry up to rotation.
pub fn cusp_row(p: usize, q: usize, r: usize) -> Result<CuspRow> {
    if !(2 <= p && p <= q && q <= r) {
        return domain(format!("cusp rows need 2 ≤ p ≤ q ≤ r, got ({p},{q},{r})"));
    }
    if !is_hyperbolic(p, q, r) {
        return domain(format!("({p},{q},{r}) has 1/p+1/q+1/r ≥ 1"));
    }
    let (family, vars) = table2()
        .iter()
        .find_map(|f| f.bind([p, q, r]).map(|v| (f, v)))
        .ok_or_else(|| Error::Invariant(format!("no table 2 family matches ({p},{q},{r})")))?;
    let stored = family
        .columns
        .iter()
        .map(|col| CycleSeq::new(instantiate(col, &vars)?))
        .collect::<Result<Vec<_>>>()?;
    let c = stored[0].clone();
    let c_prime = adjust_cycle(&c, AdjustDirection::RawToZykel)?;
    let d_prime = dual_cycle(&c_prime)?;
    let d = adjust_cycle(&d_prime, AdjustDirection::ZykelStarToD)?;
    for (name, computed, table) in [
        ("c′", &c_prime, &stored[1]),
        ("d′", &d_prime, &stored[2]),
        ("d", &d, &stored[3]),
    ] {
        if computed != table {
            return Err(Error::Invariant(format!(
                "({p},{q},{r}) family {}: computed {name} = {computed}, table gives {table}",
                family.pattern()
            )));
        }
    }
    Ok(CuspRow {
        p,
        q,
        r,
        family: family.pattern(),
        single_entry: c.len() == 1 || d_prime.len() == 1,
        c,
        c_prime,
        d_prime,
        d,
    })
}

/// Every hyperbolic p ≤ q ≤ r with p + q + r ≤ `max_sum`.
pub fn hyperbolic_triples(max_sum: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for p in 2..=max_sum {
        for q in p..=max_sum {
            for r in q..=max_sum {
                if p + q + r > max_sum {
                    break;
                }
                if is_hyperbolic(p, q, r) {
                    out.push([p, q, r]);
                }
            }
        }
    }
    out
}
