//! Line-oriented text format for algebras.
//!
//! ```text
//! algebra NAME
//! conductor M
//! dimension D
//! basis
//! 0 even h1
//! ...
//! brackets
//! 0 2 [(2, 2/1)]
//! ...
//! realization EVEN ODD
//! matrix 0 [(0, 0, 1/1), ...]
//! regular [(0, 3/1), ...]
//! end
//! ```
//! The realization block is optional. Only nonzero brackets with i <= j are listed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::algebra::{BasisElement, Parity, Realization, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exactcore::{CycScalar, SparseMatrix, SparseVec};

fn vec_text(v: &SparseVec) -> String {
    let items: Vec<String> = v.iter().map(|(i, c)| format!("({i}, {c})")).collect();
    format!("[{}]", items.join(", "))
}

fn matrix_text(m: &SparseMatrix) -> String {
    let mut items = Vec::new();
    for i in 0..m.rows() {
        for (j, c) in m.row(i).iter() {
            items.push(format!("({i}, {j}, {c})"));
        }
    }
    format!("[{}]", items.join(", "))
}

/// Splits `[(a, b), (c, d)]` into the tuple bodies.
fn tuples(text: &str) -> Result<Vec<Vec<String>>> {
    let bad = || Error::Parse(format!("bad tuple list '{text}'"));
    let inner = text.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
    let mut out = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let body_start = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body_start.find(')').ok_or_else(bad)?;
        out.push(body_start[..close].split(", ").map(|s| s.trim().to_string()).collect());
        rest = body_start[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(out)
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad index '{s}'")))
}

fn parse_vec(conductor: u32, text: &str) -> Result<SparseVec> {
    let mut v = SparseVec::new();
    for t in tuples(text)? {
        if t.len() != 2 {
            return Err(Error::Parse(format!("expected (index, scalar) in '{text}'")));
        }
        v.add_at(parse_usize(&t[0])?, &CycScalar::parse(conductor, &t[1])?);
    }
    Ok(v)
}

impl SuperAlgebra {
    /// Serializes the algebra; `from_text` inverts this exactly.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "algebra {}", self.name()).unwrap();
        writeln!(s, "conductor {}", self.conductor()).unwrap();
        writeln!(s, "dimension {}", self.dim()).unwrap();
        writeln!(s, "basis").unwrap();
        for (i, b) in self.basis().iter().enumerate() {
            writeln!(s, "{i} {} {}", b.parity, b.label).unwrap();
        }
        writeln!(s, "brackets").unwrap();
        for (&(i, j), v) in self.stored_brackets() {
            writeln!(s, "{i} {j} {}", vec_text(v)).unwrap();
        }
        if let Some(r) = self.realization() {
            writeln!(s, "realization {} {}", r.even_dim, r.odd_dim).unwrap();
            for (i, m) in r.matrices.iter().enumerate() {
                writeln!(s, "matrix {i} {}", matrix_text(m)).unwrap();
            }
            if let Some(reg) = &r.regular {
                writeln!(s, "regular {}", vec_text(reg)).unwrap();
            }
        }
        writeln!(s, "end").unwrap();
        s
    }

    pub fn from_text(text: &str) -> Result<SuperAlgebra> {
        let mut lines = text.lines().map(str::trim_end).filter(|l| !l.trim().is_empty());
        let mut header = |key: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing '{key}' line")))?;
            line.strip_prefix(key)
                .and_then(|r| r.strip_prefix(' '))
                .map(str::to_string)
                .ok_or_else(|| Error::Parse(format!("expected '{key}', got '{line}'")))
        };
        let name = header("algebra")?;
        let conductor: u32 = header("conductor")?.trim().parse().map_err(|_| Error::Parse("bad conductor".into()))?;
        crate::exactcore::check_conductor(conductor)?;
        let dim = parse_usize(&header("dimension")?)?;
        let mut lines = lines.peekable();
        if lines.next() != Some("basis") {
            return Err(Error::Parse("expected 'basis'".into()));
        }
        let mut basis = Vec::with_capacity(dim);
        for i in 0..dim {
            let line = lines.next().ok_or_else(|| Error::Parse("truncated basis".into()))?;
            let parts: Vec<&str> = line.splitn(3, ' ').collect();
            if parts.len() != 3 || parse_usize(parts[0])? != i {
                return Err(Error::Parse(format!("bad basis row '{line}'")));
            }
            let parity = match parts[1] {
                "even" => Parity::Even,
                "odd" => Parity::Odd,
                p => return Err(Error::Parse(format!("bad parity '{p}'"))),
            };
            basis.push(BasisElement::new(parts[2], parity));
        }
        if lines.next() != Some("brackets") {
            return Err(Error::Parse("expected 'brackets'".into()));
        }
        let mut brackets = BTreeMap::new();
        let mut realization: Option<Realization> = None;
        loop {
            let line = lines.next().ok_or_else(|| Error::Parse("missing 'end'".into()))?;
            if line == "end" {
                break;
            }
            if let Some(rest) = line.strip_prefix("realization ") {
                let dims: Vec<&str> = rest.split(' ').collect();
                if dims.len() != 2 {
                    return Err(Error::Parse(format!("bad realization header '{line}'")));
                }
                realization = Some(Realization {
                    even_dim: parse_usize(dims[0])?,
                    odd_dim: parse_usize(dims[1])?,
                    matrices: Vec::new(),
                    regular: None,
                });
                continue;
            }
            if let Some(rest) = line.strip_prefix("matrix ") {
                let r = realization.as_mut().ok_or_else(|| Error::Parse("matrix before header".into()))?;
                let (idx, list) = rest.split_once(' ').ok_or_else(|| Error::Parse(line.to_string()))?;
                if parse_usize(idx)? != r.matrices.len() {
                    return Err(Error::Parse(format!("matrix out of order '{line}'")));
                }
                let n = r.size();
                let mut m = SparseMatrix::zero(n, n, conductor);
                for t in tuples(list)? {
                    if t.len() != 3 {
                        return Err(Error::Parse(format!("bad matrix entry in '{line}'")));
                    }
                    m.set(parse_usize(&t[0])?, parse_usize(&t[1])?, CycScalar::parse(conductor, &t[2])?)?;
                }
                r.matrices.push(m);
                continue;
            }
            if let Some(rest) = line.strip_prefix("regular ") {
                let r = realization.as_mut().ok_or_else(|| Error::Parse("regular before header".into()))?;
                r.regular = Some(parse_vec(conductor, rest)?);
                continue;
            }
            let mut parts = line.splitn(3, ' ');
            let i = parse_usize(parts.next().unwrap_or(""))?;
            let j = parse_usize(parts.next().unwrap_or(""))?;
            let v = parse_vec(conductor, parts.next().unwrap_or(""))?;
            brackets.insert((i, j), v);
        }
        SuperAlgebra::new(name, conductor, basis, brackets, realization)
    }
}
