//! The alist text format for sparse parity-check matrices: `cols rows`, the
//! maximum column and row weights, the column weights, the row weights, then
//! one line per column and per row listing 1-based indices padded with 0.

use super::ParityCheckMatrix;
use crate::error::{Error, Result};

fn join(values: impl IntoIterator<Item = usize>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn padded(support: Vec<usize>, width: usize) -> String {
    let mut v: Vec<usize> = support.into_iter().map(|i| i + 1).collect();
    v.resize(width, 0);
    join(v)
}

pub fn export_alist(h: &ParityCheckMatrix) -> String {
    let cols: Vec<Vec<usize>> = (0..h.cols()).map(|c| h.col_support(c)).collect();
    let rows: Vec<Vec<usize>> = (0..h.rows()).map(|r| h.row_support(r)).collect();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", h.cols(), h.rows()));
    out.push_str(&format!("{max_col} {max_row}\n"));
    out.push_str(&join(cols.iter().map(Vec::len)));
    out.push('\n');
    out.push_str(&join(rows.iter().map(Vec::len)));
    out.push('\n');
    for c in cols {
        out.push_str(&padded(c, max_col));
        out.push('\n');
    }
    for r in rows {
        out.push_str(&padded(r, max_row));
        out.push('\n');
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl Lines<'_> {
    fn numbers(&mut self, expect: Option<usize>) -> Result<Vec<usize>> {
        let (i, text) = self
            .inner
            .next()
            .ok_or_else(|| Error::parse(self.line + 1, "unexpected end of alist"))?;
        self.line = i + 1;
        let values = text
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::parse(self.line, format!("bad integer {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if let Some(n) = expect {
            if values.len() != n {
                return Err(Error::parse(self.line, format!("expected {n} values, found {}", values.len())));
            }
        }
        Ok(values)
    }
}

pub fn import_alist(text: &str) -> Result<ParityCheckMatrix> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        line: 0,
    };
    let dims = lines.numbers(Some(2))?;
    let (n_cols, n_rows) = (dims[0], dims[1]);
    let max = lines.numbers(Some(2))?;
    let col_deg = lines.numbers(Some(n_cols))?;
    let row_deg = lines.numbers(Some(n_rows))?;
    if col_deg.iter().any(|&d| d > max[0]) || row_deg.iter().any(|&d| d > max[1]) {
        return Err(Error::parse(lines.line, "weight exceeds declared maximum"));
    }
    let mut h = ParityCheckMatrix::zeros(n_rows, n_cols);
    for (c, &deg) in col_deg.iter().enumerate() {
        let entries = lines.numbers(None)?;
        let (used, pad) = entries.split_at(deg.min(entries.len()));
        if used.len() != deg || pad.iter().any(|&x| x != 0) {
            return Err(Error::parse(lines.line, format!("column {} does not list {deg} indices", c + 1)));
        }
        for &r in used {
            if r == 0 || r > n_rows {
                return Err(Error::parse(lines.line, format!("row index {r} out of range")));
            }
            h.set(r - 1, c, true);
        }
    }
    for (r, &deg) in row_deg.iter().enumerate() {
        let entries = lines.numbers(None)?;
        let (used, pad) = entries.split_at(deg.min(entries.len()));
        if used.len() != deg || pad.iter().any(|&x| x != 0) {
            return Err(Error::parse(lines.line, format!("row {} does not list {deg} indices", r + 1)));
        }
        let mut listed: Vec<usize> = used.to_vec();
        listed.sort_unstable();
        let support: Vec<usize> = h.row_support(r).iter().map(|c| c + 1).collect();
        if listed != support {
            return Err(Error::parse(lines.line, format!("row {} disagrees with the column lists", r + 1)));
        }
    }
    Ok(h)
}
