//! The alist sparse-matrix format used by classical LDPC tools.
//!
//! Line 1 is `n m` (columns, rows), line 2 the maximum column and row
//! weights, lines 3 and 4 the column and row weights, then one line per
//! column and one per row of 1-based indices padded with 0.

use anyhow::{anyhow, bail, ensure, Context, Result};
use balprod::{BitMatrix, BitVec};

pub fn emit(m: &BitMatrix) -> String {
    let rows: Vec<Vec<usize>> = (0..m.rows()).map(|r| m.row(r).support()).collect();
    let t = m.transpose();
    let cols: Vec<Vec<usize>> = (0..t.rows()).map(|c| t.row(c).support()).collect();
    let max_c = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_r = rows.iter().map(Vec::len).max().unwrap_or(0);
    let join = |v: &mut dyn Iterator<Item = usize>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let padded = |list: &[usize], width: usize| {
        join(&mut list.iter().map(|&i| i + 1).chain(std::iter::repeat(0)).take(width.max(1)))
    };
    let mut out = format!("{} {}\n{} {}\n", m.cols(), m.rows(), max_c, max_r);
    out.push_str(&join(&mut cols.iter().map(Vec::len)));
    out.push('\n');
    out.push_str(&join(&mut rows.iter().map(Vec::len)));
    out.push('\n');
    for c in &cols {
        out.push_str(&padded(c, max_c));
        out.push('\n');
    }
    for r in &rows {
        out.push_str(&padded(r, max_r));
        out.push('\n');
    }
    out
}

pub fn parse(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty()).enumerate();
    let mut numbers = |what: &str| -> Result<Vec<usize>> {
        let (no, line) = lines.next().ok_or_else(|| anyhow!("alist ends before {what}"))?;
        line.split_whitespace()
            .map(|t| t.parse::<usize>().with_context(|| format!("alist line {}: bad number {t:?}", no + 1)))
            .collect()
    };
    let dims = numbers("the size line")?;
    ensure!(dims.len() == 2, "alist size line needs `n m`");
    let (n, m) = (dims[0], dims[1]);
    numbers("the max-weight line")?;
    let col_w = numbers("the column weights")?;
    let row_w = numbers("the row weights")?;
    ensure!(col_w.len() == n && row_w.len() == m, "alist weight lines do not match `{n} {m}`");
    let mut by_col = vec![BitVec::zeros(m); n];
    for (c, &w) in col_w.iter().enumerate() {
        let entries = numbers("a column list")?;
        let nonzero: Vec<usize> = entries.into_iter().filter(|&x| x != 0).collect();
        ensure!(nonzero.len() == w, "alist column {} lists {} entries, weight says {w}", c + 1, nonzero.len());
        for r in nonzero {
            ensure!(r <= m, "alist column {} names row {r} of {m}", c + 1);
            by_col[c].set(r - 1, true);
        }
    }
    let t = BitMatrix::from_rows(m, &by_col)?;
    let h = t.transpose();
    for (r, &w) in row_w.iter().enumerate() {
        let entries = numbers("a row list")?;
        let mut nonzero: Vec<usize> = entries.into_iter().filter(|&x| x != 0).map(|x| x - 1).collect();
        nonzero.sort_unstable();
        ensure!(nonzero.len() == w, "alist row {} lists {} entries, weight says {w}", r + 1, nonzero.len());
        if nonzero != h.row(r).support() {
            bail!("alist row {} disagrees with the column lists", r + 1);
        }
    }
    Ok(h)
}
