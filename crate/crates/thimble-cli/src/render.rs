//! Deterministic text rendering: aligned grids for spectral-sequence pages
//! and compact degree-dimension lists.

use std::collections::BTreeMap;

/// `{-1: 2, 0: 1}` → `"-1:2 0:1"`, `{}` → `"0"` (the zero space).
pub fn dims_line(dims: &BTreeMap<i64, usize>) -> String {
    let parts: Vec<String> = dims
        .iter()
        .filter(|(_, &d)| d > 0)
        .map(|(deg, d)| format!("{deg}:{d}"))
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

/// Aligned grid for a `(column j, row k) → dim` table. Rows are printed with
/// `k` descending; empty entries render as `.`.
pub fn grid<KK>(entries: &BTreeMap<(KK, i64), usize>, col_label: &str) -> String
where
    KK: Copy + Ord + std::fmt::Display,
{
    let nonzero: Vec<(&(KK, i64), &usize)> = entries.iter().filter(|(_, &d)| d > 0).collect();
    if nonzero.is_empty() {
        return "  (empty)\n".to_string();
    }
    let mut cols: Vec<KK> = nonzero.iter().map(|((j, _), _)| *j).collect();
    cols.sort();
    cols.dedup();
    let mut rows: Vec<i64> = nonzero.iter().map(|((_, k), _)| *k).collect();
    rows.sort();
    rows.dedup();
    rows.reverse();

    let headers: Vec<String> = cols.iter().map(|j| format!("{col_label}={j}")).collect();
    let row_labels: Vec<String> = rows.iter().map(|k| format!("k={k}")).collect();
    let label_w = row_labels.iter().map(String::len).max().unwrap_or(0);
    let mut cells: Vec<Vec<String>> = Vec::new();
    for &k in &rows {
        let mut line = Vec::new();
        for &j in &cols {
            let d = entries.get(&(j, k)).copied().unwrap_or(0);
            line.push(if d == 0 { ".".to_string() } else { d.to_string() });
        }
        cells.push(line);
    }
    let col_w: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(c, h)| {
            cells
                .iter()
                .map(|row| row[c].len())
                .chain(std::iter::once(h.len()))
                .max()
                .unwrap_or(1)
        })
        .collect();

    let mut out = String::new();
    out.push_str(&" ".repeat(label_w + 2));
    for (c, h) in headers.iter().enumerate() {
        out.push_str(&format!("{:>w$}  ", h, w = col_w[c]));
    }
    out.push('\n');
    for (r, lbl) in row_labels.iter().enumerate() {
        out.push_str(&format!("{:>w$}  ", lbl, w = label_w));
        for (c, cell) in cells[r].iter().enumerate() {
            out.push_str(&format!("{:>w$}  ", cell, w = col_w[c]));
        }
        out.push('\n');
    }
    out
}
