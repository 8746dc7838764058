//! Text formats for prototype matrices, cell edits and expanded binary
//! matrices.
//!
//! Prototype file: a header line `m_b n_b z`, then `m_b` lines of `n_b`
//! tokens. A token is `-1` (zero block), `a` (one CPM with shift `a`) or
//! `a+b` (sum of two CPMs). Edits file: one `i j token` per line. Blank
//! lines and lines starting with `#` are ignored in both.

use std::fmt::Write as _;
use std::path::Path;

use qcdp_core::gf2::BitMatrix;
use qcdp_core::qc::{Cell, ProtoMatrix};

use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::data(format!("line {line}: bad number {tok:?}")))
}

pub fn parse_cell(tok: &str, line: usize) -> Result<Cell> {
    if tok == "-1" {
        return Ok(Cell::Zero);
    }
    match tok.split_once('+') {
        Some((a, b)) => {
            let (a, b) = (parse_num::<u32>(a, line)?, parse_num::<u32>(b, line)?);
            if a == b {
                return Err(Error::data(format!("line {line}: double cell {tok:?} repeats a shift")));
            }
            Ok(Cell::double(a, b))
        }
        None => Ok(Cell::Cpm(parse_num(tok, line)?)),
    }
}

pub fn format_cell(cell: &Cell) -> String {
    match cell {
        Cell::Zero => "-1".to_string(),
        Cell::Cpm(a) => a.to_string(),
        Cell::Double(a, b) => format!("{a}+{b}"),
    }
}

pub fn parse_proto(text: &str) -> Result<ProtoMatrix> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::data("empty prototype file"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| parse_num(t, hl))
        .collect::<Result<_>>()?;
    let [m, n, z] = dims[..] else {
        return Err(Error::data(format!("line {hl}: header must be `m_b n_b z`")));
    };
    let mut cells = Vec::with_capacity(m * n);
    let mut rows = 0;
    for (ln, line) in lines {
        let row: Vec<Cell> = line
            .split_whitespace()
            .map(|t| parse_cell(t, ln))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::data(format!("line {ln}: expected {n} cells, found {}", row.len())));
        }
        cells.extend(row);
        rows += 1;
    }
    if rows != m {
        return Err(Error::data(format!("expected {m} block rows, found {rows}")));
    }
    ProtoMatrix::new(m, n, z, cells).map_err(|e| Error::data(e.to_string()))
}

pub fn write_proto(p: &ProtoMatrix) -> String {
    let mut out = format!("{} {} {}\n", p.block_rows(), p.block_cols(), p.z());
    for i in 0..p.block_rows() {
        let row: Vec<String> = p.block_row(i).iter().map(format_cell).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_edits(text: &str) -> Result<Vec<(usize, usize, Cell)>> {
    content_lines(text)
        .map(|(ln, line)| {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [i, j, cell] = toks[..] else {
                return Err(Error::data(format!("line {ln}: expected `i j token`")));
            };
            Ok((parse_num(i, ln)?, parse_num(j, ln)?, parse_cell(cell, ln)?))
        })
        .collect()
}

/// Sparse text form: header `rows cols`, then one line per row listing
/// the columns holding a one.
pub fn write_sparse(m: &BitMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        let cols: Vec<String> = m.row_ones(r).map(|c| c.to_string()).collect();
        let _ = writeln!(out, "{}", cols.join(" "));
    }
    out
}

pub fn parse_sparse(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::data("empty matrix file"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| parse_num(t, 1))
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else {
        return Err(Error::data("line 1: header must be `rows cols`"));
    };
    if rows == 0 || cols == 0 {
        return Err(Error::data("line 1: matrix dimensions must be positive"));
    }
    let mut m = BitMatrix::zeros(rows, cols);
    let mut r = 0;
    for (i, line) in lines {
        if r == rows {
            if line.trim().is_empty() {
                continue;
            }
            return Err(Error::data(format!("line {}: more than {rows} rows", i + 1)));
        }
        for tok in line.split_whitespace() {
            let c: usize = parse_num(tok, i + 1)?;
            if c >= cols {
                return Err(Error::data(format!("line {}: column {c} out of range", i + 1)));
            }
            m.set(r, c, true);
        }
        r += 1;
    }
    if r != rows {
        return Err(Error::data(format!("expected {rows} rows, found {r}")));
    }
    Ok(m)
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::data(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
