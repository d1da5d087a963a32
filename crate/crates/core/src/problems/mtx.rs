use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::linalg::SparseSpdMatrix;
use crate::{AveError, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> AveError {
    AveError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Reads a `coordinate real` Matrix Market file into full symmetric storage.
pub fn load_matrix_market(path: impl AsRef<Path>) -> Result<SparseSpdMatrix> {
    read_matrix_market(BufReader::new(File::open(path)?))
}

/// Parses Matrix Market text.
///
/// Accepts `coordinate` objects with `real` (or `integer`) field and either
/// `symmetric` or `general` symmetry. Symmetric files have their stored
/// triangle mirrored; general files must already be symmetric. Indices are
/// 1-based in the file and duplicate entries are summed.
pub fn read_matrix_market<R: BufRead>(reader: R) -> Result<SparseSpdMatrix> {
    let mut lines = reader.lines().enumerate().map(|(k, l)| (k + 1, l));

    let (lno, header) = match lines.next() {
        Some((lno, l)) => (lno, l?),
        None => return Err(parse_err(1, "empty file")),
    };
    let tokens: Vec<String> = header
        .split_whitespace()
        .map(|t| t.to_ascii_lowercase())
        .collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(parse_err(lno, format!("malformed header `{header}`")));
    }
    if tokens[2] != "coordinate" {
        return Err(parse_err(lno, format!("unsupported format `{}`", tokens[2])));
    }
    if tokens[3] != "real" && tokens[3] != "integer" {
        return Err(parse_err(lno, format!("unsupported field `{}`", tokens[3])));
    }
    let symmetric = match tokens[4].as_str() {
        "symmetric" => true,
        "general" => false,
        other => return Err(parse_err(lno, format!("unsupported symmetry `{other}`"))),
    };

    let mut size: Option<(usize, usize)> = None;
    let mut triplets = Vec::new();
    let mut seen = 0usize;
    let mut last_line = lno;
    for (lno, line) in lines {
        let line = line?;
        last_line = lno;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match size {
            None => {
                if fields.len() != 3 {
                    return Err(parse_err(lno, "expected `rows cols entries`"));
                }
                let dims: Vec<usize> = fields
                    .iter()
                    .map(|f| f.parse())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| parse_err(lno, format!("bad size line: {e}")))?;
                if dims[0] != dims[1] {
                    return Err(parse_err(
                        lno,
                        format!("matrix is not square ({} x {})", dims[0], dims[1]),
                    ));
                }
                size = Some((dims[0], dims[2]));
                triplets.reserve(if symmetric { 2 * dims[2] } else { dims[2] });
            }
            Some((n, nnz)) => {
                if fields.len() != 3 {
                    return Err(parse_err(lno, "expected `row col value`"));
                }
                let index = |s: &str| -> Result<usize> {
                    let k: usize = s
                        .parse()
                        .map_err(|e| parse_err(lno, format!("bad index `{s}`: {e}")))?;
                    if k == 0 || k > n {
                        return Err(parse_err(lno, format!("index {k} outside 1..={n}")));
                    }
                    Ok(k - 1)
                };
                let i = index(fields[0])?;
                let j = index(fields[1])?;
                let v: f64 = fields[2]
                    .parse()
                    .map_err(|e| parse_err(lno, format!("bad value `{}`: {e}", fields[2])))?;
                seen += 1;
                if seen > nnz {
                    return Err(parse_err(lno, format!("more than {nnz} entries")));
                }
                triplets.push((i, j, v));
                if symmetric && i != j {
                    triplets.push((j, i, v));
                }
            }
        }
    }
    let (n, nnz) = size.ok_or_else(|| parse_err(last_line, "missing size line"))?;
    if seen != nnz {
        return Err(parse_err(
            last_line,
            format!("expected {nnz} entries, found {seen}"),
        ));
    }
    SparseSpdMatrix::from_triplets(n, &triplets)
}

/// Writes `a` as `coordinate real symmetric`, lower triangle only. Values use
/// the shortest representation that parses back to the same `f64`.
pub fn write_matrix_market<W: Write>(a: &SparseSpdMatrix, writer: W) -> Result<()> {
    let mut w = BufWriter::new(writer);
    let lower: Vec<(usize, usize, f64)> = (0..a.n())
        .flat_map(|i| a.row(i).filter(move |&(j, _)| j <= i).map(move |(j, v)| (i, j, v)))
        .collect();
    writeln!(w, "%%MatrixMarket matrix coordinate real symmetric")?;
    writeln!(w, "{} {} {}", a.n(), a.n(), lower.len())?;
    for (i, j, v) in lower {
        writeln!(w, "{} {} {}", i + 1, j + 1, v)?;
    }
    w.flush()?;
    Ok(())
}
