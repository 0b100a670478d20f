//! Plain-text matrix format.
//!
//! ```text
//! pmat <rows> <cols> <modulus>
//! <i> <j> : <c0> <c1> ...
//! ```
//!
//! Indices are 0-based, coefficients run from low to high degree and must
//! be below the modulus. Entries not listed are zero; `#` starts a comment.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::polymat::PolyMat;

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn number(line: usize, (col, tok): (usize, &str), what: &str) -> Result<u64> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(line, col, format!("expected {what}, found `{tok}`")));
    }
    tok.parse()
        .map_err(|_| err(line, col, format!("{what} `{tok}` is out of range")))
}

pub fn parse_pmat(text: &str) -> Result<PolyMat> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((hl, header)) = lines.next() else {
        return Err(err(1, 1, "missing `pmat` header"));
    };
    let ht = tokens(header);
    if ht.first().map(|t| t.1) != Some("pmat") {
        return Err(err(hl, ht.first().map_or(1, |t| t.0), "expected `pmat`"));
    }
    if ht.len() != 4 {
        return Err(err(hl, 1, "header must be `pmat <rows> <cols> <modulus>`"));
    }
    let rows = number(hl, ht[1], "row count")? as usize;
    let cols = number(hl, ht[2], "column count")? as usize;
    let field = Field::new(number(hl, ht[3], "modulus")?).map_err(|e| err(hl, ht[3].0, e.to_string()))?;
    let p = field.modulus();
    let mut m = PolyMat::zeros(field, rows, cols);
    let mut seen = vec![false; rows * cols];
    for (ln, line) in lines {
        let t = tokens(line);
        if t.len() < 3 || t[2].1 != ":" {
            return Err(err(ln, t.first().map_or(1, |t| t.0), "expected `<i> <j> : <coefficients>`"));
        }
        let i = number(ln, t[0], "row index")? as usize;
        let j = number(ln, t[1], "column index")? as usize;
        if i >= rows || j >= cols {
            return Err(err(ln, t[0].0, format!("entry ({i}, {j}) outside a {rows}x{cols} matrix")));
        }
        if std::mem::replace(&mut seen[i * cols + j], true) {
            return Err(err(ln, t[0].0, format!("duplicate entry ({i}, {j})")));
        }
        let mut coeffs = Vec::with_capacity(t.len() - 3);
        for &tok in &t[3..] {
            let c = number(ln, tok, "coefficient")?;
            if c >= p {
                return Err(err(ln, tok.0, format!("coefficient {c} is not below the modulus {p}")));
            }
            coeffs.push(c);
        }
        m.set(i, j, Poly::from_coeffs(field, coeffs));
    }
    Ok(m)
}

/// Canonical text: nonzero entries only, in row-major order, without
/// trailing zero coefficients.
pub fn emit_pmat(m: &PolyMat) -> String {
    let mut out = format!("pmat {} {} {}\n", m.rows(), m.cols(), m.field().modulus());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = m.get(i, j);
            if e.is_zero() {
                continue;
            }
            write!(out, "{i} {j} :").unwrap();
            for k in 0..e.len() {
                write!(out, " {}", e.coeff(k)).unwrap();
            }
            out.push('\n');
        }
    }
    out
}

/// Parses `a,b,c` into a shift; the empty string is the empty shift.
pub fn parse_shift(text: &str) -> Result<Vec<i64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut col = 1;
    let mut out = Vec::new();
    for part in text.split(',') {
        let v = part
            .trim()
            .parse()
            .map_err(|_| err(1, col, format!("invalid shift entry `{part}`")))?;
        out.push(v);
        col += part.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_example() {
        let m = parse_pmat("pmat 1 1 7\n0 0 : 1 0 1").unwrap();
        assert_eq!(m, PolyMat::from_i64(Field::new(7).unwrap(), &[vec![vec![1, 0, 1]]]));
        assert_eq!(emit_pmat(&m), "pmat 1 1 7\n0 0 : 1 0 1\n");
    }

    #[test]
    fn omitted_entries_and_comments() {
        let m = parse_pmat("# header next\npmat 2 2 7 # trailing\n\n1 0 : 0 3 0 0\n").unwrap();
        assert_eq!(emit_pmat(&m), "pmat 2 2 7\n1 0 : 0 3\n");
        assert!(parse_pmat("pmat 2 3 7\n").unwrap().is_zero());
    }

    #[test]
    fn reports_errors() {
        let e = |t: &str| match parse_pmat(t) {
            Err(Error::Parse { line, col, .. }) => (line, col),
            other => panic!("{other:?}"),
        };
        assert_eq!(e("pmat 1 1 7\n0 0 : 1 7"), (2, 9));
        assert_eq!(e("pmat 1 1 7\n0 0 : 1\n0 0 : 2"), (3, 1));
        assert_eq!(e("pmat 1 1 8\n"), (1, 10));
        assert_eq!(e("pmat 1 1 7\n0 0 1"), (2, 1));
        assert_eq!(e("pmat 1 1 7\n0 0 : -1"), (2, 7));
        assert_eq!(e("pmat 1 1 7\n1 0 : 1"), (2, 1));
        assert_eq!(e(""), (1, 1));
        assert_eq!(e("matrix 1 1 7"), (1, 1));
    }

    #[test]
    fn shifts() {
        assert_eq!(parse_shift("0,-3, 5").unwrap(), vec![0, -3, 5]);
        assert_eq!(parse_shift("").unwrap(), Vec::<i64>::new());
        assert!(matches!(parse_shift("1,x"), Err(Error::Parse { col: 3, .. })));
    }

    proptest! {
        #[test]
        fn round_trip(rows in 0usize..4, cols in 0usize..4, seed in any::<u64>()) {
            let f = Field::new(97).unwrap();
            let mut state = seed;
            let m = PolyMat::from_fn(f, rows, cols, |_, _| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let len = (state >> 60) as usize % 5;
                Poly::from_coeffs(f, (0..len).map(|k| (state >> (8 * k)) % 97).collect())
            });
            let text = emit_pmat(&m);
            prop_assert_eq!(parse_pmat(&text).unwrap(), m);
            prop_assert_eq!(emit_pmat(&parse_pmat(&text).unwrap()), text);
        }
    }
}
