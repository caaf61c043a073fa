//! Plain-text matroid format.
//!
//! ```text
//! # comment
//! matroid P8 n=8 r=4
//! nonbases
//! 1 2 3 8
//! 1 2 4 7
//!
//! ```
//!
//! A header line is followed by a `bases` or `nonbases` block with one subset
//! per line; the block ends at a blank line, the next header, or end of input.

use super::{Matroid, MatroidError};
use crate::subset::{self, Subset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedMatroid {
    pub name: String,
    pub matroid: Matroid,
}

fn parse_err(line: usize, message: impl Into<String>) -> MatroidError {
    MatroidError::Parse { line, message: message.into() }
}

fn parse_header(line_no: usize, line: &str) -> Result<(String, usize, usize), MatroidError> {
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some("matroid") {
        return Err(parse_err(line_no, "expected `matroid <name> n=<n> r=<r>`"));
    }
    let name = tokens.next().ok_or_else(|| parse_err(line_no, "missing matroid name"))?.to_string();
    let mut n = None;
    let mut r = None;
    for tok in tokens {
        if let Some(v) = tok.strip_prefix("n=") {
            n = Some(v.parse().map_err(|_| parse_err(line_no, format!("bad size `{v}`")))?);
        } else if let Some(v) = tok.strip_prefix("r=") {
            r = Some(v.parse().map_err(|_| parse_err(line_no, format!("bad rank `{v}`")))?);
        } else {
            return Err(parse_err(line_no, format!("unexpected token `{tok}`")));
        }
    }
    match (n, r) {
        (Some(n), Some(r)) => Ok((name, n, r)),
        _ => Err(parse_err(line_no, "header needs both n= and r=")),
    }
}

/// Parses a whitespace-separated list of 1-based elements.
pub(crate) fn parse_subset(line_no: usize, text: &str, n: usize) -> Result<Subset, MatroidError> {
    let mut mask = 0;
    for tok in text.split_whitespace() {
        let e: usize = tok.parse().map_err(|_| parse_err(line_no, format!("bad element `{tok}`")))?;
        if e == 0 || e > n {
            return Err(parse_err(line_no, format!("element {e} outside 1..{n}")));
        }
        mask |= 1 << (e - 1);
    }
    Ok(mask)
}

#[derive(PartialEq)]
enum Block {
    Bases,
    Nonbases,
}

/// Parses every matroid in `text`; `line` fields in errors are 1-based.
///
/// Construction failures (for instance an exchange-axiom violation) are
/// reported against the header line of the offending entry.
pub fn parse_matroid_text(text: &str) -> Result<Vec<NamedMatroid>, MatroidError> {
    let mut out = Vec::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).peekable();
    while let Some((line_no, raw)) = lines.next() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, n, r) = parse_header(line_no, line)?;
        if n > subset::MAX_ELEMENTS {
            return Err(parse_err(line_no, MatroidError::TooManyElements(n).to_string()));
        }
        let block = loop {
            let Some((bl, braw)) = lines.next() else {
                return Err(parse_err(line_no, "missing `bases` or `nonbases` block"));
            };
            match braw.trim() {
                "bases" => break Block::Bases,
                "nonbases" => break Block::Nonbases,
                t if t.starts_with('#') => continue,
                other => return Err(parse_err(bl, format!("expected `bases` or `nonbases`, found `{other}`"))),
            }
        };
        let mut sets = Vec::new();
        while let Some(&(sl, sraw)) = lines.peek() {
            let s = sraw.trim();
            if s.is_empty() || s.starts_with("matroid") {
                break;
            }
            lines.next();
            if s.starts_with('#') {
                continue;
            }
            let mask = parse_subset(sl, s, n)?;
            if subset::size(mask) != r {
                return Err(parse_err(sl, format!("subset has {} elements, rank is {r}", subset::size(mask))));
            }
            sets.push(mask);
        }
        let built = match block {
            Block::Bases => Matroid::from_bases(n, r, sets),
            Block::Nonbases => Matroid::from_nonbases(n, r, &sets),
        };
        let matroid = built.map_err(|e| parse_err(line_no, format!("matroid {name}: {e}")))?;
        out.push(NamedMatroid { name, matroid });
    }
    Ok(out)
}

/// Writes one entry. The shorter of the two blocks is used, with `nonbases`
/// on ties; a rank-zero matroid always uses the (empty) `nonbases` block.
pub fn write_matroid_text(name: &str, m: &Matroid) -> String {
    let nonbases = m.nonbases();
    let mut s = format!("matroid {name} n={} r={}\n", m.n(), m.rank());
    let (label, sets) = if nonbases.len() <= m.bases().len() || m.rank() == 0 {
        ("nonbases", nonbases)
    } else {
        ("bases", m.bases().to_vec())
    };
    s.push_str(label);
    s.push('\n');
    for set in sets {
        let elems: Vec<String> = subset::to_elements(set).iter().map(|e| e.to_string()).collect();
        s.push_str(&elems.join(" "));
        s.push('\n');
    }
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_block_kinds() {
        let text = "# two entries\nmatroid ex n=4 r=2\nbases\n1 2\n2 3\n1 4\n2 4\n3 4\n\nmatroid u n=4 r=2\nnonbases\n";
        let parsed = parse_matroid_text(text).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[0].name, "ex");
        assert_eq!(parsed[0].matroid.nonbases(), vec![0b0101]);
        assert_eq!(parsed[1].matroid, Matroid::uniform(2, 4));
    }

    #[test]
    fn round_trip() {
        let m = Matroid::from_basis_lists(4, 2, &[&[1, 2], &[2, 3], &[1, 4], &[2, 4], &[3, 4]]).unwrap();
        let text = write_matroid_text("ex", &m);
        assert_eq!(text, "matroid ex n=4 r=2\nnonbases\n1 3\n\n");
        let back = parse_matroid_text(&text).unwrap();
        assert_eq!(back[0].matroid, m);
        let z = Matroid::uniform(0, 3);
        assert_eq!(parse_matroid_text(&write_matroid_text("z", &z)).unwrap()[0].matroid, z);
    }

    #[test]
    fn reports_line_numbers() {
        let bad = "matroid x n=4 r=2\nbases\n1 2\n3 9\n";
        match parse_matroid_text(bad) {
            Err(MatroidError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        let not_matroid = "\nmatroid x n=4 r=2\nbases\n1 2\n3 4\n";
        match parse_matroid_text(not_matroid) {
            Err(MatroidError::Parse { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("exchange"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
