//! Named matroids and catalog files.
//!
//! Builtins are constructed from explicit data (matrices, line sets,
//! relaxations, extensions). A trailing `*` on any name gives the dual.

use crate::matroid::{self, Matroid, MatroidError, NamedMatroid};
use crate::rational::{rat, Rat};
use crate::subset::{self, Subset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub matroid: Matroid,
    pub provenance: String,
    /// Position in the file it was read from, for catalogs whose entries
    /// are referred to by index.
    pub index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown matroid name `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Parse(MatroidError),
    #[error("line {line}: entry {entry}: {source}")]
    Validation { line: usize, entry: String, source: MatroidError },
}

fn entry(name: &str, matroid: Matroid, provenance: impl Into<String>) -> CatalogEntry {
    CatalogEntry { name: name.to_string(), matroid, provenance: provenance.into(), index: None }
}

fn sets(lists: &[&[usize]]) -> Vec<Subset> {
    lists.iter().map(|l| subset::from_elements(l)).collect()
}

fn from_nonbases(n: usize, r: usize, lists: &[&[usize]]) -> Matroid {
    Matroid::from_nonbases(n, r, &sets(lists)).expect("builtin data is a matroid")
}

fn relax_all(m: &Matroid, lists: &[&[usize]]) -> Matroid {
    sets(lists).into_iter().fold(m.clone(), |acc, h| acc.relax(h).expect("builtin relaxation is a circuit hyperplane"))
}

const FANO_LINES: [&[usize]; 7] = [&[1, 2, 3], &[1, 4, 5], &[1, 6, 7], &[2, 4, 6], &[2, 5, 7], &[3, 4, 7], &[3, 5, 6]];

pub fn fano() -> Matroid {
    from_nonbases(7, 3, &FANO_LINES)
}

/// Triangles of `K4` with edges `1=v1v2, 2=v2v3, 3=v2v4, 4=v1v3, 5=v1v4, 6=v3v4`.
pub fn k4() -> Matroid {
    from_nonbases(6, 3, &[&[1, 2, 4], &[1, 3, 5], &[2, 3, 6], &[4, 5, 6]])
}

/// Signed incidence vectors of the `K4` edges with the row of `v4` dropped,
/// matching the labeling of [`k4`].
pub fn k4_incidence_vectors() -> Vec<Vec<Rat>> {
    [[1, -1, 0], [0, 1, -1], [0, 1, 0], [1, 0, -1], [1, 0, 0], [0, 0, 1]]
        .iter()
        .map(|v| v.iter().map(|&x| rat(x)).collect())
        .collect()
}

/// Triangle `1,2,3` with edge midpoints `4` (of 12), `5` (of 23), `6` (of 13)
/// and `7`, the midpoint of `4` and `5`, which also lies on the median `2–6`.
pub fn p7() -> Matroid {
    from_nonbases(7, 3, &[&[1, 2, 4], &[2, 3, 5], &[1, 3, 6], &[4, 5, 7], &[2, 6, 7]])
}

pub fn p8() -> Matroid {
    let rows: Vec<Vec<Rat>> =
        [[1, 0, 0, 0, 0, 1, 1, 2], [0, 1, 0, 0, 1, 0, 1, 1], [0, 0, 1, 0, 1, 1, 0, 1], [0, 0, 0, 1, 2, 1, 1, 0]]
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
    Matroid::from_rational_matrix(&rows).expect("nonzero matrix")
}

pub const P8_RELAXED: [&[usize]; 3] = [&[1, 4, 5, 8], &[2, 3, 6, 7], &[4, 6, 7, 8]];

pub fn vamos() -> Matroid {
    from_nonbases(8, 4, &[&[1, 2, 3, 4], &[1, 2, 5, 6], &[1, 2, 7, 8], &[3, 4, 5, 6], &[3, 4, 7, 8]])
}

pub fn m431() -> Matroid {
    from_nonbases(8, 4, &[&[1, 2, 3, 4], &[1, 2, 5, 6], &[1, 3, 5, 7], &[2, 3, 5, 8]])
}

pub fn s8() -> Matroid {
    let rows = vec![
        vec![1, 0, 0, 0, 0, 1, 1, 1],
        vec![0, 1, 0, 0, 1, 0, 1, 1],
        vec![0, 0, 1, 0, 1, 1, 0, 1],
        vec![0, 0, 0, 1, 1, 1, 1, 1],
    ];
    Matroid::from_matrix_mod_p(&rows, 2).expect("nonzero matrix")
}

const PAPPUS_LINES: [&[usize]; 9] =
    [&[1, 2, 3], &[4, 5, 6], &[1, 5, 7], &[2, 4, 7], &[1, 6, 8], &[3, 4, 8], &[2, 6, 9], &[3, 5, 9], &[7, 8, 9]];

pub fn pappus() -> Matroid {
    from_nonbases(9, 3, &PAPPUS_LINES)
}

pub fn non_pappus() -> Matroid {
    from_nonbases(9, 3, &PAPPUS_LINES[..8])
}

pub fn golay() -> Matroid {
    let rows = vec![
        vec![1, 0, 0, 0, 0, 0, 1, 1, 1, 2, 2, 0],
        vec![0, 1, 0, 0, 0, 0, 1, 1, 2, 1, 0, 2],
        vec![0, 0, 1, 0, 0, 0, 1, 2, 1, 0, 1, 2],
        vec![0, 0, 0, 1, 0, 0, 1, 2, 0, 1, 2, 1],
        vec![0, 0, 0, 0, 1, 0, 1, 0, 2, 2, 1, 1],
        vec![0, 0, 0, 0, 0, 1, 0, 1, 1, 1, 1, 1],
    ];
    Matroid::from_matrix_mod_p(&rows, 3).expect("nonzero matrix")
}

/// Canonical names accepted by [`builtin`] (besides `U<r><n>`, `U<r>,<n>`
/// and the `*` suffix).
pub const BUILTIN_NAMES: [&str; 20] = [
    "U23par",
    "F7",
    "F7-",
    "F7--",
    "F7-3",
    "K4",
    "K4+e",
    "P7",
    "CoExtP7",
    "P8",
    "P8'",
    "P8''",
    "P8'''",
    "V8",
    "M431",
    "S8",
    "Pappus",
    "NonPappus",
    "NonPappus9+e",
    "Golay",
];

fn alias(name: &str) -> &str {
    match name {
        "Vamos" => "V8",
        "M430" => "CoExtP7",
        "M548" => "CoExtP7*",
        "M575" => "P8",
        "M570" | "P8p" => "P8'",
        "M467" | "P8pp" => "P8''",
        "M466" | "P8ppp" => "P8'''",
        "M912" => "S8",
        "ETG" => "Golay",
        "MK4" => "K4",
        "MK4+e" => "K4+e",
        other => other,
    }
}

fn uniform_from_name(name: &str) -> Option<Matroid> {
    let rest = name.strip_prefix('U')?;
    let (r, n): (usize, usize) = if let Some((a, b)) = rest.split_once(',') {
        (a.parse().ok()?, b.parse().ok()?)
    } else if rest.len() == 2 && rest.bytes().all(|b| b.is_ascii_digit()) {
        ((rest.as_bytes()[0] - b'0') as usize, (rest.as_bytes()[1] - b'0') as usize)
    } else {
        return None;
    };
    (r <= n && n >= 1 && n <= subset::MAX_ELEMENTS).then(|| Matroid::uniform(r, n))
}

pub fn builtin(name: &str) -> Result<CatalogEntry, CatalogError> {
    let unknown = || CatalogError::UnknownName(name.to_string());
    let canonical = alias(name);
    if canonical != name {
        let mut e = builtin(canonical)?;
        e.name = name.to_string();
        return Ok(e);
    }
    if let Some(base) = name.strip_suffix('*') {
        let e = builtin(base)?;
        return Ok(entry(name, e.matroid.dual(), format!("dual of {base}")));
    }
    if let Some(u) = uniform_from_name(name) {
        return Ok(entry(name, u, "uniform matroid"));
    }
    let fano_rel = |lines: &[&[usize]]| relax_all(&fano(), lines);
    let e = match name {
        "U23par" => {
            entry(name, from_nonbases(4, 2, &[&[1, 3]]), "U(2,3) with element 3 doubled by the parallel element 1")
        }
        "F7" => entry(name, fano(), "Fano plane, lines 123 145 167 246 257 347 356"),
        "F7-" => entry(name, fano_rel(&[&[1, 2, 3]]), "F7 with line 123 relaxed"),
        "F7--" => entry(name, fano_rel(&[&[1, 2, 3], &[1, 4, 5]]), "F7 with lines 123, 145 relaxed"),
        "F7-3" => entry(
            name,
            fano_rel(&[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6]]),
            "F7 with the non-concurrent lines 123, 145, 246 relaxed",
        ),
        "K4" => entry(name, k4(), "cycle matroid of K4"),
        "K4+e" => entry(name, k4().free_extension().expect("fits"), "free extension of M(K4)"),
        "P7" => entry(name, p7(), "ternary 3-spike, lines 124 235 136 457 267"),
        "CoExtP7" => entry(name, p7().free_coextension().expect("fits"), "free coextension of P7"),
        "P8" => entry(name, p8(), "columns of a 4x8 rational matrix"),
        "P8'" => entry(name, relax_all(&p8(), &P8_RELAXED[..1]), "P8 with 1458 relaxed"),
        "P8''" => entry(name, relax_all(&p8(), &P8_RELAXED[..2]), "P8 with 1458, 2367 relaxed"),
        "P8'''" => entry(name, relax_all(&p8(), &P8_RELAXED), "P8 with 1458, 2367, 4678 relaxed"),
        "V8" => entry(name, vamos(), "Vamos matroid, pairs 12 34 56 78"),
        "M431" => entry(name, m431(), "sparse paving, nonbases 1234 1256 1357 2358"),
        "S8" => entry(name, s8(), "binary, [I4 | 0111 1011 1101 1111]"),
        "Pappus" => entry(name, pappus(), "Pappus configuration"),
        "NonPappus" => entry(name, non_pappus(), "Pappus configuration with line 789 relaxed"),
        "NonPappus9+e" => entry(
            name,
            non_pappus().delete(1 << 8).expect("nonempty").free_extension().expect("fits"),
            "free extension of NonPappus with 9 deleted",
        ),
        "Golay" => entry(name, golay(), "extended ternary Golay code over GF(3)"),
        _ => return Err(unknown()),
    };
    Ok(e)
}

/// Every builtin, canonical names only.
pub fn all_builtins() -> Vec<CatalogEntry> {
    BUILTIN_NAMES.iter().map(|n| builtin(n).expect("listed names resolve")).collect()
}

/// Known minor-minimal matroids without the half-plane property that can be
/// built here: the five rank-3 seven-element ones and their duals, the P8
/// family, CoExt(P7) and its dual, M431, and the three nine-element rank-3
/// ones. Isomorphic duplicates are dropped.
pub fn forbidden_seeds() -> Vec<CatalogEntry> {
    let names = [
        "F7",
        "F7*",
        "F7-",
        "F7-*",
        "F7--",
        "F7--*",
        "F7-3",
        "F7-3*",
        "K4+e",
        "K4+e*",
        "P8",
        "P8'",
        "P8''",
        "P8'''",
        "CoExtP7",
        "CoExtP7*",
        "M431",
        "Pappus",
        "Pappus*",
        "NonPappus",
        "NonPappus*",
        "NonPappus9+e",
        "NonPappus9+e*",
    ];
    let mut out: Vec<CatalogEntry> = Vec::new();
    for n in names {
        let e = builtin(n).expect("seed names resolve");
        if !out.iter().any(|o| matroid::is_isomorphic(&o.matroid, &e.matroid)) {
            out.push(e);
        }
    }
    out
}

/// Reads a catalog in either the block text format or the compact
/// one-line format (`<n> <r> <nonbasis>,<nonbasis>,...`), detected from the
/// first non-comment line.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        None => Ok(Vec::new()),
        Some(l) if l.starts_with("matroid") => {
            let parsed = matroid::parse_matroid_text(text).map_err(CatalogError::Parse)?;
            Ok(parsed
                .into_iter()
                .enumerate()
                .map(|(i, NamedMatroid { name, matroid })| CatalogEntry {
                    name,
                    matroid,
                    provenance: "catalog file".into(),
                    index: Some(i),
                })
                .collect())
        }
        Some(_) => parse_compact(text),
    }
}

fn parse_compact(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |message: String| CatalogError::Parse(MatroidError::Parse { line: line_no, message });
        let mut parts = line.splitn(3, char::is_whitespace);
        let n: usize = parts.next().unwrap_or("").parse().map_err(|_| perr("bad element count".into()))?;
        let r: usize =
            parts.next().ok_or_else(|| perr("missing rank".into()))?.parse().map_err(|_| perr("bad rank".into()))?;
        if n > subset::MAX_ELEMENTS {
            return Err(perr(MatroidError::TooManyElements(n).to_string()));
        }
        let rest = parts.next().unwrap_or("").trim();
        let mut nonbases = Vec::new();
        if !rest.is_empty() {
            for chunk in rest.split(',') {
                let s = matroid::parse_subset_text(line_no, chunk, n).map_err(CatalogError::Parse)?;
                if subset::size(s) != r {
                    return Err(perr(format!("nonbasis {} has size other than {r}", subset::display(s))));
                }
                nonbases.push(s);
            }
        }
        let index = out.len();
        let name = format!("M{index}");
        let matroid = Matroid::from_nonbases(n, r, &nonbases).map_err(|source| CatalogError::Validation {
            line: line_no,
            entry: name.clone(),
            source,
        })?;
        out.push(CatalogEntry { name, matroid, provenance: "compact catalog line".into(), index: Some(index) });
    }
    Ok(out)
}

/// Block text format, one entry after another.
pub fn write_catalog(entries: &[CatalogEntry]) -> String {
    entries.iter().map(|e| matroid::write_matroid_text(&e.name, &e.matroid)).collect()
}

/// Compact format, one line per entry.
pub fn write_compact(entries: &[CatalogEntry]) -> String {
    let mut s = String::new();
    for e in entries {
        let m = &e.matroid;
        let nb: Vec<String> = m
            .nonbases()
            .iter()
            .map(|&b| subset::to_elements(b).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        s.push_str(&format!("{} {}", m.n(), m.rank()));
        if !nb.is_empty() {
            s.push(' ');
            s.push_str(&nb.join(","));
        }
        s.push('\n');
    }
    s
}
