//! Representation bundles: a directory holding `complex.txt` (the complex
//! text format) and `mapping.txt` with the basis, coordinate triangles and
//! chains.
//!
//! `mapping.txt` lines:
//!
//! ```text
//! dim 3
//! length 4
//! basis 1 1100
//! coord 1 17
//! chain 1 3 4 17
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::builder::Representation;
use crate::complex::{parse_complex_text, write_complex_text, Chain};
use crate::error::{BundleError, ComplexError};
use crate::gf2::BitVec;

pub const COMPLEX_FILE: &str = "complex.txt";
pub const MAPPING_FILE: &str = "mapping.txt";

pub fn write_mapping_text(rep: &Representation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim {}", rep.dim());
    let _ = writeln!(out, "length {}", rep.code_len());
    for (i, b) in rep.basis.iter().enumerate() {
        let _ = writeln!(out, "basis {} {b}", i + 1);
    }
    for (i, t) in rep.coordinate_map.iter().enumerate() {
        let _ = writeln!(out, "coord {} {t}", i + 1);
    }
    for (i, chain) in rep.chains.iter().enumerate() {
        let _ = write!(out, "chain {}", i + 1);
        for t in chain.iter() {
            let _ = write!(out, " {t}");
        }
        out.push('\n');
    }
    out
}

struct Mapping {
    dim: usize,
    length: usize,
    basis: Vec<BitVec>,
    coords: Vec<usize>,
    chains: Vec<Chain>,
}

/// Places `item` at 1-based `index`, requiring indices to arrive in order.
fn push_indexed<T>(v: &mut Vec<T>, index: usize, item: T, what: &str) -> Result<(), String> {
    if index != v.len() + 1 {
        return Err(format!("expected {what} {}, found {index}", v.len() + 1));
    }
    v.push(item);
    Ok(())
}

fn parse_mapping(text: &str) -> Result<Mapping, BundleError> {
    let mut dim = None;
    let mut length = None;
    let mut basis = Vec::new();
    let mut coords = Vec::new();
    let mut chains = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let err = |msg: String| BundleError::Parse {
            file: MAPPING_FILE.into(),
            line: k + 1,
            msg,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<usize, BundleError> {
            s.parse().map_err(|_| err(format!("bad integer {s:?}")))
        };
        let arity = |n: usize| -> Result<(), BundleError> {
            if tokens.len() == n {
                Ok(())
            } else {
                Err(err(format!("{} takes {} values", tokens[0], n - 1)))
            }
        };
        match tokens[0] {
            "dim" => {
                arity(2)?;
                dim = Some(num(tokens[1])?);
            }
            "length" => {
                arity(2)?;
                length = Some(num(tokens[1])?);
            }
            "basis" => {
                arity(3)?;
                let v: BitVec = tokens[2].parse().map_err(|e| err(format!("{e}")))?;
                push_indexed(&mut basis, num(tokens[1])?, v, "basis").map_err(err)?;
            }
            "coord" => {
                arity(3)?;
                push_indexed(&mut coords, num(tokens[1])?, num(tokens[2])?, "coord").map_err(err)?;
            }
            "chain" => {
                if tokens.len() < 2 {
                    return Err(err("chain needs an index".into()));
                }
                let chain = tokens[2..].iter().map(|s| num(s)).collect::<Result<Chain, _>>()?;
                push_indexed(&mut chains, num(tokens[1])?, chain, "chain").map_err(err)?;
            }
            other => return Err(err(format!("unknown record {other:?}"))),
        }
    }
    let missing = |what: &str| BundleError::Parse {
        file: MAPPING_FILE.into(),
        line: 0,
        msg: format!("missing {what} line"),
    };
    Ok(Mapping {
        dim: dim.ok_or_else(|| missing("dim"))?,
        length: length.ok_or_else(|| missing("length"))?,
        basis,
        coords,
        chains,
    })
}

/// Assembles a representation from the two bundle files. Parse errors are
/// [`BundleError::Parse`]; well-formed files that disagree with each other
/// are [`BundleError::Inconsistent`].
pub fn parse_bundle(complex_text: &str, mapping_text: &str) -> Result<Representation, BundleError> {
    let (complex, embedding) = parse_complex_text(complex_text).map_err(|e| match e {
        ComplexError::Parse { line, msg } => BundleError::Parse {
            file: COMPLEX_FILE.into(),
            line,
            msg,
        },
        other => BundleError::Inconsistent(other.to_string()),
    })?;
    let m = parse_mapping(mapping_text)?;
    let inconsistent = |msg: String| Err(BundleError::Inconsistent(msg));
    if m.dim != embedding.dim() {
        return inconsistent(format!(
            "mapping says dimension {} but the points have {}",
            m.dim,
            embedding.dim()
        ));
    }
    if m.coords.len() != m.length {
        return inconsistent(format!("{} coord lines for length {}", m.coords.len(), m.length));
    }
    if let Some(b) = m.basis.iter().find(|b| b.len() != m.length) {
        return inconsistent(format!("basis vector {b} does not have length {}", m.length));
    }
    if m.chains.len() != m.basis.len() {
        return inconsistent(format!("{} chains for {} basis vectors", m.chains.len(), m.basis.len()));
    }
    for (i, &t) in m.coords.iter().enumerate() {
        if !complex.is_live(t) {
            return inconsistent(format!("coordinate {} refers to missing triangle {t}", i + 1));
        }
        if let Some(d) = complex.designated_triangle(i + 1) {
            if d != t {
                return inconsistent(format!(
                    "coordinate {} is triangle {t} but the complex designates {d}",
                    i + 1
                ));
            }
        }
    }
    for (&coord, &t) in complex.designated() {
        if coord == 0 || coord > m.length || !complex.is_live(t) {
            return inconsistent(format!("designation of coordinate {coord} to triangle {t} is dangling"));
        }
    }
    for (i, chain) in m.chains.iter().enumerate() {
        if let Some(t) = chain.iter().find(|t| !complex.is_live(**t)) {
            return inconsistent(format!("chain {} refers to missing triangle {t}", i + 1));
        }
    }
    Ok(Representation {
        complex,
        embedding,
        basis: m.basis,
        chains: m.chains,
        coordinate_map: m.coords,
    })
}

pub fn write_bundle(dir: &Path, rep: &Representation) -> Result<(), BundleError> {
    let io = |path: &Path| {
        let path = path.display().to_string();
        move |source| BundleError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    let complex_path = dir.join(COMPLEX_FILE);
    fs::write(&complex_path, write_complex_text(&rep.complex, &rep.embedding)).map_err(io(&complex_path))?;
    let mapping_path = dir.join(MAPPING_FILE);
    fs::write(&mapping_path, write_mapping_text(rep)).map_err(io(&mapping_path))?;
    Ok(())
}

pub fn read_bundle(dir: &Path) -> Result<Representation, BundleError> {
    let read = |name: &str| {
        let path = dir.join(name);
        fs::read_to_string(&path).map_err(|source| BundleError::Io {
            path: path.display().to_string(),
            source,
        })
    };
    parse_bundle(&read(COMPLEX_FILE)?, &read(MAPPING_FILE)?)
}
