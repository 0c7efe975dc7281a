use std::fmt::Write as _;

use num_traits::ToPrimitive;

use super::{Rational, RationalPoint};
use crate::complex::{Complex, Embedding};
use crate::error::GeomError;

/// Renders a rational with 12 significant digits, trailing zeros trimmed.
fn decimal(r: &Rational) -> String {
    let v = r.to_f64().unwrap_or(f64::NAN);
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let places = (11 - magnitude).max(0) as usize;
    let mut s = format!("{v:.places$}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// Writes an OFF mesh: header, counts, one vertex per line, faces `3 i j k`.
pub fn export_off(complex: &Complex, embedding: &Embedding) -> Result<String, GeomError> {
    export_off_with_comment(complex, embedding, None)
}

/// Like [`export_off`], with an optional `#` comment line after the header.
pub fn export_off_with_comment(
    complex: &Complex,
    embedding: &Embedding,
    comment: Option<&str>,
) -> Result<String, GeomError> {
    if embedding.dim() != 3 {
        return Err(GeomError::Dimension {
            expected: 3,
            found: embedding.dim(),
        });
    }
    let mut out = String::from("OFF\n");
    if let Some(c) = comment {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(
        out,
        "{} {} 0",
        embedding.len(),
        complex.num_triangles()
    );
    for p in embedding.points() {
        let line: Vec<String> = p.coords().iter().map(decimal).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    for (_, [a, b, c]) in complex.triangles() {
        let _ = writeln!(out, "3 {a} {b} {c}");
    }
    Ok(out)
}

/// A rational linear map `Q^4 -> Q^3`, given by its rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    rows: Vec<Vec<Rational>>,
}

impl LinearMap {
    pub fn new(rows: Vec<Vec<Rational>>) -> Self {
        Self { rows }
    }

    /// Forgets the last coordinate.
    pub fn drop_w() -> Self {
        let rows = (0..3)
            .map(|r| {
                (0..4)
                    .map(|c| if r == c { super::int(1) } else { super::int(0) })
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn apply(&self, p: &RationalPoint) -> RationalPoint {
        RationalPoint::new(
            self.rows
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(p.coords())
                        .fold(super::int(0), |acc, (a, x)| acc + a * x)
                })
                .collect(),
        )
    }
}

/// Projects a 4-dimensional embedding to 3 dimensions. The result is for
/// viewing only; the projection can create intersections.
pub fn project_r4(embedding: &Embedding, map: &LinearMap) -> Result<Embedding, GeomError> {
    if embedding.dim() != 4 {
        return Err(GeomError::Dimension {
            expected: 4,
            found: embedding.dim(),
        });
    }
    if map.rows.len() != 3 || map.rows.iter().any(|r| r.len() != 4) {
        return Err(GeomError::Dimension {
            expected: 4,
            found: map.rows.first().map_or(0, Vec::len),
        });
    }
    Ok(embedding.map(3, |p| map.apply(p)))
}
