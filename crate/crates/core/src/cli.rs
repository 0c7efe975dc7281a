//! Command implementations behind the `georep` binary. Each returns a
//! [`CommandOutcome`] instead of printing, so they can be driven from tests.
//!
//! Exit codes: 0 success, 1 a well-formed input with a negative answer,
//! 2 unreadable or malformed input.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::builder::{build_r3, build_r4, verify_representation, Representation, VerificationReport};
use crate::bundle::{read_bundle, write_bundle};
use crate::code::{find_two_basis, LinearCode};
use crate::error::BundleError;
use crate::geom::{export_off_with_comment, project_r4, validate_embedding, LinearMap, ValidationReport};
use crate::graph::{cut_space, graph_from_two_basis, MultiGraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    /// Human-readable report.
    pub text: String,
    /// Machine-readable report.
    pub json: Value,
}

impl CommandOutcome {
    fn new(exit_code: i32, text: String, json: Value) -> Self {
        Self { exit_code, text, json }
    }

    fn input_error(command: &str, msg: String) -> Self {
        let text = format!("error: {msg}\n");
        Self::new(EXIT_INPUT, text, json!({ "command": command, "error": msg }))
    }

    /// The report in the requested form, newline-terminated.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).unwrap_or_default();
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

/// Target dimension for `build`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimChoice {
    Three,
    Four,
    Auto,
}

impl FromStr for DimChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "3" => Ok(DimChoice::Three),
            "4" => Ok(DimChoice::Four),
            "auto" => Ok(DimChoice::Auto),
            other => Err(format!("expected 3, 4 or auto, got {other:?}")),
        }
    }
}

/// Projections accepted by `export` for 4-dimensional bundles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    DropW,
}

impl FromStr for Projection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "drop-w" => Ok(Projection::DropW),
            other => Err(format!("unknown projection {other:?}")),
        }
    }
}

fn read_file(command: &str, path: &Path) -> Result<String, CommandOutcome> {
    fs::read_to_string(path)
        .map_err(|e| CommandOutcome::input_error(command, format!("{}: {e}", path.display())))
}

fn load_code(command: &str, path: &Path) -> Result<LinearCode, CommandOutcome> {
    let text = read_file(command, path)?;
    LinearCode::parse_text(&text)
        .map_err(|e| CommandOutcome::input_error(command, format!("{}: {e}", path.display())))
}

fn load_bundle(command: &str, dir: &Path) -> Result<Representation, CommandOutcome> {
    read_bundle(dir).map_err(|e| {
        let code = match e {
            BundleError::Inconsistent(_) => EXIT_NEGATIVE,
            _ => EXIT_INPUT,
        };
        let msg = format!("{}: {e}", dir.display());
        CommandOutcome::new(code, format!("error: {msg}\n"), json!({ "command": command, "error": msg }))
    })
}

fn bits(vectors: &[crate::gf2::BitVec]) -> Vec<String> {
    vectors.iter().map(ToString::to_string).collect()
}

fn ok_or_failed(ok: bool) -> &'static str {
    if ok {
        "OK"
    } else {
        "FAILED"
    }
}

/// Runs both checks and summarises them in one line plus details.
fn check_all(code: &LinearCode, rep: &Representation) -> (VerificationReport, ValidationReport, String) {
    let algebra = verify_representation(code, rep);
    let geometry = validate_embedding(&rep.complex, &rep.embedding);
    let mut text = format!(
        "verified: algebra {}, geometry {}\n",
        ok_or_failed(algebra.passed()),
        ok_or_failed(geometry.passed())
    );
    for d in &algebra.details {
        let _ = writeln!(text, "  algebra: {d}");
    }
    for v in geometry.violations.iter().take(10) {
        let _ = writeln!(text, "  geometry: {v:?}");
    }
    if geometry.violations.len() > 10 {
        let _ = writeln!(text, "  geometry: {} more violations", geometry.violations.len() - 10);
    }
    (algebra, geometry, text)
}

/// Reports length, dimension, the 2-basis decision and the minimal
/// representation dimension of the code in `code_path`.
pub fn cmd_analyze(code_path: &Path) -> CommandOutcome {
    let code = match load_code("analyze", code_path) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let report = find_two_basis(&code);
    let min_dim = if report.found { 3 } else { 4 };
    let mut text = format!("n={}\ndim={}\n", code.len(), code.dim());
    let mut graph_text = None;
    match &report.basis {
        Some(w) => {
            let _ = writeln!(text, "2-basis: yes");
            let _ = writeln!(text, "witness: {}", bits(w).join(" "));
            graph_text = graph_from_two_basis(w, code.len()).ok().map(|g| g.to_text());
        }
        None => {
            let _ = writeln!(text, "2-basis: no");
        }
    }
    let _ = writeln!(text, "min-dim: {min_dim}");
    if let Some(g) = &graph_text {
        let _ = writeln!(text, "graph:");
        for line in g.lines() {
            let _ = writeln!(text, "  {line}");
        }
    }
    let json = json!({
        "command": "analyze",
        "n": code.len(),
        "dim": code.dim(),
        "two_basis": report.found,
        "witness": report.basis.as_deref().map(bits),
        "coordinate_load": report.coordinate_load,
        "min_dim": min_dim,
        "graph": graph_text,
    });
    CommandOutcome::new(EXIT_OK, text, json)
}

/// Builds a representation, checks it, and writes the bundle to `out_dir`
/// only if every check passes.
pub fn cmd_build(code_path: &Path, dim: DimChoice, out_dir: &Path) -> CommandOutcome {
    let code = match load_code("build", code_path) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let report = find_two_basis(&code);
    let target = match (dim, &report.basis) {
        (DimChoice::Four, _) => 4,
        (_, Some(_)) => 3,
        (DimChoice::Auto, None) => 4,
        (DimChoice::Three, None) => {
            let text = "no 2-basis exists, so the code has no representation in R^3; \
                        use --dim 4 or --dim auto\n"
                .to_string();
            let json = json!({ "command": "build", "built": false, "two_basis": false, "dim": 3 });
            return CommandOutcome::new(EXIT_NEGATIVE, text, json);
        }
    };
    let built = match (target, &report.basis) {
        (3, Some(w)) => build_r3(&code, w),
        _ => build_r4(&code, code.basis()),
    };
    let rep = match built {
        Ok(r) => r,
        Err(e) => {
            let text = format!("build failed: {e}\n");
            let json = json!({ "command": "build", "built": false, "error": e.to_string() });
            return CommandOutcome::new(EXIT_NEGATIVE, text, json);
        }
    };
    let mut text = format!(
        "built: R^{target}, {} vertices, {} triangles\n",
        rep.complex.num_vertices(),
        rep.complex.num_triangles()
    );
    let (algebra, geometry, summary) = check_all(&code, &rep);
    text.push_str(&summary);
    let passed = algebra.passed() && geometry.passed();
    let mut json = json!({
        "command": "build",
        "dim": target,
        "vertices": rep.complex.num_vertices(),
        "triangles": rep.complex.num_triangles(),
        "algebra": algebra,
        "geometry": geometry,
        "written": false,
    });
    if !passed {
        text.push_str("not written: the representation failed its checks\n");
        return CommandOutcome::new(EXIT_NEGATIVE, text, json);
    }
    if let Err(e) = write_bundle(out_dir, &rep) {
        return CommandOutcome::input_error("build", e.to_string());
    }
    json["written"] = json!(true);
    json["bundle"] = json!(out_dir.display().to_string());
    let _ = writeln!(text, "wrote {}", out_dir.display());
    CommandOutcome::new(EXIT_OK, text, json)
}

/// Re-runs every algebraic and geometric check on a stored bundle.
pub fn cmd_verify(code_path: &Path, bundle_dir: &Path) -> CommandOutcome {
    let code = match load_code("verify", code_path) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let rep = match load_bundle("verify", bundle_dir) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let (algebra, geometry, text) = check_all(&code, &rep);
    let passed = algebra.passed() && geometry.passed();
    let json = json!({
        "command": "verify",
        "passed": passed,
        "algebra": algebra,
        "geometry": geometry,
    });
    CommandOutcome::new(if passed { EXIT_OK } else { EXIT_NEGATIVE }, text, json)
}

/// Writes the bundle as an OFF mesh. Four-dimensional bundles need a
/// projection, and the output is then marked as uncertified.
pub fn cmd_export(bundle_dir: &Path, out: &Path, project: Option<Projection>) -> CommandOutcome {
    let rep = match load_bundle("export", bundle_dir) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let (embedding, comment) = match (rep.dim(), project) {
        (3, None) => (rep.embedding.clone(), None),
        (4, Some(Projection::DropW)) => match project_r4(&rep.embedding, &LinearMap::drop_w()) {
            Ok(e) => (e, Some("non-certified projection (drop-w); intersections may be artefacts")),
            Err(e) => return CommandOutcome::input_error("export", e.to_string()),
        },
        (4, None) => {
            return CommandOutcome::input_error(
                "export",
                "the bundle lives in R^4; pass --project drop-w for a viewing copy".into(),
            )
        }
        (d, _) => {
            return CommandOutcome::input_error("export", format!("cannot export a bundle of dimension {d} with this projection"))
        }
    };
    let off = match export_off_with_comment(&rep.complex, &embedding, comment) {
        Ok(s) => s,
        Err(e) => return CommandOutcome::input_error("export", e.to_string()),
    };
    if let Err(e) = fs::write(out, &off) {
        return CommandOutcome::input_error("export", format!("{}: {e}", out.display()));
    }
    let text = format!(
        "wrote {} ({} vertices, {} faces{})\n",
        out.display(),
        embedding.len(),
        rep.complex.num_triangles(),
        if comment.is_some() { ", projected" } else { "" }
    );
    let json = json!({
        "command": "export",
        "output": out.display().to_string(),
        "vertices": embedding.len(),
        "faces": rep.complex.num_triangles(),
        "certified": comment.is_none(),
    });
    CommandOutcome::new(EXIT_OK, text, json)
}

/// The graph helpers: cut space of a graph, or a graph realising a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphAction {
    /// Read a graph, emit the code text of its cut space.
    Cut,
    /// Read a code, emit a graph whose cut space it is.
    Realize,
}

pub fn cmd_graph(action: GraphAction, input: &Path, out: Option<&Path>) -> CommandOutcome {
    let source = match read_file("graph", input) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let (body, json) = match action {
        GraphAction::Cut => {
            let g = match MultiGraph::parse_text(&source) {
                Ok(g) => g,
                Err(e) => return CommandOutcome::input_error("graph", format!("{}: {e}", input.display())),
            };
            let (code, stars) = match cut_space(&g) {
                Ok(c) => c,
                Err(e) => return CommandOutcome::input_error("graph", e.to_string()),
            };
            let body = code.to_text();
            let json = json!({
                "command": "graph",
                "action": "cut",
                "n": code.len(),
                "dim": code.dim(),
                "basis": bits(code.basis()),
                "stars": bits(&stars),
            });
            (body, json)
        }
        GraphAction::Realize => {
            let code = match LinearCode::parse_text(&source) {
                Ok(c) => c,
                Err(e) => return CommandOutcome::input_error("graph", format!("{}: {e}", input.display())),
            };
            let report = find_two_basis(&code);
            let Some(w) = report.basis else {
                let text = "no 2-basis exists, so the code is not the cut space of a graph\n".to_string();
                let json = json!({ "command": "graph", "action": "realize", "two_basis": false });
                return CommandOutcome::new(EXIT_NEGATIVE, text, json);
            };
            let g = match graph_from_two_basis(&w, code.len()) {
                Ok(g) => g,
                Err(e) => return CommandOutcome::new(EXIT_NEGATIVE, format!("{e}\n"), json!({ "error": e.to_string() })),
            };
            let body = g.to_text();
            let json = json!({
                "command": "graph",
                "action": "realize",
                "two_basis": true,
                "witness": bits(&w),
                "graph": body,
            });
            (body, json)
        }
    };
    let text = match out {
        Some(path) => {
            if let Err(e) = fs::write(path, &body) {
                return CommandOutcome::input_error("graph", format!("{}: {e}", path.display()));
            }
            format!("wrote {}\n", path.display())
        }
        None => body,
    };
    CommandOutcome::new(EXIT_OK, text, json)
}
