//! The workspace text format: a field, a quiver with relations, named modules,
//! an optional tilting declaration and default caps.
//!
//! ```text
//! field F2
//!
//! quiver
//! vertex 1
//! vertex 2
//! arrow alpha: 1 -> 2
//!
//! relations
//!
//! modules
//! simple S1 at 1
//! projective P1 at 1
//! module M dims 1 1
//!   alpha
//!     1
//! end
//!
//! tilting
//! summands P1 S1
//! ```
//!
//! A relation is a sum of terms `c a1 a2 ...` joined by `+`, with the
//! coefficient optional. A module block lists, for each nonzero arrow, the
//! arrow name followed by one matrix row per line (source dimension rows,
//! target dimension columns). Modules declared `over A` live over the
//! endomorphism algebra and are built once the tilting data exists.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::module::Module;
use crate::algebra::path_algebra::{FinDimAlgebra, Relation};
use crate::algebra::quiver::Quiver;
use crate::error::{Error, Result};
use crate::filtration::cert::parse_matrix;
use crate::hearts::Side;
use crate::linalg::Field;
use crate::tilting::{validate_tilting, TiltCaps, TiltingData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleSource {
    Simple(String),
    Projective(String),
    Injective(String),
    Explicit { dims: Vec<usize>, arrows: Vec<(String, Vec<Vec<String>>)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDecl {
    pub name: String,
    pub side: Side,
    pub source: ModuleSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDecl {
    pub terms: Vec<(String, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltingDecl {
    pub summands: Vec<String>,
    pub n: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Defaults {
    pub enum_cap: usize,
    pub perp_bound: usize,
    pub res_cap: usize,
}

impl Default for Defaults {
    fn default() -> Self {
        Defaults { enum_cap: 8, perp_bound: 6, res_cap: 10 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkspaceFile {
    pub field: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<RelationDecl>,
    pub modules: Vec<ModuleDecl>,
    pub tilting: Option<TiltingDecl>,
    pub defaults: Defaults,
}

/// A parsed workspace with its algebra built.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub file: WorkspaceFile,
    pub field: Field,
    pub algebra: FinDimAlgebra,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Tokens of a line with their 1-based columns, comments removed.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &body[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &body[s..]));
    }
    out
}

pub fn parse_field(s: &str) -> Result<Field> {
    let t = s.trim();
    if t == "Q" {
        return Ok(Field::Rationals);
    }
    let digits = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix('F'))
        .ok_or_else(|| Error::InvalidField(format!("{t:?} is not F<p>, GF(<p>) or Q")))?;
    let p: u32 = digits.parse().map_err(|_| Error::InvalidField(format!("{t:?} is not F<p>, GF(<p>) or Q")))?;
    Field::prime(p)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Quiver,
    Relations,
    Modules,
    Tilting,
    Defaults,
}

struct PendingModule {
    decl: ModuleDecl,
    dims: Vec<usize>,
    arrows: Vec<(String, Vec<Vec<String>>)>,
    line: usize,
}

/// Parses workspace text. Syntax errors carry a line and column; semantic
/// errors name the offending entity.
pub fn parse_str(text: &str) -> Result<Workspace> {
    let mut field: Option<(String, Field)> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut relations = Vec::new();
    let mut modules: Vec<ModuleDecl> = Vec::new();
    let mut tilting: Option<TiltingDecl> = None;
    let mut defaults = Defaults::default();
    let mut section = Section::None;
    let mut pending: Option<PendingModule> = None;
    let mut relation_lines: Vec<(usize, Vec<(usize, String)>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let toks = tokens(raw);
        let Some(&(col0, head)) = toks.first() else { continue };

        if let Some(pm) = pending.as_mut() {
            if head == "end" {
                if toks.len() > 1 {
                    return Err(perr(ln, toks[1].0, "unexpected text after end"));
                }
                let pm = pending.take().unwrap();
                let mut decl = pm.decl;
                decl.source = ModuleSource::Explicit { dims: pm.dims, arrows: pm.arrows };
                modules.push(decl);
                continue;
            }
            let is_row = toks.iter().all(|(_, t)| t.chars().all(|c| c.is_ascii_digit() || c == '-' || c == '/'));
            if is_row {
                let Some(last) = pm.arrows.last_mut() else {
                    return Err(perr(ln, col0, "matrix row before any arrow name"));
                };
                last.1.push(toks.iter().map(|(_, t)| t.to_string()).collect());
            } else {
                if toks.len() > 1 {
                    return Err(perr(ln, toks[1].0, "expected an arrow name alone on its line"));
                }
                if pm.arrows.iter().any(|(a, _)| a == head) {
                    return Err(perr(ln, col0, format!("arrow {head:?} listed twice in module {:?}", pm.decl.name)));
                }
                pm.arrows.push((head.to_string(), Vec::new()));
            }
            continue;
        }

        let new_section = match head {
            "field" => {
                if field.is_some() {
                    return Err(perr(ln, col0, "field given twice"));
                }
                let Some(&(c, f)) = toks.get(1) else {
                    return Err(perr(ln, col0 + 5, "field needs a value such as F2 or Q"));
                };
                if toks.len() > 2 {
                    return Err(perr(ln, toks[2].0, "unexpected text after the field"));
                }
                let fld = parse_field(f).map_err(|e| perr(ln, c, e.to_string()))?;
                field = Some((fld.to_string(), fld));
                section = Section::None;
                continue;
            }
            "quiver" => Some(Section::Quiver),
            "relations" => Some(Section::Relations),
            "modules" => Some(Section::Modules),
            "tilting" => Some(Section::Tilting),
            "defaults" => Some(Section::Defaults),
            _ => None,
        };
        if let Some(s) = new_section {
            if toks.len() > 1 {
                return Err(perr(ln, toks[1].0, "section headers stand alone"));
            }
            if s == Section::Tilting && tilting.is_some() {
                return Err(perr(ln, col0, "tilting given twice"));
            }
            section = s;
            continue;
        }

        match section {
            Section::None => return Err(perr(ln, col0, format!("{head:?} outside any section"))),
            Section::Quiver => match head {
                "vertex" => {
                    if toks.len() != 2 {
                        return Err(perr(ln, col0, "expected: vertex <label>"));
                    }
                    vertices.push(toks[1].1.to_string());
                }
                "arrow" => {
                    // arrow NAME: S -> T
                    let ok = toks.len() == 5 && toks[1].1.ends_with(':') && toks[3].1 == "->";
                    if !ok {
                        return Err(perr(ln, col0, "expected: arrow <name>: <source> -> <target>"));
                    }
                    let name = toks[1].1.trim_end_matches(':').to_string();
                    if name.is_empty() {
                        return Err(perr(ln, toks[1].0, "empty arrow name"));
                    }
                    arrows.push((name, toks[2].1.to_string(), toks[4].1.to_string()));
                }
                _ => return Err(perr(ln, col0, format!("expected vertex or arrow, found {head:?}"))),
            },
            Section::Relations => {
                relation_lines.push((ln, toks.iter().map(|(c, t)| (*c, t.to_string())).collect()));
            }
            Section::Modules => {
                let (side, body) = match toks.iter().rposition(|(_, t)| *t == "over") {
                    Some(p) if p + 2 == toks.len() => {
                        let s = match toks[p + 1].1 {
                            "A" => Side::A,
                            "lambda" => Side::Lambda,
                            other => return Err(perr(ln, toks[p + 1].0, format!("unknown side {other:?}"))),
                        };
                        (s, &toks[..p])
                    }
                    _ => (Side::Lambda, &toks[..]),
                };
                match head {
                    "simple" | "projective" | "injective" => {
                        if body.len() != 4 || body[2].1 != "at" {
                            return Err(perr(ln, col0, format!("expected: {head} <name> at <vertex>")));
                        }
                        let v = body[3].1.to_string();
                        let source = match head {
                            "simple" => ModuleSource::Simple(v),
                            "projective" => ModuleSource::Projective(v),
                            _ => ModuleSource::Injective(v),
                        };
                        modules.push(ModuleDecl { name: body[1].1.to_string(), side, source });
                    }
                    "module" => {
                        if body.len() < 3 || body[2].1 != "dims" {
                            return Err(perr(ln, col0, "expected: module <name> dims <d1> <d2> ..."));
                        }
                        let dims = body[3..]
                            .iter()
                            .map(|(c, t)| t.parse::<usize>().map_err(|_| perr(ln, *c, format!("bad dimension {t:?}"))))
                            .collect::<Result<Vec<_>>>()?;
                        pending = Some(PendingModule {
                            decl: ModuleDecl {
                                name: body[1].1.to_string(),
                                side,
                                source: ModuleSource::Explicit { dims: Vec::new(), arrows: Vec::new() },
                            },
                            dims,
                            arrows: Vec::new(),
                            line: ln,
                        });
                    }
                    _ => return Err(perr(ln, col0, format!("expected simple, projective, injective or module, found {head:?}"))),
                }
            }
            Section::Tilting => {
                let t = tilting.get_or_insert(TiltingDecl { summands: Vec::new(), n: None });
                match head {
                    "summands" => {
                        if toks.len() < 2 {
                            return Err(perr(ln, col0, "summands needs at least one module name"));
                        }
                        t.summands.extend(toks[1..].iter().map(|(_, s)| s.to_string()));
                    }
                    "n" => {
                        let Some(&(c, v)) = toks.get(1) else {
                            return Err(perr(ln, col0, "expected: n <integer>"));
                        };
                        t.n = Some(v.parse().map_err(|_| perr(ln, c, format!("bad integer {v:?}")))?);
                    }
                    _ => return Err(perr(ln, col0, format!("expected summands or n, found {head:?}"))),
                }
            }
            Section::Defaults => {
                let Some(&(c, v)) = toks.get(1) else {
                    return Err(perr(ln, col0, format!("{head} needs a value")));
                };
                let x: usize = v.parse().map_err(|_| perr(ln, c, format!("bad integer {v:?}")))?;
                match head {
                    "enum-cap" => defaults.enum_cap = x,
                    "perp-bound" => defaults.perp_bound = x,
                    "res-cap" => defaults.res_cap = x,
                    _ => return Err(perr(ln, col0, format!("unknown default {head:?}"))),
                }
            }
        }
    }
    if let Some(pm) = pending {
        return Err(perr(pm.line, 1, format!("module {:?} is missing its end line", pm.decl.name)));
    }
    let Some((field_name, fld)) = field else {
        return Err(Error::Semantic("missing field spec".into()));
    };

    for (ln, toks) in relation_lines {
        let mut terms = Vec::new();
        for chunk in toks.split(|(_, t)| t == "+") {
            let Some((c0, first)) = chunk.first() else {
                return Err(perr(ln, 1, "empty relation term"));
            };
            let (coeff, rest) = if first.chars().next().is_some_and(|c| c.is_ascii_digit() || c == '-') {
                let s = fld.parse_scalar(first).map_err(|e| perr(ln, *c0, e.to_string()))?;
                (s.to_string(), &chunk[1..])
            } else {
                ("1".to_string(), chunk)
            };
            let path: Vec<String> = rest.iter().flat_map(|(_, t)| t.split('*').map(str::to_string)).filter(|s| !s.is_empty()).collect();
            if path.is_empty() {
                return Err(perr(ln, *c0, "relation term has no arrows"));
            }
            terms.push((coeff, path));
        }
        relations.push(RelationDecl { terms });
    }

    // normalise matrix entries through the field
    for m in modules.iter_mut() {
        if let ModuleSource::Explicit { arrows, .. } = &mut m.source {
            for (a, rows) in arrows.iter_mut() {
                for r in rows.iter_mut() {
                    for x in r.iter_mut() {
                        *x = fld
                            .parse_scalar(x)
                            .map_err(|e| Error::Semantic(format!("module {:?}, arrow {a:?}: {e}", m.name)))?
                            .to_string();
                    }
                }
            }
        }
    }

    let file = WorkspaceFile { field: field_name, vertices, arrows, relations, modules, tilting, defaults };
    Workspace::build(file)
}

pub fn parse_workspace(path: &Path) -> Result<Workspace> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_str(&text)
}

impl WorkspaceFile {
    /// The canonical text form; parsing it gives back the same file.
    pub fn to_canonical_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "field {}", self.field);
        let _ = writeln!(s, "\nquiver");
        for v in &self.vertices {
            let _ = writeln!(s, "vertex {v}");
        }
        for (a, src, tgt) in &self.arrows {
            let _ = writeln!(s, "arrow {a}: {src} -> {tgt}");
        }
        let _ = writeln!(s, "\nrelations");
        for r in &self.relations {
            let terms: Vec<String> = r
                .terms
                .iter()
                .map(|(c, p)| if c == "1" { p.join(" ") } else { format!("{c} {}", p.join(" ")) })
                .collect();
            let _ = writeln!(s, "{}", terms.join(" + "));
        }
        let _ = writeln!(s, "\nmodules");
        for m in &self.modules {
            let over = if m.side == Side::A { " over A" } else { "" };
            match &m.source {
                ModuleSource::Simple(v) => {
                    let _ = writeln!(s, "simple {} at {v}{over}", m.name);
                }
                ModuleSource::Projective(v) => {
                    let _ = writeln!(s, "projective {} at {v}{over}", m.name);
                }
                ModuleSource::Injective(v) => {
                    let _ = writeln!(s, "injective {} at {v}{over}", m.name);
                }
                ModuleSource::Explicit { dims, arrows } => {
                    let d: Vec<String> = dims.iter().map(usize::to_string).collect();
                    let _ = writeln!(s, "module {} dims {}{over}", m.name, d.join(" "));
                    for (a, rows) in arrows {
                        let _ = writeln!(s, "  {a}");
                        for r in rows {
                            let _ = writeln!(s, "    {}", r.join(" "));
                        }
                    }
                    let _ = writeln!(s, "end");
                }
            }
        }
        if let Some(t) = &self.tilting {
            let _ = writeln!(s, "\ntilting");
            let _ = writeln!(s, "summands {}", t.summands.join(" "));
            if let Some(n) = t.n {
                let _ = writeln!(s, "n {n}");
            }
        }
        let d = self.defaults;
        let _ = writeln!(s, "\ndefaults\nenum-cap {}\nperp-bound {}\nres-cap {}", d.enum_cap, d.perp_bound, d.res_cap);
        s
    }
}

fn vertex_of(alg: &FinDimAlgebra, label: &str, what: &str) -> Result<usize> {
    alg.quiver()
        .vertex_index(label)
        .ok_or_else(|| Error::Semantic(format!("{what}: no vertex {label:?}")))
}

/// Builds a module over `alg` from its declaration.
pub fn build_module(alg: &FinDimAlgebra, decl: &ModuleDecl) -> Result<Module> {
    let what = format!("module {:?}", decl.name);
    match &decl.source {
        ModuleSource::Simple(v) => Ok(Module::simple(alg, vertex_of(alg, v, &what)?)),
        ModuleSource::Projective(v) => Ok(Module::projective(alg, vertex_of(alg, v, &what)?)),
        ModuleSource::Injective(v) => Module::injective(alg, vertex_of(alg, v, &what)?),
        ModuleSource::Explicit { dims, arrows } => {
            let q = alg.quiver();
            if dims.len() != q.num_vertices() {
                return Err(Error::Semantic(format!(
                    "{what}: {} dimensions given for {} vertices",
                    dims.len(),
                    q.num_vertices()
                )));
            }
            let fld = alg.field();
            let mut mats: Vec<Option<crate::linalg::Matrix>> = vec![None; q.num_arrows()];
            for (a, rows) in arrows {
                let ai = q.arrow_index(a).ok_or_else(|| Error::Semantic(format!("{what}: no arrow {a:?}")))?;
                let arr = &q.arrows()[ai];
                let (r, c) = (dims[arr.source], dims[arr.target]);
                let m = parse_matrix(fld, r, c, rows)
                    .map_err(|_| Error::Semantic(format!("{what}: arrow {a:?} needs a {r}x{c} matrix")))?;
                mats[ai] = Some(m);
            }
            let mats = mats
                .into_iter()
                .enumerate()
                .map(|(ai, m)| {
                    let arr = &q.arrows()[ai];
                    m.unwrap_or_else(|| crate::linalg::Matrix::zeros(fld, dims[arr.source], dims[arr.target]))
                })
                .collect();
            Module::new(alg, dims.clone(), mats).map_err(|e| Error::Semantic(format!("{what}: {e}")))
        }
    }
}

impl Workspace {
    pub fn build(file: WorkspaceFile) -> Result<Workspace> {
        let field = parse_field(&file.field)?;
        let quiver = Quiver::new(file.vertices.clone(), file.arrows.clone())
            .map_err(|e| Error::Semantic(format!("quiver: {e}")))?;
        let mut rels = Vec::new();
        for (i, r) in file.relations.iter().enumerate() {
            let mut terms = Vec::new();
            for (c, path) in &r.terms {
                let idx = path
                    .iter()
                    .map(|a| {
                        quiver.arrow_index(a).ok_or_else(|| Error::Semantic(format!("relation {}: no arrow {a:?}", i + 1)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                quiver.path(&idx).map_err(|e| Error::Semantic(format!("relation {}: {e}", i + 1)))?;
                terms.push((field.parse_scalar(c)?, idx));
            }
            rels.push(Relation { terms });
        }
        let algebra = FinDimAlgebra::path_algebra(quiver, rels, field)?;
        let mut seen = std::collections::HashSet::new();
        for m in &file.modules {
            if !seen.insert(&m.name) {
                return Err(Error::Semantic(format!("module {:?} declared twice", m.name)));
            }
            if m.side == Side::Lambda {
                build_module(&algebra, m)?;
            }
        }
        if let Some(t) = &file.tilting {
            for s in &t.summands {
                match file.modules.iter().find(|m| &m.name == s) {
                    None => return Err(Error::Semantic(format!("tilting summand {s:?} is not a declared module"))),
                    Some(m) if m.side != Side::Lambda => {
                        return Err(Error::Semantic(format!("tilting summand {s:?} is not over the base algebra")))
                    }
                    _ => {}
                }
            }
        }
        Ok(Workspace { file, field, algebra })
    }

    pub fn decl(&self, name: &str) -> Option<&ModuleDecl> {
        self.file.modules.iter().find(|m| m.name == name)
    }

    pub fn tilting_data(&self, caps: TiltCaps) -> Result<TiltingData> {
        let t = self.file.tilting.as_ref().ok_or_else(|| Error::Semantic("no tilting declaration".into()))?;
        let summands = t
            .summands
            .iter()
            .map(|s| build_module(&self.algebra, self.decl(s).expect("checked at build")))
            .collect::<Result<Vec<_>>>()?;
        validate_tilting(&self.algebra, &t.summands, &summands, t.n, caps)
    }

    /// A module by reference: a declared name, or `simple:v`, `projective:v`,
    /// `injective:v`; prefix `A:` for the endomorphism side.
    pub fn resolve(&self, reference: &str, td: Option<&TiltingData>) -> Result<(Side, Module)> {
        let (side, r) = match reference.strip_prefix("A:") {
            Some(rest) => (Side::A, rest),
            None => (Side::Lambda, reference),
        };
        let alg = match side {
            Side::Lambda => &self.algebra,
            Side::A => &td.ok_or_else(|| Error::Semantic(format!("{reference:?} needs tilting data")))?.a,
        };
        if let Some(d) = self.decl(r) {
            if d.side != side && reference.starts_with("A:") {
                return Err(Error::Semantic(format!("module {r:?} is not declared over A")));
            }
            let alg = if d.side == Side::A {
                &td.ok_or_else(|| Error::Semantic(format!("module {r:?} needs tilting data")))?.a
            } else {
                &self.algebra
            };
            return Ok((d.side, build_module(alg, d)?));
        }
        if let Some((kind, v)) = r.split_once(':') {
            let source = match kind {
                "simple" => ModuleSource::Simple(v.to_string()),
                "projective" => ModuleSource::Projective(v.to_string()),
                "injective" => ModuleSource::Injective(v.to_string()),
                _ => return Err(Error::Semantic(format!("unknown module reference {reference:?}"))),
            };
            let decl = ModuleDecl { name: reference.to_string(), side, source };
            return Ok((side, build_module(alg, &decl)?));
        }
        Err(Error::Semantic(format!("unknown module {reference:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "field F2\n\nquiver\nvertex 1\nvertex 2\narrow alpha: 1 -> 2\n\nmodules\nsimple S1 at 1\nmodule M dims 1 1\n  alpha\n    1\nend\n";

    #[test]
    fn parses_and_round_trips() {
        let ws = parse_str(SMALL).unwrap();
        assert_eq!(ws.file.modules.len(), 2);
        let text = ws.file.to_canonical_string();
        let again = parse_str(&text).unwrap();
        assert_eq!(again.file, ws.file);
        assert_eq!(again.file.to_canonical_string(), text);
        let (_, m) = ws.resolve("M", None).unwrap();
        assert_eq!(m, Module::projective(&ws.algebra, 0));
    }

    #[test]
    fn empty_file_lacks_field() {
        let e = parse_str("").unwrap_err();
        assert_eq!(e, Error::Semantic("missing field spec".into()));
    }

    #[test]
    fn positioned_errors() {
        let e = parse_str("field F2\nquiver\nvertex 1\n  arrow a 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, col: 3, .. }), "{e:?}");
        let e = parse_str("field F4\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, col: 7, .. }), "{e:?}");
        let e = parse_str("field F2\nquiver\nvertex 1\nmodules\nmodule M dims 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 5, .. }), "{e:?}");
    }

    #[test]
    fn semantic_errors_name_the_entity() {
        let bad = SMALL.replace("    1\n", "    1 0\n");
        let e = parse_str(&bad).unwrap_err();
        assert!(e.to_string().contains("\"M\""), "{e}");
        let e = parse_str("field F2\nquiver\nvertex 1\nrelations\nbeta beta\n").unwrap_err();
        assert!(e.to_string().contains("beta"), "{e}");
    }
}
