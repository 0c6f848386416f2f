use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Arrows compose in traversal order: the path `a*b` first
/// follows `a`, then `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// A path: a vertex together with a (possibly empty) sequence of arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Quiver> {
        let mut vidx = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vidx.insert(v.clone(), i).is_some() {
                return Err(Error::Semantic(format!("duplicate vertex {v:?}")));
            }
        }
        let mut seen = HashMap::new();
        let mut out = Vec::new();
        for (label, s, t) in arrows {
            if vidx.contains_key(&label) || seen.insert(label.clone(), ()).is_some() {
                return Err(Error::Semantic(format!("duplicate label {label:?}")));
            }
            let source = *vidx
                .get(&s)
                .ok_or_else(|| Error::Semantic(format!("arrow {label:?}: unknown vertex {s:?}")))?;
            let target = *vidx
                .get(&t)
                .ok_or_else(|| Error::Semantic(format!("arrow {label:?}: unknown vertex {t:?}")))?;
            out.push(Arrow { label, source, target });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    /// Linear quiver `1 -> 2 -> ... -> n` with arrows `a1, a2, ...`.
    pub fn linear(n: usize) -> Quiver {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n).map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string())).collect();
        Quiver::new(vertices, arrows).expect("linear quiver is well formed")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v).map(|(i, _)| i)
    }

    /// Validate an arrow sequence and return it as a path.
    pub fn path(&self, arrows: &[usize]) -> Result<Path> {
        let first = arrows.first().ok_or_else(|| Error::Semantic("empty path".into()))?;
        let mut cur = self.arrows[*first].source;
        for &a in arrows {
            let arr = self.arrows.get(a).ok_or_else(|| Error::Semantic(format!("no arrow {a}")))?;
            if arr.source != cur {
                return Err(Error::Semantic(format!(
                    "path is not composable at arrow {:?}",
                    arr.label
                )));
            }
            cur = arr.target;
        }
        Ok(Path { source: self.arrows[*first].source, target: cur, arrows: arrows.to_vec() })
    }

    /// Opposite quiver: same labels, reversed arrows.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { label: a.label.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    /// All paths of length `< max_len`, shortest first; `None` if more than
    /// `cap` paths would be produced.
    pub fn paths_below(&self, max_len: usize, cap: usize) -> Option<Vec<Path>> {
        let mut out: Vec<Path> = (0..self.num_vertices()).map(Path::trivial).collect();
        let mut frontier = out.clone();
        for _ in 1..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.arrows_from(p.target) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(Path { source: p.source, target: self.arrows[a].target, arrows });
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            if out.len() > cap {
                return None;
            }
            frontier = next;
        }
        Some(out)
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e{}", self.vertices[p.source])
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].label.as_str()).collect::<Vec<_>>().join("*")
        }
    }
}
