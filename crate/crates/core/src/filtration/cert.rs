//! Serializable certificates that can be re-checked without any search.

use serde::{Deserialize, Serialize};

use crate::algebra::module::{Module, ModuleMap};
use crate::algebra::path_algebra::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::tilting::{Class, TiltingData};

/// A module written out as its dimension vector and arrow matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleRecord {
    pub dims: Vec<usize>,
    pub arrows: Vec<Vec<Vec<String>>>,
}

impl ModuleRecord {
    pub fn of(m: &Module) -> ModuleRecord {
        ModuleRecord { dims: m.dims().to_vec(), arrows: m.arrows().iter().map(Matrix::to_string_rows).collect() }
    }

    pub fn to_module(&self, alg: &FinDimAlgebra) -> Result<Module> {
        let f = alg.field();
        let q = alg.quiver();
        if self.dims.len() != alg.num_vertices() || self.arrows.len() != q.arrows().len() {
            return Err(Error::DimensionMismatch("module record does not fit the quiver".into()));
        }
        let arrows = q
            .arrows()
            .iter()
            .zip(&self.arrows)
            .map(|(a, rows)| parse_matrix(f, self.dims[a.source], self.dims[a.target], rows))
            .collect::<Result<_>>()?;
        Module::new(alg, self.dims.clone(), arrows)
    }
}

/// A module map written out block by block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRecord {
    pub blocks: Vec<Vec<Vec<String>>>,
}

impl MapRecord {
    pub fn of(f: &ModuleMap) -> MapRecord {
        MapRecord { blocks: f.blocks().iter().map(Matrix::to_string_rows).collect() }
    }

    pub fn to_map(&self, src: &Module, tgt: &Module) -> Result<ModuleMap> {
        if self.blocks.len() != src.num_vertices() {
            return Err(Error::DimensionMismatch("map record has the wrong number of blocks".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(v, rows)| parse_matrix(src.field(), src.dims()[v], tgt.dims()[v], rows))
            .collect::<Result<_>>()?;
        ModuleMap::new(src, tgt, blocks)
    }
}

pub(crate) fn parse_matrix(f: Field, rows: usize, cols: usize, data: &[Vec<String>]) -> Result<Matrix> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch(format!("expected a {rows}x{cols} matrix")));
    }
    let parsed = data
        .iter()
        .map(|r| r.iter().map(|x| f.parse_scalar(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(f, cols, &parsed))
}

/// `0 -> left -> middle -> right -> 0`, with the classes the terms are claimed to lie in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesCert {
    pub left: ModuleRecord,
    pub middle: ModuleRecord,
    pub right: ModuleRecord,
    pub inc: MapRecord,
    pub proj: MapRecord,
    pub left_class: Option<Class>,
    pub middle_class: Option<Class>,
    pub right_class: Option<Class>,
}

impl SesCert {
    pub fn new(
        inc: &ModuleMap,
        proj: &ModuleMap,
        left_class: Option<Class>,
        middle_class: Option<Class>,
        right_class: Option<Class>,
    ) -> SesCert {
        SesCert {
            left: ModuleRecord::of(inc.source()),
            middle: ModuleRecord::of(inc.target()),
            right: ModuleRecord::of(proj.target()),
            inc: MapRecord::of(inc),
            proj: MapRecord::of(proj),
            left_class,
            middle_class,
            right_class,
        }
    }

    /// Re-checks exactness and the claimed classes; returns the right-hand term.
    pub fn verify(&self, td: &TiltingData, alg: &FinDimAlgebra) -> std::result::Result<Module, String> {
        let err = |e: Error| e.to_string();
        let l = self.left.to_module(alg).map_err(err)?;
        let m = self.middle.to_module(alg).map_err(err)?;
        let r = self.right.to_module(alg).map_err(err)?;
        let i = self.inc.to_map(&l, &m).map_err(err)?;
        let p = self.proj.to_map(&m, &r).map_err(err)?;
        if !i.is_injective() {
            return Err("left map is not injective".into());
        }
        if !p.is_surjective() {
            return Err("right map is not surjective".into());
        }
        if !i.then(&p).is_zero() || l.dim() + r.dim() != m.dim() {
            return Err("sequence is not exact in the middle".into());
        }
        let mut checks = Vec::new();
        if let Some(c) = self.middle_class {
            checks.push((&m, c, "middle"));
        }
        if let Some(c) = self.left_class {
            checks.push((&l, c, "left"));
        }
        if let Some(c) = self.right_class {
            checks.push((&r, c, "right"));
        }
        for (x, c, side) in checks {
            if !td.in_class(x, c).map_err(err)? {
                return Err(format!("{side} term is not in {c}"));
            }
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::a3r;

    #[test]
    fn records_round_trip() {
        let alg = a3r();
        let p = Module::projective(&alg, 0);
        let back = ModuleRecord::of(&p).to_module(&alg).unwrap();
        assert_eq!(back, p);
        let id = p.identity();
        assert_eq!(MapRecord::of(&id).to_map(&p, &p).unwrap(), id);
    }
}
