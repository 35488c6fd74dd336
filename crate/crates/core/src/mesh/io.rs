//! JSON complex files.
//!
//! `{"n": 3, "m": 2, "vertices": [[["1","0"], ["1","1/2"], ["1","0"]], …], "simplices": [[0,1,2], …]}`:
//! each vertex lists `(radius, angle)` per coordinate as rational strings; only
//! top simplices are stored. Abstract complexes use `n = 0` and empty vertex lists.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::order_complex::{DiscPoint, ModelPoint};
use crate::phase::{parse_rational, Angle};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub n: usize,
    pub m: u32,
    pub vertices: Vec<Vec<[String; 2]>>,
    pub simplices: Vec<Vec<usize>>,
}

impl From<&SimplicialComplex> for ComplexFile {
    fn from(k: &SimplicialComplex) -> Self {
        let vertices = if k.coordinates().is_empty() {
            vec![Vec::new(); k.num_vertices()]
        } else {
            k.coordinates()
                .iter()
                .map(|p| p.coords().iter().map(|d| [d.radius().to_string(), d.angle().turns().to_string()]).collect())
                .collect()
        };
        ComplexFile { n: k.n(), m: k.m(), vertices, simplices: k.facets().to_vec() }
    }
}

impl TryFrom<ComplexFile> for SimplicialComplex {
    type Error = Error;
    fn try_from(f: ComplexFile) -> Result<Self> {
        if f.n == 0 {
            return SimplicialComplex::from_facets(f.vertices.len(), f.simplices);
        }
        let coords = f
            .vertices
            .iter()
            .map(|v| {
                let pts = v
                    .iter()
                    .map(|[r, a]| DiscPoint::new(parse_rational(r)?, Angle::new(parse_rational(a)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ModelPoint::new(pts))
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialComplex::with_coordinates(f.n, f.m, coords, f.simplices)
    }
}

pub fn to_json(k: &SimplicialComplex) -> Result<String> {
    Ok(serde_json::to_string(&ComplexFile::from(k))?)
}

pub fn from_json(s: &str) -> Result<SimplicialComplex> {
    serde_json::from_str::<ComplexFile>(s)?.try_into()
}

pub fn write_complex(k: &SimplicialComplex, path: &Path) -> Result<()> {
    std::fs::write(path, to_json(k)?).map_err(|e| Error::Serialization(format!("{}: {e}", path.display())))
}

pub fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Serialization(format!("{}: {e}", path.display())))?;
    from_json(&s)
}
