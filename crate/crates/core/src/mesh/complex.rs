//! Finite simplicial complexes stored by their maximal simplices.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order_complex::{rotate, ModelPoint};
use crate::phase::Angle;

/// A simplex as a strictly increasing list of vertex ids.
pub type Simplex = Vec<usize>;

/// A simplicial complex given by its facets, optionally with exact vertex coordinates.
///
/// Abstract complexes (e.g. order complexes of finite posets) have `n == 0`
/// and no coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    m: u32,
    num_vertices: usize,
    coords: Vec<ModelPoint>,
    facets: Vec<Simplex>,
}

/// Every non-empty subset of `s`, as sorted lists.
pub fn faces_of(s: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    (1u32..1 << s.len()).map(move |mask| (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect())
}

fn normalize_facets(num_vertices: usize, facets: Vec<Simplex>) -> Result<Vec<Simplex>> {
    let mut set = BTreeSet::new();
    for mut f in facets {
        f.sort_unstable();
        if f.is_empty() {
            continue;
        }
        if f.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidComplex(format!("repeated vertex in simplex {f:?}")));
        }
        if let Some(&v) = f.last().filter(|&&v| v >= num_vertices) {
            return Err(Error::InvalidComplex(format!("vertex {v} out of range ({num_vertices} vertices)")));
        }
        set.insert(f);
    }
    // Drop anything that is a proper face of another listed simplex.
    let mut proper: HashSet<Simplex> = HashSet::new();
    for f in &set {
        for g in faces_of(f) {
            if g.len() < f.len() {
                proper.insert(g);
            }
        }
    }
    Ok(set.into_iter().filter(|f| !proper.contains(f)).collect())
}

impl SimplicialComplex {
    /// An abstract complex on `0..num_vertices`.
    pub fn from_facets(num_vertices: usize, facets: Vec<Simplex>) -> Result<Self> {
        let facets = normalize_facets(num_vertices, facets)?;
        Ok(SimplicialComplex { n: 0, m: 0, num_vertices, coords: Vec::new(), facets })
    }

    /// A complex whose vertices carry exact model-space coordinates.
    pub fn with_coordinates(n: usize, m: u32, coords: Vec<ModelPoint>, facets: Vec<Simplex>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(coords.len());
        for (i, p) in coords.iter().enumerate() {
            if p.len() != n {
                return Err(Error::InvalidComplex(format!("vertex {i} has {} coordinates, expected {n}", p.len())));
            }
            if !seen.insert(p) {
                return Err(Error::InvalidComplex(format!("duplicate vertex coordinates {p}")));
            }
        }
        let facets = normalize_facets(coords.len(), facets)?;
        Ok(SimplicialComplex { n, m, num_vertices: coords.len(), coords, facets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn coordinates(&self) -> &[ModelPoint] {
        &self.coords
    }

    pub fn has_coordinates(&self) -> bool {
        !self.coords.is_empty() || self.num_vertices == 0
    }

    pub fn vertex(&self, v: usize) -> Option<&ModelPoint> {
        self.coords.get(v)
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.len() as isize - 1 == d)
    }

    /// All simplices grouped by dimension, each group sorted.
    pub fn simplices_by_dim(&self) -> Vec<Vec<Simplex>> {
        let d = self.dim();
        if d < 0 {
            return Vec::new();
        }
        let mut groups: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); d as usize + 1];
        for f in &self.facets {
            for g in faces_of(f) {
                groups[g.len() - 1].insert(g);
            }
        }
        groups.into_iter().map(|g| g.into_iter().collect()).collect()
    }

    pub fn simplices_of_dim(&self, k: usize) -> Vec<Simplex> {
        self.simplices_by_dim().into_iter().nth(k).unwrap_or_default()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices_by_dim().iter().map(Vec::len).collect()
    }

    /// Alternating sum of the f-vector.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// How many facets contain each codimension-one face (pure complexes only).
    pub fn ridge_incidence(&self) -> Result<HashMap<Simplex, usize>> {
        if !self.is_pure() {
            return Err(Error::NonPure(format!("facet dimensions vary up to {}", self.dim())));
        }
        let mut counts: HashMap<Simplex, usize> = HashMap::new();
        for f in &self.facets {
            if f.len() < 2 {
                continue;
            }
            for skip in 0..f.len() {
                let ridge: Simplex = f.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                *counts.entry(ridge).or_default() += 1;
            }
        }
        Ok(counts)
    }

    /// Closure of the ridges that lie in exactly one facet.
    pub fn boundary_subcomplex(&self) -> Result<SimplicialComplex> {
        let counts = self.ridge_incidence()?;
        let free: Vec<Simplex> = counts.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r).collect();
        let mut out = self.clone();
        out.facets = normalize_facets(self.num_vertices, free)?;
        Ok(out.compacted())
    }

    pub fn pseudomanifold(&self) -> Result<PseudomanifoldCheck> {
        let counts = self.ridge_incidence()?;
        let max = counts.values().copied().max().unwrap_or(0);
        let free = counts.values().filter(|&&c| c == 1).count();
        Ok(PseudomanifoldCheck {
            dim: self.dim(),
            ridges: counts.len(),
            free_ridges: free,
            max_incidence: max,
            with_boundary: max <= 2,
            closed: max <= 2 && free == 0,
        })
    }

    /// Drops vertices that lie in no facet and renumbers the rest in order.
    pub fn compacted(&self) -> SimplicialComplex {
        let used: BTreeSet<usize> = self.facets.iter().flatten().copied().collect();
        let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let coords = if self.coords.is_empty() {
            Vec::new()
        } else {
            used.iter().map(|&v| self.coords[v].clone()).collect()
        };
        let mut facets: Vec<Simplex> =
            self.facets.iter().map(|f| f.iter().map(|v| remap[v]).collect()).collect();
        facets.sort();
        SimplicialComplex { n: self.n, m: self.m, num_vertices: used.len(), coords, facets }
    }

    /// The subcomplex generated by the facets accepted by `keep`.
    pub fn select_facets(&self, keep: impl Fn(&[usize]) -> bool) -> SimplicialComplex {
        let mut out = self.clone();
        out.facets.retain(|f| keep(f));
        out.compacted()
    }

    /// The full subcomplex on the vertices accepted by `keep`.
    pub fn induced(&self, keep: impl Fn(usize) -> bool) -> SimplicialComplex {
        let parts: Vec<Simplex> =
            self.facets.iter().map(|f| f.iter().copied().filter(|&v| keep(v)).collect()).collect();
        let mut out = self.clone();
        out.facets = normalize_facets(self.num_vertices, parts).expect("faces of valid facets");
        out.compacted()
    }

    /// Simplices common to both complexes, matched by vertex coordinates.
    pub fn intersection(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let index = other.coordinate_index()?;
        let theirs: HashSet<Simplex> = other.simplices_by_dim().into_iter().flatten().collect();
        let mut common = Vec::new();
        for s in self.simplices_by_dim().into_iter().flatten() {
            let mapped: Option<Simplex> = s.iter().map(|&v| index.get(&self.coords[v]).copied()).collect();
            if let Some(mut t) = mapped {
                t.sort_unstable();
                if theirs.contains(&t) {
                    common.push(s);
                }
            }
        }
        let mut out = self.clone();
        out.facets = normalize_facets(self.num_vertices, common)?;
        Ok(out.compacted())
    }

    pub fn coordinate_index(&self) -> Result<HashMap<ModelPoint, usize>> {
        if self.coords.is_empty() && self.num_vertices > 0 {
            return Err(Error::InvalidComplex("complex has no vertex coordinates".into()));
        }
        Ok(self.coords.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect())
    }

    /// Vertex map onto `other` matching coordinates, for every vertex of `self`.
    pub fn vertex_map_into(&self, other: &SimplicialComplex) -> Result<Vec<usize>> {
        let index = other.coordinate_index()?;
        self.coords
            .iter()
            .map(|p| index.get(p).copied().ok_or_else(|| Error::NonSimplicialInclusion(format!("vertex {p} missing"))))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudomanifoldCheck {
    pub dim: isize,
    pub ridges: usize,
    pub free_ridges: usize,
    pub max_incidence: usize,
    /// Every ridge in at most two facets.
    pub with_boundary: bool,
    /// Every ridge in exactly two facets.
    pub closed: bool,
}

/// How vertex coordinates of the first complex are carried to the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexMapHint {
    Identity,
    DropLast,
    Rotate(Angle),
}

impl VertexMapHint {
    fn apply(&self, p: &ModelPoint) -> ModelPoint {
        match self {
            VertexMapHint::Identity => p.clone(),
            VertexMapHint::DropLast => p.drop_last(),
            VertexMapHint::Rotate(a) => rotate(*a, p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub isomorphic: bool,
    /// `map[v]` is the image of vertex `v` when the coordinate map is a bijection.
    pub map: Option<Vec<usize>>,
    pub mismatch: Option<String>,
}

impl Isomorphism {
    fn fail(why: String) -> Self {
        Isomorphism { isomorphic: false, map: None, mismatch: Some(why) }
    }
}

/// Checks whether the hinted coordinate map is a simplicial isomorphism `k1 → k2`.
pub fn complex_isomorphic(k1: &SimplicialComplex, k2: &SimplicialComplex, hint: VertexMapHint) -> Isomorphism {
    if k1.f_vector() != k2.f_vector() {
        return Isomorphism::fail(format!("f-vectors differ: {:?} vs {:?}", k1.f_vector(), k2.f_vector()));
    }
    let index = match k2.coordinate_index() {
        Ok(i) => i,
        Err(e) => return Isomorphism::fail(e.to_string()),
    };
    let mut map = Vec::with_capacity(k1.num_vertices());
    let mut hit = vec![false; k2.num_vertices()];
    for (v, p) in k1.coordinates().iter().enumerate() {
        let q = hint.apply(p);
        match index.get(&q) {
            Some(&w) if !hit[w] => {
                hit[w] = true;
                map.push(w);
            }
            Some(_) => return Isomorphism::fail(format!("vertex {v} ({p}) collides under the map")),
            None => return Isomorphism::fail(format!("vertex {v} ({p}) maps to {q}, absent from the target")),
        }
    }
    let target: HashSet<&Simplex> = k2.facets().iter().collect();
    for f in k1.facets() {
        let mut g: Simplex = f.iter().map(|&v| map[v]).collect();
        g.sort_unstable();
        if !target.contains(&g) {
            return Isomorphism::fail(format!("facet {f:?} maps to {g:?}, not a facet of the target"));
        }
    }
    Isomorphism { isomorphic: true, map: Some(map), mismatch: None }
}
