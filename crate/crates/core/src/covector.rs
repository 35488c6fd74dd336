//! Covectors of the rank `n-1` tropical phased matroid `v^⊥` on `[n]`, the
//! componentwise order on `Φ^n`, and exhaustive scans over root-of-unity grids.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::phase::{hsum_fold, min_enclosing_arc, mul, Angle, Phase, Sign};
use crate::Rational;

/// A vector in `Φ^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseVector(Vec<Phase>);

impl PhaseVector {
    pub fn new(entries: Vec<Phase>) -> Self {
        PhaseVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        PhaseVector(vec![Phase::Zero; n])
    }

    /// All-ones vector `1_n` (every angle 0).
    pub fn ones(n: usize) -> Self {
        PhaseVector(vec![Phase::Unit(Angle::zero()); n])
    }

    /// Units with the given angles, in turns `p/q`.
    pub fn from_angles(angles: &[(i64, i64)]) -> Self {
        PhaseVector(angles.iter().map(|&(p, q)| Phase::unit(p, q)).collect())
    }

    pub fn entries(&self) -> &[Phase] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: usize) -> Phase {
        self.0[k]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&k| !self.0[k].is_zero()).collect()
    }

    pub fn grade(&self) -> usize {
        self.0.iter().filter(|p| !p.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|p| p.is_zero())
    }

    /// Entrywise inverse of a vector of units (angles negated).
    pub fn inverse(&self) -> Self {
        PhaseVector(
            self.0
                .iter()
                .map(|p| match p {
                    Phase::Zero => Phase::Zero,
                    Phase::Unit(a) => Phase::Unit(a.inverse()),
                })
                .collect(),
        )
    }

    /// `g_y`: multiplies every entry by the unit `y`.
    pub fn rotate(&self, y: Angle) -> Self {
        PhaseVector(self.0.iter().map(|p| mul(Phase::Unit(y), *p)).collect())
    }

    /// Restriction to the coordinates `keep` (others set to zero).
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let mut out = vec![Phase::Zero; self.0.len()];
        for &k in keep {
            out[k] = self.0[k];
        }
        PhaseVector(out)
    }
}

impl fmt::Display for PhaseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Phase::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for PhaseVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let entries = s.split(',').map(str::parse).collect::<Result<Vec<Phase>>>()?;
        if entries.is_empty() {
            return Err(Error::Parse("empty vector".into()));
        }
        Ok(PhaseVector(entries))
    }
}

/// A vector over the sign hyperfield.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn entries(&self) -> &[Sign] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|s| *s == Sign::Zero)
    }

    /// Componentwise order: zero below both signs.
    pub fn leq(&self, other: &SignVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| *a == Sign::Zero || a == b)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Sign::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for SignVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split(',').map(str::parse).collect::<Result<Vec<Sign>>>().map(SignVector)
    }
}

/// Whether `0 ∈ x_1 ⊞ ⋯ ⊞ x_m`, decided by the length of the shortest arc
/// enclosing the nonzero entries (at least half a turn).
pub fn zero_in_sum(xs: &[Phase]) -> bool {
    let angles: Vec<Angle> = xs.iter().filter_map(|p| p.angle()).collect();
    match angles.len() {
        0 => true,
        1 => false,
        _ => min_enclosing_arc(&angles).expect("non-empty").length() >= Rational::new(1, 2),
    }
}

fn check_rescaler(v: &PhaseVector, x_len: usize) -> Result<()> {
    if v.len() != x_len {
        return Err(Error::LengthMismatch { expected: v.len(), found: x_len });
    }
    if v.entries().iter().any(|p| p.is_zero()) {
        return Err(Error::ZeroInUnitVector);
    }
    Ok(())
}

/// `x ∈ v^⊥`.
pub fn is_covector(v: &PhaseVector, x: &PhaseVector) -> Result<bool> {
    check_rescaler(v, x.len())?;
    let products: Vec<Phase> = v.entries().iter().zip(x.entries()).map(|(a, b)| mul(*a, *b)).collect();
    Ok(zero_in_sum(&products))
}

/// Componentwise order on `Φ^n`: `x_k = 0` or `x_k = y_k` for every `k`.
pub fn leq_vec(x: &PhaseVector, y: &PhaseVector) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { expected: x.len(), found: y.len() });
    }
    Ok(x.entries().iter().zip(y.entries()).all(|(a, b)| a.is_zero() || a == b))
}

/// Lexicographically smallest `j < k < l` in the support (0-based) with `0 ∈ x_j ⊞ x_k ⊞ x_l`.
pub fn find_zero_triple(x: &PhaseVector) -> Option<(usize, usize, usize)> {
    let e = x.entries();
    // Triples are drawn from the support; zero entries would make the sum trivial.
    let s = x.support();
    for (a, &j) in s.iter().enumerate() {
        for (b, &k) in s.iter().enumerate().skip(a + 1) {
            for &l in &s[b + 1..] {
                if zero_in_sum(&[e[j], e[k], e[l]]) {
                    return Some((j, k, l));
                }
            }
        }
    }
    None
}

/// For `x` with a unit last entry, the smallest `j < k < n-1` (0-based) with
/// `0 ∈ x_j ⊞ x_k ⊞ x_{n-1}`: the slice piece that contains `x`.
pub fn find_slice_pair(x: &PhaseVector) -> Option<(usize, usize)> {
    let e = x.entries();
    let n = e.len();
    if n < 3 || e[n - 1].is_zero() {
        return None;
    }
    for j in 0..n - 1 {
        for k in j + 1..n - 1 {
            if zero_in_sum(&[e[j], e[k], e[n - 1]]) {
                return Some((j, k));
            }
        }
    }
    None
}

/// `(x_1, …, x_n) ↦ (v_1 x_1, …, v_n x_n)`.
pub fn rescale(v: &PhaseVector, x: &PhaseVector) -> Result<PhaseVector> {
    check_rescaler(v, x.len())?;
    Ok(PhaseVector(v.entries().iter().zip(x.entries()).map(|(a, b)| mul(*a, *b)).collect()))
}

/// Whether a sign vector is a covector of `1_n` over the sign hyperfield.
pub fn is_sign_covector(x: &SignVector) -> bool {
    let has_pos = x.0.contains(&Sign::Pos);
    let has_neg = x.0.contains(&Sign::Neg);
    has_pos == has_neg
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Phase,
    Sign,
}

impl FromStr for FieldKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phase" => Ok(FieldKind::Phase),
            "sign" => Ok(FieldKind::Sign),
            other => Err(Error::Parse(format!("unknown field `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Covectors {
    Phase(Vec<PhaseVector>),
    Sign(Vec<SignVector>),
}

impl Covectors {
    pub fn len(&self) -> usize {
        match self {
            Covectors::Phase(v) => v.len(),
            Covectors::Sign(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The discretized phase grid `{0} ∪ {k/m}` in enumeration order.
pub fn phase_grid(m: u32) -> Vec<Phase> {
    std::iter::once(Phase::Zero)
        .chain((0..m as i64).map(|k| Phase::Unit(Angle::new(Rational::new(k, m as i64)))))
        .collect()
}

fn check_grid(n: usize, m: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
    }
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::OddResolution(m));
    }
    Ok(())
}

/// The `index`-th vector of `grid^n` in lexicographic order.
pub fn grid_vector(grid: &[Phase], n: usize, mut index: usize) -> PhaseVector {
    let b = grid.len();
    let mut out = vec![Phase::Zero; n];
    for slot in out.iter_mut().rev() {
        *slot = grid[index % b];
        index /= b;
    }
    PhaseVector(out)
}

/// Nonzero covectors of `1_n` whose entries lie on the `m`-th root grid, lexicographic.
pub fn enumerate_phase_covectors(n: usize, m: u32, exec: Execution) -> Result<Vec<PhaseVector>> {
    check_grid(n, m)?;
    let grid = phase_grid(m);
    let total = grid.len().pow(n as u32);
    let ones = PhaseVector::ones(n);
    let hits = exec::map_indexed(exec, total, |i| {
        let x = grid_vector(&grid, n, i);
        (!x.is_zero() && is_covector(&ones, &x).expect("same length")).then_some(x)
    });
    Ok(hits.into_iter().flatten().collect())
}

/// Nonzero covectors of `1_n` over the sign hyperfield, lexicographic with `- < 0 < +`.
pub fn enumerate_sign_covectors(n: usize) -> Result<Vec<SignVector>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
    }
    let total = 3usize.pow(n as u32);
    let mut out = Vec::new();
    for mut i in 0..total {
        let mut v = vec![Sign::Zero; n];
        for slot in v.iter_mut().rev() {
            *slot = Sign::ALL[i % 3];
            i /= 3;
        }
        let v = SignVector(v);
        if !v.is_zero() && is_sign_covector(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

pub fn enumerate_covectors(field: FieldKind, n: usize, m: u32, exec: Execution) -> Result<Covectors> {
    match field {
        FieldKind::Phase => enumerate_phase_covectors(n, m, exec).map(Covectors::Phase),
        FieldKind::Sign => enumerate_sign_covectors(n).map(Covectors::Sign),
    }
}

/// Outcome of an exhaustive grid scan.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanStats {
    pub checked: u64,
    pub relevant: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

fn scan<F>(n: usize, m: u32, exec: Execution, check: F) -> Result<ScanStats>
where
    F: Fn(&PhaseVector) -> Option<bool> + Sync + Send,
{
    check_grid(n, m)?;
    let grid = phase_grid(m);
    let total = grid.len().pow(n as u32);
    let results = exec::map_indexed(exec, total, |i| {
        let x = grid_vector(&grid, n, i);
        (check(&x), x)
    });
    let mut stats = ScanStats { checked: total as u64, ..ScanStats::default() };
    for (outcome, x) in results {
        if let Some(ok) = outcome {
            stats.relevant += 1;
            if !ok {
                stats.failures += 1;
                stats.first_failure.get_or_insert_with(|| x.to_string());
            }
        }
    }
    Ok(stats)
}

/// Compares the arc-length criterion against the set-valued fold on every grid vector.
pub fn scan_zero_criterion(n: usize, m: u32, exec: Execution) -> Result<ScanStats> {
    scan(n, m, exec, |x| {
        let fold = hsum_fold(x.entries()).expect("n >= 2");
        Some(zero_in_sum(x.entries()) == fold.contains_zero())
    })
}

/// Checks that every covector of `1_n` with support at least 3 has a zero triple.
pub fn scan_zero_triples(n: usize, m: u32, exec: Execution) -> Result<ScanStats> {
    scan(n, m, exec, |x| {
        (x.grade() >= 3 && zero_in_sum(x.entries())).then(|| find_zero_triple(x).is_some())
    })
}

/// Rotates the angle of each unit entry by `by`, used when checking rotation invariance.
pub fn rotate_phases(xs: &[Phase], by: Angle) -> Vec<Phase> {
    xs.iter().map(|p| mul(*p, Phase::Unit(by))).collect()
}
