//! Cell counts of `K(H, 1)` complexes for finite-index subgroups.
//!
//! A [`CellVector`] is the sequence `r(H, j)` of cell counts. It is stored as
//! explicit counts followed by an affine tail `a j + b`, or as a plain
//! truncation when no closed form is known. The recursions below (HNN
//! extension, extension by a finite cyclic quotient, graphs of groups)
//! preserve affine tails wherever the result is itself eventually affine.

use std::fmt;

use serde_json::{json, Value};

use crate::autos::matrix_c;
use crate::error::{check_arity, Error, Result};
use crate::lattices::{intersect_with_m, theta_shift, SubgroupLattice};

/// Default truncation for vectors without a closed-form tail, and for `chi_m`.
pub const DEFAULT_TRUNCATION: usize = 16;

/// `r(j) = slope * j + intercept` for every `j >= from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tail {
    pub slope: i64,
    pub intercept: i64,
    pub from: usize,
}

impl Tail {
    pub fn at(&self, j: usize) -> i64 {
        self.slope * j as i64 + self.intercept
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellVector {
    counts: Vec<u64>,
    tail: Option<Tail>,
}

impl CellVector {
    /// Explicit counts continued by `tail`, or a bare truncation when `tail`
    /// is `None`. Explicit entries at or beyond `tail.from` must agree with it.
    pub fn new(counts: Vec<u64>, tail: Option<Tail>) -> Result<Self> {
        if counts.first().copied().unwrap_or(0) < 1 {
            return Err(Error::Precondition("a K(H,1) has at least one 0-cell".into()));
        }
        if let Some(t) = tail {
            if t.from == 0 || t.from > counts.len() {
                return Err(Error::Precondition(format!(
                    "tail must start within 1..={} explicit entries",
                    counts.len()
                )));
            }
            if t.slope < 0 || t.at(t.from) < 0 {
                return Err(Error::Precondition("tail takes negative values".into()));
            }
            if let Some(j) = (t.from..counts.len()).find(|&j| counts[j] as i64 != t.at(j)) {
                return Err(Error::Precondition(format!("entry {j} disagrees with the tail")));
            }
        }
        Ok(CellVector { counts, tail }.normalized())
    }

    /// A finite-dimensional complex: zero cells above the given counts.
    pub fn finite(counts: Vec<u64>) -> Result<Self> {
        let from = counts.len();
        Self::new(counts, Some(Tail { slope: 0, intercept: 0, from }))
    }

    /// Known only up to dimension `counts.len() - 1`.
    pub fn truncated(counts: Vec<u64>) -> Result<Self> {
        Self::new(counts, None)
    }

    /// `(1, c, c, c, ...)`.
    pub fn eventually_constant(c: u64) -> Self {
        CellVector { counts: vec![1], tail: Some(Tail { slope: 0, intercept: c as i64, from: 1 }) }
    }

    /// One cell in every dimension: a `K(Q, 1)` for finite cyclic `Q`.
    pub fn all_ones() -> Self {
        Self::eventually_constant(1)
    }

    /// The `K(F, 1)` with two cells in each positive dimension.
    pub fn thompson_f() -> Self {
        Self::eventually_constant(2)
    }

    /// Keeps explicit entries only below the point where the tail takes over.
    fn normalized(mut self) -> Self {
        if let Some(mut t) = self.tail {
            self.counts.truncate(t.from);
            while t.from > 1 && self.counts[t.from - 1] as i64 == t.at(t.from - 1) {
                t.from -= 1;
                self.counts.pop();
            }
            self.tail = Some(t);
        }
        self
    }

    pub fn tail(&self) -> Option<Tail> {
        self.tail
    }

    /// Number of cells in dimension `j`, if known.
    pub fn get(&self, j: usize) -> Option<u64> {
        match (self.counts.get(j), self.tail) {
            (Some(&c), _) => Some(c),
            (None, Some(t)) => Some(t.at(j) as u64),
            (None, None) => None,
        }
    }

    /// Highest dimension with a known count, `None` if known everywhere.
    pub fn known_up_to(&self) -> Option<usize> {
        match self.tail {
            Some(_) => None,
            None => Some(self.counts.len() - 1),
        }
    }

    /// Counts in dimensions `0..=m`.
    pub fn expand(&self, m: usize) -> Result<Vec<u64>> {
        (0..=m)
            .map(|j| self.get(j).ok_or_else(|| Error::Precondition(format!("cell count in dimension {j} unknown"))))
            .collect()
    }

    pub fn to_json(&self, m: usize) -> Result<Value> {
        let tail = self.tail.map(|t| json!({"slope": t.slope, "intercept": t.intercept, "from": t.from}));
        Ok(json!({"counts": self.expand(m)?, "tail": tail}))
    }

    /// Builds a vector from a count function. With `affine_from = Some(j0)`
    /// the function is known to be affine from `j0` on; otherwise it is
    /// defined on `0..len`.
    fn from_fn(f: impl Fn(usize) -> u64, affine_from: Option<usize>, len: usize) -> Self {
        match affine_from {
            Some(j0) => {
                let j0 = j0.max(1);
                let (y0, y1) = (f(j0) as i64, f(j0 + 1) as i64);
                let slope = y1 - y0;
                let tail = Tail { slope, intercept: y0 - slope * j0 as i64, from: j0 };
                CellVector { counts: (0..j0).map(&f).collect(), tail: Some(tail) }.normalized()
            }
            None => CellVector { counts: (0..len).map(f).collect(), tail: None },
        }
    }

    /// Length of the known prefix, with `usize::MAX` standing for "all".
    fn known_len(&self) -> usize {
        self.known_up_to().map_or(usize::MAX, |k| k + 1)
    }

    fn is_eventually_constant(&self) -> bool {
        matches!(self.tail, Some(t) if t.slope == 0)
    }
}

impl fmt::Display for CellVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = match self.tail {
            Some(t) => t.from + 2,
            None => self.counts.len(),
        };
        let items: Vec<String> = (0..shown).map(|j| self.get(j).unwrap().to_string()).collect();
        write!(f, "({}", items.join(","))?;
        if self.tail.is_some() {
            write!(f, ",...")?;
        }
        write!(f, ")")
    }
}

/// HNN extension with base `T` and associated subgroups isomorphic to `T`:
/// `r(B, j) = r(T, j) + r(T, j - 1)`.
pub fn hnn_cells(r_t: &CellVector) -> CellVector {
    graph_of_groups_cells(std::slice::from_ref(r_t), std::slice::from_ref(r_t))
}

/// Extension `N -> G -> Q`: `r(G, j) = sum_{i <= j} r(N, i) r(Q, j - i)`.
pub fn stack_cells(r_n: &CellVector, r_q: &CellVector) -> CellVector {
    let f = |j: usize| (0..=j).map(|i| r_n.get(i).unwrap() * r_q.get(j - i).unwrap()).sum::<u64>();
    // A convolution stays eventually affine when neither factor grows: write
    // each as a constant sequence plus a finitely supported correction.
    let affine = r_n.is_eventually_constant() && r_q.is_eventually_constant();
    match (affine, r_n.tail, r_q.tail) {
        (true, Some(a), Some(b)) => CellVector::from_fn(f, Some(a.from + b.from), 0),
        _ => {
            let len = r_n.known_len().min(r_q.known_len()).min(DEFAULT_TRUNCATION + 1);
            CellVector::from_fn(f, None, len)
        }
    }
}

/// Graph of groups: vertex groups contribute `r(G_v, j)`, edge groups
/// `r(G_e, j - 1)`.
pub fn graph_of_groups_cells(vertices: &[CellVector], edges: &[CellVector]) -> CellVector {
    let f = |j: usize| {
        vertices.iter().map(|v| v.get(j).unwrap()).sum::<u64>()
            + if j == 0 { 0 } else { edges.iter().map(|e| e.get(j - 1).unwrap()).sum::<u64>() }
    };
    let all_tails = vertices.iter().chain(edges).all(|c| c.tail.is_some());
    if all_tails {
        let j0 = vertices.iter().chain(edges).map(|c| c.tail.unwrap().from).max().unwrap_or(0) + 1;
        CellVector::from_fn(f, Some(j0), 0)
    } else {
        let len = vertices
            .iter()
            .map(CellVector::known_len)
            .chain(edges.iter().map(|e| e.known_len().saturating_add(1)))
            .min()
            .unwrap_or(1);
        CellVector::from_fn(f, None, len)
    }
}

/// Which branch of the construction produced a cell vector or bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `M ⊆ H`, so `H` is an HNN extension of `M` with stable letter `x_0^alpha`.
    Case1,
    /// Reduced to `Case1` by the automorphism `mu`.
    Case2,
    /// Built from `T = theta(H ∩ M)`, then the HNN group `B`, then `H/B` cyclic.
    Case3,
    /// `n >= 3`, and the bound involves the unknown constant `d0`.
    Generic,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::Case1 => "case1",
            CaseTag::Case2 => "case2",
            CaseTag::Case3 => "case3",
            CaseTag::Generic => "generic",
        }
    }
}

fn contains_m(l: &SubgroupLattice) -> bool {
    (1..l.arity()).all(|i| l.contains_generator(i))
}

/// `mu` on `G/G'`: the transpose of its character matrix.
fn mu_on_lattice(l: &SubgroupLattice) -> Result<SubgroupLattice> {
    let c = matrix_c(l.arity())?.transpose();
    l.transform(c.entries())
}

/// Cell counts for a finite-index subgroup of F (`n = 2`).
pub fn cells_for_subgroup_f(l: &SubgroupLattice) -> Result<(CellVector, CaseTag)> {
    if l.arity() != 2 {
        return Err(Error::ArityMismatch { left: 2, right: l.arity() });
    }
    if contains_m(l) {
        return Ok((hnn_cells(&CellVector::thompson_f()), CaseTag::Case1));
    }
    if l.contains(&[1, -1]) {
        let image = mu_on_lattice(l)?;
        if !contains_m(&image) {
            return Err(Error::InvariantViolation(format!("mu({l}) = {image} does not contain M")));
        }
        return Ok((hnn_cells(&CellVector::thompson_f()), CaseTag::Case2));
    }
    let t = theta_shift(&intersect_with_m(l)?);
    let (r_t, tag) = cells_for_subgroup_f(&t)?;
    if !matches!(tag, CaseTag::Case1 | CaseTag::Case2) {
        return Err(Error::InvariantViolation(format!("theta(H ∩ M) = {t} fell into {}", tag.as_str())));
    }
    let r_b = hnn_cells(&r_t);
    Ok((stack_cells(&r_b, &CellVector::all_ones()), CaseTag::Case3))
}

/// Partial Euler characteristic `sum_{i <= m} (-1)^{m-i} r(i)`. These sums are
/// nonnegative for every complex built here, so a negative value is a bug.
pub fn chi_m(r: &CellVector, m: usize) -> Result<i64> {
    let counts = r.expand(m)?;
    let value: i64 = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| if (m - i) % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum();
    if value < 0 {
        return Err(Error::InvariantViolation(format!("chi_{m}({r}) = {value} < 0")));
    }
    Ok(value)
}

/// `1 - r0 + r1 - r2 <= def(H) <= rk H_1(H) = n`.
pub fn deficiency_bounds(r: &CellVector, n: usize) -> Result<(i64, i64)> {
    check_arity(n)?;
    let c = r.expand(2)?;
    let lower = 1 - c[0] as i64 + c[1] as i64 - c[2] as i64;
    Ok((lower, n as i64))
}

/// An upper bound for `d(H)`, possibly in terms of the unknown `d0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DBound {
    Exact(u64),
    /// `constant + d0`.
    PlusD0(u64),
}

impl DBound {
    /// Substitutes a value for `d0` when one is supplied.
    pub fn resolve(self, d0: Option<u64>) -> DBound {
        match (self, d0) {
            (DBound::PlusD0(c), Some(d)) => DBound::Exact(c + d),
            (b, _) => b,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            DBound::Exact(v) => json!(v),
            DBound::PlusD0(c) => json!(format!("{c} + d0")),
        }
    }
}

impl fmt::Display for DBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DBound::Exact(v) => write!(f, "{v}"),
            DBound::PlusD0(c) => write!(f, "{c} + d0"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub d_upper: DBound,
    pub case_tag: CaseTag,
    /// Deficiency interval, available when a cell vector is.
    pub deficiency: Option<(i64, i64)>,
    /// `chi_m` for `m = 0..=len-1`, empty when no cell vector is available.
    pub chi_values: Vec<i64>,
}

impl BoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "dUpper": self.d_upper.to_json(),
            "case": self.case_tag.as_str(),
            "defLower": self.deficiency.map(|d| d.0),
            "defUpper": self.deficiency.map(|d| d.1),
            "chiValues": self.chi_values,
        })
    }
}

/// Generator and deficiency bounds for `H`, with `chi_m` up to `m_chi`.
pub fn bound_report(l: &SubgroupLattice, m_chi: usize) -> Result<BoundReport> {
    let n = l.arity();
    if n == 2 {
        let (cells, case_tag) = cells_for_subgroup_f(l)?;
        let chi_values = (0..=m_chi).map(|m| chi_m(&cells, m)).collect::<Result<_>>()?;
        return Ok(BoundReport {
            d_upper: DBound::Exact(cells.get(1).unwrap()),
            case_tag,
            deficiency: Some(deficiency_bounds(&cells, n)?),
            chi_values,
        });
    }
    let (d_upper, case_tag) = if contains_m(l) {
        (DBound::Exact(n as u64 + 1), CaseTag::Case1)
    } else {
        (DBound::PlusD0(n as u64 + 2), CaseTag::Generic)
    };
    Ok(BoundReport { d_upper, case_tag, deficiency: None, chi_values: Vec::new() })
}

pub fn d_bound(l: &SubgroupLattice) -> Result<BoundReport> {
    bound_report(l, DEFAULT_TRUNCATION)
}
