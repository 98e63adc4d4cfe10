//! Rank, deficiency and `chi_m` gradients along chains of finite-index
//! subgroups, as exact rational intervals per chain term.

use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::complexes::{bound_report, cells_for_subgroup_f, chi_m, deficiency_bounds, CellVector, DBound};
use crate::error::{Error, Result};
use crate::lattices::{chain, ChainSpec, SubgroupLattice};
use crate::rational::{format_q, q, Q};

/// `constant + d0_coeff * d0`, exact when the coefficient vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Value0 {
    pub constant: Q,
    pub d0_coeff: Q,
}

impl Value0 {
    pub fn exact(x: Q) -> Self {
        Value0 { constant: x, d0_coeff: Q::zero() }
    }

    pub fn as_exact(&self) -> Option<&Q> {
        self.d0_coeff.is_zero().then_some(&self.constant)
    }
}

impl fmt::Display for Value0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d0_coeff.is_zero() {
            write!(f, "{}", format_q(&self.constant))
        } else {
            write!(f, "{} + {}*d0", format_q(&self.constant), format_q(&self.d0_coeff))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradientRow {
    pub s: usize,
    pub index: u64,
    pub lower: Value0,
    pub upper: Value0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradientKind {
    Rank,
    Deficiency,
    Chi(usize),
}

impl fmt::Display for GradientKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradientKind::Rank => write!(f, "rg"),
            GradientKind::Deficiency => write!(f, "dg"),
            GradientKind::Chi(m) => write!(f, "chi{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradientSeries {
    pub kind: GradientKind,
    pub rows: Vec<GradientRow>,
}

impl GradientSeries {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| json!({"s": r.s, "index": r.index, "lower": r.lower.to_string(), "upper": r.upper.to_string()}))
            .collect();
        json!({"kind": self.kind.to_string(), "rows": rows})
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,index,lower,upper\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.s, r.index, r.lower, r.upper));
        }
        out
    }
}

/// Walks the chain for `s = 0..=spec.length`, requiring strictly increasing
/// indices. Terms need not be nested.
fn series(
    spec: &ChainSpec,
    n: usize,
    kind: GradientKind,
    row: impl Fn(&SubgroupLattice, &Q) -> Result<(Value0, Value0)>,
) -> Result<GradientSeries> {
    let mut rows: Vec<GradientRow> = Vec::with_capacity(spec.length + 1);
    for s in 0..=spec.length {
        let l = chain(spec, n, s)?;
        let index = l.index();
        if let Some(prev) = rows.last() {
            if index <= prev.index {
                return Err(Error::Precondition(format!(
                    "chain indices must increase: term {s} has index {index} after {}",
                    prev.index
                )));
            }
        }
        let (lower, upper) = row(&l, &q(index as i64))?;
        rows.push(GradientRow { s, index, lower, upper });
    }
    Ok(GradientSeries { kind, rows })
}

/// `(d(H_s) - 1) / [G : H_s]` bracketed by `0` and the generator bound.
pub fn rank_gradient_series(spec: &ChainSpec, n: usize, d0: Option<u64>) -> Result<GradientSeries> {
    if d0 == Some(0) {
        return Err(Error::Precondition("d0 is at least 1".into()));
    }
    series(spec, n, GradientKind::Rank, |l, index| {
        // G itself needs exactly n generators.
        let bound = if l.index() == 1 { DBound::Exact(n as u64) } else { bound_report(l, 0)?.d_upper };
        let upper = match bound.resolve(d0) {
            DBound::Exact(d) => Value0::exact(q(d as i64 - 1) / index),
            DBound::PlusD0(c) => Value0 { constant: q(c as i64 - 1) / index, d0_coeff: q(1) / index },
        };
        Ok((Value0::exact(Q::zero()), upper))
    })
}

/// Cell counts along a chain. The term `H = G` uses the complex for F
/// itself, which is smaller than the one the case analysis builds.
fn chain_cells(l: &SubgroupLattice) -> Result<CellVector> {
    if l.index() == 1 {
        return Ok(CellVector::thompson_f());
    }
    Ok(cells_for_subgroup_f(l)?.0)
}

fn require_f(n: usize) -> Result<()> {
    if n != 2 {
        return Err(Error::Precondition("cell counts are available for n = 2 only".into()));
    }
    Ok(())
}

/// `def(H_s) / [G : H_s]` bracketed by the cell-count bounds.
pub fn deficiency_gradient_series(spec: &ChainSpec, n: usize) -> Result<GradientSeries> {
    require_f(n)?;
    series(spec, n, GradientKind::Deficiency, |l, index| {
        let cells = chain_cells(l)?;
        let (lo, hi) = deficiency_bounds(&cells, n)?;
        Ok((Value0::exact(q(lo) / index), Value0::exact(q(hi) / index)))
    })
}

/// `chi_m(H_s) / [G : H_s]`, bounded below by `0`.
pub fn chi_m_gradient_series(spec: &ChainSpec, m: usize, n: usize) -> Result<GradientSeries> {
    require_f(n)?;
    series(spec, n, GradientKind::Chi(m), |l, index| {
        let cells = chain_cells(l)?;
        Ok((Value0::exact(Q::zero()), Value0::exact(q(chi_m(&cells, m)?) / index)))
    })
}

/// The first `s` from which every row lies within `[-eps, eps]`, or `None`
/// if the last row does not.
pub fn certify_convergence(series: &GradientSeries, eps: &Q) -> Result<Option<usize>> {
    if series.rows.is_empty() {
        return Err(Error::Precondition("cannot certify an empty series".into()));
    }
    let mut first = None;
    for r in series.rows.iter().rev() {
        let (Some(lo), Some(hi)) = (r.lower.as_exact(), r.upper.as_exact()) else {
            return Err(Error::Precondition("symbolic rows need a value for d0".into()));
        };
        if lo.abs() > *eps || hi.abs() > *eps {
            break;
        }
        first = Some(r.s);
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{hnf, ChainKind};
    use crate::rational::q_frac;

    fn scaling(p: i64, length: usize) -> ChainSpec {
        ChainSpec { kind: ChainKind::Scaling(p), length }
    }

    #[test]
    fn rank_gradient_examples() {
        let s = rank_gradient_series(&scaling(2, 4), 2, None).unwrap();
        assert_eq!(s.rows[0].upper, Value0::exact(q(1)));
        assert_eq!(s.rows[3].index, 64);
        assert_eq!(s.rows[3].upper, Value0::exact(q_frac(1, 16)));
        for r in &s.rows[1..] {
            assert_eq!(r.upper, Value0::exact(q(4) / q(r.index as i64)));
        }
        let sym = rank_gradient_series(&scaling(2, 2), 3, None).unwrap();
        assert_eq!(sym.rows[0].upper, Value0::exact(q(2)));
        assert_eq!(sym.rows[1].upper.to_string(), "1/2 + 1/8*d0");
        let resolved = rank_gradient_series(&scaling(2, 2), 3, Some(3)).unwrap();
        assert_eq!(resolved.rows[1].upper, Value0::exact(q_frac(7, 8)));
        assert!(rank_gradient_series(&scaling(2, 2), 3, Some(0)).is_err());
    }

    #[test]
    fn deficiency_and_chi_examples() {
        let dg = deficiency_gradient_series(&scaling(2, 3), 2).unwrap();
        assert_eq!((dg.rows[0].lower.clone(), dg.rows[0].upper.clone()), (Value0::exact(q(0)), Value0::exact(q(2))));
        assert_eq!(dg.rows[3].lower, Value0::exact(q_frac(-7, 64)));
        assert_eq!(dg.rows[3].upper, Value0::exact(q_frac(2, 64)));
        let chi = chi_m_gradient_series(&scaling(2, 3), 2, 2).unwrap();
        assert_eq!(chi.rows[2].upper, Value0::exact(q_frac(1, 2)));
        let chi0 = chi_m_gradient_series(&scaling(2, 3), 0, 2).unwrap();
        for r in &chi0.rows {
            assert_eq!(r.upper, Value0::exact(q_frac(1, r.index as i64)));
        }
        assert!(deficiency_gradient_series(&scaling(2, 3), 3).is_err());
    }

    #[test]
    fn certification() {
        let dg = deficiency_gradient_series(&scaling(2, 6), 2).unwrap();
        // Bound 7/4^s <= 1/10 once 4^s >= 70.
        assert_eq!(certify_convergence(&dg, &q_frac(1, 10)).unwrap(), Some(4));
        let rg = rank_gradient_series(&scaling(2, 6), 2, None).unwrap();
        assert_eq!(certify_convergence(&rg, &q(0)).unwrap(), None);
        let zero = GradientSeries {
            kind: GradientKind::Rank,
            rows: (0..3)
                .map(|s| GradientRow { s, index: 1 << s, lower: Value0::exact(q(0)), upper: Value0::exact(q(0)) })
                .collect(),
        };
        assert_eq!(certify_convergence(&zero, &q(0)).unwrap(), Some(0));
        let empty = GradientSeries { kind: GradientKind::Rank, rows: vec![] };
        assert!(certify_convergence(&empty, &q(1)).is_err());
        let sym = rank_gradient_series(&scaling(2, 2), 3, None).unwrap();
        assert!(certify_convergence(&sym, &q(1)).is_err());
    }

    #[test]
    fn non_nested_chain() {
        // Indices 2, 3, 4, 6: increasing but no term contains the next.
        let terms: Vec<SubgroupLattice> = [[2, 1], [1, 3], [4, 1], [1, 6]]
            .iter()
            .map(|d| SubgroupLattice::diagonal(d).unwrap())
            .collect();
        assert!(!terms[1].is_sublattice_of(&terms[0]));
        let spec = ChainSpec { kind: ChainKind::Explicit(terms), length: 3 };
        let dg = deficiency_gradient_series(&spec, 2).unwrap();
        assert_eq!(dg.rows.iter().map(|r| r.index).collect::<Vec<_>>(), vec![2, 3, 4, 6]);
        // diag(1,k) contains (1,-1)? only for k = 1; diag(2,1) and diag(4,1) contain e_1.
        assert_eq!(dg.rows[0].lower, Value0::exact(q_frac(-1, 2)));
        let bad = ChainSpec {
            kind: ChainKind::Explicit(vec![hnf(2, &[vec![2, 0], vec![0, 1]]).unwrap(), SubgroupLattice::full(2).unwrap()]),
            length: 1,
        };
        assert!(deficiency_gradient_series(&bad, 2).is_err());
    }

    #[test]
    fn csv_and_json() {
        let rg = rank_gradient_series(&scaling(2, 1), 2, None).unwrap();
        assert_eq!(rg.to_csv(), "s,index,lower,upper\n0,1,0/1,1/1\n1,4,0/1,1/1\n");
        assert_eq!(rg.to_json()["rows"][1]["upper"], "1/1");
    }
}
