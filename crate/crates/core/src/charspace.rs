//! Characters `G -> R` (rational-valued), the character sphere, and the
//! Sigma-invariant decisions for F(n).
//!
//! The complement of `Sigma^1` is the pair `{[chi_1], [chi_2]}`; the complement
//! of `Sigma^m` for `m >= 2` is the closed arc between them, i.e. the vectors
//! `(r2 - r1, r2, ..., r2)` with `r1, r2 >= 0` not both zero. For `n >= 3` and
//! `m >= 3` that description is conditional and must be requested explicitly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{check_arity, same_arity, Error, Result};
use crate::rational::{format_q, q, Q};
use crate::words::{fold_index, GroupWord};

/// A homomorphism `G -> R` given by its values on `x_0, ..., x_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    values: Vec<Q>,
}

impl Character {
    pub fn new(values: Vec<Q>) -> Result<Self> {
        check_arity(values.len())?;
        Ok(Character { values })
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| q(v)).collect())
    }

    /// Parses `a,b,...` where each entry is `p` or `p/q`.
    pub fn parse(text: &str) -> Result<Self> {
        let values = text
            .split(',')
            .map(crate::rational::parse_q)
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    pub fn arity(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Value on generator `x_index` for any index, via conjugacy folding.
    pub fn on_generator(&self, index: usize) -> &Q {
        &self.values[fold_index(self.arity(), index)]
    }

    pub fn scale(&self, factor: &Q) -> Character {
        Character { values: self.values.iter().map(|v| v * factor).collect() }
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        same_arity(self.arity(), other.arity())?;
        Ok(Character { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() })
    }

    pub fn dot_int(&self, v: &[i64]) -> Q {
        self.values.iter().zip(v).map(|(a, &b)| a * q(b)).sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.values.iter().map(|v| Value::String(format_q(v))).collect())
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `[chi]`: a nonzero character up to positive scaling, stored with its first
/// nonzero coordinate equal to `±1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpherePoint(Character);

impl SpherePoint {
    pub fn new(chi: &Character) -> Result<Self> {
        let lead = chi.values.iter().find(|v| !v.is_zero()).ok_or(Error::ZeroCharacter)?;
        Ok(SpherePoint(chi.scale(&lead.abs().recip())))
    }

    pub fn character(&self) -> &Character {
        &self.0
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

pub fn chi1(n: usize) -> Result<Character> {
    check_arity(n)?;
    let mut v = vec![0; n];
    v[0] = -1;
    Character::from_ints(&v)
}

pub fn chi2(n: usize) -> Result<Character> {
    check_arity(n)?;
    Character::from_ints(&vec![1; n])
}

/// `chi(w)`: the dot product of the character with the abelianization.
pub fn evaluate(chi: &Character, w: &GroupWord) -> Result<Q> {
    same_arity(chi.arity(), w.arity())?;
    Ok(chi.dot_int(&w.abelianize()))
}

pub fn in_sigma1(chi: &Character) -> Result<bool> {
    let p = SpherePoint::new(chi)?;
    let n = chi.arity();
    Ok(p != SpherePoint::new(&chi1(n)?)? && p != SpherePoint::new(&chi2(n)?)?)
}

/// Whether `chi` lies in the closed arc `conv{[chi_1], [chi_2]}`.
pub fn in_arc(chi: &Character) -> bool {
    let v = &chi.values;
    let b = &v[1];
    !chi.is_zero() && v[1..].iter().all(|x| x == b) && !b.is_negative() && v[0] <= *b
}

pub fn in_sigma_m(chi: &Character, m: usize, assume_conjecture: bool) -> Result<bool> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    if m == 1 {
        return in_sigma1(chi);
    }
    let n = chi.arity();
    if n >= 3 && m >= 3 && !assume_conjecture {
        return Err(Error::ConjectureRequired { n, m });
    }
    Ok(!in_arc(chi))
}

/// Largest finiteness type certified for a subgroup above G'.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FType {
    /// Of type F_m and not F_{m+1}; an obstructing character is attached.
    Exactly(usize),
    /// Certified F_m; higher types need the unproven Sigma^m description.
    AtLeast(usize),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitenessReport {
    pub is_finitely_generated: bool,
    pub max_certified_f_type: FType,
    pub witness: Option<Character>,
    pub assumed_conjecture: bool,
}

impl FinitenessReport {
    pub fn to_json(&self) -> Value {
        let max = match self.max_certified_f_type {
            FType::Exactly(m) | FType::AtLeast(m) => json!(m),
            FType::Infinity => json!("infinity"),
        };
        json!({
            "isFinitelyGenerated": self.is_finitely_generated,
            "maxCertifiedFType": max,
            "sharp": matches!(self.max_certified_f_type, FType::Exactly(_)),
            "witness": self.witness.as_ref().map(Character::to_json),
            "assumedConjecture": self.assumed_conjecture,
        })
    }
}

pub const DEFAULT_M_MAX: usize = 16;

/// Finiteness type of `N`, the preimage in G of the lattice spanned by `rows`
/// (any rank). The characters vanishing on `N` are the annihilator `V` of the
/// lattice; `N` is `F_m` iff `V \ 0` avoids the complement of `Sigma^m`.
///
/// Only the plane spanned by `chi_1, chi_2` matters: a combination
/// `a chi_1 + b chi_2` vanishes on the lattice iff `a (u.chi_1) + b (u.chi_2) = 0`
/// for every generator `u`, a two-variable integer system.
pub fn kernel_finiteness(
    n: usize,
    rows: &[Vec<i64>],
    m_max: usize,
    assume_conjecture: bool,
) -> Result<FinitenessReport> {
    check_arity(n)?;
    if m_max == 0 {
        return Err(Error::Precondition("mMax must be at least 1".into()));
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::ArityMismatch { left: n, right: bad.len() });
    }
    // Coefficients (u.chi_1, u.chi_2) per generator.
    let coeffs: Vec<(i128, i128)> = rows
        .iter()
        .map(|u| (-(u[0] as i128), u.iter().map(|&x| x as i128).sum()))
        .filter(|&(a, b)| a != 0 || b != 0)
        .collect();
    let annihilator_trivial = crate::lattices::integer_rank(rows) == n;
    let report = |ftype: FType, witness: Option<Character>, fg: bool| FinitenessReport {
        is_finitely_generated: fg,
        max_certified_f_type: ftype,
        witness,
        assumed_conjecture: assume_conjecture,
    };

    let kills = |a: i128, b: i128| coeffs.iter().all(|&(c1, c2)| a * c1 + b * c2 == 0);
    let combo = |a: i128, b: i128| -> Result<Character> {
        // a chi_1 + b chi_2 = (b - a, b, ..., b)
        let mut v = vec![q(b as i64); n];
        v[0] = q((b - a) as i64);
        Character::new(v)
    };
    if kills(1, 0) {
        return Ok(report(FType::Exactly(0), Some(chi1(n)?), false));
    }
    if kills(0, 1) {
        return Ok(report(FType::Exactly(0), Some(chi2(n)?), false));
    }
    // The solution set in the (a, b) plane is a line through (-c2, c1) for any
    // nonzero row, or nothing if two rows are independent.
    let arc_witness = coeffs.first().and_then(|&(c1, c2)| {
        let (a, b) = (-c2, c1);
        if !kills(a, b) {
            return None;
        }
        if a >= 0 && b >= 0 {
            Some((a, b))
        } else if a <= 0 && b <= 0 {
            Some((-a, -b))
        } else {
            None
        }
    });
    if let Some((a, b)) = arc_witness {
        let g = num_integer::gcd(a, b);
        let witness = combo(a / g, b / g)?;
        debug_assert!(in_arc(&witness));
        return Ok(report(FType::Exactly(1), Some(witness), true));
    }
    if annihilator_trivial || n == 2 || assume_conjecture {
        return Ok(report(FType::Infinity, None, true));
    }
    Ok(report(FType::AtLeast(m_max.min(2)), None, true))
}

/// Reduces `chi` to a small integer representative of its sphere point when
/// all values are rational; used for display.
pub fn primitive_integer_vector(chi: &Character) -> Vec<BigInt> {
    let lcm = chi
        .values
        .iter()
        .fold(BigInt::from(1), |acc, v| num_integer::Integer::lcm(&acc, v.denom()));
    let ints: Vec<BigInt> = chi.values.iter().map(|v| (v * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| num_integer::Integer::gcd(&acc, v));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}
