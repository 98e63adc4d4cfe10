//! F(n) as a group of piecewise-linear homeomorphisms of `[0, 1]` with
//! rational breakpoints and slopes in `{n^k}`.
//!
//! Generators come from the n-ary "vine" decomposition of `[0, 1)` into
//! intervals `I_0, I_1, ...`: `n - 1` intervals of length `1/n`, then `n - 1`
//! of length `1/n^2`, and so on. The map `x_i` is the inverse of the
//! expansion that blows the n equal pieces of `I_i` up onto
//! `I_i, ..., I_{i+n-1}` and shifts every later interval `I_j` onto
//! `I_{j+n-1}`. A word `a b c` evaluates to the composite `a ∘ b ∘ c`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{check_arity, same_arity, Error, Result};
use crate::rational::{is_power_of, Q};
use crate::words::GroupWord;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLMap {
    arity: usize,
    /// Strictly increasing in both coordinates, from (0,0) to (1,1), minimal.
    points: Vec<(Q, Q)>,
}

impl PLMap {
    pub fn identity(arity: usize) -> Result<Self> {
        check_arity(arity)?;
        Ok(PLMap { arity, points: vec![(Q::zero(), Q::zero()), (Q::one(), Q::one())] })
    }

    /// Builds a map from breakpoints, validating endpoints and monotonicity.
    pub fn from_points(arity: usize, points: Vec<(Q, Q)>) -> Result<Self> {
        check_arity(arity)?;
        let ok_ends = points.len() >= 2
            && points[0] == (Q::zero(), Q::zero())
            && points[points.len() - 1] == (Q::one(), Q::one());
        if !ok_ends {
            return Err(Error::Precondition("breakpoints must run from (0,0) to (1,1)".into()));
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0 || w[0].1 >= w[1].1) {
            return Err(Error::Precondition("breakpoints must be strictly increasing".into()));
        }
        let mut map = PLMap { arity, points };
        map.minimize();
        Ok(map)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn points(&self) -> &[(Q, Q)] {
        &self.points
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2
    }

    /// Drops interior breakpoints where the slope does not change.
    fn minimize(&mut self) {
        let mut out: Vec<(Q, Q)> = Vec::with_capacity(self.points.len());
        for p in self.points.drain(..) {
            while out.len() >= 2 {
                let (a, b) = (&out[out.len() - 2], &out[out.len() - 1]);
                let collinear = (&b.1 - &a.1) * (&p.0 - &b.0) == (&p.1 - &b.1) * (&b.0 - &a.0);
                if collinear {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        self.points = out;
    }

    /// Evaluates the map at `t` in `[0, 1]`.
    pub fn apply(&self, t: &Q) -> Q {
        interpolate(&self.points, t, false)
    }

    pub fn apply_inverse(&self, t: &Q) -> Q {
        interpolate(&self.points, t, true)
    }

    pub fn slopes(&self) -> Vec<Q> {
        self.points
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect()
    }

    /// JSON array of `[num, den, num, den]` quadruples (input then output),
    /// integers as decimal strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.points
                .iter()
                .map(|(x, y)| {
                    Value::Array(
                        [x.numer(), x.denom(), y.numer(), y.denom()]
                            .iter()
                            .map(|v| Value::String(v.to_string()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn from_json(arity: usize, value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("malformed PL map JSON: {what}"));
        let rows = value.as_array().ok_or_else(|| bad("expected an array"))?;
        let mut points = Vec::with_capacity(rows.len());
        for row in rows {
            let quad = row.as_array().filter(|r| r.len() == 4).ok_or_else(|| bad("expected quadruples"))?;
            let mut ints = Vec::with_capacity(4);
            for v in quad {
                let s = v.as_str().ok_or_else(|| bad("integers must be strings"))?;
                ints.push(s.parse::<BigInt>().map_err(|_| bad("not an integer"))?);
            }
            if ints[1].is_zero() || ints[3].is_zero() {
                return Err(bad("zero denominator"));
            }
            points.push((Q::new(ints[0].clone(), ints[1].clone()), Q::new(ints[2].clone(), ints[3].clone())));
        }
        Self::from_points(arity, points)
    }
}

fn interpolate(points: &[(Q, Q)], t: &Q, inverse: bool) -> Q {
    let key = |p: &(Q, Q)| if inverse { p.1.clone() } else { p.0.clone() };
    let val = |p: &(Q, Q)| if inverse { p.0.clone() } else { p.1.clone() };
    // First breakpoint whose key is >= t.
    let hi = points.partition_point(|p| &key(p) < t);
    if hi == 0 {
        return val(&points[0]);
    }
    let hi = hi.min(points.len() - 1);
    let (a, b) = (&points[hi - 1], &points[hi]);
    let (ka, kb, va, vb) = (key(a), key(b), val(a), val(b));
    &va + (&vb - &va) * (t - &ka) / (kb - ka)
}

/// Start of the vine interval `I_k` and its length.
fn vine_interval(n: usize, k: usize) -> (Q, Q) {
    let n_big = BigInt::from(n);
    let level = k / (n - 1);
    let offset = k % (n - 1);
    let level_start = Q::one() - Q::new(BigInt::one(), num_traits::pow(n_big.clone(), level));
    let len = Q::new(BigInt::one(), num_traits::pow(n_big, level + 1));
    (level_start + &len * Q::from_integer(BigInt::from(offset)), len)
}

/// The classical generator `x_i` of F(n) as a PL map.
pub fn generator_map(n: usize, i: usize) -> Result<PLMap> {
    check_arity(n)?;
    let (start, len) = vine_interval(n, i);
    let piece = &len / Q::from_integer(BigInt::from(n));
    let mut expansion = vec![(Q::zero(), Q::zero())];
    for t in 0..=n {
        let x = &start + &piece * Q::from_integer(BigInt::from(t));
        let y = vine_interval(n, i + t).0;
        expansion.push((x, y));
    }
    expansion.push((Q::one(), Q::one()));
    expansion.dedup();
    let map = PLMap::from_points(n, expansion)?;
    Ok(invert_map(&map))
}

/// `f ∘ g`: apply `g` first.
pub fn compose(f: &PLMap, g: &PLMap) -> Result<PLMap> {
    same_arity(f.arity, g.arity)?;
    let mut xs: Vec<Q> = g.points.iter().map(|p| p.0.clone()).collect();
    xs.extend(f.points.iter().map(|p| g.apply_inverse(&p.0)));
    xs.sort();
    xs.dedup();
    let points = xs
        .into_iter()
        .map(|x| {
            let y = f.apply(&g.apply(&x));
            (x, y)
        })
        .collect();
    let mut out = PLMap { arity: f.arity, points };
    out.minimize();
    Ok(out)
}

pub fn invert_map(f: &PLMap) -> PLMap {
    PLMap {
        arity: f.arity,
        points: f.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
    }
}

/// The representation homomorphism on words.
pub fn evaluate_word(w: &GroupWord) -> Result<PLMap> {
    use std::collections::hash_map::{Entry, HashMap};

    let n = w.arity();
    let mut acc = PLMap::identity(n)?;
    // Cache generator maps; words reuse a handful of indices.
    let mut cache: HashMap<usize, (PLMap, PLMap)> = HashMap::new();
    for l in w.letters() {
        let (g, gi) = match cache.entry(l.index) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => {
                let g = generator_map(n, l.index)?;
                let gi = invert_map(&g);
                e.insert((g, gi))
            }
        };
        acc = compose(&acc, if l.inverse { gi } else { g })?;
    }
    Ok(acc)
}

pub fn maps_equal(f: &PLMap, g: &PLMap) -> bool {
    f.arity == g.arity && f.points == g.points
}

/// Whether every slope of `f` is an integer power of its arity.
pub fn has_power_slopes(f: &PLMap) -> bool {
    f.slopes().iter().all(|s| is_power_of(s, f.arity as u64))
}
