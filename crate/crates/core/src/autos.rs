//! The automorphisms `phi` and `mu` of F(n) as they act on characters.
//!
//! `phi` fixes `x_0` and shifts `x_i -> x_{i+1}` (`i >= 1`); on characters it
//! is the matrix `A`, which fixes coordinate 0 and cycles `1 -> ... -> n-1`.
//! `mu` inverts `x_0` and sends `x̄_i` to `x̄_{delta(i)} - x̄_0` in the
//! abelianization; on characters it is the involution `C`.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::charspace::{Character, SpherePoint};
use crate::error::{check_arity, same_arity, Error, Result};
use crate::rational::{q, Q};
use crate::words::{GroupWord, Letter};

/// An integer `n x n` matrix acting on character value vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterMatrix {
    entries: Vec<Vec<i64>>,
}

impl CharacterMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        check_arity(n)?;
        if let Some(bad) = entries.iter().find(|r| r.len() != n) {
            return Err(Error::ArityMismatch { left: n, right: bad.len() });
        }
        Ok(CharacterMatrix { entries })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect())
    }

    pub fn arity(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == (i == j) as i64))
    }

    pub fn mul(&self, other: &CharacterMatrix) -> Result<CharacterMatrix> {
        same_arity(self.arity(), other.arity())?;
        let n = self.arity();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.entries[i][k] * other.entries[k][j]).sum()).collect())
            .collect();
        Ok(CharacterMatrix { entries })
    }

    pub fn pow(&self, k: u32) -> CharacterMatrix {
        let mut acc = CharacterMatrix::identity(self.arity()).expect("valid arity");
        for _ in 0..k {
            acc = acc.mul(self).expect("same arity");
        }
        acc
    }

    pub fn transpose(&self) -> CharacterMatrix {
        let n = self.arity();
        CharacterMatrix { entries: (0..n).map(|i| (0..n).map(|j| self.entries[j][i]).collect()).collect() }
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> i64 {
        let n = self.arity();
        let mut m: Vec<Vec<i128>> = self.entries.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&r| m[r][k] != 0) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        (sign * m[n - 1][n - 1]) as i64
    }

    pub fn to_json(&self) -> Value {
        json!(self.entries)
    }
}

/// `delta` from its description as a product of transpositions: `i <-> n-i-2`
/// for `1 <= i <= n-3`, and `n-1 <-> n-2`. For `n = 2` it is the identity on `{1}`.
pub fn delta(n: usize, i: usize) -> usize {
    assert!((1..n).contains(&i), "delta is defined on 1..n-1");
    if n == 2 {
        return 1;
    }
    if i == n - 1 {
        n - 2
    } else if i == n - 2 {
        n - 1
    } else {
        n - i - 2
    }
}

/// `delta(i) = rho_0^{-i-1}(n-1)` with `rho_0` the cycle `(1, 2, ..., n-1)`.
pub fn delta_via_cycle(n: usize, i: usize) -> usize {
    let len = (n - 1) as i64;
    let start = (n - 2) as i64; // position of n-1 in 0-based cycle coordinates
    let pos = (start - (i as i64 + 1)).rem_euclid(len);
    pos as usize + 1
}

/// Matrix of `chi -> chi ∘ phi`.
pub fn matrix_a(n: usize) -> Result<CharacterMatrix> {
    check_arity(n)?;
    let mut e = vec![vec![0i64; n]; n];
    e[0][0] = 1;
    for i in 1..n {
        let src = if i == n - 1 { 1 } else { i + 1 };
        e[i][src] = 1;
    }
    CharacterMatrix::new(e)
}

/// Matrix of `chi -> chi ∘ mu`: `(Cv)_0 = -v_0`, `(Cv)_i = v_{delta(i)} - v_0`.
pub fn matrix_c(n: usize) -> Result<CharacterMatrix> {
    check_arity(n)?;
    let mut e = vec![vec![0i64; n]; n];
    e[0][0] = -1;
    for i in 1..n {
        e[i][0] = -1;
        e[i][delta(n, i)] += 1;
    }
    CharacterMatrix::new(e)
}

pub fn apply(m: &CharacterMatrix, chi: &Character) -> Result<Character> {
    same_arity(m.arity(), chi.arity())?;
    let values = m
        .entries
        .iter()
        .map(|row| row.iter().zip(chi.values()).map(|(&a, v)| q(a) * v).sum::<Q>())
        .collect();
    Character::new(values)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u32),
    ExceedsCap,
}

/// Least `k >= 1` with `m^k = I`, searching up to `cap`.
pub fn order_of(m: &CharacterMatrix, cap: u32) -> Order {
    let mut acc = m.clone();
    for k in 1..=cap {
        if acc.is_identity() {
            return Order::Finite(k);
        }
        acc = acc.mul(m).expect("same arity");
    }
    Order::ExceedsCap
}

/// `phi^k` on a word: indices `>= 1` shift up by `k`.
pub fn phi_on_word(w: &GroupWord, k: i64) -> Result<GroupWord> {
    if k < 0 {
        return Err(Error::Precondition("only nonnegative powers of phi act on generators".into()));
    }
    let k = k as usize;
    let letters = w
        .letters()
        .iter()
        .map(|l| Letter { index: if l.index == 0 { 0 } else { l.index + k }, inverse: l.inverse })
        .collect();
    GroupWord::new(w.arity(), letters)
}

/// For `rho` with `rho(x_0) = rho(x_{n-1})`, returns `rho_0 = A^{n-3} C rho`,
/// which vanishes on `x_1`.
pub fn reduction_identity_check(rho: &Character) -> Result<Character> {
    let n = rho.arity();
    if n < 3 {
        return Err(Error::Precondition("the reduction needs n >= 3".into()));
    }
    if rho.values()[0] != rho.values()[n - 1] {
        return Err(Error::Precondition("rho(x_0) must equal rho(x_{n-1})".into()));
    }
    let m = matrix_a(n)?.pow((n - 3) as u32).mul(&matrix_c(n)?)?;
    let rho0 = apply(&m, rho)?;
    if rho0.values()[1] != q(0) {
        return Err(Error::InvariantViolation(format!("rho_0(x_1) = {} for rho = {rho}", rho0.values()[1])));
    }
    Ok(rho0)
}

pub const DEFAULT_ORBIT_CAP: usize = 10_000;

/// Orbit of a sphere point under `D = <A, C>` (closed under inverses:
/// `A^{-1} = A^T` since `A` permutes coordinates, `C^{-1} = C`).
pub fn d_orbit(p: &SpherePoint, cap: usize) -> Result<BTreeSet<SpherePoint>> {
    let n = p.character().arity();
    let gens = [matrix_a(n)?, matrix_a(n)?.transpose(), matrix_c(n)?];
    let mut seen = BTreeSet::new();
    seen.insert(p.clone());
    let mut frontier = vec![p.clone()];
    while let Some(cur) = frontier.pop() {
        for g in &gens {
            let next = SpherePoint::new(&apply(g, cur.character())?)?;
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::ResourceCap(format!("orbit larger than {cap}")));
                }
                frontier.push(next);
            }
        }
    }
    Ok(seen)
}
