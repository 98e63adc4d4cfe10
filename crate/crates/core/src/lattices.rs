//! Finite-index subgroups `G' <= H <= G` as full-rank sublattices of
//! `G/G' = Z^n`, in row-style Hermite normal form.
//!
//! Every finite-index subgroup of F(n) contains the commutator subgroup, so
//! this identification loses nothing.

use std::fmt;

use serde_json::{json, Value};

use crate::charspace::Character;
use crate::error::{check_arity, Error, Result};
use crate::words::{fold_index, GroupWord};

/// Echelon form of the row lattice: upper triangular, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
fn echelon(mut rows: Vec<Vec<i128>>, ncols: usize) -> Vec<Vec<i128>> {
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            // Smallest nonzero |entry| in column c among rows r.. becomes the pivot.
            let best = (r..rows.len())
                .filter(|&k| rows[k][c] != 0)
                .min_by_key(|&k| rows[k][c].abs());
            let Some(best) = best else { break };
            rows.swap(r, best);
            let mut done = true;
            for k in r + 1..rows.len() {
                if rows[k][c] != 0 {
                    let f = rows[k][c].div_euclid(rows[r][c]);
                    for j in c..ncols {
                        rows[k][j] -= f * rows[r][j];
                    }
                    if rows[k][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c] == 0 {
            continue;
        }
        if rows[r][c] < 0 {
            for x in rows[r].iter_mut() {
                *x = -*x;
            }
        }
        let p = rows[r][c];
        for k in 0..r {
            let f = rows[k][c].div_euclid(p);
            if f != 0 {
                for j in c..ncols {
                    rows[k][j] -= f * rows[r][j];
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn widen(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

fn narrow(rows: Vec<Vec<i128>>) -> Result<Vec<Vec<i64>>> {
    rows.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::ResourceCap("lattice entry overflow".into())))
                .collect()
        })
        .collect()
}

/// Rank over Q of the integer rows.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    echelon(widen(rows), first.len()).len()
}

/// `H/G'` for a finite-index subgroup `H`, stored as its HNF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupLattice {
    basis: Vec<Vec<i64>>,
}

/// A lattice written in the coordinates `x̄_1, ..., x̄_n` of `M = <x_1, x_2, ...>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MLattice(SubgroupLattice);

impl MLattice {
    pub fn lattice(&self) -> &SubgroupLattice {
        &self.0
    }
}

impl SubgroupLattice {
    pub fn full(n: usize) -> Result<Self> {
        check_arity(n)?;
        Ok(SubgroupLattice {
            basis: (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect(),
        })
    }

    pub fn diagonal(diag: &[i64]) -> Result<Self> {
        let n = diag.len();
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { diag[i] } else { 0 }).collect()).collect::<Vec<_>>();
        hnf(n, &rows)
    }

    /// Parses a comma/semicolon/whitespace separated integer list, read as
    /// rows of length `n`.
    pub fn parse_rows(n: usize, text: &str) -> Result<Vec<Vec<i64>>> {
        let ints = text
            .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if ints.len() % n != 0 {
            return Err(Error::Parse(format!("{} entries do not form rows of length {n}", ints.len())));
        }
        Ok(ints.chunks(n).map(|c| c.to_vec()).collect())
    }

    pub fn arity(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// `[G : H] = |det|`; the basis is triangular.
    pub fn index(&self) -> u64 {
        (0..self.arity()).map(|i| self.basis[i][i] as u64).product()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.arity() {
            return false;
        }
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (c, row) in self.basis.iter().enumerate() {
            let p = row[c] as i128;
            if v[c] % p != 0 {
                return false;
            }
            let f = v[c] / p;
            for j in c..v.len() {
                v[j] -= f * row[j] as i128;
            }
        }
        true
    }

    /// Whether the subgroup contains the element represented by `w`.
    pub fn contains_word(&self, w: &GroupWord) -> bool {
        self.contains(&w.abelianize())
    }

    /// Whether `x_i` lies in the subgroup, for any generator index.
    pub fn contains_generator(&self, i: usize) -> bool {
        let mut e = vec![0; self.arity()];
        e[fold_index(self.arity(), i)] = 1;
        self.contains(&e)
    }

    /// Sublattice test `self ⊆ other`.
    pub fn is_sublattice_of(&self, other: &SubgroupLattice) -> bool {
        self.basis.iter().all(|r| other.contains(r))
    }

    /// Image under an integer matrix acting on column vectors.
    pub fn transform(&self, matrix: &[Vec<i64>]) -> Result<SubgroupLattice> {
        let n = self.arity();
        let rows: Vec<Vec<i64>> = self
            .basis
            .iter()
            .map(|u| (0..n).map(|i| (0..n).map(|j| matrix[i][j] * u[j]).sum()).collect())
            .collect();
        hnf(n, &rows)
    }

    /// Row-major flattening, as serialized on the command line.
    pub fn to_json(&self) -> Value {
        json!(self.basis.iter().flatten().collect::<Vec<_>>())
    }
}

impl fmt::Display for SubgroupLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

/// Canonical HNF of the lattice spanned by `rows` in `Z^n`; fails unless the
/// rows have full rank `n`.
pub fn hnf(n: usize, rows: &[Vec<i64>]) -> Result<SubgroupLattice> {
    check_arity(n)?;
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::ArityMismatch { left: n, right: bad.len() });
    }
    let ech = echelon(widen(rows), n);
    if ech.len() != n {
        return Err(Error::RankDeficient { expected: n, found: ech.len() });
    }
    Ok(SubgroupLattice { basis: narrow(ech)? })
}

pub fn index(l: &SubgroupLattice) -> u64 {
    l.index()
}

/// Least `alpha > 0` with `x_0^alpha ∈ H`, i.e. `alpha e_0 ∈ L`.
pub fn alpha(l: &SubgroupLattice) -> u64 {
    // HNF with coordinate 0 moved last: its pivot generates L ∩ Z e_0.
    let n = l.arity();
    let reversed: Vec<Vec<i128>> =
        l.basis.iter().map(|r| (0..n).map(|j| r[(j + 1) % n] as i128).collect()).collect();
    let ech = echelon(reversed, n);
    ech[n - 1][n - 1] as u64
}

/// Preimage `{v : psi(v) ∈ L}` of a lattice under an integer map
/// `psi: Z^n -> Z^n` (acting on column vectors).
fn preimage(l: &SubgroupLattice, psi: &[Vec<i64>]) -> Result<SubgroupLattice> {
    // v ∈ preimage  <=>  psi(v) = c B for an integer row c  <=>
    // (v, c) in the kernel of [psi^T ; -B]. Work with the row lattice of
    // [[psi^T, I], [B, 0]]: its elements with zero first block are (0, v).
    let n = l.arity();
    let mut rows: Vec<Vec<i128>> = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut r: Vec<i128> = (0..n).map(|j| psi[j][i] as i128).collect();
        r.extend((0..n).map(|j| (i == j) as i128));
        rows.push(r);
    }
    for b in &l.basis {
        let mut r: Vec<i128> = b.iter().map(|&x| x as i128).collect();
        r.extend(std::iter::repeat_n(0, n));
        rows.push(r);
    }
    let ech = echelon(rows, 2 * n);
    let tail: Vec<Vec<i64>> = narrow(
        ech.into_iter()
            .filter(|r| r[..n].iter().all(|&x| x == 0))
            .map(|r| r[n..].to_vec())
            .collect(),
    )?;
    hnf(n, &tail)
}

/// `H ∩ M` in the M-coordinates `x̄_1, ..., x̄_n`. In `G/G'` the generator
/// `x_n = x_1^{x_0}` folds onto `x̄_1`, so the inclusion sends
/// `e_i -> e_i (1 <= i < n)` and `e_n -> e_1`.
pub fn intersect_with_m(l: &SubgroupLattice) -> Result<MLattice> {
    let n = l.arity();
    // psi as a matrix acting on M-columns (index k stands for x̄_{k+1}).
    let mut psi = vec![vec![0i64; n]; n];
    for k in 0..n {
        psi[fold_index(n, k + 1)][k] = 1;
    }
    Ok(MLattice(preimage(l, &psi)?))
}

/// Transport along `theta: M -> G`, `x_i -> x_{i-1}`. In coordinates this is
/// the relabelling `x̄_{k+1} -> x̄_k`.
pub fn theta_shift(lm: &MLattice) -> SubgroupLattice {
    lm.0.clone()
}

/// `rho = (chi|_M) theta^{-1}`: `rho(x_i) = chi(x_{i+1})`.
pub fn restrict_character(chi: &Character) -> Result<Character> {
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    Character::new((0..chi.arity()).map(|i| chi.on_generator(i + 1).clone()).collect())
}

pub const DEFAULT_ENUMERATION_CAP: u64 = 100_000;

/// Every full-rank sublattice of `Z^n` with index at most `max_index`, each
/// once, ordered by index then basis. `cap` bounds the number returned.
pub fn enumerate_subgroups(n: usize, max_index: u64, cap: u64) -> Result<Vec<SubgroupLattice>> {
    check_arity(n)?;
    let mut out = Vec::new();
    let mut diag = vec![0i64; n];
    enumerate_diagonals(n, 0, max_index, &mut diag, &mut |d| {
        let before = out.len();
        fill_upper(n, d, &mut vec![vec![0; n]; n], 0, 1, &mut out);
        if out.len() as u64 > cap {
            out.truncate(before);
            return Err(Error::ResourceCap(format!("more than {cap} subgroups")));
        }
        Ok(())
    })?;
    out.sort_by(|a, b| a.index().cmp(&b.index()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn enumerate_diagonals(
    n: usize,
    at: usize,
    budget: u64,
    diag: &mut Vec<i64>,
    visit: &mut dyn FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    if at == n {
        return visit(diag);
    }
    for d in 1..=budget {
        diag[at] = d as i64;
        enumerate_diagonals(n, at + 1, budget / d, diag, visit)?;
    }
    Ok(())
}

fn fill_upper(
    n: usize,
    diag: &[i64],
    m: &mut Vec<Vec<i64>>,
    row: usize,
    col: usize,
    out: &mut Vec<SubgroupLattice>,
) {
    if row == n {
        let mut basis = m.clone();
        for i in 0..n {
            basis[i][i] = diag[i];
        }
        out.push(SubgroupLattice { basis });
        return;
    }
    if col == n {
        fill_upper(n, diag, m, row + 1, row + 2, out);
        return;
    }
    for v in 0..diag[col] {
        m[row][col] = v;
        fill_upper(n, diag, m, row, col + 1, out);
    }
    m[row][col] = 0;
}

/// How a chain of subgroups is generated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// `L_s = p^s Z^n`.
    Scaling(i64),
    /// `L_s = p^s Z ⊕ Z^{n-1}`.
    Coordinate(i64),
    Explicit(Vec<SubgroupLattice>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub kind: ChainKind,
    pub length: usize,
}

impl ChainSpec {
    /// Parses `scaling:<p>` or `coordinate:<p>`.
    pub fn parse(text: &str, length: usize) -> Result<Self> {
        let (kind, p) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad chain {text:?}: expected kind:p")))?;
        let p: i64 = p.parse().map_err(|_| Error::Parse(format!("bad chain modulus in {text:?}")))?;
        if p < 2 {
            return Err(Error::Parse("chain modulus must be at least 2".into()));
        }
        let kind = match kind {
            "scaling" => ChainKind::Scaling(p),
            "coordinate" => ChainKind::Coordinate(p),
            other => return Err(Error::Parse(format!("unknown chain kind {other:?}"))),
        };
        Ok(ChainSpec { kind, length })
    }
}

/// The `s`-th term of a chain.
pub fn chain(spec: &ChainSpec, n: usize, s: usize) -> Result<SubgroupLattice> {
    check_arity(n)?;
    let power = |p: i64| {
        u32::try_from(s)
            .ok()
            .and_then(|s| p.checked_pow(s))
            .ok_or_else(|| Error::ResourceCap(format!("{p}^{s} overflows")))
    };
    match &spec.kind {
        ChainKind::Scaling(p) => SubgroupLattice::diagonal(&vec![power(*p)?; n]),
        ChainKind::Coordinate(p) => {
            let mut d = vec![1; n];
            d[0] = power(*p)?;
            SubgroupLattice::diagonal(&d)
        }
        ChainKind::Explicit(list) => {
            let l = list
                .get(s)
                .ok_or_else(|| Error::Precondition(format!("explicit chain has no term {s}")))?;
            if l.arity() != n {
                return Err(Error::ArityMismatch { left: n, right: l.arity() });
            }
            Ok(l.clone())
        }
    }
}
