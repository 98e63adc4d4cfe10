//! Words in the generators `x_0, x_1, ...` of F(n) = F_{n,inf} and their
//! normal forms.
//!
//! The defining relations `x_j^-1 x_i x_j = x_{i+n-1}` (for `i > j`) are
//! oriented so that small indices move to the left:
//!
//! ```text
//! x_i   x_j    ->  x_j   x_{i+n-1}        (i > j)
//! x_i^-1 x_j   ->  x_j   x_{i+n-1}^-1     (i > j)
//! x_j^-1 x_i   ->  x_{i+n-1} x_j^-1       (i > j)
//! x_j^-1 x_i^-1 -> x_{i+n-1}^-1 x_j^-1    (i > j)
//! x_i x_i^-1, x_i^-1 x_i -> (empty)
//! ```
//!
//! Exhaustive application yields a [`SeminormalForm`]: non-decreasing positive
//! letters followed by non-increasing inverse letters. The full normal form
//! additionally removes pairs `x_i ... x_i^-1` that enclose no letter with
//! index in `i+1 ..= i+n-1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_arity, same_arity, Error, Result};

/// Default ceiling on generator indices produced while rewriting.
pub const DEFAULT_INDEX_CAP: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Letter { index, inverse: false }
    }

    pub fn neg(index: usize) -> Self {
        Letter { index, inverse: true }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        Letter { index: self.index, inverse: !self.inverse }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "x{}^-1", self.index)
        } else {
            write!(f, "x{}", self.index)
        }
    }
}

/// A finite word in the generators of F(n); the empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord {
    arity: usize,
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn new(arity: usize, letters: Vec<Letter>) -> Result<Self> {
        check_arity(arity)?;
        Ok(GroupWord { arity, letters })
    }

    pub fn identity(arity: usize) -> Result<Self> {
        Self::new(arity, Vec::new())
    }

    pub fn generator(arity: usize, index: usize) -> Result<Self> {
        Self::new(arity, vec![Letter::pos(index)])
    }

    /// Parses whitespace-separated tokens `x<k>`, `x<k>^-1` or `x<k>^<e>`.
    pub fn parse(arity: usize, text: &str) -> Result<Self> {
        check_arity(arity)?;
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let body = token
                .strip_prefix('x')
                .ok_or_else(|| Error::Parse(format!("bad token {token:?}: expected x<k>")))?;
            let (index, exponent) = match body.split_once('^') {
                Some((i, e)) => (i, e),
                None => (body, "1"),
            };
            let index: usize = index
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator index in {token:?}")))?;
            let exponent: i64 = exponent
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {token:?}")))?;
            let letter = Letter { index, inverse: exponent < 0 };
            letters.extend(std::iter::repeat_n(letter, exponent.unsigned_abs() as usize));
        }
        Ok(GroupWord { arity, letters })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation (not reduced).
    pub fn concat(&self, other: &GroupWord) -> Result<GroupWord> {
        same_arity(self.arity, other.arity)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(GroupWord { arity: self.arity, letters })
    }

    pub fn invert(&self) -> GroupWord {
        GroupWord {
            arity: self.arity,
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Exponent-sum vector in G/G' = Z^n. A letter `x_i` with `i >= 1` is
    /// conjugate to `x_{1 + (i-1) mod (n-1)}`.
    pub fn abelianize(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.arity];
        for l in &self.letters {
            v[fold_index(self.arity, l.index)] += l.exponent();
        }
        v
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Coordinate of G/G' that generator `x_index` maps to.
pub fn fold_index(arity: usize, index: usize) -> usize {
    if index == 0 {
        0
    } else {
        1 + (index - 1) % (arity - 1)
    }
}

/// `x_{p_1} ... x_{p_s} x_{q_1}^-1 ... x_{q_t}^-1` with `p` non-decreasing and
/// `q` non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeminormalForm {
    arity: usize,
    positive: Vec<usize>,
    negative: Vec<usize>,
}

impl SeminormalForm {
    pub fn identity(arity: usize) -> Result<Self> {
        check_arity(arity)?;
        Ok(SeminormalForm { arity, positive: Vec::new(), negative: Vec::new() })
    }

    /// Builds a form from its two halves, checking the ordering invariants.
    pub fn from_parts(arity: usize, positive: Vec<usize>, negative: Vec<usize>) -> Result<Self> {
        check_arity(arity)?;
        if positive.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Precondition("positive part must be non-decreasing".into()));
        }
        if negative.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition("negative part must be non-increasing".into()));
        }
        Ok(SeminormalForm { arity, positive, negative })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn positive(&self) -> &[usize] {
        &self.positive
    }

    /// Indices of the inverse letters, in written (non-increasing) order.
    pub fn negative(&self) -> &[usize] {
        &self.negative
    }

    pub fn is_identity(&self) -> bool {
        self.positive.is_empty() && self.negative.is_empty()
    }

    pub fn to_word(&self) -> GroupWord {
        let letters = self
            .positive
            .iter()
            .map(|&i| Letter::pos(i))
            .chain(self.negative.iter().map(|&i| Letter::neg(i)))
            .collect();
        GroupWord { arity: self.arity, letters }
    }

    /// Right-multiplies by one letter, applying the rewriting rules until the
    /// result is seminormal again.
    fn push(&mut self, letter: Letter, cap: usize) -> Result<()> {
        let shift = self.arity - 1;
        let bump = |i: usize| -> Result<usize> {
            let j = i + shift;
            if j > cap {
                Err(Error::IndexCapExceeded { index: j, cap })
            } else {
                Ok(j)
            }
        };
        if letter.index > cap {
            return Err(Error::IndexCapExceeded { index: letter.index, cap });
        }
        if letter.inverse {
            // x_q^-1 x_k^-1 with q < k becomes x_{k+n-1}^-1 x_q^-1.
            let mut k = letter.index;
            let mut pos = self.negative.len();
            while pos > 0 && self.negative[pos - 1] < k {
                k = bump(k)?;
                pos -= 1;
            }
            if pos == 0 && self.positive.last() == Some(&k) {
                self.positive.pop();
            } else {
                self.negative.insert(pos, k);
            }
            return Ok(());
        }
        // Move x_k left through the inverse letters.
        let mut k = letter.index;
        let mut pos = self.negative.len();
        while pos > 0 {
            let q = self.negative[pos - 1];
            if q == k {
                self.negative.remove(pos - 1);
                return Ok(());
            }
            if q > k {
                self.negative[pos - 1] = bump(q)?;
            } else {
                k = bump(k)?;
            }
            pos -= 1;
        }
        // Then through the positive letters greater than it.
        let mut pos = self.positive.len();
        while pos > 0 && self.positive[pos - 1] > k {
            self.positive[pos - 1] = bump(self.positive[pos - 1])?;
            pos -= 1;
        }
        self.positive.insert(pos, k);
        Ok(())
    }

    /// Removes every pair `x_i ... x_i^-1` that encloses no letter with index
    /// in `i+1 ..= i+n-1`, conjugating the enclosed letters down by `n-1`.
    /// The result is the unique normal form of the element.
    pub fn reduced(&self) -> SeminormalForm {
        let shift = self.arity - 1;
        let mut pos = self.positive.clone();
        let mut neg = self.negative.clone();
        'outer: loop {
            // Candidates in decreasing order; any eligible one may be removed.
            let mut common: Vec<usize> =
                pos.iter().copied().filter(|i| neg.binary_search_by(|q| i.cmp(q)).is_ok()).collect();
            common.dedup();
            for &i in common.iter().rev() {
                let blocked = |v: &[usize]| v.iter().any(|&j| j > i && j <= i + shift);
                if blocked(&pos) || blocked(&neg) {
                    continue;
                }
                let p_at = pos.iter().rposition(|&j| j == i).expect("index present");
                let n_at = neg.iter().position(|&j| j == i).expect("index present");
                pos.remove(p_at);
                neg.remove(n_at);
                for j in &mut pos[p_at..] {
                    *j -= shift;
                }
                for j in &mut neg[..n_at] {
                    *j -= shift;
                }
                continue 'outer;
            }
            break;
        }
        SeminormalForm { arity: self.arity, positive: pos, negative: neg }
    }
}

impl fmt::Display for SeminormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let w = GroupWord::parse(2, s)?;
        match w.letters() {
            [l] => Ok(*l),
            _ => Err(Error::Parse(format!("expected a single letter, got {s:?}"))),
        }
    }
}

pub fn rewrite_to_seminormal(w: &GroupWord) -> Result<SeminormalForm> {
    rewrite_to_seminormal_with_cap(w, DEFAULT_INDEX_CAP)
}

pub fn rewrite_to_seminormal_with_cap(w: &GroupWord, cap: usize) -> Result<SeminormalForm> {
    let mut form = SeminormalForm::identity(w.arity)?;
    for &l in &w.letters {
        form.push(l, cap)?;
    }
    Ok(form)
}

pub fn multiply(u: &SeminormalForm, v: &SeminormalForm) -> Result<SeminormalForm> {
    same_arity(u.arity, v.arity)?;
    let mut out = u.clone();
    for l in v.to_word().letters {
        out.push(l, DEFAULT_INDEX_CAP)?;
    }
    Ok(out)
}

pub fn invert(w: &GroupWord) -> GroupWord {
    w.invert()
}

pub fn abelianize(w: &GroupWord) -> Vec<i64> {
    w.abelianize()
}

/// Unique normal form of the element represented by `w`.
pub fn normal_form(w: &GroupWord) -> Result<SeminormalForm> {
    Ok(rewrite_to_seminormal(w)?.reduced())
}

/// Decides the word problem.
pub fn are_equal(u: &GroupWord, v: &GroupWord) -> Result<bool> {
    same_arity(u.arity, v.arity)?;
    Ok(normal_form(u)? == normal_form(v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &str) -> GroupWord {
        GroupWord::parse(n, s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let word = w(3, "x0 x1^-1 x3^2");
        assert_eq!(word.len(), 4);
        assert_eq!(word.to_string(), "x0 x1^-1 x3 x3");
        assert_eq!(w(2, "x2^-2").to_string(), "x2^-1 x2^-1");
        assert!(w(2, "x4^0").is_empty());
        assert!(GroupWord::parse(2, "y1").is_err());
        assert!(GroupWord::parse(2, "x1^a").is_err());
        assert!(GroupWord::parse(1, "x1").is_err());
        assert_eq!("x3^-1".parse::<Letter>().unwrap(), Letter::neg(3));
    }

    #[test]
    fn seminormal_examples() {
        let f = rewrite_to_seminormal(&w(2, "x1 x0")).unwrap();
        assert_eq!(f.positive(), &[0, 2]);
        assert!(f.negative().is_empty());
        assert!(rewrite_to_seminormal(&w(4, "x0 x0^-1")).unwrap().is_identity());
        let f = rewrite_to_seminormal(&w(3, "x2 x1 x0")).unwrap();
        assert_eq!(f.positive(), &[0, 3, 6]);
    }

    #[test]
    fn seminormal_mixed_letters() {
        // x1^-1 x0 = x0 x2^-1 for n = 2
        let f = rewrite_to_seminormal(&w(2, "x1^-1 x0")).unwrap();
        assert_eq!((f.positive(), f.negative()), (&[0][..], &[2][..]));
        // x0^-1 x1 = x2 x0^-1
        let f = rewrite_to_seminormal(&w(2, "x0^-1 x1")).unwrap();
        assert_eq!((f.positive(), f.negative()), (&[2][..], &[0][..]));
        // x0^-1 x1^-1 = x2^-1 x0^-1
        let f = rewrite_to_seminormal(&w(2, "x0^-1 x1^-1")).unwrap();
        assert_eq!(f.negative(), &[2, 0]);
    }

    #[test]
    fn multiply_examples() {
        let x0 = rewrite_to_seminormal(&w(2, "x0")).unwrap();
        let x0i = rewrite_to_seminormal(&w(2, "x0^-1")).unwrap();
        assert!(multiply(&x0, &x0i).unwrap().is_identity());
        let x1 = rewrite_to_seminormal(&w(2, "x1")).unwrap();
        assert_eq!(multiply(&x1, &x0).unwrap().positive(), &[0, 2]);
        let u = rewrite_to_seminormal(&w(2, "x0 x2^-1")).unwrap();
        let v = rewrite_to_seminormal(&w(2, "x2 x0^-1")).unwrap();
        assert!(multiply(&u, &v).unwrap().is_identity());
        let other = SeminormalForm::identity(3).unwrap();
        assert!(matches!(multiply(&u, &other), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w(2, "x0").invert(), w(2, "x0^-1"));
        assert!(w(2, "").invert().is_empty());
        assert_eq!(w(2, "x0 x1^-1").invert(), w(2, "x1 x0^-1"));
    }

    #[test]
    fn abelianize_examples() {
        assert_eq!(w(2, "x2").abelianize(), vec![0, 1]);
        assert_eq!(w(2, "x0^2 x1^-1").abelianize(), vec![2, -1]);
        assert_eq!(w(3, "x3").abelianize(), vec![0, 1, 0]);
        for n in 2..=5 {
            for i in 1..=8 {
                let a = GroupWord::generator(n, i).unwrap().abelianize();
                let b = GroupWord::generator(n, i + n - 1).unwrap().abelianize();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn equality_examples() {
        assert!(are_equal(&w(2, "x0^-1 x1 x0"), &w(2, "x2")).unwrap());
        assert!(!are_equal(&w(2, "x0"), &w(2, "x1")).unwrap());
        assert!(are_equal(&w(3, "x1 x4^-1"), &w(3, "x0 x3 x0^-1 x4^-1 x1 x1^-1")).unwrap());
        assert!(are_equal(&w(2, "x0"), &w(3, "x0")).is_err());
    }

    #[test]
    fn reduction_removes_enclosing_pair() {
        // x0 x3 x0^-1 = x2 for n = 2
        let f = normal_form(&w(2, "x0 x3 x0^-1")).unwrap();
        assert_eq!(f.to_string(), "x2");
        // x0 x1 x0^-1 is already reduced: x1 blocks the pair.
        let f = normal_form(&w(2, "x0 x1 x0^-1")).unwrap();
        assert_eq!(f.to_string(), "x0 x1 x0^-1");
        // n = 3: the block window is i+1 ..= i+2
        let f = normal_form(&w(3, "x0 x3 x0^-1")).unwrap();
        assert_eq!(f.to_string(), "x1");
        let f = normal_form(&w(3, "x0 x2 x0^-1")).unwrap();
        assert_eq!(f.to_string(), "x0 x2 x0^-1");
    }

    #[test]
    fn index_cap_is_enforced() {
        let word = w(2, "x5 x4 x3 x2 x1 x0");
        assert!(matches!(
            rewrite_to_seminormal_with_cap(&word, 6),
            Err(Error::IndexCapExceeded { .. })
        ));
        assert!(rewrite_to_seminormal_with_cap(&word, 100).is_ok());
        assert!(rewrite_to_seminormal_with_cap(&w(2, "x9"), 8).is_err());
    }

    #[test]
    fn from_parts_checks_order() {
        assert!(SeminormalForm::from_parts(2, vec![0, 2], vec![3, 1]).is_ok());
        assert!(SeminormalForm::from_parts(2, vec![2, 0], vec![]).is_err());
        assert!(SeminormalForm::from_parts(2, vec![], vec![1, 3]).is_err());
    }
}
