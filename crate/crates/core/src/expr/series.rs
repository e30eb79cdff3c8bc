//! Truncated series: the independent brute-force oracle.
//!
//! A [`TruncatedSeries`] maps words of length ≤ n to weights (only nonzero
//! coefficients are stored).  [`Expr::truncated_series`] computes the
//! coefficients of ⟦E⟧ purely by structural recursion on the AST — never via
//! automata — so it can serve as an oracle against every construction in
//! the crate.  The star case iterates `(c* ⊙ s_p)` powers, which is sound
//! because `(c+s_p)* = (c* s_p)* c*` whenever `c*` is defined.

use std::collections::BTreeMap;
use std::fmt;

use crate::semiring::{SemiringTag, Weight};
use crate::{Error, Result};

use super::{Expr, Node};

/// Coefficients of a series on all words of length ≤ `degree`.
///
/// Equality compares tag, degree and the (nonzero) coefficients; the
/// recorded alphabet is bookkeeping only.
#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    tag: SemiringTag,
    alphabet: Vec<char>,
    degree: usize,
    // keyed by (length, word) so iteration is by length, then lexicographic
    coeffs: BTreeMap<(usize, String), Weight>,
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag && self.degree == other.degree && self.coeffs == other.coeffs
    }
}

impl Eq for TruncatedSeries {}

impl TruncatedSeries {
    pub fn new(tag: SemiringTag, alphabet: Vec<char>, degree: usize) -> TruncatedSeries {
        TruncatedSeries {
            tag,
            alphabet,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn tag(&self) -> SemiringTag {
        self.tag
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    /// The coefficient of `word` (zero when absent).
    pub fn coeff(&self, word: &str) -> Weight {
        self.coeffs
            .get(&(word.chars().count(), word.to_string()))
            .cloned()
            .unwrap_or_else(|| Weight::zero(self.tag))
    }

    /// Nonzero coefficients, by length then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &Weight)> {
        self.coeffs.iter().map(|((_, w), k)| (w.as_str(), k))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_coeff(&mut self, word: &str, k: Weight) -> Result<()> {
        let len = word.chars().count();
        debug_assert!(len <= self.degree);
        let key = (len, word.to_string());
        let updated = match self.coeffs.get(&key) {
            Some(old) => old.add(&k)?,
            None => k,
        };
        if updated.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, updated);
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &TruncatedSeries) -> Result<()> {
        for (w, k) in other.iter() {
            self.add_coeff(w, k.clone())?;
        }
        Ok(())
    }

    pub fn scale_left(&self, k: &Weight) -> Result<TruncatedSeries> {
        let mut out = TruncatedSeries::new(self.tag, self.alphabet.clone(), self.degree);
        for (w, c) in self.iter() {
            out.add_coeff(w, k.mul(c)?)?;
        }
        Ok(out)
    }

    pub fn scale_right(&self, k: &Weight) -> Result<TruncatedSeries> {
        let mut out = TruncatedSeries::new(self.tag, self.alphabet.clone(), self.degree);
        for (w, c) in self.iter() {
            out.add_coeff(w, c.mul(k)?)?;
        }
        Ok(out)
    }

    /// Truncated Cauchy product.
    pub fn cauchy(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let degree = self.degree.min(other.degree);
        let mut out = TruncatedSeries::new(self.tag, self.alphabet.clone(), degree);
        for ((l1, w1), k1) in &self.coeffs {
            if *l1 > degree {
                continue;
            }
            for ((l2, w2), k2) in &other.coeffs {
                if l1 + l2 > degree {
                    continue;
                }
                out.add_coeff(&format!("{w1}{w2}"), k1.mul(k2)?)?;
            }
        }
        Ok(out)
    }

    /// The proper part: the same series with the ε-coefficient dropped.
    pub fn proper_part(&self) -> TruncatedSeries {
        let mut out = self.clone();
        out.coeffs.remove(&(0, String::new()));
        out
    }

    /// u⁻¹s: the left quotient by `u` (degree shrinks by |u|).
    pub fn left_quotient(&self, u: &str) -> TruncatedSeries {
        let ulen = u.chars().count();
        let degree = self.degree.saturating_sub(ulen);
        let mut out = TruncatedSeries::new(self.tag, self.alphabet.clone(), degree);
        for ((len, w), k) in &self.coeffs {
            if let Some(v) = w.strip_prefix(u) {
                if len - ulen <= degree {
                    out.coeffs.insert((len - ulen, v.to_string()), k.clone());
                }
            }
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, k) in self.iter() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let disp = if w.is_empty() { "\\e" } else { w };
            write!(f, "<{k}>{disp}")?;
        }
        if first {
            f.write_str("<zero series>")?;
        }
        Ok(())
    }
}

impl Expr {
    /// Coefficients of ⟦E⟧ on all words of length ≤ `n`, by structural
    /// recursion.  Fails on invalid expressions.
    pub fn truncated_series(&self, n: usize) -> Result<TruncatedSeries> {
        let alphabet = self.alphabet().to_vec();
        self.series_rec(n, &alphabet)
    }

    fn series_rec(&self, n: usize, alphabet: &[char]) -> Result<TruncatedSeries> {
        let tag = self.tag();
        let mut out = TruncatedSeries::new(tag, alphabet.to_vec(), n);
        match self.node() {
            Node::Zero => {}
            Node::One => out.add_coeff("", Weight::one(tag))?,
            Node::Atom(c) => {
                if n >= 1 {
                    out.add_coeff(&c.to_string(), Weight::one(tag))?;
                }
            }
            Node::Sum(l, r) => {
                out = l.series_rec(n, alphabet)?;
                out.add_assign(&r.series_rec(n, alphabet)?)?;
            }
            Node::Prod(l, r) => {
                out = l
                    .series_rec(n, alphabet)?
                    .cauchy(&r.series_rec(n, alphabet)?)?;
            }
            Node::Star(x) => {
                let s = x.series_rec(n, alphabet)?;
                let c = s.coeff("");
                let c_star = c.star().map_err(|_| {
                    Error::InvalidExpression(format!("constant term {c} of `{x}` is not starable"))
                })?;
                // (c + s_p)* = (c* s_p)* c*; c* s_p is proper, so powers up
                // to n suffice for degree n.
                let t = s.proper_part().scale_left(&c_star)?;
                let mut acc = TruncatedSeries::new(tag, alphabet.to_vec(), n);
                acc.add_coeff("", Weight::one(tag))?;
                let mut pow = acc.clone();
                for _ in 1..=n {
                    pow = pow.cauchy(&t)?;
                    if pow.is_zero() {
                        break;
                    }
                    acc.add_assign(&pow)?;
                }
                out = acc.scale_right(&c_star)?;
            }
            Node::LWeight(k, x) => out = x.series_rec(n, alphabet)?.scale_left(k)?,
            Node::RWeight(x, k) => out = x.series_rec(n, alphabet)?.scale_right(k)?,
        }
        Ok(out)
    }
}
