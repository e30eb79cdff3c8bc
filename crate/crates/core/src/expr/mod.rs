//! Rational expression ASTs, always kept reduced modulo the trivial
//! identities.
//!
//! The trivial identities absorb 0 and 1 (`E+0 ≡ E`, `E·1 ≡ E`, `0* ≡ 1`, …)
//! and, in the weighted case, the unit and zero weights together with the
//! weight-association rules `⟨k⟩⟨h⟩E ≡ ⟨kh⟩E`, `(⟨k⟩E)⟨h⟩ ≡ ⟨k⟩(E⟨h⟩)`,
//! `𝟭⟨k⟩ ≡ ⟨k⟩𝟭`, `E·(⟨k⟩𝟭) ≡ E⟨k⟩` and `(⟨k⟩𝟭)·E ≡ ⟨k⟩E`.  Reduction is
//! applied by the smart constructors, so every reachable [`Expr`] is in the
//! unique normal form; structural equality after reduction is the equality
//! used everywhere else (derived-term sets, automaton state identity).
//!
//! Nothing beyond the trivial identities is ever applied implicitly.  In
//! particular sums are not reordered and `E+E` is not collapsed; the
//! optional [`Expr::simplify_natural`] pass is display-level only.

mod parse;
mod series;

pub use parse::{parse, parse_with_alphabet};
pub use series::TruncatedSeries;

use std::collections::BTreeSet;
use std::fmt;
use std::rc::Rc;

use indexmap::IndexMap;

use crate::semiring::{SemiringTag, Weight};
use crate::{Error, Result};

/// A node of the syntax tree.  Children are full [`Expr`]s so that every
/// subexpression knows its own tag and alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Zero,
    One,
    Atom(char),
    Sum(Expr, Expr),
    Prod(Expr, Expr),
    Star(Expr),
    LWeight(Weight, Expr),
    RWeight(Expr, Weight),
}

/// A rational expression, reduced modulo the trivial identities.
///
/// Equality and hashing are structural on the tree (the recorded alphabet is
/// ignored: it is bookkeeping, not syntax).
#[derive(Debug, Clone)]
pub struct Expr {
    node: Rc<Node>,
    tag: SemiringTag,
    alphabet: Rc<Vec<char>>,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag && (Rc::ptr_eq(&self.node, &other.node) || self.node == other.node)
    }
}

impl Eq for Expr {}

impl std::hash::Hash for Expr {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.tag.hash(state);
        self.node.hash(state);
    }
}

fn merge_alphabets(a: &Rc<Vec<char>>, b: &Rc<Vec<char>>) -> Rc<Vec<char>> {
    if a.as_slice() == b.as_slice() {
        return Rc::clone(a);
    }
    if b.is_empty() {
        return Rc::clone(a);
    }
    if a.is_empty() {
        return Rc::clone(b);
    }
    let set: BTreeSet<char> = a.iter().chain(b.iter()).copied().collect();
    Rc::new(set.into_iter().collect())
}

impl Expr {
    pub fn zero(tag: SemiringTag) -> Expr {
        Expr {
            node: Rc::new(Node::Zero),
            tag,
            alphabet: Rc::new(Vec::new()),
        }
    }

    pub fn one(tag: SemiringTag) -> Expr {
        Expr {
            node: Rc::new(Node::One),
            tag,
            alphabet: Rc::new(Vec::new()),
        }
    }

    pub fn atom(letter: char, tag: SemiringTag) -> Expr {
        Expr {
            node: Rc::new(Node::Atom(letter)),
            tag,
            alphabet: Rc::new(vec![letter]),
        }
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn tag(&self) -> SemiringTag {
        self.tag
    }

    /// The letters this expression is read over (a superset of the letters
    /// occurring in it).
    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    /// Widen the recorded alphabet (used when an alphabet is declared
    /// explicitly rather than inferred from the text).
    pub fn with_alphabet(mut self, letters: &[char]) -> Expr {
        let declared: Rc<Vec<char>> = Rc::new(
            letters
                .iter()
                .copied()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        );
        self.alphabet = merge_alphabets(&self.alphabet, &declared);
        self
    }

    pub fn is_zero(&self) -> bool {
        matches!(*self.node, Node::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(*self.node, Node::One)
    }

    /// `self + rhs`, reduced.
    pub fn sum(self, rhs: Expr) -> Expr {
        assert_eq!(self.tag, rhs.tag, "mixed-semiring expression");
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let alphabet = merge_alphabets(&self.alphabet, &rhs.alphabet);
        let tag = self.tag;
        Expr {
            node: Rc::new(Node::Sum(self, rhs)),
            tag,
            alphabet,
        }
    }

    /// `self · rhs`, reduced.
    pub fn prod(self, rhs: Expr) -> Expr {
        assert_eq!(self.tag, rhs.tag, "mixed-semiring expression");
        if self.is_zero() || rhs.is_zero() {
            return Expr::zero(self.tag);
        }
        if self.is_one() {
            return rhs;
        }
        if rhs.is_one() {
            return self;
        }
        // (⟨k⟩1)·E ≡ ⟨k⟩E and E·(⟨k⟩1) ≡ E⟨k⟩
        if let Node::LWeight(k, inner) = &*self.node {
            if inner.is_one() {
                return rhs.rweight_left(k.clone());
            }
        }
        if let Node::LWeight(k, inner) = &*rhs.node {
            if inner.is_one() {
                return self.rweight(k.clone());
            }
        }
        let alphabet = merge_alphabets(&self.alphabet, &rhs.alphabet);
        let tag = self.tag;
        Expr {
            node: Rc::new(Node::Prod(self, rhs)),
            tag,
            alphabet,
        }
    }

    // ⟨k⟩self, entry point shared by prod's (⟨k⟩1)·E case.
    fn rweight_left(self, k: Weight) -> Expr {
        self.lweight(k)
    }

    /// `self*`, reduced (`0* ≡ 1`).
    pub fn star(self) -> Expr {
        if self.is_zero() {
            return Expr::one(self.tag);
        }
        let tag = self.tag;
        let alphabet = Rc::clone(&self.alphabet);
        Expr {
            node: Rc::new(Node::Star(self)),
            tag,
            alphabet,
        }
    }

    /// `⟨k⟩self`, reduced.
    pub fn lweight(self, k: Weight) -> Expr {
        assert_eq!(self.tag, k.tag(), "weight tag differs from expression tag");
        if k.is_zero() || self.is_zero() {
            return Expr::zero(self.tag);
        }
        if k.is_one() {
            return self;
        }
        if let Node::LWeight(h, inner) = &*self.node {
            let kh = k.mul(h).expect("same tag");
            return inner.clone().lweight(kh);
        }
        let tag = self.tag;
        let alphabet = Rc::clone(&self.alphabet);
        Expr {
            node: Rc::new(Node::LWeight(k, self)),
            tag,
            alphabet,
        }
    }

    /// `self⟨k⟩`, reduced.
    pub fn rweight(self, k: Weight) -> Expr {
        assert_eq!(self.tag, k.tag(), "weight tag differs from expression tag");
        if k.is_zero() || self.is_zero() {
            return Expr::zero(self.tag);
        }
        if k.is_one() {
            return self;
        }
        match &*self.node {
            // (E⟨h⟩)⟨k⟩ ≡ E⟨hk⟩
            Node::RWeight(inner, h) => {
                let hk = h.mul(&k).expect("same tag");
                inner.clone().rweight(hk)
            }
            // (⟨h⟩E)⟨k⟩ ≡ ⟨h⟩(E⟨k⟩)
            Node::LWeight(h, inner) => inner.clone().rweight(k).lweight(h.clone()),
            // 𝟭⟨k⟩ ≡ ⟨k⟩𝟭
            Node::One => {
                let tag = self.tag;
                Expr {
                    node: Rc::new(Node::LWeight(k, Expr::one(tag))),
                    tag,
                    alphabet: Rc::new(Vec::new()),
                }
            }
            _ => {
                let tag = self.tag;
                let alphabet = Rc::clone(&self.alphabet);
                Expr {
                    node: Rc::new(Node::RWeight(self, k)),
                    tag,
                    alphabet,
                }
            }
        }
    }

    /// Number of letter occurrences ℓ(E).
    pub fn literal_length(&self) -> usize {
        match &*self.node {
            Node::Zero | Node::One => 0,
            Node::Atom(_) => 1,
            Node::Sum(l, r) | Node::Prod(l, r) => l.literal_length() + r.literal_length(),
            Node::Star(e) | Node::LWeight(_, e) | Node::RWeight(e, _) => e.literal_length(),
        }
    }

    /// Depth of the syntactic tree (constants and atoms have depth 0).
    pub fn depth(&self) -> usize {
        match &*self.node {
            Node::Zero | Node::One | Node::Atom(_) => 0,
            Node::Sum(l, r) | Node::Prod(l, r) => 1 + l.depth().max(r.depth()),
            Node::Star(e) | Node::LWeight(_, e) | Node::RWeight(e, _) => 1 + e.depth(),
        }
    }

    /// Star height h(E): the degree of nestedness of `*`.
    pub fn star_height(&self) -> usize {
        match &*self.node {
            Node::Zero | Node::One | Node::Atom(_) => 0,
            Node::Sum(l, r) | Node::Prod(l, r) => l.star_height().max(r.star_height()),
            Node::Star(e) => 1 + e.star_height(),
            Node::LWeight(_, e) | Node::RWeight(e, _) => e.star_height(),
        }
    }

    /// (literal length, depth, star height) in one call.
    pub fn metrics(&self) -> (usize, usize, usize) {
        (self.literal_length(), self.depth(), self.star_height())
    }

    /// The constant term c(E): the coefficient of the empty word, computed
    /// syntactically.  Fails on invalid expressions, i.e. when some starred
    /// subexpression has a non-starable constant term.
    pub fn constant_term(&self) -> Result<Weight> {
        match &*self.node {
            Node::Zero => Ok(Weight::zero(self.tag)),
            Node::One => Ok(Weight::one(self.tag)),
            Node::Atom(_) => Ok(Weight::zero(self.tag)),
            Node::Sum(l, r) => l.constant_term()?.add(&r.constant_term()?),
            Node::Prod(l, r) => l.constant_term()?.mul(&r.constant_term()?),
            Node::Star(e) => {
                let c = e.constant_term()?;
                c.star().map_err(|_| {
                    Error::InvalidExpression(format!(
                        "constant term {c} of `{e}` is not starable in `{self}`"
                    ))
                })
            }
            Node::LWeight(k, e) => k.mul(&e.constant_term()?),
            Node::RWeight(e, k) => e.constant_term()?.mul(k),
        }
    }

    /// Check that every starred subexpression has a starable constant term.
    pub fn validate(&self) -> Result<()> {
        self.constant_term().map(|_| ())
    }

    /// Iterate over the atoms of the expression in left-to-right occurrence
    /// order.
    pub fn positions(&self) -> Vec<char> {
        fn walk(e: &Expr, out: &mut Vec<char>) {
            match &*e.node {
                Node::Zero | Node::One => {}
                Node::Atom(c) => out.push(*c),
                Node::Sum(l, r) | Node::Prod(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                Node::Star(f) | Node::LWeight(_, f) | Node::RWeight(f, _) => walk(f, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Display-level simplification with the natural identities together
    /// with idempotency, double star, and the unfolding identity:
    /// `E+E → E`, `E** → E*`, `1+EE* → E*`, `1+E*E → E*`,
    /// `X+YY*X → Y*X` and `X+XY*Y → XY*`.
    ///
    /// This is never applied inside derivation or derived-term computation.
    pub fn simplify_natural(&self) -> Expr {
        let e = match &*self.node {
            Node::Zero | Node::One | Node::Atom(_) => self.clone(),
            Node::Sum(l, r) => l.simplify_natural().sum(r.simplify_natural()),
            Node::Prod(l, r) => l.simplify_natural().prod(r.simplify_natural()),
            Node::Star(f) => f.simplify_natural().star(),
            Node::LWeight(k, f) => f.simplify_natural().lweight(k.clone()),
            Node::RWeight(f, k) => f.simplify_natural().rweight(k.clone()),
        };
        match simplify_root(&e) {
            Some(e2) => e2.simplify_natural(),
            None => e,
        }
    }

    /// Parse helper re-exported as a method for convenience.
    pub fn parse(text: &str, tag: SemiringTag) -> Result<Expr> {
        parse(text, tag)
    }
}

/// One root-level simplification step, or None if nothing applies.
fn simplify_root(e: &Expr) -> Option<Expr> {
    match &*e.node {
        Node::Star(f) => match &*f.node {
            // E** -> E*
            Node::Star(_) => Some(f.clone()),
            _ => None,
        },
        Node::Sum(x, r) => {
            // E+E -> E
            if x == r {
                return Some(x.clone());
            }
            if let Node::Prod(lr, x2) = &*r.node {
                if let Node::Prod(y, ystar) = &*lr.node {
                    if let Node::Star(y2) = &*ystar.node {
                        // X + YY*X -> Y*X
                        if y == y2 && x == x2 {
                            return Some(y.clone().star().prod(x.clone()));
                        }
                    }
                }
                // X + XY*Y -> XY*  (with the product associated as (XY*)Y)
                if let Node::Prod(x2b, ystar) = &*lr.node {
                    if let Node::Star(y2) = &*ystar.node {
                        if x == x2b && x2 == y2 {
                            return Some(x.clone().prod(y2.clone().star()));
                        }
                    }
                }
                // 1 + EE* -> E* and 1 + E*E -> E*
                if x.is_one() {
                    if let Node::Star(e2) = &*x2.node {
                        if lr == e2 {
                            return Some(x2.clone());
                        }
                    }
                    if let Node::Star(e2) = &*lr.node {
                        if x2 == e2 {
                            return Some(lr.clone());
                        }
                    }
                }
            }
            None
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

// Parenthesisation context, by increasing tightness: a sum position, a
// product position, the body of a left weight, the base of a postfix
// (star or right weight).
#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Ctx {
    Sum = 0,
    Prod = 1,
    LWeightBody = 2,
    Postfix = 3,
}

fn needs_parens(node: &Node, ctx: Ctx) -> bool {
    match node {
        Node::Sum(..) => ctx >= Ctx::Prod,
        Node::Prod(..) => ctx >= Ctx::LWeightBody,
        Node::LWeight(..) => ctx >= Ctx::Postfix,
        _ => false,
    }
}

fn fmt_expr(e: &Expr, ctx: Ctx, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if needs_parens(&e.node, ctx) {
        f.write_str("(")?;
        fmt_expr(e, Ctx::Sum, f)?;
        return f.write_str(")");
    }
    match &*e.node {
        Node::Zero => f.write_str("\\z"),
        Node::One => f.write_str("\\e"),
        Node::Atom(c) => write!(f, "{c}"),
        Node::Sum(l, r) => {
            fmt_expr(l, Ctx::Sum, f)?;
            f.write_str("+")?;
            fmt_expr(r, Ctx::Sum, f)
        }
        Node::Prod(l, r) => {
            fmt_expr(l, Ctx::Prod, f)?;
            fmt_expr(r, Ctx::Prod, f)
        }
        Node::Star(x) => {
            fmt_expr(x, Ctx::Postfix, f)?;
            f.write_str("*")
        }
        Node::LWeight(k, x) => {
            write!(f, "<{k}>")?;
            fmt_expr(x, Ctx::LWeightBody, f)
        }
        Node::RWeight(x, k) => {
            fmt_expr(x, Ctx::Postfix, f)?;
            write!(f, "<{k}>")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_expr(self, Ctx::Sum, f)
    }
}

// ---------------------------------------------------------------------------
// Raw (unreduced) trees
// ---------------------------------------------------------------------------

/// An unreduced expression tree, the input of [`reduce_trivial`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawExpr {
    Zero,
    One,
    Atom(char),
    Sum(Box<RawExpr>, Box<RawExpr>),
    Prod(Box<RawExpr>, Box<RawExpr>),
    Star(Box<RawExpr>),
    LWeight(Weight, Box<RawExpr>),
    RWeight(Box<RawExpr>, Weight),
}

/// Rewrite a raw tree into the (unique) normal form modulo the trivial
/// identities.  The result does not depend on the order in which the
/// rewriting is conducted.
pub fn reduce_trivial(raw: &RawExpr, tag: SemiringTag) -> Expr {
    match raw {
        RawExpr::Zero => Expr::zero(tag),
        RawExpr::One => Expr::one(tag),
        RawExpr::Atom(c) => Expr::atom(*c, tag),
        RawExpr::Sum(l, r) => reduce_trivial(l, tag).sum(reduce_trivial(r, tag)),
        RawExpr::Prod(l, r) => reduce_trivial(l, tag).prod(reduce_trivial(r, tag)),
        RawExpr::Star(e) => reduce_trivial(e, tag).star(),
        RawExpr::LWeight(k, e) => reduce_trivial(e, tag).lweight(k.clone()),
        RawExpr::RWeight(e, k) => reduce_trivial(e, tag).rweight(k.clone()),
    }
}

// ---------------------------------------------------------------------------
// Linear combinations
// ---------------------------------------------------------------------------

/// A finite formal linear combination of expressions with nonzero weights.
/// Insertion order is preserved, which keeps all downstream constructions
/// deterministic.
#[derive(Debug, Clone)]
pub struct LinComb {
    tag: SemiringTag,
    terms: IndexMap<Expr, Weight>,
}

impl PartialEq for LinComb {
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag && self.terms == other.terms
    }
}

impl Eq for LinComb {}

impl LinComb {
    pub fn new(tag: SemiringTag) -> LinComb {
        LinComb {
            tag,
            terms: IndexMap::new(),
        }
    }

    pub fn tag(&self) -> SemiringTag {
        self.tag
    }

    /// Add `⟨k⟩e` to the combination, merging and dropping zeros.
    pub fn add_term(&mut self, e: Expr, k: Weight) {
        assert_eq!(self.tag, e.tag());
        assert_eq!(self.tag, k.tag());
        if k.is_zero() || e.is_zero() {
            return;
        }
        let updated = match self.terms.get(&e) {
            Some(old) => old.add(&k).expect("same tag"),
            None => k,
        };
        if updated.is_zero() {
            self.terms.shift_remove(&e);
        } else {
            self.terms.insert(e, updated);
        }
    }

    pub fn union_add(&mut self, other: LinComb) {
        for (e, k) in other.terms {
            self.add_term(e, k);
        }
    }

    /// `k ⊙ self`: scale every coefficient on the left.
    pub fn scale_left(&self, k: &Weight) -> LinComb {
        let mut out = LinComb::new(self.tag);
        for (e, w) in &self.terms {
            out.add_term(e.clone(), k.mul(w).expect("same tag"));
        }
        out
    }

    /// `[k E]·F ≡ k (E·F)` extended by linearity.
    pub fn right_mul_expr(&self, f: &Expr) -> LinComb {
        let mut out = LinComb::new(self.tag);
        for (e, w) in &self.terms {
            out.add_term(e.clone().prod(f.clone()), w.clone());
        }
        out
    }

    /// `[k E]⟨h⟩ ≡ k (E⟨h⟩)` extended by linearity.
    pub fn right_mul_weight(&self, h: &Weight) -> LinComb {
        let mut out = LinComb::new(self.tag);
        for (e, w) in &self.terms {
            out.add_term(e.clone().rweight(h.clone()), w.clone());
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Expr, &Weight)> {
        self.terms.iter()
    }

    pub fn get(&self, e: &Expr) -> Weight {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| Weight::zero(self.tag))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Σ kᵢ·⟦Kᵢ⟧ truncated to degree `n`.
    pub fn truncated_series(&self, n: usize) -> Result<TruncatedSeries> {
        let mut alphabet: BTreeSet<char> = BTreeSet::new();
        for (e, _) in self.iter() {
            alphabet.extend(e.alphabet().iter().copied());
        }
        let alphabet: Vec<char> = alphabet.into_iter().collect();
        let mut acc = TruncatedSeries::new(self.tag, alphabet, n);
        for (e, k) in self.iter() {
            acc.add_assign(&e.truncated_series(n)?.scale_left(k)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("<zero combination>");
        }
        let mut first = true;
        for (e, k) in &self.terms {
            if !first {
                f.write_str(" ++ ")?;
            }
            first = false;
            if k.is_one() {
                write!(f, "{e}")?;
            } else {
                write!(f, "<{k}>{e}")?;
            }
        }
        Ok(())
    }
}
