//! The expression→automaton constructions (Δ-maps): standard (Glushkov)
//! automaton, star-normal form, Thompson, derivation, derived terms and the
//! derived-term automaton, the continuation map onto the derived terms, and
//! a construction whose loop complexity meets the star height.

use indexmap::IndexSet;

use crate::automaton::{Automaton, Builder, Label, StateMap};
use crate::expr::{Expr, LinComb, Node};
use crate::semiring::{SemiringTag, Weight};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Standard (Glushkov) automaton
// ---------------------------------------------------------------------------

/// An automaton whose state 0 is the unique initial state, has initial
/// weight one, and is the end of no transition.  States `1..=m` are the
/// atom positions of the originating expression in left-to-right order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardAutomaton(Automaton);

impl StandardAutomaton {
    pub fn as_automaton(&self) -> &Automaton {
        &self.0
    }

    pub fn into_automaton(self) -> Automaton {
        self.0
    }

    /// The constant term of the behaviour: the final weight of state 0.
    pub fn constant_term(&self) -> &Weight {
        self.0.final_weight(0)
    }
}

impl std::ops::Deref for StandardAutomaton {
    type Target = Automaton;

    fn deref(&self) -> &Automaton {
        &self.0
    }
}

// Block data of a standard automaton under construction: positions carry
// their letter, `first` is the J row, `follow` the F matrix, `last` the U
// column, `c` the final weight of the initial state.
#[derive(Debug, Clone)]
struct StdParts {
    tag: SemiringTag,
    letters: Vec<char>,
    first: Vec<(usize, Weight)>,
    follow: Vec<(usize, usize, Weight)>,
    last: Vec<(usize, Weight)>,
    c: Weight,
}

impl StdParts {
    fn empty(tag: SemiringTag, c: Weight) -> StdParts {
        StdParts {
            tag,
            letters: Vec::new(),
            first: Vec::new(),
            follow: Vec::new(),
            last: Vec::new(),
            c,
        }
    }

    fn atom(tag: SemiringTag, letter: char) -> StdParts {
        StdParts {
            tag,
            letters: vec![letter],
            first: vec![(1, Weight::one(tag))],
            follow: Vec::new(),
            last: vec![(1, Weight::one(tag))],
            c: Weight::zero(tag),
        }
    }

    fn shift(&self, by: usize) -> StdParts {
        StdParts {
            tag: self.tag,
            letters: self.letters.clone(),
            first: self
                .first
                .iter()
                .map(|(p, w)| (p + by, w.clone()))
                .collect(),
            follow: self
                .follow
                .iter()
                .map(|(p, q, w)| (p + by, q + by, w.clone()))
                .collect(),
            last: self.last.iter().map(|(p, w)| (p + by, w.clone())).collect(),
            c: self.c.clone(),
        }
    }

    fn sum(self, other: StdParts) -> Result<StdParts> {
        let m = self.letters.len();
        let other = other.shift(m);
        let mut letters = self.letters;
        letters.extend(other.letters.iter().copied());
        let mut first = self.first;
        first.extend(other.first);
        let mut follow = self.follow;
        follow.extend(other.follow);
        let mut last = self.last;
        last.extend(other.last);
        Ok(StdParts {
            tag: self.tag,
            letters,
            first,
            follow,
            last,
            c: self.c.add(&other.c)?,
        })
    }

    fn prod(self, other: StdParts) -> Result<StdParts> {
        let m = self.letters.len();
        let other = other.shift(m);
        let mut letters = self.letters;
        letters.extend(other.letters.iter().copied());
        // J = J_A ∪ c_A·J_B
        let mut first = self.first;
        for (q, w) in &other.first {
            let scaled = self.c.mul(w)?;
            if !scaled.is_zero() {
                first.push((*q, scaled));
            }
        }
        // F = F_A ∪ U_A·J_B ∪ F_B
        let mut follow = self.follow;
        for (p, u) in &self.last {
            for (q, k) in &other.first {
                let w = u.mul(k)?;
                if !w.is_zero() {
                    follow.push((*p, *q, w));
                }
            }
        }
        follow.extend(other.follow);
        // U = U_A·d ∪ V
        let mut last = Vec::new();
        for (p, u) in &self.last {
            let w = u.mul(&other.c)?;
            if !w.is_zero() {
                last.push((*p, w));
            }
        }
        last.extend(other.last);
        Ok(StdParts {
            tag: self.tag,
            letters,
            first,
            follow,
            last,
            c: self.c.mul(&other.c)?,
        })
    }

    fn star(self) -> Result<StdParts> {
        let c_star = self.c.star()?;
        // J' = c*·J
        let mut first = Vec::new();
        for (q, w) in &self.first {
            let scaled = c_star.mul(w)?;
            if !scaled.is_zero() {
                first.push((*q, scaled));
            }
        }
        // H = U·c*·J + F
        let mut follow = self.follow;
        for (p, u) in &self.last {
            for (q, k) in &self.first {
                let w = u.mul(&c_star)?.mul(k)?;
                if !w.is_zero() {
                    follow.push((*p, *q, w));
                }
            }
        }
        // U' = U·c*
        let mut last = Vec::new();
        for (p, u) in &self.last {
            let w = u.mul(&c_star)?;
            if !w.is_zero() {
                last.push((*p, w));
            }
        }
        Ok(StdParts {
            tag: self.tag,
            letters: self.letters,
            first,
            follow,
            last,
            c: c_star,
        })
    }

    fn lweight(mut self, k: &Weight) -> Result<StdParts> {
        let mut first = Vec::new();
        for (q, w) in &self.first {
            let scaled = k.mul(w)?;
            if !scaled.is_zero() {
                first.push((*q, scaled));
            }
        }
        self.first = first;
        self.c = k.mul(&self.c)?;
        Ok(self)
    }

    fn rweight(mut self, k: &Weight) -> Result<StdParts> {
        let mut last = Vec::new();
        for (p, w) in &self.last {
            let scaled = w.mul(k)?;
            if !scaled.is_zero() {
                last.push((*p, scaled));
            }
        }
        self.last = last;
        self.c = self.c.mul(k)?;
        Ok(self)
    }
}

fn std_parts(e: &Expr) -> Result<StdParts> {
    let tag = e.tag();
    match e.node() {
        Node::Zero => Ok(StdParts::empty(tag, Weight::zero(tag))),
        Node::One => Ok(StdParts::empty(tag, Weight::one(tag))),
        Node::Atom(c) => Ok(StdParts::atom(tag, *c)),
        Node::Sum(l, r) => std_parts(l)?.sum(std_parts(r)?),
        Node::Prod(l, r) => std_parts(l)?.prod(std_parts(r)?),
        Node::Star(f) => std_parts(f)?.star().map_err(|err| match err {
            Error::NotStarable(w, tag) => Error::InvalidExpression(format!(
                "constant term {w} is not starable in {tag} at subexpression `{e}`"
            )),
            other => other,
        }),
        Node::LWeight(k, f) => std_parts(f)?.lweight(k),
        Node::RWeight(f, k) => std_parts(f)?.rweight(k),
    }
}

/// The standard automaton 𝒮_E, with ℓ(E)+1 states: 0 is initial, then the
/// atom positions in left-to-right occurrence order.
pub fn standard_automaton(e: &Expr) -> Result<StandardAutomaton> {
    let parts = std_parts(e)?;
    let tag = e.tag();
    let n = parts.letters.len() + 1;
    let mut b = Builder::new(tag, e.alphabet(), n);
    b.add_initial(0, Weight::one(tag));
    if !parts.c.is_zero() {
        b.add_final(0, parts.c.clone());
    }
    for (q, w) in &parts.first {
        b.add_edge(0, Label::Letter(parts.letters[q - 1]), w.clone(), *q);
    }
    for (p, q, w) in &parts.follow {
        b.add_edge(*p, Label::Letter(parts.letters[q - 1]), w.clone(), *q);
    }
    for (p, w) in &parts.last {
        b.add_final(*p, w.clone());
    }
    Ok(StandardAutomaton(b.build()?))
}

// ---------------------------------------------------------------------------
// Star-normal form
// ---------------------------------------------------------------------------

/// Is every starred subexpression of constant term 𝟬?
pub fn is_star_normal(e: &Expr) -> bool {
    match e.node() {
        Node::Zero | Node::One | Node::Atom(_) => true,
        Node::Sum(l, r) | Node::Prod(l, r) => is_star_normal(l) && is_star_normal(r),
        Node::Star(f) => {
            is_star_normal(f) && f.constant_term().map(|c| c.is_zero()).unwrap_or(false)
        }
        Node::LWeight(_, f) | Node::RWeight(f, _) => is_star_normal(f),
    }
}

fn bool_constant(e: &Expr) -> bool {
    !e.constant_term()
        .expect("Boolean constant terms always exist")
        .is_zero()
}

// the ° operator: °E denotes ⟦E⟧ ∖ ε with S_{(°E)*} = S_{E*}
fn snf_ring(e: &Expr) -> Expr {
    match e.node() {
        Node::Zero | Node::One => Expr::zero(e.tag()),
        Node::Atom(_) => e.clone(),
        Node::Sum(l, r) => snf_ring(l).sum(snf_ring(r)),
        Node::Prod(l, r) => {
            if bool_constant(l) && bool_constant(r) {
                snf_ring(l).sum(snf_ring(r))
            } else {
                snf(l).prod(snf(r))
            }
        }
        Node::Star(f) => snf_ring(f),
        Node::LWeight(..) | Node::RWeight(..) => {
            unreachable!("star-normal form is Boolean-only")
        }
    }
}

fn snf(e: &Expr) -> Expr {
    match e.node() {
        Node::Zero | Node::One | Node::Atom(_) => e.clone(),
        Node::Sum(l, r) => snf(l).sum(snf(r)),
        Node::Prod(l, r) => snf(l).prod(snf(r)),
        Node::Star(f) => snf_ring(f).star(),
        Node::LWeight(..) | Node::RWeight(..) => {
            unreachable!("star-normal form is Boolean-only")
        }
    }
}

/// The star-normal form E′ of a Boolean expression: E′ is in SNF, denotes
/// the same language, and S_{E′} is the very same automaton as S_E.
pub fn star_normal_form(e: &Expr) -> Result<Expr> {
    if e.tag() != SemiringTag::B {
        return Err(Error::NonBoolean(e.tag()));
    }
    Ok(snf(e).with_alphabet(e.alphabet()))
}

// ---------------------------------------------------------------------------
// Thompson construction
// ---------------------------------------------------------------------------

struct ThompsonBuilder {
    next: usize,
    edges: Vec<(usize, Label, usize)>,
}

impl ThompsonBuilder {
    fn fresh(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    // returns (initial, final); states are allocated children-first so the
    // numbering is the post-order of the syntax tree
    fn build(&mut self, e: &Expr) -> (usize, usize) {
        match e.node() {
            Node::Zero => {
                let i = self.fresh();
                let t = self.fresh();
                (i, t)
            }
            Node::One => {
                let i = self.fresh();
                let t = self.fresh();
                self.edges.push((i, Label::Eps, t));
                (i, t)
            }
            Node::Atom(c) => {
                let i = self.fresh();
                let t = self.fresh();
                self.edges.push((i, Label::Letter(*c), t));
                (i, t)
            }
            Node::Sum(l, r) => {
                let (li, lt) = self.build(l);
                let (ri, rt) = self.build(r);
                let i = self.fresh();
                let t = self.fresh();
                self.edges.push((i, Label::Eps, li));
                self.edges.push((i, Label::Eps, ri));
                self.edges.push((lt, Label::Eps, t));
                self.edges.push((rt, Label::Eps, t));
                (i, t)
            }
            Node::Prod(l, r) => {
                let (li, lt) = self.build(l);
                let (ri, rt) = self.build(r);
                self.edges.push((lt, Label::Eps, ri));
                (li, rt)
            }
            Node::Star(f) => {
                let (fi, ft) = self.build(f);
                let i = self.fresh();
                let t = self.fresh();
                self.edges.push((i, Label::Eps, fi));
                self.edges.push((ft, Label::Eps, t));
                self.edges.push((i, Label::Eps, t));
                self.edges.push((ft, Label::Eps, fi));
                (i, t)
            }
            Node::LWeight(..) | Node::RWeight(..) => {
                unreachable!("Thompson construction is Boolean-only")
            }
        }
    }
}

/// Thompson's construction: an ε-automaton with a unique initial and a
/// unique final state whose backward closure is the standard automaton.
pub fn thompson(e: &Expr) -> Result<Automaton> {
    if e.tag() != SemiringTag::B {
        return Err(Error::NonBoolean(e.tag()));
    }
    let mut tb = ThompsonBuilder {
        next: 0,
        edges: Vec::new(),
    };
    let (i, t) = tb.build(e);
    let one = Weight::one(SemiringTag::B);
    let mut b = Builder::new(SemiringTag::B, e.alphabet(), tb.next).allow_eps();
    b.add_initial(i, one.clone());
    b.add_final(t, one.clone());
    for (src, label, dst) in tb.edges {
        b.add_edge(src, label, one.clone(), dst);
    }
    b.build()
}

// ---------------------------------------------------------------------------
// Derivation
// ---------------------------------------------------------------------------

/// ∂_a E: the derivation of E with respect to the letter `a`, a linear
/// combination of expressions.  Every operation is performed modulo the
/// trivial identities only.
pub fn derive(e: &Expr, a: char) -> Result<LinComb> {
    let tag = e.tag();
    let mut out = LinComb::new(tag);
    match e.node() {
        Node::Zero | Node::One => {}
        Node::Atom(c) => {
            if *c == a {
                out.add_term(Expr::one(tag), Weight::one(tag));
            }
        }
        Node::Sum(l, r) => {
            out = derive(l, a)?;
            out.union_add(derive(r, a)?);
        }
        Node::Prod(l, r) => {
            out = derive(l, a)?.right_mul_expr(r);
            let c = l.constant_term()?;
            if !c.is_zero() {
                out.union_add(derive(r, a)?.scale_left(&c));
            }
        }
        Node::Star(f) => {
            let c = f.constant_term()?;
            let c_star = c.star().map_err(|_| {
                Error::InvalidExpression(format!(
                    "constant term {c} is not starable at subexpression `{e}`"
                ))
            })?;
            out = derive(f, a)?.right_mul_expr(e).scale_left(&c_star);
        }
        Node::LWeight(k, f) => out = derive(f, a)?.scale_left(k),
        Node::RWeight(f, k) => out = derive(f, a)?.right_mul_weight(k),
    }
    Ok(out)
}

/// ∂_u E for a nonempty word u, by ∂_{ua} = ∂_a ∘ ∂_u extended additively.
pub fn derive_word(e: &Expr, word: &str) -> Result<LinComb> {
    let mut letters = word.chars();
    let first = letters.next().ok_or(Error::EmptyWord)?;
    let mut comb = derive(e, first)?;
    for a in letters {
        let mut next = LinComb::new(e.tag());
        for (k_expr, k) in comb.iter() {
            next.union_add(derive(k_expr, a)?.scale_left(k));
        }
        comb = next;
    }
    Ok(comb)
}

/// D(E) = TD(E) ∪ {E}: the derived terms, computed purely syntactically
/// (no derivation involved), E first.  |D(E)| ≤ ℓ(E)+1.
pub fn derived_terms(e: &Expr) -> Vec<Expr> {
    fn true_derived(e: &Expr, out: &mut IndexSet<Expr>) {
        match e.node() {
            Node::Zero | Node::One => {}
            Node::Atom(_) => {
                out.insert(Expr::one(e.tag()));
            }
            Node::Sum(l, r) => {
                true_derived(l, out);
                true_derived(r, out);
            }
            Node::Prod(l, r) => {
                let mut left = IndexSet::new();
                true_derived(l, &mut left);
                for k in left {
                    out.insert(k.prod(r.clone()));
                }
                true_derived(r, out);
            }
            Node::Star(f) => {
                let mut inner = IndexSet::new();
                true_derived(f, &mut inner);
                for k in inner {
                    out.insert(k.prod(e.clone()));
                }
            }
            Node::LWeight(_, f) => true_derived(f, out),
            Node::RWeight(f, k) => {
                let mut inner = IndexSet::new();
                true_derived(f, &mut inner);
                for t in inner {
                    out.insert(t.rweight(k.clone()));
                }
            }
        }
    }
    let mut set: IndexSet<Expr> = IndexSet::new();
    set.insert(e.clone());
    true_derived(e, &mut set);
    set.into_iter().collect()
}

/// The derived-term automaton 𝒜_E: states are D(E) (present even when
/// unreachable by derivation), transition weights are the coefficients of
/// the derivations, the initial state is E, finals carry the constant
/// terms.  Returns the automaton together with the state labels.
pub fn derived_term_automaton(e: &Expr) -> Result<(Automaton, Vec<Expr>)> {
    e.validate()?;
    let tag = e.tag();
    let terms = derived_terms(e);
    let index = |x: &Expr| -> usize {
        terms
            .iter()
            .position(|t| t == x)
            .expect("derivation stays within the derived terms")
    };
    let mut b = Builder::new(tag, e.alphabet(), terms.len());
    b.add_initial(0, Weight::one(tag));
    for (i, term) in terms.iter().enumerate() {
        let c = term.constant_term()?;
        if !c.is_zero() {
            b.add_final(i, c);
        }
        for &a in e.alphabet() {
            for (target, w) in derive(term, a)?.iter() {
                b.add_edge(i, Label::Letter(a), w.clone(), index(target));
            }
        }
    }
    Ok((b.build()?, terms))
}

// ---------------------------------------------------------------------------
// Continuation map (standard → derived-term quotient)
// ---------------------------------------------------------------------------

/// The continuations of the atom positions of E, in position order; entry 0
/// is E itself.  The induced map sends the states of 𝒮_E onto D(E) and is a
/// quotient morphism (an Out-morphism in the weighted case).
pub fn continuation_map(e: &Expr) -> Result<Vec<Expr>> {
    e.validate()?;
    fn walk(e: &Expr, out: &mut Vec<Expr>) {
        match e.node() {
            Node::Zero | Node::One => {}
            Node::Atom(_) => out.push(Expr::one(e.tag())),
            Node::Sum(l, r) => {
                walk(l, out);
                walk(r, out);
            }
            Node::Prod(l, r) => {
                let start = out.len();
                walk(l, out);
                for c in &mut out[start..] {
                    let owned = std::mem::replace(c, Expr::zero(e.tag()));
                    *c = owned.prod(r.clone());
                }
                walk(r, out);
            }
            Node::Star(f) => {
                let start = out.len();
                walk(f, out);
                for c in &mut out[start..] {
                    let owned = std::mem::replace(c, Expr::zero(e.tag()));
                    *c = owned.prod(e.clone());
                }
            }
            Node::LWeight(_, f) => walk(f, out),
            Node::RWeight(f, k) => {
                let start = out.len();
                walk(f, out);
                for c in &mut out[start..] {
                    let owned = std::mem::replace(c, Expr::zero(e.tag()));
                    *c = owned.rweight(k.clone());
                }
            }
        }
    }
    let mut out = vec![e.clone()];
    walk(e, &mut out);
    Ok(out)
}

/// The [`StateMap`] from 𝒮_E onto 𝒟_E induced by [`continuation_map`].
pub fn continuation_state_map(e: &Expr) -> Result<(StateMap, Vec<Expr>, Vec<Expr>)> {
    let continuations = continuation_map(e)?;
    let terms = derived_terms(e);
    let map = continuations
        .iter()
        .map(|c| {
            terms
                .iter()
                .position(|t| t == c)
                .ok_or_else(|| Error::Invalid(format!("continuation `{c}` is not a derived term")))
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok((StateMap(map), continuations, terms))
}

// ---------------------------------------------------------------------------
// Loop-complexity-optimal construction
// ---------------------------------------------------------------------------

// Boolean standard automaton in first/follow/last form, for the star-height
// matching construction.
#[derive(Debug, Clone)]
struct BoolStd {
    m: usize,
    first: Vec<(char, usize)>,
    follow: Vec<(usize, char, usize)>,
    last: Vec<usize>,
    c: bool,
}

impl BoolStd {
    fn of_expr_leaf(e: &Expr) -> BoolStd {
        match e.node() {
            Node::Zero => BoolStd {
                m: 0,
                first: vec![],
                follow: vec![],
                last: vec![],
                c: false,
            },
            Node::One => BoolStd {
                m: 0,
                first: vec![],
                follow: vec![],
                last: vec![],
                c: true,
            },
            Node::Atom(a) => BoolStd {
                m: 1,
                first: vec![(*a, 1)],
                follow: vec![],
                last: vec![1],
                c: false,
            },
            _ => unreachable!("leaf expected"),
        }
    }

    fn shift(&self, by: usize) -> BoolStd {
        BoolStd {
            m: self.m,
            first: self.first.iter().map(|&(a, q)| (a, q + by)).collect(),
            follow: self
                .follow
                .iter()
                .map(|&(p, a, q)| (p + by, a, q + by))
                .collect(),
            last: self.last.iter().map(|&p| p + by).collect(),
            c: self.c,
        }
    }

    fn sum(self, other: BoolStd) -> BoolStd {
        let m = self.m + other.m;
        let other = other.shift(self.m);
        let mut first = self.first;
        first.extend(other.first);
        let mut follow = self.follow;
        follow.extend(other.follow);
        let mut last = self.last;
        last.extend(other.last);
        BoolStd {
            m,
            first,
            follow,
            last,
            c: self.c || other.c,
        }
    }

    fn prod(self, other: BoolStd) -> BoolStd {
        let m = self.m + other.m;
        let other = other.shift(self.m);
        let mut first = self.first;
        if self.c {
            first.extend(other.first.iter().copied());
        }
        let mut follow = self.follow;
        for &p in &self.last {
            for &(a, q) in &other.first {
                follow.push((p, a, q));
            }
        }
        follow.extend(other.follow);
        let mut last = Vec::new();
        if other.c {
            last.extend(self.last.iter().copied());
        }
        last.extend(other.last);
        BoolStd {
            m,
            first,
            follow,
            last,
            c: self.c && other.c,
        }
    }

    fn star(self) -> BoolStd {
        let mut follow = self.follow;
        for &p in &self.last {
            for &(a, q) in &self.first {
                follow.push((p, a, q));
            }
        }
        BoolStd {
            m: self.m,
            first: self.first,
            follow,
            last: self.last,
            c: true,
        }
    }

    // drop the finality of the initial state
    fn proper(mut self) -> BoolStd {
        self.c = false;
        self
    }

    // normalised variant: one fresh final state t (the new greatest state)
    // that is the origin of no transition; ε is dropped.
    fn normalised_proper(&self) -> BoolStd {
        let t = self.m + 1;
        let mut first = self.first.clone();
        for &(a, q) in &self.first {
            if self.last.contains(&q) {
                first.push((a, t));
            }
        }
        let mut follow = self.follow.clone();
        for &(p, a, q) in &self.follow {
            if self.last.contains(&q) {
                follow.push((p, a, t));
            }
        }
        BoolStd {
            m: t,
            first,
            follow,
            last: vec![t],
            c: false,
        }
    }

    // the star construction through the normalised automaton:
    // ((N(A))₀ · A₀)* with the cut vertex t made final
    fn eggan_star(self) -> BoolStd {
        let n0 = self.normalised_proper();
        let cut = n0.m; // index of t inside the product's first factor
        let a0 = self.proper();
        let starred = n0.prod(a0).star();
        let mut last = starred.last;
        last.push(cut);
        last.sort_unstable();
        last.dedup();
        BoolStd { last, ..starred }
    }

    fn into_automaton(self, alphabet: &[char]) -> Result<Automaton> {
        let one = Weight::one(SemiringTag::B);
        let mut b = Builder::new(SemiringTag::B, alphabet, self.m + 1);
        b.add_initial(0, one.clone());
        if self.c {
            b.add_final(0, one.clone());
        }
        for &(a, q) in &self.first {
            b.add_edge(0, Label::Letter(a), one.clone(), q);
        }
        for &(p, a, q) in &self.follow {
            b.add_edge(p, Label::Letter(a), one.clone(), q);
        }
        for &p in &self.last {
            b.add_final(p, one.clone());
        }
        b.build()
    }
}

fn eggan_rec(e: &Expr) -> BoolStd {
    match e.node() {
        Node::Zero | Node::One | Node::Atom(_) => BoolStd::of_expr_leaf(e),
        Node::Sum(l, r) => eggan_rec(l).sum(eggan_rec(r)),
        Node::Prod(l, r) => eggan_rec(l).prod(eggan_rec(r)),
        Node::Star(f) => {
            let inner = eggan_rec(f);
            if f.literal_length() == 0 {
                // degenerate star: ⟦F⟧ ⊆ {ε}; the plain standard star keeps
                // the language right, the complexity simply stays below h
                inner.star()
            } else {
                inner.eggan_star()
            }
        }
        Node::LWeight(..) | Node::RWeight(..) => {
            unreachable!("the construction is Boolean-only")
        }
    }
}

/// An automaton equivalent to E whose loop complexity is at most h(E), with
/// equality whenever every starred subexpression denotes at least one
/// nonempty word.  Sums and products use the standard operations (which
/// take the max of the complexities); stars go through the normalised
/// double-copy construction, which adds exactly one to the complexity.
pub fn eggan_automaton(e: &Expr) -> Result<Automaton> {
    if e.tag() != SemiringTag::B {
        return Err(Error::NonBoolean(e.tag()));
    }
    eggan_rec(e).into_automaton(e.alphabet())
}
