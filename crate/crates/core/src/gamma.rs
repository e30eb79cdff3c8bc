//! The four automaton→expression algorithms (Γ-maps), Boolean and weighted.
//!
//! All four apply only the trivial identities while building their output,
//! and all four are deterministic: sources and targets of an eliminated
//! state are processed in ascending state index and sums are assembled
//! left-to-right in that order, so results are byte-reproducible and the
//! state-elimination / system-solution outputs coincide *as syntax trees*.
//!
//! In the weighted lift, initial and final weights enter as `⟨I_p⟩𝟭` and
//! `⟨T_p⟩𝟭` labels on the fresh states' transitions; the trivial identities
//! immediately fuse them into the adjacent products, so weights surface as
//! `⟨k⟩` prefixes and suffixes.  Loop labels built during elimination always
//! have zero constant term, hence their stars are valid in every semiring.

use std::collections::BTreeMap;

use crate::automaton::{Automaton, Label, Order};
use crate::expr::Expr;
use crate::{Error, Result};

/// A generalized automaton whose edge labels are expressions, plus the two
/// fresh states `i` and `t` used by the state-elimination method: `i` has
/// no incoming and `t` no outgoing transitions.
///
/// Real states are `0..n`; `i` and `t` are numbered `n` and `n+1`, so they
/// sort after every real state.
#[derive(Debug, Clone)]
pub struct ExprAutomaton {
    tag: crate::semiring::SemiringTag,
    n: usize,
    labels: BTreeMap<(usize, usize), Expr>,
}

impl ExprAutomaton {
    /// Wrap an ε-free automaton: letter monomials become `⟨k⟩a` labels
    /// (parallel edges summed in alphabet order), initial and final weights
    /// become `⟨I_p⟩𝟭` / `⟨T_p⟩𝟭` transitions from `i` and to `t`.
    pub fn from_automaton(a: &Automaton) -> Result<ExprAutomaton> {
        if a.has_eps_edge() {
            return Err(Error::EpsilonPresent);
        }
        let tag = a.tag();
        let n = a.state_count();
        let (i, t) = (n, n + 1);
        let mut labels: BTreeMap<(usize, usize), Expr> = BTreeMap::new();
        let mut add = |src: usize, dst: usize, e: Expr| {
            if e.is_zero() {
                return;
            }
            let entry = labels.remove(&(src, dst));
            let new = match entry {
                Some(g) => g.sum(e),
                None => e,
            };
            labels.insert((src, dst), new);
        };
        for e in a.edges() {
            let c = match e.label {
                Label::Letter(c) => c,
                Label::Eps => unreachable!("checked above"),
            };
            add(e.src, e.dst, Expr::atom(c, tag).lweight(e.weight.clone()));
        }
        for p in 0..n {
            let iw = a.initial_weight(p);
            if !iw.is_zero() {
                add(i, p, Expr::one(tag).lweight(iw.clone()));
            }
            let fw = a.final_weight(p);
            if !fw.is_zero() {
                add(p, t, Expr::one(tag).lweight(fw.clone()));
            }
        }
        Ok(ExprAutomaton { tag, n, labels })
    }

    pub fn label(&self, src: usize, dst: usize) -> Option<&Expr> {
        self.labels.get(&(src, dst))
    }

    /// Suppress state `q`: every pair of an incoming transition `K` (from
    /// `p`) and an outgoing transition `H` (to `r`) contributes the new
    /// label `G + K L* H`, where `L` is the loop on `q` and `G` the
    /// previous label of `(p, r)`.
    pub fn eliminate(&mut self, q: usize) {
        assert!(q < self.n, "only real states are eliminated");
        let loop_label = self.labels.remove(&(q, q));
        let star = loop_label.map(Expr::star);
        let mut ins: Vec<(usize, Expr)> = Vec::new();
        let mut outs: Vec<(usize, Expr)> = Vec::new();
        let keys: Vec<(usize, usize)> = self.labels.keys().copied().collect();
        for (src, dst) in keys {
            if dst == q {
                ins.push((src, self.labels.remove(&(src, dst)).unwrap()));
            } else if src == q {
                outs.push((dst, self.labels.remove(&(src, dst)).unwrap()));
            }
        }
        // keys are sorted by (src, dst), so `ins` is already ascending in
        // the source and `outs` in the destination
        for (p, k) in &ins {
            let kl = match &star {
                Some(s) => k.clone().prod(s.clone()),
                None => k.clone(),
            };
            for (r, h) in &outs {
                let term = kl.clone().prod(h.clone());
                let entry = self.labels.remove(&(*p, *r));
                let new = match entry {
                    Some(g) => g.sum(term),
                    None => term,
                };
                self.labels.insert((*p, *r), new);
            }
        }
    }

    /// The label of `i → t` once every real state is gone (𝟬 if none).
    pub fn result(&self) -> Expr {
        self.labels
            .get(&(self.n, self.n + 1))
            .cloned()
            .unwrap_or_else(|| Expr::zero(self.tag))
    }
}

/// Brzozowski–McCluskey state elimination in the order ω.
pub fn state_elimination(a: &Automaton, order: &Order) -> Result<Expr> {
    if order.as_slice().len() != a.state_count() {
        return Err(Error::Invalid("order does not cover the states".into()));
    }
    let mut ea = ExprAutomaton::from_automaton(a)?;
    for &q in order.as_slice() {
        ea.eliminate(q);
    }
    Ok(ea.result())
}

// ---------------------------------------------------------------------------
// System solution
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct Equation {
    coeffs: BTreeMap<usize, Expr>,
    konst: Expr,
}

impl Equation {
    fn substitute(&mut self, q: usize, solved: &Equation, star: &Option<Expr>) {
        let k = match self.coeffs.remove(&q) {
            Some(k) => k,
            None => return,
        };
        let kl = match star {
            Some(s) => k.prod(s.clone()),
            None => k,
        };
        for (r, f) in &solved.coeffs {
            let term = kl.clone().prod(f.clone());
            let entry = self.coeffs.remove(r);
            let new = match entry {
                Some(g) => g.sum(term),
                None => term,
            };
            if !new.is_zero() {
                self.coeffs.insert(*r, new);
            }
        }
        if !solved.konst.is_zero() {
            let term = kl.prod(solved.konst.clone());
            let prev = std::mem::replace(&mut self.konst, Expr::zero(term.tag()));
            self.konst = prev.sum(term);
        }
    }
}

/// Solve the linear system `L_p = Σ_q E_{p,q} L_q + T_p·𝟭` by successive
/// elimination of the unknowns (Arden's lemma), in the order ω.  The result
/// is the same syntax tree as [`state_elimination`].
pub fn system_solution(a: &Automaton, order: &Order) -> Result<Expr> {
    if a.has_eps_edge() {
        return Err(Error::EpsilonPresent);
    }
    if order.as_slice().len() != a.state_count() {
        return Err(Error::Invalid("order does not cover the states".into()));
    }
    let tag = a.tag();
    let n = a.state_count();
    let mut eqs: Vec<Option<Equation>> = (0..n)
        .map(|p| {
            Some(Equation {
                coeffs: BTreeMap::new(),
                konst: Expr::one(tag).lweight(a.final_weight(p).clone()),
            })
        })
        .collect();
    for e in a.edges() {
        let c = match e.label {
            Label::Letter(c) => c,
            Label::Eps => unreachable!("checked above"),
        };
        let mono = Expr::atom(c, tag).lweight(e.weight.clone());
        let eq = eqs[e.src].as_mut().unwrap();
        let entry = eq.coeffs.remove(&e.dst);
        let new = match entry {
            Some(g) => g.sum(mono),
            None => mono,
        };
        eq.coeffs.insert(e.dst, new);
    }
    let mut behaviour = Equation {
        coeffs: BTreeMap::new(),
        konst: Expr::zero(tag),
    };
    for p in 0..n {
        let iw = a.initial_weight(p);
        if !iw.is_zero() {
            behaviour
                .coeffs
                .insert(p, Expr::one(tag).lweight(iw.clone()));
        }
    }
    for &q in order.as_slice() {
        let mut solved = eqs[q].take().expect("each state eliminated once");
        let star = solved.coeffs.remove(&q).map(Expr::star);
        for p in 0..n {
            if let Some(eq) = eqs[p].as_mut() {
                eq.substitute(q, &solved, &star);
            }
        }
        behaviour.substitute(q, &solved, &star);
    }
    Ok(behaviour.konst)
}

// ---------------------------------------------------------------------------
// McNaughton–Yamada
// ---------------------------------------------------------------------------

/// Matrices of expressions indexed by the automaton's states.
pub type ExprMatrix = Vec<Vec<Expr>>;

/// Output of the McNaughton–Yamada algorithm: the matrices M⁽⁰⁾ … M⁽ⁿ⁾, the
/// finished matrix (𝟭 added on the diagonal), and the I–T aggregate.
#[derive(Debug, Clone)]
pub struct MnyResult {
    pub stages: Vec<ExprMatrix>,
    pub matrix: ExprMatrix,
    pub aggregate: Expr,
}

fn transition_matrix(a: &Automaton) -> Result<ExprMatrix> {
    if a.has_eps_edge() {
        return Err(Error::EpsilonPresent);
    }
    let tag = a.tag();
    let n = a.state_count();
    let mut m: ExprMatrix = vec![vec![Expr::zero(tag); n]; n];
    for e in a.edges() {
        let c = match e.label {
            Label::Letter(c) => c,
            Label::Eps => unreachable!("checked above"),
        };
        let mono = Expr::atom(c, tag).lweight(e.weight.clone());
        let cur = std::mem::replace(&mut m[e.src][e.dst], Expr::zero(tag));
        m[e.src][e.dst] = cur.sum(mono);
    }
    Ok(m)
}

/// Aggregate Σ_{p,q} ⟨I_p⟩·M_{p,q}·⟨T_q⟩ over nonzero initial/final pairs,
/// in ascending (p, q) order.
fn aggregate(a: &Automaton, m: &ExprMatrix) -> Expr {
    let tag = a.tag();
    let mut acc = Expr::zero(tag);
    for p in 0..a.state_count() {
        let iw = a.initial_weight(p);
        if iw.is_zero() {
            continue;
        }
        for q in 0..a.state_count() {
            let tw = a.final_weight(q);
            if tw.is_zero() {
                continue;
            }
            let term = m[p][q].clone().rweight(tw.clone()).lweight(iw.clone());
            acc = acc.sum(term);
        }
    }
    acc
}

/// The McNaughton–Yamada algorithm: group paths by the highest rank of
/// their intermediate states.  Stage k refines every entry with
/// `M(k)_{p,q} = M(k-1)_{p,q} + M(k-1)_{p,s}·(M(k-1)_{s,s})*·M(k-1)_{s,q}`
/// where s is the k-th state of ω; the finish adds 𝟭 on the diagonal.
pub fn mcnaughton_yamada(a: &Automaton, order: &Order) -> Result<MnyResult> {
    if order.as_slice().len() != a.state_count() {
        return Err(Error::Invalid("order does not cover the states".into()));
    }
    let tag = a.tag();
    let n = a.state_count();
    let mut stages = Vec::with_capacity(n + 1);
    let mut m = transition_matrix(a)?;
    stages.push(m.clone());
    for &s in order.as_slice() {
        let star = m[s][s].clone().star();
        let mut next = m.clone();
        for p in 0..n {
            for q in 0..n {
                let through = m[p][s].clone().prod(star.clone()).prod(m[s][q].clone());
                let cur = std::mem::replace(&mut next[p][q], Expr::zero(tag));
                next[p][q] = cur.sum(through);
            }
        }
        m = next;
        stages.push(m.clone());
    }
    let mut matrix = m;
    for (p, row) in matrix.iter_mut().enumerate() {
        let cur = std::mem::replace(&mut row[p], Expr::zero(tag));
        row[p] = cur.sum(Expr::one(tag));
    }
    let aggregate = aggregate(a, &matrix);
    Ok(MnyResult {
        stages,
        matrix,
        aggregate,
    })
}

// ---------------------------------------------------------------------------
// Recursive (block-decomposition) method
// ---------------------------------------------------------------------------

/// A binary tree whose leaves partition the states into singletons; it
/// drives the block decomposition of the recursive method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecursiveDivision {
    Leaf(usize),
    Split(Box<RecursiveDivision>, Box<RecursiveDivision>),
}

impl RecursiveDivision {
    /// Balanced split by index midpoint over `0..n`.
    pub fn balanced(n: usize) -> RecursiveDivision {
        fn rec(lo: usize, hi: usize) -> RecursiveDivision {
            if hi - lo == 1 {
                RecursiveDivision::Leaf(lo)
            } else {
                let mid = lo + (hi - lo) / 2;
                RecursiveDivision::Split(Box::new(rec(lo, mid)), Box::new(rec(mid, hi)))
            }
        }
        assert!(n > 0, "no division of an empty state set");
        rec(0, n)
    }

    /// In-order leaf sequence.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        fn rec(d: &RecursiveDivision, out: &mut Vec<usize>) {
            match d {
                RecursiveDivision::Leaf(s) => out.push(*s),
                RecursiveDivision::Split(l, r) => {
                    rec(l, out);
                    rec(r, out);
                }
            }
        }
        rec(self, &mut out);
        out
    }

    /// Check the leaves are a permutation of `0..n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let leaves = self.leaves();
        let mut seen = vec![false; n];
        if leaves.len() != n {
            return Err(Error::Invalid(format!(
                "division has {} leaves, automaton has {n} states",
                leaves.len()
            )));
        }
        for s in leaves {
            if s >= n || seen[s] {
                return Err(Error::Invalid(
                    "division is not a partition of the states".into(),
                ));
            }
            seen[s] = true;
        }
        Ok(())
    }

    /// Parse a nested-parentheses partition such as `((0,1),(2,3))`; the
    /// automaton resolves state names.
    pub fn parse(text: &str, a: &Automaton) -> Result<RecursiveDivision> {
        struct P<'a> {
            text: &'a str,
            pos: usize,
        }
        impl<'a> P<'a> {
            fn skip_ws(&mut self) {
                while self.text[self.pos..].starts_with(char::is_whitespace) {
                    self.pos += 1;
                }
            }
            fn parse_div(&mut self, a: &Automaton) -> Result<RecursiveDivision> {
                self.skip_ws();
                if self.text[self.pos..].starts_with('(') {
                    self.pos += 1;
                    let l = self.parse_div(a)?;
                    self.skip_ws();
                    if !self.text[self.pos..].starts_with(',') {
                        return Err(Error::Invalid("division: expected ','".into()));
                    }
                    self.pos += 1;
                    let r = self.parse_div(a)?;
                    self.skip_ws();
                    if !self.text[self.pos..].starts_with(')') {
                        return Err(Error::Invalid("division: expected ')'".into()));
                    }
                    self.pos += 1;
                    Ok(RecursiveDivision::Split(Box::new(l), Box::new(r)))
                } else {
                    let start = self.pos;
                    while self.pos < self.text.len()
                        && !self.text[self.pos..].starts_with([',', '(', ')'])
                        && !self.text[self.pos..].starts_with(char::is_whitespace)
                    {
                        self.pos += 1;
                    }
                    if start == self.pos {
                        return Err(Error::Invalid("division: expected a state".into()));
                    }
                    Ok(RecursiveDivision::Leaf(
                        a.resolve_state(&self.text[start..self.pos])?,
                    ))
                }
            }
        }
        let mut p = P { text, pos: 0 };
        let d = p.parse_div(a)?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(Error::Invalid("division: trailing input".into()));
        }
        d.validate(a.state_count())?;
        Ok(d)
    }
}

/// Output of the recursive method: a matrix denoting E* plus the aggregate.
#[derive(Debug, Clone)]
pub struct RecResult {
    pub matrix: ExprMatrix,
    pub aggregate: Expr,
}

fn mat_mul(a: &ExprMatrix, b: &ExprMatrix, tag: crate::semiring::SemiringTag) -> ExprMatrix {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Expr::zero(tag); cols]; rows];
    for i in 0..rows {
        for j in 0..cols {
            let mut acc = Expr::zero(tag);
            for (k, bk) in b.iter().enumerate().take(inner) {
                acc = acc.sum(a[i][k].clone().prod(bk[j].clone()));
            }
            out[i][j] = acc;
        }
    }
    out
}

fn mat_add(a: &ExprMatrix, b: &ExprMatrix) -> ExprMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .map(|(x, y)| x.clone().sum(y.clone()))
                .collect()
        })
        .collect()
}

fn sub_matrix(
    m: &ExprMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> ExprMatrix {
    m[rows].iter().map(|r| r[cols.clone()].to_vec()).collect()
}

fn rc_star(
    div: &RecursiveDivision,
    m: ExprMatrix,
    tag: crate::semiring::SemiringTag,
) -> ExprMatrix {
    match div {
        RecursiveDivision::Leaf(_) => vec![vec![m[0][0].clone().star()]],
        RecursiveDivision::Split(d1, d2) => {
            let k = d1.leaves().len();
            let n = m.len();
            let f = sub_matrix(&m, 0..k, 0..k);
            let g = sub_matrix(&m, 0..k, k..n);
            let h = sub_matrix(&m, k..n, 0..k);
            let kk = sub_matrix(&m, k..n, k..n);
            let f_star = rc_star(d1, f.clone(), tag);
            let k_star = rc_star(d2, kk.clone(), tag);
            // U = (F + G K' H)*, Z = (K + H F' G)*
            let u = rc_star(
                d1,
                mat_add(&f, &mat_mul(&mat_mul(&g, &k_star, tag), &h, tag)),
                tag,
            );
            let z = rc_star(
                d2,
                mat_add(&kk, &mat_mul(&mat_mul(&h, &f_star, tag), &g, tag)),
                tag,
            );
            // V = F' G Z, W = K' H U
            let v = mat_mul(&mat_mul(&f_star, &g, tag), &z, tag);
            let w = mat_mul(&mat_mul(&k_star, &h, tag), &u, tag);
            let mut out = vec![vec![Expr::zero(tag); n]; n];
            for i in 0..k {
                out[i][..k].clone_from_slice(&u[i]);
                out[i][k..].clone_from_slice(&v[i]);
            }
            for i in k..n {
                out[i][..k].clone_from_slice(&w[i - k]);
                out[i][k..].clone_from_slice(&z[i - k]);
            }
            out
        }
    }
}

/// Conway's recursive method: compute a matrix of expressions denoting E*
/// by block decomposition along the recursive division τ.
pub fn recursive_method(a: &Automaton, div: &RecursiveDivision) -> Result<RecResult> {
    div.validate(a.state_count())?;
    let tag = a.tag();
    let n = a.state_count();
    let base = transition_matrix(a)?;
    let leaves = div.leaves();
    // permute into leaf order, solve, permute back
    let mut perm = vec![vec![Expr::zero(tag); n]; n];
    for (i, &p) in leaves.iter().enumerate() {
        for (j, &q) in leaves.iter().enumerate() {
            perm[i][j] = base[p][q].clone();
        }
    }
    let solved = rc_star(div, perm, tag);
    let mut matrix = vec![vec![Expr::zero(tag); n]; n];
    for (i, &p) in leaves.iter().enumerate() {
        for (j, &q) in leaves.iter().enumerate() {
            matrix[p][q] = solved[i][j].clone();
        }
    }
    let aggregate = aggregate(a, &matrix);
    Ok(RecResult { matrix, aggregate })
}

#[cfg(test)]
mod tests;
