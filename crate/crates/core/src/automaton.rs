//! Finite weighted automata ⟨Q, A, E, I, T⟩ with proper monomial labels.
//!
//! Every transition is labelled with a letter (never a constant term) and a
//! nonzero weight; spontaneous (ε) transitions are allowed only in the
//! flagged Thompson variant, and every consumer other than the backward
//! closure requires their absence.  Parallel transitions with the same
//! (source, label, destination) are merged by weight addition at
//! construction time.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::expr::TruncatedSeries;
use crate::semiring::{SemiringTag, Weight};
use crate::{Error, Result};

/// Default state bound for the exhaustive loop-complexity recursion.
pub const LOOP_COMPLEXITY_BOUND: usize = 14;

/// Edge label: a letter of the alphabet or ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Eps,
    Letter(char),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Eps => f.write_str("@"),
            Label::Letter(c) => write!(f, "{c}"),
        }
    }
}

/// A transition `src --⟨weight⟩label--> dst`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub label: Label,
    pub weight: Weight,
    pub dst: usize,
}

/// A finite weighted automaton.  Immutable once built.
#[derive(Debug, Clone)]
pub struct Automaton {
    tag: SemiringTag,
    alphabet: Vec<char>,
    initial: Vec<Weight>,
    final_w: Vec<Weight>,
    edges: Vec<Edge>,
    eps_allowed: bool,
    names: Option<Vec<String>>,
}

impl PartialEq for Automaton {
    /// Structural equality; state names are display metadata and ignored.
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag
            && self.alphabet == other.alphabet
            && self.initial == other.initial
            && self.final_w == other.final_w
            && self.edges == other.edges
            && self.eps_allowed == other.eps_allowed
    }
}

impl Eq for Automaton {}

/// A total map from the states of one automaton to the states of another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateMap(pub Vec<usize>);

/// A permutation of the states, read as an elimination order: the first
/// entry is the smallest (eliminated first), the last is the greatest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order(Vec<usize>);

impl Order {
    pub fn new(seq: Vec<usize>, n: usize) -> Result<Order> {
        if seq.len() != n {
            return Err(Error::Invalid(format!(
                "order lists {} states, automaton has {n}",
                seq.len()
            )));
        }
        let mut seen = vec![false; n];
        for &s in &seq {
            if s >= n || seen[s] {
                return Err(Error::Invalid(format!(
                    "order is not a permutation of 0..{n}"
                )));
            }
            seen[s] = true;
        }
        Ok(Order(seq))
    }

    /// Ascending state index.
    pub fn ascending(n: usize) -> Order {
        Order((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// rank[s] = position of s in the elimination sequence.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.0.len()];
        for (i, &s) in self.0.iter().enumerate() {
            rank[s] = i;
        }
        rank
    }

    /// All n! orders on n states, in lexicographic order of the sequence.
    pub fn all(n: usize) -> Vec<Order> {
        fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Order>) {
            if rest.is_empty() {
                out.push(Order(prefix.clone()));
                return;
            }
            for i in 0..rest.len() {
                let s = rest.remove(i);
                prefix.push(s);
                rec(prefix, rest, out);
                prefix.pop();
                rest.insert(i, s);
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
        out
    }
}

/// Builder accumulating states and merged transitions.
pub struct Builder {
    tag: SemiringTag,
    alphabet: Vec<char>,
    n: usize,
    eps_allowed: bool,
    initial: BTreeMap<usize, Weight>,
    final_w: BTreeMap<usize, Weight>,
    edges: BTreeMap<(usize, Label, usize), Weight>,
    names: Option<Vec<String>>,
}

impl Builder {
    pub fn new(tag: SemiringTag, alphabet: &[char], n: usize) -> Builder {
        let mut alphabet: Vec<char> = alphabet.to_vec();
        alphabet.sort_unstable();
        alphabet.dedup();
        Builder {
            tag,
            alphabet,
            n,
            eps_allowed: false,
            initial: BTreeMap::new(),
            final_w: BTreeMap::new(),
            edges: BTreeMap::new(),
            names: None,
        }
    }

    pub fn allow_eps(mut self) -> Builder {
        self.eps_allowed = true;
        self
    }

    pub fn names(mut self, names: Vec<String>) -> Builder {
        self.names = Some(names);
        self
    }

    pub fn initial(mut self, state: usize, w: Weight) -> Builder {
        self.add_initial(state, w);
        self
    }

    pub fn add_initial(&mut self, state: usize, w: Weight) {
        let cur = self
            .initial
            .remove(&state)
            .unwrap_or_else(|| Weight::zero(self.tag));
        let sum = cur.add(&w).expect("same tag");
        if !sum.is_zero() {
            self.initial.insert(state, sum);
        }
    }

    pub fn final_state(mut self, state: usize, w: Weight) -> Builder {
        self.add_final(state, w);
        self
    }

    pub fn add_final(&mut self, state: usize, w: Weight) {
        let cur = self
            .final_w
            .remove(&state)
            .unwrap_or_else(|| Weight::zero(self.tag));
        let sum = cur.add(&w).expect("same tag");
        if !sum.is_zero() {
            self.final_w.insert(state, sum);
        }
    }

    pub fn edge(mut self, src: usize, label: Label, w: Weight, dst: usize) -> Builder {
        self.add_edge(src, label, w, dst);
        self
    }

    /// Parallel (src, label, dst) transitions merge by weight addition.
    pub fn add_edge(&mut self, src: usize, label: Label, w: Weight, dst: usize) {
        let key = (src, label, dst);
        let cur = self
            .edges
            .remove(&key)
            .unwrap_or_else(|| Weight::zero(self.tag));
        let sum = cur.add(&w).expect("same tag");
        if !sum.is_zero() {
            self.edges.insert(key, sum);
        }
    }

    pub fn build(self) -> Result<Automaton> {
        let mut initial = vec![Weight::zero(self.tag); self.n];
        let mut final_w = vec![Weight::zero(self.tag); self.n];
        let check_state = |s: usize| -> Result<()> {
            if s >= self.n {
                return Err(Error::Invalid(format!(
                    "state {s} out of range 0..{}",
                    self.n
                )));
            }
            Ok(())
        };
        for (s, w) in self.initial {
            check_state(s)?;
            initial[s] = w;
        }
        for (s, w) in self.final_w {
            check_state(s)?;
            final_w[s] = w;
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for ((src, label, dst), weight) in self.edges {
            check_state(src)?;
            check_state(dst)?;
            match label {
                Label::Eps if !self.eps_allowed => return Err(Error::EpsilonPresent),
                Label::Letter(c) if !self.alphabet.contains(&c) => {
                    return Err(Error::UnknownLetter(c))
                }
                _ => {}
            }
            edges.push(Edge {
                src,
                label,
                weight,
                dst,
            });
        }
        if let Some(names) = &self.names {
            if names.len() != self.n {
                return Err(Error::Invalid("state name list has wrong length".into()));
            }
        }
        Ok(Automaton {
            tag: self.tag,
            alphabet: self.alphabet,
            initial,
            final_w,
            edges,
            eps_allowed: self.eps_allowed,
            names: self.names,
        })
    }
}

impl Automaton {
    pub fn builder(tag: SemiringTag, alphabet: &[char], n: usize) -> Builder {
        Builder::new(tag, alphabet, n)
    }

    pub fn tag(&self) -> SemiringTag {
        self.tag
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.initial.len()
    }

    pub fn initial_weight(&self, s: usize) -> &Weight {
        &self.initial[s]
    }

    pub fn final_weight(&self, s: usize) -> &Weight {
        &self.final_w[s]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn eps_allowed(&self) -> bool {
        self.eps_allowed
    }

    pub fn has_eps_edge(&self) -> bool {
        self.edges.iter().any(|e| e.label == Label::Eps)
    }

    pub fn state_name(&self, s: usize) -> String {
        match &self.names {
            Some(names) => names[s].clone(),
            None => s.to_string(),
        }
    }

    /// Resolve a state given either its index or its name.
    pub fn resolve_state(&self, token: &str) -> Result<usize> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == token) {
                return Ok(i);
            }
        }
        match token.parse::<usize>() {
            Ok(i) if i < self.state_count() => Ok(i),
            _ => Err(Error::Invalid(format!("unknown state '{token}'"))),
        }
    }

    pub fn parse_order(&self, text: &str) -> Result<Order> {
        let seq = text
            .split(',')
            .map(|t| self.resolve_state(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        Order::new(seq, self.state_count())
    }

    fn require_eps_free(&self) -> Result<()> {
        if self.has_eps_edge() {
            Err(Error::EpsilonPresent)
        } else {
            Ok(())
        }
    }

    fn check_letter(&self, c: char) -> Result<()> {
        if self.alphabet.contains(&c) {
            Ok(())
        } else {
            Err(Error::UnknownLetter(c))
        }
    }

    /// I · μ(w₁)⋯μ(w_m) · T; for the empty word, I·T.
    pub fn eval(&self, word: &str) -> Result<Weight> {
        self.require_eps_free()?;
        let mut v = self.initial.clone();
        for c in word.chars() {
            self.check_letter(c)?;
            let mut next = vec![Weight::zero(self.tag); v.len()];
            for e in &self.edges {
                if e.label == Label::Letter(c) && !v[e.src].is_zero() {
                    let contrib = v[e.src].mul(&e.weight)?;
                    next[e.dst] = next[e.dst].add(&contrib)?;
                }
            }
            v = next;
        }
        let mut acc = Weight::zero(self.tag);
        for (p, w) in v.iter().enumerate() {
            acc = acc.add(&w.mul(&self.final_w[p])?)?;
        }
        Ok(acc)
    }

    /// ⟨⟦𝒜⟧, w⟩ for all |w| ≤ n, by matrix-power evaluation.
    pub fn truncated_behaviour(&self, n: usize) -> Result<TruncatedSeries> {
        self.require_eps_free()?;
        let mut out = TruncatedSeries::new(self.tag, self.alphabet.clone(), n);
        // depth-first over words, carrying the state vector for the prefix
        let mut stack: Vec<(String, Vec<Weight>)> = vec![(String::new(), self.initial.clone())];
        while let Some((word, v)) = stack.pop() {
            let mut acc = Weight::zero(self.tag);
            for (p, w) in v.iter().enumerate() {
                acc = acc.add(&w.mul(&self.final_w[p])?)?;
            }
            if !acc.is_zero() {
                out.add_coeff(&word, acc)?;
            }
            if word.chars().count() == n {
                continue;
            }
            for &c in &self.alphabet {
                let mut next = vec![Weight::zero(self.tag); v.len()];
                let mut all_zero = true;
                for e in &self.edges {
                    if e.label == Label::Letter(c) && !v[e.src].is_zero() {
                        let contrib = v[e.src].mul(&e.weight)?;
                        next[e.dst] = next[e.dst].add(&contrib)?;
                        all_zero = all_zero && next[e.dst].is_zero();
                    }
                }
                if !all_zero {
                    stack.push((format!("{word}{c}"), next));
                }
            }
        }
        Ok(out)
    }

    /// ε-reachability sets p ⇒*_ε q (reflexive-transitive; ε-cycles fine).
    fn eps_reach(&self) -> Vec<BTreeSet<usize>> {
        let n = self.state_count();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            if e.label == Label::Eps {
                adj[e.src].push(e.dst);
            }
        }
        (0..n)
            .map(|start| {
                let mut seen: BTreeSet<usize> = BTreeSet::new();
                let mut queue = VecDeque::from([start]);
                seen.insert(start);
                while let Some(p) = queue.pop_front() {
                    for &q in &adj[p] {
                        if seen.insert(q) {
                            queue.push_back(q);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    /// Backward closure: replaces ε-moves by direct transitions
    /// `F = {(p,a,r) : p ⇒*_ε q, (q,a,r) ∈ E}` and final states
    /// `U = {p : p ⇒*_ε q ∈ T}`.  Boolean automata only.
    pub fn backward_closure(&self) -> Result<Automaton> {
        if self.tag != SemiringTag::B {
            return Err(Error::NonBooleanEpsilon(self.tag));
        }
        if !self.has_eps_edge() {
            let mut out = self.clone();
            out.eps_allowed = false;
            return Ok(out);
        }
        let reach = self.eps_reach();
        let n = self.state_count();
        let mut b = Builder::new(self.tag, &self.alphabet, n);
        if let Some(names) = &self.names {
            b = b.names(names.clone());
        }
        for (p, w) in self.initial.iter().enumerate() {
            if !w.is_zero() {
                b.add_initial(p, w.clone());
            }
        }
        for p in 0..n {
            for &q in &reach[p] {
                if !self.final_w[q].is_zero() {
                    b.add_final(p, Weight::one(self.tag));
                }
                for e in &self.edges {
                    if e.src == q {
                        if let Label::Letter(c) = e.label {
                            b.add_edge(p, Label::Letter(c), e.weight.clone(), e.dst);
                        }
                    }
                }
            }
        }
        b.build()
    }

    fn reachable(&self, forward: bool) -> Vec<bool> {
        let n = self.state_count();
        let mut seen = vec![false; n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for p in 0..n {
            let w = if forward {
                &self.initial[p]
            } else {
                &self.final_w[p]
            };
            if !w.is_zero() {
                seen[p] = true;
                queue.push_back(p);
            }
        }
        while let Some(p) = queue.pop_front() {
            for e in &self.edges {
                let (from, to) = if forward {
                    (e.src, e.dst)
                } else {
                    (e.dst, e.src)
                };
                if from == p && !seen[to] {
                    seen[to] = true;
                    queue.push_back(to);
                }
            }
        }
        seen
    }

    /// Restrict to states accessible from a nonzero-initial state and
    /// co-accessible to a nonzero-final state.
    pub fn trim(&self) -> Automaton {
        let acc = self.reachable(true);
        let coacc = self.reachable(false);
        let keep: Vec<usize> = (0..self.state_count())
            .filter(|&p| acc[p] && coacc[p])
            .collect();
        self.restrict(&keep)
    }

    /// Restrict to the accessible part only.
    pub fn accessible(&self) -> Automaton {
        let acc = self.reachable(true);
        let keep: Vec<usize> = (0..self.state_count()).filter(|&p| acc[p]).collect();
        self.restrict(&keep)
    }

    fn restrict(&self, keep: &[usize]) -> Automaton {
        let mut index = HashMap::new();
        for (new, &old) in keep.iter().enumerate() {
            index.insert(old, new);
        }
        let mut b = Builder::new(self.tag, &self.alphabet, keep.len());
        if self.eps_allowed {
            b = b.allow_eps();
        }
        if let Some(names) = &self.names {
            b = b.names(keep.iter().map(|&old| names[old].clone()).collect());
        }
        for (new, &old) in keep.iter().enumerate() {
            if !self.initial[old].is_zero() {
                b.add_initial(new, self.initial[old].clone());
            }
            if !self.final_w[old].is_zero() {
                b.add_final(new, self.final_w[old].clone());
            }
        }
        for e in &self.edges {
            if let (Some(&s), Some(&d)) = (index.get(&e.src), index.get(&e.dst)) {
                b.add_edge(s, e.label, e.weight.clone(), d);
            }
        }
        b.build()
            .expect("restriction of a valid automaton is valid")
    }

    fn edge_weight(&self, src: usize, label: Label, dst: usize) -> Weight {
        for e in &self.edges {
            if e.src == src && e.label == label && e.dst == dst {
                return e.weight.clone();
            }
        }
        Weight::zero(self.tag)
    }

    /// Morphism / quotient check.
    ///
    /// Over B this is the literal condition list: φ(I) ⊆ I′, φ(T) ⊆ T′ and
    /// edge preservation; with `as_quotient`, additionally surjectivity,
    /// φ(I) = I′, φ⁻¹(T′) = T and the back-transfer of transitions.
    ///
    /// Over the other semirings the Out-morphism conditions are used:
    /// final weights are preserved, class-aggregated outgoing weights are
    /// preserved, and with `as_quotient` the initial weight of a class is
    /// the sum of the initial weights of its members plus surjectivity.
    /// This weighted condition set is a reconstruction (the literature
    /// defines Out-morphisms by reference); it is validated throughout the
    /// test-suite by behaviour preservation.
    pub fn check_morphism(
        &self,
        other: &Automaton,
        map: &StateMap,
        as_quotient: bool,
    ) -> Result<bool> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch(self.tag, other.tag));
        }
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        self.require_eps_free()?;
        other.require_eps_free()?;
        let n = self.state_count();
        let m = other.state_count();
        if map.0.len() != n || map.0.iter().any(|&q| q >= m) {
            return Err(Error::Invalid(
                "state map is not total into the target".into(),
            ));
        }
        let phi = &map.0;

        if self.tag == SemiringTag::B {
            // (i) and (ii)
            for p in 0..n {
                if !self.initial[p].is_zero() && other.initial[phi[p]].is_zero() {
                    return Ok(false);
                }
                if !self.final_w[p].is_zero() && other.final_w[phi[p]].is_zero() {
                    return Ok(false);
                }
            }
            // (iii)
            for e in &self.edges {
                if other.edge_weight(phi[e.src], e.label, phi[e.dst]).is_zero() {
                    return Ok(false);
                }
            }
            if !as_quotient {
                return Ok(true);
            }
            // (iv) surjectivity
            let mut hit = vec![false; m];
            for &q in phi {
                hit[q] = true;
            }
            if hit.iter().any(|h| !h) {
                return Ok(false);
            }
            // (v) φ(I) = I'
            for c in 0..m {
                if !other.initial[c].is_zero()
                    && !(0..n).any(|p| phi[p] == c && !self.initial[p].is_zero())
                {
                    return Ok(false);
                }
            }
            // (vi) φ⁻¹(T') = T
            for p in 0..n {
                if self.final_w[p].is_zero() != other.final_w[phi[p]].is_zero() {
                    return Ok(false);
                }
            }
            // (vii) back transfer
            for e in &other.edges {
                for p in 0..n {
                    if phi[p] == e.src
                        && !(0..n)
                            .any(|q| phi[q] == e.dst && !self.edge_weight(p, e.label, q).is_zero())
                    {
                        return Ok(false);
                    }
                }
            }
            return Ok(true);
        }

        // weighted Out-morphism conditions
        // (a) final weights
        for p in 0..n {
            if self.final_w[p] != other.final_w[phi[p]] {
                return Ok(false);
            }
        }
        // (b) class-aggregated outgoing weights
        for p in 0..n {
            for &a in &self.alphabet {
                let mut sums: BTreeMap<usize, Weight> = BTreeMap::new();
                for e in &self.edges {
                    if e.src == p && e.label == Label::Letter(a) {
                        let entry = sums
                            .remove(&phi[e.dst])
                            .unwrap_or_else(|| Weight::zero(self.tag));
                        sums.insert(phi[e.dst], entry.add(&e.weight)?);
                    }
                }
                for c in 0..m {
                    let lhs = sums.remove(&c).unwrap_or_else(|| Weight::zero(self.tag));
                    if lhs != other.edge_weight(phi[p], Label::Letter(a), c) {
                        return Ok(false);
                    }
                }
            }
        }
        if !as_quotient {
            return Ok(true);
        }
        // surjectivity
        let mut hit = vec![false; m];
        for &q in phi {
            hit[q] = true;
        }
        if hit.iter().any(|h| !h) {
            return Ok(false);
        }
        // (c) initial weights aggregate
        for c in 0..m {
            let mut sum = Weight::zero(self.tag);
            for p in 0..n {
                if phi[p] == c {
                    sum = sum.add(&self.initial[p])?;
                }
            }
            if sum != other.initial[c] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coarsest behaviour-preserving quotient: Moore-style backward
    /// partition refinement on (final weight, per-letter class-aggregated
    /// outgoing weights), starting from the partition by final weight.
    pub fn minimal_quotient(&self) -> (Automaton, StateMap) {
        assert!(
            !self.has_eps_edge(),
            "minimal_quotient requires an ε-free automaton"
        );
        let n = self.state_count();
        if n == 0 {
            return (self.clone(), StateMap(Vec::new()));
        }

        // classes numbered by first occurrence, scanning states in order
        let mut class: Vec<usize> = vec![0; n];
        {
            let mut seen: Vec<&Weight> = Vec::new();
            for p in 0..n {
                let w = &self.final_w[p];
                match seen.iter().position(|x| *x == w) {
                    Some(i) => class[p] = i,
                    None => {
                        class[p] = seen.len();
                        seen.push(w);
                    }
                }
            }
        }

        loop {
            type Sig = (usize, Vec<(usize, usize, Weight)>);
            let signature = |p: usize| -> Sig {
                let mut sums: BTreeMap<(usize, usize), Weight> = BTreeMap::new();
                for e in &self.edges {
                    if e.src != p {
                        continue;
                    }
                    let a = match e.label {
                        Label::Letter(c) => self.alphabet.iter().position(|&x| x == c).unwrap(),
                        Label::Eps => unreachable!("ε-free checked above"),
                    };
                    let key = (a, class[e.dst]);
                    let cur = sums.remove(&key).unwrap_or_else(|| Weight::zero(self.tag));
                    let sum = cur.add(&e.weight).expect("same tag");
                    if !sum.is_zero() {
                        sums.insert(key, sum);
                    }
                }
                (
                    class[p],
                    sums.into_iter().map(|((a, c), w)| (a, c, w)).collect(),
                )
            };
            let sigs: Vec<Sig> = (0..n).map(signature).collect();
            let mut new_class = vec![0; n];
            let mut seen: Vec<&Sig> = Vec::new();
            for p in 0..n {
                match seen.iter().position(|s| **s == sigs[p]) {
                    Some(i) => new_class[p] = i,
                    None => {
                        new_class[p] = seen.len();
                        seen.push(&sigs[p]);
                    }
                }
            }
            let stable = new_class == class;
            class = new_class;
            if stable {
                break;
            }
        }

        let m = class.iter().max().map(|c| c + 1).unwrap_or(0);
        let mut rep = vec![usize::MAX; m];
        for p in 0..n {
            if rep[class[p]] == usize::MAX {
                rep[class[p]] = p;
            }
        }
        let mut b = Builder::new(self.tag, &self.alphabet, m);
        for p in 0..n {
            if !self.initial[p].is_zero() {
                b.add_initial(class[p], self.initial[p].clone());
            }
        }
        for (c, &r) in rep.iter().enumerate() {
            if !self.final_w[r].is_zero() {
                b.add_final(c, self.final_w[r].clone());
            }
            for e in &self.edges {
                if e.src == r {
                    b.add_edge(c, e.label, e.weight.clone(), class[e.dst]);
                }
            }
        }
        let quotient = b.build().expect("quotient of a valid automaton is valid");
        (quotient, StateMap(class))
    }

    // ---------------------------------------------------------------------
    // Loop complexity and loop index
    // ---------------------------------------------------------------------

    fn plain_graph(&self) -> Vec<(usize, usize, usize)> {
        self.edges.iter().map(|e| (e.src, e.dst, 0)).collect()
    }

    /// Eggan's loop complexity, by exhaustive recursion over balls,
    /// memoized on state subsets.  Errors with [`Error::TooLarge`] above
    /// [`LOOP_COMPLEXITY_BOUND`] states.
    pub fn loop_complexity(&self) -> Result<usize> {
        self.loop_complexity_bounded(LOOP_COMPLEXITY_BOUND)
    }

    pub fn loop_complexity_bounded(&self, bound: usize) -> Result<usize> {
        let n = self.state_count();
        if n > bound {
            return Err(Error::TooLarge(n, bound));
        }
        let edges = self.plain_graph();
        let mut memo: HashMap<u64, usize> = HashMap::new();
        let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
        Ok(loop_complexity_rec(n, &edges, full, &mut memo))
    }

    /// Loop index relative to an order: like loop complexity, but the state
    /// removed from a ball is the ω-greatest one instead of the result of a
    /// minimisation.
    pub fn loop_index(&self, order: &Order) -> Result<usize> {
        let n = self.state_count();
        if order.as_slice().len() != n {
            return Err(Error::Invalid("order does not cover the states".into()));
        }
        let edges = self.plain_graph();
        let mask: Vec<bool> = vec![true; n];
        Ok(graph_loop_index(n, &edges, &order.ranks(), &mask))
    }

    // ---------------------------------------------------------------------
    // Isomorphism
    // ---------------------------------------------------------------------

    /// Exact isomorphism of the accessible parts, by backtracking search.
    pub fn isomorphic_to(&self, other: &Automaton) -> bool {
        let a = self.accessible();
        let b = other.accessible();
        if a.tag != b.tag
            || a.alphabet != b.alphabet
            || a.state_count() != b.state_count()
            || a.edges.len() != b.edges.len()
        {
            return false;
        }
        let n = a.state_count();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn compatible(a: &Automaton, b: &Automaton, map: &[usize], p: usize, q: usize) -> bool {
            if a.initial[p] != b.initial[q] || a.final_w[p] != b.final_w[q] {
                return false;
            }
            // edges between p and already-mapped states must correspond
            for e in &a.edges {
                if e.src == p
                    && map[e.dst] != usize::MAX
                    && b.edge_weight(q, e.label, map[e.dst]) != e.weight
                {
                    return false;
                }
                if e.dst == p
                    && e.src != p
                    && map[e.src] != usize::MAX
                    && b.edge_weight(map[e.src], e.label, q) != e.weight
                {
                    return false;
                }
            }
            // and conversely
            for e in &b.edges {
                if e.src == q {
                    let sources: Vec<usize> = (0..map.len()).filter(|&x| map[x] == e.dst).collect();
                    for s in sources {
                        if a.edge_weight(p, e.label, s) != e.weight {
                            return false;
                        }
                    }
                }
                if e.dst == q && e.src != q {
                    let sources: Vec<usize> = (0..map.len()).filter(|&x| map[x] == e.src).collect();
                    for s in sources {
                        if a.edge_weight(s, e.label, p) != e.weight {
                            return false;
                        }
                    }
                }
            }
            true
        }
        fn backtrack(
            a: &Automaton,
            b: &Automaton,
            p: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if p == a.state_count() {
                return true;
            }
            for q in 0..b.state_count() {
                if !used[q] && compatible(a, b, map, p, q) {
                    map[p] = q;
                    used[q] = true;
                    if backtrack(a, b, p + 1, map, used) {
                        return true;
                    }
                    map[p] = usize::MAX;
                    used[q] = false;
                }
            }
            false
        }
        backtrack(&a, &b, 0, &mut map, &mut used)
    }
}

// ---------------------------------------------------------------------------
// Strongly connected components, balls, and the index recursion
// ---------------------------------------------------------------------------

/// Tarjan over the subgraph induced by `mask`; returns the SCCs as state
/// lists.
fn sccs(n: usize, edges: &[(usize, usize, usize)], mask: &[bool]) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(s, d, _) in edges {
        if mask[s] && mask[d] {
            adj[s].push(d);
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut out: Vec<Vec<usize>> = Vec::new();

    // iterative Tarjan
    enum Frame {
        Enter(usize),
        Resume(usize, usize),
    }
    for start in 0..n {
        if !mask[start] || index[start] != usize::MAX {
            continue;
        }
        let mut call: Vec<Frame> = vec![Frame::Enter(start)];
        while let Some(frame) = call.pop() {
            match frame {
                Frame::Enter(v) => {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push(Frame::Resume(v, 0));
                }
                Frame::Resume(v, mut i) => {
                    let mut descended = false;
                    while i < adj[v].len() {
                        let w = adj[v][i];
                        i += 1;
                        if index[w] == usize::MAX {
                            call.push(Frame::Resume(v, i));
                            call.push(Frame::Enter(w));
                            descended = true;
                            break;
                        } else if on_stack[w] {
                            low[v] = low[v].min(index[w]);
                        }
                    }
                    if descended {
                        continue;
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        out.push(comp);
                    } else {
                        // propagate low to parent
                        if let Some(Frame::Resume(parent, _)) = call.last() {
                            let parent = *parent;
                            low[parent] = low[parent].min(low[v]);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// A ball is a non-trivial SCC: at least two states, or a single state that
/// carries a loop.
fn is_ball(comp: &[usize], edges: &[(usize, usize, usize)]) -> bool {
    if comp.len() > 1 {
        return true;
    }
    let s = comp[0];
    edges.iter().any(|&(a, b, _)| a == s && b == s)
}

fn loop_complexity_rec(
    n: usize,
    edges: &[(usize, usize, usize)],
    mask: u64,
    memo: &mut HashMap<u64, usize>,
) -> usize {
    if mask == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&mask) {
        return v;
    }
    let maskv: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
    let members: Vec<usize> = (0..n).filter(|&i| maskv[i]).collect();
    let comps = sccs(n, edges, &maskv);
    let balls: Vec<&Vec<usize>> = comps.iter().filter(|c| is_ball(c, edges)).collect();
    let result = if balls.is_empty() {
        0
    } else if comps.len() == 1 && comps[0].len() == members.len() {
        // the whole subautomaton is strongly connected (hence a ball)
        let mut best = usize::MAX;
        for &s in &members {
            let v = loop_complexity_rec(n, edges, mask & !(1 << s), memo);
            best = best.min(v);
        }
        1 + best
    } else {
        let mut best = 0;
        for ball in balls {
            let sub: u64 = ball.iter().fold(0, |acc, &s| acc | (1 << s));
            best = best.max(loop_complexity_rec(n, edges, sub, memo));
        }
        best
    };
    memo.insert(mask, result);
    result
}

/// Loop index of a generalized automaton: `edges` carry the star height of
/// their label, `rank[s]` is the position of `s` in the order (the greatest
/// state of a ball is removed first).
pub(crate) fn graph_loop_index(
    n: usize,
    edges: &[(usize, usize, usize)],
    rank: &[usize],
    mask: &[bool],
) -> usize {
    let members: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
    if members.is_empty() {
        return 0;
    }
    let comps = sccs(n, edges, mask);
    let whole_is_ball =
        comps.len() == 1 && comps[0].len() == members.len() && is_ball(&comps[0], edges);
    if whole_is_ball {
        let wbar = *members.iter().max_by_key(|&&s| rank[s]).unwrap();
        let mut adj_h = 0;
        for &(s, d, h) in edges {
            if mask[s] && mask[d] && (s == wbar || d == wbar) {
                adj_h = adj_h.max(h);
            }
        }
        let mut sub = mask.to_vec();
        sub[wbar] = false;
        return 1 + adj_h.max(graph_loop_index(n, edges, rank, &sub));
    }
    // not itself a ball: max over free-edge indices and ball indices
    let mut comp_of = vec![usize::MAX; n];
    for (i, comp) in comps.iter().enumerate() {
        for &s in comp {
            comp_of[s] = i;
        }
    }
    let ball_flags: Vec<bool> = comps.iter().map(|c| is_ball(c, edges)).collect();
    let mut best = 0;
    for &(s, d, h) in edges {
        if mask[s] && mask[d] {
            let inside_ball = comp_of[s] == comp_of[d] && ball_flags[comp_of[s]];
            if !inside_ball {
                best = best.max(h);
            }
        }
    }
    for (i, comp) in comps.iter().enumerate() {
        if ball_flags[i] {
            let mut sub = vec![false; n];
            for &s in comp {
                sub[s] = true;
            }
            best = best.max(graph_loop_index(n, edges, rank, &sub));
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Text format and DOT
// ---------------------------------------------------------------------------

impl Automaton {
    /// Parse the line-oriented text format:
    ///
    /// ```text
    /// # comment
    /// semiring Q
    /// alphabet a b
    /// states 3            # or: states p q r
    /// epsilon true        # optional, allows '@' edges
    /// initial 0:1
    /// final 0:2 1:2 2:2
    /// edge 0 a 1/3 1      # src letter weight dst; '_' means weight one
    /// ```
    pub fn parse_text(text: &str) -> Result<Automaton> {
        let mut tag: Option<SemiringTag> = None;
        let mut alphabet: Option<Vec<char>> = None;
        let mut n: Option<usize> = None;
        let mut names: Option<Vec<String>> = None;
        let mut eps = false;
        let mut initial_lines: Vec<(usize, String)> = Vec::new();
        let mut final_lines: Vec<(usize, String)> = Vec::new();
        let mut edge_lines: Vec<(usize, String)> = Vec::new();

        let err = |line: usize, msg: &str| Error::AutomatonSyntax {
            line,
            msg: msg.to_string(),
        };

        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = match line.split_once(char::is_whitespace) {
                Some((h, r)) => (h, r.trim()),
                None => (line, ""),
            };
            match head {
                "semiring" => tag = Some(rest.parse()?),
                "alphabet" => {
                    let mut letters = Vec::new();
                    for tok in rest.split_whitespace() {
                        let mut chars = tok.chars();
                        match (chars.next(), chars.next()) {
                            (Some(c), None) if c.is_ascii_alphanumeric() => letters.push(c),
                            _ => return Err(err(lineno, "letters are single characters")),
                        }
                    }
                    alphabet = Some(letters);
                }
                "states" => {
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    if toks.len() == 1 {
                        if let Ok(count) = toks[0].parse::<usize>() {
                            n = Some(count);
                            continue;
                        }
                    }
                    if toks.is_empty() {
                        return Err(err(lineno, "states needs a count or a name list"));
                    }
                    n = Some(toks.len());
                    names = Some(toks.iter().map(|s| s.to_string()).collect());
                }
                "epsilon" => eps = rest == "true",
                "initial" => initial_lines.push((lineno, rest.to_string())),
                "final" => final_lines.push((lineno, rest.to_string())),
                "edge" => edge_lines.push((lineno, rest.to_string())),
                _ => return Err(err(lineno, &format!("unknown directive '{head}'"))),
            }
        }

        let tag = tag.ok_or_else(|| err(0, "missing 'semiring' line"))?;
        let alphabet = alphabet.ok_or_else(|| err(0, "missing 'alphabet' line"))?;
        let n = n.ok_or_else(|| err(0, "missing 'states' line"))?;

        let resolve = |tok: &str, lineno: usize| -> Result<usize> {
            if let Some(names) = &names {
                if let Some(i) = names.iter().position(|x| x == tok) {
                    return Ok(i);
                }
            }
            tok.parse::<usize>()
                .ok()
                .filter(|&i| i < n)
                .ok_or_else(|| err(lineno, &format!("unknown state '{tok}'")))
        };
        let parse_weight = |tok: &str| -> Result<Weight> {
            if tok == "_" {
                Ok(Weight::one(tag))
            } else {
                Weight::parse(tok, tag)
            }
        };

        let mut b = Builder::new(tag, &alphabet, n);
        if eps {
            b = b.allow_eps();
        }
        if let Some(names) = names.clone() {
            b = b.names(names);
        }
        // initial / final entry lists: `state[:weight]`
        let mut apply_entries = |lines: &[(usize, String)], is_initial: bool| -> Result<()> {
            for (lineno, rest) in lines {
                for tok in rest.split_whitespace() {
                    let (state_tok, w) = match tok.split_once(':') {
                        Some((s, wt)) => (s, parse_weight(wt)?),
                        None => (tok, Weight::one(tag)),
                    };
                    let s = resolve(state_tok, *lineno)?;
                    if is_initial {
                        b.add_initial(s, w);
                    } else {
                        b.add_final(s, w);
                    }
                }
            }
            Ok(())
        };
        apply_entries(&initial_lines, true)?;
        apply_entries(&final_lines, false)?;

        for (lineno, rest) in &edge_lines {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 4 {
                return Err(err(*lineno, "edge needs: src letter weight dst"));
            }
            let src = resolve(toks[0], *lineno)?;
            let dst = resolve(toks[3], *lineno)?;
            let label = if toks[1] == "@" {
                if !eps {
                    return Err(err(*lineno, "ε edge without 'epsilon true'"));
                }
                Label::Eps
            } else {
                let mut chars = toks[1].chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Label::Letter(c),
                    _ => return Err(err(*lineno, "letters are single characters")),
                }
            };
            let w = parse_weight(toks[2])?;
            b.add_edge(src, label, w, dst);
        }
        b.build()
    }

    /// Serialize in the text format; the output re-parses to an equal
    /// automaton.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "semiring {}", self.tag).unwrap();
        let letters: Vec<String> = self.alphabet.iter().map(|c| c.to_string()).collect();
        writeln!(out, "alphabet {}", letters.join(" ")).unwrap();
        match &self.names {
            Some(names) => writeln!(out, "states {}", names.join(" ")).unwrap(),
            None => writeln!(out, "states {}", self.state_count()).unwrap(),
        }
        if self.eps_allowed {
            writeln!(out, "epsilon true").unwrap();
        }
        let entry = |s: usize, w: &Weight| {
            if w.is_one() {
                self.state_name(s)
            } else {
                format!("{}:{}", self.state_name(s), w)
            }
        };
        let initials: Vec<String> = (0..self.state_count())
            .filter(|&s| !self.initial[s].is_zero())
            .map(|s| entry(s, &self.initial[s]))
            .collect();
        if !initials.is_empty() {
            writeln!(out, "initial {}", initials.join(" ")).unwrap();
        }
        let finals: Vec<String> = (0..self.state_count())
            .filter(|&s| !self.final_w[s].is_zero())
            .map(|s| entry(s, &self.final_w[s]))
            .collect();
        if !finals.is_empty() {
            writeln!(out, "final {}", finals.join(" ")).unwrap();
        }
        for e in &self.edges {
            let w = if e.weight.is_one() {
                "_".to_string()
            } else {
                e.weight.to_string()
            };
            writeln!(
                out,
                "edge {} {} {} {}",
                self.state_name(e.src),
                e.label,
                w,
                self.state_name(e.dst)
            )
            .unwrap();
        }
        out
    }

    /// GraphViz export: states as circles, initial/final weights as
    /// annotations, edge labels `⟨k⟩a`.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "digraph {{").unwrap();
        writeln!(out, "  rankdir = LR;").unwrap();
        writeln!(out, "  node [shape = circle];").unwrap();
        for s in 0..self.state_count() {
            let mut label = self.state_name(s);
            if !self.final_w[s].is_zero() {
                label = format!("{label} | {}", self.final_w[s]);
                writeln!(out, "  {s} [label = \"{label}\", shape = doublecircle];").unwrap();
            } else {
                writeln!(out, "  {s} [label = \"{label}\"];").unwrap();
            }
        }
        let mut arrow = 0;
        for s in 0..self.state_count() {
            if !self.initial[s].is_zero() {
                writeln!(out, "  __in{arrow} [shape = point, label = \"\"];").unwrap();
                writeln!(
                    out,
                    "  __in{arrow} -> {s} [label = \"{}\"];",
                    self.initial[s]
                )
                .unwrap();
                arrow += 1;
            }
        }
        for e in &self.edges {
            let label = if e.weight.is_one() {
                format!("{}", e.label)
            } else {
                format!("<{}>{}", e.weight, e.label)
            };
            writeln!(out, "  {} -> {} [label = \"{label}\"];", e.src, e.dst).unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

#[cfg(test)]
pub(crate) mod tests;
