//! Decision procedures for automaton and expression equivalence.
//!
//! Over B the decision is exact, by an on-the-fly product of subset
//! constructions searching for an acceptance mismatch.  Over ℤ and ℚ (and ℕ,
//! which embeds into ℚ) it is exact as well: a basis of the span of the
//! joint row vectors `[I_A·μ_A(w) | I_B·μ_B(w)]` is grown breadth-first and
//! the final-weight functional must vanish on every reached vector; the
//! basis saturates within dim A + dim B insertions.  Over (min,+) the
//! procedure compares truncated behaviours up to a configured length and
//! says so in the verdict.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_rational::BigRational;
use num_traits::Zero;

use crate::automaton::{Automaton, Label};
use crate::delta;
use crate::expr::Expr;
use crate::semiring::{SemiringTag, Weight};
use crate::{Error, Result};

/// Word length bound of the sampled (min,+) comparison.
pub const SAMPLED_DEGREE: usize = 8;

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    BooleanDfa,
    FieldSpan,
    Sampled,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::BooleanDfa => "boolean-dfa",
            Method::FieldSpan => "field-span",
            Method::Sampled => "sampled",
        })
    }
}

/// A separating word together with the two weights it takes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub word: String,
    pub left: Weight,
    pub right: Weight,
}

/// Outcome of an equivalence check.  A witness is present exactly when the
/// inputs were decided inequivalent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub equivalent: bool,
    pub witness: Option<Witness>,
    pub method: Method,
}

impl Verdict {
    fn equal(method: Method) -> Verdict {
        Verdict {
            equivalent: true,
            witness: None,
            method,
        }
    }

    fn separated(method: Method, witness: Witness) -> Verdict {
        Verdict {
            equivalent: false,
            witness: Some(witness),
            method,
        }
    }

    /// Is this an exact decision (as opposed to a sampled "probably equal")?
    pub fn decided(&self) -> bool {
        !self.equivalent || self.method != Method::Sampled
    }
}

fn common_alphabet(a: &Automaton, b: &Automaton) -> Result<Vec<char>> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    Ok(a.alphabet().to_vec())
}

/// Decide ⟦A⟧ = ⟦B⟧.  Inputs must be ε-free and share tag and alphabet.
pub fn equivalent_automata(a: &Automaton, b: &Automaton) -> Result<Verdict> {
    equivalent_automata_sampled_to(a, b, SAMPLED_DEGREE)
}

/// [`equivalent_automata`] with an explicit length bound for the sampled
/// (min,+) comparison.
pub fn equivalent_automata_sampled_to(
    a: &Automaton,
    b: &Automaton,
    degree: usize,
) -> Result<Verdict> {
    if a.tag() != b.tag() {
        return Err(Error::TagMismatch(a.tag(), b.tag()));
    }
    if a.has_eps_edge() || b.has_eps_edge() {
        return Err(Error::EpsilonPresent);
    }
    let alphabet = common_alphabet(a, b)?;
    match a.tag() {
        SemiringTag::B => boolean_product(a, b, &alphabet),
        SemiringTag::N | SemiringTag::Z | SemiringTag::Q => field_span(a, b, &alphabet),
        SemiringTag::MinPlus => sampled(a, b, degree),
    }
}

/// Decide ⟦E⟧ = ⟦F⟧ through the derived-term automata of both sides.
pub fn equivalent_exprs(e: &Expr, f: &Expr) -> Result<Verdict> {
    if e.tag() != f.tag() {
        return Err(Error::TagMismatch(e.tag(), f.tag()));
    }
    // both sides over the union alphabet, so the automata line up
    let union: Vec<char> = e.alphabet().iter().chain(f.alphabet()).copied().collect();
    let e = e.clone().with_alphabet(&union);
    let f = f.clone().with_alphabet(&union);
    let (da, _) = delta::derived_term_automaton(&e)?;
    let (db, _) = delta::derived_term_automaton(&f)?;
    equivalent_automata(&da, &db)
}

// ---------------------------------------------------------------------------
// Boolean: product of subset constructions
// ---------------------------------------------------------------------------

fn boolean_product(a: &Automaton, b: &Automaton, alphabet: &[char]) -> Result<Verdict> {
    let initials = |aut: &Automaton| -> BTreeSet<usize> {
        (0..aut.state_count())
            .filter(|&p| !aut.initial_weight(p).is_zero())
            .collect()
    };
    let accepts = |aut: &Automaton, set: &BTreeSet<usize>| -> bool {
        set.iter().any(|&p| !aut.final_weight(p).is_zero())
    };
    let step = |aut: &Automaton, set: &BTreeSet<usize>, c: char| -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for e in aut.edges() {
            if e.label == Label::Letter(c) && set.contains(&e.src) {
                out.insert(e.dst);
            }
        }
        out
    };

    let start = (initials(a), initials(b));
    let mut seen: HashSet<(BTreeSet<usize>, BTreeSet<usize>)> = HashSet::new();
    let mut queue: VecDeque<(BTreeSet<usize>, BTreeSet<usize>, String)> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back((start.0, start.1, String::new()));
    while let Some((sa, sb, word)) = queue.pop_front() {
        let (la, lb) = (accepts(a, &sa), accepts(b, &sb));
        if la != lb {
            return Ok(Verdict::separated(
                Method::BooleanDfa,
                Witness {
                    word,
                    left: Weight::B(la),
                    right: Weight::B(lb),
                },
            ));
        }
        for &c in alphabet {
            let next = (step(a, &sa, c), step(b, &sb, c));
            if seen.insert(next.clone()) {
                queue.push_back((next.0, next.1, format!("{word}{c}")));
            }
        }
    }
    Ok(Verdict::equal(Method::BooleanDfa))
}

// ---------------------------------------------------------------------------
// ℕ, ℤ, ℚ: span of joint reachability vectors
// ---------------------------------------------------------------------------

fn to_rational(w: &Weight) -> BigRational {
    w.to_rational().expect("field-embeddable tag")
}

struct JointSystem {
    dim_a: usize,
    dim: usize,
    // per letter: list of (src, dst, weight) over the joint index space
    mu: Vec<Vec<(usize, usize, BigRational)>>,
    finals: Vec<BigRational>,
}

impl JointSystem {
    fn new(a: &Automaton, b: &Automaton, alphabet: &[char]) -> JointSystem {
        let dim_a = a.state_count();
        let dim = dim_a + b.state_count();
        let mut mu = vec![Vec::new(); alphabet.len()];
        for e in a.edges() {
            if let Label::Letter(c) = e.label {
                let ai = alphabet.iter().position(|&x| x == c).unwrap();
                mu[ai].push((e.src, e.dst, to_rational(&e.weight)));
            }
        }
        for e in b.edges() {
            if let Label::Letter(c) = e.label {
                let ai = alphabet.iter().position(|&x| x == c).unwrap();
                mu[ai].push((dim_a + e.src, dim_a + e.dst, to_rational(&e.weight)));
            }
        }
        // the functional [T_A | −T_B]: it vanishes on every reachable joint
        // vector iff the behaviours agree
        let mut finals = Vec::with_capacity(dim);
        for p in 0..dim_a {
            finals.push(to_rational(a.final_weight(p)));
        }
        for q in 0..b.state_count() {
            finals.push(-to_rational(b.final_weight(q)));
        }
        JointSystem {
            dim_a,
            dim,
            mu,
            finals,
        }
    }

    fn start(&self, a: &Automaton, b: &Automaton) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.dim];
        for p in 0..a.state_count() {
            v[p] = to_rational(a.initial_weight(p));
        }
        for q in 0..b.state_count() {
            v[self.dim_a + q] = to_rational(b.initial_weight(q));
        }
        v
    }

    fn apply(&self, v: &[BigRational], letter_index: usize) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.dim];
        for (src, dst, w) in &self.mu[letter_index] {
            if !v[*src].is_zero() {
                out[*dst] += &v[*src] * w;
            }
        }
        out
    }

    fn functional(&self, v: &[BigRational]) -> BigRational {
        v.iter().zip(&self.finals).map(|(x, f)| x * f).sum()
    }
}

fn field_span(a: &Automaton, b: &Automaton, alphabet: &[char]) -> Result<Verdict> {
    let sys = JointSystem::new(a, b, alphabet);
    // row-echelon basis: (pivot column, vector with pivot normalized to 1)
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut queue: VecDeque<(String, Vec<BigRational>)> = VecDeque::new();
    queue.push_back((String::new(), sys.start(a, b)));
    while let Some((word, v)) = queue.pop_front() {
        if !sys.functional(&v).is_zero() {
            let left = a.eval(&word)?;
            let right = b.eval(&word)?;
            return Ok(Verdict::separated(
                Method::FieldSpan,
                Witness { word, left, right },
            ));
        }
        // reduce against the basis
        let mut v = v;
        for (pivot, bvec) in &basis {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(bvec) {
                    *x -= &factor * y;
                }
            }
        }
        let pivot = match v.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => continue, // dependent: nothing new reachable from here
        };
        let norm = v[pivot].clone();
        for x in v.iter_mut() {
            *x /= &norm;
        }
        for (ai, _) in alphabet.iter().enumerate() {
            let next = sys.apply(&v, ai);
            queue.push_back((format!("{word}{}", alphabet[ai]), next));
        }
        basis.push((pivot, v));
        debug_assert!(basis.len() <= sys.dim);
    }
    Ok(Verdict::equal(Method::FieldSpan))
}

// ---------------------------------------------------------------------------
// (min,+): sampled comparison
// ---------------------------------------------------------------------------

fn sampled(a: &Automaton, b: &Automaton, degree: usize) -> Result<Verdict> {
    let sa = a.truncated_behaviour(degree)?;
    let sb = b.truncated_behaviour(degree)?;
    if sa == sb {
        return Ok(Verdict::equal(Method::Sampled));
    }
    // first separating word in (length, lexicographic) order
    let words: BTreeSet<(usize, String)> = sa
        .iter()
        .chain(sb.iter())
        .map(|(w, _)| (w.chars().count(), w.to_string()))
        .collect();
    for (_, w) in words {
        let (ca, cb) = (sa.coeff(&w), sb.coeff(&w));
        if ca != cb {
            return Ok(Verdict::separated(
                Method::Sampled,
                Witness {
                    word: w,
                    left: ca,
                    right: cb,
                },
            ));
        }
    }
    unreachable!("series differ, so some coefficient differs")
}

#[cfg(test)]
mod tests;
