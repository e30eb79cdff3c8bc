//! Seeded random corpora of expressions and automata.
//!
//! Used by the randomized parts of the test-suite and by the benchmarks;
//! generation is deterministic for a fixed RNG seed.  Generated expressions
//! are always valid (every starred subexpression has a starable constant
//! term), and generated ℚ weights lie in (−1,1) so that field-valued stars
//! stay summable.

use rand::Rng;

use crate::automaton::{Automaton, Builder, Label};
use crate::expr::Expr;
use crate::semiring::{SemiringTag, Weight};

/// A random weight; `nonzero` forces it away from the semiring zero.
pub fn random_weight<R: Rng>(rng: &mut R, tag: SemiringTag, nonzero: bool) -> Weight {
    loop {
        let w = match tag {
            SemiringTag::B => Weight::B(rng.gen()),
            SemiringTag::N => Weight::from_i64(rng.gen_range(0..4), tag),
            SemiringTag::Z => Weight::from_i64(rng.gen_range(-3..4), tag),
            SemiringTag::Q => {
                let den = rng.gen_range(2..5i64);
                let num = rng.gen_range(-den + 1..den);
                Weight::rat(num, den)
            }
            SemiringTag::MinPlus => {
                if rng.gen_ratio(1, 6) {
                    Weight::zero(tag)
                } else {
                    Weight::from_i64(rng.gen_range(0..5), tag)
                }
            }
        };
        if !nonzero || !w.is_zero() {
            return w;
        }
    }
}

fn random_expr_rec<R: Rng>(
    rng: &mut R,
    tag: SemiringTag,
    alphabet: &[char],
    depth: usize,
    stars_nonempty: bool,
) -> Expr {
    let pick_atom = |rng: &mut R| {
        let c = alphabet[rng.gen_range(0..alphabet.len())];
        Expr::atom(c, tag)
    };
    if depth == 0 {
        return match rng.gen_range(0..10) {
            0 => Expr::one(tag),
            1 => Expr::zero(tag),
            _ => pick_atom(rng),
        };
    }
    let weighted = tag != SemiringTag::B;
    let choice = rng.gen_range(0..if weighted { 8 } else { 6 });
    match choice {
        0 | 1 => random_expr_rec(rng, tag, alphabet, depth - 1, stars_nonempty).sum(
            random_expr_rec(rng, tag, alphabet, depth - 1, stars_nonempty),
        ),
        2 | 3 => random_expr_rec(rng, tag, alphabet, depth - 1, stars_nonempty).prod(
            random_expr_rec(rng, tag, alphabet, depth - 1, stars_nonempty),
        ),
        4 => {
            let mut body = random_expr_rec(rng, tag, alphabet, depth - 1, stars_nonempty);
            let starable = body.constant_term().map(|c| c.starable()).unwrap_or(false);
            if !starable || (stars_nonempty && body.literal_length() == 0) {
                // force a proper (and nonempty) body
                body = pick_atom(rng).prod(body);
            }
            body.star()
        }
        5 => pick_atom(rng),
        6 => random_expr_rec(rng, tag, alphabet, depth - 1, stars_nonempty)
            .lweight(random_weight(rng, tag, true)),
        _ => random_expr_rec(rng, tag, alphabet, depth - 1, stars_nonempty)
            .rweight(random_weight(rng, tag, true)),
    }
}

/// A random valid expression of syntactic depth at most `depth`.
pub fn random_expr<R: Rng>(rng: &mut R, tag: SemiringTag, alphabet: &[char], depth: usize) -> Expr {
    random_expr_rec(rng, tag, alphabet, depth, false).with_alphabet(alphabet)
}

/// Like [`random_expr`], but every starred subexpression denotes at least
/// one nonempty word.
pub fn random_expr_nonempty_stars<R: Rng>(
    rng: &mut R,
    tag: SemiringTag,
    alphabet: &[char],
    depth: usize,
) -> Expr {
    random_expr_rec(rng, tag, alphabet, depth, true).with_alphabet(alphabet)
}

/// A random ε-free automaton with `n` states.
pub fn random_automaton<R: Rng>(
    rng: &mut R,
    tag: SemiringTag,
    n: usize,
    alphabet: &[char],
) -> Automaton {
    let mut b = Builder::new(tag, alphabet, n);
    for p in 0..n {
        for &a in alphabet {
            for q in 0..n {
                if rng.gen_bool(0.28) {
                    b.add_edge(p, Label::Letter(a), random_weight(rng, tag, true), q);
                }
            }
        }
    }
    let mut any_initial = false;
    let mut any_final = false;
    for p in 0..n {
        if rng.gen_bool(0.4) {
            b.add_initial(p, random_weight(rng, tag, true));
            any_initial = true;
        }
        if rng.gen_bool(0.4) {
            b.add_final(p, random_weight(rng, tag, true));
            any_final = true;
        }
    }
    if !any_initial {
        b.add_initial(0, Weight::one(tag));
    }
    if !any_final {
        b.add_final(n - 1, Weight::one(tag));
    }
    b.build().expect("generated automaton is well-formed")
}

/// A random nonempty trim Boolean automaton with at most `n_max` states.
pub fn random_trim_boolean<R: Rng>(rng: &mut R, n_max: usize, alphabet: &[char]) -> Automaton {
    loop {
        let n = rng.gen_range(1..=n_max);
        let a = random_automaton(rng, SemiringTag::B, n, alphabet).trim();
        if a.state_count() > 0 {
            return a;
        }
    }
}
