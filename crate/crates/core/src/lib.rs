//! Rational expressions and finite weighted automata, convertible in both
//! directions over a family of exact semirings.
//!
//! The crate is organised around a handful of modules:
//!
//! * [`semiring`] — the weight domains 𝔹, ℕ, ℤ, ℚ and (min,+), all with exact
//!   arithmetic and a *partial* star operation.
//! * [`expr`] — rational expression ASTs, kept reduced modulo the trivial
//!   identities, with parsing, printing, metrics and a truncated-series
//!   oracle computed by structural recursion.
//! * [`automaton`] — weighted automata with monomial labels, evaluation,
//!   ε-closure, trimming, quotients, loop complexity and loop index.
//! * [`gamma`] — the four automaton→expression algorithms: state
//!   elimination, system solution, McNaughton–Yamada, and the recursive
//!   (block-decomposition) method.
//! * [`delta`] — the expression→automaton constructions: standard
//!   (Glushkov) automaton, star-normal form, Thompson, derivation and the
//!   derived-term automaton, continuation map, and a loop-complexity-optimal
//!   construction.
//! * [`equiv`] — decision procedures for automaton and expression
//!   equivalence (exact over 𝔹 and over the field-embeddable semirings,
//!   sampled over (min,+)).
//! * [`cli`] — the `ratkit` command-line surface.
//!
//! Everything is referentially transparent; all values are immutable after
//! construction and safe to share across threads.
//!
//! ```
//! use ratkit::automaton::Order;
//! use ratkit::expr::Expr;
//! use ratkit::semiring::SemiringTag;
//! use ratkit::{delta, equiv, gamma};
//!
//! let e = Expr::parse("(<1/6>a*+<1/3>b*)*", SemiringTag::Q)?;
//! let standard = delta::standard_automaton(&e)?;          // 3 states, exact weights
//! assert_eq!(standard.eval("a")?.to_string(), "2/3");
//!
//! let back = gamma::system_solution(&standard, &Order::ascending(3))?;
//! assert!(equiv::equivalent_exprs(&e, &back)?.equivalent); // decided exactly
//! # Ok::<(), ratkit::Error>(())
//! ```

pub mod automaton;
pub mod cli;
pub mod corpus;
pub mod delta;
pub mod equiv;
pub mod expr;
pub mod gamma;
pub mod semiring;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
