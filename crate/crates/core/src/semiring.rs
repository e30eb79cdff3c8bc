//! Weight domains with exact arithmetic and a partial star.
//!
//! Five concrete semirings are supported: the Booleans, the naturals, the
//! integers, the rationals, and (min,+) over ℤ ∪ {+∞}.  All arithmetic is
//! arbitrary precision; there is no floating point anywhere.  The star is a
//! partial operation: `star(x)` is defined exactly when the geometric family
//! x⁰, x¹, x², … is summable in the semiring's topology, and
//! `x* = 1 + x·x* = 1 + x*·x` holds whenever it is defined.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Which of the five weight domains a [`Weight`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemiringTag {
    /// Booleans with (or, and).
    B,
    /// Naturals with (+, ·).
    N,
    /// Integers with (+, ·).
    Z,
    /// Rationals with (+, ·), kept in lowest terms.
    Q,
    /// ℤ ∪ {+∞} with (min, +); zero is +∞, one is the integer 0.
    MinPlus,
}

impl SemiringTag {
    pub const ALL: [SemiringTag; 5] = [
        SemiringTag::B,
        SemiringTag::N,
        SemiringTag::Z,
        SemiringTag::Q,
        SemiringTag::MinPlus,
    ];
}

impl fmt::Display for SemiringTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SemiringTag::B => "B",
            SemiringTag::N => "N",
            SemiringTag::Z => "Z",
            SemiringTag::Q => "Q",
            SemiringTag::MinPlus => "minplus",
        };
        f.write_str(s)
    }
}

impl FromStr for SemiringTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" | "b" => Ok(SemiringTag::B),
            "N" | "n" => Ok(SemiringTag::N),
            "Z" | "z" => Ok(SemiringTag::Z),
            "Q" | "q" => Ok(SemiringTag::Q),
            "minplus" | "MinPlus" | "min-plus" | "zmin" => Ok(SemiringTag::MinPlus),
            other => Err(Error::Invalid(format!("unknown semiring '{other}'"))),
        }
    }
}

/// An element of ℤ ∪ {+∞}, the (min,+) carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tropical {
    Finite(BigInt),
    Infinity,
}

/// An exact scalar carrying its semiring tag.
///
/// Operations on mixed tags are rejected with [`Error::TagMismatch`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Weight {
    B(bool),
    N(BigUint),
    Z(BigInt),
    Q(BigRational),
    MinPlus(Tropical),
}

impl Weight {
    pub fn tag(&self) -> SemiringTag {
        match self {
            Weight::B(_) => SemiringTag::B,
            Weight::N(_) => SemiringTag::N,
            Weight::Z(_) => SemiringTag::Z,
            Weight::Q(_) => SemiringTag::Q,
            Weight::MinPlus(_) => SemiringTag::MinPlus,
        }
    }

    /// Additive identity of the given semiring.
    pub fn zero(tag: SemiringTag) -> Weight {
        match tag {
            SemiringTag::B => Weight::B(false),
            SemiringTag::N => Weight::N(BigUint::zero()),
            SemiringTag::Z => Weight::Z(BigInt::zero()),
            SemiringTag::Q => Weight::Q(BigRational::zero()),
            SemiringTag::MinPlus => Weight::MinPlus(Tropical::Infinity),
        }
    }

    /// Multiplicative identity of the given semiring.
    pub fn one(tag: SemiringTag) -> Weight {
        match tag {
            SemiringTag::B => Weight::B(true),
            SemiringTag::N => Weight::N(BigUint::one()),
            SemiringTag::Z => Weight::Z(BigInt::one()),
            SemiringTag::Q => Weight::Q(BigRational::one()),
            SemiringTag::MinPlus => Weight::MinPlus(Tropical::Finite(BigInt::zero())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Weight::B(b) => !b,
            Weight::N(n) => n.is_zero(),
            Weight::Z(z) => z.is_zero(),
            Weight::Q(q) => q.is_zero(),
            Weight::MinPlus(t) => matches!(t, Tropical::Infinity),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Weight::one(self.tag())
    }

    fn check_tags(&self, other: &Weight) -> Result<()> {
        if self.tag() == other.tag() {
            Ok(())
        } else {
            Err(Error::TagMismatch(self.tag(), other.tag()))
        }
    }

    /// Semiring sum: or / + / min depending on the tag.
    pub fn add(&self, other: &Weight) -> Result<Weight> {
        self.check_tags(other)?;
        Ok(match (self, other) {
            (Weight::B(a), Weight::B(b)) => Weight::B(*a || *b),
            (Weight::N(a), Weight::N(b)) => Weight::N(a + b),
            (Weight::Z(a), Weight::Z(b)) => Weight::Z(a + b),
            (Weight::Q(a), Weight::Q(b)) => Weight::Q(a + b),
            (Weight::MinPlus(a), Weight::MinPlus(b)) => Weight::MinPlus(match (a, b) {
                (Tropical::Infinity, t) | (t, Tropical::Infinity) => t.clone(),
                (Tropical::Finite(x), Tropical::Finite(y)) => Tropical::Finite(x.min(y).clone()),
            }),
            _ => unreachable!("tags checked above"),
        })
    }

    /// Semiring product: and / · / integer + (with +∞ absorbing).
    pub fn mul(&self, other: &Weight) -> Result<Weight> {
        self.check_tags(other)?;
        Ok(match (self, other) {
            (Weight::B(a), Weight::B(b)) => Weight::B(*a && *b),
            (Weight::N(a), Weight::N(b)) => Weight::N(a * b),
            (Weight::Z(a), Weight::Z(b)) => Weight::Z(a * b),
            (Weight::Q(a), Weight::Q(b)) => Weight::Q(a * b),
            (Weight::MinPlus(a), Weight::MinPlus(b)) => Weight::MinPlus(match (a, b) {
                (Tropical::Infinity, _) | (_, Tropical::Infinity) => Tropical::Infinity,
                (Tropical::Finite(x), Tropical::Finite(y)) => Tropical::Finite(x + y),
            }),
            _ => unreachable!("tags checked above"),
        })
    }

    /// Whether `star` is defined on this element.
    ///
    /// B: always; N and Z: only 0; Q: |x| < 1 (the strict, topological
    /// convention, so that x* is the actual sum of the geometric series);
    /// (min,+): x ≥ 0 including +∞.
    pub fn starable(&self) -> bool {
        match self {
            Weight::B(_) => true,
            Weight::N(n) => n.is_zero(),
            Weight::Z(z) => z.is_zero(),
            Weight::Q(q) => q.abs() < BigRational::one(),
            Weight::MinPlus(t) => match t {
                Tropical::Infinity => true,
                Tropical::Finite(x) => !x.is_negative(),
            },
        }
    }

    /// Kleene star: the sum of all powers, when that sum is defined.
    pub fn star(&self) -> Result<Weight> {
        if !self.starable() {
            return Err(Error::NotStarable(self.to_string(), self.tag()));
        }
        Ok(match self {
            Weight::B(_) => Weight::B(true),
            Weight::N(_) => Weight::one(SemiringTag::N),
            Weight::Z(_) => Weight::one(SemiringTag::Z),
            // |x| < 1, so the geometric series sums to 1/(1-x).
            Weight::Q(q) => Weight::Q(BigRational::one() / (BigRational::one() - q)),
            // min(0, x, 2x, ...) = 0 for x >= 0, and min over {0} for +inf.
            Weight::MinPlus(_) => Weight::one(SemiringTag::MinPlus),
        })
    }

    /// Parse a weight in the text syntax of the given semiring:
    /// B: `0|1`; N/Z: decimal integer (sign allowed over Z); Q: `p/q` or an
    /// integer; (min,+): integer or `oo`.
    pub fn parse(text: &str, tag: SemiringTag) -> Result<Weight> {
        let bad = || Error::WeightSyntax(format!("'{text}' is not a {tag} weight"));
        let text = text.trim();
        match tag {
            SemiringTag::B => match text {
                "0" => Ok(Weight::B(false)),
                "1" => Ok(Weight::B(true)),
                _ => Err(bad()),
            },
            SemiringTag::N => text.parse::<BigUint>().map(Weight::N).map_err(|_| bad()),
            SemiringTag::Z => text.parse::<BigInt>().map(Weight::Z).map_err(|_| bad()),
            SemiringTag::Q => {
                if let Some((num, den)) = text.split_once('/') {
                    let num = num.trim().parse::<BigInt>().map_err(|_| bad())?;
                    let den = den.trim().parse::<BigInt>().map_err(|_| bad())?;
                    if den.is_zero() {
                        return Err(bad());
                    }
                    Ok(Weight::Q(BigRational::new(num, den)))
                } else {
                    let num = text.parse::<BigInt>().map_err(|_| bad())?;
                    Ok(Weight::Q(BigRational::from_integer(num)))
                }
            }
            SemiringTag::MinPlus => {
                if text == "oo" {
                    Ok(Weight::MinPlus(Tropical::Infinity))
                } else {
                    text.parse::<BigInt>()
                        .map(|x| Weight::MinPlus(Tropical::Finite(x)))
                        .map_err(|_| bad())
                }
            }
        }
    }

    /// N and Z embed into Q; used by the exact equivalence decision.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Weight::N(n) => Some(BigRational::from_integer(BigInt::from(n.clone()))),
            Weight::Z(z) => Some(BigRational::from_integer(z.clone())),
            Weight::Q(q) => Some(q.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::B(b) => write!(f, "{}", if *b { 1 } else { 0 }),
            Weight::N(n) => write!(f, "{n}"),
            Weight::Z(z) => write!(f, "{z}"),
            Weight::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Weight::MinPlus(Tropical::Infinity) => f.write_str("oo"),
            Weight::MinPlus(Tropical::Finite(x)) => write!(f, "{x}"),
        }
    }
}

/// Shorthand constructors used throughout the tests.
impl Weight {
    pub fn from_i64(v: i64, tag: SemiringTag) -> Weight {
        match tag {
            SemiringTag::B => Weight::B(v != 0),
            SemiringTag::N => {
                assert!(v >= 0, "N weight must be non-negative");
                Weight::N(BigUint::from(v as u64))
            }
            SemiringTag::Z => Weight::Z(BigInt::from(v)),
            SemiringTag::Q => Weight::Q(BigRational::from_integer(BigInt::from(v))),
            SemiringTag::MinPlus => Weight::MinPlus(Tropical::Finite(BigInt::from(v))),
        }
    }

    pub fn rat(num: i64, den: i64) -> Weight {
        Weight::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn q(n: i64, d: i64) -> Weight {
        Weight::rat(n, d)
    }

    #[test]
    fn rational_sum_is_exact() {
        // 1/6 + 1/3 = 1/2
        let sum = q(1, 6).add(&q(1, 3)).unwrap();
        assert_eq!(sum, q(1, 2));
        assert_eq!(sum.to_string(), "1/2");
    }

    #[test]
    fn boolean_and_tropical_sums() {
        let one = Weight::B(true);
        assert_eq!(one.add(&one).unwrap(), one);
        let three = Weight::from_i64(3, SemiringTag::MinPlus);
        let five = Weight::from_i64(5, SemiringTag::MinPlus);
        assert_eq!(three.add(&five).unwrap(), three);
    }

    #[test]
    fn products() {
        assert_eq!(
            Weight::from_i64(-1, SemiringTag::Z)
                .mul(&Weight::from_i64(1, SemiringTag::Z))
                .unwrap(),
            Weight::from_i64(-1, SemiringTag::Z)
        );
        let inf = Weight::zero(SemiringTag::MinPlus);
        let three = Weight::from_i64(3, SemiringTag::MinPlus);
        assert_eq!(three.mul(&inf).unwrap(), inf);
        assert_eq!(
            Weight::from_i64(2, SemiringTag::Q).mul(&q(1, 3)).unwrap(),
            q(2, 3)
        );
    }

    #[test]
    fn star_cases() {
        // Final weight on the initial state of the standard automaton of E3.
        assert_eq!(q(1, 2).star().unwrap(), Weight::from_i64(2, SemiringTag::Q));
        assert_eq!(
            Weight::zero(SemiringTag::B).star().unwrap(),
            Weight::B(true)
        );
        assert_eq!(
            Weight::from_i64(1, SemiringTag::Z).star(),
            Err(Error::NotStarable("1".into(), SemiringTag::Z))
        );
        assert_eq!(
            Weight::from_i64(3, SemiringTag::MinPlus).star().unwrap(),
            Weight::one(SemiringTag::MinPlus)
        );
        // +inf* = 0: min over the single empty product.
        assert_eq!(
            Weight::zero(SemiringTag::MinPlus).star().unwrap(),
            Weight::one(SemiringTag::MinPlus)
        );
        assert!(Weight::from_i64(-2, SemiringTag::MinPlus).star().is_err());
        assert!(q(3, 2).star().is_err());
        assert!(q(-1, 1).star().is_err());
    }

    #[test]
    fn tag_mismatch_rejected() {
        let err = Weight::B(true).add(&Weight::from_i64(1, SemiringTag::N));
        assert_eq!(err, Err(Error::TagMismatch(SemiringTag::B, SemiringTag::N)));
    }

    fn random_weight(rng: &mut StdRng, tag: SemiringTag) -> Weight {
        match tag {
            SemiringTag::B => Weight::B(rng.gen()),
            SemiringTag::N => Weight::from_i64(rng.gen_range(0..6), tag),
            SemiringTag::Z => Weight::from_i64(rng.gen_range(-5..6), tag),
            SemiringTag::Q => Weight::rat(rng.gen_range(-6..7), rng.gen_range(1..7)),
            SemiringTag::MinPlus => {
                if rng.gen_ratio(1, 5) {
                    Weight::zero(tag)
                } else {
                    Weight::from_i64(rng.gen_range(-5..6), tag)
                }
            }
        }
    }

    #[test]
    fn semiring_axioms_randomised() {
        let mut rng = StdRng::seed_from_u64(0xA11CE);
        for tag in SemiringTag::ALL {
            let zero = Weight::zero(tag);
            let one = Weight::one(tag);
            for _ in 0..200 {
                let a = random_weight(&mut rng, tag);
                let b = random_weight(&mut rng, tag);
                let c = random_weight(&mut rng, tag);
                // additive commutative monoid
                assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
                assert_eq!(
                    a.add(&b).unwrap().add(&c).unwrap(),
                    a.add(&b.add(&c).unwrap()).unwrap()
                );
                assert_eq!(a.add(&zero).unwrap(), a);
                // multiplicative monoid
                assert_eq!(
                    a.mul(&b).unwrap().mul(&c).unwrap(),
                    a.mul(&b.mul(&c).unwrap()).unwrap()
                );
                assert_eq!(a.mul(&one).unwrap(), a);
                assert_eq!(one.mul(&a).unwrap(), a);
                // distributivity and absorption
                assert_eq!(
                    a.mul(&b.add(&c).unwrap()).unwrap(),
                    a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
                );
                assert_eq!(
                    b.add(&c).unwrap().mul(&a).unwrap(),
                    b.mul(&a).unwrap().add(&c.mul(&a).unwrap()).unwrap()
                );
                assert_eq!(a.mul(&zero).unwrap(), zero);
                assert_eq!(zero.mul(&a).unwrap(), zero);
            }
        }
    }

    #[test]
    fn star_unfolding_whenever_defined() {
        let mut rng = StdRng::seed_from_u64(0xB0B);
        for tag in SemiringTag::ALL {
            let one = Weight::one(tag);
            for _ in 0..300 {
                let x = random_weight(&mut rng, tag);
                if let Ok(s) = x.star() {
                    assert_eq!(one.add(&x.mul(&s).unwrap()).unwrap(), s, "x = {x} in {tag}");
                    assert_eq!(one.add(&s.mul(&x).unwrap()).unwrap(), s);
                    if let Weight::Q(qv) = &x {
                        let lhs = s.mul(&Weight::Q(BigRational::one() - qv.clone())).unwrap();
                        assert_eq!(lhs, one);
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for (text, tag) in [
            ("1", SemiringTag::B),
            ("42", SemiringTag::N),
            ("-7", SemiringTag::Z),
            ("2/3", SemiringTag::Q),
            ("-5", SemiringTag::Q),
            ("oo", SemiringTag::MinPlus),
            ("-3", SemiringTag::MinPlus),
        ] {
            let w = Weight::parse(text, tag).unwrap();
            assert_eq!(w.to_string(), text);
        }
        // normalisation at construction
        assert_eq!(
            Weight::parse("4/6", SemiringTag::Q).unwrap(),
            Weight::rat(2, 3)
        );
        assert_eq!(
            Weight::parse("3/-6", SemiringTag::Q).unwrap(),
            Weight::rat(-1, 2)
        );
        assert!(Weight::parse("-1", SemiringTag::N).is_err());
        assert!(Weight::parse("1/0", SemiringTag::Q).is_err());
        assert!(Weight::parse("2", SemiringTag::B).is_err());
    }
}
