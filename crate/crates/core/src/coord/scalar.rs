use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The number field a coordinatization lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Ring {
    /// The rationals.
    Rational,
    /// Q(phi) with phi^2 = phi + 1.
    Golden,
    /// Q(w) with w^2 = -1 - w.
    Eisenstein,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::Rational => "rational",
            Ring::Golden => "golden",
            Ring::Eisenstein => "eisenstein",
        }
    }

    pub fn from_name(s: &str) -> Option<Ring> {
        match s {
            "rational" => Some(Ring::Rational),
            "golden" | "phi" => Some(Ring::Golden),
            "eisenstein" | "w" | "omega" => Some(Ring::Eisenstein),
            _ => None,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `a + b*alpha` where alpha is phi or w depending on the ring. In the
/// rational ring `b` is always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ExactScalar {
    ring: Ring,
    a: BigRational,
    b: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ExactScalar {
    pub fn new(ring: Ring, a: BigRational, b: BigRational) -> Self {
        assert!(ring != Ring::Rational || b.is_zero(), "rational scalar with irrational part");
        ExactScalar { ring, a, b }
    }

    pub fn from_ints(ring: Ring, a: i64, b: i64) -> Self {
        ExactScalar::new(ring, rat(a), rat(b))
    }

    pub fn int(ring: Ring, a: i64) -> Self {
        ExactScalar::from_ints(ring, a, 0)
    }

    pub fn zero(ring: Ring) -> Self {
        ExactScalar::int(ring, 0)
    }

    pub fn one(ring: Ring) -> Self {
        ExactScalar::int(ring, 1)
    }

    /// phi or w.
    pub fn alpha(ring: Ring) -> Self {
        assert!(ring != Ring::Rational);
        ExactScalar::from_ints(ring, 0, 1)
    }

    /// w^2 = -1 - w.
    pub fn omega_squared() -> Self {
        ExactScalar::from_ints(Ring::Eisenstein, -1, -1)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Reinterprets a scalar in another ring. Only rational values move.
    pub fn in_ring(&self, ring: Ring) -> Option<Self> {
        if self.ring == ring {
            Some(self.clone())
        } else if self.b.is_zero() {
            Some(ExactScalar { ring, ..self.clone() })
        } else {
            None
        }
    }

    fn join(&self, other: &Self) -> Ring {
        match (self.ring, other.ring) {
            (x, y) if x == y => x,
            (Ring::Rational, y) if self.b.is_zero() => y,
            (x, Ring::Rational) if other.b.is_zero() => x,
            (x, y) => panic!("mixing {x} and {y} scalars"),
        }
    }

    /// Complex conjugate: the identity except in the Eisenstein ring, where
    /// w goes to w^2.
    pub fn conj(&self) -> Self {
        match self.ring {
            Ring::Rational | Ring::Golden => self.clone(),
            Ring::Eisenstein => ExactScalar {
                ring: self.ring,
                a: &self.a - &self.b,
                b: -&self.b,
            },
        }
    }

    /// The other root's image: phi -> 1 - phi in the golden ring, complex
    /// conjugation in the Eisenstein ring.
    fn galois(&self) -> Self {
        match self.ring {
            Ring::Rational => self.clone(),
            Ring::Golden => ExactScalar { ring: self.ring, a: &self.a + &self.b, b: -&self.b },
            Ring::Eisenstein => self.conj(),
        }
    }

    /// Field norm, `x * galois(x)`.
    pub fn norm(&self) -> BigRational {
        let (a, b) = (&self.a, &self.b);
        match self.ring {
            Ring::Rational => a.clone(),
            Ring::Golden => a * a + a * b - b * b,
            Ring::Eisenstein => a * a - a * b + b * b,
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.ring == Ring::Rational {
            return Some(ExactScalar { ring: self.ring, a: self.a.recip(), b: self.b.clone() });
        }
        let n = self.norm();
        let g = self.galois();
        Some(ExactScalar { ring: self.ring, a: &g.a / &n, b: &g.b / &n })
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self * &other.inverse()?)
    }

    /// Real numeric value of a rational or golden scalar.
    pub fn to_f64(&self) -> Option<f64> {
        use num_traits::ToPrimitive;
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        match self.ring {
            Ring::Rational => self.a.to_f64(),
            Ring::Golden => Some(self.a.to_f64()? + self.b.to_f64()? * phi),
            Ring::Eisenstein => self.b.is_zero().then(|| self.a.to_f64()).flatten(),
        }
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar { ring: self.join(rhs), a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar { ring: self.join(rhs), a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let ring = self.join(rhs);
        let (a, b, c, d) = (&self.a, &self.b, &rhs.a, &rhs.b);
        let bd = b * d;
        let (x, y) = match ring {
            Ring::Rational => (a * c, BigRational::zero()),
            // (a + b phi)(c + d phi) with phi^2 = phi + 1
            Ring::Golden => (a * c + &bd, a * d + b * c + &bd),
            // (a + b w)(c + d w) with w^2 = -1 - w
            Ring::Eisenstein => (a * c - &bd, a * d + b * c - &bd),
        };
        ExactScalar { ring, a: x, b: y }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { ring: self.ring, a: -&self.a, b: -&self.b }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &BigRational, sym: &str, lead: bool) -> fmt::Result {
    let neg = c.is_negative();
    if neg {
        f.write_str("-")?;
    } else if !lead {
        f.write_str("+")?;
    }
    let m = c.abs();
    if m.is_one() {
        f.write_str(sym)
    } else {
        write!(f, "{m}*{sym}")
    }
}

impl fmt::Display for ExactScalar {
    /// Writes values in the coordinatization grammar: `0`, `-2`, `1/2`,
    /// `phi-1`, `w2`, `3/2*w+1`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sym = if self.ring == Ring::Golden { "phi" } else { "w" };
        if self.ring == Ring::Eisenstein && self.a == self.b {
            // a + a w = -a w^2
            return write_coeff(f, &-&self.a, "w2", true);
        }
        write_coeff(f, &self.b, sym, true)?;
        if !self.a.is_zero() {
            if self.a.is_negative() {
                write!(f, "{}", self.a)?;
            } else {
                write!(f, "+{}", self.a)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_square() {
        let phi = ExactScalar::alpha(Ring::Golden);
        assert_eq!(&phi * &phi, &phi + &ExactScalar::one(Ring::Golden));
    }

    #[test]
    fn omega_cubed_is_one() {
        let w = ExactScalar::alpha(Ring::Eisenstein);
        let w2 = &w * &w;
        assert_eq!(w2, ExactScalar::omega_squared());
        assert_eq!(&w2 * &w, ExactScalar::one(Ring::Eisenstein));
        assert_eq!(w.conj(), w2);
        let sum = &(&w + &w2) + &ExactScalar::one(Ring::Eisenstein);
        assert!(sum.is_zero());
    }

    #[test]
    fn inverses() {
        for ring in [Ring::Rational, Ring::Golden, Ring::Eisenstein] {
            for (a, b) in [(1, 0), (3, 0), (2, 5), (-1, 1), (0, 1), (7, -3)] {
                if ring == Ring::Rational && b != 0 {
                    continue;
                }
                let x = ExactScalar::from_ints(ring, a, b);
                let y = x.inverse().unwrap();
                assert_eq!(&x * &y, ExactScalar::one(ring), "{ring} {a} {b}");
            }
        }
        assert!(ExactScalar::zero(Ring::Golden).inverse().is_none());
    }

    #[test]
    fn display() {
        let g = |a, b| ExactScalar::from_ints(Ring::Golden, a, b).to_string();
        let e = |a, b| ExactScalar::from_ints(Ring::Eisenstein, a, b).to_string();
        assert_eq!(g(-1, 1), "phi-1");
        assert_eq!(g(0, -1), "-phi");
        assert_eq!(g(2, 3), "3*phi+2");
        assert_eq!(e(0, 1), "w");
        assert_eq!(e(-1, -1), "w2");
        assert_eq!(e(1, 1), "-w2");
        assert_eq!(ExactScalar::int(Ring::Rational, -2).to_string(), "-2");
    }
}
