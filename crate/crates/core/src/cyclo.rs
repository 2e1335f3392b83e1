//! Exact arithmetic in the eighth cyclotomic field ℚ(ζ), ζ⁴ = −1.
//!
//! ζ is the square root of the imaginary unit `i = ζ²` used throughout the
//! oscillator formulas. The element ζ − ζ³ squares to 2.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Serialize, Serializer};

use crate::rational::Rational;
use crate::{Error, Result};

/// `c0 + c1·ζ + c2·ζ² + c3·ζ³` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    c: [Rational; 4],
}

impl Cyclotomic {
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        Cyclotomic { c: [c0, c1, c2, c3] }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::ONE)
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { c: [r, Rational::ZERO, Rational::ZERO, Rational::ZERO] }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    /// ζ^k for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c: [Rational; 4] = Default::default();
        if k < 4 {
            c[k] = Rational::ONE;
        } else {
            c[k - 4] = -Rational::ONE;
        }
        Cyclotomic { c }
    }

    /// The primitive eighth root of unity ζ = e^{iπ/4}; it squares to `i`.
    pub fn qroot() -> Self {
        Self::zeta_pow(1)
    }

    /// The imaginary unit ζ².
    pub fn i() -> Self {
        Self::zeta_pow(2)
    }

    /// √2 = ζ − ζ³.
    pub fn sqrt2() -> Self {
        Cyclotomic::new(Rational::ZERO, Rational::ONE, Rational::ZERO, -Rational::ONE)
    }

    /// 1/√2 = (ζ − ζ³)/2.
    pub fn inv_sqrt2() -> Self {
        let h = Rational::new(1, 2);
        Cyclotomic::new(Rational::ZERO, h.clone(), Rational::ZERO, -h)
    }

    pub fn coefficients(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Rational::is_zero)
    }

    /// The value as a rational, if it lies in ℚ.
    pub fn to_rational(&self) -> Option<Rational> {
        self.c[1..].iter().all(Rational::is_zero).then(|| self.c[0].clone())
    }

    /// Complex conjugation ζ ↦ ζ⁻¹ = −ζ³.
    pub fn conj(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        Cyclotomic { c: [c0.clone(), -c3, -c2, -c1] }
    }

    /// The Galois automorphism ζ ↦ ζ^k for odd `k`.
    fn galois(&self, k: usize) -> Self {
        let mut out: [Rational; 4] = Default::default();
        for (j, cj) in self.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let e = (j * k) % 8;
            if e < 4 {
                out[e] += cj;
            } else {
                out[e - 4] -= cj;
            }
        }
        Cyclotomic { c: out }
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_one() {
            return self.clone();
        }
        Cyclotomic { c: std::array::from_fn(|j| &self.c[j] * r) }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(r.recip().expect("nonzero")));
        }
        // x · σ3(x) · σ5(x) · σ7(x) is the field norm, a nonzero rational.
        let others = &(&self.galois(3) * &self.galois(5)) * &self.galois(7);
        let norm = (self * &others)
            .to_rational()
            .expect("field norm is rational");
        Ok(others.scale(&norm.recip().expect("norm of nonzero element")))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Sign of a real element `a + b·√2`; `None` if the element is not real.
    pub fn real_sign(&self) -> Option<Ordering> {
        let [a, b, c2, c3] = &self.c;
        if !c2.is_zero() || *c3 != -b {
            return None;
        }
        let sa = a.cmp(&Rational::ZERO);
        let sb = b.cmp(&Rational::ZERO);
        Some(match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            // Opposite signs: compare a² with 2b².
            (x, _) => {
                let a2 = a * a;
                let b2 = &(b * b) * &Rational::from_integer(2);
                match a2.cmp(&b2) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclotomic::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_integer(n)
    }
}

impl Add<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic { c: std::array::from_fn(|j| &self.c[j] + &rhs.c[j]) }
    }
}

impl Sub<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic { c: std::array::from_fn(|j| &self.c[j] - &rhs.c[j]) }
    }
}

impl Mul<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let mut out: [Rational; 4] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                let k = i + j;
                if k < 4 {
                    out[k] += &p;
                } else {
                    out[k - 4] -= &p;
                }
            }
        }
        Cyclotomic { c: out }
    }
}

impl Div<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_div(rhs).expect("cyclotomic division by zero")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { c: std::array::from_fn(|j| -&self.c[j]) }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

/// Renders `a + b·z + c·z2 + d·z3`, omitting zero parts.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNITS: [&str; 4] = ["", "z", "z2", "z3"];
        let mut first = true;
        for (c, unit) in self.c.iter().zip(UNITS) {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if unit.is_empty() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}·{unit}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::cmp::Ordering;

    fn z(k: i64) -> Cyclotomic {
        Cyclotomic::zeta_pow(k)
    }

    #[test]
    fn defining_relation() {
        let zeta = z(1);
        assert_eq!(&(&(&zeta * &zeta) * &zeta) * &zeta, Cyclotomic::from_integer(-1));
        assert_eq!(&z(2) * &z(2), Cyclotomic::from_integer(-1));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = &z(1) - &z(3);
        assert_eq!(s, Cyclotomic::sqrt2());
        assert_eq!(&s * &s, Cyclotomic::from_integer(2));
        assert_eq!(&Cyclotomic::sqrt2() * &Cyclotomic::inv_sqrt2(), Cyclotomic::one());
    }

    #[test]
    fn qroot_squares_to_i() {
        assert_eq!(&Cyclotomic::qroot() * &Cyclotomic::qroot(), Cyclotomic::i());
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(z(2).conj(), -z(2));
        assert_eq!(z(1).conj().conj(), z(1));
        assert_eq!(Cyclotomic::sqrt2().conj(), Cyclotomic::sqrt2());
        assert_eq!(z(1).conj(), z(-1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(Cyclotomic::one().checked_div(&Cyclotomic::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn display() {
        assert_eq!(Cyclotomic::zero().to_string(), "0");
        assert_eq!(Cyclotomic::inv_sqrt2().to_string(), "1/2·z - 1/2·z3");
        assert_eq!((-Cyclotomic::i()).to_string(), "-1·z2");
    }

    pub(crate) fn arb_cyclotomic() -> impl Strategy<Value = Cyclotomic> {
        proptest::array::uniform4((-50i64..50, 1i64..12)).prop_map(|parts| {
            let [a, b, c, d] = parts.map(|(n, den)| Rational::new(n, den));
            Cyclotomic::new(a, b, c, d)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_cyclotomic(), b in arb_cyclotomic(), c in arb_cyclotomic()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn inverse_is_exact(a in arb_cyclotomic()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(&a * &a.inverse().unwrap(), Cyclotomic::one());
        }

        #[test]
        fn conjugation_is_an_involutive_ring_map(a in arb_cyclotomic(), b in arb_cyclotomic()) {
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
            prop_assert_eq!(a.conj().conj(), a.clone());
            let n = &a * &a.conj();
            prop_assert_eq!(n.conj(), n.clone());
            let expected = if a.is_zero() { Ordering::Equal } else { Ordering::Greater };
            prop_assert_eq!(n.real_sign(), Some(expected));
        }
    }
}
