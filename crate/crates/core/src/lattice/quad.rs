//! Exact arithmetic in `Q(√d)` for a fixed positive rational `d`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::series::ExactScalar;

/// `a + b√d`. When `d` is a rational square the element is kept with `b = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quad {
    a: ExactScalar,
    b: ExactScalar,
    d: ExactScalar,
}

fn rational_sqrt(d: &ExactScalar) -> Option<ExactScalar> {
    if d.is_negative() {
        return None;
    }
    let (n, m) = (d.numer(), d.denom());
    let (rn, rm): (BigInt, BigInt) = (num_integer::Roots::sqrt(n), num_integer::Roots::sqrt(m));
    (&rn * &rn == *n && &rm * &rm == *m).then(|| ExactScalar::new(rn, rm))
}

impl Quad {
    pub fn rational(a: ExactScalar, d: ExactScalar) -> Self {
        Quad { a, b: ExactScalar::zero(), d }
    }

    pub fn new(a: ExactScalar, b: ExactScalar, d: ExactScalar) -> Self {
        match rational_sqrt(&d) {
            Some(r) => Quad { a: a + b * r, b: ExactScalar::zero(), d },
            None => Quad { a, b, d },
        }
    }

    /// `√d` itself.
    pub fn sqrt_of(d: ExactScalar) -> Self {
        Quad::new(ExactScalar::zero(), num_traits::One::one(), d)
    }

    pub fn radicand(&self) -> ExactScalar {
        self.d.clone()
    }

    pub fn rational_part(&self) -> &ExactScalar {
        &self.a
    }

    pub fn root_part(&self) -> &ExactScalar {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn recip(&self) -> Option<Self> {
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        if norm.is_zero() {
            return None;
        }
        Some(Quad { a: &self.a / &norm, b: -(&self.b / &norm), d: self.d.clone() })
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * self.d.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// Sign of the real number, exactly.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // a and b√d have opposite signs: compare a² with b²d
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * &self.d;
        if lhs > rhs {
            sa
        } else if lhs < rhs {
            sb
        } else {
            0
        }
    }
}

fn sign(x: &ExactScalar) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

impl Add for &Quad {
    type Output = Quad;
    fn add(self, o: &Quad) -> Quad {
        debug_assert_eq!(self.d, o.d);
        Quad { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d.clone() }
    }
}

impl Sub for &Quad {
    type Output = Quad;
    fn sub(self, o: &Quad) -> Quad {
        debug_assert_eq!(self.d, o.d);
        Quad { a: &self.a - &o.a, b: &self.b - &o.b, d: self.d.clone() }
    }
}

impl Mul for &Quad {
    type Output = Quad;
    fn mul(self, o: &Quad) -> Quad {
        debug_assert_eq!(self.d, o.d);
        Quad {
            a: &self.a * &o.a + &self.b * &o.b * &self.d,
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d.clone(),
        }
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}
