//! Scalar abstraction shared by plain complex numbers and jets.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Commutative ring operations by value.
pub trait Ring:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Complex scalars with analytic elementary functions.
///
/// Functions with a singular set return [`Error::SingularConstantTerm`] when the
/// value sits on it. Logarithms and complex powers use the principal branch.
pub trait Scalar: Ring + Debug + Send + Sync {
    fn value(&self) -> C64;
    fn constant_like(&self, c: C64) -> Self;
    fn scale(&self, c: C64) -> Self;
    fn add_const(&self, c: C64) -> Self;
    fn recip(&self) -> Result<Self>;
    fn exp(&self) -> Self;
    fn ln(&self) -> Result<Self>;
    fn powc(&self, p: C64) -> Result<Self>;
    fn powi(&self, n: i32) -> Result<Self>;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn sqrt(&self) -> Result<Self>;

    fn tan(&self) -> Result<Self> {
        Ok(self.sin() * self.cos().recip()?)
    }

    fn real_like(&self, x: f64) -> Self {
        self.constant_like(c(x))
    }

    fn zero_like(&self) -> Self {
        self.real_like(0.0)
    }

    fn one_like(&self) -> Self {
        self.real_like(1.0)
    }

    fn times(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn plus(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn minus(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.times(&other.recip()?))
    }

    fn square(&self) -> Self {
        self.times(self)
    }
}

fn singular(op: &'static str, v: C64) -> Error {
    Error::SingularConstantTerm {
        op,
        value: format!("{v}"),
    }
}

pub(crate) fn check_nonzero(op: &'static str, v: C64) -> Result<()> {
    if v == C64::new(0.0, 0.0) || !v.is_finite() {
        Err(singular(op, v))
    } else {
        Ok(())
    }
}

impl Scalar for C64 {
    fn value(&self) -> C64 {
        *self
    }
    fn constant_like(&self, c: C64) -> Self {
        c
    }
    fn scale(&self, c: C64) -> Self {
        self * c
    }
    fn add_const(&self, c: C64) -> Self {
        self + c
    }
    fn recip(&self) -> Result<Self> {
        check_nonzero("recip", *self)?;
        Ok(self.inv())
    }
    fn exp(&self) -> Self {
        Complex64::exp(*self)
    }
    fn ln(&self) -> Result<Self> {
        check_nonzero("ln", *self)?;
        Ok(Complex64::ln(*self))
    }
    fn powc(&self, p: C64) -> Result<Self> {
        check_nonzero("powc", *self)?;
        Ok(Complex64::powc(*self, p))
    }
    fn powi(&self, n: i32) -> Result<Self> {
        if n < 0 {
            check_nonzero("powi", *self)?;
        }
        Ok(Complex64::powi(self, n))
    }
    fn sin(&self) -> Self {
        Complex64::sin(*self)
    }
    fn cos(&self) -> Self {
        Complex64::cos(*self)
    }
    fn sqrt(&self) -> Result<Self> {
        Ok(Complex64::sqrt(*self))
    }
    fn tan(&self) -> Result<Self> {
        let cs = Complex64::cos(*self);
        check_nonzero("tan", cs)?;
        Ok(Complex64::sin(*self) / cs)
    }
}
