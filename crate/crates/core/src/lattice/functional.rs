use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::lattice::{Generator, HighestWeight, LatticePoint};
use crate::scalar::Scalar;

/// Polynomial `Σ c_ij aⁱ bʲ` in the lattice coordinates.
///
/// Elements of the Cartan subalgebra act on `Γ` as affine functions of
/// `(a, b)`; products of them give every statistic in this crate.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Functional<T> {
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Scalar> Functional<T> {
    pub fn zero() -> Self {
        Functional {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c · aⁱ bʲ`.
    pub fn monomial(i: u32, j: u32, c: T) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Functional { terms }
    }

    pub fn a() -> Self {
        Self::monomial(1, 0, T::one())
    }

    pub fn b() -> Self {
        Self::monomial(0, 1, T::one())
    }

    pub fn a_minus_b() -> Self {
        Self::a() - Self::b()
    }

    /// The degree `−d`.
    pub fn degree() -> Self {
        Self::a()
    }

    /// The coroot `α_j^∨` as a function on the lattice of `hw`.
    pub fn coroot(j: Generator, hw: &HighestWeight) -> Self {
        let two = T::from_i64(2);
        let label = Self::constant(T::from_i64(hw.label(j)));
        match j {
            Generator::Zero => label - Self::a_minus_b().scale(&two),
            Generator::One => label + Self::a_minus_b().scale(&two),
        }
    }

    /// The finite weight `α₁^∨`.
    pub fn finite_weight(hw: &HighestWeight) -> Self {
        Self::coroot(Generator::One, hw)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), T)>) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in terms {
            out.add_term(i, j, c);
        }
        out
    }

    fn add_term(&mut self, i: u32, j: u32, c: T) {
        let entry = self.terms.entry((i, j)).or_insert_with(T::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &T)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> T {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(T::zero)
    }

    /// Highest total degree of a nonzero term; 0 for constants and for zero.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, v)| (k, v.clone() * c.clone())))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(T::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, p: &LatticePoint) -> T {
        let a = T::from_i64(p.a);
        let b = T::from_i64(p.b);
        self.terms.iter().fold(T::zero(), |acc, (&(i, j), c)| {
            acc + c.clone() * pow_scalar(&a, i) * pow_scalar(&b, j)
        })
    }

    /// Maps coefficients into another scalar type.
    pub fn convert<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Functional<U> {
        Functional::from_terms(self.terms.iter().map(|(&k, v)| (k, f(v))))
    }
}

fn pow_scalar<T: Scalar>(x: &T, k: u32) -> T {
    (0..k).fold(T::one(), |acc, _| acc * x.clone())
}

impl<T: Scalar> Default for Functional<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Add for &Functional<T> {
    type Output = Functional<T>;

    fn add(self, rhs: &Functional<T>) -> Functional<T> {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &Functional<T> {
    type Output = Functional<T>;

    fn sub(self, rhs: &Functional<T>) -> Functional<T> {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul for &Functional<T> {
    type Output = Functional<T>;

    fn mul(self, rhs: &Functional<T>) -> Functional<T> {
        let mut out = Functional::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &Functional<T> {
    type Output = Functional<T>;

    fn neg(self) -> Functional<T> {
        Functional::from_terms(self.terms.iter().map(|(&k, v)| (k, -v.clone())))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<T: Scalar> $tr for Functional<T> {
            type Output = Functional<T>;

            fn $method(self, rhs: Functional<T>) -> Functional<T> {
                (&self).$method(&rhs)
            }
        }

        impl<T: Scalar> $tr<&Functional<T>> for Functional<T> {
            type Output = Functional<T>;

            fn $method(self, rhs: &Functional<T>) -> Functional<T> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for Functional<T> {
    type Output = Functional<T>;

    fn neg(self) -> Functional<T> {
        -&self
    }
}

impl<T: Scalar> fmt::Display for Functional<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&(i, j), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            match i {
                0 => {}
                1 => write!(f, "a")?,
                _ => write!(f, "a^{i}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "b")?,
                _ => write!(f, "b^{j}")?,
            }
        }
        Ok(())
    }
}
