//! Coefficient rings for forms.

use alloc::vec::Vec;
use core::fmt;

use crate::poly::Polynomial;
use crate::rational::GaussianRational;

/// Direction of a `dbar` derivative: a `dzb_j` or the formal cutoff differential.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum DbarDir {
    Zb(usize),
    Rho,
}

/// A commutative ring of (even) coefficients.
pub trait Coefficient: Clone + fmt::Debug + fmt::Display {
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scaled(&self, c: &GaussianRational) -> Self;

    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
}

/// Coefficients on which `dbar` acts; returns the nonzero partials
/// `d/dzb_j` (and `d/drho` for the cutoff ring).
pub trait Antiholomorphic: Coefficient {
    fn dbar_parts(&self) -> Vec<(DbarDir, Self)>;
}

impl Coefficient for GaussianRational {
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &GaussianRational) -> Self {
        self * c
    }
}

impl Antiholomorphic for GaussianRational {
    fn dbar_parts(&self) -> Vec<(DbarDir, Self)> {
        Vec::new()
    }
}

impl Coefficient for Polynomial {
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &GaussianRational) -> Self {
        self.scale(c)
    }
}

/// Polynomials in `z` only are holomorphic; in the ring with conjugates the
/// partials with respect to `zb_j` are taken.
impl Antiholomorphic for Polynomial {
    fn dbar_parts(&self) -> Vec<(DbarDir, Self)> {
        let ring = self.ring();
        if !ring.conjugates {
            return Vec::new();
        }
        (0..ring.n)
            .filter_map(|j| {
                let d = self.derivative(ring.n + j);
                (!d.is_zero()).then_some((DbarDir::Zb(j), d))
            })
            .collect()
    }
}
