#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod coeff;
mod error;
pub mod exterior;
pub mod dolbeault;
pub mod groebner;
pub mod koszul;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod residue;
pub mod vres;

pub use error::{Error, Result};
pub use groebner::{buchberger, lift_in_ideal, normal_form, standard_monomials, GroebnerBasis, Ideal, StandardMonomials};
pub use poly::{Monomial, MonomialOrder, Polynomial, Ring};
pub use rational::GaussianRational;
