//! Exact computer algebra for centers of rings of PD differential operators
//! over Z/p^{n+1}: Witt vector arithmetic, Weyl algebras at every level,
//! the center maps for odd p and p = 2, deformation Poisson brackets, the
//! Serre and inverse Cartier morphisms, and an independent bounded-degree
//! center solver over Z/p^k.

pub mod error;
pub mod howell;
pub mod poly;
pub mod ring;
pub mod weyl;
pub mod witt;

pub use error::{Error, Result};
pub use howell::{ModMatrix, SubmoduleBasis};
pub use poly::{CoeffRing, GradedExp, IntegerRing, ModRing, MultiPoly, PolyRing};
pub use ring::{binomial, BigInt, ModInt};
pub use weyl::WeylElement;
pub use witt::{PsiPolynomial, WittVector};

pub mod center;
pub mod poisson2;
pub mod report;
pub mod sample;
pub mod suites;

pub use center::CenterPoly;
pub use report::{Failure, Report};
