//! Twisted torus knots: braid generators, Jones polynomials, DT codes and a
//! framed-link surgery calculus.

pub mod braid;
pub mod diagram;
pub mod jones;
pub mod poly;
pub mod surgery;
