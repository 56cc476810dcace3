//! Constrained knots in lens spaces: parameters, knot Floer Euler characteristics,
//! knot-group words, surgery descriptions and census classification.

pub mod arith;
pub mod census;
pub mod cli;
pub mod floer;
pub mod groups;
pub mod knots;
pub mod polynomials;
pub mod surgery;
pub mod twobridge;
