//! Command-line front end for the proof checker, model evaluator and
//! countermodel finder, plus the shipped proof corpus.

pub mod app;
pub mod corpus;
