//! Thomason's lollipop walk on cubic graphs, an exponential family for it, and the
//! word/automaton machinery that counts its steps.

pub mod engine;
pub mod experiment;
pub mod family;
pub mod graph;
pub mod oracle;
pub mod words;
