pub mod blocks;
pub mod builder;
pub mod bundle;
pub mod cli;
pub mod code;
pub mod complex;
pub mod error;
pub mod geom;
pub mod gf2;
pub mod graph;
