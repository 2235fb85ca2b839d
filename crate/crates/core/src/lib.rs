pub mod catalog;
pub mod cli;
pub mod congruence;
pub mod diagram;
pub mod dsu;
pub mod error;
pub mod monoid;
pub mod suite;
