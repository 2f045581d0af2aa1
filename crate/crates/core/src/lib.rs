pub mod arith;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod interval_map;
pub mod kneading;
pub mod periodics;
pub mod report;
pub mod shift;
pub mod symbols;
