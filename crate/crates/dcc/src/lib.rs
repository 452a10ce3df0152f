//! Doubled color codes: construction, maximum-likelihood decoding over gauge
//! cosets, and Monte Carlo simulation of a fault-tolerant Clifford+T protocol.

pub mod codefamily;
pub mod csscode;
pub mod decoder;
pub mod f2core;
pub mod noise;
pub mod protocol;
