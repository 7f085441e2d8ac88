//! Simulator and analytics toolkit for on-off power allocation in
//! single-hop wireless networks with i.i.d. fading channels.
//!
//! The crate is organized around the lifecycle of one experiment:
//!
//! * [`fading`] — channel distributions and reproducible gain sampling;
//! * [`network`] — the exact SINR rate engine;
//! * [`decentralized`] — threshold activation (each link decides from its
//!   own direct coefficient) and its Jensen sum-rate bound;
//! * [`centralized`] — candidate filtering, delta-capped interference
//!   graphs, and maximum-clique link selection;
//! * [`scaling`] — the closed-form throughput laws, threshold/delta
//!   optimizers, regime classifier, and tradeoff curves;
//! * [`experiments`] — the seeded Monte Carlo harness and its CSV formats.
//!
//! Everything is deterministic given a `(master seed, stream)` pair; see
//! [`fading`] for the exact addressing scheme.

pub mod centralized;
pub mod cli;
pub mod decentralized;
pub mod error;
pub mod experiments;
pub mod fading;
pub mod network;
pub mod numeric;
pub mod scaling;

pub use error::{Error, Result};
pub use fading::{ChannelMatrix, ChannelSampler, FadingModel, Seed};
pub use network::{NetworkParams, PowerVector, ThroughputReport};
