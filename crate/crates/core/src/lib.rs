pub mod config;
pub mod experiment;
pub mod metrics;
pub mod network;
pub mod policy;
pub mod sim;
pub mod stationary;
