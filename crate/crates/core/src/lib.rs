//! Exact tools for deciding the half-plane property of small matroids.

pub mod catalog;
pub mod certificate;
pub mod linalg;
pub mod matroid;
pub mod negsearch;
pub mod pipeline;
pub mod poly;
pub mod rational;
pub mod realroot;
pub mod sdp;
pub mod sos;
pub mod subset;
