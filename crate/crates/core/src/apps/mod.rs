//! Builders and decoders for the three applications.

pub mod covering;
pub mod ramsey;
pub mod steiner;
