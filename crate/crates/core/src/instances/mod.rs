//! Paper-style fixtures, random generators and the JSON instance document.

pub mod document;
pub mod fixtures;
pub mod generate;
