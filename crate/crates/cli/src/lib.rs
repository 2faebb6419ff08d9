//! JSON and CSV formats and tree rendering for the `arf` command.

pub mod formats;
pub mod render;
