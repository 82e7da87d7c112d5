pub mod diagram;
pub mod exec;
pub mod factor;
pub mod invariants;
pub mod laurent;
pub mod obstructions;
pub mod search;
