pub mod bounds;
pub mod circuits;
pub mod eval;
pub mod inversion;
pub mod machine;
pub mod padding;
pub mod rim;
pub mod words;
