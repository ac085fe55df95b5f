pub mod error;
pub mod partitions;
pub mod polynomial;
pub mod rational;
pub mod varpoly;
pub mod transforms;
pub mod convolution;
pub mod freeprob;
pub mod families;
pub mod divisibility;
pub mod matrix_oracle;
pub mod io;
pub mod cli;
