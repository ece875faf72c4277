pub mod cli;
pub mod clifford;
pub mod exact;
pub mod f2;
pub mod majorana;
pub mod pin1;
pub mod quadform;
pub mod surface;
pub mod tqft;
