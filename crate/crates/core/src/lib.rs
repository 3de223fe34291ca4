pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod families;
pub mod jacobian;
pub mod modp;
pub mod torsion;
