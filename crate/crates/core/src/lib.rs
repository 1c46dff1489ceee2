pub mod curves;
pub mod groebner;
pub mod maps;
pub mod numberfield;
pub mod parser;
pub mod polyring;
pub mod refgroups;
