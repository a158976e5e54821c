pub mod affine;
pub mod channel;
pub mod derivative;
pub mod error;
pub mod field;
pub mod frs;
pub mod frs_decode;
pub mod hensel;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod multiplicity;
pub mod multipoly;
pub mod oracle;
pub mod par;
pub mod poly;
