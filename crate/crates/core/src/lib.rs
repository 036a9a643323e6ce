pub mod acc;
pub mod bits;
pub mod corpus;
pub mod eval;
pub mod formula;
pub mod nepo;
pub mod par;
pub mod poly;
pub mod proof;
pub mod prop;
pub mod sat;
pub mod seq;
pub mod sexp;
pub mod tm;
pub mod translate;
