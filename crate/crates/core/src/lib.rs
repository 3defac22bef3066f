pub mod io;
pub mod kh;
pub mod linalg;
pub mod monoid;
pub mod polyhedral;
pub mod spectral;
pub mod verify;
