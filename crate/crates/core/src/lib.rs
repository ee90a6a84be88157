pub mod bch;
pub mod chevalley;
pub mod contact;
pub mod cubic;
pub mod error;
pub mod extraction;
pub mod finite_field;
pub mod jordan;
pub mod linalg;
pub mod moment;
pub mod nilpotent;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod structure;
pub mod verify;
