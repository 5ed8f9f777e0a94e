pub mod caps;
pub mod chartable;
pub mod corpus;
pub mod cyclotomic;
pub mod duality;
pub mod formats;
pub mod dynsys;
pub mod group;
pub mod measure;
pub mod modular;
pub mod verify;
