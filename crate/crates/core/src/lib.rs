pub mod cli;
pub mod endo;
pub mod error;
pub mod exec;
pub mod hom_functor;
pub mod quiver;
pub mod rigid;
pub mod strings;
pub mod tube;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use quiver::{Presentation, Quiver};
pub use rigid::{RigidObject, SubwingTriple};
pub use tube::{ClusterHom, Indec, Rank, Wing};
