//! Census engine for oriented special spines over 4-regular graphs.
//!
//! * [`graph`]: dart-based 4-regular multigraphs, canonical codes and
//!   isomorph-free enumeration of the simple (`A_n`) and general (`C_n`)
//!   connected classes.
//! * [`spine`]: the decorated spine model, boundary tracing into 2-cells, the
//!   rotation move and spine canonical codes.
//! * [`reduction`]: cell reduction to at most two cells, loop-vertex gluing and
//!   the exhaustive minimum-cell oracle.
//! * [`triangulation`]: the dual ideal triangulation and an independent
//!   edge-class count.
//! * [`census`]: counting formulas, the one-cell census and bound tables.
//! * [`lemmas`]: exhaustive checks of the edge/vertex cell predicates on
//!   minimal spines.

pub mod census;
pub mod graph;
pub mod lemmas;
pub mod reduction;
pub mod sample;
pub mod spine;
pub mod triangulation;

pub use graph::{CanonicalCode, GraphError, RegularGraph};
pub use spine::{Chirality, Spine, SpineError};
