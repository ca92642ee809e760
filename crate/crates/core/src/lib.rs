//! Non-orientable spanning-surface invariants of knots.
//!
//! The crate works from planar-diagram (PD) codes and computes, in exact
//! arithmetic, the quantities that organise the non-orientable geography of a
//! knot: Kauffman state surfaces with their first Betti numbers and normal
//! Euler numbers, the knot signature (Goeritz / Gordon–Litherland and
//! Traczyk), wedge regions in the `(e, b)` plane, the Euler-normalized Betti
//! numbers `Γ±`, Turaev genus of a diagram, pinch surfaces of torus knots and
//! Hatcher–Oertel edgepath systems for pretzel knots.
//!
//! Module map:
//!
//! * [`diagram`]: PD parsing, validation, generators (pretzel, torus,
//!   connected sum), checkerboard coloring and flat band moves.
//! * [`states`]: Kauffman states, state circles, state-surface invariants.
//! * [`signature`]: integer-matrix signature and knot signatures.
//! * [`geography`]: wedges, regions, `Γ±` and the slice-torus style bounds.
//! * [`torus`]: pinch moves and pinch surfaces.
//! * [`edgepath`]: edgepath systems and candidate-surface tables.
//! * [`catalog`]: JSON-lines knot records and batch reports.
//! * [`svg`]: deterministic SVG rendering of geography regions.

pub mod catalog;
pub mod diagram;
pub mod edgepath;
pub mod geography;
mod portgraph;
pub mod rational;
pub mod signature;
pub mod states;
pub mod svg;
pub mod torus;
mod unionfind;

pub use catalog::{batch_report, load_catalog, save_catalog, KnotRecord};
pub use diagram::{Crossing, DiagramError, KnotDiagram};
pub use geography::{GammaPair, GeographyRegion, Wedge};
pub use rational::Rational;
pub use states::{Resolution, State, StateSurface, SurfacePoint};
