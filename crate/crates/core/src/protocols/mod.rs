//! Information-flow diagrams with their vertex ledger, and exact state-vector
//! simulations of teleportation and superdense coding.

mod diagram;
mod teleport;

pub use diagram::{
    builtin_diagram, builtin_diagrams, check_conservation, ConservationReport, Edge, Endpoint,
    InfoDiagram, Species, SpeciesWeights, Vertex, VertexBalance, VertexKind, SINK, SOURCE,
};
pub use teleport::{
    bell_basis, bell_index, superdense, superdense_outcome, teleport, teleport_branch,
    teleport_with_rng, BellOutcome, SuperdenseOutcome, TeleportBranch, TeleportOutcome,
};
