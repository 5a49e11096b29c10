//! Injective colorings, open packings, and the graph families they are
//! studied on: Sierpiński graphs, rooted products and coronas, Kneser graphs.

pub mod bitset;
pub mod clique_cover;
pub mod families;
pub mod graph;
pub mod harness;
pub mod kneser;
pub mod oracle;
pub mod solvers;
pub mod structured;

pub use bitset::BitSet;
pub use graph::{
    validate_certificate, Certificate, CertificateKind, ConflictMode, Distance, EdgeColoring,
    Graph, GraphError, Partition, Verdict, VertexColoring, VertexSet, Violation,
};
