//! Finite multi-agent relational models with distributed knowledge and three
//! group communication updates (everyone shares everything, a group shares
//! everything, a group shares what it knows about a topic), together with a
//! reduction-based translation to the static language and bounded validity
//! search.

pub mod cli;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod formula;
pub mod kripke;
pub mod semantics;
pub mod transforms;
pub mod translate;
pub mod validity;

pub use error::{Error, Result};
pub use formula::{parse, print, Formula};
pub use kripke::{AgentSet, Model, ModelSpec, PointedModel, Relation, WorldId, WorldSet};
