//! Small-cancellation machinery over free-group presentations, Stallings
//! foldings, and embeddings of partial ascending HNN extensions of free
//! groups into ascending ones, with checkable certificates.

pub mod dehn;
pub mod error;
pub mod hnn;
pub mod presentation;
pub mod ratio;
pub mod stallings;
pub mod subquotient;
pub mod words;

pub use error::{Error, Result};
pub use hnn::{AscHnnResult, Construction, EmbeddingCertificate, PartialAscHnn};
pub use presentation::{Presentation, Symmetrization};
pub use ratio::Ratio;
pub use stallings::CoreGraph;
pub use subquotient::{QuotientPresentation, SubcomplexSpec};
pub use words::{Alphabet, Letter, Word};
