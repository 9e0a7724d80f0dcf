//! Combinatorial knot presentations: braid words and PD codes.

pub mod braid;
pub mod pd;

pub use braid::{parse_braid, torus_braid, BraidWord};
pub use pd::{braid_to_pd, parse_pd, PlanarDiagram};

use crate::error::{Error, Result};

/// A knot presentation with an optional display name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotPresentation {
    pub source: PresentationSource,
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresentationSource {
    Braid(BraidWord),
    Diagram(PlanarDiagram),
}

impl KnotPresentation {
    pub fn from_braid(braid: BraidWord) -> Self {
        KnotPresentation { source: PresentationSource::Braid(braid), name: None }
    }

    pub fn from_diagram(pd: PlanarDiagram) -> Self {
        KnotPresentation { source: PresentationSource::Diagram(pd), name: None }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn is_knot(&self) -> bool {
        match &self.source {
            PresentationSource::Braid(b) => b.closes_to_knot(),
            PresentationSource::Diagram(pd) => pd.is_knot(),
        }
    }

    /// The underlying braid; Seifert-side operations need one.
    pub fn braid(&self) -> Result<&BraidWord> {
        match &self.source {
            PresentationSource::Braid(b) => Ok(b),
            PresentationSource::Diagram(_) => Err(Error::BraidRequired),
        }
    }

    /// A PD code for the presentation, converting braid closures as needed.
    pub fn diagram(&self) -> Result<PlanarDiagram> {
        match &self.source {
            PresentationSource::Braid(b) => braid_to_pd(b),
            PresentationSource::Diagram(pd) => Ok(pd.clone()),
        }
    }
}

impl From<BraidWord> for KnotPresentation {
    fn from(b: BraidWord) -> Self {
        KnotPresentation::from_braid(b)
    }
}

impl From<PlanarDiagram> for KnotPresentation {
    fn from(pd: PlanarDiagram) -> Self {
        KnotPresentation::from_diagram(pd)
    }
}
