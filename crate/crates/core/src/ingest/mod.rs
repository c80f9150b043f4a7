//! Sources of [`IssueBundle`](crate::model::IssueBundle) values: the
//! canonical issue file, Dublin Core records and OAI-PMH endpoints.

mod canonical;
mod dublin_core;
mod oai;

use std::path::PathBuf;

use thiserror::Error;

pub use canonical::{
    load_canonical, parse_canonical, to_canonical_file, write_canonical, AttachmentRef,
    CanonicalIssueFile,
};
pub use dublin_core::{from_dublin_core, DcElement, DcValue, DublinCoreRecord};
pub use oai::{harvest_identifiers, harvest_oai, HarvestConfig, HarvestError, OaiHeader};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("schema error{}: {message}", location(.line, .column, .field))]
    Schema {
        line: Option<usize>,
        column: Option<usize>,
        field: Option<String>,
        message: String,
    },
    #[error("attachment {name:?} not found at {}", path.display())]
    MissingAttachment { name: String, path: PathBuf },
    #[error("no Dublin Core records given")]
    EmptyInput,
    #[error("record {index}: {message}")]
    Mapping { index: usize, message: String },
}

fn location(line: &Option<usize>, column: &Option<usize>, field: &Option<String>) -> String {
    let mut s = String::new();
    if let Some(line) = line {
        s.push_str(&format!(" at line {line}"));
        if let Some(col) = column {
            s.push_str(&format!(", column {col}"));
        }
    }
    if let Some(field) = field {
        s.push_str(&format!(" in {field}"));
    }
    s
}

impl IngestError {
    pub(crate) fn schema_field(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Schema {
            line: None,
            column: None,
            field: Some(field.into()),
            message: message.into(),
        }
    }
}
