//! Articulus/RSCI import XML and the upload archive.

mod archive;
mod document;
mod reader;
mod writer;

use thiserror::Error;

use crate::model::ValidationReport;
use crate::xml::XmlSyntaxError;

pub use archive::{make_archive_name, package_archive, read_zip_entries, ArchiveEntry, ExportArchive};
pub use document::{
    build_rsci_document, ArticleElement, AuthorElement, CodeElement, IssueElement, RsciDocument,
    ROOT_ELEMENT,
};
pub use reader::parse_rsci_xml;
pub use writer::serialize_xml;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("bundle is not exportable ({} errors)", .0.error_count())]
    NotExportable(Box<ValidationReport>),
    #[error(transparent)]
    XmlSyntax(#[from] XmlSyntaxError),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid ISSN {0:?}")]
    InvalidIssn(String),
    #[error("invalid issue number {0:?}")]
    InvalidIssueNumber(String),
    #[error("generation date {0} cannot be stored in a ZIP archive")]
    InvalidDate(chrono::NaiveDate),
    #[error("zip: {0}")]
    Zip(#[from] zip::result::ZipError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
