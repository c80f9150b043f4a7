//! Journal-issue metadata tooling for the Russian Science Citation Index.
//!
//! - [`model`]: issue, article and author records and their validation.
//! - [`ingest`]: the canonical issue file, Dublin Core records, OAI-PMH.
//! - [`export`]: the Articulus import XML and the upload archive.
//! - [`metrics`]: h-, g- and i10-index, Hirsch coefficient, impact factor.
//!
//! ```no_run
//! use rsci_core::{export, ingest, model};
//!
//! let bundle = ingest::load_canonical("issue.json")?;
//! let report = model::validate_bundle(&bundle);
//! if report.is_exportable {
//!     let date = chrono::NaiveDate::from_ymd_opt(2018, 1, 12).unwrap();
//!     let archive = export::package_archive(&bundle, date)?;
//!     std::fs::write(&archive.archive_name, archive.to_zip_bytes()?)?;
//! }
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod cli;
pub mod export;
pub mod ingest;
pub mod metrics;
pub mod model;
pub mod xml;
