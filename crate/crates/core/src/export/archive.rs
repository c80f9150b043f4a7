use std::collections::HashSet;
use std::io::{Cursor, Read, Write};

use chrono::{Datelike, NaiveDate};
use zip::write::SimpleFileOptions;
use zip::{CompressionMethod, ZipArchive, ZipWriter};

use super::{build_rsci_document, serialize_xml, ExportError};
use crate::model::{is_bare_file_name, validate_bundle, Issn, IssueBundle};

const DEFLATE_LEVEL: i64 = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArchiveEntry {
    pub name: String,
    pub bytes: Vec<u8>,
}

/// The upload archive: the XML member first, then attachments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExportArchive {
    /// File name of the ZIP itself, e.g. `03178471_2018_01_12(1)_unicode.zip`.
    pub archive_name: String,
    pub entries: Vec<ArchiveEntry>,
    /// Every member's modification time is midnight of this date.
    pub generation_date: NaiveDate,
}

/// `{issn digits}_{YYYY}_{MM}_{DD}({issue number})_unicode.xml`
pub fn make_archive_name(
    issn: &str,
    date: NaiveDate,
    issue_number: &str,
) -> Result<String, ExportError> {
    let issn = Issn::parse(issn).map_err(|_| ExportError::InvalidIssn(issn.to_string()))?;
    if issue_number.is_empty() || !is_bare_file_name(issue_number) {
        return Err(ExportError::InvalidIssueNumber(issue_number.to_string()));
    }
    Ok(format!(
        "{}_{}({issue_number})_unicode.xml",
        issn.compact(),
        date.format("%Y_%m_%d")
    ))
}

/// Builds the archive for one issue. The print ISSN names the XML member;
/// without one the electronic ISSN is used.
pub fn package_archive(
    bundle: &IssueBundle,
    generation_date: NaiveDate,
) -> Result<ExportArchive, ExportError> {
    let report = validate_bundle(bundle);
    if !report.is_exportable {
        return Err(ExportError::NotExportable(Box::new(report)));
    }
    zip_time(generation_date)?;
    let issn = bundle
        .journal
        .issn
        .as_deref()
        .or(bundle.journal.eissn.as_deref())
        .unwrap_or_default();
    let xml_name = make_archive_name(issn, generation_date, &bundle.issue.number)?;
    let archive_name = format!("{}.zip", xml_name.trim_end_matches(".xml"));
    let xml = serialize_xml(&build_rsci_document(bundle)?);

    let mut entries = vec![ArchiveEntry {
        name: xml_name,
        bytes: xml,
    }];
    let mut added = HashSet::new();
    let in_article_order = bundle.articles.iter().flat_map(|a| a.files.iter());
    let leftovers = bundle.attachments.keys();
    for name in in_article_order.chain(leftovers) {
        if added.insert(name.as_str()) {
            entries.push(ArchiveEntry {
                name: name.clone(),
                bytes: bundle.attachments[name].clone(),
            });
        }
    }
    Ok(ExportArchive {
        archive_name,
        entries,
        generation_date,
    })
}

fn zip_time(date: NaiveDate) -> Result<zip::DateTime, ExportError> {
    let (Ok(year), Ok(month), Ok(day)) = (
        u16::try_from(date.year()),
        u8::try_from(date.month()),
        u8::try_from(date.day()),
    ) else {
        return Err(ExportError::InvalidDate(date));
    };
    zip::DateTime::from_date_and_time(year, month, day, 0, 0, 0)
        .map_err(|_| ExportError::InvalidDate(date))
}

impl ExportArchive {
    pub fn xml_entry(&self) -> &ArchiveEntry {
        &self.entries[0]
    }

    /// ZIP bytes. Deflate level, timestamps and permissions are fixed, so
    /// equal archives give equal bytes.
    pub fn to_zip_bytes(&self) -> Result<Vec<u8>, ExportError> {
        let options = SimpleFileOptions::default()
            .compression_method(CompressionMethod::Deflated)
            .compression_level(Some(DEFLATE_LEVEL))
            .last_modified_time(zip_time(self.generation_date)?)
            .unix_permissions(0o644);
        let mut zip = ZipWriter::new(Cursor::new(Vec::new()));
        for entry in &self.entries {
            zip.start_file(entry.name.as_str(), options)?;
            zip.write_all(&entry.bytes)?;
        }
        Ok(zip.finish()?.into_inner())
    }
}

/// Reads every member of a ZIP in stored order.
pub fn read_zip_entries(bytes: &[u8]) -> Result<Vec<ArchiveEntry>, ExportError> {
    let mut zip = ZipArchive::new(Cursor::new(bytes))?;
    (0..zip.len())
        .map(|i| {
            let mut file = zip.by_index(i)?;
            let mut buf = Vec::with_capacity(file.size() as usize);
            file.read_to_end(&mut buf)?;
            Ok(ArchiveEntry {
                name: file.name().to_string(),
                bytes: buf,
            })
        })
        .collect()
}
