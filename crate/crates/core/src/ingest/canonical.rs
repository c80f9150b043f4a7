use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::IngestError;
use crate::model::{is_bare_file_name, ArticleRecord, IssueBundle, IssueHeader, JournalHeader};

/// On-disk form of an issue: JSON with `journal`, `issue`, `articles` and
/// `attachments` sections. Unknown keys are rejected at every level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalIssueFile {
    pub journal: JournalHeader,
    pub issue: IssueHeader,
    pub articles: Vec<ArticleRecord>,
    #[serde(default)]
    pub attachments: Vec<AttachmentRef>,
}

/// A file shipped with the issue. `path` is relative to the issue file's
/// directory; `name` defaults to the last component of `path`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttachmentRef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub path: String,
}

impl AttachmentRef {
    fn resolved_name(&self) -> Option<String> {
        match &self.name {
            Some(n) => Some(n.trim().to_string()),
            None => Path::new(&self.path)
                .file_name()
                .and_then(|n| n.to_str())
                .map(str::to_string),
        }
    }
}

/// Reads an issue file and every attachment it references.
pub fn load_canonical(path: impl AsRef<Path>) -> Result<IssueBundle, IngestError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let file = parse_canonical(&text)?;
    let base = path.parent().unwrap_or(Path::new("."));
    resolve(file, base)
}

/// Parses and schema-checks the JSON text without touching attachments.
pub fn parse_canonical(text: &str) -> Result<CanonicalIssueFile, IngestError> {
    let file: CanonicalIssueFile =
        serde_json::from_str(text).map_err(|e| IngestError::Schema {
            line: Some(e.line()),
            column: Some(e.column()),
            field: None,
            message: e.to_string(),
        })?;

    for (ai, article) in file.articles.iter().enumerate() {
        for (fi, name) in article.files.iter().enumerate() {
            if !is_bare_file_name(name.trim()) {
                return Err(IngestError::schema_field(
                    format!("articles[{ai}].files[{fi}]"),
                    format!("{name:?} must be a bare file name without path separators"),
                ));
            }
        }
    }
    Ok(file)
}

fn resolve(file: CanonicalIssueFile, base: &Path) -> Result<IssueBundle, IngestError> {
    let mut attachments = BTreeMap::new();
    for (i, att) in file.attachments.iter().enumerate() {
        let field = format!("attachments[{i}]");
        let name = att
            .resolved_name()
            .filter(|n| is_bare_file_name(n))
            .ok_or_else(|| IngestError::schema_field(&field, "attachment needs a bare file name"))?;
        let full: PathBuf = base.join(&att.path);
        if !full.is_file() {
            return Err(IngestError::MissingAttachment { name, path: full });
        }
        let bytes = fs::read(&full).map_err(|source| IngestError::Io {
            path: full.clone(),
            source,
        })?;
        if attachments.insert(name.clone(), bytes).is_some() {
            return Err(IngestError::schema_field(
                field,
                format!("duplicate attachment name {name:?}"),
            ));
        }
    }
    let mut bundle = IssueBundle {
        journal: file.journal,
        issue: file.issue,
        articles: file.articles,
        attachments,
    };
    bundle.normalize();
    Ok(bundle)
}

/// The file form of `bundle`, with each attachment referenced by its own
/// name in the issue file's directory.
pub fn to_canonical_file(bundle: &IssueBundle) -> CanonicalIssueFile {
    CanonicalIssueFile {
        journal: bundle.journal.clone(),
        issue: bundle.issue.clone(),
        articles: bundle.articles.clone(),
        attachments: bundle
            .attachments
            .keys()
            .map(|name| AttachmentRef {
                name: None,
                path: name.clone(),
            })
            .collect(),
    }
}

/// Writes `bundle` as an issue file at `path` with its attachments next to
/// it. Inverse of [`load_canonical`] for normalized bundles.
pub fn write_canonical(bundle: &IssueBundle, path: impl AsRef<Path>) -> std::io::Result<()> {
    let path = path.as_ref();
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    for (name, bytes) in &bundle.attachments {
        fs::write(dir.join(name), bytes)?;
    }
    let mut json = serde_json::to_string_pretty(&to_canonical_file(bundle))
        .map_err(std::io::Error::other)?;
    json.push('\n');
    fs::write(path, json)
}
