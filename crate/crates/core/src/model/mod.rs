//! Domain types for one journal issue and the rules that decide whether it
//! can be exported.
//!
//! Types here are plain values. They may hold data that breaks an invariant
//! (an ISSN with a wrong check digit, an empty title); [`validate_bundle`]
//! reports every such problem instead of refusing to construct the value.

mod issn;
mod validate;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use issn::{check_issn, Issn, IssnError};
pub use validate::{validate_bundle, Severity, ValidationReport, Violation};

/// Article type written when the source gives none ("research article").
pub const DEFAULT_ART_TYPE: &str = "RAR";

/// Text tagged with a three-letter uppercase language code such as `ENG`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalizedText {
    #[serde(rename = "lang")]
    pub language: String,
    pub value: String,
}

impl LocalizedText {
    pub fn new(language: impl Into<String>, value: impl Into<String>) -> Self {
        Self {
            language: language.into(),
            value: value.into(),
        }
    }
}

/// `true` when `code` is exactly three ASCII uppercase letters.
pub fn is_language_code(code: &str) -> bool {
    code.len() == 3 && code.bytes().all(|b| b.is_ascii_uppercase())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JournalHeader {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub issn: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eissn: Option<String>,
    #[serde(default)]
    pub titles: Vec<LocalizedText>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IssueHeader {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Option<u32>,
    #[serde(default)]
    pub number: String,
    /// End-to-end issue number across volumes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alt_number: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part: Option<String>,
    /// Publication date as `YYYYMM`.
    #[serde(default)]
    pub date_uni: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iss_title: Option<String>,
    /// Page count or page range; kept opaque.
    #[serde(default)]
    pub pages: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuthorRecord {
    pub surname: String,
    #[serde(default)]
    pub initials: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub org_name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub email: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other_info: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArticleRecord {
    #[serde(default = "default_art_type")]
    pub art_type: String,
    #[serde(default)]
    pub authors: Vec<AuthorRecord>,
    #[serde(default)]
    pub titles: Vec<LocalizedText>,
    #[serde(default, rename = "abstract", skip_serializing_if = "Option::is_none")]
    pub abstract_text: Option<String>,
    /// Classification codes keyed by code system, e.g. `UDC`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub codes: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub keywords: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub references: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub files: Vec<String>,
    #[serde(default, rename = "pages", skip_serializing_if = "Option::is_none")]
    pub page_range: Option<String>,
}

fn default_art_type() -> String {
    DEFAULT_ART_TYPE.to_string()
}

impl Default for ArticleRecord {
    fn default() -> Self {
        Self {
            art_type: default_art_type(),
            authors: Vec::new(),
            titles: Vec::new(),
            abstract_text: None,
            codes: BTreeMap::new(),
            keywords: Vec::new(),
            references: Vec::new(),
            files: Vec::new(),
            page_range: None,
        }
    }
}

/// One journal issue with its articles and attached files.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IssueBundle {
    pub journal: JournalHeader,
    pub issue: IssueHeader,
    pub articles: Vec<ArticleRecord>,
    /// File name to payload. Names are unique by construction.
    pub attachments: BTreeMap<String, Vec<u8>>,
}

impl IssueBundle {
    /// Trims leading and trailing whitespace from every scalar field.
    /// Optional fields that become empty are dropped.
    pub fn normalize(&mut self) {
        let j = &mut self.journal;
        trim_opt(&mut j.title_id);
        trim_opt(&mut j.issn);
        trim_opt(&mut j.eissn);
        j.titles.iter_mut().for_each(trim_text);

        let i = &mut self.issue;
        trim(&mut i.number);
        trim_opt(&mut i.alt_number);
        trim_opt(&mut i.part);
        trim(&mut i.date_uni);
        trim_opt(&mut i.iss_title);
        trim(&mut i.pages);

        for article in &mut self.articles {
            trim(&mut article.art_type);
            if article.art_type.is_empty() {
                article.art_type = default_art_type();
            }
            for author in &mut article.authors {
                trim(&mut author.surname);
                trim(&mut author.initials);
                trim_opt(&mut author.org_name);
                trim_opt(&mut author.email);
                trim_opt(&mut author.other_info);
            }
            article.titles.iter_mut().for_each(trim_text);
            trim_opt(&mut article.abstract_text);
            article.codes = std::mem::take(&mut article.codes)
                .into_iter()
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .filter(|(k, v)| !k.is_empty() && !v.is_empty())
                .collect();
            article.keywords.iter_mut().for_each(trim);
            article.keywords.retain(|k| !k.is_empty());
            article.references.iter_mut().for_each(trim);
            article.references.retain(|r| !r.is_empty());
            article.files.iter_mut().for_each(trim);
            trim_opt(&mut article.page_range);
        }
    }
}

fn trim(s: &mut String) {
    let t = s.trim();
    if t.len() != s.len() {
        *s = t.to_string();
    }
}

fn trim_opt(s: &mut Option<String>) {
    if let Some(v) = s {
        trim(v);
        if v.is_empty() {
            *s = None;
        }
    }
}

fn trim_text(t: &mut LocalizedText) {
    trim(&mut t.language);
    trim(&mut t.value);
}

/// `true` when `name` is a plain file name with no directory component.
pub fn is_bare_file_name(name: &str) -> bool {
    !name.is_empty()
        && name != "."
        && name != ".."
        && !name.contains(['/', '\\'])
        && !name.contains('\0')
}
