use serde::Serialize;

use super::ExportError;
use crate::model::{validate_bundle, ArticleRecord, AuthorRecord, IssueBundle, LocalizedText};
use crate::xml::XmlElement;

/// Root element name written on export. Parsing accepts any root.
pub const ROOT_ELEMENT: &str = "Journal";

/// In-memory form of the import XML. Field order matches element order.
///
/// `passthrough` lists hold elements the reader did not recognise (for
/// example `OperCard` in files exported by Articulus itself). They are
/// written back first inside their parent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RsciDocument {
    pub root_name: String,
    pub passthrough: Vec<XmlElement>,
    pub title_id: Option<String>,
    pub issn: Option<String>,
    pub eissn: Option<String>,
    /// `JournalInfo/Title`
    pub journal_titles: Vec<LocalizedText>,
    pub issue: IssueElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IssueElement {
    pub passthrough: Vec<XmlElement>,
    pub volume: Option<String>,
    pub number: String,
    pub alt_number: Option<String>,
    pub part: Option<String>,
    pub date_uni: String,
    pub iss_title: Option<String>,
    pub pages: String,
    pub articles: Vec<ArticleElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArticleElement {
    pub passthrough: Vec<XmlElement>,
    pub art_type: String,
    pub pages: Option<String>,
    pub authors: Vec<AuthorElement>,
    pub titles: Vec<LocalizedText>,
    pub text: Option<String>,
    pub codes: Vec<CodeElement>,
    pub keywords: Vec<String>,
    pub references: Vec<String>,
    pub files: Vec<String>,
}

/// `<Code type="UDC">001.8</Code>`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeElement {
    pub system: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuthorElement {
    pub passthrough: Vec<XmlElement>,
    pub surname: String,
    /// Empty initials are not written.
    pub initials: String,
    pub org_name: Option<String>,
    pub email: Option<String>,
    pub other_info: Option<String>,
}

impl RsciDocument {
    /// One `"<path>: passthrough"` line per preserved unknown element.
    pub fn passthrough_summary(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut note = |prefix: &str, els: &[XmlElement]| {
            for e in els {
                out.push(format!("{prefix}{}: passthrough", e.name));
            }
        };
        note("", &self.passthrough);
        note("Issue/", &self.issue.passthrough);
        for (i, a) in self.issue.articles.iter().enumerate() {
            note(&format!("Issue/Articles/Article[{i}]/"), &a.passthrough);
            for (j, au) in a.authors.iter().enumerate() {
                note(
                    &format!("Issue/Articles/Article[{i}]/Authors/Author[{j}]/"),
                    &au.passthrough,
                );
            }
        }
        out
    }

    pub fn article_count(&self) -> usize {
        self.issue.articles.len()
    }
}

fn non_empty(s: &Option<String>) -> Option<String> {
    s.as_ref().filter(|v| !v.is_empty()).cloned()
}

/// Maps an exportable bundle onto the document tree. Absent or empty
/// optional fields produce no element.
pub fn build_rsci_document(bundle: &IssueBundle) -> Result<RsciDocument, ExportError> {
    let report = validate_bundle(bundle);
    if !report.is_exportable {
        return Err(ExportError::NotExportable(Box::new(report)));
    }
    let j = &bundle.journal;
    let i = &bundle.issue;
    Ok(RsciDocument {
        root_name: ROOT_ELEMENT.to_string(),
        passthrough: Vec::new(),
        title_id: non_empty(&j.title_id),
        issn: non_empty(&j.issn),
        eissn: non_empty(&j.eissn),
        journal_titles: j.titles.clone(),
        issue: IssueElement {
            passthrough: Vec::new(),
            volume: i.volume.map(|v| v.to_string()),
            number: i.number.clone(),
            alt_number: non_empty(&i.alt_number),
            part: non_empty(&i.part),
            date_uni: i.date_uni.clone(),
            iss_title: non_empty(&i.iss_title),
            pages: i.pages.clone(),
            articles: bundle.articles.iter().map(article).collect(),
        },
    })
}

fn article(a: &ArticleRecord) -> ArticleElement {
    ArticleElement {
        passthrough: Vec::new(),
        art_type: a.art_type.clone(),
        pages: non_empty(&a.page_range),
        authors: a.authors.iter().map(author).collect(),
        titles: a.titles.clone(),
        text: non_empty(&a.abstract_text),
        codes: a
            .codes
            .iter()
            .map(|(system, value)| CodeElement {
                system: system.clone(),
                value: value.clone(),
            })
            .collect(),
        keywords: a.keywords.clone(),
        references: a.references.clone(),
        files: a.files.clone(),
    }
}

fn author(a: &AuthorRecord) -> AuthorElement {
    AuthorElement {
        passthrough: Vec::new(),
        surname: a.surname.clone(),
        initials: a.initials.clone(),
        org_name: non_empty(&a.org_name),
        email: non_empty(&a.email),
        other_info: non_empty(&a.other_info),
    }
}
