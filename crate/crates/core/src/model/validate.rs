use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::{
    check_issn, is_bare_file_name, is_language_code, IssueBundle, LocalizedText, DEFAULT_ART_TYPE,
};

/// Rule identifiers carried by [`Violation::rule`].
pub mod rules {
    pub const MANDATORY_MISSING: &str = "MANDATORY_MISSING";
    pub const DATEUNI_FORMAT: &str = "DATEUNI_FORMAT";
    pub const ISSN_INVALID: &str = "ISSN_INVALID";
    pub const JOURNAL_ID_MISSING: &str = "JOURNAL_ID_MISSING";
    pub const LANG_FORMAT: &str = "LANG_FORMAT";
    pub const LANG_DUPLICATE: &str = "LANG_DUPLICATE";
    pub const TEXT_EMPTY: &str = "TEXT_EMPTY";
    pub const INVALID_CHAR: &str = "INVALID_CHAR";
    pub const ARTICLES_EMPTY: &str = "ARTICLES_EMPTY";
    pub const AUTHORS_EMPTY: &str = "AUTHORS_EMPTY";
    pub const TITLES_EMPTY: &str = "TITLES_EMPTY";
    pub const EMAIL_FORMAT: &str = "EMAIL_FORMAT";
    pub const FILE_NAME_INVALID: &str = "FILE_NAME_INVALID";
    pub const FILE_MISSING: &str = "FILE_MISSING";
    pub const ATTACHMENT_NAME_INVALID: &str = "ATTACHMENT_NAME_INVALID";
    pub const ART_TYPE_UNKNOWN: &str = "ART_TYPE_UNKNOWN";
    pub const RECOMMENDED_MISSING: &str = "RECOMMENDED_MISSING";
    pub const ATTACHMENT_UNREFERENCED: &str = "ATTACHMENT_UNREFERENCED";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "ERROR",
            Severity::Warning => "WARNING",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub path: String,
    pub rule: &'static str,
    pub severity: Severity,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub is_exportable: bool,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        let is_exportable = !violations.iter().any(|v| v.severity == Severity::Error);
        Self {
            violations,
            is_exportable,
        }
    }

    pub fn errors(&self) -> impl Iterator<Item = &Violation> {
        self.violations
            .iter()
            .filter(|v| v.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Violation> {
        self.violations
            .iter()
            .filter(|v| v.severity == Severity::Warning)
    }

    pub fn error_count(&self) -> usize {
        self.errors().count()
    }

    pub fn warning_count(&self) -> usize {
        self.warnings().count()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{:<7} {:<24} {}: {}", v.severity, v.rule, v.path, v.message)?;
        }
        write!(
            f,
            "{} errors, {} warnings: {}",
            self.error_count(),
            self.warning_count(),
            if self.is_exportable {
                "exportable"
            } else {
                "not exportable"
            }
        )
    }
}

/// Checks a bundle against every export rule. Never fails; all problems end
/// up in the report.
pub fn validate_bundle(bundle: &IssueBundle) -> ValidationReport {
    let mut v = Validator::default();
    v.journal(bundle);
    v.issue(bundle);
    v.articles(bundle);
    ValidationReport::from_violations(v.out)
}

#[derive(Default)]
struct Validator {
    out: Vec<Violation>,
}

impl Validator {
    fn push(&mut self, severity: Severity, path: impl Into<String>, rule: &'static str, message: impl Into<String>) {
        self.out.push(Violation {
            path: path.into(),
            rule,
            severity,
            message: message.into(),
        });
    }

    fn error(&mut self, path: impl Into<String>, rule: &'static str, message: impl Into<String>) {
        self.push(Severity::Error, path, rule, message);
    }

    fn warning(&mut self, path: impl Into<String>, rule: &'static str, message: impl Into<String>) {
        self.push(Severity::Warning, path, rule, message);
    }

    /// Characters outside the XML 1.0 `Char` production cannot be exported.
    fn chars(&mut self, path: &str, value: &str) {
        if let Some(c) = value.chars().find(|&c| !is_xml_char(c)) {
            self.error(
                path,
                rules::INVALID_CHAR,
                format!("character U+{:04X} cannot appear in XML", u32::from(c)),
            );
        }
    }

    fn opt_chars(&mut self, path: &str, value: &Option<String>) {
        if let Some(value) = value {
            self.chars(path, value);
        }
    }

    fn mandatory(&mut self, path: &str, value: &str, what: &str) -> bool {
        if value.trim().is_empty() {
            self.error(path, rules::MANDATORY_MISSING, format!("{what} is mandatory"));
            false
        } else {
            self.chars(path, value);
            true
        }
    }

    fn localized(&mut self, path: &str, texts: &[LocalizedText]) {
        let mut seen = HashSet::new();
        for (i, t) in texts.iter().enumerate() {
            let p = format!("{path}[{i}]");
            if !is_language_code(&t.language) {
                self.error(
                    format!("{p}.lang"),
                    rules::LANG_FORMAT,
                    format!("language code {:?} is not three uppercase letters", t.language),
                );
            } else if !seen.insert(t.language.as_str()) {
                self.error(
                    format!("{p}.lang"),
                    rules::LANG_DUPLICATE,
                    format!("language {} appears more than once", t.language),
                );
            }
            if t.value.trim().is_empty() {
                self.error(format!("{p}.value"), rules::TEXT_EMPTY, "text is empty");
            } else {
                self.chars(&format!("{p}.value"), &t.value);
            }
        }
    }

    fn issn(&mut self, path: &str, value: &Option<String>) {
        if let Some(value) = value {
            if !check_issn(value) {
                self.error(
                    path,
                    rules::ISSN_INVALID,
                    format!("{value:?} is not a valid ISSN"),
                );
            }
        }
    }

    fn journal(&mut self, bundle: &IssueBundle) {
        let j = &bundle.journal;
        if j.issn.is_none() && j.eissn.is_none() && j.title_id.is_none() {
            self.error(
                "journal",
                rules::JOURNAL_ID_MISSING,
                "one of issn, eissn or title_id is required",
            );
        }
        self.opt_chars("journal.title_id", &j.title_id);
        self.issn("journal.issn", &j.issn);
        self.issn("journal.eissn", &j.eissn);
        if j.eissn.is_none() {
            self.warning(
                "journal.eissn",
                rules::RECOMMENDED_MISSING,
                "electronic ISSN is recommended",
            );
        }
        if j.titles.is_empty() {
            self.error(
                "journal.titles",
                rules::MANDATORY_MISSING,
                "journal title is mandatory",
            );
        }
        self.localized("journal.titles", &j.titles);
    }

    fn issue(&mut self, bundle: &IssueBundle) {
        let i = &bundle.issue;
        self.mandatory("issue.number", &i.number, "issue number");
        self.mandatory("issue.pages", &i.pages, "pages");
        if self.mandatory("issue.date_uni", &i.date_uni, "publication date") && !is_date_uni(&i.date_uni) {
            self.error(
                "issue.date_uni",
                rules::DATEUNI_FORMAT,
                format!("{:?} is not a YYYYMM date", i.date_uni),
            );
        }
        self.opt_chars("issue.alt_number", &i.alt_number);
        self.opt_chars("issue.part", &i.part);
        self.opt_chars("issue.iss_title", &i.iss_title);
    }

    fn articles(&mut self, bundle: &IssueBundle) {
        if bundle.articles.is_empty() {
            self.error(
                "articles",
                rules::ARTICLES_EMPTY,
                "an issue needs at least one article",
            );
        }
        let mut referenced = HashSet::new();
        for (ai, a) in bundle.articles.iter().enumerate() {
            let base = format!("articles[{ai}]");
            if a.art_type != DEFAULT_ART_TYPE {
                self.warning(
                    format!("{base}.art_type"),
                    rules::ART_TYPE_UNKNOWN,
                    format!("article type {:?} is not a known value", a.art_type),
                );
            }
            self.chars(&format!("{base}.art_type"), &a.art_type);

            if a.authors.is_empty() {
                self.error(
                    format!("{base}.authors"),
                    rules::AUTHORS_EMPTY,
                    "article has no authors",
                );
            }
            for (ui, author) in a.authors.iter().enumerate() {
                let p = format!("{base}.authors[{ui}]");
                self.mandatory(&format!("{p}.surname"), &author.surname, "author surname");
                self.chars(&format!("{p}.initials"), &author.initials);
                self.opt_chars(&format!("{p}.org_name"), &author.org_name);
                self.opt_chars(&format!("{p}.other_info"), &author.other_info);
                if let Some(email) = &author.email {
                    if !is_email(email) {
                        self.error(
                            format!("{p}.email"),
                            rules::EMAIL_FORMAT,
                            format!("{email:?} is not an e-mail address"),
                        );
                    } else {
                        self.chars(&format!("{p}.email"), email);
                    }
                }
            }

            if a.titles.is_empty() {
                self.error(
                    format!("{base}.titles"),
                    rules::TITLES_EMPTY,
                    "article has no title",
                );
            }
            self.localized(&format!("{base}.titles"), &a.titles);

            match &a.abstract_text {
                Some(text) => self.chars(&format!("{base}.abstract"), text),
                None => self.warning(
                    format!("{base}.abstract"),
                    rules::RECOMMENDED_MISSING,
                    "abstract is recommended",
                ),
            }
            if a.keywords.is_empty() {
                self.warning(
                    format!("{base}.keywords"),
                    rules::RECOMMENDED_MISSING,
                    "keywords are recommended",
                );
            }
            if a.references.is_empty() {
                self.warning(
                    format!("{base}.references"),
                    rules::RECOMMENDED_MISSING,
                    "references are recommended",
                );
            }
            for (system, value) in &a.codes {
                self.chars(&format!("{base}.codes.{system}"), system);
                self.chars(&format!("{base}.codes.{system}"), value);
            }
            for (ki, k) in a.keywords.iter().enumerate() {
                self.chars(&format!("{base}.keywords[{ki}]"), k);
            }
            for (ri, r) in a.references.iter().enumerate() {
                self.chars(&format!("{base}.references[{ri}]"), r);
            }
            self.opt_chars(&format!("{base}.pages"), &a.page_range);

            for (fi, file) in a.files.iter().enumerate() {
                let p = format!("{base}.files[{fi}]");
                if !is_bare_file_name(file) {
                    self.error(
                        p,
                        rules::FILE_NAME_INVALID,
                        format!("{file:?} is not a bare file name"),
                    );
                } else if !bundle.attachments.contains_key(file) {
                    self.error(
                        p,
                        rules::FILE_MISSING,
                        format!("{file:?} is not among the attachments"),
                    );
                } else {
                    self.chars(&p, file);
                    referenced.insert(file.as_str());
                }
            }
        }

        for name in bundle.attachments.keys() {
            let p = format!("attachments[{name:?}]");
            if !is_bare_file_name(name) || name.to_ascii_lowercase().ends_with(".xml") {
                self.error(
                    p,
                    rules::ATTACHMENT_NAME_INVALID,
                    "attachment names must be bare and must not end in .xml",
                );
            } else if !referenced.contains(name.as_str()) {
                self.warning(
                    p,
                    rules::ATTACHMENT_UNREFERENCED,
                    "no article lists this file",
                );
            }
        }
    }
}

/// `YYYYMM` with the year in 1900..=2100 and the month in 01..=12.
pub(crate) fn is_date_uni(s: &str) -> bool {
    if s.len() != 6 || !s.bytes().all(|b| b.is_ascii_digit()) {
        return false;
    }
    let year: u32 = s[..4].parse().unwrap_or(0);
    let month: u32 = s[4..].parse().unwrap_or(0);
    (1900..=2100).contains(&year) && (1..=12).contains(&month)
}

fn is_email(s: &str) -> bool {
    let mut parts = s.split('@');
    matches!(
        (parts.next(), parts.next(), parts.next()),
        (Some(local), Some(domain), None) if !local.is_empty() && !domain.is_empty()
    )
}

fn is_xml_char(c: char) -> bool {
    matches!(c, '\t' | '\n' | '\r' | '\u{20}'..='\u{D7FF}' | '\u{E000}'..='\u{FFFD}' | '\u{10000}'..)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ArticleRecord, AuthorRecord, IssueHeader, JournalHeader};

    fn article(n: usize) -> ArticleRecord {
        ArticleRecord {
            authors: vec![AuthorRecord {
                surname: format!("Author{n}"),
                initials: "A.A.".into(),
                ..Default::default()
            }],
            titles: vec![LocalizedText::new("ENG", format!("Article {n}"))],
            abstract_text: Some("Abstract".into()),
            keywords: vec!["keyword".into()],
            references: vec!["Reference".into()],
            files: vec![format!("{n}.pdf")],
            ..Default::default()
        }
    }

    fn sample_issue() -> IssueBundle {
        IssueBundle {
            journal: JournalHeader {
                issn: Some("0317-8471".into()),
                eissn: Some("1234-5679".into()),
                titles: vec![LocalizedText::new("ENG", "Ladone Power Journal")],
                ..Default::default()
            },
            issue: IssueHeader {
                volume: Some(1),
                number: "1".into(),
                alt_number: Some("1".into()),
                date_uni: "201801".into(),
                iss_title: Some("New best issue".into()),
                pages: "20".into(),
                ..Default::default()
            },
            articles: vec![article(1), article(2)],
            attachments: [("1.pdf".to_string(), vec![1]), ("2.pdf".to_string(), vec![2])]
                .into_iter()
                .collect(),
        }
    }

    fn rules_at<'a>(r: &'a ValidationReport, path: &str) -> Vec<&'a str> {
        r.violations
            .iter()
            .filter(|v| v.path == path)
            .map(|v| v.rule)
            .collect()
    }

    #[test]
    fn valid_bundle_is_exportable() {
        let r = validate_bundle(&sample_issue());
        assert!(r.is_exportable, "{r}");
        assert_eq!(r.error_count(), 0);
        assert_eq!(r.warning_count(), 0);
    }

    #[test]
    fn empty_pages() {
        let mut b = sample_issue();
        b.issue.pages.clear();
        let r = validate_bundle(&b);
        assert!(!r.is_exportable);
        assert_eq!(rules_at(&r, "issue.pages"), vec![rules::MANDATORY_MISSING]);
        assert_eq!(r.error_count(), 1);
    }

    #[test]
    fn dashed_date_uni() {
        let mut b = sample_issue();
        b.issue.date_uni = "2018-01".into();
        let r = validate_bundle(&b);
        assert_eq!(rules_at(&r, "issue.date_uni"), vec![rules::DATEUNI_FORMAT]);
        assert!(!r.is_exportable);
    }

    #[test]
    fn date_uni_ranges() {
        assert!(is_date_uni("201801"));
        assert!(is_date_uni("190001"));
        assert!(is_date_uni("210012"));
        assert!(!is_date_uni("201800"));
        assert!(!is_date_uni("201813"));
        assert!(!is_date_uni("189912"));
        assert!(!is_date_uni("210101"));
        assert!(!is_date_uni("20181"));
        assert!(!is_date_uni("２０１８０１"));
    }

    #[test]
    fn empty_bundle() {
        let r = validate_bundle(&IssueBundle::default());
        assert!(!r.is_exportable);
        assert!(r.error_count() >= 3, "{r}");
    }

    #[test]
    fn malformed_issn() {
        let mut b = sample_issue();
        b.journal.issn = Some("0317-8470".into());
        let r = validate_bundle(&b);
        assert_eq!(rules_at(&r, "journal.issn"), vec![rules::ISSN_INVALID]);
    }

    #[test]
    fn journal_identifier_required() {
        let mut b = sample_issue();
        b.journal.issn = None;
        b.journal.eissn = None;
        let r = validate_bundle(&b);
        assert_eq!(rules_at(&r, "journal"), vec![rules::JOURNAL_ID_MISSING]);
        b.journal.title_id = Some("12345".into());
        assert!(validate_bundle(&b).is_exportable);
    }

    #[test]
    fn article_without_authors_or_titles() {
        let mut b = sample_issue();
        b.articles[0].authors.clear();
        b.articles[1].titles.clear();
        let r = validate_bundle(&b);
        assert_eq!(rules_at(&r, "articles[0].authors"), vec![rules::AUTHORS_EMPTY]);
        assert_eq!(rules_at(&r, "articles[1].titles"), vec![rules::TITLES_EMPTY]);
    }

    #[test]
    fn dangling_and_bad_file_references() {
        let mut b = sample_issue();
        b.articles[0].files = vec!["missing.pdf".into(), "../escape.pdf".into()];
        let r = validate_bundle(&b);
        assert_eq!(rules_at(&r, "articles[0].files[0]"), vec![rules::FILE_MISSING]);
        assert_eq!(rules_at(&r, "articles[0].files[1]"), vec![rules::FILE_NAME_INVALID]);
        // 1.pdf is now unused
        assert!(r
            .warnings()
            .any(|v| v.rule == rules::ATTACHMENT_UNREFERENCED));
    }

    #[test]
    fn xml_named_attachment_rejected() {
        let mut b = sample_issue();
        b.attachments.insert("extra.XML".into(), vec![]);
        let r = validate_bundle(&b);
        assert!(r.errors().any(|v| v.rule == rules::ATTACHMENT_NAME_INVALID));
    }

    #[test]
    fn language_rules() {
        let mut b = sample_issue();
        b.articles[0].titles = vec![
            LocalizedText::new("ENG", "A"),
            LocalizedText::new("ENG", "B"),
            LocalizedText::new("uk", "C"),
            LocalizedText::new("UKR", " "),
        ];
        let r = validate_bundle(&b);
        assert_eq!(rules_at(&r, "articles[0].titles[1].lang"), vec![rules::LANG_DUPLICATE]);
        assert_eq!(rules_at(&r, "articles[0].titles[2].lang"), vec![rules::LANG_FORMAT]);
        assert_eq!(rules_at(&r, "articles[0].titles[3].value"), vec![rules::TEXT_EMPTY]);
    }

    #[test]
    fn unknown_art_type_is_warning() {
        let mut b = sample_issue();
        b.articles[0].art_type = "REV".into();
        let r = validate_bundle(&b);
        assert!(r.is_exportable);
        assert_eq!(rules_at(&r, "articles[0].art_type"), vec![rules::ART_TYPE_UNKNOWN]);
    }

    #[test]
    fn email_shape() {
        assert!(is_email("a@b"));
        assert!(!is_email("a@@b"));
        assert!(!is_email("@b"));
        assert!(!is_email("a@"));
        assert!(!is_email("ab"));
        let mut b = sample_issue();
        b.articles[0].authors[0].email = Some("x@y@z".into());
        let r = validate_bundle(&b);
        assert_eq!(rules_at(&r, "articles[0].authors[0].email"), vec![rules::EMAIL_FORMAT]);
    }

    #[test]
    fn control_characters_rejected() {
        let mut b = sample_issue();
        b.articles[0].references = vec!["bad\u{1}ref".into()];
        let r = validate_bundle(&b);
        assert_eq!(rules_at(&r, "articles[0].references[0]"), vec![rules::INVALID_CHAR]);
    }

    #[test]
    fn dropping_recommended_fields_keeps_exportable() {
        let mut b = sample_issue();
        b.journal.eissn = None;
        for a in &mut b.articles {
            a.abstract_text = None;
            a.keywords.clear();
            a.references.clear();
        }
        let r = validate_bundle(&b);
        assert!(r.is_exportable);
        assert_eq!(r.warning_count(), 7);
    }

    #[test]
    fn pure() {
        let b = sample_issue();
        assert_eq!(validate_bundle(&b), validate_bundle(&b));
    }
}
