use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::IngestError;
use crate::model::{
    ArticleRecord, AuthorRecord, IssueBundle, IssueHeader, JournalHeader, LocalizedText,
};
use crate::xml::{parse_document, XmlElement, XmlSyntaxError};

/// Code under which `dc:identifier` values land in [`ArticleRecord::codes`].
pub const DC_IDENTIFIER_CODE: &str = "DC.identifier";

const FALLBACK_LANGUAGE: &str = "ENG";

/// The fifteen elements of the Dublin Core Metadata Element Set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DcElement {
    Contributor,
    Coverage,
    Creator,
    Date,
    Description,
    Format,
    Identifier,
    Language,
    Publisher,
    Relation,
    Rights,
    Source,
    Subject,
    Title,
    Type,
}

impl DcElement {
    pub const ALL: [DcElement; 15] = [
        DcElement::Contributor,
        DcElement::Coverage,
        DcElement::Creator,
        DcElement::Date,
        DcElement::Description,
        DcElement::Format,
        DcElement::Identifier,
        DcElement::Language,
        DcElement::Publisher,
        DcElement::Relation,
        DcElement::Rights,
        DcElement::Source,
        DcElement::Subject,
        DcElement::Title,
        DcElement::Type,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DcElement::Contributor => "contributor",
            DcElement::Coverage => "coverage",
            DcElement::Creator => "creator",
            DcElement::Date => "date",
            DcElement::Description => "description",
            DcElement::Format => "format",
            DcElement::Identifier => "identifier",
            DcElement::Language => "language",
            DcElement::Publisher => "publisher",
            DcElement::Relation => "relation",
            DcElement::Rights => "rights",
            DcElement::Source => "source",
            DcElement::Subject => "subject",
            DcElement::Title => "title",
            DcElement::Type => "type",
        }
    }
}

impl FromStr for DcElement {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("{s:?} is not a Dublin Core element"))
    }
}

impl fmt::Display for DcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One value of a Dublin Core element, with its `xml:lang` when given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DcValue {
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lang: Option<String>,
}

impl From<&str> for DcValue {
    fn from(value: &str) -> Self {
        Self {
            value: value.to_string(),
            lang: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DublinCoreRecord {
    pub elements: BTreeMap<DcElement, Vec<DcValue>>,
}

impl DublinCoreRecord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, element: DcElement, value: impl Into<DcValue>) {
        self.elements.entry(element).or_default().push(value.into());
    }

    pub fn with(mut self, element: DcElement, values: &[&str]) -> Self {
        for v in values {
            self.push(element, *v);
        }
        self
    }

    pub fn get(&self, element: DcElement) -> &[DcValue] {
        self.elements.get(&element).map_or(&[], Vec::as_slice)
    }

    fn first(&self, element: DcElement) -> Option<&str> {
        self.get(element).first().map(|v| v.value.as_str())
    }

    /// Reads an `oai_dc:dc` (or any element whose children are `dc:*`
    /// elements). Non-DC children are skipped.
    pub fn from_element(el: &XmlElement) -> Self {
        let mut record = Self::new();
        for child in el.elements() {
            match child.local_name().parse::<DcElement>() {
                Ok(element) => {
                    let lang = child
                        .attribute("xml:lang")
                        .map(str::to_string)
                        .filter(|l| !l.trim().is_empty());
                    record.push(
                        element,
                        DcValue {
                            value: child.text().trim().to_string(),
                            lang,
                        },
                    );
                }
                Err(_) => log::debug!("skipping non-DC element <{}>", child.name),
            }
        }
        record
    }

    /// Parses a standalone Dublin Core XML document.
    pub fn from_xml(bytes: &[u8]) -> Result<Self, XmlSyntaxError> {
        Ok(Self::from_element(&parse_document(bytes)?))
    }
}

/// Maps DC language tags such as `en`, `en-US`, `eng` onto the three-letter
/// uppercase form used in exports.
fn language_code(tag: &str) -> String {
    let primary = tag.split(['-', '_']).next().unwrap_or("").trim().to_ascii_lowercase();
    let mapped = match primary.as_str() {
        "en" => "ENG",
        "uk" => "UKR",
        "ru" => "RUS",
        "de" => "GER",
        "fr" => "FRE",
        "es" => "SPA",
        "it" => "ITA",
        "pl" => "POL",
        "be" => "BEL",
        "kk" => "KAZ",
        other => return other.to_ascii_uppercase(),
    };
    mapped.to_string()
}

/// Splits `"Surname, Initials"` at the first comma. Without a comma the whole
/// string is the surname.
fn parse_creator(creator: &str) -> AuthorRecord {
    let (surname, initials) = creator.split_once(',').unwrap_or((creator, ""));
    AuthorRecord {
        surname: surname.trim().to_string(),
        initials: initials.trim().to_string(),
        ..Default::default()
    }
}

/// One article per record. Issue-level data is not present in DC and comes
/// from the caller.
pub fn from_dublin_core(
    records: &[DublinCoreRecord],
    journal: JournalHeader,
    issue: IssueHeader,
) -> Result<IssueBundle, IngestError> {
    if records.is_empty() {
        return Err(IngestError::EmptyInput);
    }
    let articles = records
        .iter()
        .enumerate()
        .map(|(index, r)| map_record(index, r))
        .collect::<Result<Vec<_>, _>>()?;
    let mut bundle = IssueBundle {
        journal,
        issue,
        articles,
        attachments: BTreeMap::new(),
    };
    bundle.normalize();
    Ok(bundle)
}

fn map_record(index: usize, r: &DublinCoreRecord) -> Result<ArticleRecord, IngestError> {
    let mapping = |message: &str| IngestError::Mapping {
        index,
        message: message.to_string(),
    };
    let default_lang = r
        .first(DcElement::Language)
        .map(language_code)
        .unwrap_or_else(|| FALLBACK_LANGUAGE.to_string());

    let titles: Vec<_> = r
        .get(DcElement::Title)
        .iter()
        .filter(|t| !t.value.trim().is_empty())
        .map(|t| {
            let lang = t.lang.as_deref().map_or_else(|| default_lang.clone(), language_code);
            LocalizedText::new(lang, t.value.clone())
        })
        .collect();
    if titles.is_empty() {
        return Err(mapping("record has no title"));
    }

    let authors: Vec<_> = r
        .get(DcElement::Creator)
        .iter()
        .filter(|c| !c.value.trim().is_empty())
        .map(|c| parse_creator(&c.value))
        .collect();
    if authors.is_empty() {
        return Err(mapping("record has no creator"));
    }

    let descriptions: Vec<&str> = r
        .get(DcElement::Description)
        .iter()
        .map(|d| d.value.trim())
        .filter(|d| !d.is_empty())
        .collect();
    let identifiers: Vec<&str> = r
        .get(DcElement::Identifier)
        .iter()
        .map(|d| d.value.trim())
        .filter(|d| !d.is_empty())
        .collect();

    let mut article = ArticleRecord {
        authors,
        titles,
        abstract_text: (!descriptions.is_empty()).then(|| descriptions.join("\n\n")),
        keywords: r.get(DcElement::Subject).iter().map(|s| s.value.clone()).collect(),
        ..Default::default()
    };
    if !identifiers.is_empty() {
        article
            .codes
            .insert(DC_IDENTIFIER_CODE.to_string(), identifiers.join("; "));
    }
    Ok(article)
}
