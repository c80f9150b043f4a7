use super::document::{
    ArticleElement, AuthorElement, CodeElement, IssueElement, RsciDocument,
};
use super::ExportError;
use crate::model::LocalizedText;
use crate::xml::{parse_document, XmlElement};

/// Parses import XML back into a document. Elements outside the known
/// vocabulary at journal, issue, article or author level are kept as
/// passthrough nodes; see [`RsciDocument::passthrough_summary`].
pub fn parse_rsci_xml(bytes: &[u8]) -> Result<RsciDocument, ExportError> {
    let root = parse_document(bytes)?;
    journal(&root)
}

fn schema(msg: impl Into<String>) -> ExportError {
    ExportError::Schema(msg.into())
}

/// Tracks which single-occurrence children of one parent were seen.
struct Children<'a> {
    parent: &'a str,
    seen: Vec<&'a str>,
}

impl<'a> Children<'a> {
    fn new(parent: &'a str) -> Self {
        Self {
            parent,
            seen: Vec::new(),
        }
    }

    fn once(&mut self, name: &'a str) -> Result<(), ExportError> {
        if self.seen.contains(&name) {
            return Err(schema(format!("duplicate <{name}> in <{}>", self.parent)));
        }
        self.seen.push(name);
        Ok(())
    }

    fn slot<T>(&mut self, name: &'a str, slot: &mut Option<T>, value: T) -> Result<(), ExportError> {
        self.once(name)?;
        *slot = Some(value);
        Ok(())
    }
}

fn require<T>(value: Option<T>, name: &str, parent: &str) -> Result<T, ExportError> {
    value.ok_or_else(|| schema(format!("<{parent}> is missing required <{name}>")))
}

/// Text of an element that must not contain child elements.
fn leaf(el: &XmlElement) -> Result<String, ExportError> {
    if el.elements().next().is_some() {
        return Err(schema(format!("<{}> must contain text only", el.name)));
    }
    Ok(el.text())
}

fn localized(el: &XmlElement) -> Result<LocalizedText, ExportError> {
    let lang = el
        .attribute("lang")
        .ok_or_else(|| schema(format!("<{}> has no lang attribute", el.name)))?;
    Ok(LocalizedText::new(lang, leaf(el)?))
}

fn passthrough(el: &XmlElement) -> XmlElement {
    let mut el = el.clone();
    el.strip_whitespace();
    el
}

/// Child elements of a list container, all of which must be `child`.
fn items<'a>(el: &'a XmlElement, child: &str) -> Result<Vec<&'a XmlElement>, ExportError> {
    el.elements()
        .map(|e| {
            if e.name == child {
                Ok(e)
            } else {
                Err(schema(format!("unexpected <{}> in <{}>", e.name, el.name)))
            }
        })
        .collect()
}

fn leaves(el: &XmlElement, child: &str) -> Result<Vec<String>, ExportError> {
    items(el, child)?.into_iter().map(leaf).collect()
}

fn journal(root: &XmlElement) -> Result<RsciDocument, ExportError> {
    let mut seen = Children::new(&root.name);
    let mut out_passthrough = Vec::new();
    let (mut title_id, mut issn, mut eissn, mut titles, mut issue_el) =
        (None, None, None, None, None);
    for c in root.elements() {
        match c.name.as_str() {
            "Titleid" => seen.slot("Titleid", &mut title_id, leaf(c)?)?,
            "ISSN" => seen.slot("ISSN", &mut issn, leaf(c)?)?,
            "EISSN" => seen.slot("EISSN", &mut eissn, leaf(c)?)?,
            "JournalInfo" => {
                let t = items(c, "Title")?
                    .into_iter()
                    .map(localized)
                    .collect::<Result<Vec<_>, _>>()?;
                seen.slot("JournalInfo", &mut titles, t)?
            }
            "Issue" => seen.slot("Issue", &mut issue_el, c)?,
            _ => out_passthrough.push(passthrough(c)),
        }
    }
    let titles = require(titles, "JournalInfo", &root.name)?;
    if titles.is_empty() {
        return Err(schema("<JournalInfo> has no <Title>"));
    }
    Ok(RsciDocument {
        root_name: root.name.clone(),
        passthrough: out_passthrough,
        title_id,
        issn,
        eissn,
        journal_titles: titles,
        issue: issue(require(issue_el, "Issue", &root.name)?)?,
    })
}

fn issue(el: &XmlElement) -> Result<IssueElement, ExportError> {
    let mut seen = Children::new("Issue");
    let mut out_passthrough = Vec::new();
    let (mut volume, mut number, mut alt_number, mut part) = (None, None, None, None);
    let (mut date_uni, mut iss_title, mut pages, mut articles) = (None, None, None, None);
    for c in el.elements() {
        match c.name.as_str() {
            "Volume" => seen.slot("Volume", &mut volume, leaf(c)?)?,
            "Number" => seen.slot("Number", &mut number, leaf(c)?)?,
            "AltNumber" => seen.slot("AltNumber", &mut alt_number, leaf(c)?)?,
            "Part" => seen.slot("Part", &mut part, leaf(c)?)?,
            "DateUni" => seen.slot("DateUni", &mut date_uni, leaf(c)?)?,
            "IssTitle" => seen.slot("IssTitle", &mut iss_title, leaf(c)?)?,
            "Pages" => seen.slot("Pages", &mut pages, leaf(c)?)?,
            "Articles" => {
                let list = items(c, "Article")?
                    .into_iter()
                    .map(article)
                    .collect::<Result<Vec<_>, _>>()?;
                seen.slot("Articles", &mut articles, list)?
            }
            _ => out_passthrough.push(passthrough(c)),
        }
    }
    let date_uni = require(date_uni, "DateUni", "Issue")?;
    if date_uni.len() != 6 || !date_uni.bytes().all(|b| b.is_ascii_digit()) {
        return Err(schema(format!("<DateUni> {date_uni:?} is not YYYYMM")));
    }
    let articles = require(articles, "Articles", "Issue")?;
    if articles.is_empty() {
        return Err(schema("<Articles> has no <Article>"));
    }
    Ok(IssueElement {
        passthrough: out_passthrough,
        volume,
        number: require(number, "Number", "Issue")?,
        alt_number,
        part,
        date_uni,
        iss_title,
        pages: require(pages, "Pages", "Issue")?,
        articles,
    })
}

fn article(el: &XmlElement) -> Result<ArticleElement, ExportError> {
    let mut seen = Children::new("Article");
    let mut out_passthrough = Vec::new();
    let (mut art_type, mut pages, mut authors, mut titles, mut text) =
        (None, None, None, None, None);
    let (mut codes, mut keywords, mut references, mut files) = (None, None, None, None);
    for c in el.elements() {
        match c.name.as_str() {
            "ArtType" => seen.slot("ArtType", &mut art_type, leaf(c)?)?,
            "Pages" => seen.slot("Pages", &mut pages, leaf(c)?)?,
            "Authors" => {
                let list = items(c, "Author")?
                    .into_iter()
                    .map(author)
                    .collect::<Result<Vec<_>, _>>()?;
                seen.slot("Authors", &mut authors, list)?
            }
            "ArtTitles" => {
                let list = items(c, "ArtTitle")?
                    .into_iter()
                    .map(localized)
                    .collect::<Result<Vec<_>, _>>()?;
                seen.slot("ArtTitles", &mut titles, list)?
            }
            "Text" => seen.slot("Text", &mut text, leaf(c)?)?,
            "Codes" => {
                let list = items(c, "Code")?
                    .into_iter()
                    .map(|e| {
                        Ok(CodeElement {
                            system: e
                                .attribute("type")
                                .ok_or_else(|| schema("<Code> has no type attribute"))?
                                .to_string(),
                            value: leaf(e)?,
                        })
                    })
                    .collect::<Result<Vec<_>, ExportError>>()?;
                seen.slot("Codes", &mut codes, list)?
            }
            "KeyWords" => seen.slot("KeyWords", &mut keywords, leaves(c, "Keyword")?)?,
            "References" => seen.slot("References", &mut references, leaves(c, "Reference")?)?,
            "Files" => seen.slot("Files", &mut files, leaves(c, "File")?)?,
            _ => out_passthrough.push(passthrough(c)),
        }
    }
    let authors = require(authors, "Authors", "Article")?;
    if authors.is_empty() {
        return Err(schema("<Authors> has no <Author>"));
    }
    let titles = require(titles, "ArtTitles", "Article")?;
    if titles.is_empty() {
        return Err(schema("<ArtTitles> has no <ArtTitle>"));
    }
    Ok(ArticleElement {
        passthrough: out_passthrough,
        art_type: require(art_type, "ArtType", "Article")?,
        pages,
        authors,
        titles,
        text,
        codes: codes.unwrap_or_default(),
        keywords: keywords.unwrap_or_default(),
        references: references.unwrap_or_default(),
        files: files.unwrap_or_default(),
    })
}

fn author(el: &XmlElement) -> Result<AuthorElement, ExportError> {
    let mut seen = Children::new("Author");
    let mut out_passthrough = Vec::new();
    let (mut surname, mut initials, mut org_name, mut email, mut other_info) =
        (None, None, None, None, None);
    for c in el.elements() {
        match c.name.as_str() {
            "Surname" => seen.slot("Surname", &mut surname, leaf(c)?)?,
            "Initials" => seen.slot("Initials", &mut initials, leaf(c)?)?,
            "OrgName" => seen.slot("OrgName", &mut org_name, leaf(c)?)?,
            "Email" => seen.slot("Email", &mut email, leaf(c)?)?,
            "OtherInfo" => seen.slot("OtherInfo", &mut other_info, leaf(c)?)?,
            _ => out_passthrough.push(passthrough(c)),
        }
    }
    Ok(AuthorElement {
        passthrough: out_passthrough,
        surname: require(surname, "Surname", "Author")?,
        initials: initials.unwrap_or_default(),
        org_name,
        email,
        other_info,
    })
}
