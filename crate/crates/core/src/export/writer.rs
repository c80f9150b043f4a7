use super::document::{ArticleElement, AuthorElement, IssueElement, RsciDocument};
use crate::model::LocalizedText;
use crate::xml::{escape_into, XmlElement, XmlNode};

const DECLARATION: &str = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";

/// Serializes the document as UTF-8 with a fixed layout: two-space indent,
/// LF line endings, one element per line, leaf text inline.
pub fn serialize_xml(doc: &RsciDocument) -> Vec<u8> {
    let mut w = Writer::default();
    w.out.push_str(DECLARATION);
    w.open(&doc.root_name, &[]);
    w.raw_all(&doc.passthrough);
    w.opt_leaf("Titleid", &doc.title_id);
    w.opt_leaf("ISSN", &doc.issn);
    w.opt_leaf("EISSN", &doc.eissn);
    w.list("JournalInfo", &doc.journal_titles, |w, t| w.localized("Title", t));
    w.issue(&doc.issue);
    w.close(&doc.root_name);
    w.out.into_bytes()
}

#[derive(Default)]
struct Writer {
    out: String,
    depth: usize,
}

impl Writer {
    fn indent(&mut self) {
        for _ in 0..self.depth {
            self.out.push_str("  ");
        }
    }

    fn start_tag(&mut self, name: &str, attrs: &[(String, String)]) {
        self.out.push('<');
        self.out.push_str(name);
        for (k, v) in attrs {
            self.out.push(' ');
            self.out.push_str(k);
            self.out.push_str("=\"");
            escape_into(&mut self.out, v);
            self.out.push('"');
        }
    }

    fn open(&mut self, name: &str, attrs: &[(String, String)]) {
        self.indent();
        self.start_tag(name, attrs);
        self.out.push_str(">\n");
        self.depth += 1;
    }

    fn close(&mut self, name: &str) {
        self.depth -= 1;
        self.indent();
        self.out.push_str("</");
        self.out.push_str(name);
        self.out.push_str(">\n");
    }

    fn empty(&mut self, name: &str) {
        self.indent();
        self.out.push('<');
        self.out.push_str(name);
        self.out.push_str("/>\n");
    }

    fn leaf_with(&mut self, name: &str, attrs: &[(String, String)], text: &str) {
        self.indent();
        self.start_tag(name, attrs);
        self.out.push('>');
        escape_into(&mut self.out, text);
        self.out.push_str("</");
        self.out.push_str(name);
        self.out.push_str(">\n");
    }

    fn leaf(&mut self, name: &str, text: &str) {
        self.leaf_with(name, &[], text);
    }

    fn opt_leaf(&mut self, name: &str, text: &Option<String>) {
        if let Some(t) = text {
            self.leaf(name, t);
        }
    }

    fn localized(&mut self, name: &str, t: &LocalizedText) {
        self.leaf_with(name, &[("lang".to_string(), t.language.clone())], &t.value);
    }

    /// Required container: written even when empty.
    fn list<T>(&mut self, name: &str, items: &[T], mut each: impl FnMut(&mut Self, &T)) {
        if items.is_empty() {
            self.empty(name);
            return;
        }
        self.open(name, &[]);
        for item in items {
            each(self, item);
        }
        self.close(name);
    }

    /// Optional container: omitted when empty.
    fn opt_list(&mut self, name: &str, child: &str, items: &[String]) {
        if !items.is_empty() {
            self.list(name, items, |w, s| w.leaf(child, s));
        }
    }

    fn issue(&mut self, issue: &IssueElement) {
        self.open("Issue", &[]);
        self.raw_all(&issue.passthrough);
        self.opt_leaf("Volume", &issue.volume);
        self.leaf("Number", &issue.number);
        self.opt_leaf("AltNumber", &issue.alt_number);
        self.opt_leaf("Part", &issue.part);
        self.leaf("DateUni", &issue.date_uni);
        self.opt_leaf("IssTitle", &issue.iss_title);
        self.leaf("Pages", &issue.pages);
        self.list("Articles", &issue.articles, Self::article);
        self.close("Issue");
    }

    fn article(&mut self, a: &ArticleElement) {
        self.open("Article", &[]);
        self.raw_all(&a.passthrough);
        self.leaf("ArtType", &a.art_type);
        self.opt_leaf("Pages", &a.pages);
        self.list("Authors", &a.authors, Self::author);
        self.list("ArtTitles", &a.titles, |w, t| w.localized("ArtTitle", t));
        self.opt_leaf("Text", &a.text);
        if !a.codes.is_empty() {
            self.list("Codes", &a.codes, |w, c| {
                w.leaf_with("Code", &[("type".to_string(), c.system.clone())], &c.value)
            });
        }
        self.opt_list("KeyWords", "Keyword", &a.keywords);
        self.opt_list("References", "Reference", &a.references);
        self.opt_list("Files", "File", &a.files);
        self.close("Article");
    }

    fn author(&mut self, a: &AuthorElement) {
        self.open("Author", &[]);
        self.raw_all(&a.passthrough);
        self.leaf("Surname", &a.surname);
        if !a.initials.is_empty() {
            self.leaf("Initials", &a.initials);
        }
        self.opt_leaf("OrgName", &a.org_name);
        self.opt_leaf("Email", &a.email);
        self.opt_leaf("OtherInfo", &a.other_info);
        self.close("Author");
    }

    fn raw_all(&mut self, els: &[XmlElement]) {
        for e in els {
            self.raw(e);
        }
    }

    /// Element-only content is indented; anything with text is written
    /// inline so no whitespace is added to it.
    fn raw(&mut self, el: &XmlElement) {
        if el.children.is_empty() {
            self.indent();
            self.start_tag(&el.name, &el.attributes);
            self.out.push_str("/>\n");
        } else if el.children.iter().all(|c| matches!(c, XmlNode::Element(_))) {
            self.open(&el.name, &el.attributes);
            for c in el.elements() {
                self.raw(c);
            }
            self.close(&el.name);
        } else {
            self.indent();
            self.raw_inline(el);
            self.out.push('\n');
        }
    }

    fn raw_inline(&mut self, el: &XmlElement) {
        self.start_tag(&el.name, &el.attributes);
        if el.children.is_empty() {
            self.out.push_str("/>");
            return;
        }
        self.out.push('>');
        for c in &el.children {
            match c {
                XmlNode::Text(t) => escape_into(&mut self.out, t),
                XmlNode::Element(e) => self.raw_inline(e),
            }
        }
        self.out.push_str("</");
        self.out.push_str(&el.name);
        self.out.push('>');
    }
}
