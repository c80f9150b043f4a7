//! Minimal owned XML element tree on top of `quick-xml`, plus the escaping
//! rules used by the writer.

use quick_xml::events::Event;
use quick_xml::Reader;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("XML syntax error at byte {offset}: {message}")]
pub struct XmlSyntaxError {
    pub offset: u64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum XmlNode {
    Element(XmlElement),
    Text(String),
}

/// An element with its qualified name, attributes in document order and
/// child nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XmlElement {
    pub name: String,
    pub attributes: Vec<(String, String)>,
    pub children: Vec<XmlNode>,
}

impl XmlElement {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            attributes: Vec::new(),
            children: Vec::new(),
        }
    }

    /// Name with any namespace prefix removed.
    pub fn local_name(&self) -> &str {
        local(&self.name)
    }

    pub fn attribute(&self, name: &str) -> Option<&str> {
        self.attributes
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    pub fn elements(&self) -> impl Iterator<Item = &XmlElement> {
        self.children.iter().filter_map(|c| match c {
            XmlNode::Element(e) => Some(e),
            XmlNode::Text(_) => None,
        })
    }

    /// First child element whose local name is `name`.
    pub fn child(&self, name: &str) -> Option<&XmlElement> {
        self.elements().find(|e| e.local_name() == name)
    }

    /// Concatenated text content of direct text children.
    pub fn text(&self) -> String {
        self.children
            .iter()
            .filter_map(|c| match c {
                XmlNode::Text(t) => Some(t.as_str()),
                XmlNode::Element(_) => None,
            })
            .collect()
    }

    /// Removes whitespace-only text nodes at every depth.
    pub fn strip_whitespace(&mut self) {
        self.children.retain(|c| match c {
            XmlNode::Text(t) => !t.trim().is_empty(),
            XmlNode::Element(_) => true,
        });
        for c in &mut self.children {
            if let XmlNode::Element(e) = c {
                e.strip_whitespace();
            }
        }
    }
}

pub(crate) fn local(name: &str) -> &str {
    name.rsplit_once(':').map_or(name, |(_, l)| l)
}

/// Parses a complete document with exactly one root element.
pub fn parse_document(bytes: &[u8]) -> Result<XmlElement, XmlSyntaxError> {
    let mut reader = Reader::from_reader(bytes);
    reader.config_mut().trim_text(false);
    let mut stack: Vec<XmlElement> = Vec::new();
    let mut root: Option<XmlElement> = None;

    let err = |offset: u64, message: String| XmlSyntaxError { offset, message };

    loop {
        let event = reader
            .read_event()
            .map_err(|e| err(reader.error_position(), e.to_string()))?;
        let pos = reader.buffer_position();
        match event {
            Event::Start(ref start) | Event::Empty(ref start) => {
                let is_empty = matches!(event, Event::Empty(_));
                if root.is_some() && stack.is_empty() {
                    return Err(err(pos, "content after the root element".into()));
                }
                let name = utf8(start.name().as_ref(), pos)?;
                let mut el = XmlElement::new(name);
                for attr in start.attributes() {
                    let attr = attr.map_err(|e| err(pos, e.to_string()))?;
                    let key = utf8(attr.key.as_ref(), pos)?;
                    let value = attr
                        .unescape_value()
                        .map_err(|e| err(pos, e.to_string()))?
                        .into_owned();
                    el.attributes.push((key, value));
                }
                if is_empty {
                    close(el, &mut stack, &mut root);
                } else {
                    stack.push(el);
                }
            }
            Event::End(_) => {
                // quick-xml already checked the end name matches.
                let el = stack
                    .pop()
                    .ok_or_else(|| err(pos, "unexpected closing tag".into()))?;
                close(el, &mut stack, &mut root);
            }
            Event::Text(text) => {
                let text = text.unescape().map_err(|e| err(pos, e.to_string()))?;
                push_text(&mut stack, &text, pos)?;
            }
            Event::CData(data) => {
                let text = utf8(&data.into_inner(), pos)?;
                push_text(&mut stack, &text, pos)?;
            }
            Event::Eof => {
                if let Some(open) = stack.last() {
                    return Err(err(
                        bytes.len() as u64,
                        format!("unexpected end of input inside <{}>", open.name),
                    ));
                }
                return root.ok_or_else(|| err(bytes.len() as u64, "no root element".into()));
            }
            Event::Comment(_) | Event::Decl(_) | Event::PI(_) | Event::DocType(_) => {}
        }
    }
}

fn close(el: XmlElement, stack: &mut [XmlElement], root: &mut Option<XmlElement>) {
    match stack.last_mut() {
        Some(parent) => parent.children.push(XmlNode::Element(el)),
        None => *root = Some(el),
    }
}

fn push_text(stack: &mut [XmlElement], text: &str, pos: u64) -> Result<(), XmlSyntaxError> {
    match stack.last_mut() {
        Some(parent) => {
            if let Some(XmlNode::Text(prev)) = parent.children.last_mut() {
                prev.push_str(text);
            } else {
                parent.children.push(XmlNode::Text(text.to_string()));
            }
            Ok(())
        }
        None if text.trim().is_empty() => Ok(()),
        None => Err(XmlSyntaxError {
            offset: pos,
            message: "text outside the root element".into(),
        }),
    }
}

fn utf8(bytes: &[u8], pos: u64) -> Result<String, XmlSyntaxError> {
    String::from_utf8(bytes.to_vec()).map_err(|e| XmlSyntaxError {
        offset: pos,
        message: e.to_string(),
    })
}

/// Escapes `& < > " '` and carriage returns, which a parser would otherwise
/// normalize away.
pub(crate) fn escape_into(out: &mut String, s: &str) {
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            '\r' => out.push_str("&#13;"),
            c => out.push(c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_tree() {
        let doc = br#"<?xml version="1.0"?>
<a x="1 &amp; 2"><!-- c --><b>t&lt;<![CDATA[<raw>]]></b><c/></a>"#;
        let root = parse_document(doc).unwrap();
        assert_eq!(root.name, "a");
        assert_eq!(root.attribute("x"), Some("1 & 2"));
        assert_eq!(root.child("b").unwrap().text(), "t<<raw>");
        assert!(root.child("c").unwrap().children.is_empty());
    }

    #[test]
    fn truncated_input_reports_offset() {
        let doc = b"<a><b>text</b>";
        let e = parse_document(doc).unwrap_err();
        assert_eq!(e.offset, doc.len() as u64);
    }

    #[test]
    fn mismatched_tag() {
        assert!(parse_document(b"<a><b></a></b>").is_err());
    }

    #[test]
    fn rejects_two_roots_and_empty() {
        assert!(parse_document(b"<a/><b/>").is_err());
        assert!(parse_document(b"").is_err());
        assert!(parse_document(b"   ").is_err());
    }

    #[test]
    fn prefixes() {
        let root = parse_document(br#"<oai_dc:dc xmlns:oai_dc="x"><dc:title>T</dc:title></oai_dc:dc>"#)
            .unwrap();
        assert_eq!(root.local_name(), "dc");
        assert_eq!(root.child("title").unwrap().text(), "T");
    }

    #[test]
    fn escaping() {
        let mut s = String::new();
        escape_into(&mut s, "a&b<c>d\"e'f\rg");
        assert_eq!(s, "a&amp;b&lt;c&gt;d&quot;e&apos;f&#13;g");
    }
}
