//! OAI-PMH 2.0 client for `ListRecords` / `ListIdentifiers` with
//! `metadataPrefix=oai_dc`.

use std::num::NonZeroUsize;
use std::time::Duration;

use chrono::NaiveDate;
use thiserror::Error;
use url::Url;

use super::DublinCoreRecord;
use crate::xml::{parse_document, XmlElement};

#[derive(Debug, Error)]
pub enum HarvestError {
    #[error("invalid harvest configuration: {0}")]
    InvalidConfig(String),
    #[error("network error: {0}")]
    Network(String),
    /// An `<error code="...">` element in the response. `code` is verbatim.
    #[error("OAI-PMH error {code}: {message}")]
    Protocol { code: String, message: String },
    #[error("malformed OAI-PMH response: {0}")]
    Parse(String),
}

#[derive(Debug, Clone)]
pub struct HarvestConfig {
    endpoint_url: Url,
    set_spec: Option<String>,
    from: Option<NaiveDate>,
    until: Option<NaiveDate>,
    timeout: Duration,
    max_records: NonZeroUsize,
}

impl HarvestConfig {
    pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);
    pub const DEFAULT_MAX_RECORDS: usize = 10_000;

    pub fn new(endpoint: &str) -> Result<Self, HarvestError> {
        let endpoint_url =
            Url::parse(endpoint).map_err(|e| HarvestError::InvalidConfig(format!("{endpoint:?}: {e}")))?;
        if !matches!(endpoint_url.scheme(), "http" | "https") {
            return Err(HarvestError::InvalidConfig(format!(
                "{endpoint:?}: only http and https endpoints are supported"
            )));
        }
        Ok(Self {
            endpoint_url,
            set_spec: None,
            from: None,
            until: None,
            timeout: Self::DEFAULT_TIMEOUT,
            max_records: NonZeroUsize::new(Self::DEFAULT_MAX_RECORDS).unwrap(),
        })
    }

    pub fn with_set(mut self, set_spec: impl Into<String>) -> Self {
        self.set_spec = Some(set_spec.into());
        self
    }

    pub fn with_range(
        mut self,
        from: Option<NaiveDate>,
        until: Option<NaiveDate>,
    ) -> Result<Self, HarvestError> {
        if let (Some(f), Some(u)) = (from, until) {
            if f > u {
                return Err(HarvestError::InvalidConfig(format!(
                    "from {f} is after until {u}"
                )));
            }
        }
        self.from = from;
        self.until = until;
        Ok(self)
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Result<Self, HarvestError> {
        if timeout.is_zero() {
            return Err(HarvestError::InvalidConfig("timeout must be positive".into()));
        }
        self.timeout = timeout;
        Ok(self)
    }

    pub fn with_max_records(mut self, max_records: usize) -> Result<Self, HarvestError> {
        self.max_records = NonZeroUsize::new(max_records)
            .ok_or_else(|| HarvestError::InvalidConfig("max_records must be positive".into()))?;
        Ok(self)
    }

    pub fn endpoint_url(&self) -> &Url {
        &self.endpoint_url
    }

    pub fn max_records(&self) -> usize {
        self.max_records.get()
    }

    pub fn timeout(&self) -> Duration {
        self.timeout
    }

    fn first_request(&self, verb: &str) -> Url {
        let mut url = self.endpoint_url.clone();
        {
            let mut q = url.query_pairs_mut();
            q.append_pair("verb", verb).append_pair("metadataPrefix", "oai_dc");
            if let Some(set) = &self.set_spec {
                q.append_pair("set", set);
            }
            if let Some(from) = self.from {
                q.append_pair("from", &from.format("%Y-%m-%d").to_string());
            }
            if let Some(until) = self.until {
                q.append_pair("until", &until.format("%Y-%m-%d").to_string());
            }
        }
        url
    }

    fn resume_request(&self, verb: &str, token: &str) -> Url {
        let mut url = self.endpoint_url.clone();
        url.query_pairs_mut()
            .append_pair("verb", verb)
            .append_pair("resumptionToken", token);
        url
    }
}

/// Record header as returned by `ListIdentifiers`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OaiHeader {
    pub identifier: String,
    pub datestamp: String,
    pub deleted: bool,
}

#[derive(Debug)]
struct Page<T> {
    items: Vec<T>,
    token: Option<String>,
}

/// Harvests Dublin Core records in server order, following resumption tokens
/// until the list is exhausted or `max_records` have been collected.
/// Deleted records carry no metadata and are skipped.
pub fn harvest_oai(config: &HarvestConfig) -> Result<Vec<DublinCoreRecord>, HarvestError> {
    harvest(config, "ListRecords", parse_list_records)
}

/// Same paging as [`harvest_oai`] but with the `ListIdentifiers` verb.
pub fn harvest_identifiers(config: &HarvestConfig) -> Result<Vec<OaiHeader>, HarvestError> {
    harvest(config, "ListIdentifiers", parse_list_identifiers)
}

fn harvest<T>(
    config: &HarvestConfig,
    verb: &str,
    parse: fn(&[u8]) -> Result<Page<T>, HarvestError>,
) -> Result<Vec<T>, HarvestError> {
    let client = reqwest::blocking::Client::builder()
        .timeout(config.timeout)
        .build()
        .map_err(|e| HarvestError::Network(e.to_string()))?;
    let max = config.max_records();
    let mut out = Vec::new();
    let mut url = config.first_request(verb);
    let mut last_token: Option<String> = None;

    loop {
        log::debug!("GET {url}");
        let body = fetch(&client, &url)?;
        let page = parse(&body)?;
        let remaining = max - out.len();
        out.extend(page.items.into_iter().take(remaining));
        if out.len() >= max {
            break;
        }
        match page.token {
            Some(token) => {
                if last_token.as_deref() == Some(token.as_str()) {
                    return Err(HarvestError::Parse(format!(
                        "resumptionToken {token:?} repeated"
                    )));
                }
                url = config.resume_request(verb, &token);
                last_token = Some(token);
            }
            None => break,
        }
    }
    Ok(out)
}

fn fetch(client: &reqwest::blocking::Client, url: &Url) -> Result<Vec<u8>, HarvestError> {
    let response = client
        .get(url.clone())
        .send()
        .map_err(|e| HarvestError::Network(e.to_string()))?;
    let status = response.status();
    if !status.is_success() {
        return Err(HarvestError::Network(format!("HTTP {status} from {url}")));
    }
    response
        .bytes()
        .map(|b| b.to_vec())
        .map_err(|e| HarvestError::Network(e.to_string()))
}

/// Parses the envelope, surfacing an OAI `<error>` and returning the verb
/// element (`ListRecords`, `ListIdentifiers`).
fn envelope(bytes: &[u8], verb: &str) -> Result<XmlElement, HarvestError> {
    let root = parse_document(bytes).map_err(|e| HarvestError::Parse(e.to_string()))?;
    if root.local_name() != "OAI-PMH" {
        return Err(HarvestError::Parse(format!(
            "root element is <{}>, expected <OAI-PMH>",
            root.name
        )));
    }
    if let Some(err) = root.child("error") {
        return Err(HarvestError::Protocol {
            code: err.attribute("code").unwrap_or_default().to_string(),
            message: err.text().trim().to_string(),
        });
    }
    let list = root.elements().find(|e| e.local_name() == verb).cloned();
    list.ok_or_else(|| HarvestError::Parse(format!("response has no <{verb}> element")))
}

fn token(list: &XmlElement) -> Option<String> {
    list.child("resumptionToken")
        .map(|t| t.text().trim().to_string())
        .filter(|t| !t.is_empty())
}

fn header(el: &XmlElement) -> Result<OaiHeader, HarvestError> {
    let field = |name: &str| {
        el.child(name)
            .map(|e| e.text().trim().to_string())
            .ok_or_else(|| HarvestError::Parse(format!("header without <{name}>")))
    };
    Ok(OaiHeader {
        identifier: field("identifier")?,
        datestamp: field("datestamp")?,
        deleted: el.attribute("status") == Some("deleted"),
    })
}

fn parse_list_records(bytes: &[u8]) -> Result<Page<DublinCoreRecord>, HarvestError> {
    let list = envelope(bytes, "ListRecords")?;
    let mut items = Vec::new();
    for record in list.elements().filter(|e| e.local_name() == "record") {
        let h = header(
            record
                .child("header")
                .ok_or_else(|| HarvestError::Parse("record without <header>".into()))?,
        )?;
        if h.deleted {
            log::info!("skipping deleted record {}", h.identifier);
            continue;
        }
        let dc = record
            .child("metadata")
            .and_then(|m| m.elements().next())
            .ok_or_else(|| {
                HarvestError::Parse(format!("record {} has no metadata", h.identifier))
            })?;
        items.push(DublinCoreRecord::from_element(dc));
    }
    Ok(Page {
        items,
        token: token(&list),
    })
}

fn parse_list_identifiers(bytes: &[u8]) -> Result<Page<OaiHeader>, HarvestError> {
    let list = envelope(bytes, "ListIdentifiers")?;
    let items = list
        .elements()
        .filter(|e| e.local_name() == "header")
        .map(header)
        .collect::<Result<_, _>>()?;
    Ok(Page {
        items,
        token: token(&list),
    })
}
