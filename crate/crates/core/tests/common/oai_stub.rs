//! A tiny blocking HTTP server that answers OAI-PMH requests from canned
//! pages, for harvest tests.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::sync::{Arc, Mutex};
use std::thread;

pub struct OaiStub {
    pub endpoint: String,
    requests: Arc<Mutex<Vec<HashMap<String, String>>>>,
}

impl OaiStub {
    /// Serves `respond(query) -> (status, body)` on a random local port.
    pub fn start<F>(respond: F) -> Self
    where
        F: Fn(&HashMap<String, String>) -> (u16, String) + Send + 'static,
    {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let endpoint = format!("http://{}/oai", listener.local_addr().unwrap());
        let requests = Arc::new(Mutex::new(Vec::new()));
        let log = Arc::clone(&requests);
        thread::spawn(move || {
            for stream in listener.incoming() {
                let Ok(mut stream) = stream else { continue };
                let mut reader = BufReader::new(stream.try_clone().unwrap());
                let mut request_line = String::new();
                if reader.read_line(&mut request_line).is_err() {
                    continue;
                }
                loop {
                    let mut line = String::new();
                    if reader.read_line(&mut line).unwrap_or(0) == 0 || line == "\r\n" {
                        break;
                    }
                }
                let target = request_line.split_whitespace().nth(1).unwrap_or("/");
                let query: HashMap<String, String> = url::Url::parse(&format!("http://x{target}"))
                    .map(|u| u.query_pairs().into_owned().collect())
                    .unwrap_or_default();
                let (status, body) = respond(&query);
                log.lock().unwrap().push(query);
                let _ = write!(
                    stream,
                    "HTTP/1.1 {status} X\r\nContent-Type: text/xml; charset=utf-8\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                    body.len()
                );
            }
        });
        Self { endpoint, requests }
    }

    /// `total` records served `per_page` at a time with tokens `page-N`.
    pub fn paged(total: usize, per_page: usize) -> Self {
        Self::start(move |q| {
            let page: usize = q
                .get("resumptionToken")
                .and_then(|t| t.strip_prefix("page-"))
                .and_then(|n| n.parse().ok())
                .unwrap_or(0);
            let start = page * per_page;
            let end = (start + per_page).min(total);
            let token = (end < total).then(|| format!("page-{}", page + 1));
            (200, list_records((start..end).map(record).collect(), token))
        })
    }

    /// Always answers with an OAI `<error code=...>`.
    pub fn error(code: &'static str) -> Self {
        Self::start(move |_| (200, oai_error(code)))
    }

    pub fn requests(&self) -> Vec<HashMap<String, String>> {
        self.requests.lock().unwrap().clone()
    }
}

pub fn record(i: usize) -> String {
    format!(
        r#"<record>
      <header><identifier>oai:stub:{i}</identifier><datestamp>2018-01-12</datestamp></header>
      <metadata>
        <oai_dc:dc xmlns:oai_dc="http://www.openarchives.org/OAI/2.0/oai_dc/" xmlns:dc="http://purl.org/dc/elements/1.1/">
          <dc:title>Record {i}</dc:title>
          <dc:creator>Author{i}, A.</dc:creator>
          <dc:subject>topic {i}</dc:subject>
          <dc:identifier>oai:stub:{i}</dc:identifier>
        </oai_dc:dc>
      </metadata>
    </record>"#
    )
}

pub fn list_records(records: Vec<String>, token: Option<String>) -> String {
    let token = match token {
        Some(t) => format!("<resumptionToken>{t}</resumptionToken>"),
        None => String::new(),
    };
    format!(
        r#"<?xml version="1.0" encoding="UTF-8"?>
<OAI-PMH xmlns="http://www.openarchives.org/OAI/2.0/">
  <responseDate>2018-01-12T12:14:00Z</responseDate>
  <request verb="ListRecords">http://stub/oai</request>
  <ListRecords>
    {}
    {token}
  </ListRecords>
</OAI-PMH>"#,
        records.join("\n    ")
    )
}

pub fn oai_error(code: &str) -> String {
    format!(
        r#"<?xml version="1.0" encoding="UTF-8"?>
<OAI-PMH xmlns="http://www.openarchives.org/OAI/2.0/">
  <responseDate>2018-01-12T12:14:00Z</responseDate>
  <request>http://stub/oai</request>
  <error code="{code}">stub error {code}</error>
</OAI-PMH>"#
    )
}
