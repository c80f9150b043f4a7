use thiserror::Error;

use super::{CitationProfile, YearlyJournalStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ProfileParseError {
    pub line: usize,
    pub message: String,
}

/// Reads a profile: either one integer per line (blank lines and `#`
/// comments skipped), or CSV with a header row containing a `citations`
/// column.
pub fn parse_profile(text: &str) -> Result<CitationProfile, ProfileParseError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        None => Ok(CitationProfile::default()),
        Some(line) if line.parse::<u32>().is_ok() || !looks_like_header(line) => {
            parse_lines(text)
        }
        Some(_) => parse_csv(text),
    }
}

fn looks_like_header(line: &str) -> bool {
    line.split(',')
        .any(|f| f.trim().trim_matches('"').eq_ignore_ascii_case("citations"))
}

fn count(field: &str, line: usize) -> Result<u32, ProfileParseError> {
    field.trim().parse::<u32>().map_err(|_| ProfileParseError {
        line,
        message: format!("{:?} is not a non-negative integer", field.trim()),
    })
}

fn parse_lines(text: &str) -> Result<CitationProfile, ProfileParseError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        })
        .map(|(i, l)| count(l, i + 1))
        .collect()
}

fn parse_csv(text: &str) -> Result<CitationProfile, ProfileParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let column = reader
        .headers()
        .map_err(|e| ProfileParseError {
            line: 1,
            message: e.to_string(),
        })?
        .iter()
        .position(|h| h.eq_ignore_ascii_case("citations"))
        .ok_or_else(|| ProfileParseError {
            line: 1,
            message: "no `citations` column".into(),
        })?;
    let mut counts = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| ProfileParseError {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let field = record.get(column).ok_or_else(|| ProfileParseError {
            line,
            message: "row has no `citations` field".into(),
        })?;
        counts.push(count(field, line)?);
    }
    Ok(CitationProfile::new(counts))
}

/// Reads journal statistics from TOML with exactly the four count keys.
pub fn parse_stats(text: &str) -> Result<YearlyJournalStats, String> {
    toml::from_str(text).map_err(|e| e.to_string())
}
