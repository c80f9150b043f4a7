#![allow(dead_code)]

pub mod gen;
pub mod oai_stub;

use std::path::PathBuf;

use rsci_core::export::RsciDocument;
use rsci_core::model::{IssueBundle, LocalizedText};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn sample_issue_path() -> PathBuf {
    fixtures().join("sample_issue/issue.json")
}

fn check<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn texts(t: &[LocalizedText]) -> Vec<(String, String)> {
    t.iter().map(|t| (t.language.clone(), t.value.clone())).collect()
}

/// Compares every bundle field that has an element in the document.
pub fn scalars_match(b: &IssueBundle, d: &RsciDocument) -> Result<(), String> {
    check("Titleid", d.title_id.clone(), b.journal.title_id.clone())?;
    check("ISSN", d.issn.clone(), b.journal.issn.clone())?;
    check("EISSN", d.eissn.clone(), b.journal.eissn.clone())?;
    check("JournalInfo/Title", texts(&d.journal_titles), texts(&b.journal.titles))?;
    let (di, bi) = (&d.issue, &b.issue);
    check("Volume", di.volume.clone(), bi.volume.map(|v| v.to_string()))?;
    check("Number", &di.number, &bi.number)?;
    check("AltNumber", &di.alt_number, &bi.alt_number)?;
    check("Part", &di.part, &bi.part)?;
    check("DateUni", &di.date_uni, &bi.date_uni)?;
    check("IssTitle", &di.iss_title, &bi.iss_title)?;
    check("Pages", &di.pages, &bi.pages)?;
    check("article count", di.articles.len(), b.articles.len())?;
    for (i, (da, ba)) in di.articles.iter().zip(&b.articles).enumerate() {
        let at = |f: &str| format!("Article[{i}]/{f}");
        check(&at("ArtType"), &da.art_type, &ba.art_type)?;
        check(&at("Pages"), &da.pages, &ba.page_range)?;
        check(&at("ArtTitles"), texts(&da.titles), texts(&ba.titles))?;
        check(&at("Text"), &da.text, &ba.abstract_text)?;
        let codes: Vec<_> = da.codes.iter().map(|c| (c.system.clone(), c.value.clone())).collect();
        let want: Vec<_> = ba.codes.clone().into_iter().collect();
        check(&at("Codes"), codes, want)?;
        check(&at("KeyWords"), &da.keywords, &ba.keywords)?;
        check(&at("References"), &da.references, &ba.references)?;
        check(&at("Files"), &da.files, &ba.files)?;
        check(&at("author count"), da.authors.len(), ba.authors.len())?;
        for (j, (du, bu)) in da.authors.iter().zip(&ba.authors).enumerate() {
            let au = |f: &str| format!("Article[{i}]/Author[{j}]/{f}");
            check(&au("Surname"), &du.surname, &bu.surname)?;
            check(&au("Initials"), &du.initials, &bu.initials)?;
            check(&au("OrgName"), &du.org_name, &bu.org_name)?;
            check(&au("Email"), &du.email, &bu.email)?;
            check(&au("OtherInfo"), &du.other_info, &bu.other_info)?;
        }
    }
    Ok(())
}
