mod common;

use std::collections::HashSet;

use chrono::NaiveDate;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rsci_core::export::{
    build_rsci_document, package_archive, parse_rsci_xml, read_zip_entries, serialize_xml,
    ExportError,
};
use rsci_core::ingest::load_canonical;

fn date() -> NaiveDate {
    NaiveDate::from_ymd_opt(2018, 1, 12).unwrap()
}

#[test]
fn sample_issue_matches_golden_xml() {
    let bundle = load_canonical(common::sample_issue_path()).unwrap();
    let xml = serialize_xml(&build_rsci_document(&bundle).unwrap());
    let expected = std::fs::read(common::fixtures().join("sample_issue/expected.xml")).unwrap();
    assert_eq!(
        String::from_utf8(xml).unwrap(),
        String::from_utf8(expected).unwrap()
    );
}

#[test]
fn sample_issue_archive_layout() {
    let bundle = load_canonical(common::sample_issue_path()).unwrap();
    let archive = package_archive(&bundle, date()).unwrap();
    assert_eq!(archive.archive_name, "03178471_2018_01_12(1)_unicode.zip");
    let bytes = archive.to_zip_bytes().unwrap();
    let entries = read_zip_entries(&bytes).unwrap();
    let names: Vec<_> = entries.iter().map(|e| e.name.as_str()).collect();
    assert_eq!(
        names,
        [
            "03178471_2018_01_12(1)_unicode.xml",
            "1-1-4-1-10-20171225.pdf",
            "2-1-8-1-10-20171225.pdf"
        ]
    );
    for entry in &entries[1..] {
        assert_eq!(&entry.bytes, &bundle.attachments[&entry.name]);
    }

    let doc = parse_rsci_xml(&entries[0].bytes).unwrap();
    assert_eq!(doc.issue.articles.len(), 2);
    assert_eq!(doc.issn.as_deref(), Some("0317-8471"));
    let members: HashSet<_> = names.iter().copied().collect();
    for article in &doc.issue.articles {
        for f in &article.files {
            assert!(members.contains(f.as_str()), "{f} not in archive");
        }
    }
}

#[test]
fn zip_bytes_are_deterministic() {
    let bundle = load_canonical(common::sample_issue_path()).unwrap();
    let a = package_archive(&bundle, date()).unwrap().to_zip_bytes().unwrap();
    let b = package_archive(&bundle, date()).unwrap().to_zip_bytes().unwrap();
    assert_eq!(a, b);
    let later = NaiveDate::from_ymd_opt(2018, 1, 13).unwrap();
    let c = package_archive(&bundle, later).unwrap().to_zip_bytes().unwrap();
    assert_ne!(a, c);
}

#[test]
fn invalid_bundle_is_not_packaged() {
    let mut bundle = load_canonical(common::sample_issue_path()).unwrap();
    bundle.issue.pages.clear();
    match package_archive(&bundle, date()) {
        Err(ExportError::NotExportable(report)) => assert_eq!(report.error_count(), 1),
        other => panic!("expected NotExportable, got {other:?}"),
    }
}

#[test]
fn random_bundles_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..200 {
        let bundle = common::gen::bundle(&mut rng);
        let doc = build_rsci_document(&bundle)
            .unwrap_or_else(|e| panic!("bundle {i} not exportable: {e}\n{bundle:#?}"));
        let xml = serialize_xml(&doc);
        let parsed = parse_rsci_xml(&xml).unwrap_or_else(|e| panic!("bundle {i}: {e}"));
        common::scalars_match(&bundle, &parsed).unwrap_or_else(|e| panic!("bundle {i}: {e}"));
        assert_eq!(serialize_xml(&parsed), xml, "bundle {i}: re-serialization differs");

        let archive = package_archive(&bundle, date()).unwrap();
        let entries = read_zip_entries(&archive.to_zip_bytes().unwrap()).unwrap();
        assert_eq!(entries, archive.entries);
    }
}

#[test]
fn unknown_elements_survive_reexport() {
    let xml = br#"<?xml version="1.0" encoding="UTF-8"?>
<Journal>
  <OperCard><Operator>ed</Operator><Pid>1</Pid></OperCard>
  <Titleid>123</Titleid>
  <ISSN>0317-8471</ISSN>
  <JournalInfo><Title lang="ENG">J</Title></JournalInfo>
  <Issue>
    <Number>1</Number>
    <DateUni>201801</DateUni>
    <Pages>1-2</Pages>
    <Articles>
      <Article>
        <ArtType>RAR</ArtType>
        <Authors><Author><Surname>S</Surname><Initials>A.</Initials><Extra>keep</Extra></Author></Authors>
        <ArtTitles><ArtTitle lang="ENG">T</ArtTitle></ArtTitles>
      </Article>
    </Articles>
  </Issue>
</Journal>"#;
    let doc = parse_rsci_xml(xml).unwrap();
    let summary = doc.passthrough_summary();
    assert!(summary.iter().any(|l| l.starts_with("OperCard")), "{summary:?}");
    assert!(summary.iter().any(|l| l.contains("Extra")), "{summary:?}");
    let again = parse_rsci_xml(&serialize_xml(&doc)).unwrap();
    assert_eq!(again, doc);
}
