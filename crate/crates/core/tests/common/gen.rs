//! Random exportable bundles for round-trip checks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rsci_core::model::{
    ArticleRecord, AuthorRecord, IssueBundle, IssueHeader, JournalHeader, LocalizedText,
};

const ALPHABET: &[&str] = &[
    "a", "b", "Z", "7", " ", "&", "<", ">", "\"", "'", "-", ".", ",", "ж", "Ї", "é", "\u{1F4DA}",
    "\n", "\t", "&amp;", "]]>", "ё",
];
const LANGS: &[&str] = &["ENG", "UKR", "RUS", "GER", "FRE", "POL"];
const CODE_SYSTEMS: &[&str] = &["UDC", "DOI", "BBK", "DC.identifier"];

pub fn text(rng: &mut ChaCha8Rng, max_len: usize) -> String {
    let len = rng.gen_range(1..=max_len);
    let s: String = (0..len).map(|_| *ALPHABET.choose(rng).unwrap()).collect();
    let t = s.trim();
    if t.is_empty() {
        "x".to_string()
    } else {
        t.to_string()
    }
}

fn opt(rng: &mut ChaCha8Rng, max_len: usize) -> Option<String> {
    rng.gen_bool(0.5).then(|| text(rng, max_len))
}

fn localized(rng: &mut ChaCha8Rng) -> Vec<LocalizedText> {
    let n = rng.gen_range(1..=3);
    let langs: Vec<&str> = LANGS.choose_multiple(rng, n).copied().collect();
    langs
        .into_iter()
        .map(|l| LocalizedText::new(l, text(rng, 30)))
        .collect()
}

/// A valid ISSN, with the check digit computed here rather than by the crate.
pub fn issn(rng: &mut ChaCha8Rng) -> String {
    let digits: Vec<u32> = (0..7).map(|_| rng.gen_range(0..10)).collect();
    let sum: u32 = digits.iter().zip([8, 7, 6, 5, 4, 3, 2]).map(|(d, w)| d * w).sum();
    let check = (11 - sum % 11) % 11;
    let d: String = digits.iter().map(|d| char::from_digit(*d, 10).unwrap()).collect();
    let last = if check == 10 {
        'X'
    } else {
        char::from_digit(check, 10).unwrap()
    };
    format!("{}-{}{}", &d[..4], &d[4..], last)
}

fn email(rng: &mut ChaCha8Rng) -> String {
    format!("user{}@example{}.org", rng.gen_range(0..1000), rng.gen_range(0..10))
}

pub fn bundle(rng: &mut ChaCha8Rng) -> IssueBundle {
    let mut attachments = BTreeMap::new();
    let articles = (0..rng.gen_range(1..=4))
        .map(|ai| {
            let files: Vec<String> = (0..rng.gen_range(0..=2))
                .map(|fi| format!("{ai}-{fi}-{}.pdf", rng.gen_range(0..100)))
                .collect();
            for f in &files {
                let bytes: Vec<u8> = (0..rng.gen_range(0..64)).map(|_| rng.gen()).collect();
                attachments.insert(f.clone(), bytes);
            }
            let n_codes = rng.gen_range(0..=2);
            let systems: Vec<&str> = CODE_SYSTEMS.choose_multiple(rng, n_codes).copied().collect();
            ArticleRecord {
                art_type: if rng.gen_bool(0.8) { "RAR".into() } else { "REV".into() },
                authors: (0..rng.gen_range(1..=3))
                    .map(|_| AuthorRecord {
                        surname: text(rng, 20),
                        initials: if rng.gen_bool(0.8) { text(rng, 5) } else { String::new() },
                        org_name: opt(rng, 30),
                        email: rng.gen_bool(0.5).then(|| email(rng)),
                        other_info: opt(rng, 20),
                    })
                    .collect(),
                titles: localized(rng),
                abstract_text: opt(rng, 80),
                codes: systems
                    .into_iter()
                    .map(|s| (s.to_string(), text(rng, 12)))
                    .collect(),
                keywords: (0..rng.gen_range(0..=4)).map(|_| text(rng, 12)).collect(),
                references: (0..rng.gen_range(0..=4)).map(|_| text(rng, 60)).collect(),
                files,
                page_range: rng
                    .gen_bool(0.5)
                    .then(|| format!("{}-{}", rng.gen_range(1..50), rng.gen_range(50..100))),
            }
        })
        .collect();

    let (issn_v, eissn_v) = match rng.gen_range(0..3) {
        0 => (Some(issn(rng)), None),
        1 => (None, Some(issn(rng))),
        _ => (Some(issn(rng)), Some(issn(rng))),
    };
    IssueBundle {
        journal: JournalHeader {
            title_id: rng.gen_bool(0.5).then(|| rng.gen_range(1..99999).to_string()),
            issn: issn_v,
            eissn: eissn_v,
            titles: localized(rng),
        },
        issue: IssueHeader {
            volume: rng.gen_bool(0.7).then(|| rng.gen_range(0..200)),
            number: rng.gen_range(1..13).to_string(),
            alt_number: rng.gen_bool(0.5).then(|| rng.gen_range(1..300).to_string()),
            part: opt(rng, 5),
            date_uni: format!("{:04}{:02}", rng.gen_range(1900..=2100), rng.gen_range(1..=12)),
            iss_title: opt(rng, 30),
            pages: rng.gen_range(1..500).to_string(),
        },
        articles,
        attachments,
    }
}
