//! Citation indicators over a profile of per-paper citation counts.
//!
//! Ratios are exact (`Ratio<u64>`); rounding happens only when rendering.

mod input;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use input::{parse_profile, parse_stats, ProfileParseError};

/// Lower and upper bound of the empirical range of the Hirsch coefficient.
pub const HIRSCH_A_RANGE: (u64, u64) = (3, 5);

/// Threshold of the i10-index ("at least 10 citations").
pub const I10_THRESHOLD: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("the citation profile is empty")]
    EmptyProfile,
    #[error("the h-index is zero, so the Hirsch coefficient is undefined")]
    ZeroH,
    #[error("q = {q} is outside 1..={papers}")]
    QOutOfRange { q: usize, papers: usize },
    #[error("no publications in the two preceding years")]
    NoPublications,
    #[error("citation or publication counts overflow 64 bits")]
    Overflow,
}

/// Citation counts, one per paper, in any order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CitationProfile(Vec<u32>);

impl CitationProfile {
    pub fn new(counts: Vec<u32>) -> Self {
        Self(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    /// Number of papers.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn descending(&self) -> Vec<u32> {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

impl From<Vec<u32>> for CitationProfile {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl FromIterator<u32> for CitationProfile {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Citation counts a journal needs for its two-year impact factor.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct YearlyJournalStats {
    /// Citations received this year by items published last year.
    pub citations_prev1: u64,
    /// Citations received this year by items published two years ago.
    pub citations_prev2: u64,
    pub publications_prev1: u64,
    pub publications_prev2: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HirschFit {
    pub h: usize,
    pub n_c_tot: u64,
    /// `n_c_tot / h²`
    #[serde(serialize_with = "ratio_as_pair")]
    pub a: Ratio<u64>,
    pub within_empirical_range: bool,
}

fn ratio_as_pair<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Ratio", 2)?;
    st.serialize_field("numer", r.numer())?;
    st.serialize_field("denom", r.denom())?;
    st.end()
}

pub fn total_citations(p: &CitationProfile) -> u64 {
    p.0.iter().map(|&c| u64::from(c)).sum()
}

pub fn citations_per_paper(p: &CitationProfile) -> Result<Ratio<u64>, MetricsError> {
    if p.is_empty() {
        return Err(MetricsError::EmptyProfile);
    }
    Ok(Ratio::new(total_citations(p), p.len() as u64))
}

/// Largest `h` such that `h` papers have at least `h` citations each.
pub fn h_index(p: &CitationProfile) -> usize {
    p.descending()
        .iter()
        .enumerate()
        .take_while(|&(i, &c)| c as usize > i)
        .count()
}

pub fn hirsch_a(p: &CitationProfile) -> Result<HirschFit, MetricsError> {
    if p.is_empty() {
        return Err(MetricsError::EmptyProfile);
    }
    let h = h_index(p);
    if h == 0 {
        return Err(MetricsError::ZeroH);
    }
    let n_c_tot = total_citations(p);
    let a = Ratio::new(n_c_tot, (h * h) as u64);
    let (lo, hi) = HIRSCH_A_RANGE;
    Ok(HirschFit {
        h,
        n_c_tot,
        a,
        within_empirical_range: Ratio::from_integer(lo) <= a && a <= Ratio::from_integer(hi),
    })
}

/// Largest `g <= N_p` such that the `g` most cited papers have at least `g²`
/// citations together.
pub fn g_index(p: &CitationProfile) -> usize {
    let mut sum = 0u64;
    let mut g = 0;
    for (i, c) in p.descending().into_iter().enumerate() {
        sum += u64::from(c);
        let rank = (i + 1) as u64;
        if sum >= rank * rank {
            g = i + 1;
        }
    }
    g
}

/// Papers with at least ten citations.
pub fn i10_index(p: &CitationProfile) -> usize {
    p.0.iter().filter(|&&c| c >= I10_THRESHOLD).count()
}

/// Papers with strictly more than `y` citations.
pub fn significant_papers(p: &CitationProfile, y: u64) -> usize {
    p.0.iter().filter(|&&c| u64::from(c) > y).count()
}

/// The `q` largest counts, largest first.
pub fn top_q_citations(p: &CitationProfile, q: usize) -> Result<Vec<u32>, MetricsError> {
    if q == 0 || q > p.len() {
        return Err(MetricsError::QOutOfRange { q, papers: p.len() });
    }
    let mut v = p.descending();
    v.truncate(q);
    Ok(v)
}

/// Two-year impact factor.
pub fn impact_factor(s: &YearlyJournalStats) -> Result<Ratio<u64>, MetricsError> {
    let publications = s
        .publications_prev1
        .checked_add(s.publications_prev2)
        .ok_or(MetricsError::Overflow)?;
    if publications == 0 {
        return Err(MetricsError::NoPublications);
    }
    let citations = s
        .citations_prev1
        .checked_add(s.citations_prev2)
        .ok_or(MetricsError::Overflow)?;
    Ok(Ratio::new(citations, publications))
}

/// Renders a ratio with two decimals, rounding half up.
pub fn format_ratio(r: &Ratio<u64>) -> String {
    let (n, d) = (u128::from(*r.numer()), u128::from(*r.denom()));
    let hundredths = (n * 200 + d) / (2 * d);
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}

/// Everything the `metrics` command reports for one profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndicatorSummary {
    pub papers: usize,
    pub total_citations: u64,
    #[serde(serialize_with = "opt_ratio")]
    pub citations_per_paper: Option<Ratio<u64>>,
    pub h_index: usize,
    pub hirsch: Option<HirschFit>,
    pub g_index: usize,
    pub i10_index: usize,
}

fn opt_ratio<S: serde::Serializer>(r: &Option<Ratio<u64>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => ratio_as_pair(r, s),
        None => s.serialize_none(),
    }
}

impl IndicatorSummary {
    pub fn compute(p: &CitationProfile) -> Self {
        Self {
            papers: p.len(),
            total_citations: total_citations(p),
            citations_per_paper: citations_per_paper(p).ok(),
            h_index: h_index(p),
            hirsch: hirsch_a(p).ok(),
            g_index: g_index(p),
            i10_index: i10_index(p),
        }
    }
}
