//! Text rendering of alignment reports and component tables.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::str::FromStr;

use thiserror::Error;

use crate::alignment::{AlignmentReport, ComponentRow, FragmentMatch, MatchKind};
use crate::id::Id;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    /// Fixed-layout table for people.
    Plain,
    /// Pretty-printed JSON mirroring [`AlignmentReport`] field for field.
    Structured,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown report format {0:?}, expected plain or structured")]
pub struct UnknownFormat(pub String);

impl FromStr for ReportFormat {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(ReportFormat::Plain),
            "structured" => Ok(ReportFormat::Structured),
            other => Err(UnknownFormat(other.to_string())),
        }
    }
}

pub fn render_report(report: &AlignmentReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Plain => render_plain(report),
        ReportFormat::Structured => {
            let mut s = serde_json::to_string_pretty(report).expect("reports always serialize");
            s.push('\n');
            s
        }
    }
}

/// Inverse of the structured format.
pub fn parse_structured(text: &str) -> Result<AlignmentReport, serde_json::Error> {
    serde_json::from_str(text)
}

fn ids(set: &BTreeSet<Id>) -> String {
    if set.is_empty() {
        "-".to_string()
    } else {
        set.iter().map(Id::as_str).collect::<Vec<_>>().join(", ")
    }
}

fn strategy_cell(m: &FragmentMatch) -> String {
    let a = m.as_is_strategy.as_deref().unwrap_or("");
    let b = m.to_be_strategy.as_deref().unwrap_or("");
    match m.kind {
        MatchKind::StrategyUpgrade => format!("{a} -> {b}"),
        MatchKind::Removed => a.to_string(),
        MatchKind::Unchanged | MatchKind::Added => b.to_string(),
    }
}

/// Left-aligned columns separated by two spaces; the last column is not
/// padded so lines carry no trailing blanks.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut s = String::new();
    let head: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    for r in std::iter::once(&head).chain(rows) {
        let last = r.len() - 1;
        for (i, cell) in r.iter().enumerate() {
            if i == last {
                s.push_str(cell);
            } else {
                let _ = write!(s, "{:<w$}  ", cell, w = widths[i]);
            }
        }
        s.push('\n');
    }
    s
}

fn render_plain(r: &AlignmentReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "Alignment: {} -> {}", r.as_is_model, r.to_be_model);
    s.push('\n');
    let rows: Vec<Vec<String>> = r
        .matches
        .iter()
        .map(|m| {
            vec![
                m.as_is.as_ref().map_or("-", Id::as_str).to_string(),
                m.to_be.as_ref().map_or("-", Id::as_str).to_string(),
                m.kind.to_string(),
                strategy_cell(m),
            ]
        })
        .collect();
    s.push_str(&table(&["As-Is", "To-Be", "Match", "Strategy"], &rows));
    s.push('\n');
    let _ = writeln!(
        s,
        "Summary: {} unchanged, {} strategy-upgrade, {} added, {} removed",
        r.count(MatchKind::Unchanged),
        r.count(MatchKind::StrategyUpgrade),
        r.count(MatchKind::Added),
        r.count(MatchKind::Removed)
    );
    let _ = writeln!(s, "Gaps: {}", r.gap_count());
    if !r.coverage.is_empty() {
        s.push('\n');
        let rows: Vec<Vec<String>> = r.coverage.iter().map(|(p, fs)| vec![p.to_string(), ids(fs)]).collect();
        s.push_str(&table(&["Problem", "Resolved by"], &rows));
    }
    if !r.category_summary.is_empty() {
        s.push('\n');
        let rows: Vec<Vec<String>> = r.category_summary.iter().map(|(c, fs)| vec![c.clone(), ids(fs)]).collect();
        s.push_str(&table(&["Category", "Resolved by"], &rows));
    }
    s.push('\n');
    let _ = writeln!(s, "Uncovered: {}", if r.uncovered.is_empty() { "none".to_string() } else { ids(&r.uncovered) });
    s
}

pub fn render_components(rows: &[ComponentRow]) -> String {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let comps = if r.components.is_empty() {
                "-".to_string()
            } else {
                r.components.iter().cloned().collect::<Vec<_>>().join(", ")
            };
            vec![r.fragment.as_ref().map_or("All", Id::as_str).to_string(), comps]
        })
        .collect();
    table(&["Fragment", "Components"], &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alignment::{align, PlaceCorrespondence};
    use crate::net::tests::electrotech_asis;
    use crate::net::ModelKind;

    fn identity_report() -> AlignmentReport {
        let a = electrotech_asis();
        let mut b = a.clone();
        b.kind = ModelKind::ToBe;
        for f in &mut b.fragments {
            f.problems.clear();
        }
        align(&a, &b, &PlaceCorrespondence::identity(&a, &b)).unwrap()
    }

    #[test]
    fn identity_plain() {
        let text = render_report(&identity_report(), ReportFormat::Plain);
        assert_eq!(text.matches("unchanged").count(), 5);
        assert!(text.contains("Gaps: 0\n"));
        assert!(text.lines().all(|l| !l.ends_with(' ')));
    }

    #[test]
    fn structured_round_trip() {
        let r = identity_report();
        let text = render_report(&r, ReportFormat::Structured);
        assert_eq!(parse_structured(&text).unwrap(), r);
    }

    #[test]
    fn format_names() {
        assert_eq!("plain".parse::<ReportFormat>(), Ok(ReportFormat::Plain));
        assert_eq!("xml".parse::<ReportFormat>(), Err(UnknownFormat("xml".into())));
    }

    #[test]
    fn component_rows() {
        let rows = vec![
            ComponentRow {
                fragment: Some("PF1".into()),
                components: ["Sales".to_string()].into(),
            },
            ComponentRow {
                fragment: None,
                components: BTreeSet::new(),
            },
        ];
        assert_eq!(render_components(&rows), "Fragment  Components\nPF1       Sales\nAll       -\n");
    }
}
