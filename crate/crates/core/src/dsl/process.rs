//! `.proc` files.
//!
//! ```text
//! process "Electro Tech As-Is" kind asis {
//!   place I0 "start" start;
//!   place I1 "support material";
//!   place exit "exit" exit;
//!   marking { I0:1 };
//!   fragment PF1 : (I0) -> (I1) strategy "manual strategy" problems a;
//!   fragment PF4 : (I3) -> exit strategy "manual order processing strategy";
//! }
//! ```
//!
//! A bare `exit` target names the place with id `exit`. Without a `marking`
//! block the start place holds one token. `deficient` and `sound` override
//! the naming heuristic for strategy deficiency.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::lexer::Token;
use super::{quote, DslError, ParseError, Parser};
use crate::id::Id;
use crate::net::{Fragment, Marking, ModelKind, Place, PlaceRole, ProcessModel, StrategyLabel, EXIT_ID};

/// Parses and validates a process model; fails with the first violation.
pub fn parse_process(text: &str) -> Result<ProcessModel, DslError> {
    let model = parse_process_unchecked(text)?;
    match model.validate().into_iter().next() {
        Some(v) => Err(DslError::Validation(v)),
        None => Ok(model),
    }
}

/// Parses without running validation, so callers can report every violation.
pub fn parse_process_unchecked(text: &str) -> Result<ProcessModel, ParseError> {
    let mut p = Parser::new(text)?;
    p.expect_keyword("process")?;
    let name = p.expect_string()?;
    p.expect_keyword("kind")?;
    let kind = match p.expect_one_of(&["asis", "tobe"])?.as_str() {
        "asis" => ModelKind::AsIs,
        _ => ModelKind::ToBe,
    };
    let mut model = ProcessModel::new(name, kind);
    p.expect(&Token::LBrace)?;

    let mut marking: Option<Marking> = None;
    loop {
        if p.eat(&Token::RBrace) {
            break;
        }
        let span = p.span();
        match p.expect_one_of(&["place", "marking", "fragment"])?.as_str() {
            "place" => model.places.push(place(&mut p)?),
            "marking" => {
                if marking.is_some() {
                    return Err(ParseError::new(span, "at most one marking block", "a second marking block"));
                }
                marking = Some(marking_block(&mut p)?);
            }
            _ => model.fragments.push(fragment(&mut p)?),
        }
    }
    p.expect_eof()?;

    model.initial_marking = match marking {
        Some(m) => m,
        None => model
            .start_place()
            .map(|s| [(s.id.clone(), 1)].into_iter().collect())
            .unwrap_or_default(),
    };
    Ok(model)
}

fn place(p: &mut Parser) -> Result<Place, ParseError> {
    let id = p.expect_id()?;
    let label = p.expect_string()?;
    let role = if p.eat_keyword("start") {
        PlaceRole::Start
    } else if p.eat_keyword("exit") {
        PlaceRole::Exit
    } else {
        p.eat_keyword("intermediate");
        PlaceRole::Intermediate
    };
    p.expect(&Token::Semi)?;
    Ok(Place { id, label, role })
}

fn marking_block(p: &mut Parser) -> Result<Marking, ParseError> {
    p.expect(&Token::LBrace)?;
    let mut m = Marking::new();
    while !p.eat(&Token::RBrace) {
        let id = p.expect_id()?;
        p.expect(&Token::Colon)?;
        let span = p.span();
        let n = p.expect_int()?;
        let n = u32::try_from(n).map_err(|_| ParseError::new(span, "token count below 2^32", n.to_string()))?;
        let total = m.get(&id).checked_add(n).ok_or_else(|| ParseError::new(p.span(), "token count below 2^32", "overflowing total"))?;
        m.set(id, total);
        p.eat(&Token::Comma);
    }
    p.eat(&Token::Semi);
    Ok(m)
}

fn place_set(p: &mut Parser, allow_exit: bool) -> Result<BTreeSet<Id>, ParseError> {
    if allow_exit && p.eat_keyword(EXIT_ID) {
        return Ok([Id::from(EXIT_ID)].into());
    }
    if !matches!(p.peek(), Token::LParen) {
        return Err(p.error(if allow_exit { "'(' or 'exit'" } else { "'('" }));
    }
    p.expect(&Token::LParen)?;
    let ids = p.id_list()?;
    p.expect(&Token::RParen)?;
    Ok(ids.into_iter().collect())
}

fn fragment(p: &mut Parser) -> Result<Fragment, ParseError> {
    let id = p.expect_id()?;
    p.expect(&Token::Colon)?;
    let sources = place_set(p, false)?;
    p.expect(&Token::Arrow)?;
    let targets = place_set(p, true)?;
    p.expect_keyword("strategy")?;
    let text = p.expect_string()?;

    let mut deficient: Option<bool> = None;
    let mut problems: Option<BTreeSet<Id>> = None;
    let mut resolves: Option<BTreeSet<Id>> = None;
    while !p.eat(&Token::Semi) {
        let span = p.span();
        let clause = p
            .expect_one_of(&["deficient", "sound", "problems", "resolves"])
            .map_err(|_| p.error("'deficient', 'sound', 'problems', 'resolves' or ';'"))?;
        let twice = |what: &str| ParseError::new(span.clone(), format!("at most one {what} clause"), format!("a second '{clause}'"));
        match clause.as_str() {
            "deficient" | "sound" => {
                if deficient.is_some() {
                    return Err(twice("deficiency"));
                }
                deficient = Some(clause == "deficient");
            }
            "problems" => {
                if problems.is_some() {
                    return Err(twice("problems"));
                }
                problems = Some(p.id_list()?.into_iter().collect());
            }
            _ => {
                if resolves.is_some() {
                    return Err(twice("resolves"));
                }
                resolves = Some(p.id_list()?.into_iter().collect());
            }
        }
    }

    let strategy = match deficient {
        Some(d) => StrategyLabel::with_deficiency(text, d),
        None => StrategyLabel::new(text),
    };
    Ok(Fragment {
        id,
        sources,
        targets,
        strategy,
        problems: problems.unwrap_or_default(),
        resolves: resolves.unwrap_or_default(),
    })
}

fn join(ids: &BTreeSet<Id>) -> String {
    ids.iter().map(Id::as_str).collect::<Vec<_>>().join(", ")
}

/// Canonical text for a model; `parse_process_unchecked` reads it back to
/// an equal model.
pub fn serialize_process(m: &ProcessModel) -> String {
    let mut s = String::new();
    let kind = match m.kind {
        ModelKind::AsIs => "asis",
        ModelKind::ToBe => "tobe",
    };
    let _ = writeln!(s, "process {} kind {} {{", quote(&m.name), kind);
    for pl in &m.places {
        let role = match pl.role {
            PlaceRole::Start => " start",
            PlaceRole::Exit => " exit",
            PlaceRole::Intermediate => "",
        };
        let _ = writeln!(s, "  place {} {}{};", pl.id, quote(&pl.label), role);
    }
    let entries: Vec<String> = m.initial_marking.iter().map(|(p, n)| format!("{p}:{n}")).collect();
    if entries.is_empty() {
        s.push_str("  marking { };\n");
    } else {
        let _ = writeln!(s, "  marking {{ {} }};", entries.join(", "));
    }
    for f in &m.fragments {
        let targets = if f.targets.len() == 1 && f.targets.contains(&Id::from(EXIT_ID)) {
            EXIT_ID.to_string()
        } else {
            format!("({})", join(&f.targets))
        };
        let _ = write!(
            s,
            "  fragment {} : ({}) -> {} strategy {}",
            f.id,
            join(&f.sources),
            targets,
            quote(&f.strategy.text)
        );
        if f.strategy.deficient != StrategyLabel::looks_deficient(&f.strategy.text) {
            s.push_str(if f.strategy.deficient { " deficient" } else { " sound" });
        }
        if !f.problems.is_empty() {
            let _ = write!(s, " problems {}", join(&f.problems));
        }
        if !f.resolves.is_empty() {
            let _ = write!(s, " resolves {}", join(&f.resolves));
        }
        s.push_str(";\n");
    }
    s.push_str("}\n");
    s
}
