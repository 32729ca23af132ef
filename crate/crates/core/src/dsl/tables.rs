//! Line-oriented files: problem registries, component maps, place
//! correspondences and refinement trees. A trailing `;` after a statement is
//! optional.

use std::collections::HashSet;
use std::fmt::Write;

use super::lexer::Token;
use super::{quote, ParseError, Parser};
use crate::alignment::{ComponentMap, PlaceCorrespondence, Problem};
use crate::net::RefinementTree;

/// `problem <id> <category> <description>` per line.
pub fn parse_registry(text: &str) -> Result<Vec<Problem>, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out: Vec<Problem> = Vec::new();
    let mut seen = HashSet::new();
    while !p.at_eof() {
        p.expect_keyword("problem")?;
        let span = p.span();
        let id = p.expect_id()?;
        if !seen.insert(id.clone()) {
            return Err(ParseError::new(span, "unique problem id", format!("duplicate id {:?}", id.as_str())));
        }
        let category = p.expect_string()?;
        let description = p.expect_string()?;
        p.eat(&Token::Semi);
        out.push(Problem { id, category, description });
    }
    Ok(out)
}

pub fn serialize_registry(problems: &[Problem]) -> String {
    let mut s = String::new();
    for pr in problems {
        let _ = writeln!(s, "problem {} {} {}", pr.id, quote(&pr.category), quote(&pr.description));
    }
    s
}

/// `map <fragment> <component>, …` and `map-all <component>, …` lines.
/// Repeated lines for one fragment accumulate.
pub fn parse_components(text: &str) -> Result<ComponentMap, ParseError> {
    let mut p = Parser::new(text)?;
    let mut cmap = ComponentMap::default();
    while !p.at_eof() {
        match p.expect_one_of(&["map", "map-all"])?.as_str() {
            "map" => {
                let id = p.expect_id()?;
                let names = p.string_list()?;
                cmap.entries.entry(id).or_default().extend(names);
            }
            _ => cmap.global.extend(p.string_list()?),
        }
        p.eat(&Token::Semi);
    }
    Ok(cmap)
}

pub fn serialize_components(cmap: &ComponentMap) -> String {
    let list = |names: &std::collections::BTreeSet<String>| names.iter().map(|n| quote(n)).collect::<Vec<_>>().join(", ");
    let mut s = String::new();
    for (id, names) in &cmap.entries {
        if !names.is_empty() {
            let _ = writeln!(s, "map {} {}", id, list(names));
        }
    }
    if !cmap.global.is_empty() {
        let _ = writeln!(s, "map-all {}", list(&cmap.global));
    }
    s
}

/// `corr <from-place> <to-place>` per line; a place may appear once on the
/// left.
pub fn parse_correspondence(text: &str) -> Result<PlaceCorrespondence, ParseError> {
    let mut p = Parser::new(text)?;
    let mut corr = PlaceCorrespondence::new();
    while !p.at_eof() {
        p.expect_keyword("corr")?;
        let span = p.span();
        let from = p.expect_id()?;
        if corr.pairs.contains_key(&from) {
            return Err(ParseError::new(span, "each place mapped once", format!("second mapping for {:?}", from.as_str())));
        }
        let to = p.expect_id()?;
        p.eat(&Token::Semi);
        corr.insert(from, to);
    }
    Ok(corr)
}

pub fn serialize_correspondence(corr: &PlaceCorrespondence) -> String {
    let mut s = String::new();
    for (a, b) in &corr.pairs {
        let _ = writeln!(s, "corr {a} {b}");
    }
    s
}

/// `refine <parent> { <child>; … }` blocks.
pub fn parse_refinement(text: &str) -> Result<RefinementTree, ParseError> {
    let mut p = Parser::new(text)?;
    let mut tree = RefinementTree::new();
    while !p.at_eof() {
        p.expect_keyword("refine")?;
        let parent = p.expect_id()?;
        p.expect(&Token::LBrace)?;
        let mut kids = Vec::new();
        while !p.eat(&Token::RBrace) {
            kids.push(p.expect_id()?);
            if !matches!(p.peek(), Token::RBrace) {
                p.expect(&Token::Semi)?;
            }
        }
        p.eat(&Token::Semi);
        tree.refine(parent, kids);
    }
    Ok(tree)
}

pub fn serialize_refinement(tree: &RefinementTree) -> String {
    let mut s = String::new();
    for (parent, kids) in &tree.children {
        let _ = write!(s, "refine {parent} {{");
        for k in kids {
            let _ = write!(s, " {k};");
        }
        s.push_str(" }\n");
    }
    s
}
