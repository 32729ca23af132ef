//! `.goals` files.
//!
//! ```text
//! goals {
//!   stakeholder S1 "management" "manager";
//!   node N1 need "need for information" strategic;
//!   node G2 goal "automate payroll" strategic enterprise;
//!   node E1 goal "SAP payroll" erp;
//!   edge G2 derives N1;
//!   edge G2 decomposes-and G1;
//!   edge E1 supports G2;
//!   edge O1 determinedby S1;
//!   edge G1 realisedby "Electro Tech To-Be";
//!   edge E1 realisedby "Electro Tech To-Be" PF1;
//! }
//! ```

use std::fmt::Write;

use super::lexer::Token;
use super::{quote, DslError, ParseError, Parser};
use crate::goals::{
    DecompositionMode, EdgeKind, GoalEdge, GoalGraph, GoalLevel, GoalNode, NodeKind, Owner, Realisation, Stakeholder,
};

pub fn parse_goals(text: &str) -> Result<GoalGraph, DslError> {
    let g = parse_goals_unchecked(text)?;
    match g.validate().into_iter().next() {
        Some(v) => Err(DslError::Validation(v)),
        None => Ok(g),
    }
}

pub fn parse_goals_unchecked(text: &str) -> Result<GoalGraph, ParseError> {
    let mut p = Parser::new(text)?;
    p.expect_keyword("goals")?;
    p.expect(&Token::LBrace)?;
    let mut g = GoalGraph::default();
    while !p.eat(&Token::RBrace) {
        match p.expect_one_of(&["stakeholder", "node", "edge"])?.as_str() {
            "stakeholder" => {
                let id = p.expect_id()?;
                let name = p.expect_string()?;
                let category = if p.at_string() { p.expect_string()? } else { String::new() };
                g.stakeholders.push(Stakeholder { id, name, category });
            }
            "node" => g.nodes.push(node(&mut p)?),
            _ => g.edges.push(edge(&mut p)?),
        }
        p.expect(&Token::Semi)?;
    }
    p.expect_eof()?;
    Ok(g)
}

fn node(p: &mut Parser) -> Result<GoalNode, ParseError> {
    let id = p.expect_id()?;
    let kind = match p.expect_one_of(&["need", "goal", "objective", "requirement"])?.as_str() {
        "need" => NodeKind::Need,
        "goal" => NodeKind::Goal,
        "objective" => NodeKind::Objective,
        _ => NodeKind::Requirement,
    };
    let label = p.expect_string()?;
    let mut n = GoalNode::new(id, kind, label);
    let mut level_set = false;
    let mut owner_set = false;
    while !matches!(p.peek(), Token::Semi) {
        let span = p.span();
        let word = p
            .expect_one_of(&["strategic", "operational", "enterprise", "erp", "change"])
            .map_err(|_| p.error("'strategic', 'operational', 'enterprise', 'erp', 'change' or ';'"))?;
        let slot = match word.as_str() {
            "strategic" | "operational" => &mut level_set,
            "enterprise" | "erp" => &mut owner_set,
            _ => {
                if n.change {
                    return Err(ParseError::new(span, "at most one 'change'", "a second 'change'"));
                }
                n.change = true;
                continue;
            }
        };
        if *slot {
            return Err(ParseError::new(span, "one value per attribute", format!("a second value {word:?}")));
        }
        *slot = true;
        match word.as_str() {
            "strategic" => n.level = GoalLevel::Strategic,
            "operational" => n.level = GoalLevel::Operational,
            "enterprise" => n.owner = Owner::Enterprise,
            _ => n.owner = Owner::Erp,
        }
    }
    Ok(n)
}

fn edge(p: &mut Parser) -> Result<GoalEdge, ParseError> {
    let from = p.expect_id()?;
    let kind = match p
        .expect_one_of(&["derives", "decomposes-and", "decomposes-or", "supports", "determinedby", "realisedby"])?
        .as_str()
    {
        "derives" => EdgeKind::DerivesFrom { to: p.expect_id()? },
        "decomposes-and" => EdgeKind::Decomposes {
            to: p.expect_id()?,
            mode: DecompositionMode::And,
        },
        "decomposes-or" => EdgeKind::Decomposes {
            to: p.expect_id()?,
            mode: DecompositionMode::Or,
        },
        "supports" => EdgeKind::Supports { to: p.expect_id()? },
        "determinedby" => EdgeKind::DeterminedBy {
            stakeholder: p.expect_id()?,
        },
        _ => {
            let model = p.expect_string()?;
            let fragment = if matches!(p.peek(), Token::Semi) { None } else { Some(p.expect_id()?) };
            EdgeKind::RealisedBy {
                target: Realisation { model, fragment },
            }
        }
    };
    Ok(GoalEdge { from, kind })
}

pub fn serialize_goals(g: &GoalGraph) -> String {
    let mut s = String::from("goals {\n");
    for st in &g.stakeholders {
        let _ = write!(s, "  stakeholder {} {}", st.id, quote(&st.name));
        if !st.category.is_empty() {
            let _ = write!(s, " {}", quote(&st.category));
        }
        s.push_str(";\n");
    }
    for n in &g.nodes {
        let _ = write!(s, "  node {} {} {}", n.id, n.kind, quote(&n.label));
        match n.level {
            GoalLevel::Strategic => s.push_str(" strategic"),
            GoalLevel::Operational => s.push_str(" operational"),
            GoalLevel::Unspecified => {}
        }
        if n.owner == Owner::Erp {
            s.push_str(" erp");
        }
        if n.change {
            s.push_str(" change");
        }
        s.push_str(";\n");
    }
    for e in &g.edges {
        let _ = match &e.kind {
            EdgeKind::DerivesFrom { to } => writeln!(s, "  edge {} derives {};", e.from, to),
            EdgeKind::Decomposes { to, mode } => {
                let mode = match mode {
                    DecompositionMode::And => "and",
                    DecompositionMode::Or => "or",
                };
                writeln!(s, "  edge {} decomposes-{} {};", e.from, mode, to)
            }
            EdgeKind::Supports { to } => writeln!(s, "  edge {} supports {};", e.from, to),
            EdgeKind::DeterminedBy { stakeholder } => writeln!(s, "  edge {} determinedby {};", e.from, stakeholder),
            EdgeKind::RealisedBy { target } => match &target.fragment {
                Some(f) => writeln!(s, "  edge {} realisedby {} {};", e.from, quote(&target.model), f),
                None => writeln!(s, "  edge {} realisedby {};", e.from, quote(&target.model)),
            },
        };
    }
    s.push_str("}\n");
    s
}
