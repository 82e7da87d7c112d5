//! Text formats for diagrams.
//!
//! A bare PD code is a comma-separated list of `X[a,b,c,d]` with positive labels.
//! A fixture file wraps it with headers, one per line:
//!
//! ```text
//! # comments and blank lines are ignored
//! name: L8a16
//! components: 3
//! freeloops: 1            crossingless components appended last
//! freeloops: 2 at 1,3     or placed at the given 1-based component positions
//! pd: X[1,5,2,4], X[...],
//!     X[...]              continuation lines start with X[
//! external: splitting 3 literature
//! external: unlinking 2-3
//! ```
//!
//! `name`, `components` and `pd` are required (`pd:` may be empty when every
//! component is a free loop). Any other line is rejected.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DiagramError, LinkDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    Unlinking,
    Splitting,
    WeakSplitting,
}

impl Quantity {
    pub const ALL: [Quantity; 3] = [Quantity::Unlinking, Quantity::Splitting, Quantity::WeakSplitting];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Unlinking => "unlinking",
            Quantity::Splitting => "splitting",
            Quantity::WeakSplitting => "weak-splitting",
        }
    }

    fn parse(s: &str) -> Option<Quantity> {
        Quantity::ALL.into_iter().find(|q| q.name() == s)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A value known from outside this program, carried for reporting only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct External {
    pub quantity: Quantity,
    pub lower: u32,
    pub upper: Option<u32>,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub diagram: LinkDiagram,
    pub externals: Vec<External>,
}

fn syntax(line: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Syntax { line, message: message.into() }
}

fn parse_crossings(text: &str, line: usize) -> Result<Vec<[u32; 4]>, DiagramError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body =
            rest.strip_prefix("X[").ok_or_else(|| syntax(line, format!("expected 'X[' at '{}'", truncate(rest))))?;
        let close = body.find(']').ok_or_else(|| syntax(line, "missing ']'"))?;
        let labels: Vec<u32> = body[..close]
            .split(',')
            .map(|t| {
                let t = t.trim();
                match t.parse::<u32>() {
                    Ok(0) | Err(_) => Err(syntax(line, format!("bad edge label '{t}'"))),
                    Ok(v) => Ok(v),
                }
            })
            .collect::<Result<_, _>>()?;
        let labels: [u32; 4] = labels
            .try_into()
            .map_err(|v: Vec<u32>| syntax(line, format!("crossing has {} labels, expected 4", v.len())))?;
        out.push(labels);
        rest = body[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                break;
            }
        } else if !rest.is_empty() {
            return Err(syntax(line, format!("expected ',' at '{}'", truncate(rest))));
        }
    }
    Ok(out)
}

fn truncate(s: &str) -> String {
    s.chars().take(12).collect()
}

/// Parses a bare PD code (no free loops).
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    LinkDiagram::from_pd(parse_crossings(text, 1)?, &[])
}

fn parse_free_loops(value: &str, line: usize) -> Result<(usize, Option<Vec<usize>>), DiagramError> {
    let (count, positions) = match value.split_once(" at ") {
        Some((c, p)) => (c, Some(p)),
        None => (value, None),
    };
    let count: usize = count.trim().parse().map_err(|_| syntax(line, "bad free loop count"))?;
    let positions = positions
        .map(|p| {
            p.split(',')
                .map(|x| match x.trim().parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(syntax(line, format!("bad free loop position '{}'", x.trim()))),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    if positions.as_ref().is_some_and(|p| p.len() != count) {
        return Err(syntax(line, "free loop positions do not match the count"));
    }
    Ok((count, positions))
}

fn parse_external(value: &str, line: usize) -> Result<External, DiagramError> {
    let mut parts = value.split_whitespace();
    let quantity = parts
        .next()
        .and_then(Quantity::parse)
        .ok_or_else(|| syntax(line, "external: expected unlinking, splitting or weak-splitting"))?;
    let range = parts.next().ok_or_else(|| syntax(line, "external: missing value"))?;
    let bad = || syntax(line, format!("external: bad value '{range}'"));
    let (lower, upper) = match range.split_once('-') {
        Some((a, "")) => (a.parse().map_err(|_| bad())?, None),
        Some((a, b)) => {
            let (a, b): (u32, u32) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            if b < a {
                return Err(bad());
            }
            (a, Some(b))
        }
        None => {
            let v = range.parse().map_err(|_| bad())?;
            (v, Some(v))
        }
    };
    let source = parts.collect::<Vec<_>>().join(" ");
    Ok(External { quantity, lower, upper, source })
}

/// Parses a fixture file.
pub fn parse_fixture(text: &str) -> Result<Fixture, DiagramError> {
    let mut name = None;
    let mut components = None;
    let mut free_loops = (0usize, None::<Vec<usize>>);
    let mut pd: Option<(String, usize)> = None;
    let mut externals = Vec::new();
    let mut in_pd = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            in_pd = false;
            continue;
        }
        if in_pd && trimmed.starts_with("X[") {
            let (body, _) = pd.as_mut().expect("pd header seen");
            body.push(' ');
            body.push_str(trimmed);
            continue;
        }
        in_pd = false;
        let (key, value) =
            trimmed.split_once(':').ok_or_else(|| syntax(line, format!("unrecognised line '{trimmed}'")))?;
        let value = value.trim();
        match key.trim() {
            "name" if name.is_none() => name = Some(value.to_string()),
            "components" if components.is_none() => {
                components = Some(value.parse::<usize>().map_err(|_| syntax(line, "bad component count"))?)
            }
            "freeloops" => free_loops = parse_free_loops(value, line)?,
            "pd" if pd.is_none() => {
                pd = Some((value.to_string(), line));
                in_pd = true;
            }
            "external" => externals.push(parse_external(value, line)?),
            other => return Err(syntax(line, format!("unexpected or repeated header '{other}'"))),
        }
    }
    let name = name.ok_or(DiagramError::MissingHeader("name"))?;
    let declared = components.ok_or(DiagramError::MissingHeader("components"))?;
    let (pd, pd_line) = pd.ok_or(DiagramError::MissingHeader("pd"))?;
    let crossings = parse_crossings(&pd, pd_line)?;
    let (count, positions) = free_loops;
    let positions = positions.unwrap_or_else(|| (declared.saturating_sub(count)..declared).collect());
    let diagram = LinkDiagram::from_pd(crossings, &positions)?;
    if diagram.component_count() != declared {
        return Err(DiagramError::ComponentCount { declared, found: diagram.component_count() });
    }
    Ok(Fixture { name, diagram, externals })
}

impl Fixture {
    pub fn new(name: impl Into<String>, diagram: LinkDiagram) -> Self {
        Fixture { name: name.into(), diagram, externals: Vec::new() }
    }

    pub fn to_text(&self) -> String {
        let d = &self.diagram;
        let m = d.component_count();
        let mut out = format!("name: {}\ncomponents: {}\n", self.name, m);
        let free = d.free_loop_positions();
        if !free.is_empty() {
            if free.iter().copied().eq(m - free.len()..m) {
                out += &format!("freeloops: {}\n", free.len());
            } else {
                let pos: Vec<String> = free.iter().map(|p| (p + 1).to_string()).collect();
                out += &format!("freeloops: {} at {}\n", free.len(), pos.join(","));
            }
        }
        out += &format!("pd: {}\n", d.to_pd_text());
        for e in &self.externals {
            let range = match e.upper {
                Some(u) if u == e.lower => u.to_string(),
                Some(u) => format!("{}-{}", e.lower, u),
                None => format!("{}-", e.lower),
            };
            out += format!("external: {} {} {}", e.quantity, range, e.source).trim_end();
            out.push('\n');
        }
        out
    }

    /// Externally known interval for `q`, if recorded.
    pub fn external(&self, q: Quantity) -> Option<&External> {
        self.externals.iter().find(|e| e.quantity == q)
    }
}
