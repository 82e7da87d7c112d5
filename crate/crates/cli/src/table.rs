//! Aligned text table over obstruction records.

use crate::record::{BoundRecord, ObstructRecord};

fn cell(b: Option<&BoundRecord>) -> String {
    let Some(b) = b else { return "-".into() };
    let upper = b.upper.map_or("?".to_string(), |u| u.to_string());
    let mark = match b.status {
        linkbounds::search::Status::Exact => "",
        linkbounds::search::Status::Inconclusive => " inconclusive",
    };
    format!("[{},{}]{mark}", b.lower, upper)
}

fn external(r: &ObstructRecord) -> String {
    let parts: Vec<String> = r
        .bounds
        .iter()
        .filter_map(|(q, b)| {
            let e = b.external.as_ref()?;
            let v = match e.upper {
                Some(u) if u == e.lower => u.to_string(),
                Some(u) => format!("{}-{}", e.lower, u),
                None => format!("{}+", e.lower),
            };
            Some(format!("{q}={v}"))
        })
        .collect();
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(" ")
    }
}

pub fn render(rows: &[ObstructRecord]) -> String {
    let header = ["link", "m", "beta", "unlinking", "splitting", "weak-splitting", "external", "delta"];
    let body: Vec<[String; 8]> = rows
        .iter()
        .map(|r| {
            [
                r.name.clone(),
                r.components.to_string(),
                r.beta.to_string(),
                cell(r.bounds.get("unlinking")),
                cell(r.bounds.get("splitting")),
                cell(r.bounds.get("weak-splitting")),
                external(r),
                r.delta.clone(),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &body {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let last = cells.len() - 1;
        for (i, c) in cells.iter().enumerate() {
            if i == last {
                out.push_str(c);
            } else {
                out.push_str(&format!("{c:<w$}  ", w = widths[i]));
            }
        }
        out.push('\n');
    };
    line(header.to_vec());
    for row in &body {
        line(row.iter().map(String::as_str).collect());
    }
    out
}
