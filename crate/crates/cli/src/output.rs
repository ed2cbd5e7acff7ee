use serde::Serialize;
use serde_json::json;

use crate::repro::ReproReport;

/// Version of the JSON envelope every command prints with `--format json`.
pub const ENVELOPE_SCHEMA: &str = "hypoham.output/1";

pub fn envelope<T: Serialize>(command: &str, result: &T) -> String {
    let v = json!({
        "schema": ENVELOPE_SCHEMA,
        "command": command,
        "result": result,
    });
    serde_json::to_string_pretty(&v).expect("serializable result")
}

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(headers.to_vec())];
    out.push(line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for r in rows {
        out.push(line(r.iter().map(String::as_str).collect()));
    }
    out.join("\n") + "\n"
}

pub fn repro_table(r: &ReproReport) -> String {
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            vec![
                row.criterion.map_or("-".into(), |c| c.to_string()),
                row.id.clone(),
                row.claimed.clone(),
                row.computed.clone(),
                row.status.to_string(),
            ]
        })
        .collect();
    let mut out = table(&["crit", "claim", "claimed", "computed", "status"], &rows);
    if let Some(l) = &r.ledger {
        let rows: Vec<Vec<String>> = l
            .bounds
            .iter()
            .map(|(s, b)| vec![s.to_string(), b.to_string()])
            .collect();
        out.push('\n');
        out.push_str(&table(&["bound", "value"], &rows));
    }
    out
}
