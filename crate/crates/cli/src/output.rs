use serde_json::{json, Map, Value};

use refsev_core::{EvalPoint, LaurentY};

use crate::Eval;

pub fn y1(p: &LaurentY) -> String {
    p.eval_at_one().to_string()
}

pub fn ym1(p: &LaurentY) -> String {
    p.eval(EvalPoint::MinusOne).to_string()
}

/// `{"poly": …, "y1": …, "ym1": …}`, restricted to one field when `eval` is set.
pub fn value_json(p: &LaurentY, eval: Option<Eval>) -> Map<String, Value> {
    let mut m = Map::new();
    if matches!(eval, None | Some(Eval::Poly)) {
        m.insert(
            "poly".into(),
            serde_json::to_value(p).expect("serializable"),
        );
    }
    if matches!(eval, None | Some(Eval::Y1)) {
        m.insert("y1".into(), json!(y1(p)));
    }
    if matches!(eval, None | Some(Eval::Ym1)) {
        m.insert("ym1".into(), json!(ym1(p)));
    }
    m
}

pub fn value_text(p: &LaurentY, eval: Option<Eval>) -> String {
    match eval {
        Some(Eval::Poly) => p.to_string(),
        Some(Eval::Y1) => y1(p),
        Some(Eval::Ym1) => ym1(p),
        None => format!("N(y) = {p}\nN(1) = {}\nN(-1) = {}", y1(p), ym1(p)),
    }
}

/// Left-aligned columns separated by two spaces.
pub fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(header.to_vec())];
    for r in rows {
        out.push(line(r.iter().map(String::as_str).collect()));
    }
    out.join("\n")
}
