use std::fmt::Write;

use serde_json::{json, Value};

use asseq::ideal::Ideal;
use asseq::problem::Problem;
use asseq::sequence::ConditionOutcome;

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

/// `J:a_1^2 vs J:q` becomes `J:a_1² ≠ J:q`.
pub fn pretty_relation(rel: &str) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let rel = rel.replace(" vs ", " ≠ ");
    let mut out = String::with_capacity(rel.len());
    let mut chars = rel.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '^' && chars.peek().is_some_and(char::is_ascii_digit) {
            while let Some(d) = chars.peek().and_then(|d| d.to_digit(10)) {
                out.push(SUP[d as usize]);
                chars.next();
            }
        } else {
            out.push(c);
        }
    }
    out
}

pub fn verdict(o: &ConditionOutcome) -> String {
    match &o.witness {
        None => yes_no(o.holds).to_string(),
        Some(w) => format!("NO, witness at i={}: {}", w.index, pretty_relation(&w.relation)),
    }
}

pub fn ideal_json(i: &Ideal) -> Value {
    json!(i.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>())
}

pub fn outcome_json(o: &ConditionOutcome) -> Value {
    json!({
        "holds": o.holds,
        "witness": o.witness.as_ref().map(|w| json!({
            "index": w.index,
            "relation": w.relation,
            "lhs": w.lhs.to_string(),
            "rhs": w.rhs.to_string(),
        })),
    })
}

/// Field, module and sequence, plus a note for inhomogeneous input.
pub fn preamble(p: &Problem) -> String {
    let ctx = &p.context;
    let mut s = String::new();
    let _ = writeln!(s, "field: F_{}", p.ring.field().characteristic());
    let _ = writeln!(s, "ring: k[{}] ({})", p.ring.variables().join(", "), p.ring.order());
    let j = ctx.module().defining_ideal();
    if j.is_zero() {
        let _ = writeln!(s, "module: S");
    } else {
        let _ = writeln!(s, "module: S/{j}");
    }
    let seq: Vec<String> = ctx.elements().iter().map(|a| a.to_string()).collect();
    let _ = writeln!(s, "sequence: {}", seq.join(", "));
    if !ctx.is_homogeneous() {
        let _ = writeln!(s, "note: input is not homogeneous; polynomial-ring semantics only");
    }
    s
}

pub fn preamble_json(p: &Problem) -> Value {
    let ctx = &p.context;
    json!({
        "field": p.ring.field().characteristic(),
        "variables": p.ring.variables(),
        "order": p.ring.order().to_string(),
        "relations": ideal_json(ctx.module().defining_ideal()),
        "sequence": ctx.elements().iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "homogeneous": ctx.is_homogeneous(),
    })
}

/// Right-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, &w)| format!("{}{c}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(headers.to_vec());
    for r in rows {
        s += &line(r.iter().map(String::as_str).collect());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_prettifying() {
        assert_eq!(pretty_relation("J:a_1^2 vs J:q"), "J:a_1² ≠ J:q");
        assert_eq!(pretty_relation("q_1M:q^12 vs q_1M:a_2"), "q_1M:q¹² ≠ q_1M:a_2");
    }

    #[test]
    fn tables_align() {
        let t = table(&["n", "value"], &[vec!["0".into(), "12".into()], vec!["10".into(), "3".into()]]);
        assert_eq!(t, " n  value\n 0     12\n10      3\n");
    }
}
