//! Plain-text renderings.

use ultraforest::classify::ClassReport;
use ultraforest::{AuditReport, NodeId, Rational, RootedTree, ScalingMap, Space};

pub fn values(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(Rational::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undecided",
    }
}

/// Indented outline: internal nodes show their label, leaves their point.
pub fn tree_text(tree: &RootedTree) -> String {
    fn walk(tree: &RootedTree, v: NodeId, depth: usize, out: &mut String) {
        let indent = "  ".repeat(depth);
        match tree.point(v) {
            Some(p) => out.push_str(&format!("{indent}{p}\n")),
            None => {
                out.push_str(&format!("{indent}{}  {}\n", tree.label(v), tree.describe(v)));
                for &c in tree.children(v) {
                    walk(tree, c, depth + 1, out);
                }
            }
        }
    }
    let mut out = String::new();
    walk(tree, tree.root(), 0, &mut out);
    out
}

pub fn class_report(report: &ClassReport) -> String {
    let width = report.entries.iter().map(|e| e.class.len()).max().unwrap_or(0);
    let mut out = String::new();
    for e in &report.entries {
        let cert = serde_json::to_string(&e.certificate).expect("serializable");
        out.push_str(&format!("{:width$}  {:9}  {cert}\n", e.class, verdict(e.verdict)));
    }
    out
}

pub fn audit(report: &AuditReport, spaces: usize) -> String {
    let mut out = format!(
        "{spaces} spaces, {} checks, {} discrepancies, {} skipped\n",
        report.checks_run,
        report.discrepancies.len(),
        report.skipped.len()
    );
    for d in &report.discrepancies {
        out.push_str(&format!("  {}: {}\n", d.check, d.detail));
    }
    out
}

pub fn scaling(map: &ScalingMap) -> String {
    let parts: Vec<String> = map.0.iter().map(|(a, b)| format!("{a}->{b}")).collect();
    parts.join(", ")
}

pub fn counterexample(space: &Space, subset: &[String]) -> String {
    let doc = serde_json::json!({"space": ultraforest::io::matrix_json_value(space), "subset": subset});
    format!("{}\n", serde_json::to_string(&doc).expect("serializable"))
}
