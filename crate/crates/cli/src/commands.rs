use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde_json::{json, Value};
use ultraforest::io::{self, DocKind, Document};
use ultraforest::{
    are_isometric, are_weakly_similar, audit_equivalences, build_representing_tree, canonical_code, classify,
    enumerate_spaces, hereditary, random_space, space_from_unrooted, tree_to_space, unrooted_from_representing,
    AuditReport, ClassId, CodeMode, Space,
};

use crate::render;
use crate::{Cli, Command, Format, HereditaryCommand, Kind, Target};

/// Runs one command; `Ok(false)` is a negative verdict.
pub fn run(cli: &Cli) -> Result<bool> {
    let mut out = String::new();
    let verdict = dispatch(cli, &mut out)?;
    match &cli.out {
        Some(path) => fs::write(path, &out).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{out}"),
    }
    Ok(verdict)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path, kind: Option<Kind>) -> Result<Document> {
    let text = read(path)?;
    let doc = match kind {
        None => io::read_document(&text),
        Some(k) => io::read_as(&text, doc_kind(k)),
    };
    doc.with_context(|| path.display().to_string())
}

fn doc_kind(k: Kind) -> DocKind {
    match k {
        Kind::Matrix => DocKind::Matrix,
        Kind::Tree => DocKind::Tree,
        Kind::Unrooted => DocKind::Unrooted,
    }
}

/// Any document, viewed as the space it describes.
fn load_space(path: &Path) -> Result<Space> {
    Ok(match load(path, None)? {
        Document::Matrix(s) => s,
        Document::Tree(t) => tree_to_space(&t),
        Document::Unrooted(u) => space_from_unrooted(&u).with_context(|| path.display().to_string())?,
    })
}

fn json_out(out: &mut String, v: &Value) {
    out.push_str(&serde_json::to_string_pretty(v).expect("serializable"));
    out.push('\n');
}

fn no_dot(cli: &Cli) -> Result<()> {
    if cli.format == Format::Dot {
        bail!("--format dot is only available for `tree` and `convert`");
    }
    Ok(())
}

fn parse_class(s: &str) -> Result<ClassId> {
    Ok(s.parse::<ClassId>()?)
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<bool> {
    if !matches!(cli.command, Command::Tree { .. } | Command::Convert { .. }) {
        no_dot(cli)?;
    }
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Validate { file } => {
            let s = match load(file, Some(Kind::Matrix))? {
                Document::Matrix(s) => s,
                _ => unreachable!("read_as checks the kind"),
            };
            if json {
                json_out(
                    out,
                    &json!({"valid": true, "points": s.len(), "spectrum": s.spectrum().0}),
                );
            } else {
                out.push_str(&format!(
                    "valid ultrametric on {} points, spectrum {}\n",
                    s.len(),
                    render::values(&s.spectrum().0)
                ));
            }
            Ok(true)
        }
        Command::Tree { file } => {
            let tree = build_representing_tree(&load_space(file)?);
            match cli.format {
                Format::Text => out.push_str(&render::tree_text(&tree)),
                Format::Json => {
                    out.push_str(&io::write_tree_json(&tree));
                    out.push('\n');
                }
                Format::Dot => out.push_str(&ultraforest::dot::tree_to_dot(&tree)),
            }
            Ok(true)
        }
        Command::Classify { file, class } => {
            let space = load_space(file)?;
            let report = classify(&space)?;
            match class {
                None => {
                    if json {
                        json_out(out, &serde_json::to_value(&report)?);
                    } else {
                        out.push_str(&render::class_report(&report));
                    }
                    Ok(true)
                }
                Some(name) => {
                    let id = parse_class(name)?;
                    let key = id.to_string();
                    let entry = report.entries.iter().find(|e| e.class == key);
                    let (holds, certificate) = match entry {
                        Some(e) => (e.verdict, serde_json::to_value(&e.certificate)?),
                        None => (Some(id.contains(&space)?), Value::Null),
                    };
                    if json {
                        json_out(
                            out,
                            &json!({"class": key, "verdict": holds, "certificate": certificate}),
                        );
                    } else {
                        out.push_str(&format!("{key}: {} {certificate}\n", render::verdict(holds)));
                    }
                    match holds {
                        Some(h) => Ok(h),
                        None => bail!("membership in {key} is too large to decide"),
                    }
                }
            }
        }
        Command::Audit {
            file,
            exhaustive,
            max_n,
        } => {
            let (report, spaces) = match (file, exhaustive) {
                (Some(f), false) => (audit_equivalences(&load_space(f)?)?, 1),
                (None, true) => exhaustive_audit(*max_n)?,
                _ => bail!("give either a file or --exhaustive"),
            };
            if json {
                json_out(out, &json!({"spaces": spaces, "report": report}));
            } else {
                out.push_str(&render::audit(&report, spaces));
            }
            Ok(report.is_clean())
        }
        Command::Isometric { first, second } => {
            let (a, b) = (load_space(first)?, load_space(second)?);
            let iso = are_isometric(&a, &b);
            let codes = [a, b].map(|s| canonical_code(&build_representing_tree(&s), CodeMode::Labeled).0);
            if json {
                json_out(out, &json!({"isometric": iso, "codes": codes}));
            } else if iso {
                out.push_str("isometric\n");
            } else {
                out.push_str(&format!("not isometric\n  {}\n  {}\n", codes[0], codes[1]));
            }
            Ok(iso)
        }
        Command::Weaksim { first, second } => {
            let (a, b) = (load_space(first)?, load_space(second)?);
            let map = are_weakly_similar(&a, &b);
            if json {
                json_out(out, &json!({"weakly_similar": map.is_some(), "scaling": map}));
            } else {
                match &map {
                    Some(m) => out.push_str(&format!("weakly similar, scaling {}\n", render::scaling(m))),
                    None => {
                        let codes =
                            [a, b].map(|s| canonical_code(&build_representing_tree(&s), CodeMode::RankLabeled).0);
                        out.push_str(&format!("not weakly similar\n  {}\n  {}\n", codes[0], codes[1]));
                    }
                }
            }
            Ok(map.is_some())
        }
        Command::Convert { from, to, file } => {
            convert(load(file, *from)?, *to, out).with_context(|| file.display().to_string())?;
            Ok(true)
        }
        Command::Hereditary { action } => run_hereditary(action, json, out),
        Command::Generate {
            n,
            seed,
            count,
            exhaustive,
        } => {
            if *n == 0 {
                bail!("--n must be positive");
            }
            if *exhaustive {
                for s in enumerate_spaces(*n) {
                    out.push_str(&io::matrix_json_line(&s));
                    out.push('\n');
                }
            } else {
                for i in 0..*count as u64 {
                    out.push_str(&io::matrix_json_line(&random_space(*n, seed + i)));
                    out.push('\n');
                }
            }
            Ok(true)
        }
        Command::Fingerprint { files, weak } => {
            let mode = if *weak {
                CodeMode::RankLabeled
            } else {
                CodeMode::Labeled
            };
            let mut rows = Vec::with_capacity(files.len());
            for f in files {
                let code = canonical_code(&build_representing_tree(&load_space(f)?), mode);
                rows.push((f.display().to_string(), code.0));
            }
            if json {
                let v: Vec<Value> = rows.iter().map(|(f, c)| json!({"file": f, "code": c})).collect();
                json_out(out, &Value::Array(v));
            } else {
                for (f, c) in rows {
                    out.push_str(&format!("{c}\t{f}\n"));
                }
            }
            Ok(true)
        }
    }
}

fn exhaustive_audit(max_n: usize) -> Result<(AuditReport, usize)> {
    let mut total = AuditReport::default();
    let mut spaces = 0;
    for n in 2..=max_n {
        let batch = enumerate_spaces(n);
        let reports: Vec<AuditReport> = batch.par_iter().map(audit_equivalences).collect::<Result<_, _>>()?;
        spaces += batch.len();
        for r in reports {
            total.merge(r);
        }
    }
    Ok((total, spaces))
}

fn convert(doc: Document, to: Target, out: &mut String) -> Result<()> {
    let space = || -> Result<Space> {
        Ok(match &doc {
            Document::Matrix(s) => s.clone(),
            Document::Tree(t) => tree_to_space(t),
            Document::Unrooted(u) => space_from_unrooted(u)?,
        })
    };
    let text = match to {
        Target::Matrix => io::write_matrix_json(&space()?),
        Target::Csv => io::write_matrix_csv(&space()?),
        Target::Tree => io::write_tree_json(&build_representing_tree(&space()?)),
        Target::Unrooted => match &doc {
            Document::Unrooted(u) => io::write_unrooted_json(u),
            _ => io::write_unrooted_json(&unrooted_from_representing(&build_representing_tree(&space()?))?),
        },
        Target::Dot => match &doc {
            Document::Unrooted(u) => ultraforest::dot::unrooted_to_dot(u),
            _ => ultraforest::dot::tree_to_dot(&build_representing_tree(&space()?)),
        },
    };
    out.push_str(&text);
    if !text.ends_with('\n') {
        out.push('\n');
    }
    Ok(())
}

fn certificate(space: &Space, subset: &[String]) -> Value {
    json!({"space": io::matrix_json_value(space), "subset": subset})
}

fn run_hereditary(action: &HereditaryCommand, json: bool, out: &mut String) -> Result<bool> {
    match action {
        HereditaryCommand::Verify { class, max_n } => {
            let id = parse_class(class)?;
            let r = hereditary::hereditary_verify(id, *max_n)?;
            let violation = r.first_violation.as_ref().map(|c| certificate(&c.space, &c.subset));
            if json {
                json_out(
                    out,
                    &json!({
                        "class": id.to_string(), "max_n": r.max_n, "holds": r.holds,
                        "spaces_checked": r.spaces_checked, "members_checked": r.members_checked,
                        "violation": violation,
                    }),
                );
            } else {
                out.push_str(&format!(
                    "{id}: {} up to {} points ({} members among {} spaces)\n",
                    if r.holds {
                        "closed under subspaces"
                    } else {
                        "NOT closed under subspaces"
                    },
                    r.max_n,
                    r.members_checked,
                    r.spaces_checked
                ));
                if let Some(c) = &r.first_violation {
                    out.push_str(&render::counterexample(&c.space, &c.subset));
                }
            }
            Ok(r.holds)
        }
        HereditaryCommand::Counterexample { class, max_n, budget } => {
            let id = parse_class(class)?;
            let found = hereditary::hereditary_counterexample_search(id, *max_n, *budget)?;
            if json {
                let c = found.as_ref().map(|c| certificate(&c.space, &c.subset));
                json_out(
                    out,
                    &json!({"class": id.to_string(), "max_n": max_n, "counterexample": c}),
                );
            } else {
                match &found {
                    Some(c) => out.push_str(&render::counterexample(&c.space, &c.subset)),
                    None => out.push_str(&format!("{id}: no counterexample up to {max_n} points\n")),
                }
            }
            Ok(found.is_none())
        }
        HereditaryCommand::Instance { class, file } => {
            let id = parse_class(class)?;
            let space = load_space(file)?;
            let v = hereditary::is_hereditary_instance(&space, id)?;
            if json {
                json_out(
                    out,
                    &json!({"class": id.to_string(), "holds": v.holds, "witness": v.witness,
                            "subspaces_checked": v.subspaces_checked}),
                );
            } else {
                match &v.witness {
                    None => out.push_str(&format!("every subspace stays in {id}\n")),
                    Some(w) => out.push_str(&format!("subspace {{{}}} leaves {id}\n", w.join(","))),
                }
            }
            Ok(v.holds)
        }
    }
}
