//! Text formats for spaces, representing trees and unrooted trees.
//!
//! Distances are always written as exact rational literals (`p/q` or an
//! integer), so every format round-trips without loss.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::rational::Rational;
use crate::space::{validate_space, Space, SpaceError};
use crate::tree::{NestedTree, RootedTree, TreeError};
use crate::unrooted::UnrootedTree;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("expected a {expected} document, found {found}")]
    FormatMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// The three document kinds understood by the readers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocKind {
    Matrix,
    Tree,
    Unrooted,
}

impl DocKind {
    pub fn name(self) -> &'static str {
        match self {
            DocKind::Matrix => "matrix",
            DocKind::Tree => "tree",
            DocKind::Unrooted => "unrooted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Matrix(Space),
    Tree(RootedTree),
    Unrooted(UnrootedTree),
}

impl Document {
    pub fn kind(&self) -> DocKind {
        match self {
            Document::Matrix(_) => DocKind::Matrix,
            Document::Tree(_) => DocKind::Tree,
            Document::Unrooted(_) => DocKind::Unrooted,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    points: Vec<String>,
    dist: Vec<Vec<Rational>>,
}

/// Reads a distance matrix as CSV.
///
/// The first record holds the point ids. A leading empty cell in that record
/// marks the row-labeled layout, where every following row starts with its id.
pub fn parse_matrix_csv(text: &str) -> Result<Space, IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let csv_err = |e: csv::Error| IoError::Csv {
        line: e.position().map_or(0, |p| p.line()),
        message: e.to_string(),
    };
    let header = records
        .next()
        .ok_or(IoError::Csv {
            line: 1,
            message: "missing header row".into(),
        })?
        .map_err(csv_err)?;
    let row_labeled = header.get(0) == Some("");
    let points: Vec<String> = header
        .iter()
        .skip(usize::from(row_labeled))
        .map(str::to_string)
        .collect();
    let mut rows = Vec::with_capacity(points.len());
    for rec in records {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line());
        let mut cells = rec.iter();
        if row_labeled {
            let id = cells.next().unwrap_or_default();
            let expected = points.get(rows.len()).map(String::as_str);
            if Some(id) != expected {
                return Err(IoError::Csv {
                    line,
                    message: format!("row id `{id}` does not match header `{}`", expected.unwrap_or("")),
                });
            }
        }
        let row = cells
            .map(|c| {
                c.parse::<Rational>().map_err(|e| IoError::Csv {
                    line,
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(validate_space(&rows, &points)?)
}

/// Writes the row-labeled CSV layout.
pub fn write_matrix_csv(space: &Space) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![String::new()];
    header.extend(space.points().iter().cloned());
    w.write_record(&header).expect("writing to memory");
    for i in 0..space.len() {
        let mut row = vec![space.point(i).to_string()];
        row.extend((0..space.len()).map(|j| space.dist(i, j).to_string()));
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is UTF-8")
}

pub fn parse_matrix_json(text: &str) -> Result<Space, IoError> {
    let doc: MatrixDoc = serde_json::from_str(text)?;
    Ok(validate_space(&doc.dist, &doc.points)?)
}

fn matrix_doc(space: &Space) -> MatrixDoc {
    MatrixDoc {
        points: space.points().to_vec(),
        dist: space.matrix(),
    }
}

pub fn write_matrix_json(space: &Space) -> String {
    serde_json::to_string_pretty(&matrix_doc(space)).expect("serializable")
}

/// One-line form, used for JSON lines output.
pub fn matrix_json_line(space: &Space) -> String {
    serde_json::to_string(&matrix_doc(space)).expect("serializable")
}

pub fn matrix_json_value(space: &Space) -> Value {
    serde_json::to_value(matrix_doc(space)).expect("serializable")
}

pub fn parse_tree_json(text: &str) -> Result<RootedTree, IoError> {
    let nested: NestedTree = serde_json::from_str(text)?;
    Ok(RootedTree::from_nested(&nested)?)
}

pub fn write_tree_json(tree: &RootedTree) -> String {
    serde_json::to_string_pretty(&tree.to_nested()).expect("serializable")
}

pub fn parse_unrooted_json(text: &str) -> Result<UnrootedTree, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_unrooted_json(tree: &UnrootedTree) -> String {
    serde_json::to_string_pretty(tree).expect("serializable")
}

/// Guesses the kind of a document: JSON objects by their keys, anything
/// else as a CSV matrix.
pub fn detect_kind(text: &str) -> DocKind {
    let t = text.trim_start();
    if !t.starts_with('{') {
        return DocKind::Matrix;
    }
    match serde_json::from_str::<Value>(t) {
        Ok(Value::Object(map)) if map.contains_key("vertices") => DocKind::Unrooted,
        Ok(Value::Object(map)) if map.contains_key("label") || map.contains_key("children") => DocKind::Tree,
        _ => DocKind::Matrix,
    }
}

fn parse_matrix(text: &str) -> Result<Space, IoError> {
    if text.trim_start().starts_with('{') {
        parse_matrix_json(text)
    } else {
        parse_matrix_csv(text)
    }
}

/// Parses a document of the detected kind.
pub fn read_document(text: &str) -> Result<Document, IoError> {
    read_as(text, detect_kind(text))
}

/// Parses a document that must be of kind `kind`.
pub fn read_as(text: &str, kind: DocKind) -> Result<Document, IoError> {
    let found = detect_kind(text);
    if found != kind {
        return Err(IoError::FormatMismatch {
            expected: kind.name(),
            found: found.name(),
        });
    }
    Ok(match kind {
        DocKind::Matrix => Document::Matrix(parse_matrix(text)?),
        DocKind::Tree => Document::Tree(parse_tree_json(text)?),
        DocKind::Unrooted => Document::Unrooted(parse_unrooted_json(text)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{isosceles, sixteen_point_space, sixteen_point_unrooted};
    use crate::tree::build_representing_tree;

    #[test]
    fn csv_layouts() {
        let plain = "a,b,c\n0,1,2\n1,0,2\n2,2,0\n";
        let labeled = ",a,b,c\na,0,1,2\nb,1,0,2\nc,2,2,0\n";
        assert_eq!(parse_matrix_csv(plain).unwrap(), isosceles());
        assert_eq!(parse_matrix_csv(labeled).unwrap(), isosceles());
        assert_eq!(write_matrix_csv(&isosceles()), labeled);
    }

    #[test]
    fn csv_rationals_and_decimals() {
        let s = parse_matrix_csv("p,q\n0, 0.25\n1/4 ,0\n").unwrap();
        assert_eq!(s.dist(0, 1), &Rational::new(1, 4));
        let back = parse_matrix_csv(&write_matrix_csv(&s)).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn csv_errors_carry_positions() {
        match parse_matrix_csv("a,b\n0,1\n1,zz\n") {
            Err(IoError::Csv { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_matrix_csv("a,b,c\n0,1,3\n1,0,1\n3,1,0\n"),
            Err(IoError::Space(SpaceError::StrongTriangleViolation(..)))
        ));
    }

    #[test]
    fn json_round_trips() {
        let s = sixteen_point_space();
        assert_eq!(parse_matrix_json(&write_matrix_json(&s)).unwrap(), s);
        assert_eq!(parse_matrix_json(&matrix_json_line(&s)).unwrap(), s);
        let t = build_representing_tree(&s);
        assert_eq!(
            parse_tree_json(&write_tree_json(&t)).unwrap().to_nested(),
            t.to_nested()
        );
        let u = sixteen_point_unrooted();
        assert_eq!(parse_unrooted_json(&write_unrooted_json(&u)).unwrap(), u);
    }

    #[test]
    fn detection() {
        let s = isosceles();
        let t = build_representing_tree(&s);
        assert_eq!(detect_kind(&write_matrix_csv(&s)), DocKind::Matrix);
        assert_eq!(detect_kind(&write_matrix_json(&s)), DocKind::Matrix);
        assert_eq!(detect_kind(&write_tree_json(&t)), DocKind::Tree);
        assert_eq!(
            detect_kind(&write_unrooted_json(&sixteen_point_unrooted())),
            DocKind::Unrooted
        );
        assert!(matches!(
            read_as(&write_tree_json(&t), DocKind::Matrix),
            Err(IoError::FormatMismatch {
                expected: "matrix",
                found: "tree"
            })
        ));
        assert_eq!(read_document(&write_tree_json(&t)).unwrap(), Document::Tree(t));
    }

    #[test]
    fn json_errors_carry_positions() {
        match parse_matrix_json("{\"points\": [\"a\"],\n \"dist\": [[0,]]}") {
            Err(IoError::Json { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }
}
