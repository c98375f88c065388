//! Design documents: a structured JSON format and a minimal plain-text
//! format for hand-authoring.
//!
//! The structured format is a single JSON object with fields `version`
//! (always 1), `v`, `blocks`, and optionally `lambda`, `colouring`, `ell`,
//! `t`, `resolution_classes`, `groups`, `mu`. The role is inferred from the
//! fields present: `groups` makes it a transversal design,
//! `resolution_classes` a resolvable structure, otherwise a plain design.
//!
//! The plain format is `v b` on the first line, then `b` lines of point
//! indices, then optionally a line `colouring:` followed by `v` integers.
//!
//! Emission is deterministic: JSON keys serialize sorted, integers in
//! decimal, block lists in their stored (canonical) order, so emitting the
//! same structure twice gives identical bytes and `parse ∘ emit ∘ parse`
//! is the identity on canonical documents.

use crate::colouring::Colouring;
use crate::design::{Design, ResolvableStructure, TransversalDesign};
use crate::error::{Error, Result};
use crate::params::ParameterSet;
use serde::{Deserialize, Serialize};

/// The wire form of a design document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DesignFile {
    pub version: u32,
    pub v: usize,
    pub blocks: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colouring: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution_classes: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<u64>,
}

/// A parsed incidence structure, role inferred from the document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Plain(Design),
    Resolvable(ResolvableStructure),
    Transversal(TransversalDesign),
}

impl Structure {
    /// The underlying plain design, when there is one.
    pub fn design(&self) -> Option<&Design> {
        match self {
            Structure::Plain(d) => Some(d),
            Structure::Resolvable(rs) => Some(rs.design()),
            Structure::Transversal(_) => None,
        }
    }
}

/// A structure plus any colouring metadata that came with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub structure: Structure,
    pub colouring: Option<Colouring>,
    pub t: Option<usize>,
}

impl Document {
    pub fn plain(design: Design) -> Self {
        Document {
            structure: Structure::Plain(design),
            colouring: None,
            t: None,
        }
    }

    pub fn coloured(design: Design, colouring: Colouring, t: usize) -> Self {
        Document {
            structure: Structure::Plain(design),
            colouring: Some(colouring),
            t: Some(t),
        }
    }

    pub fn resolvable(rs: ResolvableStructure) -> Self {
        Document {
            structure: Structure::Resolvable(rs),
            colouring: None,
            t: None,
        }
    }

    pub fn transversal(td: TransversalDesign) -> Self {
        Document {
            structure: Structure::Transversal(td),
            colouring: None,
            t: None,
        }
    }
}

/// Output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Structured,
    Plain,
}

/// Parses either format, sniffing JSON by its leading `{`.
pub fn parse_design(bytes: &[u8]) -> Result<Document> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| Error::parse("document", format!("not UTF-8: {e}")))?;
    if text.trim_start().starts_with('{') {
        parse_structured(text)
    } else {
        parse_plain(text)
    }
}

fn parse_structured(text: &str) -> Result<Document> {
    let file: DesignFile = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {}", e.line()), e.to_string()))?;
    if file.version != 1 {
        return Err(Error::parse(
            "version",
            format!("unsupported version {}", file.version),
        ));
    }
    if file.blocks.is_empty() {
        return Err(Error::parse("blocks", "empty blocks array"));
    }
    if file.groups.is_some() && file.resolution_classes.is_some() {
        return Err(Error::parse(
            "groups",
            "a document cannot carry both groups and resolution_classes",
        ));
    }

    let structure = if let Some(groups) = &file.groups {
        if groups.is_empty() {
            return Err(Error::parse("groups", "empty groups array"));
        }
        let k_groups = groups.len();
        let n = groups[0].len();
        if k_groups * n != file.v {
            return Err(Error::parse(
                "groups",
                format!("{k_groups} groups of {n} do not cover v = {}", file.v),
            ));
        }
        let mu = match file.mu {
            Some(mu) => mu,
            None => {
                // b = μn² pins μ down.
                let b = file.blocks.len();
                if n == 0 || b % (n * n) != 0 {
                    return Err(Error::parse(
                        "mu",
                        "mu missing and not determined by the block count",
                    ));
                }
                (b / (n * n)) as u64
            }
        };
        Structure::Transversal(
            TransversalDesign::new(k_groups, n, mu, groups.clone(), file.blocks.clone())
                .map_err(|e| Error::parse("blocks", e.to_string()))?,
        )
    } else {
        let design = Design::new(file.v, file.blocks.clone(), file.lambda)
            .map_err(|e| Error::parse("blocks", e.to_string()))?;
        if let Some(classes) = &file.resolution_classes {
            // Class indices refer to the document's block order; remap them
            // to the canonical order the Design adopted.
            let canonical_index = sorted_index_map(&file.blocks);
            let remapped: Vec<Vec<usize>> = classes
                .iter()
                .map(|class| {
                    class
                        .iter()
                        .map(|&i| {
                            canonical_index.get(i).copied().ok_or_else(|| {
                                Error::parse(
                                    "resolution_classes",
                                    format!("block index {i} out of range"),
                                )
                            })
                        })
                        .collect::<Result<Vec<usize>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Structure::Resolvable(
                ResolvableStructure::new(design, remapped)
                    .map_err(|e| Error::parse("resolution_classes", e.to_string()))?,
            )
        } else {
            Structure::Plain(design)
        }
    };

    let colouring = parse_colouring_fields(&file, file.v)?;
    Ok(Document {
        structure,
        colouring,
        t: file.t,
    })
}

/// Maps original block positions to their positions after sorting each
/// block and the list (ties resolved stably, which is harmless because
/// equal blocks are interchangeable).
fn sorted_index_map(blocks: &[Vec<usize>]) -> Vec<usize> {
    let mut keyed: Vec<(Vec<usize>, usize)> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut s = b.clone();
            s.sort_unstable();
            (s, i)
        })
        .collect();
    keyed.sort();
    let mut map = vec![0usize; blocks.len()];
    for (new_pos, (_, old_pos)) in keyed.iter().enumerate() {
        map[*old_pos] = new_pos;
    }
    map
}

fn parse_colouring_fields(file: &DesignFile, v: usize) -> Result<Option<Colouring>> {
    let Some(assignment) = &file.colouring else {
        if file.ell.is_some() {
            return Err(Error::parse("ell", "ell given without a colouring"));
        }
        return Ok(None);
    };
    if assignment.len() != v {
        return Err(Error::parse(
            "colouring",
            format!("colouring lists {} points, v = {v}", assignment.len()),
        ));
    }
    let ell = match file.ell {
        Some(ell) => ell,
        None => assignment.iter().max().map_or(0, |&m| m + 1),
    };
    Colouring::new(assignment.clone(), ell)
        .map(Some)
        .map_err(|e| Error::parse("colouring", e.to_string()))
}

fn parse_plain(text: &str) -> Result<Document> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (first_no, first) = lines
        .next()
        .ok_or_else(|| Error::parse("line 1", "empty document"))?;
    let header: Vec<&str> = first.split_whitespace().collect();
    if header.len() != 2 {
        return Err(Error::parse(
            format!("line {}", first_no + 1),
            format!("header must be 'v b', got {first:?}"),
        ));
    }
    let v: usize = parse_int(header[0], first_no + 1)?;
    let b: usize = parse_int(header[1], first_no + 1)?;
    if b == 0 {
        return Err(Error::parse(
            format!("line {}", first_no + 1),
            "empty blocks array",
        ));
    }

    let mut blocks = Vec::with_capacity(b);
    for _ in 0..b {
        let (no, line) = lines
            .next()
            .ok_or_else(|| Error::parse("end of input", format!("expected {b} block lines")))?;
        let block = line
            .split_whitespace()
            .map(|tok| parse_int(tok, no + 1))
            .collect::<Result<Vec<usize>>>()?;
        blocks.push(block);
    }
    let design = Design::new(v, blocks, None).map_err(|e| Error::parse("blocks", e.to_string()))?;

    let mut colouring = None;
    if let Some((no, line)) = lines.next() {
        if line.trim() != "colouring:" {
            return Err(Error::parse(
                format!("line {}", no + 1),
                format!("expected 'colouring:' or end of input, got {line:?}"),
            ));
        }
        let mut values = Vec::with_capacity(v);
        for (no, line) in lines {
            for tok in line.split_whitespace() {
                values.push(parse_int(tok, no + 1)?);
            }
        }
        if values.len() != v {
            return Err(Error::parse(
                "colouring",
                format!("colouring lists {} points, v = {v}", values.len()),
            ));
        }
        let ell = values.iter().max().map_or(0, |&m| m + 1);
        colouring = Some(
            Colouring::new(values, ell).map_err(|e| Error::parse("colouring", e.to_string()))?,
        );
    }
    Ok(Document {
        structure: Structure::Plain(design),
        colouring,
        t: None,
    })
}

fn parse_int(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(format!("line {line}"), format!("not an integer: {tok:?}")))
}

/// Serializes a document. Structured output is JSON with sorted keys and a
/// trailing newline; plain output carries only the design and colouring.
pub fn emit_design(doc: &Document, format: EmitFormat) -> Result<Vec<u8>> {
    match format {
        EmitFormat::Structured => emit_structured(doc),
        EmitFormat::Plain => emit_plain(doc),
    }
}

fn to_file(doc: &Document) -> DesignFile {
    let (v, blocks, lambda, classes, groups, mu) = match &doc.structure {
        Structure::Plain(d) => (d.v(), d.blocks().to_vec(), d.lambda(), None, None, None),
        Structure::Resolvable(rs) => (
            rs.design().v(),
            rs.design().blocks().to_vec(),
            rs.design().lambda(),
            Some(rs.classes().to_vec()),
            None,
            None,
        ),
        Structure::Transversal(td) => (
            td.points(),
            td.blocks().to_vec(),
            None,
            None,
            Some(td.groups().to_vec()),
            Some(td.mu()),
        ),
    };
    DesignFile {
        version: 1,
        v,
        blocks,
        lambda,
        colouring: doc.colouring.as_ref().map(|c| c.assignment().to_vec()),
        ell: doc.colouring.as_ref().map(|c| c.ell()),
        t: doc.t,
        resolution_classes: classes,
        groups,
        mu,
    }
}

fn emit_structured(doc: &Document) -> Result<Vec<u8>> {
    // Through Value so keys serialize sorted.
    let value =
        serde_json::to_value(to_file(doc)).map_err(|e| Error::parse("document", e.to_string()))?;
    let mut bytes =
        serde_json::to_vec_pretty(&value).map_err(|e| Error::parse("document", e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn emit_plain(doc: &Document) -> Result<Vec<u8>> {
    let file = to_file(doc);
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", file.v, file.blocks.len()));
    for block in &file.blocks {
        let words: Vec<String> = block.iter().map(|p| p.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    if let Some(colouring) = &file.colouring {
        out.push_str("colouring:\n");
        let words: Vec<String> = colouring.iter().map(|c| c.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    Ok(out.into_bytes())
}

/// JSON rendering of enumeration rows: an array of
/// `{ell, class_size, v, k, lambda_min}` objects in row order.
pub fn emit_enumeration_json(rows: &[ParameterSet]) -> String {
    let items: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            serde_json::json!({
                "ell": row.ell,
                "class_size": row.class_size(),
                "v": row.v,
                "k": row.k,
                "lambda_min": row.lambda,
            })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&items).expect("rows serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{colouring_16_6_2, design_16_6_2, rbibd_4_2_1, td_3_2};

    #[test]
    fn structured_round_trip_on_16_6_2() {
        let doc = Document::coloured(design_16_6_2(), colouring_16_6_2(), 0);
        let bytes = emit_design(&doc, EmitFormat::Structured).unwrap();
        let parsed = parse_design(&bytes).unwrap();
        assert_eq!(parsed, doc);
        // Emission is byte-stable.
        let again = emit_design(&parsed, EmitFormat::Structured).unwrap();
        assert_eq!(bytes, again);
    }

    #[test]
    fn plain_round_trip() {
        // The plain format carries v, blocks, and colouring; the declared
        // index does not survive it.
        let doc = Document::coloured(design_16_6_2(), colouring_16_6_2(), 0);
        let bytes = emit_design(&doc, EmitFormat::Plain).unwrap();
        let parsed = parse_design(&bytes).unwrap();
        let Structure::Plain(d) = &parsed.structure else {
            panic!("expected a plain design")
        };
        assert_eq!(d.blocks(), design_16_6_2().blocks());
        assert_eq!(d.v(), 16);
        assert_eq!(parsed.colouring, doc.colouring);
    }

    #[test]
    fn plain_document_for_4_3_2() {
        let text = "4 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n";
        let doc = parse_design(text.as_bytes()).unwrap();
        let Structure::Plain(d) = &doc.structure else {
            panic!("expected a plain design")
        };
        assert_eq!((d.v(), d.k(), d.b()), (4, 3, 4));
        assert_eq!(
            crate::design::verify_bibd(d, Some(2)).discovered_lambda,
            Some(2)
        );
    }

    #[test]
    fn resolvable_and_td_round_trips() {
        let doc = Document::resolvable(rbibd_4_2_1());
        let bytes = emit_design(&doc, EmitFormat::Structured).unwrap();
        assert_eq!(parse_design(&bytes).unwrap(), doc);

        let doc = Document::transversal(td_3_2());
        let bytes = emit_design(&doc, EmitFormat::Structured).unwrap();
        assert_eq!(parse_design(&bytes).unwrap(), doc);
    }

    #[test]
    fn parse_errors_carry_loci() {
        // Empty blocks.
        let err = parse_design(br#"{"version":1,"v":4,"blocks":[]}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));

        // Duplicate point inside a block.
        let err = parse_design(br#"{"version":1,"v":4,"blocks":[[0,0,1]]}"#).unwrap_err();
        assert!(err.to_string().contains("repeats"));

        // Point out of range.
        assert!(parse_design(br#"{"version":1,"v":4,"blocks":[[0,1,7],[1,2,3]]}"#).is_err());

        // Ragged blocks.
        assert!(parse_design(br#"{"version":1,"v":4,"blocks":[[0,1,2],[1,2]]}"#).is_err());

        // Colouring length mismatch.
        let err = parse_design(
            br#"{"version":1,"v":4,"blocks":[[0,1,2],[0,1,3],[0,2,3],[1,2,3]],"colouring":[0,1]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("colouring"));

        // Bad plain-text header.
        assert!(parse_design(b"4\n0 1 2\n").is_err());
        // Non-integer token, with its line number.
        let err = parse_design(b"4 1\n0 x 2\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }

    #[test]
    fn classes_survive_noncanonical_input_order() {
        // Same (4,2,1) structure, blocks listed out of order in the file.
        let text = r#"{
            "version": 1, "v": 4,
            "blocks": [[2,3],[0,1],[1,3],[0,2],[1,2],[0,3]],
            "lambda": 1,
            "resolution_classes": [[0,1],[2,3],[4,5]]
        }"#;
        let doc = parse_design(text.as_bytes()).unwrap();
        let Structure::Resolvable(rs) = &doc.structure else {
            panic!("expected resolvable")
        };
        assert!(crate::design::verify_resolution(rs).ok());
    }
}
