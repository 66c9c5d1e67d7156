//! Plain-text graph and image formats.
//!
//! Graph files:
//!
//! ```text
//! # optional comments and blank lines
//! palette: red green blue
//! nodes: 0 0 1 2
//! edge: 0 1
//! edge: 1 2
//! edge: 2 3 1
//! ```
//!
//! `nodes` lists one palette index per node. An edge may carry a third
//! number, its label (default 0).
//!
//! Images use the plain PBM/PGM headers: `P1` (values `0`/`1`, digits may
//! run together) or `P2` (a maximum value, then whitespace-separated
//! integers up to it). Width comes before height. Each value is the
//! pixel's colour index. `#` starts a comment that runs to the end of the
//! line.

use super::grid::GridImage;
use super::ColouredGraph;
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub palette: Vec<String>,
    pub graph: ColouredGraph,
}

struct Token<'s> {
    text: &'s str,
    line: usize,
    column: usize,
}

/// Splits a line into whitespace-separated tokens with 1-based columns.
fn tokens(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    line: line_no,
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

fn number<T: std::str::FromStr>(t: &Token<'_>, what: &str) -> Result<T, ParseError> {
    t.text
        .parse()
        .map_err(|_| ParseError::new(t.line, t.column, format!("expected {what}, found {:?}", t.text)))
}

pub fn parse_graph(src: &str) -> Result<GraphFile, ParseError> {
    let mut palette: Option<Vec<String>> = None;
    let mut graph: Option<ColouredGraph> = None;
    let mut last_line = 0;
    for (k, raw) in src.lines().enumerate() {
        let line_no = k + 1;
        last_line = line_no;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let Some((key, rest)) = line.split_once(':') else {
            let col = line.len() - line.trim_start().len() + 1;
            return Err(ParseError::new(line_no, col, "expected `key: values`"));
        };
        let offset = key.chars().count() + 1;
        let toks: Vec<Token<'_>> = tokens(rest, line_no)
            .into_iter()
            .map(|t| Token {
                column: t.column + offset,
                ..t
            })
            .collect();
        let key_col = key.len() - key.trim_start().len() + 1;
        match key.trim() {
            "palette" => {
                if palette.is_some() {
                    return Err(ParseError::new(line_no, key_col, "palette given twice"));
                }
                if toks.is_empty() {
                    return Err(ParseError::new(line_no, key_col, "palette is empty"));
                }
                palette = Some(toks.iter().map(|t| t.text.to_string()).collect());
            }
            "nodes" => {
                let Some(p) = &palette else {
                    return Err(ParseError::new(line_no, key_col, "nodes before palette"));
                };
                if graph.is_some() {
                    return Err(ParseError::new(line_no, key_col, "nodes given twice"));
                }
                let mut colours = Vec::with_capacity(toks.len());
                for t in &toks {
                    let c: u32 = number(t, "a palette index")?;
                    if c as usize >= p.len() {
                        return Err(ParseError::new(
                            t.line,
                            t.column,
                            format!("colour {c} is outside the palette of {}", p.len()),
                        ));
                    }
                    colours.push(c);
                }
                graph = Some(ColouredGraph::new(colours));
            }
            "edge" => {
                let Some(g) = graph.as_mut() else {
                    return Err(ParseError::new(line_no, key_col, "edge before nodes"));
                };
                if !(2..=3).contains(&toks.len()) {
                    return Err(ParseError::new(line_no, key_col, "an edge needs two nodes and an optional label"));
                }
                let u: usize = number(&toks[0], "a node index")?;
                let v: usize = number(&toks[1], "a node index")?;
                let label: u8 = match toks.get(2) {
                    Some(t) => number(t, "an edge label (0-255)")?,
                    None => 0,
                };
                g.add_edge(u, v, label)
                    .map_err(|e| ParseError::new(line_no, toks[0].column, e.to_string()))?;
            }
            other => {
                return Err(ParseError::new(line_no, key_col, format!("unknown key {other:?}")));
            }
        }
    }
    let palette = palette.ok_or_else(|| ParseError::new(last_line.max(1), 1, "missing palette line"))?;
    let graph = graph.ok_or_else(|| ParseError::new(last_line.max(1), 1, "missing nodes line"))?;
    Ok(GraphFile { palette, graph })
}

pub fn write_graph(f: &GraphFile) -> String {
    let mut s = format!("palette: {}\n", f.palette.join(" "));
    let nodes: Vec<String> = f.graph.colours().iter().map(|c| c.to_string()).collect();
    s.push_str(&format!("nodes: {}\n", nodes.join(" ")));
    for (u, v, l) in f.graph.edges() {
        if l == 0 {
            s.push_str(&format!("edge: {u} {v}\n"));
        } else {
            s.push_str(&format!("edge: {u} {v} {l}\n"));
        }
    }
    s
}

pub fn parse_image(src: &str, orientation_locked: bool) -> Result<GridImage, ParseError> {
    let mut toks: Vec<Token<'_>> = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        toks.extend(tokens(strip_comment(raw), k + 1));
    }
    let mut it = toks.into_iter();
    let end = |what: &str| ParseError::new(src.lines().count().max(1), 1, format!("unexpected end of input, expected {what}"));
    let magic = it.next().ok_or_else(|| end("P1 or P2"))?;
    let bitmap = match magic.text {
        "P1" => true,
        "P2" => false,
        _ => {
            return Err(ParseError::new(magic.line, magic.column, format!("unknown magic {:?}", magic.text)));
        }
    };
    let cols: usize = number(&it.next().ok_or_else(|| end("width"))?, "a width")?;
    let rows: usize = number(&it.next().ok_or_else(|| end("height"))?, "a height")?;
    let total = rows
        .checked_mul(cols)
        .ok_or_else(|| ParseError::new(magic.line, magic.column, "image dimensions overflow"))?;
    let max: u32 = if bitmap {
        1
    } else {
        number(&it.next().ok_or_else(|| end("maximum value"))?, "a maximum value")?
    };
    let mut pixels = Vec::with_capacity(total.min(1 << 20));
    for t in it {
        if bitmap {
            for (i, ch) in t.text.char_indices() {
                let v = match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => {
                        return Err(ParseError::new(t.line, t.column + i, format!("expected 0 or 1, found {ch:?}")));
                    }
                };
                pixels.push((v, t.line, t.column + i));
            }
        } else {
            let v: u32 = number(&t, "a pixel value")?;
            if v > max {
                return Err(ParseError::new(t.line, t.column, format!("value {v} exceeds the maximum {max}")));
            }
            pixels.push((v, t.line, t.column));
        }
    }
    if pixels.len() != total {
        let (line, column) = pixels.get(total).map_or((src.lines().count().max(1), 1), |p| (p.1, p.2));
        return Err(ParseError::new(
            line,
            column,
            format!("expected {total} pixels, found {}", pixels.len()),
        ));
    }
    Ok(GridImage {
        rows,
        cols,
        pixels: pixels.into_iter().map(|p| p.0).collect(),
        orientation_locked,
    })
}

/// Writes `img` as `P2`.
pub fn write_image(img: &GridImage) -> String {
    let max = img.pixels.iter().copied().max().unwrap_or(0).max(1);
    let mut s = format!("P2\n{} {}\n{}\n", img.cols, img.rows, max);
    for r in 0..img.rows {
        let row: Vec<String> = (0..img.cols).map(|c| img.pixel(r, c).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}
