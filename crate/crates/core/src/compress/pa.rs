//! The pathway codec.
//!
//! Codes 0-255 are literal bytes. Code `256 + L` (`2 <= L <= 255`) opens
//! the definition of a block whose decompressed length is `L`; the block
//! is the decompression of the symbols that follow, up to `L` bytes, and
//! may contain literals, references and nested definitions. Codes from
//! 512 refer to blocks. Blocks are numbered 512, 513, ... by the position
//! of their first byte in the output; blocks starting at the same byte
//! (a run of consecutive markers) are numbered innermost first. Codes 256
//! and 257 are never produced.
//!
//! The encoder builds a pathway for the text and reads it as a
//! concatenation tree. Walking that tree from the root, a node is used as
//! often as the parts that still expand into it. A node becomes a block
//! when it is used at least twice and is 2-255 bytes long; its first use
//! becomes the definition and the others become references, so only the
//! definition expands into its children.

use std::collections::HashMap;

use super::{CodeStream, CodecError};
use crate::search::{Algorithm, SearchConfig};
use crate::strings::slp::{build_slp, Slp, SlpKind};
use crate::strings::{str_from_bytes, string_assembly_index, TextSystem};

pub const FIRST_BLOCK_CODE: u16 = 512;
pub const MARKER_BASE: u16 = 256;
pub const MIN_BLOCK: usize = 2;
pub const MAX_BLOCK: usize = 255;

/// A compressed stream with facts about how it was made.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaEncoding {
    pub stream: CodeStream,
    /// Steps in the pathway the encoder worked from.
    pub pathway_length: usize,
    /// Number of blocks defined in the stream.
    pub blocks: usize,
}

/// The concatenation tree for `text` from the configured search. The tree
/// heuristic uses the suffix-array builder at every length, which keeps
/// encoding fast on short inputs too.
fn text_slp(text: &[u8], search: &SearchConfig) -> Result<Slp, CodecError> {
    if search.algorithm == Algorithm::Tree {
        return Ok(build_slp(&str_from_bytes(text)));
    }
    let s = str_from_bytes(text);
    let sys = TextSystem::for_text(&s, false)?;
    let r = string_assembly_index(&sys, &s, search)?;
    Ok(Slp::from_pathway(&r.witness, &s)?)
}

pub fn pa_encode(text: &[u8], search: &SearchConfig) -> Result<PaEncoding, CodecError> {
    if text.is_empty() {
        return Ok(PaEncoding {
            stream: CodeStream::default(),
            pathway_length: 0,
            blocks: 0,
        });
    }
    let slp = text_slp(text, search)?;
    let root = slp.root.expect("non-empty text has a root");
    let n = slp.nodes.len();

    // Uses, parents before children (children are strictly shorter).
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| slp.nodes[b].len.cmp(&slp.nodes[a].len));
    let mut uses = vec![0u64; n];
    uses[root] = 1;
    let mut coded = vec![false; n];
    for &v in &order {
        let node = slp.nodes[v];
        coded[v] = uses[v] >= 2 && (MIN_BLOCK..=MAX_BLOCK).contains(&node.len);
        if let SlpKind::Pair(l, r) = node.kind {
            let passed = if coded[v] { 1 } else { uses[v] };
            uses[l] += passed;
            uses[r] += passed;
        }
    }

    enum Sym {
        Lit(u8),
        Marker(usize),
        Ref(usize),
    }
    let mut syms = Vec::new();
    let mut defined = vec![false; n];
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        if coded[v] {
            if defined[v] {
                syms.push(Sym::Ref(v));
                continue;
            }
            defined[v] = true;
            syms.push(Sym::Marker(v));
        }
        match slp.nodes[v].kind {
            SlpKind::Leaf(c) => syms.push(Sym::Lit(c as u8)),
            SlpKind::Pair(l, r) => {
                stack.push(r);
                stack.push(l);
            }
        }
    }

    // Number blocks as the decoder will: runs of markers innermost first.
    let mut code_of: HashMap<usize, u16> = HashMap::new();
    let mut next = FIRST_BLOCK_CODE as usize;
    let mut i = 0;
    while i < syms.len() {
        if let Sym::Marker(_) = syms[i] {
            let mut j = i;
            while j < syms.len() && matches!(syms[j], Sym::Marker(_)) {
                j += 1;
            }
            for s in syms[i..j].iter().rev() {
                if let Sym::Marker(v) = s {
                    if next > u16::MAX as usize {
                        return Err(CodecError::TooManyBlocks);
                    }
                    code_of.insert(*v, next as u16);
                    next += 1;
                }
            }
            i = j;
        } else {
            i += 1;
        }
    }

    let codes = syms
        .iter()
        .map(|s| match *s {
            Sym::Lit(c) => c as u16,
            Sym::Marker(v) => MARKER_BASE + slp.nodes[v].len as u16,
            Sym::Ref(v) => code_of[&v],
        })
        .collect();
    Ok(PaEncoding {
        stream: CodeStream::new(codes),
        pathway_length: slp.steps(),
        blocks: code_of.len(),
    })
}

pub fn pa_compress(text: &[u8], search: &SearchConfig) -> Result<CodeStream, CodecError> {
    Ok(pa_encode(text, search)?.stream)
}

struct Open {
    code: usize,
    start: usize,
    len: usize,
}

pub fn pa_decompress(stream: &CodeStream) -> Result<Vec<u8>, CodecError> {
    let mut out: Vec<u8> = Vec::new();
    // Block k (code 512 + k) as a range of `out`, once complete.
    let mut blocks: Vec<Option<(usize, usize)>> = Vec::new();
    let mut open: Vec<Open> = Vec::new();
    let codes = &stream.codes;
    let mut pos = 0;
    while pos < codes.len() {
        let c = codes[pos];
        if (MARKER_BASE..FIRST_BLOCK_CODE).contains(&c) {
            let mut run = Vec::new();
            while pos < codes.len() && (MARKER_BASE..FIRST_BLOCK_CODE).contains(&codes[pos]) {
                let len = (codes[pos] - MARKER_BASE) as usize;
                if len < MIN_BLOCK {
                    return Err(CodecError::malformed(pos, format!("reserved code {}", codes[pos])));
                }
                if let Some(outer) = run.last().or(open.last()).map(|o: &Open| o.start + o.len - out.len()) {
                    if len > outer {
                        return Err(CodecError::malformed(pos, "block overruns the enclosing block"));
                    }
                }
                run.push(Open {
                    code: 0,
                    start: out.len(),
                    len,
                });
                pos += 1;
            }
            for o in run.iter_mut().rev() {
                o.code = blocks.len();
                if o.code + FIRST_BLOCK_CODE as usize > u16::MAX as usize {
                    return Err(CodecError::malformed(pos, "too many blocks"));
                }
                blocks.push(None);
            }
            open.extend(run);
            continue;
        }
        if c < MARKER_BASE {
            out.push(c as u8);
        } else {
            let k = (c - FIRST_BLOCK_CODE) as usize;
            match blocks.get(k) {
                Some(Some((s, e))) => {
                    let (s, e) = (*s, *e);
                    if let Some(o) = open.last() {
                        if out.len() + (e - s) > o.start + o.len {
                            return Err(CodecError::malformed(pos, "reference overruns the enclosing block"));
                        }
                    }
                    out.extend_from_within(s..e);
                }
                Some(None) => return Err(CodecError::malformed(pos, format!("block {c} is still being defined"))),
                None => return Err(CodecError::malformed(pos, format!("block {c} is not defined"))),
            }
        }
        while let Some(o) = open.last() {
            let end = o.start + o.len;
            if out.len() < end {
                break;
            }
            // Overruns are rejected above, so the block is exactly full.
            blocks[o.code] = Some((o.start, end));
            open.pop();
        }
        pos += 1;
    }
    if let Some(o) = open.last() {
        return Err(CodecError::malformed(
            codes.len(),
            format!("stream ends inside block {}", o.code + FIRST_BLOCK_CODE as usize),
        ));
    }
    Ok(out)
}
