//! Textbook LZW with fixed 16-bit codes. The dictionary starts with the
//! 256 single bytes and stops growing once all 65536 codes are taken.

use std::collections::HashMap;

use super::{CodeStream, CodecError};

const DICT_LIMIT: usize = 1 << 16;

pub fn lzw_compress(text: &[u8]) -> CodeStream {
    let mut dict: HashMap<(u16, u8), u16> = HashMap::new();
    let mut next = 256usize;
    let mut out = Vec::new();
    let Some((&first, rest)) = text.split_first() else {
        return CodeStream::default();
    };
    let mut w = first as u16;
    for &c in rest {
        match dict.get(&(w, c)) {
            Some(&code) => w = code,
            None => {
                out.push(w);
                if next < DICT_LIMIT {
                    dict.insert((w, c), next as u16);
                    next += 1;
                }
                w = c as u16;
            }
        }
    }
    out.push(w);
    CodeStream::new(out)
}

pub fn lzw_decompress(stream: &CodeStream) -> Result<Vec<u8>, CodecError> {
    // Entry k > 255 is (prefix code, last byte); `first` and `len` speed
    // up expansion.
    let mut prefix: Vec<u16> = Vec::new();
    let mut last: Vec<u8> = Vec::new();
    let mut first: Vec<u8> = (0..=255).collect();
    let mut len: Vec<usize> = vec![1; 256];
    let mut out = Vec::new();
    let mut prev: Option<u16> = None;
    let expand = |code: u16, prefix: &[u16], last: &[u8], out: &mut Vec<u8>, len: usize| {
        let start = out.len();
        out.resize(start + len, 0);
        let mut k = code as usize;
        let mut at = start + len;
        while k > 255 {
            at -= 1;
            out[at] = last[k - 256];
            k = prefix[k - 256] as usize;
        }
        out[start] = k as u8;
    };
    for (pos, &code) in stream.codes.iter().enumerate() {
        let known = 256 + prefix.len();
        let c = code as usize;
        match prev {
            None => {
                if c > 255 {
                    return Err(CodecError::malformed(pos, format!("first code {c} is not a literal")));
                }
                out.push(code as u8);
            }
            Some(p) => {
                let head = if c < known {
                    first[c]
                } else if c == known && known < DICT_LIMIT {
                    first[p as usize]
                } else {
                    return Err(CodecError::malformed(pos, format!("code {c} is not yet defined")));
                };
                if known < DICT_LIMIT {
                    prefix.push(p);
                    last.push(head);
                    first.push(first[p as usize]);
                    len.push(len[p as usize] + 1);
                }
                expand(code, &prefix, &last, &mut out, len[c]);
            }
        }
        prev = Some(code);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(lzw_compress(b"").is_empty());
        assert_eq!(lzw_compress(b"aaaa").codes, vec![97, 256, 97]);
        for t in [&b"aaaa"[..], b"", b"abababababab", b"TOBEORNOTTOBEORTOBEORNOT"] {
            assert_eq!(lzw_decompress(&lzw_compress(t)).unwrap(), t);
        }
        assert!(lzw_decompress(&CodeStream::new(vec![97, 300])).is_err());
        assert!(lzw_decompress(&CodeStream::new(vec![256])).is_err());
    }
}
