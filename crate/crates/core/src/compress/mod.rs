//! Compression with assembly pathways, and an LZW baseline.
//!
//! Both codecs write fixed-width 16-bit codes so their output sizes are
//! directly comparable. See [`pa`] for the pathway stream format.

pub mod lzw;
pub mod pa;
pub mod stream;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::AssemblyError;
use crate::search::SearchConfig;

pub use lzw::{lzw_compress, lzw_decompress};
pub use pa::{pa_compress, pa_decompress, pa_encode, PaEncoding};
pub use stream::{CodeStream, LZW_MAGIC, PA_MAGIC};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CodecError {
    #[error("malformed stream at code {position}: {reason}")]
    Malformed { position: usize, reason: String },

    #[error("not a {expected} stream (bad magic)")]
    BadMagic { expected: String },

    #[error("more blocks than 16-bit codes can address")]
    TooManyBlocks,

    #[error("round trip failed for the {0} codec")]
    RoundTrip(&'static str),

    #[error(transparent)]
    Assembly(#[from] AssemblyError),
}

impl CodecError {
    pub fn malformed(position: usize, reason: impl Into<String>) -> Self {
        CodecError::Malformed {
            position,
            reason: reason.into(),
        }
    }
}

/// Sizes of one input under both codecs. Output sizes count code bytes
/// and exclude the 4-byte file magic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressionStats {
    pub input_bytes: usize,
    pub pa_output_bytes: usize,
    pub lzw_output_bytes: usize,
    pub pathway_length_used: usize,
    pub pa_blocks: usize,
}

/// Runs both codecs, checks both round trips and reports sizes.
pub fn compare_compression(text: &[u8], search: &SearchConfig) -> Result<CompressionStats, CodecError> {
    let pa = pa_encode(text, search)?;
    if pa_decompress(&pa.stream)? != text {
        return Err(CodecError::RoundTrip("pathway"));
    }
    let lz = lzw_compress(text);
    if lzw_decompress(&lz)? != text {
        return Err(CodecError::RoundTrip("LZW"));
    }
    Ok(CompressionStats {
        input_bytes: text.len(),
        pa_output_bytes: pa.stream.byte_len(),
        lzw_output_bytes: lz.byte_len(),
        pathway_length_used: pa.pathway_length,
        pa_blocks: pa.blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Algorithm;

    #[test]
    fn repetitive_fixture_favours_pathways() {
        let motif = b"pathway-assembly";
        let text = motif.repeat(1 << 10);
        let s = compare_compression(&text, &SearchConfig::with_algorithm(Algorithm::Tree)).unwrap();
        assert!(s.pa_output_bytes < s.lzw_output_bytes, "{s:?}");
    }

    #[test]
    fn abab_stats() {
        let s = compare_compression(b"abab", &SearchConfig::default()).unwrap();
        assert_eq!(s.pathway_length_used, 2);
        assert_eq!(s.pa_output_bytes, 8);
    }
}
