//! Code streams and their file format: a 4-byte magic followed by
//! big-endian 16-bit codes.

use super::CodecError;

pub const PA_MAGIC: &[u8; 4] = b"PA01";
pub const LZW_MAGIC: &[u8; 4] = b"LZ16";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CodeStream {
    pub codes: Vec<u16>,
}

impl CodeStream {
    pub fn new(codes: Vec<u16>) -> Self {
        Self { codes }
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Serialized size without the magic.
    pub fn byte_len(&self) -> usize {
        2 * self.codes.len()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.codes.iter().flat_map(|c| c.to_be_bytes()).collect()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CodecError> {
        if bytes.len() % 2 != 0 {
            return Err(CodecError::malformed(bytes.len() / 2, "odd number of code bytes"));
        }
        Ok(Self {
            codes: bytes.chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])).collect(),
        })
    }

    pub fn to_file(&self, magic: &[u8; 4]) -> Vec<u8> {
        let mut out = magic.to_vec();
        out.extend(self.to_bytes());
        out
    }

    pub fn from_file(bytes: &[u8], magic: &[u8; 4]) -> Result<Self, CodecError> {
        match bytes.strip_prefix(magic.as_slice()) {
            Some(rest) => Self::from_bytes(rest),
            None => Err(CodecError::BadMagic {
                expected: String::from_utf8_lossy(magic).into_owned(),
            }),
        }
    }
}
