//! The transform container file format.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "BWTV"            4-byte magic
//! 0x01              version
//! flags             1 byte; bit 0 set when the tool appended the terminator
//! scheme_len        u32
//! scheme blob       UTF-8 textual scheme, scheme_len bytes
//! I                 u64, 1-based primary row index
//! L                 raw payload bytes to end of file
//! ```

use crate::scheme::OrderingScheme;
use crate::Error;

pub const MAGIC: &[u8; 4] = b"BWTV";
pub const VERSION: u8 = 0x01;
/// Set when the tool appended the 0x00 terminator to the input.
pub const FLAG_TERMINATOR_APPENDED: u8 = 0b0000_0001;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformContainer {
    pub flags: u8,
    pub scheme_text: String,
    pub primary: u64,
    pub payload: Vec<u8>,
}

impl TransformContainer {
    pub fn terminator_appended(&self) -> bool {
        self.flags & FLAG_TERMINATOR_APPENDED != 0
    }

    /// Parse the embedded scheme blob.
    pub fn scheme(&self) -> Result<OrderingScheme, Error> {
        OrderingScheme::parse(&self.scheme_text)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let blob = self.scheme_text.as_bytes();
        let mut out = Vec::with_capacity(4 + 1 + 1 + 4 + blob.len() + 8 + self.payload.len());
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.push(self.flags);
        out.extend_from_slice(&(blob.len() as u32).to_le_bytes());
        out.extend_from_slice(blob);
        out.extend_from_slice(&self.primary.to_le_bytes());
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, Error> {
        let err = Error::Container;
        if bytes.len() < 10 {
            return Err(err("file shorter than the fixed header"));
        }
        if &bytes[0..4] != MAGIC {
            return Err(err("bad magic"));
        }
        if bytes[4] != VERSION {
            return Err(err("unsupported version"));
        }
        let flags = bytes[5];
        let scheme_len = u32::from_le_bytes(bytes[6..10].try_into().unwrap()) as usize;
        let rest = &bytes[10..];
        if rest.len() < scheme_len + 8 {
            return Err(err("truncated scheme blob or index"));
        }
        let scheme_text = std::str::from_utf8(&rest[..scheme_len])
            .map_err(|_| err("scheme blob is not UTF-8"))?
            .to_string();
        let primary = u64::from_le_bytes(rest[scheme_len..scheme_len + 8].try_into().unwrap());
        let payload = rest[scheme_len + 8..].to_vec();
        if payload.is_empty() {
            return Err(err("empty payload"));
        }
        if primary < 1 || primary > payload.len() as u64 {
            return Err(err("primary index outside the payload"));
        }
        Ok(TransformContainer {
            flags,
            scheme_text,
            primary,
            payload,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TransformContainer {
        TransformContainer {
            flags: FLAG_TERMINATOR_APPENDED,
            scheme_text: "kind=const pi=abc\nalphabet=abc\n".to_string(),
            primary: 2,
            payload: b"bcaaabaaa".to_vec(),
        }
    }

    #[test]
    fn round_trip() {
        let c = sample();
        let bytes = c.to_bytes();
        assert_eq!(TransformContainer::from_bytes(&bytes).unwrap(), c);
        assert!(c.scheme().is_ok());
        assert!(c.terminator_appended());
    }

    #[test]
    fn rejects_malformed() {
        let c = sample();
        let bytes = c.to_bytes();
        assert!(TransformContainer::from_bytes(&bytes[..5]).is_err());
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(TransformContainer::from_bytes(&bad).is_err());
        let mut bad = bytes.clone();
        bad[4] = 0x02;
        assert!(TransformContainer::from_bytes(&bad).is_err());
        // primary outside payload
        let mut c2 = sample();
        c2.primary = 10;
        assert!(TransformContainer::from_bytes(&c2.to_bytes()).is_err());
        c2.primary = 0;
        assert!(TransformContainer::from_bytes(&c2.to_bytes()).is_err());
        // empty payload
        let mut c3 = sample();
        c3.payload.clear();
        c3.primary = 1;
        assert!(TransformContainer::from_bytes(&c3.to_bytes()).is_err());
    }

    #[test]
    fn serialization_is_byte_stable() {
        assert_eq!(sample().to_bytes(), sample().to_bytes());
    }
}
