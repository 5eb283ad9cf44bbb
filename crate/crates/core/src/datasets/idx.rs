//! IDX files: `00 00 <type> <ndim>` magic, `ndim` big-endian u32 dims, then
//! the row-major payload. Only unsigned-byte payloads (`type = 0x08`) occur
//! in MNIST and only those are accepted.

use std::path::Path;

use super::read_maybe_gz;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdxArray {
    pub dims: Vec<usize>,
    pub data: Vec<u8>,
}

pub fn read_idx(path: &Path) -> Result<IdxArray> {
    let bytes = read_maybe_gz(path)?;
    parse_idx(&bytes).map_err(|reason| Error::Format {
        format: "IDX",
        path: path.to_path_buf(),
        reason,
    })
}

pub(crate) fn parse_idx(bytes: &[u8]) -> std::result::Result<IdxArray, String> {
    if bytes.len() < 4 {
        return Err("truncated magic number".into());
    }
    if bytes[0] != 0 || bytes[1] != 0 {
        return Err(format!("bad magic {:02x}{:02x}", bytes[0], bytes[1]));
    }
    if bytes[2] != 0x08 {
        return Err(format!("unsupported element type 0x{:02x}", bytes[2]));
    }
    let ndim = usize::from(bytes[3]);
    let header = 4 + 4 * ndim;
    if bytes.len() < header {
        return Err("truncated dimension header".into());
    }
    let dims: Vec<usize> = bytes[4..header]
        .chunks_exact(4)
        .map(|c| u32::from_be_bytes([c[0], c[1], c[2], c[3]]) as usize)
        .collect();
    let len = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or("dimension product overflows")?;
    let payload = &bytes[header..];
    if payload.len() != len {
        return Err(format!(
            "payload has {} bytes, dims {:?} need {len}",
            payload.len(),
            dims
        ));
    }
    Ok(IdxArray {
        dims,
        data: payload.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn encode(dims: &[u32], payload: &[u8]) -> Vec<u8> {
        let mut b = vec![0, 0, 0x08, dims.len() as u8];
        for d in dims {
            b.extend_from_slice(&d.to_be_bytes());
        }
        b.extend_from_slice(payload);
        b
    }

    #[test]
    fn parses_images_and_labels() {
        let a = parse_idx(&encode(
            &[2, 2, 3],
            &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
        ))
        .unwrap();
        assert_eq!(a.dims, vec![2, 2, 3]);
        assert_eq!(a.data[11], 12);
        let l = parse_idx(&encode(&[3], &[7, 0, 1])).unwrap();
        assert_eq!(l.dims, vec![3]);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_idx(&[0, 0]).is_err());
        assert!(parse_idx(&[1, 0, 8, 1, 0, 0, 0, 0]).is_err());
        assert!(parse_idx(&[0, 0, 0x0d, 1, 0, 0, 0, 0]).is_err());
        assert!(parse_idx(&encode(&[4], &[1, 2, 3])).is_err());
        assert!(parse_idx(&[0, 0, 8, 2, 0, 0]).is_err());
    }

    #[test]
    fn reads_gzip() {
        use std::io::Write;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x-labels-idx1-ubyte.gz");
        let mut gz = flate2::write::GzEncoder::new(
            std::fs::File::create(&path).unwrap(),
            flate2::Compression::default(),
        );
        gz.write_all(&encode(&[2], &[4, 5])).unwrap();
        gz.finish().unwrap();
        assert_eq!(read_idx(&path).unwrap().data, vec![4, 5]);
    }
}
