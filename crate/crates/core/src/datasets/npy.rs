//! Minimal NumPy `.npy` reader for integer arrays that fit in a byte.
//!
//! Layout: `\x93NUMPY`, major/minor version bytes, a little-endian header
//! length (u16 for v1, u32 for v2/v3), an ASCII dict literal with `descr`,
//! `fortran_order` and `shape`, then the C-order payload.

use std::path::Path;

use super::read_maybe_gz;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NpyArray {
    pub shape: Vec<usize>,
    pub data: Vec<u8>,
}

pub fn read_npy(path: &Path) -> Result<NpyArray> {
    let bytes = read_maybe_gz(path)?;
    parse_npy(&bytes).map_err(|reason| Error::Format {
        format: "NPY",
        path: path.to_path_buf(),
        reason,
    })
}

fn dict_value<'a>(header: &'a str, key: &str) -> std::result::Result<&'a str, String> {
    let pat = format!("'{key}'");
    let start = header
        .find(&pat)
        .ok_or_else(|| format!("header lacks {pat}"))?
        + pat.len();
    let rest = header[start..].trim_start();
    let rest = rest
        .strip_prefix(':')
        .ok_or_else(|| format!("malformed {pat} entry"))?
        .trim_start();
    let end = if rest.starts_with('(') {
        rest.find(')').map(|i| i + 1)
    } else {
        rest.find([',', '}'])
    }
    .ok_or_else(|| format!("unterminated {pat} entry"))?;
    Ok(rest[..end].trim())
}

pub(crate) fn parse_npy(bytes: &[u8]) -> std::result::Result<NpyArray, String> {
    if bytes.len() < 10 || &bytes[..6] != b"\x93NUMPY" {
        return Err("missing NPY magic".into());
    }
    let (header_len, offset) = match bytes[6] {
        1 => (usize::from(u16::from_le_bytes([bytes[8], bytes[9]])), 10),
        2 | 3 if bytes.len() >= 12 => (
            u32::from_le_bytes([bytes[8], bytes[9], bytes[10], bytes[11]]) as usize,
            12,
        ),
        v => return Err(format!("unsupported NPY version {v}")),
    };
    let header = bytes
        .get(offset..offset + header_len)
        .ok_or("truncated header")?;
    let header = std::str::from_utf8(header).map_err(|_| "header is not text")?;

    let descr = dict_value(header, "descr")?.trim_matches(|c| c == '\'' || c == '"');
    let (order, code) = match descr.chars().next() {
        Some(c @ ('<' | '>' | '|' | '=')) => (c, &descr[1..]),
        _ => ('|', descr),
    };
    let (signed, width) = match code {
        "u1" => (false, 1),
        "i1" => (true, 1),
        "u2" => (false, 2),
        "i2" => (true, 2),
        "u4" => (false, 4),
        "i4" => (true, 4),
        "u8" => (false, 8),
        "i8" => (true, 8),
        _ => return Err(format!("unsupported dtype {descr}")),
    };
    if width > 1 && order == '>' {
        return Err(format!("big-endian dtype {descr} is not supported"));
    }
    if dict_value(header, "fortran_order")? != "False" {
        return Err("Fortran-order arrays are not supported".into());
    }
    let shape: Vec<usize> = dict_value(header, "shape")?
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|e| format!("bad shape entry {s}: {e}"))
        })
        .collect::<std::result::Result<_, _>>()?;
    let count = shape
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or("shape product overflows")?;
    let payload = &bytes[offset + header_len..];
    if payload.len() != count * width {
        return Err(format!(
            "payload has {} bytes, shape {:?} of {descr} needs {}",
            payload.len(),
            shape,
            count * width
        ));
    }
    let data = payload
        .chunks_exact(width)
        .map(|c| {
            let mut buf = [0u8; 8];
            buf[..width].copy_from_slice(c);
            let raw = u64::from_le_bytes(buf);
            let negative = signed && c[width - 1] & 0x80 != 0;
            if negative || raw > 255 {
                Err(format!("value out of byte range in {descr} array"))
            } else {
                Ok(raw as u8)
            }
        })
        .collect::<std::result::Result<_, _>>()?;
    Ok(NpyArray { shape, data })
}
